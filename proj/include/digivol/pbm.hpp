#pragma once

#include "digivol/lattice_image.hpp"

#include <string>
#include <string_view>

namespace digivol {

/// Parses a binary PBM (P4). Bit 1 is foreground. The top PBM row becomes the
/// highest grid row; the grid sits on the axis-aligned lattice of the given
/// spacing with every cell counted. Throws ParseError on malformed input.
BinaryImage read_pbm(std::string_view bytes, double spacing = 1.0);

/// Serializes the grid as P4 with header "P4\n<cols> <rows>\n".
std::string write_pbm(const BinaryImage& image);

}  // namespace digivol
