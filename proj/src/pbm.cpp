#include "digivol/pbm.hpp"

#include <cctype>
#include <cstdint>
#include <limits>

namespace digivol {

namespace {

class HeaderReader {
public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long read_dimension(const char* what) {
    skip_separators();
    if (pos_ >= bytes_.size()) {
      throw ParseError(std::string("PBM: missing ") + what, pos_);
    }
    if (!std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw ParseError(std::string("PBM: expected digits for ") + what, pos_);
    }
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > std::numeric_limits<int>::max()) {
        throw ParseError(std::string("PBM: ") + what + " too large", start);
      }
      ++pos_;
    }
    if (value == 0) {
      throw ParseError(std::string("PBM: zero ") + what, start);
    }
    return value;
  }

  std::size_t pos_ = 0;
  std::string_view bytes_;
};

}  // namespace

BinaryImage read_pbm(std::string_view bytes, double spacing) {
  if (!(spacing > 0.0)) {
    throw DomainError("read_pbm: spacing must be positive");
  }
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '4') {
    throw ParseError("PBM: missing P4 magic", 0);
  }
  HeaderReader header(bytes);
  header.pos_ = 2;
  if (header.pos_ >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[2]))) {
    throw ParseError("PBM: expected whitespace after magic", 2);
  }
  const long width = header.read_dimension("width");
  const long height = header.read_dimension("height");
  if (header.pos_ >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[header.pos_]))) {
    throw ParseError("PBM: expected single whitespace before raster", header.pos_);
  }
  const std::size_t data = header.pos_ + 1;
  const std::size_t stride = static_cast<std::size_t>((width + 7) / 8);
  const std::size_t needed = stride * static_cast<std::size_t>(height);
  if (bytes.size() - data < needed) {
    throw ParseError("PBM: truncated raster, expected " + std::to_string(needed) + " bytes",
                     bytes.size());
  }

  const int rows = static_cast<int>(height);
  const int cols = static_cast<int>(width);
  BinaryImage image(rows, cols);
  for (int pr = 0; pr < rows; ++pr) {
    const int r = rows - 1 - pr;
    const auto* src = reinterpret_cast<const unsigned char*>(bytes.data() + data + pr * stride);
    auto words = image.row_words(r);
    for (int c = 0; c < cols; ++c) {
      // PBM packs MSB first.
      if ((src[c >> 3] >> (7 - (c & 7))) & 1u) {
        words[c >> 6] |= std::uint64_t{1} << (c & 63);
      }
    }
  }
  Lattice lattice;
  lattice.a = spacing;
  image.set_geometry(lattice, Window{0.0, 0.0, spacing * (cols - 1), spacing * (rows - 1)}, 0, 0);
  return image;
}

std::string write_pbm(const BinaryImage& image) {
  std::string out = "P4\n" + std::to_string(image.cols()) + " " + std::to_string(image.rows()) + "\n";
  const std::size_t stride = static_cast<std::size_t>((image.cols() + 7) / 8);
  for (int r = image.rows() - 1; r >= 0; --r) {
    std::string row(stride, '\0');
    for (int c = 0; c < image.cols(); ++c) {
      if (image.get(r, c)) {
        row[c >> 3] = static_cast<char>(static_cast<unsigned char>(row[c >> 3]) | (0x80u >> (c & 7)));
      }
    }
    out += row;
  }
  return out;
}

}  // namespace digivol
