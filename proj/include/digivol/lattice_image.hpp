#pragma once

#include "digivol/config_algebra.hpp"
#include "digivol/types.hpp"

#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace digivol {

/// Square lattice a * R_v(Z^2 + c).
struct Lattice {
  double a = 1.0;
  Point c = Point::Zero();
  double v = 0.0;

  /// Absolute position of lattice point with integer coordinates (i, j).
  Point point(long i, long j) const {
    const Point q(static_cast<double>(i) + c.x(), static_cast<double>(j) + c.y());
    return a * (Eigen::Rotation2Dd(v) * q);
  }

  /// Continuous lattice coordinates of an absolute point (inverse of `point`).
  Point coordinates(const Point& p) const {
    return (Eigen::Rotation2Dd(-v) * p) / a - c;
  }

  bool axis_aligned() const { return v == 0.0; }
};

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Window {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool contains(const Point& p, double slack = 0.0) const {
    return p.x() >= x0 - slack && p.x() <= x1 + slack && p.y() >= y0 - slack &&
           p.y() <= y1 + slack;
  }
  /// Rectangle grown by `margin` on every side.
  Window padded(double margin) const { return {x0 - margin, y0 - margin, x1 + margin, y1 + margin}; }
};

/// Half-open range of lower-left columns whose cells are counted in one row.
struct ColumnSpan {
  int begin = 0;
  int end = 0;
};

enum class CellSelection {
  minus_sampling,  ///< only cells lying inside the window
  all,             ///< every cell of the grid
};

/// Bit-packed foreground grid on a lattice. Row r, column c holds lattice point
/// (origin_i + c, origin_j + r); rows grow along the lattice's second axis.
/// Each row occupies whole 64-bit words, column c at bit c % 64 of word c / 64.
class BinaryImage {
public:
  BinaryImage() = default;
  BinaryImage(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words_per_row() const { return words_per_row_; }

  bool get(int r, int c) const {
    return (bits_[word_offset(r, c)] >> (c & 63)) & 1u;
  }
  void set(int r, int c, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    auto& word = bits_[word_offset(r, c)];
    word = value ? (word | bit) : (word & ~bit);
  }
  /// Sets columns [c_begin, c_end) of row r.
  void fill_row(int r, int c_begin, int c_end);

  std::span<const std::uint64_t> row_words(int r) const {
    return {bits_.data() + static_cast<std::size_t>(r) * words_per_row_,
            static_cast<std::size_t>(words_per_row_)};
  }
  std::span<std::uint64_t> row_words(int r) {
    return {bits_.data() + static_cast<std::size_t>(r) * words_per_row_,
            static_cast<std::size_t>(words_per_row_)};
  }

  std::size_t count_foreground() const;

  /// Bitwise complement, same lattice, window and counted cells.
  BinaryImage complement() const;

  const Lattice& lattice() const { return lattice_; }
  const Window& window() const { return window_; }
  long origin_i() const { return origin_i_; }
  long origin_j() const { return origin_j_; }

  /// Absolute position of grid cell (r, c).
  Point position(int r, int c) const { return lattice_.point(origin_i_ + c, origin_j_ + r); }

  void set_geometry(const Lattice& lattice, const Window& window, long origin_i, long origin_j);

  /// Counted cells per row (size rows - 1). Empty means every cell is counted.
  const std::vector<ColumnSpan>& cell_spans() const { return cell_spans_; }
  void set_cell_spans(std::vector<ColumnSpan> spans) { cell_spans_ = std::move(spans); }
  ColumnSpan cell_span(int r) const {
    return cell_spans_.empty() ? ColumnSpan{0, cols_ - 1} : cell_spans_[r];
  }

  /// Restrict counting to cells z + aR_v(C) inside `window`.
  /// Throws DomainError when no cell qualifies.
  void apply_minus_sampling(const Window& window);

  bool operator==(const BinaryImage& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && bits_ == other.bits_;
  }

private:
  std::size_t word_offset(int r, int c) const {
    return static_cast<std::size_t>(r) * words_per_row_ + static_cast<std::size_t>(c >> 6);
  }

  int rows_ = 0;
  int cols_ = 0;
  int words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
  Lattice lattice_;
  Window window_;
  long origin_i_ = 0;
  long origin_j_ = 0;
  std::vector<ColumnSpan> cell_spans_;
};

/// Empty grid covering every lattice point whose cell can meet `window`,
/// with counted cells chosen by `selection`.
BinaryImage make_lattice_grid(const Lattice& lattice, const Window& window,
                              CellSelection selection = CellSelection::minus_sampling);

/// Samples `indicator` (Point -> bool) at every grid point of make_lattice_grid.
template <typename Indicator>
BinaryImage digitize(const Indicator& indicator, const Lattice& lattice, const Window& window,
                     CellSelection selection = CellSelection::minus_sampling) {
  BinaryImage image = make_lattice_grid(lattice, window, selection);
  const Eigen::Rotation2Dd rot(lattice.v);
  const Point step_i = lattice.a * (rot * Point(1.0, 0.0));
  for (int r = 0; r < image.rows(); ++r) {
    const Point row_start = image.position(r, 0);
    for (int c = 0; c < image.cols(); ++c) {
      if (indicator(Point(row_start + static_cast<double>(c) * step_i))) {
        image.set(r, c, true);
      }
    }
  }
  return image;
}

/// Counts N_0..N_15 of 2x2 configurations.
struct ConfigHistogram {
  std::array<std::uint64_t, kNumConfigurations> n{};
  std::array<std::uint64_t, kNumClasses> class_counts{};
  std::uint64_t n0 = 0;

  /// Recomputes class_counts and n0 from n.
  void finalize();
  /// Histogram of the complemented image: n[l] -> n[15 - l].
  ConfigHistogram complemented() const;

  bool operator==(const ConfigHistogram&) const = default;
};

/// Two-row streaming counter. Rows are pushed bottom to top; each push after the
/// first counts the cells whose lower-left corner lies in the previous row.
class HistogramAccumulator {
public:
  explicit HistogramAccumulator(int cols);

  void push_row(std::span<const std::uint64_t> row, ColumnSpan cells_below);
  /// Same, counting every cell of the row pair.
  void push_row(std::span<const std::uint64_t> row) { push_row(row, ColumnSpan{0, cols_ - 1}); }

  ConfigHistogram result() const;

private:
  int cols_;
  int words_;
  std::vector<std::uint64_t> previous_;
  bool has_previous_ = false;
  std::array<std::uint64_t, kNumConfigurations> counts_{};
};

/// Configuration histogram of the image's counted cells.
/// Throws DomainError for images smaller than 2 x 2.
ConfigHistogram config_histogram(const BinaryImage& image);

}  // namespace digivol
