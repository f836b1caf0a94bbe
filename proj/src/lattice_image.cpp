#include "digivol/lattice_image.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace digivol {

BinaryImage::BinaryImage(int rows, int cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64) {
  if (rows < 0 || cols < 0) {
    throw DomainError("BinaryImage: negative dimensions");
  }
  bits_.assign(static_cast<std::size_t>(rows) * words_per_row_, 0);
}

void BinaryImage::fill_row(int r, int c_begin, int c_end) {
  c_begin = std::max(c_begin, 0);
  c_end = std::min(c_end, cols_);
  if (c_begin >= c_end) return;
  auto words = row_words(r);
  const int first = c_begin >> 6;
  const int last = (c_end - 1) >> 6;
  const std::uint64_t head = ~std::uint64_t{0} << (c_begin & 63);
  const std::uint64_t tail = ~std::uint64_t{0} >> (63 - ((c_end - 1) & 63));
  if (first == last) {
    words[first] |= head & tail;
    return;
  }
  words[first] |= head;
  for (int k = first + 1; k < last; ++k) words[k] = ~std::uint64_t{0};
  words[last] |= tail;
}

std::size_t BinaryImage::count_foreground() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

BinaryImage BinaryImage::complement() const {
  BinaryImage out = *this;
  const int spare = words_per_row_ * 64 - cols_;
  const std::uint64_t last_mask = spare == 0 ? ~std::uint64_t{0} : (~std::uint64_t{0} >> spare);
  for (int r = 0; r < rows_; ++r) {
    auto words = out.row_words(r);
    for (auto& w : words) w = ~w;
    if (!words.empty()) words.back() &= last_mask;
  }
  return out;
}

void BinaryImage::set_geometry(const Lattice& lattice, const Window& window, long origin_i,
                               long origin_j) {
  lattice_ = lattice;
  window_ = window;
  origin_i_ = origin_i;
  origin_j_ = origin_j;
}

void BinaryImage::apply_minus_sampling(const Window& window) {
  constexpr double kSlack = 1e-12;
  window_ = window;
  std::vector<ColumnSpan> spans(static_cast<std::size_t>(std::max(rows_ - 1, 0)));
  bool any = false;
  auto inside = [&](int r, int c) { return window.contains(position(r, c), kSlack); };
  for (int r = 0; r + 1 < rows_; ++r) {
    // Cells inside a convex window form one run per row.
    int begin = -1;
    int end = -1;
    for (int c = 0; c + 1 < cols_; ++c) {
      const bool ok = inside(r, c) && inside(r, c + 1) && inside(r + 1, c) && inside(r + 1, c + 1);
      if (ok) {
        if (begin < 0) begin = c;
        end = c + 1;
      } else if (begin >= 0) {
        break;
      }
    }
    if (begin >= 0) {
      spans[r] = {begin, end};
      any = true;
    }
  }
  if (!any) {
    throw DomainError("minus sampling: no full 2x2 lattice cell fits inside the window");
  }
  cell_spans_ = std::move(spans);
}

BinaryImage make_lattice_grid(const Lattice& lattice, const Window& window,
                              CellSelection selection) {
  if (!(lattice.a > 0.0)) {
    throw DomainError("lattice spacing must be positive");
  }
  if (!(window.x1 > window.x0) || !(window.y1 > window.y0)) {
    throw DomainError("window must have nonempty interior");
  }
  const std::array<Point, 4> corners = {Point(window.x0, window.y0), Point(window.x1, window.y0),
                                        Point(window.x0, window.y1), Point(window.x1, window.y1)};
  Point lo = lattice.coordinates(corners[0]);
  Point hi = lo;
  for (const auto& p : corners) {
    const Point q = lattice.coordinates(p);
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  // Every vertex of every cell that can meet the window.
  const long i0 = static_cast<long>(std::ceil(lo.x())) - 1;
  const long j0 = static_cast<long>(std::ceil(lo.y())) - 1;
  const long i1 = static_cast<long>(std::floor(hi.x())) + 1;
  const long j1 = static_cast<long>(std::floor(hi.y())) + 1;
  const long cols = i1 - i0 + 1;
  const long rows = j1 - j0 + 1;
  constexpr long kMaxSide = 1L << 20;
  if (cols > kMaxSide || rows > kMaxSide) {
    throw DomainError("lattice grid too large for the window");
  }

  BinaryImage image(static_cast<int>(rows), static_cast<int>(cols));
  image.set_geometry(lattice, window, i0, j0);
  if (selection == CellSelection::minus_sampling) {
    image.apply_minus_sampling(window);
  }
  return image;
}

void ConfigHistogram::finalize() {
  class_counts.fill(0);
  n0 = 0;
  for (int l = 0; l < kNumConfigurations; ++l) {
    class_counts[config_class(l) - 1] += n[l];
    n0 += n[l];
  }
}

ConfigHistogram ConfigHistogram::complemented() const {
  ConfigHistogram out;
  for (int l = 0; l < kNumConfigurations; ++l) out.n[15 - l] = n[l];
  out.finalize();
  return out;
}

HistogramAccumulator::HistogramAccumulator(int cols)
    : cols_(cols), words_((cols + 63) / 64), previous_(static_cast<std::size_t>(words_), 0) {}

namespace {

std::uint64_t column_mask(int word, ColumnSpan span) {
  const int lo = std::max(span.begin - word * 64, 0);
  const int hi = std::min(span.end - word * 64, 64);
  if (lo >= hi) return 0;
  const std::uint64_t upper = hi == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << hi) - 1);
  return upper & (~std::uint64_t{0} << lo);
}

}  // namespace

void HistogramAccumulator::push_row(std::span<const std::uint64_t> row, ColumnSpan cells_below) {
  if (static_cast<int>(row.size()) != words_) {
    throw DomainError("HistogramAccumulator: row width mismatch");
  }
  if (has_previous_) {
    cells_below.begin = std::max(cells_below.begin, 0);
    cells_below.end = std::min(cells_below.end, cols_ - 1);
    const int first = cells_below.begin >> 6;
    const int last = (cells_below.end + 63) >> 6;
    for (int k = first; k < last && k < words_; ++k) {
      const std::uint64_t mask = column_mask(k, cells_below);
      if (mask == 0) continue;
      // Bit c of each word stands for the cell with lower-left column 64k + c.
      const std::uint64_t b0 = previous_[k];
      const std::uint64_t b2 = row[k];
      const std::uint64_t next_lo = k + 1 < words_ ? previous_[k + 1] : 0;
      const std::uint64_t next_hi = k + 1 < words_ ? row[k + 1] : 0;
      const std::uint64_t b1 = (b0 >> 1) | (next_lo << 63);
      const std::uint64_t b3 = (b2 >> 1) | (next_hi << 63);

      const std::array<std::uint64_t, 4> low = {~b0 & ~b1 & mask, b0 & ~b1 & mask,
                                                ~b0 & b1 & mask, b0 & b1 & mask};
      const std::array<std::uint64_t, 4> high = {~b2 & ~b3, b2 & ~b3, ~b2 & b3, b2 & b3};
      for (int h = 0; h < 4; ++h) {
        for (int l = 0; l < 4; ++l) {
          counts_[l + 4 * h] += static_cast<std::uint64_t>(std::popcount(low[l] & high[h]));
        }
      }
    }
  }
  std::copy(row.begin(), row.end(), previous_.begin());
  has_previous_ = true;
}

ConfigHistogram HistogramAccumulator::result() const {
  ConfigHistogram h;
  h.n = counts_;
  h.finalize();
  return h;
}

ConfigHistogram config_histogram(const BinaryImage& image) {
  if (image.rows() < 2 || image.cols() < 2) {
    throw DomainError("config_histogram: image must be at least 2 x 2");
  }
  HistogramAccumulator acc(image.cols());
  acc.push_row(image.row_words(0));
  for (int r = 1; r < image.rows(); ++r) {
    acc.push_row(image.row_words(r), image.cell_span(r - 1));
  }
  return acc.result();
}

}  // namespace digivol
