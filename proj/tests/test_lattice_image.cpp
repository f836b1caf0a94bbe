#include "digivol/lattice_image.hpp"
#include "digivol/pbm.hpp"
#include "digivol/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace digivol;

TEST_CASE("bit access across word boundaries") {
  BinaryImage img(3, 130);
  CHECK(img.words_per_row() == 3);
  img.set(1, 63, true);
  img.set(1, 64, true);
  img.set(2, 129, true);
  CHECK(img.get(1, 63));
  CHECK(img.get(1, 64));
  CHECK_FALSE(img.get(1, 65));
  CHECK(img.get(2, 129));
  CHECK(img.count_foreground() == 3);
  img.set(1, 64, false);
  CHECK_FALSE(img.get(1, 64));

  BinaryImage row(1, 200);
  row.fill_row(0, 10, 150);
  CHECK(row.count_foreground() == 140);
  CHECK_FALSE(row.get(0, 9));
  CHECK(row.get(0, 10));
  CHECK(row.get(0, 149));
  CHECK_FALSE(row.get(0, 150));

  const BinaryImage comp = row.complement();
  CHECK(comp.count_foreground() == 60);
  CHECK(comp.complement() == row);
}

TEST_CASE("lattice coordinates invert lattice points") {
  Lattice lat;
  lat.a = 0.3;
  lat.c = Point(0.25, 0.6);
  lat.v = 1.1;
  for (long i : {-3L, 0L, 7L}) {
    for (long j : {-2L, 5L}) {
      const Point q = lat.coordinates(lat.point(i, j));
      CHECK(q.x() == doctest::Approx(static_cast<double>(i)));
      CHECK(q.y() == doctest::Approx(static_cast<double>(j)));
    }
  }
}

TEST_CASE("lattice grid covers the window and minus sampling keeps inner cells") {
  Lattice lat;
  lat.a = 0.5;
  const Window w{0.0, 0.0, 2.0, 1.0};
  const BinaryImage img = make_lattice_grid(lat, w);
  // Lattice points 0..4 by 0..2 plus one ring.
  CHECK(img.cols() == 7);
  CHECK(img.rows() == 5);
  CHECK(img.position(0, 0).x() == doctest::Approx(-0.5));
  const auto hist = config_histogram(img);
  // Cells inside [0,2]x[0,1]: 4 x 2.
  CHECK(hist.n0 == 8);
  CHECK(hist.n[0] == 8);

  const BinaryImage all = make_lattice_grid(lat, w, CellSelection::all);
  CHECK(config_histogram(all).n0 == 6 * 4);

  CHECK_THROWS_AS(make_lattice_grid(lat, Window{0.0, 0.0, 0.2, 0.2}), DomainError);
  CHECK_THROWS_AS(make_lattice_grid(lat, Window{0.0, 0.0, 0.0, 1.0}), DomainError);
}

TEST_CASE("streaming histogram matches the naive counter") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<int> side(2, 200);
  std::uniform_real_distribution<double> dens(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    BinaryImage img = oracle::random_image(side(gen), side(gen), dens(gen), gen);
    if (trial % 3 == 0) {
      // Random counted spans per row.
      std::vector<ColumnSpan> spans(img.rows() - 1);
      for (auto& s : spans) {
        std::uniform_int_distribution<int> col(0, img.cols() - 1);
        int b = col(gen), e = col(gen);
        if (b > e) std::swap(b, e);
        s = {b, e};
      }
      img.set_cell_spans(spans);
    }
    CHECK(config_histogram(img) == oracle::naive_histogram(img));
  }
}

TEST_CASE("histograms of simple images") {
  BinaryImage pixel(3, 3);
  pixel.set(1, 1, true);
  const auto h = config_histogram(pixel);
  CHECK(h.n0 == 4);
  CHECK(h.class_counts[1] == 4);
  CHECK(h.n[config_index({3})] == 1);  // pixel is the upper-right corner of cell (0,0)
  CHECK(h.n[config_index({0})] == 1);

  BinaryImage full(4, 5);
  for (int r = 0; r < 4; ++r) full.fill_row(r, 0, 5);
  const auto hf = config_histogram(full);
  CHECK(hf.n[15] == 12);
  CHECK(hf.complemented().n[0] == 12);
  CHECK(config_histogram(full.complement()) == hf.complemented());

  CHECK_THROWS_AS(config_histogram(BinaryImage(1, 5)), DomainError);
}

TEST_CASE("digitize samples the indicator at lattice points") {
  Lattice lat;
  lat.a = 0.1;
  const Window w{-1.0, -1.0, 1.0, 1.0};
  // Radius^2 between lattice shells so rounding cannot matter.
  auto disk = [](const Point& p) { return p.squaredNorm() <= 0.255; };
  const BinaryImage img = digitize(disk, lat, w);
  std::size_t expected = 0;
  for (int i = -5; i <= 5; ++i) {
    for (int j = -5; j <= 5; ++j) {
      if (i * i + j * j <= 25) ++expected;
    }
  }
  CHECK(img.count_foreground() == expected);
}

TEST_CASE("pbm round trip and layout") {
  const std::string bytes = std::string("P4\n# comment\n10 2\n") + char(0x80) + char(0x40) +
                            char(0x01) + char(0x00);
  const BinaryImage img = read_pbm(bytes, 0.5);
  CHECK(img.rows() == 2);
  CHECK(img.cols() == 10);
  // Top PBM row becomes grid row 1.
  CHECK(img.get(1, 0));
  CHECK(img.get(1, 9));
  CHECK(img.get(0, 7));
  CHECK(img.count_foreground() == 3);
  CHECK(img.lattice().a == 0.5);
  CHECK(read_pbm(write_pbm(img), 0.5) == img);
  CHECK(write_pbm(img).substr(0, 8) == "P4\n10 2\n");
}

TEST_CASE("pbm errors report byte offsets") {
  auto offset_of = [](const std::string& bytes) -> long {
    try {
      read_pbm(bytes);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset_of("P5\n1 1\n\x01") == 0);
  CHECK(offset_of("P4\n0 1\n") == 3);
  CHECK(offset_of("P4\nx 1\n") == 3);
  CHECK(offset_of("P4\n8 2\n\x01") == 8);  // truncated: offset is the input length
  CHECK(offset_of("P4") == 2);
  try {
    read_pbm("P4\n8 2\n\x01");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("byte offset 8") != std::string::npos);
  }
}

TEST_CASE("philox known answers") {
  const auto zero = Philox4x32::bijection({0, 0, 0, 0}, {0, 0});
  CHECK(zero == Philox4x32::Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  const auto pi = Philox4x32::bijection({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                        {0xa4093822u, 0x299f31d0u});
  CHECK(pi == Philox4x32::Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});

  Philox4x32 a(5, 1), b(5, 1), c(5, 2);
  bool differs = false;
  for (int k = 0; k < 10; ++k) {
    const auto x = a();
    CHECK(x == b());
    differs |= x != c();
  }
  CHECK(differs);
  for (int k = 0; k < 1000; ++k) {
    const double u = a.uniform();
    CHECK((u >= 0.0 && u < 1.0));
  }
}
