#include "oracles.hpp"

#include "hdlforge/kmap.hpp"
#include "hdlforge/problem.hpp"

#include <doctest.h>

#include <set>

using namespace hdlforge;

TEST_CASE("gray sequences are single-bit cycles")
{
  for (int bits = 1; bits <= 3; ++bits) {
    CHECK(oracle::is_gray_cycle(gray_sequence(bits), bits));
  }
  CHECK(gray_sequence(2) == std::vector<std::uint32_t>{0, 1, 3, 2});
  CHECK_THROWS(gray_sequence(0));
}

TEST_CASE("layout mutations never change the function")
{
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 3 + i % 2;
    const BooleanSpec spec = sample_spec(n, default_var_names(n), rng);
    KarnaughMap m = layout(spec, n / 2 + (i % 2), rng, i % 4);
    std::set<std::uint32_t> covered;
    for (std::size_t r = 0; r < m.num_rows(); ++r) {
      for (std::size_t c = 0; c < m.num_cols(); ++c) {
        CHECK(m.cell(r, c) == spec.value(m.index_at(r, c)));
        covered.insert(m.index_at(r, c));
      }
    }
    CHECK(covered.size() == spec.num_rows());
    CHECK(same_cells(m, KarnaughMap::gray(spec, 1)));
  }
}

TEST_CASE("render and parse are inverse")
{
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 3 + i % 2;
    const BooleanSpec spec = sample_spec(n, default_var_names(n), rng);
    KarnaughMap m = layout(spec, (n + 1) / 2, rng, 2);
    const KarnaughMap back = parse_kmap(render(m), spec.vars());
    CHECK(back.spec() == spec);
    CHECK(same_cells(back, m));
  }
}

TEST_CASE("rendered map cells read back through the oracle")
{
  const BooleanSpec spec({"a", "b", "c", "d"}, {0, 5, 15}, {3, 7});
  Rng rng(23);
  KarnaughMap m = layout(spec, 2, rng, 2);
  const auto r = forge_kmap(spec, m, "kmap_authored", 1);
  const auto cells = oracle::read_kmap_cells(r.problem);
  REQUIRE(cells.size() == 16);
  for (auto [row, c] : cells) {
    CHECK(c == tri_glyph(spec.value(row)));
  }
}

TEST_CASE("transpose swaps the axes")
{
  const BooleanSpec spec({"a", "b", "c"}, {1, 6});
  KarnaughMap m = KarnaughMap::gray(spec, 1);
  CHECK(m.num_rows() == 2);
  m.transpose();
  CHECK(m.num_rows() == 4);
  CHECK(m.transposed());
  CHECK(same_cells(m, KarnaughMap::gray(spec, 1)));
}

TEST_CASE("malformed map text is rejected")
{
  CHECK_THROWS_AS(parse_kmap("//  c\n// ab 0 1\n// 00 | 1\n"), KmapParseError);
  CHECK_THROWS_AS(parse_kmap(""), KmapParseError);
}
