#include "hdlforge/rng.hpp"

#include <doctest.h>

#include <set>
#include <vector>

using namespace hdlforge;

TEST_CASE("same seed, same sequence")
{
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("split streams do not share prefixes")
{
  std::set<std::vector<std::uint64_t>> prefixes;
  for (std::uint64_t i = 0; i < 64; ++i) {
    Rng r = split_stream(7, "kmap", i);
    std::vector<std::uint64_t> p;
    for (int j = 0; j < 8; ++j) {
      p.push_back(r.next_u64());
    }
    prefixes.insert(p);
  }
  CHECK(prefixes.size() == 64);
}

TEST_CASE("stream seeds: no collisions over 10^5 indices and across kinds")
{
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 100000; ++i) {
    seeds.insert(stream_seed(1, "fsm_moore", i));
  }
  CHECK(seeds.size() == 100000);
  CHECK(stream_seed(1, "kmap", 0) != stream_seed(1, "truthtable", 0));
  CHECK(stream_seed(1, "kmap", 0) != stream_seed(2, "kmap", 0));
}

TEST_CASE("bounded draws stay in range and cover it")
{
  Rng r(3);
  std::vector<int> hits(6, 0);
  for (int i = 0; i < 6000; ++i) {
    auto v = r.uniform(6);
    REQUIRE(v < 6);
    ++hits[v];
  }
  for (int h : hits) {
    CHECK(h > 850);
    CHECK(h < 1150);
  }
  for (int i = 0; i < 1000; ++i) {
    auto v = r.uniform_range(-3, 3);
    REQUIRE(v >= -3);
    REQUIRE(v <= 3);
  }
}

TEST_CASE("weighted draw never picks a zero weight")
{
  Rng r(5);
  const std::vector<std::uint32_t> w{0, 3, 0, 1};
  int threes = 0;
  for (int i = 0; i < 4000; ++i) {
    auto k = r.weighted(w);
    REQUIRE((k == 1 || k == 3));
    threes += k == 1;
  }
  CHECK(threes > 2800);
  CHECK(threes < 3200);
}

TEST_CASE("shuffle is a permutation")
{
  Rng r(9);
  std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
  r.shuffle(v);
  CHECK(std::set<int>(v.begin(), v.end()).size() == 8);
}
