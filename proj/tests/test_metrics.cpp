#include "oracles.hpp"

#include "hdlforge/boolean.hpp"
#include "hdlforge/metrics.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

using namespace hdlforge;
using boost::multiprecision::cpp_rational;

TEST_CASE("pass@k against enumeration and the binomial ratio")
{
  CHECK(std::fabs(pass_at_k(20, 5, 5) - oracle::pass_at_k_enumerated(20, 5, 5)) < 1e-12);
  CHECK(std::fabs(pass_at_k(10, 3, 4) - oracle::pass_at_k_enumerated(10, 3, 4)) < 1e-12);
  for (unsigned n : {1U, 7U, 50U, 200U}) {
    for (unsigned c = 0; c <= n; c += 1 + n / 10) {
      for (unsigned k = 1; k <= std::min(n, 20U); k += 3) {
        CHECK(std::fabs(pass_at_k(n, c, k) - oracle::pass_at_k_binomial(n, c, k)) < 1e-12);
      }
    }
  }
}

TEST_CASE("pass@k: known values and boundaries")
{
  CHECK(pass_at_k(10, 5, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(pass_at_k(20, 20, 5) == 1.0);
  CHECK(pass_at_k(20, 0, 5) == 0.0);
  CHECK(pass_at_k(5, 1, 5) == 1.0);
  CHECK_THROWS_AS(pass_at_k(5, 6, 1), ContractError);
  CHECK_THROWS_AS(pass_at_k(5, 1, 0), ContractError);
  CHECK_THROWS_AS(pass_at_k(5, 1, 6), ContractError);
  CHECK_THROWS_AS(pass_at_k(5, -1, 1), ContractError);
}

TEST_CASE("pass@k matches sampling within three standard errors")
{
  std::mt19937_64 gen(81);
  const int n = 20;
  const int c = 5;
  const int k = 3;
  const int draws = 100000;
  std::vector<int> idx(n);
  int hits = 0;
  for (int t = 0; t < draws; ++t) {
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), gen);
    bool any = false;
    for (int j = 0; j < k; ++j) {
      any = any || idx[j] < c;
    }
    hits += any;
  }
  const double p = pass_at_k(n, c, k);
  const double se = std::sqrt(p * (1 - p) / draws);
  CHECK(std::fabs(static_cast<double>(hits) / draws - p) < 3 * se);
}

TEST_CASE("aggregate and fix rate")
{
  const std::vector<TrialTally> t{{10, 3}, {4, 4}, {7, 0}};
  const double mean = (pass_at_k(10, 3, 1) + 1.0 + 0.0) / 3;
  CHECK(aggregate_pass_at_k(t, 1) == doctest::Approx(mean).epsilon(1e-15));
  CHECK(fix_rate_exact(t) == (cpp_rational(3, 10) + 1 + 0) / 3);
  CHECK(fix_rate(t) == static_cast<double>((cpp_rational(3, 10) + 1) / 3));
  CHECK(fix_rate({{3, 1}}) == 1.0 / 3.0);
  CHECK(fix_rate({{10, 1}}) == 0.1);
  CHECK_THROWS_AS(aggregate_pass_at_k({}, 1), ContractError);
}

TEST_CASE("rational to double rounds to nearest")
{
  std::mt19937_64 gen(82);
  for (int i = 0; i < 2000; ++i) {
    const auto den = static_cast<std::int64_t>(gen() % 1000000 + 1);
    const auto num = static_cast<std::int64_t>(gen() % static_cast<std::uint64_t>(den + 1));
    const cpp_rational r(num, den);
    const double d = to_double(r);
    // No neighbour is closer.
    const cpp_rational err = abs(cpp_rational(d) - r);
    CHECK(abs(cpp_rational(std::nextafter(d, 2.0)) - r) >= err);
    CHECK(abs(cpp_rational(std::nextafter(d, -1.0)) - r) >= err);
  }
  CHECK(to_double(cpp_rational(0)) == 0.0);
  CHECK(to_double(cpp_rational(1)) == 1.0);
}

TEST_CASE("tally files")
{
  std::istringstream in("# header\n20 5\n\n  3 3  \n");
  const auto t = read_tallies(in);
  CHECK(t == std::vector<TrialTally>{{20, 5}, {3, 3}});
  std::istringstream bad("20 five\n");
  CHECK_THROWS(read_tallies(bad));
  std::istringstream worse("3 4\n");
  CHECK_THROWS(read_tallies(worse));
}
