#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <istream>
#include <vector>

namespace hdlforge {

struct TrialTally {
  std::int64_t n = 1; ///< samples drawn for the problem
  std::int64_t c = 0; ///< samples that passed

  friend bool operator==(const TrialTally&, const TrialTally&) = default;
};

/// Unbiased pass@k: 1 - C(n-c, k) / C(n, k), evaluated as
/// 1 - prod_{i=n-c+1}^{n} (1 - k/i). Throws ContractError unless
/// 1 <= k <= n and 0 <= c <= n.
double pass_at_k(std::int64_t n, std::int64_t c, std::int64_t k);

/// Mean of per-problem pass@k; each problem weighs the same whatever its n.
double aggregate_pass_at_k(const std::vector<TrialTally>& tallies, std::int64_t k);

/// Mean of c/n over problems, exact.
boost::multiprecision::cpp_rational fix_rate_exact(const std::vector<TrialTally>& tallies);

/// fix_rate_exact rounded to the nearest double.
double fix_rate(const std::vector<TrialTally>& tallies);

/// Nearest double to a rational in [0, 1], ties to even.
double to_double(const boost::multiprecision::cpp_rational& r);

/// Two integers "n c" per line. Blank lines and '#' comments are skipped.
std::vector<TrialTally> read_tallies(std::istream& in);

} // namespace hdlforge
