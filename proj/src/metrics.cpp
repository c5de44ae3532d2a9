#include "hdlforge/metrics.hpp"

#include "hdlforge/boolean.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace hdlforge {

namespace {

void check_tally(const TrialTally& t)
{
  if (t.n < 1 || t.c < 0 || t.c > t.n) {
    throw ContractError("tally needs n >= 1 and 0 <= c <= n, got n=" + std::to_string(t.n) +
                        " c=" + std::to_string(t.c));
  }
}

} // namespace

double pass_at_k(std::int64_t n, std::int64_t c, std::int64_t k)
{
  check_tally({n, c});
  if (k < 1 || k > n) {
    throw ContractError("pass@k needs 1 <= k <= n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
  }
  if (n - c < k) {
    return 1.0;
  }
  double miss = 1.0;
  for (std::int64_t i = n - c + 1; i <= n; ++i) {
    miss *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  }
  return 1.0 - miss;
}

double aggregate_pass_at_k(const std::vector<TrialTally>& tallies, std::int64_t k)
{
  if (tallies.empty()) {
    throw ContractError("pass@k over an empty tally list");
  }
  double sum = 0.0;
  for (const auto& t : tallies) {
    sum += pass_at_k(t.n, t.c, k);
  }
  return sum / static_cast<double>(tallies.size());
}

boost::multiprecision::cpp_rational fix_rate_exact(const std::vector<TrialTally>& tallies)
{
  if (tallies.empty()) {
    throw ContractError("fix rate over an empty tally list");
  }
  boost::multiprecision::cpp_rational sum = 0;
  for (const auto& t : tallies) {
    check_tally(t);
    sum += boost::multiprecision::cpp_rational(t.c, t.n);
  }
  return sum / static_cast<long long>(tallies.size());
}

double fix_rate(const std::vector<TrialTally>& tallies)
{
  return to_double(fix_rate_exact(tallies));
}

double to_double(const boost::multiprecision::cpp_rational& r)
{
  using boost::multiprecision::cpp_int;
  if (r < 0 || r > 1) {
    throw ContractError("to_double expects a value in [0, 1]");
  }
  const cpp_int p = boost::multiprecision::numerator(r);
  const cpp_int q = boost::multiprecision::denominator(r);
  if (p == 0) {
    return 0.0;
  }
  // Scale so the quotient has 53 significant bits, then round the remainder.
  int k = 0;
  cpp_int num = p;
  const cpp_int lo = cpp_int(1) << 52;
  while (num / q < lo) {
    num <<= 1;
    ++k;
  }
  cpp_int m = num / q;
  const cpp_int rem2 = (num % q) * 2;
  if (rem2 > q || (rem2 == q && (m & 1) != 0)) {
    ++m;
  }
  return std::ldexp(static_cast<double>(m), -k);
}

std::vector<TrialTally> read_tallies(std::istream& in)
{
  std::vector<TrialTally> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ss(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    TrialTally t;
    std::string rest;
    if (!(ss >> t.n) || !(ss >> t.c) || (ss >> rest)) {
      throw ContractError("tally line " + std::to_string(lineno) + ": expected two integers 'n c'");
    }
    check_tally(t);
    out.push_back(t);
  }
  return out;
}

} // namespace hdlforge
