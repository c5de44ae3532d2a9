#include "hdlforge/boolean.hpp"

#include "hdlforge/text.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace hdlforge {

namespace {

bool is_lower_identifier(const std::string& s)
{
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::vector<std::uint32_t> sorted_unique(std::vector<std::uint32_t> v)
{
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool row_bit(std::uint32_t row, std::size_t var, std::size_t n)
{
  return ((row >> (n - 1 - var)) & 1U) != 0;
}

} // namespace

char tri_glyph(Tri t) noexcept
{
  switch (t) {
  case Tri::zero:
    return '0';
  case Tri::one:
    return '1';
  case Tri::dont_care:
    return 'x';
  }
  return '?';
}

std::optional<Tri> tri_from_glyph(char c) noexcept
{
  switch (c) {
  case '0':
    return Tri::zero;
  case '1':
    return Tri::one;
  case 'x':
    return Tri::dont_care;
  default:
    return std::nullopt;
  }
}

BooleanSpec::BooleanSpec(std::vector<std::string> vars, std::vector<std::uint32_t> minterms,
                         std::vector<std::uint32_t> dont_cares)
  : vars_(std::move(vars)), minterms_(sorted_unique(std::move(minterms))),
    dont_cares_(sorted_unique(std::move(dont_cares)))
{
  if (vars_.size() < min_vars || vars_.size() > max_vars) {
    throw ContractError("BooleanSpec: variable count must be in [2, 6]");
  }
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (!is_lower_identifier(v)) {
      throw ContractError("BooleanSpec: variable names must be lowercase identifiers: '" + v + "'");
    }
    if (!seen.insert(v).second) {
      throw ContractError("BooleanSpec: duplicate variable name '" + v + "'");
    }
  }
  const std::uint32_t rows = num_rows();
  for (auto m : minterms_) {
    if (m >= rows) {
      throw ContractError("BooleanSpec: minterm index out of range");
    }
  }
  for (auto d : dont_cares_) {
    if (d >= rows) {
      throw ContractError("BooleanSpec: don't-care index out of range");
    }
    if (std::binary_search(minterms_.begin(), minterms_.end(), d)) {
      throw ContractError("BooleanSpec: row is both minterm and don't-care");
    }
  }
}

bool BooleanSpec::is_minterm(std::uint32_t row) const
{
  return std::binary_search(minterms_.begin(), minterms_.end(), row);
}

bool BooleanSpec::is_dont_care(std::uint32_t row) const
{
  return std::binary_search(dont_cares_.begin(), dont_cares_.end(), row);
}

Tri BooleanSpec::value(std::uint32_t row) const
{
  if (row >= num_rows()) {
    throw ContractError("BooleanSpec::value: row out of range");
  }
  if (is_minterm(row)) {
    return Tri::one;
  }
  return is_dont_care(row) ? Tri::dont_care : Tri::zero;
}

std::vector<std::string> default_var_names(std::size_t n)
{
  static const std::array<std::string, 6> pool = {"a", "b", "c", "d", "e", "f"};
  if (n > pool.size()) {
    throw ContractError("default_var_names: at most 6 variables");
  }
  return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n)};
}

bool accepts_rows(const std::vector<Tri>& rows)
{
  const auto ones = std::count(rows.begin(), rows.end(), Tri::one);
  return ones >= 1 && static_cast<std::size_t>(ones) < rows.size();
}

BooleanSpec spec_from_rows(std::vector<std::string> vars, const std::vector<Tri>& rows)
{
  if (vars.size() > BooleanSpec::max_vars || rows.size() != (std::size_t{1} << vars.size())) {
    throw ContractError("spec_from_rows: row count must be 2^n");
  }
  std::vector<std::uint32_t> minterms;
  std::vector<std::uint32_t> dcs;
  for (std::uint32_t i = 0; i < rows.size(); ++i) {
    if (rows[i] == Tri::one) {
      minterms.push_back(i);
    } else if (rows[i] == Tri::dont_care) {
      dcs.push_back(i);
    }
  }
  return BooleanSpec(std::move(vars), std::move(minterms), std::move(dcs));
}

BooleanSpec sample_spec(std::size_t n_vars, const std::vector<std::string>& var_names, Rng& rng,
                        const SampleOptions& opts)
{
  if (n_vars != var_names.size() || n_vars < 2 || n_vars > BooleanSpec::max_vars) {
    throw ContractError("sample_spec: n_vars must equal |var_names| and lie in [2, 6]");
  }
  const std::array<std::uint32_t, 3> w = {opts.weights.zero, opts.weights.one, opts.weights.dont_care};
  if (w[1] == 0) {
    throw ContractError("sample_spec: weight of 1 must be positive");
  }
  const std::size_t rows = std::size_t{1} << n_vars;
  std::vector<Tri> values(rows);
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    for (auto& v : values) {
      v = static_cast<Tri>(rng.weighted(w));
    }
    if (accepts_rows(values)) {
      return spec_from_rows(var_names, values);
    }
  }
  throw std::runtime_error("sample_spec: retry budget exhausted");
}

TruthTable truth_table(const BooleanSpec& spec)
{
  TruthTable t{spec.vars(), std::vector<Tri>(spec.num_rows(), Tri::zero)};
  for (auto m : spec.minterms()) {
    t.rows[m] = Tri::one;
  }
  for (auto d : spec.dont_cares()) {
    t.rows[d] = Tri::dont_care;
  }
  return t;
}

BooleanSpec spec_from_table(const TruthTable& table)
{
  return spec_from_rows(table.vars, table.rows);
}

Product minterm_product(std::uint32_t row, std::size_t n_vars)
{
  Product p;
  p.literals.reserve(n_vars);
  for (std::size_t v = 0; v < n_vars; ++v) {
    p.literals.push_back(row_bit(row, v, n_vars) ? Polarity::positive : Polarity::negated);
  }
  return p;
}

SopExpr derive_sop(const BooleanSpec& spec)
{
  if (spec.minterms().empty()) {
    throw ContractError("derive_sop: spec has no minterms");
  }
  SopExpr e{spec.vars(), {}};
  for (auto m : spec.minterms()) {
    e.terms.push_back(minterm_product(m, spec.num_vars()));
  }
  return e;
}

std::string render_product(const Product& p, const std::vector<std::string>& vars)
{
  std::vector<std::string> lits;
  for (std::size_t v = 0; v < p.literals.size(); ++v) {
    if (p.literals[v] == Polarity::positive) {
      lits.push_back(vars[v]);
    } else if (p.literals[v] == Polarity::negated) {
      lits.push_back("~" + vars[v]);
    }
  }
  if (lits.empty()) {
    return "1'b1";
  }
  return "(" + text::join(lits, " & ") + ")";
}

std::string render_sop(const SopExpr& expr)
{
  if (expr.terms.empty()) {
    return "1'b0";
  }
  std::vector<std::string> parts;
  parts.reserve(expr.terms.size());
  for (const auto& t : expr.terms) {
    parts.push_back(render_product(t, expr.vars));
  }
  return text::join(parts, " | ");
}

namespace {

bool product_holds(const Product& p, const std::vector<bool>& bits)
{
  for (std::size_t v = 0; v < p.literals.size(); ++v) {
    if ((p.literals[v] == Polarity::positive && !bits[v]) ||
        (p.literals[v] == Polarity::negated && bits[v])) {
      return false;
    }
  }
  return true;
}

bool eval_bits(const SopExpr& expr, const std::vector<bool>& bits)
{
  return std::any_of(expr.terms.begin(), expr.terms.end(),
                     [&](const Product& p) { return product_holds(p, bits); });
}

} // namespace

bool eval(const SopExpr& expr, const std::map<std::string, bool>& assignment)
{
  std::vector<bool> bits;
  bits.reserve(expr.vars.size());
  for (const auto& v : expr.vars) {
    auto it = assignment.find(v);
    if (it == assignment.end()) {
      throw ContractError("eval: assignment is missing variable '" + v + "'");
    }
    bits.push_back(it->second);
  }
  return eval_bits(expr, bits);
}

bool eval_row(const SopExpr& expr, std::uint32_t row)
{
  const std::size_t n = expr.vars.size();
  std::vector<bool> bits(n);
  for (std::size_t v = 0; v < n; ++v) {
    bits[v] = row_bit(row, v, n);
  }
  return eval_bits(expr, bits);
}

std::string render_truth_table(const TruthTable& table, std::string_view out_name)
{
  const std::size_t n = table.vars.size();
  std::string out = text::join(table.vars, "\t") + "\t" + std::string(out_name) + "\n";
  for (std::uint32_t i = 0; i < table.rows.size(); ++i) {
    for (std::size_t v = 0; v < n; ++v) {
      out += row_bit(i, v, n) ? '1' : '0';
      out += '\t';
    }
    out += tri_glyph(table.rows[i]);
    out += '\n';
  }
  return out;
}

std::string row_tuple(std::uint32_t row, std::size_t n_vars)
{
  std::string out = "(";
  for (std::size_t v = 0; v < n_vars; ++v) {
    if (v != 0) {
      out += ',';
    }
    out += row_bit(row, v, n_vars) ? '1' : '0';
  }
  return out + ")";
}

} // namespace hdlforge
