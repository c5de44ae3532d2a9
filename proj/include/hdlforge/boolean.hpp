#pragma once

#include "hdlforge/rng.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdlforge {

/// Raised when a value would break a domain type's invariants.
class ContractError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Tri-valued truth-table entry.
enum class Tri : std::uint8_t { zero, one, dont_care };

char tri_glyph(Tri t) noexcept;
std::optional<Tri> tri_from_glyph(char c) noexcept;

/// A single-output Boolean function with don't-cares.
///
/// Row i denotes the assignment whose bits are the binary expansion of i,
/// with the first declared variable as the most significant bit.
class BooleanSpec {
public:
  static constexpr std::size_t min_vars = 2;
  static constexpr std::size_t max_vars = 6;

  BooleanSpec(std::vector<std::string> vars, std::vector<std::uint32_t> minterms,
              std::vector<std::uint32_t> dont_cares = {});

  const std::vector<std::string>& vars() const noexcept { return vars_; }
  std::size_t num_vars() const noexcept { return vars_.size(); }
  std::uint32_t num_rows() const noexcept { return 1U << vars_.size(); }

  /// Sorted, unique.
  const std::vector<std::uint32_t>& minterms() const noexcept { return minterms_; }
  const std::vector<std::uint32_t>& dont_cares() const noexcept { return dont_cares_; }

  Tri value(std::uint32_t row) const;
  bool is_minterm(std::uint32_t row) const;
  bool is_dont_care(std::uint32_t row) const;

  friend bool operator==(const BooleanSpec&, const BooleanSpec&) = default;

private:
  std::vector<std::string> vars_;
  std::vector<std::uint32_t> minterms_;
  std::vector<std::uint32_t> dont_cares_;
};

struct TruthTable {
  std::vector<std::string> vars;
  std::vector<Tri> rows;

  friend bool operator==(const TruthTable&, const TruthTable&) = default;
};

enum class Polarity : std::uint8_t { positive, negated, absent };

struct Product {
  std::vector<Polarity> literals; ///< one entry per variable, declared order

  friend bool operator==(const Product&, const Product&) = default;
};

struct SopExpr {
  std::vector<std::string> vars;
  std::vector<Product> terms;

  friend bool operator==(const SopExpr&, const SopExpr&) = default;
};

/// Relative 0/1/x weights used when sampling rows.
struct RowWeights {
  std::uint32_t zero = 4;
  std::uint32_t one = 3;
  std::uint32_t dont_care = 1;
};

struct SampleOptions {
  RowWeights weights{};
  int max_retries = 1000;
};

/// Default variable pool, drawn in order.
std::vector<std::string> default_var_names(std::size_t n);

/// True when the row assignment is kept by the sampler: at least one
/// minterm and at least one non-minterm row.
bool accepts_rows(const std::vector<Tri>& rows);

BooleanSpec spec_from_rows(std::vector<std::string> vars, const std::vector<Tri>& rows);

/// Draws 0/1/x independently per row and rejects constant functions.
/// Throws std::runtime_error once the retry budget is exhausted.
BooleanSpec sample_spec(std::size_t n_vars, const std::vector<std::string>& var_names, Rng& rng,
                        const SampleOptions& opts = {});

TruthTable truth_table(const BooleanSpec& spec);
BooleanSpec spec_from_table(const TruthTable& table);

/// One full-literal product per minterm, ascending; don't-cares add nothing.
SopExpr derive_sop(const BooleanSpec& spec);

Product minterm_product(std::uint32_t row, std::size_t n_vars);

/// "~a & ~b & c" wrapped in parentheses; "1'b1" for an empty product.
std::string render_product(const Product& p, const std::vector<std::string>& vars);

/// "(~a & ~b & c) | (a & b & ~c)"; "1'b0" for no terms.
std::string render_sop(const SopExpr& expr);

bool eval(const SopExpr& expr, const std::map<std::string, bool>& assignment);

/// Evaluates at the row index's assignment (MSB = first variable).
bool eval_row(const SopExpr& expr, std::uint32_t row);

/// Tab-separated table as printed in solutions: header "a b c f" then rows.
std::string render_truth_table(const TruthTable& table, std::string_view out_name = "f");

/// Row bits as "(0,0,1)".
std::string row_tuple(std::uint32_t row, std::size_t n_vars);

} // namespace hdlforge
