#pragma once

#include "hdlforge/boolean.hpp"
#include "hdlforge/rng.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hdlforge {

/// Reflected binary sequence of 2^bits patterns; bits in [1, 3].
std::vector<std::uint32_t> gray_sequence(int bits);

enum class KmapMutation : std::uint8_t { transpose, swap_rows, swap_cols };

/// A grid view of a BooleanSpec.
///
/// row_vars / col_vars hold indices into spec.vars(); patterns in row_seq /
/// col_seq are read MSB-first in the order of row_vars / col_vars. The view
/// never changes the function: cell(r, c) is the truth-table value at the row
/// index reassembled from both patterns.
class KarnaughMap {
public:
  KarnaughMap(BooleanSpec spec, std::vector<std::size_t> row_vars, std::vector<std::size_t> col_vars,
              std::vector<std::uint32_t> row_seq, std::vector<std::uint32_t> col_seq, bool transposed = false);

  /// Gray-ordered map with the first `n_row_vars` variables on the rows.
  static KarnaughMap gray(BooleanSpec spec, std::size_t n_row_vars);

  const BooleanSpec& spec() const noexcept { return spec_; }
  const std::vector<std::size_t>& row_vars() const noexcept { return row_vars_; }
  const std::vector<std::size_t>& col_vars() const noexcept { return col_vars_; }
  const std::vector<std::uint32_t>& row_seq() const noexcept { return row_seq_; }
  const std::vector<std::uint32_t>& col_seq() const noexcept { return col_seq_; }
  bool transposed() const noexcept { return transposed_; }

  std::size_t num_rows() const noexcept { return row_seq_.size(); }
  std::size_t num_cols() const noexcept { return col_seq_.size(); }

  /// Truth-table row index addressed by grid position (r, c).
  std::uint32_t index_at(std::size_t r, std::size_t c) const;
  Tri cell(std::size_t r, std::size_t c) const;

  void transpose();
  /// Swaps grid rows at positions i and i + 1.
  void swap_adjacent_rows(std::size_t i);
  void swap_adjacent_cols(std::size_t i);

  std::string row_label() const;
  std::string col_label() const;

private:
  BooleanSpec spec_;
  std::vector<std::size_t> row_vars_;
  std::vector<std::size_t> col_vars_;
  std::vector<std::uint32_t> row_seq_;
  std::vector<std::uint32_t> col_seq_;
  bool transposed_ = false;
};

/// Gray layout followed by `n_mutations` uniformly chosen transposes and
/// adjacent row/column swaps.
KarnaughMap layout(const BooleanSpec& spec, std::size_t n_row_vars, Rng& rng, int n_mutations);

/// Applies one mutation drawn from `rng`; returns which one.
KmapMutation mutate_layout(KarnaughMap& map, Rng& rng);

/// Comment-style text block:
///
///     //      c
///     // ab  0  1
///     // 00 | 1 | 0
std::string render(const KarnaughMap& map);

class KmapParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Inverse of render. Variable names in the labels must be single
/// characters. The spec's variable order is `var_order` when given, else the
/// names sorted alphabetically.
KarnaughMap parse_kmap(std::string_view text, const std::vector<std::string>& var_order = {});

/// True when both maps show the same value under every (row pattern, column
/// pattern) pair, regardless of ordering.
bool same_cells(const KarnaughMap& a, const KarnaughMap& b);

} // namespace hdlforge
