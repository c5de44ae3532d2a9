#include "hdlforge/kmap.hpp"

#include "hdlforge/text.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace hdlforge {

std::vector<std::uint32_t> gray_sequence(int bits)
{
  if (bits < 1 || bits > 3) {
    throw ContractError("gray_sequence: bits must be in [1, 3]");
  }
  std::vector<std::uint32_t> seq(std::size_t{1} << bits);
  for (std::uint32_t i = 0; i < seq.size(); ++i) {
    seq[i] = i ^ (i >> 1);
  }
  return seq;
}

namespace {

bool is_permutation_of_all(const std::vector<std::uint32_t>& seq, std::size_t bits)
{
  if (seq.size() != (std::size_t{1} << bits)) {
    return false;
  }
  std::vector<std::uint32_t> sorted = seq;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint32_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) {
      return false;
    }
  }
  return true;
}

} // namespace

KarnaughMap::KarnaughMap(BooleanSpec spec, std::vector<std::size_t> row_vars, std::vector<std::size_t> col_vars,
                         std::vector<std::uint32_t> row_seq, std::vector<std::uint32_t> col_seq, bool transposed)
  : spec_(std::move(spec)), row_vars_(std::move(row_vars)), col_vars_(std::move(col_vars)),
    row_seq_(std::move(row_seq)), col_seq_(std::move(col_seq)), transposed_(transposed)
{
  const std::size_t n = spec_.num_vars();
  if (row_vars_.empty() || col_vars_.empty() || row_vars_.size() > 3 || col_vars_.size() > 3) {
    throw ContractError("KarnaughMap: each axis needs 1 to 3 variables");
  }
  std::vector<std::size_t> all = row_vars_;
  all.insert(all.end(), col_vars_.begin(), col_vars_.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(n);
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  if (all != expected) {
    throw ContractError("KarnaughMap: row and column variables must partition the spec variables");
  }
  if (!is_permutation_of_all(row_seq_, row_vars_.size()) || !is_permutation_of_all(col_seq_, col_vars_.size())) {
    throw ContractError("KarnaughMap: sequences must permute all patterns");
  }
}

KarnaughMap KarnaughMap::gray(BooleanSpec spec, std::size_t n_row_vars)
{
  const std::size_t n = spec.num_vars();
  if (n_row_vars == 0 || n_row_vars >= n) {
    throw ContractError("KarnaughMap::gray: invalid variable split");
  }
  std::vector<std::size_t> rows(n_row_vars);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<std::size_t> cols(n - n_row_vars);
  std::iota(cols.begin(), cols.end(), n_row_vars);
  auto rs = gray_sequence(static_cast<int>(rows.size()));
  auto cs = gray_sequence(static_cast<int>(cols.size()));
  return KarnaughMap(std::move(spec), std::move(rows), std::move(cols), std::move(rs), std::move(cs));
}

std::uint32_t KarnaughMap::index_at(std::size_t r, std::size_t c) const
{
  const std::size_t n = spec_.num_vars();
  const std::uint32_t rpat = row_seq_.at(r);
  const std::uint32_t cpat = col_seq_.at(c);
  std::uint32_t index = 0;
  const auto place = [&](const std::vector<std::size_t>& vars, std::uint32_t pat) {
    const std::size_t k = vars.size();
    for (std::size_t i = 0; i < k; ++i) {
      if ((pat >> (k - 1 - i)) & 1U) {
        index |= 1U << (n - 1 - vars[i]);
      }
    }
  };
  place(row_vars_, rpat);
  place(col_vars_, cpat);
  return index;
}

Tri KarnaughMap::cell(std::size_t r, std::size_t c) const
{
  return spec_.value(index_at(r, c));
}

void KarnaughMap::transpose()
{
  std::swap(row_vars_, col_vars_);
  std::swap(row_seq_, col_seq_);
  transposed_ = !transposed_;
}

void KarnaughMap::swap_adjacent_rows(std::size_t i)
{
  if (i + 1 >= row_seq_.size()) {
    throw ContractError("swap_adjacent_rows: position out of range");
  }
  std::swap(row_seq_[i], row_seq_[i + 1]);
}

void KarnaughMap::swap_adjacent_cols(std::size_t i)
{
  if (i + 1 >= col_seq_.size()) {
    throw ContractError("swap_adjacent_cols: position out of range");
  }
  std::swap(col_seq_[i], col_seq_[i + 1]);
}

std::string KarnaughMap::row_label() const
{
  std::string s;
  for (auto v : row_vars_) {
    s += spec_.vars()[v];
  }
  return s;
}

std::string KarnaughMap::col_label() const
{
  std::string s;
  for (auto v : col_vars_) {
    s += spec_.vars()[v];
  }
  return s;
}

KmapMutation mutate_layout(KarnaughMap& map, Rng& rng)
{
  const auto kind = static_cast<KmapMutation>(rng.uniform(3));
  switch (kind) {
  case KmapMutation::transpose:
    map.transpose();
    break;
  case KmapMutation::swap_rows:
    map.swap_adjacent_rows(static_cast<std::size_t>(rng.uniform(map.num_rows() - 1)));
    break;
  case KmapMutation::swap_cols:
    map.swap_adjacent_cols(static_cast<std::size_t>(rng.uniform(map.num_cols() - 1)));
    break;
  }
  return kind;
}

KarnaughMap layout(const BooleanSpec& spec, std::size_t n_row_vars, Rng& rng, int n_mutations)
{
  if (n_mutations < 0) {
    throw ContractError("layout: negative mutation count");
  }
  KarnaughMap map = KarnaughMap::gray(spec, n_row_vars);
  for (int i = 0; i < n_mutations; ++i) {
    mutate_layout(map, rng);
  }
  return map;
}

namespace {

std::string pad(const std::string& s, std::size_t w)
{
  return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

} // namespace

std::string render(const KarnaughMap& map)
{
  const std::string rl = map.row_label();
  const std::string cl = map.col_label();
  const int rbits = static_cast<int>(map.row_vars().size());
  const int cbits = static_cast<int>(map.col_vars().size());
  const std::size_t rw = std::max(rl.size(), static_cast<std::size_t>(rbits));

  std::string out = "// " + std::string(rw + 3, ' ') + cl + "\n";
  std::vector<std::string> cols;
  for (auto p : map.col_seq()) {
    cols.push_back(text::bits(p, cbits));
  }
  out += "// " + pad(rl, rw) + "  " + text::join(cols, "  ") + "\n";
  for (std::size_t r = 0; r < map.num_rows(); ++r) {
    out += "// " + pad(text::bits(map.row_seq()[r], rbits), rw);
    for (std::size_t c = 0; c < map.num_cols(); ++c) {
      out += " | ";
      out += tri_glyph(map.cell(r, c));
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string> comment_lines(std::string_view text)
{
  std::vector<std::string> lines;
  for (const auto& raw : text::split_lines(text)) {
    const auto t = text::trim(raw);
    if (t.empty()) {
      continue;
    }
    if (!text::starts_with(t, "//")) {
      break;
    }
    lines.emplace_back(text::trim(t.substr(2)));
  }
  return lines;
}

std::uint32_t parse_pattern(const std::string& tok, std::size_t width, const char* what)
{
  if (tok.size() != width || tok.find_first_not_of("01") != std::string::npos) {
    throw KmapParseError(std::string("malformed ") + what + " pattern '" + tok + "'");
  }
  return static_cast<std::uint32_t>(std::stoul(tok, nullptr, 2));
}

} // namespace

KarnaughMap parse_kmap(std::string_view text, const std::vector<std::string>& var_order)
{
  const auto lines = comment_lines(text);
  if (lines.size() < 4) {
    throw KmapParseError("kmap text too short");
  }
  const auto head1 = text::split_ws(lines[0]);
  const auto head2 = text::split_ws(lines[1]);
  if (head1.size() != 1 || head2.size() < 3) {
    throw KmapParseError("malformed header");
  }
  const std::string col_label = head1[0];
  const std::string row_label = head2[0];
  const std::size_t cbits = col_label.size();
  const std::size_t rbits = row_label.size();
  if (cbits == 0 || cbits > 3 || rbits == 0 || rbits > 3) {
    throw KmapParseError("malformed header: unsupported label width");
  }

  std::vector<std::uint32_t> col_seq;
  for (std::size_t i = 1; i < head2.size(); ++i) {
    col_seq.push_back(parse_pattern(head2[i], cbits, "column"));
  }
  if (col_seq.size() != (std::size_t{1} << cbits)) {
    throw KmapParseError("malformed header: wrong column count");
  }

  std::vector<std::uint32_t> row_seq;
  std::vector<std::vector<Tri>> cells;
  for (std::size_t li = 2; li < lines.size(); ++li) {
    const auto toks = text::split_ws(lines[li]);
    if (toks.empty()) {
      continue;
    }
    row_seq.push_back(parse_pattern(toks[0], rbits, "row"));
    std::vector<Tri> row;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (toks[i] == "|") {
        continue;
      }
      if (toks[i].size() != 1) {
        throw KmapParseError("unknown cell symbol '" + toks[i] + "'");
      }
      auto t = tri_from_glyph(toks[i][0]);
      if (!t) {
        throw KmapParseError("unknown cell symbol '" + toks[i] + "'");
      }
      row.push_back(*t);
    }
    if (row.size() != col_seq.size()) {
      throw KmapParseError("ragged row in kmap");
    }
    cells.push_back(std::move(row));
  }
  if (row_seq.size() != (std::size_t{1} << rbits)) {
    throw KmapParseError("wrong number of kmap rows");
  }

  std::vector<std::string> names;
  for (char ch : row_label + col_label) {
    names.emplace_back(1, ch);
  }
  std::vector<std::string> order = var_order;
  if (order.empty()) {
    order = names;
    std::sort(order.begin(), order.end());
  }
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) {
    pos[order[i]] = i;
  }
  if (pos.size() != names.size() || order.size() != names.size()) {
    throw KmapParseError("variable order does not match map labels");
  }
  std::vector<std::size_t> rvars;
  std::vector<std::size_t> cvars;
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = pos.find(names[i]);
    if (it == pos.end()) {
      throw KmapParseError("variable order does not match map labels");
    }
    (i < rbits ? rvars : cvars).push_back(it->second);
  }

  // Build a placeholder map to reuse the index arithmetic, then fill the spec.
  const std::size_t n = order.size();
  std::vector<Tri> rows(std::size_t{1} << n, Tri::zero);
  std::vector<bool> seen(rows.size(), false);
  KarnaughMap probe(BooleanSpec(order, {}), rvars, cvars, row_seq, col_seq);
  for (std::size_t r = 0; r < row_seq.size(); ++r) {
    for (std::size_t c = 0; c < col_seq.size(); ++c) {
      const auto idx = probe.index_at(r, c);
      if (seen[idx]) {
        throw KmapParseError("duplicate cell address");
      }
      seen[idx] = true;
      rows[idx] = cells[r][c];
    }
  }
  return KarnaughMap(spec_from_rows(order, rows), rvars, cvars, row_seq, col_seq);
}

bool same_cells(const KarnaughMap& a, const KarnaughMap& b)
{
  const auto& va = a.spec().vars();
  const auto& vb = b.spec().vars();
  if (std::set<std::string>(va.begin(), va.end()) != std::set<std::string>(vb.begin(), vb.end())) {
    return false;
  }
  const std::size_t n = va.size();
  std::map<std::string, std::size_t> pos_b;
  for (std::size_t i = 0; i < n; ++i) {
    pos_b[vb[i]] = i;
  }
  for (std::size_t r = 0; r < a.num_rows(); ++r) {
    for (std::size_t c = 0; c < a.num_cols(); ++c) {
      const std::uint32_t ia = a.index_at(r, c);
      std::uint32_t ib = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if ((ia >> (n - 1 - v)) & 1U) {
          ib |= 1U << (n - 1 - pos_b[va[v]]);
        }
      }
      if (a.cell(r, c) != b.spec().value(ib)) {
        return false;
      }
    }
  }
  return true;
}

} // namespace hdlforge
