#include "oracles.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace oracle {

using hdlforge::ProblemRecord;
using hdlforge::RecordKind;
namespace vlog = hdlforge::vlog;

std::string read_fixture(const std::string& name)
{
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  if (!in) {
    throw std::runtime_error("missing fixture " + name);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string rows_from_sets(std::size_t n, const std::vector<std::uint32_t>& ones, const std::vector<std::uint32_t>& dcs)
{
  std::string rows(std::size_t{1} << n, '0');
  for (auto m : ones) {
    rows.at(m) = '1';
  }
  for (auto m : dcs) {
    rows.at(m) = 'x';
  }
  return rows;
}

std::string sop_string(const std::vector<std::string>& vars, const std::vector<std::uint32_t>& ones)
{
  std::vector<std::uint32_t> sorted = ones;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = vars.size();
  std::string out;
  for (auto m : sorted) {
    if (!out.empty()) {
      out += " | ";
    }
    out += "(";
    for (std::size_t i = 0; i < n; ++i) {
      bool bit = (m >> (n - 1 - i)) & 1U;
      out += (i ? " & " : "") + std::string(bit ? "" : "~") + vars[i];
    }
    out += ")";
  }
  return out.empty() ? "1'b0" : out;
}

bool eval_sop_text(const std::string& text, const std::vector<std::string>& vars, std::uint32_t row)
{
  std::map<std::string, bool> val;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    val[vars[i]] = (row >> (vars.size() - 1 - i)) & 1U;
  }
  std::stringstream terms(text);
  std::string term;
  bool any = false;
  while (std::getline(terms, term, '|')) {
    bool all = true;
    std::stringstream lits(term);
    std::string lit;
    while (std::getline(lits, lit, '&')) {
      lit.erase(std::remove_if(lit.begin(), lit.end(), [](char c) { return c == '(' || c == ')' || c == ' '; }),
                lit.end());
      if (lit == "1'b0") {
        all = false;
        continue;
      }
      bool neg = !lit.empty() && lit[0] == '~';
      if (neg) {
        lit.erase(0, 1);
      }
      all = all && (val.at(lit) != neg);
    }
    any = any || all;
  }
  return any;
}

std::vector<bool> dfs_reachable(const std::vector<std::vector<std::size_t>>& next)
{
  std::vector<bool> seen(next.size(), false);
  std::function<void(std::size_t)> visit = [&](std::size_t s) {
    if (seen[s]) {
      return;
    }
    seen[s] = true;
    for (auto t : next[s]) {
      visit(t);
    }
  };
  if (!next.empty()) {
    visit(0);
  }
  return seen;
}

bool is_gray_cycle(const std::vector<std::uint32_t>& seq, int bits)
{
  if (seq.size() != (std::size_t{1} << bits)) {
    return false;
  }
  std::set<std::uint32_t> uniq(seq.begin(), seq.end());
  if (uniq.size() != seq.size() || *uniq.rbegin() >= seq.size()) {
    return false;
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::uint32_t d = seq[i] ^ seq[(i + 1) % seq.size()];
    if (seq.size() > 1 && (d == 0 || (d & (d - 1)) != 0)) {
      return false;
    }
  }
  return true;
}

std::uint64_t binomial(unsigned n, unsigned k)
{
  if (k > n) {
    return 0;
  }
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

double pass_at_k_enumerated(unsigned n, unsigned c, unsigned k)
{
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  std::uint64_t total = 0;
  std::uint64_t hit = 0;
  do {
    ++total;
    for (unsigned i = 0; i < c; ++i) {
      if (pick[i]) {
        ++hit;
        break;
      }
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return static_cast<double>(hit) / static_cast<double>(total);
}

double pass_at_k_binomial(unsigned n, unsigned c, unsigned k)
{
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  auto choose = [](unsigned a, unsigned b) {
    cpp_int r = 1;
    if (b > a) {
      return cpp_int(0);
    }
    for (unsigned i = 1; i <= b; ++i) {
      r = r * (a - b + i) / i;
    }
    return r;
  };
  cpp_rational fail(choose(n - c, k), choose(n, k));
  return static_cast<double>(cpp_rational(1) - fail);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> lines_of(const std::string& s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    out.push_back(line);
  }
  return out;
}

std::string strip(const std::string& s)
{
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) {
    return "";
  }
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string w;
  while (ss >> w) {
    out.push_back(w);
  }
  return out;
}

// Comment lines of the representation, with the leading "//" removed.
std::vector<std::string> comment_lines(const std::string& problem)
{
  std::vector<std::string> out;
  for (const auto& l : lines_of(problem)) {
    std::string t = strip(l);
    if (t.rfind("//", 0) == 0) {
      out.push_back(t.substr(2));
    }
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) {
    out.push_back(strip(part));
  }
  return out;
}

std::vector<std::string> input_names(const std::vector<HeaderPort>& ports)
{
  std::vector<std::string> out;
  for (const auto& p : ports) {
    if (p.input) {
      out.push_back(p.name);
    }
  }
  return out;
}

const HeaderPort& only_output(const std::vector<HeaderPort>& ports)
{
  const HeaderPort* found = nullptr;
  for (const auto& p : ports) {
    if (!p.input) {
      if (found) {
        throw std::runtime_error("more than one output");
      }
      found = &p;
    }
  }
  if (!found) {
    throw std::runtime_error("no output port");
  }
  return *found;
}

std::optional<std::uint32_t> cell_value(const std::string& s)
{
  if (s == "x") {
    return std::nullopt;
  }
  return static_cast<std::uint32_t>(std::stoul(s, nullptr, 2));
}

std::string show(const vlog::Value& v)
{
  if (v.has_x()) {
    return "x";
  }
  return std::to_string(v.bits);
}

bool equals(const vlog::Value& v, std::uint64_t want)
{
  return !v.has_x() && v.bits == want;
}

std::string replay_rows(const std::string& module, const std::vector<HeaderPort>& ports,
                        const std::map<std::uint32_t, char>& rows)
{
  const auto vars = input_names(ports);
  if (rows.size() != (std::size_t{1} << vars.size())) {
    return "representation does not cover every row";
  }
  vlog::Simulator sim(vlog::parse_module(module));
  const auto& out = only_output(ports).name;
  for (auto [row, c] : rows) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      sim.set(vars[i], (row >> (vars.size() - 1 - i)) & 1U);
    }
    sim.settle();
    if (c != 'x' && !equals(sim.get(out), c == '1' ? 1 : 0)) {
      return "row " + std::to_string(row) + ": module gives " + show(sim.get(out)) + ", representation " + c;
    }
  }
  return "";
}

// The register written by the clocked block.
std::string state_register(const vlog::Module& m)
{
  std::function<std::string(const vlog::Stmt&)> find = [&](const vlog::Stmt& s) -> std::string {
    using K = vlog::Stmt::Kind;
    if (s.kind == K::nonblocking && s.lhs && s.lhs->kind == vlog::Expr::Kind::ident) {
      return s.lhs->name;
    }
    std::vector<const vlog::Stmt*> kids;
    for (const auto& b : s.body) {
      kids.push_back(b.get());
    }
    if (s.then_branch) {
      kids.push_back(s.then_branch.get());
    }
    if (s.else_branch) {
      kids.push_back(s.else_branch.get());
    }
    for (const auto& it : s.items) {
      kids.push_back(it.body.get());
    }
    for (auto* k : kids) {
      if (auto r = find(*k); !r.empty()) {
        return r;
      }
    }
    return "";
  };
  for (const auto& b : m.blocks) {
    if (!b.combinational) {
      return find(*b.body);
    }
  }
  return "";
}

std::uint64_t param_value(const vlog::Simulator& sim, const std::string& name)
{
  auto v = sim.param(name);
  if (!v || v->has_x()) {
    throw std::runtime_error("no parameter for state " + name);
  }
  return v->bits;
}

struct ResetFacts {
  std::string target;
  bool async = false;
};

std::optional<ResetFacts> read_reset(const std::string& problem)
{
  static const std::regex re(R"((?:reset to state|puts the machine in state|Resets into state) (\w+))");
  std::smatch m;
  if (!std::regex_search(problem, m, re)) {
    return std::nullopt;
  }
  return ResetFacts{m[1], problem.find("asynchronous") != std::string::npos};
}

std::string replay_edges(const std::string& problem, const std::string& module)
{
  const auto edges = read_edge_list(problem);
  const auto ports = header_ports(problem);
  if (edges.empty()) {
    return "no edges in problem";
  }
  vlog::Module mod = vlog::parse_module(module);
  const std::string reg = state_register(mod);
  std::string clk;
  std::string rst;
  for (const auto& b : mod.blocks) {
    if (!b.combinational && !b.posedges.empty()) {
      clk = b.posedges.front();
    }
  }
  std::set<std::string> edge_inputs;
  for (const auto& e : edges) {
    edge_inputs.insert(e.input);
  }
  std::vector<std::string> data;
  for (const auto& p : ports) {
    if (p.input && p.name != clk) {
      if (edge_inputs.count(p.name)) {
        data.push_back(p.name);
      } else {
        rst = p.name;
      }
    }
  }
  vlog::Simulator sim(mod);

  // Completeness: every state lists one edge per value of every input it reads.
  std::map<std::string, std::set<std::pair<std::string, std::uint32_t>>> seen;
  for (const auto& e : edges) {
    if (!seen[e.from].insert({e.input, e.value}).second) {
      return "duplicate edge from " + e.from;
    }
  }
  for (const auto& [s, vals] : seen) {
    std::map<std::string, std::size_t> per_input;
    for (const auto& [in, v] : vals) {
      ++per_input[in];
    }
    for (const auto& [in, count] : per_input) {
      int width = 1;
      for (const auto& p : ports) {
        if (p.name == in) {
          width = p.width;
        }
      }
      if (count != (std::size_t{1} << width)) {
        return "state " + s + " does not list every value of " + in;
      }
    }
  }

  for (std::uint64_t fill : {std::uint64_t{0}, ~std::uint64_t{0}}) {
    for (const auto& e : edges) {
      if (!rst.empty()) {
        sim.set(rst, 0);
      }
      for (const auto& d : data) {
        int width = 1;
        for (const auto& p : ports) {
          if (p.name == d) {
            width = p.width;
          }
        }
        sim.set(d, fill & ((std::uint64_t{1} << width) - 1));
      }
      sim.set(e.input, e.value);
      sim.set(reg, param_value(sim, e.from));
      sim.settle();
      if (!equals(sim.get(e.out_name), static_cast<std::uint64_t>(e.out))) {
        return "edge " + e.from + " -> " + e.to + ": output " + show(sim.get(e.out_name));
      }
      sim.posedge(clk);
      if (!equals(sim.get(reg), param_value(sim, e.to))) {
        return "edge " + e.from + " -> " + e.to + ": lands in code " + show(sim.get(reg));
      }
    }
  }

  if (auto rf = read_reset(problem)) {
    if (rst.empty()) {
      return "reset sentence but no reset port";
    }
    for (const auto& e : edges) {
      sim.set(rst, 0);
      sim.set(reg, param_value(sim, e.from));
      sim.settle();
      sim.set(rst, 1);
      if (rf->async) {
        sim.posedge(rst);
      } else {
        sim.posedge(clk);
      }
      if (!equals(sim.get(reg), param_value(sim, rf->target))) {
        return "reset from " + e.from + " does not reach " + rf->target;
      }
    }
  }
  return "";
}

std::vector<std::uint32_t> column_values(const std::string& header_middle)
{
  static const std::regex re(R"(=([01]+))");
  std::vector<std::uint32_t> vals;
  for (auto it = std::sregex_iterator(header_middle.begin(), header_middle.end(), re); it != std::sregex_iterator();
       ++it) {
    vals.push_back(static_cast<std::uint32_t>(std::stoul((*it)[1], nullptr, 2)));
  }
  return vals;
}

std::vector<std::uint32_t> table_columns(const std::string& problem)
{
  for (const auto& l : comment_lines(problem)) {
    if (l.find("ext state") != std::string::npos) {
      auto parts = split(l, '|');
      if (parts.size() >= 2) {
        return column_values(parts[1]);
      }
    }
  }
  return {};
}

std::string replay_state_table(const std::string& problem, const std::string& module)
{
  static const std::regex bit_re(R"(functions (\w+)\[(\d+)\] and (\w+))");
  std::smatch m;
  if (!std::regex_search(problem, m, bit_re)) {
    return "no exported bit named";
  }
  const std::string next_port = m[1].str() + m[2].str();
  const int bit = std::stoi(m[2]);
  const std::string out = m[3];
  const auto rows = read_state_table(problem);
  const auto cols = table_columns(problem);
  const auto ports = header_ports(problem);
  std::string state_in;
  std::string data_in;
  for (const auto& p : ports) {
    if (p.input && p.name != "clk") {
      (p.name == "y" ? state_in : data_in) = p.name;
    }
  }
  vlog::Simulator sim(vlog::parse_module(module));
  for (const auto& row : rows) {
    if (row.next.size() != cols.size()) {
      return "ragged table row";
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
      sim.set(state_in, std::stoul(row.present, nullptr, 2));
      sim.set(data_in, cols[c]);
      sim.settle();
      const std::uint64_t want = (std::stoul(row.next[c], nullptr, 2) >> bit) & 1U;
      if (!equals(sim.get(next_port), want) || !equals(sim.get(out), static_cast<std::uint64_t>(row.out))) {
        return "row " + row.present + " column " + std::to_string(cols[c]) + " mismatches";
      }
    }
  }
  return rows.empty() ? "no table rows" : "";
}

std::string replay_onehot(const std::string& problem, const std::string& module)
{
  const auto codes = read_onehot_codes(problem);
  const auto rows = read_state_table(problem);
  const auto cols = table_columns(problem);
  if (codes.size() != rows.size() || rows.empty()) {
    return "encoding and table disagree in size";
  }
  vlog::Simulator sim(vlog::parse_module(module));
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      sim.set("state", codes.at(row.present));
      sim.set("in", cols[c]);
      sim.settle();
      if (!equals(sim.get("next_state"), codes.at(row.next.at(c)))) {
        return "state " + row.present + " input " + std::to_string(cols[c]) + ": next_state " +
               show(sim.get("next_state"));
      }
      if (!equals(sim.get("out"), static_cast<std::uint64_t>(row.out))) {
        return "state " + row.present + ": out " + show(sim.get("out"));
      }
    }
  }
  return "";
}

std::string replay_waveform(const std::string& problem, const std::string& module, bool sequential)
{
  const Wave w = read_waveform(problem);
  if (w.rows.empty()) {
    return "no waveform rows";
  }
  vlog::Simulator sim(vlog::parse_module(module));
  const std::size_t out_col = w.names.size() - 1;
  std::optional<std::uint32_t> clk_prev;
  bool clocked = false;
  for (const auto& row : w.rows) {
    for (std::size_t i = 0; i < out_col; ++i) {
      const auto& v = row.values[i];
      if (!v) {
        return "unknown input in waveform";
      }
      sim.set(w.names[i], *v);
    }
    sim.settle();
    if (sequential) {
      auto clk = row.values[0];
      if (clk_prev && *clk_prev == 0 && *clk == 1) {
        sim.posedge(w.names[0]);
        clocked = true;
      }
      clk_prev = clk;
    }
    const auto& want = row.values[out_col];
    if (!want) {
      if (!sequential || clocked) {
        return "unexpected x at " + std::to_string(row.time) + "ns";
      }
      continue;
    }
    if (!equals(sim.get(w.names[out_col]), *want)) {
      return "at " + std::to_string(row.time) + "ns module gives " + show(sim.get(w.names[out_col]));
    }
  }
  return "";
}

} // namespace

std::vector<HeaderPort> header_ports(const std::string& problem)
{
  static const std::regex re(R"(^\s*(input|output)\s+(?:reg\s+|wire\s+)?(?:\[(\d+):(\d+)\]\s*)?(\w+)\s*,?\s*$)");
  std::vector<HeaderPort> out;
  for (const auto& l : lines_of(problem)) {
    if (l.find("module ") != std::string::npos) {
      out.clear();  // keep the last header only
    }
    std::smatch m;
    if (std::regex_match(l, m, re)) {
      int width = m[2].matched ? std::stoi(m[2]) - std::stoi(m[3]) + 1 : 1;
      out.push_back({m[4], m[1] == "input", width});
    }
  }
  return out;
}

std::map<std::uint32_t, char> read_kmap_cells(const std::string& problem)
{
  const auto vars = input_names(header_ports(problem));
  const auto cl = comment_lines(problem);
  if (cl.size() < 3) {
    throw std::runtime_error("kmap too short");
  }
  const std::string col_letters = strip(cl[0]);
  const auto head = words(cl[1]);
  const std::string row_letters = head.at(0);
  const std::vector<std::string> col_pats(head.begin() + 1, head.end());
  auto pos = [&](char letter) {
    auto it = std::find(vars.begin(), vars.end(), std::string(1, letter));
    if (it == vars.end()) {
      throw std::runtime_error("kmap names an unknown variable");
    }
    return vars.size() - 1 - static_cast<std::size_t>(it - vars.begin());
  };
  std::map<std::uint32_t, char> cells;
  for (std::size_t r = 2; r < cl.size(); ++r) {
    auto parts = split(cl[r], '|');
    if (parts.size() != col_pats.size() + 1) {
      continue;
    }
    for (std::size_t c = 0; c < col_pats.size(); ++c) {
      std::uint32_t row = 0;
      for (std::size_t i = 0; i < row_letters.size(); ++i) {
        row |= static_cast<std::uint32_t>(parts[0].at(i) - '0') << pos(row_letters[i]);
      }
      for (std::size_t i = 0; i < col_letters.size(); ++i) {
        row |= static_cast<std::uint32_t>(col_pats[c].at(i) - '0') << pos(col_letters[i]);
      }
      if (!cells.emplace(row, parts[c + 1].at(0)).second) {
        throw std::runtime_error("kmap cell appears twice");
      }
    }
  }
  return cells;
}

std::map<std::uint32_t, char> read_truth_table_rows(const std::string& problem)
{
  const auto vars = input_names(header_ports(problem));
  std::map<std::uint32_t, char> rows;
  bool in_table = false;
  for (const auto& l : lines_of(problem)) {
    auto w = words(l);
    if (w.size() != vars.size() + 1) {
      continue;
    }
    if (std::equal(vars.begin(), vars.end(), w.begin())) {
      in_table = true;
      continue;
    }
    if (!in_table) {
      continue;
    }
    std::uint32_t row = 0;
    bool ok = true;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      ok = ok && (w[i] == "0" || w[i] == "1");
      row = (row << 1) | (w[i] == "1" ? 1U : 0U);
    }
    if (ok) {
      rows[row] = w.back().at(0);
    }
  }
  return rows;
}

std::vector<Edge> read_edge_list(const std::string& problem)
{
  static const std::regex moore(R"(^ (\S+) \((\w+)=([01])\) —(\w+)=([01]+)—> (\S+)$)");
  static const std::regex mealy(R"(^ (\S+) —(\w+)=([01]+) \((\w+)=([01])\)→ (\S+)$)");
  std::vector<Edge> out;
  for (const auto& l : comment_lines(problem)) {
    std::smatch m;
    if (std::regex_match(l, m, moore)) {
      out.push_back({m[1], m[4], static_cast<std::uint32_t>(std::stoul(m[5], nullptr, 2)), m[6], m[2],
                     std::stoi(m[3]), false});
    } else if (std::regex_match(l, m, mealy)) {
      out.push_back({m[1], m[2], static_cast<std::uint32_t>(std::stoul(m[3], nullptr, 2)), m[6], m[4],
                     std::stoi(m[5]), true});
    }
  }
  return out;
}

std::vector<TableRow> read_state_table(const std::string& problem)
{
  std::vector<TableRow> out;
  for (const auto& l : comment_lines(problem)) {
    auto parts = split(l, '|');
    if (parts.size() != 3 || l.find("ext state") != std::string::npos) {
      continue;
    }
    out.push_back({parts[0], split(parts[1], ','), std::stoi(parts[2])});
  }
  return out;
}

std::map<std::string, std::uint64_t> read_onehot_codes(const std::string& problem)
{
  static const std::regex re(R"((\w+)=(\d+)'b([01]+))");
  std::map<std::string, std::uint64_t> out;
  for (auto it = std::sregex_iterator(problem.begin(), problem.end(), re); it != std::sregex_iterator(); ++it) {
    out[(*it)[1]] = std::stoull((*it)[3], nullptr, 2);
  }
  return out;
}

Wave read_waveform(const std::string& problem)
{
  Wave w;
  for (const auto& l : comment_lines(problem)) {
    auto t = words(l);
    if (t.empty()) {
      continue;
    }
    if (t[0] == "time") {
      w.names.assign(t.begin() + 1, t.end());
      continue;
    }
    if (w.names.empty() || t[0].size() < 3 || t[0].substr(t[0].size() - 2) != "ns" ||
        t.size() != w.names.size() + 1) {
      continue;
    }
    WaveRow row{static_cast<std::uint32_t>(std::stoul(t[0])), {}};
    for (std::size_t i = 1; i < t.size(); ++i) {
      row.values.push_back(cell_value(t[i]));
    }
    w.rows.push_back(std::move(row));
  }
  return w;
}

std::string replay(const ProblemRecord& r)
{
  std::string problem = r.problem;
  RecordKind kind = r.kind;
  if (kind == RecordKind::repair) {
    const std::string base = r.meta.at("base_kind");
    if (base == "concat" || base == "shift") {
      return "";
    }
    kind = hdlforge::kind_from_name(base);
    problem = problem.substr(0, problem.find("2. Erroneous Implementation"));
  }
  const std::string module = hdlforge::extract_module(r.solution);
  try {
    switch (kind) {
    case RecordKind::kmap:
      return replay_rows(module, header_ports(problem), read_kmap_cells(problem));
    case RecordKind::truthtable:
      return replay_rows(module, header_ports(problem), read_truth_table_rows(problem));
    case RecordKind::fsm_moore:
      if (problem.find("Present state") != std::string::npos) {
        return replay_state_table(problem, module);
      }
      return replay_edges(problem, module);
    case RecordKind::fsm_mealy:
      return replay_edges(problem, module);
    case RecordKind::fsm_onehot_comb:
      return replay_onehot(problem, module);
    case RecordKind::waveform_comb:
      return replay_waveform(problem, module, false);
    case RecordKind::waveform_seq:
      return replay_waveform(problem, module, true);
    case RecordKind::repair:
      break;
    }
  } catch (const std::exception& e) {
    return std::string("replay error: ") + e.what();
  }
  return "unhandled kind";
}

bool modules_differ(const std::string& a, const std::string& b, std::uint64_t seed)
{
  vlog::Module ma = vlog::parse_module(a);
  vlog::Module mb = vlog::parse_module(b);
  std::set<std::string> edges;
  for (const auto& blk : ma.blocks) {
    edges.insert(blk.posedges.begin(), blk.posedges.end());
  }
  std::vector<vlog::PortDecl> ins;
  std::vector<std::string> outs;
  for (const auto& p : ma.ports) {
    if (!p.is_input) {
      outs.push_back(p.name);
    } else if (!edges.count(p.name) || p.name.find("reset") != std::string::npos) {
      ins.push_back(p);
    }
  }
  vlog::Simulator sa(ma);
  vlog::Simulator sb(mb);
  auto differ = [&] {
    for (const auto& o : outs) {
      if (!(sa.get(o) == sb.get(o))) {
        return true;
      }
    }
    return false;
  };
  auto drive = [&](const std::string& n, std::uint64_t v) {
    sa.set(n, v);
    sb.set(n, v);
  };
  std::mt19937_64 gen(seed);
  auto random_word = [&](int width) {
    return width >= 64 ? gen() : gen() & ((std::uint64_t{1} << width) - 1);
  };

  if (edges.empty()) {
    int total = 0;
    for (const auto& p : ins) {
      total += p.width;
    }
    auto apply = [&](std::uint64_t packed, bool random) {
      for (const auto& p : ins) {
        drive(p.name, random ? random_word(p.width) : packed & ((std::uint64_t{1} << p.width) - 1));
        packed >>= p.width;
      }
      sa.settle();
      sb.settle();
      return differ();
    };
    if (total <= 16) {
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << total); ++v) {
        if (apply(v, false)) {
          return true;
        }
      }
      return false;
    }
    for (int i = 0; i < 1 << 14; ++i) {
      if (apply(0, true)) {
        return true;
      }
    }
    return false;
  }

  std::string clk;
  std::string rst;
  for (const auto& p : ma.ports) {
    if (p.is_input && p.name.find("reset") != std::string::npos) {
      rst = p.name;
    } else if (p.is_input && edges.count(p.name)) {
      clk = p.name;
    }
  }
  for (int trial = 0; trial < 16; ++trial) {
    for (const auto& p : ins) {
      drive(p.name, 0);
    }
    if (!rst.empty()) {
      drive(rst, 1);
      if (edges.count(rst)) {
        sa.posedge(rst);
        sb.posedge(rst);
      }
      sa.posedge(clk);
      sb.posedge(clk);
      drive(rst, 0);
    }
    for (int cycle = 0; cycle < 256; ++cycle) {
      for (const auto& p : ins) {
        if (p.name != rst) {
          drive(p.name, random_word(p.width));
        }
      }
      sa.settle();
      sb.settle();
      if (differ()) {
        return true;
      }
      sa.posedge(clk);
      sb.posedge(clk);
      if (differ()) {
        return true;
      }
    }
  }
  return false;
}

} // namespace oracle
