#include "hdlforge/fsm.hpp"

#include "hdlforge/text.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace hdlforge {

std::vector<bool> reachable_states(const std::vector<std::vector<std::size_t>>& transitions, std::size_t from)
{
  std::vector<bool> seen(transitions.size(), false);
  if (from >= transitions.size()) {
    return seen;
  }
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (auto t : transitions[s]) {
      if (t < seen.size() && !seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return seen;
}

FsmGraph::FsmGraph(std::vector<std::string> state_names, int input_width,
                   std::vector<std::vector<std::size_t>> transitions, OutputKind kind, std::vector<std::uint8_t> outputs)
  : names_(std::move(state_names)), width_(input_width), next_(std::move(transitions)), kind_(kind),
    out_(std::move(outputs))
{
  const std::size_t n = names_.size();
  if (n == 0) {
    throw ContractError("FsmGraph: no states");
  }
  if (width_ < 1 || width_ > 4) {
    throw ContractError("FsmGraph: input width must be in [1, 4]");
  }
  if (std::set<std::string>(names_.begin(), names_.end()).size() != n) {
    throw ContractError("FsmGraph: duplicate state names");
  }
  if (next_.size() != n) {
    throw ContractError("FsmGraph: transition table must have one row per state");
  }
  for (const auto& row : next_) {
    if (row.size() != num_inputs()) {
      throw ContractError("FsmGraph: every state needs exactly 2^w outgoing transitions");
    }
    for (auto t : row) {
      if (t >= n) {
        throw ContractError("FsmGraph: transition target out of range");
      }
    }
  }
  const std::size_t expected = kind_ == OutputKind::moore ? n : n * num_inputs();
  if (out_.size() != expected) {
    throw ContractError("FsmGraph: output assignment is not total");
  }
  for (auto& o : out_) {
    if (o > 1) {
      throw ContractError("FsmGraph: outputs must be bits");
    }
  }
  const auto seen = reachable_states(next_, 0);
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw ContractError("FsmGraph: some state is unreachable from the reset state");
  }
}

std::size_t FsmGraph::next(std::size_t state, std::uint32_t input) const
{
  if (state >= next_.size()) {
    throw ContractError("FsmGraph::next: unknown state");
  }
  if (input >= num_inputs()) {
    throw ContractError("FsmGraph::next: input out of range");
  }
  return next_[state][input];
}

bool FsmGraph::state_output(std::size_t state) const
{
  if (kind_ != OutputKind::moore) {
    throw ContractError("FsmGraph::state_output: machine is Mealy");
  }
  return out_.at(state) != 0;
}

bool FsmGraph::edge_output(std::size_t state, std::uint32_t input) const
{
  if (kind_ != OutputKind::mealy) {
    throw ContractError("FsmGraph::edge_output: machine is Moore");
  }
  if (state >= names_.size() || input >= num_inputs()) {
    throw ContractError("FsmGraph::edge_output: edge out of range");
  }
  return out_[state * num_inputs() + input] != 0;
}

std::optional<std::size_t> FsmGraph::index_of(const std::string& name) const
{
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - names_.begin());
}

StepResult step(const FsmGraph& fsm, std::size_t state, std::uint32_t input)
{
  const std::size_t nxt = fsm.next(state, input);
  const bool out = fsm.kind() == OutputKind::moore ? fsm.state_output(nxt) : fsm.edge_output(state, input);
  return {nxt, out};
}

int binary_width(std::size_t n_states)
{
  int w = 1;
  while ((std::size_t{1} << w) < n_states) {
    ++w;
  }
  return w;
}

StateEncoding binary_encoding(std::size_t n_states)
{
  StateEncoding e{EncodingKind::binary, binary_width(n_states), {}};
  for (std::uint32_t i = 0; i < n_states; ++i) {
    e.codes.push_back(i);
  }
  return e;
}

StateEncoding one_hot_encoding(std::size_t n_states)
{
  if (n_states > 32) {
    throw ContractError("one_hot_encoding: too many states");
  }
  StateEncoding e{EncodingKind::one_hot, static_cast<int>(n_states), {}};
  for (std::uint32_t i = 0; i < n_states; ++i) {
    e.codes.push_back(1U << i);
  }
  return e;
}

StateEncoding explicit_encoding(std::vector<std::uint32_t> codes, int width)
{
  if (width < 1 || width > 32) {
    throw ContractError("explicit_encoding: width out of range");
  }
  std::set<std::uint32_t> seen;
  for (auto c : codes) {
    if (width < 32 && (c >> width) != 0) {
      throw ContractError("explicit_encoding: code does not fit the width");
    }
    if (!seen.insert(c).second) {
      throw ContractError("explicit_encoding: codes are not injective");
    }
  }
  return {EncodingKind::explicit_codes, width, std::move(codes)};
}

StateEncoding assign_encoding(const FsmGraph& fsm, EncodingKind kind)
{
  switch (kind) {
  case EncodingKind::binary:
    return binary_encoding(fsm.num_states());
  case EncodingKind::one_hot:
    return one_hot_encoding(fsm.num_states());
  case EncodingKind::explicit_codes:
    break;
  }
  throw ContractError("assign_encoding: explicit codes must be supplied by the caller");
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> prufer_decode(const std::vector<std::size_t>& code, std::size_t n)
{
  std::vector<std::size_t> degree(n, 1);
  for (auto v : code) {
    ++degree[v];
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto v : code) {
    std::size_t leaf = 0;
    while (degree[leaf] != 1) {
      ++leaf;
    }
    edges.emplace_back(leaf, v);
    --degree[leaf];
    --degree[v];
  }
  std::size_t u = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] == 1) {
      if (u == n) {
        u = i;
      } else {
        edges.emplace_back(u, i);
        break;
      }
    }
  }
  return edges;
}

} // namespace

std::vector<std::size_t> random_tree_parents(std::size_t n, std::size_t max_children, Rng& rng, int max_retries)
{
  if (n < 2) {
    throw ContractError("random_tree_parents: need at least two nodes");
  }
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<std::size_t> code(n - 2);
    for (auto& c : code) {
      c = static_cast<std::size_t>(rng.uniform(n));
    }
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [u, v] : prufer_decode(code, n)) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::vector<std::size_t> parent(n, n);
    parent[0] = 0;
    std::deque<std::size_t> queue{0};
    bool ok = true;
    while (!queue.empty() && ok) {
      const auto s = queue.front();
      queue.pop_front();
      std::size_t children = 0;
      for (auto t : adj[s]) {
        if (parent[t] == n) {
          parent[t] = s;
          queue.push_back(t);
          ++children;
        }
      }
      ok = children <= max_children;
    }
    if (ok) {
      return parent;
    }
  }
  throw std::runtime_error("random_tree_parents: retry budget exhausted");
}

namespace {

std::vector<std::vector<std::size_t>> random_transitions(std::size_t n, int w, Rng& rng, const GenerateOptions& opts)
{
  const std::uint32_t slots = 1U << w;
  const auto parent = random_tree_parents(n, slots, rng, opts.max_tree_retries);
  std::vector<std::vector<std::size_t>> next(n, std::vector<std::size_t>(slots, n));
  for (std::size_t child = 1; child < n; ++child) {
    auto& row = next[parent[child]];
    std::vector<std::uint32_t> free;
    for (std::uint32_t v = 0; v < slots; ++v) {
      if (row[v] == n) {
        free.push_back(v);
      }
    }
    row[rng.pick(free)] = child;
  }
  for (auto& row : next) {
    for (auto& t : row) {
      if (t == n) {
        t = static_cast<std::size_t>(rng.uniform(n));
      }
    }
  }
  return next;
}

std::vector<std::uint8_t> random_outputs(std::size_t count, Rng& rng, bool reject_constant)
{
  std::vector<std::uint8_t> out(count);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    for (auto& o : out) {
      o = rng.coin() ? 1 : 0;
    }
    const auto ones = std::count(out.begin(), out.end(), std::uint8_t{1});
    if (!reject_constant || (ones != 0 && static_cast<std::size_t>(ones) != count)) {
      return out;
    }
  }
  throw std::runtime_error("random_outputs: retry budget exhausted");
}

std::vector<std::string> state_letters(std::size_t n, Rng& rng, bool shuffle)
{
  if (n > 26) {
    throw ContractError("generate: at most 26 states");
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.emplace_back(1, static_cast<char>('A' + i));
  }
  if (shuffle) {
    rng.shuffle(names);
  }
  return names;
}

FsmGraph generate(std::size_t n, int w, Rng& rng, const GenerateOptions& opts, OutputKind kind)
{
  if (n < 2) {
    throw ContractError("generate: need at least two states");
  }
  if (w < 1 || w > 2) {
    throw ContractError("generate: input width must be 1 or 2");
  }
  auto names = state_letters(n, rng, opts.shuffle_names);
  auto next = random_transitions(n, w, rng, opts);
  const std::size_t n_out = kind == OutputKind::moore ? n : n * (std::size_t{1} << w);
  auto outputs = random_outputs(n_out, rng, opts.reject_constant_output);
  return FsmGraph(std::move(names), w, std::move(next), kind, std::move(outputs));
}

} // namespace

FsmGraph generate_moore(std::size_t n_states, int input_width, Rng& rng, const GenerateOptions& opts)
{
  return generate(n_states, input_width, rng, opts, OutputKind::moore);
}

FsmGraph generate_mealy(std::size_t n_states, int input_width, Rng& rng, const GenerateOptions& opts)
{
  return generate(n_states, input_width, rng, opts, OutputKind::mealy);
}

TransitionLogic derive_out_edge_logic(const FsmGraph& fsm)
{
  TransitionLogic logic{LogicStyle::out_edge, fsm.input_width(), {}, {}};
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    OutEdgeRule rule{s, {}};
    for (std::uint32_t v = 0; v < fsm.num_inputs(); ++v) {
      rule.select.push_back(fsm.next(s, v));
    }
    logic.out_rules.push_back(std::move(rule));
  }
  return logic;
}

TransitionLogic derive_in_edge_logic(const FsmGraph& fsm)
{
  TransitionLogic logic{LogicStyle::in_edge, fsm.input_width(), {}, {}};
  for (std::size_t t = 0; t < fsm.num_states(); ++t) {
    InEdgeRule rule{t, {}};
    for (std::size_t s = 0; s < fsm.num_states(); ++s) {
      for (std::uint32_t v = 0; v < fsm.num_inputs(); ++v) {
        if (fsm.next(s, v) == t) {
          rule.terms.push_back({s, v});
        }
      }
    }
    logic.in_rules.push_back(std::move(rule));
  }
  return logic;
}

std::size_t evaluate_logic(const TransitionLogic& logic, std::size_t state, std::uint32_t input)
{
  if (logic.style == LogicStyle::out_edge) {
    for (const auto& rule : logic.out_rules) {
      if (rule.state == state) {
        return rule.select.at(input);
      }
    }
    throw ContractError("evaluate_logic: no rule for state");
  }
  std::optional<std::size_t> hit;
  for (const auto& rule : logic.in_rules) {
    const bool on = std::any_of(rule.terms.begin(), rule.terms.end(),
                                [&](const InEdgeTerm& t) { return t.pred == state && t.input == input; });
    if (on) {
      if (hit) {
        throw ContractError("evaluate_logic: more than one next-state bit set");
      }
      hit = rule.target;
    }
  }
  if (!hit) {
    throw ContractError("evaluate_logic: no next-state bit set");
  }
  return *hit;
}

OutputLogic derive_output_logic(const FsmGraph& fsm)
{
  OutputLogic logic{fsm.kind(), fsm.input_width(), {}, {}};
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    if (fsm.kind() == OutputKind::moore) {
      if (fsm.state_output(s)) {
        logic.states.push_back(s);
      }
      continue;
    }
    for (std::uint32_t v = 0; v < fsm.num_inputs(); ++v) {
      if (fsm.edge_output(s, v)) {
        logic.edges.emplace_back(s, v);
      }
    }
  }
  return logic;
}

bool evaluate_output(const OutputLogic& logic, std::size_t state, std::uint32_t input)
{
  if (logic.kind == OutputKind::moore) {
    return std::find(logic.states.begin(), logic.states.end(), state) != logic.states.end();
  }
  return std::find(logic.edges.begin(), logic.edges.end(), std::make_pair(state, input)) != logic.edges.end();
}

std::string input_value_label(std::uint32_t v, int width)
{
  return text::bits(v, width);
}

std::string render_edge_list(const FsmGraph& fsm, const EdgeListStyle& style)
{
  std::string out;
  const std::uint32_t k = fsm.num_inputs();
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    const std::string in = style.input.for_state(s);
    for (std::uint32_t i = 0; i < k; ++i) {
      const std::uint32_t v = style.descending_inputs ? k - 1 - i : i;
      const std::string cond = in + "=" + input_value_label(v, fsm.input_width());
      const std::string& from = fsm.name(s);
      const std::string& to = fsm.name(fsm.next(s, v));
      if (fsm.kind() == OutputKind::moore) {
        out += "// " + from + " (" + style.output_name + "=" + (fsm.state_output(s) ? "1" : "0") + ") —" +
               cond + "—> " + to + "\n";
      } else {
        out += "// " + from + " —" + cond + " (" + style.output_name + "=" + (fsm.edge_output(s, v) ? "1" : "0") +
               ")→ " + to + "\n";
      }
    }
  }
  return out;
}

namespace {

std::string next_columns(const FsmGraph& fsm, const std::string& prefix)
{
  std::vector<std::string> cols;
  for (std::uint32_t v = 0; v < fsm.num_inputs(); ++v) {
    cols.push_back(prefix + "in=" + input_value_label(v, fsm.input_width()));
  }
  return text::join(cols, ", ");
}

std::string next_names(const FsmGraph& fsm, std::size_t s)
{
  std::vector<std::string> cols;
  for (std::uint32_t v = 0; v < fsm.num_inputs(); ++v) {
    cols.push_back(fsm.name(fsm.next(s, v)));
  }
  return text::join(cols, ", ");
}

} // namespace

std::string render_transition_table(const FsmGraph& fsm)
{
  if (fsm.kind() != OutputKind::moore) {
    throw ContractError("render_transition_table: a per-state output column needs a Moore machine");
  }
  std::string out = "// state | " + next_columns(fsm, "Next state ") + " | Output\n";
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    out += "// " + fsm.name(s) + " | " + next_names(fsm, s) + " | " + (fsm.state_output(s) ? "1" : "0") + "\n";
  }
  return out;
}

std::string render_transition_table(const FsmGraph& fsm, const StateEncoding& enc, const EncodedTableStyle& style)
{
  if (fsm.kind() != OutputKind::moore) {
    throw ContractError("render_transition_table: a per-state output column needs a Moore machine");
  }
  if (enc.codes.size() != fsm.num_states()) {
    throw ContractError("render_transition_table: encoding does not cover all states");
  }
  const std::string range = enc.width > 1 ? "[" + std::to_string(enc.width - 1) + ":0]" : "";
  std::vector<std::string> cols;
  for (std::uint32_t v = 0; v < fsm.num_inputs(); ++v) {
    cols.push_back("Next state " + style.next_var + range + " " + style.input_name + "=" +
                   input_value_label(v, fsm.input_width()));
  }
  std::string out = "// Present state " + style.state_var + range + " | " + text::join(cols, ", ") + " | Output " +
                    style.output_name + "\n";
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    std::vector<std::string> nexts;
    for (std::uint32_t v = 0; v < fsm.num_inputs(); ++v) {
      nexts.push_back(text::bits(enc.codes[fsm.next(s, v)], enc.width));
    }
    out += "// " + text::bits(enc.codes[s], enc.width) + " | " + text::join(nexts, ", ") + " | " +
           (fsm.state_output(s) ? "1" : "0") + "\n";
  }
  return out;
}

std::string render_next_state_table(const FsmGraph& fsm)
{
  std::string out = "// state | " + next_columns(fsm, "next state ") + "\n";
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    out += "// " + fsm.name(s) + " | " + next_names(fsm, s) + "\n";
  }
  return out;
}

std::vector<std::size_t> bfs_order(const FsmGraph& fsm)
{
  const std::size_t n = fsm.num_states();
  std::vector<std::size_t> order(n, n);
  std::deque<std::size_t> queue{0};
  order[0] = 0;
  std::size_t next_id = 1;
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (std::uint32_t v = 0; v < fsm.num_inputs(); ++v) {
      const auto t = fsm.next(s, v);
      if (order[t] == n) {
        order[t] = next_id++;
        queue.push_back(t);
      }
    }
  }
  return order;
}

FsmGraph permute_states(const FsmGraph& fsm, const std::vector<std::size_t>& perm)
{
  const std::size_t n = fsm.num_states();
  if (perm.size() != n || perm[0] != 0 || std::set<std::size_t>(perm.begin(), perm.end()).size() != n) {
    throw ContractError("permute_states: not a reset-preserving permutation");
  }
  const std::uint32_t k = fsm.num_inputs();
  std::vector<std::string> names(n);
  std::vector<std::vector<std::size_t>> next(n, std::vector<std::size_t>(k));
  std::vector<std::uint8_t> out(fsm.outputs().size());
  for (std::size_t s = 0; s < n; ++s) {
    names[perm[s]] = fsm.name(s);
    for (std::uint32_t v = 0; v < k; ++v) {
      next[perm[s]][v] = perm[fsm.next(s, v)];
      if (fsm.kind() == OutputKind::mealy) {
        out[perm[s] * k + v] = fsm.outputs()[s * k + v];
      }
    }
    if (fsm.kind() == OutputKind::moore) {
      out[perm[s]] = fsm.outputs()[s];
    }
  }
  return FsmGraph(std::move(names), fsm.input_width(), std::move(next), fsm.kind(), std::move(out));
}

} // namespace hdlforge
