#pragma once

#include "hdlforge/boolean.hpp"
#include "hdlforge/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hdlforge {

enum class OutputKind : std::uint8_t { moore, mealy };

/// Deterministic single-output state machine. State 0 is the reset state.
///
/// Invariants (checked on construction): every state has one transition per
/// input value, outputs are total over their domain (states for Moore,
/// (state, input) pairs for Mealy), and every state is reachable from state 0.
class FsmGraph {
public:
  FsmGraph(std::vector<std::string> state_names, int input_width, std::vector<std::vector<std::size_t>> transitions,
           OutputKind kind, std::vector<std::uint8_t> outputs);

  const std::vector<std::string>& state_names() const noexcept { return names_; }
  const std::string& name(std::size_t s) const { return names_.at(s); }
  std::size_t num_states() const noexcept { return names_.size(); }
  int input_width() const noexcept { return width_; }
  std::uint32_t num_inputs() const noexcept { return 1U << width_; }
  OutputKind kind() const noexcept { return kind_; }

  std::size_t next(std::size_t state, std::uint32_t input) const;
  /// Moore output of a state.
  bool state_output(std::size_t state) const;
  /// Mealy output on the edge (state, input).
  bool edge_output(std::size_t state, std::uint32_t input) const;

  const std::vector<std::vector<std::size_t>>& transitions() const noexcept { return next_; }
  /// Flattened: Moore has one entry per state, Mealy state * 2^w + input.
  const std::vector<std::uint8_t>& outputs() const noexcept { return out_; }

  std::optional<std::size_t> index_of(const std::string& name) const;

  friend bool operator==(const FsmGraph&, const FsmGraph&) = default;

private:
  std::vector<std::string> names_;
  int width_;
  std::vector<std::vector<std::size_t>> next_;
  OutputKind kind_;
  std::vector<std::uint8_t> out_;
};

/// Breadth-first reachability from `from`, inputs tried in ascending order.
std::vector<bool> reachable_states(const std::vector<std::vector<std::size_t>>& transitions, std::size_t from = 0);

struct StepResult {
  std::size_t next;
  bool output;

  friend bool operator==(const StepResult&, const StepResult&) = default;
};

/// Moore output is read on the next state; Mealy output on the consumed edge.
StepResult step(const FsmGraph& fsm, std::size_t state, std::uint32_t input);

enum class EncodingKind : std::uint8_t { binary, one_hot, explicit_codes };

struct StateEncoding {
  EncodingKind kind = EncodingKind::binary;
  int width = 1;
  std::vector<std::uint32_t> codes;

  friend bool operator==(const StateEncoding&, const StateEncoding&) = default;
};

int binary_width(std::size_t n_states);
StateEncoding binary_encoding(std::size_t n_states);
StateEncoding one_hot_encoding(std::size_t n_states);
StateEncoding explicit_encoding(std::vector<std::uint32_t> codes, int width);
StateEncoding assign_encoding(const FsmGraph& fsm, EncodingKind kind);

struct GenerateOptions {
  /// Reject output assignments that are constant.
  bool reject_constant_output = true;
  /// Randomize which letter names which state.
  bool shuffle_names = true;
  int max_tree_retries = 10000;
};

/// Random labeled tree (Pruefer code) rooted at state 0, oriented
/// parent -> child, and restricted to at most `max_children` children per
/// node by rejection. Returns the parent of every node (parent[0] = 0).
std::vector<std::size_t> random_tree_parents(std::size_t n, std::size_t max_children, Rng& rng, int max_retries);

FsmGraph generate_moore(std::size_t n_states, int input_width, Rng& rng, const GenerateOptions& opts = {});
FsmGraph generate_mealy(std::size_t n_states, int input_width, Rng& rng, const GenerateOptions& opts = {});

// ---------------------------------------------------------------------------
// Transition and output logic

enum class LogicStyle : std::uint8_t { out_edge, in_edge };

struct OutEdgeRule {
  std::size_t state;
  std::vector<std::size_t> select; ///< next state per input value
};

struct InEdgeTerm {
  std::size_t pred;
  std::uint32_t input;

  friend bool operator==(const InEdgeTerm&, const InEdgeTerm&) = default;
};

struct InEdgeRule {
  std::size_t target;
  std::vector<InEdgeTerm> terms; ///< empty means constant false
};

struct TransitionLogic {
  LogicStyle style = LogicStyle::out_edge;
  int input_width = 1;
  std::vector<OutEdgeRule> out_rules;
  std::vector<InEdgeRule> in_rules;
};

TransitionLogic derive_out_edge_logic(const FsmGraph& fsm);
TransitionLogic derive_in_edge_logic(const FsmGraph& fsm);

/// Next state denoted by the logic. For in-edge logic this evaluates every
/// one-hot next-state bit and throws unless exactly one is set.
std::size_t evaluate_logic(const TransitionLogic& logic, std::size_t state, std::uint32_t input);

struct OutputLogic {
  OutputKind kind = OutputKind::moore;
  int input_width = 1;
  std::vector<std::size_t> states;                           ///< Moore output-1 states
  std::vector<std::pair<std::size_t, std::uint32_t>> edges;  ///< Mealy output-1 edges
};

OutputLogic derive_output_logic(const FsmGraph& fsm);

/// Moore: 1 iff `state` is listed. Mealy: 1 iff (state, input) is listed.
bool evaluate_output(const OutputLogic& logic, std::size_t state, std::uint32_t input);

// ---------------------------------------------------------------------------
// Text representations

/// How the transition condition names its input.
struct InputNaming {
  std::string name = "in";
  /// State i reads the 1-bit input `name + i` (in0, in1, ...).
  bool per_state = false;

  std::string for_state(std::size_t s) const { return per_state ? name + std::to_string(s) : name; }

  friend bool operator==(const InputNaming&, const InputNaming&) = default;
};

struct EdgeListStyle {
  InputNaming input{};
  std::string output_name = "out";
  /// List input value 1 before 0 for each state.
  bool descending_inputs = false;
};

/// One comment line per edge, e.g. "// D (out=0) —in0=1—> D" (Moore) or
/// "// A —x=0 (z=0)→ D" (Mealy).
std::string render_edge_list(const FsmGraph& fsm, const EdgeListStyle& style);

/// Input value label as it appears after "in=": "0"/"1" or "01".
std::string input_value_label(std::uint32_t v, int width);

/// Moore table with output column, symbolic names:
/// "// state | Next state in=0, Next state in=1 | Output".
std::string render_transition_table(const FsmGraph& fsm);

struct EncodedTableStyle {
  std::string state_var = "y";
  std::string next_var = "Y";
  std::string input_name = "x";
  std::string output_name = "z";
};

/// Moore table over state codes:
/// "// Present state y[2:0] | Next state Y[2:0] x=0, Next state Y[2:0] x=1 | Output z".
std::string render_transition_table(const FsmGraph& fsm, const StateEncoding& enc, const EncodedTableStyle& style = {});

/// Next-state table without an output column (usable for Mealy machines):
/// "// state | next state in=0, next state in=1".
std::string render_next_state_table(const FsmGraph& fsm);

/// Canonical rename: states relabelled by breadth-first discovery order from
/// the reset state. Returns old index -> new index.
std::vector<std::size_t> bfs_order(const FsmGraph& fsm);

/// Same machine with state indices permuted so that old index i becomes
/// perm[i]. perm[0] must be 0 to keep the reset state in front.
FsmGraph permute_states(const FsmGraph& fsm, const std::vector<std::size_t>& perm);

} // namespace hdlforge
