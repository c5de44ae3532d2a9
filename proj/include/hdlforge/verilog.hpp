#pragma once

#include "hdlforge/boolean.hpp"
#include "hdlforge/fsm.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hdlforge {

enum class PortDir : std::uint8_t { input, output };

struct Port {
  std::string name;
  PortDir dir = PortDir::input;
  int width = 1;
  bool reg = false;

  friend bool operator==(const Port&, const Port&) = default;
};

enum class ResetKind : std::uint8_t { none, sync_high, async_high };

struct ResetSpec {
  ResetKind kind = ResetKind::none;
  std::string signal = "reset";
  std::size_t target = 0; ///< state index forced by reset

  friend bool operator==(const ResetSpec&, const ResetSpec&) = default;
};

std::string reset_kind_name(ResetKind k);
ResetKind reset_kind_from_name(const std::string& s);

struct EmittedModule {
  std::string module_name;
  std::vector<Port> ports;
  std::string text;
  ResetSpec reset;
};

/// "module top_module(" followed by one port per line and ");".
/// `space_before_paren` gives the "module top_module (" spelling used by the
/// state machine templates.
std::string emit_header(const std::vector<Port>& ports, const std::string& module_name = "top_module",
                        bool space_before_paren = false);

/// Inputs named after the SOP variables, then one 1-bit output.
std::vector<Port> combinational_ports(const std::vector<std::string>& vars, const std::string& out_name);

EmittedModule emit_combinational(const SopExpr& sop, const std::string& module_name, const std::vector<Port>& ports);

enum class FsmTemplate : std::uint8_t {
  registered,  ///< state register, combinational case block, output assign
  state_table, ///< present state is an input; emits one next-state bit and the output
  onehot_comb  ///< one-hot in-edge equations only
};

enum class ParamStyle : std::uint8_t { decimal, sized_binary };

/// always_comb (SystemVerilog, the fixture spelling) or always @(*).
enum class Dialect : std::uint8_t { always_comb, always_star };

struct FsmEmitOptions {
  FsmTemplate templ = FsmTemplate::registered;
  std::string module_name = "top_module";
  InputNaming input{};
  std::string output_name = "out";
  std::string state_name = "state";
  std::string next_name = "next";
  ParamStyle params = ParamStyle::decimal;
  Dialect dialect = Dialect::always_comb;
  /// Reproduces fixture code that declares the state registers without a
  /// range even when more than two states exist.
  bool scalar_state_regs = false;
  /// Port order clk, inputs, reset instead of clk, reset, inputs.
  bool inputs_before_reset = false;
  /// state_table template: which bit of the next-state code is exported.
  int next_bit = 0;
  std::string next_bit_prefix = "Y";

  friend bool operator==(const FsmEmitOptions&, const FsmEmitOptions&) = default;
};

/// Everything needed to emit one state machine module.
struct FsmDesign {
  FsmGraph fsm;
  StateEncoding enc;
  ResetSpec reset;
  FsmEmitOptions emit;
};

/// Ports in template order.
std::vector<Port> fsm_ports(const FsmDesign& d);

/// Throws ContractError when logic and template disagree (in-edge logic
/// needs one-hot encoding and the onehot_comb template, out-edge logic the
/// other two), when the encoding does not cover every state, or when a
/// registered template has no reset.
EmittedModule emit_fsm(const FsmGraph& fsm, const StateEncoding& enc, const TransitionLogic& logic,
                       const ResetSpec& reset, const FsmEmitOptions& opts);

/// Derives the logic matching the template and emits.
EmittedModule emit_fsm(const FsmDesign& d);

// Expression pieces shared by the emitters and the solution narratives.

/// "in", "~in" for 1-bit inputs; "in == 2'b01" otherwise.
std::string input_condition(const std::string& name, std::uint32_t v, int width);

/// "D: next = in0 ? D : A;" for 1-bit inputs, a one-line nested case otherwise.
std::string out_edge_arm(const FsmGraph& fsm, const OutEdgeRule& rule, const InputNaming& input,
                         const std::string& next_name, Dialect dialect = Dialect::always_comb);

/// "state[A] & in || state[C] & in"; "1'b0" when the target has no in-edges.
std::string in_edge_expr(const FsmGraph& fsm, const InEdgeRule& rule, const InputNaming& input,
                         const std::string& state_name = "state");

/// Output expression. `padded` selects "( state == B )" (code) over
/// "(state == B)" (narrative). "1'b0" when the output is never 1.
std::string output_expr(const FsmGraph& fsm, const FsmEmitOptions& opts, bool padded);

/// Runs `command <file>` on the module text written to a temporary file.
/// Returns the command's exit status. Intended for an optional external
/// syntax check; nothing in the library depends on it.
int run_external_check(const std::string& module_text, const std::string& command);

} // namespace hdlforge
