#include "hdlforge/verilog.hpp"

#include "hdlforge/text.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sys/wait.h>
#include <unistd.h>

namespace hdlforge {

std::string reset_kind_name(ResetKind k)
{
  switch (k) {
  case ResetKind::none:
    return "none";
  case ResetKind::sync_high:
    return "sync_high";
  case ResetKind::async_high:
    return "async_high";
  }
  return "none";
}

ResetKind reset_kind_from_name(const std::string& s)
{
  if (s == "none") {
    return ResetKind::none;
  }
  if (s == "sync_high") {
    return ResetKind::sync_high;
  }
  if (s == "async_high") {
    return ResetKind::async_high;
  }
  throw ContractError("unknown reset kind '" + s + "'");
}

namespace {

std::string range(int width)
{
  return width > 1 ? "[" + std::to_string(width - 1) + ":0] " : "";
}

std::string port_line(const Port& p)
{
  std::string s = p.dir == PortDir::input ? "input " : "output ";
  if (p.reg) {
    s += "reg ";
  }
  return s + range(p.width) + p.name;
}

std::string unknown_literal(Dialect d)
{
  return d == Dialect::always_comb ? "'x" : "'bx";
}

std::string comb_block_open(Dialect d)
{
  return d == Dialect::always_comb ? "always_comb begin" : "always @(*) begin";
}

std::string param_value(std::uint32_t code, int width, ParamStyle style)
{
  if (style == ParamStyle::decimal) {
    return std::to_string(code);
  }
  return std::to_string(width) + "'b" + text::bits(code, width);
}

std::string param_line(const FsmGraph& fsm, const std::vector<std::uint32_t>& values, int width, ParamStyle style)
{
  std::vector<std::string> items;
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    items.push_back(fsm.name(s) + "=" + param_value(values[s], width, style));
  }
  return "parameter " + text::join(items, ", ") + ";";
}

void check_encoding(const FsmGraph& fsm, const StateEncoding& enc)
{
  if (enc.codes.size() != fsm.num_states()) {
    throw ContractError("emit_fsm: encoding does not cover every state");
  }
}

} // namespace

std::string emit_header(const std::vector<Port>& ports, const std::string& module_name, bool space_before_paren)
{
  if (ports.empty()) {
    throw ContractError("emit_header: empty port list");
  }
  std::set<std::string> seen;
  std::vector<std::string> lines;
  for (const auto& p : ports) {
    if (!seen.insert(p.name).second) {
      throw ContractError("emit_header: duplicate port '" + p.name + "'");
    }
    lines.push_back("    " + port_line(p));
  }
  return "module " + module_name + (space_before_paren ? " (" : "(") + "\n" + text::join(lines, ",\n") + "\n);";
}

std::vector<Port> combinational_ports(const std::vector<std::string>& vars, const std::string& out_name)
{
  std::vector<Port> ports;
  for (const auto& v : vars) {
    ports.push_back({v, PortDir::input, 1, false});
  }
  ports.push_back({out_name, PortDir::output, 1, false});
  return ports;
}

EmittedModule emit_combinational(const SopExpr& sop, const std::string& module_name, const std::vector<Port>& ports)
{
  std::vector<std::string> inputs;
  const Port* out = nullptr;
  for (const auto& p : ports) {
    if (p.dir == PortDir::input) {
      inputs.push_back(p.name);
      if (p.width != 1) {
        throw ContractError("emit_combinational: inputs must be single bits");
      }
    } else if (out == nullptr) {
      out = &p;
    } else {
      throw ContractError("emit_combinational: exactly one output expected");
    }
  }
  if (out == nullptr || out->width != 1) {
    throw ContractError("emit_combinational: exactly one 1-bit output expected");
  }
  if (inputs != sop.vars) {
    throw ContractError("emit_combinational: input ports do not match the SOP variables");
  }
  EmittedModule m{module_name, ports, {}, {}};
  m.text = emit_header(ports, module_name) + "\n\n    assign " + out->name + " = " + render_sop(sop) + ";\nendmodule\n";
  return m;
}

std::string input_condition(const std::string& name, std::uint32_t v, int width)
{
  if (width == 1) {
    return v != 0 ? name : "~" + name;
  }
  return name + " == " + std::to_string(width) + "'b" + text::bits(v, width);
}

std::string out_edge_arm(const FsmGraph& fsm, const OutEdgeRule& rule, const InputNaming& input,
                         const std::string& next_name, Dialect dialect)
{
  const std::string& me = fsm.name(rule.state);
  const std::string in = input.for_state(rule.state);
  if (fsm.input_width() == 1) {
    return me + ": " + next_name + " = " + in + " ? " + fsm.name(rule.select.at(1)) + " : " +
           fsm.name(rule.select.at(0)) + ";";
  }
  std::string s = me + ": case (" + in + ")";
  for (std::uint32_t v = 0; v < fsm.num_inputs(); ++v) {
    s += " " + std::to_string(fsm.input_width()) + "'b" + text::bits(v, fsm.input_width()) + ": " + next_name + " = " +
         fsm.name(rule.select.at(v)) + ";";
  }
  return s + " default: " + next_name + " = " + unknown_literal(dialect) + "; endcase";
}

std::string in_edge_expr(const FsmGraph& fsm, const InEdgeRule& rule, const InputNaming& input,
                         const std::string& state_name)
{
  if (rule.terms.empty()) {
    return "1'b0";
  }
  std::vector<std::string> terms;
  for (const auto& t : rule.terms) {
    std::string cond = input_condition(input.for_state(t.pred), t.input, fsm.input_width());
    if (fsm.input_width() > 1) {
      cond = "(" + cond + ")";
    }
    terms.push_back(state_name + "[" + fsm.name(t.pred) + "] & " + cond);
  }
  return text::join(terms, " || ");
}

std::string output_expr(const FsmGraph& fsm, const FsmEmitOptions& opts, bool padded)
{
  const OutputLogic logic = derive_output_logic(fsm);
  const bool onehot = opts.templ == FsmTemplate::onehot_comb;
  const auto state_test = [&](std::size_t s) {
    return onehot ? opts.state_name + "[" + fsm.name(s) + "]" : opts.state_name + " == " + fsm.name(s);
  };
  const auto wrap = [&](const std::string& inner) { return padded ? "( " + inner + " )" : "(" + inner + ")"; };
  std::vector<std::string> parts;
  if (logic.kind == OutputKind::moore) {
    for (auto s : logic.states) {
      parts.push_back(state_test(s));
    }
    if (parts.empty()) {
      return "1'b0";
    }
    return wrap(text::join(parts, " || "));
  }
  for (const auto& [s, v] : logic.edges) {
    parts.push_back(wrap(state_test(s) + " & " + input_condition(opts.input.for_state(s), v, fsm.input_width())));
  }
  if (parts.empty()) {
    return "1'b0";
  }
  return wrap(text::join(parts, " || "));
}

std::vector<Port> fsm_ports(const FsmDesign& d)
{
  const auto& fsm = d.fsm;
  const auto& o = d.emit;
  const bool sv = o.dialect == Dialect::always_comb;
  std::vector<Port> inputs;
  if (o.input.per_state) {
    if (fsm.input_width() != 1) {
      throw ContractError("fsm_ports: per-state inputs need a 1-bit input");
    }
    for (std::size_t s = 0; s < fsm.num_states(); ++s) {
      inputs.push_back({o.input.for_state(s), PortDir::input, 1, false});
    }
  } else {
    inputs.push_back({o.input.name, PortDir::input, fsm.input_width(), false});
  }
  std::vector<Port> ports;
  switch (o.templ) {
  case FsmTemplate::registered: {
    ports.push_back({"clk", PortDir::input, 1, false});
    const Port rst{d.reset.signal, PortDir::input, 1, false};
    if (!o.inputs_before_reset) {
      ports.push_back(rst);
    }
    ports.insert(ports.end(), inputs.begin(), inputs.end());
    if (o.inputs_before_reset) {
      ports.push_back(rst);
    }
    ports.push_back({o.output_name, PortDir::output, 1, false});
    break;
  }
  case FsmTemplate::state_table:
    ports.push_back({"clk", PortDir::input, 1, false});
    ports.insert(ports.end(), inputs.begin(), inputs.end());
    ports.push_back({o.state_name, PortDir::input, d.enc.width, false});
    ports.push_back({o.next_bit_prefix + std::to_string(o.next_bit), PortDir::output, 1, sv});
    ports.push_back({o.output_name, PortDir::output, 1, sv});
    break;
  case FsmTemplate::onehot_comb:
    ports.insert(ports.end(), inputs.begin(), inputs.end());
    ports.push_back({o.state_name, PortDir::input, static_cast<int>(fsm.num_states()), false});
    ports.push_back({o.next_name, PortDir::output, static_cast<int>(fsm.num_states()), sv});
    ports.push_back({o.output_name, PortDir::output, 1, false});
    break;
  }
  return ports;
}

EmittedModule emit_fsm(const FsmGraph& fsm, const StateEncoding& enc, const TransitionLogic& logic,
                       const ResetSpec& reset, const FsmEmitOptions& opts)
{
  check_encoding(fsm, enc);
  if (logic.input_width != fsm.input_width()) {
    throw ContractError("emit_fsm: logic and machine disagree on input width");
  }
  const bool in_edge = logic.style == LogicStyle::in_edge;
  if (in_edge != (opts.templ == FsmTemplate::onehot_comb)) {
    throw ContractError("emit_fsm: in-edge logic goes with the onehot_comb template only");
  }
  if (in_edge && enc.kind != EncodingKind::one_hot) {
    throw ContractError("emit_fsm: in-edge logic needs a one-hot encoding");
  }
  if (opts.templ == FsmTemplate::registered && reset.kind == ResetKind::none) {
    throw ContractError("emit_fsm: registered template needs a reset");
  }
  if (opts.templ != FsmTemplate::registered && reset.kind != ResetKind::none) {
    throw ContractError("emit_fsm: combinational templates take no reset");
  }
  if (reset.target >= fsm.num_states()) {
    throw ContractError("emit_fsm: reset target out of range");
  }
  if (opts.templ == FsmTemplate::state_table && (opts.next_bit < 0 || opts.next_bit >= enc.width)) {
    throw ContractError("emit_fsm: exported next-state bit out of range");
  }

  const FsmDesign d{fsm, enc, reset, opts};
  const auto ports = fsm_ports(d);
  EmittedModule m{opts.module_name, ports, {}, reset};
  std::vector<std::string> body;
  const std::string x = unknown_literal(opts.dialect);

  const auto case_block = [&](const std::string& selector) {
    body.push_back("    " + comb_block_open(opts.dialect));
    body.push_back("        case(" + selector + ")");
    for (const auto& rule : logic.out_rules) {
      body.push_back("            " + out_edge_arm(fsm, rule, opts.input, opts.next_name, opts.dialect));
    }
    body.push_back("            default: " + opts.next_name + " = " + x + ";");
    body.push_back("        endcase");
    body.push_back("    end");
  };

  switch (opts.templ) {
  case FsmTemplate::registered: {
    body.push_back("    " + param_line(fsm, enc.codes, enc.width, opts.params));
    const std::string r = opts.scalar_state_regs ? "" : range(enc.width);
    body.push_back("    reg " + r + opts.state_name + ";");
    body.push_back("    reg " + r + opts.next_name + ";");
    case_block(opts.state_name);
    if (reset.kind == ResetKind::async_high) {
      body.push_back("    always @(posedge clk, posedge " + reset.signal + ") begin");
    } else {
      body.push_back("    always @(posedge clk) begin");
    }
    body.push_back("        if (" + reset.signal + ") " + opts.state_name + " <= " + fsm.name(reset.target) + ";");
    body.push_back("        else " + opts.state_name + " <= " + opts.next_name + ";");
    body.push_back("    end");
    body.push_back("    assign " + opts.output_name + " = " + output_expr(fsm, opts, true) + ";");
    break;
  }
  case FsmTemplate::state_table: {
    body.push_back("    reg " + range(enc.width) + opts.next_name + ";");
    body.push_back("    " + param_line(fsm, enc.codes, enc.width, opts.params));
    case_block(opts.state_name);
    body.push_back("    assign " + opts.output_name + " = " + output_expr(fsm, opts, true) + ";");
    std::vector<std::string> hits;
    for (std::size_t s = 0; s < fsm.num_states(); ++s) {
      if (((enc.codes[s] >> opts.next_bit) & 1U) != 0) {
        hits.push_back(opts.next_name + " == " + fsm.name(s));
      }
    }
    const std::string bit_expr = hits.empty() ? "1'b0" : "( " + text::join(hits, " || ") + " )";
    body.push_back("    assign " + opts.next_bit_prefix + std::to_string(opts.next_bit) + " = " + bit_expr + ";");
    break;
  }
  case FsmTemplate::onehot_comb: {
    std::vector<std::uint32_t> index(fsm.num_states());
    for (std::size_t s = 0; s < fsm.num_states(); ++s) {
      const auto code = enc.codes[s];
      index[s] = static_cast<std::uint32_t>(__builtin_ctz(code));
    }
    body.push_back("");
    body.push_back("    " + param_line(fsm, index, enc.width, ParamStyle::decimal));
    body.push_back("");
    for (const auto& rule : logic.in_rules) {
      body.push_back("    assign " + opts.next_name + "[" + fsm.name(rule.target) +
                     "] = " + in_edge_expr(fsm, rule, opts.input, opts.state_name) + ";");
    }
    body.push_back("");
    body.push_back("    assign " + opts.output_name + " = " + output_expr(fsm, opts, true) + ";");
    body.push_back("");
    break;
  }
  }
  m.text = emit_header(ports, opts.module_name, true) + "\n" + text::join(body, "\n") + "\nendmodule\n";
  return m;
}

EmittedModule emit_fsm(const FsmDesign& d)
{
  const TransitionLogic logic =
    d.emit.templ == FsmTemplate::onehot_comb ? derive_in_edge_logic(d.fsm) : derive_out_edge_logic(d.fsm);
  return emit_fsm(d.fsm, d.enc, logic, d.reset, d.emit);
}

int run_external_check(const std::string& module_text, const std::string& command)
{
  if (command.empty()) {
    throw ContractError("run_external_check: empty command");
  }
  namespace fs = std::filesystem;
  std::string tmpl = (fs::temp_directory_path() / "hdlforge_XXXXXX.v").string();
  const int fd = ::mkstemps(tmpl.data(), 2);
  if (fd < 0) {
    throw std::runtime_error("run_external_check: cannot create temporary file");
  }
  ::close(fd);
  {
    std::ofstream out(tmpl, std::ios::binary);
    out << module_text;
  }
  const std::string cmd = command + " '" + tmpl + "'";
  const int status = std::system(cmd.c_str());
  std::error_code ec;
  fs::remove(tmpl, ec);
  if (status == -1) {
    return -1;
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace hdlforge
