#include "hdlforge/problem.hpp"

#include "hdlforge/record_json.hpp"
#include "hdlforge/text.hpp"

#include <algorithm>

namespace hdlforge {

namespace {

const std::vector<std::pair<RecordKind, const char*>>& kind_table()
{
  static const std::vector<std::pair<RecordKind, const char*>> table = {
    {RecordKind::kmap, "kmap"},
    {RecordKind::truthtable, "truthtable"},
    {RecordKind::fsm_moore, "fsm_moore"},
    {RecordKind::fsm_mealy, "fsm_mealy"},
    {RecordKind::fsm_onehot_comb, "fsm_onehot_comb"},
    {RecordKind::waveform_comb, "waveform_comb"},
    {RecordKind::waveform_seq, "waveform_seq"},
    {RecordKind::repair, "repair"},
  };
  return table;
}

std::string sections(const std::vector<std::string>& parts)
{
  return text::join(parts, "\n\n") + "\n";
}

std::string instruction(const ForgeOptions& opts, const std::string& s)
{
  return opts.rewrite ? opts.rewrite(s) : s;
}

void require_template(const std::string& id, RecordKind kind)
{
  const auto& info = template_info(id);
  if (std::find(info.kinds.begin(), info.kinds.end(), kind) == info.kinds.end()) {
    throw ContractError("template '" + id + "' does not produce " + kind_name(kind) + " records");
  }
}

nlohmann::json base_meta(const std::string& template_id)
{
  const auto& info = template_info(template_id);
  return {{"template", template_id}, {"template_source", info.source == TemplateSource::fixture ? "fixture" : "authored"}};
}

std::string comb_body(const SopExpr& sop, const std::string& final_sentence,
                      const EmittedModule& m, std::vector<std::string> lead)
{
  lead.push_back("The minterms (when output is 1) are:");
  lead.push_back(minterm_lines(sop));
  lead.push_back("This corresponds to the following minterms logic:");
  lead.push_back(render_sop(sop));
  lead.push_back(final_sentence);
  lead.push_back(text::fenced(m.text));
  return sections(lead);
}

std::string vars_sentence(const BooleanSpec& spec)
{
  return "The input variables are: " + text::py_list(spec.vars()) + ".";
}

std::string input_phrase(const FsmGraph& fsm, const FsmEmitOptions& o)
{
  if (o.input.per_state) {
    return text::number_word(fsm.num_states()) + " inputs";
  }
  return fsm.input_width() == 1 ? "one input" : "one " + std::to_string(fsm.input_width()) + "-bit input";
}

std::string reset_timing(ResetKind k)
{
  return k == ResetKind::async_high ? "asynchronous" : "synchronous";
}

std::string arms(const FsmGraph& fsm, const FsmEmitOptions& o)
{
  std::vector<std::string> lines;
  for (const auto& rule : derive_out_edge_logic(fsm).out_rules) {
    lines.push_back(out_edge_arm(fsm, rule, o.input, "next", o.dialect));
  }
  return text::fenced(text::join(lines, "\n"));
}

std::string output_logic_sentence(const FsmGraph& fsm, const FsmEmitOptions& o)
{
  return "Thus the output logic is: ``assign " + o.output_name + " = " + output_expr(fsm, o, false) + ";``.";
}

std::string encoding_name(const StateEncoding& enc)
{
  switch (enc.kind) {
  case EncodingKind::binary:
    return "binary";
  case EncodingKind::one_hot:
    return "one-hot";
  case EncodingKind::explicit_codes:
    return "explicit";
  }
  return "binary";
}

std::string code_list(const FsmGraph& fsm, const StateEncoding& enc)
{
  std::vector<std::string> parts;
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    parts.push_back(fsm.name(s) + "=" + std::to_string(enc.width) + "'b" + text::bits(enc.codes[s], enc.width));
  }
  return text::join(parts, ", ");
}

nlohmann::json fsm_meta(const FsmDesign& d, const std::string& template_id, FsmStyle style)
{
  auto meta = base_meta(template_id);
  meta["n"] = d.fsm.num_states();
  meta["w"] = d.fsm.input_width();
  meta["style"] = fsm_style_name(style);
  meta["encoding"] = encoding_name(d.enc);
  meta["reset"] = reset_kind_name(d.reset.kind);
  meta["semantic"] = {{"design", encode(d)}};
  return meta;
}

} // namespace

std::string kind_name(RecordKind k)
{
  for (const auto& [kind, name] : kind_table()) {
    if (kind == k) {
      return name;
    }
  }
  throw ContractError("unknown record kind");
}

RecordKind kind_from_name(const std::string& s)
{
  for (const auto& [kind, name] : kind_table()) {
    if (s == name) {
      return kind;
    }
  }
  throw ContractError("unknown record kind '" + s + "'");
}

const std::vector<RecordKind>& all_kinds()
{
  static const std::vector<RecordKind> kinds = [] {
    std::vector<RecordKind> v;
    for (const auto& entry : kind_table()) {
      v.push_back(entry.first);
    }
    return v;
  }();
  return kinds;
}

const std::vector<TemplateInfo>& templates()
{
  using K = RecordKind;
  using S = TemplateSource;
  static const std::vector<TemplateInfo> list = {
    {"kmap_fixture", {K::kmap}, S::fixture},
    {"kmap_authored", {K::kmap}, S::authored},
    {"truthtable_a", {K::truthtable}, S::authored},
    {"truthtable_b", {K::truthtable}, S::authored},
    {"fsm_table_binary", {K::fsm_moore}, S::fixture},
    {"fsm_edgelist_moore", {K::fsm_moore}, S::fixture},
    {"fsm_edgelist_moore_alt", {K::fsm_moore}, S::authored},
    {"fsm_edgelist_mealy", {K::fsm_mealy}, S::fixture},
    {"fsm_table_onehot", {K::fsm_onehot_comb}, S::fixture},
    {"waveform_comb", {K::waveform_comb}, S::fixture},
    {"waveform_comb_alt", {K::waveform_comb}, S::authored},
    {"waveform_seq", {K::waveform_seq}, S::fixture},
    {"repair", {K::repair}, S::fixture},
  };
  return list;
}

const TemplateInfo& template_info(const std::string& id)
{
  for (const auto& t : templates()) {
    if (t.id == id) {
      return t;
    }
  }
  throw ContractError("unknown template '" + id + "'");
}

std::vector<std::string> templates_for(RecordKind k)
{
  std::vector<std::string> out;
  for (const auto& t : templates()) {
    if (std::find(t.kinds.begin(), t.kinds.end(), k) != t.kinds.end()) {
      out.push_back(t.id);
    }
  }
  return out;
}

std::string comb_key_string(const BooleanSpec& spec)
{
  std::vector<std::string> m;
  for (auto r : spec.minterms()) {
    m.push_back(std::to_string(r));
  }
  std::vector<std::string> d;
  for (auto r : spec.dont_cares()) {
    d.push_back(std::to_string(r));
  }
  return "comb|" + std::to_string(spec.num_vars()) + "|" + text::join(m, ",") + "|" + text::join(d, ",");
}

std::string fsm_key_string(const FsmGraph& fsm)
{
  const FsmGraph c = permute_states(fsm, bfs_order(fsm));
  std::string s = std::string("fsm|") + (c.kind() == OutputKind::moore ? "moore" : "mealy") + "|" +
                  std::to_string(c.num_states()) + "|" + std::to_string(c.input_width()) + "|";
  std::vector<std::string> rows;
  for (const auto& row : c.transitions()) {
    std::vector<std::string> cells;
    for (auto t : row) {
      cells.push_back(std::to_string(t));
    }
    rows.push_back(text::join(cells, ","));
  }
  s += text::join(rows, ";") + "|";
  for (auto o : c.outputs()) {
    s += o != 0 ? '1' : '0';
  }
  return s;
}

std::string digest(const std::string& canonical)
{
  return text::sha256_hex(canonical);
}

std::string minterm_lines(const SopExpr& sop)
{
  std::vector<std::string> lines;
  for (const auto& t : sop.terms) {
    std::uint32_t row = 0;
    bool full = true;
    for (auto p : t.literals) {
      full = full && p != Polarity::absent;
      row = (row << 1) | (p == Polarity::positive ? 1U : 0U);
    }
    if (!full) {
      throw ContractError("minterm_lines: products must carry every literal");
    }
    lines.push_back(row_tuple(row, sop.vars.size()) + " => " + render_product(t, sop.vars));
  }
  return text::join(lines, "\n");
}

std::string output_states_sentence(const FsmGraph& fsm, const FsmEmitOptions& o)
{
  const OutputLogic logic = derive_output_logic(fsm);
  std::vector<std::string> parts;
  if (logic.kind == OutputKind::moore) {
    for (auto s : logic.states) {
      parts.push_back(fsm.name(s));
    }
  } else {
    for (const auto& [s, v] : logic.edges) {
      parts.push_back("(" + fsm.name(s) + ", " + input_condition(o.input.for_state(s), v, fsm.input_width()) + ")");
    }
  }
  if (parts.empty()) {
    return "The output is never 1.";
  }
  return "The output is 1 for states: " + text::join(parts, ", ") + ".";
}

ProblemRecord forge_kmap(const BooleanSpec& spec, const KarnaughMap& kmap, const std::string& template_id,
                         std::uint64_t seed, const ForgeOptions& opts)
{
  require_template(template_id, RecordKind::kmap);
  if (kmap.spec() != spec) {
    throw ContractError("forge_kmap: map was not laid out from this spec");
  }
  const std::string out = "out";
  const auto ports = combinational_ports(spec.vars(), out);
  const SopExpr sop = derive_sop(spec);
  const EmittedModule m = emit_combinational(sop, opts.module_name, ports);
  const std::string header = emit_header(ports, opts.module_name);

  std::string lead;
  if (template_id == "kmap_fixture") {
    lead = "Implement the circuit described by the Karnaugh map below.";
  } else {
    lead = "The Karnaugh map below gives a combinational function of " + text::number_word(spec.num_vars()) +
           " inputs. Cells marked x are don't-cares. Write a module that implements the function.";
  }
  ProblemRecord r;
  r.kind = RecordKind::kmap;
  r.seed = seed;
  r.problem = sections({instruction(opts, lead), text::fenced(render(kmap) + "\n" + header)});
  r.solution = comb_body(sop,
                         "Finally, based on the above logic equation, I can now write the Verilog code that could be "
                         "described by the Karnaugh map:",
                         m,
                         {vars_sentence(spec),
                          "Based on the Karnaugh map, I can transform in to the following truth table:",
                          render_truth_table(truth_table(spec))});
  r.canonical_key = digest(comb_key_string(spec));
  r.meta = base_meta(template_id);
  r.meta["n"] = spec.num_vars();
  r.meta["output"] = out;
  r.meta["layout"] = {{"row_vars", kmap.row_vars()},
                      {"col_vars", kmap.col_vars()},
                      {"row_seq", kmap.row_seq()},
                      {"col_seq", kmap.col_seq()},
                      {"transposed", kmap.transposed()}};
  r.meta["semantic"] = {{"spec", encode(spec)}, {"output", out}};
  return r;
}

ProblemRecord forge_truthtable(const BooleanSpec& spec, const std::string& template_id, std::uint64_t seed,
                               const ForgeOptions& opts)
{
  require_template(template_id, RecordKind::truthtable);
  const std::string out = "f";
  const auto ports = combinational_ports(spec.vars(), out);
  const SopExpr sop = derive_sop(spec);
  const EmittedModule m = emit_combinational(sop, opts.module_name, ports);

  std::string lead;
  if (template_id == "truthtable_a") {
    lead = "Implement the combinational circuit specified by the truth table below. Rows whose output is x are "
           "don't-cares.";
  } else {
    lead = "Write a module whose output f follows the truth table below. An x in the f column means the value does "
           "not matter.";
  }
  ProblemRecord r;
  r.kind = RecordKind::truthtable;
  r.seed = seed;
  r.problem = sections({instruction(opts, lead), render_truth_table(truth_table(spec), out),
                        text::fenced(emit_header(ports, opts.module_name))});
  r.solution = comb_body(sop, "Finally, based on the above logic equation, I can now write the Verilog code:", m,
                         {vars_sentence(spec)});
  r.canonical_key = digest(comb_key_string(spec));
  r.meta = base_meta(template_id);
  r.meta["n"] = spec.num_vars();
  r.meta["output"] = out;
  r.meta["semantic"] = {{"spec", encode(spec)}, {"output", out}};
  return r;
}

std::string fsm_style_name(FsmStyle s)
{
  switch (s) {
  case FsmStyle::table_binary:
    return "table_binary";
  case FsmStyle::edgelist_moore:
    return "edgelist_moore";
  case FsmStyle::edgelist_mealy:
    return "edgelist_mealy";
  case FsmStyle::table_onehot_comb:
    return "table_onehot_comb";
  }
  return "edgelist_moore";
}

FsmEmitOptions fsm_emit_options(const FsmDesign& design, FsmStyle style, const std::string& template_id)
{
  FsmEmitOptions o;
  const auto& fsm = design.fsm;
  switch (style) {
  case FsmStyle::table_binary:
    o.templ = FsmTemplate::state_table;
    o.input.name = "x";
    o.output_name = "z";
    o.state_name = "y";
    o.next_name = "next_state";
    o.next_bit = design.emit.next_bit;
    break;
  case FsmStyle::edgelist_moore:
    o.templ = FsmTemplate::registered;
    if (template_id == "fsm_edgelist_moore") {
      o.input.per_state = fsm.input_width() == 1;
      o.scalar_state_regs = design.emit.scalar_state_regs;
    } else {
      o.dialect = design.emit.dialect;
    }
    break;
  case FsmStyle::edgelist_mealy:
    o.templ = FsmTemplate::registered;
    o.input.name = "x";
    o.output_name = "z";
    o.next_name = "next_state";
    o.params = ParamStyle::sized_binary;
    break;
  case FsmStyle::table_onehot_comb:
    o.templ = FsmTemplate::onehot_comb;
    o.next_name = "next_state";
    break;
  }
  o.module_name = design.emit.module_name;
  return o;
}

ProblemRecord forge_fsm(const FsmDesign& design, FsmStyle style, const std::string& template_id, std::uint64_t seed,
                        const ForgeOptions& opts)
{
  const auto& fsm = design.fsm;
  RecordKind kind = RecordKind::fsm_moore;
  bool want_moore = true;
  switch (style) {
  case FsmStyle::table_binary:
  case FsmStyle::edgelist_moore:
    break;
  case FsmStyle::edgelist_mealy:
    kind = RecordKind::fsm_mealy;
    want_moore = false;
    break;
  case FsmStyle::table_onehot_comb:
    kind = RecordKind::fsm_onehot_comb;
    break;
  }
  require_template(template_id, kind);
  if ((style == FsmStyle::table_binary) != (template_id == "fsm_table_binary")) {
    throw ContractError("forge_fsm: template '" + template_id + "' does not match style " + fsm_style_name(style));
  }
  if ((fsm.kind() == OutputKind::moore) != want_moore) {
    throw ContractError("forge_fsm: style " + fsm_style_name(style) + " needs a " + (want_moore ? "Moore" : "Mealy") +
                        " machine");
  }
  if (style == FsmStyle::table_binary && design.enc.kind != EncodingKind::binary) {
    throw ContractError("forge_fsm: the state-assigned table needs binary encoding");
  }
  if (style == FsmStyle::table_onehot_comb && design.enc.kind != EncodingKind::one_hot) {
    throw ContractError("forge_fsm: the one-hot template needs one-hot encoding");
  }

  FsmDesign d = design;
  d.emit = fsm_emit_options(design, style, template_id);
  d.emit.module_name = opts.module_name;
  if (style == FsmStyle::table_binary || style == FsmStyle::table_onehot_comb) {
    d.reset = {};
  } else if (d.reset.kind == ResetKind::none) {
    throw ContractError("forge_fsm: a registered template needs a reset");
  }
  if (style == FsmStyle::table_binary && (d.emit.next_bit < 0 || d.emit.next_bit >= d.enc.width)) {
    throw ContractError("forge_fsm: exported next-state bit out of range");
  }
  const EmittedModule m = emit_fsm(d);
  const std::string header = emit_header(m.ports, opts.module_name, true);
  const std::string code = text::fenced(m.text);
  const auto& o = d.emit;
  const std::string n_word = text::number_word(fsm.num_states());

  ProblemRecord r;
  r.kind = kind;
  r.seed = seed;
  switch (style) {
  case FsmStyle::table_binary: {
    const std::string bit = o.next_bit_prefix + "[" + std::to_string(o.next_bit) + "]";
    EncodedTableStyle ts{o.state_name, o.next_bit_prefix, o.input.name, o.output_name};
    r.problem = sections({instruction(opts, "Given the state-assigned table shown below, implement the logic functions " +
                                                bit + " and " + o.output_name + "."),
                          text::fenced(render_transition_table(fsm, d.enc, ts) + "\n" + header)});
    std::vector<std::string> codes;
    for (std::size_t s = 0; s < fsm.num_states(); ++s) {
      if (((d.enc.codes[s] >> o.next_bit) & 1U) != 0) {
        codes.push_back(text::bits(d.enc.codes[s], d.enc.width) + " (" + fsm.name(s) + ")");
      }
    }
    r.solution = sections({"The state transition is as follows:", text::fenced(render_transition_table(fsm)),
                           "The transition logic is then:", arms(fsm, o), output_states_sentence(fsm, o),
                           output_logic_sentence(fsm, o),
                           o.next_bit_prefix + std::to_string(o.next_bit) + " corresponds to " +
                               text::join(codes, ", ") + ".",
                           "Finally, below is the Verilog code for the finite state machine:", code});
    break;
  }
  case FsmStyle::edgelist_moore: {
    const std::string target = fsm.name(d.reset.target);
    const std::string inputs = input_phrase(fsm, o);
    std::string lead;
    EdgeListStyle es{o.input, o.output_name, false};
    if (template_id == "fsm_edgelist_moore") {
      es.descending_inputs = true;
      lead = "This is a Moore state machine with " + n_word + " states, " + inputs +
             ", and one output. Implement this state machine in Verilog. Reset is an active-high " +
             reset_timing(d.reset.kind) + " reset to state " + target + ".";
    } else {
      lead = "Implement the Moore state machine given by the transition list below. Each line shows a state, its "
             "output, the input value and the next state. The machine has " +
             n_word + " states and " + inputs + ". The " + reset_timing(d.reset.kind) + " active-high reset " +
             d.reset.signal + " puts the machine in state " + target + ".";
    }
    r.problem = sections({instruction(opts, lead), text::fenced(render_edge_list(fsm, es) + "\n" + header)});
    r.solution = sections({"The finite state machine has " + inputs +
                               ", and the state transition logic is as follows:",
                           arms(fsm, o), output_states_sentence(fsm, o), output_logic_sentence(fsm, o),
                           "Finally, below is the Verilog code for the finite state machine:", code});
    break;
  }
  case FsmStyle::edgelist_mealy: {
    const std::string lead = "The following diagram is a Mealy machine. Implement in Verilog using " +
                             encoding_name(d.enc) + " encoding (" + code_list(fsm, d.enc) + "). Resets into state " +
                             fsm.name(d.reset.target) + " and reset is " + reset_timing(d.reset.kind) +
                             " active-high.";
    r.problem = sections({instruction(opts, lead),
                          text::fenced(render_edge_list(fsm, {o.input, o.output_name, false}) + "\n" + header)});
    r.solution = sections({"From the transition diagram, we have the following transition logic:",
                           text::fenced(render_next_state_table(fsm)),
                           "Thus the state transition logic is as follows:", arms(fsm, o),
                           output_states_sentence(fsm, o), output_logic_sentence(fsm, o),
                           "Finally, below is the Verilog code for the finite state machine:", code});
    break;
  }
  case FsmStyle::table_onehot_comb: {
    const std::string inputs = input_phrase(fsm, o);
    const std::string lead =
        "The following is the state transition table for a Moore state machine with " + inputs + ", one output, and " +
        n_word + " states.\n\nUse the following one-hot state encoding: " + code_list(fsm, d.enc) +
        ". Derive state transition and output logic equations by inspection assuming a one-hot encoding. Implement "
        "only the state transition logic and output logic (the combinational logic portion) for this state machine.";
    r.problem = sections({instruction(opts, lead), text::fenced(render_transition_table(fsm) + "\n" + header)});
    std::vector<std::string> parts = {
      "Based on the state transition table, we can obtain the next state from observing the row (previous state) "
      "and column (input)."};
    for (const auto& rule : derive_in_edge_logic(fsm).in_rules) {
      std::vector<std::string> cells;
      for (const auto& t : rule.terms) {
        cells.push_back("(" + fsm.name(t.pred) + ", " + o.input.name + "=" +
                        input_value_label(t.input, fsm.input_width()) + ")");
      }
      parts.push_back("Next state is " + fsm.name(rule.target) + " on the following (row, column): " +
                      (cells.empty() ? std::string("none") : text::join(cells, " ")) +
                      ". This correspond to the following logic: ``" + in_edge_expr(fsm, rule, o.input, o.state_name) +
                      "``.");
    }
    parts.push_back(output_states_sentence(fsm, o));
    parts.push_back(output_logic_sentence(fsm, o));
    parts.push_back("Finally, below is the Verilog code for the finite state machine:");
    parts.push_back(code);
    r.solution = sections(parts);
    break;
  }
  }
  r.canonical_key = digest(fsm_key_string(fsm));
  r.meta = fsm_meta(d, template_id, style);
  return r;
}

ProblemRecord forge_waveform_comb(const BooleanSpec& spec, const WaveformTrace& trace, const std::string& template_id,
                                  std::uint64_t seed, const ForgeOptions& opts)
{
  require_template(template_id, RecordKind::waveform_comb);
  if (trace.kind != TraceKind::combinational || trace.signals.size() != spec.num_vars() + 1) {
    throw ContractError("forge_waveform_comb: trace does not match the spec");
  }
  const TruthTable recovered = recover_truth_table(trace);
  if (recovered.vars != spec.vars() || spec_from_table(recovered) != spec) {
    throw ContractError("forge_waveform_comb: trace does not match the spec");
  }
  const std::string out = trace.signals.back().name;
  const auto ports = combinational_ports(spec.vars(), out);
  const SopExpr sop = derive_sop(spec);
  const EmittedModule m = emit_combinational(sop, opts.module_name, ports);

  std::string lead;
  if (template_id == "waveform_comb") {
    lead = "This is a combinational circuit. Read the simulation waveforms to determine what the circuit does, then "
           "implement it.";
  } else {
    lead = "The samples below were recorded from a module with no internal state. Work out the function that drives " +
           out + " and write the module.";
  }
  ProblemRecord r;
  r.kind = RecordKind::waveform_comb;
  r.seed = seed;
  r.problem = sections({instruction(opts, lead), text::fenced(render_waveform(trace) + "\n" + emit_header(ports, opts.module_name))});
  r.solution = comb_body(sop, "Finally, based on the above logic equation, I can now write the Verilog code:", m,
                         {"Based on the simulation waveform, I can transform it into the following truth table:",
                          render_truth_table(recovered)});
  r.canonical_key = digest(comb_key_string(spec));
  r.meta = base_meta(template_id);
  r.meta["n"] = spec.num_vars();
  r.meta["output"] = out;
  r.meta["semantic"] = {{"spec", encode(spec)}, {"output", out}};
  return r;
}

ProblemRecord forge_waveform_seq(const FsmDesign& design, const SeqStimulus& stim, const std::string& template_id,
                                 std::uint64_t seed, const ForgeOptions& opts)
{
  require_template(template_id, RecordKind::waveform_seq);
  const auto& fsm = design.fsm;
  if (fsm.kind() != OutputKind::moore) {
    throw ContractError("forge_waveform_seq: a Moore machine is expected");
  }
  if (design.reset.kind == ResetKind::none) {
    throw ContractError("forge_waveform_seq: a reset is needed to start the trace");
  }
  FsmDesign d = design;
  d.emit = FsmEmitOptions{};
  d.emit.module_name = opts.module_name;
  d.emit.inputs_before_reset = true;
  const SeqSignalNames names{"clk", d.reset.signal, d.emit.input.name, d.emit.output_name};
  const WaveformTrace trace = simulate_sequential(fsm, d.enc, stim.inputs, stim.reset_cycles, d.reset.target, names);
  if (!verify_trace(fsm, d.enc, trace, d.reset.target, names)) {
    throw ContractError("forge_waveform_seq: trace does not match the machine");
  }
  const EmittedModule m = emit_fsm(d);
  const auto& o = d.emit;

  ProblemRecord r;
  r.kind = RecordKind::waveform_seq;
  r.seed = seed;
  r.problem = sections({instruction(opts, "This is a sequential circuit. Read the simulation waveforms to determine "
                                          "what the circuit does, then implement it."),
                        text::fenced(render_waveform(trace) + "\n" + emit_header(m.ports, opts.module_name, true))});
  r.solution = sections({"From the waveform, we have the following transition logic and output logic:",
                         text::fenced(render_transition_table(fsm)), "Thus the state transition logic is as follows:",
                         arms(fsm, o), output_states_sentence(fsm, o), output_logic_sentence(fsm, o),
                         "Finally, below is the Verilog code for the finite state machine:", text::fenced(m.text)});
  r.canonical_key = digest(fsm_key_string(fsm));
  r.meta = base_meta(template_id);
  r.meta["n"] = fsm.num_states();
  r.meta["w"] = fsm.input_width();
  r.meta["encoding"] = encoding_name(d.enc);
  r.meta["reset"] = reset_kind_name(d.reset.kind);
  r.meta["semantic"] = {
    {"design", encode(d)}, {"stimulus", stim.inputs}, {"reset_cycles", stim.reset_cycles}};
  return r;
}

std::string extract_module(const std::string& s)
{
  std::string last;
  std::string current;
  bool inside = false;
  for (const auto& line : text::split_lines(s)) {
    if (text::starts_with(text::trim(line), "```")) {
      if (inside && current.find("module ") != std::string::npos) {
        last = current;
      }
      inside = !inside;
      current.clear();
      continue;
    }
    if (inside) {
      current += line + "\n";
    }
  }
  if (last.empty()) {
    throw ContractError("extract_module: no fenced module found");
  }
  return last;
}

} // namespace hdlforge
