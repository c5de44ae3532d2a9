#include "hdlforge/record_json.hpp"

namespace hdlforge {

namespace {

std::string encoding_kind_name(EncodingKind k)
{
  switch (k) {
  case EncodingKind::binary:
    return "binary";
  case EncodingKind::one_hot:
    return "one_hot";
  case EncodingKind::explicit_codes:
    return "explicit";
  }
  return "binary";
}

EncodingKind encoding_kind_from(const std::string& s)
{
  if (s == "binary") {
    return EncodingKind::binary;
  }
  if (s == "one_hot") {
    return EncodingKind::one_hot;
  }
  if (s == "explicit") {
    return EncodingKind::explicit_codes;
  }
  throw ContractError("unknown encoding kind '" + s + "'");
}

std::string template_name(FsmTemplate t)
{
  switch (t) {
  case FsmTemplate::registered:
    return "registered";
  case FsmTemplate::state_table:
    return "state_table";
  case FsmTemplate::onehot_comb:
    return "onehot_comb";
  }
  return "registered";
}

FsmTemplate template_from(const std::string& s)
{
  if (s == "registered") {
    return FsmTemplate::registered;
  }
  if (s == "state_table") {
    return FsmTemplate::state_table;
  }
  if (s == "onehot_comb") {
    return FsmTemplate::onehot_comb;
  }
  throw ContractError("unknown FSM template '" + s + "'");
}

char polarity_glyph(Polarity p)
{
  switch (p) {
  case Polarity::positive:
    return '1';
  case Polarity::negated:
    return '0';
  case Polarity::absent:
    return '-';
  }
  return '-';
}

Polarity polarity_from(char c)
{
  switch (c) {
  case '1':
    return Polarity::positive;
  case '0':
    return Polarity::negated;
  case '-':
    return Polarity::absent;
  default:
    throw ContractError("bad literal glyph in SOP term");
  }
}

} // namespace

json encode(const BooleanSpec& spec)
{
  return {{"vars", spec.vars()}, {"minterms", spec.minterms()}, {"dont_cares", spec.dont_cares()}};
}

BooleanSpec decode_spec(const json& j)
{
  return BooleanSpec(j.at("vars").get<std::vector<std::string>>(), j.at("minterms").get<std::vector<std::uint32_t>>(),
                     j.at("dont_cares").get<std::vector<std::uint32_t>>());
}

json encode(const FsmGraph& fsm)
{
  return {{"states", fsm.state_names()},
          {"w", fsm.input_width()},
          {"next", fsm.transitions()},
          {"kind", fsm.kind() == OutputKind::moore ? "moore" : "mealy"},
          {"outputs", fsm.outputs()}};
}

FsmGraph decode_fsm(const json& j)
{
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "moore" && kind != "mealy") {
    throw ContractError("unknown machine kind '" + kind + "'");
  }
  return FsmGraph(j.at("states").get<std::vector<std::string>>(), j.at("w").get<int>(),
                  j.at("next").get<std::vector<std::vector<std::size_t>>>(),
                  kind == "moore" ? OutputKind::moore : OutputKind::mealy,
                  j.at("outputs").get<std::vector<std::uint8_t>>());
}

json encode(const StateEncoding& enc)
{
  return {{"kind", encoding_kind_name(enc.kind)}, {"width", enc.width}, {"codes", enc.codes}};
}

StateEncoding decode_encoding(const json& j)
{
  const EncodingKind kind = encoding_kind_from(j.at("kind").get<std::string>());
  StateEncoding e = explicit_encoding(j.at("codes").get<std::vector<std::uint32_t>>(), j.at("width").get<int>());
  e.kind = kind;
  return e;
}

json encode(const ResetSpec& r)
{
  return {{"kind", reset_kind_name(r.kind)}, {"signal", r.signal}, {"target", r.target}};
}

ResetSpec decode_reset(const json& j)
{
  return {reset_kind_from_name(j.at("kind").get<std::string>()), j.at("signal").get<std::string>(),
          j.at("target").get<std::size_t>()};
}

json encode(const FsmEmitOptions& o)
{
  return {{"template", template_name(o.templ)},
          {"module", o.module_name},
          {"input", o.input.name},
          {"input_per_state", o.input.per_state},
          {"output", o.output_name},
          {"state", o.state_name},
          {"next", o.next_name},
          {"params", o.params == ParamStyle::decimal ? "decimal" : "sized_binary"},
          {"dialect", o.dialect == Dialect::always_comb ? "always_comb" : "always_star"},
          {"scalar_state_regs", o.scalar_state_regs},
          {"inputs_before_reset", o.inputs_before_reset},
          {"next_bit", o.next_bit},
          {"next_bit_prefix", o.next_bit_prefix}};
}

FsmEmitOptions decode_emit_options(const json& j)
{
  FsmEmitOptions o;
  o.templ = template_from(j.at("template").get<std::string>());
  o.module_name = j.at("module").get<std::string>();
  o.input.name = j.at("input").get<std::string>();
  o.input.per_state = j.at("input_per_state").get<bool>();
  o.output_name = j.at("output").get<std::string>();
  o.state_name = j.at("state").get<std::string>();
  o.next_name = j.at("next").get<std::string>();
  o.params = j.at("params").get<std::string>() == "decimal" ? ParamStyle::decimal : ParamStyle::sized_binary;
  o.dialect = j.at("dialect").get<std::string>() == "always_comb" ? Dialect::always_comb : Dialect::always_star;
  o.scalar_state_regs = j.at("scalar_state_regs").get<bool>();
  o.inputs_before_reset = j.at("inputs_before_reset").get<bool>();
  o.next_bit = j.at("next_bit").get<int>();
  o.next_bit_prefix = j.at("next_bit_prefix").get<std::string>();
  return o;
}

json encode(const FsmDesign& d)
{
  return {{"fsm", encode(d.fsm)}, {"encoding", encode(d.enc)}, {"reset", encode(d.reset)}, {"emit", encode(d.emit)}};
}

FsmDesign decode_design(const json& j)
{
  return {decode_fsm(j.at("fsm")), decode_encoding(j.at("encoding")), decode_reset(j.at("reset")),
          decode_emit_options(j.at("emit"))};
}

json encode(const ConcatDesign& d)
{
  json inputs = json::array();
  for (const auto& w : d.inputs) {
    inputs.push_back({{"name", w.name}, {"width", w.width}});
  }
  json outputs = json::array();
  for (const auto& w : d.outputs) {
    outputs.push_back({{"name", w.name}, {"width", w.width}});
  }
  json sources = json::array();
  for (const auto& s : d.sources) {
    sources.push_back({{"input", s.input}, {"width", s.width}, {"value", s.value}});
  }
  return {{"inputs", inputs}, {"outputs", outputs}, {"sources", sources}};
}

ConcatDesign decode_concat(const json& j)
{
  ConcatDesign d;
  for (const auto& w : j.at("inputs")) {
    d.inputs.push_back({w.at("name").get<std::string>(), w.at("width").get<int>()});
  }
  for (const auto& w : j.at("outputs")) {
    d.outputs.push_back({w.at("name").get<std::string>(), w.at("width").get<int>()});
  }
  for (const auto& s : j.at("sources")) {
    d.sources.push_back({s.at("input").get<int>(), s.at("width").get<int>(), s.at("value").get<std::uint64_t>()});
  }
  validate(d);
  return d;
}

json encode(const ShiftDesign& d)
{
  return {{"width", d.width}, {"shift_right", d.shift_right}, {"reset_value", d.reset_value}};
}

ShiftDesign decode_shift(const json& j)
{
  ShiftDesign d{j.at("width").get<int>(), j.at("shift_right").get<bool>(), j.at("reset_value").get<std::uint32_t>()};
  validate(d);
  return d;
}

json encode(const SopExpr& sop)
{
  json terms = json::array();
  for (const auto& t : sop.terms) {
    std::string s;
    for (auto p : t.literals) {
      s += polarity_glyph(p);
    }
    terms.push_back(s);
  }
  return {{"vars", sop.vars}, {"terms", terms}};
}

SopExpr decode_sop(const json& j)
{
  SopExpr sop;
  sop.vars = j.at("vars").get<std::vector<std::string>>();
  for (const auto& t : j.at("terms")) {
    const auto s = t.get<std::string>();
    if (s.size() != sop.vars.size()) {
      throw ContractError("SOP term length does not match the variable count");
    }
    Product p;
    for (char c : s) {
      p.literals.push_back(polarity_from(c));
    }
    sop.terms.push_back(std::move(p));
  }
  return sop;
}

json to_json(const ProblemRecord& r)
{
  return {{"kind", kind_name(r.kind)},    {"problem", r.problem}, {"solution", r.solution},
          {"canonical_key", r.canonical_key}, {"seed", r.seed},     {"meta", r.meta}};
}

ProblemRecord record_from_json(const json& j)
{
  ProblemRecord r;
  r.kind = kind_from_name(j.at("kind").get<std::string>());
  r.problem = j.at("problem").get<std::string>();
  r.solution = j.at("solution").get<std::string>();
  r.canonical_key = j.at("canonical_key").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.meta = j.at("meta");
  return r;
}

std::string dump_line(const ProblemRecord& r)
{
  // nlohmann's object type is a std::map, so keys come out sorted.
  return to_json(r).dump(-1, ' ', false, json::error_handler_t::strict);
}

ProblemRecord parse_line(const std::string& line)
{
  return record_from_json(json::parse(line));
}

} // namespace hdlforge
