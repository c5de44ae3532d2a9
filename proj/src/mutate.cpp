#include "hdlforge/mutate.hpp"

#include "hdlforge/record_json.hpp"
#include "hdlforge/text.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace hdlforge {

namespace {

struct OpInfo {
  MutationOp op;
  const char* name;
  const char* tag;
  std::uint32_t weight;
};

const std::vector<OpInfo>& op_table()
{
  static const std::vector<OpInfo> table = {
    {MutationOp::sop_literal_flip, "sop_literal_flip", "Boolean Logic Flaws", 124},
    {MutationOp::sop_term_drop, "sop_term_drop", "KMap Misinterpretation", 88},
    {MutationOp::ternary_branch_swap, "ternary_branch_swap", "Casez Priority Conflicts", 44},
    {MutationOp::output_state_set_edit, "output_state_set_edit", "Bit Manipulation Bugs", 73},
    {MutationOp::reset_value_wrong, "reset_value_wrong", "Incorrect Initialization", 131},
    {MutationOp::concat_order_reverse, "concat_order_reverse", "Vector Concatenation", 153},
    {MutationOp::shift_direction_reverse, "shift_direction_reverse", "Shift Operation Faults", 102},
  };
  return table;
}

const OpInfo& info(MutationOp op)
{
  for (const auto& i : op_table()) {
    if (i.op == op) {
      return i;
    }
  }
  throw ContractError("unknown mutation operator");
}

FsmGraph rebuild(const FsmGraph& f, std::vector<std::vector<std::size_t>> next, std::vector<std::uint8_t> outputs)
{
  return FsmGraph(f.state_names(), f.input_width(), std::move(next), f.kind(), std::move(outputs));
}

std::size_t output_slot(const FsmGraph& f, std::size_t state, std::uint32_t input)
{
  return f.kind() == OutputKind::moore ? state : state * f.num_inputs() + input;
}

template <typename T>
const T& as(const MutableObject& obj, MutationOp op)
{
  if (const T* p = std::get_if<T>(&obj)) {
    return *p;
  }
  throw ContractError(std::string("mutation ") + info(op).name + " does not apply to a " + family_name(obj) +
                      " design");
}

std::vector<ConcatSource> rotate_sources(const std::vector<ConcatSource>& src, std::size_t i)
{
  // Block [i, n) moves in front of block [0, i).
  std::vector<ConcatSource> out(src.begin() + static_cast<std::ptrdiff_t>(i), src.end());
  out.insert(out.end(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(i));
  return out;
}

bool fsm_differs(const FsmDesign& a, const FsmDesign& b)
{
  const FsmGraph& fa = a.fsm;
  const FsmGraph& fb = b.fsm;
  if (fa.num_states() != fb.num_states() || fa.input_width() != fb.input_width() || fa.kind() != fb.kind()) {
    return true;
  }
  const std::uint32_t k = fa.num_inputs();
  const bool moore = fa.kind() == OutputKind::moore;
  switch (a.emit.templ) {
  case FsmTemplate::registered: {
    // Product machine from the two reset states.
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::deque<std::pair<std::size_t, std::size_t>> work;
    work.emplace_back(a.reset.target, b.reset.target);
    seen.insert(work.front());
    while (!work.empty()) {
      const auto [x, y] = work.front();
      work.pop_front();
      if (moore && fa.state_output(x) != fb.state_output(y)) {
        return true;
      }
      for (std::uint32_t v = 0; v < k; ++v) {
        if (!moore && fa.edge_output(x, v) != fb.edge_output(y, v)) {
          return true;
        }
        const std::pair<std::size_t, std::size_t> nxt{fa.next(x, v), fb.next(y, v)};
        if (seen.insert(nxt).second) {
          work.push_back(nxt);
        }
      }
    }
    return false;
  }
  case FsmTemplate::state_table: {
    const int bit = a.emit.next_bit;
    for (std::size_t s = 0; s < fa.num_states(); ++s) {
      if (fa.state_output(s) != fb.state_output(s)) {
        return true;
      }
      for (std::uint32_t v = 0; v < k; ++v) {
        const auto ya = (a.enc.codes[fa.next(s, v)] >> bit) & 1U;
        const auto yb = (b.enc.codes[fb.next(s, v)] >> bit) & 1U;
        if (ya != yb) {
          return true;
        }
      }
    }
    return false;
  }
  case FsmTemplate::onehot_comb:
    for (std::size_t s = 0; s < fa.num_states(); ++s) {
      for (std::uint32_t v = 0; v < k; ++v) {
        if (fa.next(s, v) != fb.next(s, v) || step(fa, s, v).output != step(fb, s, v).output ||
            fa.state_output(s) != fb.state_output(s)) {
          return true;
        }
      }
    }
    return false;
  }
  return true;
}

std::vector<MutationSite> candidate_sites(const MutableObject& obj, MutationOp op)
{
  std::vector<MutationSite> sites;
  switch (op) {
  case MutationOp::sop_literal_flip: {
    const auto& c = as<CombDesign>(obj, op);
    for (std::size_t t = 0; t < c.sop.terms.size(); ++t) {
      for (std::size_t v = 0; v < c.sop.vars.size(); ++v) {
        if (c.sop.terms[t].literals[v] != Polarity::absent) {
          sites.push_back({t, v, 0, 0});
        }
      }
    }
    break;
  }
  case MutationOp::sop_term_drop: {
    const auto& c = as<CombDesign>(obj, op);
    for (std::size_t t = 0; t < c.sop.terms.size(); ++t) {
      std::uint64_t row = 0;
      bool full = true;
      for (auto p : c.sop.terms[t].literals) {
        full = full && p != Polarity::absent;
        row = (row << 1) | (p == Polarity::positive ? 1U : 0U);
      }
      // Only full-literal products can be restored from a row index.
      if (full) {
        sites.push_back({t, 0, row, 0});
      }
    }
    break;
  }
  case MutationOp::ternary_branch_swap: {
    const auto& d = as<FsmDesign>(obj, op);
    if (d.fsm.input_width() != 1) {
      throw ContractError("ternary_branch_swap needs a 1-bit input");
    }
    for (std::size_t s = 0; s < d.fsm.num_states(); ++s) {
      if (d.fsm.next(s, 0) != d.fsm.next(s, 1)) {
        sites.push_back({s, 0, 0, 0});
      }
    }
    break;
  }
  case MutationOp::output_state_set_edit: {
    const auto& d = as<FsmDesign>(obj, op);
    const bool moore = d.fsm.kind() == OutputKind::moore;
    for (std::size_t s = 0; s < d.fsm.num_states(); ++s) {
      for (std::uint32_t v = 0; v < (moore ? 1U : d.fsm.num_inputs()); ++v) {
        sites.push_back({s, v, d.fsm.outputs()[output_slot(d.fsm, s, v)], 0});
      }
    }
    break;
  }
  case MutationOp::reset_value_wrong:
    if (const auto* d = std::get_if<FsmDesign>(&obj)) {
      if (d->emit.templ != FsmTemplate::registered || d->reset.kind == ResetKind::none) {
        throw ContractError("reset_value_wrong needs a registered machine with a reset");
      }
      for (std::size_t t = 0; t < d->fsm.num_states(); ++t) {
        if (t != d->reset.target) {
          sites.push_back({0, 0, d->reset.target, t});
        }
      }
    } else {
      const auto& sd = as<ShiftDesign>(obj, op);
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << sd.width); ++v) {
        if (v != sd.reset_value) {
          sites.push_back({0, 0, sd.reset_value, v});
        }
      }
    }
    break;
  case MutationOp::concat_order_reverse: {
    const auto& cd = as<ConcatDesign>(obj, op);
    for (std::size_t i = 1; i < cd.sources.size(); ++i) {
      sites.push_back({i, cd.sources.size(), 0, 0});
    }
    break;
  }
  case MutationOp::shift_direction_reverse: {
    const auto& sd = as<ShiftDesign>(obj, op);
    sites.push_back({0, 0, sd.shift_right ? 1U : 0U, 0});
    break;
  }
  }
  return sites;
}

std::string location_hint(const MutableObject& obj, const MutationDescriptor& d)
{
  const auto& s = d.site;
  switch (d.op) {
  case MutationOp::sop_literal_flip: {
    const auto& c = std::get<CombDesign>(obj);
    return "Look at product term " + std::to_string(s.index + 1) + " of the assign statement and the polarity of " +
           c.sop.vars[s.sub] + " in it.";
  }
  case MutationOp::sop_term_drop: {
    const auto& c = std::get<CombDesign>(obj);
    return "Input row " + row_tuple(static_cast<std::uint32_t>(s.before), c.sop.vars.size()) +
           " must drive the output to 1 but no product covers it.";
  }
  case MutationOp::ternary_branch_swap: {
    const auto& f = std::get<FsmDesign>(obj).fsm;
    return "The two branches of the conditional in the case arm for state " + f.name(s.index) + " are exchanged.";
  }
  case MutationOp::output_state_set_edit: {
    const auto& dd = std::get<FsmDesign>(obj);
    const auto& f = dd.fsm;
    if (f.kind() == OutputKind::moore) {
      return "State " + f.name(s.index) + " is on the wrong side of the output expression.";
    }
    return "The output for state " + f.name(s.index) + " with " +
           input_condition(dd.emit.input.for_state(s.index), static_cast<std::uint32_t>(s.sub), f.input_width()) +
           " is wrong.";
  }
  case MutationOp::reset_value_wrong:
    if (const auto* dd = std::get_if<FsmDesign>(&obj)) {
      return "Reset must put the machine in state " + dd->fsm.name(s.before) + ".";
    } else {
      const auto& sd = std::get<ShiftDesign>(obj);
      return "areset must load q with " + std::to_string(sd.width) + "'b" + text::bits(s.before, sd.width) + ".";
    }
  case MutationOp::concat_order_reverse:
    return "Rebuild the right-hand side in the order given by the description, most significant part first.";
  case MutationOp::shift_direction_reverse:
    return std::string("With ena asserted the register must shift ") + (s.before != 0 ? "right" : "left") +
           ", so the vacated bit is on the other end.";
  }
  return "";
}

std::vector<std::string> make_hints(const MutableObject& original, const MutationDescriptor& d)
{
  std::vector<std::string> hints;
  switch (d.op) {
  case MutationOp::sop_literal_flip:
    hints.push_back("This is a Boolean Logic Flaws error: one literal of the output expression has the wrong polarity.");
    break;
  case MutationOp::sop_term_drop:
    hints.push_back("This is a KMap Misinterpretation error: a product term is missing from the output expression.");
    break;
  case MutationOp::ternary_branch_swap:
    hints.push_back("This is a Casez Priority Conflicts error: one case arm picks its next states in the wrong order.");
    break;
  case MutationOp::output_state_set_edit:
    hints.push_back("This is a Bit Manipulation Bugs error: the output logic tests the wrong set of states.");
    break;
  case MutationOp::reset_value_wrong:
    hints.push_back("This is an Incorrect Initialization error: the reset branch assigns the wrong value.");
    break;
  case MutationOp::concat_order_reverse:
    hints.push_back("This is a Vector Concatenation error: the parts of the right-hand concatenation are out of order.");
    break;
  case MutationOp::shift_direction_reverse:
    hints.push_back("This is a Shift Operation Faults error: the register shifts in the wrong direction.");
    break;
  }
  hints.push_back(location_hint(original, d));
  hints.push_back("Everything else in the module is correct and should be kept as it is.");
  return hints;
}

} // namespace

std::string op_name(MutationOp op)
{
  return info(op).name;
}

MutationOp op_from_name(const std::string& s)
{
  for (const auto& i : op_table()) {
    if (s == i.name) {
      return i.op;
    }
  }
  throw ContractError("unknown mutation operator '" + s + "'");
}

const std::vector<MutationOp>& all_ops()
{
  static const std::vector<MutationOp> ops = [] {
    std::vector<MutationOp> v;
    for (const auto& i : op_table()) {
      v.push_back(i.op);
    }
    return v;
  }();
  return ops;
}

std::string taxonomy_tag(MutationOp op)
{
  return info(op).tag;
}

std::vector<std::uint32_t> default_op_weights()
{
  std::vector<std::uint32_t> w;
  for (const auto& i : op_table()) {
    w.push_back(i.weight);
  }
  return w;
}

std::string family_name(const MutableObject& obj)
{
  switch (obj.index()) {
  case 0:
    return "comb";
  case 1:
    return "fsm";
  case 2:
    return "concat";
  default:
    return "shift";
  }
}

bool applicable(const MutableObject& obj, MutationOp op)
{
  try {
    return !candidate_sites(obj, op).empty();
  } catch (const ContractError&) {
    return false;
  }
}

MutableObject apply_mutation(const MutableObject& obj, const MutationDescriptor& d)
{
  const auto& s = d.site;
  switch (d.op) {
  case MutationOp::sop_literal_flip: {
    CombDesign c = as<CombDesign>(obj, d.op);
    if (s.index >= c.sop.terms.size() || s.sub >= c.sop.vars.size()) {
      throw ContractError("sop_literal_flip: site out of range");
    }
    auto& lit = c.sop.terms[s.index].literals[s.sub];
    if (lit == Polarity::absent) {
      throw ContractError("sop_literal_flip: literal is absent");
    }
    lit = lit == Polarity::positive ? Polarity::negated : Polarity::positive;
    return c;
  }
  case MutationOp::sop_term_drop: {
    CombDesign c = as<CombDesign>(obj, d.op);
    if (s.index >= c.sop.terms.size() ||
        c.sop.terms[s.index] != minterm_product(static_cast<std::uint32_t>(s.before), c.sop.vars.size())) {
      throw ContractError("sop_term_drop: site does not name this term");
    }
    c.sop.terms.erase(c.sop.terms.begin() + static_cast<std::ptrdiff_t>(s.index));
    return c;
  }
  case MutationOp::ternary_branch_swap: {
    FsmDesign f = as<FsmDesign>(obj, d.op);
    if (f.fsm.input_width() != 1 || s.index >= f.fsm.num_states()) {
      throw ContractError("ternary_branch_swap: site out of range");
    }
    auto next = f.fsm.transitions();
    std::swap(next[s.index][0], next[s.index][1]);
    f.fsm = rebuild(f.fsm, std::move(next), f.fsm.outputs());
    return f;
  }
  case MutationOp::output_state_set_edit: {
    FsmDesign f = as<FsmDesign>(obj, d.op);
    if (s.index >= f.fsm.num_states() || s.sub >= f.fsm.num_inputs()) {
      throw ContractError("output_state_set_edit: site out of range");
    }
    auto out = f.fsm.outputs();
    auto& slot = out[output_slot(f.fsm, s.index, static_cast<std::uint32_t>(s.sub))];
    slot = slot != 0 ? 0 : 1;
    f.fsm = rebuild(f.fsm, f.fsm.transitions(), std::move(out));
    return f;
  }
  case MutationOp::reset_value_wrong:
    if (const auto* fp = std::get_if<FsmDesign>(&obj)) {
      FsmDesign f = *fp;
      if (f.reset.target != s.before || s.after >= f.fsm.num_states()) {
        throw ContractError("reset_value_wrong: site does not match the reset target");
      }
      f.reset.target = s.after;
      return f;
    } else {
      ShiftDesign sd = as<ShiftDesign>(obj, d.op);
      if (sd.reset_value != s.before) {
        throw ContractError("reset_value_wrong: site does not match the reset value");
      }
      sd.reset_value = static_cast<std::uint32_t>(s.after);
      validate(sd);
      return sd;
    }
  case MutationOp::concat_order_reverse: {
    ConcatDesign c = as<ConcatDesign>(obj, d.op);
    if (s.sub != c.sources.size() || s.index == 0 || s.index >= c.sources.size()) {
      throw ContractError("concat_order_reverse: site out of range");
    }
    c.sources = rotate_sources(c.sources, s.index);
    return c;
  }
  case MutationOp::shift_direction_reverse: {
    ShiftDesign sd = as<ShiftDesign>(obj, d.op);
    if ((sd.shift_right ? 1U : 0U) != s.before) {
      throw ContractError("shift_direction_reverse: site does not match the direction");
    }
    sd.shift_right = !sd.shift_right;
    return sd;
  }
  }
  throw ContractError("unknown mutation operator");
}

MutableObject revert(const MutableObject& mutated, const MutationDescriptor& d)
{
  const auto& s = d.site;
  switch (d.op) {
  case MutationOp::sop_literal_flip:
  case MutationOp::ternary_branch_swap:
    return apply_mutation(mutated, d);
  case MutationOp::output_state_set_edit: {
    // Toggling is its own inverse.
    return apply_mutation(mutated, d);
  }
  case MutationOp::sop_term_drop: {
    CombDesign c = as<CombDesign>(mutated, d.op);
    if (s.index > c.sop.terms.size()) {
      throw ContractError("sop_term_drop: site out of range");
    }
    c.sop.terms.insert(c.sop.terms.begin() + static_cast<std::ptrdiff_t>(s.index),
                       minterm_product(static_cast<std::uint32_t>(s.before), c.sop.vars.size()));
    return c;
  }
  case MutationOp::reset_value_wrong: {
    MutationDescriptor inv = d;
    std::swap(inv.site.before, inv.site.after);
    return apply_mutation(mutated, inv);
  }
  case MutationOp::concat_order_reverse: {
    MutationDescriptor inv = d;
    inv.site.index = s.sub - s.index;
    return apply_mutation(mutated, inv);
  }
  case MutationOp::shift_direction_reverse: {
    MutationDescriptor inv = d;
    inv.site.before = s.before != 0 ? 0 : 1;
    return apply_mutation(mutated, inv);
  }
  }
  throw ContractError("unknown mutation operator");
}

std::pair<MutableObject, MutationDescriptor> mutate(const MutableObject& obj, MutationOp op, Rng& rng)
{
  auto sites = candidate_sites(obj, op);
  rng.shuffle(sites);
  for (const auto& site : sites) {
    MutationDescriptor d{op, site, taxonomy_tag(op), {}};
    MutableObject m = [&]() -> MutableObject {
      try {
        return apply_mutation(obj, d);
      } catch (const ContractError&) {
        return obj;
      }
    }();
    if (validate_mutation(obj, m)) {
      d.hints = make_hints(obj, d);
      return {std::move(m), std::move(d)};
    }
  }
  throw ContractError(std::string("no behavior-changing site for ") + info(op).name);
}

bool validate_mutation(const MutableObject& correct, const MutableObject& mutated)
{
  if (correct.index() != mutated.index()) {
    throw ContractError("validate_mutation: objects belong to different families");
  }
  if (const auto* a = std::get_if<CombDesign>(&correct)) {
    const auto& b = std::get<CombDesign>(mutated);
    for (std::uint32_t row = 0; row < a->spec.num_rows(); ++row) {
      if (!a->spec.is_dont_care(row) && eval_row(a->sop, row) != eval_row(b.sop, row)) {
        return true;
      }
    }
    return false;
  }
  if (const auto* a = std::get_if<FsmDesign>(&correct)) {
    return fsm_differs(*a, std::get<FsmDesign>(mutated));
  }
  if (const auto* a = std::get_if<ConcatDesign>(&correct)) {
    const auto& b = std::get<ConcatDesign>(mutated);
    if (a->inputs != b.inputs || a->outputs != b.outputs) {
      return true;
    }
    std::vector<std::uint64_t> vec(a->inputs.size(), 0);
    if (eval_concat(*a, vec) != eval_concat(b, vec)) {
      return true;
    }
    for (std::size_t i = 0; i < vec.size(); ++i) {
      for (int bit = 0; bit < a->inputs[i].width; ++bit) {
        std::fill(vec.begin(), vec.end(), 0);
        vec[i] = std::uint64_t{1} << bit;
        if (eval_concat(*a, vec) != eval_concat(b, vec)) {
          return true;
        }
      }
    }
    return false;
  }
  const auto& a = std::get<ShiftDesign>(correct);
  const auto& b = std::get<ShiftDesign>(mutated);
  if (a.width != b.width || a.reset_value != b.reset_value) {
    return true;
  }
  const std::uint32_t n = 1U << a.width;
  for (std::uint32_t q = 0; q < n; ++q) {
    for (std::uint32_t data = 0; data < n; ++data) {
      for (int ctl = 0; ctl < 4; ++ctl) {
        const bool load = (ctl & 2) != 0;
        const bool ena = (ctl & 1) != 0;
        if (shift_next(a, q, load, ena, data) != shift_next(b, q, load, ena, data)) {
          return true;
        }
      }
    }
  }
  return false;
}

std::string descriptor_key(const MutationDescriptor& d)
{
  return op_name(d.op) + "|" + std::to_string(d.site.index) + "|" + std::to_string(d.site.sub) + "|" +
         std::to_string(d.site.before) + "|" + std::to_string(d.site.after);
}

std::string object_key(const MutableObject& obj)
{
  if (const auto* c = std::get_if<CombDesign>(&obj)) {
    return digest(comb_key_string(c->spec));
  }
  if (const auto* f = std::get_if<FsmDesign>(&obj)) {
    return digest(fsm_key_string(f->fsm));
  }
  return digest(family_name(obj) + "|" + encode(obj).dump());
}

bool same_object(const MutableObject& a, const MutableObject& b)
{
  if (a.index() != b.index()) {
    return false;
  }
  if (const auto* x = std::get_if<CombDesign>(&a)) {
    const auto& y = std::get<CombDesign>(b);
    return x->spec == y.spec && x->sop == y.sop && x->output == y.output && x->module_name == y.module_name;
  }
  if (const auto* x = std::get_if<FsmDesign>(&a)) {
    const auto& y = std::get<FsmDesign>(b);
    return x->fsm == y.fsm && x->enc == y.enc && x->reset == y.reset && x->emit == y.emit;
  }
  if (const auto* x = std::get_if<ConcatDesign>(&a)) {
    return *x == std::get<ConcatDesign>(b);
  }
  return std::get<ShiftDesign>(a) == std::get<ShiftDesign>(b);
}

EmittedModule emit_object(const MutableObject& obj)
{
  if (const auto* c = std::get_if<CombDesign>(&obj)) {
    return emit_combinational(c->sop, c->module_name, combinational_ports(c->sop.vars, c->output));
  }
  if (const auto* f = std::get_if<FsmDesign>(&obj)) {
    return emit_fsm(*f);
  }
  if (const auto* c = std::get_if<ConcatDesign>(&obj)) {
    return emit_concat(*c);
  }
  return emit_shift(std::get<ShiftDesign>(obj));
}

CheckResult check_object(std::string_view text, const MutableObject& obj)
{
  if (const auto* c = std::get_if<CombDesign>(&obj)) {
    return check_combinational(text, c->sop);
  }
  if (const auto* f = std::get_if<FsmDesign>(&obj)) {
    return check_fsm(text, *f);
  }
  if (const auto* c = std::get_if<ConcatDesign>(&obj)) {
    return check_concat(text, *c);
  }
  return check_shift(text, std::get<ShiftDesign>(obj));
}

nlohmann::json encode(const MutableObject& obj)
{
  nlohmann::json j = {{"family", family_name(obj)}};
  if (const auto* c = std::get_if<CombDesign>(&obj)) {
    j["spec"] = encode(c->spec);
    j["sop"] = encode(c->sop);
    j["output"] = c->output;
    j["module"] = c->module_name;
  } else if (const auto* f = std::get_if<FsmDesign>(&obj)) {
    j["design"] = encode(*f);
  } else if (const auto* cd = std::get_if<ConcatDesign>(&obj)) {
    j["concat"] = encode(*cd);
  } else {
    j["shift"] = encode(std::get<ShiftDesign>(obj));
  }
  return j;
}

MutableObject decode_object(const nlohmann::json& j)
{
  const std::string family = j.at("family").get<std::string>();
  if (family == "comb") {
    return CombDesign{decode_spec(j.at("spec")), decode_sop(j.at("sop")), j.at("output").get<std::string>(),
                      j.at("module").get<std::string>()};
  }
  if (family == "fsm") {
    return decode_design(j.at("design"));
  }
  if (family == "concat") {
    return decode_concat(j.at("concat"));
  }
  if (family == "shift") {
    return decode_shift(j.at("shift"));
  }
  throw ContractError("unknown design family '" + family + "'");
}

nlohmann::json encode(const MutationDescriptor& d)
{
  return {{"op", op_name(d.op)},
          {"taxonomy_tag", d.taxonomy_tag},
          {"hints", d.hints},
          {"site",
           {{"index", d.site.index}, {"sub", d.site.sub}, {"before", d.site.before}, {"after", d.site.after}}}};
}

MutationDescriptor decode_descriptor(const nlohmann::json& j)
{
  MutationDescriptor d;
  d.op = op_from_name(j.at("op").get<std::string>());
  d.taxonomy_tag = j.at("taxonomy_tag").get<std::string>();
  d.hints = j.at("hints").get<std::vector<std::string>>();
  const auto& s = j.at("site");
  d.site = {s.at("index").get<std::size_t>(), s.at("sub").get<std::size_t>(), s.at("before").get<std::uint64_t>(),
            s.at("after").get<std::uint64_t>()};
  return d;
}

RepairBase repair_base(const ProblemRecord& r)
{
  const auto& sem = r.meta.at("semantic");
  auto object = [&]() -> MutableObject {
    switch (r.kind) {
    case RecordKind::kmap:
    case RecordKind::truthtable:
    case RecordKind::waveform_comb: {
      BooleanSpec spec = decode_spec(sem.at("spec"));
      SopExpr sop = derive_sop(spec);
      // The module name lives in the emitted header; keep whatever the record used.
      const std::string code = extract_module(r.solution);
      const auto open = code.find("module ");
      const auto paren = code.find('(', open);
      std::string name(text::trim(std::string_view(code).substr(open + 7, paren - open - 7)));
      return CombDesign{std::move(spec), std::move(sop), sem.at("output").get<std::string>(), name};
    }
    case RecordKind::fsm_moore:
    case RecordKind::fsm_mealy:
    case RecordKind::fsm_onehot_comb:
    case RecordKind::waveform_seq:
      return decode_design(sem.at("design"));
    case RecordKind::repair:
      break;
    }
    throw ContractError("repair_base: repair records are not used as bases");
  }();
  return {kind_name(r.kind), r.problem, r.canonical_key, std::move(object)};
}

RepairBase repair_base(const ConcatDesign& d)
{
  const std::string header = emit_header(concat_ports(d));
  return {"concat", describe_concat(d) + "\n\n" + text::fenced(header) + "\n", object_key(d), d};
}

RepairBase repair_base(const ShiftDesign& d)
{
  const std::string header = emit_header(shift_ports(d));
  return {"shift", describe_shift(d) + "\n\n" + text::fenced(header) + "\n", object_key(d), d};
}

ProblemRecord forge_repair(const RepairBase& base, const MutableObject& mutated, const MutationDescriptor& d,
                           std::uint64_t seed)
{
  if (!validate_mutation(base.object, mutated)) {
    throw ContractError("forge_repair: the mutated design behaves like the original");
  }
  const EmittedModule correct = emit_object(base.object);
  const EmittedModule wrong = emit_object(mutated);
  const bool fsm = std::holds_alternative<FsmDesign>(base.object);
  const std::string header = emit_header(correct.ports, correct.module_name, fsm);

  std::vector<std::string> hints;
  for (std::size_t i = 0; i < d.hints.size(); ++i) {
    hints.push_back(std::to_string(i + 1) + ". " + d.hints[i]);
  }
  ProblemRecord r;
  r.kind = RecordKind::repair;
  r.seed = seed;
  r.problem = text::join(
                  {"1. Problem Description",
                   "The module below was written for the following task but does not behave as required. Find the "
                   "error and fix it.",
                   std::string(text::trim(base.description)), "2. Erroneous Implementation", text::fenced(wrong.text),
                   "3. Hints for Fixing", text::join(hints, "\n"), "Write the corrected module for this header:",
                   text::fenced(header)},
                  "\n\n") +
              "\n";
  r.solution = text::fenced(correct.text) + "\n";
  r.canonical_key = digest(base.base_key + "|" + descriptor_key(d));
  r.meta = {{"template", "repair"},
            {"template_source", "fixture"},
            {"base_kind", base.base_kind},
            {"base_key", base.base_key},
            {"mutation", encode(d)},
            {"op_weights", "error report category frequencies"},
            {"semantic", {{"object", encode(base.object)}}}};
  return r;
}

std::vector<std::string> base_kinds_for(MutationOp op)
{
  switch (op) {
  case MutationOp::sop_literal_flip:
  case MutationOp::sop_term_drop:
    return {"kmap", "truthtable", "waveform_comb"};
  case MutationOp::ternary_branch_swap:
  case MutationOp::output_state_set_edit:
    return {"fsm_moore", "fsm_mealy", "fsm_onehot_comb", "waveform_seq"};
  case MutationOp::reset_value_wrong:
    return {"fsm_moore", "fsm_mealy", "waveform_seq", "shift"};
  case MutationOp::concat_order_reverse:
    return {"concat"};
  case MutationOp::shift_direction_reverse:
    return {"shift"};
  }
  return {};
}

} // namespace hdlforge
