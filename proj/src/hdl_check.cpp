#include "hdlforge/hdl_check.hpp"

#include "hdlforge/vlog.hpp"

#include <functional>

namespace hdlforge {

using vlog::Simulator;
using vlog::Value;

namespace {

std::string show(const Value& v)
{
  return v.has_x() ? "x" : std::to_string(v.bits);
}

const vlog::PortDecl* single_output(const vlog::Module& m)
{
  const vlog::PortDecl* out = nullptr;
  for (const auto& p : m.ports) {
    if (!p.is_input) {
      if (out != nullptr) {
        return nullptr;
      }
      out = &p;
    }
  }
  return out;
}

bool is_bit(const Value& v, bool b)
{
  return !v.has_x() && v.bits == (b ? 1U : 0U);
}

/// Wraps parse and evaluation failures into a failed result.
CheckResult guarded(std::string_view text, const std::function<CheckResult(Simulator&)>& body)
{
  try {
    Simulator sim(vlog::parse_module(text));
    return body(sim);
  } catch (const vlog::ParseError& e) {
    return CheckResult::fail(std::string("parse error: ") + e.what());
  } catch (const vlog::EvalError& e) {
    return CheckResult::fail(std::string("evaluation error: ") + e.what());
  }
}

CheckResult check_comb_rows(std::string_view text, const std::vector<std::string>& vars,
                            const std::function<std::optional<bool>(std::uint32_t)>& expected)
{
  return guarded(text, [&](Simulator& sim) {
    const auto* out = single_output(sim.module());
    if (out == nullptr || out->width != 1) {
      return CheckResult::fail("expected exactly one 1-bit output");
    }
    for (const auto& v : vars) {
      const auto* p = sim.module().port(v);
      if (p == nullptr || !p->is_input || p->width != 1) {
        return CheckResult::fail("missing 1-bit input '" + v + "'");
      }
    }
    const std::size_t n = vars.size();
    for (std::uint32_t row = 0; row < (1U << n); ++row) {
      for (std::size_t i = 0; i < n; ++i) {
        sim.set(vars[i], (row >> (n - 1 - i)) & 1U);
      }
      sim.settle();
      const auto want = expected(row);
      if (!want) {
        continue;
      }
      const Value got = sim.get(out->name);
      if (!is_bit(got, *want)) {
        return CheckResult::fail("row " + std::to_string(row) + ": expected " + (*want ? "1" : "0") + ", got " +
                                 show(got));
      }
    }
    return CheckResult{};
  });
}

} // namespace

CheckResult check_combinational(std::string_view text, const SopExpr& sop)
{
  return check_comb_rows(text, sop.vars, [&](std::uint32_t row) { return std::optional<bool>(eval_row(sop, row)); });
}

CheckResult check_combinational(std::string_view text, const BooleanSpec& spec)
{
  return check_comb_rows(text, spec.vars(), [&](std::uint32_t row) -> std::optional<bool> {
    if (spec.is_dont_care(row)) {
      return std::nullopt;
    }
    return spec.is_minterm(row);
  });
}

namespace {

/// All assignments of the machine's data inputs as (port, value) lists,
/// with the input value each state reads.
struct InputCase {
  std::vector<std::pair<std::string, std::uint64_t>> ports;
  std::vector<std::uint32_t> seen_by_state;
};

std::vector<InputCase> input_cases(const FsmDesign& d)
{
  const auto& fsm = d.fsm;
  const auto& naming = d.emit.input;
  std::vector<InputCase> cases;
  if (!naming.per_state) {
    for (std::uint32_t v = 0; v < fsm.num_inputs(); ++v) {
      cases.push_back({{{naming.name, v}}, std::vector<std::uint32_t>(fsm.num_states(), v)});
    }
    return cases;
  }
  // Each state reads its own bit, so every state sees both values under the
  // all-zero and all-one patterns. Single-bit flips of both catch a state
  // that reads a neighbour's input.
  const std::size_t n = fsm.num_states();
  std::vector<std::uint64_t> combos{0, (std::uint64_t{1} << n) - 1};
  for (std::size_t s = 0; s < n; ++s) {
    combos.push_back(std::uint64_t{1} << s);
    combos.push_back(combos[1] ^ (std::uint64_t{1} << s));
  }
  for (auto combo : combos) {
    InputCase c;
    for (std::size_t s = 0; s < n; ++s) {
      const std::uint32_t bit = static_cast<std::uint32_t>((combo >> s) & 1U);
      c.ports.emplace_back(naming.for_state(s), bit);
      c.seen_by_state.push_back(bit);
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

bool expected_output(const FsmGraph& fsm, std::size_t s, std::uint32_t v)
{
  return fsm.kind() == OutputKind::moore ? fsm.state_output(s) : fsm.edge_output(s, v);
}

CheckResult check_params(Simulator& sim, const FsmDesign& d, bool bit_indices)
{
  for (std::size_t s = 0; s < d.fsm.num_states(); ++s) {
    const auto p = sim.param(d.fsm.name(s));
    if (!p) {
      return CheckResult::fail("missing parameter for state " + d.fsm.name(s));
    }
    const std::uint64_t want = bit_indices ? static_cast<std::uint64_t>(__builtin_ctz(d.enc.codes[s])) : d.enc.codes[s];
    if (p->has_x() || p->bits != want) {
      return CheckResult::fail("parameter " + d.fsm.name(s) + " does not carry the state code");
    }
  }
  return CheckResult{};
}

CheckResult check_registered(Simulator& sim, const FsmDesign& d)
{
  const auto& fsm = d.fsm;
  const auto& o = d.emit;
  if (auto r = check_params(sim, d, false); !r) {
    return r;
  }
  const auto cases = input_cases(d);
  const std::string& rst = d.reset.signal;
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    for (const auto& c : cases) {
      sim.set("clk", 0);
      sim.set(rst, 0);
      for (const auto& [port, v] : c.ports) {
        sim.set(port, v);
      }
      sim.set(o.state_name, d.enc.codes[s]);
      sim.settle();
      const std::uint32_t v = c.seen_by_state[s];
      const Value out = sim.get(o.output_name);
      if (!is_bit(out, expected_output(fsm, s, v))) {
        return CheckResult::fail("output wrong in state " + fsm.name(s) + " on input " + std::to_string(v));
      }
      sim.set("clk", 1);
      sim.posedge("clk");
      const Value st = sim.get(o.state_name);
      if (st.has_x() || st.bits != d.enc.codes[fsm.next(s, v)]) {
        return CheckResult::fail("transition wrong from " + fsm.name(s) + " on input " + std::to_string(v) +
                                 ": register holds " + show(st));
      }
    }
    // Reset from this state, once through the clock and once through the
    // reset edge when it is asynchronous.
    sim.set("clk", 0);
    sim.set(o.state_name, d.enc.codes[s]);
    sim.set(rst, 1);
    sim.settle();
    sim.set("clk", 1);
    sim.posedge("clk");
    if (const Value st = sim.get(o.state_name); st.has_x() || st.bits != d.enc.codes[d.reset.target]) {
      return CheckResult::fail("reset from " + fsm.name(s) + " does not reach " + fsm.name(d.reset.target));
    }
    sim.set("clk", 0);
    sim.set(rst, 0);
    sim.set(o.state_name, d.enc.codes[s]);
    sim.settle();
    sim.set(rst, 1);
    sim.posedge(rst);
    const Value st = sim.get(o.state_name);
    const bool reached = !st.has_x() && st.bits == d.enc.codes[d.reset.target];
    const bool untouched = !st.has_x() && st.bits == d.enc.codes[s];
    if (d.reset.kind == ResetKind::async_high ? !reached : !untouched) {
      return CheckResult::fail("reset edge behaviour does not match the reset kind");
    }
  }
  return CheckResult{};
}

CheckResult check_state_table(Simulator& sim, const FsmDesign& d)
{
  const auto& fsm = d.fsm;
  const auto& o = d.emit;
  if (auto r = check_params(sim, d, false); !r) {
    return r;
  }
  const std::string bit_port = o.next_bit_prefix + std::to_string(o.next_bit);
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    for (const auto& c : input_cases(d)) {
      for (const auto& [port, v] : c.ports) {
        sim.set(port, v);
      }
      sim.set(o.state_name, d.enc.codes[s]);
      sim.settle();
      const std::uint32_t v = c.seen_by_state[s];
      if (!is_bit(sim.get(o.output_name), expected_output(fsm, s, v))) {
        return CheckResult::fail("output wrong in state " + fsm.name(s));
      }
      const bool bit = ((d.enc.codes[fsm.next(s, v)] >> o.next_bit) & 1U) != 0;
      if (!is_bit(sim.get(bit_port), bit)) {
        return CheckResult::fail(bit_port + " wrong from state " + fsm.name(s) + " on input " + std::to_string(v));
      }
    }
  }
  return CheckResult{};
}

CheckResult check_onehot(Simulator& sim, const FsmDesign& d)
{
  const auto& fsm = d.fsm;
  const auto& o = d.emit;
  if (d.enc.kind != EncodingKind::one_hot) {
    return CheckResult::fail("one-hot template with a non one-hot encoding");
  }
  if (auto r = check_params(sim, d, true); !r) {
    return r;
  }
  for (std::size_t s = 0; s < fsm.num_states(); ++s) {
    for (const auto& c : input_cases(d)) {
      for (const auto& [port, v] : c.ports) {
        sim.set(port, v);
      }
      sim.set(o.state_name, d.enc.codes[s]);
      sim.settle();
      const std::uint32_t v = c.seen_by_state[s];
      if (!is_bit(sim.get(o.output_name), expected_output(fsm, s, v))) {
        return CheckResult::fail("output wrong in state " + fsm.name(s));
      }
      const Value nx = sim.get(o.next_name);
      if (nx.has_x() || nx.bits != d.enc.codes[fsm.next(s, v)]) {
        return CheckResult::fail("next-state vector wrong from " + fsm.name(s) + ": " + show(nx));
      }
    }
  }
  return CheckResult{};
}

} // namespace

CheckResult check_fsm(std::string_view text, const FsmDesign& d)
{
  return guarded(text, [&](Simulator& sim) {
    switch (d.emit.templ) {
    case FsmTemplate::registered:
      return check_registered(sim, d);
    case FsmTemplate::state_table:
      return check_state_table(sim, d);
    case FsmTemplate::onehot_comb:
      return check_onehot(sim, d);
    }
    return CheckResult::fail("unknown template");
  });
}

CheckResult check_concat(std::string_view text, const ConcatDesign& d)
{
  return guarded(text, [&](Simulator& sim) {
    std::vector<std::vector<std::uint64_t>> vectors{std::vector<std::uint64_t>(d.inputs.size(), 0)};
    for (std::size_t i = 0; i < d.inputs.size(); ++i) {
      for (int b = 0; b < d.inputs[i].width; ++b) {
        std::vector<std::uint64_t> v(d.inputs.size(), 0);
        v[i] = std::uint64_t{1} << b;
        vectors.push_back(std::move(v));
      }
    }
    for (const auto& vec : vectors) {
      for (std::size_t i = 0; i < d.inputs.size(); ++i) {
        sim.set(d.inputs[i].name, vec[i]);
      }
      sim.settle();
      const auto want = eval_concat(d, vec);
      for (std::size_t k = 0; k < d.outputs.size(); ++k) {
        const Value got = sim.get(d.outputs[k].name);
        if (got.has_x() || got.bits != want[k]) {
          return CheckResult::fail("output " + d.outputs[k].name + " is " + show(got) + ", expected " +
                                   std::to_string(want[k]));
        }
      }
    }
    return CheckResult{};
  });
}

CheckResult check_shift(std::string_view text, const ShiftDesign& d)
{
  return guarded(text, [&](Simulator& sim) {
    sim.set("clk", 0);
    sim.set("areset", 1);
    sim.posedge("areset");
    if (const Value q = sim.get("q"); q.has_x() || q.bits != d.reset_value) {
      return CheckResult::fail("reset value is " + show(q));
    }
    sim.set("areset", 0);
    const std::uint32_t span = 1U << d.width;
    for (std::uint32_t q = 0; q < span; ++q) {
      for (int ctl = 0; ctl < 4; ++ctl) {
        const bool load = (ctl & 2) != 0;
        const bool ena = (ctl & 1) != 0;
        // data only matters under load; sweep it fully from q = 0 and
        // sample it elsewhere
        const std::uint32_t m = span - 1;
        std::vector<std::uint32_t> datas{~q & m};
        if (load) {
          datas = {0, m, ~q & m, q, (q * 5U + 3U) & m};
          if (q == 0) {
            datas.resize(span);
            for (std::uint32_t v = 0; v < span; ++v) {
              datas[v] = v;
            }
          }
        }
        for (std::uint32_t data : datas) {
          sim.set("clk", 0);
          sim.set("q", q);
          sim.set("load", load ? 1U : 0U);
          sim.set("ena", ena ? 1U : 0U);
          sim.set("data", data);
          sim.settle();
          sim.set("clk", 1);
          sim.posedge("clk");
          const Value got = sim.get("q");
          const auto want = shift_next(d, q, load, ena, data);
          if (got.has_x() || got.bits != want) {
            return CheckResult::fail("q=" + std::to_string(q) + " load=" + std::to_string(load) +
                                     " ena=" + std::to_string(ena) + ": got " + show(got));
          }
        }
      }
    }
    return CheckResult{};
  });
}

CheckResult replay_waveform(std::string_view text, const WaveformTrace& trace)
{
  return guarded(text, [&](Simulator& sim) {
    const auto* out = single_output(sim.module());
    if (out == nullptr) {
      return CheckResult::fail("expected exactly one output");
    }
    const auto out_col = trace.column(out->name);
    if (!out_col) {
      return CheckResult::fail("trace has no column for output " + out->name);
    }
    const auto clk_col = trace.column("clk");
    std::vector<SampleValue> prev(trace.signals.size());
    for (std::size_t k = 0; k < trace.samples.size(); ++k) {
      const auto& row = trace.samples[k].values;
      if (clk_col && k > 0 && prev[*clk_col] == SampleValue{0U} && row[*clk_col] == SampleValue{1U}) {
        sim.set("clk", 1);
        sim.posedge("clk");
      }
      for (std::size_t i = 0; i < trace.signals.size(); ++i) {
        if (i == *out_col || (clk_col && i == *clk_col)) {
          continue;
        }
        const auto& name = trace.signals[i].name;
        sim.set(name, row[i] ? Value::of(*row[i], trace.signals[i].width) : Value::x(trace.signals[i].width));
        if (k > 0 && prev[i] == SampleValue{0U} && row[i] == SampleValue{1U}) {
          sim.posedge(name);
        }
      }
      if (clk_col && row[*clk_col]) {
        sim.set("clk", *row[*clk_col]);
      }
      sim.settle();
      const Value got = sim.get(out->name);
      const SampleValue want = row[*out_col];
      const bool match = want ? is_bit(got, *want != 0) : got.has_x();
      if (!match) {
        return CheckResult::fail("row at " + std::to_string(trace.samples[k].time_ns) + "ns: sampled " +
                                 (want ? std::to_string(*want) : "x") + ", module gives " + show(got));
      }
      prev = row;
    }
    return CheckResult{};
  });
}

} // namespace hdlforge
