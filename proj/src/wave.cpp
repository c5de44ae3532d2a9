#include "hdlforge/wave.hpp"

#include "hdlforge/text.hpp"

#include <algorithm>

namespace hdlforge {

std::optional<std::size_t> WaveformTrace::column(const std::string& name) const
{
  for (std::size_t i = 0; i < signals.size(); ++i) {
    if (signals[i].name == name) {
      return i;
    }
  }
  return std::nullopt;
}

WaveformTrace simulate_combinational(const SopExpr& sop, const std::string& out_name)
{
  const std::size_t n = sop.vars.size();
  if (n == 0 || n > max_wave_vars) {
    throw ContractError("simulate_combinational: between 1 and " + std::to_string(max_wave_vars) +
                        " variables supported");
  }
  WaveformTrace trace;
  trace.kind = TraceKind::combinational;
  for (const auto& v : sop.vars) {
    trace.signals.push_back({v, 1});
  }
  trace.signals.push_back({out_name, 1});
  const std::uint32_t rows = 1U << n;
  std::uint32_t t = 0;
  const auto emit = [&](std::uint32_t vec) {
    TraceSample s{t, {}};
    for (std::size_t i = 0; i < n; ++i) {
      s.values.emplace_back((vec >> (n - 1 - i)) & 1U);
    }
    s.values.emplace_back(eval_row(sop, vec) ? 1U : 0U);
    trace.samples.push_back(std::move(s));
    t += wave_step_ns;
  };
  for (std::size_t i = 0; i < settle_samples; ++i) {
    emit(0);
  }
  for (std::uint32_t vec = 1; vec < rows; ++vec) {
    emit(vec);
  }
  return trace;
}

namespace {

SampleValue output_now(const FsmGraph& fsm, std::optional<std::size_t> state, std::uint32_t input)
{
  if (!state) {
    return std::nullopt;
  }
  if (fsm.kind() == OutputKind::moore) {
    return fsm.state_output(*state) ? 1U : 0U;
  }
  return fsm.edge_output(*state, input) ? 1U : 0U;
}

} // namespace

WaveformTrace simulate_sequential(const FsmGraph& fsm, const StateEncoding& enc,
                                  const std::vector<std::uint32_t>& stimulus, std::size_t reset_cycles,
                                  std::size_t reset_target, const SeqSignalNames& names)
{
  if (stimulus.empty()) {
    throw ContractError("simulate_sequential: empty stimulus");
  }
  if (reset_cycles == 0) {
    throw ContractError("simulate_sequential: at least one reset cycle is needed");
  }
  if (enc.codes.size() != fsm.num_states()) {
    throw ContractError("simulate_sequential: encoding does not cover every state");
  }
  if (reset_target >= fsm.num_states()) {
    throw ContractError("simulate_sequential: reset target out of range");
  }
  for (auto v : stimulus) {
    if (v >= fsm.num_inputs()) {
      throw ContractError("simulate_sequential: stimulus value out of range");
    }
  }
  WaveformTrace trace;
  trace.kind = TraceKind::sequential;
  trace.signals = {{names.clk, 1}, {names.reset, 1}, {names.input, fsm.input_width()}, {names.output, 1}};

  const std::size_t cycles = reset_cycles + stimulus.size();
  const auto inputs_of = [&](std::size_t e) -> std::pair<std::uint32_t, std::uint32_t> {
    // e is 1-based; past the last cycle the final inputs are held.
    e = std::min(e, cycles);
    if (e <= reset_cycles) {
      return {1U, 0U};
    }
    return {0U, stimulus[e - reset_cycles - 1]};
  };

  std::optional<std::size_t> state;
  for (std::size_t k = 0; k <= 2 * cycles; ++k) {
    const bool rising = k % 2 == 1;
    const std::size_t cycle = k / 2 + 1;
    const auto [rst, in] = inputs_of(cycle);
    if (rising) {
      if (rst != 0) {
        state = reset_target;
      } else if (state) {
        state = fsm.next(*state, in);
      }
    }
    TraceSample s{static_cast<std::uint32_t>(k) * wave_step_ns, {}};
    s.values = {rising ? 1U : 0U, rst, in, output_now(fsm, state, in)};
    trace.samples.push_back(std::move(s));
  }
  return trace;
}

std::vector<std::uint32_t> random_stimulus(int input_width, Rng& rng, std::size_t min_len, std::size_t max_len)
{
  if (min_len == 0 || max_len < min_len) {
    throw ContractError("random_stimulus: bad length range");
  }
  const auto len = static_cast<std::size_t>(rng.uniform_range(static_cast<std::int64_t>(min_len),
                                                              static_cast<std::int64_t>(max_len)));
  std::vector<std::uint32_t> out(len);
  for (auto& v : out) {
    v = static_cast<std::uint32_t>(rng.uniform(std::uint64_t{1} << input_width));
  }
  return out;
}

namespace {

std::string pad(std::string s, std::size_t width)
{
  if (s.size() < width) {
    s.append(width - s.size(), ' ');
  }
  return s;
}

std::string render_value(const SampleValue& v, int width)
{
  if (!v) {
    return width == 1 ? "x" : std::string(static_cast<std::size_t>(width), 'x');
  }
  return width == 1 ? std::to_string(*v) : text::bits(*v, width);
}

std::string rstrip(std::string s)
{
  while (!s.empty() && s.back() == ' ') {
    s.pop_back();
  }
  return s;
}

} // namespace

std::string render_waveform(const WaveformTrace& trace)
{
  std::size_t time_w = 5;
  for (const auto& s : trace.samples) {
    time_w = std::max(time_w, std::to_string(s.time_ns).size() + 3);
  }
  std::vector<std::size_t> col_w;
  for (const auto& sig : trace.signals) {
    col_w.push_back(std::max<std::size_t>(5, std::max(sig.name.size(), static_cast<std::size_t>(sig.width)) + 1));
  }
  std::string header = "// " + pad("time", time_w + 1);
  for (std::size_t i = 0; i < trace.signals.size(); ++i) {
    header += pad(trace.signals[i].name, col_w[i]);
  }
  std::string out = rstrip(header) + "\n";
  for (const auto& s : trace.samples) {
    if (s.values.size() != trace.signals.size()) {
      throw ContractError("render_waveform: ragged sample row");
    }
    std::string line = "// " + pad(std::to_string(s.time_ns) + "ns", time_w);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      line += pad(render_value(s.values[i], trace.signals[i].width), col_w[i]);
    }
    out += rstrip(line) + "\n";
  }
  return out;
}

TruthTable recover_truth_table(const WaveformTrace& trace)
{
  if (trace.kind != TraceKind::combinational) {
    throw ContractError("recover_truth_table: combinational trace expected");
  }
  if (trace.signals.size() < 2) {
    throw ContractError("recover_truth_table: need inputs and one output");
  }
  const std::size_t n = trace.signals.size() - 1;
  if (n > BooleanSpec::max_vars) {
    throw ContractError("recover_truth_table: too many inputs");
  }
  TruthTable table;
  for (std::size_t i = 0; i < n; ++i) {
    table.vars.push_back(trace.signals[i].name);
  }
  std::vector<std::optional<Tri>> rows(std::size_t{1} << n);
  for (const auto& s : trace.samples) {
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!s.values.at(i) || *s.values[i] > 1) {
        throw ContractError("recover_truth_table: inputs must be 0 or 1");
      }
      idx = (idx << 1) | *s.values[i];
    }
    const auto& ov = s.values.at(n);
    const Tri t = !ov ? Tri::dont_care : (*ov != 0 ? Tri::one : Tri::zero);
    if (rows[idx] && *rows[idx] != t) {
      throw ContractError("recover_truth_table: conflicting outputs for input row " + std::to_string(idx));
    }
    rows[idx] = t;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i]) {
      throw ContractError("recover_truth_table: input row " + std::to_string(i) + " never observed");
    }
    table.rows.push_back(*rows[i]);
  }
  return table;
}

bool verify_trace(const FsmGraph& fsm, const StateEncoding& enc, const WaveformTrace& trace, std::size_t reset_target,
                  const SeqSignalNames& names)
{
  if (enc.codes.size() != fsm.num_states()) {
    throw ContractError("verify_trace: encoding does not cover every state");
  }
  const auto clk = trace.column(names.clk);
  const auto rst = trace.column(names.reset);
  const auto in = trace.column(names.input);
  const auto out = trace.column(names.output);
  if (trace.kind != TraceKind::sequential || !clk || !rst || !in || !out || trace.signals.size() != 4) {
    throw ContractError("verify_trace: trace does not carry clk, reset, input and output");
  }
  if (trace.samples.empty()) {
    return false;
  }
  std::optional<std::size_t> state;
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    const auto& row = trace.samples[k].values;
    if (row.size() != 4 || trace.samples[k].time_ns != k * wave_step_ns) {
      return false;
    }
    if (row[*clk] != SampleValue{static_cast<std::uint32_t>(k % 2)}) {
      return false;
    }
    if (!row[*rst] || !row[*in] || *row[*in] >= fsm.num_inputs()) {
      return false;
    }
    if (k % 2 == 1) {
      const auto& prev = trace.samples[k - 1].values;
      if (!prev[*rst] || !prev[*in]) {
        return false;
      }
      if (*prev[*rst] != 0) {
        state = reset_target;
      } else if (state) {
        state = fsm.next(*state, *prev[*in]);
      }
    }
    if (row[*out] != output_now(fsm, state, *row[*in])) {
      return false;
    }
  }
  return true;
}

std::string to_vcd(const WaveformTrace& trace, const std::string& scope)
{
  std::string out = "$timescale 1ns $end\n$scope module " + scope + " $end\n";
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < trace.signals.size(); ++i) {
    ids.emplace_back(1, static_cast<char>('!' + i));
    const auto& s = trace.signals[i];
    out += "$var wire " + std::to_string(s.width) + " " + ids[i] + " " + s.name + " $end\n";
  }
  out += "$upscope $end\n$enddefinitions $end\n";
  const auto value_change = [&](std::size_t i, const SampleValue& v) {
    const int w = trace.signals[i].width;
    if (w == 1) {
      return (v ? std::to_string(*v) : "x") + ids[i] + "\n";
    }
    return "b" + (v ? text::bits(*v, w) : std::string(static_cast<std::size_t>(w), 'x')) + " " + ids[i] + "\n";
  };
  const TraceSample* prev = nullptr;
  for (const auto& s : trace.samples) {
    std::string changes;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (prev == nullptr || prev->values[i] != s.values[i]) {
        changes += value_change(i, s.values[i]);
      }
    }
    if (prev == nullptr) {
      out += "#" + std::to_string(s.time_ns) + "\n$dumpvars\n" + changes + "$end\n";
    } else if (!changes.empty()) {
      out += "#" + std::to_string(s.time_ns) + "\n" + changes;
    }
    prev = &s;
  }
  if (prev != nullptr) {
    out += "#" + std::to_string(prev->time_ns + wave_step_ns) + "\n";
  }
  return out;
}

} // namespace hdlforge
