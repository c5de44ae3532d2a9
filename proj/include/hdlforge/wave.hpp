#pragma once

#include "hdlforge/boolean.hpp"
#include "hdlforge/fsm.hpp"
#include "hdlforge/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hdlforge {

enum class TraceKind : std::uint8_t { combinational, sequential };

struct TraceSignal {
  std::string name;
  int width = 1;

  friend bool operator==(const TraceSignal&, const TraceSignal&) = default;
};

/// nullopt is an unknown (x) value.
using SampleValue = std::optional<std::uint32_t>;

struct TraceSample {
  std::uint32_t time_ns = 0;
  std::vector<SampleValue> values;

  friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

struct WaveformTrace {
  TraceKind kind = TraceKind::combinational;
  std::vector<TraceSignal> signals;
  std::vector<TraceSample> samples;

  std::optional<std::size_t> column(const std::string& name) const;

  friend bool operator==(const WaveformTrace&, const WaveformTrace&) = default;
};

inline constexpr std::uint32_t wave_step_ns = 5;
inline constexpr std::size_t max_wave_vars = 4;
/// Vector 0 is held for this many samples before the enumeration moves on.
inline constexpr std::size_t settle_samples = 4;

/// Inputs in SOP variable order, then the output. Vector 0 is sampled at
/// 0, 5, 10 and 15 ns; vectors 1 .. 2^n - 1 follow one per 5 ns.
WaveformTrace simulate_combinational(const SopExpr& sop, const std::string& out_name = "q");

struct SeqSignalNames {
  std::string clk = "clk";
  std::string reset = "reset";
  std::string input = "in";
  std::string output = "out";
};

/// Sampling convention. Row k sits at 5k ns and has clk = k mod 2, so rising
/// edges fall on odd rows. Inputs change only on even rows: row 2e - 2 holds
/// the inputs of clock cycle e (1-based), which the rising edge at row
/// 2e - 1 samples. Cycles 1 .. reset_cycles assert reset with the data input
/// at 0; later cycles apply the stimulus in order. A row reports the values
/// after that instant's update; out is x until the first edge, then the
/// Moore output of the current state or the Mealy output of the current
/// state and input. The trace has 2C + 1 rows for C cycles; the last row
/// keeps the final inputs.
WaveformTrace simulate_sequential(const FsmGraph& fsm, const StateEncoding& enc,
                                  const std::vector<std::uint32_t>& stimulus, std::size_t reset_cycles,
                                  std::size_t reset_target = 0, const SeqSignalNames& names = {});

/// Random input values per cycle, length drawn from [min_len, max_len].
std::vector<std::uint32_t> random_stimulus(int input_width, Rng& rng, std::size_t min_len = 16,
                                           std::size_t max_len = 24);

/// "// time  a    b    q" then one "// 5ns  0    1    x" line per sample.
std::string render_waveform(const WaveformTrace& trace);

/// Last column is the output; the others are the inputs in variable order.
/// Throws ContractError on conflicting samples or unobserved input vectors.
TruthTable recover_truth_table(const WaveformTrace& trace);

/// Replays the trace's inputs through step() under the sampling convention
/// and compares every sampled output. Throws ContractError when the trace
/// does not carry the expected signals.
bool verify_trace(const FsmGraph& fsm, const StateEncoding& enc, const WaveformTrace& trace,
                  std::size_t reset_target = 0, const SeqSignalNames& names = {});

/// Value Change Dump text with a 1 ns timescale.
std::string to_vcd(const WaveformTrace& trace, const std::string& scope = "top_module");

} // namespace hdlforge
