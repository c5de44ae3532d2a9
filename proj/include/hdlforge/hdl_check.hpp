#pragma once

// Fidelity checks: emitted text is read back by the interpreter in vlog.hpp
// and driven exhaustively against the semantic object it was emitted from.

#include "hdlforge/boolean.hpp"
#include "hdlforge/datapath.hpp"
#include "hdlforge/verilog.hpp"
#include "hdlforge/wave.hpp"

#include <string>
#include <string_view>

namespace hdlforge {

struct CheckResult {
  bool ok = true;
  std::string detail;

  explicit operator bool() const noexcept { return ok; }
  static CheckResult fail(std::string why) { return {false, std::move(why)}; }
};

/// Output equals eval_row(sop, i) on every row i.
CheckResult check_combinational(std::string_view text, const SopExpr& sop);

/// Output equals the spec on every row that is not a don't-care.
CheckResult check_combinational(std::string_view text, const BooleanSpec& spec);

/// Parameters carry the encoding; from every state and input the next state
/// and output match the machine; reset forces the reset target. The state
/// register is driven directly.
CheckResult check_fsm(std::string_view text, const FsmDesign& d);

/// Outputs match eval_concat on the all-zero vector and every single-bit
/// input vector, which covers any pure bit routing.
CheckResult check_concat(std::string_view text, const ConcatDesign& d);

/// Reset value, then the next-state function for every (q, load, ena) with
/// every data word at q = 0 and a handful of data words elsewhere.
CheckResult check_shift(std::string_view text, const ShiftDesign& d);

/// Drives the trace's inputs row by row (clock edges before input updates)
/// and compares every sampled output, x included.
CheckResult replay_waveform(std::string_view text, const WaveformTrace& trace);

} // namespace hdlforge
