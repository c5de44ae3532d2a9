#pragma once

// Small bit-routing designs used as bases for the concatenation and shift
// mutation operators. State machines and SOP functions have no natural
// concatenation order or shift direction to get wrong.

#include "hdlforge/rng.hpp"
#include "hdlforge/verilog.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hdlforge {

struct WireSpec {
  std::string name;
  int width = 1;

  friend bool operator==(const WireSpec&, const WireSpec&) = default;
};

/// One element of the right-hand concatenation: an input or a constant.
struct ConcatSource {
  int input = -1; ///< index into inputs, or -1 for a constant
  int width = 1;
  std::uint64_t value = 0; ///< constant value

  friend bool operator==(const ConcatSource&, const ConcatSource&) = default;
};

/// assign {outputs...} = {sources...};
struct ConcatDesign {
  std::vector<WireSpec> inputs;
  std::vector<WireSpec> outputs;
  std::vector<ConcatSource> sources;

  int total_width() const;
  friend bool operator==(const ConcatDesign&, const ConcatDesign&) = default;
};

/// Throws ContractError if widths disagree, exceed 64 bits or a source index is bad.
void validate(const ConcatDesign& d);

/// Output values, MSB-first slicing of the concatenated sources.
std::vector<std::uint64_t> eval_concat(const ConcatDesign& d, const std::vector<std::uint64_t>& input_values);

ConcatDesign random_concat(Rng& rng);
EmittedModule emit_concat(const ConcatDesign& d, const std::string& module_name = "top_module");
std::string describe_concat(const ConcatDesign& d);
std::vector<Port> concat_ports(const ConcatDesign& d);

/// 4- to 8-bit shift register with asynchronous reset, load and enable.
struct ShiftDesign {
  int width = 4;
  bool shift_right = true;
  std::uint32_t reset_value = 0;

  friend bool operator==(const ShiftDesign&, const ShiftDesign&) = default;
};

void validate(const ShiftDesign& d);

/// Register value after one clock edge without reset.
std::uint32_t shift_next(const ShiftDesign& d, std::uint32_t q, bool load, bool ena, std::uint32_t data);

ShiftDesign random_shift(Rng& rng);
EmittedModule emit_shift(const ShiftDesign& d, const std::string& module_name = "top_module");
std::string describe_shift(const ShiftDesign& d);
std::vector<Port> shift_ports(const ShiftDesign& d);

} // namespace hdlforge
