#include "hdlforge/datapath.hpp"

#include "hdlforge/boolean.hpp"
#include "hdlforge/text.hpp"

#include <numeric>

namespace hdlforge {

namespace {

std::uint64_t mask(int width)
{
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

std::string range(int width)
{
  return width > 1 ? "[" + std::to_string(width - 1) + ":0]" : "";
}

std::string literal(int width, std::uint64_t value)
{
  return std::to_string(width) + "'b" + text::bits(value, width);
}

std::string signal_with_range(const WireSpec& w)
{
  return w.name + range(w.width);
}

} // namespace

int ConcatDesign::total_width() const
{
  int t = 0;
  for (const auto& s : sources) {
    t += s.width;
  }
  return t;
}

void validate(const ConcatDesign& d)
{
  if (d.inputs.empty() || d.outputs.empty() || d.sources.empty()) {
    throw ContractError("concat: inputs, outputs and sources must be nonempty");
  }
  std::vector<int> uses(d.inputs.size(), 0);
  for (const auto& s : d.sources) {
    if (s.width < 1) {
      throw ContractError("concat: zero-width source");
    }
    if (s.input >= 0) {
      if (static_cast<std::size_t>(s.input) >= d.inputs.size() || d.inputs[s.input].width != s.width) {
        throw ContractError("concat: source does not match its input");
      }
      ++uses[s.input];
    } else if ((s.value & ~mask(s.width)) != 0) {
      throw ContractError("concat: constant wider than its width");
    }
  }
  for (int u : uses) {
    if (u != 1) {
      throw ContractError("concat: every input must appear exactly once");
    }
  }
  int out_total = 0;
  for (const auto& o : d.outputs) {
    if (o.width < 1) {
      throw ContractError("concat: zero-width output");
    }
    out_total += o.width;
  }
  if (out_total != d.total_width() || out_total > 64) {
    throw ContractError("concat: output widths must sum to the source width (at most 64)");
  }
}

std::vector<std::uint64_t> eval_concat(const ConcatDesign& d, const std::vector<std::uint64_t>& input_values)
{
  if (input_values.size() != d.inputs.size()) {
    throw ContractError("eval_concat: one value per input expected");
  }
  std::uint64_t bus = 0;
  for (const auto& s : d.sources) {
    const std::uint64_t v = s.input >= 0 ? input_values[s.input] : s.value;
    bus = (s.width >= 64 ? 0 : bus << s.width) | (v & mask(s.width));
  }
  std::vector<std::uint64_t> out;
  int shift = d.total_width();
  for (const auto& o : d.outputs) {
    shift -= o.width;
    out.push_back((bus >> shift) & mask(o.width));
  }
  return out;
}

ConcatDesign random_concat(Rng& rng)
{
  ConcatDesign d;
  const auto n_in = static_cast<std::size_t>(rng.uniform_range(3, 6));
  for (std::size_t i = 0; i < n_in; ++i) {
    d.inputs.push_back({std::string(1, static_cast<char>('a' + i)), static_cast<int>(rng.uniform_range(1, 5))});
    d.sources.push_back({static_cast<int>(i), d.inputs.back().width, 0});
  }
  const int cw = static_cast<int>(rng.uniform_range(1, 3));
  const ConcatSource constant{-1, cw, rng.uniform(std::uint64_t{1} << cw)};
  const auto pos = static_cast<std::size_t>(rng.uniform(n_in + 1));
  d.sources.insert(d.sources.begin() + static_cast<std::ptrdiff_t>(pos), constant);

  const int total = d.total_width();
  const auto n_out = static_cast<std::size_t>(rng.uniform_range(2, std::min(4, total)));
  // Cut points: n_out - 1 distinct positions in [1, total).
  std::vector<int> cuts(static_cast<std::size_t>(total - 1));
  std::iota(cuts.begin(), cuts.end(), 1);
  rng.shuffle(cuts);
  cuts.resize(n_out - 1);
  std::sort(cuts.begin(), cuts.end());
  int prev = 0;
  const std::vector<std::string> names = {"w", "x", "y", "z"};
  for (std::size_t i = 0; i < n_out; ++i) {
    const int end = i + 1 < n_out ? cuts[i] : total;
    d.outputs.push_back({names[4 - n_out + i], end - prev});
    prev = end;
  }
  validate(d);
  return d;
}

std::vector<Port> concat_ports(const ConcatDesign& d)
{
  std::vector<Port> ports;
  for (const auto& i : d.inputs) {
    ports.push_back({i.name, PortDir::input, i.width, false});
  }
  for (const auto& o : d.outputs) {
    ports.push_back({o.name, PortDir::output, o.width, false});
  }
  return ports;
}

EmittedModule emit_concat(const ConcatDesign& d, const std::string& module_name)
{
  validate(d);
  std::vector<std::string> lhs;
  for (const auto& o : d.outputs) {
    lhs.push_back(o.name);
  }
  std::vector<std::string> rhs;
  for (const auto& s : d.sources) {
    rhs.push_back(s.input >= 0 ? d.inputs[s.input].name : literal(s.width, s.value));
  }
  EmittedModule m{module_name, concat_ports(d), {}, {}};
  m.text = emit_header(m.ports, module_name) + "\n\n    assign {" + text::join(lhs, ", ") + "} = {" +
           text::join(rhs, ", ") + "};\nendmodule\n";
  return m;
}

std::string describe_concat(const ConcatDesign& d)
{
  std::vector<std::string> ins;
  for (const auto& i : d.inputs) {
    ins.push_back(signal_with_range(i));
  }
  std::vector<std::string> outs;
  for (const auto& o : d.outputs) {
    outs.push_back(signal_with_range(o));
  }
  std::vector<std::string> order;
  for (const auto& s : d.sources) {
    order.push_back(s.input >= 0 ? d.inputs[s.input].name : "the constant " + literal(s.width, s.value));
  }
  std::vector<std::string> out_names;
  for (const auto& o : d.outputs) {
    out_names.push_back(o.name);
  }
  return "The module has inputs " + text::join(ins, ", ") + " and outputs " + text::join(outs, ", ") + ". Form a " +
         std::to_string(d.total_width()) +
         "-bit vector by concatenating, from the most significant end to the least significant end: " +
         text::join(order, ", ") + ". Then split that vector into " + text::join(out_names, ", ") +
         ", where " + out_names.front() + " receives the most significant bits.";
}

void validate(const ShiftDesign& d)
{
  if (d.width < 2 || d.width > 8) {
    throw ContractError("shift register width must be in [2, 8]");
  }
  if ((d.reset_value & ~static_cast<std::uint32_t>(mask(d.width))) != 0) {
    throw ContractError("shift register reset value does not fit");
  }
}

std::uint32_t shift_next(const ShiftDesign& d, std::uint32_t q, bool load, bool ena, std::uint32_t data)
{
  const auto m = static_cast<std::uint32_t>(mask(d.width));
  if (load) {
    return data & m;
  }
  if (!ena) {
    return q & m;
  }
  return d.shift_right ? (q & m) >> 1 : (q << 1) & m;
}

ShiftDesign random_shift(Rng& rng)
{
  ShiftDesign d;
  d.width = static_cast<int>(rng.uniform_range(4, 8));
  d.shift_right = rng.coin();
  d.reset_value = 0;
  return d;
}

std::vector<Port> shift_ports(const ShiftDesign& d)
{
  return {{"clk", PortDir::input, 1, false},  {"areset", PortDir::input, 1, false},
          {"load", PortDir::input, 1, false}, {"ena", PortDir::input, 1, false},
          {"data", PortDir::input, d.width, false}, {"q", PortDir::output, d.width, true}};
}

EmittedModule emit_shift(const ShiftDesign& d, const std::string& module_name)
{
  validate(d);
  const int w = d.width;
  const std::string top = std::to_string(w - 1);
  const std::string shifted = d.shift_right ? "{1'b0, q[" + top + ":1]}" : "{q[" + std::to_string(w - 2) + ":0], 1'b0}";
  EmittedModule m{module_name, shift_ports(d), {}, {ResetKind::async_high, "areset", 0}};
  m.text = emit_header(m.ports, module_name) + "\n\n" + "    always @(posedge clk, posedge areset) begin\n" +
           "        if (areset) q <= " + literal(w, d.reset_value) + ";\n" + "        else if (load) q <= data;\n" +
           "        else if (ena) q <= " + shifted + ";\n" + "    end\nendmodule\n";
  return m;
}

std::string describe_shift(const ShiftDesign& d)
{
  const std::string w = std::to_string(d.width);
  const std::string top = std::to_string(d.width - 1);
  const std::string dir = d.shift_right ? "right" : "left";
  const std::string detail = d.shift_right ? "q[" + top + "] becomes zero and q[0] is shifted out"
                                           : "q[0] becomes zero and q[" + top + "] is shifted out";
  return "Build a " + w + "-bit shift register that shifts " + dir +
         ". areset is an asynchronous active-high reset that sets q to " + literal(d.width, d.reset_value) +
         ". On a rising clock edge, load copies data[" + top + ":0] into q; otherwise ena shifts q " + dir + " (" +
         detail + "). load has priority over ena, and with neither asserted q holds its value.";
}

} // namespace hdlforge
