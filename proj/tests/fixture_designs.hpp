#pragma once
// Inputs behind the golden files in fixtures/.

#include "hdlforge/problem.hpp"

namespace fixtures {

using namespace hdlforge;

inline BooleanSpec single_minterm_spec() { return BooleanSpec({"a", "b", "c"}, {0}); }

inline BooleanSpec pipeline_spec() { return BooleanSpec({"a", "b", "c"}, {1, 2, 5}, {7}); }

inline BooleanSpec four_input_spec() { return BooleanSpec({"a", "b", "c", "d"}, {8, 9, 11, 13}); }

inline FsmDesign state_table_five()
{
  FsmGraph g({"A", "B", "C", "D", "E"}, 1, {{2, 3}, {4, 2}, {1, 4}, {3, 4}, {4, 1}}, OutputKind::moore,
             {1, 0, 1, 0, 0});
  return {g, binary_encoding(5), {}, {}};
}

inline FsmDesign moore_per_state_inputs()
{
  FsmGraph g({"D", "C", "B", "A"}, 1, {{3, 0}, {2, 0}, {2, 0}, {1, 2}}, OutputKind::moore, {0, 0, 1, 0});
  FsmDesign d{g, binary_encoding(4), {ResetKind::sync_high, "reset", 0}, {}};
  d.emit.scalar_state_regs = true;
  return d;
}

inline FsmDesign mealy_four()
{
  FsmGraph g({"A", "B", "C", "D"}, 1, {{3, 2}, {2, 1}, {2, 3}, {2, 1}}, OutputKind::mealy, {0, 1, 1, 0, 0, 0, 1, 0});
  return {g, binary_encoding(4), {ResetKind::async_high, "areset", 0}, {}};
}

inline FsmDesign onehot_four()
{
  FsmGraph g({"A", "B", "C", "D"}, 1, {{1, 0}, {1, 2}, {3, 0}, {1, 2}}, OutputKind::moore, {0, 1, 1, 0});
  return {g, one_hot_encoding(4), {}, {}};
}

} // namespace fixtures
