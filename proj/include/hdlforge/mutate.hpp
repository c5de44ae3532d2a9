#pragma once

// Fault injection for repair records. Mutations edit the semantic object and
// the module is re-emitted, so erroneous code always parses. Every mutation
// is checked to change behavior before it is used.

#include "hdlforge/datapath.hpp"
#include "hdlforge/hdl_check.hpp"
#include "hdlforge/problem.hpp"
#include "hdlforge/rng.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hdlforge {

enum class MutationOp : std::uint8_t {
  sop_literal_flip,
  sop_term_drop,
  ternary_branch_swap,
  output_state_set_edit,
  reset_value_wrong,
  concat_order_reverse,
  shift_direction_reverse
};

std::string op_name(MutationOp op);
MutationOp op_from_name(const std::string& s);
const std::vector<MutationOp>& all_ops();

/// Error category each operator instantiates.
std::string taxonomy_tag(MutationOp op);

/// Sampling weights per operator in all_ops() order, in tenths of a percent.
std::vector<std::uint32_t> default_op_weights();

/// A combinational design: the intended function and the SOP actually
/// implemented. The two agree on every care row until a mutation is applied.
struct CombDesign {
  BooleanSpec spec;
  SopExpr sop;
  std::string output = "out";
  std::string module_name = "top_module";
};

using MutableObject = std::variant<CombDesign, FsmDesign, ConcatDesign, ShiftDesign>;

std::string family_name(const MutableObject& obj);

/// Which part of the object an operator touched. Field use per operator:
///   sop_literal_flip          index = term, sub = variable
///   sop_term_drop             index = term, before = the dropped minterm row
///   ternary_branch_swap       index = state
///   output_state_set_edit     index = state, sub = input value (Mealy only)
///   reset_value_wrong         before / after = reset state or reset value
///   concat_order_reverse      index = rotation, sub = number of parts
///   shift_direction_reverse   before = old direction (1 = right)
struct MutationSite {
  std::size_t index = 0;
  std::size_t sub = 0;
  std::uint64_t before = 0;
  std::uint64_t after = 0;

  friend bool operator==(const MutationSite&, const MutationSite&) = default;
};

struct MutationDescriptor {
  MutationOp op = MutationOp::sop_literal_flip;
  MutationSite site;
  std::string taxonomy_tag;
  std::vector<std::string> hints;
};

bool applicable(const MutableObject& obj, MutationOp op);

/// Applies the edit named by the descriptor. Throws ContractError when the
/// site does not exist in the object.
MutableObject apply_mutation(const MutableObject& obj, const MutationDescriptor& d);

/// Undoes apply_mutation: revert(apply_mutation(x, d), d) == x.
MutableObject revert(const MutableObject& mutated, const MutationDescriptor& d);

/// Tries the operator's sites in random order and returns the first one that
/// validates. Throws ContractError if the operator does not fit the object
/// or no site changes behavior.
std::pair<MutableObject, MutationDescriptor> mutate(const MutableObject& obj, MutationOp op, Rng& rng);

/// True iff the objects behave differently: on some care row (combinational),
/// from reset or on some (state, input) pair (state machines), on some input
/// (concatenation) or on some register update (shift register).
bool validate_mutation(const MutableObject& correct, const MutableObject& mutated);

bool same_object(const MutableObject& a, const MutableObject& b);

/// Key of the correct object: the record key for combinational and state
/// machine designs, a digest of the JSON form for the datapath bases.
std::string object_key(const MutableObject& obj);

/// "op|index|sub|before|after"; identifies the edit, not the hints.
std::string descriptor_key(const MutationDescriptor& d);

EmittedModule emit_object(const MutableObject& obj);

/// Interpreter check of module text against the object's exact behavior.
CheckResult check_object(std::string_view text, const MutableObject& obj);

nlohmann::json encode(const MutableObject& obj);
MutableObject decode_object(const nlohmann::json& j);

nlohmann::json encode(const MutationDescriptor& d);
MutationDescriptor decode_descriptor(const nlohmann::json& j);

/// A correct design plus the task text the repair problem quotes.
struct RepairBase {
  std::string base_kind;
  std::string description;
  std::string base_key;
  MutableObject object;
};

/// Decodes meta.semantic of a generated (non-repair) record.
RepairBase repair_base(const ProblemRecord& r);
RepairBase repair_base(const ConcatDesign& d);
RepairBase repair_base(const ShiftDesign& d);

ProblemRecord forge_repair(const RepairBase& base, const MutableObject& mutated, const MutationDescriptor& d,
                           std::uint64_t seed);

/// Record kinds whose objects the operator can be applied to, plus "concat"
/// or "shift" for the datapath bases.
std::vector<std::string> base_kinds_for(MutationOp op);

} // namespace hdlforge
