#pragma once

// JSON forms of the semantic objects stored under meta.semantic, and of
// whole records. Decoding re-validates through the constructors, so a
// tampered file fails loudly instead of producing an invalid object.

#include "hdlforge/datapath.hpp"
#include "hdlforge/problem.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace hdlforge {

using nlohmann::json;

json encode(const BooleanSpec& spec);
BooleanSpec decode_spec(const json& j);

json encode(const FsmGraph& fsm);
FsmGraph decode_fsm(const json& j);

json encode(const StateEncoding& enc);
StateEncoding decode_encoding(const json& j);

json encode(const ResetSpec& r);
ResetSpec decode_reset(const json& j);

json encode(const FsmEmitOptions& o);
FsmEmitOptions decode_emit_options(const json& j);

json encode(const FsmDesign& d);
FsmDesign decode_design(const json& j);

json encode(const ConcatDesign& d);
ConcatDesign decode_concat(const json& j);

json encode(const ShiftDesign& d);
ShiftDesign decode_shift(const json& j);

json encode(const SopExpr& sop);
SopExpr decode_sop(const json& j);

json to_json(const ProblemRecord& r);
ProblemRecord record_from_json(const json& j);

/// One JSONL line: sorted keys, no trailing newline, UTF-8 passed through.
std::string dump_line(const ProblemRecord& r);
ProblemRecord parse_line(const std::string& line);

} // namespace hdlforge
