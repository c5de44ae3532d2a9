#pragma once

#include "hdlforge/boolean.hpp"
#include "hdlforge/fsm.hpp"
#include "hdlforge/kmap.hpp"
#include "hdlforge/verilog.hpp"
#include "hdlforge/wave.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hdlforge {

enum class RecordKind : std::uint8_t {
  kmap,
  truthtable,
  fsm_moore,
  fsm_mealy,
  fsm_onehot_comb,
  waveform_comb,
  waveform_seq,
  repair
};

inline constexpr std::size_t num_record_kinds = 8;

std::string kind_name(RecordKind k);
/// Throws ContractError on an unknown name.
RecordKind kind_from_name(const std::string& s);
const std::vector<RecordKind>& all_kinds();

struct ProblemRecord {
  RecordKind kind = RecordKind::kmap;
  std::string problem;
  std::string solution;
  std::string canonical_key;
  std::uint64_t seed = 0;
  nlohmann::json meta = nlohmann::json::object();
};

/// Where a template's wording comes from.
enum class TemplateSource : std::uint8_t { fixture, authored };

struct TemplateInfo {
  std::string id;
  std::vector<RecordKind> kinds;
  TemplateSource source;
};

const std::vector<TemplateInfo>& templates();
/// Throws ContractError for an unknown id.
const TemplateInfo& template_info(const std::string& id);
std::vector<std::string> templates_for(RecordKind k);

/// Applied to the instruction paragraph of every problem. Identity unless a
/// caller plugs in a rewriter.
using InstructionRewrite = std::function<std::string(const std::string&)>;

struct ForgeOptions {
  std::string module_name = "top_module";
  InstructionRewrite rewrite;
};

// Canonical keys. Both hash a canonical string of the semantic object and
// ignore names, layout and template.

/// "comb|n|minterms|dont_cares".
std::string comb_key_string(const BooleanSpec& spec);
/// States renamed to breadth-first discovery order from the reset state.
std::string fsm_key_string(const FsmGraph& fsm);
std::string digest(const std::string& canonical);

/// Combinational templates: kmap_fixture, kmap_authored.
ProblemRecord forge_kmap(const BooleanSpec& spec, const KarnaughMap& kmap, const std::string& template_id,
                         std::uint64_t seed, const ForgeOptions& opts = {});

/// truthtable_a, truthtable_b.
ProblemRecord forge_truthtable(const BooleanSpec& spec, const std::string& template_id, std::uint64_t seed,
                               const ForgeOptions& opts = {});

enum class FsmStyle : std::uint8_t { table_binary, edgelist_moore, edgelist_mealy, table_onehot_comb };

std::string fsm_style_name(FsmStyle s);

/// The emit options inside `design` are overwritten to match the style and
/// template. Throws ContractError for an incompatible style, machine kind or
/// encoding.
ProblemRecord forge_fsm(const FsmDesign& design, FsmStyle style, const std::string& template_id,
                        std::uint64_t seed, const ForgeOptions& opts = {});

/// Emit options forge_fsm will use. Exposed so callers can build the exact
/// module a record contains.
FsmEmitOptions fsm_emit_options(const FsmDesign& design, FsmStyle style, const std::string& template_id);

/// waveform_comb, waveform_comb_alt. The trace must come from
/// simulate_combinational on the spec's SOP.
ProblemRecord forge_waveform_comb(const BooleanSpec& spec, const WaveformTrace& trace, const std::string& template_id,
                                  std::uint64_t seed, const ForgeOptions& opts = {});

/// waveform_seq. The trace must satisfy verify_trace for the design.
struct SeqStimulus {
  std::vector<std::uint32_t> inputs;
  std::size_t reset_cycles = 2;
};

ProblemRecord forge_waveform_seq(const FsmDesign& design, const SeqStimulus& stim, const std::string& template_id,
                                 std::uint64_t seed, const ForgeOptions& opts = {});

/// The record's emitted solution module, i.e. the last fenced block that
/// holds a module.
std::string extract_module(const std::string& text);

/// Fixed phrases shared by the narratives.
std::string minterm_lines(const SopExpr& sop);
std::string output_states_sentence(const FsmGraph& fsm, const FsmEmitOptions& opts);

} // namespace hdlforge
