#pragma once

#include "hdlforge/mutate.hpp"
#include "hdlforge/problem.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdlforge {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ParamRanges {
  std::vector<std::size_t> kmap_vars{3, 4};
  std::vector<std::size_t> fsm_states{4, 6, 10};
  std::vector<int> input_widths{1, 2};
  /// Layout mutations per map, inclusive.
  int kmap_mutations_max = 2;
};

using KindCounts = std::map<RecordKind, std::size_t>;

/// Family totals 12500 / 8000 / 8000 split evenly over the kinds of each
/// family; repair is off.
KindCounts default_counts();

/// "kmap_family", "fsm_family" and "waveform_family" name the presentation
/// families; every other name must be a record kind.
bool is_family(const std::string& name);
KindCounts split_family(const std::string& family, std::size_t total);

struct GenerationConfig {
  std::uint64_t master_seed = 1;
  KindCounts counts = default_counts();
  ParamRanges ranges;
  std::optional<std::filesystem::path> decontamination_keys;
  std::filesystem::path output_path = "dataset.jsonl";
  unsigned workers = 1;
  std::vector<std::uint32_t> op_weights = default_op_weights();
  double overgeneration = 1.5;
  int max_refill_rounds = 3;
};

/// Throws ContractError for empty ranges, out-of-domain parameters or bad weights.
void validate(const GenerationConfig& cfg);

/// One sample drawn from split_stream(master_seed, kind, index). Throws when
/// the sampler gives up on this index.
ProblemRecord sample_record(RecordKind kind, std::uint64_t master_seed, std::uint64_t index,
                            const ParamRanges& ranges = {},
                            const std::vector<std::uint32_t>& op_weights = default_op_weights());

/// Recomputed from meta.semantic, never from the text.
std::string canonical_key(const ProblemRecord& r);

/// Re-reads the solution module with the interpreter and checks it against
/// the semantic object; repair records additionally need a real, invertible
/// mutation whose erroneous module fails the same check.
CheckResult check_record(const ProblemRecord& r);

/// One hex key per line; '#' starts a comment. Throws IoError when unreadable.
std::set<std::string> read_benchmark_keys(const std::filesystem::path& path);
std::set<std::string> parse_benchmark_keys(std::istream& in);

struct DecontaminationReport {
  std::map<RecordKind, std::size_t> dropped;
  std::size_t total() const;
};

std::vector<ProblemRecord> decontaminate(const std::vector<ProblemRecord>& records,
                                         const std::set<std::string>& benchmark_keys, DecontaminationReport& report);

struct KindSummary {
  std::size_t target = 0;
  std::size_t emitted = 0;
  std::size_t attempted = 0; ///< sample indices drawn
  std::size_t sample_failures = 0;
  std::size_t fidelity_rejects = 0;
  std::size_t duplicates = 0;
  std::size_t decontaminated = 0;
  int refill_rounds = 0;

  bool shortfall() const { return emitted < target; }
};

struct GenerationSummary {
  std::uint64_t master_seed = 0;
  std::map<RecordKind, KindSummary> kinds;
  std::size_t benchmark_keys = 0;

  std::size_t total() const;
  bool complete() const;
};

/// Records in (kind, index) order. Output does not depend on cfg.workers.
std::vector<ProblemRecord> generate_records(const GenerationConfig& cfg, GenerationSummary& summary);

/// generate_records, then writes the JSONL file and its summary twin
/// (output path + ".summary.json"). Throws IoError on write failure.
GenerationSummary generate_dataset(const GenerationConfig& cfg);

std::filesystem::path summary_path(const std::filesystem::path& output);
nlohmann::json summary_json(const GenerationSummary& s);
std::string render_summary(const GenerationSummary& s);

std::vector<ProblemRecord> read_dataset(const std::filesystem::path& path);
std::vector<ProblemRecord> parse_dataset(std::istream& in);
void write_dataset(const std::filesystem::path& path, const std::vector<ProblemRecord>& records);

struct DedupeReport {
  std::size_t records = 0;
  std::map<RecordKind, std::size_t> duplicates;
  std::size_t key_mismatches = 0; ///< stored key differs from the recomputed one
  std::size_t total_duplicates() const;
};

/// Keeps the first record per recomputed key. Stored keys are replaced by
/// the recomputed ones.
std::vector<ProblemRecord> dedupe(const std::vector<ProblemRecord>& records, DedupeReport& report);

/// Repair records built from generated records: per record an operator is
/// drawn by weight among those applicable, using
/// split_stream(seed, "mutate", line index). Records with no applicable
/// operator in `ops` are skipped.
std::vector<ProblemRecord> make_repairs(const std::vector<ProblemRecord>& records, const std::vector<MutationOp>& ops,
                                        const std::vector<std::uint32_t>& weights, std::uint64_t seed);

} // namespace hdlforge
