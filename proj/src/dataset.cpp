#include "hdlforge/dataset.hpp"

#include "hdlforge/record_json.hpp"
#include "hdlforge/text.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace hdlforge {

namespace {

constexpr std::size_t chunk_size = 1024;

struct FamilyDef {
  const char* name;
  std::vector<RecordKind> kinds;
};

const std::vector<FamilyDef>& families()
{
  using K = RecordKind;
  static const std::vector<FamilyDef> f = {
    {"kmap_family", {K::kmap, K::truthtable}},
    {"fsm_family", {K::fsm_moore, K::fsm_mealy, K::fsm_onehot_comb}},
    {"waveform_family", {K::waveform_comb, K::waveform_seq}},
  };
  return f;
}

bool is_comb(RecordKind k)
{
  return k == RecordKind::kmap || k == RecordKind::truthtable || k == RecordKind::waveform_comb;
}

std::size_t row_split(std::size_t n, Rng& rng)
{
  // Halves, with the odd variable on either side.
  return n % 2 == 0 ? n / 2 : n / 2 + static_cast<std::size_t>(rng.uniform(2));
}

FsmDesign registered(FsmGraph fsm, StateEncoding enc, ResetKind reset)
{
  const std::string signal = reset == ResetKind::async_high ? "areset" : "reset";
  return FsmDesign{std::move(fsm), std::move(enc), ResetSpec{reset, signal, 0}, FsmEmitOptions{}};
}

ProblemRecord sample_kind(RecordKind kind, Rng& rng, std::uint64_t seed, const ParamRanges& ranges,
                          const std::vector<std::uint32_t>& op_weights);

ProblemRecord sample_repair(Rng& rng, std::uint64_t seed, const ParamRanges& ranges,
                            const std::vector<std::uint32_t>& op_weights)
{
  for (int attempt = 0; attempt < 32; ++attempt) {
    const MutationOp op = all_ops()[rng.weighted(op_weights)];
    const std::string base_kind = rng.pick(base_kinds_for(op));
    const RepairBase base = [&] {
      if (base_kind == "concat") {
        return repair_base(random_concat(rng));
      }
      if (base_kind == "shift") {
        return repair_base(random_shift(rng));
      }
      return repair_base(sample_kind(kind_from_name(base_kind), rng, seed, ranges, op_weights));
    }();
    if (!applicable(base.object, op)) {
      continue;
    }
    try {
      auto [mutated, desc] = mutate(base.object, op, rng);
      return forge_repair(base, mutated, desc, seed);
    } catch (const ContractError&) {
      continue;
    }
  }
  throw ContractError("repair sampler found no applicable mutation");
}

ProblemRecord sample_kind(RecordKind kind, Rng& rng, std::uint64_t seed, const ParamRanges& ranges,
                          const std::vector<std::uint32_t>& op_weights)
{
  switch (kind) {
  case RecordKind::kmap: {
    const std::size_t n = rng.pick(ranges.kmap_vars);
    BooleanSpec spec = sample_spec(n, default_var_names(n), rng);
    const std::size_t rows = row_split(n, rng);
    const int muts = static_cast<int>(rng.uniform_range(0, ranges.kmap_mutations_max));
    const KarnaughMap map = layout(spec, rows, rng, muts);
    return forge_kmap(spec, map, rng.pick(templates_for(kind)), seed);
  }
  case RecordKind::truthtable: {
    const std::size_t n = rng.pick(ranges.kmap_vars);
    const BooleanSpec spec = sample_spec(n, default_var_names(n), rng);
    return forge_truthtable(spec, rng.pick(templates_for(kind)), seed);
  }
  case RecordKind::waveform_comb: {
    const std::size_t n = rng.pick(ranges.kmap_vars);
    SampleOptions so;
    // Waveforms show every row with a definite value.
    so.weights.dont_care = 0;
    const BooleanSpec spec = sample_spec(n, default_var_names(n), rng, so);
    return forge_waveform_comb(spec, simulate_combinational(derive_sop(spec)), rng.pick(templates_for(kind)), seed);
  }
  case RecordKind::fsm_moore: {
    const std::size_t n = rng.pick(ranges.fsm_states);
    const int w = rng.pick(ranges.input_widths);
    FsmGraph fsm = generate_moore(n, w, rng);
    const std::string tid = rng.pick(templates_for(kind));
    if (tid == "fsm_table_binary") {
      FsmDesign d{fsm, binary_encoding(n), ResetSpec{}, FsmEmitOptions{}};
      d.emit.next_bit = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(d.enc.width)));
      return forge_fsm(d, FsmStyle::table_binary, tid, seed);
    }
    if (tid == "fsm_edgelist_moore") {
      return forge_fsm(registered(std::move(fsm), binary_encoding(n), ResetKind::sync_high), FsmStyle::edgelist_moore,
                       tid, seed);
    }
    const ResetKind rk = rng.coin() ? ResetKind::sync_high : ResetKind::async_high;
    FsmDesign d = registered(std::move(fsm), binary_encoding(n), rk);
    d.emit.dialect = rng.coin() ? Dialect::always_comb : Dialect::always_star;
    return forge_fsm(d, FsmStyle::edgelist_moore, tid, seed);
  }
  case RecordKind::fsm_mealy: {
    const std::size_t n = rng.pick(ranges.fsm_states);
    const int w = rng.pick(ranges.input_widths);
    FsmGraph fsm = generate_mealy(n, w, rng);
    StateEncoding enc = rng.coin() ? binary_encoding(n) : one_hot_encoding(n);
    return forge_fsm(registered(std::move(fsm), std::move(enc), ResetKind::async_high), FsmStyle::edgelist_mealy,
                     rng.pick(templates_for(kind)), seed);
  }
  case RecordKind::fsm_onehot_comb: {
    const std::size_t n = rng.pick(ranges.fsm_states);
    const int w = rng.pick(ranges.input_widths);
    FsmGraph fsm = generate_moore(n, w, rng);
    FsmDesign d{std::move(fsm), one_hot_encoding(n), ResetSpec{}, FsmEmitOptions{}};
    return forge_fsm(d, FsmStyle::table_onehot_comb, rng.pick(templates_for(kind)), seed);
  }
  case RecordKind::waveform_seq: {
    const std::size_t n = rng.pick(ranges.fsm_states);
    const int w = rng.pick(ranges.input_widths);
    FsmGraph fsm = generate_moore(n, w, rng);
    SeqStimulus stim{random_stimulus(w, rng), 2};
    return forge_waveform_seq(registered(std::move(fsm), binary_encoding(n), ResetKind::sync_high), stim,
                              rng.pick(templates_for(kind)), seed);
  }
  case RecordKind::repair:
    return sample_repair(rng, seed, ranges, op_weights);
  }
  throw ContractError("unknown record kind");
}

enum class AttemptStatus : std::uint8_t { ok, sample_failed, fidelity_failed };

struct Attempt {
  AttemptStatus status = AttemptStatus::sample_failed;
  std::optional<ProblemRecord> record;
};

Attempt attempt(RecordKind kind, std::uint64_t index, const GenerationConfig& cfg)
{
  Attempt a;
  try {
    a.record = sample_record(kind, cfg.master_seed, index, cfg.ranges, cfg.op_weights);
  } catch (const std::exception&) {
    return a;
  }
  a.status = check_record(*a.record) ? AttemptStatus::ok : AttemptStatus::fidelity_failed;
  if (a.status != AttemptStatus::ok) {
    a.record.reset();
  }
  return a;
}

std::vector<Attempt> run_batch(RecordKind kind, std::uint64_t begin, std::uint64_t end, const GenerationConfig& cfg)
{
  std::vector<Attempt> out(static_cast<std::size_t>(end - begin));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < out.size(); i = next++) {
      out[i] = attempt(kind, begin + i, cfg);
    }
  };
  const unsigned n = std::max(1U, std::min<unsigned>(cfg.workers, static_cast<unsigned>(out.size())));
  if (n == 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back(work);
  }
  for (auto& t : pool) {
    t.join();
  }
  return out;
}

std::string strip_comment(std::string line)
{
  if (const auto hash = line.find('#'); hash != std::string::npos) {
    line.erase(hash);
  }
  return std::string(text::trim(line));
}

std::string erroneous_module(const std::string& problem)
{
  const auto a = problem.find("2. Erroneous Implementation");
  const auto b = problem.find("3. Hints for Fixing");
  if (a == std::string::npos || b == std::string::npos || b < a) {
    throw ContractError("repair problem lacks the erroneous implementation section");
  }
  return extract_module(problem.substr(a, b - a));
}

} // namespace

KindCounts default_counts()
{
  KindCounts c;
  for (auto k : all_kinds()) {
    c[k] = 0;
  }
  for (const auto& [k, n] : split_family("kmap_family", 12500)) {
    c[k] = n;
  }
  for (const auto& [k, n] : split_family("fsm_family", 8000)) {
    c[k] = n;
  }
  for (const auto& [k, n] : split_family("waveform_family", 8000)) {
    c[k] = n;
  }
  return c;
}

bool is_family(const std::string& name)
{
  return std::any_of(families().begin(), families().end(), [&](const FamilyDef& f) { return name == f.name; });
}

KindCounts split_family(const std::string& family, std::size_t total)
{
  for (const auto& f : families()) {
    if (family == f.name) {
      KindCounts c;
      const std::size_t m = f.kinds.size();
      for (std::size_t i = 0; i < m; ++i) {
        // Earlier kinds take the remainder.
        c[f.kinds[i]] = total / m + (i < total % m ? 1 : 0);
      }
      return c;
    }
  }
  throw ContractError("unknown family '" + family + "'");
}

void validate(const GenerationConfig& cfg)
{
  const auto& r = cfg.ranges;
  if (r.kmap_vars.empty() || r.fsm_states.empty() || r.input_widths.empty()) {
    throw ContractError("parameter ranges must be nonempty");
  }
  for (auto n : r.kmap_vars) {
    if (n < 2 || n > max_wave_vars) {
      throw ContractError("KMap variable counts must lie in [2, 4]");
    }
  }
  for (auto n : r.fsm_states) {
    if (n < 2 || n > 26) {
      throw ContractError("state counts must lie in [2, 26]");
    }
  }
  for (auto w : r.input_widths) {
    if (w < 1 || w > 3) {
      throw ContractError("input widths must lie in [1, 3]");
    }
  }
  if (r.kmap_mutations_max < 0) {
    throw ContractError("KMap mutation count must be nonnegative");
  }
  if (cfg.op_weights.size() != all_ops().size()) {
    throw ContractError("one weight per mutation operator is required");
  }
  if (std::all_of(cfg.op_weights.begin(), cfg.op_weights.end(), [](std::uint32_t w) { return w == 0; })) {
    throw ContractError("mutation weights must not all be zero");
  }
  if (!(cfg.overgeneration >= 1.0) || cfg.max_refill_rounds < 0) {
    throw ContractError("over-generation factor must be >= 1 and refill rounds >= 0");
  }
}

ProblemRecord sample_record(RecordKind kind, std::uint64_t master_seed, std::uint64_t index, const ParamRanges& ranges,
                            const std::vector<std::uint32_t>& op_weights)
{
  const std::uint64_t seed = stream_seed(master_seed, kind_name(kind), index);
  Rng rng(seed);
  return sample_kind(kind, rng, seed, ranges, op_weights);
}

std::string canonical_key(const ProblemRecord& r)
{
  const auto& sem = r.meta.at("semantic");
  if (is_comb(r.kind)) {
    return digest(comb_key_string(decode_spec(sem.at("spec"))));
  }
  if (r.kind == RecordKind::repair) {
    return digest(object_key(decode_object(sem.at("object"))) + "|" +
                  descriptor_key(decode_descriptor(r.meta.at("mutation"))));
  }
  return digest(fsm_key_string(decode_design(sem.at("design")).fsm));
}

CheckResult check_record(const ProblemRecord& r)
{
  try {
    if (canonical_key(r) != r.canonical_key) {
      return CheckResult::fail("stored key does not match the semantic object");
    }
    const std::string module = extract_module(r.solution);
    const auto& sem = r.meta.at("semantic");
    if (is_comb(r.kind)) {
      return check_combinational(module, decode_spec(sem.at("spec")));
    }
    if (r.kind != RecordKind::repair) {
      return check_fsm(module, decode_design(sem.at("design")));
    }
    const MutableObject obj = decode_object(sem.at("object"));
    const MutationDescriptor d = decode_descriptor(r.meta.at("mutation"));
    if (auto c = check_object(module, obj); !c) {
      return c;
    }
    const MutableObject bad = apply_mutation(obj, d);
    if (!validate_mutation(obj, bad)) {
      return CheckResult::fail("mutation does not change behavior");
    }
    if (!same_object(revert(bad, d), obj)) {
      return CheckResult::fail("descriptor does not invert");
    }
    if (check_object(erroneous_module(r.problem), obj)) {
      return CheckResult::fail("erroneous module passes the check");
    }
    return {};
  } catch (const std::exception& e) {
    return CheckResult::fail(e.what());
  }
}

std::set<std::string> parse_benchmark_keys(std::istream& in)
{
  std::set<std::string> keys;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string key = strip_comment(line);
    if (key.empty()) {
      continue;
    }
    std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
    if (key.find_first_not_of("0123456789abcdef") != std::string::npos) {
      throw ContractError("key file line " + std::to_string(lineno) + ": not a hex key");
    }
    keys.insert(key);
  }
  return keys;
}

std::set<std::string> read_benchmark_keys(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read key file " + path.string());
  }
  return parse_benchmark_keys(in);
}

std::size_t DecontaminationReport::total() const
{
  std::size_t n = 0;
  for (const auto& [k, c] : dropped) {
    n += c;
  }
  return n;
}

std::vector<ProblemRecord> decontaminate(const std::vector<ProblemRecord>& records,
                                         const std::set<std::string>& benchmark_keys, DecontaminationReport& report)
{
  std::vector<ProblemRecord> out;
  for (const auto& r : records) {
    if (benchmark_keys.count(r.canonical_key) != 0) {
      ++report.dropped[r.kind];
    } else {
      out.push_back(r);
    }
  }
  return out;
}

std::size_t GenerationSummary::total() const
{
  std::size_t n = 0;
  for (const auto& [k, s] : kinds) {
    n += s.emitted;
  }
  return n;
}

bool GenerationSummary::complete() const
{
  return std::none_of(kinds.begin(), kinds.end(), [](const auto& kv) { return kv.second.shortfall(); });
}

std::vector<ProblemRecord> generate_records(const GenerationConfig& cfg, GenerationSummary& summary)
{
  validate(cfg);
  std::set<std::string> bench;
  if (cfg.decontamination_keys) {
    bench = read_benchmark_keys(*cfg.decontamination_keys);
  }
  summary = GenerationSummary{};
  summary.master_seed = cfg.master_seed;
  summary.benchmark_keys = bench.size();

  std::vector<ProblemRecord> out;
  std::set<std::string> seen;
  for (auto kind : all_kinds()) {
    const auto it = cfg.counts.find(kind);
    const std::size_t target = it == cfg.counts.end() ? 0 : it->second;
    KindSummary& ks = summary.kinds[kind];
    ks.target = target;
    if (target == 0) {
      continue;
    }
    auto budget = [&](std::size_t need) {
      return static_cast<std::uint64_t>(std::ceil(static_cast<double>(need) * cfg.overgeneration));
    };
    std::uint64_t index = 0;
    std::uint64_t limit = budget(target);
    while (ks.emitted < target) {
      if (index >= limit) {
        if (ks.refill_rounds >= cfg.max_refill_rounds) {
          break;
        }
        ++ks.refill_rounds;
        // Scale the refill by the acceptance rate seen so far, so kinds that
        // lose many draws to duplicates still close the gap.
        // Each round is capped at four first-round budgets, which bounds
        // the work when the parameter space is simply too small.
        const std::size_t accepted = std::max<std::size_t>(ks.emitted, 1);
        const std::size_t need = target - ks.emitted;
        limit += std::min(budget((need * ks.attempted + accepted - 1) / accepted), 4 * budget(target));
      }
      const std::uint64_t end = std::min(limit, index + chunk_size);
      auto batch = run_batch(kind, index, end, cfg);
      for (auto& a : batch) {
        if (ks.emitted == target) {
          break;
        }
        ++ks.attempted;
        if (a.status == AttemptStatus::sample_failed) {
          ++ks.sample_failures;
        } else if (a.status == AttemptStatus::fidelity_failed) {
          ++ks.fidelity_rejects;
        } else if (bench.count(a.record->canonical_key) != 0) {
          ++ks.decontaminated;
        } else if (!seen.insert(a.record->canonical_key).second) {
          ++ks.duplicates;
        } else {
          out.push_back(std::move(*a.record));
          ++ks.emitted;
        }
      }
      index = end;
    }
  }
  return out;
}

std::filesystem::path summary_path(const std::filesystem::path& output)
{
  return std::filesystem::path(output.string() + ".summary.json");
}

GenerationSummary generate_dataset(const GenerationConfig& cfg)
{
  GenerationSummary s;
  const auto records = generate_records(cfg, s);
  write_dataset(cfg.output_path, records);
  std::ofstream js(summary_path(cfg.output_path), std::ios::binary);
  if (!js) {
    throw IoError("cannot write " + summary_path(cfg.output_path).string());
  }
  js << summary_json(s).dump(2) << "\n";
  if (!js) {
    throw IoError("write failed for " + summary_path(cfg.output_path).string());
  }
  return s;
}

nlohmann::json summary_json(const GenerationSummary& s)
{
  nlohmann::json kinds = nlohmann::json::object();
  for (const auto& [k, ks] : s.kinds) {
    kinds[kind_name(k)] = {{"target", ks.target},
                           {"emitted", ks.emitted},
                           {"attempted", ks.attempted},
                           {"sample_failures", ks.sample_failures},
                           {"fidelity_rejects", ks.fidelity_rejects},
                           {"duplicates", ks.duplicates},
                           {"decontaminated", ks.decontaminated},
                           {"refill_rounds", ks.refill_rounds},
                           {"shortfall", ks.shortfall()}};
  }
  return {{"master_seed", s.master_seed},
          {"total", s.total()},
          {"benchmark_keys", s.benchmark_keys},
          {"complete", s.complete()},
          {"kinds", kinds}};
}

std::string render_summary(const GenerationSummary& s)
{
  std::ostringstream os;
  char line[160];
  os << "seed " << s.master_seed << ", " << s.benchmark_keys << " benchmark keys\n";
  std::snprintf(line, sizeof line, "%-16s %7s %7s %9s %6s %6s %8s %6s\n", "kind", "target", "emitted", "attempted",
                "dups", "decon", "fidelity", "failed");
  os << line;
  std::size_t decon = 0;
  for (const auto& [k, ks] : s.kinds) {
    if (ks.target == 0) {
      continue;
    }
    std::snprintf(line, sizeof line, "%-16s %7zu %7zu %9zu %6zu %6zu %8zu %6zu%s\n", kind_name(k).c_str(), ks.target,
                  ks.emitted, ks.attempted, ks.duplicates, ks.decontaminated, ks.fidelity_rejects, ks.sample_failures,
                  ks.shortfall() ? "  SHORTFALL" : "");
    os << line;
    decon += ks.decontaminated;
  }
  os << "total " << s.total() << " records, " << decon << " dropped by decontamination\n";
  if (!s.complete()) {
    os << "retry budget exhausted before every target was met\n";
  }
  return os.str();
}

std::vector<ProblemRecord> parse_dataset(std::istream& in)
{
  std::vector<ProblemRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) {
      continue;
    }
    try {
      out.push_back(parse_line(line));
    } catch (const std::exception& e) {
      throw ContractError("dataset line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ProblemRecord> read_dataset(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot read dataset " + path.string());
  }
  return parse_dataset(in);
}

void write_dataset(const std::filesystem::path& path, const std::vector<ProblemRecord>& records)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  for (const auto& r : records) {
    out << dump_line(r) << '\n';
  }
  out.flush();
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

std::size_t DedupeReport::total_duplicates() const
{
  std::size_t n = 0;
  for (const auto& [k, c] : duplicates) {
    n += c;
  }
  return n;
}

std::vector<ProblemRecord> dedupe(const std::vector<ProblemRecord>& records, DedupeReport& report)
{
  std::vector<ProblemRecord> out;
  std::set<std::string> seen;
  for (const auto& r : records) {
    ++report.records;
    ProblemRecord copy = r;
    copy.canonical_key = canonical_key(r);
    if (copy.canonical_key != r.canonical_key) {
      ++report.key_mismatches;
    }
    if (!seen.insert(copy.canonical_key).second) {
      ++report.duplicates[r.kind];
      continue;
    }
    out.push_back(std::move(copy));
  }
  return out;
}

std::vector<ProblemRecord> make_repairs(const std::vector<ProblemRecord>& records, const std::vector<MutationOp>& ops,
                                        const std::vector<std::uint32_t>& weights, std::uint64_t seed)
{
  if (weights.size() != all_ops().size()) {
    throw ContractError("one weight per mutation operator is required");
  }
  std::vector<ProblemRecord> out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].kind == RecordKind::repair) {
      continue;
    }
    const std::uint64_t s = stream_seed(seed, "mutate", i);
    Rng rng(s);
    const RepairBase base = repair_base(records[i]);
    std::vector<MutationOp> cands;
    std::vector<std::uint32_t> w;
    for (std::size_t j = 0; j < all_ops().size(); ++j) {
      const MutationOp op = all_ops()[j];
      if (weights[j] > 0 && std::find(ops.begin(), ops.end(), op) != ops.end() && applicable(base.object, op)) {
        cands.push_back(op);
        w.push_back(weights[j]);
      }
    }
    while (!cands.empty()) {
      const std::size_t pick = rng.weighted(w);
      try {
        auto [mutated, desc] = mutate(base.object, cands[pick], rng);
        out.push_back(forge_repair(base, mutated, desc, s));
        break;
      } catch (const ContractError&) {
        cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(pick));
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(pick));
      }
    }
  }
  return out;
}

} // namespace hdlforge
