#include "cli.hpp"

#include "hdlforge/dataset.hpp"
#include "hdlforge/metrics.hpp"
#include "hdlforge/record_json.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace hdlforge::cli {

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_uint(const std::string& s, const std::string& what)
{
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (s.empty() || s[0] == '-') {
      throw std::invalid_argument(s);
    }
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + s + "' is not a nonnegative integer");
  }
  if (used != s.size()) {
    throw UsageError(what + ": '" + s + "' is not a nonnegative integer");
  }
  return v;
}

RecordKind parse_kind(const std::string& s)
{
  try {
    return kind_from_name(s);
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }
}

MutationOp parse_op(const std::string& s)
{
  try {
    return op_from_name(s);
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }
}

/// "kind=N" or "family=N" items; unlisted kinds get 0.
KindCounts parse_counts(const std::vector<std::string>& items)
{
  KindCounts c;
  for (auto k : all_kinds()) {
    c[k] = 0;
  }
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--counts: expected name=N, got '" + item + "'");
    }
    const std::string name = item.substr(0, eq);
    const auto n = static_cast<std::size_t>(parse_uint(item.substr(eq + 1), "--counts " + name));
    if (is_family(name)) {
      for (const auto& [k, v] : split_family(name, n)) {
        c[k] = v;
      }
    } else {
      c[parse_kind(name)] = n;
    }
  }
  return c;
}

/// Seven integers in operator order, or op=weight pairs over the defaults.
std::vector<std::uint32_t> parse_weights(const std::vector<std::string>& items)
{
  std::vector<std::uint32_t> w = default_op_weights();
  if (items.empty()) {
    return w;
  }
  const bool pairs = items.front().find('=') != std::string::npos;
  if (!pairs && items.size() != all_ops().size()) {
    throw UsageError("--weights: give " + std::to_string(all_ops().size()) + " integers or op=weight pairs");
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto eq = items[i].find('=');
    if ((eq != std::string::npos) != pairs) {
      throw UsageError("--weights: do not mix positional weights and op=weight pairs");
    }
    if (pairs) {
      const MutationOp op = parse_op(items[i].substr(0, eq));
      const auto idx = static_cast<std::size_t>(op);
      w[idx] = static_cast<std::uint32_t>(parse_uint(items[i].substr(eq + 1), "--weights"));
    } else {
      w[i] = static_cast<std::uint32_t>(parse_uint(items[i], "--weights"));
    }
  }
  if (std::all_of(w.begin(), w.end(), [](std::uint32_t x) { return x == 0; })) {
    throw UsageError("--weights: at least one weight must be positive");
  }
  return w;
}

/// Relative output paths land in $HDLFORGE_OUT_DIR when it is set.
std::filesystem::path output_path(const std::string& p)
{
  std::filesystem::path path(p);
  if (const char* dir = std::getenv("HDLFORGE_OUT_DIR"); dir != nullptr && *dir != '\0' && path.is_relative()) {
    path = std::filesystem::path(dir) / path;
  }
  return path;
}

std::string fmt_prob(double v)
{
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(12) << v;
  std::string s = os.str();
  if (s.find_first_of(".e") == std::string::npos) {
    s += ".0";
  }
  return s;
}

struct Shared {
  std::uint64_t seed = 1;
  bool deterministic = false;
};

struct GenArgs {
  std::vector<std::string> kinds;
  std::vector<std::string> counts;
  std::string decontaminate;
  std::string out = "dataset.jsonl";
  unsigned workers = 1;
  std::vector<std::size_t> kmap_vars{3, 4};
  std::vector<std::size_t> states{4, 6, 10};
  std::vector<int> widths{1, 2};
  std::vector<std::string> weights;
};

int cmd_gen(const Shared& sh, const GenArgs& a, std::ostream& out, std::ostream& err)
{
  GenerationConfig cfg;
  cfg.master_seed = sh.seed;
  if (!a.counts.empty()) {
    cfg.counts = parse_counts(a.counts);
  }
  if (!a.kinds.empty()) {
    std::set<RecordKind> keep;
    for (const auto& k : a.kinds) {
      keep.insert(parse_kind(k));
    }
    for (auto& [k, n] : cfg.counts) {
      if (keep.count(k) == 0) {
        n = 0;
      }
    }
  }
  if (!a.decontaminate.empty()) {
    cfg.decontamination_keys = a.decontaminate;
  }
  cfg.output_path = output_path(a.out);
  cfg.workers = std::max(1U, a.workers);
  cfg.ranges.kmap_vars = a.kmap_vars;
  cfg.ranges.fsm_states = a.states;
  cfg.ranges.input_widths = a.widths;
  cfg.op_weights = parse_weights(a.weights);
  try {
    validate(cfg);
  } catch (const ContractError& e) {
    throw UsageError(e.what());
  }

  const auto t0 = std::chrono::steady_clock::now();
  const GenerationSummary s = generate_dataset(cfg);
  out << render_summary(s);
  out << "wrote " << s.total() << " records to " << cfg.output_path.string() << "\n";
  if (!sh.deterministic) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << "elapsed " << std::fixed << std::setprecision(2) << secs << " s\n";
  }
  if (!s.complete()) {
    for (const auto& [k, ks] : s.kinds) {
      if (ks.shortfall()) {
        err << "shortfall: " << kind_name(k) << " emitted " << ks.emitted << " of " << ks.target << "\n";
      }
    }
    return 1;
  }
  return 0;
}

int cmd_render(const Shared& sh, const std::string& kind, std::uint64_t index, bool json, std::ostream& out)
{
  const ProblemRecord r = sample_record(parse_kind(kind), sh.seed, index);
  if (json) {
    out << dump_line(r) << "\n";
    return 0;
  }
  out << "== " << kind_name(r.kind) << " (template " << r.meta.at("template").get<std::string>() << ", key "
      << r.canonical_key.substr(0, 16) << ")\n";
  out << "== problem\n" << r.problem << "== solution\n" << r.solution;
  return 0;
}

int cmd_mutate(const Shared& sh, const std::string& in, const std::string& outp, const std::vector<std::string>& ops,
               const std::vector<std::string>& weights, std::ostream& out)
{
  std::vector<MutationOp> chosen;
  for (const auto& o : ops) {
    chosen.push_back(parse_op(o));
  }
  if (chosen.empty()) {
    chosen = all_ops();
  }
  const auto w = parse_weights(weights);
  const auto records = read_dataset(in);
  const auto repairs = make_repairs(records, chosen, w, sh.seed);
  const auto path = output_path(outp);
  write_dataset(path, repairs);
  std::map<std::string, std::size_t> per_op;
  for (const auto& r : repairs) {
    ++per_op[r.meta.at("mutation").at("op").get<std::string>()];
  }
  out << "read " << records.size() << " records, wrote " << repairs.size() << " repair records to " << path.string()
      << "\n";
  for (auto op : all_ops()) {
    out << "  " << std::left << std::setw(24) << op_name(op) << per_op[op_name(op)] << "\n";
  }
  return 0;
}

int cmd_dedupe(const std::string& in, const std::string& outp, std::ostream& out)
{
  const auto records = read_dataset(in);
  DedupeReport rep;
  const auto kept = dedupe(records, rep);
  out << rep.records << " records, " << rep.total_duplicates() << " duplicates, " << rep.key_mismatches
      << " stored keys differ from the recomputed key\n";
  for (const auto& [k, n] : rep.duplicates) {
    out << "  " << kind_name(k) << " " << n << "\n";
  }
  if (!outp.empty()) {
    const auto path = output_path(outp);
    write_dataset(path, kept);
    out << "wrote " << kept.size() << " records to " << path.string() << "\n";
  }
  return 0;
}

int cmd_passk(const std::string& file, const std::vector<std::int64_t>& ks, std::ostream& out)
{
  std::ifstream in(file);
  if (!in) {
    throw IoError("cannot read tally file " + file);
  }
  std::vector<TrialTally> tallies;
  try {
    tallies = read_tallies(in);
  } catch (const ContractError& e) {
    throw IoError(file + ": " + e.what());
  }
  if (tallies.empty()) {
    throw IoError(file + ": no tallies");
  }
  out << "problems " << tallies.size() << "\n";
  for (auto k : ks) {
    try {
      out << "pass@" << k << " " << fmt_prob(aggregate_pass_at_k(tallies, k)) << "\n";
    } catch (const ContractError& e) {
      throw UsageError(std::string("--k: ") + e.what());
    }
  }
  out << "fix_rate " << fmt_prob(fix_rate(tallies)) << "\n";
  return 0;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Correct-by-construction Verilog problem generator"};
  app.name("hdlforge");
  app.require_subcommand(1);

  Shared sh;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", sh.seed, "Master seed")->capture_default_str();
    sub->add_flag("--deterministic", sh.deterministic, "Suppress timing lines in reports");
  };

  GenArgs g;
  auto* gen = app.add_subcommand("gen", "Generate a dataset");
  common(gen);
  gen->add_option("--kinds", g.kinds, "Only generate these kinds (comma separated)")->delimiter(',');
  gen->add_option("--counts", g.counts, "Per-kind or per-family counts, e.g. kmap=10,fsm_family=300")
    ->delimiter(',');
  gen->add_option("--decontaminate", g.decontaminate, "Benchmark key file; matching records are dropped");
  gen->add_option("--out", g.out, "Output JSONL path")->capture_default_str();
  gen->add_option("--workers", g.workers, "Worker threads")->capture_default_str()->check(CLI::Range(1U, 1024U));
  gen->add_option("--kmap-vars", g.kmap_vars, "Variable counts for combinational kinds")->delimiter(',');
  gen->add_option("--states", g.states, "State counts for machines")->delimiter(',');
  gen->add_option("--widths", g.widths, "Input widths for machines")->delimiter(',');
  gen->add_option("--weights", g.weights, "Mutation weights for repair records")->delimiter(',');

  std::string render_kind;
  std::uint64_t render_index = 0;
  bool render_json = false;
  auto* render = app.add_subcommand("render", "Print one seeded sample");
  common(render);
  render->add_option("--kind", render_kind, "Record kind")->required();
  render->add_option("--index", render_index, "Sample index")->capture_default_str();
  render->add_flag("--json", render_json, "Print the JSONL line instead");

  std::string m_in;
  std::string m_out = "repairs.jsonl";
  std::vector<std::string> m_ops;
  std::vector<std::string> m_weights;
  auto* mut = app.add_subcommand("mutate", "Build repair records from a dataset");
  common(mut);
  mut->add_option("--in", m_in, "Input JSONL dataset")->required();
  mut->add_option("--out", m_out, "Output JSONL path")->capture_default_str();
  mut->add_option("--ops", m_ops, "Mutation operators to draw from (comma separated)")->delimiter(',');
  mut->add_option("--weights", m_weights, "Seven weights in operator order, or op=weight pairs")->delimiter(',');

  std::string d_in;
  std::string d_out;
  auto* ded = app.add_subcommand("dedupe", "Recompute keys and report or strip duplicates");
  common(ded);
  ded->add_option("--in", d_in, "Input JSONL dataset")->required();
  ded->add_option("--out", d_out, "Write the deduplicated records here");

  std::string p_file;
  std::vector<std::int64_t> p_k{1};
  auto* pk = app.add_subcommand("passk", "pass@k and fix rate over a tally file");
  common(pk);
  pk->add_option("tallies,--tallies", p_file, "File with 'n c' per line")->required();
  pk->add_option("--k", p_k, "Values of k (comma separated)")->delimiter(',')->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      return cmd_gen(sh, g, out, err);
    }
    if (*render) {
      return cmd_render(sh, render_kind, render_index, render_json, out);
    }
    if (*mut) {
      return cmd_mutate(sh, m_in, m_out, m_ops, m_weights, out);
    }
    if (*ded) {
      return cmd_dedupe(d_in, d_out, out);
    }
    return cmd_passk(p_file, p_k, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace hdlforge::cli
