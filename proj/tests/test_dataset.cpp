#include "hdlforge/dataset.hpp"
#include "hdlforge/record_json.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace hdlforge;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
  const fs::path p = fs::temp_directory_path() / "hdlforge_unit" / name;
  fs::create_directories(p.parent_path());
  return p;
}

std::string lines(const std::vector<ProblemRecord>& rs)
{
  std::string out;
  for (const auto& r : rs) {
    out += dump_line(r) + "\n";
  }
  return out;
}

GenerationConfig small_config()
{
  GenerationConfig cfg;
  cfg.master_seed = 5;
  cfg.counts = {{RecordKind::kmap, 30},           {RecordKind::truthtable, 20}, {RecordKind::fsm_moore, 15},
                {RecordKind::fsm_mealy, 15},      {RecordKind::fsm_onehot_comb, 10},
                {RecordKind::waveform_comb, 10}, {RecordKind::waveform_seq, 10}, {RecordKind::repair, 12}};
  return cfg;
}

} // namespace

TEST_CASE("default counts")
{
  const KindCounts c = default_counts();
  std::size_t total = 0;
  for (const auto& [k, n] : c) {
    total += n;
  }
  CHECK(total == 28500);
  CHECK(c.at(RecordKind::kmap) == 6250);
  CHECK(c.at(RecordKind::truthtable) == 6250);
  CHECK(c.at(RecordKind::fsm_moore) == 2667);
  CHECK(c.at(RecordKind::fsm_mealy) == 2667);
  CHECK(c.at(RecordKind::fsm_onehot_comb) == 2666);
  CHECK(c.at(RecordKind::waveform_comb) == 4000);
  CHECK(c.at(RecordKind::waveform_seq) == 4000);
  CHECK(c.at(RecordKind::repair) == 0);
  CHECK(is_family("fsm_family"));
  CHECK_FALSE(is_family("kmap"));
  CHECK(split_family("fsm_family", 5).at(RecordKind::fsm_mealy) == 2);
  CHECK_THROWS_AS(split_family("nope", 3), ContractError);
}

TEST_CASE("config validation")
{
  GenerationConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.ranges.kmap_vars = {5};
  CHECK_THROWS_AS(validate(cfg), ContractError);
  cfg = {};
  cfg.ranges.fsm_states = {};
  CHECK_THROWS_AS(validate(cfg), ContractError);
  cfg = {};
  cfg.op_weights = {0, 0, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(validate(cfg), ContractError);
  cfg = {};
  cfg.op_weights = {1, 2};
  CHECK_THROWS_AS(validate(cfg), ContractError);
  cfg = {};
  cfg.overgeneration = 0.5;
  CHECK_THROWS_AS(validate(cfg), ContractError);
}

TEST_CASE("generation is deterministic, complete and free of duplicates")
{
  GenerationConfig cfg = small_config();
  GenerationSummary a;
  GenerationSummary b;
  const auto ra = generate_records(cfg, a);
  cfg.workers = 3;
  const auto rb = generate_records(cfg, b);
  CHECK(lines(ra) == lines(rb));
  CHECK(summary_json(a) == summary_json(b));
  CHECK(a.complete());
  CHECK(a.total() == 122);
  std::set<std::string> keys;
  for (const auto& r : ra) {
    CHECK(keys.insert(r.canonical_key).second);
    CHECK(check_record(r));
  }
  cfg.master_seed = 6;
  GenerationSummary c;
  CHECK(lines(generate_records(cfg, c)) != lines(ra));
}

TEST_CASE("narrow ranges run short and say so")
{
  GenerationConfig cfg;
  cfg.counts = {{RecordKind::kmap, 400}};
  cfg.ranges.kmap_vars = {2};
  GenerationSummary s;
  const auto rs = generate_records(cfg, s);
  // Two variables allow only a few dozen distinct functions.
  CHECK(rs.size() < 400);
  CHECK_FALSE(s.complete());
  CHECK(s.kinds.at(RecordKind::kmap).shortfall());
  CHECK(s.kinds.at(RecordKind::kmap).duplicates > 0);
  CHECK(render_summary(s).find("SHORTFALL") != std::string::npos);
}

TEST_CASE("decontamination: planted keys never come out")
{
  GenerationConfig cfg = small_config();
  GenerationSummary first;
  const auto clean = generate_records(cfg, first);
  std::set<std::string> planted;
  const fs::path keys = scratch("planted.keys");
  {
    std::ofstream out(keys);
    out << "# from an earlier run\n\n";
    for (std::size_t i = 0; i < clean.size(); i += 9) {
      std::string k = clean[i].canonical_key;
      planted.insert(k);
      for (auto& ch : k) {
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      }
      out << k << "  # planted\n";
    }
  }
  CHECK(read_benchmark_keys(keys) == planted);
  cfg.decontamination_keys = keys;
  GenerationSummary s;
  const auto rs = generate_records(cfg, s);
  std::size_t dropped = 0;
  for (const auto& [k, ks] : s.kinds) {
    dropped += ks.decontaminated;
  }
  CHECK(dropped >= planted.size());
  CHECK(s.benchmark_keys == planted.size());
  CHECK(s.complete());
  for (const auto& r : rs) {
    CHECK(planted.count(r.canonical_key) == 0);
  }
  DecontaminationReport rep;
  const auto kept = decontaminate(clean, planted, rep);
  CHECK(rep.total() == planted.size());
  CHECK(kept.size() == clean.size() - planted.size());

  std::istringstream bad("abc\nnot-hex!\n");
  CHECK_THROWS_AS(parse_benchmark_keys(bad), ContractError);
  CHECK_THROWS_AS(read_benchmark_keys(scratch("absent.keys")), IoError);
}

TEST_CASE("files, summary twin and dedupe")
{
  GenerationConfig cfg = small_config();
  cfg.output_path = scratch("small.jsonl");
  const GenerationSummary s = generate_dataset(cfg);
  CHECK(fs::exists(summary_path(cfg.output_path)));
  std::ifstream js(summary_path(cfg.output_path));
  const auto j = nlohmann::json::parse(js);
  CHECK(j.at("total") == s.total());
  CHECK(j.at("kinds").at("kmap").at("emitted") == 30);

  auto rs = read_dataset(cfg.output_path);
  CHECK(rs.size() == s.total());
  std::vector<ProblemRecord> doubled = rs;
  doubled.insert(doubled.end(), rs.begin(), rs.begin() + 10);
  doubled[3].canonical_key = "0000";
  DedupeReport rep;
  const auto d = dedupe(doubled, rep);
  CHECK(d.size() == rs.size());
  CHECK(rep.total_duplicates() == 10);
  CHECK(rep.key_mismatches == 1);
  CHECK(d[3].canonical_key == rs[3].canonical_key);

  std::istringstream broken(dump_line(rs[0]) + "\n{\"kind\": 3}\n");
  CHECK_THROWS_AS(parse_dataset(broken), ContractError);
  CHECK_THROWS_AS(read_dataset(scratch("missing.jsonl")), IoError);
  CHECK_THROWS_AS(write_dataset(scratch("no_such_dir") / "x" / "y.jsonl", rs), IoError);
}

TEST_CASE("tampered records fail the check")
{
  ProblemRecord r = sample_record(RecordKind::kmap, 8, 0);
  REQUIRE(check_record(r));
  ProblemRecord wrong_code = r;
  const auto p = wrong_code.solution.rfind("assign out = ");
  REQUIRE(p != std::string::npos);
  wrong_code.solution.insert(p + 13, "~");
  CHECK_FALSE(check_record(wrong_code));
  ProblemRecord wrong_key = r;
  wrong_key.canonical_key[0] = wrong_key.canonical_key[0] == 'a' ? 'b' : 'a';
  CHECK_FALSE(check_record(wrong_key));
}

TEST_CASE("repairs built from a dataset")
{
  GenerationConfig cfg = small_config();
  cfg.counts[RecordKind::repair] = 0;
  GenerationSummary s;
  const auto rs = generate_records(cfg, s);
  const auto all = make_repairs(rs, all_ops(), default_op_weights(), 4);
  CHECK(all.size() == rs.size());
  CHECK(lines(all) == lines(make_repairs(rs, all_ops(), default_op_weights(), 4)));
  for (const auto& r : all) {
    CHECK(r.kind == RecordKind::repair);
    CHECK(check_record(r));
  }
  const auto flips = make_repairs(rs, {MutationOp::sop_literal_flip}, default_op_weights(), 4);
  CHECK(!flips.empty());
  CHECK(flips.size() < rs.size());  // machines have no SOP to flip
  for (const auto& r : flips) {
    CHECK(r.meta.at("mutation").at("op") == "sop_literal_flip");
  }
}
