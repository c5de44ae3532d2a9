#include "cli.hpp"

#include "hdlforge/dataset.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args)
{
  args.insert(args.begin(), "hdlforge");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = hdlforge::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path dir()
{
  const fs::path p = fs::temp_directory_path() / "hdlforge_cli_test";
  fs::create_directories(p);
  return p;
}

} // namespace

TEST_CASE("help and usage errors")
{
  CHECK(cli({"--help"}).code == 0);
  CHECK(cli({"gen", "--help"}).out.find("--seed") != std::string::npos);
  CHECK(cli({"--bogus"}).code == 2);
  CHECK(cli({"gen", "--counts", "kmap=x"}).code == 2);
  CHECK(cli({"gen", "--counts", "nothing=3"}).code == 2);
  CHECK(cli({"gen", "--workers", "0"}).code == 2);
  CHECK(cli({"render"}).code == 2);
}

TEST_CASE("gen writes the requested records and the summary")
{
  const fs::path out = dir() / "gen.jsonl";
  const Run r = cli({"gen", "--seed", "3", "--counts", "kmap=7,fsm_family=5", "--out", out.string(), "--deterministic"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("wrote 12 records") != std::string::npos);
  CHECK(r.out.find("elapsed") == std::string::npos);
  const auto rs = hdlforge::read_dataset(out);
  CHECK(rs.size() == 12);
  CHECK(fs::exists(hdlforge::summary_path(out)));
  const Run again = cli({"gen", "--seed", "3", "--counts", "kmap=7,fsm_family=5", "--out", out.string(),
                         "--deterministic", "--workers", "4"});
  CHECK(again.out == r.out);
}

TEST_CASE("gen reports a shortfall with exit code 1")
{
  const fs::path out = dir() / "short.jsonl";
  const Run r = cli({"gen", "--counts", "kmap=300", "--kmap-vars", "2", "--out", out.string(), "--deterministic"});
  CHECK(r.code == 1);
  CHECK(r.err.find("shortfall:") != std::string::npos);
}

TEST_CASE("render, mutate, dedupe")
{
  const Run r = cli({"render", "--kind", "fsm_mealy", "--index", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("endmodule") != std::string::npos);
  CHECK(cli({"render", "--kind", "fsm_mealy", "--index", "2"}).out == r.out);
  CHECK(cli({"render", "--kind", "unknown_kind"}).code == 2);

  const fs::path in = dir() / "base.jsonl";
  REQUIRE(cli({"gen", "--counts", "kmap=6,fsm_moore=4", "--out", in.string(), "--deterministic"}).code == 0);
  const fs::path rep = dir() / "rep.jsonl";
  const Run m = cli({"mutate", "--in", in.string(), "--out", rep.string(), "--weights", "sop_term_drop=0"});
  REQUIRE(m.code == 0);
  const auto repairs = hdlforge::read_dataset(rep);
  CHECK(repairs.size() == 10);
  for (const auto& x : repairs) {
    CHECK(x.meta.at("mutation").at("op") != "sop_term_drop");
  }
  CHECK(cli({"mutate", "--in", in.string(), "--weights", "1,2,3"}).code == 2);

  const Run d = cli({"dedupe", "--in", in.string()});
  CHECK(d.code == 0);
  CHECK(d.out.find("0 duplicates") != std::string::npos);
  CHECK(cli({"dedupe", "--in", (dir() / "absent.jsonl").string()}).code == 1);
}

TEST_CASE("passk")
{
  const fs::path t = dir() / "tallies.txt";
  {
    std::ofstream f(t);
    f << "# n c\n20 5\n10 10\n";
  }
  const Run r = cli({"passk", t.string(), "--k", "1,5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("pass@1") != std::string::npos);
  CHECK(r.out.find("pass@5") != std::string::npos);
  CHECK(r.out.find("fix_rate 0.625") != std::string::npos);
  CHECK(cli({"passk", t.string(), "--k", "15"}).code == 2);
}
