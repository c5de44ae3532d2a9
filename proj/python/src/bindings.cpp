#include "hdlforge/dataset.hpp"
#include "hdlforge/kmap.hpp"
#include "hdlforge/metrics.hpp"
#include "hdlforge/mutate.hpp"
#include "hdlforge/record_json.hpp"
#include "hdlforge/wave.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace hdlforge;

namespace {

// Records cross the boundary as JSONL lines; the Python side parses them.

std::string render_record(const std::string& kind, std::uint64_t seed, std::uint64_t index)
{
  return dump_line(sample_record(kind_from_name(kind), seed, index));
}

std::string generate(const std::filesystem::path& out, std::uint64_t seed,
                     const std::optional<std::map<std::string, std::size_t>>& counts, unsigned workers,
                     const std::optional<std::filesystem::path>& decontaminate)
{
  GenerationConfig cfg;
  cfg.master_seed = seed;
  cfg.output_path = out;
  cfg.workers = workers;
  cfg.decontamination_keys = decontaminate;
  if (counts) {
    for (auto& [k, n] : cfg.counts) {
      n = 0;
    }
    for (const auto& [name, n] : *counts) {
      if (is_family(name)) {
        for (const auto& [k, c] : split_family(name, n)) {
          cfg.counts[k] = c;
        }
      } else {
        cfg.counts[kind_from_name(name)] = n;
      }
    }
  }
  GenerationSummary s;
  {
    py::gil_scoped_release release;
    s = generate_dataset(cfg);
  }
  return summary_json(s).dump();
}

std::pair<bool, std::string> check_line(const std::string& line)
{
  const CheckResult c = check_record(parse_line(line));
  return {c.ok, c.detail};
}

std::vector<std::string> make_repair_lines(const std::vector<std::string>& lines, std::uint64_t seed,
                                           const std::optional<std::vector<std::string>>& ops)
{
  std::vector<ProblemRecord> records;
  for (const auto& l : lines) {
    records.push_back(parse_line(l));
  }
  std::vector<MutationOp> chosen = all_ops();
  if (ops) {
    chosen.clear();
    for (const auto& o : *ops) {
      chosen.push_back(op_from_name(o));
    }
  }
  std::vector<std::string> out;
  for (const auto& r : make_repairs(records, chosen, default_op_weights(), seed)) {
    out.push_back(dump_line(r));
  }
  return out;
}

std::vector<TrialTally> tallies(const std::vector<std::pair<std::int64_t, std::int64_t>>& nc)
{
  std::vector<TrialTally> t;
  for (auto [n, c] : nc) {
    t.push_back({n, c});
  }
  return t;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("kinds", [] {
    std::vector<std::string> out;
    for (auto k : all_kinds()) {
      out.push_back(kind_name(k));
    }
    return out;
  });
  m.def("render_record", &render_record, py::arg("kind"), py::arg("seed") = 1, py::arg("index") = 0);
  m.def("generate", &generate, py::arg("out"), py::arg("seed") = 1, py::arg("counts") = py::none(),
        py::arg("workers") = 1, py::arg("decontaminate") = py::none());
  m.def("check_record", &check_line, py::arg("line"));
  m.def("canonical_key", [](const std::string& line) { return canonical_key(parse_line(line)); }, py::arg("line"));
  m.def("make_repairs", &make_repair_lines, py::arg("lines"), py::arg("seed") = 1, py::arg("ops") = py::none());

  m.def(
      "sum_of_products",
      [](std::vector<std::string> vars, std::vector<std::uint32_t> ones, std::vector<std::uint32_t> dcs) {
        return render_sop(derive_sop(BooleanSpec(std::move(vars), std::move(ones), std::move(dcs))));
      },
      py::arg("vars"), py::arg("minterms"), py::arg("dont_cares") = std::vector<std::uint32_t>{});
  m.def(
      "kmap",
      [](std::vector<std::string> vars, std::vector<std::uint32_t> ones, std::vector<std::uint32_t> dcs,
         std::size_t row_vars) {
        return render(KarnaughMap::gray(BooleanSpec(std::move(vars), std::move(ones), std::move(dcs)), row_vars));
      },
      py::arg("vars"), py::arg("minterms"), py::arg("dont_cares") = std::vector<std::uint32_t>{},
      py::arg("row_vars") = 1);
  m.def(
      "waveform",
      [](std::vector<std::string> vars, std::vector<std::uint32_t> ones) {
        return render_waveform(simulate_combinational(derive_sop(BooleanSpec(std::move(vars), std::move(ones)))));
      },
      py::arg("vars"), py::arg("minterms"));

  m.def("pass_at_k", &pass_at_k, py::arg("n"), py::arg("c"), py::arg("k"));
  m.def(
      "aggregate_pass_at_k",
      [](const std::vector<std::pair<std::int64_t, std::int64_t>>& nc, std::int64_t k) {
        return aggregate_pass_at_k(tallies(nc), k);
      },
      py::arg("tallies"), py::arg("k"));
  m.def(
      "fix_rate", [](const std::vector<std::pair<std::int64_t, std::int64_t>>& nc) { return fix_rate(tallies(nc)); },
      py::arg("tallies"));
}
