#include "oracles.hpp"

#include "hdlforge/fsm.hpp"
#include "hdlforge/problem.hpp"

#include <doctest.h>

#include <set>

#include <numeric>
#include <queue>

using namespace hdlforge;

namespace {

// Canonical form computed independently: BFS relabel, then serialize.
std::string bfs_form(const FsmGraph& g)
{
  std::vector<long> label(g.num_states(), -1);
  std::queue<std::size_t> q;
  label[0] = 0;
  q.push(0);
  long next = 1;
  std::vector<std::size_t> order;
  while (!q.empty()) {
    auto s = q.front();
    q.pop();
    order.push_back(s);
    for (std::uint32_t v = 0; v < g.num_inputs(); ++v) {
      auto t = g.next(s, v);
      if (label[t] < 0) {
        label[t] = next++;
        q.push(t);
      }
    }
  }
  std::string out = std::to_string(g.input_width()) + (g.kind() == OutputKind::moore ? "M" : "m");
  for (auto s : order) {
    out += "|";
    for (std::uint32_t v = 0; v < g.num_inputs(); ++v) {
      out += std::to_string(label[g.next(s, v)]) + ",";
      if (g.kind() == OutputKind::mealy) {
        out += g.edge_output(s, v) ? "1," : "0,";
      }
    }
    if (g.kind() == OutputKind::moore) {
      out += g.state_output(s) ? "1" : "0";
    }
  }
  return out;
}

FsmGraph random_machine(Rng& rng, int i)
{
  const std::size_t n = std::vector<std::size_t>{4, 6, 10}[i % 3];
  const int w = 1 + (i / 3) % 2;
  return i % 2 ? generate_mealy(n, w, rng) : generate_moore(n, w, rng);
}

} // namespace

TEST_CASE("generated machines: out-degree and reachability")
{
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const FsmGraph g = random_machine(rng, i);
    for (std::size_t s = 0; s < g.num_states(); ++s) {
      CHECK(g.transitions()[s].size() == g.num_inputs());
    }
    const auto a = oracle::dfs_reachable(g.transitions());
    CHECK(std::all_of(a.begin(), a.end(), [](bool b) { return b; }));
    CHECK(reachable_states(g.transitions()) == a);
    // outputs are not constant
    const auto& o = g.outputs();
    CHECK(std::set<std::uint8_t>(o.begin(), o.end()).size() == 2);
  }
}

TEST_CASE("trees respect the child limit")
{
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    const auto parents = random_tree_parents(10, 2, rng, 10000);
    std::vector<int> kids(10, 0);
    for (std::size_t v = 1; v < 10; ++v) {
      ++kids[parents[v]];
    }
    CHECK(*std::max_element(kids.begin(), kids.end()) <= 2);
    // every node climbs to the root
    for (std::size_t v = 1; v < 10; ++v) {
      std::size_t u = v;
      int steps = 0;
      while (u != 0 && steps < 11) {
        u = parents[u];
        ++steps;
      }
      CHECK(u == 0);
    }
  }
}

TEST_CASE("state renaming keeps the canonical key")
{
  Rng rng(33);
  for (int i = 0; i < 200; ++i) {
    const FsmGraph g = random_machine(rng, i);
    std::vector<std::size_t> perm(g.num_states());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> tail(perm.begin() + 1, perm.end());
    rng.shuffle(tail);
    std::copy(tail.begin(), tail.end(), perm.begin() + 1);
    const FsmGraph p = permute_states(g, perm);
    for (std::size_t s = 0; s < g.num_states(); ++s) {
      for (std::uint32_t v = 0; v < g.num_inputs(); ++v) {
        CHECK(p.next(perm[s], v) == perm[g.next(s, v)]);
      }
    }
    CHECK(bfs_form(p) == bfs_form(g));
    CHECK(fsm_key_string(p) == fsm_key_string(g));
  }
}

TEST_CASE("a changed transition changes the key")
{
  Rng rng(34);
  for (int i = 0; i < 100; ++i) {
    const FsmGraph g = random_machine(rng, i);
    auto next = g.transitions();
    next[0][0] = (next[0][0] + 1) % g.num_states();
    const auto seen = oracle::dfs_reachable(next);
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
      continue;
    }
    const FsmGraph h(g.state_names(), g.input_width(), next, g.kind(), g.outputs());
    CHECK(bfs_form(h) != bfs_form(g));
    CHECK(fsm_key_string(h) != fsm_key_string(g));
  }
}

TEST_CASE("construction rejects invalid machines")
{
  CHECK_THROWS_AS(FsmGraph({"A", "B"}, 1, {{0, 0}, {1, 0}}, OutputKind::moore, {0, 1}), ContractError);
  CHECK_THROWS_AS(FsmGraph({"A", "B"}, 1, {{1}, {0, 1}}, OutputKind::moore, {0, 1}), ContractError);
  CHECK_THROWS_AS(FsmGraph({"A", "B"}, 1, {{1, 0}, {0, 1}}, OutputKind::mealy, {0, 1}), ContractError);
}

TEST_CASE("step: Moore reads the next state, Mealy the edge")
{
  const FsmGraph moore({"A", "B"}, 1, {{0, 1}, {0, 1}}, OutputKind::moore, {0, 1});
  CHECK(step(moore, 0, 1) == StepResult{1, true});
  const FsmGraph mealy({"A", "B"}, 1, {{0, 1}, {0, 1}}, OutputKind::mealy, {1, 0, 0, 0});
  CHECK(step(mealy, 0, 0) == StepResult{0, true});
  CHECK(step(mealy, 0, 1) == StepResult{1, false});
}

TEST_CASE("encodings")
{
  CHECK(binary_width(5) == 3);
  CHECK(binary_width(4) == 2);
  const auto oh = one_hot_encoding(4);
  CHECK(oh.width == 4);
  CHECK(oh.codes == std::vector<std::uint32_t>{1, 2, 4, 8});
  CHECK(binary_encoding(3).codes == std::vector<std::uint32_t>{0, 1, 2});
  CHECK_THROWS_AS(explicit_encoding({1, 1}, 2), ContractError);
}

TEST_CASE("output logic lists exactly the output-1 sites")
{
  Rng rng(35);
  for (int i = 0; i < 100; ++i) {
    const FsmGraph g = random_machine(rng, i);
    const OutputLogic ol = derive_output_logic(g);
    for (std::size_t s = 0; s < g.num_states(); ++s) {
      for (std::uint32_t v = 0; v < g.num_inputs(); ++v) {
        const bool want = g.kind() == OutputKind::moore ? g.state_output(s) : g.edge_output(s, v);
        CHECK(evaluate_output(ol, s, v) == want);
      }
    }
  }
}

TEST_CASE("edge list text")
{
  const FsmGraph g({"A", "B"}, 1, {{0, 1}, {0, 1}}, OutputKind::moore, {0, 1});
  CHECK(render_edge_list(g, {}) == "// A (out=0) —in=0—> A\n// A (out=0) —in=1—> B\n"
                                   "// B (out=1) —in=0—> A\n// B (out=1) —in=1—> B\n");
  CHECK(input_value_label(1, 2) == "01");
}
