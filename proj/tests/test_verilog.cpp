#include "fixture_designs.hpp"

#include "hdlforge/hdl_check.hpp"
#include "hdlforge/verilog.hpp"
#include "hdlforge/vlog.hpp"

#include <doctest.h>

using namespace hdlforge;

TEST_CASE("module header layout")
{
  CHECK(emit_header(combinational_ports({"a", "b"}, "f")) ==
        "module top_module(\n    input a,\n    input b,\n    output f\n);");
  CHECK(emit_header({{"x", PortDir::input, 2, false}, {"z", PortDir::output, 1, true}}, "m", true) ==
        "module m (\n    input [1:0] x,\n    output reg z\n);");
}

TEST_CASE("expression pieces")
{
  CHECK(input_condition("in", 1, 1) == "in");
  CHECK(input_condition("in", 0, 1) == "~in");
  CHECK(input_condition("x", 1, 2) == "x == 2'b01");
}

TEST_CASE("combinational emission passes its own check and fails a wrong one")
{
  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + i % 4;
    const BooleanSpec spec = sample_spec(n, default_var_names(n), rng);
    const SopExpr sop = derive_sop(spec);
    const auto m = emit_combinational(sop, "top_module", combinational_ports(spec.vars(), "out"));
    CHECK(check_combinational(m.text, sop));
    CHECK(check_combinational(m.text, spec));
    SopExpr other = sop;
    other.terms.push_back(minterm_product(spec.num_rows() - 1, n));
    if (!spec.is_minterm(spec.num_rows() - 1)) {
      CHECK_FALSE(check_combinational(m.text, other));
    }
  }
}

TEST_CASE("state machine emission passes the fidelity check")
{
  Rng rng(42);
  for (int i = 0; i < 60; ++i) {
    const std::size_t n = std::vector<std::size_t>{4, 6, 10}[i % 3];
    const int w = 1 + (i / 3) % 2;
    const bool mealy = i % 2;
    const FsmGraph g = mealy ? generate_mealy(n, w, rng) : generate_moore(n, w, rng);
    FsmDesign d{g, i % 4 < 2 ? binary_encoding(n) : one_hot_encoding(n),
                {i % 3 ? ResetKind::sync_high : ResetKind::async_high, i % 3 ? "reset" : "areset", 0}, {}};
    d.emit.dialect = i % 5 ? Dialect::always_comb : Dialect::always_star;
    CHECK(check_fsm(emit_fsm(d).text, d));
    if (!mealy && d.enc.kind == EncodingKind::one_hot) {
      FsmDesign c = d;
      c.reset = {};
      c.emit.templ = FsmTemplate::onehot_comb;
      c.emit.next_name = "next_state";
      CHECK(check_fsm(emit_fsm(c).text, c));
    }
  }
}

TEST_CASE("emission contracts")
{
  FsmDesign d = fixtures::mealy_four();
  d.reset = {};
  CHECK_THROWS_AS(emit_fsm(d), ContractError);
  FsmDesign b = fixtures::onehot_four();
  b.enc = binary_encoding(4);
  b.emit.templ = FsmTemplate::onehot_comb;
  CHECK_THROWS_AS(emit_fsm(b), ContractError);
}

TEST_CASE("interpreter: assigns, case, clocked updates")
{
  const char* src = R"(
module t (
    input clk,
    input rst,
    input [1:0] sel,
    input a,
    output reg [1:0] q,
    output y
);
    parameter S = 2'b10;
    reg [1:0] n;
    always @(*) begin
        case (sel)
            2'b00: n = 2'b01;
            S: n = {a, ~a};
            default: n = q;
        endcase
    end
    always @(posedge clk) begin
        if (rst) q <= 2'b00;
        else q <= n;
    end
    assign y = (q == S) ? a : 1'b0;
endmodule
)";
  vlog::Simulator sim(vlog::parse_module(src));
  CHECK(sim.param("S")->bits == 2);
  CHECK(sim.get("q").has_x());
  sim.set("rst", 1);
  sim.set("sel", 0);
  sim.set("a", 1);
  sim.posedge("clk");
  CHECK(sim.get("q") == vlog::Value::of(0, 2));
  sim.set("rst", 0);
  sim.posedge("clk");
  CHECK(sim.get("q") == vlog::Value::of(1, 2));
  sim.set("sel", 2);
  sim.posedge("clk");
  CHECK(sim.get("q") == vlog::Value::of(2, 2));
  sim.settle();
  CHECK(sim.get("y") == vlog::Value::of(1, 1));
  sim.set("sel", 3);
  sim.posedge("clk");
  CHECK(sim.get("q") == vlog::Value::of(2, 2));
}

TEST_CASE("interpreter: unknowns propagate through logic")
{
  vlog::Simulator sim(vlog::parse_module("module t(input a, input b, output y, output z);\n"
                                         "assign y = a & b;\nassign z = a | b;\nendmodule"));
  sim.set("a", vlog::Value::x(1));
  sim.set("b", 0);
  sim.settle();
  CHECK(sim.get("y") == vlog::Value::of(0, 1));
  CHECK(sim.get("z").has_x());
  sim.set("b", 1);
  sim.settle();
  CHECK(sim.get("y").has_x());
  CHECK(sim.get("z") == vlog::Value::of(1, 1));
}

TEST_CASE("interpreter rejects text outside the subset")
{
  CHECK_THROWS_AS(vlog::parse_module("module t(input a, output y);\nassign y = a +;\nendmodule"), vlog::ParseError);
  CHECK_THROWS_AS(vlog::parse_module("no module here"), vlog::ParseError);
}
