import json

import pytest

import hdlforge


def test_kinds():
    assert hdlforge.kinds()[0] == "kmap"
    assert "repair" in hdlforge.kinds()


def test_render_and_check():
    r = hdlforge.render_record("fsm_mealy", seed=4, index=1)
    assert r["kind"] == "fsm_mealy"
    assert r["solution"].count("endmodule") == 1
    ok, detail = hdlforge.check_record(r)
    assert ok, detail
    assert hdlforge.canonical_key(r) == r["canonical_key"]
    assert hdlforge.render_record("fsm_mealy", seed=4, index=1) == r


def test_tampered_record_fails():
    r = hdlforge.render_record("truthtable", seed=2, index=0)
    r["solution"] = r["solution"].replace("assign f = ", "assign f = ~")
    ok, _ = hdlforge.check_record(r)
    assert not ok


def test_boolean_helpers():
    assert hdlforge.sum_of_products(["a", "b", "c"], [1, 2, 5], [7]) == \
        "(~a & ~b & c) | (~a & b & ~c) | (a & ~b & c)"
    grid = hdlforge.kmap(["a", "b", "c"], [1, 2, 5], [7])
    assert grid.splitlines()[1].split()[1] == "a"
    assert hdlforge.waveform(["a", "b"], [3]).startswith("// time")
    with pytest.raises(ValueError):
        hdlforge.sum_of_products(["a", "b"], [9])


def test_generate_and_repair(tmp_path):
    out = tmp_path / "d.jsonl"
    s = hdlforge.generate(out, seed=3, counts={"kmap": 5, "fsm_family": 3}, workers=2)
    assert s["total"] == 8 and s["complete"]
    lines = out.read_text().splitlines()
    assert len(lines) == 8
    records = [json.loads(l) for l in lines]
    assert len({r["canonical_key"] for r in records}) == 8
    repairs = hdlforge.make_repairs(records, seed=9, ops=["sop_literal_flip"])
    assert repairs and all(r["meta"]["mutation"]["op"] == "sop_literal_flip" for r in repairs)
    assert all(hdlforge.check_record(r)[0] for r in repairs)
    assert (tmp_path / "d.jsonl.summary.json").exists()
    with pytest.raises(OSError):
        hdlforge.generate(tmp_path / "no" / "dir" / "x.jsonl", counts={"kmap": 1})


def test_metrics():
    assert hdlforge.pass_at_k(20, 20, 5) == 1.0
    assert hdlforge.pass_at_k(20, 0, 5) == 0.0
    assert abs(hdlforge.pass_at_k(10, 5, 1) - 0.5) < 1e-15
    assert hdlforge.fix_rate([(10, 1)]) == 0.1
    assert hdlforge.aggregate_pass_at_k([(4, 4), (4, 0)], 2) == 0.5
    with pytest.raises(ValueError):
        hdlforge.pass_at_k(3, 1, 4)
