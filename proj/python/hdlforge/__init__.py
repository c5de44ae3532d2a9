"""Synthetic HDL problem generation: records, checks and pass@k metrics."""

import json

from . import _core
from ._core import (
    ContractError,
    IoError,
    aggregate_pass_at_k,
    fix_rate,
    kinds,
    kmap,
    pass_at_k,
    sum_of_products,
    waveform,
)

__all__ = [
    "ContractError",
    "IoError",
    "aggregate_pass_at_k",
    "canonical_key",
    "check_record",
    "fix_rate",
    "generate",
    "kinds",
    "kmap",
    "make_repairs",
    "pass_at_k",
    "render_record",
    "sum_of_products",
    "waveform",
]


def _line(record):
    return record if isinstance(record, str) else json.dumps(record, sort_keys=True, ensure_ascii=False)


def render_record(kind, seed=1, index=0):
    """One seeded record as a dict."""
    return json.loads(_core.render_record(kind, seed, index))


def generate(out, seed=1, counts=None, workers=1, decontaminate=None):
    """Writes a JSONL dataset plus its summary file and returns the summary."""
    return json.loads(_core.generate(str(out), seed, counts, workers,
                                     None if decontaminate is None else str(decontaminate)))


def check_record(record):
    """(ok, detail) from re-reading the record's module against its semantics."""
    return _core.check_record(_line(record))


def canonical_key(record):
    return _core.canonical_key(_line(record))


def make_repairs(records, seed=1, ops=None):
    return [json.loads(l) for l in _core.make_repairs([_line(r) for r in records], seed, ops)]
