"""Synthesis reports: metrics, bounds and published reference figures.

A report serializes as flat ``key: value`` text where every value is a
JSON scalar, so the text form and the JSON twin carry the same data and
both round-trip exactly.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .circuit import Circuit
from .metrics import DEFAULT_COST_MODEL, CostModel, measure, worst_case_bound

REFERENCE_TAG = "paper-reference"

# Published results per benchmark and structure (R regular, P parallel).
# qc/two_qubit/depth without LNN; *_naive and *_reordered are the LNN
# figures after naive SWAP insertion and after qubit reordering.
REFERENCE: dict[tuple[str, str], dict[str, int]] = {
    ("hwb8", "R"): dict(qc=6686, two_qubit=4468, depth=5622, qc_naive=36684, depth_naive=32313,
                        qc_reordered=31553, depth_reordered=20940),
    ("hwb8", "P"): dict(ancillae=16, qc=6964, two_qubit=4730, depth=1999, qc_naive=46788,
                        depth_naive=14758, qc_reordered=36045, depth_reordered=9248),
    ("hwb9", "R"): dict(qc=14474, two_qubit=10382, depth=12054, qc_naive=87310, depth_naive=74676,
                        qc_reordered=77860, depth_reordered=46958),
    ("hwb9", "P"): dict(ancillae=18, qc=15262, two_qubit=10764, depth=4351, qc_naive=100228,
                        depth_naive=31810, qc_reordered=87389, depth_reordered=19597),
    ("hwb10", "R"): dict(qc=35298, two_qubit=23584, depth=29751, qc_naive=279496,
                         depth_naive=248524, qc_reordered=202903, depth_reordered=112623),
    ("hwb10", "P"): dict(ancillae=20, qc=35890, two_qubit=23874, depth=10062, qc_naive=291014,
                         depth_naive=89021, qc_reordered=212616, depth_reordered=41479),
    ("hwb11", "R"): dict(qc=86864, two_qubit=65260, depth=71418, qc_naive=682182,
                         depth_naive=605294, qc_reordered=562817, depth_reordered=297986),
    ("hwb11", "P"): dict(ancillae=22, qc=87234, two_qubit=65442, depth=23866, qc_naive=685944,
                         depth_naive=205472, qc_reordered=569876, depth_reordered=104372),
    ("nth_prime7", "R"): dict(qc=2888, two_qubit=2296, depth=2473),
    ("nth_prime7", "P"): dict(ancillae=14, qc=3100, two_qubit=2398, depth=1523),
    ("nth_prime8", "R"): dict(qc=7016, two_qubit=5624, depth=5852),
    ("nth_prime9", "R"): dict(qc=16820, two_qubit=11907, depth=14285),
    ("nth_prime9", "P"): dict(ancillae=18, qc=17507, two_qubit=12053, depth=13787),
    ("nth_prime10", "R"): dict(qc=38843, two_qubit=27743, depth=31924),
    ("nth_prime10", "P"): dict(ancillae=20, qc=39317, two_qubit=27933, depth=12119),
    ("nth_prime11", "R"): dict(qc=92863, two_qubit=67401, depth=75668),
    ("nth_prime11", "P"): dict(ancillae=22, qc=93389, two_qubit=67677, depth=46892),
}

# Elementary cycles per register after distribution, three registers.
REFERENCE_BINS: dict[str, tuple[int, int, int]] = {
    "hwb8": (26, 28, 26), "hwb9": (43, 43, 44), "hwb10": (101, 103, 102),
    "hwb11": (186, 186, 186), "nth_prime7": (19, 6, 8), "nth_prime9": (122, 4, 2),
    "nth_prime10": (96, 85, 75), "nth_prime11": (315, 36, 159),
}


def _flatten(obj: Any, prefix: str = "") -> dict[str, Any]:
    out: dict[str, Any] = {}
    if isinstance(obj, dict):
        if not obj and prefix:
            out[prefix] = {}
        for k, v in obj.items():
            if "." in str(k):
                raise ValueError(f"report keys may not contain '.': {k!r}")
            out.update(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out[prefix] = []
        for i, v in enumerate(obj):
            out.update(_flatten(v, f"{prefix}.{i}"))
    else:
        out[prefix] = obj
    return out


def _unflatten(flat: dict[str, Any]) -> dict[str, Any]:
    root: dict[str, Any] = {}
    for key, value in flat.items():
        parts = key.split(".")
        node = root
        for p in parts[:-1]:
            node = node.setdefault(p, {})
        node[parts[-1]] = value

    def fix(node):
        if isinstance(node, dict):
            node = {k: fix(v) for k, v in node.items()}
            if node and all(k.isdigit() for k in node):
                idx = sorted(node, key=int)
                if [int(k) for k in idx] == list(range(len(idx))):
                    return [node[k] for k in idx]
        return node

    return fix(root)


@dataclass
class ReportDocument:
    metrics: dict[str, int]
    meta: dict[str, Any] = field(default_factory=dict)
    bounds: dict[str, Any] = field(default_factory=dict)
    reference: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {"metrics": self.metrics, "meta": self.meta, "bounds": self.bounds,
                "reference": self.reference}

    def to_text(self) -> str:
        flat = _flatten(self.as_dict())
        return "".join(f"{k}: {json.dumps(v, sort_keys=True)}\n" for k, v in flat.items())

    @classmethod
    def from_text(cls, text: str) -> "ReportDocument":
        flat = {}
        for raw in text.splitlines():
            if not raw.strip():
                continue
            key, _, value = raw.partition(": ")
            flat[key] = json.loads(value)
        return cls._from_dict(_unflatten(flat))

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls._from_dict(json.loads(text))

    @classmethod
    def _from_dict(cls, d: dict[str, Any]) -> "ReportDocument":
        return cls(d.get("metrics", {}), d.get("meta", {}), d.get("bounds", {}), d.get("reference", {}))


def report(c: Circuit, model: CostModel = DEFAULT_COST_MODEL, *, mode: str = "R",
           benchmark: str | None = None, lnn: bool = False, bins: list[dict] | None = None,
           extra: dict[str, Any] | None = None) -> ReportDocument:
    """Collect metrics, worst-case bound compliance and any known reference row."""
    m = measure(c, model)
    meta: dict[str, Any] = {"mode": mode, "lnn": lnn, "benchmark": benchmark}
    if bins is not None:
        meta["bins"] = bins
    if extra:
        meta.update(extra)
    bounds: dict[str, Any] = {}
    n = c.main_lines
    if n >= 2:
        bound = worst_case_bound(n, lnn)
        bounds = {"n": n, "worst_case_bound": bound, "qc_within_bound": m.qc <= bound}
    ref: dict[str, Any] = {}
    if benchmark is not None and (benchmark, mode) in REFERENCE:
        ref = {"tag": REFERENCE_TAG, **REFERENCE[(benchmark, mode)]}
        if mode == "P" and benchmark in REFERENCE_BINS:
            ref["bin_cycles"] = list(REFERENCE_BINS[benchmark])
    return ReportDocument(m.as_dict(), meta, bounds, ref)
