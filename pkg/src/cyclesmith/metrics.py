"""Cost engines and closed-form worst-case bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict
from pathlib import Path

from .circuit import MCT, Circuit, Not, Swap
from .perm import ECKind


class CostModelError(ValueError):
    pass


@dataclass(frozen=True)
class CostModel:
    """Quantum cost per multiple-control Toffoli, keyed by control count.

    Counts above the table use ``slope * c + intercept`` when ``extrapolate``
    is set.  An MCT whose controls are all negative pays
    ``all_negative_penalty`` on top.
    """

    qc_by_controls: dict[int, int] = field(default_factory=lambda: {0: 1, 1: 1, 2: 5, 3: 13})
    all_negative_penalty: int = 2
    extrapolate: tuple[int, int] | None = (12, -22)

    def __post_init__(self):
        table = {int(k): int(v) for k, v in self.qc_by_controls.items()}
        object.__setattr__(self, "qc_by_controls", table)
        for c in (0, 1, 2):
            if c not in table:
                raise CostModelError(f"cost table must define {c} controls")
        top = max(table)
        seq = [self.controls_cost(c) for c in range(top + 2 if self.extrapolate else top + 1)]
        if any(b < a for a, b in zip(seq, seq[1:])):
            raise CostModelError("cost must be non-decreasing in the control count")

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.qc_by_controls.items())), self.all_negative_penalty, self.extrapolate))

    def controls_cost(self, c: int) -> int:
        if c in self.qc_by_controls:
            return self.qc_by_controls[c]
        if self.extrapolate is None or c < 0:
            raise CostModelError(f"no cost for {c} controls")
        slope, intercept = self.extrapolate
        return slope * c + intercept

    def gate_cost(self, g) -> int:
        if isinstance(g, Not):
            return self.controls_cost(0)
        if isinstance(g, Swap):
            return 3 * self.controls_cost(1)
        c = g.num_controls
        cost = self.controls_cost(c)
        if c and not any(p for _, p in g.controls):
            cost += self.all_negative_penalty
        return cost

    @classmethod
    def parse(cls, text: str) -> "CostModel":
        table: dict[int, int] = {}
        penalty = 0
        extrapolate = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = dict(_kv(tok, lineno) for tok in line.split() if tok != "extrapolate")
            try:
                if line.startswith("extrapolate"):
                    extrapolate = (int(fields["slope"]), int(fields["intercept"]))
                elif "all_negative_penalty" in fields:
                    penalty = int(fields["all_negative_penalty"])
                else:
                    table[int(fields["controls"])] = int(fields["cost"])
            except (KeyError, ValueError) as exc:
                raise CostModelError(f"line {lineno}: cannot read {raw!r}") from exc
        return cls(table, penalty, extrapolate)

    @classmethod
    def load(cls, path) -> "CostModel":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        lines = [f"controls={k} cost={v}" for k, v in sorted(self.qc_by_controls.items())]
        lines.append(f"all_negative_penalty={self.all_negative_penalty}")
        if self.extrapolate:
            lines.append("extrapolate slope={} intercept={}".format(*self.extrapolate))
        return "\n".join(lines) + "\n"


def _kv(tok: str, lineno: int) -> tuple[str, str]:
    if "=" not in tok:
        raise CostModelError(f"line {lineno}: expected key=value, got {tok!r}")
    k, v = tok.split("=", 1)
    return k, v


DEFAULT_COST_MODEL = CostModel()


@dataclass(frozen=True)
class MetricsReport:
    qc: int
    two_qubit: int
    one_qubit: int
    interaction: int
    depth: int
    gate_count: int
    width: int
    main_lines: int

    def as_dict(self) -> dict:
        return asdict(self)


def quantum_cost(c: Circuit, model: CostModel = DEFAULT_COST_MODEL) -> int:
    return sum(model.gate_cost(g) for g in c.gates)


def two_qubit_cost(c: Circuit) -> tuple[int, int]:
    """``(two_qubit, one_qubit)``; a q-line Toffoli (q >= 3) counts 10q - 25."""
    two = one = 0
    for g in c.gates:
        if isinstance(g, Not):
            one += 1
        elif isinstance(g, Swap):
            two += 3
        elif g.num_controls == 0:
            one += 1
        elif g.num_controls == 1:
            two += 1
        else:
            two += 10 * (g.num_controls + 1) - 25
    return two, one


def interaction_cost(c: Circuit) -> int:
    """Adjacency deficit: sum over controls of ``|control - target| - 1``."""
    total = 0
    for g in c.gates:
        if isinstance(g, Swap):
            total += abs(g.a - g.b) - 1
        elif isinstance(g, MCT):
            total += sum(abs(l - g.target) - 1 for l, _ in g.controls)
    return total


def gate_levels(c: Circuit, staged: bool = True) -> list[int]:
    """ASAP level of every gate (1-based), without reordering."""
    ready = [0] * c.width
    floor = 0
    boundaries = set(c.stages) if staged else set()
    levels = []
    top = 0
    for i, g in enumerate(c.gates):
        if i in boundaries:
            floor = top
        lines = g.lines
        lvl = max(floor, max(ready[l] for l in lines)) + 1
        for l in lines:
            ready[l] = lvl
        levels.append(lvl)
        top = max(top, lvl)
    return levels


def depth(c: Circuit, staged: bool = True) -> int:
    """Greedy level compaction depth.

    With ``staged`` (default) a gate never starts before every gate of the
    previous stage has finished.
    """
    levels = gate_levels(c, staged)
    return max(levels) if levels else 0


def measure(c: Circuit, model: CostModel = DEFAULT_COST_MODEL) -> MetricsReport:
    two, one = two_qubit_cost(c)
    return MetricsReport(
        qc=quantum_cost(c, model), two_qubit=two, one_qubit=one,
        interaction=interaction_cost(c), depth=depth(c), gate_count=len(c),
        width=c.width, main_lines=c.main_lines,
    )


# Worst-case cost polynomials per elementary-cycle kind:
# (a, b) means a*n + b; LNN rows are (a, b, c) for a*n^2 + b*n + c.
EC_TOTAL = {
    ECKind.C2: (28, -60), ECKind.C22: (32, -66), ECKind.C3: (30, -80),
    ECKind.C33: (36, -60), ECKind.C4: (56, -130), ECKind.C42: (48, -176),
    ECKind.C44: (52, -112), ECKind.C5: (58, -140), ECKind.C55: (56, -90),
}
EC_TOTAL_LNN = {
    ECKind.C2: (145, -666, 772), ECKind.C22: (147, -791, 1100),
    ECKind.C3: (146, -804, 1068), ECKind.C33: (149, -907, 1474),
    ECKind.C4: (291, -1463, 1868), ECKind.C42: (221, -1615, 2483),
    ECKind.C44: (223, -1573, 2678), ECKind.C5: (292, -1537, 2057),
    ECKind.C55: (225, -319, 2790),
}
EC_KAPPA0 = {
    ECKind.C2: (24, -64), ECKind.C22: (24, -88), ECKind.C3: (24, -88),
    ECKind.C33: (24, -112), ECKind.C4: (48, -152), ECKind.C42: (36, -204),
    ECKind.C44: (36, -204), ECKind.C5: (48, -166), ECKind.C55: (36, -204),
}
EC_PI = {
    ECKind.C2: (2, 2), ECKind.C22: (4, 11), ECKind.C3: (3, 4),
    ECKind.C33: (6, 26), ECKind.C4: (4, 11), ECKind.C42: (6, 14),
    ECKind.C44: (8, 46), ECKind.C5: (5, 13), ECKind.C55: (10, 57),
}


class NTooSmall(ValueError):
    pass


def kind_span(kind: ECKind) -> int:
    """Fewest lines a kind's window needs."""
    from .ectable import KIND_OFFSETS  # local: ectable imports perm only
    lo, hi = min(KIND_OFFSETS[kind]), max(KIND_OFFSETS[kind])
    return hi - lo + 1


def ec_cost_formula(kind: ECKind, n: int, lnn: bool = False) -> int:
    if n < kind_span(kind):
        raise NTooSmall(f"{kind.tag} needs at least {kind_span(kind)} lines, got {n}")
    if lnn:
        a, b, c = EC_TOTAL_LNN[kind]
        return a * n * n + b * n + c
    a, b = EC_TOTAL[kind]
    return a * n + b


def worst_case_bound(n: int, lnn: bool = False) -> float:
    """Closed-form worst-case elementary-gate count for any n-line permutation."""
    if lnn:
        return 42.4 * n * n * 2 ** n + 11.3 * n ** 3 + 288.2 * n * n
    return 9.4 * n * 2 ** n - 18.8 * 2 ** n + 2.8 * n * n + 43.5 * n - 152.1


def repeated_terms_bound(n: int) -> float:
    """Maximum count of repeated terms created when splitting long cycles."""
    if n < 3:
        raise ValueError("defined for n >= 3")
    return 2 ** (n - 2) + math.log((2 ** n - 5) / 4, 5) - 9 / 4
