"""Gates, circuits and exhaustive classical simulation.

Line ``i`` holds bit ``2**i`` of a term value (line 0 is the least
significant bit).  Circuits act left to right; lines with index
``>= main_lines`` are ancillae and start at zero.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .perm import Permutation

POSITIVE = True
NEGATIVE = False

EXHAUSTIVE_LIMIT = 20
DEFAULT_SAMPLES = 4096


class WidthTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class MCT:
    """Multiple-control Toffoli with mixed-polarity controls.

    ``controls`` is a tuple of ``(line, polarity)`` pairs sorted by line;
    polarity ``True`` fires on 1, ``False`` fires on 0.
    """

    controls: tuple[tuple[int, bool], ...]
    target: int

    def __post_init__(self):
        ctrls = tuple(sorted((int(l), bool(p)) for l, p in self.controls))
        object.__setattr__(self, "controls", ctrls)
        lines = [l for l, _ in ctrls]
        if len(set(lines)) != len(lines):
            raise ValueError(f"duplicate control line in {ctrls}")
        if self.target in lines:
            raise ValueError("target line is also a control")
        if self.target < 0 or any(l < 0 for l in lines):
            raise ValueError("negative line index")

    @property
    def lines(self) -> tuple[int, ...]:
        return tuple(sorted([l for l, _ in self.controls] + [self.target]))

    @property
    def control_lines(self) -> tuple[int, ...]:
        return tuple(l for l, _ in self.controls)

    @property
    def num_controls(self) -> int:
        return len(self.controls)

    def masks(self) -> tuple[int, int]:
        mask = value = 0
        for line, pol in self.controls:
            mask |= 1 << line
            if pol:
                value |= 1 << line
        return mask, value

    def relabel(self, mapping) -> "MCT":
        return MCT(tuple((mapping[l], p) for l, p in self.controls), mapping[self.target])


@dataclass(frozen=True)
class Swap:
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("swap needs two distinct lines")
        if self.a < 0 or self.b < 0:
            raise ValueError("negative line index")

    @property
    def lines(self) -> tuple[int, ...]:
        return tuple(sorted((self.a, self.b)))

    def relabel(self, mapping) -> "Swap":
        return Swap(mapping[self.a], mapping[self.b])


@dataclass(frozen=True)
class Not:
    target: int

    def __post_init__(self):
        if self.target < 0:
            raise ValueError("negative line index")

    @property
    def lines(self) -> tuple[int, ...]:
        return (self.target,)

    def relabel(self, mapping) -> "Not":
        return Not(mapping[self.target])


Gate = Union[MCT, Swap, Not]


def cnot(control: int, target: int, polarity: bool = POSITIVE) -> MCT:
    return MCT(((control, polarity),), target)


def toffoli(c1: int, c2: int, target: int, p1: bool = POSITIVE, p2: bool = POSITIVE) -> MCT:
    return MCT(((c1, p1), (c2, p2)), target)


def mct(controls: Iterable[int | tuple[int, bool]], target: int) -> MCT:
    """Build an MCT; bare ints are positive controls."""
    ctrls = [(c, POSITIVE) if isinstance(c, int) else c for c in controls]
    return MCT(tuple(ctrls), target)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over ``width`` lines.

    ``stages`` lists gate indices at which a new stage begins; depth
    leveling never lets a gate rise above a stage boundary.  ``labels``
    carries ``(start, stop, name)`` spans for reporting and is ignored by
    equality.
    """

    width: int
    gates: tuple[Gate, ...] = ()
    main_lines: int | None = None
    stages: tuple[int, ...] = ()
    labels: tuple[tuple[int, int, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.main_lines is None:
            object.__setattr__(self, "main_lines", self.width)
        if self.width < 1:
            raise ValueError("circuit needs at least one line")
        if not 0 < self.main_lines <= self.width:
            raise ValueError("main_lines must be in [1, width]")
        for g in self.gates:
            if max(g.lines) >= self.width:
                raise ValueError(f"gate {g} does not fit {self.width} lines")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.width != self.width:
            raise ValueError("circuit widths differ")
        return concat([self, other])

    @property
    def ancillae(self) -> int:
        return self.width - self.main_lines

    def with_gates(self, gates: Sequence[Gate]) -> "Circuit":
        return Circuit(self.width, tuple(gates), self.main_lines)


def concat(parts: Sequence[Circuit], width: int | None = None,
           main_lines: int | None = None, staged: bool = False) -> Circuit:
    """Concatenate circuits; ``staged`` puts a stage boundary between parts."""
    if width is None:
        width = max(p.width for p in parts) if parts else 1
    gates: list[Gate] = []
    stages: list[int] = []
    labels = []
    for part in parts:
        if part.width > width:
            raise ValueError("part is wider than the result")
        if staged and gates:
            stages.append(len(gates))
        offset = len(gates)
        stages.extend(offset + s for s in part.stages)
        labels.extend((offset + a, offset + b, name) for a, b, name in part.labels)
        gates.extend(part.gates)
    if main_lines is None:
        main_lines = parts[0].main_lines if parts else width
    stages = sorted(set(s for s in stages if 0 < s < len(gates)))
    return Circuit(width, tuple(gates), main_lines, tuple(stages), tuple(labels))


def shift_lines(c: Circuit, offset: int, width: int, main_lines: int | None = None) -> Circuit:
    mapping = {i: i + offset for i in range(c.width)}
    return Circuit(width, tuple(g.relabel(mapping) for g in c.gates),
                   width if main_lines is None else main_lines, c.stages, c.labels)


def apply_gate(g: Gate, t: int) -> int:
    if isinstance(g, MCT):
        mask, value = g.masks()
        return t ^ (1 << g.target) if t & mask == value else t
    if isinstance(g, Not):
        return t ^ (1 << g.target)
    if isinstance(g, Swap):
        if ((t >> g.a) ^ (t >> g.b)) & 1:
            return t ^ ((1 << g.a) | (1 << g.b))
        return t
    raise TypeError(f"unknown gate {g!r}")


def simulate(c: Circuit, t: int) -> int:
    for g in c.gates:
        t = apply_gate(g, t)
    return t


def simulate_array(gates: Iterable[Gate], terms: np.ndarray) -> np.ndarray:
    """Vectorized simulation of many input terms at once."""
    state = np.array(terms, dtype=np.int64, copy=True)
    one = np.int64(1)
    for g in gates:
        if isinstance(g, MCT):
            mask, value = g.masks()
            if mask == 0:
                state ^= one << g.target
            else:
                hit = (state & np.int64(mask)) == np.int64(value)
                state ^= hit.astype(np.int64) << g.target
        elif isinstance(g, Not):
            state ^= one << g.target
        elif isinstance(g, Swap):
            diff = ((state >> g.a) ^ (state >> g.b)) & one
            state ^= (diff << g.a) | (diff << g.b)
        else:
            raise TypeError(f"unknown gate {g!r}")
    return state


def circuit_permutation(c: Circuit, limit: int = EXHAUSTIVE_LIMIT) -> Permutation:
    if c.width > limit:
        raise WidthTooLarge(f"width {c.width} exceeds exhaustive limit {limit}")
    out = simulate_array(c.gates, np.arange(1 << c.width, dtype=np.int64))
    return Permutation(c.width, tuple(out.tolist()))


def invert(c: Circuit) -> Circuit:
    """Reverse the gate order; every gate here is self-inverse."""
    n = len(c.gates)
    stages = tuple(sorted(n - s for s in c.stages))
    return Circuit(c.width, tuple(reversed(c.gates)), c.main_lines, stages)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    counterexample: int | None = None
    expected: int | None = None
    actual: int | None = None
    checked: int = 0
    exhaustive: bool = True

    def __bool__(self) -> bool:
        return self.ok


def default_seed() -> int:
    return int(os.environ.get("CYCLESMITH_SEED", "0"))


def verify(c: Circuit, p: Permutation, limit: int = EXHAUSTIVE_LIMIT,
           samples: int = DEFAULT_SAMPLES, seed: int | None = None) -> VerifyResult:
    """Check ``c`` realizes ``p`` on the main register.

    Ancillae start at zero and may end holding garbage.  Inputs are
    enumerated when ``main_lines <= limit``; otherwise ``samples`` inputs
    are drawn with ``seed`` (default: ``$CYCLESMITH_SEED`` or 0).
    """
    if p.lines != c.main_lines:
        raise ValueError(f"permutation has {p.lines} lines, circuit has {c.main_lines} main lines")
    size = 1 << c.main_lines
    exhaustive = c.main_lines <= limit
    if exhaustive:
        inputs = np.arange(size, dtype=np.int64)
    else:
        rng = np.random.default_rng(default_seed() if seed is None else seed)
        inputs = rng.integers(0, size, size=samples, dtype=np.int64)
    out = simulate_array(c.gates, inputs) & np.int64(size - 1)
    expected = p.as_array()[inputs]
    bad = np.nonzero(out != expected)[0]
    if bad.size:
        i = int(bad[0])
        return VerifyResult(False, int(inputs[i]), int(expected[i]), int(out[i]),
                            len(inputs), exhaustive)
    return VerifyResult(True, checked=len(inputs), exhaustive=exhaustive)


def gate_lines(g: Gate) -> tuple[int, ...]:
    return g.lines


def random_circuit(width: int, gates: int, rng: np.random.Generator,
                   max_controls: int | None = None, swaps: bool = True) -> Circuit:
    """Random MCT/NOT/SWAP circuit, mostly for property tests."""
    out: list[Gate] = []
    cap = width - 1 if max_controls is None else min(max_controls, width - 1)
    for _ in range(gates):
        r = rng.random()
        if swaps and width > 1 and r < 0.15:
            a, b = rng.choice(width, size=2, replace=False)
            out.append(Swap(int(a), int(b)))
        elif r < 0.25:
            out.append(Not(int(rng.integers(width))))
        else:
            k = int(rng.integers(0, cap + 1))
            chosen = rng.choice(width, size=k + 1, replace=False)
            ctrls = tuple((int(l), bool(rng.integers(2))) for l in chosen[1:])
            out.append(MCT(ctrls, int(chosen[0])))
    return Circuit(width, tuple(out))
