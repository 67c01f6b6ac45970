"""Elementary-cycle synthesis: pi, kappa0, pi^-1 and the regular pipeline.

Every elementary-cycle group is realized as ``pi . kappa0 . pi^-1``.  The pi
circuit drives each input term onto a fixed kappa0 term placed in a narrow
window of lines around ``k = n // 2``; kappa0 permutes those fixed terms;
pi^-1 maps them back.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .circuit import MCT, Circuit, Gate, Not, apply_gate, cnot, concat, invert
from .ectable import CYCLE_ROWS, KIND_OFFSETS, ROWS
from .metrics import DEFAULT_COST_MODEL, CostModel, NTooSmall, quantum_cost
from .perm import Cycle, ECGroup, ECKind, Permutation, compose, elementary_groups


class SynthesisError(RuntimeError):
    pass


class NoSafeControl(SynthesisError):
    pass


class PiSafetyError(SynthesisError):
    """A pi gate disturbed a row that was already fixed."""


@dataclass(frozen=True)
class Window:
    kind: ECKind
    n: int
    k: int
    lines: tuple[int, ...]

    def bit(self, offset: int) -> int:
        return self.k + offset

    @property
    def term_lines(self) -> tuple[int, ...]:
        """Lines set in some kappa0 term; the rest of ``lines`` are helpers."""
        bits = set()
        for spec in ROWS[self.kind]:
            bits |= spec.kappa0
        return tuple(sorted(self.k + o for o in bits))

    def term(self, offsets: Iterable[int]) -> int:
        return sum(1 << (self.k + o) for o in offsets)


def window_lines(kind: ECKind, n: int, anchor: int | None = None) -> Window:
    """Window of lines hosting ``kind``'s kappa0 terms on ``n`` lines.

    The anchor defaults to ``n // 2`` and slides inward when the window would
    stick out of the circuit.
    """
    offsets = KIND_OFFSETS[kind]
    lo, hi = min(offsets), max(offsets)
    if hi - lo + 1 > n:
        raise NTooSmall(f"{kind.tag} needs {hi - lo + 1} lines, circuit has {n}")
    if anchor is None:
        k = min(max(n // 2, -lo), n - 1 - hi)
    else:
        k = anchor
        if k + lo < 0 or k + hi > n - 1:
            raise NTooSmall(f"anchor {k} puts {kind.tag} outside {n} lines")
    return Window(kind, n, k, tuple(sorted(k + o for o in offsets)))


def kinds_fitting(n: int) -> list[ECKind]:
    out = []
    for kind in ECKind:
        offs = KIND_OFFSETS[kind]
        if max(offs) - min(offs) + 1 <= n:
            out.append(kind)
    return out


@dataclass(frozen=True)
class PiRow:
    input_term: int
    intermediate: int
    pivot: int
    kappa0_term: int
    static_gate: MCT | None = None

    def __post_init__(self):
        if not self.intermediate >> self.pivot & 1:
            raise ValueError("pivot bit of the intermediate pattern must be 1")
        after = self.intermediate if self.static_gate is None else apply_gate(self.static_gate, self.intermediate)
        if after != self.kappa0_term:
            raise ValueError("static gate does not turn the intermediate pattern into the kappa0 term")


def kind_rows(kind: ECKind, window: Window) -> list[tuple[int, int, int, MCT | None]]:
    """``(intermediate, pivot, kappa0, static)`` per row, in processing order."""
    out = []
    for spec in ROWS[kind]:
        static = None
        if spec.static is not None:
            ctrls, tgt = spec.static
            static = MCT(tuple((window.bit(c), p) for c, p in ctrls), window.bit(tgt))
        out.append((window.term(spec.intermediate), window.bit(spec.pivot),
                    window.term(spec.kappa0), static))
    return out


def pi_rows(group: ECGroup, window: Window) -> list[PiRow]:
    """Attach the group's terms to the rows of its kind."""
    base = kind_rows(group.kind, window)
    inputs = [None] * len(base)
    for cycle, rows in zip(group.cycles, CYCLE_ROWS[group.kind]):
        for term, row in zip(cycle.terms, rows):
            inputs[row] = term
    return [PiRow(t, i, p, k0, s) for t, (i, p, k0, s) in zip(inputs, base)]


def kappa0_cycles(kind: ECKind, window: Window) -> list[Cycle]:
    terms = [k0 for _, _, k0, _ in kind_rows(kind, window)]
    return [Cycle(tuple(terms[r] for r in rows)) for rows in CYCLE_ROWS[kind]]


@dataclass(frozen=True)
class Kappa0Spec:
    """The fixed permutation a kind's kappa0 circuit realizes on ``n`` lines."""

    kind: ECKind
    n: int
    cycles: tuple[Cycle, ...]

    @classmethod
    def of(cls, kind: ECKind, n: int, anchor: int | None = None) -> "Kappa0Spec":
        return cls(kind, n, tuple(kappa0_cycles(kind, window_lines(kind, n, anchor))))

    @property
    def terms(self) -> frozenset[int]:
        return frozenset(t for c in self.cycles for t in c)

    def permutation(self) -> Permutation:
        return compose(self.cycles, self.n)


# ---------------------------------------------------------------- pi circuit

def _bit(v: int, b: int) -> int:
    return v >> b & 1


def _single_safe(value: int, fixed: Sequence[int], exclude: int, n: int,
                 candidates: Iterable[int] | None = None) -> list[tuple[int, bool]]:
    """Lines usable as a lone control that fires on ``value`` but on no fixed row."""
    out = []
    for p in (range(n) if candidates is None else candidates):
        if p == exclude:
            continue
        b = _bit(value, p)
        if all(_bit(f, p) != b for f in fixed):
            out.append((p, bool(b)))
    return out


def _safe_controls(value: int, fixed: Sequence[int], target: int, n: int) -> tuple[tuple[int, bool], ...]:
    """Smallest control set matching ``value`` that no fixed row satisfies.

    Prefers one control, then two, then a greedy cover.  Positive controls
    and short distances to ``target`` break ties.
    """
    def rank(ctrls):
        return (sum(1 for _, p in ctrls if not p) == len(ctrls),
                sum(abs(l - target) for l, _ in ctrls))

    single = _single_safe(value, fixed, target, n)
    if single:
        return (min(((c,) for c in single), key=rank))
    lines = [l for l in range(n) if l != target]
    for f in fixed:
        if all(_bit(f, l) == _bit(value, l) for l in lines):
            raise NoSafeControl(f"fixed row {f} only differs from {value} on line {target}")
    pairs = []
    for a, b in itertools.combinations(lines, 2):
        if all(_bit(f, a) != _bit(value, a) or _bit(f, b) != _bit(value, b) for f in fixed):
            pairs.append(((a, bool(_bit(value, a))), (b, bool(_bit(value, b)))))
    if pairs:
        return min(pairs, key=rank)
    remaining = list(fixed)
    chosen: list[int] = []
    while remaining:
        best = max((l for l in lines if l not in chosen),
                   key=lambda l: (sum(_bit(f, l) != _bit(value, l) for f in remaining), -abs(l - target)))
        chosen.append(best)
        remaining = [f for f in remaining if _bit(f, best) == _bit(value, best)]
    return tuple((l, bool(_bit(value, l))) for l in sorted(chosen))


def build_pi(rows: Sequence[PiRow], n: int) -> Circuit:
    """Gate selection for the pi circuit.

    Tracks the live value of every row term; each emitted gate is applied to
    all of them.  Row 0 is set with NOT gates.  Every later row first gets
    its pivot bit set by a control no fixed row satisfies, then has its bits
    corrected by CNOTs from the nearest safe set line on the pivot's side,
    sweeping the low side upward and the high side downward.  Static gates
    follow their row.  A row already sitting on its kappa0 term is skipped.  Raises :class:`PiSafetyError` if a fixed row moves.
    """
    if len({r.input_term for r in rows}) != len(rows):
        raise ValueError("row input terms must be distinct")
    live = [r.input_term for r in rows]
    gates: list[Gate] = []

    def emit(g: Gate, fixed_upto: int) -> None:
        before = live[:fixed_upto]
        for idx in range(len(live)):
            live[idx] = apply_gate(g, live[idx])
        if live[:fixed_upto] != before:
            raise PiSafetyError(f"gate {g} changed a fixed row")
        gates.append(g)

    for i, row in enumerate(rows):
        if live[i] == row.kappa0_term:
            continue
        target = row.intermediate
        pivot = row.pivot
        if i == 0:
            for b in range(n):
                if _bit(live[0] ^ target, b):
                    emit(Not(b), 0)
        else:
            fixed = live[:i]
            if not _bit(live[i], pivot):
                emit(MCT(_safe_controls(live[i], fixed, pivot, n), pivot), i)
            sides = (range(0, pivot), range(n - 1, pivot, -1))
            for side, js in enumerate(sides):
                for j in js:
                    if _bit(live[i], j) == _bit(target, j):
                        continue
                    fixed = live[:i]
                    side_lines = range(0, pivot + 1) if side == 0 else range(pivot, n)
                    cands = [p for p, pol in _single_safe(live[i], fixed, j, n, side_lines) if pol]
                    if cands:
                        p = min(cands, key=lambda p: (abs(p - j), abs(p - pivot), p))
                        emit(cnot(p, j), i)
                    else:
                        emit(MCT(_safe_controls(live[i], fixed, j, n), j), i)
        if live[i] != target:
            raise SynthesisError(f"row {i} ended at {live[i]}, expected {target}")
        if row.static_gate is not None:
            emit(row.static_gate, i)
        if live[i] != row.kappa0_term:
            raise SynthesisError(f"row {i} ended at {live[i]}, expected {row.kappa0_term}")
    return Circuit(n, tuple(gates))


# ------------------------------------------------------------ kappa0 circuit

@dataclass(frozen=True)
class _Block:
    """``prefix . core . prefix^-1`` realizing one or more transpositions."""

    prefix: tuple[MCT, ...]
    core: MCT
    support: frozenset[int]

    def gates(self) -> list[Gate]:
        return [*self.prefix, self.core, *reversed(self.prefix)]


def _transposition_block(u: int, v: int, n: int) -> _Block:
    diff = [b for b in range(n) if _bit(u ^ v, b)]
    c = diff[0]
    prefix = tuple(cnot(c, j, bool(_bit(u, c))) for j in diff[1:])
    core = MCT(tuple((l, bool(_bit(v, l))) for l in range(n) if l != c), c)
    return _Block(prefix, core, frozenset((u, v)))


def _merge(a: _Block, b: _Block) -> _Block | None:
    if a.prefix != b.prefix or a.core.target != b.core.target:
        return None
    if a.core.control_lines != b.core.control_lines:
        return None
    differ = [x for x, y in zip(a.core.controls, b.core.controls) if x != y]
    if len(differ) != 1:
        return None
    free = differ[0][0]
    core = MCT(tuple(c for c in a.core.controls if c[0] != free), a.core.target)
    return _Block(a.prefix, core, a.support | b.support)


def chain_transpositions(c: Cycle) -> list[tuple[int, int]]:
    """``(t_{L-1}, t_L), ..., (t_1, t_2)``: applied left to right this is ``c``."""
    t = c.terms
    return [(t[i], t[i + 1]) for i in range(len(t) - 2, -1, -1)]


def _min_transpositions(perm: dict[int, int]) -> int:
    seen: set[int] = set()
    count = 0
    for start in perm:
        if start in seen:
            continue
        length = 0
        t = start
        while t not in seen:
            seen.add(t)
            t = perm[t]
            length += 1
        count += length - 1
    return count


def factorizations(c: Cycle) -> list[list[tuple[int, int]]]:
    """Every shortest transposition sequence (applied left to right) equal to ``c``.

    The chain order comes first.  A cycle of length L has L^(L-2) of them.
    """
    def rec(perm: dict[int, int], need: int):
        if need == 0:
            yield []
            return
        moved = sorted(t for t in perm if perm[t] != t)
        for x, y in itertools.combinations(moved, 2):
            # perm = (x y) then rest, so rest(s) = perm((x y)(s))
            rest = dict(perm)
            rest[x], rest[y] = perm[y], perm[x]
            if _min_transpositions(rest) == need - 1:
                for tail in rec(rest, need - 1):
                    yield [(x, y)] + tail

    chain = chain_transpositions(c)
    key = [tuple(sorted(t)) for t in chain]
    out = [chain]
    out.extend(seq for seq in rec(c.mapping(), len(c) - 1) if seq != key)
    return out


def _merge_blocks(blocks: list[_Block]) -> list[_Block]:
    blocks = list(blocks)
    changed = True
    while changed:
        changed = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                merged = _merge(blocks[i], blocks[j])
                if merged is None:
                    continue
                between = frozenset().union(*(blk.support for blk in blocks[i + 1:j]))
                if blocks[j].support & between:
                    continue
                blocks[i] = merged
                del blocks[j]
                changed = True
                break
            if changed:
                break
    return blocks


def transpositions_circuit(seq: Sequence[tuple[int, int]], n: int) -> Circuit:
    """Exact circuit for transpositions applied left to right.

    A distance-1 transposition is one fully-controlled MCT; longer ones are
    conjugated by CNOTs down to distance 1.  Blocks with the same
    conjugation whose cores differ in a single control polarity merge into
    one gate with that line left free, provided nothing in between touches
    their terms.
    """
    blocks = _merge_blocks([_transposition_block(u, v, n) for u, v in seq])
    return Circuit(n, tuple(g for blk in blocks for g in blk.gates()))


def cycles_circuit(cycles: Sequence[Cycle], n: int, model: CostModel | None = None,
                   keep: int = 6) -> Circuit:
    """Exact circuit for a product of disjoint cycles.

    Without ``model`` every cycle uses its chain factorization.  With a
    model, the shortest factorizations of each cycle are ranked by cost, the
    ``keep`` cheapest per cycle are combined in both cycle orders, and the
    cheapest merged circuit wins (the chain wins ties).
    """
    if model is None:
        seq = [tr for c in cycles for tr in chain_transpositions(c)]
        return transpositions_circuit(seq, n)

    def cost(seq):
        circ = transpositions_circuit(seq, n)
        return (quantum_cost(circ, model), len(circ)), circ

    per_cycle = []
    for c in cycles:
        ranked = sorted(factorizations(c), key=lambda seq: cost(seq)[0])  # stable: chain first on ties
        per_cycle.append(ranked[:keep])
    orders = [per_cycle]
    if len(per_cycle) == 2:
        orders.append(per_cycle[::-1])
    best = None
    for order in orders:
        for combo in itertools.product(*order):
            key, circ = cost([tr for part in combo for tr in part])
            if best is None or key < best[0]:
                best = (key, circ)
    return best[1]


@lru_cache(maxsize=None)
def _kappa0_cached(kind: ECKind, n: int, k: int, model: CostModel | None) -> Circuit:
    window = window_lines(kind, n, k)
    return cycles_circuit(kappa0_cycles(kind, window), n, model)


def build_kappa0(kind: ECKind, n: int, anchor: int | None = None,
                 model: CostModel | None = DEFAULT_COST_MODEL) -> Circuit:
    """Circuit permuting exactly the kind's kappa0 terms; identity elsewhere.

    ``model=None`` gives the plain chain construction; otherwise the
    cheapest factorization under ``model`` is used.
    """
    window = window_lines(kind, n, anchor)
    return _kappa0_cached(kind, n, window.k, model)


# ----------------------------------------------------------- group synthesis

def _labelings(group: ECGroup) -> Iterable[ECGroup]:
    """Every way of writing the same group: cycle rotations, equal-length swaps."""
    orders = [group.cycles]
    if len(group.cycles) == 2 and len(group.cycles[0]) == len(group.cycles[1]):
        orders.append(group.cycles[::-1])
    for cycles in orders:
        for shifts in itertools.product(*(range(len(c)) for c in cycles)):
            yield ECGroup(group.kind, tuple(c.rotated(s) for c, s in zip(cycles, shifts)),
                          group.order_index)


def synth_ec(group: ECGroup, n: int, model: CostModel = DEFAULT_COST_MODEL,
             search: bool = True, anchor: int | None = None) -> Circuit:
    """``pi . kappa0 . pi^-1`` for one elementary-cycle group.

    With ``search`` every rotation of the group's cycles is tried and the
    cheapest pi circuit (quantum cost, then gate count) is kept.
    """
    window = window_lines(group.kind, n, anchor)
    for t in group.terms:
        if not 0 <= t < 1 << n:
            raise ValueError(f"term {t} does not fit {n} lines")
    best = None
    for labeled in (_labelings(group) if search else [group]):
        pi = build_pi(pi_rows(labeled, window), n)
        key = (quantum_cost(pi, model), len(pi))
        if best is None or key < best[0]:
            best = (key, pi)
    pi = best[1]
    kappa0 = build_kappa0(group.kind, n, window.k, model)
    return concat([pi, kappa0, invert(pi)])


def max_cycle_length(n: int) -> int:
    fits = kinds_fitting(n)
    singles = [k.shape[0] for k in fits if len(k.shape) == 1]
    if not singles:
        raise NTooSmall(f"no elementary cycle fits on {n} lines")
    return max(singles)


def decompose(p: Permutation, method: str = "leader") -> list[ECGroup]:
    """Factor ``p`` into elementary-cycle groups that fit its line count.

    ``method`` picks how cycles longer than five terms are split (see
    :func:`cyclesmith.perm.split_long_cycle`).
    """
    if p.is_identity():
        return []
    return elementary_groups(p, kinds_fitting(p.lines), max_cycle_length(p.lines), method)


def synthesize_groups(groups: Sequence[ECGroup], n: int, model: CostModel = DEFAULT_COST_MODEL,
                      search: bool = True) -> Circuit:
    parts = []
    labels = []
    start = 0
    for g in groups:
        part = synth_ec(g, n, model, search)
        labels.append((start, start + len(part), g.kind.tag))
        start += len(part)
        parts.append(part)
    if not parts:
        return Circuit(n)
    c = concat(parts, width=n)
    return Circuit(c.width, c.gates, c.main_lines, (), tuple(labels))


def synthesize(p: Permutation, model: CostModel = DEFAULT_COST_MODEL, search: bool = True) -> Circuit:
    """Regular pipeline: factor, split, group, then synthesize group by group."""
    return synthesize_groups(decompose(p), p.lines, model, search)
