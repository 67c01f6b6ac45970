"""Depth reduction by running disjoint cycle sets side by side.

The input is copied into ``m`` ancilla registers, each register (the main
one included) applies its own subset of elementary-cycle groups, and the
registers are XORed back onto the main lines.  A term moved by one register
is left alone by the other ``m`` registers, an even number of copies that
cancel in the XOR, so the main register ends holding ``p(x)``.
"""
from __future__ import annotations

import enum
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .circuit import Circuit, Gate, cnot, concat, shift_lines
from .ecsynth import decompose, synthesize_groups
from .metrics import DEFAULT_COST_MODEL, CostModel, depth, ec_cost_formula
from .perm import ECGroup, Parity, Permutation

log = logging.getLogger(__name__)


class BlockVariant(enum.Enum):
    LINEAR = "linear"
    LINEAR_ALT = "linear-alt"
    LOGARITHMIC = "logarithmic"


def _check_m(m: int) -> None:
    if m < 2 or m % 2:
        raise ValueError(f"ancilla register count must be even and >= 2, got {m}")


def _copy(src: int, dst: int, n: int) -> list[Gate]:
    return [cnot(src * n + i, dst * n + i) for i in range(n)]


def storing_block(n: int, m: int, variant: BlockVariant = BlockVariant.LINEAR) -> Circuit:
    """Copy the main register into registers ``1..m`` with ``m * n`` CNOTs.

    Register ``r`` occupies lines ``[r*n, (r+1)*n)``.  Linear sources every
    copy from the main register, LinearAlt copies register ``r-1`` into
    ``r``, Logarithmic doubles the number of filled registers each level.
    """
    _check_m(m)
    gates: list[Gate] = []
    if variant is BlockVariant.LINEAR:
        for r in range(1, m + 1):
            gates += _copy(0, r, n)
    elif variant is BlockVariant.LINEAR_ALT:
        for r in range(1, m + 1):
            gates += _copy(r - 1, r, n)
    else:
        filled = 1
        while filled < m + 1:
            for src in range(min(filled, m + 1 - filled)):
                gates += _copy(src, filled + src, n)
            filled = min(2 * filled, m + 1)
    return Circuit(n * (m + 1), tuple(gates), n)


def restoring_block(n: int, m: int, variant: BlockVariant = BlockVariant.LINEAR) -> Circuit:
    """XOR all ``m + 1`` registers onto the main register with ``m * n`` CNOTs.

    Linear XORs each ancilla register straight into main (depth ``m``).
    Logarithmic folds the ancilla registers pairwise, then XORs the
    survivor into main (depth ``ceil(log2 m) + 1``); the ancillae end
    garbled.
    """
    _check_m(m)
    gates: list[Gate] = []
    if variant is BlockVariant.LINEAR:
        for r in range(1, m + 1):
            gates += _copy(r, 0, n)
    elif variant is BlockVariant.LINEAR_ALT:
        for r in range(m, 0, -1):
            gates += _copy(r, r - 1, n)
    else:
        active = list(range(1, m + 1))
        while len(active) > 1:
            nxt = []
            for a, b in zip(active[::2], active[1::2]):
                gates += _copy(b, a, n)
                nxt.append(a)
            if len(active) % 2:
                nxt.append(active[-1])
            active = nxt
        gates += _copy(active[0], 0, n)
    return Circuit(n * (m + 1), tuple(gates), n)


def block_depths(m: int, variant: BlockVariant) -> tuple[int, int]:
    """Expected (storing, restoring) depths of the blocks."""
    if variant is BlockVariant.LOGARITHMIC:
        return math.ceil(math.log2(m + 1)), math.ceil(math.log2(m)) + 1
    return m, m


# ----------------------------------------------------------- distribution

def group_weight(g: ECGroup, n: int, lnn: bool = False) -> float:
    return max(0, ec_cost_formula(g.kind, n, lnn))


@dataclass(frozen=True)
class Bin:
    index: int
    groups: tuple[ECGroup, ...]
    weight: float

    @property
    def parity(self) -> Parity:
        p = Parity.EVEN
        for g in self.groups:
            p = p * g.parity
        return p


@dataclass(frozen=True)
class DistributionPlan:
    bins: tuple[Bin, ...]
    n: int
    conforming: bool = True
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def odd_bins(self) -> int:
        return sum(b.parity is Parity.ODD for b in self.bins)

    @property
    def max_weight(self) -> float:
        return max(b.weight for b in self.bins)


@dataclass
class _Unit:
    groups: list[ECGroup]
    weight: float
    parity: Parity
    first: int


def _units(groups: Sequence[ECGroup], n: int, lnn: bool) -> list[_Unit]:
    """Groups that share terms, chained into indivisible units."""
    parent = list(range(len(groups)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for i, g in enumerate(groups):
        for t in g.terms:
            if t in owner:
                parent[find(i)] = find(owner[t])
            else:
                owner[t] = i
    members: dict[int, list[int]] = {}
    for i in range(len(groups)):
        members.setdefault(find(i), []).append(i)
    units = []
    for idx in sorted(members.values(), key=lambda ix: ix[0]):
        gs = [groups[i] for i in idx]
        par = Parity.EVEN
        for g in gs:
            par = par * g.parity
        units.append(_Unit(gs, sum(group_weight(g, n, lnn) for g in gs), par, idx[0]))
    return units


def _best_fit(units: list[_Unit], M: int) -> list[int]:
    loads = [0.0] * M
    assign = []
    for u in units:
        top = max(loads)
        b = min(range(M), key=lambda b: (max(top, loads[b] + u.weight), loads[b] + u.weight, b))
        assign.append(b)
        loads[b] += u.weight
    return assign


def _exact(units: list[_Unit], M: int, start: list[int]) -> list[int]:
    """Branch and bound for the min-max assignment, seeded with ``start``."""
    loads = [0.0] * M
    for u, b in zip(units, start):
        loads[b] += u.weight
    best_top, best = max(loads), list(start)
    suffix = [0.0] * (len(units) + 1)
    for i in range(len(units) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + units[i].weight
    loads = [0.0] * M
    assign: list[int] = []

    def rec(i: int) -> None:
        nonlocal best_top, best
        top = max(loads)
        if top >= best_top or (sum(loads) + suffix[i]) / M >= best_top:
            return
        if i == len(units):
            best_top, best = top, list(assign)
            return
        w = units[i].weight
        tried = set()
        for b in sorted(range(M), key=lambda b: (max(top, loads[b] + w), loads[b] + w, b)):
            if loads[b] in tried:
                continue
            tried.add(loads[b])
            loads[b] += w
            assign.append(b)
            rec(i + 1)
            assign.pop()
            loads[b] -= w

    rec(0)
    return best


EXACT_LIMIT = 10


def distribute(groups: Sequence[ECGroup], M: int, n: int, lnn: bool = False,
               repair_parity: bool = True, exact_limit: int = EXACT_LIMIT) -> DistributionPlan:
    """Best-fit assignment of elementary-cycle groups to ``M`` registers.

    Heaviest first, each unit goes to the bin that keeps the maximum bin
    weight lowest; among equal outcomes the bin left lighter wins, then the
    lower index.  With at most ``exact_limit`` units a branch and bound then
    looks for a strictly lower maximum, since greedy placement can miss it.
    Afterwards, while more than one bin has odd parity, the lightest odd
    unit of the heaviest odd bin moves to the lightest odd bin.  Groups
    sharing terms travel together and keep their relative order.
    """
    if M < 3 or M % 2 == 0:
        raise ValueError(f"bin count must be odd and >= 3, got {M}")
    units = sorted(_units(groups, n, lnn), key=lambda u: (-u.weight, u.first))
    assign = _best_fit(units, M)
    if len(units) <= exact_limit:
        assign = _exact(units, M, assign)
    bins: list[list[_Unit]] = [[] for _ in range(M)]
    loads = [0.0] * M
    for u, b in zip(units, assign):
        bins[b].append(u)
        loads[b] += u.weight

    def bin_parity(b):
        p = Parity.EVEN
        for u in bins[b]:
            p = p * u.parity
        return p

    conforming = True
    if repair_parity:
        while True:
            odd = [b for b in range(M) if bin_parity(b) is Parity.ODD]
            if len(odd) <= 1:
                break
            src = max(odd, key=lambda b: (loads[b], -b))
            dst = min((b for b in odd if b != src), key=lambda b: (loads[b], b))
            movable = [u for u in bins[src] if u.parity is Parity.ODD]
            if not movable:
                conforming = False
                break
            u = min(movable, key=lambda u: (u.weight, u.first))
            bins[src].remove(u)
            bins[dst].append(u)
            loads[src] -= u.weight
            loads[dst] += u.weight
    else:
        conforming = sum(bin_parity(b) is Parity.ODD for b in range(M)) <= 1

    warnings = []
    out = []
    for b in range(M):
        gs = sorted((g for u in bins[b] for g in u.groups), key=lambda g: g.order_index)
        if not gs:
            warnings.append(f"bin {b} is empty")
        out.append(Bin(b, tuple(gs), loads[b]))
    for w in warnings:
        log.warning(w)
    return DistributionPlan(tuple(out), n, conforming, tuple(warnings))


# ------------------------------------------------------------ synthesis

@dataclass(frozen=True)
class ParallelSynthesis:
    circuit: Circuit
    plan: DistributionPlan
    bin_circuits: tuple[Circuit, ...]
    storing: Circuit
    restoring: Circuit

    @property
    def bin_depths(self) -> tuple[int, ...]:
        return tuple(depth(c) for c in self.bin_circuits)


def _synth_bin(args):
    groups, n, model, search = args
    return synthesize_groups(groups, n, model, search)


def synthesize_parallel_detailed(p: Permutation, M: int = 3,
                                 variant: BlockVariant = BlockVariant.LINEAR,
                                 model: CostModel = DEFAULT_COST_MODEL,
                                 workers: int | None = None, search: bool = True,
                                 lnn: bool = False) -> ParallelSynthesis:
    n = p.lines
    plan = distribute(decompose(p), M, n, lnn)
    jobs = [(b.groups, n, model, search) for b in plan.bins]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            bin_circuits = list(pool.map(_synth_bin, jobs))
    else:
        bin_circuits = [_synth_bin(j) for j in jobs]
    width = n * M
    storing = storing_block(n, M - 1, variant)
    restoring = restoring_block(n, M - 1, variant)
    middle = concat([shift_lines(c, r * n, width, n) for r, c in enumerate(bin_circuits)],
                    width=width, main_lines=n)
    labels = [(0, len(storing), "storing")]
    start = len(storing)
    for r, c in enumerate(bin_circuits):
        labels.append((start, start + len(c), f"bin{r}"))
        start += len(c)
    labels.append((start, start + len(restoring), "restoring"))
    whole = concat([storing, middle, restoring], width=width, main_lines=n, staged=True)
    circuit = Circuit(whole.width, whole.gates, n, whole.stages, tuple(labels))
    return ParallelSynthesis(circuit, plan, tuple(bin_circuits), storing, restoring)


def synthesize_parallel(p: Permutation, M: int = 3, variant: BlockVariant = BlockVariant.LINEAR,
                        model: CostModel = DEFAULT_COST_MODEL, workers: int | None = None,
                        search: bool = True) -> Circuit:
    """Parallel structure on ``n * M`` lines; register 0 is the main register."""
    return synthesize_parallel_detailed(p, M, variant, model, workers, search).circuit
