"""Linear-nearest-neighbour mapping and a small peephole simplifier."""
from __future__ import annotations

from dataclasses import dataclass

from .circuit import MCT, Circuit, Gate, Not, Swap
from .metrics import DEFAULT_COST_MODEL, CostModel, MetricsReport, measure


def gate_is_lnn(g: Gate) -> bool:
    lines = g.lines
    return lines[-1] - lines[0] == len(lines) - 1


def is_lnn(c: Circuit) -> bool:
    """True when every gate acts on a contiguous run of lines."""
    return all(gate_is_lnn(g) for g in c.gates)


def _swap_chain(lines: list[int]) -> list[tuple[int, int]]:
    """Adjacent swaps that gather ``lines`` around their median line.

    Returns the swaps as position pairs ``(p, p + 1)`` in emission order.
    """
    lines = sorted(lines)
    mid = len(lines) // 2
    pos = {l: l for l in lines}
    swaps: list[tuple[int, int]] = []
    for i in range(mid - 1, -1, -1):
        goal = pos[lines[i + 1]] - 1
        while pos[lines[i]] < goal:
            p = pos[lines[i]]
            swaps.append((p, p + 1))
            pos[lines[i]] = p + 1
    for i in range(mid + 1, len(lines)):
        goal = pos[lines[i - 1]] + 1
        while pos[lines[i]] > goal:
            p = pos[lines[i]]
            swaps.append((p - 1, p))
            pos[lines[i]] = p - 1
    return swaps


def _relabel_after(swaps: list[tuple[int, int]], width: int) -> dict[int, int]:
    """Where each logical line sits after the swaps are applied."""
    at = list(range(width))  # at[position] = logical line
    for a, b in swaps:
        at[a], at[b] = at[b], at[a]
    return {line: p for p, line in enumerate(at)}


def map_lnn(c: Circuit) -> Circuit:
    """Naive SWAP insertion.

    Every non-adjacent gate is wrapped in a chain of adjacent SWAPs that
    moves its outermost lines toward its median line, and the chain is
    mirrored afterwards so line order is restored between gates.
    """
    out: list[Gate] = []
    for g in c.gates:
        if gate_is_lnn(g):
            out.append(g)
            continue
        swaps = _swap_chain(list(g.lines))
        where = _relabel_after(swaps, c.width)
        chain = [Swap(a, b) for a, b in swaps]
        out.extend(chain)
        out.append(g.relabel(where))
        out.extend(reversed(chain))
    return Circuit(c.width, tuple(out), c.main_lines)


def _controls(g: Gate) -> frozenset[int]:
    if isinstance(g, MCT):
        return frozenset(g.control_lines)
    return frozenset()


def commutes(a: Gate, b: Gate) -> bool:
    """Conservative syntactic commutation test."""
    if set(a.lines).isdisjoint(b.lines):
        return True
    if isinstance(a, (MCT, Not)) and isinstance(b, (MCT, Not)):
        return (a.target != b.target and a.target not in _controls(b)
                and b.target not in _controls(a))
    return False


def _equal(a: Gate, b: Gate) -> bool:
    if isinstance(a, Swap) and isinstance(b, Swap):
        return a.lines == b.lines
    return a == b


def _sweep(gates: list[Gate]) -> list[Gate]:
    out: list[Gate] = []
    for g in gates:
        j = len(out) - 1
        while j >= 0:
            if _equal(out[j], g):
                del out[j]
                break
            if not commutes(out[j], g):
                j = -1
                break
            j -= 1
        else:
            j = -1
        if j < 0:
            out.append(g)
    return out


def simplify(c: Circuit, max_sweeps: int = 10) -> Circuit:
    """Cancel equal gate pairs, moving gates past commuting neighbours.

    Each sweep walks the circuit left to right; a gate slides left over
    gates it commutes with and cancels against the first equal gate it
    meets.  Sweeps repeat until nothing changes or ``max_sweeps`` is hit.
    """
    gates = list(c.gates)
    for _ in range(max_sweeps):
        new = _sweep(gates)
        if len(new) == len(gates):
            break
        gates = new
    return Circuit(c.width, tuple(gates), c.main_lines)


@dataclass(frozen=True)
class LnnReport:
    inserted_swaps: int
    legality: bool
    before: MetricsReport
    after: MetricsReport


def map_and_simplify(c: Circuit, model: CostModel = DEFAULT_COST_MODEL) -> tuple[Circuit, LnnReport]:
    mapped = map_lnn(c)
    inserted = sum(isinstance(g, Swap) for g in mapped.gates) - sum(isinstance(g, Swap) for g in c.gates)
    out = simplify(mapped)
    return out, LnnReport(inserted, is_lnn(out), measure(c, model), measure(out, model))
