"""Row data for the elementary-cycle builders.

Bit positions are offsets from the anchor line ``k``.  Rows are listed in
processing order.  For every row:

* ``intermediate`` is the pattern the pi circuit drives the input term to,
* ``pivot`` is the set bit that anchors control selection,
* ``static`` is an optional Toffoli ``(controls, target)`` turning the
  intermediate pattern into the kappa0 term (controls are ``(offset,
  polarity)``),
* ``kappa0`` is the term the kappa0 circuit permutes.

``CYCLE_ROWS`` gives, per cycle of the kind, the row index of each cycle
position: for (5) the cycle ``(a, b, c, d, e)`` is processed in the row
order a, c, d, b, e, so position 1 (``b``) lives in row 3.

The (2,2) block is the worked reference: a goes to ``{k+2}``, b to
``{k+2, k-1}``, c to ``{k+2, k}``, d first to ``{k+2, k+1, k, k-1}`` and the
static Toffoli on ``k+1`` clears the helper bit, so kappa0 realizes
``(2^(k+2), 2^(k+2)+2^(k-1)) (2^(k+2)+2^k, 2^(k+2)+2^k+2^(k-1))``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .perm import ECKind

P, N = True, False


@dataclass(frozen=True)
class RowSpec:
    intermediate: frozenset[int]
    pivot: int
    kappa0: frozenset[int]
    static: tuple[tuple[tuple[int, bool], ...], int] | None = None


def _row(bits, pivot, static=None, kappa0=None) -> RowSpec:
    bits = frozenset(bits)
    return RowSpec(bits, pivot, frozenset(kappa0) if kappa0 is not None else bits, static)


def _t(*controls, target):
    return (tuple((c, P) if isinstance(c, int) else c for c in controls), target)


ROWS: dict[ECKind, tuple[RowSpec, ...]] = {
    ECKind.C2: (
        _row({1}, 1),
        _row({-1, 1}, -1),
    ),
    ECKind.C22: (
        _row({2}, 2),
        _row({2, -1}, -1),
        _row({2, 0}, 0),
        _row({2, 1, 0, -1}, 1, _t(-1, 0, target=1), {2, 0, -1}),
    ),
    ECKind.C3: (
        _row({-1}, -1),
        _row({1, -1}, 1),
        _row({1, 0, -1}, 0),
    ),
    ECKind.C33: (
        _row({-2}, -2),
        _row({-1, -2}, -1),
        _row({0, -1, -2}, 0),
        _row({2, -2}, 2),
        _row({2, 1, -1, -2}, 1, _t(-1, 2, target=1), {2, -1, -2}),
        _row({2, 1, 0, -1, -2}, 1, _t(0, 2, target=1), {2, 0, -1, -2}),
    ),
    ECKind.C4: (
        _row({2}, 2),
        _row({2, -1}, -1),
        _row({2, 0}, 0),
        _row({2, 1, 0, -1}, 1, _t(-1, 0, target=1), {2, 0, -1}),
    ),
    ECKind.C42: (
        _row({2}, 2),
        _row({2, -1}, -1),
        _row({2, 0}, 0),
        _row({2, 1, 0, -1}, 1, _t(-1, 0, target=1), {2, 0, -1}),
        _row({2, 0, -1, -2}, -2),
        # second control of the static gate: negative on k separates this
        # row from the (k+2, k, k-1, k-2) row fixed just before
        _row({2, 1, -1, -2}, 1, _t(-2, (0, N), target=1), {2, -1, -2}),
    ),
    ECKind.C44: (
        _row({2}, 2),
        _row({2, -2}, -2),
        _row({2, -1}, -1),
        _row({2, 0, -1, -2}, 0, _t(-2, -1, target=0), {2, -1, -2}),
        _row({2, 0}, 0),
        _row({2, 1, 0, -2}, 1, _t(-2, 0, target=1), {2, 0, -2}),
        _row({2, 1, 0, -1}, 1, _t(-1, 0, target=1), {2, 0, -1}),
        _row({2, 1, 0, -1, -2}, 1, _t(-2, -1, 0, target=1), {2, 0, -1, -2}),
    ),
    ECKind.C5: (
        _row({2}, 2),
        _row({2, -2}, -2),
        _row({2, -1}, -1),
        _row({2, 1, -1, -2}, 1, _t(-2, -1, target=1), {2, -1, -2}),
        _row({2, 0, -1, -2}, 0),
    ),
    ECKind.C55: (
        _row({2}, 2),
        _row({2, -3}, -3),
        _row({2, -2}, -2),
        _row({2, -1, -2, -3}, -1, _t(-3, -2, target=-1), {2, -2, -3}),
        _row({2, 0}, 0),
        _row({2, 1, 0, -3}, 1, _t(-3, 0, target=1), {2, 0, -3}),
        _row({2, 1, 0, -2}, 1, _t(-2, 0, target=1), {2, 0, -2}),
        _row({2, 1, 0, -2, -3}, 1, _t(-3, -2, 0, target=1), {2, 0, -2, -3}),
        _row({2, 0, -1, -2, -3}, -1),
        _row({2, 1, -1, -2, -3}, 1, _t(-1, (0, N), target=1), {2, -1, -2, -3}),
    ),
}

CYCLE_ROWS: dict[ECKind, tuple[tuple[int, ...], ...]] = {
    ECKind.C2: ((0, 1),),
    ECKind.C22: ((0, 1), (2, 3)),
    ECKind.C3: ((0, 1, 2),),
    ECKind.C33: ((0, 1, 2), (3, 4, 5)),
    ECKind.C4: ((0, 1, 2, 3),),
    ECKind.C42: ((0, 1, 2, 3), (4, 5)),
    ECKind.C44: ((0, 1, 2, 3), (4, 5, 6, 7)),
    ECKind.C5: ((0, 3, 1, 2, 4),),
    ECKind.C55: ((0, 3, 1, 2, 9), (4, 7, 5, 6, 8)),
}


def _offsets(kind: ECKind) -> frozenset[int]:
    out: set[int] = set()
    for row in ROWS[kind]:
        out |= row.intermediate | row.kappa0
        if row.static:
            ctrls, tgt = row.static
            out |= {c for c, _ in ctrls} | {tgt}
    return frozenset(out)


KIND_OFFSETS: dict[ECKind, frozenset[int]] = {kind: _offsets(kind) for kind in ECKind}
