"""Permutations of [0, 2^n) and their cycle algebra.

A reversible function on ``n`` lines is a permutation of the ``2^n`` terms.
This module factors permutations into disjoint cycles, splits long cycles
into elementary pieces (length <= 5) and groups those pieces into the nine
elementary-cycle kinds that :mod:`cyclesmith.ecsynth` knows how to build.

Composition convention: a sequence of cycles is applied left to right, the
same order in which gates of a circuit act.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    def __mul__(self, other: "Parity") -> "Parity":
        return Parity.EVEN if self is other else Parity.ODD


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``[0, 2**lines)`` stored as its image list."""

    lines: int
    images: tuple[int, ...]

    def __post_init__(self):
        if self.lines < 1:
            raise ValueError("a permutation needs at least one line")
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        size = 1 << self.lines
        if len(images) != size:
            raise ValueError(f"expected {size} images, got {len(images)}")
        seen = bytearray(size)
        for v in images:
            if not 0 <= v < size or seen[v]:
                raise ValueError("images are not a bijection on [0, 2^n)")
            seen[v] = 1

    @classmethod
    def identity(cls, lines: int) -> "Permutation":
        return cls(lines, tuple(range(1 << lines)))

    @property
    def size(self) -> int:
        return 1 << self.lines

    def __call__(self, term: int) -> int:
        return self.images[term]

    def __len__(self) -> int:
        return len(self.images)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for t, v in enumerate(self.images):
            inv[v] = t
        return Permutation(self.lines, tuple(inv))

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        if other.lines != self.lines:
            raise ValueError("line counts differ")
        return Permutation(self.lines, tuple(other.images[v] for v in self.images))

    def is_identity(self) -> bool:
        return all(t == v for t, v in enumerate(self.images))

    def cycles(self) -> list["Cycle"]:
        return to_disjoint_cycles(self)


@dataclass(frozen=True)
class Cycle:
    """Ordered cycle ``(b1, ..., bk)`` meaning ``f(b1) = b2, ..., f(bk) = b1``."""

    terms: tuple[int, ...]

    def __post_init__(self):
        terms = tuple(int(t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        if len(terms) < 2:
            raise ValueError("a cycle needs at least two terms")
        if len(set(terms)) != len(terms):
            raise ValueError(f"cycle terms are not distinct: {terms}")
        if min(terms) < 0:
            raise ValueError("cycle terms must be non-negative")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __repr__(self) -> str:
        return "(" + ",".join(map(str, self.terms)) + ")"

    def mapping(self) -> dict[int, int]:
        k = len(self.terms)
        return {self.terms[i]: self.terms[(i + 1) % k] for i in range(k)}

    def rotated(self, shift: int) -> "Cycle":
        """Same cycle written from a different starting term."""
        s = shift % len(self.terms)
        return Cycle(self.terms[s:] + self.terms[:s])

    def canonical(self) -> "Cycle":
        return self.rotated(self.terms.index(min(self.terms)))

    def isdisjoint(self, other: "Cycle") -> bool:
        return set(self.terms).isdisjoint(other.terms)

    @property
    def parity(self) -> Parity:
        return Parity.EVEN if len(self.terms) % 2 == 1 else Parity.ODD


class ECKind(enum.Enum):
    """The nine elementary-cycle shapes, with their cycle construction length."""

    C2 = ((2,), 2)
    C22 = ((2, 2), 4)
    C3 = ((3,), 3)
    C33 = ((3, 3), 5)
    C4 = ((4,), 4)
    C42 = ((4, 2), 5)
    C44 = ((4, 4), 5)
    C5 = ((5,), 5)
    C55 = ((5, 5), 6)

    def __init__(self, shape, ccl):
        self.shape = shape
        self.ccl = ccl

    @property
    def tag(self) -> str:
        return "(" + ",".join(map(str, self.shape)) + ")"

    @property
    def term_count(self) -> int:
        return sum(self.shape)

    @classmethod
    def from_shape(cls, shape: Sequence[int]) -> "ECKind":
        shape = tuple(shape)
        for kind in cls:
            if kind.shape == shape:
                return kind
        raise ValueError(f"no elementary-cycle kind with shape {shape}")

    @classmethod
    def from_tag(cls, tag: str) -> "ECKind":
        for kind in cls:
            if kind.tag == tag.replace(" ", ""):
                return kind
        raise ValueError(f"unknown elementary-cycle tag {tag!r}")

    def __repr__(self) -> str:
        return f"ECKind{self.tag}"


@dataclass(frozen=True)
class ECGroup:
    """One or two cycles synthesized together as one elementary-cycle block."""

    kind: ECKind
    cycles: tuple[Cycle, ...]
    order_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "cycles", tuple(self.cycles))
        if tuple(len(c) for c in self.cycles) != self.kind.shape:
            raise ValueError(
                f"cycle lengths {[len(c) for c in self.cycles]} do not match {self.kind.tag}"
            )
        if len(self.cycles) == 2 and not self.cycles[0].isdisjoint(self.cycles[1]):
            raise ValueError("paired cycles must be disjoint")

    @property
    def terms(self) -> tuple[int, ...]:
        return tuple(t for c in self.cycles for t in c)

    @property
    def parity(self) -> Parity:
        p = Parity.EVEN
        for c in self.cycles:
            p = p * c.parity
        return p


def to_disjoint_cycles(perm: Permutation) -> list[Cycle]:
    """Disjoint-cycle factorization in canonical form.

    Each cycle starts at its smallest term and cycles are sorted by that
    term; fixed points are dropped.
    """
    seen = bytearray(perm.size)
    cycles = []
    images = perm.images
    for start in range(perm.size):
        if seen[start] or images[start] == start:
            continue
        terms = []
        t = start
        while not seen[t]:
            seen[t] = 1
            terms.append(t)
            t = images[t]
        cycles.append(Cycle(tuple(terms)))
    return cycles


def compose(cycles: Iterable[Cycle], lines: int) -> Permutation:
    """Permutation obtained by applying ``cycles`` left to right."""
    size = 1 << lines
    images = list(range(size))
    where = list(range(size))  # where[v] = t with images[t] == v
    for c in cycles:
        terms = c.terms if isinstance(c, Cycle) else tuple(c)
        for t in terms:
            if not 0 <= t < size:
                raise ValueError(f"term {t} out of range for {lines} lines")
        k = len(terms)
        sources = [where[b] for b in terms]
        for i, src in enumerate(sources):
            nxt = terms[(i + 1) % k]
            images[src] = nxt
            where[nxt] = src
    return Permutation(lines, tuple(images))


def parity(p: Permutation | Cycle) -> Parity:
    if isinstance(p, Cycle):
        return p.parity
    transpositions = sum(len(c) - 1 for c in to_disjoint_cycles(p))
    return Parity.EVEN if transpositions % 2 == 0 else Parity.ODD


def split_long_cycle(c: Cycle, max_length: int = 5, method: str = "chain") -> list[Cycle]:
    """Split a cycle into pieces of length <= ``max_length``, in application order.

    ``chain``: consecutive pieces share one boundary term and the piece
    holding the last term goes first.  A k-cycle gives ``ceil((k-1)/4)``
    pieces for ``max_length=5``.

    ``leader``: the cycle is cut into disjoint runs of ``max_length`` terms
    which are applied first, followed by the cycle through the first term
    of every run, itself split the same way.  The runs are disjoint, so
    they can be paired with each other.
    """
    if max_length < 2:
        raise ValueError("max_length must be at least 2")
    k = len(c)
    if k <= max_length:
        return [c]
    if method == "chain":
        step = max_length - 1
        pieces = []
        start = 0
        while start < k - 1:
            pieces.append(Cycle(c.terms[start:min(start + max_length, k)]))
            start += step
        pieces.reverse()
        return pieces
    if method == "leader":
        runs = [c.terms[i:i + max_length] for i in range(0, k, max_length)]
        pieces = [Cycle(r) for r in runs if len(r) > 1]
        leaders = Cycle(tuple(r[0] for r in runs))
        return pieces + split_long_cycle(leaders, max_length, method)
    raise ValueError(f"unknown split method {method!r}")


# Pairing preference; the remaining lengths become single-cycle groups.
PAIR_ORDER = (ECKind.C55, ECKind.C44, ECKind.C33, ECKind.C22, ECKind.C42)


def group_elementary(cycles: Sequence[Cycle],
                     kinds: Iterable[ECKind] | None = None) -> list[ECGroup]:
    """Group elementary cycles (length <= 5) into elementary-cycle blocks.

    Two cycles are only paired when they are disjoint and the later one is
    disjoint from every cycle between them, so moving it forward keeps the
    overall composition unchanged.  ``kinds`` restricts which kinds may be
    produced (narrow circuits cannot host the wide ones).
    """
    allowed = set(ECKind) if kinds is None else set(kinds)
    cycles = list(cycles)
    for c in cycles:
        if len(c) > 5:
            raise ValueError(f"cycle of length {len(c)} is not elementary; split it first")
        if ECKind.from_shape((len(c),)) not in allowed:
            raise ValueError(f"kind ({len(c)}) is not available")
    count = len(cycles)
    partner: dict[int, int] = {}
    taken = [False] * count
    supports = [set(c.terms) for c in cycles]

    for kind in PAIR_ORDER:
        if kind not in allowed:
            continue
        la, lb = kind.shape
        for i in range(count):
            if taken[i] or len(cycles[i]) not in (la, lb):
                continue
            want = lb if len(cycles[i]) == la else la
            blocked: set[int] = set()
            for j in range(i + 1, count):
                if (not taken[j] and len(cycles[j]) == want
                        and supports[j].isdisjoint(supports[i])
                        and supports[j].isdisjoint(blocked)):
                    partner[i] = j
                    taken[i] = taken[j] = True
                    break
                blocked |= supports[j]

    groups = []
    moved = set(partner.values())
    for i in range(count):
        if i in moved:
            continue
        if i in partner:
            a, b = cycles[i], cycles[partner[i]]
            if len(a) < len(b):
                a, b = b, a
            kind = ECKind.from_shape((len(a), len(b)))
            groups.append(ECGroup(kind, (a, b), len(groups)))
        else:
            groups.append(ECGroup(ECKind.from_shape((len(cycles[i]),)), (cycles[i],), len(groups)))
    return groups


def elementary_groups(perm: Permutation, kinds: Iterable[ECKind] | None = None,
                      max_length: int = 5, method: str = "leader") -> list[ECGroup]:
    """Factor, split and group ``perm`` in one go."""
    pieces = []
    for c in to_disjoint_cycles(perm):
        pieces.extend(split_long_cycle(c, max_length, method))
    return group_elementary(pieces, kinds)


def random_permutation(lines: int, rng: np.random.Generator) -> Permutation:
    return Permutation(lines, tuple(int(v) for v in rng.permutation(1 << lines)))
