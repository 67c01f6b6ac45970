"""Text formats for permutations and circuits, plus the hwb benchmark.

Permutation documents::

    .numvars 2
    .permutation
    1 2 0 3

or ``.cycles`` followed by parenthesized cycles such as ``(1,3)(7,10)``.

Circuit documents::

    .version 1
    .numvars 4
    .begin
    t3 -x0 x1 x2     # controls then target, '-' marks a negative control
    s x1 x2
    n x3
    .end

An optional ``.main M`` line after ``.numvars`` marks the first ``M`` lines
as the main register.
"""
from __future__ import annotations

import re

import numpy as np

from .circuit import MCT, Circuit, Gate, Not, Swap
from .perm import Cycle, Permutation, compose, to_disjoint_cycles


class FormatError(ValueError):
    """Parse failure with a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)


class MalformedHeader(FormatError):
    pass


class NonBijective(FormatError):
    pass


class OutOfRange(FormatError):
    pass


class UnknownGate(FormatError):
    pass


class DuplicateLine(FormatError):
    pass


class MalformedBody(FormatError):
    pass


def _tokens(text: str):
    """Yield ``(lineno, column, token)`` with ``#`` comments removed."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        for m in re.finditer(r"\S+", body):
            yield lineno, m.start() + 1, m.group()


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, body


def _numvars(lineno: int, body: str, upper: int = 30) -> int:
    parts = body.split()
    if len(parts) != 2 or parts[0] != ".numvars":
        raise MalformedHeader(f"expected '.numvars N', got {body.strip()!r}", lineno, 1)
    if not parts[1].isdigit():
        raise MalformedHeader(f"line count must be a positive integer, got {parts[1]!r}",
                              lineno, body.index(parts[1]) + 1)
    n = int(parts[1])
    if not 1 <= n <= upper:
        raise MalformedHeader(f"line count {n} outside [1, {upper}]", lineno, body.index(parts[1]) + 1)
    return n


# ------------------------------------------------------------ permutations

def parse_spec(text: str) -> Permutation:
    lines = list(_lines(text))
    if not lines:
        raise MalformedHeader("empty document", 1, 1)
    n = _numvars(*lines[0], upper=24)
    if len(lines) < 2 or lines[1][1].strip() not in (".permutation", ".cycles"):
        where = lines[1][0] if len(lines) > 1 else lines[0][0] + 1
        raise MalformedHeader("expected '.permutation' or '.cycles'", where, 1)
    size = 1 << n
    start_line = lines[1][0]
    rest = "\n".join("" if i <= start_line else raw
                     for i, raw in enumerate(text.splitlines(), 1))
    if lines[1][1].strip() == ".permutation":
        return _parse_images(rest, n, size)
    return _parse_cycles(rest, n, size)


def _parse_images(text: str, n: int, size: int) -> Permutation:
    images = []
    first_seen: dict[int, tuple[int, int]] = {}
    for lineno, col, tok in _tokens(text):
        if not tok.isdigit():
            raise MalformedBody(f"expected a decimal image, got {tok!r}", lineno, col)
        v = int(tok)
        if v >= size:
            raise OutOfRange(f"image {v} outside [0, {size})", lineno, col)
        if v in first_seen:
            l0, c0 = first_seen[v]
            raise NonBijective(f"image {v} repeats (first at {l0}:{c0})", lineno, col)
        first_seen[v] = (lineno, col)
        images.append(v)
        if len(images) > size:
            raise MalformedBody(f"more than {size} images", lineno, col)
    if len(images) != size:
        raise MalformedBody(f"expected {size} images, got {len(images)}", 0, 0)
    return Permutation(n, tuple(images))


_CYCLE = re.compile(r"\(([^()]*)\)")


def _parse_cycles(text: str, n: int, size: int) -> Permutation:
    cycles = []
    seen: dict[int, tuple[int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        pos = 0
        for m in _CYCLE.finditer(body):
            gap = body[pos:m.start()]
            if gap.strip():
                raise MalformedBody(f"unexpected text {gap.strip()!r}", lineno, pos + 1)
            pos = m.end()
            terms = []
            for tm in re.finditer(r"[^,]+", m.group(1)):
                tok = tm.group().strip()
                col = m.start() + 2 + tm.start()
                if not tok.isdigit():
                    raise MalformedBody(f"expected a decimal term, got {tok!r}", lineno, col)
                v = int(tok)
                if v >= size:
                    raise OutOfRange(f"term {v} outside [0, {size})", lineno, col)
                if v in seen:
                    raise NonBijective(f"term {v} appears twice (first at {seen[v][0]}:{seen[v][1]})",
                                       lineno, col)
                seen[v] = (lineno, col)
                terms.append(v)
            if len(terms) == 1:
                continue
            if not terms:
                raise MalformedBody("empty cycle", lineno, m.start() + 1)
            cycles.append(Cycle(tuple(terms)))
        if body[pos:].strip():
            raise MalformedBody(f"unexpected text {body[pos:].strip()!r}", lineno, pos + 1)
    return compose(cycles, n)


def write_spec(p: Permutation, form: str = "permutation", per_line: int = 16) -> str:
    out = [f".numvars {p.lines}", f".{form}"]
    if form == "permutation":
        imgs = [str(v) for v in p.images]
        out += [" ".join(imgs[i:i + per_line]) for i in range(0, len(imgs), per_line)]
    elif form == "cycles":
        cyc = [repr(c) for c in to_disjoint_cycles(p)]
        out += ["".join(cyc[i:i + 8]) for i in range(0, len(cyc), 8)]
    else:
        raise ValueError(f"unknown form {form!r}")
    return "\n".join(out) + "\n"


# ----------------------------------------------------------------- circuits

def _line_index(tok: str, lineno: int, col: int, n: int) -> int:
    m = re.fullmatch(r"x(\d+)", tok)
    if not m:
        raise MalformedBody(f"expected a line name x<i>, got {tok!r}", lineno, col)
    i = int(m.group(1))
    if i >= n:
        raise OutOfRange(f"line {i} outside [0, {n})", lineno, col)
    return i


def parse_circuit(text: str) -> Circuit:
    lines = list(_lines(text))
    it = iter(lines)

    def header(expect: str):
        try:
            lineno, body = next(it)
        except StopIteration:
            raise MalformedHeader(f"missing {expect}", (lines[-1][0] + 1) if lines else 1, 1) from None
        return lineno, body

    lineno, body = header(".version")
    if body.split() != [".version", "1"]:
        raise MalformedHeader(f"expected '.version 1', got {body.strip()!r}", lineno, 1)
    n = _numvars(*header(".numvars"))
    main = n
    lineno, body = header(".begin")
    if body.split()[0] == ".main":
        parts = body.split()
        if len(parts) != 2 or not parts[1].isdigit() or not 1 <= int(parts[1]) <= n:
            raise MalformedHeader(f"bad main register size in {body.strip()!r}", lineno, 1)
        main = int(parts[1])
        lineno, body = header(".begin")
    if body.strip() != ".begin":
        raise MalformedHeader(f"expected '.begin', got {body.strip()!r}", lineno, 1)
    gates: list[Gate] = []
    ended = False
    for lineno, body in it:
        if ended:
            raise MalformedBody("text after '.end'", lineno, 1)
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        col, op = toks[0]
        if op == ".end" and len(toks) == 1:
            ended = True
            continue
        gates.append(_parse_gate(op, toks[1:], lineno, col, n))
    if not ended:
        raise MalformedBody("missing '.end'", (lines[-1][0] + 1) if lines else 1, 1)
    return Circuit(n, tuple(gates), main)


def _parse_gate(op: str, args, lineno: int, col: int, n: int) -> Gate:
    def distinct(idx):
        seen = {}
        for (c, _), i in zip(args, idx):
            if i in seen:
                raise DuplicateLine(f"line x{i} used twice in one gate", lineno, c)
            seen[i] = c

    if op == "n":
        if len(args) != 1:
            raise MalformedBody("NOT takes one line", lineno, col)
        return Not(_line_index(args[0][1], lineno, args[0][0], n))
    if op == "s":
        if len(args) != 2:
            raise MalformedBody("SWAP takes two lines", lineno, col)
        idx = [_line_index(t, lineno, c, n) for c, t in args]
        distinct(idx)
        return Swap(idx[0], idx[1])
    m = re.fullmatch(r"t(\d+)", op)
    if not m:
        raise UnknownGate(f"unknown gate {op!r}", lineno, col)
    k = int(m.group(1))
    if k < 1 or len(args) != k:
        raise MalformedBody(f"{op} needs {k} line tokens, got {len(args)}", lineno, col)
    idx, pol = [], []
    for c, t in args[:-1]:
        neg = t.startswith("-")
        idx.append(_line_index(t[1:] if neg else t, lineno, c + neg, n))
        pol.append(not neg)
    c, t = args[-1]
    if t.startswith("-"):
        raise MalformedBody("the target cannot be negated", lineno, c)
    idx.append(_line_index(t, lineno, c, n))
    distinct(idx)
    return MCT(tuple(zip(idx[:-1], pol)), idx[-1])


def write_circuit(c: Circuit) -> str:
    out = [".version 1", f".numvars {c.width}"]
    if c.main_lines != c.width:
        out.append(f".main {c.main_lines}")
    out.append(".begin")
    for g in c.gates:
        if isinstance(g, Not):
            out.append(f"n x{g.target}")
        elif isinstance(g, Swap):
            out.append(f"s x{g.a} x{g.b}")
        else:
            toks = [("" if p else "-") + f"x{l}" for l, p in g.controls] + [f"x{g.target}"]
            out.append(f"t{len(toks)} " + " ".join(toks))
    out.append(".end")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------- benchmarks

def hwb(n: int) -> Permutation:
    """Hidden weighted bit: rotate ``x`` left by its Hamming weight."""
    if not 2 <= n <= 20:
        raise ValueError("hwb is generated for 2 <= n <= 20")
    x = np.arange(1 << n, dtype=np.int64)
    w = np.zeros_like(x)
    for b in range(n):
        w += (x >> b) & 1
    s = w % n
    mask = (1 << n) - 1
    out = ((x << s) | (x >> ((n - s) % n))) & mask
    out = np.where(s == 0, x, out)
    return Permutation(n, tuple(out.tolist()))
