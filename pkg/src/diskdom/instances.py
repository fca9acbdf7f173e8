"""Instance files and random instance generators.

File grammar (UTF-8, line oriented, ``#`` starts a comment)::

    problem mwds|msds|lkc
    disks <m>
    x y r w          (m lines)
    points <n>       (lkc only)
    x y              (n lines)
    k <K>            (lkc only)
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import Disk, Point, contains, disk
from .graphs import build_containment_graph, build_directed_graph
from .lkc import LkcInstance

PROBLEMS = ("mwds", "msds", "lkc")
MAX_ATTEMPTS = 1000


class ParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class Instance:
    problem: str
    disks: tuple[Disk, ...]
    points: tuple[Point, ...] = ()
    K: int = 0

    def containment_graph(self):
        return build_containment_graph(self.disks)

    def directed_graph(self):
        return build_directed_graph(self.disks)

    def lkc(self) -> LkcInstance:
        return LkcInstance.create(self.disks, self.points, self.K)

    def digest(self) -> str:
        return hashlib.sha256(write_instance(self).encode()).hexdigest()[:16]


def _fmt(v: float) -> str:
    return repr(float(v))


def write_instance(inst: Instance) -> str:
    lines = [f"problem {inst.problem}", f"disks {len(inst.disks)}"]
    lines += [f"{_fmt(d.center.x)} {_fmt(d.center.y)} {_fmt(d.radius)} {_fmt(d.weight)}" for d in inst.disks]
    if inst.problem == "lkc":
        lines.append(f"points {len(inst.points)}")
        lines += [f"{_fmt(p.x)} {_fmt(p.y)}" for p in inst.points]
        lines.append(f"k {inst.K}")
    return "\n".join(lines) + "\n"


def _numbers(tokens: list[str], lineno: int, expected: int) -> list[float]:
    if len(tokens) != expected:
        raise ParseError(lineno, f"expected {expected} numbers, got {len(tokens)}")
    try:
        vals = [float(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"non-numeric token in {' '.join(tokens)!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise ParseError(lineno, "non-finite value")
    return vals


def _count(tokens: list[str], lineno: int, keyword: str) -> int:
    if len(tokens) != 2 or tokens[0] != keyword:
        raise ParseError(lineno, f"expected '{keyword} <count>'")
    try:
        n = int(tokens[1])
    except ValueError:
        raise ParseError(lineno, f"'{keyword}' count must be an integer") from None
    if n < 0:
        raise ParseError(lineno, f"'{keyword}' count must be non-negative")
    return n


def parse_instance(text: str) -> Instance:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            rows.append((lineno, tokens))
    last_line = rows[-1][0] if rows else 1
    it = iter(rows)

    def take(what: str):
        try:
            return next(it)
        except StopIteration:
            raise ParseError(last_line, f"unexpected end of file, expected {what}") from None

    lineno, tokens = take("'problem' line")
    if len(tokens) != 2 or tokens[0] != "problem" or tokens[1] not in PROBLEMS:
        raise ParseError(lineno, "expected 'problem mwds|msds|lkc'")
    problem = tokens[1]
    lineno, tokens = take("'disks' line")
    m = _count(tokens, lineno, "disks")
    disks = []
    for i in range(m):
        lineno, tokens = take(f"{m} disk lines, got {i}")
        x, y, r, w = _numbers(tokens, lineno, 4)
        if r <= 0:
            raise ParseError(lineno, f"radius must be positive, got {r}")
        if w <= 0:
            raise ParseError(lineno, f"weight must be positive, got {w}")
        disks.append(disk(i, x, y, r, w))
    points = []
    K = 0
    if problem == "lkc":
        lineno, tokens = take("'points' line")
        n = _count(tokens, lineno, "points")
        for i in range(n):
            lineno, tokens = take(f"{n} point lines, got {i}")
            points.append(Point(*_numbers(tokens, lineno, 2)))
        lineno, tokens = take("'k' line")
        K = _count(tokens, lineno, "k")
        if K < 1:
            raise ParseError(lineno, "k must be at least 1")
    extra = next(it, None)
    if extra is not None:
        raise ParseError(extra[0], "unexpected trailing content")
    return Instance(problem, tuple(disks), tuple(points), K)


def read_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def _r(v: float) -> float:
    return round(float(v), 6)


def generate(kind: str, n: int, density: float = 1.0, radius_range: tuple[float, float] = (0.8, 2.0),
             weight_range: tuple[float, float] = (1.0, 5.0), seed: int = 0, points: Optional[int] = None,
             K: int = 1) -> Instance:
    """Random instance, reproducible per ``seed``.

    ``density`` is disks per unit area. For ``lkc``, ``n`` disks have centers
    in a strip above ``y = 0`` and ``points`` targets are drawn below it; a
    target landing in fewer than ``K`` disks is redrawn.
    """
    if kind not in PROBLEMS:
        raise ValueError(f"unknown kind {kind!r}")
    rlo, rhi = radius_range
    wlo, whi = weight_range
    if n < 1 or density <= 0 or rlo <= 0 or rhi < rlo or wlo <= 0 or whi < wlo:
        raise ValueError("generator parameters must be positive with lo <= hi")
    rng = np.random.default_rng(seed)
    if kind in ("mwds", "msds"):
        side = math.sqrt(n / density)
        ds = []
        for i in range(n):
            x, y = rng.uniform(0.0, side, 2)
            ds.append(disk(i, _r(x), _r(y), _r(rng.uniform(rlo, rhi)), _r(rng.uniform(wlo, whi))))
        return Instance(kind, tuple(ds))
    if K < 1:
        raise ValueError("K must be at least 1")
    npts = n if points is None else points
    width = max(rhi, n / (density * rhi))
    ds = []
    for i in range(n):
        r = _r(rng.uniform(rlo, rhi))
        cx = _r(rng.uniform(0.0, width))
        cy = _r(rng.uniform(0.1, 0.9) * r)
        ds.append(disk(i, cx, cy, r, _r(rng.uniform(wlo, whi))))
    if npts and sum(1 for d in ds if d.center.y < d.radius) < K:
        raise ValueError("K-feasibility not achievable: fewer than K disks reach below y = 0")
    pts = []
    for _ in range(npts):
        for _attempt in range(MAX_ATTEMPTS):
            p = Point(_r(rng.uniform(0.0, width)), _r(-rng.uniform(0.0, rhi)))
            if sum(1 for d in ds if contains(d, p)) >= K:
                pts.append(p)
                break
        else:
            raise ValueError(f"K-feasibility not achievable in {MAX_ATTEMPTS} attempts")
    return Instance("lkc", tuple(ds), tuple(pts), K)
