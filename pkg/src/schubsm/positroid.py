"""Cylindrical pipe dreams and the generating function F~_f.

A pipe dream is a k x n grid of tiles on a cylinder.  ``X`` (cross) sends a
pipe straight through; ``B`` (bump) turns south into east and west into north.
Rows are listed top to bottom.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .chernaffine import AffineLocContext
from .symra import Polynomial, RatFunc, Ring, _padd, _pmul, substitute_x, swap_x
from .weylperm import AffinePerm, WindowError, is_bounded

MAX_GRID = 24
MAX_SPECIALIZE_N = 5


class PipeDreamError(ValueError):
    pass


def _row_map(row: str, n: int) -> tuple[int, ...]:
    """Where a pipe entering the bottom of column j leaves the top of the row."""
    if "B" not in row:
        raise PipeDreamError(f"row {row!r} has no bump: a pipe winds forever, no reading permutation")
    out = []
    for j in range(1, n + 1):
        if row[j - 1] == "X":
            out.append(j)
            continue
        c = j + 1
        while row[(c - 1) % n] != "B":
            c += 1
        out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class PipeDream:
    k: int
    n: int
    rows: tuple[str, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.k or any(len(r) != self.n or set(r) - {"B", "X"} for r in rows):
            raise PipeDreamError(f"grid must be {self.k} rows of {self.n} characters from B/X")

    @classmethod
    def from_ascii(cls, text: str) -> "PipeDream":
        rows = [r.strip() for r in text.strip().splitlines() if r.strip()]
        return cls(len(rows), len(rows[0]) if rows else 0, tuple(rows))

    @classmethod
    def from_json(cls, obj) -> "PipeDream":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["k"]), int(obj["n"]), tuple(obj["rows"]))

    def to_ascii(self) -> str:
        return "\n".join(self.rows)

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "rows": list(self.rows)}

    def crosses(self) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.rows, 1) for j, t in enumerate(row, 1) if t == "X"]


def _apply(window: Sequence[int], j: int, n: int) -> int:
    q, r = divmod(j - 1, n)
    return window[r] + q * n


def reading_permutation(pd: PipeDream) -> AffinePerm:
    """Compose row maps from the bottom row up."""
    n = pd.n
    current = tuple(range(1, n + 1))
    for row in reversed(pd.rows):
        rho = _row_map(row, n)
        current = tuple(_apply(rho, v, n) for v in current)
    return AffinePerm(current)


def _check_size(k: int, n: int, limit: int) -> None:
    if k * n > limit:
        raise ValueError(f"pipe dream enumeration refused: k*n={k * n} exceeds limit {limit}")


def _all_rows(n: int) -> list[str]:
    return ["".join(t) for t in itertools.product("BX", repeat=n) if "B" in t]


def enumerate_pd(f: AffinePerm, method: str = "dfs", limit: int = MAX_GRID) -> list[PipeDream]:
    k, n = f.degree, f.n
    if not is_bounded(f):
        raise WindowError(f"window {list(f.window)} is not a bounded affine permutation")
    _check_size(k, n, limit)
    if k == 0:
        return [PipeDream(0, n, ())]
    if method == "brute":
        out = []
        for rows in itertools.product(["".join(t) for t in itertools.product("BX", repeat=n)], repeat=k):
            if any("B" not in r for r in rows):
                continue
            pd = PipeDream(k, n, rows)
            if reading_permutation(pd) == f:
                out.append(pd)
        return sorted(out, key=lambda p: p.rows)
    if method != "dfs":
        raise ValueError(f"unknown method {method!r}")

    rows = _all_rows(n)
    maps = {r: _row_map(r, n) for r in rows}
    target = f.window
    found: list[tuple[str, ...]] = []

    def last_row(h: tuple[int, ...]) -> str | None:
        # rho = f o h^{-1}; rho(c) = c exactly at crosses
        hinv = AffinePerm(h).inverse()
        rho = tuple(_apply(target, hinv(c), n) for c in range(1, n + 1))
        row = "".join("X" if rho[c - 1] == c else "B" for c in range(1, n + 1))
        if "B" in row and maps[row] == rho:
            return row
        return None

    def dfs(below: list[str], h: tuple[int, ...]) -> None:
        left = k - len(below)
        if left == 1:
            row = last_row(h)
            if row is not None:
                found.append((row, *reversed(below)))
            return
        for r in rows:
            rho = maps[r]
            h2 = tuple(_apply(rho, v, n) for v in h)
            if len(set(v % n for v in h2)) != n:
                continue
            # each later row moves a pipe by 0..n columns
            if all(h2[j] <= target[j] <= h2[j] + n * (left - 1) for j in range(n)):
                dfs(below + [r], h2)

    dfs([], tuple(range(1, n + 1)))
    return sorted((PipeDream(k, n, tuple(r)) for r in found), key=lambda p: p.rows)


def pd_weight_numerator(pd: PipeDream, ring: Ring) -> dict:
    out = {0: 1}
    for i, j in pd.crosses():
        out = _pmul(out, ring.form({f"x{i}": 1, f"y{j}": -1}).poly())
    return out


def full_denominator(k: int, n: int) -> list:
    ring = Ring(k, n)
    return [(ring.form({f"x{i}": 1, f"y{j}": -1}, 1), 1) for i in range(1, k + 1) for j in range(1, n + 1)]


def f_tilde(f: AffinePerm, method: str = "dfs", limit: int = MAX_GRID) -> RatFunc:
    """``sum over PD(f)`` of the tile weights over the full product ``prod (1 + x_i - y_j)``."""
    k, n = f.degree, f.n
    ring = Ring(k, n)
    num: dict = {}
    for pd in enumerate_pd(f, method, limit):
        num = _padd(num, pd_weight_numerator(pd, ring))
    den = sorted(full_denominator(k, n), key=lambda fm: fm[0].sort_key())
    return RatFunc._make(ring, RatFunc.constant(ring, 1).pref, num, tuple(den))


def indicator(subset: Iterable[int], n: int) -> tuple[int, ...]:
    s = set(subset)
    return tuple(1 if i in s else 0 for i in range(1, n + 1))


@dataclass
class SpecializeReport:
    window: tuple
    instances: int = 0
    mismatches: list | None = None

    @property
    def ok(self) -> bool:
        return not self.mismatches


def specialize_check(f: AffinePerm, ctx: AffineLocContext | None = None) -> SpecializeReport:
    """Compare ``F~_f`` at ``x_i -> y_{a_i}`` with the affine value at ``t_mu``."""
    k, n = f.degree, f.n
    if n > MAX_SPECIALIZE_N:
        raise ValueError(f"specialization check refused: n={n} exceeds limit {MAX_SPECIALIZE_N}")
    ctx = ctx or AffineLocContext(n)
    F = f_tilde(f)
    report = SpecializeReport(f.window, 0, [])
    for S in itertools.combinations(range(1, n + 1), k):
        lhs = substitute_x(F, S)
        rhs = ctx.value(f, AffinePerm.translation(indicator(S, n)))
        report.instances += 1
        if lhs != rhs:
            report.mismatches.append(list(S))
    return report


def is_symmetric_in_x(F: RatFunc) -> bool:
    return all(swap_x(F, i) == F for i in range(1, F.ring.k))


def lowest_degree_part(r: RatFunc) -> RatFunc:
    """Lowest homogeneous part of the power-series expansion at 0.

    Only defined when every denominator factor has a nonzero constant term.
    """
    ring = r.ring
    if r.is_zero():
        return r
    scale = r.pref
    for form, mult in r.den:
        if form.const == 0:
            raise ValueError("denominator vanishes at the origin")
        scale = scale / form.const**mult
    poly = Polynomial(ring, r.num)
    low = min(_deg(m, ring) for m in poly.terms)
    part = {m: c for m, c in poly.terms.items() if _deg(m, ring) == low}
    return RatFunc.from_poly(ring, part) * scale


def _deg(m: int, ring: Ring) -> int:
    from .symra import _degree

    return _degree(m, ring.nvars)


# ---------------------------------------------------------------------------
# local moves of colored string diagrams


def crossing_matrix(ring: Ring, u: RatFunc, v: RatFunc) -> dict:
    """R-matrix on ordered color pairs ``(left, right)`` at one crossing.

    Distinct colors either stay in place (weight ``1/(1+u-v)``) or swap
    (weight ``(u-v)/(1+u-v)``); equal colors pass with weight 1.
    """
    d = u - v
    keep, swap = 1 / (1 + d), d / (1 + d)
    return {"keep": keep, "swap": swap, "same": ring.one()}


def _apply_crossing(state: dict, pos: int, u: RatFunc, v: RatFunc, ring: Ring) -> dict:
    w = crossing_matrix(ring, u, v)
    out: dict = {}
    for colors, val in state.items():
        a, b = colors[pos], colors[pos + 1]
        if a == b:
            out[colors] = out.get(colors, ring.zero()) + val
            continue
        out[colors] = out.get(colors, ring.zero()) + val * w["keep"]
        c = list(colors)
        c[pos], c[pos + 1] = b, a
        c = tuple(c)
        out[c] = out.get(c, ring.zero()) + val * w["swap"]
    return {c: v for c, v in out.items() if not v.is_zero()}


def _run(colors: tuple, steps, spectral, ring) -> dict:
    """Apply crossings ``(pos, left_string, right_string)`` in order."""
    state = {colors: ring.one()}
    lanes = list(range(len(colors)))
    for pos in steps:
        a, b = lanes[pos], lanes[pos + 1]
        state = _apply_crossing(state, pos, spectral[a], spectral[b], ring)
        lanes[pos], lanes[pos + 1] = b, a
    return state


def local_move_suite() -> list[dict]:
    """Yang-Baxter, unitarity and normalization on every boundary coloring."""
    ring = Ring(0, 3)
    spectral = [ring.y(1), ring.y(2), ring.y(3)]
    results = []
    for colors in itertools.product(range(3), repeat=3):
        lhs = _run(colors, [0, 1, 0], spectral, ring)
        rhs = _run(colors, [1, 0, 1], spectral, ring)
        ok = lhs.keys() == rhs.keys() and all(lhs[c] == rhs[c] for c in lhs)
        results.append({"identity": "yang-baxter", "colors": list(colors), "ok": ok})
    for colors in itertools.product(range(2), repeat=2):
        out = _run(colors, [0, 0], spectral[:2], ring)
        ok = out.keys() == {colors} and out[colors] == 1
        results.append({"identity": "unitarity", "colors": list(colors), "ok": ok})
        same = [spectral[0], spectral[0]]
        out = _run(colors, [0], same, ring)
        ok = out.keys() == {colors} and out[colors] == 1
        results.append({"identity": "normalization", "colors": list(colors), "ok": ok})
    return results
