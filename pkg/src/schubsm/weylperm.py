"""Symmetric groups, extended affine symmetric groups and their Bruhat orders.

Finite permutations are plain tuples in one-line notation.  Elements of the
extended affine symmetric group are :class:`AffinePerm` windows
``(f(1), ..., f(n))`` with ``f(i + n) = f(i) + n``.  Composition is
``(f * g)(i) = f(g(i))``; ``s_i * f`` permutes values, ``f * s_i`` positions.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .symra import LinearForm, RatFunc, Ring

FinitePerm = tuple  # one-line notation, values 1..n

MAX_POSET_N = 6


class WindowError(ValueError):
    """An integer sequence that is not a valid affine window."""


# ---------------------------------------------------------------------------
# finite permutations


def identity(n: int) -> FinitePerm:
    return tuple(range(1, n + 1))


def longest(n: int) -> FinitePerm:
    return tuple(range(n, 0, -1))


def all_perms(n: int) -> list[FinitePerm]:
    """All of S_n sorted by (length, one-line)."""
    return sorted(itertools.permutations(range(1, n + 1)), key=lambda p: (inversions(p), p))


def check_perm(p: Sequence[int]) -> FinitePerm:
    p = tuple(int(v) for v in p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise ValueError(f"{p} is not a permutation of 1..{len(p)}")
    return p


def parse_perm(text: str) -> FinitePerm:
    """``"2134"`` or ``"2,1,3,4"``."""
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    return check_perm(int(v) for v in parts)


def perm_str(p: FinitePerm) -> str:
    return ("" if len(p) < 10 else ",").join(map(str, p))


def pmul(u: FinitePerm, w: FinitePerm) -> FinitePerm:
    return tuple(u[w[i] - 1] for i in range(len(w)))


def pinv(u: FinitePerm) -> FinitePerm:
    out = [0] * len(u)
    for i, v in enumerate(u, 1):
        out[v - 1] = i
    return tuple(out)


def inversions(u: Sequence[int]) -> int:
    n = len(u)
    return sum(1 for a in range(n) for b in range(a + 1, n) if u[a] > u[b])


def left_mul_simple(i: int, u: FinitePerm) -> FinitePerm:
    """``s_i * u``: swap the values i and i+1."""
    return tuple(i + 1 if v == i else i if v == i + 1 else v for v in u)


def right_mul_simple(u: FinitePerm, i: int) -> FinitePerm:
    """``u * s_i``: swap the entries in positions i and i+1."""
    u = list(u)
    u[i - 1], u[i] = u[i], u[i - 1]
    return tuple(u)


def right_mul_transposition(u: FinitePerm, a: int, b: int) -> FinitePerm:
    u = list(u)
    u[a - 1], u[b - 1] = u[b - 1], u[a - 1]
    return tuple(u)


def finite_left_descents(u: FinitePerm) -> list[int]:
    pos = pinv(u)
    return [i for i in range(1, len(u)) if pos[i - 1] > pos[i]]


def finite_reduced_word(u: FinitePerm, tie: str = "smallest") -> list[int]:
    """Word ``i_1..i_l`` with ``u = s_{i_1} ... s_{i_l}``."""
    word = []
    while True:
        d = finite_left_descents(u)
        if not d:
            return word
        i = d[0] if tie == "smallest" else d[-1]
        word.append(i)
        u = left_mul_simple(i, u)


def finite_bruhat_leq(u: FinitePerm, w: FinitePerm) -> bool:
    """Tableau criterion: sorted prefixes of u are dominated by those of w."""
    if len(u) != len(w):
        raise ValueError("ambient mismatch")
    for k in range(1, len(u)):
        if any(a > b for a, b in zip(sorted(u[:k]), sorted(w[:k]))):
            return False
    return True


# ---------------------------------------------------------------------------
# affine permutations


@dataclass(frozen=True)
class AffinePerm:
    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(v) for v in self.window)
        object.__setattr__(self, "window", w)
        n = len(w)
        if n == 0:
            raise WindowError("empty window")
        if len({v % n for v in w}) != n:
            raise WindowError(f"window {list(w)} repeats a residue mod {n}")
        # distinct residues already force n | sum(f(i) - i)

    # -- construction

    @classmethod
    def from_text(cls, text: str) -> "AffinePerm":
        try:
            return cls(tuple(int(v) for v in text.split(",")))
        except ValueError as exc:
            if isinstance(exc, WindowError):
                raise
            raise WindowError(f"window {text!r} is not a comma-separated list of integers") from exc

    @classmethod
    def identity(cls, n: int) -> "AffinePerm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def translation(cls, lam: Sequence[int]) -> "AffinePerm":
        n = len(lam)
        return cls(tuple(i + lam[i - 1] * n for i in range(1, n + 1)))

    @classmethod
    def simple(cls, i: int, n: int) -> "AffinePerm":
        if not 0 <= i < n or n < 2:
            raise WindowError(f"simple reflection s_{i} undefined for n={n}")
        w = list(range(1, n + 1))
        if i == 0:
            w[0], w[n - 1] = 0, n + 1
        else:
            w[i - 1], w[i] = i + 1, i
        return cls(tuple(w))

    @classmethod
    def shift(cls, m: int, n: int) -> "AffinePerm":
        return cls(tuple(i + m for i in range(1, n + 1)))

    @classmethod
    def from_finite(cls, u: FinitePerm) -> "AffinePerm":
        return cls(tuple(u))

    @classmethod
    def from_uw(cls, u: FinitePerm, w: FinitePerm, lam: Sequence[int]) -> "AffinePerm":
        """``u * t_lam * w^{-1}``."""
        return cls.from_finite(u) * cls.translation(lam) * cls.from_finite(pinv(w))

    # -- group structure

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        q, r = divmod(i - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: "AffinePerm") -> "AffinePerm":
        if self.n != other.n:
            raise WindowError(f"ambient mismatch {self.n} vs {other.n}")
        return AffinePerm(tuple(self(v) for v in other.window))

    def inverse(self) -> "AffinePerm":
        n = self.n
        out = [0] * n
        for i, v in enumerate(self.window, 1):
            q, r = divmod(v - 1, n)
            out[r] = i - q * n
        return AffinePerm(tuple(out))

    @cached_property
    def _inv(self) -> "AffinePerm":
        return self.inverse()

    @property
    def degree(self) -> int:
        return (sum(self.window) - self.n * (self.n + 1) // 2) // self.n

    def finite_part(self) -> FinitePerm:
        """The ``w`` in ``f = w * t_lam``."""
        n = self.n
        return tuple((v - 1) % n + 1 for v in self.window)

    def translation_part(self) -> tuple[int, ...]:
        """The ``lam`` in ``f = w * t_lam``."""
        n = self.n
        return tuple((v - 1) // n for v in self.window)

    def left_simple(self, i: int) -> "AffinePerm":
        return AffinePerm.simple(i, self.n) * self

    def right_simple(self, i: int) -> "AffinePerm":
        return self * AffinePerm.simple(i, self.n)

    # -- length and descents

    @cached_property
    def length(self) -> int:
        n, w = self.n, self.window
        return sum(abs((w[j] - w[i]) // n) for i in range(n) for j in range(i + 1, n))

    def is_left_descent(self, i: int) -> bool:
        inv = self._inv
        return inv(i) > inv(i + 1)

    def left_descents(self) -> list[int]:
        return [i for i in range(self.n) if self.is_left_descent(i)]

    def right_descents(self) -> list[int]:
        return [i for i in range(self.n) if self(i) > self(i + 1)]

    def reduced_word(self, tie: str = "smallest") -> tuple[list[int], int]:
        """``(word, m)`` with ``self = s_{word[0]} ... s_{word[-1]} * omega^m``."""
        word = []
        f = self
        while True:
            d = f.left_descents()
            if not d:
                return word, f.degree
            i = d[0] if tie == "smallest" else d[-1]
            word.append(i)
            f = f.left_simple(i)

    def finite_part_action(self, form: LinearForm, ring: Ring) -> LinearForm:
        """Finite part of ``self`` acting on y-indices (delta = 0)."""
        w = self.finite_part()
        target = list(range(ring.k)) + [ring.k + w[j] - 1 for j in range(ring.n)]
        return form.remap(target, ring.nvars)

    def root_image(self, i: int, ring: Ring) -> RatFunc:
        """``self(alpha_i)`` as a y-linear function."""
        a, b = (self.n, 1) if i == 0 else (i, i + 1)
        alpha = ring.form({f"y{a}": -1, f"y{b}": 1})
        return RatFunc.from_form(ring, self.finite_part_action(alpha, ring))

    def __str__(self) -> str:
        return ",".join(map(str, self.window))

    def __lt__(self, other: "AffinePerm") -> bool:
        return self.window < other.window


def brute_length(f: AffinePerm) -> int:
    """Count ``(a, b)`` with ``1 <= a <= n``, ``a < b`` and ``f(a) > f(b)``."""
    n = f.n
    span = max(f.window) - min(f.window) + 2 * n
    count = 0
    for a in range(1, n + 1):
        for b in range(a + 1, a + span + 1):
            if f(a) > f(b):
                count += 1
    return count


def translation_length(lam: Sequence[int]) -> int:
    return sum(abs(lam[i] - lam[j]) for i in range(len(lam)) for j in range(i + 1, len(lam)))


def bruhat_leq(f: AffinePerm, g: AffinePerm) -> bool:
    """Bruhat order on the extended affine symmetric group.

    Different degrees compare false.  Otherwise strip left descents of ``g``
    one at a time (lifting property).
    """
    if f.n != g.n:
        raise WindowError("ambient mismatch")
    if f.degree != g.degree:
        return False
    while True:
        if f.length > g.length:
            return False
        if g.length == 0:
            return f == g
        i = g.left_descents()[0]
        if f.is_left_descent(i):
            f = f.left_simple(i)
        g = g.left_simple(i)


def affine_reflections(n: int, reach: int) -> Iterable[tuple[int, int]]:
    """Pairs ``a < b`` (``1 <= a <= n``, ``b - a <= reach``, distinct residues)."""
    for a in range(1, n + 1):
        for b in range(a + 1, a + reach + 1):
            if (b - a) % n:
                yield a, b


def right_mul_reflection(f: AffinePerm, a: int, b: int) -> AffinePerm:
    """``f * t_{a,b}`` where t swaps ``a + mn`` and ``b + mn`` for all m."""
    n = f.n
    w = list(f.window)
    ra, rb = (a - 1) % n, (b - 1) % n
    # window slot ra holds f(a - qa*n), slot rb holds f(b - qb*n)
    qa, qb = (a - ra - 1) // n, (b - rb - 1) // n
    w[ra] = f(b) - qa * n
    w[rb] = f(a) - qb * n
    return AffinePerm(tuple(w))


def bruhat_leq_bfs(f: AffinePerm, g: AffinePerm) -> bool:
    """Oracle: walk down from ``g`` through Bruhat covers."""
    if f.degree != g.degree:
        return False
    target = f.length
    if target > g.length:
        return False
    reach = f.n * (g.length + 2)
    level = {g}
    for _ in range(g.length - target):
        nxt = set()
        for h in level:
            lh = h.length
            for a, b in affine_reflections(h.n, reach):
                k = right_mul_reflection(h, a, b)
                if k.length == lh - 1:
                    nxt.add(k)
        level = nxt
    return f in level


def enumerate_by_length(n: int, max_len: int, degree: int = 0) -> list[AffinePerm]:
    """All elements of a fixed degree with length <= max_len (BFS on left multiplication)."""
    start = AffinePerm.shift(degree, n)
    seen = {start}
    frontier = [start]
    for _ in range(max_len):
        nxt = []
        for h in frontier:
            for i in range(n):
                k = h.left_simple(i)
                if k.length == h.length + 1 and k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted(seen, key=lambda h: (h.length, h.window))


# ---------------------------------------------------------------------------
# parabolic data and extended P-Bruhat order


@dataclass(frozen=True)
class ParabolicData:
    """Dominant cocharacter ``lam`` and the simple reflections fixing it."""

    lam: tuple[int, ...]
    simple_set: frozenset = field(init=False)

    def __post_init__(self):
        lam = tuple(int(v) for v in self.lam)
        if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
            raise ValueError(f"cocharacter {lam} is not dominant")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "simple_set", frozenset(i for i in range(1, len(lam)) if lam[i - 1] == lam[i]))

    @classmethod
    def from_simple_set(cls, n: int, simple: Iterable[int]) -> "ParabolicData":
        simple = set(simple)
        if any(not 1 <= i < n for i in simple):
            raise ValueError(f"simple indices {sorted(simple)} out of range for n={n}")
        lam = [0] * n
        for i in range(n - 1, 0, -1):
            lam[i - 1] = lam[i] + (0 if i in simple else 1)
        return cls(tuple(lam))

    @property
    def n(self) -> int:
        return len(self.lam)

    @cached_property
    def blocks(self) -> list[tuple[int, ...]]:
        out, cur = [], [1]
        for i in range(1, self.n):
            if i in self.simple_set:
                cur.append(i + 1)
            else:
                out.append(tuple(cur))
                cur = [i + 1]
        out.append(tuple(cur))
        return out

    @cached_property
    def block_of(self) -> dict[int, int]:
        return {p: b for b, blk in enumerate(self.blocks) for p in blk}

    def same_block(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def positive_roots_P(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(1, self.n + 1) for b in range(a + 1, self.n + 1) if self.same_block(a, b)]

    def positive_roots_outside(self) -> list[tuple[int, int]]:
        """``R^+ \\ R^+_P`` as pairs ``a < b``."""
        return [(a, b) for a in range(1, self.n + 1) for b in range(a + 1, self.n + 1) if not self.same_block(a, b)]

    def W_P(self) -> list[FinitePerm]:
        return [v for v in itertools.permutations(range(1, self.n + 1)) if all(self.same_block(i, v[i - 1]) for i in range(1, self.n + 1))]

    def min_coset_rep(self, w: FinitePerm) -> tuple[FinitePerm, FinitePerm]:
        """``(w v, v)`` with ``v`` in W_P and ``w v`` in W^P."""
        wv = list(w)
        for blk in self.blocks:
            vals = sorted(w[p - 1] for p in blk)
            for p, val in zip(blk, vals):
                wv[p - 1] = val
        wv = tuple(wv)
        return wv, pmul(pinv(w), wv)

    def is_min_rep(self, w: FinitePerm) -> bool:
        return self.min_coset_rep(w)[0] == tuple(w)

    def W_upper_P(self) -> list[FinitePerm]:
        return [w for w in all_perms(self.n) if self.is_min_rep(w)]

    def orbit(self) -> list[tuple[int, ...]]:
        """``W lam`` in lexicographically decreasing order (``lam`` first)."""
        return sorted(set(itertools.permutations(self.lam)), reverse=True)

    def act(self, v: FinitePerm) -> tuple[int, ...]:
        """``v lam``: entry ``v(i)`` receives ``lam_i``."""
        mu = [0] * self.n
        for i in range(self.n):
            mu[v[i] - 1] = self.lam[i]
        return tuple(mu)

    def describe(self) -> str:
        return "<" + ",".join(f"s{i}" for i in sorted(self.simple_set)) + ">"


def ext_p_bruhat(u: FinitePerm, w: FinitePerm, P: ParabolicData, algorithm: str = "coset_reduce") -> bool:
    """Extended P-Bruhat order ``u <=_P w``."""
    u, w = tuple(u), tuple(w)
    if algorithm == "cover_bfs":
        steps = P.positive_roots_outside()
        seen = {u}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == w:
                return True
            for a, b in steps:
                if x[a - 1] < x[b - 1]:
                    y = right_mul_transposition(x, a, b)
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return False
    if algorithm == "coset_reduce":
        wv, v = P.min_coset_rep(w)
        return finite_bruhat_leq(pmul(u, v), wv)
    if algorithm == "affine":
        f = AffinePerm.from_uw(u, w, P.lam)
        return any(bruhat_leq(f, AffinePerm.translation(mu)) for mu in P.orbit())
    raise ValueError(f"unknown algorithm {algorithm!r}")


def k_bruhat(u: FinitePerm, w: FinitePerm, k: int) -> bool:
    n = len(u)
    if not 1 <= k < n:
        raise ValueError(f"k={k} outside 1..{n - 1}")
    return all(u[a] <= w[a] for a in range(k)) and all(u[b] >= w[b] for b in range(k, n))


def p_bruhat_arcs(P: ParabolicData, ordinary: bool = False) -> list[tuple[FinitePerm, FinitePerm]]:
    """Single-step relations ``u -> u s_alpha``; ``ordinary`` keeps length+1 steps only."""
    arcs = []
    for u in all_perms(P.n):
        lu = inversions(u)
        for a, b in P.positive_roots_outside():
            if u[a - 1] < u[b - 1]:
                w = right_mul_transposition(u, a, b)
                if not ordinary or inversions(w) == lu + 1:
                    arcs.append((u, w))
    return sorted(arcs, key=lambda uw: (inversions(uw[0]), uw[0], inversions(uw[1]), uw[1]))


def poset_export(P: ParabolicData, n: int | None = None, limit: int = MAX_POSET_N) -> str:
    n = P.n if n is None else n
    if n != P.n:
        raise ValueError(f"parabolic data has n={P.n}, requested n={n}")
    if n > limit:
        raise ValueError(f"poset export refused: n={n} exceeds limit {limit}")
    lines = [f'digraph "ext_P_Bruhat_n{n}_{P.describe()}" {{', "  rankdir=BT;"]
    for u in all_perms(n):
        lines.append(f'  "{perm_str(u)}";')
    for u, w in p_bruhat_arcs(P):
        lines.append(f'  "{perm_str(u)}" -> "{perm_str(w)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# bounded affine permutations


def is_bounded(f: AffinePerm) -> bool:
    return all(i <= f(i) <= i + f.n for i in range(1, f.n + 1))


def enumerate_bounded(k: int, n: int) -> list[AffinePerm]:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    out = []
    for win in itertools.product(*(range(i, i + n + 1) for i in range(1, n + 1))):
        if sum(win) - n * (n + 1) // 2 != k * n:
            continue
        if len({v % n for v in win}) != n:
            continue
        out.append(AffinePerm(win))
    return sorted(out, key=lambda f: f.window)


def decorated_permutation_count(k: int, n: int) -> int:
    """Oracle: ``sum over pi of C(#fix(pi), k - #exc(pi))``."""
    from math import comb

    total = 0
    for p in itertools.permutations(range(1, n + 1)):
        fix = sum(1 for i, v in enumerate(p, 1) if v == i)
        exc = sum(1 for i, v in enumerate(p, 1) if v > i)
        if 0 <= k - exc <= fix:
            total += comb(fix, k - exc)
    return total
