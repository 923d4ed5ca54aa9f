"""Localized CSM and SM classes on type A flag and partial flag varieties.

Positive roots are ``alpha = -y_a + y_b`` for ``a < b``.  The tangent weights
of G/B at the fixed point ``v`` are ``y_{v(a)} - y_{v(b)}`` for ``a < b``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Mapping

from .symra import RatFunc, Ring, act_y, from_json, to_json
from .weylperm import (
    AffinePerm,
    FinitePerm,
    ParabolicData,
    all_perms,
    identity,
    inversions,
    left_mul_simple,
    longest,
    perm_str,
    pinv,
)

MAX_SCHUBERT_N = 5
MAX_PROJRICH_N = 4


class SizeGuardError(ValueError):
    """Requested table is larger than the module limit."""


def guard(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise SizeGuardError(f"{what} refused: n={n} exceeds limit {limit}")


# ---------------------------------------------------------------------------
# tables


@dataclass
class LocTable:
    """Values of a class at the torus fixed points of G/B or G/P."""

    ring: Ring
    entries: dict
    parabolic: ParabolicData | None = None

    @property
    def space(self) -> str:
        return "G/B" if self.parabolic is None else "G/P"

    @property
    def n(self) -> int:
        return self.ring.n

    def __getitem__(self, key) -> RatFunc:
        return self.entries[tuple(key)]

    def keys(self):
        return self.entries.keys()

    def items(self):
        return self.entries.items()

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.entries.values())

    def map(self, fn: Callable[[tuple, RatFunc], RatFunc]) -> "LocTable":
        return LocTable(self.ring, {p: fn(p, v) for p, v in self.entries.items()}, self.parabolic)

    def _zip(self, other: "LocTable", op) -> "LocTable":
        if self.entries.keys() != other.entries.keys():
            raise ValueError("tables live on different spaces")
        return LocTable(self.ring, {p: op(v, other.entries[p]) for p, v in self.entries.items()}, self.parabolic)

    def __add__(self, other: "LocTable") -> "LocTable":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: "LocTable") -> "LocTable":
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other) -> "LocTable":
        if isinstance(other, LocTable):
            return self._zip(other, lambda a, b: a * b)
        return self.map(lambda p, v: v * other)

    __rmul__ = __mul__

    def __truediv__(self, other: "LocTable") -> "LocTable":
        return self._zip(other, lambda a, b: a / b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocTable) or self.entries.keys() != other.entries.keys():
            return False
        return all(v == other.entries[p] for p, v in self.entries.items())

    def to_json(self) -> dict:
        out: dict = {"space": self.space}
        if self.parabolic is not None:
            out["lambda"] = list(self.parabolic.lam)
        key = (lambda p: ",".join(map(str, p))) if self.parabolic is not None else perm_str
        out["entries"] = {key(p): to_json(v) for p, v in self.entries.items()}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: Mapping, ring: Ring) -> "LocTable":
        P = ParabolicData(tuple(obj["lambda"])) if obj["space"] == "G/P" else None
        entries = {}
        for key, val in obj["entries"].items():
            if "," in key:
                p = tuple(int(v) for v in key.split(","))
            else:
                p = tuple(int(v) for v in key)
            entries[p] = from_json(ring, val)
        return cls(ring, entries, P)


def fixed_points(n: int, P: ParabolicData | None = None) -> list[tuple]:
    return all_perms(n) if P is None else P.orbit()


def _left_act_point(p: tuple, i: int, P: ParabolicData | None) -> tuple:
    if P is None:
        return left_mul_simple(i, p)
    p = list(p)
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


@lru_cache(maxsize=None)
def ring_for(n: int) -> Ring:
    return Ring(0, n)


@lru_cache(maxsize=None)
def simple_root(n: int, i: int) -> RatFunc:
    """``alpha_i = -y_i + y_{i+1}`` (``alpha_0 = -y_n + y_1``)."""
    R = ring_for(n)
    a, b = (n, 1) if i == 0 else (i, i + 1)
    return R.linear({f"y{a}": -1, f"y{b}": 1})


@lru_cache(maxsize=None)
def _coefficients(n: int, i: int, which: str) -> tuple[RatFunc, RatFunc]:
    """``(c_id, c_s)`` with operator ``c_id * id + c_s * s_i^L``."""
    alpha = simple_root(n, i)
    inv = 1 / alpha
    if which == "sL":
        return ring_for(n).zero(), ring_for(n).one()
    if which == "TL":
        return -inv, (alpha + 1) * inv
    if which == "TLvee":
        return inv, (alpha - 1) * inv
    if which == "deltaL":
        return inv, -inv
    raise ValueError(f"unknown operator {which!r}")


def dl_operator(t: LocTable, i: int, which: str = "TL") -> LocTable:
    n = t.n
    if not 1 <= i < n:
        raise ValueError(f"operator index {i} outside 1..{n - 1}")
    c_id, c_s = _coefficients(n, i, which)
    out = {}
    for p, val in t.entries.items():
        s_val = act_y(t.entries[_left_act_point(p, i, t.parabolic)], i)
        out[p] = c_id * val + c_s * s_val if not c_id.is_zero() else c_s * s_val
    return LocTable(t.ring, out, t.parabolic)


# ---------------------------------------------------------------------------
# Schubert classes on G/B


def point_class_value(n: int, v: FinitePerm) -> RatFunc:
    R = ring_for(n)
    out = R.one()
    for a in range(n):
        for b in range(a + 1, n):
            out = out * R.linear({f"y{v[a]}": 1, f"y{v[b]}": -1})
    return out


def tangent_chern_value(n: int, v: FinitePerm) -> RatFunc:
    R = ring_for(n)
    out = R.one()
    for a in range(n):
        for b in range(a + 1, n):
            out = out * R.linear({f"y{v[a]}": 1, f"y{v[b]}": -1}, 1)
    return out


@dataclass
class SchubertTables:
    n: int
    csm_cell: dict = field(default_factory=dict)
    ssm_cell: dict = field(default_factory=dict)
    csm_opp: dict = field(default_factory=dict)
    ssm_opp: dict = field(default_factory=dict)
    point: dict = field(default_factory=dict)
    tangent: LocTable | None = None

    def point_class(self, v: FinitePerm) -> LocTable:
        R = ring_for(self.n)
        return LocTable(R, {p: (self.point[p] if p == tuple(v) else R.zero()) for p in all_perms(self.n)})

    def tangent_chern(self) -> LocTable:
        return self.tangent


def _delta_table(n: int, v: FinitePerm, value: RatFunc) -> LocTable:
    R = ring_for(n)
    return LocTable(R, {p: (value if p == v else R.zero()) for p in all_perms(n)})


@lru_cache(maxsize=None)
def schubert_tables(n: int, tie: str = "smallest") -> SchubertTables:
    guard(n, MAX_SCHUBERT_N, "Schubert tables")
    R = ring_for(n)
    perms = all_perms(n)
    tab = SchubertTables(n)
    tab.point = {v: point_class_value(n, v) for v in perms}
    tab.tangent = LocTable(R, {v: tangent_chern_value(n, v) for v in perms})

    e = identity(n)
    tab.ssm_cell[e] = _delta_table(n, e, tab.point[e] / tab.tangent[e])
    for w in perms:  # sorted by length
        if w == e:
            continue
        desc = [i for i in range(1, n) if w.index(i + 1) < w.index(i)]
        i = desc[0] if tie == "smallest" else desc[-1]
        tab.ssm_cell[w] = dl_operator(tab.ssm_cell[left_mul_simple(i, w)], i, "TL")

    w0 = longest(n)
    tab.csm_opp[w0] = _delta_table(n, w0, tab.point[w0])
    for u in reversed(perms):
        if u == w0:
            continue
        asc = [i for i in range(1, n) if u.index(i) < u.index(i + 1)]
        i = asc[0] if tie == "smallest" else asc[-1]
        tab.csm_opp[u] = dl_operator(tab.csm_opp[left_mul_simple(i, u)], i, "TLvee")

    for w in perms:
        tab.csm_cell[w] = tab.ssm_cell[w] * tab.tangent
        tab.ssm_opp[w] = tab.csm_opp[w] / tab.tangent
    return tab


def richardson_csm(u: FinitePerm, w: FinitePerm) -> LocTable:
    """``c_SM(R_{u,w}) = c_SM(Sigma_w) * s_SM(Sigma^u)`` pointwise."""
    tab = schubert_tables(len(u))
    return tab.csm_cell[tuple(w)] * tab.ssm_opp[tuple(u)]


def duality_pairing(u: FinitePerm, w: FinitePerm) -> RatFunc:
    """``sum_v c_SM(Sigma_u)|_v * s_SM(Sigma^w)|_v / [pt_v]|_v``."""
    n = len(u)
    tab = schubert_tables(n)
    total = ring_for(n).zero()
    for v in all_perms(n):
        total = total + tab.csm_cell[tuple(u)][v] * tab.ssm_opp[tuple(w)][v] / tab.point[v]
    return total


# ---------------------------------------------------------------------------
# partial flag varieties


def euler_fiber(v: FinitePerm, P: ParabolicData) -> RatFunc:
    """Equivariant Euler class of the fiber tangent space at ``v``."""
    R = ring_for(P.n)
    out = R.one()
    for a, b in P.positive_roots_P():
        out = out * R.linear({f"y{v[a - 1]}": 1, f"y{v[b - 1]}": -1})
    return out


def pushforward_GP(t: LocTable, P: ParabolicData) -> LocTable:
    if t.parabolic is not None:
        raise ValueError("pushforward expects a table on G/B")
    R = t.ring
    out = {mu: R.zero() for mu in P.orbit()}
    for v, val in t.entries.items():
        if val.is_zero():
            continue
        mu = P.act(v)
        out[mu] = out[mu] + val / euler_fiber(v, P)
    return LocTable(R, out, P)


def tangent_chern_GP(mu: tuple, P: ParabolicData) -> RatFunc:
    mu = tuple(mu)
    if sorted(mu, reverse=True) != list(P.lam):
        raise ValueError(f"{mu} is not in the orbit of {P.lam}")
    R = ring_for(P.n)
    out = R.one()
    for a in range(P.n):
        for b in range(P.n):
            if mu[a] > mu[b]:
                out = out * R.linear({f"y{a + 1}": 1, f"y{b + 1}": -1}, 1)
    return out


def projrich_ssm_pushforward(u: FinitePerm, w: FinitePerm, P: ParabolicData) -> LocTable:
    """``pi_* c_SM(R_{u,w})`` divided by the tangent Chern class of G/P."""
    pushed = pushforward_GP(richardson_csm(u, w), P)
    return pushed.map(lambda mu, v: v / tangent_chern_GP(mu, P))


def base_product(P: ParabolicData) -> RatFunc:
    """``prod_{a<b, lam_a > lam_b} (y_a - y_b)/(1 + y_a - y_b)``."""
    R = ring_for(P.n)
    out = R.one()
    lam = P.lam
    for a in range(P.n):
        for b in range(a + 1, P.n):
            if lam[a] > lam[b]:
                out = out * R.linear({f"y{a + 1}": 1, f"y{b + 1}": -1}) / R.linear({f"y{a + 1}": 1, f"y{b + 1}": -1}, 1)
    return out


@dataclass
class ProjRichTable:
    """``s_SM(Pi_f)|_mu`` indexed both by ``(u, w)`` and by the window of ``f``."""

    P: ParabolicData
    by_uw: dict
    by_f: dict

    def value(self, f: AffinePerm, mu: tuple) -> RatFunc:
        return self.by_f[f.window][tuple(mu)]

    def windows(self) -> list[tuple[int, ...]]:
        return sorted(self.by_f)


def _has_root_pole(r: RatFunc) -> bool:
    return any(form.const == 0 for form, _ in r.den)


def projrich_ssm_recursive(P: ParabolicData, tie: str = "smallest") -> ProjRichTable:
    """Fill ``gamma_{f,mu}`` level by level in ``l(w)`` from the ``w = id`` base."""
    n = P.n
    guard(n, MAX_PROJRICH_N, "projected Richardson recursion")
    R = ring_for(n)
    perms = all_perms(n)
    orbit = P.orbit()
    zero = R.zero()
    e = identity(n)
    base = base_product(P)

    gamma: dict = {}
    for u in perms:
        gamma[(u, e)] = {mu: (base if u == e and mu == P.lam else zero) for mu in orbit}

    def swap(mu, i):
        mu = list(mu)
        mu[i - 1], mu[i] = mu[i], mu[i - 1]
        return tuple(mu)

    for w in perms:
        if w == e:
            continue
        desc = [i for i in range(1, n) if w.index(i + 1) < w.index(i)]
        i = desc[0] if tie == "smallest" else desc[-1]
        wp = left_mul_simple(i, w)
        alpha = simple_root(n, i)
        inv = 1 / alpha
        for u in perms:
            prev = gamma[(u, wp)]
            prev_s = gamma[(left_mul_simple(i, u), wp)]
            row = {}
            for mu in orbit:
                smu = swap(mu, i)
                a = act_y(prev[smu], i)
                b = act_y(prev_s[smu], i)
                row[mu] = inv * (a + alpha * b - prev[mu])
            gamma[(u, w)] = row

    by_f: dict = {}
    for (u, w), row in gamma.items():
        f = AffinePerm.from_uw(u, w, P.lam).window
        if f in by_f:
            if any(by_f[f][mu] != row[mu] for mu in orbit):
                raise ArithmeticError(f"recursion is not well defined at f={f}")
        else:
            by_f[f] = row
        for mu, val in row.items():
            if _has_root_pole(val):
                raise ArithmeticError(f"root pole survived at (u={u}, w={w}, mu={mu})")
    return ProjRichTable(P, gamma, by_f)


def projrich_windows(P: ParabolicData) -> list[AffinePerm]:
    """The set ``{u t_lam w^{-1} : u <= w, w in W^P}``."""
    from .weylperm import finite_bruhat_leq

    out = set()
    for w in P.W_upper_P():
        for u in all_perms(P.n):
            if finite_bruhat_leq(u, w):
                out.add(AffinePerm.from_uw(u, w, P.lam))
    return sorted(out)


def gb_table_from(values: Mapping[FinitePerm, RatFunc], n: int) -> LocTable:
    R = ring_for(n)
    return LocTable(R, {v: values.get(v, R.zero()) for v in all_perms(n)})


__all__ = [
    "LocTable",
    "SchubertTables",
    "ProjRichTable",
    "SizeGuardError",
    "dl_operator",
    "schubert_tables",
    "richardson_csm",
    "duality_pairing",
    "pushforward_GP",
    "tangent_chern_GP",
    "projrich_ssm_pushforward",
    "projrich_ssm_recursive",
    "projrich_windows",
    "simple_root",
    "fixed_points",
    "pinv",
    "inversions",
]
