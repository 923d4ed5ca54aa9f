"""Exact rational functions with factored linear denominators.

Values live in a :class:`Ring` ``Q(x_1..x_k, y_1..y_n)``.  A :class:`RatFunc`
is stored as ``pref * num / prod(form**mult)`` where

* ``pref`` is a :class:`fractions.Fraction`,
* ``num`` is a primitive integer polynomial whose largest monomial has a
  positive coefficient,
* every denominator factor is a primitive :class:`LinearForm` in canonical
  sign (first variable present has a positive coefficient).

Monomials are packed into a single Python int, ``BITS`` bits per variable, so
monomial multiplication is integer addition.  No floating point is used.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping

__all__ = [
    "BITS",
    "SymraError",
    "AmbientError",
    "DivisionByZero",
    "UnsupportedDivisor",
    "PoleError",
    "Variable",
    "Ring",
    "LinearForm",
    "Polynomial",
    "RatFunc",
    "arith",
    "act_y",
    "swap_x",
    "substitute_x",
    "is_equal",
    "canonicalize",
    "serialize",
    "parse",
    "evaluate",
]

BITS = 12
MASK = (1 << BITS) - 1


class SymraError(Exception):
    """Base class for arithmetic errors in this module."""


class AmbientError(SymraError, ValueError):
    pass


class DivisionByZero(SymraError, ZeroDivisionError):
    pass


class UnsupportedDivisor(SymraError):
    pass


class PoleError(SymraError):
    pass


@dataclass(frozen=True, order=True)
class Variable:
    family: str  # "x" or "y"
    index: int

    def __str__(self) -> str:
        return f"{self.family}{self.index}"


_VAR_RE = re.compile(r"^([xy])(\d+)$")


@dataclass(frozen=True)
class Ring:
    """Ambient context: ``k`` x-variables followed by ``n`` y-variables."""

    k: int
    n: int

    def __post_init__(self):
        if self.k < 0 or self.n < 0:
            raise AmbientError(f"negative ambient ({self.k}, {self.n})")
        if self.k + self.n > 60:
            raise AmbientError("too many variables")

    @property
    def nvars(self) -> int:
        return self.k + self.n

    def index(self, var: Variable | str) -> int:
        if isinstance(var, str):
            var = self.parse_var(var)
        if var.family == "x":
            if not 1 <= var.index <= self.k:
                raise AmbientError(f"{var} outside ambient k={self.k}")
            return var.index - 1
        if var.family == "y":
            if not 1 <= var.index <= self.n:
                raise AmbientError(f"{var} outside ambient n={self.n}")
            return self.k + var.index - 1
        raise AmbientError(f"unknown variable family {var.family!r}")

    def variable(self, idx: int) -> Variable:
        if idx < self.k:
            return Variable("x", idx + 1)
        return Variable("y", idx - self.k + 1)

    @staticmethod
    def parse_var(name: str) -> Variable:
        m = _VAR_RE.match(name.strip())
        if not m:
            raise AmbientError(f"bad variable name {name!r}")
        return Variable(m.group(1), int(m.group(2)))

    # convenient constructors

    def const(self, c) -> "RatFunc":
        return RatFunc.constant(self, c)

    def zero(self) -> "RatFunc":
        return RatFunc.constant(self, 0)

    def one(self) -> "RatFunc":
        return RatFunc.constant(self, 1)

    def var(self, name: Variable | str) -> "RatFunc":
        return RatFunc.from_form(self, self.form({name: 1}))

    def x(self, i: int) -> "RatFunc":
        return self.var(Variable("x", i))

    def y(self, j: int) -> "RatFunc":
        return self.var(Variable("y", j))

    def form(self, coef: Mapping, const: int = 0) -> "LinearForm":
        """Raw (not sign-normalised) linear form ``const + sum coef[v]*v``."""
        vec = [0] * self.nvars
        for v, c in coef.items():
            vec[self.index(v)] += int(c)
        return LinearForm(int(const), tuple(vec))

    def linear(self, coef: Mapping, const: int = 0) -> "RatFunc":
        return RatFunc.from_form(self, self.form(coef, const))


# ---------------------------------------------------------------------------
# raw polynomial kernels on {packed_monomial: coefficient}


def _padd(a: dict, b: dict, cb=1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + cb * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pscale(a: dict, c) -> dict:
    if not c:
        return {}
    return {m: c * v for m, v in a.items()}


def _pmul(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for mb, cb in b.items():
        for ma, ca in a.items():
            m = ma + mb
            out[m] = get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def _content(a: dict) -> int:
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _exps(m: int, nvars: int) -> list[int]:
    return [(m >> (BITS * v)) & MASK for v in range(nvars)]


def _pack(exps: Iterable[int]) -> int:
    m = 0
    for v, e in enumerate(exps):
        if e:
            if e > MASK:
                raise SymraError("exponent overflow")
            m |= e << (BITS * v)
    return m


def _lead(a: dict, nvars: int) -> int:
    """Leading monomial: highest total degree, then lexicographically largest."""
    return min(a, key=lambda m: (-_degree(m, nvars), [-e for e in _exps(m, nvars)]))


def _degree(m: int, nvars: int) -> int:
    return sum(_exps(m, nvars))


def _remap(a: dict, nsrc: int, target: list[int]) -> dict:
    """Send variable ``v`` to variable ``target[v]`` (exponents accumulate)."""
    out: dict = {}
    for m, c in a.items():
        nm = 0
        for v in range(nsrc):
            e = (m >> (BITS * v)) & MASK
            if e:
                nm += e << (BITS * target[v])
        out[nm] = out.get(nm, 0) + c
    return {m: c for m, c in out.items() if c}


def _pdiv_form(p: dict, form: "LinearForm") -> dict | None:
    """Exact quotient ``p / form`` over the integers, or None."""
    piv = form.pivot()
    a = form.coef[piv]
    sh = BITS * piv
    # rest = form - a * var_piv
    rest = {0: form.const} if form.const else {}
    for v, c in enumerate(form.coef):
        if c and v != piv:
            rest[1 << (BITS * v)] = c
    slices: dict[int, dict] = {}
    for m, c in p.items():
        d = (m >> sh) & MASK
        slices.setdefault(d, {})[m - (d << sh)] = c
    top = max(slices) if slices else 0
    if top == 0:
        return None if p else {}
    quo: dict[int, dict] = {}
    carry = slices.get(top, {})
    for d in range(top, 0, -1):
        # a * Q_{d-1} = P_d - rest * Q_d   (carry holds the rhs)
        q = {}
        for m, c in carry.items():
            qv, r = divmod(c, a)
            if r:
                return None
            q[m] = qv
        quo[d - 1] = q
        carry = _padd(slices.get(d - 1, {}), _pmul(rest, q), -1) if q else dict(slices.get(d - 1, {}))
    if carry:
        return None
    out = {}
    for d, q in quo.items():
        for m, c in q.items():
            out[m + (d << sh)] = c
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    """``const + sum(coef[v] * var_v)``; coefficient vector indexed by ring slot."""

    const: int
    coef: tuple[int, ...]

    def is_zero(self) -> bool:
        return self.const == 0 and not any(self.coef)

    def is_constant(self) -> bool:
        return not any(self.coef)

    def pivot(self) -> int:
        for v, c in enumerate(self.coef):
            if c:
                return v
        raise SymraError("constant form has no pivot")

    def normalize(self) -> tuple[int, "LinearForm"]:
        """Return ``(unit, canonical)`` with ``self == unit * canonical``."""
        if self.is_zero():
            raise DivisionByZero("zero linear form")
        g = gcd(self.const, *self.coef) if self.coef else abs(self.const)
        if self.is_constant():
            return self.const, LinearForm(1, self.coef)
        if self.coef[self.pivot()] < 0:
            g = -g
        return g, LinearForm(self.const // g, tuple(c // g for c in self.coef))

    def poly(self) -> dict:
        out = {0: self.const} if self.const else {}
        for v, c in enumerate(self.coef):
            if c:
                out[1 << (BITS * v)] = c
        return out

    def remap(self, target: list[int], nvars: int) -> "LinearForm":
        vec = [0] * nvars
        for v, c in enumerate(self.coef):
            if c:
                vec[target[v]] += c
        return LinearForm(self.const, tuple(vec))

    def sort_key(self):
        # variables first, then constant
        return (tuple(-abs(c) for c in self.coef), self.coef, self.const)


class Polynomial:
    """Sparse polynomial view: packed monomials with rational coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[int, object]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    def items_sorted(self):
        nv = self.ring.nvars
        return sorted(
            self.terms.items(),
            key=lambda mc: (-_degree(mc[0], nv), [-e for e in _exps(mc[0], nv)]),
        )

    def exponent_dict(self, m: int) -> dict[str, int]:
        ex = _exps(m, self.ring.nvars)
        return {str(self.ring.variable(v)): e for v, e in enumerate(ex) if e}

    def total_degree(self) -> int:
        nv = self.ring.nvars
        return max((_degree(m, nv) for m in self.terms), default=-1)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.ring == other.ring and self.terms == other.terms

    def __repr__(self):
        return f"Polynomial({_poly_plain(self.ring, self.terms)})"


class RatFunc:
    """Immutable exact rational function; see module docstring for the layout."""

    __slots__ = ("ring", "pref", "num", "den", "_hash")

    def __init__(self, ring: Ring, pref, num: Mapping[int, int], den: Iterable[tuple[LinearForm, int]] = ()):
        self.ring = ring
        pref = Fraction(pref)
        num = {m: c for m, c in num.items() if c}
        if not pref or not num:
            self.pref, self.num, self.den = Fraction(0), {}, ()
        else:
            merged: dict[LinearForm, int] = {}
            for form, mult in den:
                if mult:
                    merged[form] = merged.get(form, 0) + mult
            self.pref = pref
            self.num = num
            self.den = tuple(sorted(merged.items(), key=lambda fm: fm[0].sort_key()))
        self._hash = None

    # -- constructors

    @classmethod
    def constant(cls, ring: Ring, c) -> "RatFunc":
        return cls(ring, Fraction(c), {0: 1})

    @classmethod
    def from_form(cls, ring: Ring, form: LinearForm) -> "RatFunc":
        unit, canon = form.normalize()
        if canon.is_constant():
            return cls.constant(ring, unit)
        return cls._make(ring, Fraction(unit), canon.poly(), ())

    @classmethod
    def from_poly(cls, ring: Ring, terms: Mapping[int, object]) -> "RatFunc":
        """Polynomial with rational coefficients, normalised."""
        return cls._make(ring, Fraction(1), dict(terms), ())

    @classmethod
    def from_factors(cls, ring: Ring, pref, num_forms: Iterable[LinearForm], den_forms: Iterable[LinearForm]) -> "RatFunc":
        """``pref * prod(num_forms) / prod(den_forms)``, cancelled."""
        pref = Fraction(pref)
        num = {0: 1}
        for f in num_forms:
            u, c = f.normalize()
            pref *= u
            if not c.is_constant():
                num = _pmul(num, c.poly())
        den = []
        for f in den_forms:
            u, c = f.normalize()
            pref /= u
            if not c.is_constant():
                den.append((c, 1))
        return cls._make(ring, pref, num, den).canonicalize()

    @classmethod
    def _make(cls, ring: Ring, pref: Fraction, num: dict, den) -> "RatFunc":
        """Normalise content and sign of a numerator with rational coefficients."""
        num = {m: c for m, c in num.items() if c}
        if not num or not pref:
            return cls(ring, 0, {})
        if any(isinstance(c, Fraction) and c.denominator != 1 for c in num.values()):
            lcm = 1
            for c in num.values():
                d = Fraction(c).denominator
                lcm = lcm * d // gcd(lcm, d)
            num = {m: int(Fraction(c) * lcm) for m, c in num.items()}
            pref = pref / lcm
        else:
            num = {m: int(c) for m, c in num.items()}
        g = _content(num)
        if num[_lead(num, ring.nvars)] < 0:
            g = -g
        if g != 1:
            num = {m: c // g for m, c in num.items()}
            pref = pref * g
        return cls(ring, pref, num, den)

    # -- structure

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return not self.den

    @property
    def numerator(self) -> Polynomial:
        return Polynomial(self.ring, {m: self.pref * c for m, c in self.num.items()})

    @property
    def denominator(self) -> tuple[tuple[LinearForm, int], ...]:
        return self.den

    def den_poly(self) -> dict:
        out = {0: 1}
        for form, mult in self.den:
            p = form.poly()
            for _ in range(mult):
                out = _pmul(out, p)
        return out

    def canonicalize(self) -> "RatFunc":
        if not self.den:
            return self
        num = self.num
        den = []
        changed = False
        for form, mult in self.den:
            left = mult
            while left:
                q = _pdiv_form(num, form)
                if q is None:
                    break
                num = q
                left -= 1
                changed = True
            if left:
                den.append((form, left))
        if not changed:
            return self
        return RatFunc._make(self.ring, self.pref, num, den)

    def _check(self, other: "RatFunc"):
        if not isinstance(other, RatFunc):
            raise TypeError(f"expected RatFunc, got {type(other).__name__}")
        if other.ring != self.ring:
            raise AmbientError(f"ambient mismatch {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(self.ring, other)
        self._check(other)
        return other

    # -- arithmetic

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a, b = self, other
        da, db = dict(a.den), dict(b.den)
        lcm = {f: max(da.get(f, 0), db.get(f, 0)) for f in set(da) | set(db)}
        na, nb = a.num, b.num
        for f, m in lcm.items():
            p = f.poly()
            for _ in range(m - da.get(f, 0)):
                na = _pmul(na, p)
            for _ in range(m - db.get(f, 0)):
                nb = _pmul(nb, p)
        pa, pb = a.pref, b.pref
        num = _padd(_pscale(na, pa.numerator * pb.denominator), _pscale(nb, pb.numerator * pa.denominator))
        pref = Fraction(1, pa.denominator * pb.denominator)
        return RatFunc._make(self.ring, pref, num, lcm.items()).canonicalize()

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(self.ring, -self.pref, self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return RatFunc(self.ring, 0, {})
        num = _pmul(self.num, other.num)
        r = RatFunc(self.ring, self.pref * other.pref, num, self.den + other.den)
        if not r.den:
            return RatFunc._make(self.ring, r.pref, r.num, ())
        return RatFunc._make(self.ring, r.pref, r.num, r.den).canonicalize()

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZero("division by zero rational function")
        forms = _factor_linear(self.ring, self.num)
        if forms is None:
            raise UnsupportedDivisor(
                "unsupported divisor shape: numerator is not a product of linear forms"
            )
        unit, factors = forms
        return RatFunc._make(self.ring, 1 / (self.pref * unit), self.den_poly(), [(f, 1) for f in factors]).canonicalize()

    def __truediv__(self, other) -> "RatFunc":
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "RatFunc":
        if e < 0:
            return self.inverse() ** (-e)
        out = RatFunc.constant(self.ring, 1)
        for _ in range(e):
            out = out * self
        return out

    # -- comparison

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFunc.constant(self.ring, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return is_equal(self, other)

    def __hash__(self) -> int:
        if self._hash is None:
            c = self.canonicalize()
            self._hash = hash((c.ring, c.pref, frozenset(c.num.items()), c.den))
        return self._hash

    def structurally_equal(self, other: "RatFunc") -> bool:
        return (
            self.ring == other.ring
            and self.pref == other.pref
            and self.num == other.num
            and self.den == other.den
        )

    def __repr__(self) -> str:
        return f"RatFunc({serialize(self, 'plain')})"

    def __str__(self) -> str:
        return serialize(self, "plain")


# ---------------------------------------------------------------------------


def _factor_linear(ring: Ring, num: dict):
    """Split a primitive integer polynomial into linear factors.

    Returns ``(unit, [forms])`` or None when the polynomial is not a product
    of the candidate forms ``c + v`` / ``c + v - w`` with ``c`` in {-1, 0, 1}.
    """
    nv = ring.nvars
    deg = max(_degree(m, nv) for m in num)
    if deg == 0:
        return num[0], []
    forms: list[LinearForm] = []
    if deg == 1:
        vec = [0] * nv
        const = 0
        for m, c in num.items():
            if m == 0:
                const = c
            else:
                vec[_exps(m, nv).index(1)] = c
        unit, canon = LinearForm(const, tuple(vec)).normalize()
        return unit, [canon]
    cands = []
    for v in range(nv):
        for c in (0, 1, -1):
            vec = [0] * nv
            vec[v] = 1
            cands.append(LinearForm(c, tuple(vec)))
            for w in range(v + 1, nv):
                vec2 = list(vec)
                vec2[w] = -1
                cands.append(LinearForm(c, tuple(vec2)))
                vec3 = list(vec)
                vec3[w] = 1
                cands.append(LinearForm(c, tuple(vec3)))
    rest = num
    progress = True
    while progress and max(_degree(m, nv) for m in rest) > 1:
        progress = False
        for f in cands:
            q = _pdiv_form(rest, f)
            if q is not None:
                forms.append(f)
                rest = q
                progress = True
                break
    if max(_degree(m, nv) for m in rest) > 1:
        return None
    unit, tail = _factor_linear(ring, rest)
    return unit, forms + tail


def canonicalize(r: RatFunc) -> RatFunc:
    return r.canonicalize()


def arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def is_equal(a: RatFunc, b: RatFunc) -> bool:
    """Cross-multiplied polynomial identity ``a.num*den(b) == b.num*den(a)``."""
    a._check(b)
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    da, db = dict(a.den), dict(b.den)
    na, nb = a.num, b.num
    for f in set(da) | set(db):
        # only the excess multiplicity needs clearing
        e = db.get(f, 0) - da.get(f, 0)
        p = f.poly()
        for _ in range(abs(e)):
            if e > 0:
                na = _pmul(na, p)
            else:
                nb = _pmul(nb, p)
    pa, pb = a.pref, b.pref
    diff = _padd(_pscale(na, pa.numerator * pb.denominator), _pscale(nb, pb.numerator * pa.denominator), -1)
    return not diff


def _apply_remap(r: RatFunc, target: list[int], ring: Ring) -> RatFunc:
    if r.is_zero():
        return RatFunc(ring, 0, {})
    num = _remap(r.num, r.ring.nvars, target)
    pref = r.pref
    den = []
    for form, mult in r.den:
        nf = form.remap(target, ring.nvars)
        if nf.is_zero():
            raise PoleError(f"substitution annihilates denominator factor {_form_plain(r.ring, form)}")
        unit, canon = nf.normalize()
        pref = pref / (Fraction(unit) ** mult)
        if not canon.is_constant():
            den.append((canon, mult))
    return RatFunc._make(ring, pref, num, den).canonicalize()


def act_y(r: RatFunc, i: int) -> RatFunc:
    """Weyl action of ``s_i`` on the y-variables (``s_0`` swaps ``y_1, y_n``)."""
    ring = r.ring
    n = ring.n
    if not 0 <= i <= n - 1 or n < 2:
        raise AmbientError(f"reflection index {i} out of range for n={n}")
    a, b = (1, n) if i == 0 else (i, i + 1)
    target = list(range(ring.nvars))
    ia, ib = ring.k + a - 1, ring.k + b - 1
    target[ia], target[ib] = ib, ia
    return _apply_remap(r, target, ring)


def act_y_perm(r: RatFunc, perm: Iterable[int]) -> RatFunc:
    """``y_j -> y_{perm[j-1]}`` for a permutation in one-line notation."""
    ring = r.ring
    perm = list(perm)
    if sorted(perm) != list(range(1, ring.n + 1)):
        raise AmbientError(f"{perm} is not a permutation of 1..{ring.n}")
    target = list(range(ring.k)) + [ring.k + p - 1 for p in perm]
    return _apply_remap(r, target, ring)


def swap_x(r: RatFunc, i: int) -> RatFunc:
    """Swap ``x_i`` and ``x_{i+1}``."""
    ring = r.ring
    if not 1 <= i < ring.k:
        raise AmbientError(f"x-swap index {i} out of range for k={ring.k}")
    target = list(range(ring.nvars))
    target[i - 1], target[i] = i, i - 1
    return _apply_remap(r, target, ring)


def substitute_x(r: RatFunc, assignment: Iterable[int]) -> RatFunc:
    """Specialise ``x_i -> y_{a_i}``; the result lives in ``Ring(0, n)``."""
    ring = r.ring
    a = list(assignment)
    if len(a) != ring.k:
        raise AmbientError(f"need {ring.k} targets, got {len(a)}")
    if any(not 1 <= t <= ring.n for t in a) or any(a[i] >= a[i + 1] for i in range(len(a) - 1)):
        raise AmbientError(f"targets {a} must be increasing within 1..{ring.n}")
    target = [t - 1 for t in a] + list(range(ring.n))
    return _apply_remap(r, target, Ring(0, ring.n))


def evaluate(r: RatFunc, point: Mapping) -> Fraction:
    """Exact value at a rational point ``{var: value}``."""
    ring = r.ring
    vals = [Fraction(0)] * ring.nvars
    for v, x in point.items():
        vals[ring.index(v)] = Fraction(x)
    den = Fraction(1)
    for form, mult in r.den:
        fv = form.const + sum(c * vals[v] for v, c in enumerate(form.coef) if c)
        if fv == 0:
            raise PoleError("evaluation point lies on a pole")
        den *= fv ** mult
    total = Fraction(0)
    for m, c in r.num.items():
        t = Fraction(c)
        for v, e in enumerate(_exps(m, ring.nvars)):
            if e:
                t *= vals[v] ** e
        total += t
    return r.pref * total / den


def random_point(ring: Ring, rng: random.Random, bound: int = 10**6) -> dict:
    return {ring.variable(v): Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for v in range(ring.nvars)}


# ---------------------------------------------------------------------------
# serialisation


def _mono_plain(ring: Ring, m: int, sep: str = "*", latex: bool = False) -> str:
    parts = []
    for v, e in enumerate(_exps(m, ring.nvars)):
        if not e:
            continue
        var = ring.variable(v)
        name = f"{var.family}_{{{var.index}}}" if latex else str(var)
        if e > 1:
            name += f"^{{{e}}}" if latex else f"^{e}"
        parts.append(name)
    return sep.join(parts)


def _coef_str(c: Fraction, latex: bool) -> str:
    c = abs(c)
    if c.denominator == 1:
        return str(c.numerator)
    if latex:
        return f"\\frac{{{c.numerator}}}{{{c.denominator}}}"
    return f"{c.numerator}/{c.denominator}"


def _poly_plain(ring: Ring, terms: Mapping, latex: bool = False) -> str:
    if not terms:
        return "0"
    poly = Polynomial(ring, terms)
    out = []
    sep = " " if latex else "*"
    for i, (m, c) in enumerate(poly.items_sorted()):
        c = Fraction(c)
        mono = _mono_plain(ring, m, sep, latex)
        if not mono:
            body = _coef_str(c, latex)
        elif abs(c) == 1:
            body = mono
        else:
            body = _coef_str(c, latex) + sep + mono
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _form_plain(ring: Ring, form: LinearForm, latex: bool = False) -> str:
    pieces = []
    if form.const:
        pieces.append((form.const, ""))
    for v, c in enumerate(form.coef):
        if c:
            var = ring.variable(v)
            pieces.append((c, f"{var.family}_{{{var.index}}}" if latex else str(var)))
    out = []
    for i, (c, name) in enumerate(pieces):
        mag = abs(c)
        body = str(mag) if not name else (name if mag == 1 else f"{mag}{' ' if latex else '*'}{name}")
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _scaled_num(r: RatFunc) -> dict:
    return {m: r.pref * c for m, c in r.num.items()}


def serialize(r: RatFunc, fmt: str = "plain") -> str:
    if fmt == "json":
        return json.dumps(to_json(r), separators=(",", ":"))
    if fmt not in ("plain", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    latex = fmt == "latex"
    if r.is_zero():
        return "0"
    num = _poly_plain(r.ring, _scaled_num(r), latex)
    if not r.den:
        return num
    facs = []
    for form, mult in r.den:
        s = f"({_form_plain(r.ring, form, latex)})"
        if mult > 1:
            s += f"^{{{mult}}}" if latex else f"^{mult}"
        facs.append(s)
    if latex:
        return f"\\frac{{{num}}}{{{''.join(facs)}}}"
    if len(r.num) > 1:
        num = f"({num})"
    den = facs[0] if len(facs) == 1 else f"({'*'.join(facs)})"
    return f"{num}/{den}"


def _frac_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def to_json(r: RatFunc) -> dict:
    ring = r.ring
    poly = Polynomial(ring, r.num)
    return {
        "num": [{"c": _frac_str(c), "m": poly.exponent_dict(m)} for m, c in poly.items_sorted()],
        "den": [
            {
                "form": {
                    "const": f.const,
                    "coef": {str(ring.variable(v)): c for v, c in enumerate(f.coef) if c},
                },
                "mult": mult,
            }
            for f, mult in r.den
        ],
        "pref": _frac_str(r.pref),
    }


def from_json(ring: Ring, obj: Mapping) -> RatFunc:
    num = {}
    for term in obj["num"]:
        c = Fraction(term["c"])
        if c.denominator != 1:
            raise SymraError("numerator coefficients must be integers; use pref")
        exps = [0] * ring.nvars
        for name, e in term["m"].items():
            exps[ring.index(name)] += int(e)
        num[_pack(exps)] = num.get(_pack(exps), 0) + c.numerator
    den = []
    for item in obj["den"]:
        form = ring.form(item["form"]["coef"], item["form"]["const"])
        den.append((form, int(item["mult"])))
    return RatFunc(ring, Fraction(obj["pref"]), num, den)


def parse(text: str, ring: Ring) -> RatFunc:
    """Inverse of ``serialize(r, 'json')``."""
    return from_json(ring, json.loads(text))
