"""Exact arithmetic: integer polynomials in q, reduced rational functions of q,
and sparse Laurent polynomials on the weight lattice with such coefficients.

Coefficient lists are stored in ascending powers of q.  Reduction of
rational functions uses sympy's dense univariate gcd over ZZ.
"""
from __future__ import annotations

import json
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_inner_gcd

from .errors import NotDominant, PoleAtZero
from .rootsys import RootSystem, Weight, is_dominant

ZERO_DEGREE = -1  # degree of the zero polynomial


def _trim(c: list) -> tuple:
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(x) for x in c)


class QPoly:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = _trim(list(coeffs))
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "QPoly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "QPoly":
        return cls._raw((int(c),) if c else ())

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "QPoly":
        return cls._raw((0,) * k + (int(c),) if c else ())

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def valuation(self) -> int:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return ZERO_DEGREE

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return QPoly._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self):
        return QPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = QPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return QPoly._raw(tuple(c * other for c in self.coeffs)) if other else QPoly()
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        if len(b) == 1:
            return self * b[0]
        if len(a) == 1:
            return other * a[0]
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return QPoly._raw(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = QPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        return f"QPoly({list(self.coeffs)})"

    def __str__(self):
        return format_qpoly(self)


def q_pochhammer(m: int) -> QPoly:
    """(q; q)_m = (1 - q)(1 - q^2)...(1 - q^m)."""
    out = QPoly.const(1)
    for r in range(1, m + 1):
        out = out * QPoly._raw((1,) + (0,) * (r - 1) + (-1,))
    return out


def gaussian_binomial(m: int, j: int) -> QPoly:
    if j < 0 or j > m:
        return QPoly()
    num = q_pochhammer(m)
    den = q_pochhammer(j) * q_pochhammer(m - j)
    return QRational(num, den).as_poly()


def _dup(p: QPoly) -> list:
    return [ZZ(c) for c in reversed(p.coeffs)]


def _from_dup(c: list) -> QPoly:
    return QPoly(reversed([int(x) for x in c]))


class QRational:
    """Reduced ratio of integer polynomials in q.

    Canonical form: numerator and denominator coprime in Z[q], denominator
    with positive leading coefficient, zero stored as 0/1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        if isinstance(num, int):
            num = QPoly.const(num)
        if isinstance(den, int):
            den = QPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("QRational with zero denominator")
        self.num, self.den = _reduce(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: QPoly, den: QPoly) -> "QRational":
        r = object.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @classmethod
    def from_poly(cls, p) -> "QRational":
        if isinstance(p, int):
            p = QPoly.const(p)
        return cls._raw(p, _ONE_POLY)

    @classmethod
    def from_fraction(cls, f: Fraction) -> "QRational":
        return cls(QPoly.const(f.numerator), QPoly.const(f.denominator))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def as_poly(self) -> QPoly:
        if not self.den.is_one():
            raise ValueError(f"{self} is not a polynomial in q")
        return self.num

    def at_zero(self) -> Fraction:
        d0 = self.den(0)
        if d0 == 0:
            raise PoleAtZero(f"{self} has a pole at q = 0")
        return Fraction(self.num(0), d0)

    def __call__(self, x):
        if isinstance(x, int):
            return Fraction(self.num(x), self.den(x))
        return self.num(x) / self.den(x)

    def __eq__(self, other):
        if isinstance(other, (int, QPoly)):
            other = QRational.from_poly(other)
        return isinstance(other, QRational) and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, QRational):
            return other
        if isinstance(other, (int, QPoly)):
            return QRational.from_poly(other)
        if isinstance(other, Fraction):
            return QRational.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den.is_one():
                return QRational._raw(self.num + o.num, _ONE_POLY)
            return QRational(self.num + o.num, self.den)
        return QRational(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return QRational._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return QRational._raw(self.num * o.num, _ONE_POLY)
        return QRational(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "QRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero QRational")
        return QRational(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __repr__(self):
        return f"QRational({list(self.num.coeffs)}, {list(self.den.coeffs)})"

    def __str__(self):
        if self.den.is_one():
            return format_qpoly(self.num)
        num, den = self.num, self.den
        if den.coeffs[0] < 0:
            # display as (...)/(1 - q ...) rather than the stored canonical sign
            num, den = -num, -den
        return f"({format_qpoly(num)})/({format_qpoly(den)})"

    @staticmethod
    def sum(items: Iterable["QRational"]) -> "QRational":
        """Sum, adding numerators over shared denominators before reducing."""
        by_den: dict[QPoly, QPoly] = {}
        for r in items:
            by_den[r.den] = by_den.get(r.den, _ZERO_POLY) + r.num
        acc = None
        for den, num in by_den.items():
            if num.is_zero():
                continue
            term = QRational._raw(num, den) if den.is_one() else QRational(num, den)
            acc = term if acc is None else acc + term
        return acc if acc is not None else QRational._raw(_ZERO_POLY, _ONE_POLY)


_ZERO_POLY = QPoly()
_ONE_POLY = QPoly.const(1)
ZERO = QRational._raw(_ZERO_POLY, _ONE_POLY)
ONE = QRational._raw(_ONE_POLY, _ONE_POLY)


def _reduce(num: QPoly, den: QPoly) -> tuple[QPoly, QPoly]:
    if num.is_zero():
        return _ZERO_POLY, _ONE_POLY
    if den.is_one():
        return num, den
    if den.degree == 0:
        from math import gcd

        g = 0
        for c in num.coeffs:
            g = gcd(g, c)
        g = gcd(g, den.coeffs[0])
        if den.coeffs[0] < 0:
            g = -g
        return QPoly._raw(tuple(c // g for c in num.coeffs)), QPoly.const(den.coeffs[0] // g)
    _, n, d = dup_inner_gcd(_dup(num), _dup(den), ZZ)
    n, d = _from_dup(n), _from_dup(d)
    if d.lc() < 0:
        n, d = -n, -d
    return n, d


def q_monomial_inverse(k: int) -> QRational:
    """q^{-k} for k >= 0."""
    return QRational._raw(_ONE_POLY, QPoly.monomial(k))


def q_power(k: int) -> QRational:
    if k >= 0:
        return QRational._raw(QPoly.monomial(k), _ONE_POLY)
    return q_monomial_inverse(-k)


def as_qrational(c) -> QRational:
    if isinstance(c, QRational):
        return c
    if isinstance(c, (int, QPoly)):
        return QRational.from_poly(c)
    if isinstance(c, Fraction):
        return QRational.from_fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as a coefficient")


class TorusPolynomial:
    """Sparse Laurent polynomial in z with QRational coefficients.

    Keys are weights (tuples in fundamental-weight coordinates); zero
    coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("terms", "rank")

    def __init__(self, terms: Mapping[Weight, object] | None = None, rank: int | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = as_qrational(c)
                if not c.is_zero():
                    clean[tuple(int(x) for x in w)] = c
        if rank is None:
            if not clean:
                raise ValueError("rank is required for an empty TorusPolynomial")
            rank = len(next(iter(clean)))
        self.terms = clean
        self.rank = rank

    @classmethod
    def _raw(cls, terms: dict, rank: int) -> "TorusPolynomial":
        p = object.__new__(cls)
        p.terms, p.rank = terms, rank
        return p

    @classmethod
    def zero(cls, rank: int) -> "TorusPolynomial":
        return cls._raw({}, rank)

    @classmethod
    def one(cls, rank: int) -> "TorusPolynomial":
        return cls._raw({(0,) * rank: ONE}, rank)

    @classmethod
    def monomial(cls, w: Sequence[int], coeff=1) -> "TorusPolynomial":
        return cls({tuple(w): coeff}, rank=len(w))

    @classmethod
    def from_integer_terms(cls, terms: Mapping[Weight, Mapping[int, int]], rank: int) -> "TorusPolynomial":
        """Build from ``{weight: {q_power: int}}`` with nonnegative q powers."""
        out = {}
        for w, qp in terms.items():
            deg = max(qp, default=-1)
            coeffs = [0] * (deg + 1)
            for k, c in qp.items():
                coeffs[k] += int(c)
            p = QPoly(coeffs)
            if not p.is_zero():
                out[tuple(w)] = QRational._raw(p, _ONE_POLY)
        return cls._raw(out, rank)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: Sequence[int]) -> QRational:
        return self.terms.get(tuple(w), ZERO)

    def support(self) -> list[Weight]:
        return sorted(self.terms)

    def items(self):
        return self.terms.items()

    def __eq__(self, other):
        if not isinstance(other, TorusPolynomial):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, TorusPolynomial):
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                s = out[w] + c
                if s.is_zero():
                    del out[w]
                else:
                    out[w] = s
            else:
                out[w] = c
        return TorusPolynomial._raw(out, self.rank)

    def __neg__(self):
        return TorusPolynomial._raw({w: -c for w, c in self.terms.items()}, self.rank)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TorusPolynomial":
        c = as_qrational(c)
        if c.is_zero():
            return TorusPolynomial.zero(self.rank)
        if c == ONE:
            return self
        out = {}
        for w, a in self.terms.items():
            p = a * c
            if not p.is_zero():
                out[w] = p
        return TorusPolynomial._raw(out, self.rank)

    def __mul__(self, other):
        if isinstance(other, (int, QPoly, QRational, Fraction)):
            return self.scale(other)
        if not isinstance(other, TorusPolynomial):
            return NotImplemented
        acc: dict[Weight, list] = defaultdict(list)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                acc[tuple(a + b for a, b in zip(w1, w2))].append(c1 * c2)
        out = {}
        for w, cs in acc.items():
            s = cs[0] if len(cs) == 1 else QRational.sum(cs)
            if not s.is_zero():
                out[w] = s
        return TorusPolynomial._raw(out, self.rank)

    def __rmul__(self, other):
        if isinstance(other, (int, QPoly, QRational, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = TorusPolynomial.one(self.rank)
        for _ in range(k):
            out = out * self
        return out

    def map_coeffs(self, fn) -> "TorusPolynomial":
        out = {}
        for w, c in self.terms.items():
            c2 = as_qrational(fn(c))
            if not c2.is_zero():
                out[w] = c2
        return TorusPolynomial._raw(out, self.rank)

    def map_weights(self, fn) -> "TorusPolynomial":
        out: dict[Weight, QRational] = {}
        for w, c in self.terms.items():
            w2 = tuple(fn(w))
            if w2 in out:
                s = out[w2] + c
                if s.is_zero():
                    del out[w2]
                else:
                    out[w2] = s
            else:
                out[w2] = c
        return TorusPolynomial._raw(out, self.rank)

    def is_polynomial_in_q(self) -> bool:
        return all(c.is_polynomial() for c in self.terms.values())

    def dimension(self) -> QRational:
        """Sum of all coefficients (the value at z = identity)."""
        return QRational.sum(self.terms.values())

    def evaluate(self, q, z: Sequence | None = None):
        """Numeric spot evaluation, for debugging only."""
        tot = 0
        for w, c in self.terms.items():
            zm = 1
            if z is not None:
                for zi, e in zip(z, w):
                    zm *= zi ** e
            tot += c(q) * zm
        return tot

    def __repr__(self):
        return f"TorusPolynomial({format_torus(self)})"

    __str__ = lambda self: format_torus(self)

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> list:
        return [
            {"weight": list(w), "num": list(c.num.coeffs), "den": list(c.den.coeffs)}
            for w, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json_obj(cls, obj: list, rank: int | None = None) -> "TorusPolynomial":
        terms = {}
        for item in obj:
            terms[tuple(item["weight"])] = QRational(QPoly(item["num"]), QPoly(item["den"]))
        if rank is None and not terms:
            raise ValueError("rank is required to decode an empty TorusPolynomial")
        return cls(terms, rank=rank)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str, rank: int | None = None) -> "TorusPolynomial":
        return cls.from_json_obj(json.loads(text), rank=rank)


def q_limit(f: TorusPolynomial) -> TorusPolynomial:
    out = {}
    for w, c in f.terms.items():
        v = c.at_zero()
        if v:
            out[w] = QRational.from_fraction(v)
    return TorusPolynomial._raw(out, f.rank)


def weyl_act_torus(rs: RootSystem, w_word: Sequence[int], f: TorusPolynomial) -> TorusPolynomial:
    """Send z^mu to z^{w(mu)}, with w = s_{i_1} ... s_{i_k} given as a word."""
    word = tuple(w_word)
    return f.map_weights(lambda mu: rs.apply_word(word, mu))


def is_w_invariant(rs: RootSystem, f: TorusPolynomial) -> bool:
    return all(weyl_act_torus(rs, (i,), f) == f for i in range(1, rs.rank + 1))


def prefactor(rs: RootSystem, lam: Sequence[int]) -> QPoly:
    """prod over nodes i of (q; q)_{<alpha_i, lam>}."""
    if not is_dominant(lam):
        raise NotDominant(f"weight {list(lam)} is not dominant")
    out = QPoly.const(1)
    for a in lam:
        out = out * q_pochhammer(int(a))
    return out


# -- formatting ---------------------------------------------------------


def format_qpoly(p: QPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{'*' + mono if mono else ''}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def dominance_sort_key(w: Sequence[int]):
    # heavier weights first; lexicographic tie-break keeps output reproducible
    return (-sum(w), tuple(-x for x in w))


def format_torus(f: TorusPolynomial, order=None) -> str:
    if f.is_zero():
        return "0"
    keys = sorted(f.terms, key=order or dominance_sort_key)
    parts = []
    for w in keys:
        c = f.terms[w]
        mono = "" if not any(w) else "z^[" + ",".join(str(x) for x in w) + "]"
        cs = str(c)
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        elif c.is_polynomial() and len([x for x in c.num.coeffs if x]) == 1 and not cs.startswith("-"):
            parts.append(f"{cs}*{mono}")
        else:
            parts.append(f"({cs})*{mono}")
    return " + ".join(parts)
