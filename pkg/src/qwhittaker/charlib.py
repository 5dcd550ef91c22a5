"""Characters of finite-dimensional irreducibles, finite Demazure operators,
and decomposition of W-invariant torus polynomials into irreducible characters.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InvariantViolation, NonTermination, NotWInvariant
from .exactpoly import ONE, QRational, TorusPolynomial, ZERO, weyl_act_torus
from .rootsys import RootSystem, Weight, is_dominant, require_dominant


def finite_demazure_op(rs: RootSystem, i: int, f: TorusPolynomial) -> TorusPolynomial:
    """(f - z^{-alpha_i} s_i f) / (1 - z^{-alpha_i}), by exact division along alpha_i-strings."""
    alpha = rs.simple_roots[i - 1]
    numer = f - weyl_act_torus(rs, (i,), f).map_weights(lambda mu: tuple(a - b for a, b in zip(mu, alpha)))
    # Group the numerator into alpha_i-strings.  Within a string, weights are
    # mu_top - j*alpha for j = 0, 1, ...; dividing by (1 - e^{-alpha}) is a
    # running sum from the top, and exactness means the total vanishes.
    strings: dict[Weight, dict[int, QRational]] = defaultdict(dict)
    for mu, c in numer.items():
        k = mu[i - 1]
        # base point of the string: reduce the i-th coordinate to 0 or 1
        j = k // 2
        base = tuple(a - j * b for a, b in zip(mu, alpha))
        strings[base][j] = c
    out = {}
    for base, coeffs in strings.items():
        lo, hi = min(coeffs), max(coeffs)
        running = ZERO
        for j in range(hi, lo - 1, -1):
            running = running + coeffs.get(j, ZERO)
            if not running.is_zero():
                out[tuple(a + j * b for a, b in zip(base, alpha))] = running
        if not running.is_zero():
            raise InvariantViolation(f"Demazure division by 1 - z^-alpha_{i} is not exact")
    return TorusPolynomial._raw(out, rs.rank)


def _from_integer_sum(rs: RootSystem, W: np.ndarray, m: np.ndarray) -> TorusPolynomial:
    return TorusPolynomial({tuple(int(x) for x in w): int(c) for w, c in zip(W, m)}, rank=rs.rank)


def _finite_word_vectors(rs: RootSystem, word):
    n = rs.rank
    vecs = []
    for i in word:
        pairing = np.zeros(n, dtype=np.int64)
        pairing[i - 1] = 1
        vecs.append((np.asarray(rs.simple_roots[i - 1], dtype=np.int64), pairing))
    return vecs


@lru_cache(maxsize=4096)
def _weyl_character_cached(rs: RootSystem, lam: Weight, use_numba) -> TorusPolynomial:
    W, m = kernels.single_point(lam)
    W, m = kernels.demazure_word(W, m, _finite_word_vectors(rs, rs.longest_word), use_numba=use_numba)
    if np.any(m <= 0):
        raise InvariantViolation("irreducible character acquired a nonpositive multiplicity")
    return _from_integer_sum(rs, W, m)


def weyl_character(rs: RootSystem, lam: Sequence[int], use_numba=None) -> TorusPolynomial:
    """Character of L(lam), as D_{w_0}(z^lam) along the cached reduced word for w_0."""
    lam = require_dominant(lam)
    return _weyl_character_cached(rs, lam, use_numba)


@dataclass
class IrreducibleDecomposition:
    rank: int
    coeffs: dict = field(default_factory=dict)  # dominant Weight -> QRational

    def items(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        if isinstance(other, dict):
            other = IrreducibleDecomposition(self.rank, other)
        if not isinstance(other, IrreducibleDecomposition):
            return NotImplemented
        return _normalized(self.coeffs) == _normalized(other.coeffs)

    def reconstruct(self, rs: RootSystem) -> TorusPolynomial:
        out = TorusPolynomial.zero(rs.rank)
        for mu, c in self.items():
            out = out + weyl_character(rs, mu).scale(c)
        return out

    def to_json_obj(self) -> list:
        return [
            {"weight": list(w), "coeff": {"num": list(c.num.coeffs), "den": list(c.den.coeffs)}}
            for w, c in self.items()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj, rank: int) -> "IrreducibleDecomposition":
        from .exactpoly import QPoly

        return cls(rank, {tuple(e["weight"]): QRational(QPoly(e["coeff"]["num"]), QPoly(e["coeff"]["den"])) for e in obj})


def _normalized(coeffs: dict) -> dict:
    out = {}
    for w, c in coeffs.items():
        c = c if isinstance(c, QRational) else QRational.from_poly(c)
        if not c.is_zero():
            out[tuple(w)] = c
    return out


def _check_invariant(rs: RootSystem, f: TorusPolynomial) -> None:
    for i in range(1, rs.rank + 1):
        if weyl_act_torus(rs, (i,), f) != f:
            raise NotWInvariant(f"input changes under the simple reflection s_{i}")


def decompose(rs: RootSystem, f: TorusPolynomial) -> IrreducibleDecomposition:
    """Peel off irreducible characters from the top of the support."""
    _check_invariant(rs, f)
    bound = max(len(f), 1) * rs.weyl_group_order
    rem = f
    out: dict[Weight, QRational] = {}
    steps = 0
    while not rem.is_zero():
        steps += 1
        if steps > bound:
            raise NonTermination("decompose exceeded its iteration bound; input is corrupted")
        dom = [w for w in rem.terms if is_dominant(w)]
        # maximal by height, ties broken by the lexicographically largest vector
        top = max(dom, key=lambda w: (rs.height(w), w))
        c = rem.terms[top]
        out[top] = c
        rem = rem - weyl_character(rs, top).scale(c)
    return IrreducibleDecomposition(rs.rank, out)


@dataclass
class PositivityReport:
    ok: bool
    violators: list

    def __bool__(self):
        return self.ok


def positivity_check(dec: IrreducibleDecomposition) -> PositivityReport:
    bad = []
    for w, c in dec.items():
        if not c.is_polynomial():
            bad.append({"weight": list(w), "coeff": str(c), "reason": "not a polynomial in q"})
        elif any(x < 0 for x in c.num.coeffs):
            bad.append({"weight": list(w), "coeff": str(c), "reason": "negative coefficient"})
    return PositivityReport(not bad, bad)
