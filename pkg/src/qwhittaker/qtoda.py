"""Lattice q-difference Toda operators and the eigenfunction recursion.

Type A Hamiltonian (N = rank + 1)::

    G = T_1 + T_2 (1 - x_1) + ... + T_N (1 - x_{N-1}),    x_i = q^{<alpha_i, lam>}

Restricted to the weight lattice, ``T_k`` moves ``lam`` by one box in gl_N
coordinates, ``e_k = omega_k - omega_{k-1}`` in fundamental-weight
coordinates.  Two choices are left open by the formula: the direction of the
move, and whether ``T_k (1 - x_{k-1})`` evaluates its coefficient before or
after the move.  The certified convention (see ``calibrate_conventions``) is

    (G F)(lam) = sum_k (1 - x_{k-1}(lam - e_k)) F(lam - e_k),   x_0 = 0,

with eigenvalue ``chi(L(omega_{N-1}))``.  Its image under the diagram
automorphism is the raising operator with eigenvalue ``chi(L(omega_1))``;
the solver uses both, which reaches every dominant weight for N <= 3.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .charlib import weyl_character
from .errors import (
    InvariantViolation,
    MissingEntry,
    NonTriangular,
    NotPolynomial,
    SingularCoefficient,
)
from .exactpoly import ONE, QPoly, QRational, TorusPolynomial, prefactor, q_power
from .rootsys import RootSystem, Weight, build_root_system, is_dominant, require_dominant

LOWER, RAISE = "lower", "raise"
SHIFTED, BASE = "shifted", "base"


@dataclass(frozen=True)
class Term:
    shift: Weight
    # Laurent polynomial in x_1..x_n: exponent tuple -> coefficient
    coeff: tuple  # tuple of (exponents, QRational) pairs

    def coeff_dict(self) -> dict:
        return dict(self.coeff)


@dataclass(frozen=True)
class LatticeDifferenceOperator:
    rs: RootSystem
    terms: tuple
    eigen_symbol: Weight
    evaluate: str = SHIFTED  # where T_k(c) reads its coefficient c
    name: str = "G"
    direction: str = LOWER

    def __post_init__(self):
        shifts = [t.shift for t in self.terms]
        if len(set(shifts)) != len(shifts):
            raise ValueError("operator shifts must be distinct")

    def eigenvalue(self) -> TorusPolynomial:
        return weyl_character(self.rs, self.eigen_symbol)

    def coefficient_at(self, term: Term, point: Sequence[int]) -> QRational:
        """Value of the symbolic coefficient at x_i = q^{<alpha_i, point>}."""
        acc = []
        for exps, c in term.coeff:
            k = sum(e * p for e, p in zip(exps, point))
            acc.append(c * q_power(k))
        return QRational.sum(acc)

    def applied_coefficient(self, term: Term, lam: Sequence[int]) -> QRational:
        if self.evaluate == SHIFTED:
            return self.coefficient_at(term, [a + b for a, b in zip(lam, term.shift)])
        return self.coefficient_at(term, lam)

    @property
    def top_term(self) -> Term:
        heights = sorted(((self.rs.height(t.shift), t) for t in self.terms), key=lambda p: p[0])
        if len(heights) > 1 and heights[-1][0] == heights[-2][0]:
            raise NonTriangular(f"operator {self.name} has no unique highest shift")
        if heights[-1][0] <= 0:
            raise NonTriangular(f"operator {self.name} has no raising shift")
        return heights[-1][1]

    def conventions(self) -> dict:
        return {
            "operator": self.name,
            "shift_direction": self.direction,
            "coefficient_evaluation": self.evaluate,
            "eigen_symbol": list(self.eigen_symbol),
        }


def gl_box(rs: RootSystem, k: int) -> Weight:
    """e_k of gl_N projected to SL(N) fundamental-weight coordinates."""
    n = rs.rank
    return tuple((1 if j == k else 0) - (1 if j == k - 1 else 0) for j in range(1, n + 1))


def toda_hamiltonian_A(N: int, direction: str = LOWER, evaluate: str = SHIFTED, eigen_symbol=None):
    if N < 2:
        raise ValueError("the Toda Hamiltonian needs N >= 2")
    rs = build_root_system(f"A{N - 1}")
    n = rs.rank
    terms = []
    for k in range(1, N + 1):
        box = gl_box(rs, k)
        shift = box if direction == RAISE else tuple(-x for x in box)
        coeff = [((0,) * n, ONE)]
        if k >= 2:
            coeff.append((tuple(int(j == k - 1) for j in range(1, n + 1)), -ONE))
        terms.append(Term(shift, tuple(coeff)))
    if eigen_symbol is None:
        eigen_symbol = rs.fundamental_weights[n - 1] if direction == LOWER else rs.fundamental_weights[0]
    return LatticeDifferenceOperator(rs, tuple(terms), tuple(eigen_symbol), evaluate, "G", direction)


def dual_operator(op: LatticeDifferenceOperator) -> LatticeDifferenceOperator:
    """Image under the diagram automorphism i -> n + 1 - i (type A only)."""
    if op.rs.family != "A":
        raise ValueError("diagram duality is only wired up for type A")
    rev = lambda w: tuple(reversed(w))
    terms = tuple(Term(rev(t.shift), tuple((rev(e), c) for e, c in t.coeff)) for t in op.terms)
    direction = {LOWER: RAISE, RAISE: LOWER}[op.direction]
    return LatticeDifferenceOperator(op.rs, terms, rev(op.eigen_symbol), op.evaluate, op.name + "*", direction)


# -- tables ---------------------------------------------------------------


@dataclass
class WhittakerTable:
    rs: RootSystem
    entries: dict  # dominant Weight -> TorusPolynomial
    lam_max: Weight
    meta: dict = field(default_factory=dict)

    def __contains__(self, w):
        return tuple(w) in self.entries

    def __getitem__(self, w) -> TorusPolynomial:
        w = tuple(w)
        if not is_dominant(w):
            return TorusPolynomial.zero(self.rs.rank)
        try:
            return self.entries[w]
        except KeyError:
            raise MissingEntry(f"no table entry at {list(w)}") from None

    def weights(self) -> list:
        return sorted(self.entries)

    def to_json_obj(self) -> dict:
        obj = {
            "type": self.rs.label,
            "lam_max": list(self.lam_max),
            "entries": [{"weight": list(w), "poly": self.entries[w].to_json_obj()} for w in self.weights()],
        }
        if self.meta:
            obj["meta"] = self.meta
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=1)

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "WhittakerTable":
        rs = build_root_system(obj["type"])
        entries = {tuple(e["weight"]): TorusPolynomial.from_json_obj(e["poly"], rank=rs.rank) for e in obj["entries"]}
        return cls(rs, entries, tuple(obj["lam_max"]), dict(obj.get("meta", {})))


def dominant_window(rs: RootSystem, lam_max: Sequence[int]) -> list:
    """All dominant weights whose height does not exceed that of ``lam_max``."""
    H = rs.height(lam_max)
    weights = rs.rho_check_coords
    out = []

    def rec(prefix, budget):
        j = len(prefix)
        if j == rs.rank:
            out.append(tuple(prefix))
            return
        for a in range(budget // weights[j] + 1):
            rec(prefix + [a], budget - a * weights[j])

    rec([], H)
    return out


def apply_lattice(op: LatticeDifferenceOperator, table, lam: Sequence[int]) -> TorusPolynomial:
    lam = tuple(lam)
    acc = TorusPolynomial.zero(op.rs.rank)
    for t in op.terms:
        point = tuple(a + b for a, b in zip(lam, t.shift))
        if not is_dominant(point):
            continue
        c = op.applied_coefficient(t, lam)
        if c.is_zero():
            continue
        acc = acc + table[point].scale(c)
    return acc


class EigenCheckFailed(InvariantViolation):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass
class EigenReport:
    operator: str
    rows: list  # dicts: weight, status

    @property
    def passed(self) -> bool:
        return all(r["status"] != "fail" for r in self.rows)

    def failures(self) -> list:
        return [tuple(r["weight"]) for r in self.rows if r["status"] == "fail"]

    def interior(self) -> list:
        return [tuple(r["weight"]) for r in self.rows if r["status"] != "boundary"]

    def to_json_obj(self) -> list:
        return [{"weight": r["weight"], "status": r["status"]} for r in self.rows]


def eigencheck(op: LatticeDifferenceOperator, table: WhittakerTable) -> EigenReport:
    f = op.eigenvalue()
    rows = []
    for lam in table.weights():
        needed = [tuple(a + b for a, b in zip(lam, t.shift)) for t in op.terms]
        if any(is_dominant(p) and p not in table for p in needed):
            rows.append({"weight": list(lam), "status": "boundary"})
            continue
        residual = apply_lattice(op, table, lam) - f * table[lam]
        rows.append({"weight": list(lam), "status": "pass" if residual.is_zero() else "fail"})
    return EigenReport(op.name, rows)


def _solve_order(rs: RootSystem, window: Iterable, order: str) -> list:
    if order == "default":
        return sorted(window, key=lambda w: (rs.height(w), w))
    if order == "reversed":
        return sorted(window, key=lambda w: (rs.height(w), tuple(-x for x in w)))
    raise ValueError(f"unknown elimination order {order!r}")


def solve_whittaker(
    op: LatticeDifferenceOperator,
    lam_max: Sequence[int],
    order: str = "default",
    use_dual: bool = True,
    certify: bool = True,
) -> WhittakerTable:
    """Fill Psi on the dominant weights of height <= height(lam_max).

    Each new entry nu is read off the eigen-equation at lam = nu - s, where
    s is the highest shift of an operator; every other entry in that
    equation is strictly lower in height and already known.
    ``order="reversed"`` permutes ties and prefers the dual operator, for
    uniqueness checks.
    """
    rs = op.rs
    lam_max = require_dominant(lam_max)
    ops = [op]
    if use_dual and rs.family == "A" and rs.rank > 1:
        ops.append(dual_operator(op))
    if order == "reversed":
        ops = ops[::-1]
    tops = [(o, o.top_term) for o in ops]
    eig = {o.name: o.eigenvalue() for o in ops}

    window = dominant_window(rs, lam_max)
    entries: dict = {}
    table = WhittakerTable(rs, entries, lam_max)
    for nu in _solve_order(rs, window, order):
        if not any(nu):
            entries[nu] = TorusPolynomial.one(rs.rank)
            continue
        singular = False
        for o, top in tops:
            lam = tuple(a - b for a, b in zip(nu, top.shift))
            if not is_dominant(lam):
                continue
            c_top = o.applied_coefficient(top, lam)
            if c_top.is_zero():
                singular = True
                continue
            rhs = eig[o.name] * table[lam]
            for t in o.terms:
                if t is top:
                    continue
                point = tuple(a + b for a, b in zip(lam, t.shift))
                if not is_dominant(point):
                    continue
                c = o.applied_coefficient(t, lam)
                if not c.is_zero():
                    rhs = rhs - table[point].scale(c)
            entries[nu] = rhs.scale(c_top.inverse())
            break
        else:
            if singular:
                raise SingularCoefficient(f"leading coefficient vanishes for every equation producing {list(nu)}")
            raise NonTriangular(f"no eigen-equation has {list(nu)} as its leading unknown")

    table.meta = {"engine": "toda", "conventions": [o.conventions() for o in ops], "order": order}
    if certify:
        for o in ops:
            rep = eigencheck(o, table)
            if not rep.passed:
                raise EigenCheckFailed(f"eigen-equation residual nonzero for {o.name} at {rep.failures()}", rep)
    return table


def hat_normalize(table: WhittakerTable) -> WhittakerTable:
    out = {}
    for lam, psi in table.entries.items():
        hat = psi.scale(prefactor(table.rs, lam))
        for mu, c in hat.items():
            if not c.is_polynomial():
                raise NotPolynomial(
                    f"prefactor does not clear the denominator {c.den} at weight {list(lam)}, monomial {list(mu)}",
                    weight=lam,
                    monomial=mu,
                )
        out[lam] = hat
    meta = dict(table.meta, normalization="hat")
    return WhittakerTable(table.rs, out, table.lam_max, meta)


def table_from_characters(rs: RootSystem, lam_max: Sequence[int], fn) -> WhittakerTable:
    """Table over the solver's window, filled by ``fn(rs, lam)``."""
    lam_max = require_dominant(lam_max)
    entries = {lam: fn(rs, lam) for lam in dominant_window(rs, lam_max)}
    return WhittakerTable(rs, entries, lam_max)


def calibrate_conventions(N: int, lam_max=None) -> list:
    """Try every (direction, evaluation point, eigen-symbol) and keep the ones
    whose hat-normalized solution matches the Demazure characters."""
    from .affdem import affine_demazure_char

    rs = build_root_system(f"A{N - 1}")
    if lam_max is None:
        lam_max = (2,) if N == 2 else (1,) * rs.rank
    symbols = {rs.fundamental_weights[0], rs.fundamental_weights[-1]}
    survivors = []
    for direction, evaluate, sym in itertools.product((LOWER, RAISE), (SHIFTED, BASE), sorted(symbols)):
        op = toda_hamiltonian_A(N, direction, evaluate, sym)
        try:
            hat = hat_normalize(solve_whittaker(op, lam_max))
        except (NonTriangular, SingularCoefficient, EigenCheckFailed, NotPolynomial, ZeroDivisionError):
            continue
        if all(hat.entries[lam] == affine_demazure_char(rs, lam) for lam in hat.entries):
            survivors.append(op.conventions())
    return survivors
