"""Simply-laced Cartan data and Weyl group actions.

Weights are plain tuples of ints in the fundamental-weight basis, so the
pairing with the simple coroot ``i`` is just ``w[i]``.  Node numbering is
Bourbaki's:

* ``A_n``: the chain 1 - 2 - ... - n
* ``D_n``: the chain 1 - ... - (n-2), with n-1 and n both attached to n-2
* ``E_n``: 1 - 3 - 4 - 5 - ... - n, with 2 attached to 4

Indices in the public API are 1-based, matching that numbering.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import NotDominant, UnsupportedType

Weight = tuple  # tuple[int, ...] in fundamental-weight coordinates

_LABEL_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


def _edges(family: str, n: int) -> list[tuple[int, int]]:
    if family == "A":
        return [(i, i + 1) for i in range(1, n)]
    if family == "D":
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    if family == "E":
        return [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, n)]
    raise UnsupportedType(family)


def parse_label(label: str) -> tuple[str, int]:
    m = _LABEL_RE.match(str(label))
    if not m:
        raise UnsupportedType(f"cannot parse root system label {label!r}")
    family, n = m.group(1).upper(), int(m.group(2))
    if family in "BCFG":
        raise UnsupportedType(f"{family}{n} is not simply laced")
    if family == "A" and n >= 1:
        return family, n
    if family == "D" and n >= 4:
        return family, n
    if family == "E" and n in (6, 7, 8):
        return family, n
    raise UnsupportedType(f"no simply-laced root system {family}{n}")


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    cartan: np.ndarray = field(repr=False, compare=False)

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    def __hash__(self):
        return hash((self.family, self.rank))

    # -- basic data -------------------------------------------------------

    @cached_property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(tuple(int(v) for v in row) for row in self.cartan)

    @property
    def simple_coroots(self) -> tuple[Weight, ...]:
        # simply laced: coroots and roots coincide under the standard identification
        return self.simple_roots

    @cached_property
    def fundamental_weights(self) -> tuple[Weight, ...]:
        n = self.rank
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @cached_property
    def cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        import sympy

        inv = sympy.Matrix(self.cartan.tolist()).inv()
        return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in inv.row(i)) for i in range(self.rank))

    @cached_property
    def positive_roots_simple_coords(self) -> tuple[tuple[int, ...], ...]:
        """Positive roots as coefficient vectors over the simple roots, by height."""
        n, C = self.rank, self.cartan
        layer = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        roots = list(layer)
        seen = set(layer)
        while layer:
            nxt = []
            for beta in layer:
                pairing = np.asarray(beta) @ C
                for i in range(n):
                    # simply laced: beta + alpha_i is a root iff <beta, alpha_i^v> = -1
                    if pairing[i] == -1:
                        gamma = tuple(b + (j == i) for j, b in enumerate(beta))
                        if gamma not in seen:
                            seen.add(gamma)
                            nxt.append(gamma)
            roots.extend(nxt)
            layer = nxt
        return tuple(roots)

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        C = self.cartan
        return tuple(tuple(int(v) for v in np.asarray(c) @ C) for c in self.positive_roots_simple_coords)

    @property
    def positive_coroots(self) -> tuple[Weight, ...]:
        return self.positive_roots

    @cached_property
    def highest_root(self) -> Weight:
        return self.positive_roots[-1]

    @cached_property
    def marks(self) -> tuple[int, ...]:
        """Coefficients of the highest root over the simple roots."""
        return self.positive_roots_simple_coords[-1]

    @cached_property
    def weyl_group_order(self) -> int:
        from math import factorial

        n = self.rank
        if self.family == "A":
            return factorial(n + 1)
        if self.family == "D":
            return factorial(n) * 2 ** (n - 1)
        return {6: 51840, 7: 2903040, 8: 696729600}[n]

    @cached_property
    def rho_check_coords(self) -> tuple[int, ...]:
        """Simple-coroot coefficients of the sum of positive coroots."""
        tot = np.sum(np.asarray(self.positive_roots_simple_coords), axis=0)
        return tuple(int(v) for v in tot)

    @cached_property
    def longest_word(self) -> tuple[int, ...]:
        # greedy descent from rho; any reduced word for w_0 will do
        w = list(self.rho)
        word = []
        while True:
            for i in range(self.rank):
                if w[i] > 0:
                    w = list(self.reflect(i + 1, w))
                    word.append(i + 1)
                    break
            else:
                break
        return tuple(word)

    @cached_property
    def minuscule_nodes(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, m in enumerate(self.marks) if m == 1)

    # -- weight operations ------------------------------------------------

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexError(f"simple reflection index {i} out of range 1..{self.rank}")

    def reflect(self, i: int, w: Sequence[int]) -> Weight:
        self._check_index(i)
        k = w[i - 1]
        if k == 0:
            return tuple(w)
        a = self.simple_roots[i - 1]
        return tuple(x - k * y for x, y in zip(w, a))

    def apply_word(self, word: Iterable[int], w: Sequence[int]) -> Weight:
        """Act by s_{i_1} ... s_{i_k}, i.e. the rightmost reflection first."""
        w = tuple(w)
        for i in reversed(tuple(word)):
            w = self.reflect(i, w)
        return w

    def height(self, w: Sequence[int]) -> int:
        """Pairing of ``w`` with the sum of positive coroots."""
        return int(sum(a * b for a, b in zip(w, self.rho_check_coords)))

    def to_simple_coords(self, w: Sequence[int]) -> tuple[Fraction, ...]:
        inv = self.cartan_inverse
        n = self.rank
        return tuple(sum(Fraction(w[j]) * inv[j][i] for j in range(n)) for i in range(n))

    def root_lattice_coset(self, w: Sequence[int]) -> int:
        """Index ``j`` of the minuscule fundamental weight (or 0) congruent to ``w``."""
        for j in (0,) + self.minuscule_nodes:
            base = self.zero if j == 0 else self.fundamental_weights[j - 1]
            diff = [a - b for a, b in zip(w, base)]
            if all(c.denominator == 1 for c in self.to_simple_coords(diff)):
                return j
        raise AssertionError("weight outside every root-lattice coset")

    def leq(self, mu: Sequence[int], lam: Sequence[int]) -> bool:
        """Dominance order: lam - mu is a nonnegative integer sum of simple roots."""
        diff = [a - b for a, b in zip(lam, mu)]
        return all(c.denominator == 1 and c >= 0 for c in self.to_simple_coords(diff))

    def inner(self, mu: Sequence[int], nu: Sequence[int]) -> Fraction:
        inv = self.cartan_inverse
        n = self.rank
        return sum(Fraction(mu[i]) * inv[i][j] * nu[j] for i in range(n) for j in range(n))

    def dominant_representative(self, w: Sequence[int]) -> Weight:
        w = tuple(w)
        while True:
            for i in range(self.rank):
                if w[i] < 0:
                    w = self.reflect(i + 1, w)
                    break
            else:
                return w


def is_dominant(w: Sequence[int]) -> bool:
    return all(x >= 0 for x in w)


def require_dominant(w: Sequence[int]) -> Weight:
    w = tuple(int(x) for x in w)
    if not is_dominant(w):
        raise NotDominant(f"weight {list(w)} is not dominant")
    return w


def add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


_CACHE: dict[tuple[str, int], RootSystem] = {}


def build_root_system(label) -> RootSystem:
    """Build the Cartan datum for ``"A3"``, ``"d4"``, ``"E_8"`` and friends."""
    family, n = parse_label(label)
    key = (family, n)
    rs = _CACHE.get(key)
    if rs is None:
        C = 2 * np.eye(n, dtype=np.int64)
        for i, j in _edges(family, n):
            C[i - 1, j - 1] = C[j - 1, i - 1] = -1
        C.setflags(write=False)
        rs = _CACHE.setdefault(key, RootSystem(family, n, C))
    return rs


def simple_reflection(rs: RootSystem, i: int, w: Sequence[int]) -> Weight:
    return rs.reflect(i, w)


def weyl_orbit(rs: RootSystem, w: Sequence[int]) -> set[Weight]:
    start = tuple(w)
    orbit = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for i in range(1, rs.rank + 1):
            u = rs.reflect(i, v)
            if u not in orbit:
                orbit.add(u)
                todo.append(u)
    return orbit
