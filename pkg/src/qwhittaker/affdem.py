"""Level-one Demazure characters for untwisted simply-laced affine algebras.

An affine weight is ``finite + level*Lambda_0 - degree*delta``.  With
``alpha_0 = delta - theta``, the coroot pairing is
``<mu, alpha_0^v> = level - <theta^v, finite>``.

The Demazure module attached to a dominant ``lam`` is generated from the
level-one dominant weight ``Lambda_j`` (``j`` the node of the minuscule
weight congruent to ``lam`` modulo the root lattice, ``j = 0`` when ``lam``
lies in the root lattice) along the minimal word carrying ``Lambda_j`` to
the level-one weight with finite part ``w_0(lam)``.  The twist from
``Lambda_0`` to ``Lambda_j`` is the length-zero element of the extended
affine Weyl group.

The q-grading counts degree down from the top: a weight of degree ``d`` is
sent to ``q^(d_max - d)``, so ``z^lam`` sits at ``q^0``.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InvariantViolation
from .exactpoly import QRational, TorusPolynomial, prefactor
from .rootsys import RootSystem, Weight, require_dominant


@dataclass(frozen=True)
class AffineWeight:
    finite: Weight
    level: int
    degree: int

    def as_vector(self) -> tuple:
        return tuple(self.finite) + (self.level, self.degree)

    @classmethod
    def from_vector(cls, v) -> "AffineWeight":
        v = tuple(int(x) for x in v)
        return cls(v[:-2], v[-2], v[-1])


@dataclass(frozen=True)
class AffineWord:
    """``s_{word[0]} ... s_{word[-1]}`` composed with the length-zero twist
    sending ``Lambda_0`` to ``Lambda_{twist}``."""

    word: tuple
    twist: int

    def __len__(self):
        return len(self.word)


def coroot_pairing(rs: RootSystem, i: int, aw: AffineWeight) -> int:
    if i == 0:
        return aw.level - sum(m * x for m, x in zip(rs.marks, aw.finite))
    return aw.finite[i - 1]


def _root_vector(rs: RootSystem, i: int) -> np.ndarray:
    """alpha_i in (finite, level, degree) coordinates."""
    n = rs.rank
    v = np.zeros(n + 2, dtype=np.int64)
    if i == 0:
        v[:n] = -np.asarray(rs.highest_root)
        v[n + 1] = -1  # +delta is degree -1
    else:
        v[:n] = rs.simple_roots[i - 1]
    return v


def _pairing_vector(rs: RootSystem, i: int) -> np.ndarray:
    n = rs.rank
    p = np.zeros(n + 2, dtype=np.int64)
    if i == 0:
        p[:n] = -np.asarray(rs.marks)
        p[n] = 1
    else:
        p[i - 1] = 1
    return p


def affine_simple_reflection(rs: RootSystem, i: int, aw: AffineWeight) -> AffineWeight:
    if not 0 <= i <= rs.rank:
        raise IndexError(f"affine reflection index {i} out of range 0..{rs.rank}")
    k = coroot_pairing(rs, i, aw)
    if k == 0:
        return aw
    v = np.asarray(aw.as_vector()) - k * _root_vector(rs, i)
    return AffineWeight.from_vector(v)


def _fundamental_affine(rs: RootSystem, j: int) -> AffineWeight:
    finite = rs.zero if j == 0 else rs.fundamental_weights[j - 1]
    return AffineWeight(finite, 1, 0)


@lru_cache(maxsize=1024)
def _translation_word(rs: RootSystem, lam: Weight) -> tuple[AffineWord, AffineWeight]:
    target = AffineWeight(rs.apply_word(rs.longest_word, lam), 1, 0)
    path = []
    aw = target
    # climb to the dominant chamber: each reflection with negative pairing
    # lengthens the word by one, so the recorded word is reduced
    while True:
        for i in range(rs.rank + 1):
            if coroot_pairing(rs, i, aw) < 0:
                aw = affine_simple_reflection(rs, i, aw)
                path.append(i)
                break
        else:
            break
    j = rs.root_lattice_coset(aw.finite)
    if aw.finite != _fundamental_affine(rs, j).finite:
        raise InvariantViolation(f"level-one dominant weight {aw} is not a fundamental weight")
    return AffineWord(tuple(path), j), aw


def _cache_file(rs: RootSystem):
    d = os.environ.get("QWHITTAKER_CACHE_DIR")
    return Path(d) / f"words_{rs.label}.json" if d else None


def _load_cached_word(rs: RootSystem, lam: Weight):
    path = _cache_file(rs)
    if path is None or not path.exists():
        return None
    try:
        rec = json.loads(path.read_text()).get(",".join(map(str, lam)))
    except (OSError, ValueError):
        return None
    if rec is None:
        return None
    aword = AffineWord(tuple(rec["word"]), int(rec["twist"]))
    # never trust the disk blindly: the word must be reduced and land on w_0(lam)
    start = _fundamental_affine(rs, aword.twist)
    aw = start
    for i in reversed(aword.word):
        aw = affine_simple_reflection(rs, i, aw)
    if not is_reduced(rs, aword.word) or aw.finite != rs.apply_word(rs.longest_word, lam):
        return None
    return aword


def _store_cached_word(rs: RootSystem, lam: Weight, aword: AffineWord) -> None:
    path = _cache_file(rs)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        data = json.loads(path.read_text()) if path.exists() else {}
    except ValueError:
        data = {}
    key = ",".join(map(str, lam))
    if key in data:
        return
    data[key] = {"word": list(aword.word), "twist": aword.twist}
    tmp = path.with_suffix(f".{os.getpid()}.tmp")
    tmp.write_text(json.dumps(data, sort_keys=True))
    os.replace(tmp, path)


def translation_word(rs: RootSystem, lam: Sequence[int]) -> AffineWord:
    lam = require_dominant(lam)
    cached = _load_cached_word(rs, lam)
    if cached is not None:
        return cached
    aword = _translation_word(rs, lam)[0]
    _store_cached_word(rs, lam, aword)
    return aword


def is_reduced(rs: RootSystem, word: Sequence[int]) -> bool:
    """Length-additivity test against a regular dominant affine weight."""
    # sum of all fundamental affine weights: finite part rho, level = Coxeter number
    aw = AffineWeight(rs.rho, 1 + sum(rs.marks), 0)
    for i in reversed(tuple(word)):
        if coroot_pairing(rs, i, aw) <= 0:
            return False
        aw = affine_simple_reflection(rs, i, aw)
    return True


def translation_length(rs: RootSystem, lam: Sequence[int]) -> int:
    """Sum over positive coroots of <lam, coroot>."""
    return sum(sum(a * b for a, b in zip(lam, beta_simple)) for beta_simple in rs.positive_roots_simple_coords)


def affine_demazure_sum(rs: RootSystem, lam: Sequence[int], use_numba=None, check=True):
    """Formal sum (rows of (finite, level, degree), multiplicities) of D(lam)."""
    lam = require_dominant(lam)
    aword = translation_word(rs, lam)
    # degree of the starting weight is irrelevant: grading is measured from the top
    W, m = kernels.single_point(_fundamental_affine(rs, aword.twist).as_vector())
    for i in reversed(aword.word):
        W, m = kernels.demazure_step(W, m, _root_vector(rs, i), _pairing_vector(rs, i), use_numba=use_numba)
        if check and np.any(m <= 0):
            raise InvariantViolation(f"negative multiplicity after the affine Demazure operator D_{i}")
    if check and np.any(W[:, rs.rank] != 1):
        raise InvariantViolation("affine Demazure operator changed the level")
    return W, m


@lru_cache(maxsize=1024)
def _affine_demazure_char(rs: RootSystem, lam: Weight, use_numba) -> TorusPolynomial:
    W, m = affine_demazure_sum(rs, lam, use_numba=use_numba)
    n = rs.rank
    degrees = W[:, n + 1]
    dmax = int(degrees.max())
    terms: dict = {}
    for row, mult in zip(W, m):
        mu = tuple(int(x) for x in row[:n])
        k = dmax - int(row[n + 1])
        terms.setdefault(mu, {})
        terms[mu][k] = terms[mu].get(k, 0) + int(mult)
    return TorusPolynomial.from_integer_terms(terms, rank=n)


def affine_demazure_char(rs: RootSystem, lam: Sequence[int], use_numba=None) -> TorusPolynomial:
    lam = require_dominant(lam)
    return _affine_demazure_char(rs, lam, use_numba)


def global_weyl_char(rs: RootSystem, lam: Sequence[int]) -> TorusPolynomial:
    lam = require_dominant(lam)
    return affine_demazure_char(rs, lam).scale(QRational(1, prefactor(rs, lam)))


def to_latex_table(rs: RootSystem, weights: Sequence[Sequence[int]]) -> str:
    """Small LaTeX table of Demazure characters, one row per weight."""
    from .serialize import latex_torus

    lines = [r"\begin{array}{ll}", r"\check\lambda & \chi(D(\check\lambda)) \\", r"\hline"]
    for lam in weights:
        lines.append(f"({','.join(str(x) for x in lam)}) & {latex_torus(affine_demazure_char(rs, lam), rs)} \\\\")
    lines.append(r"\end{array}")
    return "\n".join(lines)
