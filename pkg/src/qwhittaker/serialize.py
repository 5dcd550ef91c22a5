"""Output formats: json, csv, latex, pretty."""
from __future__ import annotations

import csv
import io
import json

from .exactpoly import QPoly, QRational, TorusPolynomial, format_qpoly
from .rootsys import RootSystem


def monomial_order(rs: RootSystem):
    # dominance-descending: by height, then lexicographically
    return lambda w: (-rs.height(w), tuple(-x for x in w))


def pretty_torus(f: TorusPolynomial, rs: RootSystem) -> str:
    from .exactpoly import format_torus

    return format_torus(f, order=monomial_order(rs))


def _latex_qpoly(p: QPoly) -> str:
    return format_qpoly(p).replace("*", "")


def _latex_coeff(c: QRational) -> str:
    if c.is_polynomial():
        return _latex_qpoly(c.num)
    num, den = c.num, c.den
    if den.coeffs[0] < 0:
        num, den = -num, -den
    return r"\frac{%s}{%s}" % (_latex_qpoly(num), _latex_qpoly(den))


def latex_torus(f: TorusPolynomial, rs: RootSystem) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for w in sorted(f.terms, key=monomial_order(rs)):
        c = f.terms[w]
        mono = "" if not any(w) else "z^{(%s)}" % ",".join(str(x) for x in w)
        cs = _latex_coeff(c)
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(r"\left(%s\right)%s" % (cs, mono))
    return " + ".join(parts)


def csv_rows(f: TorusPolynomial):
    """(weight, q_power, coefficient) rows; coefficients must be polynomials."""
    for w, c in sorted(f.items()):
        p = c.as_poly()
        for k, a in enumerate(p.coeffs):
            if a:
                yield w, k, a


def to_csv(entries, header: dict | None = None) -> str:
    """``entries``: iterable of (lam, TorusPolynomial)."""
    buf = io.StringIO()
    for k, v in (header or {}).items():
        buf.write(f"# {k}: {json.dumps(v, sort_keys=True)}\n")
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["lambda", "weight", "q_power", "coefficient"])
    for lam, f in entries:
        for w, k, a in csv_rows(f):
            wr.writerow([" ".join(map(str, lam)), " ".join(map(str, w)), k, a])
    return buf.getvalue()


def header_lines(header: dict, prefix: str) -> str:
    return "".join(f"{prefix} {k}: {json.dumps(v, sort_keys=True)}\n" for k, v in header.items())
