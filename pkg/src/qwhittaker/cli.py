"""Command-line front end.

Exit codes: 0 verified, 1 an identity failed, 2 bad input, 3 internal bug.
"""
from __future__ import annotations

import argparse
import json
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .affdem import affine_demazure_char, global_weyl_char, translation_word
from .charlib import decompose, positivity_check, weyl_character
from .errors import (
    InvariantViolation,
    NonTermination,
    NotPolynomial,
    NotWInvariant,
    PoleAtZero,
    QWhittakerError,
    UnsupportedType,
)
from .exactpoly import QRational, TorusPolynomial, is_w_invariant, prefactor, q_limit
from .qtoda import (
    WhittakerTable,
    dual_operator,
    eigencheck,
    hat_normalize,
    solve_whittaker,
    table_from_characters,
    toda_hamiltonian_A,
)
from .rootsys import RootSystem, build_root_system
from .serialize import header_lines, latex_torus, pretty_torus, to_csv

EXIT_OK, EXIT_FAILED, EXIT_BAD_INPUT, EXIT_BUG = 0, 1, 2, 3
FORMATS = ("json", "csv", "latex", "pretty")


class BadInput(Exception):
    pass


@dataclass
class JobSpec:
    label: str
    weight: tuple
    command: str
    fmt: str = "pretty"
    output: str | None = None
    options: dict = field(default_factory=dict)

    @property
    def rs(self) -> RootSystem:
        return build_root_system(self.label)


def parse_weight(text: str, rs: RootSystem) -> tuple:
    try:
        coords = tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise BadInput(f"weight {text!r} is not a comma-separated list of integers") from None
    if len(coords) != rs.rank:
        raise BadInput(f"{rs.label} needs {rs.rank} weight coordinates, got {len(coords)}")
    if any(c < 0 for c in coords):
        raise BadInput(f"weight {list(coords)} is not dominant")
    return coords


def _versions() -> dict:
    import numpy
    import sympy

    return {"qwhittaker": __version__, "numpy": numpy.__version__, "sympy": sympy.__version__}


def _toda_conventions(rs: RootSystem) -> list:
    op = toda_hamiltonian_A(rs.rank + 1)
    return [op.conventions(), dual_operator(op).conventions()] if rs.rank > 1 else [op.conventions()]


def _metadata(job: JobSpec, engine: str, normalization: str) -> dict:
    rs = job.rs
    meta = {"engine": engine, "normalization": normalization, "type": rs.label, "weight": list(job.weight)}
    if engine == "toda":
        meta["conventions"] = _toda_conventions(rs)
    else:
        aw = translation_word(rs, job.weight)
        meta["conventions"] = {"q_grading": "q^(d_max - d)", "word": list(aw.word), "twist": aw.twist}
    meta["versions"] = _versions()
    return meta


def _emit(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        path = Path(output)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)


def _render_entries(rs: RootSystem, entries: list, meta: dict, fmt: str, table_lam_max=None) -> str:
    """``entries``: list of (lam, TorusPolynomial)."""
    if fmt == "json":
        if table_lam_max is not None:
            tab = WhittakerTable(rs, dict(entries), table_lam_max, meta)
            return tab.to_json() + "\n"
        lam, f = entries[0]
        obj = {"meta": meta, "type": rs.label, "weight": list(lam), "poly": f.to_json_obj()}
        return json.dumps(obj, sort_keys=True, indent=1) + "\n"
    if fmt == "csv":
        try:
            return to_csv(entries, meta)
        except ValueError:
            raise BadInput("csv output needs integer coefficients; pass --hat") from None
    if fmt == "latex":
        body = "".join(
            f"\\Psi_{{({','.join(map(str, lam))})}} = {latex_torus(f, rs)}\\\\\n" for lam, f in entries
        )
        return header_lines(meta, "%") + body
    body = "".join(f"[{','.join(map(str, lam))}]: {pretty_torus(f, rs)}\n" for lam, f in entries)
    return header_lines(meta, "#") + body


def cmd_psi(job: JobSpec) -> int:
    rs, lam = job.rs, job.weight
    via, hat = job.options.get("via", "toda" if job.rs.family == "A" else "demazure"), job.options.get("hat", False)
    if via == "toda" and rs.family != "A":
        raise BadInput("--via toda needs a type A root system; use --via demazure")
    if via == "toda":
        table = solve_whittaker(toda_hamiltonian_A(rs.rank + 1), lam)
        if hat:
            table = hat_normalize(table)
    else:
        fn = affine_demazure_char if hat else global_weyl_char
        table = table_from_characters(rs, lam, fn) if job.options.get("table") else WhittakerTable(rs, {lam: fn(rs, lam)}, lam)
    meta = _metadata(job, via, "hat" if hat else "plain")
    if job.options.get("table"):
        entries = [(w, table.entries[w]) for w in table.weights()]
        text = _render_entries(rs, entries, meta, job.fmt, table_lam_max=lam)
    else:
        text = _render_entries(rs, [(lam, table[lam])], meta, job.fmt)
    _emit(text, job.output)
    return EXIT_OK


def load_candidate(path: str, rs: RootSystem, lam: tuple) -> TorusPolynomial:
    """Read a hat-normalized entry from a psi JSON file (single entry or table)."""
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise BadInput(f"cannot read {path}: {e}") from None
    try:
        if isinstance(obj, list):
            return TorusPolynomial.from_json_obj(obj, rank=rs.rank)
        if obj.get("type") and build_root_system(obj["type"]) != rs:
            raise BadInput(f"{path} is for {obj['type']}, not {rs.label}")
        if "entries" in obj:
            tab = WhittakerTable.from_json_obj(obj)
            f = tab[lam]
            norm = obj.get("meta", {}).get("normalization")
        else:
            if tuple(obj.get("weight", lam)) != lam:
                raise BadInput(f"{path} holds weight {obj['weight']}, not {list(lam)}")
            f = TorusPolynomial.from_json_obj(obj["poly"], rank=rs.rank)
            norm = obj.get("meta", {}).get("normalization")
    except (KeyError, TypeError) as e:
        raise BadInput(f"{path} is not a psi output file ({e})") from None
    if norm == "plain":
        f = f.scale(prefactor(rs, lam))
    return f


def _check(name: str, identity: str, fn) -> dict:
    try:
        ok, detail = fn()
    except NotPolynomial as e:
        ok, detail = False, str(e)
    except (NotWInvariant, PoleAtZero, NonTermination) as e:
        ok, detail = False, str(e)
    if ok is None:
        return {"name": name, "identity": identity, "status": "skipped", "detail": detail}
    return {"name": name, "identity": identity, "status": "pass" if ok else "fail", "detail": detail}


def run_checks(rs: RootSystem, lam: tuple, candidate: TorusPolynomial | None = None) -> list:
    demazure = affine_demazure_char(rs, lam)
    hat = demazure if candidate is None else candidate
    pf = prefactor(rs, lam)
    psi = hat.scale(QRational(1, pf))
    chi = weyl_character(rs, lam)
    checks = []

    if candidate is not None:
        checks.append(_check("input_matches_demazure", "chi(D(lam)) = Psi_hat(lam)",
                             lambda: (candidate == demazure, "input entry vs affine Demazure character")))

    def toda_vs_demazure():
        if rs.family != "A":
            return None, "skipped: no general-type Hamiltonian"
        solved = hat_normalize(solve_whittaker(toda_hamiltonian_A(rs.rank + 1), lam))
        return solved[lam] == hat, "hat-normalized Toda solution vs candidate"

    checks.append(_check("demazure_equals_toda", "chi(D(lam)) = Psi_hat(lam)", toda_vs_demazure))

    checks.append(_check("w_invariance", "Psi is W-invariant",
                         lambda: (is_w_invariant(rs, hat) and is_w_invariant(rs, psi), "every simple reflection")))

    def limit():
        ok = q_limit(hat) == chi and q_limit(psi) == chi
        return ok, "q -> 0 limits of Psi and Psi_hat vs chi(L(lam))"

    checks.append(_check("q_limit", "lim_{q->0} Psi = chi(L(lam))", limit))

    def polynomial():
        tab = table_from_characters(rs, lam, global_weyl_char)
        tab.entries[lam] = psi
        hat_normalize(tab)
        return True, "prefactor clears every denominator"

    checks.append(_check("polynomiality", "Psi * prod (1-q^r) is polynomial", polynomial))

    def positive():
        rep = positivity_check(decompose(rs, hat))
        return rep.ok, rep.violators or "coefficients in Z>=0[q]"

    checks.append(_check("positivity", "Psi_hat in Z>=0[q]-span of chi(L(mu))", positive))

    def eigen():
        if rs.family != "A":
            return None, "skipped: no general-type Hamiltonian"
        op = toda_hamiltonian_A(rs.rank + 1)
        ops = [op, dual_operator(op)] if rs.rank > 1 else [op]
        # window large enough that lam itself is an interior point
        big = tuple(a + int(i == 0) + int(i == rs.rank - 1) for i, a in enumerate(lam))
        tab = table_from_characters(rs, big, global_weyl_char)
        tab.entries[lam] = psi
        bad = []
        for o in ops:
            rep = eigencheck(o, tab)
            if lam not in rep.interior():
                raise InvariantViolation("eigencheck window does not contain lam as an interior point")
            bad += [(o.name, list(w)) for w in rep.failures()]
        return not bad, bad or "zero residual at every interior weight"

    checks.append(_check("eigencheck", "M_f(Psi) = f(z) Psi", eigen))
    return checks


def cmd_check(job: JobSpec) -> int:
    rs, lam = job.rs, job.weight
    candidate = None
    if job.options.get("input"):
        candidate = load_candidate(job.options["input"], rs, lam)
    checks = run_checks(rs, lam, candidate)
    passed = all(c["status"] != "fail" for c in checks)
    report = {"type": rs.label, "weight": list(lam), "passed": passed, "checks": checks, "versions": _versions()}
    _emit(json.dumps(report, sort_keys=True, indent=1, default=str) + "\n", job.output)
    for c in checks:
        print(f"{c['status'].upper():8s} {c['name']}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAILED


def cmd_decompose(job: JobSpec) -> int:
    rs, lam = job.rs, job.weight
    if job.options.get("input"):
        f = load_candidate(job.options["input"], rs, lam)
    else:
        f = affine_demazure_char(rs, lam)
    try:
        dec = decompose(rs, f)
    except NotWInvariant as e:
        raise BadInput(f"input is not W-invariant: {e}") from None
    rep = positivity_check(dec)
    if job.fmt == "json":
        obj = {"type": rs.label, "weight": list(lam), "decomposition": dec.to_json_obj(),
               "positive": rep.ok, "violators": rep.violators}
        text = json.dumps(obj, sort_keys=True, indent=1) + "\n"
    else:
        lines = [f"[{','.join(map(str, w))}] -> {c}" for w, c in sorted(dec.items(), key=lambda p: (-rs.height(p[0]), p[0]))]
        text = "\n".join(lines) + f"\npositive: {str(rep.ok).lower()}\n"
    _emit(text, job.output)
    return EXIT_OK


COMMANDS = {"psi": cmd_psi, "check": cmd_check, "decompose": cmd_decompose}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qwhittaker", description="q-Whittaker functions and level-one Demazure characters")
    p.add_argument("--batch", metavar="FILE", help="run one job per line of FILE concurrently")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for --batch")
    sub = p.add_subparsers(dest="command")

    def common(sp):
        sp.add_argument("--type", required=True, dest="label", help="root system label, e.g. A2, D4, E6")
        sp.add_argument("--weight", required=True, help="dominant weight, comma-separated fundamental coordinates")
        sp.add_argument("--format", dest="fmt", choices=FORMATS, default="pretty")
        sp.add_argument("-o", "--output", default=None, help="output path (default stdout)")

    sp = sub.add_parser("psi", help="compute Psi or Psi_hat")
    common(sp)
    sp.add_argument("--hat", action="store_true", help="multiply by the prefactor (Demazure normalization)")
    sp.add_argument("--via", choices=("toda", "demazure"), default=None)
    sp.add_argument("--table", action="store_true", help="write the whole table up to the weight")

    sp = sub.add_parser("check", help="verify the identities for one weight")
    common(sp)
    sp.add_argument("--input", default=None, help="psi JSON file whose entry is checked instead of a fresh one")
    sp.set_defaults(fmt="json")

    sp = sub.add_parser("decompose", help="expand Psi_hat in irreducible characters")
    common(sp)
    sp.add_argument("--input", default=None)
    return p


def job_from_args(args) -> JobSpec:
    try:
        rs = build_root_system(args.label)
    except UnsupportedType as e:
        raise BadInput(str(e)) from None
    opts = {k: getattr(args, k) for k in ("hat", "via", "table", "input") if getattr(args, k, None) is not None}
    return JobSpec(rs.label, parse_weight(args.weight, rs), args.command, args.fmt, args.output, opts)


def run_job(job: JobSpec) -> int:
    try:
        return COMMANDS[job.command](job)
    except BadInput as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except InvariantViolation as e:
        print(f"internal invariant violated: {e}", file=sys.stderr)
        return EXIT_BUG
    except QWhittakerError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT


def _run_line(line: str) -> int:
    return main(shlex.split(line))


def run_batch(path: str, jobs: int | None = None) -> int:
    try:
        lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        codes = list(ex.map(_run_line, lines))
    for ln, code in zip(lines, codes):
        print(f"{code} {ln}", file=sys.stderr)
    return max(codes, default=EXIT_OK)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.batch:
        return run_batch(args.batch, args.jobs)
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_BAD_INPUT
    try:
        job = job_from_args(args)
    except BadInput as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BAD_INPUT
    return run_job(job)


if __name__ == "__main__":
    sys.exit(main())
