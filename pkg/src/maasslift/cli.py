"""Command-line entry point: ``python3 -m maasslift <command> ...``.

Exit status is 0 on success, 1 when a computation fails (the failing stage
is named on stderr) and 2 for usage errors.  ``verify-paper`` exits 0 only if
every reference check passes.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .config import RunConfig
from .errors import DomainError, MaassLiftError
from .eta import EtaQuotientSpec, NAMED_FORMS, eta_quotient, named_form
from .exact import QuadElem, format_rational, parse_coefficient, parse_rational
from .numerics import CMPoint, context, eval_j3, recognize_algebraic
from .qseries import PuiseuxSeries, series_dump
from .shimura import (IDENTIFY_MARGIN, bor_report, identify_rational, j3_at_z_u, lift_expansion, mock_coefficients,
                      pole_data, pole_polynomial, scalar_preimage, tensor_input)
from .theta import BinaryLatticeSpec, binary_theta, eisenstein_coset, eisenstein_lattice
from .vvforms import VectorValuedSeries, basis_fm, basis_polynomial, kohnen_split, tensor


class Output:
    """Collects text lines or a JSON document, depending on the configured format."""

    def __init__(self, cfg: RunConfig, stream):
        self.cfg, self.stream = cfg, stream
        self.doc: dict = {}

    @property
    def json(self) -> bool:
        return self.cfg.output_format == "json"

    def line(self, text: str = ""):
        if not self.json:
            print(text, file=self.stream)

    def series(self, key: str, s: PuiseuxSeries, title: str | None = None):
        if self.json:
            self.doc[key] = s.to_json()
        else:
            if title:
                self.line(f"# {title}")
            self.line(series_dump(s))

    def value(self, key: str, value, text: str | None = None):
        if self.json:
            self.doc[key] = value
        else:
            self.line(text if text is not None else f"{key}\t{value}")

    def finish(self):
        if self.json:
            json.dump(self.doc, self.stream, indent=2, sort_keys=True)
            self.stream.write("\n")


def _vector(out: Output, key: str, v: VectorValuedSeries):
    for mu in range(v.n):
        out.series(f"{key}_{mu}", v[mu], f"component {mu}")


def _poly_json(p) -> list[str]:
    return p.to_list()


# -- commands ----------------------------------------------------------------

def _terms(args, cfg) -> int:
    """An explicit ``--terms`` wins over the configured default."""
    if args.terms is None:
        return cfg.terms
    if args.terms < 1:
        raise DomainError("--terms must be at least 1")
    return args.terms


def cmd_eta_expand(args, cfg, out):
    s = eta_quotient(EtaQuotientSpec.parse(args.spec), _terms(args, cfg))
    out.series("series", s)


def cmd_named(args, cfg, out):
    out.series("series", named_form(args.form, _terms(args, cfg)))


def _parse_coset(text: str, D: int):
    if re.fullmatch(r"-?\d+", text.strip()):
        r = int(text)
        if D == 3:
            return eisenstein_coset(r)
        return QuadElem(Fraction(r), Fraction(0), -D)
    c = parse_coefficient(text)
    return c if isinstance(c, QuadElem) else QuadElem(c, Fraction(0), -D)


def _maximal_order(D: int) -> BinaryLatticeSpec:
    if D == 3:
        return eisenstein_lattice()
    disc = -D if -D % 4 == 1 else -4 * D
    w = QuadElem(Fraction(1, 2), Fraction(1, 2), -D) if disc % 4 else QuadElem.sqrt(-D)
    return BinaryLatticeSpec(D, (QuadElem(1, 0, -D), w))


def cmd_theta(args, cfg, out):
    spec = _maximal_order(args.D)
    s = binary_theta(spec, _parse_coset(args.coset, args.D), args.k, _terms(args, cfg))
    out.series("series", s)


def cmd_basis(args, cfg, out):
    m = parse_rational(args.m)
    P = basis_polynomial(m)
    out.value("P", _poly_json(P), f"P\t{P}")
    f = basis_fm(m, _terms(args, cfg))
    _vector(out, "component", f)


def cmd_tensor(args, cfg, out):
    m = parse_rational(args.m)
    T = _terms(args, cfg)
    t = tensor(basis_fm(m, T), kohnen_split(T))
    _vector(out, "component", t)


def cmd_lift(args, cfg, out):
    m = parse_rational(args.m)
    poles = pole_data(tensor_input(m, 1))
    B = pole_polynomial(poles, cfg.float_bits)
    T = args.terms if args.terms is not None else B.degree + IDENTIFY_MARGIN
    lift = lift_expansion(tensor_input(m, T), T, cfg.divisor_exponent)
    out.series("lift", lift, "lift")
    out.value("poles", [[p.D, p.r, p.order] for p in poles], None if out.json else "# poles (D, r, order)")
    if not out.json:
        for p in poles:
            out.line(f"pole\t{p.D}\t{p.r}\t{p.order}")
    rf = identify_rational(lift, poles, T, cfg.float_bits, B=B)
    out.value("A", _poly_json(rf.num), f"A\t{rf.num}")
    out.value("B", _poly_json(rf.den), f"B\t{rf.den}")
    x = j3_at_z_u(cfg.float_bits)
    v = rf(x)
    out.value("value_at_z_U", format_rational(v), f"A/B({format_rational(x)})\t{format_rational(v)}")


def cmd_mock(args, cfg, out):
    table = mock_coefficients(parse_rational(args.max_m), cfg.float_bits, cfg.divisor_exponent)
    rows = table.rows()
    if out.json:
        out.doc["table"] = {m: r for m, r in rows}
    else:
        out.line("# m\tr_m")
        for m, r in rows:
            out.line(f"{m}\t{r}")
    out.series("scalar_preimage", scalar_preimage(table), "scalar preimage")
    report = bor_report(table)
    if out.json:
        out.doc["bor"] = [[n, format_rational(e), format_rational(g), "PASS" if ok else "FAIL"] for n, e, g, ok in report]
    else:
        out.line("# comparison: preimage + 3/4 w")
        for n, e, g, ok in report:
            out.line(f"{n}\t{format_rational(e)}\t{format_rational(g)}\t{'PASS' if ok else 'FAIL'}")


_FORM_RE = re.compile(r"^\s*\[?\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]?\s*$")


def cmd_cm_eval(args, cfg, out):
    m = _FORM_RE.match(args.form)
    if not m:
        raise MaassLiftError(f"form must look like [a,b,c], got {args.form!r}")
    pt = CMPoint(*(int(g) for g in m.groups()))
    bits = cfg.float_bits
    ctx = context(bits)
    val = eval_j3(pt, bits)
    poly = recognize_algebraic(val, bits=bits)
    residual = abs(sum(ctx.mpf(c.numerator) / c.denominator * val ** k for k, c in enumerate(poly.coeffs)))
    out.value("form", list(pt.form), f"form\t{pt}")
    out.value("D", pt.D, f"D\t{pt.D}")
    out.value("j3", [ctx.nstr(val.real, 40), ctx.nstr(val.imag, 40)],
              f"j3\t{ctx.nstr(val.real, 40)} + {ctx.nstr(val.imag, 40)}*i")
    out.value("polynomial", _poly_json(poly), f"polynomial\t{poly}")
    out.value("residual", ctx.nstr(residual, 5), f"residual\t{ctx.nstr(residual, 5)}")


def cmd_verify_paper(args, cfg, out) -> int:
    from .verify import format_rows, run_all

    results = run_all(cfg.float_bits)
    ok = all(r.passed for r in results)
    if out.json:
        out.doc["criteria"] = [
            {"number": r.number, "title": r.title, "passed": r.passed, "seconds": round(r.seconds, 3),
             "rows": [row.split("\t") for row in format_rows(r)]}
            for r in results]
        out.doc["passed"] = ok
    else:
        for r in results:
            out.line(f"# criterion {r.number}: {r.title} [{'PASS' if r.passed else 'FAIL'}]")
            for row in format_rows(r):
                out.line(row)
        out.line(f"# overall\t{'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


COMMANDS = {
    "eta-expand": cmd_eta_expand,
    "named": cmd_named,
    "theta": cmd_theta,
    "basis": cmd_basis,
    "tensor": cmd_tensor,
    "lift": cmd_lift,
    "mock": cmd_mock,
    "cm-eval": cmd_cm_eval,
    "verify-paper": cmd_verify_paper,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--terms", type=int, default=None, help="number of terms T (default 60, env MAASSLIFT_TERMS)")
    common.add_argument("--float-bits", type=int, default=None, help="float precision in bits (default 256)")
    common.add_argument("--divisor-exponent", type=int, default=None, help="exponent in the lift's divisor sum (default 2)")
    common.add_argument("--format", dest="output_format", choices=("text", "json"), default=None)

    p = argparse.ArgumentParser(prog="maasslift", description="Exact q-series and theta lifts for the level-3 CM example.")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")
    s = sub.add_parser("eta-expand", parents=[common], help="expand an eta quotient such as 3^8 or 1^12,3^-12")
    s.add_argument("--spec", required=True)
    s = sub.add_parser("named", parents=[common], help="expand a named form")
    s.add_argument("--form", required=True, choices=sorted(NAMED_FORMS))
    s = sub.add_parser("theta", parents=[common], help="binary theta series with lambda^(k-1)")
    s.add_argument("--D", type=int, default=3)
    s.add_argument("--coset", default="0")
    s.add_argument("--k", type=int, default=4)
    s = sub.add_parser("basis", parents=[common], help="basis form f_m and its polynomial P")
    s.add_argument("--m", required=True)
    s = sub.add_parser("tensor", parents=[common], help="components of f_m (x) F over Z/6")
    s.add_argument("--m", required=True)
    s = sub.add_parser("lift", parents=[common], help="lift of f_m (x) F, its poles and A/B")
    s.add_argument("--m", required=True)
    s = sub.add_parser("mock", parents=[common], help="table of mock coefficients r_m")
    s.add_argument("--max-m", required=True)
    s = sub.add_parser("cm-eval", parents=[common], help="j3 at the CM point of a form [a,b,c]")
    s.add_argument("--form", required=True)
    sub.add_parser("verify-paper", parents=[common], help="run every reference check")
    return p


def run_command(argv=None, stdout=None, stderr=None, environ=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        overrides = {"float_bits": args.float_bits, "divisor_exponent": args.divisor_exponent,
                     "output_format": args.output_format}
        cfg = RunConfig.from_env(environ, **overrides)
        if args.command == "verify-paper":
            cfg = cfg.with_(divisor_exponent=2)
    except MaassLiftError as exc:
        print(f"maasslift: configuration error: {exc}", file=stderr)
        return 2
    out = Output(cfg, stdout)
    try:
        status = COMMANDS[args.command](args, cfg, out)
    except (MaassLiftError, ZeroDivisionError) as exc:
        print(f"maasslift: {args.command} failed ({type(exc).__name__}): {exc}", file=stderr)
        return 1
    out.finish()
    return status or 0


def main(argv=None) -> int:
    return run_command(argv)


if __name__ == "__main__":
    sys.exit(main())
