"""Command-line front end.

Input files look like::

    vars: x0 x1 x2
    F1 = x0^3 + x1^3 + x2^3

Exit codes: 0 success, 1 a verification check failed, 2 input could not be
parsed, 3 a mathematical error (singular curve, precision, domain).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from mhessian.errors import MHessianError, ParseError
from mhessian.polyring import parse_poly

COMMANDS = ("degrees", "hessian1", "mhessian", "flexweight", "resultant", "verify")


@dataclass
class JobConfig:
    command: str
    input_path: str
    m: Optional[int] = None
    seed: int = 0
    prime: int = (1 << 31) - 1
    order: int = 64
    output_format: str = "text"
    point: Optional[str] = None
    verify: bool = True


def read_forms(text: str):
    """Parse the ``vars:`` header and ``F<k> = ...`` lines; returns (names, forms)."""
    names = None
    forms = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if names is None:
            head, sep, rest = line.partition(":")
            if not sep or head.strip() != "vars":
                raise ParseError("expected a 'vars:' header", lineno, 1)
            names = rest.split()
            if len(names) < 2:
                raise ParseError("need at least two variables", lineno, line.index(":") + 2)
            for nm in names:
                if not (nm[0].isalpha() or nm[0] == "_") or not all(
                        ch.isalnum() or ch == "_" for ch in nm):
                    raise ParseError(f"bad variable name {nm!r}", lineno, line.index(nm) + 1)
            if len(set(names)) != len(names):
                raise ParseError("repeated variable name", lineno, 1)
            continue
        lhs, sep, rhs = line.partition("=")
        if not sep:
            raise ParseError("expected 'F<k> = <polynomial>'", lineno, 1)
        label = lhs.strip()
        if not (label.startswith("F") and label[1:].isdigit()):
            raise ParseError(f"bad form name {label!r}", lineno, line.index(label[:1] or "=") + 1)
        k = int(label[1:])
        if k in forms:
            raise ParseError(f"form {label} defined twice", lineno, 1)
        offset = len(lhs) + 1
        try:
            forms[k] = parse_poly(rhs, names=names, line=lineno)
        except ParseError as exc:
            raise ParseError(str(exc).split(": ", 1)[-1], lineno,
                             (exc.column or 1) + offset) from None
    if names is None:
        raise ParseError("missing 'vars:' header", 1, 1)
    if not forms:
        raise ParseError("no forms given", 1, 1)
    keys = sorted(forms)
    if keys != list(range(1, len(keys) + 1)):
        raise ParseError("forms must be numbered F1, F2, ... without gaps", 1, 1)
    return names, [forms[k] for k in keys]


def _curve(names, forms, m):
    from mhessian.oracles import CurveSpec

    return CurveSpec(len(names) - 1, forms, None, m)


def _parse_point(text: str):
    if text is None:
        raise ParseError("--point is required, e.g. --point 1,-1,0")
    try:
        return [Fraction(t.strip()) for t in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot read point {text!r}") from None


# ---------------------------------------------------------------------- commands
def cmd_degrees(cfg, names, forms):
    from mhessian.oracles import degree_report

    rep = degree_report(_curve(names, forms, cfg.m if cfg.m is not None else 1))
    data = rep.to_json()
    lines = [
        f"n+1 = {rep.rank_n_plus_1}",
        f"a = {rep.ambient_degree_a}",
        "b = " + ", ".join(str(b) for b in rep.moduli_degrees_b),
        f"total flex weight = {rep.total_flex_weight}",
        f"curve degree = {rep.curve_degree}",
        f"genus = {rep.genus}",
        f"Plucker total = {rep.plucker_total}",
    ]
    return 0, data, lines


def _plane_form(names, forms):
    from mhessian.errors import DomainError

    if len(names) != 3 or len(forms) != 1:
        raise DomainError("this command needs a single plane curve (three variables, one form)")
    return forms[0]


def cmd_hessian1(cfg, names, forms):
    from mhessian.oracles import classical_hessian

    H = classical_hessian(_plane_form(names, forms))
    return 0, {"hessian": H.to_str(names), "degree": H.x_degree()}, [H.to_str(names)]


def cmd_mhessian(cfg, names, forms):
    from mhessian.detdiv import NonvanishingOracle, compare_on_curve, hessian_div, polynomial_section
    from mhessian.oracles import classical_hessian, degree_report

    m = cfg.m if cfg.m is not None else 1
    curve = _curve(names, forms, m)
    oracle = NonvanishingOracle(prime=cfg.prime, seed=cfg.seed)
    s = hessian_div(curve, m, oracle)
    a = degree_report(curve, m).ambient_degree_a
    data = {
        "numerator": s.numerator.to_str(names),
        "denominator": s.denominator.to_str(names),
        "ambient_degree": s.ambient_degree,
        "verification": {},
    }
    lines = [
        f"A = {data['numerator']}",
        f"B = {data['denominator']}",
        f"ambient_degree = {s.ambient_degree}",
    ]
    code = 0
    if cfg.verify:
        deg_ok = s.ambient_degree == a
        data["verification"]["degree"] = {"expected": a, "ok": deg_ok}
        lines.append(f"degree check: {'OK' if deg_ok else 'FAIL'} (expected {a})")
        code = 0 if deg_ok else 1
        if curve.r == 2 and m == 1:
            ok, c = compare_on_curve(s, polynomial_section(classical_hessian(forms[0])),
                                     curve.ideal())
            data["verification"]["classical_hessian"] = {"match": ok,
                                                         "c": None if c is None else str(c)}
            lines.append(f"classical Hessian: MATCH (c = {c})" if ok else
                         "classical Hessian: MISMATCH")
            if not ok:
                code = 1
    return code, data, lines


def cmd_flexweight(cfg, names, forms):
    from mhessian.oracles import wronskian_weight

    F = _plane_form(names, forms)
    pt = _parse_point(cfg.point)
    if len(pt) != 3:
        raise ParseError("--point needs three coordinates")
    m = cfg.m if cfg.m is not None else 1
    w = wronskian_weight(F, m, pt, cfg.order)
    shown = ",".join(str(c) for c in pt)
    return 0, {"point": shown, "m": m, "weight": w}, [f"weight({shown}) = {w}"]


def cmd_resultant(cfg, names, forms):
    from mhessian.detdiv import resultant_via_div
    from mhessian.errors import DomainError
    from mhessian.oracles import sylvester_resultant

    if len(names) != 2 or len(forms) != 2:
        raise DomainError("resultant needs two binary forms in two variables")
    F0, F1 = forms
    m = cfg.m if cfg.m is not None else F0.x_degree() + F1.x_degree() - 1
    r = resultant_via_div(F0, F1, m, seed=cfg.seed)
    syl = sylvester_resultant(F0, F1)
    ok = r == syl or r == -syl
    data = {"resultant": str(r), "m": m, "sylvester": str(syl), "agree_up_to_sign": ok}
    lines = [f"resultant = {r}", f"sylvester = {syl} ({'agree' if ok else 'DISAGREE'} up to sign)"]
    return (0 if ok else 1), data, lines


def cmd_verify(cfg, names, forms):
    from mhessian.detdiv import NonvanishingOracle, compare_on_curve, hessian_div
    from mhessian.freecomplex import (
        check_complex,
        check_map,
        global_sections_row,
        koszul_jet_complex,
        tau_tilde,
        total_complex_plane_curve,
        cone,
    )
    from mhessian.oracles import degree_report

    m = cfg.m if cfg.m is not None else 1
    curve = _curve(names, forms, m)
    ideal = curve.ideal()
    rep = degree_report(curve, m)
    n = rep.rank_n_plus_1 - 1
    checks = []
    checks.append(("koszul jet complex d^2 = 0", check_complex(koszul_jet_complex(curve, m, n)).ok))
    checks.append(("global sections d^2 = 0", check_complex(global_sections_row(curve, m)).ok))
    tt = tau_tilde(curve, m, n)
    checks.append(("jet map commutes mod ideal", check_map(tt, ideal).ok))
    cn = cone(tt)
    checks.append(("cone d^2 = 0 mod ideal", check_complex(cn, ideal).ok))
    checks.append(("cone Euler characteristic 0", cn.euler_characteristic() == 0))
    if curve.r == 2:
        tc = total_complex_plane_curve(forms[0], m)
        checks.append(("total complex d^2 = 0 mod ideal", check_complex(tc, ideal).ok))
    s1 = hessian_div(curve, m, NonvanishingOracle(prime=cfg.prime, seed=cfg.seed))
    s2 = hessian_div(curve, m, NonvanishingOracle(prime=cfg.prime, seed=cfg.seed + 1))
    checks.append(("degree law", s1.ambient_degree == rep.ambient_degree_a))
    same, _ = compare_on_curve(s1, s2, ideal)
    checks.append(("chain independence on the curve", same))
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in checks]
    data = {"checks": [{"name": name, "ok": ok} for name, ok in checks]}
    return (0 if all(ok for _, ok in checks) else 1), data, lines


DISPATCH = {
    "degrees": cmd_degrees,
    "hessian1": cmd_hessian1,
    "mhessian": cmd_mhessian,
    "flexweight": cmd_flexweight,
    "resultant": cmd_resultant,
    "verify": cmd_verify,
}


def _origin(exc: BaseException) -> str:
    tb = exc.__traceback__
    name = "mhessian"
    while tb is not None:
        mod = tb.tb_frame.f_globals.get("__name__", "")
        if mod.startswith("mhessian."):
            name = mod.split(".", 1)[1]
        tb = tb.tb_next
    return name


def run(cfg: JobConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        with open(cfg.input_path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {cfg.input_path}: {exc.strerror}", file=err)
        return 2
    try:
        names, forms = read_forms(text)
        code, data, lines = DISPATCH[cfg.command](cfg, names, forms)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return 2
    except MHessianError as exc:
        print(f"error ({_origin(exc)}): {exc}", file=err)
        return 3
    if cfg.output_format == "json":
        data = {"command": cfg.command, **data}
        print(json.dumps(data, sort_keys=True), file=out)
    else:
        for line in lines:
            print(line, file=out)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-f", "--input", required=True, help="curve description file")
    common.add_argument("-m", "--m", type=int, default=None, help="twist m (default 1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--prime", type=int, default=(1 << 31) - 1)
    common.add_argument("--order", type=int, default=64, help="series truncation order")
    common.add_argument("--point", default=None, help="projective point a,b,c")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--no-verify", action="store_true", help="skip verification in mhessian")
    parser = argparse.ArgumentParser(prog="mhessian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = JobConfig(
        command=args.command,
        input_path=args.input,
        m=args.m,
        seed=args.seed,
        prime=args.prime,
        order=args.order,
        output_format="json" if args.json else "text",
        point=args.point,
        verify=not args.no_verify,
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
