"""Batch command-line front end.

Every invocation prints a single JSON document (sorted keys, so identical
requests give byte-identical output).  Exit status: 0 on success and when all
verification checks pass, 1 on a domain error (structured error JSON), 2 on
usage errors (argparse).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from random import Random

from .bernoulli import bernoulli_number, bernoulli_poly
from .lfunctions import (
    DirichletCharacter,
    dirichlet_l,
    hurwitz_l,
    kubota_leopoldt,
    minus_one_l,
    smallest_regularizer,
    zinv_report,
)
from .measures import (
    Factor,
    integrate,
    pushforward_linear,
    restrict,
    tower_from_json,
    tower_to_json,
)
from .ncseries import (
    NcSeries,
    bch,
    bch_reduced,
    bch_scaled_pair,
    bch_scaled_pair_display,
    bernoulli_kernel,
    gamma_series,
    inversion_closed_form,
    inversion_pipeline,
    reduce_series,
)
from .padic import PadicNum, teichmuller
from .transforms import f_transform, p_transform


def _frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _parse_frac(s: str) -> Fraction:
    return Fraction(s)


def _parse_csv(s: str, cast=int):
    return [cast(x) for x in s.split(",") if x != ""]


def _value_json(v):
    if isinstance(v, PadicNum):
        return v.to_json()
    if isinstance(v, Fraction):
        return _frac_str(v)
    return v


def _emit(doc: dict) -> None:
    print(json.dumps(doc, sort_keys=True, separators=(",", ":")))


def _parse_psi(spec: str, ell: int) -> DirichletCharacter:
    head, _, body = spec.partition(":")
    m = int(head)
    values = {}
    for item in body.split(","):
        if not item:
            continue
        a, _, v = item.partition("=")
        values[int(a)] = int(v)
    return DirichletCharacter(m, values, ell)


# -- verification suites -------------------------------------------------------


def _first_discrepancy(r1, r2):
    for i, (x, y) in enumerate(zip(r1.a, r2.a)):
        if x != y:
            return f"X^{i}"
    for i, (x, y) in enumerate(zip(r1.b, r2.b)):
        if x != y:
            return f"Y*X^{i}"
    return None


def _random_poly(rng: Random, degree: int):
    return [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(degree + 1)]


def _one_y_series(alpha, phi, degree, max_y=None):
    coeffs = {}
    if alpha:
        coeffs["X"] = Fraction(alpha)
    for k, c in enumerate(phi):
        if c and 1 + k <= degree:
            coeffs["Y" + "X" * k] = Fraction(c)
    return NcSeries(degree, coeffs, max_y)


def verify_bch(degree: int = 10, seed: int = 7, count: int = 20) -> dict:
    """Full group product reduced mod the one-Y quotient vs the closed form.

    The full route runs one degree higher so its truncation window covers
    every Y X^j with j <= degree, and caps words at two Y's (a coarser
    two-sided ideal than the one reduced by, so the comparison is exact).
    """
    rng = Random(seed)
    checks = []
    x = NcSeries.variable("X", degree + 1, max_y=2)
    y = NcSeries.variable("Y", degree + 1, max_y=2)
    xy = reduce_series(bch(x, y)).truncate(degree)
    xy_closed = bch_reduced(1, [Fraction(0)], 0, [Fraction(1)], degree)
    checks.append(
        {"name": "xy-closed-form", "pass": xy == xy_closed,
         "discrepancy": _first_discrepancy(xy, xy_closed)}
    )
    yx = reduce_series(bch(y, x)).truncate(degree)
    yx_closed = bch_reduced(0, [Fraction(1)], 1, [Fraction(0)], degree)
    checks.append(
        {"name": "yx-closed-form", "pass": yx == yx_closed,
         "discrepancy": _first_discrepancy(yx, yx_closed)}
    )
    for i in range(count):
        alpha = Fraction(rng.choice([1, -1, 2, -2, 3]), rng.randint(1, 3))
        beta = Fraction(rng.choice([1, -1, 2, -2, 3]), rng.randint(1, 3))
        phi1 = _random_poly(rng, 4)
        phi2 = _random_poly(rng, 4)
        a = _one_y_series(alpha, phi1, degree + 1, max_y=2)
        b = _one_y_series(beta, phi2, degree + 1, max_y=2)
        got = reduce_series(bch(a, b)).truncate(degree)
        want = bch_reduced(alpha, phi1, beta, phi2, degree)
        checks.append(
            {"name": f"random-{i}", "pass": got == want,
             "discrepancy": _first_discrepancy(got, want)}
        )
    return {"suite": "bch", "degree": degree, "seed": seed, "checks": checks,
            "all_pass": all(c["pass"] for c in checks)}


def verify_gamma(degree: int = 10, seed: int = 7, chis=None) -> dict:
    rng = Random(seed)
    chis = chis or [Fraction(2), Fraction(3), Fraction(1, 2)]
    checks = []
    from math import factorial

    for chi in chis:
        l_even = [
            bernoulli_number(2 * k) / (2 * factorial(2 * k)) * (1 - chi ** (2 * k))
            for k in range(1, degree // 2 + 1)
        ]
        l_odd = [Fraction(rng.randint(-5, 5)) for _ in range(degree // 2 + 1)]
        out = gamma_series(chi, l_even, l_odd, degree)
        expected = bernoulli_kernel(chi, 0, degree)
        ok = out.b == expected and not any(out.a)
        for trial in range(5):
            other_odd = [Fraction(rng.randint(-5, 5)) for _ in range(degree // 2 + 1)]
            again = gamma_series(chi, l_even, other_odd, degree)
            ok = ok and again.b == out.b
        checks.append({"name": f"chi={chi}", "pass": ok})
    return {"suite": "gamma", "degree": degree, "seed": seed, "checks": checks,
            "all_pass": all(c["pass"] for c in checks)}


def verify_inversion(degree: int = 8, seed: int = 7, count: int = 10,
                     chi=None, t=None) -> dict:
    rng = Random(seed)
    checks = []
    for i in range(count):
        a = _random_poly(rng, degree)
        ci = Fraction(chi) if chi is not None else Fraction(rng.choice([2, 3, -1, 5]), rng.choice([1, 2]))
        ti = Fraction(t) if t is not None else Fraction(rng.randint(1, 5), rng.choice([2, 3, 7]))
        got = inversion_pipeline(a, ci, ti, degree)
        want = inversion_closed_form(a, ci, ti, degree)
        disc = _first_discrepancy(got, want)
        loop = bch_scaled_pair(ci, ti, degree)
        disp_ok = ci == 0 or loop.b == bch_scaled_pair_display(ci, ti, degree)
        checks.append(
            {"name": f"random-{i}", "chi": _frac_str(ci), "t": _frac_str(ti),
             "pass": disc is None and disp_ok, "discrepancy": disc}
        )
    return {"suite": "inversion", "degree": degree, "seed": seed, "checks": checks,
            "all_pass": all(c["pass"] for c in checks)}


# -- subcommand handlers ---------------------------------------------------------


def _cmd_bernoulli(args) -> dict:
    if args.t is not None:
        val = bernoulli_poly(args.k, _parse_frac(args.t))
        return {"k": args.k, "t": args.t, "value": _frac_str(val)}
    return {"k": args.k, "value": _frac_str(bernoulli_number(args.k))}


def _cmd_teichmuller(args) -> dict:
    val = teichmuller(args.u, args.ell, args.prec)
    return {"ell": args.ell, "u": args.u, "value": val.to_json()}


def _cmd_kl(args) -> dict:
    c = args.c if args.c is not None else smallest_regularizer(args.ell)
    s = _parse_frac(args.s)
    s = int(s) if s.denominator == 1 else s
    val = kubota_leopoldt(
        args.beta, s, args.ell, c=c, level=args.level, method=args.method,
        M=args.prec,
    )
    return {
        "ell": args.ell, "beta": args.beta, "s": _frac_str(s), "c": c,
        "level": args.level, "method": args.method, "value": val.to_json(),
    }


def _cmd_minus_one(args) -> dict:
    s = _parse_frac(args.s)
    s = int(s) if s.denominator == 1 else s
    val = minus_one_l(args.beta, s, args.ell, c=args.c, level=args.level,
                      method=args.method, M=args.prec)
    return {"ell": args.ell, "beta": args.beta, "s": _frac_str(s),
            "value": val.to_json()}


def _cmd_hurwitz(args) -> dict:
    s = _parse_frac(args.s)
    s = int(s) if s.denominator == 1 else s
    val = hurwitz_l(args.beta, s, args.i, args.m, args.ell, M=args.prec)
    return {"ell": args.ell, "beta": args.beta, "s": _frac_str(s), "i": args.i,
            "m": args.m, "value": val.to_json()}


def _cmd_dirichlet(args) -> dict:
    psi = _parse_psi(args.psi, args.ell)
    s = _parse_frac(args.s)
    s = int(s) if s.denominator == 1 else s
    val = dirichlet_l(psi, args.beta, s, args.ell, M=args.prec)
    return {"ell": args.ell, "beta": args.beta, "s": _frac_str(s),
            "psi": args.psi, "value": val.to_json()}


def _cmd_zinv(args) -> dict:
    primes = _parse_csv(args.primes)
    s = _parse_frac(args.s)
    s = int(s) if s.denominator == 1 else s
    rep = zinv_report(args.beta, s, primes, args.ell, M=args.prec)
    return {
        "ell": args.ell, "beta": args.beta, "s": _frac_str(s), "primes": primes,
        "value": rep["definition_route"].to_json(),
        "product_route": rep["product_route"].to_json(),
        "sign": rep["sign"],
        "magnitude_matches": rep["magnitude_matches"],
    }


def _cmd_measure(args) -> dict:
    with open(args.infile) as fh:
        mu = tower_from_json(json.load(fh))
    if args.ell is not None and args.ell != mu.ell:
        raise ValueError(f"tower file is for ell={mu.ell}, not {args.ell}")
    if args.action == "validate":
        return {"action": "validate", "valid": True,
                "denom_exponent": mu.denom_exponent, "depth": mu.depth,
                "rank": mu.rank}
    if args.action == "pushforward":
        rows = [
            _parse_csv(row) for row in args.matrix.split(";")
        ]
        out = pushforward_linear(rows, mu)
        doc = tower_to_json(out)
        if args.outfile:
            with open(args.outfile, "w") as fh:
                json.dump(doc, fh, sort_keys=True)
        return {"action": "pushforward", "matrix": rows, "tower": doc}
    if args.action == "integrate":
        level = args.level if args.level is not None else mu.depth
        powers = _parse_csv(args.powers) if args.powers else [0] * mu.rank
        teich = _parse_csv(args.teich) if args.teich else [0] * mu.rank
        inv = _parse_csv(args.inv) if args.inv else [0] * mu.rank
        brackets = (
            [None if b == "-" else _parse_frac(b) for b in args.bracket.split(",")]
            if args.bracket
            else [None] * mu.rank
        )
        if args.units:
            mu = restrict(mu, "units")
        factors = tuple(
            Factor(power=p, inverse=bool(iv), teich=tc, bracket=br)
            for p, iv, tc, br in zip(powers, inv, teich, brackets)
        )
        val = integrate(mu, factors, level)
        return {"action": "integrate", "level": level, "value": val.to_json()}
    if args.action == "transform":
        level = args.level if args.level is not None else mu.depth
        if args.kind == "p":
            ser = p_transform(mu, args.degree, level)
        else:
            ser = f_transform(mu, args.degree, level)
        coeffs = {
            ",".join(map(str, k)): _frac_str(v) for k, v in sorted(ser.coeffs.items())
        }
        return {"action": "transform", "kind": args.kind, "degree": args.degree,
                "level": level, "coeffs": coeffs}
    raise ValueError(f"unknown measure action {args.action}")


def _cmd_verify(args) -> dict:
    chis = [_parse_frac(args.chi)] if args.chi else None
    t = _parse_frac(args.t) if args.t else None
    if args.suite == "bch":
        doc = verify_bch(args.degree or 10, args.seed)
    elif args.suite == "gamma":
        doc = verify_gamma(args.degree or 10, args.seed, chis)
    elif args.suite == "inversion":
        doc = verify_inversion(args.degree or 8, args.seed,
                               chi=chis[0] if chis else None, t=t)
    elif args.suite == "all":
        parts = [verify_bch(args.degree or 10, args.seed),
                 verify_gamma(args.degree or 10, args.seed, chis),
                 verify_inversion(min(args.degree or 8, 8), args.seed)]
        doc = {"suite": "all", "parts": parts,
               "all_pass": all(p["all_pass"] for p in parts)}
    else:
        raise ValueError(f"unknown verify suite {args.suite}")
    return doc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="elladic")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bernoulli")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=str, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("teichmuller")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--prec", type=int, default=8)
    p.add_argument("--json", action="store_true")

    for name in ("kl", "minus-one"):
        p = sub.add_parser(name)
        p.add_argument("--ell", type=int, required=True)
        p.add_argument("--beta", type=int, required=True)
        p.add_argument("--s", type=str, required=True)
        p.add_argument("--c", type=int, default=None)
        p.add_argument("--level", type=int, default=6)
        p.add_argument("--method", choices=["measure", "interp"], default="measure")
        p.add_argument("--prec", type=int, default=2)
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("hurwitz")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--s", type=str, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prec", type=int, default=2)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("dirichlet")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--s", type=str, required=True)
    p.add_argument("--psi", type=str, required=True)
    p.add_argument("--prec", type=int, default=2)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("zinv")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--s", type=str, required=True)
    p.add_argument("--primes", type=str, required=True)
    p.add_argument("--prec", type=int, default=2)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("measure")
    p.add_argument("action", choices=["validate", "pushforward", "integrate", "transform"])
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile", default=None)
    p.add_argument("--matrix", type=str, default=None)
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--kind", choices=["p", "f"], default="p")
    p.add_argument("--powers", type=str, default=None)
    p.add_argument("--teich", type=str, default=None)
    p.add_argument("--inv", type=str, default=None)
    p.add_argument("--bracket", type=str, default=None)
    p.add_argument("--units", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify")
    p.add_argument("suite", choices=["bch", "gamma", "inversion", "all"])
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--chi", type=str, default=None)
    p.add_argument("--t", type=str, default=None)
    p.add_argument("--json", action="store_true")

    return ap


_HANDLERS = {
    "bernoulli": _cmd_bernoulli,
    "teichmuller": _cmd_teichmuller,
    "kl": _cmd_kl,
    "minus-one": _cmd_minus_one,
    "hurwitz": _cmd_hurwitz,
    "dirichlet": _cmd_dirichlet,
    "zinv": _cmd_zinv,
    "measure": _cmd_measure,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = _HANDLERS[args.command](args)
    except (ValueError, ZeroDivisionError, OSError, KeyError) as exc:
        _emit({"error": str(exc), "command": args.command})
        return 1
    _emit(doc)
    if args.command == "verify":
        return 0 if doc["all_pass"] else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
