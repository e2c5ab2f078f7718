"""Command line entry point: ``quasijac {expand,apply,lattice,fermion,check}``."""

from __future__ import annotations

import argparse
import json
import sys

from gmpy2 import mpq

from . import checks, fermion, forms, lattice, operators
from .seriescore import FourierSeries, WJet, series_to_dict

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _rational(text: str) -> mpq:
    try:
        return mpq(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


# ---------------------------------------------------------------------------
# catalog lookup

ALIASES = {
    "G_k": "eisenstein",
    "G_kl": "eisenstein_twisted",
    "G_klambda": "eisenstein_twisted",
    "P_m": "weier_p",
    "P_ml": "weier_p",
    "Gtilde_k": "gtilde",
    "Ptilde_m": "ptilde",
    "K": "prime_form",
    "P0": "p0",
    "F_R": "f_r",
    "K_n": "kn",
}


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for this form")
    return value


def build_form(name: str, args, order):
    """FourierSeries or WJet for a catalog name."""
    name = ALIASES.get(name, name)
    J = args.jet_order
    if name == "eisenstein":
        return forms.eisenstein(_need(args, "k"), order)
    if name == "eisenstein_twisted":
        return forms.eisenstein_twisted(_need(args, "k"), args.lam or 0, order)
    if name == "weier_p":
        return forms.weier_p(_need(args, "m"), order, args.lam)
    if name == "wp_hat":
        return forms.wp_hat(order)
    if name == "gtilde":
        return forms.gtilde(_need(args, "k"), order, args.alpha or 1, args.shift or 0)
    if name == "ptilde":
        return forms.ptilde(_need(args, "m"), order)
    if name == "prime_form":
        return forms.prime_form(order, J)
    if name == "p0":
        return forms.p0_jet(order, J)
    if name == "theta1":
        return forms.theta1(order)
    if name == "eta":
        return forms.eta(order)
    if name in ("E41", "E61", "phi101"):
        return forms.jacobi_eisenstein(name, int(order.__ceil__())).to_series(order)
    if name == "f_r":
        return forms.f_r(_need(args, "R"), order)
    if name == "kn":
        return forms.kn_form(_need(args, "n"), order)
    raise UsageError(f"unknown form {name!r}; known: {', '.join(forms.CATALOG)}")


def _emit(payload: dict, text: str, fmt: str):
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=1) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _object_payload(obj) -> dict:
    if isinstance(obj, WJet):
        return {
            "jet_order": obj.order,
            "coefficients": {str(k): series_to_dict(c) for k, c in sorted(obj.coeffs.items())},
        }
    return series_to_dict(obj)


def _object_text(label: str, obj) -> str:
    if isinstance(obj, WJet):
        lines = [f"{label} (W-jet, order {obj.order})"]
        lines += [f"  W^{k}: {obj.coeffs[k]}" for k in sorted(obj.coeffs)]
        return "\n".join(lines)
    return f"{label} = {obj}"


# ---------------------------------------------------------------------------
# commands


TEXT_NAMES = {
    "eisenstein": ("G", "k"),
    "eisenstein_twisted": ("G", "k"),
    "weier_p": ("P", "m"),
    "gtilde": ("Gtilde", "k"),
    "ptilde": ("Ptilde", "m"),
    "f_r": ("F", "R"),
    "kn": ("K", "n"),
}


def text_label(name: str, args) -> str:
    """ASCII display name such as Gtilde_2 or P_1,-1."""
    name = ALIASES.get(name, name)
    if name not in TEXT_NAMES:
        return name
    stem, param = TEXT_NAMES[name]
    label = f"{stem}_{getattr(args, param)}"
    if name in ("eisenstein_twisted", "weier_p") and args.lam is not None:
        label += f",{args.lam}"
    return label


def cmd_expand(args) -> int:
    order = mpq(args.q_order)
    obj = build_form(args.form, args, order)
    label = text_label(args.form, args)
    _emit({"form": ALIASES.get(args.form, args.form), "series": _object_payload(obj)}, _object_text(label, obj), args.format)
    return EXIT_OK


OPERATORS = {"heat": (0, 1), "top": (1, 0), "serre": (1, 1)}


def cmd_apply(args) -> int:
    order = mpq(args.q_order)
    obj = build_form(args.form, args, order)
    if not isinstance(obj, FourierSeries):
        raise UsageError("operators act on series, not jets")
    if args.operator == "M":
        A, B = _need(args, "A"), _need(args, "B")
    else:
        A, B = OPERATORS[args.operator]
    spec = operators.OpSpec(A, B, _need(args, "weight"), args.alpha or 1, _need(args, "index"))
    out = operators.apply_M(obj, spec)
    label = f"{args.operator}({args.form})"
    _emit({"operator": args.operator, "form": args.form, "series": series_to_dict(out)}, _object_text(label, out), args.format)
    return EXIT_OK


def cmd_lattice(args) -> int:
    spec = lattice.e8_lattice() if args.name == "e8" else lattice.a1_lattice()
    maxnorm = args.maxnorm if args.maxnorm is not None else 2 * (args.q_order - 1)
    counts = lattice.short_vectors(spec, maxnorm)
    rows = [[norm, r, c] for (norm, r), c in sorted(counts.items())]
    text = "\n".join(f"norm {n:3d}  <h,v> {r:3d}  count {c}" for n, r, c in rows)
    _emit({"lattice": args.name, "maxnorm": maxnorm, "counts": rows}, text, args.format)
    return EXIT_OK


def _fermion_result(args):
    kind = args.check
    R = args.R
    Q = mpq(args.q_order)
    if kind == "kernel":
        if R < 2:
            raise UsageError("--R must be at least 2 for the kernel check")
        out = {}
        for name, v in (("phi", fermion.build_phi(R)), ("psi", fermion.build_psi(R))):
            image = fermion.apply_mode(v, fermion.current(1))
            out[name] = None if image.is_zero() else image.to_dict()
        bad = [p for p in fermion.partitions(R) if fermion.j1_recursion_witness(p, R) is not None]
        out["recursion"] = None if not bad else [list(p) for p in bad]
        return all(v is None for v in out.values()), out
    if kind in ("zphi", "zpsi"):
        if kind == "zpsi" and R < 2:
            raise UsageError("--R must be at least 2 for Psi^R")
        w = fermion.zphi_witness(R, Q) if kind == "zphi" else fermion.zpsi_witness(R, Q)
        return w is None, None if w is None else {"q": str(w[0]), "actual": str(w[1]), "expected": str(w[2])}
    if kind == "det2":
        a, b = [mpq(1, 5), mpq(2, 5)], [mpq(0), mpq(1, 10)]
        d = fermion.det_npoint(a, b, Q)
        ds = fermion.det_npoint(a[::-1], b, Q)
        poles = {w: fermion.det_pole_orders(a, b, Q, 3, s) for w, s in (("0", 0), ("tau", 1))}
        ok = (d + ds).is_zero() and all(p["det"] <= 1 and p["with_theta"] == 0 for p in poles.values())
        return ok, {"antisymmetric": (d + ds).is_zero(), "poles": poles}
    offset = args.offset
    w = checks.series_witness(fermion.two_point_oracle(offset, Q), fermion.det_npoint([offset], [0], Q))
    return w is None, w


def cmd_fermion(args) -> int:
    ok, witness = _fermion_result(args)
    payload = {"check": args.check, "R": args.R, "q_order": args.q_order, "status": "pass" if ok else "fail", "witness": witness}
    text = f"fermion {args.check}: {'PASS' if ok else 'FAIL'}"
    if witness is not None and not ok:
        text += "\n" + json.dumps(witness, sort_keys=True)
    _emit(payload, text, args.format)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_check(args) -> int:
    if args.suite != "all" and args.suite not in checks.SUITE_IDS:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(checks.SUITE_IDS)}, all")
    names = list(checks.SUITE_IDS) if args.suite == "all" else [args.suite]
    golden = None
    if args.golden:
        with open(args.golden, encoding="utf-8") as fh:
            golden = json.load(fh)
    st = checks.Settings(args.q_order_explicit, args.cyclotomic_order)
    reports = checks.run_suites(names, st, args.jobs, golden)
    ok = all(r.passed for r in reports)
    lines = []
    for r in reports:
        lines.append(f"{r.suite}: {'PASS' if r.passed else 'FAIL'} ({len(r.checks)} checks)")
        for c in sorted(r.checks, key=lambda c: c.check_id):
            if not c.passed:
                lines.append(f"  FAIL {c.check_id} [{c.anchor}] {json.dumps(c.witness, sort_keys=True)}")
    payload = {"status": "pass" if ok else "fail", "suites": [r.to_dict() for r in reports]}
    _emit(payload, "\n".join(lines), args.format)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q-order", type=_positive, default=None, help="truncation order in q (default 8)")
    common.add_argument("--cyclotomic-order", type=_positive, default=4, help="base cyclotomic field order")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for suites")

    form_args = argparse.ArgumentParser(add_help=False)
    form_args.add_argument("--k", type=int)
    form_args.add_argument("--m", type=int)
    form_args.add_argument("--lam", type=int)
    form_args.add_argument("--R", type=int)
    form_args.add_argument("--n", type=int)
    form_args.add_argument("--alpha", type=int)
    form_args.add_argument("--shift", type=int)
    form_args.add_argument("--jet-order", type=_positive, default=6)

    parser = argparse.ArgumentParser(prog="quasijac", description="Exact quasi-Jacobi form expansions and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common, form_args], help="expand a catalog form")
    p.add_argument("form")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("apply", parents=[common, form_args], help="apply H, T, S or M to a catalog form")
    p.add_argument("operator", choices=("heat", "top", "serre", "M"))
    p.add_argument("form")
    p.add_argument("--weight", type=_rational, help="weight k of the operator")
    p.add_argument("--index", type=_rational, help="index m of the operator")
    p.add_argument("--A", type=_rational)
    p.add_argument("--B", type=_rational)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("lattice", parents=[common], help="short-vector counts N(norm, <h, v>)")
    p.add_argument("--name", choices=("e8", "a1"), default="e8")
    p.add_argument("--maxnorm", type=int)
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("fermion", parents=[common], help="fermionic kernel and n-point checks")
    p.add_argument("--check", choices=("kernel", "zphi", "zpsi", "det2", "oracle"), required=True)
    p.add_argument("--R", type=_positive, default=2)
    p.add_argument("--offset", type=_rational, default=mpq(1, 5))
    p.set_defaults(func=cmd_fermion)

    p = sub.add_parser("check", parents=[common], help="run an identity suite or all of them")
    p.add_argument("suite", help="suite id or 'all'")
    p.add_argument("--golden", help="JSON file of expected suite digests")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.q_order_explicit = args.q_order
    if args.q_order is None:
        args.q_order = 8
    try:
        return args.func(args)
    except (UsageError, forms.FormError, operators.OperatorError, fermion.FermionError, lattice.LatticeError) as exc:
        sys.stderr.write(f"quasijac: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
