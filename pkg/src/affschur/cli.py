"""Command-line front end.

Elements are passed as inline JSON or ``@path``.  Results go to standard
output as canonical JSON (``--format json``, the default) or as text.
Exit status: 0 success, 1 a verification found a failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import serialize as ser
from .core import AlgebraContext, PeriodicMatrix
from .rings import ring_from_name

DEFAULT_WINDOW = int(os.environ.get("AFFSCHUR_WINDOW", "2"))
DEFAULT_SEED = int(os.environ.get("AFFSCHUR_SEED", "0"))


class UsageError(Exception):
    """A violated precondition; reported with exit status 2."""


class VerificationFailure(Exception):
    """A suite or cross-check found a mismatch; exit status 1."""

    def __init__(self, doc):
        super().__init__("verification failed")
        self.doc = doc


def _load(text: str, what: str):
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"{what}: cannot read {text[1:]}: {exc.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def _element(text: str, what: str, kind=None, ring: Optional[str] = None):
    doc = _load(text, what)
    try:
        x = ser.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{what}: {exc}")
    if kind is not None and not isinstance(x, kind):
        raise UsageError(f"{what}: expected {kind.__name__}, got {type(x).__name__}")
    if ring is not None and hasattr(x, "change_ring") and not hasattr(x, "ctx"):
        try:
            x = x.change_ring(ring_from_name(ring))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"{what}: cannot move coefficients to {ring}: {exc}")
    return x


def _context(args) -> AlgebraContext:
    try:
        return AlgebraContext(n=getattr(args, "n", 2) or 2, r=getattr(args, "r", None),
                              p=getattr(args, "p", None), h=getattr(args, "h", None),
                              window=getattr(args, "window", DEFAULT_WINDOW))
    except ValueError as exc:
        raise UsageError(str(exc))


def _modp(args):
    from .modp import ModPContext

    if args.p is None:
        raise UsageError("--p is required")
    return ModPContext(args.p, args.h)


# ---------------------------------------------------------------------------
# commands


def cmd_schur_mul(args):
    from .schur import SchurElement, mul

    x = _element(args.x, "--x", SchurElement, args.ring)
    y = _element(args.y, "--y", SchurElement, args.ring)
    try:
        return mul(x, y, strategy=args.strategy)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_schur_oracle(args):
    from .schur import SchurElement, mul

    x = _element(args.x, "--x", SchurElement, args.ring)
    y = _element(args.y, "--y", SchurElement, args.ring)
    try:
        got = mul(x, y, strategy="oracle")
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.check and got != mul(x, y, strategy="formula"):
        raise VerificationFailure({"oracle": ser.to_json(got),
                                   "formula": ser.to_json(mul(x, y))})
    return got


def cmd_hyper_mul(args):
    from .hyper import HyperElement, mul, convert

    x = _element(args.x, "--x", HyperElement, args.ring)
    y = _element(args.y, "--y", HyperElement, args.ring)
    if x.basis != "B":
        x = convert(x, x.basis, "B")
    if y.basis != "B":
        y = convert(y, y.basis, "B")
    try:
        return mul(x, y)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_hyper_convert(args):
    from .hyper import HyperElement, convert

    x = _element(args.x, "--x", HyperElement, args.ring)
    return convert(x, x.basis, args.to)


def cmd_hall_mul(args):
    from .hyper import hall_by_evaluation, hall_mul, hall_mul_lower

    A = _element(args.a, "--a", PeriodicMatrix)
    B = _element(args.b, "--b", PeriodicMatrix)
    try:
        out = hall_mul_lower(A, B) if args.lower else hall_mul(A, B)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.check and not args.lower and out != hall_by_evaluation(A, B):
        raise VerificationFailure({"formula": ser.to_json(out),
                                   "evaluation": ser.to_json(hall_by_evaluation(A, B))})
    return out


def cmd_garland_lambda(args):
    from .garland import lambda_poly, psi

    if args.k < 0:
        raise UsageError("--k must be nonnegative")
    f = lambda_poly(args.k)
    if args.i is None:
        return f
    if args.l == 0:
        raise UsageError("--l must be nonzero")
    return psi(args.i, args.l, f, args.n)


def cmd_garland_verify(args):
    from .verify import garland_report

    rep = garland_report(args.kmax, ns=(args.n,) if args.n else (2, 3))
    doc = {"report": {k: str(v) for k, v in rep.items()}}
    if any(v for k, v in rep.items() if k != "cases"):
        raise VerificationFailure(doc)
    return doc


def cmd_modp_basis(args):
    from .modp import enumerate_basis

    ctx, ac = _modp(args), _context(args)
    try:
        elems = enumerate_basis(args.kind, ctx, ac.n, ac.window)
    except ValueError as exc:
        raise UsageError(str(exc))
    return {"kind": args.kind, "p": str(ctx.p), "h": str(ctx.h), "n": str(ac.n),
            "window": str(ac.window), "count": str(len(elems)),
            "elements": [ser.to_json(x) for x in elems] if args.list else []}


def cmd_modp_member(args):
    from .hyper import HyperElement
    from .modp import membership_h, reduce

    ctx = _modp(args)
    x = _element(args.x, "--x", HyperElement, args.ring)
    if x.ring.characteristic != ctx.p:
        x = reduce(x, ctx.p)
    return {"member": membership_h(x, ctx), "p": str(ctx.p), "h": str(ctx.h)}


def cmd_little_basis(args):
    from .modp import little_inf_basis

    ctx, ac = _modp(args), _context(args)
    if args.r is None:
        raise UsageError("--r is required")
    try:
        elems = little_inf_basis(args.kind, args.r, ctx, ac.n, ac.window)
    except ValueError as exc:
        raise UsageError(str(exc))
    return {"kind": args.kind, "r": str(args.r), "p": str(ctx.p), "h": str(ctx.h), "n": str(ac.n),
            "window": str(ac.window), "count": str(len(elems)),
            "elements": [ser.to_json(x) for x in elems] if args.list else []}


def cmd_k_mul(args):
    from .kstab import KElement, k_mul

    x = _element(args.x, "--x", KElement, args.ring)
    y = _element(args.y, "--y", KElement, args.ring)
    try:
        return k_mul(x, y)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_kbar_mul(args):
    from .kstab import KBarElement, kbar_mul

    x = _element(args.x, "--x", KBarElement, args.ring)
    y = _element(args.y, "--y", KBarElement, args.ring)
    try:
        return kbar_mul(x, y)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_phi(args):
    from .hyper import HyperElement
    from .kstab import phi_h
    from .modp import reduce

    ctx = _modp(args)
    x = _element(args.x, "--x", HyperElement, args.ring)
    if x.ring.characteristic != ctx.p:
        x = reduce(x, ctx.p)
    try:
        return phi_h(x, ctx)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_verify(args):
    from .verify import SUITES, run_suite

    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(name not in SUITES for name in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results = []
    for name in names:
        kwargs = {}
        if name == "schur-formula":
            if args.n:
                kwargs["ns"] = (args.n,)
            if args.r is not None:
                kwargs["rs"] = (args.r,)
            if args.progress:
                kwargs["progress"] = lambda msg: print(msg, file=sys.stderr)
        res = run_suite(name, seed=args.seed, **kwargs)
        print(res.line(), file=sys.stderr)
        results.append(res)
    doc = {"seed": str(args.seed), "suites": [r.to_json() for r in results]}
    if not all(r.passed for r in results):
        raise VerificationFailure(doc)
    return doc


def cmd_independence(args):
    from .modp import independence_check

    ctx = _modp(args)
    doc = _load(args.family, "--family")
    if not isinstance(doc, list):
        raise UsageError("--family must be a JSON list of {matrix, lambda} objects")
    try:
        fam = [(ser.matrix_from_json(t["matrix"]), tuple(int(v) for v in t["lambda"])) for t in doc]
        ok = independence_check(fam, ctx)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--family: {exc}")
    return {"independent": ok, "size": str(len(fam)), "p": str(ctx.p)}


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affschur", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--ring", help="coefficient ring for input elements: Z, Q or Fp:<p>")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
        p.add_argument("--ring", default=argparse.SUPPRESS)
        return p

    def ctx_flags(p, r=False):
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--p", type=int)
        p.add_argument("--h", type=int, default=1)
        p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
        if r:
            p.add_argument("--r", type=int)

    p = add("schur-mul", cmd_schur_mul, "product in an affine Schur algebra")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--strategy", choices=("formula", "oracle"), default="formula")

    p = add("schur-oracle", cmd_schur_oracle, "product by group-algebra convolution")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--check", action="store_true", help="also compare with the formula path")

    p = add("hyper-mul", cmd_hyper_mul, "product in the integral hyperalgebra")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = add("hyper-convert", cmd_hyper_convert, "change of basis")
    p.add_argument("--x", required=True)
    p.add_argument("--to", choices=("B", "M", "Bp", "C", "G"), required=True)

    p = add("hall-mul", cmd_hall_mul, "product of two positive (or, with --lower, negative) elements")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--lower", action="store_true")
    p.add_argument("--check", action="store_true", help="compare with evaluation in a Schur algebra")

    p = add("garland-lambda", cmd_garland_lambda, "the polynomial Lambda_k, or its image under Psi_{i,l}")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--n", type=int, default=2)

    p = add("garland-verify", cmd_garland_verify, "check the partition identity for Lambda_k")
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--n", type=int)

    p = add("modp-basis", cmd_modp_basis, "enumerate a windowed basis of the level-h subalgebra")
    p.add_argument("--kind", choices=("M_h", "C_h", "G_h", "B_h", "M_h^0"), default="B_h")
    p.add_argument("--list", action="store_true", help="include the elements, not only the count")
    ctx_flags(p)

    p = add("modp-member", cmd_modp_member, "membership in the level-h subalgebra")
    p.add_argument("--x", required=True)
    ctx_flags(p)

    p = add("little-basis", cmd_little_basis, "windowed bases of little/infinitesimal affine Schur algebras")
    p.add_argument("--kind", choices=("P_hr", "B_hr", "M_hr", "P'_hr", "M'_hr"), default="P_hr")
    p.add_argument("--list", action="store_true")
    ctx_flags(p, r=True)

    p = add("k-mul", cmd_k_mul, "product in the stabilized algebra")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = add("kbar-mul", cmd_kbar_mul, "product with diagonals mod p^h")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = add("phi", cmd_phi, "image of a level-h element with diagonals mod p^h")
    p.add_argument("--x", required=True)
    ctx_flags(p)

    p = add("verify", cmd_verify, "run a verification suite (or all)")
    p.add_argument("suite")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--progress", action="store_true")

    p = add("independence", cmd_independence, "linear independence of evaluation sequences mod p")
    p.add_argument("--family", required=True)
    ctx_flags(p)
    return parser


def _render(result, fmt: str) -> str:
    if fmt == "text" and not isinstance(result, dict):
        return repr(result)
    doc = result if isinstance(result, dict) else ser.to_json(result)
    if fmt == "text":
        width = max((len(k) for k in doc), default=0)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in sorted(doc.items()))
    return json.dumps(doc, sort_keys=True, ensure_ascii=False)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "p", None) is not None or getattr(args, "n", None):
            _context(args)
        result = args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(json.dumps(exc.doc, sort_keys=True, ensure_ascii=False))
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(_render(result, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
