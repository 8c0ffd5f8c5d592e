"""Command line front end: ``frobgen gen|verify|specialize|split|sample|unitgroup``.

Exit codes: 0 ok, 1 verification failure, 2 bad input, 3 no cyclic vector,
4 bad specialization point, 5 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .algebra import AlgebraError, build_algebra, generic_matrix, group_fingerprint, unit_group, DEFAULT_UNIT_CAP
from .finitefield import CapExceeded, FieldError, new_context
from .frobenius import (
    ConcreteAdditivePolynomial,
    CyclicVectorNotFound,
    FrobeniusModule,
    SpecializationError,
    companion_form,
    cyclic_vector,
    emit_additive_poly,
    specialize_module,
    specialize_polynomial,
)
from .multipoly import parse_mpoly, ypoly_divrem
from .serialize import (
    SpecError,
    dumps,
    load_algebra,
    load_basis,
    load_polynomial,
    load_ypoly,
    parse_elements,
    parse_field,
)
from .solver import SplittingError, additive_splitting_degree, sample_frobenius, splitting_report
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_SPEC, EXIT_CYCLIC, EXIT_POINT, EXIT_CAP = range(6)


def _algebra(args):
    spec, _ = load_algebra(args.algebra)
    if getattr(args, "basis", None):
        spec.basis = load_basis(args.basis, spec)
    return build_algebra(spec)


def _cyclic(args, ctx):
    if not args.cyclic_vector:
        return None
    return parse_elements(args.cyclic_vector, ctx)


def _fmt_matrix(M) -> list[list[str]]:
    return [[str(x) for x in row] for row in M]


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "structured":
        sys.stdout.write(dumps(payload))
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


# -- subcommands -------------------------------------------------------------------


def cmd_gen(args) -> int:
    alg = _algebra(args)
    A, d = generic_matrix(alg)
    fm = FrobeniusModule(A, alg.q)
    v, N = cyclic_vector(fm, _cyclic(args, alg.ctx))
    cf = companion_form(fm, v, N)
    f = emit_additive_poly(cf, alg.q, d)
    payload = {
        "m": alg.m,
        "basis": [_fmt_matrix(b) for b in alg.basis],
        "A": A.format(),
        "d": d.format(),
        "v": [x.format() for x in v],
        "N": N.format(),
        "delta": cf.delta.format(),
        "polynomial": f.to_dict(),
    }
    code = EXIT_OK
    lines = [
        f"m = {alg.m}",
        "A(t) = " + str(A.format()),
        f"d = {d.format()}",
        "v = (" + ", ".join(x.format() for x in v) + ")",
        "N = " + str(N.format()),
        "Delta = " + str(cf.delta.format()),
        f"f = {f.render()}",
    ]
    if args.check_divisor:
        g = load_ypoly(args.check_divisor, alg.ctx, alg.m)
        _, rem = ypoly_divrem(f.as_ypoly(), g)
        ok = rem.is_zero()
        payload["divisor_check"] = {"remainder_zero": ok}
        lines.append(f"divisor check: remainder {'0' if ok else 'nonzero'}")
        code = EXIT_OK if ok else EXIT_VERIFY
    _emit(args, payload, lines)
    return code


def cmd_verify(args) -> int:
    checks = run_suite(args.example)
    failed = [c for c in checks if not c.ok]
    payload = {
        "example": args.example,
        "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in checks],
        "ok": not failed,
    }
    lines = [c.line() for c in checks]
    lines.append(f"{args.example}: {'all checks passed' if not failed else 'FAILED at ' + failed[0].name}")
    _emit(args, payload, lines)
    return EXIT_OK if not failed else EXIT_VERIFY


def _field_arg(args, default=None):
    if args.field:
        p, e = parse_field(args.field)
    elif default is not None:
        p, e = default
    else:
        raise SpecError("--field is required")
    return new_context(p, e)


def cmd_specialize(args) -> int:
    f = load_polynomial(args.polynomial)
    L = _field_arg(args, (f.ctx.p, f.ctx.e))
    if L.p != f.ctx.p or L.e % f.ctx.e:
        raise SpecError("the field must contain the coefficient field")
    xi = parse_elements(args.xi, L)
    conc = specialize_polynomial(f, xi, L)
    _emit(args, conc.to_dict(), [conc.format()])
    return EXIT_OK


def _parse_concrete(text: str, L, q: int) -> ConcreteAdditivePolynomial:
    poly = parse_mpoly(text, L, ["Y"])
    by_exp = {exp[0]: c for exp, c in poly.terms.items()}
    top = max(by_exp, default=0)
    n = 0
    while q**n < top:
        n += 1
    if q**n != top or not by_exp[top].is_one():
        raise SpecError(f"not a monic additive polynomial in Y^({q}^i): {text!r}")
    allowed = {q**i for i in range(n + 1)}
    if any(k not in allowed for k in by_exp):
        raise SpecError(f"not an additive polynomial in Y^({q}^i): {text!r}")
    coeffs = [-by_exp.get(q**i, L.zero) for i in range(n)]
    return ConcreteAdditivePolynomial(q, n, coeffs)


def cmd_split(args) -> int:
    cap = args.cap
    if args.algebra:
        alg = _algebra(args)
        L = _field_arg(args, (alg.ctx.p, alg.ctx.e))
        if not args.xi:
            raise SpecError("--xi is required with --algebra")
        A, d = generic_matrix(alg)
        fm = FrobeniusModule(A, alg.q)
        conc = specialize_module(fm, parse_elements(args.xi, L), L)
        rep = splitting_report(conc.matrix, alg.q, alg, cap)
        payload = rep.to_dict()
        lines = [
            "dimensions: " + " ".join(f"j={j}:{dim}" for j, dim in rep.dims.items()),
            f"splitting degree: {rep.splitting_degree}",
            "g = " + str(payload["g"]),
            f"g order: {rep.g_order}",
            "membership: (" + ", ".join(payload["membership"]) + ")",
        ]
        _emit(args, payload, lines)
        return EXIT_OK
    if not args.polynomial:
        raise SpecError("give a polynomial or --algebra")
    L = _field_arg(args)
    q = args.q or L.p
    f = _parse_concrete(args.polynomial, L, q)
    if not f.coeffs[0]:
        raise SpecError("a_0 = 0: inseparable additive polynomial")
    res = additive_splitting_degree(f, cap)
    lines = [
        "dimensions: " + " ".join(f"j={j}:{dim}" for j, dim in res.dims.items()),
        f"splitting degree: {res.splitting_degree}",
    ]
    _emit(args, {"polynomial": f.format(), **res.to_dict()}, lines)
    return EXIT_OK


def cmd_sample(args) -> int:
    alg = _algebra(args)
    fields = [parse_field(x) for x in (args.field or [f"{alg.ctx.p},{alg.ctx.e}"])]
    cyclic = [str(x) for x in _cyclic(args, alg.ctx)] if args.cyclic_vector else None
    rep = sample_frobenius(alg, fields, args.samples, args.seed, args.jobs, cyclic)
    payload = rep.to_dict()
    lines = [
        f"seed={rep.seed} samples={len(rep.samples)} skipped={rep.skipped}",
        "orders: " + " ".join(f"{k}:{v}" for k, v in rep.order_counts().items()),
    ]
    if rep.unit_orders is not None:
        lines.append("unit group orders: " + ",".join(map(str, rep.unit_orders)))
        lines.append("missing: " + (",".join(map(str, payload["missing_orders"])) or "none"))
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_unitgroup(args) -> int:
    alg = _algebra(args)
    fp = group_fingerprint(unit_group(alg, args.cap or DEFAULT_UNIT_CAP))
    _emit(args, fp.as_dict(), [fp.text()])
    return EXIT_OK


# -- argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frobgen", description="Generic additive polynomials for unit groups of F_q-algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="emit A(t), N, Delta and f(Y;t)")
    g.add_argument("--algebra", required=True)
    g.add_argument("--basis")
    g.add_argument("--cyclic-vector")
    g.add_argument("--check-divisor", metavar="FILE")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", parents=[common], help="run a golden suite")
    v.add_argument("example", choices=sorted(SUITES))
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("specialize", parents=[common], help="evaluate f(Y;t) at a point")
    s.add_argument("polynomial", help="polynomial JSON (as written by gen --format structured)")
    s.add_argument("--xi", required=True)
    s.add_argument("--field")
    s.set_defaults(func=cmd_specialize)

    sp = sub.add_parser("split", parents=[common], help="splitting degree of a concrete system or polynomial")
    sp.add_argument("polynomial", nargs="?", help="additive polynomial text, e.g. 'Y^9 + Y'")
    sp.add_argument("--algebra")
    sp.add_argument("--basis")
    sp.add_argument("--xi")
    sp.add_argument("--field")
    sp.add_argument("--q", type=int)
    sp.add_argument("--cap", type=int)
    sp.set_defaults(func=cmd_split)

    sa = sub.add_parser("sample", parents=[common], help="sample Frobenius elements of specializations")
    sa.add_argument("--algebra", required=True)
    sa.add_argument("--basis")
    sa.add_argument("--field", action="append", help="p,e; repeat for several fields")
    sa.add_argument("--samples", type=int, default=20)
    sa.add_argument("--seed", type=int, default=0)
    sa.add_argument("--jobs", type=int, default=1)
    sa.add_argument("--cyclic-vector")
    sa.set_defaults(func=cmd_sample)

    u = sub.add_parser("unitgroup", parents=[common], help="unit group fingerprint")
    u.add_argument("--algebra", required=True)
    u.add_argument("--basis")
    u.add_argument("--cap", type=int)
    u.set_defaults(func=cmd_unitgroup)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CapExceeded, SplittingError) as exc:
        code, msg = EXIT_CAP, str(exc)
    except (SpecError, AlgebraError, FieldError) as exc:
        code, msg = EXIT_SPEC, str(exc)
    except CyclicVectorNotFound as exc:
        code, msg = EXIT_CYCLIC, str(exc)
    except SpecializationError as exc:
        code, msg = EXIT_POINT, str(exc)
    print(f"frobgen: error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
