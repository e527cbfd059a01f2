"""Command line: ``dagcat check FILE``, ``dagcat demo NAME``, ``dagcat version``.

Exit codes: 0 when every check passes, 1 when some law is violated, 2 for
unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from dagcat import __version__, presets
from dagcat.algebras import (
    em_verdict,
    emnonfem_demo,
    fem_law_verdict,
    measurement_demo,
)
from dagcat.category import DEFAULT_TOL, check_self_adjoint, check_unitary
from dagcat.errors import DagcatError, LawError
from dagcat.frobenius import (
    MonoidData,
    Verdict,
    canonical_involution,
    check_cayley,
    check_monoid_laws,
    first_failure,
    involution_verdict,
    theorem_involutive_iff_frobenius,
)
from dagcat.groupoid import (
    FiniteGroupoid,
    frobenius_to_groupoid,
    groupoid_to_frobenius,
    inverse_relation,
    isomorphic_by_labels,
)
from dagcat.io import InputError, dumps, load, morphism_json
from dagcat.natmonad import nat_monad_demo
from dagcat.sampling import object_label, object_of_shape
from dagcat.writer import WriterMonad, check_commutative, check_equivalence, counterexample_rather_strong

LAWS_BY_KIND = {
    "monoid": ("monoid", "frobenius", "special", "commutative", "involutive", "cayley"),
    "algebra": ("em", "fem"),
    "projectors": ("em", "fem", "projective"),
    "relation": ("unitary", "self-adjoint"),
    "cmat": ("unitary", "self-adjoint"),
}
LAWS_BY_KIND["groupoid"] = LAWS_BY_KIND["monoid"]

DEMOS = ("em-vs-fem", "groupoid", "measurement", "nat-monad", "counterexample", "cayley-theorem", "monad-equivalence")


class UsageError(DagcatError, ValueError):
    pass


def default_tol() -> float:
    raw = os.environ.get("DAGCAT_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"DAGCAT_TOL must be a number, got {raw!r}") from None
    if not tol >= 0:
        raise UsageError("DAGCAT_TOL must be nonnegative")
    return tol


def verdict_json(law: str, v: Verdict, with_witness: bool = True) -> dict:
    out = {"law": law, "equation": v.equation, "ok": v.ok, "residual": v.residual}
    if not v.ok and with_witness and v.witness is not None:
        out["witness"] = {"lhs": morphism_json(v.witness[0]), "rhs": morphism_json(v.witness[1])}
    return out


def _flag(law: str, ok: bool, equation: str) -> dict:
    return {"law": law, "equation": equation, "ok": bool(ok), "residual": 0.0}


# -- check ------------------------------------------------------------------------------


def _monoid_checks(M: MonoidData, laws, tol) -> list[dict]:
    report = check_monoid_laws(M, tol)
    out = []
    for law in laws:
        if law == "monoid":
            out.append(verdict_json(law, first_failure([report["associative"], report["unital"]])))
        elif law in ("frobenius", "special", "commutative"):
            out.append(verdict_json(law, report[law]))
        elif law == "involutive":
            try:
                out.append(verdict_json(law, involution_verdict(M, canonical_involution(M, tol), tol)))
            except LawError as exc:
                out.append(_flag(law, False, f"canonical involution undefined: {exc}"))
        elif law == "cayley":
            try:
                c = check_cayley(M, tol)
                out.append(verdict_json(law, first_failure([c.homomorphism, c.monic])))
            except LawError as exc:
                out.append(_flag(law, False, f"Cayley embedding undefined: {exc}"))
    return out


def run_check(path: str, laws: list[str] | None, tol: float) -> dict:
    kind, obj = load(path)
    allowed = LAWS_BY_KIND[kind]
    laws = list(allowed) if not laws else laws
    bad = [law for law in laws if law not in allowed]
    if bad:
        raise UsageError(f"laws {bad} do not apply to kind {kind!r}; choose from {', '.join(allowed)}")
    if kind == "groupoid":
        obj = groupoid_to_frobenius(obj)
    if kind in ("monoid", "groupoid"):
        checks = _monoid_checks(obj, laws, tol)
    elif kind == "algebra":
        em = em_verdict(obj, tol)
        table = {"em": em, "fem": first_failure([em, fem_law_verdict(obj, tol)])}
        checks = [verdict_json(law, table[law]) for law in laws]
    elif kind == "projectors":
        rep = measurement_demo(obj, tol)
        table = {"em": (rep.em, "a∘T(a) = a∘μ and a∘η = id"),
                 "fem": (rep.fem, "μ∘T(a)† = T(a)∘μ†"),
                 "projective": (rep.projective, "orthogonal self-adjoint idempotents summing to id")}
        checks = [_flag(law, *table[law]) for law in laws]
    else:
        table = {}
        if "unitary" in laws:
            table["unitary"] = (check_unitary(obj, tol), "f†∘f = id = f∘f†")
        if "self-adjoint" in laws:
            sq = obj.dom.size == obj.cod.size
            table["self-adjoint"] = (sq and check_self_adjoint(obj, tol), "f = f†")
        checks = [_flag(law, *table[law]) for law in laws]
    return {"command": "check", "file": path, "kind": kind, "tolerance": tol,
            "checks": checks, "ok": all(c["ok"] for c in checks)}


# -- demos ------------------------------------------------------------------------------


def _is_file(arg: str) -> bool:
    return arg.endswith(".json") or os.path.exists(arg)


def _monoid_arg(arg: str) -> MonoidData:
    if _is_file(arg):
        kind, obj = load(arg)
        if kind == "groupoid":
            return groupoid_to_frobenius(obj)
        if kind != "monoid":
            raise InputError(f"{arg}: expected a monoid or groupoid file, got kind {kind!r}")
        return obj
    return presets.monoid(arg)


def _groupoid_arg(arg: str) -> FiniteGroupoid:
    if _is_file(arg):
        kind, obj = load(arg)
        if kind != "groupoid":
            raise InputError(f"{arg}: expected a groupoid file, got kind {kind!r}")
        return obj
    return presets.groupoid(arg)


def _unitary_arg(arg: str):
    if _is_file(arg):
        kind, obj = load(arg)
        if kind != "cmat":
            raise InputError(f"{arg}: expected a cmat file, got kind {kind!r}")
        return obj.data.array
    return presets.unitary(arg)


def _projectors_arg(arg: str):
    if _is_file(arg):
        kind, obj = load(arg)
        if kind != "projectors":
            raise InputError(f"{arg}: expected a projectors file, got kind {kind!r}")
        return obj
    return presets.projectors(arg)


def _dims_arg(arg: str) -> list[tuple]:
    try:
        dims = [int(d) for d in arg.split(",") if d.strip()]
    except ValueError:
        raise UsageError(f"--dims must be comma-separated integers, got {arg!r}") from None
    if not dims or any(d < 1 for d in dims):
        raise UsageError("--dims needs positive integers")
    return [()] + [(d,) for d in dims]


def demo_em_vs_fem(opts, tol) -> dict:
    u = _unitary_arg(opts.u or "pauli-x")
    try:
        r = emnonfem_demo(u, tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    checks = [
        _flag("base_frobenius", r.base_frobenius, "M₂(ℂ) is a Frobenius monoid"),
        _flag("em", r.em, "h∘T(h) = h∘μ and h∘η = id"),
        {"law": "fem", "equation": "μ∘T(h)† = T(h)∘μ†", "ok": r.fem, "residual": r.fem_residual},
        _flag("fem_iff_self_adjoint", r.agrees, "FEM ⟺ u = u†"),
    ]
    return {"u": [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(u, dtype=complex)],
            "self_adjoint": r.self_adjoint, "involutory": r.involutory,
            "dagger_of_structure_is_hom": r.witness.dagger_is_hom, "checks": checks}


def demo_groupoid(opts, tol) -> dict:
    G = _groupoid_arg(opts.group or "interval")
    M = groupoid_to_frobenius(G)
    report = check_monoid_laws(M)
    checks = [verdict_json(law, report[law]) for law in ("associative", "unital", "frobenius")]
    try:
        H = frobenius_to_groupoid(M)
        checks.append(_flag("round_trip", isomorphic_by_labels(G, H), "decode(encode(G)) ≅ G"))
    except DagcatError as exc:
        checks.append(_flag("round_trip", False, f"decoding failed: {exc}"))
    checks.append(_flag("involution_is_inverse", canonical_involution(M) == inverse_relation(G), "i = {(g, g⁻¹)}"))
    checks.append(_flag("commutative_iff_abelian_union",
                        report["commutative"].ok == G.is_union_of_abelian_groups(),
                        "commutative ⟺ disjoint union of abelian groups"))
    return {"groupoid": G.name, "objects": len(G.objects), "morphisms": len(G.morphisms),
            "special": report["special"].ok, "commutative": report["commutative"].ok, "checks": checks}


def demo_measurement(opts, tol) -> dict:
    Ps = _projectors_arg(opts.projectors or "computational")
    try:
        r = measurement_demo(Ps, tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    checks = [
        {"law": "em", "equation": "a∘T(a) = a∘μ and a∘η = id", "ok": r.em, "residual": r.em_residual},
        {"law": "fem", "equation": "μ∘T(a)† = T(a)∘μ†", "ok": r.fem, "residual": r.fem_residual},
        _flag("projective_iff_em_fem", r.agrees, "projective measurement ⟺ EM ∧ FEM"),
    ]
    return {"outcomes": r.outcomes, "dim": r.dim, "projective": r.projective,
            "idempotent": r.idempotent, "orthogonal": r.orthogonal,
            "self_adjoint": r.self_adjoint, "complete": r.complete, "checks": checks}


def demo_nat_monad(opts, tol) -> dict:
    N = opts.window if opts.window is not None else 64
    try:
        r = nat_monad_demo(N)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    checks = [
        {"law": name, "equation": c.law, "ok": c.ok, "checked": c.checked, "violations": c.violations[:10]}
        for name, c in r.laws.items()
    ]
    return {"window": N, "elements": r.size, "violations": r.violations,
            "coverage": min(c.checked for c in r.laws.values()), "checks": checks}


def demo_counterexample(opts, tol) -> dict:
    G = _groupoid_arg(opts.group or "z2")
    if len(G.objects) != 1:
        raise UsageError("the counterexample needs a group (a one-object groupoid)")
    try:
        r = counterexample_rather_strong(groupoid_to_frobenius(G))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    def pairs(ps):
        return [[a, list(b) if isinstance(b, tuple) else b] for a, b in ps]

    return {"group": G.name, "unit_tensor_unit": pairs(r.unit_unit), "comult_after_unit": pairs(r.comult_unit),
            "checks": [_flag("unequal", r.unequal, "u⊗u ≠ m†∘u")]}


def demo_cayley_theorem(opts, tol) -> dict:
    M = _monoid_arg(opts.monoid or "basis3")
    try:
        t = theorem_involutive_iff_frobenius(M, tol)
        c = check_cayley(M, tol)
    except LawError as exc:
        raise UsageError(str(exc)) from exc
    checks = [
        verdict_json("cayley_homomorphism", c.homomorphism),
        verdict_json("cayley_monic", c.monic),
        _flag("biconditional", t.holds, "frobenius ⟺ (involutive ∧ R_*∘i = R)"),
    ]
    return {"monoid": M.name, "frobenius": t.frobenius, "involutive": t.involutive,
            "preserves": t.preserves, "residuals": t.residuals, "checks": checks}


def demo_monad_equivalence(opts, tol) -> dict:
    M = _monoid_arg(opts.monoid or "basis2")
    try:
        W = WriterMonad(M)
    except LawError as exc:
        raise UsageError(str(exc)) from exc
    shapes = _dims_arg(opts.dims) if opts.dims else None
    objects = [object_of_shape(W.backend, s) for s in shapes] if shapes else None
    r = check_equivalence(W, objects, tol)
    comm = check_commutative(W, tol=tol)
    checks = [{"law": k, "ok": v} for k, v in sorted(r.sections().items())]
    frob = check_monoid_laws(M, tol)["frobenius"].ok
    return {"monoid": M.name, "frobenius": frob, "objects": [object_label(A) for A in (objects or [])] or "default",
            "commutative": comm.passed(), "max_residual": r.max_residual,
            "ok_as_strong_frobenius_monad": r.ok,
            "checks": checks + [_flag("equivalence", r.ok == frob, "checks pass ⟺ base is Frobenius")]}


DEMO_RUNNERS = {
    "em-vs-fem": demo_em_vs_fem,
    "groupoid": demo_groupoid,
    "measurement": demo_measurement,
    "nat-monad": demo_nat_monad,
    "counterexample": demo_counterexample,
    "cayley-theorem": demo_cayley_theorem,
    "monad-equivalence": demo_monad_equivalence,
}


# demos whose verdict is a stated correspondence rather than every check passing
DEMO_CLAIMS = {
    "measurement": ("projective_iff_em_fem",),
    "monad-equivalence": ("equivalence",),
}


def run_demo(name: str, opts, tol: float) -> dict:
    body = DEMO_RUNNERS[name](opts, tol)
    claims = DEMO_CLAIMS.get(name)
    ok = all(c["ok"] for c in body["checks"] if claims is None or c["law"] in claims)
    return {"command": "demo", "demo": name, "tolerance": tol, **body, "ok": ok}


# -- output ---------------------------------------------------------------------------------


def render_text(report: dict) -> str:
    lines = []
    head = report.get("file") or report.get("demo")
    lines.append(f"{report['command']} {head}")
    extras = {k: v for k, v in report.items()
              if k not in ("command", "file", "demo", "checks", "ok") and not isinstance(v, (list, dict))}
    for k in sorted(extras):
        lines.append(f"  {k}: {extras[k]}")
    for c in report["checks"]:
        mark = "PASS" if c["ok"] else "FAIL"
        line = f"{mark} {c['law']}"
        if c.get("equation"):
            line += f": {c['equation']}"
        if c.get("residual"):
            line += f" (residual {c['residual']:.3g})"
        if "checked" in c:
            line += f" [{c['checked']} inputs, {len(c['violations'])} violations]"
        lines.append(line)
        if "witness" in c:
            lines.append(f"  lhs: {c['witness']['lhs']}")
            lines.append(f"  rhs: {c['witness']['rhs']}")
    for key in ("unit_tensor_unit", "comult_after_unit"):
        if key in report:
            lines.append(f"  {key}: {report[key]}")
    lines.append("result: " + ("pass" if report["ok"] else "fail"))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dagcat", description="Law checks for dagger-categorical structures.")
    sub = p.add_subparsers(dest="verb", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="absolute tolerance for FHilb comparisons")
    common.add_argument("--format", choices=("text", "json"), default="text")

    c = sub.add_parser("check", parents=[common], help="run law checks on a structure file")
    c.add_argument("file")
    c.add_argument("--laws", default="", help="comma-separated subset of laws to check")

    d = sub.add_parser("demo", parents=[common], help="run a bundled demonstration")
    d.add_argument("name", choices=DEMOS)
    d.add_argument("--u", help="2×2 unitary: preset name or cmat file")
    d.add_argument("--group", help="group or groupoid: preset name or groupoid file")
    d.add_argument("--monoid", help="monoid: preset name or monoid/groupoid file")
    d.add_argument("--projectors", help="projector family: preset name or projectors file")
    d.add_argument("--window", type=int, help="window bound N for nat-monad")
    d.add_argument("--dims", help="comma-separated sample dimensions, e.g. 2,3")

    sub.add_parser("version", help="print the version")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.verb == "version":
        print(f"dagcat {__version__}")
        return 0
    try:
        tol = args.tol if args.tol is not None else default_tol()
        if tol < 0:
            raise UsageError("--tol must be nonnegative")
        if args.verb == "check":
            laws = [x.strip() for x in args.laws.split(",") if x.strip()]
            report = run_check(args.file, laws, tol)
        else:
            report = run_demo(args.name, args, tol)
    except (InputError, UsageError, presets.UnknownPreset) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = dumps(report) if args.format == "json" else render_text(report)
    sys.stdout.write(out)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
