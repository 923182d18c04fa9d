"""Command-line front end.

Subcommands: ``analyze``, ``ppt``, ``chsh``, ``maxent``, ``sweep``,
``verify``.  Exit status: 0 for separable / PPT-positive / passing, 1 for
entangled / negative eigenvalue / failing, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from importlib import resources
from pathlib import Path

import numpy as np

from . import chsh as chsh_mod
from . import criteria, entanglement, oracle, ppt
from .errors import MinorsepError
from .state import ZERO_TOL, StateMatrix, normalize, parse_state, random_product_state, random_state, serialize_state

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# helpers


def _load(path: str, do_normalize: bool) -> StateMatrix:
    raw = Path(path).read_bytes()
    fmt = "json" if raw.lstrip()[:1] == b"{" else "plain"
    C = parse_state(raw, fmt)
    return normalize(C) if do_normalize else C


def _cvec(v) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v).ravel()]


def _num(x: float) -> str:
    return repr(float(x))


def _emit(args, report: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


class _Timer:
    def __init__(self):
        self.stages: dict[str, float] = {}

    def __call__(self, name):
        timer = self

        class _Stage:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timer.stages[name] = time.perf_counter() - self.t0

        return _Stage()


def _input_block(path: str, C: StateMatrix) -> dict:
    return {"path": path, "rows": C.n, "cols": C.m, "norm2": C.norm2, "normalized": C.is_normalized()}


def _spectrum_block(spec: ppt.PartialTransposeSpectrum) -> dict:
    cf = spec.closed_form
    return {
        "dim": spec.dim,
        "side": spec.side,
        "eigenvalues": spec.eigenvalues.tolist(),
        "trace": spec.trace,
        "trace_sq": spec.trace_sq,
        "ppt": spec.ppt_positive,
        "closed_form": None
        if cf is None
        else {
            "kind": cf.kind,
            "eigenvalues": cf.eigenvalues.tolist(),
            "max_deviation": cf.max_deviation,
            "extrapolated": cf.extrapolated,
        },
    }


def _chsh_block(res: chsh_mod.ChshResult) -> dict:
    out = {
        "settings": res.settings.as_dict(),
        "achieved": res.achieved,
        "closed_form_max": res.closed_form_max,
        "gap": res.gap,
        "evaluations": res.evaluations,
    }
    if res.selector is not None:
        out = {"selector": str(res.selector), "e_param": res.e_param, **out}
    return out


# --------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    timer = _Timer()
    with timer("parse"):
        C = _load(args.input, args.normalize)
    with timer("separability"):
        verdict = criteria.is_separable(C, args.tol)
        reduced = criteria.reduced_criterion(C, args.tol)
    with timer("entanglement"):
        rep = entanglement.e_total(C)
    fact = None
    if verdict.separable:
        with timer("factorization"):
            fact = criteria.factorize(C, args.tol)

    shown = rep.top() if args.all_params else rep.top(args.top)
    report = {
        "input": _input_block(args.input, C),
        "separability": {
            "separable": verdict.separable,
            "q_sum": verdict.q_sum,
            "witness": None if verdict.witness is None else str(verdict.witness),
            "tol": verdict.tol,
            "reduced_value": reduced.value,
            "reduced_separable": reduced.separable,
        },
        "entanglement": {
            "total": rep.total,
            "upper_bound": rep.upper_bound,
            "maxent_residual": rep.maxent_residual,
            "params": {str(sel): val for sel, val in shown},
            "params_shown": len(shown),
            "params_total": len(rep.params),
        },
        "factorization": None
        if fact is None
        else {"a": _cvec(fact.a), "b": _cvec(fact.b), "residual": fact.residual},
    }
    if args.timings:
        report["timings"] = timer.stages

    lines = [
        f"state: {C.n} x {C.m}, norm2 = {_num(C.norm2)}",
        f"verdict: {'separable' if verdict.separable else 'entangled'}"
        + ("" if verdict.witness is None else f" (witness {verdict.witness})"),
        f"q_sum = {_num(verdict.q_sum)}  (tol {_num(verdict.tol)})",
        f"reduced criterion value = {_num(reduced.value)}",
        f"E_total = {_num(rep.total)}",
        f"upper bound = {_num(rep.upper_bound)}",
        f"maxent residual = {_num(rep.maxent_residual)}",
        f"parameters ({len(shown)} of {len(rep.params)}):",
    ]
    lines += [f"  E({sel}) = {_num(val)}" for sel, val in shown]
    if fact is not None:
        lines.append(f"factorization residual = {_num(fact.residual)}")
        for label, vec in (("a", fact.a), ("b", fact.b)):
            lines.append(f"  {label} = " + " ".join(f"({_num(z.real)}, {_num(z.imag)})" for z in vec))
    if args.timings:
        lines += [f"time[{k}] = {_num(v)} s" for k, v in timer.stages.items()]
    _emit(args, report, lines)
    return EXIT_OK if verdict.separable else EXIT_FAIL


def cmd_ppt(args) -> int:
    C = _load(args.input, args.normalize)
    spec = ppt.ppt_spectrum(C, side=args.side, tol=args.ppt_tol, closed_form=True)
    report = {"input": _input_block(args.input, C), **_spectrum_block(spec)}
    lines = [
        f"partial transpose (side {spec.side}) of a {C.n} x {C.m} state, dim {spec.dim}",
        "eigenvalues: " + " ".join(_num(x) for x in spec.eigenvalues),
        f"trace = {_num(spec.trace)}",
        f"trace_sq = {_num(spec.trace_sq)}",
        f"ppt: {'positive' if spec.ppt_positive else 'negative eigenvalue'} (min {_num(spec.min_eigenvalue)})",
    ]
    cf = spec.closed_form
    if cf is not None:
        if args.closed_form:
            lines.append(f"closed form ({cf.kind}): " + " ".join(_num(x) for x in cf.eigenvalues))
        lines.append(f"closed form max deviation = {_num(cf.max_deviation)}")
        if cf.extrapolated:
            lines.append("note: 2 x m closed form extrapolated beyond m <= 5")
    elif args.closed_form:
        lines.append("closed form: not available for this shape")
    _emit(args, report, lines)
    return EXIT_OK if spec.ppt_positive else EXIT_FAIL


def cmd_chsh(args) -> int:
    C = _load(args.input, args.normalize)
    if C.shape == (2, 2) and args.selector is None:
        results = [chsh_mod.chsh_optimize(C, args.budget, args.seed, args.passes)]
    else:
        sels = (
            [criteria.QuadSelector.parse(args.selector)]
            if args.selector is not None
            else list(criteria.iter_selectors(C.n, C.m))
        )
        results = [chsh_mod.submatrix_chsh(C, sel, args.budget, args.seed, args.passes) for sel in sels]
    report = {"input": _input_block(args.input, C), "results": [_chsh_block(r) for r in results]}
    lines = []
    for r in results:
        head = "state" if r.selector is None else f"block {r.selector} (E = {_num(r.e_param)})"
        lines.append(f"{head}: achieved {_num(r.achieved)}, closed form {_num(r.closed_form_max)}, gap {_num(r.gap)}")
        for k, v in r.settings.as_dict().items():
            lines.append(f"  {k} = " + " ".join(_num(x) for x in v))
    _emit(args, report, lines)
    return EXIT_OK


def cmd_maxent(args) -> int:
    C = entanglement.generate_maxent(args.n, args.m, args.seed)
    total = entanglement.e_total_value(C)
    bound = entanglement.e_upper_bound(args.n, args.m)
    ok, residual = entanglement.maxent_check(C, 1e-10)
    ok = ok and abs(total - bound) <= 1e-10
    if args.output:
        Path(args.output).write_text(serialize_state(C), encoding="utf-8")
    report = {
        "rows": args.n,
        "cols": args.m,
        "seed": args.seed,
        "e_total": total,
        "upper_bound": bound,
        "deviation": total - bound,
        "maxent_residual": residual,
        "certified": ok,
        "state": json.loads(serialize_state(C)),
    }
    lines = [
        f"maximally entangled {args.n} x {args.m} state (seed {args.seed})",
        f"E_total = {_num(total)}",
        f"upper bound = {_num(bound)}",
        f"deviation = {_num(total - bound)}",
        f"maxent residual = {_num(residual)}",
        f"certified: {ok}",
    ]
    if args.output:
        lines.append(f"state written to {args.output}")
    else:
        lines.append(serialize_state(C).rstrip("\n"))
    _emit(args, report, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _check_state(C: StateMatrix, tol: float, ppt_tol: float, worst: dict, counts: dict) -> None:
    """Fold every cross-check on ``C`` into running worst-case numbers."""

    def bump(key, value):
        worst[key] = max(worst.get(key, 0.0), float(value))

    verdict = criteria.is_separable(C, tol)
    red = criteria.reduced_criterion(C, tol)
    spec = ppt.ppt_spectrum(C, tol=ppt_tol, closed_form=True)
    rank1 = oracle.schmidt_rank(C).rank == 1
    votes = {verdict.separable, red.separable, spec.ppt_positive, rank1}
    counts["states"] = counts.get("states", 0) + 1
    counts["separable"] = counts.get("separable", 0) + int(verdict.separable)
    counts["disagreements"] = counts.get("disagreements", 0) + int(len(votes) > 1)

    total = entanglement.e_total_value(C)
    gram = oracle.e_total_gram(C)
    # relative to norm2^2, the natural scale of E_total; product states have E ~ 0
    bump("e_total_vs_gram_rel", abs(total - gram) / max(abs(total), abs(gram), C.norm2**2))
    bump("trace_dev", abs(spec.trace - 1.0))
    bump("trace_sq_dev", abs(spec.trace_sq - 1.0))
    bump("bound_excess", total - entanglement.e_upper_bound(C.n, C.m))
    if spec.closed_form is not None:
        bump(f"closed_form_{spec.closed_form.kind}_dev", spec.closed_form.max_deviation)
    if verdict.separable:
        bump("factorization_residual", criteria.factorize(C, tol).residual)
        bump("ppt_positive_spectrum_dev", np.max(np.abs(spec.eigenvalues - np.eye(1, spec.dim).ravel())))
    if C.n == 2:
        lhs, rhs = entanglement.verify_2xm_identity(C)
        bump("identity_2xm_rel", abs(lhs - rhs) / C.norm2**2)


#: Pass thresholds for ``sweep``; keys missing from a run are skipped.
SWEEP_LIMITS = {
    "e_total_vs_gram_rel": 1e-10,
    "trace_dev": 1e-10,
    "trace_sq_dev": 1e-10,
    "bound_excess": 1e-9,
    "closed_form_2xm_dev": 1e-8,
    "closed_form_3x3_dev": 1e-8,
    "factorization_residual": 1e-8,
    "ppt_positive_spectrum_dev": 1e-8,
    "identity_2xm_rel": 1e-10,
    "local_unitary_dev": 1e-10,
    "chsh_gap": 1e-5,
}


def cmd_sweep(args) -> int:
    worst: dict[str, float] = {}
    counts: dict[str, int] = {}
    children = np.random.SeedSequence(args.seed).spawn(args.count)
    for k, child in enumerate(children):
        rng = np.random.default_rng(child)
        C = random_product_state(args.n, args.m, rng) if k % 2 == 0 else random_state(args.n, args.m, rng)
        _check_state(C, args.tol, args.ppt_tol, worst, counts)
        # local-unitary invariance of E_total
        U = _haar(args.n, rng)
        V = _haar(args.m, rng)
        moved = StateMatrix(U @ C.data @ V.conj().T)
        e0 = entanglement.e_total_value(C)
        worst["local_unitary_dev"] = max(worst.get("local_unitary_dev", 0.0), abs(entanglement.e_total_value(moved) - e0))
    if (args.n, args.m) == (2, 2):
        for k, child in enumerate(children[: args.chsh_count]):
            C = random_state(2, 2, np.random.default_rng(child))
            res = chsh_mod.chsh_optimize(C, args.budget, args.seed + k)
            worst["chsh_gap"] = max(worst.get("chsh_gap", 0.0), abs(res.gap))
    ok = counts.get("disagreements", 0) == 0 and all(
        worst.get(key, 0.0) <= limit for key, limit in SWEEP_LIMITS.items()
    )
    report = {"rows": args.n, "cols": args.m, "count": args.count, "seed": args.seed, "counts": counts, "worst": worst, "ok": ok}
    lines = [f"sweep of {args.count} states, {args.n} x {args.m}, seed {args.seed}"]
    lines += [f"{k}: {v}" for k, v in counts.items()]
    lines += [f"max {k} = {_num(v)}" for k, v in worst.items()]
    lines.append(f"ok: {ok}")
    _emit(args, report, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _haar(k: int, rng: np.random.Generator) -> np.ndarray:
    Z = (rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))) / math.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def golden_corpus() -> dict[str, tuple[StateMatrix, dict]]:
    """The shipped reference states with their expected verdicts."""
    root = resources.files("minorsep") / "data"
    manifest = json.loads((root / "golden.json").read_text(encoding="utf-8"))
    return {name: (parse_state((root / name).read_bytes()), exp) for name, exp in manifest.items()}


def cmd_verify(args) -> int:
    cases = golden_corpus()
    if args.input:
        cases = {args.input: (_load(args.input, args.normalize), None)}
    rows = []
    all_ok = True
    for name, (C, expected) in cases.items():
        checks: dict[str, bool] = {}
        verdict = criteria.is_separable(C, args.tol)
        red = criteria.reduced_criterion(C, args.tol)
        spec = ppt.ppt_spectrum(C, tol=args.ppt_tol, closed_form=True)
        rank1 = oracle.schmidt_rank(C).rank == 1
        checks["four_way_agreement"] = verdict.separable == red.separable == spec.ppt_positive == rank1
        checks["trace_identities"] = abs(spec.trace - 1) <= 1e-10 and abs(spec.trace_sq - 1) <= 1e-10
        if spec.closed_form is not None:
            checks["closed_form_spectrum"] = spec.closed_form.max_deviation <= 1e-8
        total = entanglement.e_total_value(C)
        checks["gram_oracle"] = abs(total - oracle.e_total_gram(C)) <= 1e-10 * max(1.0, total)
        if expected is not None:
            checks["expected_verdict"] = verdict.separable == expected["separable"]
            checks["expected_e_total"] = abs(total - expected["e_total"]) <= 1e-12
        ok = all(checks.values())
        all_ok &= ok
        rows.append({"name": name, "ok": ok, "checks": checks})
    report = {"cases": rows, "ok": all_ok}
    lines = []
    for r in rows:
        failed = [k for k, v in r["checks"].items() if not v]
        lines.append(f"{'PASS' if r['ok'] else 'FAIL'} {r['name']}" + (f" ({', '.join(failed)})" if failed else ""))
    lines.append(f"ok: {all_ok}")
    _emit(args, report, lines)
    return EXIT_OK if all_ok else EXIT_FAIL


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=ZERO_TOL, help="zero / separability tolerance (default 1e-12)")
    common.add_argument("--ppt-tol", type=float, default=ppt.PPT_TOL, help="PPT eigenvalue tolerance (default 1e-9)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=20, help="CHSH optimizer restarts")

    state_in = argparse.ArgumentParser(add_help=False)
    state_in.add_argument("--input", required=True, metavar="PATH", help="state file (JSON or plain text)")
    state_in.add_argument("--normalize", action="store_true", help="normalize the state after reading")

    parser = argparse.ArgumentParser(prog="minorsep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common, state_in], help="separability verdict and entanglement parameters")
    p.add_argument("--all-params", action="store_true", help="list every block parameter")
    p.add_argument("--top", type=int, default=10, help="number of block parameters to list")
    p.add_argument("--timings", action="store_true", help="report wall time per stage")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("ppt", parents=[common, state_in], help="partial-transpose spectrum")
    p.add_argument("--side", choices=("A", "B"), default="A")
    p.add_argument("--closed-form", action="store_true", help="print the closed-form spectrum as well")
    p.set_defaults(func=cmd_ppt)

    p = sub.add_parser("chsh", parents=[common, state_in], help="CHSH maximum over measurement settings")
    p.add_argument("--passes", type=int, default=500, help="coordinate-ascent sweeps per restart")
    p.add_argument("--selector", metavar="S,T,U,V", help="1-based block selector for non-2x2 states")
    p.set_defaults(func=cmd_chsh)

    p = sub.add_parser("maxent", parents=[common], help="generate and certify a maximally entangled state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(func=cmd_maxent)

    p = sub.add_parser("sweep", parents=[common], help="random-state cross-check sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--chsh-count", type=int, default=10, help="CHSH runs for 2x2 sweeps")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="golden-corpus release checks")
    p.add_argument("--input", metavar="PATH", help="verify this state instead of the golden corpus")
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(func=cmd_verify)
    return parser


def _validate(args) -> None:
    for name in ("n", "m", "count", "budget", "passes", "top"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            raise UsageError(f"--{name} must be >= 1")
    if args.tol < 0 or args.ppt_tol < 0:
        raise UsageError("tolerances must be non-negative")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        _validate(args)
        return args.func(args)
    except (UsageError, MinorsepError, OSError, ValueError, ArithmeticError) as exc:
        print(f"minorsep {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
