"""Command line entry point: ``shiftlab <command> [options]``.

Every command prints a report (JSON by default) with the keys
``config, inputs, results, residuals, citations``. Exit status is 0 when all
checks pass, 1 when a check fails, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import (DomainError, InconclusiveTruncation, InternalInconsistency,
                     ShiftLabError, UnknownSuite)
from .inner import InnerFunction
from .shift import (ParamPair, apply_adjoint, hyponormality_check, kernel_adjoint,
                    matrix, unitary_equivalence)
from .subspaces import (build_subspace, codimension_report, orthogonality_residuals,
                        verify_invariance)
from .wandering import (cubic_value, find_counterexample, full_space_krylov_oracle,
                        full_space_wsp, h5_witness, monomial_R, thresholds, wsp_decision,
                        wsp_inequality_lhs)

ENV_ORDER = "SHIFTLAB_TRUNCATION"
EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2
PAIR_RESCALE_TOL = 1e-6


@dataclass(frozen=True)
class RunConfig:
    truncation_order: int = 256
    tolerance: float = 1e-10
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.truncation_order < 8:
            raise DomainError("truncation order must be >= 8")
        if not 0 < self.tolerance <= 1e-4:
            raise DomainError("tolerance must lie in (0, 1e-4]")


# -- parsing ----------------------------------------------------------------

def parse_complex(text: str) -> complex:
    """``0.3+0.4i``, ``-2i``, ``0.5`` or Python's ``0.3+0.4j``."""
    s = text.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed complex literal {text!r}") from None


def parse_theta(text: str) -> InnerFunction:
    """``z^n``, ``blaschke:a=<c>[,a=<c>...]`` or a ``*``-product of those."""
    power, zeros = 0, []
    for part in text.replace(" ", "").split("*"):
        if part == "z":
            power += 1
        elif part.startswith("z^"):
            try:
                power += int(part[2:])
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad power in {part!r}") from None
        elif part.startswith("blaschke:"):
            for item in part[len("blaschke:"):].split(","):
                zeros.append(parse_complex(item.removeprefix("a=")))
        elif part == "1":
            continue
        else:
            raise argparse.ArgumentTypeError(f"cannot parse theta {text!r}")
    try:
        return InnerFunction(1.0, power, tuple(zeros))
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _pair(alpha, beta, alpha_sq) -> ParamPair:
    if alpha_sq is not None:
        return ParamPair.from_alpha_sq(alpha_sq)
    if alpha is None and beta is None:
        s = 1 / np.sqrt(2)
        return ParamPair(s, s)
    if alpha is None or beta is None:
        raise DomainError("give both --alpha and --beta, or --alpha-sq")
    # literals typed with 8 digits miss the unit sphere by ~1e-9; rescale those
    s = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(s - 1) <= PAIR_RESCALE_TOL:
        alpha, beta = alpha / np.sqrt(s), beta / np.sqrt(s)
    return ParamPair(alpha, beta)


def pair_from_args(args) -> ParamPair:
    return _pair(args.alpha, args.beta, args.alpha_sq)


# -- serialization ----------------------------------------------------------------

def to_jsonable(x):
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return to_jsonable(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, ParamPair):
        return {"alpha": to_jsonable(x.alpha), "beta": to_jsonable(x.beta)}
    if isinstance(x, InnerFunction):
        return str(x)
    if hasattr(x, "__dataclass_fields__"):
        return to_jsonable(asdict(x))
    return x


def _flat(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict) and set(v) != {"re", "im"}:
            yield from _flat(v, key + ".")
        else:
            yield key, v


def _scalar_text(v):
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return f"{v['re']:.12g}{v['im']:+.12g}i"
    if isinstance(v, list):
        return "[" + ", ".join(str(_scalar_text(x)) for x in v) + "]"
    return v


def render(report: dict, fmt: str) -> str:
    doc = to_jsonable(report)
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2)
    lines = []
    for key, v in sorted(_flat(doc)):
        v = _scalar_text(v)
        if fmt == "csv":
            lines.append(f"{key},{json.dumps(v)}")
        else:
            lines.append(f"{key}: {v}")
    if fmt == "csv":
        lines.insert(0, "key,value")
    return "\n".join(lines)


def _report(cfg: RunConfig, inputs, results, residuals, citations) -> dict:
    return {"config": asdict(cfg), "inputs": inputs, "results": results,
            "residuals": residuals, "citations": citations}


def _status(residuals: dict, tol: float) -> int:
    bad = [k for k, v in _flat(residuals) if isinstance(v, (int, float)) and not v <= tol]
    return EXIT_CHECK if bad else EXIT_OK


# -- commands ------------------------------------------------------------------

def cmd_matrix(args, cfg):
    pair = pair_from_args(args)
    N = args.n_matrix if args.n_matrix is not None else 8
    op = matrix(pair, args.op, N, args.m)
    A = op.entries
    if cfg.output_format == "csv" or cfg.output_format == "text":
        sep = "," if cfg.output_format == "csv" else "  "
        rows = [sep.join(_cfmt(x) for x in row) for row in A]
        return "\n".join(rows), EXIT_OK
    results = {"selector": op.selector, "N": op.N, "basis": op.basis_tag,
               "real": A.real, "imag": A.imag}
    return _report(cfg, {"pair": pair, "op": args.op, "m": args.m}, results, {},
                   ["matrix of the compressed shift in the basis f0, z^2, z^3, ..."]), EXIT_OK


def _cfmt(x: complex) -> str:
    if abs(x.imag) < 1e-15:
        return f"{x.real:.10g}"
    return f"{x.real:.10g}{x.imag:+.10g}i"


def cmd_kernel(args, cfg):
    pair = pair_from_args(args)
    v = kernel_adjoint(pair, 8)
    res = apply_adjoint(pair, v).norm()
    results = {"kernel_vector_f0_coeff": v.c0, "kernel_vector_z2_coeff": v.vec[1],
               "unnormalized_z2_coeff": -np.conj(pair.alpha) * pair.beta / np.conj(pair.beta)}
    residuals = {"||S* v||": res}
    return _report(cfg, {"pair": pair}, results, residuals,
                   ["kernel of the adjoint is spanned by f0 - (conj(alpha) beta/conj(beta)) z^2"]), \
        _status(residuals, cfg.tolerance)


def cmd_equiv(args, cfg):
    p1 = pair_from_args(args)
    p2 = _pair(args.alpha2, args.beta2, args.alpha2_sq)
    rep = unitary_equivalence(p1, p2, tol=max(cfg.tolerance, 1e-12), N=32)
    residuals = {}
    if rep.conjugation_residual is not None:
        residuals["||U S U* - S1||"] = rep.conjugation_residual
    return _report(cfg, {"pair1": p1, "pair2": p2}, asdict(rep), residuals,
                   ["unitary equivalence: equal moduli and alpha/alpha1 = conj(beta1)/conj(beta)",
                    "defect invariant |alpha|^4 = top entry of I - S*S"]), \
        _status(residuals, 1e-12)


def _model_results(model):
    return {"t": model.t, "g_head": model.g.coeffs[:6], "norm_sq_g": model.norm_sq_g,
            "r": model.r, "abs_r": model.abs_r, "theta": str(model.theta)}


def cmd_subspace(args, cfg):
    pair = pair_from_args(args)
    model = build_subspace(pair, args.theta, cfg.truncation_order)
    inv = verify_invariance(model, seed=cfg.seed)
    orth = orthogonality_residuals(model)
    cod = codimension_report(model)
    results = _model_results(model)
    results["codimension"] = cod
    residuals = {"invariance": inv, "orthogonality": orth,
                 "codim_minus_1": float(abs(cod["codim"] - 1))}
    return _report(cfg, {"pair": pair, "theta": args.theta}, results, residuals,
                   ["M = C f2 (+) C f1 (+) z^3 theta H^2",
                    "(z - ab) g = (beta/t)(theta - t)",
                    "dim(M - SM) = 1"]), _status(residuals, cfg.tolerance)


def cmd_wsp(args, cfg):
    pair = pair_from_args(args)
    theta = args.theta
    model = build_subspace(pair, theta, cfg.truncation_order)
    oracle_n = args.oracle_n if args.oracle_n is not None else min(cfg.truncation_order, 256)
    rep = wsp_decision(model, oracle_N=oracle_n if oracle_n > 0 else None)
    wit = h5_witness(model)
    results = {"r": rep.r, "abs_r": rep.abs_r, "verdict": rep.verdict,
               "krylov_codim": rep.krylov_codim, "residual_curve": rep.residual_curve,
               "thresholds": rep.thresholds, "note": rep.note,
               "h5": wit.h5.coeffs[:2], "h5_root": wit.root, "norm_sq_g": model.norm_sq_g}
    citations = ["w.s.p. holds iff |r| >= 1", "S^2 f2 - ab S f2 = z^3 theta h5, h5 linear with root r"]
    if len(theta.blaschke_zeros) == 1 and theta.monomial_power == 0:
        results["lhs"] = wsp_inequality_lhs(pair, theta.blaschke_zeros[0])
        citations.append("single Blaschke factor: |ab| - |alpha|^2 A (1 - |ab|) >= 0 iff |r| >= 1")
    if not theta.blaschke_zeros and theta.monomial_power >= 1:
        results["R"] = monomial_R(pair, theta.monomial_power)
        citations.append("theta = z^n: |r| >= 1 iff R <= 1")
    residuals = {"h5": wit.residuals}
    return _report(cfg, {"pair": pair, "theta": theta, "oracle_n": oracle_n}, results, residuals,
                   citations), _status(residuals, cfg.tolerance)


def cmd_fullspace(args, cfg):
    pair = pair_from_args(args)
    v = full_space_wsp(pair)
    results = {"holds": v.holds, "p": v.p, "abs_p": v.abs_p, "alpha_sq": v.alpha_sq,
               "threshold_1_over_1_plus_u": v.threshold}
    residuals = {}
    try:
        est = full_space_krylov_oracle(pair, min(cfg.truncation_order, 256))
        results["krylov_codim"] = est.codim
        results["residual_curve"] = est.residual_curve
        if est.witness_residual is not None:
            residuals["witness_orthogonality"] = est.witness_residual
        if (est.codim == 0) != v.holds:
            raise InternalInconsistency(f"|p| = {v.abs_p:.6f} but Krylov codim = {est.codim}")
    except InconclusiveTruncation as exc:
        results["note"] = str(exc)
    return _report(cfg, {"pair": pair}, results, residuals,
                   ["ker S* generates the space iff |p| >= 1 iff |alpha|^2 <= 1/(1+u)",
                    "z^2 k_p is orthogonal to z^(k+2)(p - z) when |p| < 1"]), \
        _status(residuals, 1e-8)


def cmd_roots(args, cfg):
    th = thresholds()
    residuals = {"u-cubic": abs(cubic_value("u", th.u)),
                 "gamma-cubic": abs(cubic_value("gamma", th.gamma))}
    return _report(cfg, {}, asdict(th), residuals,
                   ["u: real root of y^3 + 3y^2 + 2y - 1", "gamma: real root of y^3 + 7y^2 + 12y - 1"]), \
        _status(residuals, 1e-12)


def cmd_counterexample(args, cfg):
    out = find_counterexample(args.beta_sq)
    kind = type(out).__name__
    results = {"kind": kind, **asdict(out)}
    return _report(cfg, {"beta_sq": args.beta_sq}, results, {},
                   ["a counterexample needs |beta|^2 < 1/(4+gamma)",
                    "B -> 0 as |a| -> 1, so LHS becomes negative once B < epsilon"]), EXIT_OK


# -- sweeps -------------------------------------------------------------------------

def _row_fullspace(i, x):
    pair = ParamPair.from_alpha_sq(x)
    v = full_space_wsp(pair)
    return {"index": i, "alpha_sq": x, "abs_p": v.abs_p, "holds": v.holds,
            "below_threshold": x <= v.threshold}


def _row_blaschke(i, a, beta_sq):
    pair = ParamPair.from_alpha_sq(1 - beta_sq)
    try:
        model = build_subspace(pair, InnerFunction.blaschke(a), 16)
        abs_r = model.abs_r
    except ShiftLabError:
        abs_r = float("nan")
    lhs = wsp_inequality_lhs(pair, a)
    return {"index": i, "beta_sq": beta_sq, "a": a, "lhs": lhs, "abs_r": abs_r, "holds": lhs >= 0}


def _row_monomial(i, n, x):
    pair = ParamPair.from_alpha_sq(x)
    model = build_subspace(pair, InnerFunction.monomial(n), 16)
    return {"index": i, "n": n, "alpha_sq": x, "abs_r": model.abs_r,
            "R": monomial_R(pair, n), "holds": model.abs_r >= 1}


def _call(job):
    fn, args = job
    return fn(*args)


def sweep_rows(family: str, start: float, stop: float, num: int, beta_sq: float = 0.05,
               nmax: int = 6, workers: int = 1) -> list:
    grid = np.linspace(start, stop, num)
    if family == "fullspace":
        jobs = [(_row_fullspace, (i, float(x))) for i, x in enumerate(grid)]
    elif family == "blaschke":
        jobs = [(_row_blaschke, (i, float(a), beta_sq)) for i, a in enumerate(grid)]
    elif family == "monomial":
        pts = [(n, float(x)) for n in range(1, nmax + 1) for x in grid]
        jobs = [(_row_monomial, (i, n, x)) for i, (n, x) in enumerate(pts)]
    else:
        raise DomainError(f"unknown sweep family {family!r}")
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            rows = list(ex.map(_call, jobs, chunksize=8))
    else:
        rows = [_call(j) for j in jobs]
    return sorted(rows, key=lambda r: r["index"])


def cmd_sweep(args, cfg):
    rows = sweep_rows(args.family, args.start, args.stop, args.num, args.beta_sq,
                      args.nmax, args.workers)
    th = thresholds()
    meta = {"family": args.family, "u": th.u, "gamma": th.gamma,
            "one_over_u_plus_1": th.one_over_u_plus_1,
            "one_over_4_plus_gamma": th.one_over_4_plus_gamma}
    fails = [r for r in rows if not r["holds"]]
    if args.family == "blaschke":
        meta["first_failing_a"] = fails[0]["a"] if fails else None
    if args.family == "fullspace":
        meta["first_failing_alpha_sq"] = fails[0]["alpha_sq"] if fails else None
    fmt = "csv" if cfg.output_format == "csv" or args.format is None else cfg.output_format
    if fmt == "csv":
        buf = io.StringIO()
        for k in sorted(meta):
            buf.write(f"# {k}={meta[k]!r}\n")
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: (repr(float(v)) if isinstance(v, (float, np.floating)) else v) for k, v in r.items()})
        return buf.getvalue().rstrip("\n"), EXIT_OK
    return _report(cfg, vars_subset(args, ("family", "start", "stop", "num", "beta_sq", "nmax")),
                   {"meta": meta, "rows": rows}, {}, ["threshold sweeps"]), EXIT_OK


def vars_subset(args, keys):
    return {k: getattr(args, k) for k in keys}


# -- verification suites ---------------------------------------------------------

def _random_pairs(seed: int, n: int):
    rng = np.random.default_rng(seed)
    return [ParamPair.random(rng, 0.1, 0.9) for _ in range(n)]


def suite_matrices(cfg):
    s = 1 / np.sqrt(2)
    pair = ParamPair(s, s)
    S = matrix(pair, "S", 8).entries
    expect = np.zeros((8, 8))
    expect[0, 0], expect[1, 0] = 0.5, s
    expect[np.arange(2, 8), np.arange(1, 7)] = 1
    dl = matrix(pair, "defect-left", 8).entries
    g = matrix(pair, "gram", 8).entries
    e_dl = np.zeros((8, 8)); e_dl[0, 0] = 0.25
    e_g = np.eye(8); e_g[0, 0] = 0.25 + 0.5
    return {"S golden": float(np.max(np.abs(S - expect))),
            "I-S*S golden": float(np.max(np.abs(dl - e_dl))),
            "S*S golden": float(np.max(np.abs(g - e_g)))}, 1e-14


def suite_paper_goldens(cfg):
    res, _ = suite_matrices(cfg)
    th = thresholds()
    pair = ParamPair(2 / np.sqrt(5), 1 / np.sqrt(5))
    res["7/25 lhs"] = abs(wsp_inequality_lhs(pair, 0.5) - 7 / 25)
    res["gamma in (0.07, 0.08)"] = 0.0 if 0.07 < th.gamma < 0.08 else 1.0
    res["u in (0.32, 0.33)"] = 0.0 if 0.32 < th.u < 0.33 else 1.0
    res["u residual"] = abs(cubic_value("u", th.u))
    res["gamma residual"] = abs(cubic_value("gamma", th.gamma))
    s = 1 / np.sqrt(2)
    m = build_subspace(ParamPair(s, s), InnerFunction.monomial(1), 64)
    res["theta=z |r| = 11/6"] = abs(m.abs_r - 11 / 6)
    return res, 1e-12


def _suite_models(cfg, count=12, N=96):
    rng = np.random.default_rng(cfg.seed)
    out = []
    while len(out) < count:
        pair = ParamPair.random(rng, 0.1, 0.9)
        if rng.random() < 0.5:
            theta = InnerFunction.monomial(int(rng.integers(1, 5)))
        else:
            a = 0.9 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
            if abs(a) < 0.05 or abs(a - pair.ab_bar) < 0.05:
                continue
            theta = InnerFunction.blaschke(a)
        out.append(build_subspace(pair, theta, N))
    return out


def suite_orthogonality(cfg):
    worst = {}
    for m in _suite_models(cfg):
        for k, v in orthogonality_residuals(m).items():
            worst[k] = max(worst.get(k, 0.0), v)
    return worst, 1e-10


def suite_equivalence(cfg):
    res = {}
    rng = np.random.default_rng(cfg.seed)
    for i, pair in enumerate(_random_pairs(cfg.seed, 5)):
        phi = np.exp(1j * rng.uniform(0, 2 * np.pi))
        rep = unitary_equivalence(pair, ParamPair(phi * pair.alpha, phi * pair.beta))
        res[f"rotated pair {i}"] = rep.conjugation_residual if rep.equivalent else 1.0
    s = 1 / np.sqrt(2)
    rep = unitary_equivalence(ParamPair(s, s), ParamPair(np.sqrt(0.9), np.sqrt(0.1)))
    res["distinct moduli rejected"] = 0.0 if not rep.equivalent else 1.0
    d0, d1 = rep.defect_invariants
    res["defect invariant differs"] = 0.0 if abs(d0 - d1) > 1e-6 else 1.0
    return res, 1e-12


def suite_hyponormality(cfg):
    res = {}
    for i, pair in enumerate(_random_pairs(cfg.seed, 20)):
        res[f"pair {i}"] = max(0.0, -hyponormality_check(pair, 64))
        res[f"kernel {i}"] = apply_adjoint(pair, kernel_adjoint(pair, 8)).norm()
    return res, 1e-10


def suite_wandering(cfg):
    res = {}
    for i, m in enumerate(_suite_models(cfg, 10)):
        w = h5_witness(m)
        res[f"h5 model {i}"] = max(w.residuals.values())
        res[f"h5 degree {i}"] = float(abs(w.degree - 1))
        res[f"invariance {i}"] = max(verify_invariance(m).values())
    return res, 1e-10


SUITES = {
    "paper-goldens": suite_paper_goldens,
    "orthogonality": suite_orthogonality,
    "equivalence": suite_equivalence,
    "matrices": suite_matrices,
    "hyponormality": suite_hyponormality,
    "wandering": suite_wandering,
}


def run_suite(name: str, cfg: RunConfig) -> dict:
    names = list(SUITES) if name == "all" else [name]
    out = {}
    for n in names:
        if n not in SUITES:
            raise UnknownSuite(n)
        res, tol = SUITES[n](cfg)
        out[n] = {"tolerance": tol, "residuals": res,
                  "passed": all(v <= tol for v in res.values())}
    return out


def cmd_verify(args, cfg):
    out = run_suite(args.suite, cfg)
    ok = all(s["passed"] for s in out.values())
    if cfg.output_format == "text":
        lines = []
        for name, s in out.items():
            lines.append(f"{'PASS' if s['passed'] else 'FAIL'}  {name}")
            for k, v in sorted(s["residuals"].items()):
                lines.append(f"    {k}: {v:.3e}")
        return "\n".join(lines), (EXIT_OK if ok else EXIT_CHECK)
    return _report(cfg, {"suite": args.suite}, {k: {"passed": v["passed"], "tolerance": v["tolerance"]}
                                                for k, v in out.items()},
                   {k: v["residuals"] for k, v in out.items()}, ["verification suites"]), \
        (EXIT_OK if ok else EXIT_CHECK)


# -- argument parser ---------------------------------------------------------------

def _default_order() -> int:
    env = os.environ.get(ENV_ORDER)
    if env is None:
        return 256
    try:
        return int(env)
    except ValueError:
        raise DomainError(f"{ENV_ORDER}={env!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, dest="n",
                        help=f"truncation order (default 256 or ${ENV_ORDER})")
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)
    common.add_argument("--seed", type=int, default=0)

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--alpha", type=parse_complex)
    pair.add_argument("--beta", type=parse_complex)
    pair.add_argument("--alpha-sq", type=float, dest="alpha_sq")

    theta = argparse.ArgumentParser(add_help=False)
    theta.add_argument("--theta", type=parse_theta, default=InnerFunction.monomial(1),
                       help="z^n, blaschke:a=<complex>[,...] or a '*' product")

    ap = argparse.ArgumentParser(prog="shiftlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", parents=[common, pair], help="operator matrices")
    p.add_argument("--op", default="S")
    p.add_argument("--m", type=int, default=1, help="power for defect-power")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("kernel", parents=[common, pair], help="kernel of the adjoint")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("equiv", parents=[common, pair], help="unitary equivalence of two shifts")
    p.add_argument("--alpha2", type=parse_complex)
    p.add_argument("--beta2", type=parse_complex)
    p.add_argument("--alpha2-sq", type=float, dest="alpha2_sq")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("subspace", parents=[common, pair, theta], help="build and verify M")
    p.set_defaults(func=cmd_subspace)

    p = sub.add_parser("wsp", parents=[common, pair, theta], help="wandering subspace property of M")
    p.add_argument("--oracle-n", type=int, default=None, dest="oracle_n",
                   help="order for the Krylov check (0 disables)")
    p.set_defaults(func=cmd_wsp)

    p = sub.add_parser("fullspace-wsp", parents=[common, pair], help="property for the whole space")
    p.set_defaults(func=cmd_fullspace)

    p = sub.add_parser("roots", parents=[common], help="threshold cubic roots")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("counterexample", parents=[common], help="search for a failing subspace")
    p.add_argument("--beta-sq", type=float, required=True, dest="beta_sq")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("sweep", parents=[common], help="parameter sweeps (CSV)")
    p.add_argument("family", choices=["fullspace", "blaschke", "monomial"])
    p.add_argument("--start", type=float, default=None)
    p.add_argument("--stop", type=float, default=None)
    p.add_argument("--num", type=int, default=None)
    p.add_argument("--beta-sq", type=float, default=0.05, dest="beta_sq")
    p.add_argument("--nmax", type=int, default=6)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help="paper-goldens, orthogonality, equivalence, matrices, "
                                 "hyponormality, wandering or all")
    p.set_defaults(func=cmd_verify)
    return ap


SWEEP_DEFAULTS = {
    "fullspace": (0.05, 0.95, 19),
    "blaschke": (0.5, 0.99, 50),
    "monomial": (0.02, 0.98, 50),
}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        # for `matrix`, --n is the matrix size and may be below the run-wide minimum
        order = _default_order() if args.command == "matrix" or args.n is None else args.n
        fmt = args.format or "json"
        cfg = RunConfig(order, args.tol, fmt, args.seed)
        args.n_matrix = args.n
        if args.command == "sweep":
            s0, s1, k = SWEEP_DEFAULTS[args.family]
            args.start = s0 if args.start is None else args.start
            args.stop = s1 if args.stop is None else args.stop
            args.num = k if args.num is None else args.num
        out, code = args.func(args, cfg)
    except UnknownSuite as exc:
        print(f"shiftlab: unknown suite {exc.args[0]!r}; choose from {', '.join(SUITES)} or all",
              file=sys.stderr)
        return EXIT_USAGE
    except (InternalInconsistency, InconclusiveTruncation) as exc:
        print(f"shiftlab: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (ShiftLabError, ValueError) as exc:
        print(f"shiftlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = out if isinstance(out, str) else render(out, cfg.output_format)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
