"""Command-line front end: studies in, CSV out.

Every subcommand writes RFC-4180 CSV with LF line endings, 17 significant
digits, a leading ``#`` comment echoing the configuration and the package
version, and deterministic bytes for a fixed seed regardless of the thread
count (``SIMPLEXINTERP_THREADS`` caps the worker pool; rows are gathered in
submission order).  ``p = inf`` is spelled ``inf`` both in flags and in the
output.  Exit codes: 0 success, 2 validation or I/O error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .constants import (
    ProbeFamily,
    circumradius_scaling_study,
    estimate_error_constant_rayleigh,
    estimate_error_constant_sampling,
    estimate_poincare_constant,
    squeeze_boundedness_study,
)
from .diffquot import (
    box_integrals_for_extent,
    box_moment_matrix,
    diff_quotient,
    diff_quotient_recursive,
    enumerate_boxes,
    integral_representation_check,
)
from .errors import (
    IllConditionedElementError,
    NumericalFailureError,
    SingularGeometryError,
)
from .geometry import Simplex, geometry_report, reference_simplex, squeeze
from .multiindex import MultiIndex, enumerate_order, enumerate_upto, unit_index
from .polynomials import Polynomial, interpolate
from .quadrature import box_constraint_p_valid, interpolation_p_valid

MAX_POLY_DEGREE = 8


@dataclass
class StudyConfig:
    """Validated bag of study parameters; one instance per CLI invocation."""

    command: str
    d: int = 2
    k: int = 1
    m: int = 0
    p: float = 2.0
    alpha_min_exp: int = 10
    alpha_exp: int = 0
    beta: str = "equal"
    r: int = 3
    probe_count: int = 40
    quad_exactness: int = 0
    seed: int = 12345
    output: str = "-"
    target: str = "interp-error"
    delta: tuple[int, ...] | None = None
    method: str = "auto"
    mesh_path: str | None = None
    allow_degenerate: bool = False
    semireg_threshold: float = math.inf

    def validate(self) -> None:
        """Raise ValueError naming the violated precondition."""
        if self.command not in ("squeeze", "scaling", "constants",
                                "diffquot-verify", "mesh-metrics"):
            raise ValueError(f"unknown command {self.command!r}")
        if self.d not in (2, 3):
            raise ValueError(f"d must be 2 or 3, got {self.d}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not 0 <= self.m <= self.k:
            raise ValueError(f"m must satisfy 0 <= m <= k={self.k}, got {self.m}")
        if self.p != math.inf and self.p < 1.0:
            raise ValueError(f"p must satisfy p >= 1 (or inf), got {self.p}")
        if not 0 <= self.alpha_min_exp <= 10:
            raise ValueError(
                f"alpha-min-exp must lie in 0..10, got {self.alpha_min_exp}"
            )
        if not 0 <= self.alpha_exp <= 10:
            raise ValueError(f"alpha-exp must lie in 0..10, got {self.alpha_exp}")
        if self.beta != "equal":
            if self.d == 2:
                raise ValueError("a fixed beta applies to d=3 only")
            try:
                b = float(self.beta)
            except ValueError:
                raise ValueError(
                    f"beta must be 'equal' or a number in (0, 1], got {self.beta!r}"
                ) from None
            if not 0.0 < b <= 1.0:
                raise ValueError(f"beta must lie in (0, 1], got {b}")
        if self.r < 0:
            raise ValueError(f"r must be >= 0, got {self.r}")
        if self.probe_count < 1:
            raise ValueError(f"probe-count must be >= 1, got {self.probe_count}")
        if self.quad_exactness < 0:
            raise ValueError(f"quad-exactness must be >= 0, got {self.quad_exactness}")
        if self.method not in ("auto", "rayleigh", "sampling"):
            raise ValueError(f"method must be auto|rayleigh|sampling, got {self.method!r}")
        if self.method == "rayleigh" and self.p != 2.0:
            raise ValueError("the rayleigh method requires p = 2")
        if self.command == "squeeze" and self.resolved_method() == "rayleigh":
            if self.r < 1:
                raise ValueError("the rayleigh method requires r >= 1")
            if self.k + self.r > MAX_POLY_DEGREE:
                raise ValueError(
                    f"k + r must stay <= {MAX_POLY_DEGREE}, got {self.k + self.r}"
                )
        if self.command == "scaling" and self.d != 2:
            raise ValueError("the scaling study is two-dimensional only (d=2)")
        if self.command == "constants":
            if self.target not in ("interp-error", "poincare"):
                raise ValueError(
                    f"target must be interp-error|poincare, got {self.target!r}"
                )
            if self.target == "poincare":
                if self.delta is None:
                    raise ValueError("the poincare target requires --delta")
                dlt = self.delta
                if len(dlt) != self.d:
                    raise ValueError(
                        f"delta must have {self.d} components, got {len(dlt)}"
                    )
                if any(c < 0 for c in dlt):
                    raise ValueError(f"delta components must be >= 0, got {dlt}")
                if not 1 <= sum(dlt) <= self.k:
                    raise ValueError(
                        f"need 1 <= |delta| <= k={self.k}, got |delta|={sum(dlt)}"
                    )
            elif self.resolved_method() == "rayleigh":
                if self.r < 1:
                    raise ValueError("the rayleigh method requires r >= 1")
                if self.k + self.r > MAX_POLY_DEGREE:
                    raise ValueError(
                        f"k + r must stay <= {MAX_POLY_DEGREE}, got {self.k + self.r}"
                    )
        if self.command == "diffquot-verify" and self.k > 5:
            raise ValueError(f"diffquot-verify supports k <= 5, got {self.k}")
        if self.command == "mesh-metrics" and not self.mesh_path:
            raise ValueError("mesh-metrics requires a mesh file path")
        if self.semireg_threshold <= 0:
            raise ValueError(
                f"semireg-threshold must be positive, got {self.semireg_threshold}"
            )

    def resolved_method(self) -> str:
        if self.method != "auto":
            return self.method
        return "rayleigh" if self.p == 2.0 else "sampling"

    def echo(self) -> str:
        """Stable one-line parameter echo (threads excluded: bytes must not
        depend on the parallelism level)."""
        pairs = [("command", self.command), ("d", self.d), ("k", self.k)]
        if self.command in ("squeeze", "scaling", "constants", "mesh-metrics"):
            pairs.append(("m", self.m))
            pairs.append(("p", _fmt(self.p)))
        if self.command == "squeeze":
            pairs += [("alpha_min_exp", self.alpha_min_exp), ("beta", self.beta),
                      ("method", self.resolved_method()), ("r", self.r),
                      ("probe_count", self.probe_count)]
        if self.command == "constants":
            pairs += [("target", self.target), ("method", self.resolved_method()),
                      ("r", self.r), ("probe_count", self.probe_count),
                      ("alpha_exp", self.alpha_exp), ("beta", self.beta)]
            if self.delta is not None:
                pairs.append(("delta", "+".join(map(str, self.delta))))
        if self.command == "scaling":
            pairs.append(("probe_count", self.probe_count))
        if self.command == "mesh-metrics":
            pairs += [("mesh", self.mesh_path),
                      ("allow_degenerate", _fmt(self.allow_degenerate)),
                      ("semireg_threshold", _fmt(self.semireg_threshold))]
        pairs += [("quad_exactness", self.quad_exactness), ("seed", self.seed)]
        return " ".join(f"{k}={v}" for k, v in pairs)


@dataclass
class MeshFile:
    dimension: int
    vertices: np.ndarray
    cells: list[tuple[int, ...]] = field(default_factory=list)


def load_mesh(path: str, allow_degenerate: bool = False) -> MeshFile:
    """Parse the minimal JSON mesh format, with path context on every error."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as err:
        raise ValueError(f"{path}: cannot read mesh: {err}") from err
    except json.JSONDecodeError as err:
        raise ValueError(f"{path}:{err.lineno}:{err.colno}: invalid JSON: {err.msg}") from err
    for key in ("dimension", "vertices", "cells"):
        if key not in raw:
            raise ValueError(f"{path}: missing mesh field {key!r}")
    d = raw["dimension"]
    if d not in (2, 3):
        raise ValueError(f"{path}: dimension must be 2 or 3, got {d!r}")
    try:
        vertices = np.asarray(raw["vertices"], dtype=float)
    except (TypeError, ValueError) as err:
        raise ValueError(f"{path}: vertices are not numeric: {err}") from err
    if vertices.ndim != 2 or vertices.shape[1] != d:
        raise ValueError(
            f"{path}: vertices must be an n x {d} array, got shape {vertices.shape}"
        )
    cells: list[tuple[int, ...]] = []
    for i, cell in enumerate(raw["cells"]):
        if len(cell) != d + 1:
            raise ValueError(
                f"{path}: cell {i} must have {d + 1} vertex indices, got {len(cell)}"
            )
        idx = tuple(int(j) for j in cell)
        if any(not 0 <= j < len(vertices) for j in idx):
            raise ValueError(
                f"{path}: cell {i} references a vertex outside 0..{len(vertices) - 1}: {idx}"
            )
        if not allow_degenerate:
            try:
                Simplex(vertices[list(idx)])
            except SingularGeometryError as err:
                raise ValueError(f"{path}: cell {i} is degenerate: {err}") from err
        cells.append(idx)
    return MeshFile(d, vertices, cells)


# ---------------------------------------------------------------------------
# CSV plumbing
# ---------------------------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.17g}"


class _CsvDoc:
    def __init__(self, cfg: StudyConfig):
        self._buf = io.StringIO()
        self._writer = csv.writer(self._buf, lineterminator="\n")
        self.comment(f"simplexinterp v{__version__} | {cfg.echo()}")

    def comment(self, text: str) -> None:
        self._buf.write(f"# {text}\n")

    def header(self, *names: str) -> None:
        self._writer.writerow(names)

    def row(self, *values) -> None:
        self._writer.writerow([_fmt(v) for v in values])

    def text(self) -> str:
        return self._buf.getvalue()


def _threads() -> int:
    raw = os.environ.get("SIMPLEXINTERP_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"SIMPLEXINTERP_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"SIMPLEXINTERP_THREADS must be >= 1, got {n}")
    return n


def _run_mapped(fn, items):
    """Map preserving order, threaded when SIMPLEXINTERP_THREADS > 1."""
    n = _threads()
    if n == 1:
        return list(map(fn, items))
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Subcommand runners (each returns the CSV text)
# ---------------------------------------------------------------------------


def run_squeeze(cfg: StudyConfig) -> str:
    study = squeeze_boundedness_study(
        d=cfg.d, k=cfg.k, m=cfg.m, p=cfg.p,
        alpha_exps=range(0, cfg.alpha_min_exp + 1),
        beta_policy=cfg.beta,
        method=cfg.resolved_method(),
        r=cfg.r, probe_count=cfg.probe_count, seed=cfg.seed,
        map_fn=lambda f, xs: _run_mapped(f, xs),
    )
    doc = _CsvDoc(cfg)
    doc.header("alpha", "beta", "d", "k", "m", "p", "method", "estimate",
               "r", "seed", "theory_valid", "loglog_slope_running")
    for row in study.rows:
        doc.row(row.alpha, row.beta, cfg.d, cfg.k, cfg.m, cfg.p,
                cfg.resolved_method(), row.estimate, cfg.r, cfg.seed,
                row.theory_valid, row.running_slope)
    doc.row("summary", None, cfg.d, cfg.k, cfg.m, cfg.p, cfg.resolved_method(),
            study.ratio, cfg.r, cfg.seed, None, study.slope)
    doc.comment(f"max_min_ratio={_fmt(study.ratio)}")
    doc.comment(f"slope_full={_fmt(study.slope)}")
    doc.comment(f"slope_tail={_fmt(study.tail_slope)}")
    doc.comment(f"chunkiness_slope={_fmt(study.chunkiness_tail_slope)}")
    return doc.text()


def run_scaling(cfg: StudyConfig) -> str:
    probes = None
    if cfg.probe_count != 8:
        from .constants import scaling_probe_family

        probes = scaling_probe_family(cfg.k, cfg.m, count=cfg.probe_count,
                                      seed=cfg.seed)
    study = circumradius_scaling_study(
        k=cfg.k, m=cfg.m, p=cfg.p, probes=probes, seed=cfg.seed,
        map_fn=lambda f, xs: _run_mapped(f, xs),
    )
    doc = _CsvDoc(cfg)
    doc.header("ax", "ay", "bx", "by", "cx", "cy", "h", "R", "rho",
               "max_angle", "theta_jamet", "k", "m", "p", "rho_obs")
    for row in study.rows:
        (ax, ay), (bx, by), (cx, cy) = row.vertices
        doc.row(ax, ay, bx, by, cx, cy, row.h, row.R, row.rho,
                row.max_angle, row.theta_jamet, cfg.k, cfg.m, cfg.p, row.rho_obs)
    doc.row("max", None, None, None, None, None, None, None, None,
            None, None, cfg.k, cfg.m, cfg.p, study.max_rho_obs)
    doc.comment(f"max_rho_obs={_fmt(study.max_rho_obs)}")
    doc.comment(f"min_rho_obs={_fmt(study.min_rho_obs)}")
    for label, reason in study.skipped:
        doc.comment(f"skipped: {label}: {reason}")
    return doc.text()


def run_constants(cfg: StudyConfig) -> str:
    method = cfg.resolved_method()
    if cfg.target == "poincare":
        est = estimate_poincare_constant(
            cfg.delta, cfg.k, cfg.p, cfg.r,
            quad_order=cfg.quad_exactness or None, seed=cfg.seed,
        )
        theory_ok = box_constraint_p_valid(cfg.d, cfg.k, sum(cfg.delta), cfg.p)
    else:
        alpha = 2.0 ** (-cfg.alpha_exp)
        beta = None
        if cfg.d == 3:
            beta = alpha if cfg.beta == "equal" else float(cfg.beta)
        K = squeeze(cfg.d, alpha, beta)
        if method == "rayleigh":
            est = estimate_error_constant_rayleigh(
                K, cfg.k, cfg.m, cfg.r, quad_exactness=cfg.quad_exactness or None
            )
        else:
            family = ProbeFamily.monomials(cfg.d, cfg.k + 1) + ProbeFamily.random(
                cfg.d, cfg.k + 1, min(cfg.k + max(cfg.r, 1), MAX_POLY_DEGREE),
                cfg.probe_count, cfg.seed,
            )
            est = estimate_error_constant_sampling(
                K, cfg.k, cfg.m, cfg.p, family,
                quad_exactness=cfg.quad_exactness or None,
            )
        theory_ok = interpolation_p_valid(cfg.d, cfg.k, cfg.p)
    doc = _CsvDoc(cfg)
    doc.header("target", "method", "d", "k", "m", "delta", "p", "r", "seed",
               "probe_size", "estimate", "theory_valid")
    dlt = "+".join(map(str, cfg.delta)) if cfg.delta is not None else None
    m_field = None if cfg.target == "poincare" else cfg.m
    for rp, val in est.trace:
        doc.row(cfg.target, est.method, cfg.d, cfg.k, m_field, dlt, cfg.p,
                cfg.r, cfg.seed, rp, val, theory_ok)
    doc.comment(f"value={_fmt(est.value)}")
    for key in sorted(est.diagnostics):
        doc.comment(f"{key}={_fmt(est.diagnostics[key])}")
    return doc.text()


def _seeded_poly(d: int, degree: int, seed_key) -> Polynomial:
    rng = np.random.default_rng(seed_key)
    exps = enumerate_upto(d, degree)
    return Polynomial.from_terms(
        d, {tuple(e): c for e, c in zip(exps, rng.uniform(-1.0, 1.0, len(exps)))}
    )


def _diffquot_row(args):
    cfg, k, dlt = args
    d = cfg.d
    f = _seeded_poly(d, min(MAX_POLY_DEGREE, k + 3), [cfg.seed, d, k])
    qo = max(cfg.quad_exactness, 2 * k, MAX_POLY_DEGREE)

    rec_max = 0.0
    rep_max = 0.0
    anchors = enumerate_upto(d, k - dlt.order)
    for gamma in anchors:
        direct = diff_quotient(f, k, gamma, dlt)
        scale = max(abs(direct), 1.0)
        for axis in range(d):
            if dlt[axis] == 0:
                continue
            eta = unit_index(d, axis)
            rec = diff_quotient_recursive(f, k, gamma, dlt, eta)
            rec_max = max(rec_max, abs(direct - rec) / scale)
        rep_max = max(rep_max, integral_representation_check(f, k, gamma, dlt, qo))

    ref = reference_simplex(d)
    ann_max = 0.0
    rng = np.random.default_rng([cfg.seed, d, k, 7])
    for _ in range(3):
        exps = enumerate_upto(d, min(MAX_POLY_DEGREE, k + 3))
        v = Polynomial.from_terms(
            d, {tuple(e): c for e, c in zip(exps, rng.uniform(-1.0, 1.0, len(exps)))}
        )
        u = v - interpolate(ref, k, v)
        from .polynomials import cached_basis

        scale = max(1.0, float(np.abs(v.eval(cached_basis(ref, k).nodes)).max()))
        _, vals = box_integrals_for_extent(u.derivative(dlt), k, dlt, qo)
        ann_max = max(ann_max, float(np.abs(vals).max()) / scale)

    _, sigma = box_moment_matrix(k, dlt, d, quad_order=qo)
    return (d, k, "+".join(map(str, dlt)), rec_max, rep_max, ann_max,
            len(enumerate_boxes(k, dlt, d)), sigma)


def run_diffquot_verify(cfg: StudyConfig) -> str:
    jobs = []
    for k in range(1, cfg.k + 1):
        for order in range(1, k + 1):
            for dlt in enumerate_order(cfg.d, order):
                jobs.append((cfg, k, dlt))
    rows = _run_mapped(_diffquot_row, jobs)
    doc = _CsvDoc(cfg)
    doc.header("d", "k", "delta", "recursion_max", "intrep_max",
               "annihilation_max", "box_count", "sigma_min")
    for row in rows:
        doc.row(*row)
    return doc.text()


def run_mesh_metrics(cfg: StudyConfig, mesh: MeshFile) -> str:
    def cell_row(item):
        cid, idx = item
        try:
            K = Simplex(mesh.vertices[list(idx)], allow_degenerate=cfg.allow_degenerate)
            rep = geometry_report(K)
        except (SingularGeometryError, FloatingPointError, ZeroDivisionError):
            n_metrics = 10 if mesh.dimension == 3 else 8
            return (cid,) + (math.nan,) * n_metrics + (False,)
        coeff = rep.R**cfg.m * rep.h ** (cfg.k + 1 - 2 * cfg.m)
        base = (cid, rep.h, rep.rho, rep.R, rep.chunkiness, rep.semiregularity,
                rep.max_angle)
        extra = (rep.max_face_angle, rep.max_dihedral) if mesh.dimension == 3 else ()
        flagged = rep.semiregularity > cfg.semireg_threshold
        return base + extra + (rep.theta_jamet, coeff, flagged)

    rows = _run_mapped(cell_row, list(enumerate(mesh.cells)))
    doc = _CsvDoc(cfg)
    cols = ["id", "h", "rho", "R", "chunkiness", "semiregularity", "max_angle"]
    if mesh.dimension == 3:
        cols += ["max_face_angle", "max_dihedral"]
    cols += ["theta_jamet", "predicted_coeff", "flagged"]
    doc.header(*cols)
    for row in rows:
        doc.row(*row[: len(cols)])
    return doc.text()


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _parse_p(text: str) -> float:
    if text.strip().lower() == "inf":
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"p must be a number >= 1 or 'inf', got {text!r}"
        ) from None


def _parse_delta(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"delta must be comma-separated integers like '1,1', got {text!r}"
        ) from None


def _common_flags(sub, *, with_m=True, with_p=True):
    sub.add_argument("--d", type=int, default=2, help="dimension (2 or 3)")
    sub.add_argument("--k", type=int, default=1, help="interpolation order")
    if with_m:
        sub.add_argument("--m", type=int, default=0, help="target seminorm order")
    if with_p:
        sub.add_argument("--p", type=_parse_p, default=2.0,
                         help="Lebesgue exponent (number >= 1 or 'inf')")
    sub.add_argument("--quad-exactness", type=int, default=0,
                     help="override quadrature exactness (0 = automatic)")
    sub.add_argument("--seed", type=int, default=12345, help="probe RNG seed")
    sub.add_argument("-o", "--output", default="-",
                     help="output CSV path ('-' = stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplexinterp",
        description="Interpolation error studies on triangles and tetrahedra.",
    )
    parser.add_argument("--version", action="version",
                        version=f"simplexinterp {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sq = subs.add_parser("squeeze", help="error constants along the squeeze family")
    _common_flags(sq)
    sq.add_argument("--alpha-min-exp", type=int, default=10,
                    help="smallest alpha is 2^-this (0..10)")
    sq.add_argument("--beta", default="equal",
                    help="d=3 second squeeze factor: 'equal' or a value in (0,1]")
    sq.add_argument("--method", choices=("auto", "rayleigh", "sampling"),
                    default="auto")
    sq.add_argument("--r", type=int, default=3, help="probe excess degree")
    sq.add_argument("--probe-count", type=int, default=40,
                    help="random probes per cell (sampling method)")

    sc = subs.add_parser("scaling", help="circumradius-normalized ratios, d=2")
    _common_flags(sc)
    sc.add_argument("--probe-count", type=int, default=8,
                    help="random homogeneous probes")

    co = subs.add_parser("constants", help="a single constant estimate with trace")
    _common_flags(co)
    co.add_argument("--target", choices=("interp-error", "poincare"),
                    default="interp-error")
    co.add_argument("--delta", type=_parse_delta, default=None,
                    help="derivative multi-index for the poincare target, e.g. '1,1'")
    co.add_argument("--method", choices=("auto", "rayleigh", "sampling"),
                    default="auto")
    co.add_argument("--r", type=int, default=3, help="probe excess degree")
    co.add_argument("--probe-count", type=int, default=40)
    co.add_argument("--alpha-exp", type=int, default=0,
                    help="evaluate on the squeeze element alpha = 2^-this")
    co.add_argument("--beta", default="equal")

    dq = subs.add_parser("diffquot-verify",
                         help="difference-quotient identity sweep")
    _common_flags(dq, with_m=False, with_p=False)

    mm = subs.add_parser("mesh-metrics", help="per-cell shape metrics from a mesh")
    _common_flags(mm)
    mm.add_argument("mesh", help="mesh JSON path")
    mm.add_argument("--allow-degenerate", action="store_true")
    mm.add_argument("--semireg-threshold", type=float, default=math.inf,
                    help="flag cells whose R/h exceeds this")

    return parser


def config_from_args(args: argparse.Namespace) -> StudyConfig:
    cfg = StudyConfig(command=args.command)
    for name in ("d", "k", "m", "p", "alpha_min_exp", "alpha_exp", "beta", "r",
                 "probe_count", "quad_exactness", "seed", "output", "target",
                 "delta", "method", "allow_degenerate", "semireg_threshold"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if args.command == "mesh-metrics":
        cfg.mesh_path = args.mesh
    return cfg


def _write_output(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as err:
        raise ValueError(f"{path}: cannot write output: {err}") from err


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        cfg.validate()
        _threads()
        if cfg.command == "squeeze":
            text = run_squeeze(cfg)
        elif cfg.command == "scaling":
            text = run_scaling(cfg)
        elif cfg.command == "constants":
            text = run_constants(cfg)
        elif cfg.command == "diffquot-verify":
            text = run_diffquot_verify(cfg)
        else:
            mesh = load_mesh(cfg.mesh_path, cfg.allow_degenerate)
            text = run_mesh_metrics(cfg, mesh)
        _write_output(text, cfg.output)
    except (NumericalFailureError, IllConditionedElementError,
            np.linalg.LinAlgError) as err:
        print(f"simplexinterp: numerical failure: {err}", file=sys.stderr)
        return 3
    except ValueError as err:
        print(f"simplexinterp: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
