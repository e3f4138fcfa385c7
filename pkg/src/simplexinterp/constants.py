"""Lower-bound estimation of interpolation error constants.

Two sharp constants are estimated, always from below (restricting a supremum
to a finite-dimensional probe space never overshoots):

* the interpolation error constant: the best C with
  ``|v - I_k v|_{m,p,K} <= C |v|_{k+1,p,K}``;
* the box-constrained Poincare constant: the best C with
  ``||v||_{0,p,Khat} <= C |v|_{k+1-|delta|,p,Khat}`` over functions whose
  box integrals of extent delta all vanish.

For p = 2 the restricted supremum is the top eigenvalue of a generalized
Gram pencil (assembled with exact quadrature and solved by Cholesky plus
cyclic Jacobi); for general p it is sampled over seeded probe families.
The module also bundles the two parameter studies behind the CLI: error
constants along squeeze families, and circumradius-normalized error ratios
along needle/cap/scaled triangle families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diffquot import box_integrals_for_extent, enumerate_boxes
from .eigen import generalized_eigh_max
from .errors import (
    IllConditionedElementError,
    InsufficientProbeSpaceError,
    NumericalFailureError,
)
from .geometry import Simplex, geometry_report, reference_simplex, squeeze
from .multiindex import MultiIndex, enumerate_order, multinomial_weight
from .polynomials import Polynomial, evaluate_polynomials, interpolate
from .quadrature import (
    MAX_EXACTNESS,
    box_constraint_p_valid,
    lp_norm,
    map_rule,
    seminorm,
    simplex_rule,
    squeeze_bound_p_valid,
)

MAX_PROBE_DEGREE = 8


@dataclass
class ConstantEstimate:
    """A certified-from-below estimate of one of the sharp constants.

    ``trace`` lists (probe-space size parameter r', estimate) pairs for the
    nested probe spaces r' = 1..r; values are nondecreasing in r' up to
    solver roundoff because the spaces are nested.
    """

    value: float
    target: str  # "interp_error" or "poincare"
    method: str  # "rayleigh" or "sampling"
    parameters: dict
    trace: list[tuple[int, float]] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)


@dataclass
class ProbeFamily:
    """A named, reproducible family of polynomial probes."""

    name: str
    polys: list[Polynomial]
    ids: list[str]
    seed: int | None = None

    def __post_init__(self):
        if len(self.polys) != len(self.ids):
            raise ValueError("one id per probe required")

    def __len__(self):
        return len(self.polys)

    def __add__(self, other: "ProbeFamily") -> "ProbeFamily":
        return ProbeFamily(
            f"{self.name}+{other.name}",
            self.polys + other.polys,
            self.ids + other.ids,
            self.seed if self.seed is not None else other.seed,
        )

    @classmethod
    def monomials(cls, d: int, degree: int) -> "ProbeFamily":
        exps = enumerate_order(d, degree)
        return cls(
            f"monomials-deg{degree}",
            [Polynomial.monomial(e) for e in exps],
            ["x^" + ",".join(map(str, e)) for e in exps],
        )

    @classmethod
    def random(cls, d: int, min_degree: int, max_degree: int, count: int,
               seed: int, homogeneous: bool = False) -> "ProbeFamily":
        """Random probes with coefficients uniform in [-1, 1], seeded."""
        rng = np.random.default_rng(seed)
        polys, ids = [], []
        for i in range(count):
            deg = int(rng.integers(min_degree, max_degree + 1))
            exps = enumerate_order(d, deg) if homogeneous else [
                e for t in range(deg + 1) for e in enumerate_order(d, t)
            ]
            coeffs = rng.uniform(-1.0, 1.0, size=len(exps))
            polys.append(Polynomial.from_terms(d, dict(zip(map(tuple, exps), coeffs))))
            ids.append(f"rand{i}-deg{deg}")
        return cls(f"random-{count}@{seed}", polys, ids, seed)


def _probe_exponents(d: int, k: int, r: int) -> list[MultiIndex]:
    out: list[MultiIndex] = []
    for t in range(k + 1, k + r + 1):
        out.extend(enumerate_order(d, t))
    return out


def _weighted_gram(polys, orders, weights, pts, wts) -> np.ndarray:
    """Sum over derivative indices of weighted L2 Grams, via batched evaluation."""
    n = len(polys)
    G = np.zeros((n, n))
    for g, w in zip(orders, weights):
        D = evaluate_polynomials([p.derivative(g) for p in polys], pts)
        G += w * ((D * wts[None, :]) @ D.T)
    return G


def estimate_error_constant_rayleigh(K: Simplex, k: int, m: int, r: int,
                                     quad_exactness: int | None = None) -> ConstantEstimate:
    """p = 2 lower bound via the generalized Rayleigh quotient.

    Probes span the monomials of total degree k+1 .. k+r on ``K``.  With
    residuals u_i = q_i - I_k q_i, the pencil pairs the weighted m-seminorm
    Gram of the residuals against the weighted (k+1)-seminorm Gram of the
    probes; the estimate is sqrt of the top eigenvalue, reported for every
    nested truncation r' = 1..r.  If the right-hand Gram is not positive
    definite the quadrature exactness is raised once before failing.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 0 <= m <= k:
        raise ValueError(f"m must satisfy 0 <= m <= k, got {m}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    if k + r > MAX_PROBE_DEGREE:
        raise ValueError(f"probe degree k + r must stay <= {MAX_PROBE_DEGREE}")
    d = K.d
    exps = _probe_exponents(d, k, r)
    probes = [Polynomial.monomial(e) for e in exps]
    residuals = [q - interpolate(K, k, q) for q in probes]
    sizes = [len(enumerate_order(d, k + 1 + t)) for t in range(r)]
    prefixes = np.cumsum(sizes)

    m_orders = enumerate_order(d, m)
    m_weights = [multinomial_weight(m, g) for g in m_orders]
    top_orders = enumerate_order(d, k + 1)
    top_weights = [multinomial_weight(k + 1, g) for g in top_orders]

    exactness = min(max(quad_exactness or 0, 2 * (k + r)), MAX_EXACTNESS)
    last_err: Exception | None = None
    for attempt in range(2):
        rule = simplex_rule(d, exactness)
        pts, wts = map_rule(rule, K)
        A = _weighted_gram(residuals, m_orders, m_weights, pts, wts)
        G = _weighted_gram(probes, top_orders, top_weights, pts, wts)
        try:
            trace = []
            for rp, n in enumerate(prefixes, start=1):
                lam, _ = generalized_eigh_max(A[:n, :n], G[:n, :n])
                trace.append((rp, math.sqrt(max(lam, 0.0))))
            return ConstantEstimate(
                value=trace[-1][1],
                target="interp_error",
                method="rayleigh",
                parameters={
                    "d": d, "k": k, "m": m, "p": 2.0, "r": r,
                    "quad_exactness": exactness,
                    "simplex": K.vertices.tolist(),
                },
                trace=trace,
                diagnostics={"n_probes": len(exps)},
            )
        except np.linalg.LinAlgError as err:  # G not SPD: retry once, better quadrature
            last_err = err
            exactness = min(exactness + 8, MAX_EXACTNESS)
    raise NumericalFailureError(
        f"generalized eigenproblem failed after quadrature retry: {last_err}"
    )


def estimate_error_constant_sampling(K: Simplex, k: int, m: int, p: float,
                                     family: ProbeFamily,
                                     quad_exactness: int | None = None) -> ConstantEstimate:
    """General-p lower bound: max seminorm ratio over a probe family.

    Probes that already lie in the degree-k space (vanishing top seminorm)
    are skipped and counted in the diagnostics.
    """
    if k < 1 or not 0 <= m <= k:
        raise ValueError("need k >= 1 and 0 <= m <= k")
    if p != math.inf and p < 1.0:
        raise ValueError(f"p must satisfy p >= 1 (or inf), got {p}")
    d = K.d
    maxdeg = max(q.degree for q in family.polys)
    rule = None
    if p != math.inf:
        if float(p).is_integer() and int(p) % 2 == 0:
            e = int(p) * maxdeg
        else:
            e = 2 * maxdeg + 4
        rule = simplex_rule(d, min(max(e, quad_exactness or 0), MAX_EXACTNESS))
    best = -math.inf
    best_id = None
    skipped = 0
    for q, pid in zip(family.polys, family.ids):
        if q.effective_degree(tol=0.0) <= k:
            skipped += 1
            continue
        denom = seminorm(q, K, (k + 1, p), rule)
        if denom <= 1e-300:
            skipped += 1
            continue
        num = seminorm(q - interpolate(K, k, q), K, (m, p), rule)
        ratio = num / denom
        if ratio > best:
            best, best_id = ratio, pid
    if best_id is None:
        raise InsufficientProbeSpaceError("every probe lies in the interpolated space")
    return ConstantEstimate(
        value=best,
        target="interp_error",
        method="sampling",
        parameters={
            "d": d, "k": k, "m": m, "p": p,
            "family": family.name, "seed": family.seed,
            "simplex": K.vertices.tolist(),
        },
        trace=[(len(family), best)],
        diagnostics={"skipped": skipped, "attaining": best_id},
    )


def estimate_poincare_constant(delta, k: int, p: float, r: int,
                               quad_order: int | None = None,
                               seed: int = 0, sample_count: int = 64) -> ConstantEstimate:
    """Lower bound for the box-constrained Poincare constant on the reference simplex.

    Probes are the null space of the box-integral constraint matrix over the
    monomials of degree <= k - |delta| + r.  r = 0 gives a trivial null space
    (the constraint matrix is square and nonsingular) and raises
    :class:`InsufficientProbeSpaceError`.  p = 2 solves the Gram pencil on
    the null space; other p samples seeded combinations of the null basis.
    """
    dlt = MultiIndex(delta)
    d = dlt.arity
    if d not in (2, 3):
        raise ValueError("delta must have arity 2 or 3")
    if not 1 <= dlt.order <= k:
        raise ValueError(f"need 1 <= |delta| <= k, got |delta|={dlt.order}, k={k}")
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    if p != math.inf and p < 1.0:
        raise ValueError(f"p must satisfy p >= 1 (or inf), got {p}")
    s = k - dlt.order
    ref = reference_simplex(d)
    qo = max(quad_order or 0, 2 * (s + r) + 2)

    def null_basis(rp: int):
        exps = [e for t in range(s + rp + 1) for e in enumerate_order(d, t)]
        boxes = enumerate_boxes(k, dlt, d)
        C = np.zeros((len(boxes), len(exps)))
        for j, e in enumerate(exps):
            _, vals = box_integrals_for_extent(Polynomial.monomial(e), k, dlt, qo)
            C[:, j] = vals
        _, sig, Vt = np.linalg.svd(C)
        tol = max(C.shape) * np.finfo(float).eps * (sig[0] if sig.size else 0.0) * 10.0
        rank = int(np.sum(sig > tol))
        N = Vt[rank:].T  # columns: monomial coefficients of null probes
        resid = float(np.abs(C @ N).max()) if N.shape[1] else 0.0
        polys = [
            Polynomial.from_terms(d, {tuple(e): N[i, j] for i, e in enumerate(exps)})
            for j in range(N.shape[1])
        ]
        return polys, resid

    trace: list[tuple[int, float]] = []
    value = None
    resid = 0.0
    order_sem = k + 1 - dlt.order
    for rp in range(1, max(r, 1) + 1) if r >= 1 else []:
        polys, resid = null_basis(rp)
        if not polys:
            continue
        if p == 2.0:
            rule = simplex_rule(d, min(2 * (s + rp) + 2, MAX_EXACTNESS))
            pts, wts = map_rule(rule, ref)
            P = evaluate_polynomials(polys, pts)
            A = (P * wts[None, :]) @ P.T
            orders = enumerate_order(d, order_sem)
            weights = [multinomial_weight(order_sem, g) for g in orders]
            G = _weighted_gram(polys, orders, weights, pts, wts)
            lam, _ = generalized_eigh_max(A, G)
            value = math.sqrt(max(lam, 0.0))
        else:
            rng = np.random.default_rng([seed, k, dlt.order, rp])
            combos = list(polys)
            for _ in range(sample_count):
                c = rng.standard_normal(len(polys))
                combo = polys[0] * c[0]
                for ci, pi in zip(c[1:], polys[1:]):
                    combo = combo + pi * ci
                combos.append(combo)
            best = -math.inf
            for v in combos:
                denom = seminorm(v, ref, (order_sem, p))
                if denom <= 1e-300:
                    continue
                best = max(best, lp_norm(v, ref, p) / denom)
            value = best
        trace.append((rp, value))
    if value is None:
        raise InsufficientProbeSpaceError(
            "the box constraints annihilate every probe of degree "
            f"<= {s + r}; increase r"
        )
    return ConstantEstimate(
        value=value,
        target="poincare",
        method="rayleigh" if p == 2.0 else "sampling",
        parameters={
            "d": d, "k": k, "delta": tuple(dlt), "p": p, "r": r,
            "quad_order": qo, "seed": seed,
        },
        trace=trace,
        diagnostics={
            "constraint_residual": resid,
            "theory_valid": box_constraint_p_valid(d, k, dlt.order, p),
        },
    )


# ---------------------------------------------------------------------------
# Studies
# ---------------------------------------------------------------------------


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx = np.log(np.asarray(xs, dtype=float))
    ly = np.log(np.asarray(ys, dtype=float))
    if lx.size < 2:
        return float("nan")
    lx = lx - lx.mean()
    return float((lx @ (ly - ly.mean())) / (lx @ lx))


@dataclass
class SqueezeStudyRow:
    alpha: float
    beta: float | None
    estimate: float
    theory_valid: bool
    chunkiness: float
    running_slope: float | None


@dataclass
class SqueezeStudy:
    rows: list[SqueezeStudyRow]
    slope: float            # least-squares fit over the full alpha range
    tail_slope: float       # fit over the most-squeezed half (asymptotic regime)
    ratio: float            # max/min of the estimates
    chunkiness_tail_slope: float
    params: dict


def _tail(xs, ys):
    """The most-squeezed half of the rows (at least 3 when available)."""
    n = len(xs)
    take = max(3, n // 2) if n >= 3 else n
    return xs[-take:], ys[-take:]


def squeeze_boundedness_study(d: int, k: int, m: int, p: float,
                              alpha_exps=range(0, 11), beta_policy: str = "equal",
                              method: str | None = None, r: int = 3,
                              probe_count: int = 40, seed: int = 12345,
                              map_fn=map) -> SqueezeStudy:
    """Error-constant estimates along the squeeze family alpha = 2^-e.

    ``beta_policy`` is "equal" (beta = alpha) or a float in (0, 1] used for
    every row (d=3 only).  ``method`` defaults to the Rayleigh estimator for
    p = 2 and sampling otherwise.  ``map_fn`` lets callers parallelize the
    per-alpha cells; rows are gathered in deterministic order regardless.
    """
    if d not in (2, 3):
        raise ValueError(f"d must be 2 or 3, got {d}")
    exps = list(alpha_exps)
    if any(e < 0 or e > 10 for e in exps):
        raise ValueError("alpha exponents must lie in 0..10 (alpha in [2^-10, 1])")
    if method is None:
        method = "rayleigh" if p == 2.0 else "sampling"
    if method == "rayleigh" and p != 2.0:
        raise ValueError("the rayleigh method requires p = 2")
    if method not in ("rayleigh", "sampling"):
        raise ValueError(f"unknown method {method!r}")

    family = None
    if method == "sampling":
        family = ProbeFamily.monomials(d, k + 1) + ProbeFamily.random(
            d, k + 1, min(k + r, MAX_PROBE_DEGREE), probe_count, seed
        )

    def cell(e: int) -> SqueezeStudyRow:
        alpha = 2.0 ** (-e)
        beta = None
        if d == 3:
            beta = alpha if beta_policy == "equal" else float(beta_policy)
        K = squeeze(d, alpha, beta)
        if method == "rayleigh":
            est = estimate_error_constant_rayleigh(K, k, m, r).value
        else:
            est = estimate_error_constant_sampling(K, k, m, p, family).value
        return SqueezeStudyRow(
            alpha=alpha,
            beta=beta,
            estimate=est,
            theory_valid=squeeze_bound_p_valid(d, k, m, p),
            chunkiness=K.chunkiness,
            running_slope=None,
        )

    rows = list(map_fn(cell, exps))
    alphas = [row.alpha for row in rows]
    ests = [row.estimate for row in rows]
    for i, row in enumerate(rows):
        row.running_slope = loglog_slope(alphas[: i + 1], ests[: i + 1]) if i >= 1 else None
    tail_a, tail_e = _tail(alphas, ests)
    chunk_a, chunk_c = _tail(alphas, [row.chunkiness for row in rows])
    return SqueezeStudy(
        rows=rows,
        slope=loglog_slope(alphas, ests),
        tail_slope=loglog_slope(tail_a, tail_e),
        ratio=max(ests) / min(ests),
        chunkiness_tail_slope=loglog_slope(chunk_a, chunk_c),
        params={
            "d": d, "k": k, "m": m, "p": p, "method": method, "r": r,
            "probe_count": probe_count, "seed": seed, "beta_policy": beta_policy,
        },
    )


@dataclass
class ScalingStudyRow:
    family: str
    vertices: np.ndarray
    h: float
    R: float
    rho: float
    max_angle: float
    theta_jamet: float
    rho_obs: float


@dataclass
class ScalingStudy:
    rows: list[ScalingStudyRow]
    max_rho_obs: float
    min_rho_obs: float
    skipped: list[tuple[str, str]]
    params: dict


def scaling_triangle_family(alpha_exps=(0, 2, 4, 6, 8, 10),
                            scales=(1.0, 0.5, 0.25, 0.125)) -> list[tuple[str, Simplex]]:
    """Needle, cap, and uniformly scaled equilateral triangles."""
    out: list[tuple[str, Simplex]] = []
    for s in scales:
        out.append((
            f"equilateral-h{s:g}",
            Simplex([[0.0, 0.0], [s, 0.0], [s / 2.0, s * math.sqrt(3.0) / 2.0]]),
        ))
    for e in alpha_exps:
        a = 2.0 ** (-e)
        out.append((f"needle-a2^-{e}", squeeze(2, a)))
    for e in alpha_exps:
        eps = 2.0 ** (-e - 1)  # apex height; epsilon = 1 would be degenerate-ish tall
        out.append((f"cap-e2^-{e + 1}",
                    Simplex([[0.0, 0.0], [1.0, 0.0], [0.5, eps]])))
    return out


def scaling_probe_family(k: int, m: int = 0, count: int = 8,
                         seed: int = 12345) -> ProbeFamily:
    """Homogeneous probes of degrees k+1 .. k+m+1: monomials plus seeded combos.

    A homogeneous probe of any fixed degree makes the normalized ratio
    exactly invariant under uniform scaling of the triangle, so mixing
    degrees is safe.  Degrees above k+1 matter on cap-like triangles, where
    the m-th derivative loss R^m is only attained by probes of degree about
    k+m; degree k+1 alone underestimates the cap ratio by a factor R^(m-1).
    """
    top = min(MAX_PROBE_DEGREE, max(k + 1, k + m + 1))
    family = ProbeFamily.monomials(2, k + 1)
    for deg in range(k + 2, top + 1):
        family = family + ProbeFamily.monomials(2, deg)
    return family + ProbeFamily.random(2, k + 1, top, count, seed, homogeneous=True)


def circumradius_scaling_study(k: int, m: int, p: float,
                               triangles: list[tuple[str, Simplex]] | None = None,
                               probes: ProbeFamily | None = None,
                               seed: int = 12345, map_fn=map) -> ScalingStudy:
    """Normalized error ratios rho_obs = |v - I_k v|_m / (R^m h^(k+1-2m) |v|_{k+1}).

    Two-dimensional only.  Ill-conditioned elements are skipped and logged.
    """
    if not 1 <= k:
        raise ValueError("k must be >= 1")
    if not 0 <= m <= k:
        raise ValueError("m must satisfy 0 <= m <= k")
    if p != math.inf and p < 1.0:
        raise ValueError(f"p must satisfy p >= 1 (or inf), got {p}")
    if triangles is None:
        triangles = scaling_triangle_family()
    if probes is None:
        probes = scaling_probe_family(k, m, seed=seed)
    if any(K.d != 2 for _, K in triangles):
        raise ValueError("the circumradius study is two-dimensional only")

    maxdeg = max(q.degree for q in probes.polys)
    rule = None
    if p != math.inf and not (float(p).is_integer() and int(p) % 2 == 0):
        rule = simplex_rule(2, min(2 * maxdeg + 4, MAX_EXACTNESS))

    def cell(item):
        label, K = item
        rep = geometry_report(K)
        coeff = rep.R**m * rep.h ** (k + 1 - 2 * m)
        best = -math.inf
        for q in probes.polys:
            denom = seminorm(q, K, (k + 1, p), rule)
            if denom <= 1e-300:
                continue
            num = seminorm(q - interpolate(K, k, q), K, (m, p), rule)
            best = max(best, num / (coeff * denom))
        return ScalingStudyRow(
            family=label,
            vertices=K.vertices,
            h=rep.h,
            R=rep.R,
            rho=rep.rho,
            max_angle=rep.max_angle,
            theta_jamet=rep.theta_jamet,
            rho_obs=best,
        )

    rows: list[ScalingStudyRow] = []
    skipped: list[tuple[str, str]] = []
    for label_K, result in zip(triangles, map_fn(_scaling_cell_safe(cell), triangles)):
        if isinstance(result, tuple):
            skipped.append((label_K[0], result[1]))
        else:
            rows.append(result)
    if not rows:
        raise NumericalFailureError("every element was skipped")
    vals = [row.rho_obs for row in rows]
    return ScalingStudy(
        rows=rows,
        max_rho_obs=max(vals),
        min_rho_obs=min(vals),
        skipped=skipped,
        params={"k": k, "m": m, "p": p, "seed": seed, "probes": probes.name},
    )


def _scaling_cell_safe(cell):
    def run(item):
        try:
            return cell(item)
        except IllConditionedElementError as err:
            return ("skipped", str(err))
    return run
