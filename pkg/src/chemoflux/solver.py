"""Time integration of the coupled cell/chemical/fluid system.

One step advances, in order:

  1. cells n: explicit conservative update.  Per axis, the right-face flux is
       F = w_face * upwind(n) - (g_R - g_L)/h,   g = (n+rho)^(1+alpha),
     with w_face = chi(c_face) * central dc/dx + face-averaged u.  The update
     telescopes, so mass is conserved to roundoff; under the stable_dt bound
     the update is a convex combination, so nonnegativity is preserved.
  2. chemical c: explicit upwind advection by u, then the linearly implicit
     consumption factor c <- c/(1 + dt n kappa_coeff c^{m-1}), then implicit
     diffusion with the compact stencil.  Every substep obeys the discrete
     max principle, so min c >= 0 and max c is non-increasing.
  3. fluid u: explicit buoyancy -n grad(phi) (plus upwind self-advection when
     tau = 1), implicit viscosity, then projection to discrete divergence-free.

Periodic boxes do the implicit solves and the projection spectrally with the
exact symbols of the difference stencils (sin(kh)/h for the central gradient,
2(cos(kh)-1)/h^2 for the compact laplacian), so the projected velocity is
divergence-free to machine precision.  Neumann boxes use matrix-free CG; the
projection solves (D0 D0^T) lam = D0 v with D0 the zero-ghost central
divergence, and the divergence of the corrected velocity equals the CG
residual, so the tolerance directly controls the constraint defect.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
import scipy.fft as sfft

from .diagnostics import DiagnosticsRecord, compute_record, write_csv
from .grid import (ScalarField, VectorField, diff_central, divergence, mesh,
                   save_field, load_field, lp_norm, shifted)
from .mollify import mollify_values
from .model import ChiKappaModel, DomainSpec, SimParams, classify_assumption

NEG_TOL = -1e-13          # below this, the cell update is declared unstable
_workers = 1


def set_threads(k: int) -> None:
    """FFT worker count (results are identical for any k; default 1)."""
    global _workers
    _workers = max(1, int(k))


class SolverError(RuntimeError):
    pass


@dataclass
class FieldState:
    t: float
    n: ScalarField
    c: ScalarField
    u: VectorField
    p: ScalarField


# ---------------------------------------------------------------------------
# spectral tables (periodic mode)

@lru_cache(maxsize=32)
def _tables(spec: DomainSpec):
    """Per-axis gradient symbols s_d, their square sum, and the compact
    laplacian symbol, on the rfftn layout."""
    dim, shape = spec.dim, spec.shape
    sins, lam = [], None
    for d in range(dim):
        N, h = shape[d], spec.spacing[d]
        if d == dim - 1:
            k = np.arange(N // 2 + 1, dtype=float)
        else:
            k = np.fft.fftfreq(N, 1.0 / N)
        theta = 2.0 * np.pi * k / N
        newshape = [1] * dim
        newshape[d] = -1
        s = (np.sin(theta) / h).reshape(newshape)
        # sin(pi) rounds to ~2e-16, not 0; the Nyquist column must be an
        # exact symbol zero or the projector divides by its square
        s[np.abs(2.0 * k.reshape(newshape)) % N == 0] = 0.0
        l = ((2.0 * np.cos(theta) - 2.0) / (h * h)).reshape(newshape)
        sins.append(s)
        lam = l if lam is None else lam + l
    s_sq = sins[0] * sins[0]
    for s in sins[1:]:
        s_sq = s_sq + s * s
    return tuple(sins), s_sq, lam


def _rfftn(x):
    with sfft.set_workers(_workers):
        return sfft.rfftn(x)


def _irfftn(x, shape):
    with sfft.set_workers(_workers):
        return sfft.irfftn(x, s=shape)


def _helmholtz_periodic(values: np.ndarray, spec: DomainSpec, dt: float) -> np.ndarray:
    # (I - dt*lap_compact)^{-1}, exact in the stencil symbol
    _, _, lam = _tables(spec)
    vh = _rfftn(values)
    vh /= (1.0 - dt * lam)
    return _irfftn(vh, spec.shape)


def _fluid_spectral(v: list[np.ndarray], spec: DomainSpec, dt: float):
    """Implicit viscosity (skipped for dt=0) fused with projection.

    Both stages are diagonal in Fourier space, so fusing them is exactly the
    sequential composition.  Returns (u components, p).
    """
    sins, s_sq, lam = _tables(spec)
    vh = [_rfftn(comp) for comp in v]
    if dt > 0.0:
        visc = 1.0 - dt * lam
        vh = [x / visc for x in vh]
    div_h = (1j) * sum(s * x for s, x in zip(sins, vh))
    ph = np.zeros_like(div_h)
    np.divide(div_h, -s_sq, out=ph, where=s_sq > 0)
    u = [_irfftn(x - 1j * s * ph, spec.shape) for s, x in zip(sins, vh)]
    p = _irfftn(ph, spec.shape)
    return u, p


# ---------------------------------------------------------------------------
# matrix-free CG (neumann mode)

def _cg(apply_a, b: np.ndarray, x0: np.ndarray | None, tol: float,
        max_iter: int) -> np.ndarray:
    x = np.zeros_like(b) if x0 is None else x0.copy()
    r = b - apply_a(x)
    if np.max(np.abs(r)) <= tol:
        return x
    d = r.copy()
    rs = float(np.vdot(r, r).real)
    for _ in range(max_iter):
        ad = apply_a(d)
        denom = float(np.vdot(d, ad).real)
        if denom <= 0.0:
            break
        step_len = rs / denom
        x += step_len * d
        r -= step_len * ad
        if np.max(np.abs(r)) <= tol:
            return x
        rs_new = float(np.vdot(r, r).real)
        d = r + (rs_new / rs) * d
        rs = rs_new
    raise SolverError(f"CG stalled: residual {np.max(np.abs(r)):.3e} > {tol:.3e}")


def _compact_laplacian(values: np.ndarray, spec: DomainSpec, ghost: str) -> np.ndarray:
    out = np.zeros_like(values)
    for d in range(spec.dim):
        h2 = spec.spacing[d] ** 2
        out += (shifted(values, spec, d, 1, ghost) - 2.0 * values
                + shifted(values, spec, d, -1, ghost)) / h2
    return out


def _helmholtz_cg(values: np.ndarray, spec: DomainSpec, dt: float, ghost: str) -> np.ndarray:
    def apply_a(x):
        return x - dt * _compact_laplacian(x, spec, ghost)
    tol = 1e-13 * max(1.0, float(np.max(np.abs(values))))
    return _cg(apply_a, values, values.copy(), tol, max_iter=10_000)


def _div0(comps: list[np.ndarray], spec: DomainSpec) -> np.ndarray:
    out = np.zeros(spec.shape)
    for d in range(spec.dim):
        out += diff_central(comps[d], spec, d, "zero")
    return out


def _project_neumann(v: list[np.ndarray], spec: DomainSpec,
                     lam0: np.ndarray | None = None):
    """Correct v by a discrete gradient so the zero-ghost divergence vanishes.

    Solves (D0 D0^T) lam = D0 v.  D0^T is -D0 applied row-wise with zero
    ghosts, so the corrected u = v - D0^T lam satisfies div0(u) = CG residual
    exactly; the operator here has trivial kernel (the central zero-ghost
    difference chains force every component to 0), hence plain CG applies.
    """
    def apply_a(x):
        out = np.zeros_like(x)
        for d in range(spec.dim):
            out -= diff_central(diff_central(x, spec, d, "zero"), spec, d, "zero")
        return out

    b = _div0(v, spec)
    lam = _cg(apply_a, b, lam0, tol=1e-9, max_iter=200_000)
    u = [v[d] + diff_central(lam, spec, d, "zero") for d in range(spec.dim)]
    p = -(lam - float(np.mean(lam)))
    return u, p, lam


def project(v: VectorField, lam0: np.ndarray | None = None):
    """Discrete Leray projection: returns (u, p) with u discrete
    divergence-free and integrate(p) = 0."""
    spec = v.domain
    comps = [v.data[d] for d in range(spec.dim)]
    if spec.mode == "periodic":
        u, p = _fluid_spectral(comps, spec, dt=0.0)
    else:
        u, p, _ = _project_neumann(comps, spec, lam0)
    return VectorField(spec, np.stack(u)), ScalarField(spec, p)


# ---------------------------------------------------------------------------
# stability bound

def stable_dt(state: FieldState, params: SimParams, model: ChiKappaModel) -> float:
    """cfl_safety times the positivity/max-principle step bound.

    Diffusion: 1/(2 (1+alpha) (max n + rho)^alpha sum_d h_d^-2), the explicit
    bound for the degenerate flux with slope g' <= (1+alpha)(max n+rho)^alpha
    (reduces to h^2/(2 dim (1+alpha)(max n+rho)^alpha) on uniform grids).
    Transport: 1/sum_d(max(|w_d|, |u_d|)/h_d) with w = chi(c) grad c + u; the
    raw |u_d| enters because the c and u updates advect by u alone and w can
    cancel below it.
    """
    spec = params.domain
    n, c, u = state.n.data, state.c.data, state.u.data
    alpha = params.alpha
    inv_h2 = sum(1.0 / h ** 2 for h in spec.spacing)
    diff_limit = 1.0 / (2.0 * (1.0 + alpha)
                        * (float(np.max(n)) + params.rho) ** alpha * inv_h2)
    speed = 0.0
    for d in range(spec.dim):
        h = spec.spacing[d]
        c_r = shifted(c, spec, d, 1, "mirror")
        u_r = shifted(u[d], spec, d, 1, "zero")
        chi_face = model.chi_offset + model.chi_slope * 0.5 * (c + c_r)
        w = chi_face * (c_r - c) / h + 0.5 * (u[d] + u_r)
        speed += max(float(np.max(np.abs(w))), float(np.max(np.abs(u[d])))) / h
    limit = diff_limit if speed == 0.0 else min(diff_limit, 1.0 / speed)
    return params.cfl_safety * limit


# ---------------------------------------------------------------------------
# one step

def step(state: FieldState, params: SimParams, model: ChiKappaModel, dt: float,
         sources=None, work: dict | None = None) -> FieldState:
    """Advance the state by dt.

    `sources` is an optional callable t -> (s_n, s_c, s_u) of forcing arrays
    (used by the manufactured-solution studies); `work` is an optional scratch
    dict that carries CG warm starts and the pre-clip minima between steps.
    """
    spec = params.domain
    dim = spec.dim
    h = spec.spacing
    n = state.n.data
    c = state.c.data
    u = state.u.data
    alpha, rho, tau = params.alpha, params.rho, params.tau
    neumann = spec.mode == "neumann"
    if sources is not None:
        s_n, s_c, s_u = sources(state.t)

    # --- 1. cells: conservative flux update
    g = np.power(n + rho, 1.0 + alpha)
    flux_div = np.zeros(spec.shape)
    for d in range(dim):
        n_r = shifted(n, spec, d, 1, "mirror")
        c_r = shifted(c, spec, d, 1, "mirror")
        g_r = shifted(g, spec, d, 1, "mirror")
        u_r = shifted(u[d], spec, d, 1, "zero")
        chi_face = model.chi_offset + model.chi_slope * 0.5 * (c + c_r)
        w = chi_face * (c_r - c) / h[d] + 0.5 * (u[d] + u_r)
        f = np.where(w > 0.0, w * n, w * n_r) - (g_r - g) / h[d]
        if neumann:
            wall = [slice(None)] * dim
            wall[d] = slice(-1, None)
            f[tuple(wall)] = 0.0
        flux_div += (f - shifted(f, spec, d, -1, "zero")) / h[d]
    n_new = n - dt * flux_div
    if sources is not None:
        n_new = n_new + dt * s_n
    if not np.all(np.isfinite(n_new)):
        raise SolverError(f"non-finite cell density at t={state.t + dt:.6g}")
    min_n_raw = float(np.min(n_new))
    if min_n_raw < NEG_TOL:
        raise SolverError(
            f"cell density dropped to {min_n_raw:.3e} at t={state.t + dt:.6g}; "
            "the step is unstable (check cfl_safety / dt_max)")
    n_new = np.maximum(n_new, 0.0)

    # --- 2. chemical: upwind advection, implicit consumption, diffusion
    adv = np.zeros(spec.shape)
    for d in range(dim):
        c_r = shifted(c, spec, d, 1, "mirror")
        c_l = shifted(c, spec, d, -1, "mirror")
        adv += np.where(u[d] > 0.0, u[d] * (c - c_l), u[d] * (c_r - c)) / h[d]
    c1 = c - dt * adv
    if model.kappa_coeff > 0.0:
        if model.kappa_power == 1.0:
            rate = model.kappa_coeff * n
        else:
            rate = model.kappa_coeff * n * np.power(np.maximum(c1, 0.0),
                                                    model.kappa_power - 1.0)
        c1 = c1 / (1.0 + dt * rate)
    if neumann:
        c2 = _helmholtz_cg(c1, spec, dt, "mirror")
    else:
        c2 = _helmholtz_periodic(c1, spec, dt)
    if sources is not None:
        c2 = c2 + dt * s_c
    min_c_raw = float(np.min(c2))
    c_new = np.maximum(c2, 0.0)

    # --- 3. fluid: forcing, (self-advection), viscosity, projection
    v = []
    for d in range(dim):
        comp = u[d] - dt * params.phi_gradient[d] * n
        if tau == 1:
            conv = np.zeros(spec.shape)
            for e in range(dim):
                q_r = shifted(u[d], spec, e, 1, "zero")
                q_l = shifted(u[d], spec, e, -1, "zero")
                conv += np.where(u[e] > 0.0, u[e] * (u[d] - q_l),
                                 u[e] * (q_r - u[d])) / h[e]
            comp = comp - dt * conv
        if sources is not None:
            comp = comp + dt * s_u[d]
        v.append(comp)
    if neumann:
        v = [_helmholtz_cg(comp, spec, dt, "zero") for comp in v]
        lam0 = None if work is None else work.get("proj_lambda")
        u_new, p_new, lam = _project_neumann(v, spec, lam0)
        if work is not None:
            work["proj_lambda"] = lam
    else:
        u_new, p_new = _fluid_spectral(v, spec, dt)
    if not all(np.all(np.isfinite(comp)) for comp in u_new):
        raise SolverError(f"non-finite velocity at t={state.t + dt:.6g}")

    if work is not None:
        work["min_n_raw"] = min_n_raw
        work["min_c_raw"] = min_c_raw
    return FieldState(
        t=state.t + dt,
        n=ScalarField(spec, n_new),
        c=ScalarField(spec, c_new),
        u=VectorField(spec, np.stack(u_new)),
        p=ScalarField(spec, p_new),
    )


# ---------------------------------------------------------------------------
# initial data

def _gaussian(spec: DomainSpec, sigma: float, center) -> np.ndarray:
    """Separable Gaussian bump; periodic boxes sum the +-1 axis images so the
    profile stays smooth across the seam (further images are below roundoff
    for any sigma << L)."""
    xs = mesh(spec)
    out = np.ones(spec.shape)
    inv = 1.0 / (2.0 * sigma * sigma)
    for d, X in enumerate(xs):
        dx = X - center[d]
        axis = np.exp(-dx * dx * inv)
        if spec.mode == "periodic":
            L = spec.lengths[d]
            axis = axis + np.exp(-(dx - L) ** 2 * inv) + np.exp(-(dx + L) ** 2 * inv)
        out = out * axis
    return out


def _vortex(spec: DomainSpec, amplitude: float) -> np.ndarray:
    """Smooth divergence-compatible swirl in the first two axes."""
    if spec.dim == 1:
        return np.zeros((1,) + spec.shape)
    xs = mesh(spec)
    out = np.zeros((spec.dim,) + spec.shape)
    if spec.mode == "periodic":
        kx = 2.0 * np.pi / spec.lengths[0]
        ky = 2.0 * np.pi / spec.lengths[1]
        sx = np.sin(kx * (xs[0] + 0.5 * spec.lengths[0]))
        cx = np.cos(kx * (xs[0] + 0.5 * spec.lengths[0]))
        sy = np.sin(ky * (xs[1] + 0.5 * spec.lengths[1]))
        cy = np.cos(ky * (xs[1] + 0.5 * spec.lengths[1]))
        out[0] = amplitude * sx * cy
        out[1] = -amplitude * cx * sy
    else:
        # stream function A sin^2(pi x~) sin^2(pi y~) vanishes with its
        # tangential derivative at the walls (no-slip compatible)
        tx = np.pi * (xs[0] + 0.5 * spec.lengths[0]) / spec.lengths[0]
        ty = np.pi * (xs[1] + 0.5 * spec.lengths[1]) / spec.lengths[1]
        out[0] = (amplitude * np.sin(tx) ** 2
                  * 2.0 * np.sin(ty) * np.cos(ty) * np.pi / spec.lengths[1])
        out[1] = (-amplitude * 2.0 * np.sin(tx) * np.cos(tx) * np.pi / spec.lengths[0]
                  * np.sin(ty) ** 2)
    return out


def build_initial(spec: DomainSpec, initial: dict):
    """Construct (n, c, u) arrays from the `initial` config section.

    n: {"type": "gaussian", "sigma", "mass", ["center"]} | {"type": "constant",
       "value"} | {"type": "snapshot", "path"} | {"type": "array", "values"}
    c: {"type": "constant", "value"} | {"type": "gaussian", "base",
       "amplitude", "sigma", ["center"]} | {"type": "snapshot", "path"}
    u: {"type": "zero"} | {"type": "vortex", "amplitude"} |
       {"type": "snapshot", "paths": [...]}
    plus optional {"perturb": {"amplitude", "seed"}} applied multiplicatively
    to n (mass is re-normalized afterwards when a target mass was given).
    """
    cfg_n = initial.get("n", {"type": "constant", "value": 1.0})
    cfg_c = initial.get("c", {"type": "constant", "value": 1.0})
    cfg_u = initial.get("u", {"type": "zero"})
    center = tuple(cfg_n.get("center", (0.0,) * spec.dim))

    kind = cfg_n.get("type", "constant")
    if kind == "gaussian":
        n = _gaussian(spec, float(cfg_n["sigma"]), center)
    elif kind == "constant":
        n = np.full(spec.shape, float(cfg_n["value"]))
    elif kind == "snapshot":
        n = load_field(cfg_n["path"], spec)[0].data
    elif kind == "array":
        # programmatic route (oracle studies); not part of the JSON schema
        n = np.array(cfg_n["values"], dtype=float).reshape(spec.shape)
    else:
        raise ValueError(f"unknown initial n type {kind!r}")

    perturb = initial.get("perturb")
    if perturb and float(perturb.get("amplitude", 0.0)) > 0.0:
        rng = np.random.default_rng(int(perturb.get("seed", 0)))
        n = n * (1.0 + float(perturb["amplitude"]) * (2.0 * rng.random(spec.shape) - 1.0))
    if kind == "gaussian":
        target = float(cfg_n.get("mass", 1.0))
        n = n * (target / (float(np.sum(n)) * spec.cell_volume))

    kind = cfg_c.get("type", "constant")
    if kind == "constant":
        c = np.full(spec.shape, float(cfg_c["value"]))
    elif kind == "gaussian":
        c = (float(cfg_c.get("base", 0.0))
             + float(cfg_c["amplitude"])
             * _gaussian(spec, float(cfg_c["sigma"]),
                         tuple(cfg_c.get("center", (0.0,) * spec.dim))))
    elif kind == "snapshot":
        c = load_field(cfg_c["path"], spec)[0].data
    else:
        raise ValueError(f"unknown initial c type {kind!r}")

    kind = cfg_u.get("type", "zero")
    if kind == "zero":
        u = np.zeros((spec.dim,) + spec.shape)
    elif kind == "vortex":
        u = _vortex(spec, float(cfg_u.get("amplitude", 1.0)))
    elif kind == "snapshot":
        u = np.stack([load_field(p, spec)[0].data for p in cfg_u["paths"]])
    else:
        raise ValueError(f"unknown initial u type {kind!r}")

    if np.min(n) < 0 or np.min(c) < 0:
        raise ValueError("initial n and c must be nonnegative")
    return n, c, u


# ---------------------------------------------------------------------------
# full runs

@dataclass
class RunResult:
    params: SimParams
    model: ChiKappaModel
    records: list[DiagnosticsRecord]
    state: FieldState
    warnings: list[str]
    guards: dict[str, float]
    csv_path: Path | None = None


def run(params: SimParams, model: ChiKappaModel, initial: dict,
        output: dict | None = None) -> RunResult:
    """Mollify and project the initial data, advance adaptively to t_final
    (or max_steps), record diagnostics at the sample cadence, and optionally
    write the CSV stream and field snapshots.

    The `guards` dict tracks per-step (not just per-sample) invariants:
    max_div_residual, mass_drift, max_c_increase, min_n_raw, min_c_raw, steps.
    """
    spec = params.domain
    output = dict(output or {})
    out_dir = output.get("out_dir")
    out = None
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
    sample_interval = float(output.get("sample_interval", params.t_final / 50.0))
    snapshot_every = int(output.get("snapshot_every", 0))

    n0, c0, u0 = build_initial(spec, initial)
    n0 = mollify_values(n0, spec, params.rho)
    c0 = mollify_values(c0, spec, params.rho)
    u0 = np.stack([mollify_values(u0[d], spec, params.rho) for d in range(spec.dim)])
    u_field, p_field = project(VectorField(spec, u0))
    state = FieldState(0.0, ScalarField(spec, n0), ScalarField(spec, c0),
                       u_field, p_field)

    warnings = []
    cls = classify_assumption(model, params, float(np.max(c0)))
    if not cls.weak_cases and not cls.bounded_cases:
        warnings.append("no structural assumption case is satisfied; "
                        "no a priori bound backs this run")

    records = [compute_record(state, params)]
    if out is not None and snapshot_every > 0:
        _write_snapshots(out, state, params, 0)
    guards = {
        "max_div_residual": records[0].div_residual,
        "mass_drift": 0.0,
        "max_c_increase": 0.0,
        "min_n_raw": records[0].min_n,
        "min_c_raw": records[0].min_c,
        "steps": 0,
    }
    mass0 = records[0].mass
    prev_max_c = records[0].max_c

    work: dict = {}
    next_sample = sample_interval
    eps = 1e-12 * max(params.t_final, 1.0)
    while state.t < params.t_final - eps:
        if params.max_steps is not None and guards["steps"] >= params.max_steps:
            break
        dt = stable_dt(state, params, model)
        if params.dt_max is not None:
            dt = min(dt, params.dt_max)
        dt = min(dt, params.t_final - state.t, max(next_sample - state.t, 0.0))
        if dt <= 0.0:
            raise SolverError(f"stability bound collapsed to dt={dt} at t={state.t}")
        state = step(state, params, model, dt, work=work)
        guards["steps"] += 1

        mass = float(np.sum(state.n.data)) * spec.cell_volume
        guards["mass_drift"] = max(guards["mass_drift"],
                                   abs(mass - mass0) / max(abs(mass0), 1e-300))
        guards["min_n_raw"] = min(guards["min_n_raw"], work.get("min_n_raw", 0.0))
        guards["min_c_raw"] = min(guards["min_c_raw"], work.get("min_c_raw", 0.0))
        max_c = float(np.max(state.c.data))
        guards["max_c_increase"] = max(guards["max_c_increase"], max_c - prev_max_c)
        prev_max_c = max_c
        div_res = lp_norm(divergence(state.u), np.inf)
        guards["max_div_residual"] = max(guards["max_div_residual"], div_res)

        if state.t >= next_sample - eps or state.t >= params.t_final - eps:
            records.append(compute_record(state, params, prev=records[-1]))
            if out is not None and snapshot_every > 0 \
                    and (len(records) - 1) % snapshot_every == 0:
                _write_snapshots(out, state, params, len(records) - 1)
            while next_sample <= state.t + eps:
                next_sample += sample_interval
    if records[-1].t < state.t - eps or guards["steps"] == 0:
        records.append(compute_record(state, params, prev=records[-1]))

    csv_path = None
    if out is not None:
        csv_path = write_csv(records, out / output.get("csv", "diagnostics.csv"),
                             warnings)
        if snapshot_every > 0:
            _write_snapshots(out, state, params, len(records) - 1)
    return RunResult(params, model, records, state, warnings, guards, csv_path)


def _write_snapshots(out: Path, state: FieldState, params: SimParams,
                     idx: int) -> None:
    spec = params.domain
    tag = f"{idx:05d}"
    save_field(state.n, out / f"n_{tag}", "n", state.t)
    save_field(state.c, out / f"c_{tag}", "c", state.t)
    save_field(state.p, out / f"p_{tag}", "p", state.t)
    for d in range(spec.dim):
        save_field(ScalarField(spec, state.u.data[d]), out / f"u{d}_{tag}",
                   f"u{d}", state.t)
