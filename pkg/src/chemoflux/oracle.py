"""Independent reference solutions used to cross-check the solver.

Three routes, none of which touch the discrete operators under test:

* uniform-state consumption: with spatially uniform data the PDE system
  collapses to dc/dt = -kappa(c) n, solved in closed form (kappa_power 1, 2)
  or by stiff adaptive integration otherwise;
* the radial self-similar source solution of the porous-medium subproblem,
  normalized to prescribed mass through the Beta-integral closed form;
* a manufactured solution with sympy-derived forcings, turning the full
  coupled stepper into a convergence study against known smooth fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import gamma as gamma_fn

from .grid import ScalarField, cell_centers, lp_norm, mesh
from .model import ChiKappaModel, DomainSpec, SimParams

__all__ = [
    "uniform_state_ode", "barenblatt", "ManufacturedProblem",
    "manufactured_problem", "discrete_residuals",
    "uniform_consumption_study", "barenblatt_convergence",
    "manufactured_convergence",
]


def uniform_state_ode(model: ChiKappaModel, n_bar: float, c0: float, t):
    """c(t) for dc/dt = -kappa_coeff n_bar c^m, c(0) = c0 (n stays n_bar).

    m = 1 and m = 2 use the exponential / algebraic closed forms; other
    exponents integrate adaptively at tolerances far below any comparison
    threshold used by tests.
    """
    t = np.asarray(t, dtype=float)
    k = model.kappa_coeff * n_bar
    m = model.kappa_power
    if m == 1.0:
        out = c0 * np.exp(-k * t)
    elif m == 2.0:
        out = c0 / (1.0 + k * c0 * t)
    else:
        from scipy.integrate import solve_ivp
        t_end = float(np.max(t)) if t.ndim else float(t)
        sol = solve_ivp(lambda _, y: [-k * y[0] ** m], (0.0, max(t_end, 1e-30)),
                        [c0], method="Radau", rtol=1e-11, atol=1e-14,
                        dense_output=True)
        out = sol.sol(np.atleast_1d(t))[0]
        out = out.reshape(t.shape) if t.ndim else out[0]
    return out if np.ndim(out) else float(out)


def barenblatt(alpha: float, mass: float, dim: int, t: float, x) -> np.ndarray:
    """Self-similar source solution of n_t = lap n^(1+alpha), mass-normalized.

    x holds coordinates stacked on the first axis (shape (dim,) + grid), or a
    plain array of positions when dim == 1.  Profile:

        n(x,t) = t^{-dim b} (C - k0 |x|^2 t^{-2b})_+^{1/m'},
        m' = alpha,  b = 1/(dim alpha + 2),  k0 = alpha b / (2 (1+alpha)),

    with C fixed by int (C - k0 |y|^2)_+^{1/alpha} dy = mass via the
    Beta-integral identity int_{R^d} (1-|y|^2)_+^e dy
    = pi^{d/2} Gamma(e+1)/Gamma(e+1+d/2).
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    x = np.asarray(x, dtype=float)
    if dim == 1 and (x.ndim == 0 or x.shape[0] != 1):
        x = x[None, ...]
    if x.shape[0] != dim:
        raise ValueError(f"expected {dim} stacked coordinate arrays, got {x.shape}")
    e = 1.0 / alpha
    b = 1.0 / (dim * alpha + 2.0)
    k0 = alpha * b / (2.0 * (1.0 + alpha))
    j = np.pi ** (dim / 2.0) * gamma_fn(e + 1.0) / gamma_fn(e + 1.0 + dim / 2.0)
    big_c = (mass * k0 ** (dim / 2.0) / j) ** (1.0 / (e + dim / 2.0))
    r2 = np.sum(x * x, axis=0)
    core = np.maximum(big_c - k0 * r2 * t ** (-2.0 * b), 0.0)
    return t ** (-dim * b) * np.power(core, e)


# ---------------------------------------------------------------------------
# manufactured solution

@dataclass
class ManufacturedProblem:
    """Exact fields and matching forcings on a square periodic 2D box."""

    params: SimParams
    model: ChiKappaModel
    fields: Callable[[float], tuple]    # t -> (n, c, u)
    sources: Callable[[float], tuple]   # t -> (s_n, s_c, s_u)


def manufactured_problem(resolution: int = 32, alpha: float = 0.5,
                         tau: int = 1, rho: float = 0.05,
                         t_final: float = 0.1) -> ManufacturedProblem:
    """Build the standard manufactured problem at one resolution.

    The exact velocity is the swirl A(-cos x sin y, sin x cos y) g(t); on a
    square grid its central-difference divergence vanishes identically (the
    sinc factors of the two axes cancel), so the projection step is exercised
    without fighting the exact solution.  Amplitudes are kept small so the
    first-order upwind truncation stays subordinate to the second-order bulk.
    """
    import sympy as sp

    two_pi = 2.0 * np.pi
    spec = DomainSpec(2, "periodic", (two_pi, two_pi), (resolution, resolution))
    model = ChiKappaModel(chi_offset=0.05, chi_slope=0.02,
                          kappa_coeff=0.3, kappa_power=1.0)
    params = SimParams(alpha=alpha, tau=tau, rho=rho, t_final=t_final,
                       domain=spec, cfl_safety=0.4)

    x, y, t = sp.symbols("x y t")
    amp = sp.Rational(1, 50)
    n_e = 1 + sp.Rational(3, 10) * sp.sin(x) * sp.cos(y) * sp.cos(t)
    c_e = 1 + sp.Rational(1, 5) * sp.cos(x) * sp.sin(y) * sp.cos(t)
    g_t = 1 + sp.sin(t) / 2
    u1_e = -amp * sp.cos(x) * sp.sin(y) * g_t
    u2_e = amp * sp.sin(x) * sp.cos(y) * g_t
    chi_e = sp.Rational(1, 20) + sp.Rational(1, 50) * c_e

    def lap(f):
        return sp.diff(f, x, 2) + sp.diff(f, y, 2)

    adv_n = u1_e * sp.diff(n_e, x) + u2_e * sp.diff(n_e, y)
    s_n = (sp.diff(n_e, t) + adv_n - lap((n_e + rho) ** (1 + alpha))
           + sp.diff(chi_e * n_e * sp.diff(c_e, x), x)
           + sp.diff(chi_e * n_e * sp.diff(c_e, y), y))
    s_c = (sp.diff(c_e, t) + u1_e * sp.diff(c_e, x) + u2_e * sp.diff(c_e, y)
           - lap(c_e) + sp.Rational(3, 10) * c_e * n_e)
    conv1 = u1_e * sp.diff(u1_e, x) + u2_e * sp.diff(u1_e, y)
    conv2 = u1_e * sp.diff(u2_e, x) + u2_e * sp.diff(u2_e, y)
    s_u1 = sp.diff(u1_e, t) + tau * conv1 - lap(u1_e)
    s_u2 = sp.diff(u2_e, t) + tau * conv2 - lap(u2_e)

    lam = [sp.lambdify((x, y, t), f, modules="numpy")
           for f in (n_e, c_e, u1_e, u2_e, s_n, s_c, s_u1, s_u2)]
    xs, ys = mesh(spec)
    shape = spec.shape

    def _eval(fn, tv):
        return np.broadcast_to(np.asarray(fn(xs, ys, tv), dtype=float), shape).copy()

    def fields(tv: float):
        n = _eval(lam[0], tv)
        c = _eval(lam[1], tv)
        u = np.stack([_eval(lam[2], tv), _eval(lam[3], tv)])
        return n, c, u

    def sources(tv: float):
        sn = _eval(lam[4], tv)
        sc = _eval(lam[5], tv)
        su = np.stack([_eval(lam[6], tv), _eval(lam[7], tv)])
        return sn, sc, su

    return ManufacturedProblem(params, model, fields, sources)


def discrete_residuals(mp: ManufacturedProblem, t: float, delta: float = 1e-5):
    """Second-order finite-difference residual of the PDE on the exact fields.

    Independent check that the symbolic forcings are right: residual minus
    forcing must shrink as O(h^2) (plus O(delta^2) from the time difference).
    """
    from .grid import VectorField, divergence, gradient, laplacian

    spec = mp.params.domain
    rho, alpha, tau = mp.params.rho, mp.params.alpha, mp.params.tau
    n0, c0, u0 = mp.fields(t)
    n_p, c_p, u_p = mp.fields(t + delta)
    n_m, c_m, u_m = mp.fields(t - delta)

    def ddt(fp, fm):
        return (fp - fm) / (2.0 * delta)

    sf = lambda a: ScalarField(spec, a)
    grad_n = gradient(sf(n0)).data
    grad_c = gradient(sf(c0)).data
    chi = mp.model.eval_chi(c0)
    flux = VectorField(spec, np.stack([chi * n0 * grad_c[d] for d in range(2)]))
    r_n = (ddt(n_p, n_m)
           + sum(u0[d] * grad_n[d] for d in range(2))
           - laplacian(sf(np.power(n0 + rho, 1.0 + alpha))).data
           + divergence(flux).data)
    r_c = (ddt(c_p, c_m)
           + sum(u0[d] * grad_c[d] for d in range(2))
           - laplacian(sf(c0)).data
           + mp.model.eval_kappa(c0) * n0)
    r_u = []
    for d in range(2):
        grad_ud = gradient(sf(u0[d]), ghost="zero").data
        conv = sum(u0[e] * grad_ud[e] for e in range(2))
        r_u.append(ddt(u_p[d], u_m[d]) + tau * conv - laplacian(sf(u0[d])).data)
    return r_n, r_c, np.stack(r_u)


# ---------------------------------------------------------------------------
# study drivers (these DO run the solver; the closed forms above do not)

def uniform_consumption_study(dts=(4e-3, 2e-3, 1e-3), n_bar: float = 0.5,
                              c0: float = 1.0, kappa_coeff: float = 1.0,
                              t_final: float = 0.5):
    """Run the full stepper on uniform data for each dt; return
    [(dt, relative error vs the closed form)]."""
    from .solver import run

    spec = DomainSpec(1, "periodic", (2.0,), (8,))
    model = ChiKappaModel(chi_offset=1.0, chi_slope=0.0,
                          kappa_coeff=kappa_coeff, kappa_power=1.0)
    exact = uniform_state_ode(model, n_bar, c0, t_final)
    out = []
    for dt in dts:
        params = SimParams(alpha=0.5, tau=0, rho=0.5, t_final=t_final,
                           domain=spec, cfl_safety=1.0, dt_max=float(dt))
        initial = {"n": {"type": "constant", "value": n_bar},
                   "c": {"type": "constant", "value": c0},
                   "u": {"type": "zero"}}
        res = run(params, model, initial,
                  output={"sample_interval": t_final})
        c_num = float(np.mean(res.state.c.data))
        out.append((float(dt), abs(c_num - exact) / abs(exact)))
    return out


def barenblatt_convergence(resolutions=(64, 128, 256), alpha: float = 0.5,
                           length: float = 6.0, t0: float = 0.25,
                           t_run: float = 0.25, rho: float = 1e-6,
                           mass: float = 1.0):
    """L1 errors of the degenerate-diffusion front against the exact
    self-similar solution, one entry per resolution."""
    from .solver import run

    out = []
    for N in resolutions:
        spec = DomainSpec(1, "periodic", (length,), (int(N),))
        params = SimParams(alpha=alpha, tau=0, rho=rho, t_final=t_run,
                           domain=spec, cfl_safety=0.4)
        model = ChiKappaModel(chi_offset=1.0, chi_slope=0.0,
                              kappa_coeff=0.0, kappa_power=1.0)
        xs = cell_centers(spec)[0]
        n0 = barenblatt(alpha, mass, 1, t0, xs)
        initial = {"n": {"type": "array", "values": n0},
                   "c": {"type": "constant", "value": 0.0},
                   "u": {"type": "zero"}}
        res = run(params, model, initial, output={"sample_interval": t_run})
        exact = barenblatt(alpha, mass, 1, t0 + t_run, xs)
        err = float(np.sum(np.abs(res.state.n.data - exact))) * spec.spacing[0]
        out.append((int(N), err))
    return out


def manufactured_convergence(resolutions=(16, 32), alpha: float = 0.5,
                             t_end: float = 0.1, dt_factor: float = 0.2):
    """March the stepper with the manufactured forcings; return
    [(N, L2 error of n at t_end)].  dt scales with h^2 so the first-order
    time error rides below the second-order spatial measurement."""
    from .solver import FieldState, step
    from .grid import VectorField

    out = []
    for N in resolutions:
        mp = manufactured_problem(int(N), alpha=alpha, t_final=t_end)
        spec = mp.params.domain
        h = spec.spacing[0]
        n_steps = max(1, int(np.ceil(t_end / (dt_factor * h * h))))
        dt = t_end / n_steps
        n0, c0, u0 = mp.fields(0.0)
        state = FieldState(0.0, ScalarField(spec, n0), ScalarField(spec, c0),
                           VectorField(spec, u0),
                           ScalarField(spec, np.zeros(spec.shape)))
        for _ in range(n_steps):
            state = step(state, mp.params, mp.model, dt, sources=mp.sources)
        n_exact = mp.fields(state.t)[0]
        err = lp_norm(ScalarField(spec, state.n.data - n_exact), 2)
        out.append((int(N), err))
    return out
