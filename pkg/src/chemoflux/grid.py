"""Cell-centered finite-difference grid: fields, operators, quadrature, IO.

All fields live at cell centers of a uniform grid on an origin-centered box,
x_i = -L/2 + (i+1/2)h per axis.  Stencils are 2nd-order central differences.
Boundary closure is by ghost cells:

  periodic  wrap-around for everything
  neumann   "mirror" ghosts (copy the adjacent interior cell, so the normal
            derivative vanishes at the wall) for scalar quantities, "zero"
            ghosts for velocity components (no-slip walls), "odd" ghosts
            (sign-flipped mirror) for quantities antisymmetric at a wall,
            such as the normal component of a scalar's gradient

`laplacian` is defined literally as divergence(gradient(.)), which makes the
operator-compatibility identity exact by construction; the price is a wider
(+-2h) stencil, still 2nd order.  The compact 5/7-point stencil is used only
inside the implicit solves (see solver), where its M-matrix sign structure is
what preserves positivity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .model import DomainSpec

__all__ = [
    "ScalarField", "VectorField", "shifted", "diff_central", "gradient",
    "divergence", "laplacian", "integrate", "lp_norm", "cell_centers", "mesh",
    "save_field", "load_field",
]


@dataclass
class ScalarField:
    domain: DomainSpec
    data: np.ndarray

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.float64)
        if self.data.shape != self.domain.shape:
            raise ValueError(
                f"field shape {self.data.shape} does not match domain {self.domain.shape}")


@dataclass
class VectorField:
    """Component-stacked vector field, data shape (dim,) + grid shape."""

    domain: DomainSpec
    data: np.ndarray

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.float64)
        want = (self.domain.dim,) + self.domain.shape
        if self.data.shape != want:
            raise ValueError(f"vector field shape {self.data.shape}, expected {want}")


def _edge(values: np.ndarray, axis: int, last: bool) -> np.ndarray:
    idx = [slice(None)] * values.ndim
    idx[axis] = slice(-1, None) if last else slice(0, 1)
    return values[tuple(idx)]


def shifted(values: np.ndarray, spec: DomainSpec, axis: int, offset: int,
            ghost: str = "mirror") -> np.ndarray:
    """values[i+offset] along `axis` (offset +-1), ghost-filled at the walls.

    `axis` indexes grid axes; pass arrays whose trailing dims are the grid
    (leading component axes are fine, the axis is counted from the end).
    """
    ax = values.ndim - spec.dim + axis
    if spec.mode == "periodic":
        return np.roll(values, -offset, axis=ax)
    if ghost not in ("mirror", "zero", "odd"):
        raise ValueError(f"unknown ghost mode {ghost!r}")
    idx = [slice(None)] * values.ndim

    def _pad(last: bool) -> np.ndarray:
        edge = _edge(values, ax, last=last)
        if ghost == "mirror":
            return edge
        if ghost == "odd":            # sign-flipped mirror (odd extension)
            return -edge
        return np.zeros_like(edge)

    if offset == 1:
        idx[ax] = slice(1, None)
        order = (values[tuple(idx)], _pad(last=True))
    elif offset == -1:
        idx[ax] = slice(None, -1)
        order = (_pad(last=False), values[tuple(idx)])
    else:
        raise ValueError(f"offset must be +-1, got {offset}")
    return np.concatenate(order, axis=ax)


def diff_central(values: np.ndarray, spec: DomainSpec, axis: int,
                 ghost: str = "mirror") -> np.ndarray:
    """(f[i+1] - f[i-1]) / 2h along one axis, on raw arrays."""
    h = spec.spacing[axis]
    return (shifted(values, spec, axis, 1, ghost)
            - shifted(values, spec, axis, -1, ghost)) / (2.0 * h)


def gradient(f: ScalarField, ghost: str = "mirror") -> VectorField:
    """Central-difference gradient; mirror ghosts by default (scalar fields)."""
    comps = [diff_central(f.data, f.domain, d, ghost) for d in range(f.domain.dim)]
    return VectorField(f.domain, np.stack(comps))


def divergence(v: VectorField, ghost: str = "zero") -> ScalarField:
    """Central-difference divergence; zero ghosts by default (velocity)."""
    spec = v.domain
    out = np.zeros(spec.shape)
    for d in range(spec.dim):
        out += diff_central(v.data[d], spec, d, ghost)
    return ScalarField(spec, out)


def laplacian(f: ScalarField) -> ScalarField:
    # Literal composition, so operator compatibility is exact by construction.
    # The outer stage extends the gradient with odd ghosts: a scalar obeying
    # the wall mirror has an odd normal gradient there, and any even ghost
    # choice would cost an O(1) wall error.
    return divergence(gradient(f), ghost="odd")


def integrate(f: ScalarField) -> float:
    """Midpoint-rule integral over the box (exact for cell-center samples)."""
    return float(np.sum(f.data)) * f.domain.cell_volume


def lp_norm(f: ScalarField | VectorField, p: float) -> float:
    """L^p norm; vector fields use the pointwise Euclidean magnitude.

    p = inf returns max |f|; p < 1 is rejected (not a norm).
    """
    if isinstance(f, VectorField):
        mag = np.sqrt(np.sum(f.data * f.data, axis=0))
    else:
        mag = np.abs(f.data)
    if p == np.inf:
        return float(np.max(mag))
    if p < 1:
        raise ValueError(f"lp_norm requires p >= 1 or p = inf, got {p}")
    vol = f.domain.cell_volume
    return float(np.sum(mag ** p) * vol) ** (1.0 / p)


@lru_cache(maxsize=64)
def cell_centers(spec: DomainSpec) -> tuple[np.ndarray, ...]:
    """Per-axis 1D arrays of cell-center coordinates."""
    out = []
    for L, N, h in zip(spec.lengths, spec.resolution, spec.spacing):
        out.append(-0.5 * L + (np.arange(N) + 0.5) * h)
    return tuple(out)


@lru_cache(maxsize=64)
def mesh(spec: DomainSpec) -> tuple[np.ndarray, ...]:
    """Broadcastable (sparse meshgrid) coordinate arrays."""
    return tuple(np.meshgrid(*cell_centers(spec), indexing="ij", sparse=True))


# ---------------------------------------------------------------------------
# snapshot IO: raw little-endian float64 (C order) + JSON sidecar

def _paths(path) -> tuple[Path, Path]:
    base = Path(path)
    if base.suffix in (".f64", ".json"):
        base = base.with_suffix("")
    return base.with_suffix(".f64"), base.with_suffix(".json")


def save_field(f: ScalarField, path, name: str, time: float) -> Path:
    raw, side = _paths(path)
    raw.write_bytes(np.ascontiguousarray(f.data, dtype="<f8").tobytes())
    meta = {
        "field": name,
        "time": float(time),
        "dim": f.domain.dim,
        "mode": f.domain.mode,
        "resolution": list(f.domain.resolution),
        "lengths": list(f.domain.lengths),
    }
    side.write_text(json.dumps(meta, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    return raw


def load_field(path, domain: DomainSpec | None = None) -> tuple[ScalarField, dict]:
    """Read a snapshot back; validates shape against `domain` when given."""
    raw, side = _paths(path)
    meta = json.loads(side.read_text(encoding="utf-8"))
    shape = tuple(meta["resolution"])
    data = np.frombuffer(raw.read_bytes(), dtype="<f8").reshape(shape)
    if domain is not None:
        if tuple(domain.resolution) != shape:
            raise ValueError(
                f"snapshot resolution {shape} does not match domain {domain.resolution}")
        if list(domain.lengths) != [float(L) for L in meta["lengths"]]:
            raise ValueError(
                f"snapshot lengths {meta['lengths']} do not match domain {domain.lengths}")
        spec = domain
    else:
        spec = DomainSpec(meta["dim"], meta.get("mode", "periodic"),
                          tuple(meta["lengths"]), shape)
    return ScalarField(spec, data.copy()), meta
