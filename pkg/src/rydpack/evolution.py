"""Spectral time evolution, density sampling and time-dependent observables.

Propagation is exact in the bound-state basis: each coefficient picks up the
phase exp(-i E_n t).  Radial-momentum moments use the analytic derivative of
the eigenfunctions, never finite differences of sampled values.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import simpson

from .specfun import NumericalError, hydrogen_radial, hydrogen_radial_pr
from .spectral import EigenExpansion

__all__ = [
    "RadialGrid",
    "UncertaintyRecord",
    "BasisTable",
    "evolve",
    "autocorrelation",
    "density",
    "observables",
]


@dataclass(frozen=True)
class RadialGrid:
    """Strictly increasing sample radii in bohr."""

    points: np.ndarray
    description: str = "custom"

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 3:
            raise ValueError("grid needs at least 3 points")
        if pts[0] < 0 or np.any(np.diff(pts) <= 0):
            raise ValueError("grid points must be non-negative and strictly increasing")
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, r_max: float, n_points: int) -> "RadialGrid":
        return cls(
            points=np.linspace(0.0, float(r_max), int(n_points)),
            description=f"uniform[0,{r_max:g}]x{n_points}",
        )

    @property
    def r_max(self) -> float:
        return float(self.points[-1])


@dataclass(frozen=True)
class UncertaintyRecord:
    """Uncertainties of one evolved state at time t (atomic units throughout).

    ``product`` = dr * dpr, ``ratio`` = dr / dpr (bohr^2), and
    ``bound_half_rm2`` = <r^-2>/2 is the lower bound on dR * dP.
    """

    t: float
    dr: float
    dpr: float
    product: float
    ratio: float
    dR: float
    dP: float
    bound_half_rm2: float


class BasisTable:
    """Eigenfunction values and (d/dr + 1/r) values tabulated on fixed radii.

    Building the table costs one Laguerre recurrence per level; evaluating an
    evolved wavefunction afterwards is a single matrix-vector product, so one
    table serves any number of time points.
    """

    def __init__(self, ns, l, points, values, momentum):
        self.ns = ns
        self.l = l
        self.points = points
        self.values = values
        self.momentum = momentum

    @classmethod
    def build(cls, ns, l: int, points) -> "BasisTable":
        points = np.asarray(points, dtype=float)
        values = np.empty((len(ns), points.size))
        momentum = np.empty_like(values)
        for i, n in enumerate(ns):
            values[i] = hydrogen_radial(int(n), l, points)
            momentum[i] = hydrogen_radial_pr(int(n), l, points)
        return cls(np.asarray(ns), l, points, values, momentum)

    @classmethod
    def for_expansion(cls, exp: EigenExpansion, grid: RadialGrid) -> "BasisTable":
        return cls.build(exp.ns, exp.l, grid.points)

    def matches(self, exp: EigenExpansion, grid: RadialGrid) -> bool:
        return (
            self.l == exp.l
            and self.ns.size == exp.ns.size
            and np.array_equal(self.ns, exp.ns)
            and self.points.size == grid.points.size
            and np.array_equal(self.points, grid.points)
        )


def _table_for(exp, grid, basis):
    if basis is None:
        return BasisTable.for_expansion(exp, grid)
    if not basis.matches(exp, grid):
        raise ValueError("basis table does not match the expansion/grid pair")
    return basis


def evolve(exp: EigenExpansion, t: float) -> EigenExpansion:
    """Multiply each coefficient by exp(-i E_n t); the deficit is unchanged."""
    phases = np.exp(-1j * exp.energies * t)
    return replace(exp, coeffs=exp.coeffs * phases)


def autocorrelation(exp: EigenExpansion, t: float) -> float:
    """|<psi(0)|psi(t)>|^2 within the expansion, normalized to 1 at t = 0."""
    p = np.abs(exp.coeffs) ** 2
    s = p.sum()
    if s == 0.0:
        raise ValueError("empty expansion has no autocorrelation")
    amp = np.dot(p, np.exp(-1j * exp.energies * t))
    return float(abs(amp) ** 2 / s**2)


def density(exp: EigenExpansion, grid: RadialGrid, t: float = 0.0, basis: BasisTable | None = None):
    """Radial probability density f(r) = r^2 |psi_t(r)|^2 on the grid."""
    basis = _table_for(exp, grid, basis)
    coeff_t = exp.coeffs * np.exp(-1j * exp.energies * t)
    amp = coeff_t @ basis.values
    return grid.points**2 * np.abs(amp) ** 2


def observables(
    exp: EigenExpansion,
    t: float,
    grid: RadialGrid,
    basis: BasisTable | None = None,
    norm_tol: float = 1e-6,
) -> UncertaintyRecord:
    """Grid-integrated uncertainties of the evolved state at time t.

    The grid-resolution guard requires the integrated norm to match the
    captured weight sum |c_n|^2 to ``norm_tol``; failure raises NumericalError.
    Moments are normalized by the integrated norm so shared quadrature error
    cancels between numerator and denominator.
    """
    basis = _table_for(exp, grid, basis)
    r = grid.points
    coeff_t = exp.coeffs * np.exp(-1j * exp.energies * t)
    psi = coeff_t @ basis.values
    dpsi = coeff_t @ basis.momentum

    abs2 = np.abs(psi) ** 2
    dens = abs2 * r**2
    norm = simpson(dens, x=r)
    weight = exp.weight
    if abs(norm - weight) > norm_tol:
        raise NumericalError(
            f"grid too coarse at t={t:g}: integrated norm {norm:.9f} vs "
            f"captured weight {weight:.9f} (tolerance {norm_tol:g})"
        )

    m1 = simpson(dens * r, x=r) / norm
    m2 = simpson(dens * r**2, x=r) / norm
    w1 = simpson(abs2 * r, x=r) / norm
    w2 = simpson(abs2, x=r) / norm
    pr = simpson(np.imag(np.conj(psi) * dpsi) * r**2, x=r) / norm
    pr2 = simpson(np.abs(dpsi) ** 2 * r**2, x=r) / norm

    dr = np.sqrt(max(m2 - m1 * m1, 0.0))
    dpr = np.sqrt(max(pr2 - pr * pr, 0.0))
    dR = np.sqrt(max(w2 - w1 * w1, 0.0))
    return UncertaintyRecord(
        t=float(t),
        dr=float(dr),
        dpr=float(dpr),
        product=float(dr * dpr),
        ratio=float(dr / dpr),
        dR=float(dR),
        dP=float(dpr),
        bound_half_rm2=float(0.5 * w2),
    )
