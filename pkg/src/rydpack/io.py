"""On-disk formats for states, expansions, time series and density snapshots.

Numeric text output always carries 17 significant digits so files round-trip
bit-exactly and identical configurations produce byte-identical artifacts.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .spectral import EigenExpansion
from .squeezed import RadialSqueezedState
from .units import au_to_ns

__all__ = [
    "write_state",
    "read_state",
    "write_expansion",
    "read_expansion",
    "write_series",
    "write_density",
    "read_density",
]

SERIES_COLUMNS = (
    "t_au",
    "t_ns",
    "dr",
    "dpr",
    "product",
    "ratio",
    "dR",
    "dP",
    "bound_half_rm2",
    "autocorrelation",
)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_state(path, nbar: int, l: int, state: RadialSqueezedState) -> None:
    record = {
        "nbar": int(nbar),
        "l": int(l),
        "alpha": float(state.alpha),
        "gamma0": float(state.gamma0),
        "gamma1": float(state.gamma1),
        "log_norm": float(state.log_norm),
    }
    Path(path).write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")


def read_state(path):
    record = json.loads(Path(path).read_text())
    state = RadialSqueezedState(
        alpha=record["alpha"],
        gamma0=record["gamma0"],
        gamma1=record["gamma1"],
        log_norm=record["log_norm"],
    )
    return int(record["nbar"]), int(record["l"]), state


def write_expansion(path, exp: EigenExpansion) -> None:
    lines = [
        "l,n_min,n_max,deficit",
        f"{exp.l},{exp.n_min},{exp.n_max},{_fmt(exp.deficit)}",
        "n,re,im",
    ]
    for n, c in zip(exp.ns, exp.coeffs):
        lines.append(f"{int(n)},{_fmt(c.real)},{_fmt(c.imag)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_expansion(path) -> EigenExpansion:
    lines = Path(path).read_text().splitlines()
    if len(lines) < 3 or lines[0] != "l,n_min,n_max,deficit" or lines[2] != "n,re,im":
        raise ValueError(f"{path}: not an expansion file")
    l_s, nmin_s, nmax_s, deficit_s = lines[1].split(",")
    rows = [line.split(",") for line in lines[3:] if line]
    ns = [int(r[0]) for r in rows]
    if ns != list(range(int(nmin_s), int(nmax_s) + 1)):
        raise ValueError(f"{path}: coefficient rows do not match the declared window")
    coeffs = np.array([complex(float(r[1]), float(r[2])) for r in rows])
    return EigenExpansion(
        l=int(l_s),
        n_min=int(nmin_s),
        n_max=int(nmax_s),
        coeffs=coeffs,
        deficit=float(deficit_s),
    )


def write_series(path, records, autocorrelations) -> None:
    """One row per time point: UncertaintyRecord fields plus autocorrelation."""
    lines = [",".join(SERIES_COLUMNS)]
    for rec, ac in zip(records, autocorrelations):
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    rec.t,
                    au_to_ns(rec.t),
                    rec.dr,
                    rec.dpr,
                    rec.product,
                    rec.ratio,
                    rec.dR,
                    rec.dP,
                    rec.bound_half_rm2,
                    ac,
                )
            )
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_density(path, r, f, t_au: float) -> None:
    lines = [f"# t_au={_fmt(t_au)} t_ns={_fmt(au_to_ns(t_au))}", "r,f"]
    lines.extend(f"{_fmt(ri)},{_fmt(fi)}" for ri, fi in zip(r, f))
    Path(path).write_text("\n".join(lines) + "\n")


def read_density(path):
    lines = Path(path).read_text().splitlines()
    if len(lines) < 2 or not lines[0].startswith("# t_au=") or lines[1] != "r,f":
        raise ValueError(f"{path}: not a density file")
    t_au = float(lines[0].split()[1].split("=")[1])
    data = np.array([[float(v) for v in line.split(",")] for line in lines[2:] if line])
    return t_au, data[:, 0], data[:, 1]
