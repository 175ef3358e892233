"""Frenet apparatus of arc-length curves in the unit sphere.

Covariant derivatives use the sphere connection nabla_T V = V' + <T, V> Gamma
and come from jets, so helix curvatures of the closed-form curves are exact to
numerical noise.  Osculating order is detected by Gram-Schmidt rank drop with
a hard dependence threshold and an explicit indeterminate band.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ambient import SasakianSphere, complex_structure
from .immersion import ParametricImmersion, _dotj, _dotv
from .jets import Jet

DEPENDENCE_TOL = 1e-8
INDETERMINATE_TOL = 1e-6
UNIT_SPEED_TOL = 1e-10


class FrenetError(ValueError):
    pass


@dataclass
class FrenetApparatus:
    """Order, curvature samples, and frame samples of a curve on a grid."""

    order: int
    points: np.ndarray                    # (N,) arc-length samples
    positions: np.ndarray                 # (N, dim)
    curvatures: list[np.ndarray]          # order-1 arrays of samples kappa_1..kappa_{r-1}
    frame: list[np.ndarray]               # E_1..E_r, each (N, dim)
    curvature_spreads: np.ndarray = field(default=None)
    frame_orthonormality: float = 0.0
    closure_residual: float = 0.0         # | nabla_T E_r + kappa_{r-1} E_{r-1} |
    dependence_residual: float = 0.0      # relative rank-drop residual at the detected order

    @property
    def curvature_values(self) -> list[float]:
        return [float(np.mean(k)) for k in self.curvatures]


def frenet(curve: ParametricImmersion, s_grid: np.ndarray, max_order: int = 4) -> FrenetApparatus:
    """Extract the Frenet frame and curvatures along an arc-length curve."""
    if curve.m != 1:
        raise ValueError("frenet expects a one-parameter immersion")
    if not 1 <= max_order <= 4:
        raise ValueError("max_order must be between 1 and 4")
    s = np.asarray(s_grid, dtype=float).reshape(-1, 1)
    acc = max_order + 1
    X = curve.jets(s, acc)

    # covariant derivative ladder v_0 = T, v_{j+1} = v_j' + <T, v_j> Gamma
    T = X.deriv(0)
    speed = np.sqrt(_dotv(T.value, T.value))
    if np.max(np.abs(speed - 1.0)) > UNIT_SPEED_TOL:
        raise FrenetError(
            f"curve is not arc-length parametrized (| |G'| - 1 | up to {float(np.max(np.abs(speed - 1.0))):.3e})"
        )
    ladder = [T]
    for _ in range(max_order):
        v = ladder[-1]
        a = v.acc - 1
        nxt = v.deriv(0) + _dotj(T.truncate(a), v.truncate(a)) * X.truncate(a)
        ladder.append(nxt)
    values = [v.value for v in ladder]

    # pointwise Gram-Schmidt with rank-drop detection
    frame_vals: list[np.ndarray] = []
    curvatures: list[np.ndarray] = []
    order = None
    dep_res = 0.0
    for j, vj in enumerate(values):
        w = vj.copy()
        for e in frame_vals:
            w -= _dotv(w, e)[:, None] * e
        norm_w = np.linalg.norm(w, axis=-1)
        scale = max(1.0, float(np.max(np.linalg.norm(vj, axis=-1))))
        rel = float(np.max(norm_w)) / scale
        if rel < DEPENDENCE_TOL:
            order = j
            dep_res = rel
            break
        if rel < INDETERMINATE_TOL:
            raise FrenetError(
                f"osculating order is numerically indeterminate at step {j} "
                f"(relative residual {rel:.3e} in [{DEPENDENCE_TOL:g}, {INDETERMINATE_TOL:g}])"
            )
        frame_vals.append(w / norm_w[:, None])
        if j >= 1:
            kappa = norm_w
            for kprev in curvatures:
                kappa = kappa / kprev
            curvatures.append(kappa)
    if order is None:
        order = len(values) - 1  # ladder exhausted at max_order; treat as order max_order
        frame_vals = frame_vals[:order]
        curvatures = curvatures[: order - 1]

    # frame of jets for the closure residual nabla_T E_r = -kappa_{r-1} E_{r-1}
    ortho = 0.0
    closure = 0.0
    if order >= 2:
        jet_frame: list[Jet] = []
        for j in range(order):
            w = ladder[j].truncate(1)
            for e in jet_frame:
                w = w - _dotj(w, e) * e
            jet_frame.append(w * _dotj(w, w).sqrt().reciprocal())
        Er = jet_frame[-1]
        dEr = Er.deriv(0).value + _dotv(T.value, Er.value)[:, None] * X.value
        closure = float(np.max(np.abs(dEr + curvatures[-1][:, None] * frame_vals[-2])))
        gram = np.einsum("nid,njd->nij", np.stack(frame_vals, 1), np.stack(frame_vals, 1))
        ortho = float(np.max(np.abs(gram - np.eye(order))))

    spreads = np.array([float(np.max(k) - np.min(k)) for k in curvatures])
    return FrenetApparatus(
        order=order,
        points=s.ravel(),
        positions=X.value,
        curvatures=curvatures,
        frame=frame_vals,
        curvature_spreads=spreads,
        frame_orthonormality=ortho,
        closure_residual=closure,
        dependence_residual=dep_res,
    )


def phi_alignment(apparatus: FrenetApparatus, space: SasakianSphere | None = None) -> float:
    """The constant g0(E_2, phi T) along the curve (requires order >= 2)."""
    if apparatus.order < 2:
        raise FrenetError("phi alignment needs osculating order at least 2")
    pos = apparatus.positions
    tangent = apparatus.frame[0]
    e2 = apparatus.frame[1]
    if space is not None:
        phi_t = space.phi(pos, tangent)
    else:
        jt = complex_structure(tangent)
        phi_t = jt - _dotv(jt, pos)[:, None] * pos
    vals = _dotv(e2, phi_t)
    spread = float(np.max(vals) - np.min(vals))
    if spread > 1e-8:
        raise FrenetError(f"g0(E_2, phi T) is not constant along the curve (spread {spread:.3e})")
    return float(np.mean(vals))
