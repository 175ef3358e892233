"""Explicit immersions: flat tori, Legendre curves, surfaces, and cylinders.

Every construction lands in the unit sphere of C^{n+1} in blocked real
coordinates (Re..., Im...).  Product-of-circles immersions carry their circle
profile (coefficients, frequency rows, defining unitary basis) so the circle
decomposition can cross-check the construction from ambient samples alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .immersion import ParametricImmersion, lattice_check  # noqa: F401  (re-export)
from .jets import Jet

SQ2 = math.sqrt(2.0)
SQ3 = math.sqrt(3.0)
SQ5 = math.sqrt(5.0)
SQ10 = math.sqrt(10.0)
SQ13 = math.sqrt(13.0)

# (lambda, alpha, gamma, delta) of the unique proper-biharmonic flat solution at c = 1
COROLLARY_TUPLE = (-1.0 / SQ5, 3.0 * SQ3 / SQ10, -SQ3 / SQ10, SQ2)

# the three flat (-4)-biharmonic solutions in the unit 7-sphere
MINUS4_TUPLES = (
    (-math.sqrt((4.0 - SQ13) / 3.0), math.sqrt((7.0 - SQ13) / 6.0), -math.sqrt((7.0 - SQ13) / 6.0), 0.0),
    (
        -math.sqrt(1.0 / (5.0 + 2.0 * SQ3)),
        math.sqrt((45.0 + 21.0 * SQ3) / 13.0),
        -math.sqrt(6.0 / (21.0 + 11.0 * SQ3)),
        0.0,
    ),
    (
        -math.sqrt(1.0 / (6.0 + SQ13)),
        math.sqrt((523.0 + 139.0 * SQ13) / 138.0),
        -math.sqrt((79.0 - 17.0 * SQ13) / 138.0),
        math.sqrt((14.0 + 2.0 * SQ13) / 3.0),
    ),
)

COROLLARY_LATTICE = (
    (6.0 * math.pi / SQ5, SQ3 * math.pi / SQ10, math.pi / SQ2),
    (0.0, -3.0 * SQ5 * math.pi / math.sqrt(6.0), -math.pi / SQ2),
    (0.0, 0.0, -4.0 * math.pi / SQ2),
)

S5_LATTICE = ((2.0 * math.pi, 0.0), (0.0, SQ2 * math.pi))

S5_CYLINDER_LATTICE = ((2.0 * math.pi, 0.0, 0.0), (0.0, 2.0 * math.pi, 0.0), (0.0, 0.0, SQ2 * math.pi))

# periods of the 4-torus cylinder in the transformed coordinates
T4_CYLINDER_LATTICE_TILDE = (
    (2.0 * math.pi / math.sqrt(6.0), 0.0, 0.0, 0.0),
    (0.0, 2.0 * math.pi / math.sqrt(6.0), 0.0, 0.0),
    (0.0, 0.0, 2.0 * math.pi / math.sqrt(6.0), 0.0),
    (0.0, 0.0, 0.0, 2.0 * math.pi / SQ2),
)

# first orthogonal change of variables for the 4-torus cylinder
T4_TRANSFORM_1 = np.array(
    [
        [1.0 / SQ2, 1.0 / SQ10, SQ3 / (2.0 * SQ5), 0.5],
        [0.0, 2.0 / SQ5, -math.sqrt(6.0) / (4.0 * SQ5), -SQ2 / 4.0],
        [0.0, 0.0, SQ5 / (2.0 * SQ2), -SQ3 / (2.0 * SQ2)],
        [1.0 / SQ2, -1.0 / SQ10, -SQ3 / (2.0 * SQ5), -0.5],
    ]
)

# second orthogonal change of variables (applied after the first)
T4_TRANSFORM_2 = np.array(
    [
        [SQ2 / math.sqrt(6.0), 2.0 / math.sqrt(6.0), 0.0, 0.0],
        [-SQ2 / math.sqrt(6.0), 1.0 / math.sqrt(6.0), -SQ3 / math.sqrt(6.0), 0.0],
        [-SQ2 / math.sqrt(6.0), 1.0 / math.sqrt(6.0), SQ3 / math.sqrt(6.0), 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ]
)

# domain rotation and unitary basis putting the 5-sphere cylinder in circle form
S5_CYL_TRANSFORM_1 = np.array(
    [[-1.0 / SQ2, 1.0 / SQ2, 0.0], [-1.0 / SQ2, -1.0 / SQ2, 0.0], [0.0, 0.0, 1.0]]
)
S5_CYL_TRANSFORM_2 = np.array(
    [[1.0, 0.0, 0.0], [0.0, 1.0 / SQ2, 1.0 / SQ2], [0.0, 1.0 / SQ2, -1.0 / SQ2]]
)
S5_CYL_BASIS = np.array(
    [[1.0, 0.0, 0.0], [0.0, 1.0 / SQ2, 1j / SQ2], [0.0, -1.0 / SQ2, 1j / SQ2]], dtype=complex
)


@dataclass(frozen=True)
class CircleProduct:
    """Radii and frequency rows of a product-of-circles torus."""

    radii: np.ndarray
    frequencies: np.ndarray

    def __post_init__(self):
        total = float(np.sum(self.radii**2))
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"circle radii must satisfy sum r^2 = 1, got {total!r}")


def validate_unitary(basis: np.ndarray, tol: float = 1e-14) -> np.ndarray:
    basis = np.asarray(basis, dtype=complex)
    gram = basis @ basis.conj().T
    dev = float(np.max(np.abs(gram - np.eye(basis.shape[0]))))
    if dev > tol:
        raise ValueError(f"basis rows are not Hermitian-orthonormal (|Gram - I| = {dev:.3e})")
    return basis


def random_unitary(size: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r))).conj()


def _stack(jets: list[Jet]) -> Jet:
    coef = np.concatenate([j.coef for j in jets], axis=-2)
    return Jet(jets[0].nvars, jets[0].acc, coef)


def circle_immersion(
    coefficients,
    frequencies,
    phases=None,
    basis=None,
    *,
    n: int | None = None,
    name: str = "",
    lattice=None,
    sample_box=None,
) -> ParametricImmersion:
    """Immersion sum_k coeff_k exp(i(<f_k, p> + theta_k)) E_k in a unitary basis."""
    coeff = np.asarray(coefficients, dtype=float)
    freqs = np.atleast_2d(np.asarray(frequencies, dtype=float))
    ncirc, m = freqs.shape
    if phases is None:
        phases = np.zeros(ncirc)
    phases = np.asarray(phases, dtype=float)
    if n is None:
        n = ncirc - 1
    if basis is None:
        basis = np.eye(n + 1, dtype=complex)
    basis = validate_unitary(basis)

    cre = coeff[:, None] * basis.real  # (ncirc, n+1)
    cim = coeff[:, None] * basis.imag

    def ev(us):
        phase_jets = []
        for k in range(ncirc):
            p = Jet.constant(phases[k], us[0].nvars, us[0].acc, lead_shape=us[0].value.shape)
            for i in range(m):
                if freqs[k, i] != 0.0:
                    p = p + us[i] * freqs[k, i]
            phase_jets.append(p)
        ph = _stack(phase_jets)  # (npts, ncirc, T)
        s, c = ph.sincos()
        re = np.einsum("...kt,kj->...jt", c.coef, cre) - np.einsum("...kt,kj->...jt", s.coef, cim)
        im = np.einsum("...kt,kj->...jt", s.coef, cre) + np.einsum("...kt,kj->...jt", c.coef, cim)
        return Jet(ph.nvars, ph.acc, np.concatenate([re, im], axis=-2))

    return ParametricImmersion(
        m=m,
        n=n,
        eval_fn=ev,
        name=name,
        lattice=lattice,
        sample_box=sample_box,
        basis=basis,
        circle_coefficients=coeff,
        circle_frequencies=freqs,
        circle_phases=phases,
    )


def _params(tup):
    if hasattr(tup, "lam"):
        return float(tup.lam), float(tup.alpha), float(tup.gamma), float(tup.delta)
    lam, alpha, gamma, delta = tup
    return float(lam), float(alpha), float(gamma), float(delta)


def flat_torus(c: float, tup, basis=None, name: str = "", lattice=None, sample_box=None) -> ParametricImmersion:
    """The flat 3-torus immersion attached to an admissible solution tuple.

    The four circle coefficients and frequency rows come straight from the
    closed-form position vector; the Tanno parameter is a = 4/(c+3).
    """
    lam, alpha, gamma, delta = _params(tup)
    if not c > -3.0:
        raise ValueError("phi-sectional curvature must exceed -3")
    a = 4.0 / (c + 3.0)

    rho_rad = 4.0 * gamma * (2.0 * gamma - alpha) + delta**2
    if rho_rad <= 0.0:
        raise ValueError("inadmissible tuple: 4 gamma (2 gamma - alpha) + delta^2 must be positive")
    root = math.sqrt(rho_rad)
    rho1 = 0.5 * (root + delta)
    rho2 = 0.5 * (root - delta)
    c2_rad = a * (gamma - alpha) * (2.0 * gamma - alpha)
    if c2_rad <= 0.0 or rho1 <= 0.0 or rho2 <= 0.0:
        raise ValueError("inadmissible tuple: negative radicand in a circle coefficient")

    coeff = np.array(
        [
            lam / math.sqrt(lam**2 + 1.0 / a),
            1.0 / math.sqrt(c2_rad),
            1.0 / math.sqrt(a * rho1 * (rho1 + rho2)),
            1.0 / math.sqrt(a * rho2 * (rho1 + rho2)),
        ]
    )
    freqs = np.array(
        [
            [1.0 / (a * lam), 0.0, 0.0],
            [-lam, gamma - alpha, 0.0],
            [-lam, -gamma, -rho1],
            [-lam, -gamma, rho2],
        ]
    )
    return circle_immersion(
        coeff,
        freqs,
        basis=basis,
        n=3,
        name=name or f"flat-torus(c={c:g})",
        lattice=lattice,
        sample_box=sample_box,
    )


def corollary_immersion(basis=None) -> ParametricImmersion:
    """The unique proper-biharmonic flat 3-torus in the unit 7-sphere."""
    box = (2.0 * math.pi * SQ5, 2.0 * math.pi * SQ10 / SQ3, 2.0 * SQ2 * math.pi)
    return flat_torus(
        1.0,
        COROLLARY_TUPLE,
        basis=basis,
        name="corollary-c1",
        lattice=COROLLARY_LATTICE,
        sample_box=box,
    )


def minus4_immersion(index: int, basis=None) -> ParametricImmersion:
    """The k-th flat (-4)-biharmonic 3-torus in the unit 7-sphere (k = 1, 2, 3)."""
    if index not in (1, 2, 3):
        raise ValueError("index must be 1, 2 or 3")
    return flat_torus(
        1.0,
        MINUS4_TUPLES[index - 1],
        basis=basis,
        name=f"minus4-{index}",
        sample_box=(2.0 * math.pi,) * 3,
    )


def s5_surface() -> ParametricImmersion:
    """The proper-biharmonic integral surface of the unit 5-sphere."""

    inv = 1.0 / SQ2

    def ev(us):
        su, cu = us[0].sincos()
        sv, cv = (us[1] * SQ2).sincos()
        re1, im1 = cu * inv, su * inv
        re2, im2 = su * sv * inv, cu * sv * inv
        re3, im3 = su * cv * inv, cu * cv * inv
        return _stack([re1, re2, re3, im1, im2, im3])

    return ParametricImmersion(
        m=2,
        n=2,
        eval_fn=ev,
        name="s5-surface",
        lattice=S5_LATTICE,
        sample_box=(2.0 * math.pi, SQ2 * math.pi),
    )


def trig_immersion(terms, m: int, n: int, name: str = "", sample_box=None) -> ParametricImmersion:
    """Immersion sum coeff * cos(<f, p> + theta) * vec for real ambient vectors."""
    data = [
        (float(cf), np.asarray(fr, dtype=float), float(th), np.asarray(vec, dtype=float))
        for cf, fr, th, vec in terms
    ]

    def ev(us):
        total = None
        for cf, fr, th, vec in data:
            p = Jet.constant(th, us[0].nvars, us[0].acc, lead_shape=us[0].value.shape)
            for i in range(m):
                if fr[i] != 0.0:
                    p = p + us[i] * fr[i]
            term = Jet(p.nvars, p.acc, p.cos().coef * (cf * vec)[:, None])
            total = term if total is None else total + term
        return total

    return ParametricImmersion(m=m, n=n, eval_fn=ev, name=name, sample_box=sample_box)


def helix_vectors(kappa1: float, sign: int = 1, alpha_pair=None) -> np.ndarray:
    """Constant vectors e_1..e_4 in R^6 for the proper-biharmonic Legendre helix.

    ``sign`` selects between the two admissible constructions
    e_2 = -sign (B/A) J e_1 + alpha_1 f + alpha_2 J f,  e_4 = sign J e_3.
    """
    if not 0.0 < kappa1 < 1.0:
        raise ValueError("helix curvature must lie in (0, 1)")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    A = math.sqrt(1.0 + kappa1)
    B = math.sqrt(1.0 - kappa1)
    if alpha_pair is None:
        alpha_pair = (math.sqrt(1.0 - B**2 / A**2), 0.0)
    a1, a2 = alpha_pair
    if abs(a1**2 + a2**2 - (1.0 - B**2 / A**2)) > 1e-12:
        raise ValueError("alpha_1^2 + alpha_2^2 must equal 1 - B^2/A^2")
    e1 = np.array([1.0, 0, 0, 0, 0, 0])
    e3 = np.array([0, 0, 1.0, 0, 0, 0])
    e2 = np.array([0.0, a1, 0.0, -sign * B / A, a2, 0.0])
    e4 = np.array([0, 0, 0, 0, 0, float(sign)])
    return np.stack([e1, e2, e3, e4])


def validate_helix_vectors(vectors: np.ndarray, kappa1: float) -> list[str]:
    """Orthonormality and J-compatibility conditions; returns violated ones."""
    from .ambient import complex_structure

    A = math.sqrt(1.0 + kappa1)
    B = math.sqrt(1.0 - kappa1)
    e = np.asarray(vectors, dtype=float)
    bad = []
    gram = e @ e.T
    if np.max(np.abs(gram - np.eye(4))) > 1e-12:
        bad.append("e_1..e_4 are not orthonormal")
    J = complex_structure
    for i, j in [(0, 2), (0, 3), (1, 2), (1, 3)]:
        if abs(np.dot(e[i], J(e[j]))) > 1e-12:
            bad.append(f"<e_{i+1}, J e_{j+1}> != 0")
    balance = A * np.dot(e[0], J(e[1])) + B * np.dot(e[2], J(e[3]))
    if abs(balance) > 1e-12:
        bad.append("A<e_1, J e_2> + B<e_3, J e_4> != 0")
    return bad


def legendre_curve(kind: str, kappa1: float | None = None, vectors=None, sign: int = 1) -> ParametricImmersion:
    """Proper-biharmonic Legendre curve: arc-length circle or order-4-frame helix.

    The circle lives in the 7-sphere on three J-orthonormal directions; the
    helix uses the explicit 5-sphere construction (or caller-given vectors,
    which are validated against the orthogonality conditions).
    """
    inv = 1.0 / SQ2
    if kind == "circle":
        n = 3
        dim = 2 * n + 2
        e1, e2, e3 = np.eye(dim)[0], np.eye(dim)[1], np.eye(dim)[2]
        terms = [
            (inv, (SQ2,), 0.0, e1),
            (inv, (SQ2,), -math.pi / 2.0, e2),
            (inv, (0.0,), 0.0, e3),
        ]
        return trig_immersion(terms, m=1, n=n, name="legendre-circle", sample_box=(SQ2 * math.pi,))
    if kind == "helix":
        if kappa1 is None:
            raise ValueError("helix requires kappa1 in (0, 1)")
        if vectors is None:
            vectors = helix_vectors(kappa1, sign=sign)
        vectors = np.asarray(vectors, dtype=float)
        bad = validate_helix_vectors(vectors, kappa1)
        if bad:
            raise ValueError("helix vector conditions violated: " + "; ".join(bad))
        A = math.sqrt(1.0 + kappa1)
        B = math.sqrt(1.0 - kappa1)
        n = vectors.shape[1] // 2 - 1
        terms = [
            (inv, (A,), 0.0, vectors[0]),
            (inv, (A,), -math.pi / 2.0, vectors[1]),
            (inv, (B,), 0.0, vectors[2]),
            (inv, (B,), -math.pi / 2.0, vectors[3]),
        ]
        return trig_immersion(
            terms, m=1, n=n, name=f"legendre-helix:{kappa1:g}", sample_box=(2.0 * math.pi,)
        )
    raise ValueError(f"unknown Legendre curve kind {kind!r}")


def great_circle(n: int = 3) -> ParametricImmersion:
    """Legendre great circle (geodesic) for negative controls."""
    dim = 2 * n + 2
    e1, e2 = np.eye(dim)[0], np.eye(dim)[1]
    terms = [(1.0, (1.0,), 0.0, e1), (1.0, (1.0,), -math.pi / 2.0, e2)]
    return trig_immersion(terms, m=1, n=n, name="great-circle", sample_box=(2.0 * math.pi,))


def cylinder(F: ParametricImmersion) -> ParametricImmersion:
    """Flow cylinder (t, p) -> exp(-i t) F(p); domain dimension grows by one."""
    half = F.n + 1

    def ev(us):
        inner = F.eval_fn(us[1:])
        st, ct = us[0].sincos()
        re = Jet(inner.nvars, inner.acc, inner.coef[..., :half, :])
        im = Jet(inner.nvars, inner.acc, inner.coef[..., half:, :])
        new_re = re * ct + im * st
        new_im = im * ct - re * st
        return Jet(inner.nvars, inner.acc, np.concatenate([new_re.coef, new_im.coef], axis=-2))

    freqs = None
    if F.circle_frequencies is not None:
        freqs = np.concatenate(
            [-np.ones((F.circle_frequencies.shape[0], 1)), F.circle_frequencies], axis=1
        )
    box = (2.0 * math.pi,) + tuple(F.sample_box or (2.0 * math.pi,) * F.m)
    return ParametricImmersion(
        m=F.m + 1,
        n=F.n,
        eval_fn=ev,
        name=f"cylinder({F.name})" if F.name else "cylinder",
        sample_box=box,
        basis=F.basis,
        circle_coefficients=F.circle_coefficients,
        circle_frequencies=freqs,
        circle_phases=F.circle_phases,
    )


def precompose_linear(F: ParametricImmersion, A: np.ndarray, name: str = "", sample_box=None) -> ParametricImmersion:
    """The immersion q -> F(A q) for a linear change of parameters A."""
    A = np.asarray(A, dtype=float)
    if A.shape != (F.m, F.m):
        raise ValueError("parameter transform has wrong shape")

    def ev(us):
        new = []
        for i in range(F.m):
            acc = None
            for j in range(F.m):
                if A[i, j] == 0.0:
                    continue
                term = us[j] * A[i, j]
                acc = term if acc is None else acc + term
            if acc is None:
                acc = Jet.constant(0.0, us[0].nvars, us[0].acc, lead_shape=us[0].value.shape)
            new.append(acc)
        return F.eval_fn(new)

    freqs = None
    if F.circle_frequencies is not None:
        freqs = F.circle_frequencies @ A
    return ParametricImmersion(
        m=F.m,
        n=F.n,
        eval_fn=ev,
        name=name or f"{F.name}∘A",
        sample_box=sample_box or (2.0 * math.pi,) * F.m,
        basis=F.basis,
        circle_coefficients=F.circle_coefficients,
        circle_frequencies=freqs,
        circle_phases=F.circle_phases,
    )


def coordinate_curve(F: ParametricImmersion, axis: int, base_point) -> ParametricImmersion:
    """The coordinate curve through base_point: the axis parameter becomes s."""
    base = np.asarray(base_point, dtype=float)
    if base.shape != (F.m,):
        raise ValueError("base point has wrong dimension")

    def ev(us):
        params = []
        for i in range(F.m):
            if i == axis:
                params.append(us[0])
            else:
                params.append(Jet.constant(base[i], us[0].nvars, us[0].acc, lead_shape=us[0].value.shape))
        return F.eval_fn(params)

    box = (F.sample_box or (2.0 * math.pi,) * F.m)[axis]
    return ParametricImmersion(
        m=1, n=F.n, eval_fn=ev, name=f"{F.name}:curve{axis}", sample_box=(box,)
    )


def circle_decomposition(
    F: ParametricImmersion, pts: np.ndarray | None = None, per_axis: int = 5, tol: float = 1e-10, basis=None
) -> CircleProduct:
    """Read radii and frequency rows off an immersion of circle-product type.

    Each complex coordinate in the defining basis must have constant modulus
    and affine phase over the grid; anything else raises ValueError.
    """
    if pts is None:
        pts = F.grid(per_axis)
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    X = F.jets(pts, 1)
    half = F.n + 1
    if basis is None:
        basis = F.basis if F.basis is not None else np.eye(half, dtype=complex)
    basis = validate_unitary(np.asarray(basis, dtype=complex))

    xval = X.value
    z = (xval[:, :half] + 1j * xval[:, half:]) @ basis.conj().T
    moduli = np.abs(z)
    spread = np.max(moduli, axis=0) - np.min(moduli, axis=0)
    if np.max(spread) > tol:
        raise ValueError(
            f"complex coordinate modulus is not constant (spread {float(np.max(spread)):.3e}); "
            "not a torus of circle-product form in this basis"
        )
    radii = np.mean(moduli, axis=0)

    freqs = np.empty((half, F.m))
    for i in range(F.m):
        dv = X.deriv(i).value
        dz = (dv[:, :half] + 1j * dv[:, half:]) @ basis.conj().T
        omega = np.imag(np.conj(z) * dz) / moduli**2
        w_spread = np.max(omega, axis=0) - np.min(omega, axis=0)
        if np.max(w_spread) > 1e-8:
            raise ValueError("phase is not affine in the parameters; not a circle product")
        freqs[:, i] = np.mean(omega, axis=0)

    return CircleProduct(radii=radii, frequencies=freqs)
