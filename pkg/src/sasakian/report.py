"""Verification report assembly for the registered example immersions.

Each registered name maps to an immersion plus the full check suite its
construction is supposed to satisfy (unit norm, integral condition,
C-parallelism, normal Laplacian identity, bitension, Frenet data, lattices,
circle decompositions, coordinate-Laplacian eigenvalues).  Reports serialize
to JSON (round-trip stable), CSV (``check,residual,tolerance,pass``) and
plain text.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import catalog, classifier, immersion as imm
from .ambient import complex_structure
from .frenet import frenet, phi_alignment

SQ2, SQ3, SQ5, SQ13 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(5.0), math.sqrt(13.0)

EXAMPLE_NAMES = (
    "corollary-c1",
    "s5-surface",
    "cylinder-c1",
    "cylinder-s5",
    "legendre-circle",
    "legendre-helix:<kappa1>",
    "minus4-1",
    "minus4-2",
    "minus4-3",
    "cylinder-minus4-1",
    "cylinder-minus4-2",
    "cylinder-minus4-3",
)

# closed forms recognized when printing radicals symbolically
SYMBOLIC_FORMS: tuple[tuple[float, str], ...] = (
    (-1.0 / SQ5, "-1/sqrt(5)"),
    (3.0 * SQ3 / math.sqrt(10.0), "3*sqrt(3)/sqrt(10)"),
    (-SQ3 / math.sqrt(10.0), "-sqrt(3)/sqrt(10)"),
    (SQ2, "sqrt(2)"),
    (4.0 / SQ5, "4*sqrt(5)/5"),
    (1.0, "1"),
    (math.sqrt(29.0 / 10.0), "sqrt(29)/sqrt(10)"),
    (9.0 * SQ2 / math.sqrt(145.0), "9*sqrt(2)/sqrt(145)"),
    (2.0 * SQ3 / math.sqrt(145.0), "2*sqrt(3)/sqrt(145)"),
    (SQ5 / SQ2, "sqrt(5)/sqrt(2)"),
    (2.0 * SQ3 / math.sqrt(10.0), "2*sqrt(3)/sqrt(10)"),
    (SQ3 / math.sqrt(10.0), "sqrt(3)/sqrt(10)"),
    (2.0 / 3.0, "2/3"),
    (0.5, "1/2"),
    (1.0 / SQ2, "1/sqrt(2)"),
    (1.0 / math.sqrt(6.0), "1/sqrt(6)"),
    (SQ3 / 2.0, "sqrt(3)/2"),
    (-math.sqrt((4.0 - SQ13) / 3.0), "-sqrt((4-sqrt(13))/3)"),
    (math.sqrt((7.0 - SQ13) / 6.0), "sqrt((7-sqrt(13))/6)"),
    (-math.sqrt((7.0 - SQ13) / 6.0), "-sqrt((7-sqrt(13))/6)"),
    (-math.sqrt(1.0 / (5.0 + 2.0 * SQ3)), "-sqrt(1/(5+2*sqrt(3)))"),
    (math.sqrt((45.0 + 21.0 * SQ3) / 13.0), "sqrt((45+21*sqrt(3))/13)"),
    (-math.sqrt(6.0 / (21.0 + 11.0 * SQ3)), "-sqrt(6/(21+11*sqrt(3)))"),
    (-math.sqrt(1.0 / (6.0 + SQ13)), "-sqrt(1/(6+sqrt(13)))"),
    (math.sqrt((523.0 + 139.0 * SQ13) / 138.0), "sqrt((523+139*sqrt(13))/138)"),
    (-math.sqrt((79.0 - 17.0 * SQ13) / 138.0), "-sqrt((79-17*sqrt(13))/138)"),
    (math.sqrt((14.0 + 2.0 * SQ13) / 3.0), "sqrt((14+2*sqrt(13))/3)"),
    (math.sqrt((5.0 - SQ13) / 12.0), "sqrt((5-sqrt(13))/12)"),
    (math.sqrt((7.0 + SQ13) / 36.0), "sqrt((7+sqrt(13))/36)"),
    (math.sqrt((3.0 + SQ3) / 12.0), "sqrt((3+sqrt(3))/12)"),
    (math.sqrt((3.0 - SQ3) / 12.0), "sqrt((3-sqrt(3))/12)"),
    (math.sqrt((5.0 + SQ13) / 12.0), "sqrt((5+sqrt(13))/12)"),
    (math.sqrt((7.0 - SQ13) / 36.0), "sqrt((7-sqrt(13))/36)"),
    ((SQ13 - 1.0) / math.sqrt(12.0 - 3.0 * SQ13), "(sqrt(13)-1)/sqrt(12-3*sqrt(13))"),
    (math.sqrt(3.0 / (7.0 - SQ13)), "sqrt(3/(7-sqrt(13)))"),
)


def symbolize(value: float) -> str | None:
    for v, s in SYMBOLIC_FORMS:
        if abs(value - v) <= 1e-12 * max(1.0, abs(v)):
            return s
    return None


def format_value(value: float) -> dict:
    out = {"value": float(value), "decimal": f"{value:.17g}"}
    sym = symbolize(value)
    if sym is not None:
        out["symbolic"] = sym
    return out


@dataclass
class VerificationReport:
    subject: str
    checks: list[imm.CheckResult] = field(default_factory=list)
    computed: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: imm.CheckResult, tol_override: float | None = None):
        if tol_override is not None:
            check = imm.CheckResult(check.name, check.residual, tol_override, extra=check.extra)
        self.checks.append(check)

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "checks": [
                {
                    "name": c.name,
                    "residual": float(c.residual),
                    "tolerance": float(c.tolerance),
                    "pass": bool(c.passed),
                }
                for c in self.checks
            ],
            "computed": self.computed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("check,residual,tolerance,pass\n")
        for c in self.checks:
            buf.write(f"{c.name},{c.residual:.17g},{c.tolerance:.17g},{str(c.passed).lower()}\n")
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"subject: {self.subject}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{status}] {c.name:32s} residual {c.residual:9.3e}  (tol {c.tolerance:g})")
        for key, val in sorted(self.computed.items()):
            lines.append(f"  computed {key} = {val}")
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"


def _curve_grid(curve: imm.ParametricImmersion, per_axis: int) -> np.ndarray:
    box = (curve.sample_box or (2.0 * math.pi,))[0]
    return (np.arange(per_axis) + 0.5) / per_axis * box


def _frenet_check(report, F, axis, base, want, per_axis, tol, label):
    curve = catalog.coordinate_curve(F, axis, base)
    app = frenet(curve, _curve_grid(curve, max(per_axis, 5)))
    got = app.curvature_values
    if app.order != len(want) + 1:
        res = float("inf")
    else:
        res = max(abs(g - w) for g, w in zip(got, want))
    chk = imm.CheckResult(f"frenet_{label}", res, 1e-8 if tol is None else tol)
    chk.extra["order"] = app.order
    report.add(chk)
    spread = float(np.max(app.curvature_spreads)) if len(app.curvature_spreads) else 0.0
    report.add(imm.CheckResult(f"frenet_{label}_constancy", spread, 1e-8 if tol is None else tol))
    report.computed[f"curvatures_{label}"] = [format_value(v) for v in got]


def _mean_curvature_checks(report, F, pts, want=None, tol=None):
    geo = imm.sample_geometry(F, pts)
    h = geo.mean_curvature_norm
    report.add(imm.CheckResult("mean_curvature_constant", float(np.var(h)), 1e-16))
    report.computed["mean_curvature"] = format_value(float(np.mean(h)))
    if want is not None:
        report.add(
            imm.CheckResult(
                "mean_curvature_value",
                float(np.max(np.abs(h - want))),
                1e-10 if tol is None else tol,
            )
        )
    return geo


def _trace_bah_check(report, F, pts, factor, tol=None):
    geo = imm.sample_geometry(F, pts)
    B, H = geo.second_fundamental, geo.mean_curvature
    bah = np.einsum("nik,nikd->nd", np.einsum("nikd,nd->nik", B, H), B)
    res = float(np.max(np.abs(bah - factor * H)))
    report.add(imm.CheckResult("trace_b_ah", res, 1e-8 if tol is None else tol))


def _decomposition_check(report, F, want_radii, per_axis, tol=None, basis=None, label="decomposition"):
    tol = 1e-10 if tol is None else tol
    try:
        dec = catalog.circle_decomposition(F, per_axis=max(per_axis, 3), basis=basis)
    except ValueError as ex:
        chk = imm.CheckResult(label, float("inf"), tol)
        chk.extra["error"] = str(ex)
        report.add(chk)
        return
    got = np.sort(dec.radii)
    want = np.sort(np.asarray(want_radii, dtype=float))
    res = float(np.max(np.abs(got - want)))
    report.add(imm.CheckResult(label, res, tol))
    report.add(
        imm.CheckResult(label + "_sum_sq", abs(float(np.sum(dec.radii**2)) - 1.0), 1e-12)
    )
    report.computed[label + "_radii"] = [format_value(v) for v in got]


def _eigencheck(report, F, split, want, pts, tol=None):
    tol = 1e-10 if tol is None else tol
    res = imm.coordinate_laplacian_eigencheck(F, split, pts, tol=tol)
    for (name, chk), mu_want in zip(sorted(res.items()), [want[k] for k in sorted(want)]):
        mu = chk.extra["eigenvalue"]
        combined = max(chk.residual, abs(mu - mu_want))
        out = imm.CheckResult(chk.name, combined, tol)
        out.extra["eigenvalue"] = mu
        report.add(out)
        report.computed[chk.name] = format_value(mu)


MINUS4_RADII = (
    (math.sqrt((5.0 - SQ13) / 12.0),) + (math.sqrt((7.0 + SQ13) / 36.0),) * 3,
    (math.sqrt((3.0 + SQ3) / 12.0),) * 2 + (math.sqrt((3.0 - SQ3) / 12.0),) * 2,
    (math.sqrt((5.0 + SQ13) / 12.0),) + (math.sqrt((7.0 - SQ13) / 36.0),) * 3,
)

COROLLARY_CURVATURES = {
    "X1": (4.0 / SQ5, 1.0),
    "X2": (math.sqrt(29.0 / 10.0), 9.0 * SQ2 / math.sqrt(145.0), 2.0 * SQ3 / math.sqrt(145.0)),
    "X3": (SQ5 / SQ2, 2.0 * SQ3 / math.sqrt(10.0), SQ3 / math.sqrt(10.0)),
}

_CURVE_BASE_FRACTIONS = np.array([0.23, 0.41, 0.67])


def build_report(name: str, per_axis: int = 5, tol: float | None = None) -> VerificationReport:
    """Run the full check suite of a registered example; see EXAMPLE_NAMES."""
    report = VerificationReport(subject=name)
    report.computed["grid_points_per_axis"] = per_axis
    report.computed["tolerance_override"] = tol

    def T(default):
        return default if tol is None else tol

    if name == "corollary-c1":
        F = catalog.corollary_immersion()
        pts = F.grid(per_axis)
        base = _CURVE_BASE_FRACTIONS * np.asarray(F.sample_box)
        report.add(imm.check_unit_norm(F, pts, tol=T(1e-13)))
        report.add(imm.check_integral(F, pts, tol=T(1e-10)))
        cp = imm.check_C_parallel(F, pts, tol=T(1e-8))
        report.add(cp)
        report.add(imm.CheckResult("s_symmetry", cp.extra["total_symmetry"], T(1e-10)))
        report.add(imm.check_normal_laplacian(F, pts, tol=T(1e-8)))
        _mean_curvature_checks(report, F, pts, want=2.0 / 3.0, tol=T(1e-10))
        report.add(imm.check_bitension(F, pts, tol=T(1e-8)))
        _trace_bah_check(report, F, pts, factor=2.0, tol=T(1e-8))
        for axis, label in ((0, "X1"), (1, "X2"), (2, "X3")):
            _frenet_check(report, F, axis, base, COROLLARY_CURVATURES[label], per_axis, tol, label)
        report.add(imm.lattice_check(F, catalog.COROLLARY_LATTICE, pts[: per_axis**2], tol=T(1e-10)))
        _eigencheck(report, F, {"x1": [3], "x2": [0, 1, 2]}, {"x1": 1.0, "x2": 5.0}, pts, tol)
        return report

    if name == "s5-surface":
        F = catalog.s5_surface()
        pts = F.grid(per_axis)
        report.add(imm.check_unit_norm(F, pts, tol=T(1e-13)))
        report.add(imm.check_integral(F, pts, tol=T(1e-10)))
        cp = imm.check_C_parallel(F, pts, tol=T(1e-8))
        report.add(cp)
        report.add(imm.CheckResult("s_symmetry", cp.extra["total_symmetry"], T(1e-10)))
        report.add(imm.check_normal_laplacian(F, pts, tol=T(1e-8)))
        _mean_curvature_checks(report, F, pts)
        report.add(imm.check_bitension(F, pts, tol=T(1e-8)))
        report.add(imm.lattice_check(F, catalog.S5_LATTICE, pts[: per_axis**2], tol=T(1e-10)))
        return report

    if name == "cylinder-c1":
        F = catalog.cylinder(catalog.corollary_immersion())
        pts = F.grid(per_axis)
        report.add(imm.check_unit_norm(F, pts, tol=T(1e-13)))
        # the cylinder direction is the Reeb flow: eta0(d_t y) = 1 exactly
        X = F.jets(pts[: per_axis**2], 1)
        eta_t = np.sum(X.deriv(0).value * (-complex_structure(X.value)), axis=-1)
        report.add(imm.CheckResult("flow_direction", float(np.max(np.abs(eta_t - 1.0))), T(1e-10)))
        _mean_curvature_checks(report, F, pts[: per_axis**2], want=0.5, tol=T(1e-10))
        report.add(imm.check_bitension(F, pts, tol=T(1e-8)))
        _decomposition_check(
            report, F, (1.0 / SQ2,) + (1.0 / math.sqrt(6.0),) * 3, per_axis, tol=T(1e-10)
        )
        q4 = catalog.T4_TRANSFORM_2 @ catalog.T4_TRANSFORM_1
        tilde = catalog.precompose_linear(F, q4.T, name="cylinder-c1-circleform")
        report.add(
            imm.CheckResult(
                "lattice_transformed",
                imm.lattice_check(tilde, catalog.T4_CYLINDER_LATTICE_TILDE, tilde.grid(3)[:20]).residual,
                T(1e-10),
            )
        )
        original_gens = [q4.T @ np.asarray(a) for a in catalog.T4_CYLINDER_LATTICE_TILDE]
        report.add(
            imm.CheckResult(
                "lattice_original",
                imm.lattice_check(F, original_gens, pts[:20]).residual,
                T(1e-10),
            )
        )
        _eigencheck(report, F, {"y1": [3], "y2": [0, 1, 2]}, {"y1": 2.0, "y2": 6.0}, pts, tol)
        return report

    if name == "cylinder-s5":
        F = catalog.cylinder(catalog.s5_surface())
        pts = F.grid(per_axis)
        report.add(imm.check_unit_norm(F, pts, tol=T(1e-13)))
        X = F.jets(pts[: per_axis**2], 1)
        eta_t = np.sum(X.deriv(0).value * (-complex_structure(X.value)), axis=-1)
        report.add(imm.CheckResult("flow_direction", float(np.max(np.abs(eta_t - 1.0))), T(1e-10)))
        _mean_curvature_checks(report, F, pts[: per_axis**2])
        report.add(imm.check_bitension(F, pts, tol=T(1e-8)))
        report.add(imm.lattice_check(F, catalog.S5_CYLINDER_LATTICE, pts[:20], tol=T(1e-10)))
        q3 = catalog.S5_CYL_TRANSFORM_2 @ catalog.S5_CYL_TRANSFORM_1
        tilde = catalog.precompose_linear(F, q3.T, name="cylinder-s5-circleform")
        _decomposition_check(
            report, tilde, (1.0 / SQ2, 0.5, 0.5), per_axis, tol=T(1e-10), basis=catalog.S5_CYL_BASIS
        )
        return report

    if name == "legendre-circle":
        F = catalog.legendre_curve("circle")
        pts = _curve_grid(F, max(per_axis, 5))[:, None]
        report.add(imm.check_unit_norm(F, pts, tol=T(1e-13)))
        report.add(imm.check_integral(F, pts, tol=T(1e-10)))
        report.add(imm.check_bitension(F, pts, tol=T(1e-8)))
        app = frenet(F, pts.ravel())
        res = abs(app.curvature_values[0] - 1.0) if app.order == 2 else float("inf")
        chk = imm.CheckResult("frenet_circle", res, T(1e-8))
        chk.extra["order"] = app.order
        report.add(chk)
        report.add(imm.CheckResult("phi_alignment_zero", abs(phi_alignment(app)), T(1e-10)))
        _mean_curvature_checks(report, F, pts, want=1.0, tol=T(1e-10))
        return report

    if name.startswith("legendre-helix:"):
        kappa1 = float(name.split(":", 1)[1])
        F = catalog.legendre_curve("helix", kappa1=kappa1)
        pts = _curve_grid(F, max(per_axis, 5))[:, None]
        report.add(imm.check_unit_norm(F, pts, tol=T(1e-13)))
        report.add(imm.check_integral(F, pts, tol=T(1e-10)))
        report.add(imm.check_bitension(F, pts, tol=T(1e-8)))
        app = frenet(F, pts.ravel())
        res = abs(app.curvature_values[0] - kappa1) if app.order == 3 else float("inf")
        chk = imm.CheckResult("frenet_helix", res, T(1e-8))
        chk.extra["order"] = app.order
        report.add(chk)
        report.computed["curvatures"] = [format_value(v) for v in app.curvature_values]
        B = math.sqrt(1.0 - kappa1)
        report.add(
            imm.CheckResult("phi_alignment_magnitude", abs(abs(phi_alignment(app)) - B), T(1e-10))
        )
        _mean_curvature_checks(report, F, pts, want=kappa1, tol=T(1e-10))
        return report

    if name.startswith("minus4-"):
        index = int(name.split("-", 1)[1])
        F = catalog.minus4_immersion(index)
        pts = F.grid(per_axis)
        base = _CURVE_BASE_FRACTIONS * np.asarray(F.sample_box)
        report.add(imm.check_unit_norm(F, pts, tol=T(1e-13)))
        report.add(imm.check_integral(F, pts, tol=T(1e-10)))
        cp = imm.check_C_parallel(F, pts, tol=T(1e-8))
        report.add(cp)
        report.add(imm.CheckResult("s_symmetry", cp.extra["total_symmetry"], T(1e-10)))
        report.add(imm.check_normal_laplacian(F, pts, tol=T(1e-8)))
        _mean_curvature_checks(report, F, pts)
        report.add(imm.check_bitension(F, pts, mode="minus4", tol=T(1e-8)))
        _trace_bah_check(report, F, pts, factor=6.0, tol=T(1e-8))
        tup = classifier.SolutionTuple(*catalog.MINUS4_TUPLES[index - 1], c=1.0, mode="minus4")
        tables = classifier.curvature_tables(tup)
        for axis, label in ((0, "X1"), (1, "X2"), (2, "X3")):
            _frenet_check(report, F, axis, base, tables[label], per_axis, tol, label)
        return report

    if name.startswith("cylinder-minus4-"):
        index = int(name.rsplit("-", 1)[1])
        F = catalog.cylinder(catalog.minus4_immersion(index))
        pts = F.grid(per_axis)
        report.add(imm.check_unit_norm(F, pts, tol=T(1e-13)))
        _decomposition_check(report, F, MINUS4_RADII[index - 1], per_axis, tol=T(1e-10))
        return report

    raise KeyError(f"unknown example {name!r}; registered: {', '.join(EXAMPLE_NAMES)}")


def classification_report(
    c: float | None = None, mode: str = "biharmonic", sweep: bool = True
) -> dict:
    """Classification output (flat tuples, curve-x-sphere data, traces) as a dict."""
    if mode == "minus4":
        solutions, traces = classifier.solve_minus4_flat(fallback_sweep=sweep)
        case_ii = [classifier.solve_minus4_caseII()]
        c_val = 1.0
    else:
        c_val = float(c)
        solutions, traces = classifier.solve_flat(c_val, fallback_sweep=sweep)
        case_ii = classifier.solve_caseII(c_val)

    def tuple_entry(s):
        entry = {
            "case": s.case,
            "c": s.c,
            "lam": format_value(s.lam),
            "alpha": format_value(s.alpha),
            "gamma": format_value(s.gamma),
            "delta": format_value(s.delta),
            "omega": s.omega,
            "source": s.source,
            "flags": list(s.flags),
            "system_residual": s.system_residual(),
            "curvature_tables": {
                k: [format_value(v) for v in vs] for k, vs in classifier.curvature_tables(s).items()
            },
        }
        return entry

    return {
        "mode": mode,
        "c": c_val,
        "flat_solutions": [tuple_entry(s) for s in solutions],
        "case_ii": [
            {
                "subcase": s.subcase,
                "c": s.c,
                "lam": None if s.lam is None else format_value(s.lam),
                "kappa1": format_value(s.kappa1),
                "kappa2": format_value(s.kappa2),
                "radius": format_value(s.radius),
                "flags": list(s.flags),
            }
            for s in case_ii
        ],
        "reduction_traces": [
            {
                "omega_branch": t.omega_branch,
                "polynomial": list(t.polynomial),
                "accepted": list(t.accepted),
                "rejected": [{"omega": r.omega, "reason": r.reason} for r in t.rejected],
                "notes": list(t.notes),
            }
            for t in traces
        ],
    }
