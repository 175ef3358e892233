"""Command-line front end: reproducible verification and classification runs.

``sasakian verify <example>`` runs the registered check suite of one example
immersion and exits 0 only if every check passes; ``sasakian classify`` solves
the classification systems and emits the solution tuples, curve-times-sphere
data, curvature tables and reduction traces.  Output formats: text (default),
json, csv.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

from . import report as rep


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _classification_csv(results: list[dict]) -> str:
    buf = io.StringIO()
    buf.write("kind,case,c,lam,alpha,gamma,delta,kappa1,kappa2,radius,source\n")
    for res in results:
        for s in res["flat_solutions"]:
            buf.write(
                "flat,{case},{c:.17g},{lam:.17g},{alpha:.17g},{gamma:.17g},{delta:.17g},,,,{source}\n".format(
                    case=s["case"],
                    c=s["c"],
                    lam=s["lam"]["value"],
                    alpha=s["alpha"]["value"],
                    gamma=s["gamma"]["value"],
                    delta=s["delta"]["value"],
                    source=s["source"],
                )
            )
        for s in res["case_ii"]:
            lam = "" if s["lam"] is None else f"{s['lam']['value']:.17g}"
            buf.write(
                "case_ii,{sub},{c:.17g},{lam},,,,{k1:.17g},{k2:.17g},{rad:.17g},closed_form\n".format(
                    sub=s["subcase"],
                    c=s["c"],
                    lam=lam,
                    k1=s["kappa1"]["value"],
                    k2=s["kappa2"]["value"],
                    rad=s["radius"]["value"],
                )
            )
    return buf.getvalue()


def _classification_text(results: list[dict]) -> str:
    lines = []
    for res in results:
        lines.append(f"classification mode={res['mode']} c={res['c']:g}")
        if not res["flat_solutions"]:
            lines.append("  flat solutions: none")
        for s in res["flat_solutions"]:
            vals = ", ".join(
                f"{k}={s[k]['decimal']}" + (f" [{s[k]['symbolic']}]" if "symbolic" in s[k] else "")
                for k in ("lam", "alpha", "gamma", "delta")
            )
            lines.append(f"  flat {s['case']} ({s['source']}): {vals}")
            for curve, ks in s["curvature_tables"].items():
                kv = ", ".join(k["decimal"] for k in ks)
                lines.append(f"    {curve}-curve curvatures: {kv}")
        if not res["case_ii"]:
            lines.append("  curve x sphere solutions: none")
        for s in res["case_ii"]:
            lam = "-" if s["lam"] is None else s["lam"]["decimal"]
            lines.append(
                f"  case {s['subcase']}: lam={lam} kappa1={s['kappa1']['decimal']} "
                f"kappa2={s['kappa2']['decimal']} sphere radius={s['radius']['decimal']}"
            )
        for t in res["reduction_traces"]:
            acc = ", ".join(f"{w:.12g}" for w in t["accepted"]) or "none"
            lines.append(f"  branch {t['omega_branch']}: accepted omega {acc}")
            for r in t["rejected"]:
                lines.append(f"    rejected omega {r['omega']:.12g}: {r['reason']}")
    return "\n".join(lines) + "\n"


def _parse_sweep(spec: str) -> list[float]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("sweep must be lo:hi:step")
    lo, hi, step = (float(p) for p in parts)
    if step <= 0 or hi < lo:
        raise ValueError("sweep needs step > 0 and hi >= lo")
    out = []
    x = lo
    while x <= hi + 1e-12:
        out.append(round(x, 12))
        x += step
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sasakian",
        description="verify explicit biharmonic immersions and solve the classification systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run the check suite of a registered example")
    pv.add_argument("example", help="registered example name, e.g. corollary-c1 or legendre-helix:0.5")
    pv.add_argument("--grid", type=int, default=5, help="points per parameter axis (default 5)")
    pv.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    pv.add_argument("--format", choices=("json", "csv", "text"), default="text")
    pv.add_argument("--out", default=None, help="write the report to this file instead of stdout")

    pc = sub.add_parser("classify", help="solve the classification systems")
    pc.add_argument("--c", type=float, default=None, help="phi-sectional curvature")
    pc.add_argument("--c-sweep", default=None, metavar="LO:HI:STEP", help="sweep over c values")
    pc.add_argument("--mode", choices=("biharmonic", "minus4"), default="biharmonic")
    pc.add_argument("--no-sweep", action="store_true", help="skip the fallback Newton sweep")
    pc.add_argument("--format", choices=("json", "csv", "text"), default="text")
    pc.add_argument("--out", default=None)

    args = parser.parse_args(argv)

    if args.command == "verify":
        try:
            report = rep.build_report(args.example, per_axis=args.grid, tol=args.tol)
        except KeyError as ex:
            parser.error(str(ex.args[0]))
        if args.format == "json":
            _emit(report.to_json(), args.out)
        elif args.format == "csv":
            _emit(report.to_csv(), args.out)
        else:
            _emit(report.to_text(), args.out)
        return 0 if report.passed else 1

    if args.command == "classify":
        if args.mode == "minus4":
            if args.c is not None or args.c_sweep is not None:
                parser.error("mode minus4 works at the canonical structure only (implicit c = 1)")
            cs = [None]
        else:
            if (args.c is None) == (args.c_sweep is None):
                parser.error("classify needs exactly one of --c or --c-sweep")
            if args.c_sweep is not None:
                try:
                    cs = _parse_sweep(args.c_sweep)
                except ValueError as ex:
                    parser.error(str(ex))
            else:
                cs = [args.c]
        results = [
            rep.classification_report(c=c, mode=args.mode, sweep=not args.no_sweep) for c in cs
        ]
        if args.format == "json":
            payload = results[0] if len(results) == 1 else {"sweep": results}
            _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
        elif args.format == "csv":
            _emit(_classification_csv(results), args.out)
        else:
            _emit(_classification_text(results), args.out)
        return 0

    parser.error("unknown command")


if __name__ == "__main__":
    raise SystemExit(main())
