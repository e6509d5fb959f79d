"""Command-line entry point: ``skeinforge <command> ...``; JSON on stdout."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .determinant import determinant, kauffman_det
from .diagram import DiagramError, PlanarDiagram, Resolution, components, parse_pd, resolve, simplify
from .grid import GridDiagram, GridError, hfk_report
from .heegaard import HeegaardError, SpecialHeegaardDiagram, build, parse_edges, summarize, validate
from .homalg import HomalgError, check_triangle_hypotheses, exactness_report, triangle_from_json
from .quasialt import QACertificate, certify_with_stats, verify_certificate
from .skein import SkeinError, triangle_rank_check


class CommandFailed(Exception):
    """A check ran and reported failure; the payload is still printed."""


def _read_pd(arg: str) -> PlanarDiagram:
    return parse_pd(fixtures.resolve_path(arg, ".pd").read_text())


def _read_grid(arg: str) -> GridDiagram:
    return GridDiagram.parse(fixtures.resolve_path(arg, ".grid").read_text())


def _read_json(arg: str) -> dict:
    return json.loads(Path(arg).read_text())


def _pair(text: str) -> tuple[int, int]:
    try:
        rk, l = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RANK,COMPONENTS, got {text!r}")
    return rk, l


def cmd_det(args) -> dict:
    pd = _read_pd(args.pd)
    out = {"det": determinant(pd), "components": components(pd), "crossings": len(pd.crossings)}
    if args.check:
        out["det_bracket"] = kauffman_det(pd)
        if out["det_bracket"] != out["det"]:
            raise CommandFailed(out)
    return out


def cmd_resolve(args) -> dict:
    pd = _read_pd(args.pd)
    choice = Resolution.ZERO if args.choice == "0" else Resolution.ONE
    out_pd = resolve(pd, args.crossing, choice)
    if args.simplify:
        out_pd = simplify(out_pd)
    return {
        "choice": args.choice,
        "crossing": args.crossing,
        "diagram": out_pd.to_json(),
        "pd": out_pd.to_pd(),
        "components": components(out_pd),
        "det": determinant(out_pd),
    }


def cmd_qa_certify(args) -> dict:
    pd = _read_pd(args.pd)
    cert, expansions = certify_with_stats(pd, args.budget)
    out = {
        "status": "certified" if cert else "unknown",
        "expansions": expansions,
        "budget": args.budget,
        "certificate": cert.to_json() if cert else None,
    }
    if cert is None:
        out["note"] = "no certificate found; this does not show the link is not quasi-alternating"
        raise CommandFailed(out)
    return out


def cmd_qa_verify(args) -> dict:
    data = _read_json(args.certificate)
    cert = QACertificate.from_json(data.get("certificate") or data)
    result = verify_certificate(cert).to_json()
    if not result["ok"]:
        raise CommandFailed(result)
    return result


def cmd_hfk(args) -> dict:
    return hfk_report(_read_grid(args.grid)).to_json()


def cmd_heegaard_build(args) -> dict:
    pd = _read_pd(args.pd)
    d = build(pd, parse_edges(args.edges), args.e)
    out = d.to_json()
    out["summary"] = summarize(d)
    return out


def cmd_heegaard_validate(args) -> dict:
    data = _read_json(args.diagram)
    data.pop("summary", None)
    d = SpecialHeegaardDiagram.from_json(data)
    rep = validate(d).to_json()
    rep["summary"] = summarize(d)
    if not rep["ok"]:
        raise CommandFailed(rep)
    return rep


def cmd_homalg_check(args) -> dict:
    data = _read_json(args.triangle)
    t = triangle_from_json(data)
    exact = exactness_report(t.complexes, t.maps)
    out = {"exactness": exact.to_json()}
    if data.get("homotopies") is not None:
        out["hypotheses"] = check_triangle_hypotheses(t.complexes, t.maps, t.homotopies).to_json()
    if not exact.exact:
        raise CommandFailed(out)
    return out


def cmd_skein_check(args) -> dict:
    (rk, l), (rk0, l0), (rk1, l1) = args.L, args.L0, args.L1
    rep = triangle_rank_check(rk, l, rk0, l0, rk1, l1).to_json()
    if not rep["ok"]:
        raise CommandFailed(rep)
    return rep


def cmd_acceptance(args) -> dict:
    from .scorecard import run_all

    results = run_all()
    out = {
        "criteria": [r.to_json() for r in results],
        "passed": sum(r.passed for r in results),
        "total": len(results),
        "all_passed": all(r.passed for r in results),
    }
    if not args.timings:
        for row in out["criteria"]:
            row.pop("seconds")
    out["_lines"] = [r.line() for r in results]
    if not out["all_passed"]:
        raise CommandFailed(out)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skeinforge", description="Knot Floer and skein-triangle toolkit.")
    p.add_argument("--human", action="store_true", help="print a readable summary instead of JSON")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("det", help="link determinant from a PD file")
    s.add_argument("pd", help="PD file or fixture name")
    s.add_argument("--check", action="store_true", help="also evaluate the Kauffman bracket")
    s.set_defaults(func=cmd_det)

    s = sub.add_parser("resolve", help="smooth one crossing")
    s.add_argument("pd")
    s.add_argument("--crossing", type=int, required=True)
    s.add_argument("--choice", choices=("0", "1"), required=True)
    s.add_argument("--simplify", action="store_true")
    s.set_defaults(func=cmd_resolve)

    qa = sub.add_parser("qa", help="quasi-alternating certificates").add_subparsers(dest="qa_command", required=True)
    s = qa.add_parser("certify")
    s.add_argument("pd")
    s.add_argument("--budget", type=int, default=100_000)
    s.set_defaults(func=cmd_qa_certify)
    s = qa.add_parser("verify")
    s.add_argument("certificate", help="certificate JSON (as printed by certify, or its 'certificate' field)")
    s.set_defaults(func=cmd_qa_verify)

    s = sub.add_parser("hfk", help="grid homology of a grid file")
    s.add_argument("grid", help="grid file or fixture name")
    s.set_defaults(func=cmd_hfk)

    hg = sub.add_parser("heegaard", help="special Heegaard diagrams").add_subparsers(
        dest="heegaard_command", required=True
    )
    s = hg.add_parser("build")
    s.add_argument("pd")
    s.add_argument("--edges", help="comma-separated marked edges (default: one per uncovered component)")
    s.add_argument("--e", type=int, help="distinguished edge on the unbounded region")
    s.set_defaults(func=cmd_heegaard_build)
    s = hg.add_parser("validate")
    s.add_argument("diagram", help="JSON written by 'heegaard build'")
    s.set_defaults(func=cmd_heegaard_validate)

    ha = sub.add_parser("homalg", help="F2 homological algebra").add_subparsers(dest="homalg_command", required=True)
    s = ha.add_parser("check-triangle")
    s.add_argument("triangle", help="JSON with complexes, maps and optional homotopies")
    s.set_defaults(func=cmd_homalg_check)

    sk = sub.add_parser("skein", help="rank checks for a skein triple").add_subparsers(dest="skein_command", required=True)
    s = sk.add_parser("check")
    for flag in ("--L", "--L0", "--L1"):
        s.add_argument(flag, type=_pair, required=True, metavar="RANK,COMPONENTS")
    s.set_defaults(func=cmd_skein_check)

    s = sub.add_parser("acceptance", aliases=["verify-paper"], help="run the acceptance scorecard on the shipped fixtures")
    s.add_argument("--timings", action="store_true", help="include wall-clock seconds (output no longer reproducible)")
    s.set_defaults(func=cmd_acceptance)
    return p


def _human(payload: dict) -> str:
    if "_lines" in payload:
        return "\n".join(payload["_lines"] + [f"{payload['passed']}/{payload['total']} criteria passed"])
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, (dict, list)) and len(json.dumps(value)) > 100:
            value = f"<{type(value).__name__} of {len(value)}>"
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _emit(payload: dict, human: bool) -> None:
    if human:
        print(_human(payload))
    else:
        payload = {k: v for k, v in payload.items() if not k.startswith("_")}
        print(json.dumps(payload, sort_keys=True))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _emit(args.func(args), args.human)
        return 0
    except CommandFailed as failed:
        _emit(failed.args[0], args.human)
        return 1
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"skeinforge: cannot read input: {exc}", file=sys.stderr)
        return 2
    except (DiagramError, GridError, HeegaardError, HomalgError, SkeinError, ValueError) as exc:
        print(f"skeinforge: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
