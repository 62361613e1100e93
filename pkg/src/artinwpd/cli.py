"""``artinwpd`` command line: classify, construct, verify, shadow, dihedral-sweep.

Exit status 0 means every check passed, 1 means a check failed and 2 means
the input could not be read.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .coxeter import dihedral_sweep
from .defgraph import GraphFormatError, check_hypotheses, parse_graph
from .pipeline import NotEligibleError, construct, dumps, to_document, verify_document
from .walks import DEFAULT_EXACT_LIMIT

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None = None
    radius: int = 2
    exact_limit: int = DEFAULT_EXACT_LIMIT
    lcm: bool = False
    m_max: int = 100
    output: str | None = None
    dot: str | None = None
    png: str | None = None
    csv: str | None = None
    cap: int = 200_000

    def __post_init__(self):
        if self.radius < 0:
            raise InputError("radius must be >= 0")
        if self.exact_limit < 2:
            raise InputError("exact limit must be >= 2")
        if self.command == "dihedral-sweep" and self.m_max < 3:
            raise InputError("m_max must be >= 3")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def _graph(path: str):
    try:
        return parse_graph(_read(path))
    except GraphFormatError as exc:
        raise InputError(f"{path}:{exc.line}: {exc}") from None


def _emit(text: str, output: str | None, out) -> None:
    if output:
        Path(output).write_text(text)
    else:
        out.write(text)


def _classify(cfg: RunConfig, out) -> int:
    report = check_hypotheses(_graph(cfg.input))
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", cfg.output, out)
    return EXIT_OK


def _construct(cfg: RunConfig, out) -> int:
    g = _graph(cfg.input)
    try:
        c = construct(g, exact_limit=cfg.exact_limit, use_lcm=cfg.lcm)
    except NotEligibleError as exc:
        print(json.dumps(exc.report.to_dict(), indent=2), file=sys.stderr)
        print(f"not eligible: {exc}", file=sys.stderr)
        return EXIT_CHECK
    _emit(dumps(to_document(c)), cfg.output, out)
    return EXIT_OK


def _verify(cfg: RunConfig, out) -> int:
    try:
        doc = json.loads(_read(cfg.input))
    except json.JSONDecodeError as exc:
        raise InputError(f"{cfg.input}: not JSON ({exc})") from None
    report = verify_document(doc)
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", cfg.output, out)
    if not report.ok:
        first = report.failures[0]
        print(f"verification failed at {first.where}: {first.message}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def _shadow(cfg: RunConfig, out) -> int:
    from .cubeshadow import (
        ShadowError,
        build_shadow,
        extract_hyperplanes,
        shadow_coset_checks,
        structural_checks,
        to_dot,
    )

    g = _graph(cfg.input)
    try:
        sc = build_shadow(g, cfg.radius, cap=cfg.cap)
    except ShadowError as exc:
        print(f"shadow: {exc}", file=sys.stderr)
        return EXIT_CHECK
    planes = extract_hyperplanes(sc)
    checks = structural_checks(sc, g)
    result = {
        "statistics": sc.stats(),
        "hyperplanes": len(planes),
        "structural": checks.to_dict(),
        "wording": "W-shadow verified" if checks.ok else "W-shadow check failed",
    }
    ok = checks.ok
    try:
        c = construct(g, exact_limit=cfg.exact_limit, use_lcm=cfg.lcm)
    except NotEligibleError:
        result["coset_checks"] = None
    else:
        coset = shadow_coset_checks(c.certificate, g)
        result["coset_checks"] = coset.to_dict()
        ok = ok and coset.ok
    if cfg.dot:
        Path(cfg.dot).write_text(to_dot(sc, planes))
    if cfg.png:
        from .plotting import plot_shadow

        plot_shadow(sc, planes, cfg.png)
    _emit(json.dumps(result, indent=2) + "\n", cfg.output, out)
    return EXIT_OK if ok else EXIT_CHECK


def _sweep(cfg: RunConfig, out) -> int:
    rows = dihedral_sweep(cfg.m_max)
    lines = ["m,passed,cases,order"]
    lines += [f"{r['m']},{str(r['passed']).lower()},{r['cases']},{r.get('order', '')}" for r in rows]
    _emit("\n".join(lines) + "\n", cfg.output, out)
    if cfg.csv or cfg.png:
        from .plotting import plot_sweep, write_sweep_csv

        if cfg.csv:
            write_sweep_csv(rows, cfg.csv)
        if cfg.png:
            plot_sweep(rows, cfg.png)
    return EXIT_OK if all(r["passed"] for r in rows) else EXIT_CHECK


COMMANDS = {
    "classify": _classify,
    "construct": _construct,
    "verify": _verify,
    "shadow": _shadow,
    "dihedral-sweep": _sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artinwpd",
        description="Contracting-element certificates for Artin groups over join-decomposable graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("input", help="graph file")
        p.add_argument("-o", "--output", help="write the report here instead of stdout")
        return p

    graph_command("classify", "report the hypotheses a graph satisfies")
    for p in (
        graph_command("construct", "emit a certificate JSON"),
        graph_command("shadow", "bounded Coxeter-shadow checks"),
    ):
        p.add_argument("--exact-limit", type=int, default=DEFAULT_EXACT_LIMIT,
                       help="largest factor solved exactly for covering walks")
        p.add_argument("--lcm", action="store_true", help="use lcm of walk lengths for n")
    shadow = sub.choices["shadow"]
    shadow.add_argument("-R", "--radius", type=int, default=2)
    shadow.add_argument("--cap", type=int, default=200_000, help="state cap for the ball")
    shadow.add_argument("--dot", help="write the 1-skeleton as DOT")
    shadow.add_argument("--png", help="render the ball to a PNG")

    verify = sub.add_parser("verify", help="re-check a certificate JSON")
    verify.add_argument("input", help="certificate file")
    verify.add_argument("-o", "--output")

    sweep = sub.add_parser("dihedral-sweep", help="dihedral base cases for 3..m_max")
    sweep.add_argument("m_max", type=int)
    sweep.add_argument("-o", "--output")
    sweep.add_argument("--csv", help="write the table as CSV")
    sweep.add_argument("--png", help="render the table to a PNG")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    kwargs = {k: v for k, v in vars(ns).items() if k in fields and v is not None}
    return RunConfig(**kwargs)


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        return COMMANDS[cfg.command](cfg, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
