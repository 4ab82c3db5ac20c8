"""Command line front end.

    hodgerr verify FILE... [--out PATH] [--fail-fast] [-v]
    hodgerr compute {ch,td,euler,eqch} PAYLOAD_FILE

``verify`` writes one JSON report per line, then a ``{"summary": ...}`` line.
Exit status: 0 when every check holds, 1 when a check fails or hits a domain
error such as a localization failure, 2 on unreadable or malformed input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field

from .charclass import chern_character, todd_class
from .equivariant import LocalizationError, equivariant_ch, equivariant_euler
from .jsonio import (
    ScenarioError,
    parse_bundle,
    parse_equivariant_bundle,
    parse_fixed_component,
    parse_variety,
)
from .verify import error_report, run_scenario, summarize

log = logging.getLogger("hodgerr")

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    inputs: list
    out: str | None = None
    fail_fast: bool = False
    verbosity: int = 0
    scenarios: list = field(default_factory=list, repr=False)


def load_scenarios(path: str) -> list:
    """A file holds one scenario, a list of them, {scenarios: [...]}, or JSON lines."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) < 2:
            raise
        data = [json.loads(ln) for ln in lines]
    if isinstance(data, dict) and "scenarios" in data:
        data = data["scenarios"]
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list):
        raise ScenarioError(f"{path}: expected a scenario object or a list of them")
    return data


def run(config: RunConfig) -> int:
    if not config.inputs:
        log.error("no input files")
        return EXIT_INPUT
    scenarios = []
    for path in config.inputs:
        try:
            for i, s in enumerate(load_scenarios(path)):
                scenarios.append((f"{path}#{i}", s))
        except (OSError, json.JSONDecodeError, ScenarioError) as exc:
            log.error("cannot read %s: %s", path, exc)
            return EXIT_INPUT

    out = open(config.out, "w", encoding="utf-8") if config.out else sys.stdout
    reports = []
    status = EXIT_OK
    try:
        for default_id, s in scenarios:
            try:
                report = run_scenario(s, default_id)
            except ScenarioError as exc:
                log.error("%s: %s", default_id, exc)
                report = error_report(s, default_id, exc)
                status = EXIT_INPUT
            except LocalizationError as exc:
                report = error_report(s, default_id, exc)
                status = max(status, EXIT_FAILED)
            if not report.equal:
                status = max(status, EXIT_FAILED)
            reports.append(report)
            out.write(json.dumps(report.to_json(), sort_keys=True) + "\n")
            if config.verbosity:
                log.info("%s %s", report.id, "ok" if report.equal else "FAILED")
            if config.fail_fast and status != EXIT_OK:
                break
        summary = summarize(reports)
        out.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    log.info("summary: %s", summary)
    return status


def compute(kind: str, payload_path: str) -> int:
    try:
        with open(payload_path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        log.error("cannot read %s: %s", payload_path, exc)
        return EXIT_INPUT
    try:
        if not isinstance(payload, dict):
            raise ScenarioError("payload must be a JSON object")
        if kind == "ch":
            X = parse_variety(payload.get("variety", payload))
            if "bundle" not in payload:
                raise ScenarioError("ch payload needs 'bundle'")
            value = chern_character(parse_bundle(X, payload["bundle"]))
        elif kind == "td":
            value = todd_class(parse_variety(payload.get("variety", payload)))
        elif kind == "euler":
            value = equivariant_euler(parse_fixed_component(payload.get("component", payload)))
        elif kind == "eqch":
            value = equivariant_ch(parse_equivariant_bundle(payload.get("component", payload)))
        else:
            raise ScenarioError(f"unknown class {kind!r}")
    except ScenarioError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    print(json.dumps(value.to_json(), sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hodgerr", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run scenario files and report")
    v.add_argument("files", nargs="+")
    v.add_argument("--out", help="write reports here instead of stdout")
    v.add_argument("--fail-fast", action="store_true")
    v.add_argument("-v", "--verbose", action="count", default=0)
    c = sub.add_parser("compute", help="print one characteristic class as JSON")
    c.add_argument("kind", choices=["ch", "td", "euler", "eqch"])
    c.add_argument("payload")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    level = logging.INFO if getattr(args, "verbose", 0) else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.command == "verify":
        return run(RunConfig(args.files, args.out, args.fail_fast, args.verbose))
    return compute(args.kind, args.payload)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
