"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 consistency or theorem violation,
3 negative answer (no isomorphism, no realisation).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .exact import UnsupportedDegree
from .geometry import Arrangement, incidence_of
from .lattice import IncidenceStructure, InconsistentStructure, InvalidStructure, find_isomorphism, hirzebruch_filter, profile_of

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION, EXIT_NEGATIVE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _read_json(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    # a catalog entry as printed by `catalog show`
    if isinstance(data.get("arrangement"), dict):
        return data["arrangement"]
    return data


def _load_arrangement(path: str) -> Arrangement:
    data = _read_json(path)
    try:
        return Arrangement.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: not an arrangement ({exc})") from None


def _load_lattice(path: str) -> IncidenceStructure:
    """Lattice file, or an arrangement file reduced to its lattice."""
    data = _read_json(path)
    try:
        if "lines" in data:
            return incidence_of(Arrangement.from_json(data))
        return IncidenceStructure.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: not a lattice or arrangement ({exc})") from None


def _entry_text(e) -> str:
    rows = [f"{e.name}  (field sqrt({e.arrangement.field_d}))" if e.arrangement.field_d != 1 else f"{e.name}  (rational)"]
    for name, line in zip(e.line_names, e.arrangement.lines):
        rows.append(f"  {name:<14} {line}")
    rows.append("  multiple points: " + " ".join("".join(map(str, m)) if e.expected_lattice.n < 10 else str(list(m)) for m in e.expected_lattice.multiples))
    rows.append(f"  {e.notes}")
    return "\n".join(rows)


def cmd_catalog(args) -> int:
    from .catalog import catalog

    cat = catalog()
    if args.action == "list":
        for name, e in cat.items():
            print(f"{name}\t{len(e.arrangement)} lines\td={e.arrangement.field_d}")
        return EXIT_OK
    if args.name not in cat:
        print(f"unknown catalog entry {args.name!r}; known: {', '.join(cat)}", file=sys.stderr)
        return EXIT_INPUT
    e = cat[args.name]
    print(_dump(e.to_json()) if args.format == "json" else _entry_text(e))
    return EXIT_OK


def cmd_incidence(args) -> int:
    arr = _load_arrangement(args.file)
    s = incidence_of(arr)
    try:
        prof = profile_of(s)
    except InconsistentStructure as exc:
        print(f"inconsistent structure: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    print(_dump({"lattice": s.to_json(), "profile": prof.to_json(), "hirzebruch": hirzebruch_filter(prof)}))
    return EXIT_OK


def cmd_iso(args) -> int:
    a, b = _load_lattice(args.a), _load_lattice(args.b)
    iso = find_isomorphism(a, b)
    if iso is None:
        print("none")
        return EXIT_NEGATIVE
    print(" ".join(map(str, iso.perm)))
    return EXIT_OK


def cmd_classify(args) -> int:
    from .classify import OutsideTheorem, classify_nine

    s = _load_lattice(args.file)
    if s.n != 9:
        raise InputError(f"classification needs 9 lines, got {s.n}")
    try:
        c = classify_nine(s)
    except OutsideTheorem as exc:
        print(_dump({"class": None, "error": str(exc), "trace": exc.trace}))
        return EXIT_VIOLATION
    print(_dump(c.to_json()))
    return EXIT_OK


def cmd_moduli(args) -> int:
    from .moduli import Infeasible, NoFrame, solve_moduli

    s = _load_lattice(args.file)
    try:
        rep = solve_moduli(s)
    except NoFrame as exc:
        print(f"no frame: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Infeasible as exc:
        print(_dump({"status": "infeasible", "reason": str(exc)}))
        return EXIT_NEGATIVE
    except UnsupportedDegree as exc:
        print(_dump({"status": "unsupported", "reason": str(exc)}))
        return EXIT_NEGATIVE
    print(_dump(rep.to_json()))
    return EXIT_OK


def cmd_verify_paper(args, cat=None) -> int:
    from .verify import run_checks

    results = run_checks(cat, skip_slow="slow" in (args.skip or []))
    if args.no_timing:
        for r in results:
            r.elapsed = 0.0
    if args.format == "json":
        print(_dump([r.to_json() for r in results]))
    else:
        for r in results:
            print(f"[{r.status.upper():<11}] {r.name:<28} {r.elapsed:7.2f}s  {r.citation}")
            if r.status == "fail":
                print(f"              {r.detail}")
    return EXIT_OK if all(r.status != "fail" for r in results) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arrlab", description="Exact computations with line arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="named arrangements")
    c.add_argument("action", choices=["list", "show"])
    c.add_argument("name", nargs="?")
    c.add_argument("--format", choices=["json", "text"], default="json")

    i = sub.add_parser("incidence", help="lattice, profile and Hirzebruch verdict of an arrangement")
    i.add_argument("file")

    s = sub.add_parser("iso", help="lattice isomorphism between two files")
    s.add_argument("a")
    s.add_argument("b")

    k = sub.add_parser("classify", help="nine-line classification")
    k.add_argument("file")

    m = sub.add_parser("moduli", help="moduli report of a lattice")
    m.add_argument("file")

    v = sub.add_parser("verify-paper", help="run every reproducibility check")
    v.add_argument("--skip", action="append", choices=["slow"])
    v.add_argument("--format", choices=["json", "text"], default="text")
    v.add_argument("--no-timing", action="store_true", help="report zero elapsed times (byte-stable output)")
    return p


COMMANDS = {
    "catalog": cmd_catalog,
    "incidence": cmd_incidence,
    "iso": cmd_iso,
    "classify": cmd_classify,
    "moduli": cmd_moduli,
    "verify-paper": cmd_verify_paper,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.command == "catalog" and args.action == "show" and not args.name:
        print("catalog show needs a name", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    except InvalidStructure as exc:
        print(f"invalid structure: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
