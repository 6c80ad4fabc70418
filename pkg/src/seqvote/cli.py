"""Command-line front end.

Profiles travel in a small text format::

    # header, then one line per ballot bloc
    m=3
    3: 0 1
    1: 2

Counting tables load from files of ``h(x)=p/q`` lines (or ``h(x,y)=``,
``h(x,y,z)=``); every grid entry must be present, nothing is defaulted.

Reports are JSON documents with sorted keys, rationals rendered as ``p/q``
strings, candidates as indices, and no timestamps, so identical inputs give
byte-identical output.  Exit codes: 0 all pass/computed, 1 a violation was
found (or a witness reproduced one), 2 usage or parse error, 3 a cap was
exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog, witnesses
from .axioms import AxiomReport, Bounds, NStats, run_suite
from .counting import (
    StepCountingTable,
    StepThieleTable,
    ThieleTable,
    committee_score,
)
from .engine import BranchCapError, Rule
from .oracle import EnumerationCapError
from .profiles import Profile, ProfileError, SymmetrizationCapError
from .witnesses import Witness, WitnessNotApplicable

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class ProfileParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"{message} at line {line}")


class TableParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Profile files


_HEADER_RE = re.compile(r"^m\s*=\s*(\d+)$")


def parse_profile(text: str) -> Profile:
    """Parse the profile file format; voters get ids 1..n in file order."""
    m = None
    ballots: list[frozenset[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if m is None:
            match = _HEADER_RE.match(line)
            if not match:
                raise ProfileParseError("expected header 'm=<int>'", lineno)
            m = int(match.group(1))
            if m < 1:
                raise ProfileParseError("m must be at least 1", lineno)
            continue
        count_part, sep, cand_part = line.partition(":")
        if not sep:
            raise ProfileParseError("expected '<count>: <candidates>'", lineno)
        try:
            count = int(count_part.strip())
        except ValueError:
            raise ProfileParseError(f"bad count {count_part.strip()!r}", lineno) from None
        if count < 1:
            raise ProfileParseError(f"count must be positive, got {count}", lineno)
        tokens = cand_part.split()
        if not tokens:
            raise ProfileParseError("empty ballot", lineno)
        members: list[int] = []
        for token in tokens:
            try:
                c = int(token)
            except ValueError:
                raise ProfileParseError(f"bad candidate {token!r}", lineno) from None
            if c in members:
                raise ProfileParseError(f"duplicate candidate {c}", lineno)
            if not 0 <= c < m:
                raise ProfileParseError(f"candidate index {c} >= m={m}", lineno)
            members.append(c)
        ballots.extend([frozenset(members)] * count)
    if m is None:
        raise ProfileParseError("missing 'm=<int>' header")
    if not ballots:
        raise ProfileParseError("no ballot lines")
    return Profile.from_ballots(m, ballots)


def format_profile(profile: Profile) -> str:
    """Canonical text form: merged counts, ballots sorted by size then members."""
    lines = [f"m={profile.m}"]
    for ballot, count in profile.ballot_counts:
        lines.append(f"{count}: " + " ".join(str(c) for c in sorted(ballot)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Counting-table files


_ENTRY_RE = re.compile(
    r"^h\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?(?:,\s*(\d+)\s*)?\)\s*=\s*(-?\d+(?:\s*/\s*\d+)?)$"
)


def parse_counting_table(text: str):
    """Parse ``h(...)=p/q`` lines into the matching table type."""
    entries: dict[tuple, Fraction] = {}
    arity = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _ENTRY_RE.match(line)
        if not match:
            raise TableParseError(f"bad table entry at line {lineno}: {line!r}")
        x, y, z, value = match.groups()
        key = tuple(int(g) for g in (x, y, z) if g is not None)
        if arity is None:
            arity = len(key)
        elif len(key) != arity:
            raise TableParseError(f"mixed entry arities at line {lineno}")
        if key in entries:
            raise TableParseError(f"duplicate entry h{key} at line {lineno}")
        entries[key] = Fraction(value.replace(" ", ""))
    if not entries:
        raise TableParseError("no table entries")

    if arity == 1:
        m = max(k[0] for k in entries)
        grid = [(x,) for x in range(m + 1)]
        maker = lambda: ThieleTable(tuple(entries[(x,)] for x in range(m + 1)))
    elif arity == 2:
        m = max(k[1] for k in entries)
        grid = [(x, y) for x in range(m + 1) for y in range(1, m + 1)]
        maker = lambda: StepThieleTable(
            tuple(
                tuple(entries[(x, y)] for x in range(m + 1)) for y in range(1, m + 1)
            )
        )
    else:
        m = max(k[1] for k in entries)
        grid = [
            (x, y, z)
            for x in range(m + 1)
            for y in range(1, m + 1)
            for z in range(1, m + 1)
        ]
        maker = lambda: StepCountingTable(
            tuple(
                tuple(
                    tuple(entries[(x, y, z)] for z in range(1, m + 1))
                    for y in range(1, m + 1)
                )
                for x in range(m + 1)
            )
        )
    missing = [k for k in grid if k not in entries]
    if missing:
        raise TableParseError(f"missing table entry h{missing[0]} (grid is never defaulted)")
    extra = [k for k in entries if k not in set(grid)]
    if extra:
        raise TableParseError(f"entry h{extra[0]} outside the grid for m={m}")
    return maker()


def rule_from_table(table, name: str = "table") -> Rule:
    if isinstance(table, ThieleTable):
        return catalog.make_seq_thiele(table, name)
    if isinstance(table, StepThieleTable):
        return catalog.make_step_thiele(table, name)
    return catalog.make_step_scoring(table, name)


# ---------------------------------------------------------------------------
# Report rendering


def _fraction_str(value: Fraction) -> str:
    return str(value)


def to_jsonable(obj):
    """Recursively turn report structures into deterministic JSON values."""
    if isinstance(obj, Fraction):
        return _fraction_str(obj)
    if isinstance(obj, Profile):
        return {
            "m": obj.m,
            "votes": [[voter, sorted(ballot)] for voter, ballot in obj.votes],
            "text": format_profile(obj),
        }
    if isinstance(obj, AxiomReport):
        return to_jsonable(
            {
                "axiom": obj.axiom,
                "subject": obj.subject,
                "verdict": obj.verdict,
                "bounds": obj.bounds,
                "witness": obj.witness,
                "note": obj.note,
            }
        )
    if isinstance(obj, Witness):
        return to_jsonable(
            {
                "construction": obj.construction,
                "axiom": obj.axiom,
                "profile": obj.profile,
                "k": obj.k,
                "expected": obj.expected,
                "expected_trace": dict(obj.expected_trace),
                "params": obj.params,
                "note": obj.note,
            }
        )
    if isinstance(obj, NStats):
        return to_jsonable({"committee": obj.committee, "pairs": obj.pairs, "rows": obj.rows})
    if isinstance(obj, (frozenset, set)):
        items = list(obj)
        if all(isinstance(i, int) for i in items):
            return sorted(items)
        return sorted((to_jsonable(i) for i in items), key=json.dumps)
    if isinstance(obj, dict):
        return {_key_str(k): to_jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: _key_str(kv[0]))}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(i) for i in obj]
    return obj


def _key_str(key) -> str:
    if isinstance(key, str):
        return key
    if isinstance(key, (int, Fraction)):
        return str(key)
    if isinstance(key, (tuple, frozenset)):
        return json.dumps(to_jsonable(key))
    return str(key)


def render_report(data: dict) -> str:
    return json.dumps(to_jsonable(data), indent=2, sort_keys=True) + "\n"


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def candidate_letter(c: int) -> str:
    """Human display name for a candidate index: a, b, ..., z, c26, c27, ..."""
    return chr(ord("a") + c) if c < 26 else f"c{c}"


def _letters(committee) -> str:
    if not committee:
        return "{}"
    return "{" + ",".join(candidate_letter(c) for c in sorted(committee)) + "}"


def render_compute_pretty(report: dict) -> str:
    """Plain-text trace with candidates as letters (indices stay in JSON mode)."""
    lines = [f"{report['rule']} on m={report['m']}, k={report['k']}"]
    for entry in report["trace"]:
        names = " ".join(_letters(w) for w in sorted(entry["committees"], key=sorted))
        lines.append(f"  size {entry['size']}: {names}")
    for step in report["steps"]:
        for parent in step["per_parent"]:
            if "scores" not in parent:
                continue
            scores = ", ".join(
                f"{candidate_letter(c)}={parent['scores'][c]}"
                for c in sorted(parent["scores"])
            )
            lines.append(f"  extending {_letters(parent['parent'])}: {scores}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands


def _load_rule(args, m: int) -> tuple[Rule, str | None]:
    if args.table:
        table_text = Path(args.table).read_text()
        table = parse_counting_table(table_text)
        if table.m != m:
            raise TableParseError(f"table is for m={table.m}, input needs m={m}")
        return rule_from_table(table), _digest(table_text)
    return catalog.make(args.rule, m), None


def cmd_compute(args) -> int:
    profile_text = Path(args.profile).read_text()
    profile = parse_profile(profile_text)
    rule, table_digest = _load_rule(args, profile.m)
    if args.branch_cap:
        rule.branch_cap = args.branch_cap
    k = args.k
    trace = rule.trace(profile, k)
    steps = []
    for j in range(1, k + 1):
        parents = sorted(trace[j - 1], key=lambda c: tuple(sorted(c)))
        detail = []
        for parent in parents:
            entry = {"parent": parent}
            if rule.valuation is not None:
                entry["scores"] = {
                    c: committee_score(rule.valuation, profile, parent | {c})
                    for c in range(profile.m)
                    if c not in parent
                }
            entry["extensions"] = frozenset(
                W for W in trace[j] if parent < W
            )
            detail.append(entry)
        steps.append({"size": j, "chosen": trace[j], "per_parent": detail})
    report = {
        "command": "compute",
        "rule": rule.name,
        "m": profile.m,
        "k": k,
        "input_digest": _digest(profile_text),
        "trace": [{"size": j, "committees": trace[j]} for j in range(k + 1)],
        "steps": steps,
    }
    if table_digest is not None:
        report["table_digest"] = table_digest
    if args.pretty:
        sys.stdout.write(render_compute_pretty(report))
    else:
        sys.stdout.write(render_report(report))
    return EXIT_OK


def cmd_axioms(args) -> int:
    runs = []
    worst = EXIT_OK
    for m in range(2, args.max_m + 1):
        rule = catalog.make(args.rule, m)
        if args.branch_cap:
            rule.branch_cap = args.branch_cap
        n = args.max_voters
        bounds = Bounds(
            n_single=n,
            n_perm=min(n, 3),
            n_pair_each=min(n, 3),
            n_pair_total=min(n, 3),
            n_continuity=min(n, 3),
            j_max=args.j_max,
        )
        reports = run_suite(rule, args.suite, bounds)
        if any(r.verdict == "violation" for r in reports):
            worst = EXIT_VIOLATION
        runs.append({"m": m, "reports": reports})
    report = {
        "command": "axioms",
        "rule": args.rule,
        "suite": args.suite,
        "max_voters": args.max_voters,
        "j_max": args.j_max,
        "runs": runs,
    }
    sys.stdout.write(render_report(report))
    return worst


_NAMED_TABLES = ("seqav", "seqpav", "seqccav", "clone-trusting")


def cmd_witness(args) -> int:
    source = args.table_or_rule
    if source in _NAMED_TABLES:
        table = catalog.thiele_table(source, args.m)
        digest = _digest(
            "\n".join(f"h({x})={v}" for x, v in enumerate(table.values))
        )
    else:
        text = Path(source).read_text()
        table = parse_counting_table(text)
        digest = _digest(text)
        if not isinstance(table, ThieleTable):
            raise TableParseError("witness constructions need a one-argument table h(x)")
    try:
        witness = witnesses.build_witness(args.construction, table)
    except WitnessNotApplicable as exc:
        report = {
            "command": "witness",
            "construction": args.construction,
            "table_digest": digest,
            "verdict": "no-witness",
            "reason": str(exc),
        }
        sys.stdout.write(render_report(report))
        return EXIT_OK
    rule = catalog.make_seq_thiele(table, "under-test")
    observed = rule.apply(witness.profile, witness.k)
    report = {
        "command": "witness",
        "construction": args.construction,
        "table_digest": digest,
        "verdict": "violation-reproduced",
        "witness": witness,
        "profile_text": format_profile(witness.profile),
        "observed": observed,
        "matches_expected": observed == witness.expected,
    }
    sys.stdout.write(render_report(report))
    return EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqvote",
        description="Sequential committee voting rules, axiom checks, and witnesses "
        "with exact rational arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="run a rule on a profile file")
    p_compute.add_argument("rule", help=f"rule name ({', '.join(catalog.RULE_NAMES)}) or 'table'")
    p_compute.add_argument("profile", help="path to a profile file")
    p_compute.add_argument("k", type=int, help="target committee size")
    p_compute.add_argument("--table", help="path to a counting-table file")
    p_compute.add_argument("--branch-cap", type=int, default=None)
    p_compute.add_argument(
        "--pretty", action="store_true",
        help="plain-text summary with candidates as letters instead of JSON",
    )

    p_axioms = sub.add_parser("axioms", help="run an axiom suite against a rule")
    p_axioms.add_argument("rule")
    p_axioms.add_argument("suite", choices=("proper", "monotone", "clones", "all"))
    p_axioms.add_argument("--max-voters", type=int, default=5)
    p_axioms.add_argument("--max-m", type=int, default=3)
    p_axioms.add_argument("--j-max", type=int, default=16)
    p_axioms.add_argument("--branch-cap", type=int, default=None)

    p_witness = sub.add_parser(
        "witness", help="construct a clone-axiom counterexample for a counting table"
    )
    p_witness.add_argument("construction", choices=witnesses.CONSTRUCTIONS)
    p_witness.add_argument(
        "table_or_rule",
        help=f"path to a table file, or one of {', '.join(_NAMED_TABLES)}",
    )
    p_witness.add_argument("--m", type=int, default=3, help="candidates for named tables")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "compute":
            return cmd_compute(args)
        if args.command == "axioms":
            return cmd_axioms(args)
        if args.command == "witness":
            return cmd_witness(args)
        parser.error(f"unknown command {args.command!r}")
    except (ProfileParseError, TableParseError, ProfileError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BranchCapError, EnumerationCapError, SymmetrizationCapError) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
