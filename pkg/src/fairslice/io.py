"""JSON input and output formats.

All rationals serialize as "p/q" strings ("p" when the denominator is 1);
floats are never accepted or produced. Problems name players in order; the
solve output names assignment entries by 1-based player number and refers to
pieces by their cut index (the smallest prefix-sum index equal to the piece's
right endpoint).
"""
from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction as Q
from typing import Optional

from .errors import InputFormatError
from .geometry import format_rational, parse_rational
from .preferences import Density, DensitySegment, PreferenceOracle
from .solver import Problem, SolveResult


def _rational_field(obj: dict, key: str, where: str) -> Q:
    if key not in obj:
        raise InputFormatError(f"{where}: missing field {key!r}")
    raw = obj[key]
    if not isinstance(raw, str):
        raise InputFormatError(
            f"{where}.{key}: rationals must be strings like \"1/3\", got {type(raw).__name__}"
        )
    try:
        return parse_rational(raw)
    except ValueError as exc:
        raise InputFormatError(f"{where}.{key}: {exc}") from exc


def problem_from_json(text: str) -> Problem:
    """Parse a problem document, with field-level diagnostics on bad input."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(data, dict):
        raise InputFormatError("top level must be an object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputFormatError("n: must be a positive integer")
    players = data.get("players")
    if not isinstance(players, list):
        raise InputFormatError("players: must be a list")
    if len(players) != n:
        raise InputFormatError(f"players: expected {n} entries, got {len(players)}")
    oracles = []
    for k, entry in enumerate(players):
        where = f"players[{k}]"
        if not isinstance(entry, dict):
            raise InputFormatError(f"{where}: must be an object")
        kind = entry.get("type")
        if kind == "custom":
            raise InputFormatError(
                f"{where}.type: custom oracles are library-only and cannot be loaded from JSON"
            )
        if kind not in ("attraction", "rejection"):
            raise InputFormatError(
                f"{where}.type: must be \"attraction\" or \"rejection\", got {kind!r}"
            )
        segments_raw = entry.get("density")
        if not isinstance(segments_raw, list) or not segments_raw:
            raise InputFormatError(f"{where}.density: must be a nonempty list")
        segments = []
        for i, seg in enumerate(segments_raw):
            seg_where = f"{where}.density[{i}]"
            if not isinstance(seg, dict):
                raise InputFormatError(f"{seg_where}: must be an object")
            segments.append(
                DensitySegment(
                    start=_rational_field(seg, "start", seg_where),
                    end=_rational_field(seg, "end", seg_where),
                    value=_rational_field(seg, "value", seg_where),
                )
            )
        try:
            density = Density(segments=tuple(segments))
        except ValueError as exc:
            raise InputFormatError(f"{where}.density: {exc}") from exc
        oracles.append(PreferenceOracle(kind=kind, density=density))
    return Problem(n=n, oracles=tuple(oracles))


def problem_to_json(problem: Problem) -> dict:
    players = []
    for oracle in problem.oracles:
        players.append(
            {
                "type": oracle.kind,
                "density": [
                    {
                        "start": format_rational(s.start),
                        "end": format_rational(s.end),
                        "value": format_rational(s.value),
                    }
                    for s in oracle.density.segments
                ],
            }
        )
    return {"n": problem.n, "players": players}


def _gap_str(gap: Optional[Q]) -> str:
    return "n/a" if gap is None else format_rational(gap)


def result_to_json(result: SolveResult) -> dict:
    """The solve output document."""
    division = result.division
    assignment = {}
    for player in sorted(result.assignment.pieces):
        piece = result.assignment.pieces[player]
        if piece is None:
            assignment[str(player)] = "empty"
        else:
            assignment[str(player)] = result.assignment.candidates[player]
    return {
        "status": result.status,
        "x_star": [format_rational(c) for c in result.x_star],
        "cuts": [format_rational(c) for c in division.cuts],
        "pieces": [[format_rational(a), format_rational(b)] for a, b in division.pieces],
        "assignment": assignment,
        "envy_gap": _gap_str(result.envy_gap),
        "trace": [
            {
                "depth": rec.depth,
                "mesh": format_rational(rec.mesh),
                "simplices": rec.simplex_count,
                "witnesses": rec.witness_count,
                "gap": _gap_str(rec.envy_gap),
            }
            for rec in result.trace
        ],
    }


def dump_json(document: dict, path: Optional[str]) -> str:
    """Serialize deterministically; write to path when given, return the text."""
    text = json.dumps(document, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def write_repro(instance: dict, directory: str = ".") -> str:
    """Persist a failure instance; the name is content-addressed."""
    text = json.dumps(instance, indent=2, sort_keys=True) + "\n"
    digest = hashlib.sha256(text.encode()).hexdigest()[:12]
    path = os.path.join(directory, f"repro-n{instance.get('n')}-{digest}.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path
