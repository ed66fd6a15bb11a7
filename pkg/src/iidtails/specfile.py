"""Read and write the JSON distribution file format.

A distribution file looks like

    {"dim": 1, "atoms": [{"x": ["-1"], "p": "1/2"}, {"x": ["1"], "p": "1/2"}]}

with every rational rendered as a "numerator/denominator" string (or a bare
integer string).  The parser rejects nonpositive probabilities, duplicate
points, and probabilities that do not sum to exactly 1.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .dists import DiscreteDist


class SpecFileError(ValueError):
    """Malformed distribution file; message carries the offending location."""


def parse_rational(s, where: str = "value") -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecFileError(f"{where}: not a rational: {s!r} ({exc})") from None
    raise SpecFileError(
        f"{where}: expected a 'p/q' string or integer, got {type(s).__name__}"
    )


def dist_from_jsonable(doc) -> DiscreteDist:
    if not isinstance(doc, dict):
        raise SpecFileError(f"top level: expected an object, got {type(doc).__name__}")
    try:
        dim = doc["dim"]
        atoms = doc["atoms"]
    except KeyError as exc:
        raise SpecFileError(f"top level: missing key {exc}") from None
    if not isinstance(dim, int) or dim < 1:
        raise SpecFileError(f"dim: expected a positive integer, got {dim!r}")
    if not isinstance(atoms, list) or not atoms:
        raise SpecFileError("atoms: expected a nonempty list")
    pairs = []
    for i, entry in enumerate(atoms):
        where = f"atoms[{i}]"
        if not isinstance(entry, dict) or "x" not in entry or "p" not in entry:
            raise SpecFileError(f"{where}: expected an object with keys 'x' and 'p'")
        coords = entry["x"]
        if not isinstance(coords, list) or len(coords) != dim:
            raise SpecFileError(f"{where}.x: expected a list of {dim} coordinates")
        pt = tuple(
            parse_rational(c, f"{where}.x[{j}]") for j, c in enumerate(coords)
        )
        prob = parse_rational(entry["p"], f"{where}.p")
        if prob <= 0:
            raise SpecFileError(f"{where}.p: probability {prob} is not positive")
        pairs.append((pt, prob))
    seen = set()
    for i, (pt, _) in enumerate(pairs):
        if pt in seen:
            raise SpecFileError(f"atoms[{i}]: duplicate point {tuple(map(str, pt))}")
        seen.add(pt)
    total = sum(p for _, p in pairs)
    if total != 1:
        raise SpecFileError(f"atoms: probabilities sum to {total}, expected 1")
    return DiscreteDist(pairs, dim=dim)


def parse_dist(text: str) -> DiscreteDist:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return dist_from_jsonable(doc)


def load_dist(path) -> DiscreteDist:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_dist(text)
    except SpecFileError as exc:
        raise SpecFileError(f"{path}: {exc}") from None


def dist_to_jsonable(dist: DiscreteDist) -> dict:
    return {
        "dim": dist.dim,
        "atoms": [
            {"x": [str(c) for c in pt], "p": str(dist.atoms[pt])}
            for pt in dist.support
        ],
    }


def dump_dist(dist: DiscreteDist) -> str:
    return json.dumps(dist_to_jsonable(dist), indent=2, sort_keys=True) + "\n"


def save_dist(dist: DiscreteDist, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_dist(dist))
