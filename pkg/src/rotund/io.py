"""JSON formats.

Rationals are written as ``"p/q"`` strings.  Formats::

    family       {"ground_size": n, "labels": [...]?, "sets": [[points], ...]}
    families     {"ground_size": n, "families": [[[points], ...], ...]}
    vector       {"ground_size": n, "values": ["p/q" | float, ...]}
    measure      {"ground_size": n, "weights": ["p/q", ...]}
    martingale   {"atoms": ["p/q", ...], "levels": [[[atoms], ...], ...],
                  "values": {"<level>": {"<block>": <vector>}}}
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .families import SetFamily
from .functions import Measure, vector
from .martingales import Filtration, Martingale


class InputError(ValueError):
    """Unreadable or schema-violating input."""


def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def load_json(path: str | Path):
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: malformed JSON at line {e.lineno}, column {e.colno}: "
                         f"{e.msg}") from None


def digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _plain(o):
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, Fraction):
        return q(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, default=_plain) + "\n"


def _need(doc, key, kind):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"{kind} document needs a {key!r} field")
    return doc[key]


def family_from_json(doc, allow_duplicates: bool = False) -> SetFamily:
    n = _need(doc, "ground_size", "family")
    sets = _need(doc, "sets", "family")
    try:
        return SetFamily.from_sets(int(n), sets, labels=doc.get("labels"),
                                   allow_duplicates=allow_duplicates)
    except (TypeError, ValueError) as e:
        raise InputError(f"bad family: {e}") from None


def family_to_json(family: SetFamily) -> dict:
    doc = {"ground_size": family.n, "sets": family.sets()}
    if family.ground.labels is not None:
        doc["labels"] = list(family.ground.labels)
    return doc


def families_from_json(doc) -> list[SetFamily]:
    if isinstance(doc, list):
        return [family_from_json(d) for d in doc]
    n = _need(doc, "ground_size", "families")
    fams = _need(doc, "families", "families")
    return [family_from_json({"ground_size": n, "sets": sets}) for sets in fams]


def families_to_json(families) -> dict:
    return {"ground_size": families[0].n, "families": [f.sets() for f in families]}


def _value(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InputError(f"not a number: {v!r}")
    return v


def vector_from_json(doc) -> np.ndarray:
    n = _need(doc, "ground_size", "vector")
    vals = [_value(v) for v in _need(doc, "values", "vector")]
    if len(vals) != n:
        raise InputError(f"vector has {len(vals)} values for ground size {n}")
    return vector(vals)


def vector_to_json(v) -> dict:
    out = []
    for x in v:
        out.append(q(x) if isinstance(x, (Fraction, int)) else float(x))
    return {"ground_size": len(out), "values": out}


def measure_from_json(doc) -> Measure:
    n = _need(doc, "ground_size", "measure")
    w = [_value(v) for v in _need(doc, "weights", "measure")]
    if len(w) != n:
        raise InputError(f"measure has {len(w)} weights for ground size {n}")
    try:
        return Measure(tuple(Fraction(x) for x in w))
    except (TypeError, ValueError) as e:
        raise InputError(f"bad measure: {e}") from None


def measure_to_json(mu: Measure) -> dict:
    return {"ground_size": mu.n, "weights": [q(x) for x in mu.weights]}


def martingale_to_json(m: Martingale) -> dict:
    f = m.filtration
    values = {}
    for n in range(m.depth):
        rows = m.level_values(n)
        values[str(n)] = {str(b): vector_to_json(row) for b, row in enumerate(rows)}
    return {"atoms": [q(x) for x in f.masses()],
            "levels": [f.blocks(n) for n in range(f.depth)],
            "values": values}


def martingale_from_json(doc) -> Martingale:
    atoms = [Fraction(a) for a in _need(doc, "atoms", "martingale")]
    levels = _need(doc, "levels", "martingale")
    raw = _need(doc, "values", "martingale")
    filt = Filtration.from_partitions(atoms, levels)
    level_values = []
    for n in range(filt.depth):
        blocks = raw.get(str(n))
        if blocks is None or len(blocks) != filt.num_blocks(n):
            raise InputError(f"level {n} needs one value per block")
        # blocks are renumbered by smallest atom inside the filtration
        row = [None] * len(blocks)
        for b, members in enumerate(levels[n]):
            row[int(filt.levels[n][members[0]])] = vector_from_json(blocks[str(b)])
        level_values.append(row)
    return Martingale.from_values(filt, level_values)
