"""Instance files and report serialization.

Integers are written as decimal strings and rationals as ``"p/q"`` so that no
JSON consumer can lose precision. Parsing accepts JSON numbers as well.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional


class InstanceError(ValueError):
    """Malformed instance file; the message names the offending location."""


@dataclass(frozen=True)
class InstanceFile:
    A: tuple
    b: Optional[tuple] = None
    a: Optional[tuple] = None
    b_a: Optional[int] = None
    lattice: str = "zn"

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])


def _int(x, where):
    if isinstance(x, bool):
        raise InstanceError(f"{where}: expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        s = x.strip()
        body = s[1:] if s[:1] in "+-" else s
        if body.isdigit():
            return int(s)
    raise InstanceError(f"{where}: expected an integer, got {x!r}")


def _rat(x, where):
    if isinstance(x, bool):
        raise InstanceError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InstanceError(f"{where}: expected a rational such as \"5/3\", got {x!r}")


def instance_from_dict(data) -> InstanceFile:
    if not isinstance(data, dict) or "A" not in data:
        raise InstanceError("instance must be an object with a matrix \"A\"")
    rows = data["A"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InstanceError("A: expected a non-empty list of rows")
    n = len(rows[0])
    if n == 0:
        raise InstanceError("A[0]: rows must be non-empty")
    A = []
    for i, r in enumerate(rows):
        if len(r) != n:
            raise InstanceError(f"A[{i}]: row has length {len(r)}, expected {n}")
        A.append(tuple(_int(x, f"A[{i}][{j}]") for j, x in enumerate(r)))
    m = len(A)
    b = a = b_a = None
    if data.get("b") is not None:
        if not isinstance(data["b"], list) or len(data["b"]) != m:
            raise InstanceError(f"b: expected a list of length {m}")
        b = tuple(_rat(x, f"b[{i}]") for i, x in enumerate(data["b"]))
    if data.get("a") is not None:
        if not isinstance(data["a"], list) or len(data["a"]) != n:
            raise InstanceError(f"a: expected a list of length {n}")
        a = tuple(_int(x, f"a[{i}]") for i, x in enumerate(data["a"]))
    if data.get("b_a") is not None:
        b_a = _int(data["b_a"], "b_a")
    lattice = data.get("lattice", "zn")
    if lattice not in ("zn", "rhs"):
        raise InstanceError(f"lattice: expected \"zn\" or \"rhs\", got {lattice!r}")
    return InstanceFile(tuple(A), b, a, b_a, lattice)


def parse_instance(path) -> InstanceFile:
    """Read and validate an instance file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InstanceError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from exc
    return instance_from_dict(data)


def to_jsonable(obj):
    """Strings for every number, lists for tuples, dicts for dataclasses."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, str):
        return obj
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def instance_to_dict(inst: InstanceFile) -> dict:
    out = {"A": to_jsonable(inst.A)}
    if inst.b is not None:
        out["b"] = to_jsonable(inst.b)
    if inst.a is not None:
        out["a"] = to_jsonable(inst.a)
    if inst.b_a is not None:
        out["b_a"] = to_jsonable(inst.b_a)
    out["lattice"] = inst.lattice
    return out


def serialize(inst: InstanceFile) -> str:
    return json.dumps(instance_to_dict(inst), indent=2) + "\n"


def write_instance(inst: InstanceFile, path) -> None:
    Path(path).write_text(serialize(inst))
