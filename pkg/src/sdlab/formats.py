"""JSON/CSV wire formats. Exact rationals always travel as "p/q" strings."""

from __future__ import annotations

import csv
import io
import json
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping

from .complex import ComplexError, SimplicialComplex, build_from_facets
from .polynomial import RationalPolynomial


class FormatError(ValueError):
    pass


def parse_rational(s: Any) -> Fraction:
    if isinstance(s, bool):
        raise FormatError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        try:
            return Fraction(s.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a rational: {s!r}") from exc
    raise FormatError(f"rationals must be strings like \"p/q\", got {s!r}")


def exact(x: Fraction | int) -> str:
    return str(Fraction(x))


def decimal(x: Fraction | int, digits: int = 17) -> str:
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def rational_pair(x: Fraction | int) -> dict[str, str]:
    return {"exact": exact(x), "decimal": decimal(x)}


def complex_to_json(K: SimplicialComplex, coords: Mapping[int, Iterable[Fraction]] | None = None) -> dict:
    out: dict[str, Any] = {"facets": [list(f) for f in K.facets]}
    if coords is not None:
        out["coordinates"] = {str(v): [exact(c) for c in coords[v]] for v in sorted(coords)}
    return out


def complex_from_json(data: Any) -> tuple[SimplicialComplex, dict[int, tuple[Fraction, ...]] | None]:
    if not isinstance(data, dict) or "facets" not in data:
        raise FormatError('complex JSON needs a "facets" list')
    facets = data["facets"]
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise FormatError('"facets" must be a list of vertex lists')
    try:
        K = build_from_facets(facets)
    except ComplexError as exc:
        raise FormatError(str(exc)) from exc
    coords = None
    if data.get("coordinates") is not None:
        raw = data["coordinates"]
        if not isinstance(raw, dict):
            raise FormatError('"coordinates" must map vertex ids to coordinate lists')
        try:
            coords = {int(k): tuple(parse_rational(c) for c in v) for k, v in raw.items()}
        except ValueError as exc:
            raise FormatError(f"bad coordinates: {exc}") from exc
    return K, coords


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from exc


def load_complex(path: str | Path):
    return complex_from_json(load_json(path))


def jsonable(obj: Any) -> Any:
    """Convert exact values for json.dumps: Fractions become "p/q" strings."""
    if isinstance(obj, Fraction):
        return exact(obj)
    if isinstance(obj, RationalPolynomial):
        return obj.to_strings()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=False) + "\n"


def csv_text(header: list[str] | None, rows: Iterable[Iterable[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    for row in rows:
        w.writerow([exact(v) if isinstance(v, Fraction) else ("" if v is None else v) for v in row])
    return buf.getvalue()
