"""JSON helpers for rationals, algebras, forms and deformations."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from sympdef.errors import ConfigError


def format_rational(c) -> str:
    c = Fraction(c)
    return str(c)


def parse_rational(raw) -> Fraction:
    if isinstance(raw, bool):
        raise ConfigError(f"not a rational: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ConfigError(f"not a rational (expected an int or an 'n/d' string): {raw!r}")


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=False)


_TRUNC = re.compile(r"^\s*([A-Za-z]\w*)\s*\^\s*(\d+)\s*$")
_MPOW = re.compile(r"^\s*m\s*\^\s*(\d+)\s*\(([^)]*)\)\s*$")


def parse_base(text: str):
    """``"t^k"``, ``"m^k(s,t)"``, ``"Q"``, inline JSON or a path to a JSON algebra file."""
    from sympdef.artin import ArtinAlgebra

    text = text.strip()
    if text in ("Q", "QQ", "1"):
        return ArtinAlgebra.rationals()
    m = _MPOW.match(text)
    if m:
        names = [n.strip() for n in m.group(2).split(",") if n.strip()]
        if not names:
            raise ConfigError("m^k(...) needs at least one generator")
        return ArtinAlgebra.maximal_power(int(m.group(1)), names)
    m = _TRUNC.match(text)
    if m:
        k = int(m.group(2))
        if k < 1:
            raise ConfigError("truncation order must be positive")
        return ArtinAlgebra.truncated(k, m.group(1))
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad algebra JSON: {exc}") from exc
        return ArtinAlgebra.from_json(data)
    if Path(text).is_file():
        return ArtinAlgebra.from_json(load_json(text))
    raise ConfigError(f"cannot parse base algebra {text!r}; use t^k, m^k(s,t) or a JSON description")


def parse_ideal(A, text: str):
    gens = [g.strip() for g in text.split(",") if g.strip()]
    return A.ideal(gens) if gens else A.zero_ideal()


def parse_grid(text: str) -> list[int]:
    m = re.match(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        values = list(range(lo, hi + 1))
    else:
        try:
            values = [int(v) for v in text.split(",") if v.strip()]
        except ValueError as exc:
            raise ConfigError(f"bad grid {text!r}; use a..b or a comma list") from exc
    if not values:
        raise ConfigError("the sample grid is empty")
    return values


def parse_period(A, text: str) -> tuple:
    """Period coordinates: one base polynomial per cohomology class, separated by ``;``."""
    return tuple(A.parse(part) for part in text.split(";"))
