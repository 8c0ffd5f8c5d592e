"""Reading and writing the JSON/text formats used by the command line."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

from .algebra import AlgebraError, AlgebraSpec
from .finitefield import FieldCtx, FieldElem, FieldError, new_context
from .frobenius import AdditivePolynomial
from .multipoly import YPoly, parse_ypoly


class SpecError(ValueError):
    """Malformed input file or argument."""


def data_path(name: str) -> Path:
    """Path of a file shipped in the package's data directory."""
    return Path(str(resources.files("frobgen") / "data" / name))


def parse_field(text: str) -> tuple[int, int]:
    """``"p,e"`` or ``"p"`` -> (p, e)."""
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise SpecError(f"bad field {text!r}; expected p,e") from None
    if len(parts) == 1:
        parts.append(1)
    if len(parts) != 2:
        raise SpecError(f"bad field {text!r}; expected p,e")
    return parts[0], parts[1]


def split_csv(text: str) -> list[str]:
    """Split on commas outside brackets, so ``[1,2],0`` has two items."""
    items, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            items.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        items.append(cur.strip())
    return items


def parse_elements(text: str, ctx: FieldCtx) -> list[FieldElem]:
    try:
        return [ctx.parse(x) for x in split_csv(text)]
    except (ValueError, FieldError) as exc:
        raise SpecError(f"bad field elements {text!r}: {exc}") from None


def _elem(x: Any, ctx: FieldCtx) -> FieldElem:
    if isinstance(x, bool):
        raise SpecError("booleans are not field elements")
    if isinstance(x, int):
        return ctx(x)
    if isinstance(x, list):
        return ctx([int(c) for c in x])
    if isinstance(x, str):
        return ctx.parse(x)
    raise SpecError(f"cannot read field element {x!r}")


def _matrix(raw: Any, n: int, ctx: FieldCtx) -> list[list[FieldElem]]:
    if not isinstance(raw, list) or len(raw) != n or any(not isinstance(r, list) or len(r) != n for r in raw):
        raise SpecError(f"expected a {n}x{n} matrix")
    return [[_elem(x, ctx) for x in row] for row in raw]


def algebra_spec_from_dict(data: dict) -> tuple[AlgebraSpec, dict]:
    """Build an AlgebraSpec; also returns the remaining keys (e.g. a stored
    cyclic vector)."""
    try:
        p, n = int(data["p"]), int(data["n"])
        e = int(data.get("e", 1))
        gens_raw = data["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"algebra spec needs p, n and generators ({exc})") from None
    modulus = data.get("modulus")
    try:
        ctx = new_context(p, e, modulus)
    except (ValueError, FieldError) as exc:
        raise SpecError(str(exc)) from None
    if n < 1:
        raise SpecError("n must be positive")
    try:
        gens = [_matrix(g, n, ctx) for g in gens_raw]
        basis = [_matrix(b, n, ctx) for b in data["basis"]] if data.get("basis") is not None else None
    except (ValueError, FieldError) as exc:
        raise SpecError(str(exc)) from None
    extra = {k: v for k, v in data.items() if k not in {"p", "e", "n", "generators", "basis", "modulus"}}
    spec = AlgebraSpec(p, e, n, gens, basis, tuple(ctx.modulus) if modulus is not None else None)
    return spec, extra


def _read_json(path: str | Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc.msg})") from None


def load_algebra(path: str | Path) -> tuple[AlgebraSpec, dict]:
    return algebra_spec_from_dict(_read_json(path))


def load_basis(path: str | Path, spec: AlgebraSpec) -> list:
    """A basis file: JSON list of matrices, or an object with ``basis``."""
    data = _read_json(path)
    raw = data["basis"] if isinstance(data, dict) else data
    return [_matrix(b, spec.n, spec.ctx) for b in raw]


def load_polynomial(path: str | Path) -> AdditivePolynomial:
    """Polynomial JSON, either bare or nested under ``polynomial`` as
    written by ``gen --format structured``."""
    data = _read_json(path)
    if "polynomial" in data and isinstance(data["polynomial"], dict):
        data = data["polynomial"]
    try:
        return AdditivePolynomial.from_dict(data)
    except (KeyError, TypeError, ValueError, FieldError) as exc:
        raise SpecError(f"bad polynomial file: {exc}") from None


def read_ypoly_text(path: str | Path) -> tuple[str, dict[str, int]]:
    """Text polynomial file; ``# key=value`` comment tokens become a header."""
    header: dict[str, int] = {}
    body = []
    with open(path) as fh:
        for line in fh:
            if line.lstrip().startswith("#"):
                for tok in line.lstrip("# ").split():
                    if "=" in tok:
                        k, v = tok.split("=", 1)
                        if v.isdigit():
                            header[k] = int(v)
            else:
                body.append(line.strip())
    return " ".join(body), header


def load_ypoly(path: str | Path, ctx: FieldCtx | None = None, m: int | None = None) -> YPoly:
    text, header = read_ypoly_text(path)
    if ctx is None:
        ctx = new_context(header.get("p", 2), header.get("e", 1))
    if m is None:
        m = header.get("m", 0)
    try:
        return parse_ypoly(text, ctx, m)
    except ValueError as exc:
        raise SpecError(f"bad polynomial text in {path}: {exc}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


__all__ = [
    "AlgebraError",
    "SpecError",
    "algebra_spec_from_dict",
    "data_path",
    "dumps",
    "load_algebra",
    "load_basis",
    "load_polynomial",
    "load_ypoly",
    "parse_elements",
    "parse_field",
    "read_ypoly_text",
    "split_csv",
]
