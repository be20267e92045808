"""JSON files for curves and isogeny chains.

Integers are decimal strings; field elements are arrays of their
coordinates over GF(p); polynomials are arrays of field elements, low
degree first. The tower lists each level's defining polynomial the same
way, so ``x^2 + 1`` over GF(p) is ``[["1"], ["0"], ["1"]]``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra.fields import Field, PrimeField, field_from_tower, tower_moduli
from .algebra.poly import Poly
from .curves import Curve
from .errors import SupertraceError
from .isogenies import Chain, IsogenyStep


class FormatError(SupertraceError, ValueError):
    pass


def _ints(values) -> list[str]:
    return [str(int(v)) for v in values]


def element_to_json(F: Field, raw) -> list[str]:
    return _ints(F.coordinates(raw))


def element_from_json(F: Field, data):
    if not isinstance(data, list) or len(data) != F.absolute_degree:
        raise FormatError(f"expected {F.absolute_degree} coordinates, got {data!r}")
    try:
        return F.from_coordinates([_parse_int(s) for s in data])
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def _parse_int(s) -> int:
    if not isinstance(s, str):
        raise FormatError(f"expected a decimal string, got {s!r}")
    return int(s)


def poly_to_json(f: Poly) -> list[list[str]]:
    return [element_to_json(f.field, c) for c in f.coeffs]


def poly_from_json(F: Field, data) -> Poly:
    if not isinstance(data, list):
        raise FormatError("polynomial must be an array")
    return Poly(F, [element_from_json(F, c) for c in data], raw=True)


def field_to_json(F: Field) -> dict:
    levels = F.tower()
    tower = []
    for level, modulus in zip(levels, tower_moduli(F)):
        tower.append([element_to_json(level, c) for c in modulus])
    return {"p": str(F.p), "tower": tower}


def field_from_json(data: dict) -> Field:
    try:
        p = _parse_int(data["p"])
        level: Field = PrimeField(p)
        moduli = []
        for entry in data["tower"]:
            coeffs = [element_from_json(level, c) for c in entry]
            moduli.append(coeffs)
            level = field_from_tower(p, moduli)
        return level
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad field description: {exc}") from exc


def curve_to_json(E: Curve) -> dict:
    d = field_to_json(E.field)
    d["A"] = element_to_json(E.field, E.A)
    d["B"] = element_to_json(E.field, E.B)
    return d


def curve_from_json(data) -> Curve:
    if not isinstance(data, dict):
        raise FormatError("curve must be an object")
    F = field_from_json(data)
    try:
        return Curve(F, element_from_json(F, data["A"]), element_from_json(F, data["B"]))
    except FormatError:
        raise
    except (KeyError, SupertraceError, ValueError) as exc:
        raise FormatError(f"bad curve: {exc}") from exc


def step_to_json(step: IsogenyStep) -> dict:
    F = step.domain.field
    return {
        "A": element_to_json(F, step.codomain.A),
        "B": element_to_json(F, step.codomain.B),
        "u": poly_to_json(step.u),
        "v": poly_to_json(step.v),
        "s": poly_to_json(step.s),
        "t": poly_to_json(step.t),
        "c": element_to_json(F, step.c),
    }


def chain_to_json(chain: Chain) -> dict:
    return {"curve": curve_to_json(chain.curve), "steps": [step_to_json(s) for s in chain.steps]}


def chain_from_json(data) -> Chain:
    """Rebuild a chain; links are taken from the file, identities are not checked."""
    if not isinstance(data, dict) or "curve" not in data or "steps" not in data:
        raise FormatError("chain must be an object with 'curve' and 'steps'")
    E = curve_from_json(data["curve"])
    F = E.field
    steps = []
    domain = E
    for i, sd in enumerate(data["steps"]):
        try:
            codomain = Curve(F, element_from_json(F, sd["A"]), element_from_json(F, sd["B"]))
            step = IsogenyStep(
                domain,
                codomain,
                poly_from_json(F, sd["u"]),
                poly_from_json(F, sd["v"]),
                poly_from_json(F, sd["s"]),
                poly_from_json(F, sd["t"]),
                element_from_json(F, sd["c"]),
            )
        except FormatError as exc:
            raise FormatError(f"step {i}: {exc}") from exc
        except (KeyError, TypeError, SupertraceError) as exc:
            raise FormatError(f"step {i}: {exc}") from exc
        steps.append(step)
        domain = codomain
    return Chain(E, steps)


def dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def _read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def save_curve(E: Curve, path):
    Path(path).write_text(dumps(curve_to_json(E)))


def load_curve(path) -> Curve:
    return curve_from_json(_read_json(path))


def save_chain(chain: Chain, path):
    Path(path).write_text(dumps(chain_to_json(chain)))


def load_chain(path) -> Chain:
    return chain_from_json(_read_json(path))
