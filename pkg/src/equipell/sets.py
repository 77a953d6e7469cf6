"""Built-in semi-algebraic sets and the set-definition file format.

Each built-in matches one of the worked examples: the interval, the unit box
and disc, the canonical simplex, the intersection of two ellipsoids and the
quartic "TV screen".  A set-definition file is JSON with fields
{name, n, R, generators, known_measure?} where generators use the polynomial
literal format (g_0 = 1 is implicit and never listed).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .momkit import GeneratorSet
from .mvpoly import Poly, poly_from_literal, poly_to_literal


def _xy():
    return Poly.variable(2, 0), Poly.variable(2, 1)


def interval() -> GeneratorSet:
    x = Poly.variable(1, 0)
    return GeneratorSet(
        n=1,
        generators=(1 - x**2,),
        radius=Fraction(1),
        name="interval",
        known_measure="interval",
    )


def box2d() -> GeneratorSet:
    x, y = _xy()
    return GeneratorSet(
        n=2,
        generators=(1 - x**2, 1 - y**2, (1 - x**2) * (1 - y**2)),
        radius=Fraction(2),
        name="box2d",
        known_measure="box2d",
    )


def ball2d() -> GeneratorSet:
    x, y = _xy()
    return GeneratorSet(
        n=2,
        generators=(1 - x**2 - y**2,),
        radius=Fraction(1),
        name="ball2d",
        known_measure="ball2d",
    )


def simplex2d() -> GeneratorSet:
    # x(1-x-y), y(1-x-y), xy; R = 1 works since
    # 1 - x^2 - y^2 = (1-x-y)^2 + 2 g_1 + 2 g_2 + 2 g_3.
    x, y = _xy()
    s = 1 - x - y
    return GeneratorSet(
        n=2,
        generators=(x * s, y * s, x * y),
        radius=Fraction(1),
        name="simplex2d",
        known_measure="simplex2d",
    )


def ellipsoids2() -> GeneratorSet:
    # theta = (g_1 + g_2)/5 certifies R = 2/5.
    x, y = _xy()
    return GeneratorSet(
        n=2,
        generators=(1 - 2 * x**2 - 3 * y**2, 1 - 3 * x**2 - 2 * y**2),
        radius=Fraction(2, 5),
        name="ellipsoids2",
    )


def tvscreen() -> GeneratorSet:
    # x^4 + y^4 <= 1 implies x^2 + y^2 <= 2.
    x, y = _xy()
    return GeneratorSet(
        n=2,
        generators=(1 - x**4 - y**4,),
        radius=Fraction(2),
        name="tvscreen",
    )


BUILTIN = {
    "interval": interval,
    "box2d": box2d,
    "ball2d": ball2d,
    "simplex2d": simplex2d,
    "ellipsoids2": ellipsoids2,
    "tvscreen": tvscreen,
}


def builtin_set(name: str) -> GeneratorSet:
    try:
        return BUILTIN[name]()
    except KeyError:
        raise ValueError(
            f"unknown set {name!r}; choose from {sorted(BUILTIN)}"
        ) from None


def set_to_jsonable(genset: GeneratorSet) -> dict:
    out = {
        "name": genset.name,
        "n": genset.n,
        "R": str(genset.radius),
        "generators": [poly_to_literal(g) for g in genset.generators],
    }
    if genset.known_measure:
        out["known_measure"] = genset.known_measure
    return out


def set_from_jsonable(data: dict) -> GeneratorSet:
    n = int(data["n"])
    gens = tuple(poly_from_literal(n, item) for item in data["generators"])
    return GeneratorSet(
        n=n,
        generators=gens,
        radius=Fraction(str(data["R"])),
        name=str(data.get("name", "")),
        known_measure=data.get("known_measure"),
    )


def load_set(path) -> GeneratorSet:
    with open(path) as handle:
        return set_from_jsonable(json.load(handle))


def save_set(genset: GeneratorSet, path) -> None:
    with open(path, "w") as handle:
        json.dump(set_to_jsonable(genset), handle, indent=2)
        handle.write("\n")


def resolve_set(name_or_path: str) -> GeneratorSet:
    """A built-in name, or a path to a set-definition JSON file."""
    if name_or_path in BUILTIN:
        return BUILTIN[name_or_path]()
    return load_set(name_or_path)
