"""Named arrangements used as regression fixtures and by the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .arrangement import Arrangement, make_arrangement


def boolean(ell: int = 3) -> Arrangement:
    if ell < 1:
        raise ValueError("boolean arrangement needs ell >= 1")
    return make_arrangement(ell, [[int(i == j) for j in range(ell)] for i in range(ell)])


def tangent() -> Arrangement:
    """xyz(x+y+z)."""
    return make_arrangement(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])


def factor() -> Arrangement:
    """xyz(y-z)(x-y)(x+y)(x-2y)(x+2y)."""
    return make_arrangement(
        3,
        [[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 1, -1],
         [1, -1, 0], [1, 1, 0], [1, -2, 0], [1, 2, 0]],
    )


def b3() -> Arrangement:
    """xyz(x±y)(x±z)(y±z)(y−x±z)(y+x±z), 13 planes."""
    return make_arrangement(
        3,
        [[1, 0, 0], [0, 1, 0], [0, 0, 1],
         [1, 1, 0], [1, -1, 0], [1, 0, 1], [1, 0, -1], [0, 1, 1], [0, 1, -1],
         [-1, 1, 1], [-1, 1, -1], [1, 1, 1], [1, 1, -1]],
    )


def addnot() -> Arrangement:
    """xyzw(x−y)(y−z)(z−w)(x+w) in four variables; the last plane is x+w."""
    return make_arrangement(
        4,
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
         [1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [1, 0, 0, 1]],
    )


def braid_cone() -> Arrangement:
    """xyz(x−y): free with exponents (1,1,2)."""
    return make_arrangement(3, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0]])


def shi_b(ell: int = 2) -> Arrangement:
    """Coned Shi arrangement of type B in variables x_1..x_ell, z (z last)."""
    if not 2 <= ell <= 3:
        raise ValueError("shi-b is provided for ell in {2, 3}")
    n = ell + 1
    z = ell

    def form(**coef):
        v = [0] * n
        for k, c in coef.items():
            v[z if k == "z" else int(k[1:])] = c
        return v

    forms = [form(z=1)]
    forms += [form(**{f"x{i}": 1}) for i in range(ell)]
    forms += [form(**{f"x{i}": 1, "z": -1}) for i in range(ell)]
    for i, j in combinations(range(ell), 2):
        forms.append(form(**{f"x{i}": 1, f"x{j}": -1}))
        forms.append(form(**{f"x{i}": 1, f"x{j}": 1}))
    for i, j in combinations(range(ell), 2):
        forms.append(form(**{f"x{i}": 1, f"x{j}": -1, "z": -1}))
    for i, j in combinations(range(ell), 2):
        forms.append(form(**{f"x{i}": 1, f"x{j}": 1, "z": -1}))
    return make_arrangement(n, forms)


GENERIC_PLANE = (1, 7, 53)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[..., Arrangement]
    params: tuple = ()
    expected: dict = field(default_factory=dict)

    def arrangement(self) -> Arrangement:
        return self.build(*self.params)


CATALOG: dict[str, CatalogEntry] = {
    "boolean": CatalogEntry("boolean", boolean, (3,), {"verdict": "Free", "exponents": (1, 1, 1)}),
    "tangent": CatalogEntry(
        "tangent", tangent, (), {"verdict": "StrictPOG", "poexp": (1, 2, 2), "level": 2}
    ),
    "factor": CatalogEntry("factor", factor, (), {"verdict": "Free", "exponents": (1, 2, 5)}),
    "b3": CatalogEntry("b3", b3, (), {"verdict": "Free", "exponents": (1, 5, 7)}),
    "addnot": CatalogEntry(
        "addnot", addnot, (), {"verdict": "NeitherAtBound", "generator_degrees": (1, 3, 3, 3, 3, 3, 3)}
    ),
    "braid-cone": CatalogEntry("braid-cone", braid_cone, (), {"verdict": "Free", "exponents": (1, 1, 2)}),
    "shi-b": CatalogEntry("shi-b", shi_b, (2,), {"verdict": "Free", "exponents": (1, 4, 4)}),
}


def catalog(name: str, *params: int) -> Arrangement:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    return entry.build(*(params or entry.params))
