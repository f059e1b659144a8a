"""Built-in algebras used by the CLI, the examples and the test-suite."""
from __future__ import annotations

from .algebra import FiniteAlgebra, from_functions, product, trivial

SUB = [("0", 0), ("-", 2)]


def z2() -> FiniteAlgebra:
    return FiniteAlgebra([("0", 0), ("+", 2)], 2, {"0": 0, "+": [0, 1, 1, 0]}, "Z2")


def z2_squared() -> FiniteAlgebra:
    return product(z2(), z2(), name="Z2^2")[0]


def lattice2(pointed: bool = True) -> FiniteAlgebra:
    """The two-element lattice, optionally with the constant 0 (bottom)."""
    sig = [("meet", 2), ("join", 2)]
    tables = {"meet": [0, 0, 0, 1], "join": [0, 1, 1, 1]}
    if pointed:
        return FiniteAlgebra([("0", 0)] + sig, 2, dict(tables, **{"0": 0}), "L2_0")
    return FiniteAlgebra(sig, 2, tables, "L2")


def pointed_set2() -> FiniteAlgebra:
    return FiniteAlgebra([("0", 0)], 2, {"0": 0}, "PSet2")


def set2() -> FiniteAlgebra:
    return FiniteAlgebra([], 2, {}, "Set2")


def subtraction_algebra(labels, name) -> FiniteAlgebra:
    """``x - y = x`` if ``y = 0`` and ``0`` otherwise, with 0 at index 0."""
    return from_functions(SUB, len(labels), {"0": 0, "-": lambda x, y: x if y == 0 else 0},
                          name, labels)


def subtraction_x() -> FiniteAlgebra:
    return subtraction_algebra(["0", "a", "b"], "X")


def subtraction_y() -> FiniteAlgebra:
    return subtraction_algebra(["0", "c"], "Y")


BUILTINS = {
    "z2": z2,
    "z2^2": z2_squared,
    "lattice2-pointed": lambda: lattice2(True),
    "lattice2": lambda: lattice2(False),
    "pointed-set-2": pointed_set2,
    "set-2": set2,
    "sub-x": subtraction_x,
    "sub-y": subtraction_y,
    "trivial-z2": lambda: trivial(z2().signature),
}
