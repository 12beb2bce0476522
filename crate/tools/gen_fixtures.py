#!/usr/bin/env python3
"""Regenerate the frozen fixtures under crates/fanfare/tests/fixtures.

Every value is computed here from first principles, in exact arithmetic
and independently of the Rust crate: Bernoulli numbers and zeta values
through sympy, lattice point counts by direct enumeration, Jacobi form
dimensions through the classical weight-by-weight formula, and the degree
grid through the zeta product form. The test suite consumes the committed
files only; rerun this script and diff when extending a table.
"""

import json
from pathlib import Path

import sympy

OUT = Path(__file__).resolve().parent.parent / "crates" / "fanfare" / "tests" / "fixtures"


def write(name: str, payload: dict) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / name
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")


def bernoulli_fixture() -> None:
    values = {str(n): str(sympy.bernoulli(n)) for n in range(0, 31, 2)}
    write("bernoulli.json", {"values": values})


def zeta_fixture() -> None:
    values = {str(k): str(sympy.zeta(1 - 2 * k)) for k in range(1, 11)}
    write("zeta_negative.json", {"values": values})


def count_square(l: int) -> int:
    return sum(1 for x in range(l + 1) for _ in range(l + 1))


def count_simplex(l: int) -> int:
    return sum(1 for x in range(l + 1) for _ in range(l + 1 - x))


def ehrhart_fixture() -> None:
    scales = list(range(1, 11)) + [50]
    write(
        "ehrhart.json",
        {
            "square": {str(l): count_square(l) for l in scales},
            "simplex": {str(l): count_simplex(l) for l in scales},
        },
    )


def dim_modular(w: int) -> int:
    if w < 0 or w % 2:
        return 0
    return w // 12 + (0 if w % 12 == 2 else 1)


def dim_jacobi(k: int, m: int) -> int:
    assert k >= 4 and k % 2 == 0 and m >= 1
    total = 0
    for j in range(m + 1):
        total += dim_modular(k + 2 * j) - -(-(j * j) // (4 * m))
    return total


def jacobi_fixture() -> None:
    levels = [4, 6, 8, 10, 12, 16, 20, 24, 32, 40, 48, 64, 80, 100, 120, 160, 200]
    values = {str(l): dim_jacobi(l, l) for l in levels}
    write("jacobi_dims.json", {"values": values})


def degree(g: int, k: int, m: int, index: int, minus_id: bool) -> sympy.Rational:
    G = g * (g + 1) // 2
    n = G + g
    val = sympy.Integer(-1) ** G * sympy.factorial(n) * sympy.Integer(m) ** g
    val *= sympy.Integer(k) ** G * index
    for j in range(1, g + 1):
        val *= sympy.zeta(1 - 2 * j) / sympy.factorial2(2 * j - 1)
    if minus_id:
        val *= 2
    return sympy.Rational(val)


def degree_fixture() -> None:
    rows = []
    for g in range(1, 7):
        for k in range(1, 4):
            for m in range(1, 4):
                for index in (1, 2):
                    for minus_id in (False, True):
                        rows.append(
                            {
                                "g": g,
                                "k": k,
                                "m": m,
                                "index": index,
                                "minus_id": minus_id,
                                "degree": str(degree(g, k, m, index, minus_id)),
                            }
                        )
    write("degree_grid.json", {"rows": rows})


def volume_fixture() -> None:
    values = {}
    for g in range(1, 7):
        G = g * (g + 1) // 2
        n = G + g
        coeff = sympy.Integer(-1) ** n * sympy.Integer(2) ** (g * g + 1)
        for j in range(1, g + 1):
            coeff *= sympy.factorial(j - 1) * sympy.bernoulli(2 * j) / sympy.factorial(2 * j)
        values[str(g)] = {"coeff": str(sympy.Rational(coeff)), "pi_pow": G}
    write("siegel_volumes.json", {"values": values})


if __name__ == "__main__":
    bernoulli_fixture()
    zeta_fixture()
    ehrhart_fixture()
    jacobi_fixture()
    degree_fixture()
    volume_fixture()
