import csv
import logging
from pathlib import Path

import pytest

from gpkd.errors import DomainError
from gpkd.formulas import (
    formula_for_family,
    gp_cycle,
    gp_path,
    gp_prism,
    gp_prism_via_constructions,
    path_identity_rhs,
    prism_case,
)
from gpkd.graph import PositionParams

GOLDEN = Path(__file__).parent / "golden"


def read_table(name):
    with open(GOLDEN / name) as fh:
        rows = list(csv.reader(fh))
    ks = [int(x) for x in rows[0][1:]]
    return {(k, int(r[0])): int(v) for r in rows[1:] for k, v in zip(ks, r[1:])}


def test_path_table():
    table = read_table("table1_path14.csv")
    assert len(table) == 13 * 14
    for (k, d), v in table.items():
        assert gp_path(14, (k, d)) == v


def test_cycle_table():
    table = read_table("table2_cycle14.csv")
    assert len(table) == 7 * 8
    for (k, d), v in table.items():
        assert gp_cycle(14, (k, d)) == v


def test_path_examples():
    assert gp_path(14, (3, 2)) == 10
    assert gp_path(14, (14, 13)) == 13
    assert gp_path(5, (7, 3)) == 5
    assert gp_path(3, PositionParams(5, 9)) == 3


def test_cycle_examples_and_domain():
    assert gp_cycle(14, (3, 2)) == 9
    assert gp_cycle(16, (3, 5)) == 5
    assert gp_cycle(14, (9, 7)) == 14
    with pytest.raises(DomainError):
        gp_cycle(10, (3, 6))
    with pytest.raises(DomainError):
        gp_cycle(2, (2, 1))


def test_cycle_k3_closed_form():
    # for k = 3 the value is floor(2n / (d + 1)); at (16, 5) that is 5
    for n in range(3, 40):
        for d in range(2, n // 2 + 1):
            assert gp_cycle(n, (3, d)) == (2 * n) // (d + 1)


def test_prism_examples():
    assert gp_prism(7, (2, 3)) == 3
    assert gp_prism(12, (4, 5)) == 12
    assert prism_case(12, (4, 5)) == (12, "3(a)i")
    assert prism_case(22, (5, 9)) == (18, "3(b)i")
    assert gp_prism(1, (3, 5)) == 2
    assert gp_prism(4, (6, 2)) == 8


def test_prism_logs_case(caplog):
    with caplog.at_level(logging.DEBUG, logger="gpkd.formulas"):
        gp_prism(22, (5, 9))
    assert "3(b)i" in caplog.text


def test_prism_constructions_examples():
    assert gp_prism_via_constructions(22, (5, 9)) == 18
    assert gp_prism_via_constructions(5, (4, 5)) == 5
    assert gp_prism_via_constructions(6, (4, 5)) == 6
    assert gp_prism_via_constructions(4, (4, 5)) == 4
    with pytest.raises(DomainError):
        gp_prism_via_constructions(6, (3, 5))
    with pytest.raises(DomainError):
        gp_prism_via_constructions(6, (5, 3))


def test_prism_equals_constructions():
    for n in range(1, 40):
        for k in range(4, 9):
            for d in range(k - 1, 20):
                assert gp_prism(n, (k, d)) == gp_prism_via_constructions(n, (k, d)), (n, k, d)


def test_path_identity():
    checked = 0
    for n in range(1, 40):
        for k in range(3, 9):
            for d in range(2 * k - 3, n):
                assert gp_prism(n, (k, d)) == path_identity_rhs(n, (k, d)), (n, k, d)
                checked += 1
    assert checked > 1000
    with pytest.raises(DomainError):
        path_identity_rhs(10, (2, 3))


@pytest.mark.parametrize("fn, n", [(gp_path, 12), (gp_cycle, 24), (gp_prism, 12)])
def test_formulas_are_monotone_in_k_and_d(fn, n):
    for k in range(2, 10):
        for d in range(1, n // 2 + 1):
            v = fn(n, (k, d))
            assert fn(n, (k + 1, d)) >= v
            if d + 1 <= n // 2:
                assert fn(n, (k, d + 1)) <= v


def test_trivial_regime():
    for n in range(3, 15):
        for k in range(3, 8):
            for d in range(1, k - 1):
                assert gp_path(n, (k, d)) == n
                assert gp_cycle(n, (k, d)) == n
                assert gp_prism(n, (k, d)) == 2 * n


def test_formula_for_family():
    assert formula_for_family("cycle", 16, (3, 5)) == 5
    with pytest.raises(DomainError):
        formula_for_family("torus", 4, (3, 2))
