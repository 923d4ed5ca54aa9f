import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schubsm.chernaffine import AffineLocContext, affine_ssm_loc, translation_diagonal
from schubsm.positroid import (
    PipeDream,
    PipeDreamError,
    enumerate_pd,
    f_tilde,
    is_symmetric_in_x,
    local_move_suite,
    lowest_degree_part,
    reading_permutation,
    specialize_check,
)
from schubsm.symra import Ring, substitute_x
from schubsm.weylperm import AffinePerm, WindowError, enumerate_bounded, is_bounded

EX7 = AffinePerm((2, 5, 4, 7))
CROSS_COLS = {2, 4, 5, 6, 9}
SINGLE_ROW = "".join("X" if j in CROSS_COLS else "B" for j in range(1, 10))


def test_reading_examples():
    assert reading_permutation(PipeDream.from_ascii("BBBB\nXBXB")) == EX7
    f = reading_permutation(PipeDream(1, 9, (SINGLE_ROW,)))
    assert all(f(i) == i for i in CROSS_COLS)
    assert (f(1), f(3), f(7), f(8)) == (3, 7, 8, 10)
    assert reading_permutation(PipeDream(1, 2, ("BB",))).window == (2, 3)


def test_closed_loop_rejected():
    with pytest.raises(PipeDreamError):
        reading_permutation(PipeDream(2, 3, ("XXX", "BXB")))
    with pytest.raises(PipeDreamError):
        PipeDream(1, 3, ("BQB",))


def test_grid_formats():
    pd = PipeDream.from_ascii("BBBB\nXBXB")
    assert pd.to_ascii() == "BBBB\nXBXB"
    assert pd.to_json() == {"k": 2, "n": 4, "rows": ["BBBB", "XBXB"]}
    assert PipeDream.from_json(pd.to_json()) == pd


def test_enumeration_examples():
    assert len(enumerate_pd(EX7)) == 6
    single = reading_permutation(PipeDream(1, 9, (SINGLE_ROW,)))
    assert enumerate_pd(single) == [PipeDream(1, 9, (SINGLE_ROW,))]
    assert enumerate_pd(AffinePerm((2, 3))) == [PipeDream(1, 2, ("BB",))]
    assert len(enumerate_pd(AffinePerm((2, 3)), "brute")) == 1


def test_enumeration_guards():
    with pytest.raises(WindowError):
        enumerate_pd(AffinePerm((0, 5)))
    with pytest.raises(ValueError):
        enumerate_pd(AffinePerm.translation((1, 1, 1, 0, 0, 0, 0)), limit=20)


@pytest.mark.parametrize("k,n", [(1, 2), (1, 3), (2, 3), (2, 4), (1, 4)])
def test_dfs_matches_brute_force(k, n):
    for f in enumerate_bounded(k, n):
        dfs = enumerate_pd(f)
        assert dfs == enumerate_pd(f, "brute")
        for pd in dfs:
            g = reading_permutation(pd)
            assert g == f and is_bounded(g)


def test_dfs_matches_brute_force_sampled_25():
    rng = random.Random(5)
    for f in rng.sample(enumerate_bounded(2, 5), 12):
        assert enumerate_pd(f) == enumerate_pd(f, "brute")


def test_accepted_grids_are_exactly_the_bounded_readings():
    for k, n in [(1, 3), (2, 3), (2, 4)]:
        found = set()
        for f in enumerate_bounded(k, n):
            found.update(enumerate_pd(f))
        rows = ["".join(t) for t in itertools.product("BX", repeat=n) if "B" in t]
        bounded = {
            PipeDream(k, n, g) for g in itertools.product(rows, repeat=k) if is_bounded(reading_permutation(PipeDream(k, n, g)))
        }
        assert found == bounded


def _ex7_formula():
    R = Ring(2, 4)
    x, y = R.x, R.y
    num = (
        (x(2) - y(1)) * (x(2) - y(3))
        + (x(1) - y(2)) * (x(2) - y(3))
        + (x(1) - y(4)) * (x(2) - y(1))
        + (x(1) - y(2)) * (x(1) - y(4))
        + (x(1) - y(3)) * (x(1) - y(4)) * (x(2) - y(1)) * (x(2) - y(2))
        + (x(1) - y(1)) * (x(1) - y(2)) * (x(2) - y(3)) * (x(2) - y(4))
    )
    den = R.one()
    for i in (1, 2):
        for j in range(1, 5):
            den = den * (1 + x(i) - y(j))
    return num / den


def test_generating_function_examples():
    F = f_tilde(EX7)
    assert F == _ex7_formula()
    assert len(F.den) == 8 and all(m == 1 for _, m in F.den)

    R = Ring(1, 9)
    x = R.x(1)
    expected = R.one()
    for i in CROSS_COLS:
        expected = expected * (x - R.y(i))
    for i in range(1, 10):
        expected = expected / (1 + x - R.y(i))
    single = reading_permutation(PipeDream(1, 9, (SINGLE_ROW,)))
    assert f_tilde(single) == expected

    R12 = Ring(1, 2)
    x = R12.x(1)
    assert f_tilde(AffinePerm((2, 3))) == 1 / ((1 + x - R12.y(1)) * (1 + x - R12.y(2)))


def test_full_denominator_kept():
    F = f_tilde(AffinePerm((3, 2)))
    assert len(F.den) == 2


@pytest.mark.parametrize("k,n", [(1, 3), (2, 4), (2, 5)])
def test_symmetry_in_x(k, n):
    for f in enumerate_bounded(k, n):
        assert is_symmetric_in_x(f_tilde(f)), f


def test_specialization_examples():
    f = AffinePerm((3, 2))
    F = f_tilde(f)
    R2 = Ring(0, 2)
    y1, y2 = R2.y(1), R2.y(2)
    assert substitute_x(F, [2]).is_zero()
    assert affine_ssm_loc(f, AffinePerm.translation((0, 1))).is_zero()
    assert substitute_x(F, [1]) == (y1 - y2) / (1 + y1 - y2) == affine_ssm_loc(f, AffinePerm.translation((1, 0)))
    t = AffinePerm((5, 6, 3, 4))
    expected = translation_diagonal((1, 1, 0, 0))
    assert substitute_x(f_tilde(t), [1, 2]) == expected == affine_ssm_loc(t, t)


@pytest.mark.parametrize("k,n", [(1, 2), (1, 3), (2, 4)])
def test_specialization_all(k, n):
    ctx = AffineLocContext(n)
    for f in enumerate_bounded(k, n):
        report = specialize_check(f, ctx)
        assert report.ok, (f, report.mismatches)


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_specialization_sampled_25(data):
    f = data.draw(st.sampled_from(enumerate_bounded(2, 5)))
    assert specialize_check(f).ok


def test_local_moves():
    results = local_move_suite()
    assert {r["identity"] for r in results} == {"yang-baxter", "unitarity", "normalization"}
    assert sum(r["identity"] == "yang-baxter" for r in results) == 27
    assert all(r["ok"] for r in results)


def test_lowest_degree_part():
    R = Ring(1, 2)
    x = R.x(1)
    F = f_tilde(AffinePerm((3, 2)))
    low = lowest_degree_part(F)
    assert low == x - R.y(2)
    with pytest.raises(ValueError):
        lowest_degree_part(1 / (x - R.y(1)))
