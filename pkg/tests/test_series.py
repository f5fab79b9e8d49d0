import json
import random
from fractions import Fraction

import pytest

from ascentseq import gentree_0021 as gt
from ascentseq import gentree_pair as gp
from ascentseq.series import (
    GF_NAMES,
    InexactDivisionError,
    MSeries,
    USeries,
    a007317,
    binom,
    build_closed_form,
    catalan,
    diagonal,
    exact_divide,
    invert_unit,
    residual,
    sqrt_unit,
    substitute,
)


def rand_useries(rng, order, unit=False, monic=False):
    coeffs = [
        Fraction(rng.randrange(-5, 6), rng.randrange(1, 5)) for _ in range(order + 1)
    ]
    if monic:
        coeffs[0] = Fraction(1)
    elif unit:
        while not coeffs[0]:
            coeffs[0] = Fraction(rng.randrange(-5, 6), rng.randrange(1, 5))
    return USeries("z", order, coeffs)


def rand_mseries(rng, variables, order, terms=8, unit=False, monic=False):
    t = {}
    for _ in range(terms):
        e = tuple(rng.randrange(0, order + 1) for _ in variables)
        if sum(e) <= order:
            t[e] = Fraction(rng.randrange(-5, 6), rng.randrange(1, 5))
    zero = (0,) * len(variables)
    if monic:
        t[zero] = Fraction(1)
    elif unit:
        t[zero] = Fraction(rng.randrange(1, 6))
    return MSeries(variables, order, t)


def test_arith_examples():
    one_plus = USeries.poly("z", 5, {0: 1, 1: 1})
    one_minus = USeries.poly("z", 5, {0: 1, 1: -1})
    assert one_plus * one_minus == USeries.poly("z", 5, {0: 1, 2: -1})
    geo = one_minus.invert_unit()
    z = USeries.poly("z", 5, {1: 1})
    assert (z * geo) + USeries.zero("z", 5) == USeries(
        "z", 5, [0, 1, 1, 1, 1, 1]
    )
    vs = ("x", "y")
    a = MSeries.poly(vs, 2, {(0, 0): 1, (0, 1): 1})
    b = MSeries.poly(vs, 2, {(0, 0): 1, (1, 0): 1})
    assert a * b == MSeries.poly(vs, 2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})


def test_arith_rejects_mismatched_operands():
    with pytest.raises(ValueError):
        USeries.poly("z", 4, {0: 1}) + USeries.poly("y", 4, {0: 1})
    with pytest.raises(ValueError):
        USeries.poly("z", 4, {0: 1}) + USeries.poly("z", 5, {0: 1})
    with pytest.raises(ValueError):
        MSeries.poly(("x", "y"), 4, {}) * MSeries.poly(("x", "z"), 4, {})


def test_invert_examples():
    geo = USeries.poly("z", 6, {0: 1, 1: -1}).invert_unit()
    assert geo.coeffs == [Fraction(1)] * 7
    assert USeries.poly("z", 3, {0: 2}).invert_unit().coeffs[0] == Fraction(1, 2)
    inv = USeries.poly("z", 6, {0: 1, 1: -6, 2: 5}).invert_unit()
    assert inv.coeffs[:3] == [1, 6, 31]
    assert inv * USeries.poly("z", 6, {0: 1, 1: -6, 2: 5}) == USeries.one("z", 6)
    with pytest.raises(ValueError):
        USeries.poly("z", 4, {1: 1}).invert_unit()
    with pytest.raises(ValueError):
        MSeries.poly(("x", "y"), 4, {(1, 0): 1}).invert_unit()


def test_invert_round_trip_randomized():
    rng = random.Random(101)
    for _ in range(40):
        a = rand_useries(rng, 12, unit=True)
        assert a * a.invert_unit() == USeries.one("z", 12)
    for _ in range(15):
        a = rand_mseries(rng, ("x", "y"), 8, unit=True)
        assert a * a.invert_unit() == MSeries.one(("x", "y"), 8)


def test_sqrt_examples():
    rad = USeries.poly("z", 6, {0: 1, 1: -6, 2: 5}).sqrt_unit()
    assert rad.coeffs[:5] == [1, -3, -2, -6, -20]
    assert rad * rad == USeries.poly("z", 6, {0: 1, 1: -6, 2: 5})
    assert USeries.one("z", 5).sqrt_unit() == USeries.one("z", 5)
    square = USeries.poly("z", 5, {0: 1, 1: 2, 2: 1})
    assert square.sqrt_unit() == USeries.poly("z", 5, {0: 1, 1: 1})
    with pytest.raises(ValueError):
        USeries.poly("z", 4, {0: 4}).sqrt_unit()


def test_sqrt_round_trip_randomized():
    rng = random.Random(202)
    for _ in range(40):
        a = rand_useries(rng, 12, monic=True)
        s = a.sqrt_unit()
        assert s * s == a
    for _ in range(10):
        a = rand_mseries(rng, ("x", "y"), 7, monic=True)
        s = a.sqrt_unit()
        assert s * s == a


def test_exact_divide_examples():
    vs = ("x", "y")
    a = MSeries.poly(vs, 8, {(2, 0): 1, (0, 2): -1})
    b = MSeries.poly(vs, 8, {(1, 0): 1, (0, 1): -1})
    assert exact_divide(a, b) == MSeries.poly(vs, 7, {(1, 0): 1, (0, 1): 1})
    with pytest.raises(InexactDivisionError):
        exact_divide(MSeries.poly(vs, 8, {(2, 0): 1, (0, 2): -1, (0, 0): 1}), b)
    with pytest.raises(InexactDivisionError):
        exact_divide(MSeries.poly(vs, 8, {(2, 0): 1, (1, 1): 1}), b)
    # univariate: strip a z factor
    num = USeries.poly("z", 6, {1: 2, 2: 4})
    assert exact_divide(num, USeries.poly("z", 6, {1: 2})) == USeries.poly(
        "z", 5, {0: 1, 1: 2}
    )
    with pytest.raises(InexactDivisionError):
        exact_divide(USeries.poly("z", 6, {0: 1}), USeries.poly("z", 6, {1: 1}))


def test_exact_divide_round_trip_randomized():
    rng = random.Random(303)
    vs = ("x", "y")
    for _ in range(25):
        a = rand_mseries(rng, vs, 8, terms=6)
        b = MSeries.poly(
            vs, 8, {(1, 0): rng.randrange(1, 4), (0, 1): rng.randrange(-3, 0)}
        )
        q = exact_divide(a * b, b)
        assert q == a.truncate(7)
    for _ in range(25):
        a = rand_useries(rng, 10)
        b = USeries.poly("z", 10, {0: rng.randrange(1, 4), 1: rng.randrange(-3, 3)})
        q = exact_divide(a * b, b)
        assert q == a.truncate(10 - b.degree())


def test_closed_form_difference_divisible_by_x_minus_y():
    D = build_closed_form("D_0021", 14)
    diff = D - D.substitute("x", "y")
    b = MSeries.poly(("x", "y", "z"), 14, {(1, 0, 0): 1, (0, 1, 0): -1})
    q = exact_divide(diff, b)
    assert q * b.truncate(13) == diff.truncate(13)


def test_substitute():
    C = build_closed_form("C_pair", 16)
    at_one = substitute(C, "x", 1)
    for n in range(1, 9):
        assert at_one.coeff((0, n)) == a007317(n)
    D = build_closed_form("D_0021", 10)
    merged = D.substitute("x", "y")
    direct = {}
    for (q, r, n), c in D.terms.items():
        key = (0, q + r, n)
        direct[key] = direct.get(key, Fraction(0)) + c
    assert merged.terms == {e: c for e, c in direct.items() if c}
    const = MSeries.poly(("x", "y"), 5, {(0, 0): 7})
    assert const.substitute("x", 1) == const
    with pytest.raises(ValueError):
        const.substitute("w", 1)


def test_diagonal():
    vs = ("x", "y")
    assert diagonal(MSeries.poly(vs, 8, {(1, 1): 1})) == USeries.poly("z", 4, {1: 1})
    assert diagonal(MSeries.poly(vs, 8, {(2, 1): 1})) == USeries.zero("z", 4)
    C = build_closed_form("C_pair", 20)
    diag = diagonal(C)
    assert diag.coeff(0) == 0
    assert all(diag.coeff(n) == 1 for n in range(1, 11))


def test_reference_sequences():
    assert [catalan(k) for k in range(6)] == [1, 1, 2, 5, 14, 42]
    assert binom(6, 2) == 15 and binom(5, 7) == 0
    assert a007317(5) == 51
    assert a007317(7) == 731
    assert a007317(10) == 51822
    with pytest.raises(ValueError):
        a007317(0)


def test_build_c2():
    c2 = build_closed_form("C2", 7)
    assert c2.coeffs == [0, 0, 1, 3, 8, 23, 74, 262]


def test_build_f():
    # the closed form settles the printed-exponent question: coefficient 3
    # sits on z^2
    f = build_closed_form("f", 5)
    assert f.coeffs == [1, 1, 3, 10, 36, 137]


def test_build_g():
    g = build_closed_form("g", 5)
    assert g.coeffs == [1, 2, 5, 15, 51, 188]
    assert [g.coeff(n) for n in range(6)] == [a007317(n + 1) for n in range(6)]


def test_build_totals():
    tot = build_closed_form("C_total_pair", 10)
    assert tot.coeff(0) == 0
    assert [tot.coeff(n) for n in range(1, 11)] == [a007317(n) for n in range(1, 11)]
    tot2 = build_closed_form("total_0021", 10)
    assert tot.coeffs == tot2.coeffs


def test_build_pair_gfs_match_recurrence():
    C = build_closed_form("C_pair", 24)
    D = build_closed_form("D_pair", 24)
    levels = gp.pair_recurrence_levels(12)
    for n in range(1, 13):
        cd = gp.cd_tables_from(levels[n - 1])
        for i in range(1, n + 1):
            assert C.coeff((i, n)) == cd.c[i - 1], (n, i)
            assert D.coeff((i, n)) == cd.d[i - 1], (n, i)


def test_build_0021_gfs_match_recurrence():
    C = build_closed_form("C_0021", 24)
    D = build_closed_form("D_0021", 24)
    levels = gt.triple_recurrence_levels(12)
    for n in range(1, 13):
        t = levels[n - 1]
        for q in range(1, n + 1):
            for r in range(0, n - q + 1):
                if q + r + n <= 24:
                    assert C.coeff((q, r, n)) == t.value0(q, r), (n, q, r)
                    assert D.coeff((q, r, n)) == t.value1(q, r), (n, q, r)


def test_unknown_names_rejected():
    with pytest.raises(ValueError):
        build_closed_form("nope", 5)
    with pytest.raises(ValueError):
        residual("nope", 5)
    assert set(GF_NAMES) == set(
        ("C_pair", "D_pair", "C2", "C_total_pair", "C_0021", "D_0021",
         "total_0021", "f", "g")
    )


def test_residuals_vanish():
    assert residual("pair_c", 16).is_zero()
    assert residual("pair_d", 16).is_zero()
    assert residual("t0021_c", 12).is_zero()
    assert residual("t0021_d", 12).is_zero()


def test_perturbed_column_gf_leaves_residual():
    # push the column equation off by y^2: the defect -x^2 y^2 (1 - y)
    # first shows up at total degree 4
    order = 10
    vs = ("x", "y")
    C = build_closed_form("C_pair", order)
    D = build_closed_form("D_pair", order)
    c2 = build_closed_form("C2", order)
    c2_m = MSeries.poly(vs, order, {(0, k): c for k, c in enumerate(c2.coeffs)})
    perturbed = c2_m + MSeries.poly(vs, order, {(0, 2): 1})
    one_minus_y = MSeries.poly(vs, order, {(0, 0): 1, (0, 1): -1})
    lhs = (
        MSeries.poly(vs, order, {(0, 0): 1, (1, 0): -1}) * one_minus_y * C
        + MSeries.poly(vs, order, {(1, 0): 1}) * one_minus_y * D
    )
    rhs = MSeries.poly(vs, order, {(1, 1): 1}) + (
        MSeries.poly(vs, order, {(2, 0): 1}) * one_minus_y * perturbed
    )
    res = lhs - rhs
    assert not res.is_zero()
    assert min(sum(e) for e in res.terms) == 4
    assert res.terms == {(2, 2): Fraction(-1), (2, 3): Fraction(1)}


def test_ring_axioms_randomized():
    rng = random.Random(404)
    for _ in range(20):
        a = rand_useries(rng, 8)
        b = rand_useries(rng, 8)
        c = rand_useries(rng, 8)
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
    for _ in range(10):
        a = rand_mseries(rng, ("x", "y", "z"), 6)
        b = rand_mseries(rng, ("x", "y", "z"), 6)
        c = rand_mseries(rng, ("x", "y", "z"), 6)
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_series_json_roundtrip():
    f = build_closed_form("f", 6)
    d = json.loads(json.dumps(f.to_json_dict()))
    assert USeries.from_json_dict(d) == f
    C = build_closed_form("C_pair", 8)
    d = json.loads(json.dumps(C.to_json_dict()))
    assert MSeries.from_json_dict(d) == C


def test_wrappers_dispatch():
    a = USeries.poly("z", 5, {0: 1, 1: 1})
    assert invert_unit(a) * a == USeries.one("z", 5)
    assert sqrt_unit(USeries.one("z", 5)) == USeries.one("z", 5)
