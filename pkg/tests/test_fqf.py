from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forge import fqf
from forge.fqf import FQF, eval_b, eval_q, isomorphic, isotropic_elements, negate
from forge.lattice import A, D, E, U, direct_sum, discriminant_form, rank1

FIXTURES = [
    FQF.trivial(),
    FQF.cyclic_sum(["5/4"]),
    FQF.cyclic_sum(["3/4"]),
    FQF.cyclic_sum(["5/4", "4/11"]),
    FQF.cyclic_sum(["-2/5", "-6/5"]),
    FQF.cyclic_sum(["-10/11", "-10/11"]),
    discriminant_form(D(4)).fqf,
    discriminant_form(direct_sum(A(1), A(1), A(3))).fqf,
    discriminant_form(direct_sum(rank1(12), A(2))).fqf,
]


def elements_of(f):
    return st.tuples(*(st.integers(0, d - 1) for d in f.orders))


def test_zero_is_zero():
    for f in FIXTURES:
        assert eval_q(f, f.zero()) == 0


def test_a9_order_two_element():
    f = FQF.cyclic_sum(["-9/10"])
    assert eval_q(f, (5,)) == F(3, 2)  # -1/2 mod 2


def test_eval_order_two_in_z4():
    assert eval_q(FQF.cyclic_sum(["5/4"]), (2,)) == 1


def test_direct_sum_groups():
    assert fqf.direct_sum(FIXTURES[1], FQF.trivial()) == FIXTURES[1]
    assert FQF.cyclic_sum(["5/4", "4/11"]).orders == (4, 11)
    assert FQF.cyclic_sum(["-2/5", "-6/5"]).orders == (5, 5)


def test_negate():
    f = FQF.cyclic_sum(["-5/4", "-4/11"])
    assert isomorphic(negate(f), FQF.cyclic_sum(["5/4", "4/11"])) is not None
    assert negate(FQF.trivial()) == FQF.trivial()
    for g in FIXTURES:
        assert negate(negate(g)) == g


def test_rejects_ill_defined_values():
    with pytest.raises(ValueError):
        FQF.build([4], [F(1, 3)])
    with pytest.raises(ValueError):
        FQF.build([2, 2], [1, 1], {(0, 1): F(1, 4)})


def test_isotropic_trivial():
    assert isotropic_elements(FQF.trivial(), 2) == []


@pytest.mark.parametrize("f", FIXTURES, ids=str)
def test_isotropic_complete_vs_brute_force(f):
    for n in range(1, f.exponent + 1):
        expect = [x for x in f.elements() if f.element_order(x) == n and eval_q(f, x) == 0]
        assert isotropic_elements(f, n) == expect
        for x in expect:
            assert f.scale(n, x) == f.zero()


def test_z4_forms_5_over_4_and_3_over_4_differ():
    # Aut(Z/4) = {1, 3}; 3^2 * 3/4 = 27/4 = 3/4 mod 2, never 5/4
    assert isomorphic(FQF.cyclic_sum(["5/4"]), FQF.cyclic_sum(["3/4"])) is None


def test_cyclic_vs_split_presentation():
    # Z/44 with one generator against Z/4 + Z/11
    f = discriminant_form(direct_sum(A(3), A(10))).fqf
    images = isomorphic(f, FQF.cyclic_sum(["-3/4", "-10/11"]))
    assert images is not None


def test_budget_exceeded_is_explicit():
    f = FQF.cyclic_sum(["-10/11", "-10/11"])
    g = FQF.cyclic_sum(["-6/11", "-6/11"])
    with pytest.raises(fqf.SearchBudgetExceeded):
        isomorphic(f, g, budget=3)


@pytest.mark.parametrize("f", FIXTURES, ids=str)
def test_isomorphic_reflexive_and_verified(f):
    images = isomorphic(f, f)
    assert images is not None
    assert fqf.verify_isometry(f, f, images)


@pytest.mark.parametrize("i", range(len(FIXTURES)))
@pytest.mark.parametrize("j", range(len(FIXTURES)))
def test_isomorphic_symmetric(i, j):
    a, b = FIXTURES[i], FIXTURES[j]
    ab = isomorphic(a, b)
    ba = isomorphic(b, a)
    assert (ab is None) == (ba is None)
    if ab is not None:
        assert fqf.verify_isometry(a, b, ab)
        assert fqf.verify_isometry(b, a, ba)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIXTURES[1:]).flatmap(lambda f: st.tuples(st.just(f), elements_of(f), elements_of(f))))
def test_polarization(args):
    f, x, y = args
    lhs = eval_q(f, f.add(x, y))
    rhs = fqf.mod2(eval_q(f, x) + eval_q(f, y) + 2 * eval_b(f, x, y))
    assert lhs == rhs


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIXTURES[1:]).flatmap(lambda f: st.tuples(st.just(f), elements_of(f))), st.integers(-50, 50))
def test_quadratic_scaling(args, n):
    f, x = args
    assert eval_q(f, f.scale(n, x)) == fqf.mod2(n * n * eval_q(f, x))


def test_dict_round_trip():
    for f in FIXTURES:
        assert FQF.from_dict(f.to_dict()) == f


def test_e7_and_unimodular_forms():
    assert discriminant_form(E(7)).fqf == FQF.cyclic_sum(["1/2"])
    assert discriminant_form(U()).fqf == FQF.trivial()
