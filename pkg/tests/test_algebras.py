import itertools

import pytest

from translie.algebras import (
    a_omega_delta,
    afk,
    algebra_a,
    bracket_eval,
    custom_operator,
    derived_lie_bracket,
    family_swap,
    functional,
    index_scaling,
    omega_form,
    product_eval,
    relabel_m_negation,
    scalar_multiple,
    scaled_l_shift,
    uniform_shift,
)
from translie.checks import window, window_symbols
from translie.elements import Element, L, M
from translie.errors import DomainError
from translie.scalars import Scalar


def B(sym):
    return Element.basis(sym)


def ev(bdef, x, y, z):
    return bracket_eval(bdef, B(x), B(y), B(z))


# ---------------------------------------------------------------------------
# bracket tables


def test_shifted_bracket_llm():
    assert ev(a_omega_delta(), L(2), L(5), M(1)) == Element.from_terms((L(8), 3))


def test_shifted_bracket_repeated_argument():
    assert ev(a_omega_delta(), L(1), L(1), M(3)).is_zero()


def test_shifted_bracket_canonical_sorting_sign():
    # even permutation of (L_1, L_4, M_2)
    assert ev(a_omega_delta(), M(2), L(1), L(4)) == Element.from_terms((L(7), 3))


def test_shifted_bracket_lmm():
    assert ev(a_omega_delta(), L(3), M(1), M(4)) == Element.from_terms((M(8), -3))


def test_functional_bracket_llm():
    bdef = afk(2, functional({0: 1}))
    assert ev(bdef, L(1), L(3), M(0)) == Element.from_terms((L(6), -2))
    assert ev(bdef, L(1), L(3), M(5)).is_zero()
    assert ev(bdef, L(4), M(1), M(2)).is_zero()


def test_functional_bracket_requires_nonzero_functional():
    with pytest.raises(ValueError):
        afk(0, functional({}))


def test_unshifted_form_bracket():
    bdef = omega_form()
    assert ev(bdef, L(2), L(5), M(1)) == Element.from_terms((L(6), 3))
    assert ev(bdef, L(3), M(1), M(4)) == Element.from_terms((M(2), 3))


def test_bracket_trilinear_on_elements():
    bdef = a_omega_delta()
    x = Element.from_terms((L(0), 2), (L(1), 1))
    y = B(L(2))
    z = B(M(0))
    # 2[L_0,L_2,M_0] + [L_1,L_2,M_0] = 2*2*L_2 + 1*L_3
    assert bracket_eval(bdef, x, y, z) == Element.from_terms((L(2), 4), (L(3), 1))


def test_bracket_antisymmetry_on_random_elements():
    import random

    rng = random.Random(99)
    bdef = a_omega_delta()
    for _ in range(50):
        elems = []
        for _ in range(3):
            terms = [
                ((L if rng.random() < 0.5 else M)(rng.randint(-6, 6)), rng.randint(-3, 3))
                for _ in range(rng.randint(1, 3))
            ]
            elems.append(Element.from_terms(*terms))
        x, y, z = elems
        assert bracket_eval(bdef, x, y, z) == -bracket_eval(bdef, y, x, z)
        assert bracket_eval(bdef, x, y, z) == -bracket_eval(bdef, x, z, y)


# ---------------------------------------------------------------------------
# base product


def test_base_product_table():
    prod = algebra_a()
    assert product_eval(prod, B(L(2)), B(L(3))) == B(L(5))
    assert product_eval(prod, B(L(1)), B(M(4))).is_zero()
    assert product_eval(prod, B(M(-1)), B(M(1))) == B(M(0))


def test_base_product_commutative_associative_window():
    prod = algebra_a()
    syms = window_symbols(window(-3, 3))
    for x, y in itertools.product(syms, repeat=2):
        assert product_eval(prod, B(x), B(y)) == product_eval(prod, B(y), B(x))
    for x, y, z in itertools.product(syms[::2], repeat=3):
        left = product_eval(prod, product_eval(prod, B(x), B(y)), B(z))
        right = product_eval(prod, B(x), product_eval(prod, B(y), B(z)))
        assert left == right


# ---------------------------------------------------------------------------
# operators


def test_index_scaling():
    op = index_scaling()
    assert op.apply(B(L(3))) == Element.from_terms((L(3), 3))
    assert op.apply(B(L(0))).is_zero()
    assert op.apply(B(M(-2))) == Element.from_terms((M(-2), -2))


def test_family_swap():
    op = family_swap()
    assert op.apply(B(L(2))) == B(M(-2))
    assert op.apply(B(M(-5))) == B(L(5))
    e = Element.from_terms((L(1), 2), (M(3), 1))
    assert op.apply(op.apply(e)) == e


def test_scaled_l_shift():
    op = scaled_l_shift(3)
    assert op.apply(B(L(2))) == Element.from_terms((L(5), 2))
    assert op.apply(B(M(7))).is_zero()


def test_uniform_shift():
    op = uniform_shift(2)
    assert op.apply(B(L(3))) == B(L(5))
    assert op.apply(B(M(-1))) == B(M(1))


def test_scalar_multiple():
    op = scalar_multiple(5)
    e = Element.from_terms((L(1), 2), (M(0), -1))
    assert op.apply(e) == e.scale(Scalar(5))


def test_custom_operator_domain_error():
    op = custom_operator({L(0): B(L(1))})
    assert op.apply(B(L(0))) == B(L(1))
    with pytest.raises(DomainError):
        op.apply(B(L(2)))


# ---------------------------------------------------------------------------
# relabeling and functionals


def test_relabel_m_negation():
    assert relabel_m_negation(B(M(3))) == B(M(-3))
    assert relabel_m_negation(B(L(5))) == B(L(5))
    e = Element.from_terms((L(1), 2), (M(-2), 3))
    assert relabel_m_negation(e) == Element.from_terms((L(1), 2), (M(2), 3))


def test_functional_eval():
    f = functional({0: 1})
    assert f.evaluate(B(M(0))) == Scalar(1)
    assert f.evaluate(B(L(7))).is_zero()
    g = functional({0: 1, 2: 3})
    assert g.evaluate(Element.from_terms((M(0), 1), (M(2), 1))) == Scalar(4)
    assert g.support == [0, 2]


def test_functional_prunes_zero_values():
    f = functional({0: 1, 5: 0})
    assert f.support == [0]
    assert functional({}).is_zero()


# ---------------------------------------------------------------------------
# auxiliary binary bracket


def test_derived_lie_bracket_l_family_action():
    # [L_r, L_s] = (r - s) L_{r+s+k}
    out = derived_lie_bracket(2, B(L(3)), B(L(1)))
    assert out == Element.from_terms((L(6), 2))


def test_derived_lie_bracket_antisymmetric_and_jacobi():
    k = 1
    syms = [L(i) for i in range(-3, 4)] + [M(i) for i in range(-2, 3)]
    for x, y in itertools.product(syms, repeat=2):
        assert derived_lie_bracket(k, B(x), B(y)) == -derived_lie_bracket(k, B(y), B(x))
    for x, y, z in itertools.product([L(i) for i in range(-2, 3)], repeat=3):
        jac = (
            derived_lie_bracket(k, derived_lie_bracket(k, B(x), B(y)), B(z))
            + derived_lie_bracket(k, derived_lie_bracket(k, B(y), B(z)), B(x))
            + derived_lie_bracket(k, derived_lie_bracket(k, B(z), B(x)), B(y))
        )
        assert jac.is_zero()


def test_derived_lie_bracket_kills_m_family():
    assert derived_lie_bracket(0, B(M(2)), B(M(3))).is_zero()
    assert derived_lie_bracket(0, B(L(2)), B(M(3))).is_zero()
