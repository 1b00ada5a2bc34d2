import random

import pytest

from translie.algebras import TP_FAMILY, ProductDef, afk, functional, product_eval
from translie.checks import (
    check_commutative_associative,
    check_one_third_derivation,
    check_poisson_compatibility,
    check_tp_compatibility,
    window,
)
from translie.elements import Element, L, M
from translie.errors import InvalidParamsError
from translie.scalars import Scalar
from translie.tp import (
    POISSON_AND_TRANSPOSED,
    TRANSPOSED_ONLY,
    TPParams,
    build_example_family,
    classify_poisson,
    left_multiplication_operator,
    poisson_violation_witness,
    support_closure_window,
    tp_product,
    validate_params,
)

F01 = functional({0: 1})


def example_instance(alpha_shift=0, c=None):
    """The rank-one family instance used throughout: d_seq={0: 5}, k=2."""
    params = build_example_family(F01, {0: 5}, {1: 1} if c is None else c, 2)
    if alpha_shift:
        params = TPParams(
            alpha=params.alpha + Scalar(alpha_shift),
            c=params.c,
            d=params.d,
            f=params.f,
            k=params.k,
        )
    return params


def test_zero_params_valid():
    p = TPParams(alpha=0, c={}, d={}, f=F01, k=0)
    assert validate_params(p).is_valid


def test_example_family_instance_valid():
    p = example_instance()
    assert p.alpha == Scalar(5)
    assert p.d_value(0, 0, 0) == Scalar(5)
    assert validate_params(p).is_valid


def test_perturbed_alpha_breaks_weighted_sum():
    p = example_instance(alpha_shift=-1)  # alpha = 4
    report = validate_params(p)
    assert not report.is_valid
    assert ((0, 0), Scalar(1)) in report.eq_weighted_sum_violations


def test_build_example_family_values():
    p = build_example_family(F01, {0: 5}, {}, 0)
    assert p.alpha == Scalar(5)
    assert p.d == {(0, 0, 0): Scalar(5)}

    f2 = functional({0: 1, 2: 1})
    q = build_example_family(f2, {1: 1}, {}, 0)
    assert q.alpha.is_zero()
    assert q.d == {
        (0, 0, 1): Scalar(1),
        (0, 2, 1): Scalar(1),
        (2, 0, 1): Scalar(1),
        (2, 2, 1): Scalar(1),
    }

    z = build_example_family(F01, {}, {}, 0)
    assert z.alpha.is_zero() and not z.d


def test_build_example_family_always_valid_random():
    rng = random.Random(3)
    for _ in range(20):
        f = functional({i: rng.randint(-2, 2) for i in rng.sample(range(-3, 4), 2)})
        if f.is_zero():
            continue
        d_seq = {i: rng.randint(-3, 3) for i in rng.sample(range(-3, 4), 2)}
        c = {i: rng.randint(-2, 2) for i in rng.sample(range(-2, 3), 1)}
        p = build_example_family(f, d_seq, c, rng.randint(-2, 2))
        assert validate_params(p).is_valid


def test_product_table():
    prod = tp_product(example_instance())
    assert product_eval(prod, Element.basis(L(3)), Element.basis(M(0))) == Element.from_terms((L(3), 5))
    assert product_eval(prod, Element.basis(L(2)), Element.basis(L(7))).is_zero()
    assert product_eval(prod, Element.basis(M(0)), Element.basis(M(0))) == Element.from_terms(
        (L(1), 1), (M(0), 5)
    )


def test_product_requires_valid_params():
    with pytest.raises(InvalidParamsError) as exc:
        tp_product(example_instance(alpha_shift=1))
    assert not exc.value.report.is_valid


def test_support_closure_window():
    assert support_closure_window(example_instance()) == window(-2, 6)


def test_validated_product_commutative_associative():
    prod = tp_product(example_instance())
    w = support_closure_window(example_instance())
    assert check_commutative_associative(prod, w).passed


def test_validated_product_transposed_leibniz():
    p = example_instance()
    prod = tp_product(p)
    bdef = afk(p.k, p.f)
    assert check_tp_compatibility(bdef, prod, window(-1, 4)).passed
    assert check_tp_compatibility(
        bdef, prod, window(-1, 4), mode="randomized", budget=500, seed=9
    ).passed


def test_perturbed_alpha_fails_transposed_leibniz():
    p = example_instance(alpha_shift=-1)
    prod = ProductDef(TP_FAMILY, params=p)  # bypass validation deliberately
    bdef = afk(p.k, p.f)
    report = check_tp_compatibility(bdef, prod, window(0, 2))
    assert not report.passed


def test_classify_poisson_dichotomy():
    assert classify_poisson(example_instance()) == TRANSPOSED_ONLY

    # alpha = 0 with nonzero d: support of the sequence away from the functional
    p0 = build_example_family(F01, {1: 5}, {}, 2)
    assert p0.alpha.is_zero() and p0.d
    assert classify_poisson(p0) == POISSON_AND_TRANSPOSED

    pc = build_example_family(F01, {1: 5}, {2: 1}, 2)
    assert classify_poisson(pc) == TRANSPOSED_ONLY


def test_poisson_law_dichotomy_witnesses():
    p = example_instance()
    bdef = afk(p.k, p.f)
    w = window(-1, 4)
    witness = poisson_violation_witness(bdef, tp_product(p), w)
    assert witness is not None
    assert not witness.residual.is_zero()

    p0 = build_example_family(F01, {1: 5}, {}, 2)
    assert check_poisson_compatibility(bdef, tp_product(p0), w).passed


def test_exchange_violation_breaks_associativity_on_m_triple():
    f = F01
    d = {(0, 0, 1): Scalar(1), (0, 1, 1): Scalar(1), (1, 0, 1): Scalar(1)}
    p = TPParams(alpha=0, c={}, d=d, f=f, k=0)
    report = validate_params(p)
    assert report.eq_exchange_violations
    assert not report.eq_symmetry_violations
    assert not report.eq_weighted_sum_violations

    prod = ProductDef(TP_FAMILY, params=p)
    assoc = check_commutative_associative(prod, window(0, 1))
    bad_inputs = [v.inputs for v in assoc.violations if len(v.inputs) == 3]
    assert (M(0), M(0), M(1)) in bad_inputs


def test_symmetry_violation_detected():
    p = TPParams(alpha=0, c={}, d={(0, 1, 0): Scalar(1)}, f=F01, k=0)
    report = validate_params(p)
    assert report.eq_symmetry_violations


def test_left_multiplication_is_one_third_derivation():
    p = example_instance()
    prod = tp_product(p)
    bdef = afk(p.k, p.f)
    for sym in (L(0), M(0), M(2)):
        op = left_multiplication_operator(prod, Element.basis(sym), window(-10, 10))
        assert check_one_third_derivation(bdef, op, window(-2, 2)).passed


def test_params_immutable_and_pruned():
    p = TPParams(alpha=0, c={1: 0}, d={(0, 0, 0): Scalar(0)}, f=F01, k=1)
    assert not p.c and not p.d
    with pytest.raises(AttributeError):
        p.alpha = Scalar(1)
