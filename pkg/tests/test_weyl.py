import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappamink.errors import SingularParameterError, UnknownGeneratorError
from kappamink.scalar import Scalar
from kappamink.twist import realize_coordinates
from kappamink.weyl import (PolyState, WeylElement, act, algebra, commutator, gen_boost, gen_D,
                            gen_L, gen_rotation, igl_realize, levi_civita, normal_product)

I = Scalar(0, 1)
A = algebra(4, 1, 4)


def x(mu):
    return PolyState.x(mu, 4, 1, 4)


def test_normal_product_examples():
    assert normal_product(A.p(1), A.x(1)) == A.x(1) * A.p(1) - A.const(I)
    assert normal_product(A.x(0), A.x(1)) == A.x(1) * A.x(0)
    xp = A.x(1) * A.p(1)
    # oracle: x p x p = x (x p + [p, x]) p with [p, x] = -i
    want = A.x(1) * A.x(1) * A.p(1) * A.p(1) - (A.x(1) * A.p(1)).scale(I)
    assert normal_product(xp, xp) == want


def test_commutator_examples():
    for mu in range(4):
        for nu in range(4):
            assert commutator(A.p(mu), A.p(nu)).is_zero()
    D = gen_D(A)
    for j in range(1, 4):
        assert commutator(D, A.p(j)) == A.p(j).scale(I)
    assert commutator(gen_L(A, 0, 0), A.p(0)) == A.p(0).scale(I)


def test_act_examples():
    assert act(A.p(0), x(0)) == PolyState.const(-I, 4, 1, 4)
    # -i x1 d/dx1 on x1 x2
    assert act(A.x(1) * A.p(1), x(1) * x(2)) == (x(1) * x(2)).scale(-I)
    hp0 = A.hs(1) * A.pseries(0)
    e = A.fn(hp0.scale(F(1, 2)).exp())
    got = act(e, x(0))
    h = PolyState.const(A.hs(1), 4, 1, 4)
    assert got == x(0) + h.scale(F(1, 2)) * PolyState.const(-I, 4, 1, 4)


def test_igl_realize_named_generators():
    D = igl_realize("D", A)
    for j in range(1, 4):
        assert act(D, x(j)) == x(j).scale(-I)
    assert act(D, x(0)).is_zero()
    for i in range(1, 4):
        for j in range(1, 4):
            want = A.zero()
            for k in range(1, 4):
                if levi_civita(i, j, k):
                    want = want + gen_rotation(A, k).scale(I * levi_civita(i, j, k))
            assert commutator(gen_rotation(A, i), gen_rotation(A, j)) == want
    for j in range(1, 4):
        assert commutator(gen_boost(A, j), A.p(0)) == A.p(j).scale(-I)
    with pytest.raises(UnknownGeneratorError):
        igl_realize("Q_1", A)


def _igl_bracket_ok(a, b, c, d):
    """[L^a_b, L^c_d] = -i(delta^c_b L^a_d - delta^a_d L^c_b) follows from [p, x] = -i."""
    lhs = commutator(gen_L(A, a, b), gen_L(A, c, d))
    rhs = A.zero()
    if c == b:
        rhs = rhs + gen_L(A, a, d)
    if a == d:
        rhs = rhs - gen_L(A, c, b)
    return lhs == rhs.scale(-I)


def test_igl_relations():
    assert all(_igl_bracket_ok(a, b, c, d)
               for a in range(4) for b in range(4) for c in range(4) for d in range(4))


@pytest.mark.parametrize("family,param", [("abelian", 0), ("abelian", F(1, 2)), ("abelian", 1),
                                          ("jordanian", -1), ("jordanian", 1), ("jordanian", 3)])
@pytest.mark.parametrize("side", ["left", "right"])
def test_realizations_kappa_minkowski(family, param, side):
    xs = realize_coordinates(family, param, side, 5)
    h = xs[0].alg.hs(1)
    sign = 1 if side == "left" else -1
    for k in range(1, 4):
        assert commutator(xs[0], xs[k]) == xs[k].scale(h.scale(I * sign))
        for j in range(1, 4):
            assert commutator(xs[j], xs[k]).is_zero()


def test_realization_closed_forms():
    B = algebra(4, 1, 5)
    xs = realize_coordinates("abelian", 1, "left", 5)
    assert xs[1] == B.x(1)
    assert xs[0] == B.x(0) - gen_D(B).scale(B.hs(1))
    r = F(3)
    lin = B.series(1) - (B.hs(1) * B.pseries(0)).scale(r)
    xs = realize_coordinates("jordanian", r, "left", 5)
    assert xs[0] == B.x(0) * B.fn(lin)
    assert xs[2] == B.x(2) * B.fn(lin.pow_fractional(-1 / r))
    with pytest.raises(SingularParameterError):
        realize_coordinates("jordanian", 0, "left", 5)


@pytest.mark.parametrize("family,param,side", [("abelian", 0, "left"), ("jordanian", 3, "right")])
def test_hermitian_realizations(family, param, side):
    for xh in realize_coordinates(family, param, side, 5):
        assert xh.conj_transpose() == xh


# --- properties -------------------------------------------------------------

def _letters(alg):
    return [alg.x(m) for m in range(2)] + [alg.p(m) for m in range(2)] + [alg.const(I), alg.fn(alg.hs(1))]


@settings(max_examples=60)
@given(st.lists(st.integers(0, 5), min_size=2, max_size=6), st.randoms(use_true_random=False))
def test_normal_ordering_confluent(word, rnd):
    letters = _letters(A)
    elems = [letters[i] for i in word]
    left = elems[0]
    for e in elems[1:]:
        left = left * e
    # random bracketing
    items = list(elems)
    while len(items) > 1:
        k = rnd.randrange(len(items) - 1)
        items[k:k + 2] = [items[k] * items[k + 1]]
    assert items[0] == left


def _rand_op(rnd, alg, deg):
    out = alg.zero()
    for _ in range(3):
        t = alg.const(Scalar(rnd.randint(-2, 2), rnd.randint(-2, 2)))
        for _ in range(rnd.randint(0, deg)):
            t = t * rnd.choice([alg.x(rnd.randrange(2)), alg.p(rnd.randrange(2))])
        out = out + t
    return out


def _rand_poly(rnd, deg):
    out = PolyState.zero(4, 1, 4)
    for _ in range(3):
        t = PolyState.const(rnd.randint(-3, 3), 4, 1, 4)
        for _ in range(rnd.randint(0, deg)):
            t = t * x(rnd.randrange(3))
        out = out + t
    return out


@settings(max_examples=60)
@given(st.integers(0, 10 ** 6))
def test_act_is_algebra_action(seed):
    rnd = random.Random(seed)
    u, v = _rand_op(rnd, A, 3), _rand_op(rnd, A, 3)
    f = _rand_poly(rnd, 3)
    assert act(u * v, f) == act(u, act(v, f))


def test_json_round_trip():
    w = A.x(1) * A.p(0) * A.fn(A.hs(2) * A.pseries(3)) + A.const(I)
    assert WeylElement.from_json(w.to_json()) == w
