import random

from sfb.aug import AugEnv, p_coeff
from sfb.coeff import CoeffElement, aug_symbol, cp
from sfb.engine import random_term
from sfb.terms import (
    t_bar,
    t_coeff,
    t_euler,
    t_gamma,
    t_int,
    t_prod,
    t_zgen,
    term_degree,
)


def g_s(t, j=1):
    for _ in range(j):
        t = t_gamma("s", t)
    return t


def test_p_coeff():
    assert p_coeff(0) == cp(1)
    assert p_coeff(1) == aug_symbol(1, "P")
    assert p_coeff(3) == aug_symbol(3, "P")


def test_euler_and_first_layer():
    env = AugEnv()
    assert env.aug(t_euler("r")) == 0
    assert env.aug(t_euler("s")) == 0
    assert env.aug(t_gamma("s", t_euler("s"))) == 1
    assert env.aug(t_gamma("r", t_euler("s"))) == -1
    assert env.aug(t_gamma("s", t_euler("r"))) == -1
    assert env.aug(t_gamma("r", t_euler("r"))) == 1


def test_towers_over_e_s():
    env = AugEnv()
    for j in (2, 3, 4):
        assert env.aug(g_s(t_euler("s"), j)) == 0


def test_towers_over_e_r():
    env = AugEnv()
    g1 = cp(1)
    a1 = aug_symbol(1, "P")
    a2 = aug_symbol(2, "P")
    assert env.aug(g_s(t_euler("r"), 2)) == -g1
    assert env.aug(g_s(t_euler("r"), 3)) == -(g1 ** 2) - a1
    assert env.aug(g_s(t_euler("r"), 4)) == -(g1 ** 3) - 2 * g1 * a1 - a2


def test_linear_classes():
    env = AugEnv()
    for n in range(1, 6):
        for fl in "rs":
            assert env.aug(t_zgen(n, fl)) == cp(n)
    # forgetting after one division: the P-based symbols for n = 1,
    # class-tagged symbols for n >= 2
    assert env.aug(t_gamma("s", t_zgen(1, "r"))) == aug_symbol(1, "P")
    assert env.aug(t_gamma("s", t_zgen(2, "r"))) == aug_symbol(1, "Z(2,r)")
    assert env.aug(g_s(t_zgen(3, "s"), 2)) == aug_symbol(2, "Z(3,s)")


def test_rotation_sphere_forgets_to_cp1():
    env = AugEnv()
    p = t_gamma("r", t_gamma("s", t_euler("r")))
    assert env.aug(p) == cp(1)


def test_scalars_and_bar():
    env = AugEnv()
    c = 3 * cp(2) - 1
    assert env.aug(t_coeff(c)) == c
    assert env.aug_power(1, t_coeff(c)) == 0
    t = t_gamma("s", t_euler("r"))
    assert env.aug(t_bar(t)) == env.aug(t)
    assert env.aug_power(2, t_bar(t)) == 0


def test_parity_on_random_terms():
    env = AugEnv()
    rng = random.Random(5)
    for _ in range(80):
        y = random_term(rng, depth=2, max_z=4)
        assert env.aug(t_gamma("r", y)) == -env.aug(t_gamma("s", y))


def test_flavor_elimination_consistency():
    # aug_j(G_r y) = sum_{t<j} p_t aug_{j-t}(y) - aug_{j+1}(y)
    env = AugEnv()
    rng = random.Random(6)
    for _ in range(40):
        y = random_term(rng, depth=2, max_z=4)
        for j in range(4):
            lhs = env.aug_power(j, t_gamma("r", y))
            rhs = -env.aug_power(j + 1, y)
            for t in range(j):
                rhs = rhs + p_coeff(t) * env.aug_power(j - t, y)
            assert lhs == rhs


def test_product_convolution():
    env = AugEnv()
    rng = random.Random(7)
    for _ in range(40):
        w = random_term(rng, depth=2, max_z=4)
        z = random_term(rng, depth=2, max_z=4)
        assert env.aug(t_prod(w, z)) == env.aug(w) * env.aug(z)
        for j in (1, 2, 3):
            lhs = env.aug_power(j, t_prod(w, z))
            rhs = CoeffElement.zero()
            for t in range(j + 1):
                rhs = rhs + env.aug_power(t, w) * env.aug_power(j - t, z)
            assert lhs == rhs


def test_grading_of_aug_values():
    env = AugEnv()
    homogeneous = [
        t_euler("r"),
        t_zgen(3, "s"),
        t_prod(t_zgen(2, "r"), t_zgen(2, "s")),
        t_gamma("r", t_zgen(2, "r")),
    ]
    for t in homogeneous:
        d = term_degree(t)
        for j in range(4):
            v = env.aug_power(j, t)
            if not v.is_zero():
                assert v.degree() == d + 2 * j


def test_memo_is_by_shape():
    env = AugEnv()
    a = t_prod(t_int(2), t_euler("r"))
    b = t_prod(t_euler("r"), t_int(2))
    assert env.aug(t_gamma("s", a)) == env.aug(t_gamma("s", b))
