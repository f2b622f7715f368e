"""Free graded-commutative algebra: signs, products, bases, extensions.

The monomial count checks run against the Hilbert series oracle in
oracles.py, which knows nothing about the package's basis enumeration.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import monomial_count_series, multiply_words, sort_word
from rht.algebra import FreeGCA, Generator
from rht.errors import AmbientMismatchError

# mixed parities, repeated degrees on purpose
GENS = [
    Generator(0, "a", 2),
    Generator(1, "b", 3),
    Generator(2, "c", 3),
    Generator(3, "e", 4),
    Generator(4, "f", 5),
]


@pytest.fixture(scope="module")
def alg():
    return FreeGCA(GENS)


def degrees():
    return {g.gid: g.degree for g in GENS}


words = st.lists(st.sampled_from([g.gid for g in GENS]), min_size=0, max_size=4)


@given(words, words)
def test_product_signs_match_transposition_count(w1, w2):
    alg = FreeGCA(GENS)
    n1 = alg.normalize_word(list(w1))
    n2 = alg.normalize_word(list(w2))
    if n1 is None or n2 is None:
        return
    s1, m1 = n1
    s2, m2 = n2
    x = alg.element({m1: Fraction(s1)})
    y = alg.element({m2: Fraction(s2)})
    got = x * y
    sign, merged = multiply_words(tuple(w1), tuple(w2), degrees())
    if sign == 0:
        assert got.is_zero()
        return
    s3, m3 = alg.normalize_word(list(merged))
    assert s3 == 1  # oracle already sorted it
    assert got.terms == {m3: Fraction(sign)}


@given(words, words)
def test_graded_commutativity(w1, w2):
    alg = FreeGCA(GENS)
    n1 = alg.normalize_word(list(w1))
    n2 = alg.normalize_word(list(w2))
    if n1 is None or n2 is None:
        return
    x = alg.element({n1[1]: Fraction(1)})
    y = alg.element({n2[1]: Fraction(1)})
    d1 = sum(degrees()[g] for g in w1)
    d2 = sum(degrees()[g] for g in w2)
    sign = -1 if (d1 % 2 == 1 and d2 % 2 == 1) else 1
    assert x * y == (y * x).scale(Fraction(sign))


def test_odd_generator_squares_to_zero(alg):
    b = alg.gen("b")
    assert (b * b).is_zero()


def test_even_generator_powers_survive(alg):
    a = alg.gen("a")
    cube = a * a * a
    assert not cube.is_zero()
    assert list(cube.terms.values()) == [Fraction(1)]


@settings(deadline=None)
@given(st.integers(0, 12))
def test_monomial_basis_count_matches_hilbert_series(n):
    alg = FreeGCA(GENS)
    series = monomial_count_series([g.degree for g in GENS], 12)
    assert len(alg.monomial_basis(n)) == series[n]


def test_monomial_basis_is_sorted_and_unique(alg):
    for n in range(10):
        basis = alg.monomial_basis(n)
        assert len(set(basis)) == len(basis)
        ranked = [tuple((alg._rank[g], e) for g, e in m) for m in basis]
        assert ranked == sorted(ranked)


def test_elements_from_different_ambients_do_not_mix(alg):
    other = FreeGCA([Generator(0, "a", 2)])
    with pytest.raises(AmbientMismatchError):
        alg.gen("a") + other.gen("a")


def test_extend_derivation_satisfies_leibniz(alg):
    from rht.algebra import extend_derivation

    # d(a) = 0, d(b) = a^2, d(c) = 0, d(e) = 0, d(f) = a e
    _, a2 = alg.normalize_word([0, 0])
    _, ae = alg.normalize_word([0, 3])
    d = extend_derivation(
        alg, {1: alg.element({a2: Fraction(1)}), 4: alg.element({ae: Fraction(1)})}
    )
    x = alg.gen("a") * alg.gen("b")
    y = alg.gen("c") * alg.gen("e")
    left = d(x * y)
    # deg(ab) = 5, odd
    right = d(x) * y + (x * d(y)).scale(Fraction(-1))
    assert left == right


def test_extend_algebra_map_is_multiplicative(alg):
    from rht.algebra import extend_algebra_map

    images = {
        0: alg.gen("a").scale(Fraction(2)),
        1: alg.gen("b") + alg.gen("c"),
        2: alg.gen("c"),
        3: alg.gen("e"),
        4: alg.gen("f"),
    }
    phi = extend_algebra_map(alg, images)
    x = alg.gen("a") * alg.gen("b")
    y = alg.gen("c") + alg.gen("b")
    assert phi(x * y) == phi(x) * phi(y)
    assert phi(x + y.scale(Fraction(3))) == phi(x) + phi(y).scale(Fraction(3))


@given(words)
def test_sort_word_oracle_agrees_with_normalize(w):
    alg = FreeGCA(GENS)
    n = alg.normalize_word(list(w))
    s2, sorted_w = sort_word(tuple(w), degrees())
    if s2 == 0:
        assert n is None
        return
    assert n is not None
    s1, m1 = n
    # package canonical order is (degree, gid); oracle sorts by gid.
    # both must produce the same signed monomial, so compare elements.
    s3, m3 = alg.normalize_word(list(sorted_w))
    assert m1 == m3
    assert s1 == s2 * s3
