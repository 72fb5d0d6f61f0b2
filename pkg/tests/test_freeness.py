import itertools
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings

from heisfree.cartan import mu_from_nu
from heisfree.freeness import (
    GENERATOR_A,
    LETTERS,
    TAG_CIRCLE,
    TAG_CIRCLE_QUAT,
    TAG_LYNDON_ULLMAN,
    TAG_VERTICAL_QUAT,
    ReducedWord,
    VerdictKind,
    _pack,
    _packed_is_projective_identity,
    _pmul,
    check_free_lu,
    check_free_main,
    check_free_quat,
    check_free_vertical_quat,
    embed_2x2,
    flawed_prior_bound,
    flawed_prior_condition,
    generator_b,
    generator_pair,
    identity_word_search,
    is_projective_identity,
    quat_conjugator,
    threshold_equivalence,
    threshold_from_nu_squared,
    trace_ab,
    word_evaluate,
)
from heisfree.hermitian import Matrix3, is_unitary
from heisfree.scalars import QI, QJ, QK, SQRT2, ExactComplex, ImaginaryQuat, Quaternion

from conftest import imaginary_quats, rand_fraction, rand_quaternion, rand_rational_complex

F = Fraction
DISPLAYED_AB = Matrix3((
    (4, -4 * SQRT2, -4),
    (3 * SQRT2, -5, -2 * SQRT2),
    (F(-9, 4), F(3, 2) * SQRT2, 1),
))


def gauss_jordan_inverse(m: Matrix3) -> Matrix3:
    """Exact inverse by row reduction of [m | I]."""
    rows = [list(r) + [ExactComplex(int(i == j)) for j in range(3)] for i, r in enumerate(m.rows)]
    for col in range(3):
        piv = next(r for r in range(col, 3) if not rows[r][col].is_zero())
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [x * inv for x in rows[col]]
        for r in range(3):
            if r != col and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return Matrix3(tuple(tuple(r[3:]) for r in rows))


def numpy_letter_matrices(mu: complex):
    s = 2 * math.sqrt(2)
    A = np.array([[1, s, -4], [0, 1, -s], [0, 0, 1]], dtype=complex)

    def B(m):
        return np.array([[1, 0, 0], [s * m, 1, 0], [-4 * abs(m) ** 2, -s * np.conj(m), 1]])

    return {"A": A, "a": np.linalg.inv(A), "B": B(mu), "b": np.linalg.inv(B(mu))}


def brute_force_first_identity(mu: complex, max_len: int):
    """Enumerate all words (reduced or not, then filter) in length-lex order."""
    mats = numpy_letter_matrices(mu)
    inv = {"A": "a", "a": "A", "B": "b", "b": "B"}
    for n in range(1, max_len + 1):
        for word in itertools.product(LETTERS, repeat=n):
            if any(inv[x] == y for x, y in zip(word, word[1:])):
                continue
            m = np.eye(3, dtype=complex)
            for x in word:
                m = m @ mats[x]
            lam = m[0, 0]
            if np.allclose(m, lam * np.eye(3), atol=1e-8) and abs(abs(lam) - 1) < 1e-8:
                return "".join(word)
    return None


# --- generators and trace ------------------------------------------------

def test_generator_examples():
    assert generator_b(0) == Matrix3.identity()
    pair = generator_pair(F(-3, 4))
    assert pair.A * pair.B == DISPLAYED_AB
    assert is_unitary(pair.A) and is_unitary(pair.B)
    assert GENERATOR_A == Matrix3(((1, 2 * SQRT2, -4), (0, 1, -2 * SQRT2), (0, 0, 1)))


def test_quaternion_generators_unitary():
    pair = generator_pair(Quaternion(-0.5, 0.1, 0.3, -0.2))
    assert is_unitary(pair.A, 1e-12) and is_unitary(pair.B, 1e-12)


@pytest.mark.parametrize("mu, expected", [(F(-3, 4), 0), (0, 3), (-1, 3)])
def test_trace_examples(mu, expected):
    assert trace_ab(mu) == expected
    pair = generator_pair(mu)
    assert (pair.A * pair.B).trace() == expected


def test_trace_identity_random(rng):
    for _ in range(200):
        mu = rand_rational_complex(rng)
        pair = generator_pair(mu)
        assert (pair.A * pair.B).trace() == trace_ab(mu)


def test_closed_form_inverses_match_row_reduction(rng):
    mu = rand_rational_complex(rng)
    pair = generator_pair(mu)
    assert pair.letter_matrix("a") == gauss_jordan_inverse(pair.A)
    assert pair.letter_matrix("b") == gauss_jordan_inverse(pair.B)
    assert pair.A * pair.letter_matrix("a") == Matrix3.identity()


def test_order_three_at_counterexample():
    pair = generator_pair(F(-3, 4))
    ab = pair.A * pair.B
    assert not is_projective_identity(ab)
    assert not is_projective_identity(ab * ab)
    assert is_projective_identity(ab ** 3)
    lam = (ab ** 3).scalar_multiple_of_identity()
    assert lam is not None and lam.abs2() == 1


# --- words ---------------------------------------------------------------

def test_reduced_word():
    assert str(ReducedWord.parse("A B A⁻¹ B^-1")) == "ABab"
    assert ReducedWord.parse("ABab").pretty() == "A B A⁻¹ B⁻¹"
    with pytest.raises(ValueError):
        ReducedWord.parse("A A⁻¹")
    with pytest.raises(ValueError):
        ReducedWord(("A", "C"))
    assert ReducedWord.parse("ABB").inverse() == ReducedWord.parse("bba")


def test_word_evaluate_examples():
    pair = generator_pair(F(-3, 4))
    assert word_evaluate(pair, ReducedWord()) == Matrix3.identity()
    assert word_evaluate(pair, "AB") == DISPLAYED_AB
    assert word_evaluate(pair, "ABab") == (
        pair.A * pair.B * gauss_jordan_inverse(pair.A) * gauss_jordan_inverse(pair.B))


def test_packed_arithmetic_agrees_with_exact(rng):
    pair = generator_pair(ExactComplex(F(-2, 7), F(5, 3)))
    packed = {x: _pack(pair.letter_matrix(x)) for x in LETTERS}
    for _ in range(30):
        n = rng.randint(1, 6)
        letters = [rng.choice(LETTERS)]
        while len(letters) < n:
            x = rng.choice(LETTERS)
            if x != ReducedWord((letters[-1],)).inverse().letters[0]:
                letters.append(x)
        word = ReducedWord(tuple(letters))
        acc = packed[letters[0]]
        for x in letters[1:]:
            acc = _pmul(acc, packed[x])
        exact = word_evaluate(pair, word)
        nums, den = acc
        for k, e in enumerate(exact.entries()):
            a, b, c, d = nums[k]
            assert e == ExactComplex(
                F(a, den) + F(b, den) * SQRT2, F(c, den) + F(d, den) * SQRT2)
        assert _packed_is_projective_identity(acc) == is_projective_identity(exact)


def test_search_counterexample():
    pair = generator_pair(F(-3, 4))
    assert str(identity_word_search(pair, 6)) == "ABABAB"
    assert identity_word_search(pair, 5) is None


def test_search_matches_brute_force_oracle():
    assert brute_force_first_identity(-0.75, 6) == "ABABAB"
    assert brute_force_first_identity(-0.75, 5) is None
    # mu = -1/4: tr(AB) = -1 on a non-circle point; compare first witnesses
    for mu in (F(-1, 4), F(-1, 2)):
        expected = brute_force_first_identity(float(mu), 6)
        got = identity_word_search(generator_pair(mu), 6)
        assert (str(got) if got else None) == expected


def test_search_free_examples():
    assert identity_word_search(generator_pair(-1), 8) is None


def test_parallel_search_identical():
    for mu in (F(-3, 4), F(-1, 4), -1):
        pair = generator_pair(mu)
        assert identity_word_search(pair, 6, workers=4) == identity_word_search(pair, 6)


def test_search_guards():
    with pytest.raises(ValueError):
        identity_word_search(generator_pair(-1), 13)
    with pytest.raises(ValueError):
        identity_word_search(generator_pair(-1), 0)
    with pytest.raises(ValueError):
        identity_word_search(generator_pair(Quaternion(-1.0)), 3)


# --- checkers ------------------------------------------------------------

@pytest.mark.parametrize("mu", [-1, ExactComplex(F(-1, 2), F(1, 2)), ExactComplex(F(-1, 2), F(-1, 2))])
def test_main_certified(mu):
    v = check_free_main(mu)
    assert v.kind is VerdictKind.CERTIFIED_FREE and v.certificate == TAG_CIRCLE
    assert identity_word_search(generator_pair(mu), 6) is None


def test_main_counterexample():
    v = check_free_main(F(-3, 4))
    assert v.kind is VerdictKind.NOT_COVERED
    assert v.details["circle_residual"] == F(-3, 16)
    v = check_free_main(F(-3, 4), search_depth=6)
    assert v.kind is VerdictKind.NON_FREE_WITNESS
    assert str(v.certificate) == "ABABAB"


def test_main_below_threshold_not_covered():
    mu = mu_from_nu(7)
    assert mu.abs2() == F(1, 50)
    v = check_free_main(mu)
    assert v.kind is VerdictKind.NOT_COVERED and "below threshold" in v.certificate
    boundary = check_free_main(ExactComplex(F(-3, 128), 0))
    assert boundary.kind is VerdictKind.NOT_COVERED  # off the circle


def test_quat_examples():
    v = check_free_quat(Quaternion(-0.5, 0, 0.5, 0))
    assert v.kind is VerdictKind.CERTIFIED_FREE and v.certificate == TAG_CIRCLE_QUAT
    assert v.details["tau"].isclose(Quaternion(-0.5, 0.5))
    v = check_free_quat(Quaternion(-1.0))
    assert v.is_free and v.details["tau"] == Quaternion(-1.0)
    assert check_free_quat(Quaternion(-0.75)).kind is VerdictKind.NOT_COVERED


def test_quat_slice_conjugation(rng):
    for _ in range(50):
        mu = rand_quaternion(rng, 1.0)
        v = check_free_quat(mu)
        tau, beta = v.details["tau"], v.details["conjugator"]
        assert abs(beta.norm() - 1) < 1e-12
        d = Matrix3.diag(beta, beta, beta)
        d_inv = Matrix3.diag(beta.conj(), beta.conj(), beta.conj())
        assert (d * generator_b(tau) * d_inv).isclose(generator_b(mu), 1e-9)
        assert (d * generator_pair(tau).A * d_inv).isclose(generator_pair(mu).A, 1e-12)


def test_quat_agrees_with_exact_on_complex_slice(rng):
    for _ in range(50):
        mu = mu_from_nu(rand_fraction(rng, span=10))
        exact = check_free_main(mu).kind
        q = Quaternion(float(mu.re), 0.0, float(mu.im), 0.0)
        assert check_free_quat(q, 1e-12).kind is exact


def test_flawed_condition():
    bound = flawed_prior_bound()
    mpmath.mp.dps = 40
    ref = 1 / mpmath.sqrt(1 + mpmath.atan(mpmath.sqrt(mpmath.mpf(125) / 3)) ** 2)
    assert abs(bound - float(ref)) < 1e-12
    assert flawed_prior_condition(F(-3, 4)) is True
    assert flawed_prior_condition(0) is False
    assert flawed_prior_condition(-1) is True


@pytest.mark.parametrize("m, n, free", [
    (ExactComplex(0, 2), ExactComplex(0, 2), True),
    (2, 1, False),
    (ExactComplex(0, 4), ExactComplex(0, -2), True),
    (SQRT2, 2 * SQRT2, True),   # |mn|^2 = 16 exactly
    (SQRT2, F(14, 5), False),   # |mn|^2 = 392/25 < 16
    (ExactComplex(1, 1), ExactComplex(2, 2), True),
])
def test_lyndon_ullman(m, n, free):
    v = check_free_lu(m, n)
    assert v.is_free is free
    if free:
        assert v.certificate == TAG_LYNDON_ULLMAN
    a1, b1 = v.details["A"], v.details["B"]
    assert a1 == Matrix3(((1, 0, m), (0, 1, 0), (0, 0, 1)))
    assert b1 == Matrix3(((1, 0, 0), (0, 1, 0), (n, 0, 1)))


def mat2_mul(x, y):
    return tuple(tuple(sum((x[r][k] * y[k][c] for k in range(2)), ExactComplex(0))
                       for c in range(2)) for r in range(2))


def test_embed_examples_and_homomorphism(rng):
    one = ExactComplex(1)
    zero = ExactComplex(0)
    assert embed_2x2(((one, zero), (zero, one))) == Matrix3.identity()
    m = rand_rational_complex(rng)
    assert embed_2x2(((1, m), (0, 1))) == Matrix3(((1, 0, m), (0, 1, 0), (0, 0, 1)))
    for _ in range(100):
        x = tuple(tuple(rand_rational_complex(rng) for _ in range(2)) for _ in range(2))
        y = tuple(tuple(rand_rational_complex(rng) for _ in range(2)) for _ in range(2))
        assert embed_2x2(mat2_mul(x, y)) == embed_2x2(x) * embed_2x2(y)


def test_vertical_quat_examples():
    v = check_free_vertical_quat(ImaginaryQuat(2, 0, 0))
    assert v.is_free and v.certificate == TAG_VERTICAL_QUAT
    assert check_free_vertical_quat(ImaginaryQuat(1, 1, 1)).kind is VerdictKind.NOT_COVERED
    v = check_free_vertical_quat(ImaginaryQuat(0, 2, 0))
    assert v.is_free
    alpha = v.details["alpha"]
    assert (alpha * QJ * alpha.inverse()).isclose(QI, 1e-12)
    a_conj = v.details["A_conj"]
    assert a_conj.isclose(Matrix3(((1.0, 0.0, QI.scale(2.0)), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))), 1e-12)
    with pytest.raises(ValueError):
        check_free_vertical_quat(ImaginaryQuat())


def test_conjugator_examples():
    assert quat_conjugator(ImaginaryQuat(3, 0, 0)).isclose(Quaternion(1.0))
    s = 1 / math.sqrt(2)
    alpha = quat_conjugator(ImaginaryQuat(0, 1, 0))
    assert alpha.isclose(Quaternion(s, 0, 0, -s))
    # (1 - k) j (1 + k) / 2 = i
    by_hand = (Quaternion(1, 0, 0, -1) * QJ * Quaternion(1, 0, 0, 1)).scale(0.5)
    assert by_hand.isclose(QI)
    assert quat_conjugator(ImaginaryQuat(-1, 0, 0)).isclose(QJ)
    assert (QJ * -QI * QJ.inverse()).isclose(QI)
    with pytest.raises(ValueError):
        quat_conjugator(ImaginaryQuat())


@settings(max_examples=200)
@given(imaginary_quats)
def test_conjugator_residual(tau):
    if tau.norm() < 1e-6:
        return
    alpha = quat_conjugator(tau)
    assert abs(alpha.norm() - 1) <= 1e-12
    res = alpha * tau.to_quaternion() * alpha.inverse() - QI.scale(tau.norm())
    assert res.norm() <= 1e-9 * tau.norm()


def test_conjugator_near_minus_i():
    for eps in (1e-3, 1e-8, 1e-14):
        tau = ImaginaryQuat(-1.0, eps, -eps)
        alpha = quat_conjugator(tau)
        res = alpha * tau.to_quaternion() * alpha.inverse() - QI.scale(tau.norm())
        assert res.norm() <= 1e-12


# --- threshold -----------------------------------------------------------

def test_threshold_examples():
    r = threshold_from_nu_squared(F(125, 3))
    assert r.mu_squared == F(3, 128) and r.condition_holds and r.nu_bound_holds
    r = threshold_equivalence(0)
    assert r.mu_squared == 1 and r.condition_holds and r.nu_bound_holds
    r = threshold_equivalence(7)
    assert r.mu_squared == F(1, 50)
    assert not r.condition_holds and not r.nu_bound_holds


def test_threshold_biconditional(rng):
    for _ in range(500):
        r = threshold_equivalence(rand_fraction(rng, span=10, den=20))
        assert r.condition_holds == r.nu_bound_holds
    for nu2 in (F(125, 3) - F(1, 10 ** 9), F(125, 3) + F(1, 10 ** 9)):
        r = threshold_from_nu_squared(nu2)
        assert r.condition_holds == r.nu_bound_holds


def test_threshold_matches_circle_checker(rng):
    for _ in range(50):
        nu = rand_fraction(rng, span=10)
        assert check_free_main(mu_from_nu(nu)).is_free == threshold_equivalence(nu).condition_holds
