"""Freeness checkers for groups generated by two Heisenberg translations.

The conditions implemented here are sufficient only: a group that fails
them is reported as ``NotCovered``, never as non-free.  A ``NonFreeWitness``
always carries a concrete reduced word that evaluates to a projective
identity.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .cartan import circle_residual
from .heisenberg import HeisPoint, heis_translation_matrix
from .hermitian import EXACT, QUATERNION, Matrix3, is_unitary
from .scalars import (
    DEFAULT_TOL,
    SQRT2,
    ExactComplex,
    ExactScalar,
    ImaginaryQuat,
    Quaternion,
    QI,
    QJ,
)

CIRCLE_THRESHOLD = Fraction(3, 128)
NU_SQUARED_BOUND = Fraction(125, 3)
LYNDON_ULLMAN_BOUND = 4
VERTICAL_QUAT_BOUND = 2.0

CONJUGATION_TOL = 1e-9
MAX_SEARCH_DEPTH = 12

TAG_CIRCLE = "circle-threshold"
TAG_CIRCLE_QUAT = "circle-threshold-quaternion"
TAG_LYNDON_ULLMAN = "lyndon-ullman"
TAG_VERTICAL_QUAT = "vertical-quaternion"


class VerdictKind(enum.Enum):
    CERTIFIED_FREE = "CertifiedFree"
    NON_FREE_WITNESS = "NonFreeWitness"
    NOT_COVERED = "NotCovered"


@dataclass(frozen=True)
class FreenessVerdict:
    kind: VerdictKind
    certificate: object
    details: dict = field(default_factory=dict, compare=False)

    @property
    def is_free(self) -> bool:
        return self.kind is VerdictKind.CERTIFIED_FREE


# --- generators ---------------------------------------------------------

GENERATOR_A = heis_translation_matrix(HeisPoint(-2, 0))
GENERATOR_A_INV = heis_translation_matrix(HeisPoint(2, 0))


def _on_path(m: Matrix3, path: str) -> Matrix3:
    if path == QUATERNION:
        return Matrix3(tuple(tuple(Quaternion.coerce(e) for e in r) for r in m.rows))
    return m


def _coerce_mu(mu):
    if isinstance(mu, (Quaternion, float)):
        return Quaternion.coerce(mu)
    return ExactComplex.coerce(mu)


def generator_b(mu) -> Matrix3:
    """Lower-triangular ``B(mu)``: rows ``(1,0,0)``, ``(2 sqrt2 mu, 1, 0)``,
    ``(-4|mu|^2, -2 sqrt2 conj(mu), 1)``."""
    mu = _coerce_mu(mu)
    if isinstance(mu, Quaternion):
        r2 = 2.0 * math.sqrt(2.0)
        return Matrix3((
            (1.0, 0.0, 0.0),
            (mu.scale(r2), 1.0, 0.0),
            (-4.0 * mu.abs2(), -mu.conj().scale(r2), 1.0),
        ))
    r2 = ExactComplex(2 * SQRT2)
    return Matrix3((
        (1, 0, 0),
        (r2 * mu, 1, 0),
        (-4 * mu.abs2(), -(r2 * mu.conj()), 1),
    ))


@dataclass(frozen=True)
class GeneratorPair:
    A: Matrix3
    B: Matrix3
    mu: object
    path: str

    def letter_matrix(self, letter: str) -> Matrix3:
        if letter == "A":
            return self.A
        if letter == "a":
            return _on_path(GENERATOR_A_INV, self.path)
        if letter == "B":
            return self.B
        if letter == "b":
            return generator_b(-self.mu)
        raise ValueError(f"unknown letter {letter!r}")


def generator_pair(mu) -> GeneratorPair:
    mu = _coerce_mu(mu)
    path = QUATERNION if isinstance(mu, Quaternion) else EXACT
    return GeneratorPair(_on_path(GENERATOR_A, path), generator_b(mu), mu, path)


def trace_ab(mu):
    """``3 + 16 Re(mu) + 16 |mu|^2``."""
    mu = _coerce_mu(mu)
    if isinstance(mu, Quaternion):
        return 3.0 + 16.0 * mu.r0 + 16.0 * mu.abs2()
    return 3 + 16 * mu.re + 16 * mu.abs2()


# --- words --------------------------------------------------------------

LETTERS = ("A", "a", "B", "b")
_INVERSE = {"A": "a", "a": "A", "B": "b", "b": "B"}
_PRETTY = {"A": "A", "a": "A⁻¹", "B": "B", "b": "B⁻¹"}


@dataclass(frozen=True)
class ReducedWord:
    """Freely reduced word; lowercase letters are inverses."""

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        for x in letters:
            if x not in _INVERSE:
                raise ValueError(f"unknown letter {x!r}")
        for x, y in zip(letters, letters[1:]):
            if _INVERSE[x] == y:
                raise ValueError(f"word is not freely reduced: {''.join(letters)!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "ReducedWord":
        """Accepts ``ABab`` as well as ``A⁻¹`` / ``A^-1`` for inverses."""
        s = text.replace(" ", "").replace("⁻¹", "^-1")
        out = []
        k = 0
        while k < len(s):
            ch = s[k]
            if ch not in _INVERSE:
                raise ValueError(f"unknown letter {ch!r} in {text!r}")
            if s.startswith("^-1", k + 1):
                out.append(_INVERSE[ch])
                k += 4
            else:
                out.append(ch)
                k += 1
        return cls(tuple(out))

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return "".join(self.letters)

    def pretty(self) -> str:
        return " ".join(_PRETTY[x] for x in self.letters)

    def inverse(self) -> "ReducedWord":
        return ReducedWord(tuple(_INVERSE[x] for x in reversed(self.letters)))


def word_evaluate(pair: GeneratorPair, w) -> Matrix3:
    if isinstance(w, str):
        w = ReducedWord.parse(w)
    out = Matrix3.identity(pair.path)
    mats = {}
    for x in w.letters:
        if x not in mats:
            mats[x] = pair.letter_matrix(x)
        out = out * mats[x]
    return out


def is_projective_identity(m: Matrix3, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``m = lam I`` with ``|lam| = 1`` (``lam`` real on the quaternion path)."""
    if m.path == EXACT:
        lam = m.scalar_multiple_of_identity()
        return lam is not None and lam.abs2() == 1
    d = m[0, 0]
    for r in range(3):
        for c in range(3):
            target = d if r == c else Quaternion()
            if not Quaternion.coerce(m[r, c]).isclose(target, tol):
                return False
    return d.imag.norm() <= tol and abs(abs(d.r0) - 1.0) <= tol


# Packed exact arithmetic for the search hot loop.  An element of
# Z[sqrt2][i] is (a, b, c, d) = a + b sqrt2 + (c + d sqrt2) i; a matrix is a
# 9-tuple of such entries with one shared integer denominator.

def _zmul(x, y):
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    # (p1 + q1 i)(p2 + q2 i) with p, q in Z[sqrt2]
    return (
        a1 * a2 + 2 * b1 * b2 - c1 * c2 - 2 * d1 * d2,
        a1 * b2 + b1 * a2 - c1 * d2 - d1 * c2,
        a1 * c2 + 2 * b1 * d2 + c1 * a2 + 2 * d1 * b2,
        a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2,
    )


def _pmul(x, y):
    nx, dx = x
    ny, dy = y
    out = []
    for r in range(3):
        for c in range(3):
            acc = [0, 0, 0, 0]
            for k in range(3):
                u = nx[3 * r + k]
                v = ny[3 * k + c]
                if not (u[0] or u[1] or u[2] or u[3]) or not (v[0] or v[1] or v[2] or v[3]):
                    continue
                p = _zmul(u, v)
                acc[0] += p[0]
                acc[1] += p[1]
                acc[2] += p[2]
                acc[3] += p[3]
            out.append(tuple(acc))
    return tuple(out), dx * dy


def _pack(m: Matrix3):
    if m.path != EXACT:
        raise TypeError("packed arithmetic needs the exact path")
    fracs = []
    for e in m.entries():
        fracs.extend((e.re.a, e.re.b, e.im.a, e.im.b))
    den = lcm(*(f.denominator for f in fracs))
    ints = [int(f * den) for f in fracs]
    return tuple(tuple(ints[4 * k:4 * k + 4]) for k in range(9)), den


def _packed_is_projective_identity(x) -> bool:
    n, den = x
    for k in (1, 2, 3, 5, 6, 7):
        if any(n[k]):
            return False
    d = n[0]
    if n[4] != d or n[8] != d:
        return False
    a, b, c, e = d
    # |lam|^2 = 1  <=>  |diag|^2 = den^2 in Z[sqrt2]
    return a * a + 2 * b * b + c * c + 2 * e * e == den * den and 2 * a * b + 2 * c * e == 0


def _search_subtree(pair: GeneratorPair, max_len: int, first_letters):
    packed = {x: _pack(pair.letter_matrix(x)) for x in LETTERS}
    level = [((x,), packed[x]) for x in first_letters]
    length = 1
    while True:
        for word, mat in level:
            if _packed_is_projective_identity(mat):
                return word
        if length == max_len:
            return None
        nxt = []
        for word, mat in level:
            last_inv = _INVERSE[word[-1]]
            for x in LETTERS:
                if x != last_inv:
                    nxt.append((word + (x,), _pmul(mat, packed[x])))
        level = nxt
        length += 1


def _word_key(word):
    return (len(word), tuple(LETTERS.index(x) for x in word))


def identity_word_search(pair: GeneratorPair, max_len: int, workers: int = 1,
                         budget: int = MAX_SEARCH_DEPTH):
    """Shortest, then lexicographically first, reduced word equal to a
    projective identity, or None if there is none up to ``max_len``.

    Letter order is ``A < A^-1 < B < B^-1``.  With ``workers > 1`` the four
    first-letter subtrees are searched in separate processes; the winner is
    the same as in the sequential search.
    """
    if pair.path != EXACT:
        raise ValueError("identity search is only trustworthy on the exact path")
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    if max_len > budget:
        raise ValueError(f"max_len {max_len} exceeds the search budget {budget}")
    if workers <= 1:
        found = _search_subtree(pair, max_len, LETTERS)
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(LETTERS))) as ex:
            futures = [ex.submit(_search_subtree, pair, max_len, (x,)) for x in LETTERS]
            hits = [f.result() for f in futures]
        hits = [h for h in hits if h is not None]
        found = min(hits, key=_word_key) if hits else None
    if found is None:
        return None
    word = ReducedWord(found)
    if not is_projective_identity(word_evaluate(pair, word)):
        raise ArithmeticError(f"packed search disagrees with exact evaluation on {word}")
    return word


# --- conditions ---------------------------------------------------------

def check_free_main(mu, search_depth: int = 0, workers: int = 1) -> FreenessVerdict:
    """Certify freeness when ``|mu|^2 = -Re(mu) >= 3/128`` holds exactly.

    When the condition fails and ``search_depth > 0``, the identity-word
    search runs and may upgrade the verdict to a witness.
    """
    mu = ExactComplex.coerce(mu)
    residual = circle_residual(mu)
    abs2 = mu.abs2()
    details = {"circle_residual": residual, "mu_abs2": abs2, "trace_ab": trace_ab(mu)}
    if residual.is_zero() and abs2 >= CIRCLE_THRESHOLD:
        return FreenessVerdict(VerdictKind.CERTIFIED_FREE, TAG_CIRCLE, details)
    if not residual.is_zero():
        reason = f"off the circle: Re(mu)+|mu|^2 = {residual}"
    else:
        reason = f"below threshold: |mu|^2 = {abs2} < 3/128"
    if search_depth > 0:
        word = identity_word_search(generator_pair(mu), search_depth, workers=workers)
        details["search_depth"] = search_depth
        if word is not None:
            return FreenessVerdict(VerdictKind.NON_FREE_WITNESS, word, details)
    return FreenessVerdict(VerdictKind.NOT_COVERED, reason, details)


def flawed_prior_bound() -> float:
    """``1 / sqrt(1 + atan(sqrt(125/3))^2)``, about 0.57657."""
    return 1.0 / math.sqrt(1.0 + math.atan(math.sqrt(125.0 / 3.0)) ** 2)


def flawed_prior_condition(mu) -> bool:
    """The refuted sufficient condition ``bound <= |mu|``; demonstration only."""
    mu = ExactComplex.coerce(mu)
    return flawed_prior_bound() <= math.sqrt(float(mu.abs2()))


def check_free_quat(mu: Quaternion, tol: float = DEFAULT_TOL) -> FreenessVerdict:
    """Quaternionic version, reduced to the complex slice through
    ``tau = Re(mu) + sqrt(|mu|^2 - Re(mu)^2) i``."""
    mu = Quaternion.coerce(mu)
    re = mu.r0
    abs2 = mu.abs2()
    scale = max(1.0, abs2)
    rad = abs2 - re * re
    if rad < -tol * scale:
        raise ValueError(f"|mu|^2 < Re(mu)^2 ({abs2} < {re * re})")
    tau = Quaternion(re, math.sqrt(max(rad, 0.0)))
    beta = _slice_conjugator(mu)
    residual = tau.abs2() + tau.r0
    details = {"tau": tau, "conjugator": beta, "circle_residual": residual, "tol": tol}
    if abs(residual) <= tol * scale and tau.abs2() >= float(CIRCLE_THRESHOLD) - tol:
        return FreenessVerdict(VerdictKind.CERTIFIED_FREE, TAG_CIRCLE_QUAT, details)
    return FreenessVerdict(
        VerdictKind.NOT_COVERED,
        f"condition fails on the slice: |tau|^2+Re(tau) = {residual!r}, |tau|^2 = {tau.abs2()!r}",
        details,
    )


def _slice_conjugator(mu: Quaternion) -> Quaternion:
    """Unit ``beta`` with ``beta tau beta^-1 = mu``."""
    v = mu.imag
    if v.is_zero():
        return Quaternion(1.0)
    return quat_conjugator(v).conj()


def quat_conjugator(tau: ImaginaryQuat) -> Quaternion:
    """Unit quaternion ``alpha`` with ``alpha tau alpha^-1 = |tau| i``.

    For a unit imaginary ``u``, ``q = 1 - i u`` satisfies ``q u = i q``.  When
    ``u`` has a negative ``i`` component it is first rotated by ``j`` so that
    ``|q|^2 = 2 + 2 u_i`` stays at least 2.
    """
    if isinstance(tau, Quaternion):
        tau = tau.imag
    n = tau.norm()
    if n == 0.0:
        raise ValueError("tau must be nonzero")
    u = tau.to_quaternion().scale(1.0 / n)
    pre = Quaternion(1.0)
    if u.r1 < 0.0:
        # j u j^-1 flips the signs of the i and k components
        pre = QJ
        u = QJ * u * QJ.conj()
    q = Quaternion(1.0) - QI * u
    alpha = q.scale(1.0 / q.norm()) * pre
    return alpha.scale(1.0 / alpha.norm())


def check_free_vertical_quat(tau: ImaginaryQuat, tol: float = DEFAULT_TOL) -> FreenessVerdict:
    """Vertical pair with corner entry ``tau`` is free when ``|tau| >= 2``."""
    if isinstance(tau, Quaternion):
        tau = tau.imag
    if tau.is_zero():
        raise ValueError("tau must be nonzero")
    alpha = quat_conjugator(tau)
    t = tau.norm()
    tq = tau.to_quaternion()
    conj = alpha * tq * alpha.inverse()
    a_vert = Matrix3(((1.0, 0.0, tq), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)))
    b_vert = Matrix3(((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (tq, 0.0, 1.0)))
    c = Matrix3.diag(alpha, 1.0, alpha)
    c_inv = Matrix3.diag(alpha.inverse(), 1.0, alpha.inverse())
    details = {
        "alpha": alpha,
        "conjugated_tau": conj,
        "residual": (conj - QI.scale(t)).norm(),
        "A": a_vert,
        "B": b_vert,
        "A_conj": c * a_vert * c_inv,
        "B_conj": c * b_vert * c_inv,
        "tol": tol,
    }
    if tau.abs2() >= VERTICAL_QUAT_BOUND ** 2 - tol * VERTICAL_QUAT_BOUND ** 2:
        return FreenessVerdict(VerdictKind.CERTIFIED_FREE, TAG_VERTICAL_QUAT, details)
    return FreenessVerdict(VerdictKind.NOT_COVERED, f"|tau| = {t!r} < 2", details)


# --- Lyndon-Ullman ------------------------------------------------------

def embed_2x2(m) -> Matrix3:
    """``((a, b), (c, d)) -> ((a, 0, b), (0, 1, 0), (c, 0, d))``."""
    (a, b), (c, d) = m
    return Matrix3(((a, 0, b), (0, 1, 0), (c, 0, d)))


def lyndon_ullman_pair(m, n) -> tuple[Matrix3, Matrix3]:
    m, n = ExactComplex.coerce(m), ExactComplex.coerce(n)
    return embed_2x2(((1, m), (0, 1))), embed_2x2(((1, 0), (n, 1)))


def check_free_lu(m, n) -> FreenessVerdict:
    """Free when ``|m n| >= 4``, compared exactly as ``|m|^2 |n|^2 >= 16``."""
    m, n = ExactComplex.coerce(m), ExactComplex.coerce(n)
    prod2 = m.abs2() * n.abs2()
    a1, b1 = lyndon_ullman_pair(m, n)
    details = {"mn_abs2": prod2, "A": a1, "B": b1}
    if prod2 >= LYNDON_ULLMAN_BOUND ** 2:
        return FreenessVerdict(VerdictKind.CERTIFIED_FREE, TAG_LYNDON_ULLMAN, details)
    return FreenessVerdict(VerdictKind.NOT_COVERED, f"|mn|^2 = {prod2} < 16", details)


# --- threshold ----------------------------------------------------------

@dataclass(frozen=True)
class ThresholdReport:
    nu_squared: Fraction
    mu_squared: Fraction
    condition_holds: bool
    nu_bound_holds: bool


def threshold_from_nu_squared(nu_squared) -> ThresholdReport:
    nu2 = Fraction(nu_squared)
    if nu2 < 0:
        raise ValueError("nu^2 must be nonnegative")
    mu2 = 1 / (1 + nu2)
    return ThresholdReport(nu2, mu2, mu2 >= CIRCLE_THRESHOLD, nu2 <= NU_SQUARED_BOUND)


def threshold_equivalence(nu) -> ThresholdReport:
    """``|mu|^2 = 1/(1+nu^2)`` with both forms of the bound evaluated exactly."""
    nu = Fraction(nu)
    return threshold_from_nu_squared(nu * nu)


def generators_unitary(pair: GeneratorPair, tol: float = DEFAULT_TOL) -> bool:
    return is_unitary(pair.A, tol) and is_unitary(pair.B, tol)
