"""Congruence formulas and verification sweeps.

Residues are canonical (0..m-1) everywhere; the paper-style "-1" is
stored as m-1.  Counterexamples are reported as the lexicographically
smallest violating tuple.
"""

import math
from fractions import Fraction

from .errors import CtcongError, HypothesisViolation
from .laurent import (LaurentPoly, coeff_at, constant_term, reduce_mod,
                      substitute_signs)
from .report import CongruenceReport
from .sequences import CtSpec, SequenceWindow, ct_sequence, oracle_catalan


class DigitExpansion:
    """Base-p digits of n, least-significant first; empty for n = 0."""

    def __init__(self, p, digits_lsf):
        self.p = p
        self.digits = list(digits_lsf)

    def value(self):
        total = 0
        for d in reversed(self.digits):
            total = total * self.p + d
        return total


def digits(n, p):
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return DigitExpansion(p, out)


class CatalanDigitSplit:
    """Digit split of n: m initial base-p digits equal to p-1, then the
    remaining digits n0, n1, ... with n0 != p-1.  For n = p**m - 1 (all
    digits p-1, including n = 0) the tail is [0]."""

    def __init__(self, m, tail):
        self.m = m
        self.tail = list(tail)


def catalan_digit_split(n, p):
    ds = digits(n, p).digits
    m = 0
    while m < len(ds) and ds[m] == p - 1:
        m += 1
    tail = ds[m:]
    if not tail:
        tail = [0]
    return CatalanDigitSplit(m, tail)


# ---------------------------------------------------------------------------
# Lucas and Dwork
# ---------------------------------------------------------------------------

def _window_mod(seq, p_power, n_max):
    """Accept a CtSpec, SequenceWindow, or plain list; return residues
    0..n_max mod p_power."""
    if isinstance(seq, CtSpec):
        return ct_sequence(seq, n_max, mod=p_power).values
    values = seq.values if isinstance(seq, SequenceWindow) else list(seq)
    if len(values) < n_max + 1:
        raise CtcongError(
            f"window of length {len(values)} too short for n_max={n_max}")
    if isinstance(seq, SequenceWindow) and seq.modulus is not None:
        if seq.modulus != p_power:
            raise CtcongError(
                f"window is mod {seq.modulus}, need mod {p_power}")
        return values[:n_max + 1]
    return [v % p_power for v in values[:n_max + 1]]


def lucas_predict(base_residues, n):
    """Product of A(n_i) over the base-p digits of n, with p the length
    of the base residue table."""
    p = len(base_residues)
    out = 1
    for d in digits(n, p).digits:
        out = out * base_residues[d] % p
    return out


def lucas_verify(seq, p, n_max):
    """Check A(p n + k) == A(n) A(k) mod p for all p n + k <= n_max."""
    a = _window_mod(seq, p, n_max)
    params = {"p": p, "n_max": n_max}
    if a[0] % p != 1 % p:
        return CongruenceReport(
            "lucas", params, "fail",
            counterexample={"n": 0, "k": 0, "expected": 1,
                            "actual": a[0] % p},
            reason="A(0) must be congruent to 1")
    for n in range(n_max // p + 1):
        for k in range(p):
            if p * n + k > n_max:
                break
            lhs = a[p * n + k]
            rhs = a[n] * a[k] % p
            if lhs != rhs:
                return CongruenceReport(
                    "lucas", params, "fail",
                    counterexample={"n": n, "k": k, "expected": rhs,
                                    "actual": lhs})
    return CongruenceReport("lucas", params, "pass")


def dwork_verify(seq, p, r, m_max, n_max):
    """Check A(p**r m + n) A(n//p) == A(p**(r-1) m + n//p) A(n) mod p**r
    over the grid 0 <= m <= m_max, 0 <= n <= n_max."""
    if r < 1:
        raise ValueError("r must be >= 1")
    q = p ** r
    top = q * m_max + n_max
    a = _window_mod(seq, q, top)
    params = {"p": p, "r": r, "m_max": m_max, "n_max": n_max}
    for mm in range(m_max + 1):
        for nn in range(n_max + 1):
            lhs = a[q * mm + nn] * a[nn // p] % q
            rhs = a[p ** (r - 1) * mm + nn // p] * a[nn] % q
            if lhs != rhs:
                return CongruenceReport(
                    "dwork", params, "fail",
                    counterexample={"m": mm, "n": nn, "expected": rhs,
                                    "actual": lhs})
    return CongruenceReport("dwork", params, "pass")


# ---------------------------------------------------------------------------
# trinomial lemmas
# ---------------------------------------------------------------------------

def kronecker_mod_p(d, p):
    """Kronecker-style symbol in {-1, 0, 1}: for odd p the lift of
    d**((p-1)/2) mod p; for p = 2 the paper's convention d mod 2."""
    if p == 2:
        return d % 2
    v = pow(d % p, (p - 1) // 2, p)
    if v == 0:
        return 0
    return 1 if v == 1 else -1


def trinomial_pm1(a, b, c, p):
    """ct[(a/x + b + c x)**(p-1)] mod p as a canonical residue."""
    return kronecker_mod_p(b * b - 4 * a * c, p) % p


def trinomial_pm1_x(a, b, c, p):
    """ct[(a/x + b + c x)**(p-1) x] mod p as a canonical residue."""
    if p != 2 and c % p != 0:
        sigma = kronecker_mod_p(b * b - 4 * a * c, p)
        inv2c = pow(2 * c % p, p - 2, p)
        return b * inv2c * (1 - sigma) % p
    # p = 2 or p | c; b**(p-2) is 1 for p = 2 by convention
    bp = 1 if p == 2 else pow(b % p, p - 2, p)
    return (-a * bp) % p


# ---------------------------------------------------------------------------
# Theorem 4.1 apparatus
# ---------------------------------------------------------------------------

class GlcData:
    """Companion data for the two-case generalized Lucas congruence."""

    def __init__(self, sigma_x, sigma_y, q_hat, q_tilde, B_spec,
                 A_tilde_spec, branch):
        self.sigma_x = sigma_x
        self.sigma_y = sigma_y
        self.q_hat = q_hat
        self.q_tilde = q_tilde
        self.B_spec = B_spec
        self.A_tilde_spec = A_tilde_spec
        self.branch = branch


def _pq_coefficients(P, Q):
    if P.d != 2 or Q.d != 2:
        raise HypothesisViolation("P and Q must be bivariate")
    for e in P.terms:
        if not all(-1 <= v <= 1 for v in e):
            raise HypothesisViolation(
                f"supp(P) must lie in {{-1,0,1}}^2, found {e}")
    for e in Q.terms:
        if not all(0 <= v <= 1 for v in e):
            raise HypothesisViolation(
                f"supp(Q) must lie in {{0,1}}^2, found {e}; "
                "apply reflect() first")
    a = {(i, j): coeff_at(P, (i, j)) for i in (-1, 0, 1) for j in (-1, 0, 1)}
    alpha = coeff_at(Q, (0, 0))
    beta = coeff_at(Q, (1, 0))
    gamma = coeff_at(Q, (0, 1))
    delta = coeff_at(Q, (1, 1))
    return a, alpha, beta, gamma, delta


def glc_data(P, Q, p):
    """sigma's, Q-hat, Q-tilde, and the companion sequence specs."""
    a, alpha, beta, gamma, delta = _pq_coefficients(P, Q)
    sigma_x = kronecker_mod_p(a[(1, 0)] ** 2 - 4 * a[(1, -1)] * a[(1, 1)], p)
    sigma_y = kronecker_mod_p(a[(0, 1)] ** 2 - 4 * a[(-1, 1)] * a[(1, 1)], p)
    if p != 2 and a[(1, 1)] % p != 0:
        branch = "odd-p-unit-a11"
        inv = pow(2 * a[(1, 1)] % p, p - 2, p)
        q_hat = LaurentPoly(2, {
            (1, 0): a[(1, 0)] * inv * (1 - sigma_x),
            (0, 1): a[(0, 1)] * inv * (1 - sigma_y),
            (1, 1): 1 - sigma_x * sigma_y,
        })
    else:
        branch = "p2-or-p-divides-a11"
        # a**(p-2) with the convention a**0 = 1 for p = 2, any a
        def powp2(v):
            return 1 if p == 2 else pow(v % p, p - 2, p)
        q_hat = LaurentPoly(2, {
            (1, 0): -a[(1, -1)] * powp2(a[(1, 0)]),
            (0, 1): -a[(-1, 1)] * powp2(a[(0, 1)]),
            (1, 1): a[(1, 1)] - sigma_x * sigma_y,
        })
    q_hat = reduce_mod(q_hat, p)
    twisted = substitute_signs(Q, (sigma_x, sigma_y))
    q_tilde = reduce_mod(
        twisted - LaurentPoly.constant(2, alpha) + delta * q_hat, p)
    return GlcData(sigma_x, sigma_y, q_hat, q_tilde,
                   CtSpec(P), CtSpec(P, q_tilde), branch)


def glc_verify(P, Q, p, n_max):
    """Check A(p n + k) == B(n) A(k) + [k = p-1] A~(n) mod p for all
    n <= n_max and all k in 0..p-1."""
    data = glc_data(P, Q, p)
    a = ct_sequence(CtSpec(P, Q), p * n_max + p - 1, mod=p).values
    b = ct_sequence(data.B_spec, n_max, mod=p).values
    if data.q_tilde.is_zero():
        at = [0] * (n_max + 1)
    else:
        at = ct_sequence(data.A_tilde_spec, n_max, mod=p).values
    params = {"p": p, "n_max": n_max}
    for n in range(n_max + 1):
        for k in range(p):
            rhs = b[n] * a[k] % p
            if k == p - 1:
                rhs = (rhs + at[n]) % p
            lhs = a[p * n + k]
            if lhs != rhs:
                return CongruenceReport(
                    "glc", params, "fail",
                    counterexample={"n": n, "k": k, "expected": rhs,
                                    "actual": lhs})
    return CongruenceReport("glc", params, "pass")


def _check_simpl(a, b, p, n_max, params, kind, correction=True):
    """Shared sweep for the simplified congruence
    A(p n + k) == B(n) A(k) + [k = p-1] (A(n) - A(0) B(n))."""
    for n in range(n_max + 1):
        for k in range(p):
            rhs = b[n] * a[k] % p
            if correction and k == p - 1:
                rhs = (rhs + a[n] - a[0] * b[n]) % p
            lhs = a[p * n + k]
            if lhs != rhs:
                return CongruenceReport(
                    kind, params, "fail",
                    counterexample={"n": n, "k": k, "expected": rhs,
                                    "actual": lhs})
    return CongruenceReport(kind, params, "pass")


def glc_simple_verify(P, Q, p, n_max):
    """The simplified one-companion congruence; error "inapplicable"
    when the hypotheses (delta = 0 or p odd with p not dividing a11,
    and sigma_x = sigma_y = 1) fail."""
    a_coeffs, _alpha, _beta, _gamma, delta = _pq_coefficients(P, Q)
    data = glc_data(P, Q, p)
    params = {"p": p, "n_max": n_max}
    if not (delta == 0 or (p != 2 and a_coeffs[(1, 1)] % p != 0)):
        return CongruenceReport(
            "glc-simple", params, "inapplicable", reason=(
                "requires delta = 0, or p odd and p not dividing a_{1,1}"))
    if not (data.sigma_x == 1 and data.sigma_y == 1):
        return CongruenceReport(
            "glc-simple", params, "inapplicable", reason=(
                f"requires sigma_x = sigma_y = 1, got "
                f"({data.sigma_x}, {data.sigma_y})"))
    a = ct_sequence(CtSpec(P, Q), p * n_max + p - 1, mod=p).values
    b = ct_sequence(data.B_spec, n_max, mod=p).values
    return _check_simpl(a, b, p, n_max, params, "glc-simple")


def shift_combination_check(B_spec, alpha, beta, p, n_max):
    """For A(n) = alpha B(n) + beta B(n+1): verify the simplified
    congruence, after confirming B satisfies plain Lucas mod p.
    alpha and beta may be Fractions as long as every A(n) is integral."""
    params = {"p": p, "n_max": n_max, "alpha": str(alpha),
              "beta": str(beta)}
    b_exact = ct_sequence(B_spec, p * n_max + p).values
    lucas = lucas_verify(b_exact, p, p * n_max + p - 1)
    if not lucas.passed:
        return CongruenceReport(
            "shift-combination", params, "inapplicable",
            reason="B does not satisfy the Lucas congruences on this range")
    alpha, beta = Fraction(alpha), Fraction(beta)
    a = []
    for n in range(p * n_max + p):
        v = alpha * b_exact[n] + beta * b_exact[n + 1]
        if v.denominator != 1:
            raise CtcongError(
                f"combination is not integral at n={n}: {v}")
        a.append(int(v) % p)
    b = [v % p for v in b_exact]
    return _check_simpl(a, b, p, n_max, params, "shift-combination")


def univariate_glc(a, b, c, alpha, beta, p, n_max):
    """A(n) = ct[(a/x + b + c x)**n (alpha + beta x)]: the simplified
    congruence when c is a unit mod p, the correction-free degenerate
    congruence A(p n + k) == B(n) A(k) when p | c."""
    P = LaurentPoly(1, {(-1,): a, (0,): b, (1,): c})
    Q = LaurentPoly(1, {(0,): alpha, (1,): beta})
    params = {"a": a, "b": b, "c": c, "alpha": alpha, "beta": beta,
              "p": p, "n_max": n_max}
    avals = ct_sequence(CtSpec(P, Q), p * n_max + p - 1, mod=p).values
    bvals = ct_sequence(CtSpec(P), n_max, mod=p).values
    degenerate = c % p == 0
    report = _check_simpl(avals, bvals, p, n_max, params, "univariate-glc",
                          correction=not degenerate)
    report.params["degenerate"] = degenerate
    return report


# ---------------------------------------------------------------------------
# Catalan numbers
# ---------------------------------------------------------------------------

_CATALAN_CACHE = [1]


def _catalan_exact(n):
    while len(_CATALAN_CACHE) <= n:
        k = len(_CATALAN_CACHE) - 1
        _CATALAN_CACHE.append(
            _CATALAN_CACHE[-1] * 2 * (2 * k + 1) // (k + 2))
    return _CATALAN_CACHE[n]


def catalan_step(p, n, k):
    """Residue of C(p n + k) mod p from (n, k): binom(2n,n) C(k) for
    k < p-1, and -(2n+1) C(n) for k = p-1."""
    if not 0 <= k < p:
        raise ValueError("k must satisfy 0 <= k < p")
    if k < p - 1:
        return math.comb(2 * n, n) * _catalan_exact(k) % p
    return -(2 * n + 1) * _catalan_exact(n) % p


def catalan_via_step(n, p):
    """C(n) mod p by iterating the one-digit step."""
    if n < p:
        return _catalan_exact(n) % p
    q, k = divmod(n, p)
    if k < p - 1:
        return math.comb(2 * q, q) % p * catalan_via_step(k, p) % p
    return -(2 * q + 1) * catalan_via_step(q, p) % p


def catalan_digit_formula(n, p):
    """C(n) mod p from the digit split: delta(n0, m) C(n0) times the
    product of central binomials at the remaining digits."""
    split = catalan_digit_split(n, p)
    n0 = split.tail[0]
    out = 1 if split.m == 0 else (-(2 * n0 + 1)) % p
    out = out * _catalan_exact(n0) % p
    for d in split.tail[1:]:
        out = out * math.comb(2 * d, d) % p
    return out


def catalan_mod3(n):
    """C(n) mod 3 via the ternary digits of n + 1: (-1)**(number of
    digits m_i = 1, i >= 1) when all those digits are 0 or 1, else 0."""
    ds = digits(n + 1, 3).digits
    high = ds[1:]
    if any(d == 2 for d in high):
        return 0
    return (-1) ** sum(1 for d in high if d == 1) % 3


def catalan_mod5(n):
    """C(n) mod 5 via the digit-split characterization: 0 on the set Z,
    else 2**lambda(n), with lambda counting digit patterns."""
    split = catalan_digit_split(n, 5)
    m, tail = split.m, split.tail
    n0 = tail[0]
    rest = tail[1:]
    # the zero set Z
    if n0 == 3 or any(d in (3, 4) for d in rest) or (n0 == 2 and m >= 1):
        return 0
    lam = sum(1 for d in rest if d == 1)
    if n0 == 2:
        lam += 1
    elif n0 == 1 and m >= 1:
        lam += 1
    elif n0 == 0 and m >= 1:
        lam += 2
    return pow(2, lam, 5)


def s_mod5(n):
    """S(n) mod 5: (-1)**(number of base-5 digits equal to 3) when every
    digit lies in {0, 1, 3}, else 0."""
    ds = digits(n, 5).digits
    if any(d not in (0, 1, 3) for d in ds):
        return 0
    return (-1) ** sum(1 for d in ds if d == 3) % 5


def _primes_upto(bound):
    sieve = [True] * (bound + 1)
    sieve[0:2] = [False, False]
    for i in range(2, int(bound ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = [False] * len(sieve[i * i::i])
    return [i for i, ok in enumerate(sieve) if ok]


def never_divisible_primes(oracle, prime_bound, lucas_check_n=200):
    """Primes p <= prime_bound with oracle(0..p-1) all nonzero mod p,
    for a sequence whose Lucas property is asserted on a small range."""
    primes = _primes_upto(prime_bound)
    top = max(lucas_check_n, prime_bound)
    values = [oracle(n) for n in range(top + 1)]
    out = []
    for p in primes:
        report = lucas_verify(values, p, lucas_check_n)
        if not report.passed:
            raise CtcongError(
                f"sequence fails the Lucas congruences mod {p}; "
                "never-divisibility reasoning does not apply")
        if all(values[k] % p for k in range(p)):
            out.append(p)
    return out
