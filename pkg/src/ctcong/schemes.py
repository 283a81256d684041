"""Linear p-schemes: representation, evaluation, synthesis, verification.

A scheme holds p transition matrices M_0..M_{p-1} over Z/p**r and an
initial vector c.  Evaluation at n with base-p digits n_0..n_r
(least-significant first) is component 0 of M_{n_0} M_{n_1} ... M_{n_r} c.
"""

import json
import math

from .errors import CtcongError, HypothesisViolation, StateExplosion
from .laurent import (cartier_vector, constant_term, exponent_gcds, mul,
                      pow_, reduce_mod)
from .parsing import to_canonical_string
from .report import CongruenceReport
from .sequences import CtSpec, ct_sequence
from .congruences import digits, lucas_verify


class LinearPScheme:
    """Transition matrices, one per digit, plus initial conditions."""

    def __init__(self, p, r, matrices, init, labels=None):
        p, r = int(p), int(r)
        if r < 1:
            raise ValueError("r must be >= 1")
        q = p ** r
        matrices = [[[int(v) % q for v in row] for row in mat]
                    for mat in matrices]
        init = [int(v) % q for v in init]
        s = len(init)
        if s < 1:
            raise ValueError("at least one state required")
        if len(matrices) != p:
            raise ValueError(f"expected {p} matrices, got {len(matrices)}")
        for mat in matrices:
            if len(mat) != s or any(len(row) != s for row in mat):
                raise ValueError("matrix dimensions inconsistent with init")
        self.p = p
        self.r = r
        self.matrices = matrices
        self.init = init
        self.labels = list(labels) if labels is not None else None

    @property
    def modulus(self):
        return self.p ** self.r

    @property
    def states(self):
        return len(self.init)

    def __eq__(self, other):
        return (isinstance(other, LinearPScheme) and self.p == other.p
                and self.r == other.r and self.matrices == other.matrices
                and self.init == other.init)


def evaluate(sch, n):
    """Component 0 of the digit-indexed matrix product applied to c."""
    q = sch.modulus
    v = list(sch.init)
    for k in reversed(digits(n, sch.p).digits):
        mat = sch.matrices[k]
        v = [sum(row[j] * v[j] for j in range(len(v))) % q for row in mat]
    return v[0]


def from_lucas_table(base_residues, p):
    """One-state scheme from A(0..p-1) mod p; requires A(0) = 1."""
    if len(base_residues) != p:
        raise ValueError(f"expected {p} residues")
    if base_residues[0] % p != 1 % p:
        raise CtcongError("A(0) must be congruent to 1")
    return LinearPScheme(p, 1, [[[v % p]] for v in base_residues], [1])


def two_state_from_glc(P, Q, p):
    """Two-state scheme (states A, B) from the simplified generalized
    Lucas congruence; errors when its hypotheses are violated."""
    from .congruences import glc_data, _pq_coefficients

    a_coeffs, _al, _be, _ga, delta = _pq_coefficients(P, Q)
    data = glc_data(P, Q, p)
    if not (delta == 0 or (p != 2 and a_coeffs[(1, 1)] % p != 0)):
        raise HypothesisViolation(
            "requires delta = 0, or p odd and p not dividing a_{1,1}")
    if not (data.sigma_x == 1 and data.sigma_y == 1):
        raise HypothesisViolation(
            f"requires sigma_x = sigma_y = 1, got "
            f"({data.sigma_x}, {data.sigma_y})")
    a = ct_sequence(CtSpec(P, Q), p - 1, mod=p).values
    b = ct_sequence(CtSpec(P), p - 1, mod=p).values
    mats = []
    for k in range(p):
        if k < p - 1:
            row0 = [0, a[k]]
        else:
            row0 = [1, (a[p - 1] - a[0]) % p]
        mats.append([row0, [0, b[k]]])
    return LinearPScheme(p, 1, mats, [a[0], 1])


def _unit_ratio(f, g, q):
    """A unit u mod q with f = u*g (same support), or None."""
    if set(f.terms) != set(g.terms):
        return None
    u = None
    for e, c in g.terms.items():
        # solve u*c = f[e] mod q; require c invertible for a clean ratio
        if math.gcd(c, q) != 1:
            return None
        cand = f.terms[e] * pow(c, -1, q) % q
        if u is None:
            u = cand
        elif u != cand:
            return None
    if u is None or math.gcd(u, q) != 1:
        return None
    return u


def synthesize(spec, p, r, max_states=64):
    """Closure-based scheme construction for ct[P**n Q] mod p**r.

    States are pairs (base, G) representing n -> ct[base**n G].  The
    offspring of a state for digit k rests on the exact identity
    ct[(base**p)**n base**k G] = ct[base'**n  Lambda_dvec[base**k G]]
    where base**p mod p**r, having all exponents divisible
    componentwise by some dvec, is written as base'(x**dvec).  For
    r = 1 this is the familiar single Cartier step, since base**p is
    congruent to base(x**p) mod p.  The base chain stabilizes after at
    most a few steps; states are deduplicated by exact equality and by
    unit-scalar matching within the same base.
    """
    q = p ** r
    base0 = reduce_mod(spec.P, q)
    if base0.is_zero():
        raise CtcongError("P vanishes mod p**r")
    bases = [base0]
    steps = []  # steps[i] = (index of next base, dvec used)

    def base_step(i):
        while len(steps) <= i:
            j = len(steps)
            raw = pow_(bases[j], p, mod=q)
            dvec = exponent_gcds(raw)
            red = cartier_vector(raw, dvec)
            if red == bases[j]:
                steps.append((j, dvec))
            else:
                for idx, known in enumerate(bases):
                    if known == red:
                        steps.append((idx, dvec))
                        break
                else:
                    bases.append(red)
                    steps.append((len(bases) - 1, dvec))
            if len(bases) > r + 4:
                raise StateExplosion(
                    "base chain did not stabilize; cannot close the scheme")
        return steps[i]

    # support-radius cap for state polynomials
    def radius(poly):
        return max((max(abs(v) for v in e) for e in poly.terms), default=0)

    cap = (radius(spec.P) * 2 + radius(spec.Q) + 2)

    q0 = reduce_mod(spec.Q, q)
    states = [(0, q0)]
    rows = {}  # (state, digit) -> list of transition coefficients
    todo = [0]
    while todo:
        si = todo.pop(0)
        bi, g = states[si]
        nbi, dvec = base_step(bi)
        base = bases[bi]
        for k in range(p):
            child = cartier_vector(mul(pow_(base, k, mod=q), g, mod=q), dvec)
            row = None
            if child.is_zero():
                row = {}
            else:
                for sj, (bj, h) in enumerate(states):
                    if bj != nbi:
                        continue
                    if child == h:
                        row = {sj: 1}
                        break
                    u = _unit_ratio(child, h, q)
                    if u is not None:
                        row = {sj: u}
                        break
            if row is None:
                if radius(child) > cap:
                    raise StateExplosion(
                        f"state support radius exceeded {cap}")
                if len(states) >= max_states:
                    raise StateExplosion(
                        f"more than {max_states} states required")
                states.append((nbi, child))
                todo.append(len(states) - 1)
                row = {len(states) - 1: 1}
            rows[(si, k)] = row

    s = len(states)
    matrices = []
    for k in range(p):
        mat = [[0] * s for _ in range(s)]
        for i in range(s):
            for j, v in rows[(i, k)].items():
                mat[i][j] = v % q
        matrices.append(mat)
    init = [constant_term(g) % q for _bi, g in states]
    labels = [to_canonical_string(g) for _bi, g in states]
    return LinearPScheme(p, r, matrices, init, labels=labels)


def verify(sch, spec, n_max):
    """evaluate(sch, n) == ct[P**n Q] mod p**r for all n <= n_max."""
    q = sch.modulus
    window = ct_sequence(spec, n_max, mod=q).values
    params = {"p": sch.p, "r": sch.r, "n_max": n_max}
    for n in range(n_max + 1):
        got = evaluate(sch, n)
        if got != window[n]:
            return CongruenceReport(
                "scheme-verify", params, "fail",
                counterexample={"n": n, "expected": window[n],
                                "actual": got})
    return CongruenceReport("scheme-verify", params, "pass")


def is_single_state_reducible(spec, p, n_max=None):
    """Finite certification of the single-state (plain Lucas) property.

    Returns (flag, witness_scheme_or_None, report).  The default check
    range is n <= p**3.
    """
    if n_max is None:
        n_max = p ** 3
    window = ct_sequence(spec, n_max, mod=p)
    if window.values[0] != 1 % p:
        raise CtcongError("A(0) must be congruent to 1 mod p")
    report = lucas_verify(window, p, n_max)
    if report.passed:
        witness = from_lucas_table(window.values[:p], p)
        return True, witness, report
    return False, None, report


# ---------------------------------------------------------------------------
# JSON round-trip
# ---------------------------------------------------------------------------

def scheme_to_dict(sch):
    out = {"p": sch.p, "r": sch.r, "states": sch.states,
           "matrices": sch.matrices, "init": sch.init}
    if sch.labels is not None:
        out["labels"] = sch.labels
    return out


def scheme_to_json(sch):
    return json.dumps(scheme_to_dict(sch), indent=2) + "\n"


def scheme_from_dict(data):
    sch = LinearPScheme(data["p"], data["r"], data["matrices"],
                        data["init"], labels=data.get("labels"))
    if sch.states != data.get("states", sch.states):
        raise CtcongError("inconsistent state count in scheme data")
    return sch


def scheme_from_json(text):
    return scheme_from_dict(json.loads(text))
