"""Constant-term sequences A(n) = ct[P**n Q] and independent oracles.

The oracles deliberately avoid the Laurent engine: they are plain
binomial-sum computations used to cross-validate it.

Modular windows use dense numpy grids.  In two dimensions the hot path
runs the polynomial product as an OpenCV stencil over int16 grids and
splits A(n) = sum_e P**ceil(n/2)[e] * (P**floor(n/2) Q)[-e], so the
grids only ever grow to half the window length.
"""

import math

import numpy as np

try:
    import cv2
except ImportError:  # pragma: no cover - cv2 is a hard dependency
    cv2 = None

from .errors import CtcongError, DimensionMismatch, MemoryCapExceeded
from .laurent import LaurentPoly, Modulus, _mod_value, constant_term, mul, reduce_mod
from .report import CongruenceReport

DEFAULT_TERM_CAP = 10**7

# int16 grids may legally hold values up to 32767; keep a margin
_INT16_HEADROOM = 32000


class CtSpec:
    """The data of a constant-term sequence: ct[P**n Q]."""

    def __init__(self, P, Q=None):
        if Q is None:
            Q = LaurentPoly.constant(P.d, 1)
        if P.d != Q.d:
            raise DimensionMismatch(f"P has d={P.d} but Q has d={Q.d}")
        if P.is_zero():
            raise CtcongError("P must be nonzero")
        self.P = P
        self.Q = Q


class SequenceWindow:
    """Values A(0..n_max), exact or as canonical residues mod m."""

    def __init__(self, values, modulus=None):
        self.values = list(values)
        self.modulus = _mod_value(modulus)
        if self.modulus is not None:
            m = self.modulus
            if any(not 0 <= v < m for v in self.values):
                raise ValueError("residues must be canonical")

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)


def ct_sequence(spec, n_max, mod=None, term_cap=DEFAULT_TERM_CAP):
    """Window of ct[P**n Q] for n = 0..n_max, exact or mod m."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    m = _mod_value(mod)
    if m is None:
        return SequenceWindow(_exact_window(spec, n_max, term_cap))
    d = spec.P.d
    if d == 1:
        vals = _window_mod_1d(spec, n_max, m)
    elif d == 2 and cv2 is not None and _int16_feasible(spec.P, m):
        vals = _window_mod_2d_cv(spec, n_max, m)
    else:
        vals = _window_mod_nd(spec, n_max, m)
    return SequenceWindow(vals, m)


def _exact_window(spec, n_max, term_cap):
    vals = [constant_term(spec.Q)]
    f = spec.Q
    for _ in range(n_max):
        f = mul(f, spec.P)
        if len(f.terms) > term_cap:
            raise MemoryCapExceeded(
                f"exact power exceeded {term_cap} stored terms")
        vals.append(constant_term(f))
    return vals


def _box(poly):
    """Per-axis (lo, hi) exponent bounds of the support."""
    pts = list(poly.terms)
    if not pts:
        return [(0, 0)] * poly.d
    return [(min(p[i] for p in pts), max(p[i] for p in pts))
            for i in range(poly.d)]


def _window_mod_1d(spec, n_max, m):
    (plo, phi), = _box(spec.P)
    kp = np.zeros(phi - plo + 1, dtype=np.int64)
    for (e,), c in spec.P.terms.items():
        kp[e - plo] = c % m
    (qlo, qhi), = _box(spec.Q)
    cur = np.zeros(qhi - qlo + 1, dtype=np.int64)
    for (e,), c in spec.Q.terms.items():
        cur[e - qlo] = c % m
    origin = -qlo
    vals = [int(cur[origin]) if 0 <= origin < len(cur) else 0]
    for _ in range(n_max):
        cur = np.convolve(cur, kp) % m
        origin -= plo
        vals.append(int(cur[origin]))
    return vals


def _int16_feasible(P, m):
    total = sum(c % m for c in P.terms.values())
    return total * (m - 1) <= _INT16_HEADROOM


class _Chain2D:
    """One growing 2-D grid advanced by repeated multiplication with P."""

    def __init__(self, start_poly, P, m, max_steps):
        (plx, phx), (ply, phy) = _box(P)
        (slx, shx), (sly, shy) = _box(start_poly)
        self.plx, self.phx, self.ply, self.phy = plx, phx, ply, phy
        # kernel flipped for correlation with anchor (0, 0)
        kh, kw = phx - plx + 1, phy - ply + 1
        kern = np.zeros((kh, kw), dtype=np.float64)
        for (ex, ey), c in P.terms.items():
            kern[phx - ex, phy - ey] = c % m
        self.kernel = kern
        self.m = m
        self.ksum = int(kern.sum())
        h = (max_steps * plx + slx, max_steps * phx + shx)
        w = (max_steps * ply + sly, max_steps * phy + shy)
        shape = (h[1] - h[0] + 1, w[1] - w[0] + 1)
        self.off = (-h[0], -w[0])
        self.bufs = (np.zeros(shape, dtype=np.int16),
                     np.zeros(shape, dtype=np.int16))
        self.which = 0
        self.box = [slx, shx, sly, shy]
        view = self._view(self.bufs[0], self.box)
        for (ex, ey), c in start_poly.terms.items():
            view[ex - slx, ey - sly] = c % m
        self.vmax = m - 1
        self.lut = np.arange(_INT16_HEADROOM + 1, dtype=np.int16) % m
        self._f64 = None

    def _view(self, buf, box):
        ox, oy = self.off
        return buf[box[0] + ox:box[1] + ox + 1, box[2] + oy:box[3] + oy + 1]

    def grid(self):
        """Current grid as float64 (cached per step) plus its box."""
        if self._f64 is None:
            cur = self._view(self.bufs[self.which], self.box)
            self._f64 = cur.astype(np.float64)
        return self._f64, self.box

    def step(self):
        if self.ksum * self.vmax > _INT16_HEADROOM:
            cur = self._view(self.bufs[self.which], self.box)
            cur[...] = np.take(self.lut, cur)
            self.vmax = self.m - 1
        newbox = [self.box[0] + self.plx, self.box[1] + self.phx,
                  self.box[2] + self.ply, self.box[3] + self.phy]
        src = self._view(self.bufs[self.which], newbox)
        dst = self._view(self.bufs[1 - self.which], newbox)
        out = cv2.filter2D(src, -1, self.kernel, dst=dst, anchor=(0, 0),
                           borderType=cv2.BORDER_CONSTANT)
        if out is not dst and out.__array_interface__["data"] != \
                dst.__array_interface__["data"]:
            np.copyto(dst, out)
        self.box = newbox
        self.which = 1 - self.which
        self.vmax = self.ksum * self.vmax
        self._f64 = None


def _pair_dot(g1, box1, g2, box2):
    """sum_e g1[e] * g2[-e] over the overlap of the exponent boxes."""
    lox = max(box1[0], -box2[1])
    hix = min(box1[1], -box2[0])
    loy = max(box1[2], -box2[3])
    hiy = min(box1[3], -box2[2])
    if lox > hix or loy > hiy:
        return 0
    a = g1[lox - box1[0]:hix - box1[0] + 1, loy - box1[2]:hiy - box1[2] + 1]
    bx0, by0 = -lox - box2[0], -loy - box2[2]
    bx1, by1 = -hix - box2[0], -hiy - box2[2]
    b = g2[bx0:(None if bx1 == 0 else bx1 - 1):-1,
           by0:(None if by1 == 0 else by1 - 1):-1]
    return int(round(np.dot(a.ravel(), np.ascontiguousarray(b).ravel())))


def _window_mod_2d_cv(spec, n_max, m):
    h1 = (n_max + 1) // 2
    h2 = n_max // 2
    c1 = _Chain2D(LaurentPoly.constant(2, 1), spec.P, m, max(h1, 1))
    c2 = _Chain2D(spec.Q, spec.P, m, max(h2, 1))
    vals = [constant_term(spec.Q) % m]
    for n in range(1, n_max + 1):
        (c1 if n % 2 else c2).step()
        g1, b1 = c1.grid()
        g2, b2 = c2.grid()
        vals.append(_pair_dot(g1, b1, g2, b2) % m)
    return vals


def _window_mod_nd(spec, n_max, m):
    """Generic dense path for any dimension; direct (unsplit) chain."""
    d = spec.P.d
    pbox = _box(spec.P)
    qbox = _box(spec.Q)
    shape = tuple(n_max * (hi - lo) + (qh - ql) + 1
                  for (lo, hi), (ql, qh) in zip(pbox, qbox))
    off = tuple(-(n_max * lo + ql) for (lo, _hi), (ql, _qh) in zip(pbox, qbox))
    nnz = len(spec.P.terms)
    dtype = np.int32 if nnz * (m - 1) * (m - 1) < 2**31 - 1 else np.int64
    bufs = (np.zeros(shape, dtype=dtype), np.zeros(shape, dtype=dtype))
    box = [[ql, qh] for (ql, qh) in qbox]
    which = 0

    def view(buf, bx):
        return buf[tuple(slice(lo + o, hi + o + 1)
                         for (lo, hi), o in zip(bx, off))]

    cur = view(bufs[0], box)
    for e, c in spec.Q.terms.items():
        cur[tuple(v - bx[0] for v, bx in zip(e, box))] = c % m
    origin = (0,) * d
    vals = [constant_term(spec.Q) % m]
    pterms = [(e, c % m) for e, c in spec.P.terms.items()]
    for _ in range(n_max):
        newbox = [[lo + plo, hi + phi]
                  for (lo, hi), (plo, phi) in zip(box, pbox)]
        dst = view(bufs[1 - which], newbox)
        dst.fill(0)
        src = view(bufs[which], box)
        for e, c in pterms:
            if not c:
                continue
            sl = tuple(slice(lo + v - nlo, hi + v - nlo + 1)
                       for (lo, hi), v, (nlo, _nhi)
                       in zip(box, e, newbox))
            dst[sl] += c * src
        dst %= m
        box = newbox
        which = 1 - which
        idx = tuple(-bx[0] for bx in box)
        vals.append(int(dst[idx]))
    return vals


# ---------------------------------------------------------------------------
# oracles: independent binomial-sum computations
# ---------------------------------------------------------------------------

def oracle_catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def oracle_central_binomial(n):
    return math.comb(2 * n, n)


def oracle_central_trinomial(a, b, c, n):
    """ct[(a/x + b + c x)**n] as the classical binomial sum."""
    total = 0
    for k in range(n // 2 + 1):
        total += (math.comb(n, 2 * k) * math.comb(2 * k, k)
                  * (a * c) ** k * b ** (n - 2 * k))
    return total


def oracle_apery(n):
    return sum(math.comb(n, k) ** 2 * math.comb(n + k, k) ** 2
               for k in range(n + 1))


def oracle_abelian_squares(s, n):
    """Sum of squared multinomials over compositions of n into s parts."""
    if s < 1:
        raise ValueError("s must be >= 1")
    vals = [1] * (n + 1)  # s = 1
    for _ in range(s - 1):
        nxt = []
        for t in range(n + 1):
            nxt.append(sum(math.comb(t, k) ** 2 * vals[t - k]
                           for k in range(t + 1)))
        vals = nxt
    return vals[n]


def oracle_S(n, variant="squared"):
    if variant == "squared":
        return sum(math.comb(n, k) ** 2 * math.comb(n - k, k)
                   for k in range(n + 1))
    if variant == "trinomial-style":
        return sum(math.comb(n, k) * math.comb(n, 2 * k) * math.comb(2 * k, k)
                   for k in range(n // 2 + 1))
    raise ValueError(f"unknown variant {variant!r}")


def oracle_D(n):
    h, q = n // 2, n // 4
    return (-1) ** (h + q) * math.comb(n, h) * math.comb(h, q)


def oracle_zagierE(n):
    return sum(math.comb(n, k) * math.comb(2 * k, k)
               * math.comb(2 * (n - k), n - k) for k in range(n + 1))


def oracle_zagierE_shift(n):
    """A(n) = (B(n+1) - 4 B(n)) / 4 with B the Zagier-E sum; the division
    is asserted exact."""
    v = oracle_zagierE(n + 1) - 4 * oracle_zagierE(n)
    q, r = divmod(v, 4)
    if r:
        raise CtcongError(f"shift value not divisible by 4 at n={n}")
    return q


def oracle_lambda_family(lam, n, which):
    if which == "A":
        return sum(lam ** (n - k) * math.comb(n, k) * oracle_D(k)
                   for k in range(1, n + 1, 2))
    if which == "B":
        return sum((-1) ** k * lam ** (n - 4 * k) * math.comb(n, 4 * k)
                   * math.comb(4 * k, 2 * k) * math.comb(2 * k, k)
                   for k in range(n // 4 + 1))
    raise ValueError(f"which must be 'A' or 'B', got {which!r}")


def binomial_table_mod(n_max, m):
    """Pascal's triangle mod m as a numpy array, built by the additive
    recurrence (no use of any congruence theorem)."""
    dtype = np.uint8 if m < 256 else np.int64
    t = np.zeros((n_max + 1, n_max + 1), dtype=dtype)
    t[:, 0] = 1
    for n in range(1, n_max + 1):
        t[n, 1:n + 1] = (t[n - 1, 1:n + 1] + t[n - 1, 0:n]) % m
    return t


def s_window_mod(n_max, m):
    """S(0..n_max) mod m via a Pascal-table version of the squared sum.

    Fast batch variant of oracle_S (cross-checked against it in tests).
    """
    t = binomial_table_mod(n_max, m).astype(np.int64)
    out = []
    for n in range(n_max + 1):
        ks = np.arange(n // 2 + 1)
        vals = t[n, ks] * t[n, ks] % m * t[n - ks, ks] % m
        out.append(int(vals.sum() % m))
    return out


def cross_check(spec, oracle, n_max, name=None):
    """Verdict that ct_sequence equals the oracle on 0..n_max."""
    window = ct_sequence(spec, n_max)
    params = {"oracle": name or getattr(oracle, "__name__", "oracle"),
              "n_max": n_max}
    for n in range(n_max + 1):
        expected = oracle(n)
        if window[n] != expected:
            return CongruenceReport(
                "cross-check", params, "fail",
                counterexample={"n": n, "expected": expected,
                                "actual": window[n]})
    return CongruenceReport("cross-check", params, "pass")
