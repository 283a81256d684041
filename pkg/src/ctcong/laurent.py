"""Exact sparse multivariate Laurent polynomial arithmetic.

A polynomial in up to four variables is stored as a map from exponent
vectors (tuples of signed ints) to arbitrary-precision integer
coefficients.  Zero coefficients are never stored.  All operations are
pure; instances should be treated as immutable after construction.
"""

from math import gcd

from .errors import DimensionMismatch

VARIABLES = ("x", "y", "z", "w")
MAX_DIM = 4


class Modulus:
    """A positive modulus m >= 2, typically a prime power p**r."""

    __slots__ = ("m",)

    def __init__(self, m):
        m = int(m)
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        self.m = m

    def __repr__(self):
        return f"Modulus({self.m})"

    def __eq__(self, other):
        return isinstance(other, Modulus) and self.m == other.m

    def __hash__(self):
        return hash(("Modulus", self.m))


def _mod_value(mod):
    """Normalize an int / Modulus / None into an int modulus or None."""
    if mod is None:
        return None
    if isinstance(mod, Modulus):
        return mod.m
    m = int(mod)
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    return m


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("d", "terms", "_powcache")

    def __init__(self, d, terms=None):
        d = int(d)
        if not 1 <= d <= MAX_DIM:
            raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {d}")
        self.d = d
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(v) for v in e)
                if len(e) != d:
                    raise DimensionMismatch(
                        f"exponent vector {e} has length {len(e)}, expected {d}")
                c = int(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean
        self._powcache = {}

    # -- constructors --------------------------------------------------

    @classmethod
    def constant(cls, d, c):
        return cls(d, {(0,) * d: c} if c else {})

    @classmethod
    def monomial(cls, d, exponents, c=1):
        return cls(d, {tuple(exponents): c})

    @classmethod
    def variable(cls, d, index):
        e = [0] * d
        e[index] = 1
        return cls(d, {tuple(e): 1})

    @classmethod
    def zero(cls, d):
        return cls(d, {})

    # -- basics --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def support(self):
        return set(self.terms)

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly)
                and self.d == other.d and self.terms == other.terms)

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def __repr__(self):
        items = sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))
        return f"LaurentPoly(d={self.d}, {dict(items)!r})"

    def __bool__(self):
        return bool(self.terms)

    def __neg__(self):
        return LaurentPoly(self.d, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, -_coerce(other, self.d))

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly.zero(self.d)
            return LaurentPoly(
                self.d, {e: c * other for e, c in self.terms.items()})
        return mul(self, other)

    __rmul__ = __mul__


def _coerce(value, d):
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(d, int(value))


def _check_dims(f, g):
    if f.d != g.d:
        raise DimensionMismatch(f"dimension mismatch: {f.d} vs {g.d}")


def add(f, g):
    """Coefficientwise sum of two polynomials of equal dimension."""
    g = _coerce(g, f.d)
    _check_dims(f, g)
    out = dict(f.terms)
    for e, c in g.terms.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    res = LaurentPoly.zero(f.d)
    res.terms = out
    return res


def mul(f, g, mod=None):
    """Exact product; coefficients reduced to canonical residues if mod given."""
    g = _coerce(g, f.d)
    _check_dims(f, g)
    m = _mod_value(mod)
    out = {}
    # iterate over the smaller support in the outer loop
    a, b = (f.terms, g.terms) if len(f.terms) <= len(g.terms) else (g.terms, f.terms)
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    if m is not None:
        out = {e: c % m for e, c in out.items()}
    res = LaurentPoly.zero(f.d)
    res.terms = {e: c for e, c in out.items() if c}
    return res


def pow_(f, n, mod=None):
    """f**n (with f**0 = 1), reduced mod m when given.

    Successive powers of the same polynomial are cached on the instance,
    so pow_(f, n+1) costs a single multiplication after pow_(f, n).
    """
    n = int(n)
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    m = _mod_value(mod)
    if n == 0:
        return LaurentPoly.constant(f.d, 1 if m is None else 1 % m)
    cached = f._powcache.get(m)
    if cached is not None and cached[0] <= n:
        k, acc = cached
    else:
        k, acc = 1, (f if m is None else reduce_mod(f, m))
    while k < n:
        acc = mul(acc, f, mod=m)
        k += 1
    f._powcache[m] = (k, acc)
    return acc


def cartier(f, p):
    """Cartier operator: keep terms whose exponents are all divisible by p,
    dividing each exponent by p."""
    p = int(p)
    out = {}
    for e, c in f.terms.items():
        if all(v % p == 0 for v in e):
            out[tuple(v // p for v in e)] = c
    return LaurentPoly(f.d, out)


def cartier_vector(f, dvec):
    """Componentwise Cartier operator for a vector of strides.

    Keeps terms whose i-th exponent is divisible by dvec[i], dividing by it.
    """
    out = {}
    for e, c in f.terms.items():
        if all(v % d == 0 for v, d in zip(e, dvec)):
            out[tuple(v // d for v, d in zip(e, dvec))] = c
    return LaurentPoly(f.d, out)


def frobenius_substitute(f, p):
    """Substitute x_i -> x_i**p, i.e. multiply every exponent vector by p."""
    p = int(p)
    return LaurentPoly(f.d, {tuple(v * p for v in e): c
                             for e, c in f.terms.items()})


def constant_term(f):
    """Coefficient at the zero exponent vector (0 when absent)."""
    return f.terms.get((0,) * f.d, 0)


def coeff_at(f, exponents):
    """Coefficient at the given exponent vector (0 when absent)."""
    return f.terms.get(tuple(int(v) for v in exponents), 0)


def reflect(f, flags):
    """Substitute x_i -> 1/x_i for every flagged variable."""
    flags = tuple(bool(b) for b in flags)
    if len(flags) != f.d:
        raise DimensionMismatch(
            f"expected {f.d} flags, got {len(flags)}")
    out = {}
    for e, c in f.terms.items():
        out[tuple(-v if fl else v for v, fl in zip(e, flags))] = c
    return LaurentPoly(f.d, out)


def reduce_mod(f, mod):
    """Reduce every coefficient to a canonical residue in 0..m-1."""
    m = _mod_value(mod)
    out = {}
    for e, c in f.terms.items():
        c %= m
        if c:
            out[e] = c
    res = LaurentPoly.zero(f.d)
    res.terms = out
    return res


def substitute_signs(f, signs):
    """Substitute x_i -> s_i * x_i for s_i in {-1, 0, 1}.

    A zero sign kills every term where that variable appears.
    """
    out = {}
    for e, c in f.terms.items():
        coeff = c
        keep = True
        for v, s in zip(e, signs):
            if v == 0:
                continue
            if s == 0:
                keep = False
                break
            if s == -1 and v % 2:
                coeff = -coeff
        if keep:
            out[e] = out.get(e, 0) + coeff
    return LaurentPoly(f.d, out)


def exponent_gcds(f):
    """Per-axis gcd of all exponents in the support (1 for an unused axis)."""
    g = [0] * f.d
    for e in f.terms:
        for i, v in enumerate(e):
            g[i] = gcd(g[i], abs(v))
    return tuple(v if v else 1 for v in g)


def graded_lex_terms(f):
    """Terms sorted in graded lexicographic order (total degree, then lex)."""
    return sorted(f.terms.items(), key=lambda t: (sum(t[0]), t[0]))
