"""Generalized Laguerre polynomials in characteristic p.

For n < p the polynomial

    L_n^(alpha)(X) = sum_{k=0}^{n} binom(alpha + n, n - k) (-X)^k / k!

makes sense over any field of characteristic p and any alpha (a field
element, another polynomial, or an operator).  The degree used everywhere
below defaults to n = p - 1, where L specializes at alpha = 0 to the
truncated exponential E(X) = sum_{k<p} X^k / k!.

This module provides symbolic and evaluated constructors, the standard
identity suite relating L at neighbouring alpha values, the three factored
forms of L_{p-1}^(Z^p)(Z^p - Z), and the coefficient tables c'_{ij} that
split a product of two Laguerre operator values over the bivariate quotient
ring R[X,Y]/(X^p - (a^p - a), Y^p - (b^p - b)).
"""

import functools
import math
from dataclasses import dataclass

from .fields import GF, FqElement
from .polyring import (MultiPoly, NonInvertibleError, Polynomial,
                       QuotientRing, quotient_inverse, quotient_mul)


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@functools.lru_cache(maxsize=None)
def inverse_factorials(field):
    """(1/0!, 1/1!, ..., 1/(p-1)!) in the given field."""
    p = field.p
    out = [field.one]
    fact = field.one
    for k in range(1, p):
        fact = fact * k
        out.append(fact.inverse())
    return tuple(out)


def _base_field(t):
    f = getattr(t, "field", None)
    if f is None:
        raise TypeError("cannot infer a base field from %r" % (t,))
    return f


def generalized_binomial(t, m):
    """binom(t, m) = t (t-1) ... (t-m+1) / m! for any ring value t.

    Requires m < p since m! must be invertible.
    """
    field = _base_field(t)
    if not 0 <= m < field.p:
        raise ValueError("binomial order must satisfy 0 <= m < p")
    acc = t ** 0
    for i in range(m):
        acc = acc * (t - i)
    return acc * inverse_factorials(field)[m]


def _check_p(p, field):
    if field.p != p:
        raise ValueError("field has characteristic %d, expected %d"
                         % (field.p, p))


def laguerre_at(p, alpha, n=None):
    """L_n^(alpha)(X) as a univariate Polynomial over alpha's field."""
    if isinstance(alpha, int):
        alpha = GF(p).scalar(alpha)
    field = alpha.field
    _check_p(p, field)
    if n is None:
        n = p - 1
    if not 0 <= n < p:
        raise ValueError("degree must satisfy 0 <= n < p")
    inv = inverse_factorials(field)
    sign = field.one
    coeffs = []
    for k in range(n + 1):
        coeffs.append(generalized_binomial(alpha + n, n - k) * sign * inv[k])
        sign = -sign
    return Polynomial(field, coeffs, "X")


def laguerre_symbolic(p, n=None):
    """L_n^(alpha)(X) as a MultiPoly over GF(p) in (alpha, X)."""
    field = GF(p)
    if n is None:
        n = p - 1
    if not 0 <= n < p:
        raise ValueError("degree must satisfy 0 <= n < p")
    alpha = MultiPoly.variable(field, ("alpha", "X"), "alpha")
    x = MultiPoly.variable(field, ("alpha", "X"), "X")
    inv = inverse_factorials(field)
    acc = MultiPoly.zero(field, ("alpha", "X"))
    sign = field.one
    for k in range(n + 1):
        acc = acc + generalized_binomial(alpha + n, n - k) * sign * inv[k] * x ** k
        sign = -sign
    return acc


def laguerre_alpha_coeffs(p, field, n=None):
    """The X^k coefficients of L_n as univariate polynomials in alpha.

    Returned tuple C satisfies L_n^(a)(x) = sum_k C[k](a) x^k; each C[k]
    may be evaluated at scalars or at operators.
    """
    _check_p(p, field)
    if n is None:
        n = p - 1
    alpha = Polynomial.variable(field, "alpha")
    inv = inverse_factorials(field)
    out = []
    sign = field.one
    for k in range(n + 1):
        out.append(generalized_binomial(alpha + n, n - k) * sign * inv[k])
        sign = -sign
    return tuple(out)


def truncated_exp(p, field=None):
    """E(X) = sum_{k<p} X^k / k! = L_{p-1}^(0)(X)."""
    field = field or GF(p)
    return Polynomial(field, inverse_factorials(field), "X")


# ---------------------------------------------------------------------------
# identity suite


def _sym(p, n):
    return laguerre_symbolic(p, n)


def _shift_alpha(f):
    """f with alpha replaced by alpha + 1."""
    field = f.field
    alpha = MultiPoly.variable(field, f.vars, "alpha")
    x = MultiPoly.variable(field, f.vars, "X")
    return f.substitute({"alpha": alpha + 1, "X": x})


def _dx(f):
    """Partial derivative in X."""
    out = {}
    i = f.vars.index("X")
    for e, c in f.terms.items():
        if e[i]:
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            nc = c * e[i]
            if nc:
                out[ne] = out.get(ne, f.field.zero) + nc
    return MultiPoly(f.field, f.vars, out)


IDENTITY_NAMES = ("step", "three_term", "derivative", "low_terms",
                  "p_power", "euler", "exp_diff")


def check_identity(name, p):
    """Verify one symbolic identity of the suite; see IDENTITY_NAMES.

    step        L_n^(a) = L_n^(a+1) - L_{n-1}^(a+1)                (all n < p)
    three_term  n L_n^(a+1) = (n - X) L_{n-1}^(a+1) + (n + a) L_{n-1}^(a)
    derivative  d/dX L_n^(a) = -L_{n-1}^(a+1) = L_n^(a) - L_n^(a+1)
    low_terms   denominator-cleared expansion of L_{p-1}^(a) in rising
                products (a+1)...(a+k)
    p_power     X^p - (a^p - a) = -X L_{p-1}^(a+1) + a L_{p-1}^(a)
    euler       X dL/dX = (X - a) L + X^p - (a^p - a),  L = L_{p-1}^(a)
    exp_diff    X E'(X) = X E(X) + X^p
    """
    field = GF(p)
    alpha = MultiPoly.variable(field, ("alpha", "X"), "alpha")
    x = MultiPoly.variable(field, ("alpha", "X"), "X")

    def report(ok, detail=""):
        return CheckReport("%s[p=%d]" % (name, p), ok, detail)

    if name == "step":
        for n in range(1, p):
            diff = _sym(p, n) - (_shift_alpha(_sym(p, n)) - _shift_alpha(_sym(p, n - 1)))
            if diff:
                return report(False, "fails at n=%d: %s" % (n, diff))
        return report(True, "n = 1..%d" % (p - 1))

    if name == "three_term":
        for n in range(1, p):
            lhs = n * _shift_alpha(_sym(p, n))
            rhs = (n - x) * _shift_alpha(_sym(p, n - 1)) + (n + alpha) * _sym(p, n - 1)
            if lhs - rhs:
                return report(False, "fails at n=%d" % n)
        return report(True, "n = 1..%d" % (p - 1))

    if name == "derivative":
        for n in range(1, p):
            d = _dx(_sym(p, n))
            if d + _shift_alpha(_sym(p, n - 1)):
                return report(False, "product form fails at n=%d" % n)
            if d - (_sym(p, n) - _shift_alpha(_sym(p, n))):
                return report(False, "difference form fails at n=%d" % n)
        return report(True, "both forms, n = 1..%d" % (p - 1))

    if name == "low_terms":
        # multiply through by prod_{j=1}^{p-1} (alpha + j), which equals
        # alpha^(p-1) - 1, to clear the rising-product denominators
        clear = alpha ** 0
        for j in range(1, p):
            clear = clear * (alpha + j)
        if clear - (alpha ** (p - 1) - 1):
            return report(False, "clearing factor != alpha^(p-1) - 1")
        lhs = _sym(p, p - 1) * clear
        rhs = MultiPoly.zero(field, ("alpha", "X"))
        for k in range(p):
            tail = alpha ** 0
            for j in range(k + 1, p):
                tail = tail * (alpha + j)
            rhs = rhs + x ** k * tail
        rhs = (1 - alpha ** (p - 1)) * rhs
        return report(not (lhs - rhs), "cleared by alpha^(p-1) - 1")

    if name == "p_power":
        lhs = x ** p - (alpha ** p - alpha)
        rhs = -(x * _shift_alpha(_sym(p, p - 1))) + alpha * _sym(p, p - 1)
        return report(not (lhs - rhs))

    if name == "euler":
        lag = _sym(p, p - 1)
        lhs = x * _dx(lag)
        rhs = (x - alpha) * lag + x ** p - (alpha ** p - alpha)
        return report(not (lhs - rhs))

    if name == "exp_diff":
        e = MultiPoly.zero(field, ("alpha", "X"))
        inv = inverse_factorials(field)
        for k in range(p):
            e = e + inv[k] * x ** k
        lhs = x * _dx(e)
        rhs = x * e + x ** p
        return report(not (lhs - rhs))

    raise ValueError("unknown identity %r" % name)


def check_all_identities(p):
    return [check_identity(name, p) for name in IDENTITY_NAMES]


# ---------------------------------------------------------------------------
# the three factored forms of L_{p-1}^(Z^p)(Z^p - Z)


def lemma_eval(p):
    """L_{p-1}^(Z^p)(Z^p - Z) as a univariate Polynomial in Z over GF(p)."""
    field = GF(p)
    z = MultiPoly.variable(field, ("Z",), "Z")
    sub = laguerre_symbolic(p).substitute({"alpha": z ** p, "X": z ** p - z})
    return sub.to_polynomial("Z")


def lemma_product(p):
    """prod_{i=1}^{p-1} (1 + Z/i)^i over GF(p)."""
    field = GF(p)
    z = Polynomial.variable(field, "Z")
    acc = Polynomial(field, [field.one], "Z")
    for i in range(1, p):
        acc = acc * (1 + field.scalar(i).inverse() * z) ** i
    return acc


def lemma_binomial(p):
    """(-1)^(p(p-1)/2) prod_{j=1}^{p-1} binom(Z - 1, j) over GF(p)."""
    field = GF(p)
    z = Polynomial.variable(field, "Z")
    acc = Polynomial(field, [field.scalar((-1) ** (p * (p - 1) // 2))], "Z")
    for j in range(1, p):
        acc = acc * generalized_binomial(z - 1, j)
    return acc


def check_lemma_forms(p):
    """All three closed forms agree, with the expected degree, constant
    term 1, and a root of multiplicity i at Z = -i for each i in F_p^*."""
    f = lemma_eval(p)
    checks = [f == lemma_product(p), f == lemma_binomial(p),
              f.degree() == p * (p - 1) // 2,
              bool(f[0] == f.field.one)]
    z = Polynomial.variable(f.field, "Z")
    for i in range(1, p):
        g = f
        for _ in range(i):
            q, r = divmod(g, z + i)
            if not r.is_zero():
                checks.append(False)
                break
            g = q
        else:
            checks.append(not (g % (z + i)).is_zero())  # multiplicity exactly i
    return CheckReport("factored_forms[p=%d]" % p, all(checks),
                       "eval == product == signed-binomial, degree %d"
                       % (p * (p - 1) // 2))


def check_lemma_product_identity(p):
    """L^(Z^p)(Z^p - Z) * L^(-Z^p)(-Z^p + Z) == 1 - Z^(p(p-1))."""
    field = GF(p)
    z = MultiPoly.variable(field, ("Z",), "Z")
    f1 = laguerre_symbolic(p).substitute({"alpha": z ** p, "X": z ** p - z})
    f2 = laguerre_symbolic(p).substitute({"alpha": -(z ** p), "X": -(z ** p) + z})
    prod = (f1 * f2).to_polynomial("Z")
    zz = Polynomial.variable(field, "Z")
    return CheckReport("product_identity[p=%d]" % p,
                       prod == 1 - zz ** (p * (p - 1)),
                       "degree %d" % (p * (p - 1)))


def scalar_product_form(p, x):
    """prod_{i=1}^{p-1} (1 + x/i)^i for a field element x.

    This is the value L_{p-1}^(x^p)(x^p - x); it vanishes exactly when
    x is in F_p^*.
    """
    field = x.field
    _check_p(p, field)
    acc = field.one
    for i in range(1, p):
        acc = acc * (field.one + x / i) ** i
    return acc


# ---------------------------------------------------------------------------
# coefficient tables c'_{ij}


def in_prime_star(x):
    """True iff x lies in F_p^* (the only non-admissible sums a + b)."""
    return bool(x) and x ** (x.field.p - 1) == x.field.one


def _laguerre_x_quotient(ring, coeff_values):
    return ring.from_x_poly(coeff_values)


def _laguerre_xy_quotient(ring, coeff_values, p):
    """L evaluated at X + Y: spread each (X+Y)^k by integer binomials."""
    items = []
    for k, c in enumerate(coeff_values):
        for i in range(k + 1):
            items.append(((i, k - i), c * math.comb(k, i)))
    return ring.from_exponents(items)


@dataclass(frozen=True)
class CoefficientTable:
    """The table c'_{ij} with L^(a)(X) L^(b)(Y) = sum c'_{ij} X^i Y^j
    (mod X^p - (a^p - a), Y^p - (b^p - b)) after dividing by L^(a+b)(X+Y).

    c0 = c'_{00} and c(i) = c'_{i,p-i} are the only entries that can be
    nonzero; the reconstruction u * table == v is verified on build.
    """
    p: int
    a: object
    b: object
    table: tuple

    @property
    def c0(self):
        return self.table[0][0]

    def c(self, i):
        if not 1 <= i <= self.p - 1:
            raise ValueError("index out of range")
        return self.table[i][self.p - i]

    def vanishing_violations(self):
        out = []
        for i in range(self.p):
            for j in range(self.p):
                if (i + j) % self.p and self.table[i][j]:
                    out.append((i, j))
        return out

    def values(self):
        return (self.c0,) + tuple(self.c(i) for i in range(1, self.p))


def c_coefficients(p, a, b):
    """Coefficient table for field elements a, b with a + b not in F_p^*.

    Raises NonInvertibleError when L^(a+b)(X+Y) is not invertible, which
    happens exactly on the excluded locus.
    """
    if isinstance(a, int):
        a = GF(p).scalar(a)
    if isinstance(b, int):
        b = GF(p).scalar(b)
    if a.field is not b.field:
        raise ValueError("a and b must come from one field")
    field = a.field
    _check_p(p, field)
    ring = QuotientRing(p, a ** p - a, b ** p - b)
    ca = laguerre_at(p, a).coeffs
    cb = laguerre_at(p, b).coeffs
    cab = laguerre_at(p, a + b).coeffs
    v = quotient_mul(ring.from_x_poly(ca), ring.from_y_poly(cb))
    u = _laguerre_xy_quotient(ring, cab, p)
    u_inv = quotient_inverse(u)
    table = quotient_mul(v, u_inv)
    if quotient_mul(u, table) != v:
        raise AssertionError("table reconstruction failed")  # ring defect
    out = CoefficientTable(p, a, b, table.entries)
    if out.vanishing_violations():
        raise AssertionError("unexpected nonzero c'_{ij} with p not dividing "
                             "i+j at %r" % (out.vanishing_violations(),))
    return out


def zero_pair_closed_form(p, field=None):
    """Expected c-values at a = b = 0: c0 = 1 and c_i = (-1)^i / i."""
    field = field or GF(p)
    vals = [field.one]
    for i in range(1, p):
        vals.append(field.scalar((-1) ** i) / i)
    return tuple(vals)


@dataclass(frozen=True)
class SymbolicCoefficientReport:
    """Denominator-cleared symbolic table: N_{ij} = c'_{ij} * s where the
    clearing factor s = prod_i (1 + (alpha+beta)/i)^i is the scalar
    L^(alpha+beta)(X+Y)^p."""
    p: int
    table: tuple
    clearing_factor: object
    vanishing_ok: bool
    reconstruction_ok: bool
    scalar_matches_product_form: bool

    @property
    def passed(self):
        return (self.vanishing_ok and self.reconstruction_ok
                and self.scalar_matches_product_form)


def c_coefficients_symbolic(p):
    """Fully symbolic coefficient table over GF(p)[alpha, beta].

    The inverse of u = L^(alpha+beta)(X+Y) does not exist in a polynomial
    ring, so both sides are cleared by s = u^p (a scalar): the table
    N = v * u^(p-1) satisfies u * N == s * v, and N/s is the rational
    c-table.
    """
    field = GF(p)
    vars_ = ("alpha", "beta")
    alpha = MultiPoly.variable(field, vars_, "alpha")
    beta = MultiPoly.variable(field, vars_, "beta")
    ring = QuotientRing(p, alpha ** p - alpha, beta ** p - beta)

    coeffs = laguerre_alpha_coeffs(p, field)
    ca = [c.evaluate(alpha) for c in coeffs]
    cb = [c.evaluate(beta) for c in coeffs]
    cab = [c.evaluate(alpha + beta) for c in coeffs]
    v = quotient_mul(ring.from_x_poly(ca), ring.from_y_poly(cb))
    u = _laguerre_xy_quotient(ring, cab, p)
    upow = u ** (p - 1)
    n_table = quotient_mul(v, upow)
    s_elt = quotient_mul(u, upow)
    if not s_elt.is_scalar():
        raise AssertionError("u^p failed to be scalar")  # char-p identity
    s = s_elt.scalar_part

    s_expected = alpha ** 0
    for i in range(1, p):
        s_expected = s_expected * (1 + field.scalar(i).inverse() * (alpha + beta)) ** i

    vanishing_ok = all(not n_table.entries[i][j]
                       for i in range(p) for j in range(p) if (i + j) % p)
    reconstruction_ok = quotient_mul(u, n_table) == v * s
    return SymbolicCoefficientReport(
        p, n_table.entries, s, vanishing_ok, reconstruction_ok,
        s == s_expected)


# ---------------------------------------------------------------------------
# the toral-switching operator form


def strade_operator_form_check(p):
    """-sum_{i<p} (prod_{k=i+1}^{p-1} (alpha + k)) X^i == L_{p-1}^(alpha)(X).

    This identifies the classical switching operator (descending products of
    ad-translates) with the Laguerre value used everywhere in this package.
    """
    field = GF(p)
    alpha = MultiPoly.variable(field, ("alpha", "X"), "alpha")
    x = MultiPoly.variable(field, ("alpha", "X"), "X")
    acc = MultiPoly.zero(field, ("alpha", "X"))
    for i in range(p):
        prod = alpha ** 0
        for k in range(i + 1, p):
            prod = prod * (alpha + k)
        acc = acc + prod * x ** i
    diff = (-acc) - laguerre_symbolic(p)
    return CheckReport("operator_form[p=%d]" % p, not diff,
                       "descending-product form equals Laguerre value")
