"""Exact arithmetic in F_p and its finite extensions F_{p^n}.

Fields are created with :func:`GF` and cached, so repeated calls with equal
parameters return the identical object and elements can simply check
``x.field is y.field``.  An element of F_{p^n} is a coefficient vector
(c_0, ..., c_{n-1}) over F_p with respect to the residue class g of T in
F_p[T]/(modulus); the integer encoding c_0 + c_1*p + ... + c_{n-1}*p^{n-1}
orders elements totally and is used whenever a canonical choice has to be
made (smallest root, smallest modulus, smallest Artin-Schreier solution).

Default moduli come from a deterministic search for the monic irreducible
polynomial of the required degree with the smallest encoding, so the same
field is reconstructed in every run without a Conway table.

Multiplication uses discrete-log tables once a small field (q <= 2^16) is
first multiplied in; larger fields fall back to plain polynomial arithmetic.
Everything is exact; fields and elements are immutable.
"""

import functools
import random

_TABLE_CAP = 1 << 16      # build log/exp tables when q <= this
_EXHAUST_CAP = 10 ** 6    # root search by evaluation when q**deg <= this


def is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _prime_factors(m):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# small helpers on F_p[T] with plain int coefficients (little-endian tuples,
# no trailing zeros); only used to search and validate moduli.

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for j in range(dm):
                a[off + j] = (a[off + j] - c * m[j]) % p
        a.pop()
    return _trim(a)


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        bm = tuple((c * inv) % p for c in b)
        a, b = b, _pmod(a, bm, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((c * inv) % p for c in a)
    return a


def _psub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _ppowmod(a, e, m, p):
    result = (1,)
    a = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, a, p), m, p)
        a = _pmod(_pmul(a, a, p), m, p)
        e >>= 1
    return result


def _is_irreducible(f, p):
    # f monic of degree n >= 1: T^{p^n} == T mod f, and for each prime l | n
    # the polynomial T^{p^{n/l}} - T is coprime to f.
    n = len(f) - 1
    if n < 1:
        return False
    x = (0, 1)
    if _ppowmod(x, p ** n, f, p) != _pmod(x, f, p):
        return False
    for l in _prime_factors(n):
        h = _ppowmod(x, p ** (n // l), f, p)
        if len(_pgcd(_psub(h, x, p), f, p)) - 1 != 0:
            return False
    return True


def _smallest_irreducible(p, n):
    for enc in range(p ** n):
        digits = []
        e = enc
        for _ in range(n):
            digits.append(e % p)
            e //= p
        f = tuple(digits) + (1,)
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


def _solve_modp(rows, rhs, p):
    """One solution of rows*x = rhs over F_p, or None.  rows: list of lists."""
    m, n = len(rows), len(rows[0]) if rows else 0
    a = [list(r) + [v] for r, v in zip(rows, rhs)]
    piv = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if a[i][c] % p), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = pow(a[r][c], p - 2, p)
        a[r] = [(v * inv) % p for v in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(v - f * w) % p for v, w in zip(a[i], a[r])]
        piv.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if a[i][n] % p:
            return None
    x = [0] * n
    for i, c in enumerate(piv):
        x[c] = a[i][n] % p
    return x


# ---------------------------------------------------------------------------


class FqElement:
    """An element of an :class:`FqField`; immutable, supports field ops.

    Integers mix in as scalars (reduced mod p).  Elements of different
    fields never mix silently: combine them after an explicit embed().
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("FqElement is immutable")

    # -- conversions -------------------------------------------------------

    def __int__(self):
        """Canonical integer encoding c_0 + c_1 p + ... (total order key)."""
        e = 0
        for c in reversed(self.coeffs):
            e = e * self.field.p + c
        return e

    def __bool__(self):
        return any(self.coeffs)

    def to_digits(self):
        return list(self.coeffs)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, int):
            return self.field.scalar(other)
        if isinstance(other, FqElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FqElement(self.field, tuple((a + b) % p
                                           for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FqElement(self.field, tuple((a - b) % p
                                           for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        fld = self.field
        a, b = self.coeffs, o.coeffs
        if not any(a) or not any(b):
            return fld.zero
        if fld._log is None:
            fld._ensure_tables()
        if fld._log is not None:
            return fld._exp[(fld._log[a] + fld._log[b]) % (fld.q - 1)]
        return FqElement(fld, fld._raw_mul(a, b))

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        fld = self.field
        if not any(self.coeffs):
            if e > 0:
                return self
            if e == 0:
                return fld.one
            raise ZeroDivisionError("0 has no negative power")
        if e < 0:
            return self.inverse() ** (-e)
        if fld._log is None:
            fld._ensure_tables()
        if fld._log is not None:
            return fld._exp[(fld._log[self.coeffs] * e) % (fld.q - 1)]
        result = fld.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        fld = self.field
        if not self:
            raise ZeroDivisionError("0 is not invertible")
        if fld._log is None:
            fld._ensure_tables()
        if fld._log is not None:
            return fld._exp[(-fld._log[self.coeffs]) % (fld.q - 1)]
        return self ** (fld.q - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- Frobenius structure ------------------------------------------------

    def frobenius(self, k=1):
        """x^(p^k)."""
        return self ** (self.field.p ** k)

    def pth_root(self):
        """The unique y with y^p == x (Frobenius is bijective)."""
        return self ** (self.field.p ** (self.field.n - 1))

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FqElement):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __reduce__(self):
        return (_rebuild_element,
                (self.field.p, self.field.n, self.field.modulus, self.coeffs))

    def __str__(self):
        if self.field.n == 1:
            return str(self.coeffs[0])
        parts = []
        for i in reversed(range(self.field.n)):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                v = "g" if i == 1 else "g^%d" % i
                parts.append(v if c == 1 else "%d%s" % (c, v))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return "%r(%s)" % (self.field, self)


def _rebuild_element(p, n, modulus, coeffs):
    return FqElement(GF(p, n, modulus), coeffs)


class FqField:
    """The field F_{p^n} presented as F_p[T]/(modulus).  Create via GF()."""

    __slots__ = ("p", "n", "q", "modulus", "zero", "one", "gen",
                 "_red", "_exp", "_log")

    def __init__(self, p, n, modulus):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "q", p ** n)
        object.__setattr__(self, "modulus", modulus)
        # reduction rows: T^(n+k) mod modulus, k = 0..n-2
        red = []
        cur = tuple((-c) % p for c in modulus[:n])  # T^n
        for _ in range(n - 1):
            red.append(cur)
            shifted = (0,) + cur[:n - 1]
            top = cur[n - 1]
            if top:
                shifted = tuple((s + top * r) % p for s, r in zip(shifted, red[0]))
            cur = shifted
        object.__setattr__(self, "_red", tuple(red))
        object.__setattr__(self, "_exp", None)
        object.__setattr__(self, "_log", None)
        object.__setattr__(self, "zero", FqElement(self, (0,) * n))
        object.__setattr__(self, "one", FqElement(self, (1,) + (0,) * (n - 1)))
        gen = FqElement(self, (0, 1) + (0,) * (n - 2)) if n > 1 else self.one
        object.__setattr__(self, "gen", gen)

    def __setattr__(self, *a):
        raise AttributeError("FqField is immutable")

    # -- constructors --------------------------------------------------------

    def from_coeffs(self, coeffs):
        cs = [int(c) % self.p for c in coeffs]
        if len(cs) > self.n:
            raise ValueError("too many coefficients for degree %d" % self.n)
        cs += [0] * (self.n - len(cs))
        return FqElement(self, tuple(cs))

    def from_int(self, enc):
        if not 0 <= enc < self.q:
            raise ValueError("encoding out of range")
        digits = []
        for _ in range(self.n):
            digits.append(enc % self.p)
            enc //= self.p
        return FqElement(self, tuple(digits))

    def scalar(self, c):
        return FqElement(self, (c % self.p,) + (0,) * (self.n - 1))

    def elements(self):
        """All q elements in encoding order."""
        for enc in range(self.q):
            yield self.from_int(enc)

    def random_element(self, rng):
        return self.from_int(rng.randrange(self.q))

    def extension(self, k):
        """The canonical field F_{p^(n*k)}."""
        return GF(self.p, self.n * k)

    @property
    def is_prime_field(self):
        return self.n == 1

    # -- internal multiplication ----------------------------------------------

    def _raw_mul(self, a, b):
        p, n = self.p, self.n
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] = (prod[i + j] + ai * bj) % p
        for k in range(2 * n - 2, n - 1, -1):
            ck = prod[k]
            if ck:
                red = self._red[k - n]
                for j in range(n):
                    rj = red[j]
                    if rj:
                        prod[j] = (prod[j] + ck * rj) % p
        return tuple(prod[:n])

    def _raw_pow(self, a, e):
        result = self.one.coeffs
        while e:
            if e & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return result

    def _find_generator(self):
        factors = _prime_factors(self.q - 1)
        for enc in range(1, self.q):
            cand = self.from_int(enc).coeffs
            if all(self._raw_pow(cand, (self.q - 1) // l) != self.one.coeffs
                   for l in factors):
                return cand
        raise AssertionError("no multiplicative generator found")  # unreachable

    def _ensure_tables(self):
        if self._exp is not None or self.q > _TABLE_CAP:
            return
        g = self._find_generator()
        exp = []
        log = {}
        cur = self.one.coeffs
        for k in range(self.q - 1):
            exp.append(FqElement(self, cur))
            log[cur] = k
            cur = self._raw_mul(cur, g)
        object.__setattr__(self, "_exp", tuple(exp))
        object.__setattr__(self, "_log", log)

    # -- misc ------------------------------------------------------------------

    def to_json(self):
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    def __reduce__(self):
        return (GF, (self.p, self.n, self.modulus))

    def __repr__(self):
        if self.n == 1:
            return "GF(%d)" % self.p
        return "GF(%d^%d)" % (self.p, self.n)


@functools.lru_cache(maxsize=None)
def _field(p, n, modulus):
    return FqField(p, n, modulus)


def GF(p, n=1, modulus=None):
    """The finite field F_{p^n}; cached, so equal parameters give the
    identical object.

    modulus: optional monic irreducible of degree n over F_p, as a
    little-endian int sequence of length n+1.  Defaults to the irreducible
    polynomial with the smallest integer encoding.
    """
    if not is_prime(p):
        raise ValueError("p = %r is not prime" % (p,))
    if n < 1:
        raise ValueError("extension degree must be >= 1")
    if modulus is None:
        modulus = _smallest_irreducible(p, n)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not _is_irreducible(modulus, p):
            raise ValueError("modulus is not irreducible over F_%d" % p)
    return _field(p, n, modulus)


# ---------------------------------------------------------------------------
# module-level operations


def frobenius(x, k=1):
    """x^(p^k)."""
    return x.frobenius(k)


def pth_root(x):
    """The unique y with y^p == x."""
    return x.pth_root()


def _artin_schreier_in(field, c):
    """Smallest root of y^p - y = c inside `field`, or None.

    y -> y^p - y is F_p-linear, so this is a linear solve over F_p; the
    solution set, when nonempty, is gamma + F_p.
    """
    n = field.n
    cols = []
    for i in range(n):
        gi = field.from_coeffs([0] * i + [1])
        cols.append((gi.frobenius() - gi).coeffs)
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    sol = _solve_modp(rows, list(c.coeffs), field.p)
    if sol is None:
        return None
    base = field.from_coeffs(sol)
    return min((base + k for k in range(field.p)), key=int)


def artin_schreier_root(field, c):
    """(F', gamma) with gamma^p - gamma == c, enlarging to F_{q^p} if needed.

    The degree-p extension always suffices: Tr_{F'/F}(c) = p*c = 0 there.
    Among the p roots gamma + F_p the one with smallest encoding is chosen.
    """
    if not isinstance(c, FqElement) or c.field is not field:
        raise ValueError("c must be an element of the given field")
    root = _artin_schreier_in(field, c)
    if root is not None:
        return field, root
    big = field.extension(field.p)
    root = _artin_schreier_in(big, embed(c, big))
    if root is None:
        raise AssertionError("Artin-Schreier equation unsolvable in degree-p "
                             "extension")  # unreachable
    return big, root


@functools.lru_cache(maxsize=None)
def _generator_image(src, dst):
    """Coefficient tuple of the canonical image of src.gen inside dst."""
    from .polyring import Polynomial
    f = Polynomial(dst, [dst.scalar(c) for c in src.modulus])
    roots = _roots_in_field(f)
    if not roots:
        raise AssertionError("no embedding found")  # degrees were checked
    return min(roots, key=int).coeffs


def embedding(src, dst):
    """The canonical field homomorphism src -> dst as a callable.

    Canonical means: the generator of src maps to the smallest root (by
    encoding) of src's modulus in dst.  Requires src.n | dst.n and equal p.
    """
    if src.p != dst.p:
        raise ValueError("different characteristics")
    if dst.n % src.n:
        raise ValueError("no embedding: %r does not divide %r" % (src, dst))
    if src is dst:
        return lambda x: x
    if src.n == 1:
        def emb(x):
            return dst.scalar(x.coeffs[0])
        return emb
    img = FqElement(dst, _generator_image(src, dst))

    def emb(x):
        acc = dst.zero
        for c in reversed(x.coeffs):
            acc = acc * img + c
        return acc
    return emb


def embed(x, dst):
    """Image of x under the canonical embedding of its field into dst."""
    return embedding(x.field, dst)(x)


def minimal_polynomial(x):
    """Minimal polynomial of x over F_p (monic, coefficients in GF(p))."""
    from .polyring import Polynomial
    field = x.field
    orbit = [x]
    y = x.frobenius()
    while y != x:
        orbit.append(y)
        y = y.frobenius()
    f = Polynomial(field, [field.one])
    t = Polynomial(field, [field.zero, field.one])
    for o in orbit:
        f = f * (t - o)
    base = GF(field.p)
    coeffs = []
    for c in f.coeffs:
        if any(c.coeffs[1:]):
            raise AssertionError("minimal polynomial not over F_p")
        coeffs.append(base.scalar(c.coeffs[0]))
    return Polynomial(base, coeffs)


# ---------------------------------------------------------------------------
# polynomial root finding (the Polynomial type lives in polyring; imported
# lazily to keep this module at the bottom of the layering)


def _squarefree_part(f):
    d = f.derivative()
    if d.is_zero():
        # f = g(T^p) = (g twisted by p-th roots)^p
        g_coeffs = [f.coeffs[i].pth_root() for i in range(0, f.degree() + 1, f.field.p)]
        from .polyring import Polynomial
        return _squarefree_part(Polynomial(f.field, g_coeffs))
    return (f // f.gcd(d)).monic()


def _factor_degrees(f):
    """Degrees d such that the squarefree f has an irreducible factor of
    degree d (distinct-degree factorization)."""
    from .polyring import Polynomial
    field = f.field
    t = Polynomial.variable(field)
    s = f.monic()
    out = []
    h = t
    k = 0
    while s.degree() > 0:
        k += 1
        if 2 * k > s.degree():
            out.append(s.degree())
            break
        h = h.pow_mod(field.q, s)
        g = s.gcd(h - t)
        if g.degree() > 0:
            out.append(k)
            s = (s // g).monic()
            h = h % s
    return out


def _roots_in_field(f):
    """Distinct roots of f lying in its own coefficient field."""
    from .polyring import Polynomial
    field = f.field
    deg = max(f.degree(), 1)
    if field.q ** deg <= _EXHAUST_CAP:
        return [x for x in field.elements() if not f.evaluate(x)]
    t = Polynomial.variable(field)
    w = f.gcd(t.pow_mod(field.q, f) - t)
    return _split_linear(w.monic(), _SplitRng(field))


class _SplitRng:
    """Deterministic element stream for equal-degree splitting."""

    def __init__(self, field):
        self._rng = random.Random(0xC0FFEE ^ field.q)
        self._field = field

    def element(self):
        return self._field.from_int(self._rng.randrange(self._field.q))


def _split_linear(w, rng):
    """Roots of w, a squarefree product of monic linear factors."""
    from .polyring import Polynomial
    field = w.field
    if w.degree() <= 0:
        return []
    if w.degree() == 1:
        return [-w.coeffs[0]]
    t = Polynomial.variable(field)
    while True:
        a = rng.element()
        shifted = t + a
        if field.p == 2:
            # trace map sum shifted^(2^i), i < n*log2-size of q
            m = field.n
            h = Polynomial(field, [field.zero])
            cur = shifted % w
            for _ in range(m):
                h = h + cur
                cur = cur.pow_mod(2, w)
        else:
            h = shifted.pow_mod((field.q - 1) // 2, w) - field.one
        g = w.gcd(h)
        if 0 < g.degree() < w.degree():
            g = g.monic()
            return _split_linear(g, rng) + _split_linear((w // g).monic(), rng)


def roots_in_splitting_field(f):
    """(F', [(root, multiplicity), ...]) for the splitting field F' of f.

    F' is the canonical field F_{q^L} with L the lcm of the irreducible
    factor degrees; the root list is sorted by encoding and its re-expansion
    is verified against f before returning.
    """
    from .polyring import Polynomial
    if f.is_zero():
        raise ValueError("the zero polynomial has no splitting field")
    field = f.field
    if f.degree() == 0:
        return field, []
    s = _squarefree_part(f)
    lcm = 1
    for d in _factor_degrees(s):
        lcm = lcm * d // _gcd_int(lcm, d)
    big = field if lcm == 1 else GF(field.p, field.n * lcm)
    emb = embedding(field, big)
    f2 = Polynomial(big, [emb(c) for c in f.coeffs])
    roots = sorted(_roots_in_field(f2), key=int)
    out = []
    check = Polynomial(big, [f2.coeffs[-1]])
    t = Polynomial.variable(big)
    for r in roots:
        mult = 0
        g = f2
        while True:
            q, rem = divmod(g, t - r)
            if not rem.is_zero():
                break
            mult += 1
            g = q
        out.append((r, mult))
        for _ in range(mult):
            check = check * (t - r)
    if check != f2 or sum(m for _, m in out) != f2.degree():
        raise AssertionError("root re-expansion failed")  # splitting defect
    return big, out


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a
