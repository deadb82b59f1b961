"""Graded nonassociative algebras over finite fields, plus the exact linear
algebra needed to switch their gradings.

Conventions: vectors are coefficient tuples in the algebra basis; a
:class:`LinearMap` acts on column vectors, ``apply(v) = M v``; a
:class:`Subspace` stores the reduced row echelon basis of its row space, so
equal subspaces compare (and hash) equal componentwise.  Structure constants
are sparse: ``products[(i, j)]`` lists the nonzero (k, coefficient) pairs of
e_i * e_j.
"""

from .fields import FqElement, GF, embedding, roots_in_splitting_field
from .polyring import Polynomial


def rref(vectors, field):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return (), ()
    n = len(rows[0])
    pivots = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = [tuple(row) for row in rows[:r] if any(row)]
    return tuple(out), tuple(pivots[:len(out)])


class LinearMap:
    """Square matrix over an FqField acting on column vectors.

    Adding a field element s means M + s*I, so polynomials evaluate at
    matrices through the generic Horner rule.
    """

    __slots__ = ("field", "n", "rows")

    def __init__(self, field, rows):
        rs = tuple(tuple(_coerce_entry(field, x) for x in row) for row in rows)
        n = len(rs)
        if any(len(r) != n for r in rs):
            raise ValueError("matrix must be square")
        self.field = field
        self.n = n
        self.rows = rs

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)]
                           for i in range(n)])

    @classmethod
    def zero(cls, field, n):
        z = field.zero
        return cls(field, [[z] * n for _ in range(n)])

    @classmethod
    def from_columns(cls, field, cols):
        return cls(field, [[col[i] for col in cols]
                           for i in range(len(cols[0]))]) if cols else cls(field, [])

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def is_zero(self):
        return all(not x for row in self.rows for x in row)

    def __bool__(self):
        return not self.is_zero()

    def _scalar(self, other):
        if isinstance(other, int):
            return self.field.scalar(other)
        if isinstance(other, FqElement):
            if other.field is not self.field:
                raise ValueError("scalar from a different field")
            return other
        return None

    def __add__(self, other):
        if isinstance(other, LinearMap):
            self._same_space(other)
            return LinearMap(self.field, [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)])
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return self + LinearMap.identity(self.field, self.n) * s

    __radd__ = __add__

    def __neg__(self):
        return LinearMap(self.field, [[-x for x in row] for row in self.rows])

    def __sub__(self, other):
        if isinstance(other, LinearMap):
            return self + (-other)
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return self + (-s)

    def __rsub__(self, other):
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return (-self) + s

    def __mul__(self, other):
        if isinstance(other, LinearMap):
            self._same_space(other)
            n = self.n
            cols = [other.column(j) for j in range(n)]
            out = []
            for row in self.rows:
                out.append([_dot(row, col, self.field) for col in cols])
            return LinearMap(self.field, out)
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return LinearMap(self.field, [[x * s for x in row] for row in self.rows])

    def __rmul__(self, other):
        s = self._scalar(other)
        if s is None:
            return NotImplemented
        return self * s

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = LinearMap.identity(self.field, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def p_power(self, k):
        """M^(p^k)."""
        out = self
        for _ in range(k):
            out = out ** self.field.p
        return out

    def apply(self, v):
        if len(v) != self.n:
            raise ValueError("vector of wrong length")
        return tuple(_dot(row, v, self.field) for row in self.rows)

    def transpose(self):
        return LinearMap(self.field, [self.column(j) for j in range(self.n)])

    def rank(self):
        return len(rref(self.rows, self.field)[0])

    def inverse(self):
        n = self.n
        aug = [list(row) + [self.field.one if i == j else self.field.zero
                            for j in range(n)]
               for i, row in enumerate(self.rows)]
        rows, piv = rref(aug, self.field)
        if len(rows) < n or piv != tuple(range(n)):
            raise ValueError("matrix is singular")
        return LinearMap(self.field, [row[n:] for row in rows])

    def restrict_to(self, subspace):
        """Matrix of this map in the basis of an invariant subspace."""
        imgs = [self.apply(b) for b in subspace.basis]
        coords = [subspace.coordinates(w) for w in imgs]
        k = subspace.dim
        return LinearMap(self.field, [[coords[j][i] for j in range(k)]
                                      for i in range(k)])

    def minimal_polynomial(self):
        """Least monic f with f(M) = 0, by Krylov iteration and lcm."""
        field, n = self.field, self.n
        f = Polynomial(field, [field.one])
        seen_rows = []
        seen_piv = {}
        for s in range(n):
            seed = tuple(field.one if i == s else field.zero for i in range(n))
            if _in_span(seen_piv, seed):
                continue
            local = self._local_minpoly(seed)
            g = f * local // f.gcd(local)
            f = g.monic()
            # fold the whole Krylov space of the seed into the span
            v = seed
            for _ in range(local.degree()):
                _span_add(seen_piv, v, field)
                v = self.apply(v)
            if f.degree() == n:
                break
        assert f.evaluate(self).is_zero()
        return f

    def _local_minpoly(self, v):
        field = self.field
        piv = {}
        w, rep = v, [field.one]
        while True:
            w2, rep2 = list(w), list(rep)
            for c, (vec, vrep) in piv.items():
                f = w2[c]
                if f:
                    for i in range(len(w2)):
                        w2[i] = w2[i] - f * vec[i]
                    for i in range(len(vrep)):
                        if i < len(rep2):
                            rep2[i] = rep2[i] - f * vrep[i]
                        else:
                            rep2.append(-f * vrep[i])
            lead = next((c for c in range(len(w2)) if w2[c]), None)
            if lead is None:
                return Polynomial(field, rep2).monic()
            inv = w2[lead].inverse()
            piv[lead] = ([x * inv for x in w2], [x * inv for x in rep2])
            w = self.apply(w)
            rep = [field.zero] * len(rep) + [field.one]

    def char_polynomial(self):
        """Characteristic polynomial det(T*I - M) via Hessenberg reduction."""
        field, n = self.field, self.n
        if n == 0:
            return Polynomial(field, [field.one])
        h = [list(row) for row in self.rows]
        for j in range(n - 2):
            r = next((i for i in range(j + 1, n) if h[i][j]), None)
            if r is None:
                continue
            if r != j + 1:
                h[r], h[j + 1] = h[j + 1], h[r]
                for row in h:
                    row[r], row[j + 1] = row[j + 1], row[r]
            inv = h[j + 1][j].inverse()
            for i in range(j + 2, n):
                f = h[i][j] * inv
                if f:
                    for c in range(n):
                        h[i][c] = h[i][c] - f * h[j + 1][c]
                    for rr in range(n):
                        h[rr][j + 1] = h[rr][j + 1] + f * h[rr][i]
        t = Polynomial.variable(field)
        ps = [Polynomial(field, [field.one])]
        for m in range(1, n + 1):
            cur = (t - h[m - 1][m - 1]) * ps[m - 1]
            sub = field.one
            for i in range(m - 1, 0, -1):
                sub = sub * h[i][i - 1]
                cur = cur - h[i - 1][m - 1] * sub * ps[i - 1]
            ps.append(cur)
        return ps[n]

    def map_coefficients(self, fn, field):
        return LinearMap(field, [[fn(x) for x in row] for row in self.rows])

    def embed_to(self, field):
        if field is self.field:
            return self
        return self.map_coefficients(embedding(self.field, field), field)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.field is other.field and self.rows == other.rows

    def __hash__(self):
        return hash((id(self.field), self.rows))

    def _same_space(self, other):
        if other.field is not self.field or other.n != self.n:
            raise ValueError("maps on different spaces")

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return "LinearMap(%r, [%s])" % (self.field, body)


def _coerce_entry(field, x):
    if isinstance(x, FqElement):
        if x.field is not field:
            raise ValueError("entry from a different field")
        return x
    if isinstance(x, int):
        return field.scalar(x)
    raise TypeError("bad matrix entry %r" % (x,))


def _dot(row, col, field):
    acc = field.zero
    for a, b in zip(row, col):
        if a and b:
            acc = acc + a * b
    return acc


def _span_add(piv, v, field):
    w = list(v)
    for c, vec in piv.items():
        f = w[c]
        if f:
            for i in range(len(w)):
                w[i] = w[i] - f * vec[i]
    lead = next((c for c in range(len(w)) if w[c]), None)
    if lead is None:
        return False
    inv = w[lead].inverse()
    piv[lead] = [x * inv for x in w]
    return True


def _in_span(piv, v):
    w = list(v)
    for c, vec in piv.items():
        f = w[c]
        if f:
            for i in range(len(w)):
                w[i] = w[i] - f * vec[i]
    return not any(w)


def kernel(M):
    """Basis of the null space of M (column-vector convention)."""
    rows, piv = rref(M.rows, M.field)
    n = M.n
    free = [c for c in range(n) if c not in piv]
    out = []
    for fc in free:
        v = [M.field.zero] * n
        v[fc] = M.field.one
        for r, pc in zip(rows, piv):
            v[pc] = -r[fc]
        out.append(tuple(v))
    return tuple(out)


def solve(M, b):
    """One solution of M x = b, or None."""
    aug = [list(row) + [bb] for row, bb in zip(M.rows, b)]
    rows, piv = rref(aug, M.field)
    n = M.n
    x = [M.field.zero] * n
    for r, pc in zip(rows, piv):
        if pc == n:
            return None
        x[pc] = r[n]
    return tuple(x)


class Subspace:
    """Subspace of F^n stored as a reduced row echelon basis (canonical)."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient, vectors):
        rows, piv = rref(vectors, field)
        self.field = field
        self.ambient = ambient
        self.basis = rows
        self.pivots = piv

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, ())

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient, LinearMap.identity(field, ambient).rows)

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        w = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f:
                for i in range(self.ambient):
                    w[i] = w[i] - f * row[i]
        return not any(w)

    def contains_subspace(self, other):
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, v):
        """Coefficients of v in the echelon basis (v must lie here)."""
        coords = tuple(v[pc] for pc in self.pivots)
        check = [self.field.zero] * self.ambient
        for c, row in zip(coords, self.basis):
            if c:
                for i in range(self.ambient):
                    check[i] = check[i] + c * row[i]
        if tuple(check) != tuple(v):
            raise ValueError("vector outside the subspace")
        return coords

    def image(self, M):
        """The image subspace M(self)."""
        return Subspace(self.field, self.ambient,
                        [M.apply(b) for b in self.basis])

    def __add__(self, other):
        self._compatible(other)
        return Subspace(self.field, self.ambient, self.basis + other.basis)

    def intersect(self, other):
        self._compatible(other)
        k1, k2 = self.dim, other.dim
        if not k1 or not k2:
            return Subspace.zero(self.field, self.ambient)
        # solve c*B1 = d*B2: kernel of the stacked transpose
        stacked = [[(self.basis[i][r] if i < k1 else -other.basis[i - k1][r])
                    for i in range(k1 + k2)] for r in range(self.ambient)]
        ker = kernel(LinearMap(self.field, _pad_square(stacked, self.field)))
        vecs = []
        for kv in ker:
            v = [self.field.zero] * self.ambient
            for i in range(k1):
                if kv[i]:
                    for r in range(self.ambient):
                        v[r] = v[r] + kv[i] * self.basis[i][r]
            vecs.append(tuple(v))
        return Subspace(self.field, self.ambient, vecs)

    def map_field(self, field):
        if field is self.field:
            return self
        emb = embedding(self.field, field)
        return Subspace(field, self.ambient,
                        [tuple(emb(x) for x in b) for b in self.basis])

    def _compatible(self, other):
        if other.field is not self.field or other.ambient != self.ambient:
            raise ValueError("subspaces of different spaces")

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field is other.field and self.ambient == other.ambient
                and self.basis == other.basis)

    def __hash__(self):
        return hash((id(self.field), self.ambient, self.basis))

    def __repr__(self):
        return "Subspace(dim %d of F^%d)" % (self.dim, self.ambient)


def _pad_square(rows, field):
    """Pad a rectangular row list with zero rows/cols to make LinearMap
    accept it; only used to reuse kernel() on rectangular systems."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    size = max(m, n)
    out = [list(r) + [field.zero] * (size - n) for r in rows]
    out += [[field.zero] * size for _ in range(size - m)]
    return out


class Decomposition:
    """Eigenvalue-labelled direct sum of subspaces."""

    __slots__ = ("field", "entries")

    def __init__(self, field, entries):
        self.field = field
        self.entries = tuple(entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def values(self):
        return tuple(v for v, _ in self.entries)

    def find(self, value):
        for v, s in self.entries:
            if v == value:
                return s
        return None

    @property
    def total_dim(self):
        return sum(s.dim for _, s in self.entries)


def generalized_eigenspaces(D):
    """(F', Decomposition) after enlarging to a splitting field F' of the
    minimal polynomial; entries are (eigenvalue, generalized eigenspace)
    sorted by eigenvalue encoding, components verified to fill the space."""
    f = D.minimal_polynomial()
    big, roots = roots_in_splitting_field(f)
    D2 = D.embed_to(big)
    entries = []
    for rho, mult in roots:
        nmap = (D2 - rho) ** mult
        entries.append((rho, Subspace(big, D.n, kernel(nmap))))
    dec = Decomposition(big, entries)
    if dec.total_dim != D.n:
        raise AssertionError("generalized eigenspaces do not fill the space")
    stacked = [b for _, s in entries for b in s.basis]
    if len(rref(stacked, big)[0]) != D.n:
        raise AssertionError("generalized eigenspaces are not independent")
    return big, dec


# ---------------------------------------------------------------------------
# graded algebras


class GradedAlgebra:
    """Finite-dimensional nonassociative algebra with a Z/m grading aligned
    to its basis, and optionally a p-th power map on basis vectors (for
    restricted Lie algebras).

    degrees[i] is the residue of basis vector e_i; products[(i, j)] lists
    the nonzero (k, coeff) of e_i e_j; pmap, when present, gives e_i^[p] as
    a vector.
    """

    __slots__ = ("field", "m", "degrees", "products", "pmap")

    def __init__(self, field, m, degrees, products, pmap=None):
        if m < 1:
            raise ValueError("m must be >= 1")
        self.field = field
        self.m = m
        self.degrees = tuple(int(d) % m for d in degrees)
        dim = len(self.degrees)
        clean = {}
        for (i, j), terms in products.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError("basis index out of range")
            kept = tuple((k, _coerce_entry(field, c)) for k, c in terms
                         if _coerce_entry(field, c))
            for k, _ in kept:
                if not 0 <= k < dim:
                    raise ValueError("basis index out of range")
                if (self.degrees[i] + self.degrees[j]
                        - self.degrees[k]) % m:
                    raise ValueError(
                        "product e_%d e_%d hits e_%d outside the graded "
                        "component" % (i, j, k))
            if kept:
                clean[(i, j)] = kept
        self.products = clean
        if pmap is not None:
            pmap = tuple(tuple(_coerce_entry(field, c) for c in row)
                         for row in pmap)
            if len(pmap) != dim or any(len(r) != dim for r in pmap):
                raise ValueError("pmap must give one vector per basis element")
        self.pmap = pmap

    @classmethod
    def from_entries(cls, field, m, degrees, entries, pmap=None):
        prods = {}
        for i, j, k, c in entries:
            prods.setdefault((i, j), []).append((k, c))
        return cls(field, m, degrees, prods, pmap)

    @property
    def dim(self):
        return len(self.degrees)

    def basis_vector(self, i):
        return tuple(self.field.one if j == i else self.field.zero
                     for j in range(self.dim))

    def product(self, x, y):
        out = [self.field.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                terms = self.products.get((i, j))
                if terms:
                    f = xi * yj
                    for k, c in terms:
                        out[k] = out[k] + f * c
        return tuple(out)

    def left_multiplication(self, x):
        """The map y -> x y as a LinearMap (equals ad x for Lie brackets)."""
        cols = [self.product(x, self.basis_vector(j)) for j in range(self.dim)]
        return LinearMap.from_columns(self.field, cols)

    def grading_parts(self):
        """[(k, Subspace)] for k = 0..m-1; empty components included."""
        out = []
        for k in range(self.m):
            vecs = [self.basis_vector(i) for i, d in enumerate(self.degrees)
                    if d == k]
            out.append((k, Subspace(self.field, self.dim, vecs)))
        return out

    def change_field(self, field):
        if field is self.field:
            return self
        emb = embedding(self.field, field)
        prods = {ij: tuple((k, emb(c)) for k, c in terms)
                 for ij, terms in self.products.items()}
        pmap = None
        if self.pmap is not None:
            pmap = tuple(tuple(emb(c) for c in row) for row in self.pmap)
        return GradedAlgebra(field, self.m, self.degrees, prods, pmap)

    def __eq__(self, other):
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return (self.field is other.field and self.m == other.m
                and self.degrees == other.degrees
                and self.products == other.products
                and self.pmap == other.pmap)

    def __repr__(self):
        return "GradedAlgebra(dim %d over %r, Z/%d-graded)" % (
            self.dim, self.field, self.m)

    # -- JSON ------------------------------------------------------------------

    def to_json(self):
        field = self.field
        obj = {
            "p": field.p,
            "field_degree": field.n,
            "modulus": list(field.modulus),
            "dim": self.dim,
            "m": self.m,
            "deg": list(self.degrees),
            "sc": [[i, j, k, _coeff_str(c)]
                   for (i, j) in sorted(self.products)
                   for k, c in self.products[(i, j)]],
        }
        if self.pmap is not None:
            obj["pmap"] = [[i, [_coeff_str(c) for c in row]]
                           for i, row in enumerate(self.pmap) if any(row)]
        return obj

    @classmethod
    def from_json(cls, obj):
        try:
            p = int(obj["p"])
            n = int(obj.get("field_degree", 1))
            modulus = obj.get("modulus")
            field = GF(p, n, tuple(modulus) if modulus else None)
            dim = int(obj["dim"])
            m = int(obj["m"])
            degrees = [int(d) for d in obj["deg"]]
            if len(degrees) != dim:
                raise ValueError("deg must list one residue per basis vector")
            entries = []
            for item in obj["sc"]:
                i, j, k, cs = item
                entries.append((int(i), int(j), int(k), _coeff_parse(field, cs)))
            pmap = None
            if "pmap" in obj:
                rows = [[field.zero] * dim for _ in range(dim)]
                for i, row in obj["pmap"]:
                    rows[int(i)] = [_coeff_parse(field, c) for c in row]
                    if len(rows[int(i)]) != dim:
                        raise ValueError("pmap vector of wrong length")
                pmap = rows
            return cls.from_entries(field, m, degrees, entries, pmap)
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError("malformed algebra JSON: %s" % exc) from exc


def _coeff_str(c):
    return ",".join(str(d) for d in c.coeffs)


def _coeff_parse(field, s):
    if isinstance(s, str):
        digits = [int(t) for t in s.split(",")]
    elif isinstance(s, int):
        digits = [s]
    else:
        digits = [int(t) for t in s]
    return field.from_coeffs(digits)


# ---------------------------------------------------------------------------
# derivations and gradings


def is_derivation(A, D):
    """D(xy) = D(x)y + xD(y) on all basis pairs."""
    if D.field is not A.field or D.n != A.dim:
        raise ValueError("map does not act on the algebra")
    basis = [A.basis_vector(i) for i in range(A.dim)]
    images = [D.apply(b) for b in basis]
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = D.apply(A.product(basis[i], basis[j]))
            rhs = tuple(a + b for a, b in zip(
                A.product(images[i], basis[j]),
                A.product(basis[i], images[j])))
            if lhs != rhs:
                return False
    return True


def derivation_degree(A, D):
    """The degree d with D(A_k) <= A_{k+d}, or None if D is not graded.

    The zero map gets degree 0.
    """
    d = None
    for i in range(A.dim):
        img = D.apply(A.basis_vector(i))
        ks = {A.degrees[k] for k, c in enumerate(img) if c}
        if not ks:
            continue
        if len(ks) > 1:
            return None
        di = (ks.pop() - A.degrees[i]) % A.m
        if d is None:
            d = di
        elif d != di:
            return None
    return 0 if d is None else d


class GradedDerivationReport:
    """Outcome of is_graded_derivation: Leibniz rule, homogeneity of the
    stated degree, and whether m divides p*d (so D^p is again of degree d*p
    = 0 mod m on components)."""

    __slots__ = ("derivation_ok", "degree_ok", "m_divides_pd", "degree")

    def __init__(self, derivation_ok, degree_ok, m_divides_pd, degree):
        self.derivation_ok = derivation_ok
        self.degree_ok = degree_ok
        self.m_divides_pd = m_divides_pd
        self.degree = degree

    @property
    def ok(self):
        return self.derivation_ok and self.degree_ok

    def __repr__(self):
        return ("GradedDerivationReport(derivation=%r, degree_ok=%r, "
                "m_divides_pd=%r, d=%r)" % (self.derivation_ok,
                                            self.degree_ok,
                                            self.m_divides_pd, self.degree))


def is_graded_derivation(A, D, d):
    """Check D is a derivation homogeneous of degree d; also reports whether
    m | p d, the hypothesis under which switching preserves the grading."""
    deg_ok = True
    for i in range(A.dim):
        img = D.apply(A.basis_vector(i))
        want = (A.degrees[i] + d) % A.m
        if any(c and A.degrees[k] != want for k, c in enumerate(img)):
            deg_ok = False
            break
    return GradedDerivationReport(is_derivation(A, D), deg_ok,
                                  (A.field.p * d) % A.m == 0, d % A.m)


def is_grading(A, parts):
    """True iff the labelled subspaces sum directly to A and multiply into
    the component of the summed label; absent labels act as zero."""
    by_label = {}
    total = 0
    stacked = []
    for k, s in parts:
        k %= A.m
        if k in by_label:
            raise ValueError("duplicate label %r" % k)
        by_label[k] = s
        total += s.dim
        stacked.extend(s.basis)
    if total != A.dim or len(rref(stacked, A.field)[0]) != A.dim:
        return False
    zero = Subspace.zero(A.field, A.dim)
    for k, s in by_label.items():
        for l, t in by_label.items():
            target = by_label.get((k + l) % A.m, zero)
            for u in s.basis:
                for v in t.basis:
                    w = A.product(u, v)
                    if any(w) and not target.contains(w):
                        return False
    return True


# ---------------------------------------------------------------------------
# builders


def witt(p):
    """The Witt algebra W(1;1) over GF(p): basis e_{-1}, ..., e_{p-2} with
    [e_a, e_b] = (b - a) e_{a+b}, graded by index mod p, restricted by
    e_0^[p] = e_0 and e_a^[p] = 0 otherwise.  Index a is basis slot a+1."""
    field = GF(p)
    dim = p
    entries = []
    for a in range(-1, p - 1):
        for b in range(-1, p - 1):
            c = (b - a) % p
            if c and -1 <= a + b <= p - 2:
                entries.append((a + 1, b + 1, a + b + 1, c))
    degrees = [(t - 1) % p for t in range(dim)]
    pmap = [[0] * dim for _ in range(dim)]
    pmap[1][1] = 1
    return GradedAlgebra.from_entries(field, p, degrees, entries, pmap)


def truncated_poly(p, length, m):
    """Divided-power truncated polynomial algebra over GF(p): basis
    x^(0), ..., x^(length-1) with x^(i) x^(j) = binom(i+j, i) x^(i+j)
    (zero once i+j reaches length), graded by subscript mod m."""
    import math as _math
    field = GF(p)
    entries = []
    for i in range(length):
        for j in range(length):
            if i + j < length:
                c = _math.comb(i + j, i) % p
                if c:
                    entries.append((i, j, i + j, c))
    degrees = [i % m for i in range(length)]
    return GradedAlgebra.from_entries(field, m, degrees, entries)


def truncated_poly_derivation(A, which):
    """'ddx' (the shift x^(j) -> x^(j-1), i.e. d/dx in divided powers) or
    'xddx' (the Euler operator x^(j) -> j x^(j))."""
    n = A.dim
    field = A.field
    rows = [[field.zero] * n for _ in range(n)]
    if which == "ddx":
        for j in range(1, n):
            rows[j - 1][j] = field.one
    elif which == "xddx":
        for j in range(n):
            rows[j][j] = field.scalar(j)
    else:
        raise ValueError("unknown derivation %r" % which)
    return LinearMap(field, rows)


def direct_sum(A, B):
    """Direct sum of algebras over the same field with equal m."""
    if A.field is not B.field:
        raise ValueError("summands over different fields")
    if A.m != B.m:
        raise ValueError("summands with different grading moduli")
    da = A.dim
    prods = {}
    for (i, j), terms in A.products.items():
        prods[(i, j)] = terms
    for (i, j), terms in B.products.items():
        prods[(i + da, j + da)] = tuple((k + da, c) for k, c in terms)
    degrees = A.degrees + B.degrees
    pmap = None
    if A.pmap is not None and B.pmap is not None:
        z = A.field.zero
        dim = da + B.dim
        pmap = [list(row) + [z] * B.dim for row in A.pmap]
        pmap += [[z] * da + list(row) for row in B.pmap]
    return GradedAlgebra(A.field, A.m, degrees, prods, pmap)


def torus_line(p, m):
    """One-dimensional trivial algebra whose generator is its own p-th
    power: a line of toral elements for direct sums."""
    field = GF(p)
    return GradedAlgebra(field, m, [0], {}, [[field.one]])
