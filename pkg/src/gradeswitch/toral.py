"""Tori of restricted Lie algebras and torus replacement along a root
vector.

A torus here is a subalgebra spanned by pairwise-commuting vectors whose
adjoint maps are semisimple; its simultaneous eigenspaces give the root
space decomposition.  Replacing T by
T_x = {t - beta(t) * sum_{k<r} x^[p]^k} for a root vector x in L_beta with
x^[p]^r in T produces a new torus whose root spaces are the images of the
old ones under the switching operator of D = ad x; the classical
connecting map

    E = -sum_{i<p} (prod_{k=i+1}^{p-1} (g(D) - h(D) + k)) D^i

is that same operator written as one global polynomial in commuting maps.
The refinement helpers split off the kernel T_0 of beta, so that the
switch acts along a single cyclic direction while fixing every T_0-root
space.
"""

from math import gcd as _gcd

from .fields import GF, embedding, roots_in_splitting_field
from .galg import LinearMap, Subspace, kernel, rref
from .polyring import _solve_field_linear
from .switch import HypothesisError, VerificationError, build_LD, \
    h_polynomial, semisimple_exponent


def _vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vec_scale(v, c):
    return tuple(c * x for x in v)


def _vec_is_zero(v):
    return not any(v)


class RestrictedLie:
    """A graded algebra validated to be a restricted Lie algebra.

    Checks alternating brackets, the Jacobi identity on all basis triples,
    and ad(e_i)^p == ad(e_i^[p]) against the stored p-th power rows.
    """

    def __init__(self, algebra):
        if algebra.pmap is None:
            raise ValueError("a restricted Lie algebra needs p-th power rows")
        self.algebra = algebra
        self.field = algebra.field
        self.p = algebra.field.p
        self.dim = algebra.dim
        n = self.dim
        basis = [algebra.basis_vector(i) for i in range(n)]
        for i in range(n):
            if not _vec_is_zero(algebra.product(basis[i], basis[i])):
                raise ValueError("bracket is not alternating")
            for j in range(i + 1, n):
                lhs = algebra.product(basis[i], basis[j])
                rhs = algebra.product(basis[j], basis[i])
                if lhs != _vec_scale(rhs, -self.field.one):
                    raise ValueError("bracket is not antisymmetric")
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    s = algebra.product(basis[i], algebra.product(basis[j], basis[k]))
                    s = _vec_add(s, algebra.product(basis[j], algebra.product(basis[k], basis[i])))
                    s = _vec_add(s, algebra.product(basis[k], algebra.product(basis[i], basis[j])))
                    if not _vec_is_zero(s):
                        raise ValueError("Jacobi identity fails")
        for i in range(n):
            adi = algebra.left_multiplication(basis[i])
            if adi.p_power(1) != algebra.left_multiplication(algebra.pmap[i]):
                raise ValueError("ad(e_%d)^p differs from ad(e_%d^[p])" % (i, i))

    def bracket(self, x, y):
        return self.algebra.product(x, y)

    def ad(self, x):
        return self.algebra.left_multiplication(x)

    def basis_vector(self, i):
        return self.algebra.basis_vector(i)

    def supports_commute(self, x):
        """True when the basis vectors carrying x pairwise commute."""
        sup = [i for i, c in enumerate(x) if c]
        basis = self.algebra.basis_vector
        return all(_vec_is_zero(self.bracket(basis(i), basis(j)))
                   for a, i in enumerate(sup) for j in sup[a + 1:])

    def pth_power(self, x):
        """x^[p] through linearity over a pairwise-commuting support.

        For x = sum c_i e_i with [e_i, e_j] = 0 on the support, the p-th
        power is sum c_i^p e_i^[p].  Raises ValueError otherwise; use
        element_with_ad on centerless algebras for the general case.
        """
        if not self.supports_commute(x):
            raise ValueError("support does not commute; p-th power rule "
                             "unavailable")
        acc = (self.field.zero,) * self.dim
        for i, c in enumerate(x):
            if c:
                acc = _vec_add(acc, _vec_scale(self.algebra.pmap[i], c ** self.p))
        return acc

    def pth_iterate(self, x, k):
        for _ in range(k):
            x = self.pth_power(x)
        return x

    def q_element(self, x, r):
        """sum_{t=1}^{r-1} x^[p]^t (zero when r <= 1)."""
        acc = (self.field.zero,) * self.dim
        y = x
        for _ in range(1, r):
            y = self.pth_power(y)
            acc = _vec_add(acc, y)
        return acc

    def center(self):
        acc = Subspace.full(self.field, self.dim)
        for i in range(self.dim):
            ker = kernel(self.ad(self.algebra.basis_vector(i)))
            acc = acc.intersect(Subspace(self.field, self.dim, ker))
        return acc

    def element_with_ad(self, M):
        """The z with ad(z) == M, when unique (trivial center); None if no
        solution exists."""
        if self.center().dim:
            raise ValueError("center is nontrivial; ad does not determine "
                             "elements")
        cols = []
        for j in range(self.dim):
            adj = self.ad(self.algebra.basis_vector(j))
            cols.append([x for row in adj.rows for x in row])
        rows = [[cols[j][s] for j in range(self.dim)]
                for s in range(self.dim * self.dim)]
        rhs = [x for row in M.rows for x in row]
        sol = _solve_field_linear(rows, rhs, self.field)
        return tuple(sol) if sol is not None else None

    def is_toral(self, t):
        """t^[p] == t, decided through the p-th power rule or, failing
        that, by recovering t^[p] from ad on a centerless algebra."""
        try:
            return self.pth_power(t) == tuple(t)
        except ValueError:
            z = self.element_with_ad(self.ad(t).p_power(1))
            return z is not None and z == tuple(t)

    def change_field(self, field):
        return RestrictedLie(self.algebra.change_field(field))


class Torus:
    """Span of pairwise-commuting vectors with semisimple adjoints."""

    def __init__(self, lie, vectors):
        self.lie = lie
        self.subspace = Subspace(lie.field, lie.dim, vectors)
        self.basis = self.subspace.basis
        if not self.basis:
            raise ValueError("torus must be nonzero")
        for i, t in enumerate(self.basis):
            for u in self.basis[i + 1:]:
                if not _vec_is_zero(lie.bracket(t, u)):
                    raise HypothesisError("torus generators commute")
            if not lie.ad(t).minimal_polynomial().squarefree_is():
                raise HypothesisError("torus adjoints are semisimple")

    @property
    def dim(self):
        return self.subspace.dim

    def contains(self, v):
        return self.subspace.contains(v)

    def value_on(self, beta, t):
        """beta(t) for a root label beta (tuple over self.basis)."""
        coords = self.subspace.coordinates(t)
        acc = self.lie.field.zero
        for b, c in zip(beta, coords):
            acc = acc + b * c
        return acc

    def root_of(self, x):
        """The root tuple with [t_i, x] = beta_i x, or None if x is not a
        common eigenvector of the torus basis."""
        if _vec_is_zero(x):
            return None
        lead = next(i for i, c in enumerate(x) if c)
        inv = x[lead].inverse()
        out = []
        for t in self.basis:
            y = self.lie.bracket(t, x)
            c = y[lead] * inv
            if tuple(y) != _vec_scale(x, c):
                return None
            out.append(c)
        return tuple(out)


class RootSpaces:
    """Simultaneous eigenspace decomposition for a torus basis."""

    def __init__(self, entries):
        self.entries = tuple(entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def roots(self):
        return tuple(r for r, _ in self.entries)

    def find(self, root):
        for r, s in self.entries:
            if r == tuple(root):
                return s
        return None

    def space_multiset(self):
        return sorted((s for _, s in self.entries), key=_space_key)


def root_decomposition(lie, torus_vectors):
    """(lie', torus', decomposition) over a field where every adjoint of
    the torus basis splits; root labels are eigenvalue tuples."""
    while True:
        torus = Torus(lie, torus_vectors)
        field = lie.field
        enlarged = None
        for t in torus.basis:
            mp = lie.ad(t).minimal_polynomial()
            big, _ = roots_in_splitting_field(mp)
            if big is not field:
                enlarged = big
                break
        if enlarged is None:
            break
        emb = embedding(field, enlarged)
        torus_vectors = [tuple(emb(c) for c in t) for t in torus_vectors]
        lie = lie.change_field(enlarged)
    field = lie.field
    parts = [((), Subspace.full(field, lie.dim))]
    for t in torus.basis:
        ad_t = lie.ad(t)
        refined = []
        for label, space in parts:
            mat = ad_t.restrict_to(space)
            big, roots = roots_in_splitting_field(mat.minimal_polynomial())
            if big is not field:
                raise VerificationError("eigenvalue escaped the common "
                                        "splitting field")
            for rho, _ in roots:
                vecs = []
                for krow in kernel(mat - rho):
                    v = [field.zero] * lie.dim
                    for c, b in zip(krow, space.basis):
                        if c:
                            for i in range(lie.dim):
                                v[i] = v[i] + c * b[i]
                    vecs.append(tuple(v))
                sub = Subspace(field, lie.dim, vecs)
                if sub.dim:
                    refined.append((label + (rho,), sub))
        parts = refined
    if sum(s.dim for _, s in parts) != lie.dim:
        raise VerificationError("root spaces do not fill the algebra")
    parts.sort(key=lambda e: [int(c) for c in e[0]])
    return lie, torus, RootSpaces(parts)


def switch_torus(lie, torus, x, r):
    """(T_x generators, beta, w): the replacement torus span
    {t - beta(t) w} with w = sum_{k=0}^{r-1} x^[p]^k.

    Requires x to be a root vector for a nonzero root beta with
    x^[p]^r in the torus; the returned generators are validated to span a
    torus again.
    """
    beta = torus.root_of(x)
    if beta is None or not any(beta):
        raise HypothesisError("x is a root vector for a nonzero root")
    xr = lie.pth_iterate(x, r)
    if not torus.contains(xr):
        raise HypothesisError("x^[p]^r lies in the torus",
                              "r = %d" % r)
    w = (lie.field.zero,) * lie.dim
    y = x
    for _ in range(r):
        w = _vec_add(w, y)
        y = lie.pth_power(y)
    gens = [_vec_add(t, _vec_scale(w, -torus.value_on(beta, t)))
            for t in torus.basis]
    new_torus = Torus(lie, gens)
    if new_torus.dim != torus.dim:
        raise VerificationError("replacement torus has the wrong dimension")
    return new_torus, beta, w


def strade_map(result):
    """The switching operator rebuilt as one global operator product:
    -sum_{i<p} (prod_{k=i+1}^{p-1} (g(D) - h(D) + k)) D^i."""
    d2 = result.derivation
    f2 = d2.field
    p = f2.p
    gd = result.g.eval_matrix(d2)
    hd = h_polynomial(f2, result.r).eval_matrix(d2)
    base = gd - hd
    acc = LinearMap.zero(f2, d2.n)
    dpow = LinearMap.identity(f2, d2.n)
    for i in range(p):
        prod = LinearMap.identity(f2, d2.n)
        for k in range(i + 1, p):
            prod = prod * (base + k)
        acc = acc + prod * dpow
        if i + 1 < p:
            dpow = dpow * d2
    return acc * (-(f2.one))


class ToralComparison:
    """Outcome of switching a torus along a root vector both ways."""

    def __init__(self, **kw):
        self.lie = kw.get("lie")
        self.torus = kw.get("torus")
        self.torus_x = kw.get("torus_x")
        self.beta = kw.get("beta")
        self.w = kw.get("w")
        self.r = kw.get("r")
        self.old_roots = kw.get("old_roots")
        self.new_roots = kw.get("new_roots")
        self.switch = kw.get("switch")
        self.strade_agrees = kw.get("strade_agrees")
        self.spaces_match = kw.get("spaces_match")
        self.torus_x_toral = kw.get("torus_x_toral")


def compare_switch_to_toral(lie, torus_vectors, x, r=None, lam=None):
    """Replace the torus along x and check the two descriptions of the new
    root spaces against each other.

    Verifies: T_x is a torus (commuting, semisimple, toral generators when
    decidable); the switching operator of D = ad x maps each old root
    space onto a new one (equal multisets of subspaces); and the global
    operator-product form of the connecting map equals the blockwise
    Laguerre construction exactly.
    """
    lie, torus, old = root_decomposition(lie, torus_vectors)
    if len(x) != lie.dim:
        raise ValueError("x has the wrong length")
    if r is None:
        r = max(semisimple_exponent(lie.ad(x)), 1)
    torus_x, beta, w = switch_torus(lie, torus, x, r)
    try:
        toral_x = all(lie.is_toral(t) for t in torus_x.basis)
    except ValueError:
        toral_x = None  # undecidable without a usable p-th power

    lie2, _, new = root_decomposition(lie, list(torus_x.basis))

    res = build_LD(lie.algebra, lie.ad(x), r=r, lam=lam)
    d1, d2 = res.field_final.n, lie2.field.n
    f_common = GF(lie.p, d1 * d2 // _gcd(d1, d2))

    emap = strade_map(res)
    strade_agrees = emap == res.switch_map

    lmap = res.switch_map.embed_to(f_common)
    switched = [space.map_field(f_common).image(lmap) for _, space in old]
    target = [s.map_field(f_common) for _, s in new]
    spaces_match = sorted(switched, key=_space_key) == \
        sorted(target, key=_space_key)

    out = ToralComparison(
        lie=lie, torus=torus, torus_x=torus_x, beta=beta, w=w, r=r,
        old_roots=old, new_roots=new, switch=res,
        strade_agrees=strade_agrees, spaces_match=spaces_match,
        torus_x_toral=toral_x)
    if not strade_agrees:
        raise VerificationError("operator-product form of the connecting "
                                "map disagrees with the blockwise build")
    if not spaces_match:
        raise VerificationError("switched root spaces differ from the "
                                "root spaces of the replacement torus")
    return out


def _space_key(s):
    return [[int(x) for x in row] for row in s.basis]


def grading_over_labels(algebra, parts, add):
    """Direct-sum and closure check for a grading with arbitrary hashable
    labels; add combines two labels.  Products falling into an absent
    label must vanish."""
    index = {}
    stacked = []
    total = 0
    for label, space in parts:
        if label in index:
            raise ValueError("duplicate label %r" % (label,))
        index[label] = space
        stacked.extend(space.basis)
        total += space.dim
    rows, _ = rref(stacked, algebra.field)
    if total != algebra.dim or len(rows) != algebra.dim:
        return False
    for l1, s1 in parts:
        for l2, s2 in parts:
            target = index.get(add(l1, l2))
            for b1 in s1.basis:
                for b2 in s2.basis:
                    v = algebra.product(b1, b2)
                    if not any(v):
                        continue
                    if target is None or not target.contains(v):
                        return False
    return True


class RefinedSwitch:
    """Outcome of switching along the direction of one toral element."""

    def __init__(self, **kw):
        self.lie = kw.get("lie")
        self.beta = kw.get("beta")
        self.t1 = kw.get("t1")
        self.torus0_basis = kw.get("torus0_basis")
        self.line_parts = kw.get("line_parts")
        self.residual_parts = kw.get("residual_parts")
        self.product_parts = kw.get("product_parts")
        self.switch = kw.get("switch")
        self.switched_line_parts = kw.get("switched_line_parts")
        self.switched_product_parts = kw.get("switched_product_parts")
        self.line_grading_ok = kw.get("line_grading_ok")
        self.product_grading_ok = kw.get("product_grading_ok")
        self.residual_fixed = kw.get("residual_fixed")


def refine_grading(lie, torus_vectors, x, r=None, lam=None):
    """Split the root grading into the t_1 direction times the rest,
    switch along D = ad x, and verify what the switch does to each part.

    t_1 is a toral element with beta(t_1) = 1; T_0 = ker beta.  The root
    decomposition is the product of the t_1-eigenvalue grading (labels in
    F_p) and the T_0-root grading (labels gamma_0).  After switching: the
    F_p-grading by switched components is again a grading, every T_0-root
    space is fixed setwise, and the switched product grading is a grading
    over pairs.
    """
    lie, torus, dec = root_decomposition(lie, torus_vectors)
    field = lie.field
    beta = torus.root_of(x)
    if beta is None or not any(beta):
        raise HypothesisError("x is a root vector for a nonzero root")
    if r is None:
        r = max(semisimple_exponent(lie.ad(x)), 1)

    # t_1: scale a torus basis vector with beta(t) != 0 to beta(t_1) = 1;
    # for the torus to stay honest t_1 must be toral.
    j = next(i for i, b in enumerate(beta) if b)
    t1 = _vec_scale(torus.basis[j], beta[j].inverse())
    if not lie.is_toral(t1):
        raise HypothesisError("a toral element with beta value 1 exists")

    # T_0 = ker(beta) inside the torus
    t0_vecs = []
    for i, t in enumerate(torus.basis):
        if not beta[i]:
            t0_vecs.append(t)
        elif i != j:
            t0_vecs.append(_vec_add(t, _vec_scale(t1, -beta[i])))
    for t in t0_vecs:
        if not _vec_is_zero(lie.bracket(t, x)):
            raise VerificationError("T_0 does not centralize x")

    # group the root spaces by t_1-eigenvalue and by restriction to T_0
    def t1_value(root):
        acc = field.zero
        for b, c in zip(root, torus.subspace.coordinates(t1)):
            acc = acc + b * c
        return acc

    def t0_label(root):
        return tuple(torus.value_on(root, t) for t in t0_vecs)

    line, residual, product = {}, {}, {}
    for root, space in dec:
        k = t1_value(root)
        if k ** lie.p != k:
            raise VerificationError("t_1 eigenvalue outside the prime field")
        kk = int(k.coeffs[0])
        g0 = t0_label(root)
        line.setdefault(kk, []).extend(space.basis)
        residual.setdefault(g0, []).extend(space.basis)
        product.setdefault((kk, g0), []).extend(space.basis)
    line_parts = [(k, Subspace(field, lie.dim, v))
                  for k, v in sorted(line.items())]
    residual_parts = [(g0, Subspace(field, lie.dim, v))
                      for g0, v in sorted(residual.items(),
                                          key=lambda e: [int(c) for c in e[0]])]
    product_parts = [(lb, Subspace(field, lie.dim, v))
                     for lb, v in sorted(product.items(),
                                         key=lambda e: (e[0][0],
                                                        [int(c) for c in e[0][1]]))]

    res = build_LD(lie.algebra, lie.ad(x), r=r, lam=lam)
    f2 = res.field_final
    lmap = res.switch_map
    alg2 = res.algebra
    p = lie.p

    switched_line = [(k, s.map_field(f2).image(lmap)) for k, s in line_parts]
    line_ok = grading_over_labels(alg2, switched_line,
                                  lambda a, b: (a + b) % p)

    emb = embedding(field, f2)
    residual_fixed = True
    for g0, s in residual_parts:
        s2 = s.map_field(f2)
        if s2.image(lmap) != s2:
            residual_fixed = False

    def addpair(a, b):
        return ((a[0] + b[0]) % p,
                tuple(u + v for u, v in zip(a[1], b[1])))

    switched_product = []
    for (kk, g0), s in product_parts:
        g0e = tuple(emb(c) for c in g0)
        switched_product.append(((kk, g0e), s.map_field(f2).image(lmap)))
    product_ok = grading_over_labels(alg2, switched_product, addpair)

    out = RefinedSwitch(
        lie=lie, beta=beta, t1=t1, torus0_basis=tuple(t0_vecs),
        line_parts=line_parts, residual_parts=residual_parts,
        product_parts=product_parts, switch=res,
        switched_line_parts=switched_line,
        switched_product_parts=switched_product,
        line_grading_ok=line_ok, product_grading_ok=product_ok,
        residual_fixed=residual_fixed)
    if not line_ok:
        raise VerificationError("switched cyclic grading failed to verify")
    if not residual_fixed:
        raise VerificationError("a T_0 root space moved under the switch")
    if not product_ok:
        raise VerificationError("switched product grading failed to verify")
    return out
