"""Switching the grading of an algebra along a graded derivation D.

Pipeline: find the least r with D^(p^r) semisimple, the minimal relation
D^(p^n) + a_{n-1} D^(p^(n-1)) + ... + a_r D^(p^r) = 0, and an additive
polynomial g with g(D)^p - g(D) = D^(p^r).  On each generalized eigenspace
A^(rho) of D the switching operator is the Laguerre value

    L_D|A^(rho) = L_{p-1}^(g(rho) - h(D))(D),      h(T) = sum_{1<=i<r} T^(p^i),

an invertible map whose p^r-th power is the nonzero scalar
prod_i (1 + g(rho)/i)^i.  Applying L_D to every component of a grading by
a derivation of degree d with m | p d yields a new grading; the two-sided
product rule expresses L_D x * L_D y through L_D applied to a fixed
combination of xy and D^i x * D^(p-i) y, with coefficients taken from the
product-splitting tables evaluated at commuting operators.
"""

from dataclasses import dataclass

from .fields import FqElement, artin_schreier_root, embed, embedding, \
    roots_in_splitting_field
from .galg import Decomposition, GradedAlgebra, LinearMap, Subspace, \
    derivation_degree, generalized_eigenspaces, is_derivation, \
    is_graded_derivation, is_grading
from .laguerre import _laguerre_xy_quotient, laguerre_alpha_coeffs, \
    laguerre_at, scalar_product_form
from .polyring import BiTruncSeries, NonInvertibleError, Polynomial, \
    QuotientRing, quotient_inverse, quotient_mul


class HypothesisError(RuntimeError):
    """A named mathematical hypothesis fails on the given input."""

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        self.detail = detail
        super().__init__("hypothesis failed: %s%s"
                         % (hypothesis, " (%s)" % detail if detail else ""))


class VerificationError(RuntimeError):
    """A conclusion the theory guarantees failed to check out; this means a
    defect in the implementation (or its caller), not bad input."""


@dataclass(frozen=True)
class PPolynomial:
    """Additive polynomial sum_i b_i T^(p^i) over a field."""

    field: object
    terms: tuple  # ((exponent i, coefficient b_i), ...) sorted, b_i != 0

    @classmethod
    def make(cls, field, pairs):
        terms = tuple(sorted((int(i), c) for i, c in pairs if c))
        return cls(field, terms)

    def is_zero(self):
        return not self.terms

    def __call__(self, x):
        acc = self.field.zero
        for i, b in self.terms:
            acc = acc + b * x ** (self.field.p ** i)
        return acc

    def eval_matrix(self, M):
        acc = LinearMap.zero(M.field, M.n)
        for i, b in self.terms:
            acc = acc + M.p_power(i) * b
        return acc

    def embed_to(self, field):
        if field is self.field:
            return self
        emb = embedding(self.field, field)
        return PPolynomial.make(field, [(i, emb(b)) for i, b in self.terms])

    def to_json(self):
        return [[i, list(b.coeffs)] for i, b in self.terms]

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.field.p
        return " + ".join("(%s)*T^%d" % (b, p ** i) for i, b in self.terms)


@dataclass(frozen=True)
class Relation:
    """D^(p^n) + sum_{i=r}^{n-1} a_i D^(p^i) = 0 with a_r != 0; when
    degenerate, D^(p^r) = 0 and no relation is needed."""

    field: object
    r: int
    n: int
    coeffs: tuple  # (a_r, ..., a_{n-1})
    degenerate: bool

    def coefficient(self, i):
        return self.coeffs[i - self.r]

    def verify(self, D):
        if self.degenerate:
            return D.p_power(self.r).is_zero()
        acc = D.p_power(self.n)
        for i, a in zip(range(self.r, self.n), self.coeffs):
            acc = acc + D.p_power(i) * a
        return acc.is_zero()

    def to_json(self):
        return {"r": self.r, "n": self.n, "degenerate": self.degenerate,
                "coeffs": [list(a.coeffs) for a in self.coeffs]}


def semisimple_exponent(D):
    """Least r such that D^(p^r) has a squarefree minimal polynomial."""
    p = D.field.p
    M = D
    r = 0
    bound = 1
    while p ** bound < max(D.n, 2):
        bound += 1
    while True:
        if M.minimal_polynomial().squarefree_is():
            return r
        if r > bound:
            raise AssertionError("no semisimple p-power iterate found")
        M = M ** p
        r += 1


def p_power_relation(D, r):
    """Minimal monic relation among S, S^p, S^(p^2), ... for S = D^(p^r).

    Requires S semisimple; then the lowest coefficient is automatically
    nonzero.  Returns the degenerate relation when S = 0.
    """
    field = D.field
    S = D.p_power(r)
    if S.is_zero():
        return Relation(field, r, r, (), True)
    if not S.minimal_polynomial().squarefree_is():
        raise HypothesisError("D^(p^r) semisimple",
                              "r = %d gives a non-semisimple power" % r)
    # Krylov-style dependence search on flattened matrices, tracking how
    # each iterate reduces against the previous ones.
    piv = {}
    reps = {}
    cur = S
    t = 0
    while True:
        vec = [x for row in cur.rows for x in row]
        rep = [field.zero] * t + [field.one]
        for c in sorted(piv):
            f = vec[c]
            if f:
                pvec, prep = piv[c], reps[c]
                for i in range(len(vec)):
                    vec[i] = vec[i] - f * pvec[i]
                for i in range(len(prep)):
                    rep[i] = rep[i] - f * prep[i]
        lead = next((c for c in range(len(vec)) if vec[c]), None)
        if lead is None:
            # dependence: S^(p^t) = -sum_{k<t} rep[k] S^(p^k)
            coeffs = tuple(rep[:t])
            if not coeffs[0]:
                raise AssertionError("semisimple relation with zero lowest "
                                     "coefficient")  # contradicts the theory
            return Relation(field, r, r + t, coeffs, False)
        inv = vec[lead].inverse()
        piv[lead] = [x * inv for x in vec]
        reps[lead] = [x * inv for x in rep]
        cur = cur ** field.p
        t += 1
        if t > D.n * D.n + 1:
            raise AssertionError("no p-power relation found")  # unreachable


def build_g(relation, field=None, D=None, lam=None):
    """(F', g, lambda) with g an additive polynomial supported on exponents
    r..n-1 satisfying g(D)^p - g(D) = D^(p^r).

    lambda is a root of the constraint polynomial
    1 + T + sum_{k=r}^{n-1} a_k^(p^(n-1-k)) T^(p^(n-k)); by default the
    smallest root in the canonical splitting field.  The matrix identity is
    verified whenever D is supplied.
    """
    field = field or relation.field
    if relation.degenerate:
        g = PPolynomial.make(field, ())
        if D is not None and not D.p_power(relation.r).is_zero():
            raise VerificationError("degenerate relation but D^(p^r) != 0")
        return field, g, None
    r, n = relation.r, relation.n
    p = field.p
    tvar = Polynomial.variable(field)
    constraint = 1 + tvar
    for k in range(r, n):
        a = relation.coefficient(k)
        constraint = constraint + a ** (p ** (n - 1 - k)) * tvar ** (p ** (n - k))
    if lam is None:
        big, roots = roots_in_splitting_field(constraint)
        lam = roots[0][0]  # sorted: canonical smallest
    else:
        big = lam.field
        check = constraint.map_coefficients(embedding(field, big), big)
        if check.evaluate(lam):
            raise HypothesisError("lambda solves the constraint polynomial")
    emb = embedding(field, big)
    a_big = {k: emb(relation.coefficient(k)) for k in range(r, n)}
    b = {n - 1: lam}
    for h in range(n - 2, r - 1, -1):
        b[h] = (b[h + 1] + lam ** p * a_big[h + 1]).pth_root()
    if -(big.one) - b[r] != lam ** p * a_big[r]:
        raise VerificationError("additive polynomial recursion inconsistent")
    g = PPolynomial.make(big, [(i, b[i]) for i in range(r, n)])
    if D is not None:
        D2 = D.embed_to(big)
        gD = g.eval_matrix(D2)
        if gD ** p - gD != D2.p_power(r):
            raise VerificationError("g(D)^p - g(D) != D^(p^r)")
    return big, g, lam


def h_polynomial(field, r):
    """h(T) = sum_{i=1}^{r-1} T^(p^i); empty when r <= 1."""
    return PPolynomial.make(field, [(i, field.one) for i in range(1, r)])


def laguerre_of_operators(p, alpha_op, x_op):
    """L_{p-1} at commuting operators: sum_k C_k(alpha_op) x_op^k."""
    field = alpha_op.field
    coeffs = laguerre_alpha_coeffs(p, field)
    acc = LinearMap.zero(field, alpha_op.n)
    xpow = LinearMap.identity(field, alpha_op.n)
    for k, ck in enumerate(coeffs):
        acc = acc + ck.evaluate(alpha_op) * xpow
        if k + 1 < len(coeffs):
            xpow = xpow * x_op
    return acc


class SwitchResult:
    """Everything produced while switching a grading along D."""

    def __init__(self, **kw):
        self.algebra = kw.get("algebra")          # over the final field
        self.derivation = kw.get("derivation")    # D over the final field
        self.field_start = kw.get("field_start")
        self.field_final = kw.get("field_final")
        self.r_raw = kw.get("r_raw")
        self.r = kw.get("r")
        self.relation = kw.get("relation")
        self.g = kw.get("g")
        self.lam = kw.get("lam")
        self.decomposition = kw.get("decomposition")
        self.block_scalars = kw.get("block_scalars")
        self.switch_map = kw.get("switch_map")
        self.degree = kw.get("degree")
        self.old_parts = kw.get("old_parts")
        self.new_parts = kw.get("new_parts")
        self.grading_ok = None
        self.product_rule_pairs = None

    def to_json(self):
        fin = self.field_final
        out = {
            "field_start": self.field_start.to_json(),
            "field_final": fin.to_json(),
            "r": self.r,
            "r_raw": self.r_raw,
            "relation": self.relation.to_json() if self.relation else None,
            "g": self.g.to_json() if self.g else None,
            "lambda": list(self.lam.coeffs) if self.lam is not None else None,
            "eigenvalues": [list(v.coeffs) for v, _ in self.decomposition],
            "block_dims": [s.dim for _, s in self.decomposition],
            "block_scalars": [list(s.coeffs) for _, s in self.block_scalars],
            "switch_map": [[list(x.coeffs) for x in row]
                           for row in self.switch_map.rows],
            "new_parts": [[k, [[list(x.coeffs) for x in b] for b in s.basis]]
                          for k, s in self.new_parts],
            "grading_ok": self.grading_ok,
            "product_rule_pairs": self.product_rule_pairs,
        }
        if self.degree is not None:
            out["degree"] = self.degree
        return out


def build_LD(A, D, r=None, lam=None):
    """The switching operator of D on A, with every scalar law verified.

    Steps: semisimplicity exponent (or validate a supplied r), minimal
    p-power relation, additive polynomial g (enlarging the field as
    needed), generalized eigenspaces (ditto), then one Laguerre block per
    eigenvalue and reassembly to a global map.
    """
    field0 = A.field
    if D.field is not field0 or D.n != A.dim:
        raise ValueError("derivation does not act on the algebra")
    p = field0.p
    r_raw = semisimple_exponent(D)
    if r is not None:
        if not D.p_power(r).minimal_polynomial().squarefree_is():
            raise HypothesisError("D^(p^r) semisimple",
                                  "supplied r = %d fails" % r)
    else:
        r = r_raw
    r_eff = max(r, 1)
    relation = p_power_relation(D, r_eff)
    f1, g, lam_val = build_g(relation, field0, D=D, lam=lam)
    d1 = D.embed_to(f1)
    f2, dec = generalized_eigenspaces(d1)
    a2 = A.change_field(f2)
    d2 = d1.embed_to(f2)
    g2 = g.embed_to(f2)
    lam2 = embed(lam_val, f2) if lam_val is not None else None
    h = h_polynomial(f2, r_eff)

    blocks = []
    scalars = []
    for rho, space in dec:
        dres = d2.restrict_to(space)
        alpha_op = LinearMap.identity(f2, space.dim) * g2(rho) \
            - h.eval_matrix(dres)
        block = laguerre_of_operators(p, alpha_op, dres)
        grho = g2(rho)
        s_lag = laguerre_at(p, grho ** p).evaluate(grho ** p - grho)
        s_prod = scalar_product_form(p, grho)
        if s_lag != s_prod:
            raise VerificationError("scalar law: Laguerre and product forms "
                                    "disagree at rho = %s" % (rho,))
        if not s_lag:
            raise VerificationError("scalar law gives zero at rho = %s "
                                    "(operator not invertible)" % (rho,))
        if block ** (p ** r_eff) != LinearMap.identity(f2, space.dim) * s_lag:
            raise VerificationError("block power is not the predicted scalar "
                                    "at rho = %s" % (rho,))
        blocks.append((rho, block))
        scalars.append((rho, s_lag))

    cols = []
    for _, space in dec:
        cols.extend(space.basis)
    vmat = LinearMap.from_columns(f2, cols)
    n = A.dim
    bdiag = [[f2.zero] * n for _ in range(n)]
    off = 0
    for (_, block), (_, space) in zip(blocks, dec):
        k = space.dim
        for i in range(k):
            for j in range(k):
                bdiag[off + i][off + j] = block.rows[i][j]
        off += k
    switch_map = vmat * LinearMap(f2, bdiag) * vmat.inverse()

    old_parts = a2.grading_parts()
    new_parts = [(k, s.image(switch_map)) for k, s in old_parts]

    return SwitchResult(
        algebra=a2, derivation=d2, field_start=field0, field_final=f2,
        r_raw=r_raw, r=r_eff, relation=relation, g=g2, lam=lam2,
        decomposition=dec, block_scalars=tuple(scalars),
        switch_map=switch_map, old_parts=tuple(old_parts),
        new_parts=tuple(new_parts))


def special_LD(A, D):
    """The switching operator in the special case D^(p^2) = D^p.

    Uses gamma with gamma^p - gamma = 1 and the block values
    L_{p-1}^(a gamma)(D) on each eigenspace A^(a), a in F_p.  Equivalent to
    build_LD with r = 1 and g = gamma T^p; kept as an independent code path.
    """
    field0 = A.field
    p = field0.p
    if D.field is not field0 or D.n != A.dim:
        raise ValueError("derivation does not act on the algebra")
    if D.p_power(2) != D.p_power(1):
        raise HypothesisError("D^(p^2) = D^p")
    f1, gamma = artin_schreier_root(field0, field0.one)
    d1 = D.embed_to(f1)
    f2, dec = generalized_eigenspaces(d1)
    gamma2 = embed(gamma, f2)
    a2 = A.change_field(f2)
    d2 = d1.embed_to(f2)

    blocks = []
    scalars = []
    for rho, space in dec:
        if rho ** p != rho:
            raise VerificationError("eigenvalue outside F_p despite "
                                    "D^(p^2) = D^p")
        dres = d2.restrict_to(space)
        block = laguerre_at(p, rho * gamma2).evaluate(dres)
        agamma = rho * gamma2
        s_lag = laguerre_at(p, agamma ** p).evaluate(agamma ** p - agamma)
        if not s_lag or block ** p != LinearMap.identity(f2, space.dim) * s_lag:
            raise VerificationError("special-case scalar law failed at "
                                    "a = %s" % (rho,))
        blocks.append((rho, block))
        scalars.append((rho, s_lag))

    cols = []
    for _, space in dec:
        cols.extend(space.basis)
    vmat = LinearMap.from_columns(f2, cols)
    n = A.dim
    bdiag = [[f2.zero] * n for _ in range(n)]
    off = 0
    for (_, block), (_, space) in zip(blocks, dec):
        k = space.dim
        for i in range(k):
            for j in range(k):
                bdiag[off + i][off + j] = block.rows[i][j]
        off += k
    switch_map = vmat * LinearMap(f2, bdiag) * vmat.inverse()
    old_parts = a2.grading_parts()
    new_parts = [(k, s.image(switch_map)) for k, s in old_parts]

    return SwitchResult(
        algebra=a2, derivation=d2, field_start=field0, field_final=f2,
        r_raw=1, r=1,
        relation=Relation(field0, 1, 2, (field0.scalar(-1),), False),
        g=PPolynomial.make(f2, [(1, gamma2)]), lam=gamma2,
        decomposition=dec, block_scalars=tuple(scalars),
        switch_map=switch_map, old_parts=tuple(old_parts),
        new_parts=tuple(new_parts))


def switch_grading(A, D, r=None, lam=None, check_product_rule=True):
    """Full switching run: hypothesis checks on (A, D), the operator, the
    switched grading with verification, and the two-sided product rule."""
    d = derivation_degree(A, D)
    if d is None or not is_derivation(A, D):
        raise HypothesisError("D is a graded derivation")
    rep = is_graded_derivation(A, D, d)
    if not rep.ok:
        raise HypothesisError("D is a graded derivation")
    if not rep.m_divides_pd:
        raise HypothesisError("m divides p*d",
                              "d = %d, m = %d, p = %d" % (d, A.m, A.field.p))
    result = build_LD(A, D, r=r, lam=lam)
    result.degree = d
    if not is_grading(result.algebra, result.new_parts):
        raise VerificationError("switched components fail the grading check")
    result.grading_ok = True
    if check_product_rule:
        result.product_rule_pairs = verify_product_rule(result)
    return result


# ---------------------------------------------------------------------------
# the two-sided product rule


def _nilpotency_index(N, cap):
    M = N
    for s in range(1, cap + 1):
        if M.is_zero():
            return s
        M = M * N
    raise VerificationError("restricted map not nilpotent on eigenspace")


def _pair_coefficient_series(p, field, a0, b0, sa, sb):
    """c-list of the product-splitting table at alpha = a0 + U, b0 + V.

    U and V stand for the nilpotent parts of the coefficient operators on
    the two tensor factors (orders sa, sb).  Returns [c_0, c_1, .., c_{p-1}]
    as bivariate truncated series; coefficient [j][k] of c_i multiplies
    nil_x^j applied to the left factor times nil_y^k applied to the right.
    """
    alpha = BiTruncSeries.constant(field, sa, sb, a0) \
        + BiTruncSeries.shift_u(field, sa, sb)
    beta = BiTruncSeries.constant(field, sa, sb, b0) \
        + BiTruncSeries.shift_v(field, sa, sb)
    ring = QuotientRing(p, alpha ** p - alpha, beta ** p - beta)
    cks = laguerre_alpha_coeffs(p, field)
    va = ring.from_x_poly([ck.evaluate(alpha) for ck in cks])
    vb = ring.from_y_poly([ck.evaluate(beta) for ck in cks])
    v = quotient_mul(va, vb)
    ab = alpha + beta
    u = _laguerre_xy_quotient(ring, [ck.evaluate(ab) for ck in cks], p)
    try:
        u_inv = quotient_inverse(u)
    except NonInvertibleError as exc:
        raise VerificationError("product-rule coefficient denominator is "
                                "not invertible: %s" % exc) from exc
    table = quotient_mul(v, u_inv)
    if quotient_mul(u, table) != v:
        raise VerificationError("product-rule table reconstruction failed")
    for i in range(p):
        for j in range(p):
            if (i + j) % p and table.entries[i][j]:
                raise VerificationError("nonzero c'_{%d%d} with p not "
                                        "dividing i+j" % (i, j))
    return [table.entries[0][0]] + [table.entries[i][p - i]
                                    for i in range(1, p)]


def verify_product_rule(result):
    """Check L_D x * L_D y == L_D(c_0(xy) + sum_i c_i(D^i x, D^(p-i) y)) on
    every pair of eigen-basis vectors.

    The coefficients c_i are evaluated at alpha = g(rho) - h(D) acting on
    the left factor and beta = g(sigma) - h(D) acting on the right factor,
    the way the operator identity behind the switched grading composes with
    the multiplication map.  Returns the number of pairs checked.
    """
    a2 = result.algebra
    d2 = result.derivation
    g2 = result.g
    f2 = d2.field
    p = f2.p
    n = a2.dim
    h = h_polynomial(f2, result.r)
    dec = result.decomposition
    lmap = result.switch_map
    hmat = h.eval_matrix(d2)
    zero_vec = (f2.zero,) * n

    # Per eigenvalue: the scalar part a0 = g(rho) - h(rho) of the
    # coefficient operator, its nilpotent part nil = h(rho) - h(D), the
    # order of nil on the eigenspace, and for each basis vector x the grid
    # nil^j D^i x (plus the switched image of x).
    info = []
    for rho, space in dec:
        nil = LinearMap.identity(f2, n) * h(rho) - hmat
        sa = _nilpotency_index(nil.restrict_to(space), space.dim + 1)
        a0 = g2(rho) - h(rho)
        grids = []
        for x in space.basis:
            dcol = [x]
            for _ in range(p - 1):
                dcol.append(d2.apply(dcol[-1]))
            grid = [dcol]
            for _ in range(sa - 1):
                grid.append([nil.apply(v) for v in grid[-1]])
            grids.append(grid)
        lvecs = [lmap.apply(x) for x in space.basis]
        info.append((rho, space, a0, sa, grids, lvecs))

    pairs = 0
    for rho, vspace, a0, sa, agrids, alx in info:
        for sigma, wspace, b0, sb, bgrids, bly in info:
            tau = rho + sigma
            target = dec.find(tau)
            if target is None:
                for x in vspace.basis:
                    for y in wspace.basis:
                        if a2.product(x, y) != zero_vec:
                            raise VerificationError(
                                "product outside the eigenspace sum")
                for lx in alx:
                    for ly in bly:
                        if a2.product(lx, ly) != zero_vec:
                            raise VerificationError(
                                "switched product outside the eigenspace sum")
                pairs += len(vspace.basis) * len(wspace.basis)
                continue
            cseries = _pair_coefficient_series(p, f2, a0, b0, sa, sb)
            terms = []
            for i in range(p):
                ser = cseries[i]
                terms.append([(j, k, ser.coeffs[j][k])
                              for j in range(sa) for k in range(sb)
                              if ser.coeffs[j][k]])
            for xi in range(len(vspace.basis)):
                grid_x = agrids[xi]
                lx = alx[xi]
                for yi in range(len(wspace.basis)):
                    grid_y = bgrids[yi]
                    lhs = a2.product(lx, bly[yi])
                    inner = [f2.zero] * n
                    for i in range(p):
                        iy = p - i if i else 0
                        for j, k, c in terms[i]:
                            xv = grid_x[j][i]
                            if not any(xv):
                                continue
                            yv = grid_y[k][iy]
                            if not any(yv):
                                continue
                            prod = a2.product(xv, yv)
                            for t in range(n):
                                if prod[t]:
                                    inner[t] = inner[t] + c * prod[t]
                    rhs = lmap.apply(inner)
                    if tuple(lhs) != tuple(rhs):
                        raise VerificationError(
                            "product rule fails on a basis pair in "
                            "components (%s, %s)" % (rho, sigma))
                    pairs += 1
    return pairs
