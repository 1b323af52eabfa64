"""Finite-dimensional modules over the local algebras: construction, tensor,
duals, restriction, fixed points, free-summand stripping, syzygies, and
isomorphism testing.

A ModuleRep stores one action matrix per algebra generator over a finite
field (the prime field unless scalars were extended).  Construction always
validates the algebra relations.  All operations are pure; modules are
immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactfield as xf
from .algebra import AlgebraElement, PbwAlgebra, build_elementary_abelian
from .errors import (AlgebraMismatch, InconclusiveIsomorphism, RelationViolation,
                     SplittingFailure)
from .exactfield import get_field

# exhaustive invertible-combination search cap for isomorphism testing
ISO_SEARCH_BUDGET = 2**18
ISO_MAX_EXTENSION = 3


@dataclass(frozen=True, eq=False)
class ModuleRep:
    """A module given by generator action matrices; validated at creation."""

    algebra: object
    field: object
    dim: int
    mats: tuple

    def gen_mat(self, i):
        return self.mats[i]

    def __repr__(self):
        return f"ModuleRep(dim {self.dim} over {self.algebra.label})"

    def to_json_dict(self):
        return {
            "algebra_id": self.algebra.content_hash(),
            "dim": self.dim,
            "matrices": [m.ravel().tolist() for m in self.mats],
        }


def make_module(algebra, mats, field=None, validate=True):
    """Relation-validated module from candidate action matrices."""
    field = field or get_field(algebra.p)
    mats = tuple(np.asarray(m, dtype=np.int64) for m in mats)
    if len(mats) != algebra.num_generators:
        raise RelationViolation(
            f"expected {algebra.num_generators} action matrices, got {len(mats)}")
    if mats:
        d = mats[0].shape[0]
        for m in mats:
            if m.shape != (d, d):
                raise RelationViolation("action matrices must be square of equal size")
    else:
        d = 0
    if validate and d:
        why = algebra.validate_module(field, mats)
        if why is not None:
            raise RelationViolation(why)
    return ModuleRep(algebra=algebra, field=field, dim=d, mats=mats)


def trivial_module(algebra, dim=1, field=None):
    """The dim-fold direct sum of the trivial module (all generators act as 0)."""
    field = field or get_field(algebra.p)
    z = xf.zeros(dim, dim)
    return ModuleRep(algebra=algebra, field=field, dim=dim,
                     mats=tuple(z.copy() for _ in range(algebra.num_generators)))


def regular_module(algebra):
    """Left multiplication on the monomial basis; dimension p^n."""
    mats = algebra.regular_generator_mats()
    return make_module(algebra, mats, validate=False)


def direct_sum(m, n):
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("direct sum needs modules over one algebra")
    mats = []
    for a, b in zip(m.mats, n.mats):
        blk = xf.zeros(m.dim + n.dim, m.dim + n.dim)
        blk[:m.dim, :m.dim] = a
        blk[m.dim:, m.dim:] = b
        mats.append(blk)
    return ModuleRep(algebra=m.algebra, field=m.field, dim=m.dim + n.dim,
                     mats=tuple(mats))


def tensor(m, n):
    """M (x) N with the algebra's coproduct driving the generator actions."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("tensor product needs modules over one algebra")
    mats = m.algebra.tensor_generator_mats(m.field, m.mats, n.mats, m.dim, n.dim)
    return ModuleRep(algebra=m.algebra, field=m.field, dim=m.dim * n.dim,
                     mats=tuple(mats))


def dual(m):
    """k-dual along the algebra antipode."""
    mats = m.algebra.dual_generator_mats(m.field, m.mats)
    return ModuleRep(algebra=m.algebra, field=m.field, dim=m.dim, mats=tuple(mats))


def evaluate_element(m, elem):
    """Action matrix of an arbitrary algebra element on the module."""
    return m.algebra.element_matrix(m.field, m.mats, elem)


def restrict_along(source_algebra, m, images, validate=True):
    """Pull back m along the algebra map sending the i-th generator of
    source_algebra to images[i] (elements of m.algebra).

    The images must satisfy the source relations when evaluated in m; this is
    checked and RelationViolation raised otherwise.
    """
    mats = []
    for img in images:
        if isinstance(img, AlgebraElement):
            mats.append(evaluate_element(m, img))
        else:
            mats.append(np.asarray(img, dtype=np.int64))
    return make_module(source_algebra, mats, field=m.field, validate=validate)


def restriction_subalgebra_pair(m, v_elem, top_elem=None):
    """Restrict to the rank-2 elementary abelian subalgebra generated by
    v and the central top generator (the E_a of the local syzygy theory)."""
    A = m.algebra
    if top_elem is None:
        top_elem = A.generator(A.n - 1)
    E = build_elementary_abelian(A.p, 2)
    return restrict_along(E, m, [v_elem, top_elem])


def invariants(m, gen_indices):
    """Common kernel of the listed generator actions, as a module over the
    subalgebra spanned by the remaining generators.

    The remaining generators must act on the kernel and their brackets must
    stay inside the remaining span; both are validated."""
    A, F = m.algebra, m.field
    gen_indices = sorted(set(gen_indices))
    if not gen_indices:
        return m
    stacked = np.concatenate([m.mats[i] for i in gen_indices], axis=0)
    basis = xf.nullspace(F, stacked)  # dim x k
    k = basis.shape[1]
    remaining = [i for i in range(A.num_generators) if i not in gen_indices]

    sub_brackets = {}
    if isinstance(A, PbwAlgebra):
        pos = {g: t for t, g in enumerate(remaining)}
        for a, ga in enumerate(remaining):
            for b in range(a + 1, len(remaining)):
                gb = remaining[b]
                terms = []
                for tgt, c in A.bracket(ga, gb):
                    if tgt in pos:
                        terms.append((pos[tgt], c))
                    else:
                        raise RelationViolation(
                            "bracket of remaining generators leaves their span")
                if terms:
                    sub_brackets[(a, b)] = tuple(terms)
        sub = PbwAlgebra(A.p, len(remaining), sub_brackets,
                         labels=[A.labels[i] for i in remaining],
                         label=f"{A.label}|fixed")
    else:
        raise RelationViolation("invariants of divided-power modules take all generators")

    if not remaining:
        return ModuleRep(algebra=sub, field=F, dim=k, mats=())
    mats = []
    for g in remaining:
        img = xf.matmul(F, m.mats[g], basis)
        try:
            mats.append(xf.solve(F, basis, img))
        except ValueError as exc:
            raise RelationViolation(
                f"generator {A.labels[g]} does not preserve the fixed points") from exc
    return make_module(sub, mats, field=F)


def socle_matrix(m):
    return m.algebra.socle_matrix(m.field, m.mats)


def _action_columns(m, col_indices):
    """Stacked columns action(b) @ e_c for every algebra basis element b and
    each c in col_indices: the matrix of a map (free module)^k -> M.

    Computed by vector recursion over the monomial basis, never by forming
    the full basis action matrices."""
    A, F = m.algebra, m.field
    out_cols = []
    if isinstance(A, PbwAlgebra):
        basis = A.basis_monomials()
        zero_exp = (0,) * A.n
        for c in col_indices:
            memo = {}
            start = np.zeros(m.dim, dtype=np.int64)
            start[c] = 1
            memo[zero_exp] = start
            for mono in basis:
                if mono in memo:
                    continue
                j = next(i for i, e in enumerate(mono) if e)
                prev = mono[:j] + (mono[j] - 1,) + mono[j + 1:]
                memo[mono] = xf.matvec(F, m.mats[j], memo[prev])
            out_cols.extend(memo[mono] for mono in basis)
    else:
        for c in col_indices:
            for t in range(A.dim):
                out_cols.append(A.basis_action(F, m.mats, t)[:, c])
    return np.stack(out_cols, axis=1)


def free_rank(m):
    """Number of free summands: the rank of the socle generator's action."""
    if m.dim == 0:
        return 0
    return xf.rank(m.field, socle_matrix(m))


@dataclass(frozen=True)
class StrippedModule:
    """M decomposed as (free of rank r) + residual with no projective submodules."""

    rank: int
    residual: ModuleRep

    @property
    def residual_dim(self):
        return self.residual.dim


def _quotient_module(m, sub_basis):
    """Quotient of m by the submodule spanned by the columns of sub_basis."""
    A, F, d = m.algebra, m.field, m.dim
    k = sub_basis.shape[1]
    R, pivots = xf.row_echelon(F, sub_basis.T, reduced=True)
    pivot_set = set(pivots)
    comp = [i for i in range(d) if i not in pivot_set]
    # invertible basis [sub | complement of unit vectors]; quotient = last rows
    B = np.concatenate(
        [sub_basis, np.eye(d, dtype=np.int64)[:, comp]], axis=1)
    Binv = xf.inverse(F, B)
    proj = Binv[k:, :]
    sect = B[:, k:]
    mats = [xf.matmul(F, proj, xf.matmul(F, g, sect)) for g in m.mats]
    return make_module(A, mats, field=F, validate=False)


def strip_projectives(m):
    """Split off all free summands: M = (free)^r + N with socle acting as 0 on N.

    The injection psi of the rank-r free module is built on socle preimages;
    since its image is a direct summand, the residual is computed as the
    quotient by that image (isomorphic to any choice of complement)."""
    A, F = m.algebra, m.field
    if m.dim == 0:
        return StrippedModule(0, m)
    S = socle_matrix(m)
    r = xf.rank(F, S)
    if r == 0:
        return StrippedModule(0, m)
    adim = A.dim
    # socle preimages: unit vectors at a maximal independent column set of S
    cols = xf.column_space_pivots(F, S)[:r]
    psi = _action_columns(m, cols)
    if xf.rank(F, psi) != r * adim:
        raise SplittingFailure("socle preimages failed to generate a free summand")
    residual = _quotient_module(m, psi)
    if free_rank(residual) != 0:  # pragma: no cover
        raise SplittingFailure("residual still has a free summand")
    return StrippedModule(r, residual)


def radical_basis(m):
    """Basis of rad M = sum of generator images (valid for these local
    augmented algebras, where the generators span the augmentation ideal
    modulo its square)."""
    F = m.field
    stacked = np.concatenate(m.mats, axis=1)
    pivots = xf.column_space_pivots(F, stacked)
    return stacked[:, pivots]


def radical_series_dims(m):
    """Dimensions of rad^i M until zero; an isomorphism invariant."""
    dims = [m.dim]
    cur = np.eye(m.dim, dtype=np.int64)
    F = m.field
    while True:
        images = [xf.matmul(F, g, cur) for g in m.mats]
        stacked = np.concatenate(images, axis=1)
        pivots = xf.column_space_pivots(F, stacked)
        cur = stacked[:, pivots]
        dims.append(len(pivots))
        if len(pivots) == 0 or dims[-1] == dims[-2]:
            break
    return tuple(dims)


def syzygy(m):
    """Kernel of the minimal projective cover (free cover on head generators).

    Head preimages are unit vectors at the complement of rad M under
    deterministic pivoting, so syzygy matrices are reproducible."""
    A, F = m.algebra, m.field
    if m.dim == 0:
        return m
    adim = A.dim
    rad = radical_basis(m)
    R, pivots = xf.row_echelon(F, rad.T, reduced=True)
    pivot_set = set(pivots)
    head = [i for i in range(m.dim) if i not in pivot_set]
    g = len(head)
    if g == 0:  # pragma: no cover
        raise SplittingFailure("module with zero head")

    cover = _action_columns(m, head)  # dim x (g * adim)
    if len(xf.column_space_pivots(F, cover)) != m.dim:  # pragma: no cover
        raise SplittingFailure("head preimages do not generate the module")

    kernel = xf.nullspace(F, cover)  # (g*adim) x s
    reg = A.regular_generator_mats()
    mats = []
    for gi in range(A.num_generators):
        big = xf.zeros(g * adim, g * adim)
        for blk in range(g):
            big[blk * adim:(blk + 1) * adim, blk * adim:(blk + 1) * adim] = reg[gi]
        img = xf.matmul(F, big, kernel)
        mats.append(xf.solve(F, kernel, img))
    omega = make_module(A, mats, field=F, validate=False)
    stripped = strip_projectives(omega)
    return stripped.residual


def cosyzygy(m):
    return dual(syzygy(dual(m)))


def syzygy_power(m, n):
    """Omega^n for any integer n (negative powers via the dual)."""
    cur = m
    step = syzygy if n >= 0 else cosyzygy
    for _ in range(abs(n)):
        cur = step(cur)
    return cur


# ---------------------------------------------------------------------------
# isomorphism testing


def _intertwiner_space(m, n):
    """Basis of {Phi : Phi rho_M(u) = rho_N(u) Phi for all generators}."""
    F, d = m.field, m.dim
    blocks = []
    eye = np.eye(d, dtype=np.int64)
    for a, b in zip(m.mats, n.mats):
        # row-major vec: vec(Phi A) = kron(I, A^T) v, vec(B Phi) = kron(B, I) v
        lhs = xf.mat_sub(F, xf.kron(F, eye, a.T.copy()), xf.kron(F, b, eye))
        blocks.append(lhs)
    system = np.concatenate(blocks, axis=0)
    basis = xf.nullspace(F, system)
    return [basis[:, i].reshape(d, d) for i in range(basis.shape[1])]


def _projective_coefficient_vectors(q, s):
    """All length-s vectors over F_q with first nonzero entry 1."""
    for lead in range(s):
        for rest in range(q**(s - lead - 1)):
            vec = [0] * lead + [1]
            rr = rest
            for _ in range(s - lead - 1):
                vec.append(rr % q)
                rr //= q
            yield tuple(vec)


def is_isomorphic(m, n, witness=False, budget=ISO_SEARCH_BUDGET):
    """Decide module isomorphism exactly.

    Screens by dimension and radical/socle series; then computes the
    intertwiner space and searches it for an invertible element, first over
    the prime field, then over extensions of degree up to 3.  A complete
    search over a field with more than dim(M) elements is conclusive (an
    identically vanishing determinant over such a field vanishes as a
    polynomial, and isomorphism descends from extensions).  Raises
    InconclusiveIsomorphism when every searchable field is over budget.
    """
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("isomorphism test needs one algebra")
    result = (lambda ok, w=None: (ok, w) if witness else ok)
    if m.dim != n.dim:
        return result(False)
    if m.dim == 0:
        return result(True, np.zeros((0, 0), dtype=np.int64))
    if all(np.array_equal(a, b) for a, b in zip(m.mats, n.mats)):
        return result(True, np.eye(m.dim, dtype=np.int64))
    if radical_series_dims(m) != radical_series_dims(n):
        return result(False)
    if radical_series_dims(dual(m)) != radical_series_dims(dual(n)):
        return result(False)
    if free_rank(m) != free_rank(n):
        return result(False)

    basis = _intertwiner_space(m, n)
    s = len(basis)
    if s == 0:
        return result(False)
    F0 = m.field
    p = F0.p

    # Codes of the prime subfield embed unchanged into every extension built
    # here, so the basis matrices lift as they are.  For modules already over
    # an extension only the field itself is searched.
    degrees = range(1, ISO_MAX_EXTENSION + 1) if F0.e == 1 else [1]
    for e in degrees:
        q = F0.q**e
        count = (q**s - 1) // (q - 1)
        if count > budget:
            continue
        Fq = get_field(p, F0.e * e)
        found = None
        for vec in _projective_coefficient_vectors(q, s):
            acc = xf.zeros(m.dim, m.dim)
            for c, B in zip(vec, basis):
                if c:
                    acc = xf.mat_add(Fq, acc, xf.mat_scale(Fq, c, B))
            if xf.det(Fq, acc) != 0:
                found = acc
                break
        if found is not None:
            return result(True, found)
        if q > m.dim:
            # Schwartz-Zippel: deg <= dim polynomial cannot vanish on all of
            # F_q^s when q > dim, so the determinant is identically zero and
            # no extension carries an invertible intertwiner either
            return result(False)
    raise InconclusiveIsomorphism(
        f"intertwiner space of dimension {s} exceeds the search budget")


# ---------------------------------------------------------------------------
# the type-A natural representation


def natural_rep_typeA(algebra):
    """The (l+1)-dimensional natural module for u(n) of type A_l.

    Simple-root generators act as elementary matrices E_{i,i+1}; higher root
    vectors are filled in recursively through the bracket table, and the
    result is relation-validated."""
    if algebra.roots is None:
        raise RelationViolation("algebra was not built from a root system")
    roots = list(algebra.roots)
    rank = len(roots[0])
    d = rank + 1
    p = algebra.p
    F = get_field(p)
    index = {r: i for i, r in enumerate(roots)}
    mats = [None] * len(roots)
    for i, r in enumerate(roots):
        if sum(r) == 1:
            k = r.index(1)
            mat = xf.zeros(d, d)
            mat[k, k + 1] = 1
            mats[i] = mat
    for i, r in enumerate(sorted(roots, key=sum)):
        gi = index[r]
        if mats[gi] is not None:
            continue
        # split off the first simple root present: r = alpha_k + rest
        k = next(t for t, c in enumerate(r) if c)
        alpha = tuple(1 if t == k else 0 for t in range(rank))
        rest = tuple(c - a for c, a in zip(r, alpha))
        a_i, b_i = index[alpha], index[rest]
        coeff = dict(algebra.bracket(a_i, b_i)).get(gi)
        if not coeff:
            raise RelationViolation("bracket chain for the natural module broke")
        comm = xf.mat_sub(F, xf.matmul(F, mats[a_i], mats[b_i]),
                          xf.matmul(F, mats[b_i], mats[a_i]))
        inv = pow(coeff, p - 2, p)
        mats[gi] = xf.mat_scale(F, inv, comm)
    return make_module(algebra, mats, field=F)
