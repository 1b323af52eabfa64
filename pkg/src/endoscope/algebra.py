"""Finite-dimensional local algebras: restricted enveloping algebras with PBW
straightening, and rank-one divided-power algebras.

A PbwAlgebra is presented by generators u_1..u_n with u_i^p = 0, a bracket
table [u_i, u_j] supported on strictly later generators, and basis the p^n
monomials u_1^{i_1} ... u_n^{i_n} with 0 <= i_j < p.  Multiplication is the
straightening rewrite (memoized); it terminates because every commutation
step raises generator indices.

Divided-power algebras have basis g_0..g_{p^r - 1} with g_i g_j =
binom(i+j, i) g_{i+j} (Lucas arithmetic, zero past the top); their algebra
generators are g_1, g_p, ..., g_{p^{r-1}}, which commute and have vanishing
p-th powers.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from . import exactfield as xf
from .errors import CapExceeded, RestrictednessViolation
from .rootdata import build_root_system, structure_constants

DIVIDED_POWER_CAP = 2**15


def binom_mod(n, k, p):
    """binom(n, k) mod p via Lucas's theorem (never via factorial division)."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        num = den = 1
        for t in range(kd):
            num = (num * (nd - t)) % p
            den = (den * (t + 1)) % p
        result = (result * num * pow(den, p - 2, p)) % p
        n //= p
        k //= p
    return result


def factorial_mod(n, p):
    r = 1
    for t in range(2, n + 1):
        r = (r * t) % p
    return r


# ---------------------------------------------------------------------------
# elements


class AlgebraElement:
    """Sparse element of a PbwAlgebra: map from exponent tuples to nonzero
    scalars mod p.  Immutable by convention; arithmetic returns new objects."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms=None):
        self.algebra = algebra
        self.terms = dict(terms or {})

    def __add__(self, other):
        p = self.algebra.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return AlgebraElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, scalar):
        p = self.algebra.p
        c = int(scalar) % p
        if c == 0:
            return AlgebraElement(self.algebra)
        return AlgebraElement(self.algebra, {m: (c * v) % p for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return int(other) * self

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms \
            and self.algebra is other.algebra

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def is_zero(self):
        return not self.terms

    def power(self, n):
        result = self.algebra.one()
        for _ in range(n):
            result = self.algebra.multiply(result, self)
        return result

    def __repr__(self):
        if not self.terms:
            return "0"
        labels = self.algebra.labels
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = "*".join(
                f"{labels[i]}^{e}" if e > 1 else labels[i]
                for i, e in enumerate(m) if e) or "1"
            parts.append(f"{c}*{mono}" if c != 1 or mono == "1" else mono)
        return " + ".join(parts)


class PbwAlgebra:
    """kG presented by straightening data; see module docstring.

    brackets maps ordered generator pairs (i, j), i < j, to a tuple of
    (k, coeff) terms with k > j; absent pairs commute.  All p-th powers of
    generators vanish.  The memo caches tolerate concurrent reads and
    idempotent concurrent inserts.
    """

    def __init__(self, p, n, brackets, labels=None, roots=None, heights=None,
                 label=""):
        self.p = int(p)
        self.n = int(n)
        self.brackets = {
            (int(i), int(j)): tuple((int(k), int(c) % self.p) for k, c in terms
                                    if int(c) % self.p)
            for (i, j), terms in brackets.items()
        }
        self.brackets = {ij: t for ij, t in self.brackets.items() if t}
        for (i, j), terms in self.brackets.items():
            if not i < j:
                raise ValueError("bracket table keys must be ordered pairs")
            if any(k <= j for k, _ in terms):
                raise ValueError("brackets must land on strictly later generators")
        self.labels = list(labels) if labels else [f"u{i+1}" for i in range(n)]
        self.roots = tuple(roots) if roots else None
        self.heights = tuple(heights) if heights else None
        self.label = label or f"pbw(p={p}, n={n})"
        self.dim = self.p**self.n
        self._gen_mul_cache = {}
        self._basis_mul_cache = {}
        self._zero_exp = (0,) * self.n

    # -- presentation-level helpers ---------------------------------------
    @property
    def num_generators(self):
        return self.n

    def generator(self, i):
        exp = [0] * self.n
        exp[i] = 1
        return AlgebraElement(self, {tuple(exp): 1})

    def generators(self):
        return [self.generator(i) for i in range(self.n)]

    def one(self):
        return AlgebraElement(self, {self._zero_exp: 1})

    def zero(self):
        return AlgebraElement(self)

    def element(self, coeffs):
        """Linear combination of the generators from a coefficient vector."""
        out = self.zero()
        for i, c in enumerate(coeffs):
            if int(c) % self.p:
                out = out + int(c) * self.generator(i)
        return out

    def bracket(self, i, j):
        """[u_i, u_j] as (k, coeff) terms, antisymmetric, for any i, j."""
        if i == j:
            return ()
        if i < j:
            return self.brackets.get((i, j), ())
        return tuple((k, (-c) % self.p) for k, c in self.brackets.get((j, i), ()))

    # -- straightening ------------------------------------------------------
    def _gen_mul(self, j, mono):
        """u_j * (basis monomial) as a dict of basis monomials -> coeff."""
        key = (j, mono)
        cached = self._gen_mul_cache.get(key)
        if cached is not None:
            return cached
        p = self.p
        support = [i for i, e in enumerate(mono) if e]
        if not support or j <= support[0]:
            e = mono[j] + 1
            result = {} if e == p else {mono[:j] + (e,) + mono[j + 1:]: 1}
        else:
            i = support[0]
            m2 = mono[:i] + (mono[i] - 1,) + mono[i + 1:]
            result = {}
            # u_j u_i = u_i u_j - [u_i, u_j]
            for m, c in self._gen_mul(j, m2).items():
                e = m[i] + 1
                if e < p:
                    key2 = m[:i] + (e,) + m[i + 1:]
                    v = (result.get(key2, 0) + c) % p
                    if v:
                        result[key2] = v
                    else:
                        result.pop(key2, None)
            for k, c in self.bracket(i, j):
                for m, c2 in self._gen_mul(k, m2).items():
                    v = (result.get(m, 0) - c * c2) % p
                    if v:
                        result[m] = v
                    else:
                        result.pop(m, None)
        self._gen_mul_cache[key] = result
        return result

    def _basis_mul(self, m1, m2):
        """Product of two basis monomials in the PBW basis."""
        key = (m1, m2)
        cached = self._basis_mul_cache.get(key)
        if cached is not None:
            return cached
        result = {m2: 1}
        p = self.p
        for idx in range(self.n - 1, -1, -1):
            for _ in range(m1[idx]):
                nxt = {}
                for m, c in result.items():
                    for mm, cc in self._gen_mul(idx, m).items():
                        v = (nxt.get(mm, 0) + c * cc) % p
                        if v:
                            nxt[mm] = v
                        else:
                            nxt.pop(mm, None)
                result = nxt
        self._basis_mul_cache[key] = result
        return result

    def multiply(self, a, b, ring=None):
        """Product in the PBW basis; straightening is exact mod p.

        With ring=None coefficients are integers mod p.  A ring object with
        zero/add/mul/scale_int/is_zero lets the same straightening drive
        symbolic coefficients (used by the nullcone equations).
        """
        if ring is None:
            p = self.p
            out = {}
            for m1, c1 in a.terms.items():
                for m2, c2 in b.terms.items():
                    c = (c1 * c2) % p
                    for m, cb in self._basis_mul(m1, m2).items():
                        v = (out.get(m, 0) + c * cb) % p
                        if v:
                            out[m] = v
                        else:
                            out.pop(m, None)
            return AlgebraElement(self, out)
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                c = ring.mul(c1, c2)
                for m, cb in self._basis_mul(m1, m2).items():
                    v = ring.add(out.get(m, ring.zero()), ring.scale_int(cb, c))
                    if ring.is_zero(v):
                        out.pop(m, None)
                    else:
                        out[m] = v
        return out

    # -- module-facing interface -------------------------------------------
    def validate_module(self, fieldobj, mats):
        """Check bracket and p-th power relations on candidate action matrices.

        Returns None when valid, else a human-readable witness string.
        """
        p = self.p
        for i in range(self.n):
            if np.any(xf.mat_pow(fieldobj, mats[i], p)):
                return f"generator {self.labels[i]}: p-th power of action is nonzero"
        for i in range(self.n):
            for j in range(i + 1, self.n):
                lhs = xf.mat_sub(fieldobj,
                                 xf.matmul(fieldobj, mats[i], mats[j]),
                                 xf.matmul(fieldobj, mats[j], mats[i]))
                rhs = xf.zeros(lhs.shape[0], lhs.shape[1])
                for k, c in self.bracket(i, j):
                    rhs = xf.mat_add(fieldobj, rhs,
                                     xf.mat_scale(fieldobj, fieldobj.scalar(c), mats[k]))
                if np.any(lhs != rhs):
                    return (f"bracket [{self.labels[i]}, {self.labels[j]}] "
                            "is violated by the action matrices")
        return None

    def tensor_generator_mats(self, fieldobj, mats_m, mats_n, dim_m, dim_n):
        # primitive coproduct: u acts as u (x) 1 + 1 (x) u
        im = xf.identity(dim_m)
        in_ = xf.identity(dim_n)
        return [xf.mat_add(fieldobj,
                           xf.kron(fieldobj, a, in_),
                           xf.kron(fieldobj, im, b))
                for a, b in zip(mats_m, mats_n)]

    def dual_generator_mats(self, fieldobj, mats):
        # antipode is -1 on the primitive generators
        return [xf.mat_neg(fieldobj, m.T.copy()) for m in mats]

    def socle_matrix(self, fieldobj, mats):
        """Action of the socle generator u_1^{p-1} ... u_n^{p-1}."""
        d = mats[0].shape[0]
        out = xf.identity(d)
        for m in mats:
            out = xf.matmul(fieldobj, out, xf.mat_pow(fieldobj, m, self.p - 1))
        return out

    def basis_monomials(self):
        """All p^n exponent tuples in lexicographic order, constant first."""
        out = [()]
        for _ in range(self.n):
            out = [m + (e,) for m in out for e in range(self.p)]
        return out

    def regular_generator_mats(self, cap=2**15):
        """Left-multiplication matrices of the generators on the PBW basis."""
        if self.dim > cap:
            raise CapExceeded(f"regular representation has dimension {self.dim}")
        basis = self.basis_monomials()
        index = {m: i for i, m in enumerate(basis)}
        mats = []
        for j in range(self.n):
            mat = xf.zeros(self.dim, self.dim)
            for col, m in enumerate(basis):
                for mm, c in self._gen_mul(j, m).items():
                    mat[index[mm], col] = c
            mats.append(mat)
        return mats

    def monomial_matrix(self, fieldobj, mats, mono):
        """Action of a basis monomial on a module with generator actions mats."""
        d = mats[0].shape[0]
        out = xf.identity(d)
        for i, e in enumerate(mono):
            for _ in range(e):
                out = xf.matmul(fieldobj, out, mats[i])
        return out

    def element_matrix(self, fieldobj, mats, elem):
        d = mats[0].shape[0]
        out = xf.zeros(d, d)
        for mono, c in elem.terms.items():
            out = xf.mat_add(fieldobj, out,
                             xf.mat_scale(fieldobj, fieldobj.scalar(c),
                                          self.monomial_matrix(fieldobj, mats, mono)))
        return out

    # -- serialization -------------------------------------------------------
    def to_json_dict(self):
        return {
            "p": self.p,
            "n": self.n,
            "brackets": {f"{i},{j}": [[k, c] for k, c in terms]
                         for (i, j), terms in sorted(self.brackets.items())},
            "ppowers": {},
            "labels": self.labels,
            "label": self.label,
            "heights": list(self.heights) if self.heights else None,
        }

    @classmethod
    def from_json_dict(cls, data):
        brackets = {}
        for key, terms in data["brackets"].items():
            i, j = (int(x) for x in key.split(","))
            brackets[(i, j)] = tuple((int(k), int(c)) for k, c in terms)
        return cls(data["p"], data["n"], brackets, labels=data.get("labels"),
                   heights=data.get("heights"), label=data.get("label", ""))

    def content_hash(self):
        blob = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __repr__(self):
        return f"PbwAlgebra({self.label}, dim {self.p}^{self.n})"


# ---------------------------------------------------------------------------
# builders


def build_restricted_enveloping(root_systems, p):
    """u(n) for the nilpotent radical of the Borel, one generator per positive
    root in ascending height order, brackets from the Chevalley constants
    reduced mod p, all p-th powers zero.

    Accepts one RootSystem or a list (direct sum of simple factors).
    Restrictedness of the reduced bracket table, (ad u_i)^p = 0 for every
    generator, is verified and is a hard build error when violated.
    """
    if p < 2 or not xf.is_prime(p):
        raise ValueError("characteristic must be a prime >= 2")
    systems = root_systems if isinstance(root_systems, (list, tuple)) else [root_systems]

    entries = []  # (height, component, root, component_index)
    for ci, rs in enumerate(systems):
        sc = structure_constants(rs)
        for ri, root in enumerate(rs.roots):
            entries.append((rs.heights[ri], ci, root, ri, sc, rs))
    entries.sort(key=lambda t: (t[0], t[1], t[2]))

    n = len(entries)
    labels = []
    heights = []
    roots = []
    for h, ci, root, ri, sc, rs in entries:
        tag = "" if len(systems) == 1 else f"#{ci+1}"
        labels.append("u[" + "+".join(
            f"{c}a{k+1}" if c > 1 else f"a{k+1}" for k, c in enumerate(root) if c) + tag + "]")
        heights.append(h)
        roots.append(root)

    index_of = {(ci, root): i for i, (h, ci, root, ri, sc, rs) in enumerate(entries)}
    brackets = {}
    for a, (ha, ca, ra, ia, sca, rsa) in enumerate(entries):
        for b in range(a + 1, n):
            hb, cb, rb, ib, scb, rsb = entries[b]
            if ca != cb:
                continue  # factors commute
            s = tuple(x + y for x, y in zip(ra, rb))
            if s in rsa._root_set:
                coeff = sca.constant(ia, ib) % p
                if coeff:
                    brackets[(a, b)] = ((index_of[(ca, s)], coeff),)

    label = "+".join(f"{rs.label}{rs.rank}" for rs in systems) + f"/p={p}"
    A = PbwAlgebra(p, n, brackets, labels=labels, roots=roots, heights=heights,
                   label=f"u({label})")

    # restrictedness: (ad u_i)^p = 0 on the span of the generators
    fp = xf.get_field(p)
    for i in range(n):
        ad = xf.zeros(n, n)
        for j in range(n):
            for k, c in A.bracket(i, j):
                ad[k, j] = c
        if np.any(xf.mat_pow(fp, ad, p)):
            raise RestrictednessViolation(
                f"(ad {labels[i]})^{p} != 0 mod {p} in {label}")
    return A


def build_elementary_abelian(p, rank):
    """Group algebra of an elementary abelian p-group of the given rank:
    commuting generators with vanishing p-th powers."""
    return PbwAlgebra(p, rank, {}, labels=[f"x{i+1}" for i in range(rank)],
                      heights=[1] * rank, label=f"elemab(p={p}, rank={rank})")


# ---------------------------------------------------------------------------
# divided powers


class DividedPowerAlgebra:
    """The p^r-dimensional divided-power algebra with basis g_0..g_{p^r-1},
    g_i g_j = binom(i+j, i) g_{i+j} (zero past the top).  Local, commutative,
    socle spanned by g_{p^r-1}.  Algebra generators: g_{p^i}, i < r."""

    def __init__(self, p, r):
        if p**r > DIVIDED_POWER_CAP:
            raise CapExceeded(f"p^r = {p**r} exceeds cap {DIVIDED_POWER_CAP}")
        self.p = int(p)
        self.r = int(r)
        self.dim = p**r
        self.gen_indices = tuple(p**i for i in range(r))
        self.labels = [f"g{p**i}" for i in range(r)]
        self.label = f"dist(p={p}, r={r})"

    @property
    def n(self):
        return self.r

    @property
    def num_generators(self):
        return self.r

    def basis_product(self, i, j):
        """(index, coeff) of g_i g_j, or None when it vanishes."""
        if i + j >= self.dim:
            return None
        c = binom_mod(i + j, i, self.p)
        return (i + j, c) if c else None

    def _digits(self, t):
        out = []
        for _ in range(self.r):
            out.append(t % self.p)
            t //= self.p
        return out

    def basis_action(self, fieldobj, mats, t):
        """Action of g_t from the generator actions: the digit product
        prod_i g_{p^i}^{t_i} equals (prod_i t_i!) g_t, and the scalar is a
        unit because every digit is < p."""
        d = mats[0].shape[0]
        out = xf.identity(d)
        unit = 1
        for i, ti in enumerate(self._digits(t)):
            if ti:
                out = xf.matmul(fieldobj, out, xf.mat_pow(fieldobj, mats[i], ti))
                unit = (unit * factorial_mod(ti, self.p)) % self.p
        inv = pow(unit, self.p - 2, self.p)
        return xf.mat_scale(fieldobj, fieldobj.scalar(inv), out)

    def validate_module(self, fieldobj, mats):
        p = self.p
        for i in range(self.r):
            if np.any(xf.mat_pow(fieldobj, mats[i], p)):
                return f"generator {self.labels[i]}: p-th power of action is nonzero"
        for i in range(self.r):
            for j in range(i + 1, self.r):
                ab = xf.matmul(fieldobj, mats[i], mats[j])
                ba = xf.matmul(fieldobj, mats[j], mats[i])
                if np.any(ab != ba):
                    return f"generators {self.labels[i]}, {self.labels[j]} do not commute"
        return None

    def tensor_generator_mats(self, fieldobj, mats_m, mats_n, dim_m, dim_n):
        # g_t acts on a tensor product by sum_j g_j (x) g_{t-j}
        out = []
        for gi in self.gen_indices:
            acc = xf.zeros(dim_m * dim_n, dim_m * dim_n)
            for j in range(gi + 1):
                left = self.basis_action(fieldobj, mats_m, j)
                right = self.basis_action(fieldobj, mats_n, gi - j)
                acc = xf.mat_add(fieldobj, acc, xf.kron(fieldobj, left, right))
            out.append(acc)
        return out

    def dual_generator_mats(self, fieldobj, mats):
        # antipode sends g_i to (-1)^i g_i
        out = []
        for gi, m in zip(self.gen_indices, mats):
            t = m.T.copy()
            out.append(t if gi % 2 == 0 else xf.mat_neg(fieldobj, t))
        return out

    def socle_matrix(self, fieldobj, mats):
        # g_{p^r-1} spans the socle; its digit product is a unit multiple
        return self.basis_action(fieldobj, mats, self.dim - 1)

    def regular_generator_mats(self, cap=2**15):
        mats = []
        for gi in self.gen_indices:
            mat = xf.zeros(self.dim, self.dim)
            for t in range(self.dim):
                prod = self.basis_product(gi, t)
                if prod is not None:
                    mat[prod[0], t] = prod[1]
            mats.append(mat)
        return mats

    def to_json_dict(self):
        return {"p": self.p, "r": self.r, "kind": "divided_power"}

    def content_hash(self):
        blob = json.dumps(self.to_json_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __repr__(self):
        return f"DividedPowerAlgebra(p={self.p}, r={self.r})"


def build_divided_power(p, r):
    """Dist(U_r) for the rank-one unipotent group, dimension p^r."""
    return DividedPowerAlgebra(p, r)


# ---------------------------------------------------------------------------
# hypothesis checkers


@dataclass
class HypothesisReport:
    """Per-clause verdicts for the PBW presentation checks."""

    algebra: str
    clauses: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def record(self, name, ok, witness=None):
        self.clauses[name] = bool(ok)
        if witness is not None:
            self.witnesses[name] = witness

    @property
    def passed(self):
        return all(self.clauses.values())

    def to_json_dict(self):
        return {"algebra": self.algebra, "passed": self.passed,
                "clauses": dict(self.clauses), "witnesses": dict(self.witnesses)}


def _monomial_in_tail_ideal(mono, i):
    """Monomial lies in the ideal generated by u_{i+1}..u_n."""
    return any(e for e in mono[i + 1:])


def check_hypothesis1(A, check_associativity=True):
    """Mechanical check of the PBW presentation clauses on a PbwAlgebra.

    Verifies by direct multiplication: every u_i^p = 0; u_i is central modulo
    the ideal generated by the later generators; u_n is central; the basis
    has size p^n with consistent straightening (associativity on all
    generator-pair-by-generator triples); and the annihilation identities
    u_j (u_s^{p-1} ... u_n^{p-1}) = 0 for all s <= j.
    """
    report = HypothesisReport(algebra=A.label)
    p, n = A.p, A.n
    gens = A.generators()

    ok = True
    witness = None
    for i in range(n):
        if not gens[i].power(p).is_zero:
            ok, witness = False, A.labels[i]
            break
    report.record("generator_pth_powers", ok, witness)

    ok = True
    witness = None
    for i in range(n - 1):
        for j in range(n):
            comm = gens[i] * gens[j] - gens[j] * gens[i]
            if any(not _monomial_in_tail_ideal(m, i) for m in comm.terms):
                ok, witness = False, (A.labels[i], A.labels[j])
                break
        if not ok:
            break
    report.record("centrality_mod_tail_ideals", ok, witness)

    ok = all((gens[n - 1] * gens[j] - gens[j] * gens[n - 1]).is_zero
             for j in range(n))
    report.record("top_generator_central", ok)

    ok = True
    witness = None
    if check_associativity:
        for a in range(n):
            for b in range(n):
                ab = gens[a] * gens[b]
                for c in range(n):
                    if not ((ab * gens[c]) - (gens[a] * (gens[b] * gens[c]))).is_zero:
                        ok, witness = False, (a, b, c)
                        break
                if not ok:
                    break
            if not ok:
                break
    report.record("dimension_p_power_n", ok,
                  witness if witness else f"dim = {p}^{n} on the straightened basis")

    ok = True
    witness = None
    for s in range(n):
        tail = tuple(0 if i < s else p - 1 for i in range(n))
        socle_tail = AlgebraElement(A, {tail: 1})
        for j in range(s, n):
            if not (gens[j] * socle_tail).is_zero:
                ok, witness = False, (A.labels[j], s + 1)
                break
        if not ok:
            break
    report.record("socle_annihilation", ok, witness)
    return report


@dataclass(frozen=True)
class LiftDisposition:
    """Outcome of the lift test for one coset representative.

    clause is 'a' (x^p = 0, lifts to a p-point), 'b' (x^p = y u_n with y a
    unit), or 'neither' (witness records x^p or the non-unit cofactor)."""

    clause: str
    witness: str = ""


def check_hypothesis3_lift(A, x):
    """Classify a coset representative of a p-point of A/(A u_n)."""
    xp = x.power(A.p)
    if xp.is_zero:
        return LiftDisposition("a")
    top = A.n - 1
    if all(m[top] >= 1 for m in xp.terms):
        # divide by the central u_n
        y = {m[:top] + (m[top] - 1,): c for m, c in xp.terms.items()}
        const = y.get((0,) * A.n, 0)
        if const % A.p:
            return LiftDisposition("b", witness=f"unit constant term {const}")
        return LiftDisposition("neither", witness="cofactor of u_n is not a unit")
    return LiftDisposition("neither", witness=f"x^p = {xp!r} is not in A*u_n")


def hypothesis3_sweep(A, include_non_points=False):
    """Run the lift test over all nonzero projective coset representatives
    x = sum a_i u_i, i < n, with coefficients in the prime field.

    Representatives whose class is not a p-point of the quotient (x^p not in
    A u_n) are skipped unless include_non_points is set.
    """
    p, n = A.p, A.n
    results = []
    top = n - 1

    def vectors():
        # first nonzero coordinate = 1: projective representatives
        for lead in range(top):
            tail = top - lead - 1
            for rest in range(p**tail):
                coeffs = [0] * lead + [1]
                rr = rest
                for _ in range(tail):
                    coeffs.append(rr % p)
                    rr //= p
                yield tuple(coeffs) + (0,)

    for coeffs in vectors():
        x = A.element(coeffs)
        xp = x.power(p)
        is_point = xp.is_zero or all(m[top] >= 1 for m in xp.terms)
        if not is_point:
            if include_non_points:
                results.append((coeffs, LiftDisposition("not_a_p_point")))
            continue
        results.append((coeffs, check_hypothesis3_lift(A, x)))
    return results
