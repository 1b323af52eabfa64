"""The restricted nullcone V(A) = {[a] : (sum a_i u_i)^p = 0}, its projection
V^(A) forgetting the central coordinate, rational points, and connectedness
certificates.

Equations are the basis coefficients of the symbolic p-th power, computed by
the same straightening that multiplies ordinary elements, with sparse
polynomial coefficients over F_p.  Connectedness over F_{p^e} is decided on
the line graph (edge = the whole projective line lies in the variety).  When
the ambient point count is un-enumerable and p >= 3, a star certificate in
the spirit of the height argument applies: every line a*v + b*u_{n-1} stays
in the variety because all mixed p-fold Lie words land above the maximal
height, so the point of u_{n-1} is a hub for the whole variety.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded
from .exactfield import get_field

SYMBOLIC_CAP = 26  # ambient variables cap for symbolic p-th powers
GRAPH_POINT_CAP = 1 << 23  # ambient projective points enumerable directly

_VARS = "abcdefghijklmnopqrstuvwxyz"


class PolyFp:
    """Sparse multivariate polynomial over F_p: exponent tuple -> coeff."""

    __slots__ = ("p", "nvars", "terms")

    def __init__(self, p, nvars, terms=None):
        self.p = p
        self.nvars = nvars
        self.terms = dict(terms or {})

    @classmethod
    def variable(cls, p, nvars, i):
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(p, nvars, {exp: 1})

    @classmethod
    def constant(cls, p, nvars, c):
        c = int(c) % p
        return cls(p, nvars, {(0,) * nvars: c} if c else {})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return PolyFp(self.p, self.nvars, out)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = (out.get(m, 0) + c1 * c2) % self.p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return PolyFp(self.p, self.nvars, out)

    def scale(self, c):
        c = int(c) % self.p
        if c == 0:
            return PolyFp(self.p, self.nvars)
        return PolyFp(self.p, self.nvars,
                      {m: (c * v) % self.p for m, v in self.terms.items()})

    @property
    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {sum(m) for m in self.terms}

    def involves(self, i):
        return any(m[i] for m in self.terms)

    def evaluate(self, field, point):
        """Evaluate at a tuple of field codes (table arithmetic)."""
        total = 0
        for mono, c in self.terms.items():
            val = field.scalar(c)
            for i, e in enumerate(mono):
                for _ in range(e):
                    val = int(field.mul[val, point[i]])
                    if val == 0:
                        break
                if val == 0:
                    break
            total = int(field.add[total, val])
        return total

    def normalized(self):
        """Scale so the leading monomial (max lex exponent) has coefficient 1."""
        if not self.terms:
            return self
        lead = max(self.terms)
        inv = pow(self.terms[lead], self.p - 2, self.p)
        return self.scale(inv)

    def sort_key(self):
        return tuple(sorted(self.terms.items(), reverse=True))

    def __eq__(self, other):
        return (isinstance(other, PolyFp) and self.p == other.p
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            name = "".join(
                (_VARS[i] if self.nvars <= 26 else f"a{i+1}") * e
                for i, e in enumerate(mono))
            parts.append(name if c == 1 and name else f"{c}{name}" if name else str(c))
        return " + ".join(parts)


class _PolyRing:
    """Adapter giving PbwAlgebra.multiply symbolic coefficients."""

    def __init__(self, p, nvars):
        self.p = p
        self.nvars = nvars

    def zero(self):
        return PolyFp(self.p, self.nvars)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def scale_int(self, c, a):
        return a.scale(c)

    def is_zero(self, a):
        return a.is_zero


@dataclass(frozen=True)
class NullconeVariety:
    """Homogeneous degree-p equations of V(A) in the coefficients a_1..a_n."""

    nvars: int
    p: int
    polys: tuple

    def normalized_strings(self):
        """Canonical printable forms (leading coefficient 1, sorted)."""
        normed = [q.normalized() for q in self.polys]
        return tuple(sorted(str(q) for q in normed))

    def involves_top(self):
        return any(q.involves(self.nvars - 1) for q in self.polys)

    def to_json_dict(self):
        return {"nvars": self.nvars, "p": self.p,
                "equations": list(self.normalized_strings())}


def nullcone_equations(A, cap=SYMBOLIC_CAP):
    """Equations of V(A): nonzero basis coefficients of the symbolic p-th
    power of sum a_i u_i, computed by straightening with polynomial scalars.

    The result never involves the top coordinate (the top generator is
    central with vanishing p-th power); this is verified, not assumed."""
    cached = getattr(A, "_nullcone_equations", None)
    if cached is not None:
        return cached
    n = A.n
    if n > cap:
        raise CapExceeded(f"symbolic p-th power with {n} variables exceeds cap {cap}")
    p = A.p
    ring = _PolyRing(p, n)
    sym = {}
    for i in range(n):
        exp = [0] * n
        exp[i] = 1
        sym[tuple(exp)] = PolyFp.variable(p, n, i)
    power = {(0,) * n: PolyFp.constant(p, n, 1)}
    for _ in range(p):
        power = A.multiply(power, sym, ring=ring)
    polys = tuple(power[m] for m in sorted(power))
    variety = NullconeVariety(nvars=n, p=p, polys=polys)
    for q in polys:
        if q.degrees() - {p}:
            raise AssertionError("nullcone equation of unexpected degree")
    if variety.involves_top():
        raise AssertionError("equations unexpectedly involve the central coordinate")
    A._nullcone_equations = variety
    return variety


# ---------------------------------------------------------------------------
# rational points


def _projective_reps(field, nvars):
    """Canonical projective representatives (first nonzero coordinate 1),
    deterministic order."""
    q = field.q
    for lead in range(nvars):
        tail = nvars - lead - 1
        for combo in itertools.product(range(q), repeat=tail):
            yield (0,) * lead + (1,) + combo


def nullcone_points(A, e=1, cap=GRAPH_POINT_CAP):
    """Projective F_{p^e}-points of V(A), canonical representatives in
    deterministic order."""
    field = get_field(A.p, e)
    n = A.n
    total = (field.q**n - 1) // (field.q - 1)
    if total > cap:
        raise CapExceeded(f"{total} ambient points exceed the cap {cap}")
    eqs = nullcone_equations(A)
    pts = []
    for rep in _projective_reps(field, n):
        if all(q.evaluate(field, rep) == 0 for q in eqs.polys):
            pts.append(rep)
    return pts


def projected_points(A, e=1, cap=GRAPH_POINT_CAP):
    """F_q-points of V^(A) in P^{n-2}: the equations do not involve the last
    coordinate, so the projection satisfies the same equations in one fewer
    variable."""
    field = get_field(A.p, e)
    n = A.n
    total = (field.q**(n - 1) - 1) // (field.q - 1)
    if total > cap:
        raise CapExceeded(f"{total} ambient points exceed the cap {cap}")
    eqs = nullcone_equations(A)
    pts = []
    for rep in _projective_reps(field, n - 1):
        full = rep + (0,)
        if all(q.evaluate(field, full) == 0 for q in eqs.polys):
            pts.append(rep)
    return pts


def _affine_membership(A, field, nv):
    """Boolean table over all q^nv affine coefficient vectors: does
    v_a^p = 0 hold (the zero vector is excluded)."""
    q = field.q
    size = q**nv
    codes = np.arange(size, dtype=np.int64)
    digits = np.empty((size, nv), dtype=np.int64)
    tmp = codes.copy()
    for i in range(nv):
        digits[:, i] = tmp % q
        tmp //= q
    eqs = nullcone_equations(A)
    ok = np.ones(size, dtype=bool)
    for poly in eqs.polys:
        acc = np.zeros(size, dtype=np.int64)
        for mono, c in poly.terms.items():
            term = np.full(size, field.scalar(c), dtype=np.int64)
            for i, e_ in enumerate(mono):
                if e_ and i < nv:
                    col = digits[:, i]
                    for _ in range(e_):
                        term = field.mul[term, col]
                elif e_:  # pragma: no cover - never involves the top coordinate
                    term[:] = 0
            acc = field.add[acc, term]
        ok &= acc == 0
    ok[0] = False
    return ok, digits


@dataclass(frozen=True)
class ComponentReport:
    """Connectedness data for V^(A) over F_{p^e}.

    method is "line-graph" (points enumerated, components of the graph whose
    edges are projective lines inside the variety) or "hub-star" (the p >= 3
    certificate: every point is line-connected to the next-to-top generator
    point, so there is one component; points are not enumerated).  The line
    graph is a finite proxy for Zariski connectedness: one component over
    F_{p^e} is a witness for the connected case, and reports carry e so the
    proxy's one-sidedness stays visible."""

    algebra: str
    p: int
    e: int
    num_points: object
    num_components: int
    representatives: tuple
    method: str

    def to_json_dict(self):
        return {
            "algebra": self.algebra, "p": self.p, "e": self.e,
            "num_points": self.num_points, "num_components": self.num_components,
            "representatives": [list(r) for r in self.representatives],
            "method": self.method,
        }


def _gf2_components(A):
    """Bitmask line-graph components over F_2 (x ~ y iff x ^ y in the variety);
    vectorized for the large rank-3/4 sweeps.  Returns (count, reps, points)."""
    n = A.n
    nv = n - 1
    eqs = nullcone_equations(A)
    size = 1 << nv
    pts = np.arange(1, size, dtype=np.uint64)
    member = np.ones(pts.shape[0], dtype=bool)
    for q in eqs.polys:
        acc = np.zeros(pts.shape[0], dtype=np.uint64)
        for mono, c in q.terms.items():
            if c % 2 == 0:
                continue
            term = np.ones(pts.shape[0], dtype=np.uint64)
            for i, e_ in enumerate(mono):
                if e_ and i < nv:
                    term &= (pts >> np.uint64(i)) & np.uint64(1)
                elif e_:  # pragma: no cover - equations never involve the top
                    term[:] = 0
            acc ^= term
        member &= acc == 0
    in_variety = np.zeros(size, dtype=bool)
    in_variety[1:] = member
    points = np.nonzero(in_variety)[0].astype(np.uint64)
    if points.size == 0:
        return 0, [], 0
    unseen = in_variety.copy()
    components = 0
    reps = []
    while True:
        remaining = points[unseen[points]]
        if remaining.size == 0:
            break
        seed = remaining[0]
        components += 1
        reps.append(seed)
        unseen[seed] = False
        frontier = np.array([seed], dtype=np.uint64)
        while frontier.size:
            nxt = []
            remaining = points[unseen[points]]
            for f in frontier:
                if remaining.size == 0:
                    break
                # edge f ~ y iff the third point of the line, f ^ y, is in V
                mask = in_variety[remaining ^ f]
                hits = remaining[mask]
                if hits.size:
                    unseen[hits] = False
                    nxt.append(hits)
                    remaining = remaining[~mask]
            frontier = np.concatenate(nxt) if nxt else np.array([], dtype=np.uint64)
    rep_tuples = [tuple(int(r >> np.uint64(i)) & 1 for i in range(nv)) for r in reps]
    return components, rep_tuples, int(points.size)


def _generic_components(A, field):
    """Line-graph components over F_q for any q, via the affine membership
    table: [x] ~ [y] iff x + t y is in the variety for every t (the whole
    projective line)."""
    nv = A.n - 1
    q = field.q
    ok, digits = _affine_membership(A, field, nv)
    weights = q ** np.arange(nv, dtype=np.int64)

    pts_codes = np.nonzero(ok)[0]
    # canonical projective representatives: first nonzero digit equals 1
    first_val = np.zeros(pts_codes.size, dtype=np.int64)
    found = np.zeros(pts_codes.size, dtype=bool)
    for i in range(nv):
        col = digits[pts_codes, i]
        newly = (~found) & (col != 0)
        first_val[newly] = col[newly]
        found |= newly
    reps_codes = pts_codes[first_val == 1]
    rep_digits = digits[reps_codes]
    m = reps_codes.size
    if m == 0:
        return 0, [], 0

    unseen = np.ones(m, dtype=bool)
    components = 0
    out_reps = []
    while unseen.any():
        seed = int(np.nonzero(unseen)[0][0])
        components += 1
        out_reps.append(tuple(int(x) for x in rep_digits[seed]))
        unseen[seed] = False
        frontier = [seed]
        while frontier:
            nxt = []
            rem_idx = np.nonzero(unseen)[0]
            for fi in frontier:
                if rem_idx.size == 0:
                    break
                Y = rep_digits[rem_idx]
                fvec = rep_digits[fi][None, :]
                mask = np.ones(rem_idx.size, dtype=bool)
                for t in range(1, q):
                    Z = field.add[field.mul[t, Y], fvec]
                    mask &= ok[Z @ weights]
                    if not mask.any():
                        break
                hits = rem_idx[mask]
                if hits.size:
                    unseen[hits] = False
                    nxt.extend(int(h) for h in hits)
                    rem_idx = rem_idx[~mask]
            frontier = nxt
    return components, out_reps, m


def _hub_star_applicable(A):
    """Mechanical validity conditions for the p >= 3 hub certificate.

    Every word of p letters with at least one u_{n-1} factor has weight
    height at least (next-to-top height) + (p-1), and the certificate needs
    that to exceed the maximal height; the p-th power of a Lie element lies
    in the Lie span, so such mixed terms vanish identically."""
    if A.p < 3 or A.heights is None or A.n < 2:
        return False
    hmax = max(A.heights)
    h2 = sorted(A.heights)[-2]
    hmin = min(A.heights)
    if A.heights.count(hmax) != 1:
        return False
    return h2 + (A.p - 1) * hmin > hmax


GENERIC_GRAPH_CAP = 20000  # projective ambient cap for the table-driven graph


def connectedness_certificate(A, e=1, point_cap=GRAPH_POINT_CAP):
    """Component count of the line graph on the F_{p^e}-points of V^(A).

    Enumerates and builds the graph whenever the ambient projective space is
    enumerable (bit-packed over F_2, table-driven otherwise); for larger
    ambients the p >= 3 hub-star certificate applies.  Raises CapExceeded
    when neither route is available."""
    field = get_field(A.p, e)
    n = A.n
    total = (field.q**(n - 1) - 1) // (field.q - 1)
    if A.p == 2 and e == 1 and total <= point_cap:
        comps, reps, npts = _gf2_components(A)
        return ComponentReport(algebra=A.label, p=A.p, e=e, num_points=npts,
                               num_components=comps, representatives=tuple(reps),
                               method="line-graph")
    if total <= GENERIC_GRAPH_CAP:
        comps, reps, npts = _generic_components(A, field)
        return ComponentReport(algebra=A.label, p=A.p, e=e, num_points=npts,
                               num_components=comps, representatives=tuple(reps),
                               method="line-graph")
    if _hub_star_applicable(A):
        hub = tuple(1 if i == n - 2 else 0 for i in range(n - 1))
        return ComponentReport(algebra=A.label, p=A.p, e=e, num_points=None,
                               num_components=1, representatives=(hub,),
                               method="hub-star")
    if field.q**(n - 1) <= 2**20:  # memory-bound fallback for odd shapes
        comps, reps, npts = _generic_components(A, field)
        return ComponentReport(algebra=A.label, p=A.p, e=e, num_points=npts,
                               num_components=comps, representatives=tuple(reps),
                               method="line-graph")
    raise CapExceeded(
        f"{total} ambient points exceed the cap and no certificate applies")
