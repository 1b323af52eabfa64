"""Root systems of the simple types, heights, Chevalley structure constants,
and the Weyl dimension formula.

Conventions: Bourbaki simple-root numbering throughout; positive roots are
integer coefficient vectors over the simple roots, sorted by height and then
by ascending coefficient tuple (also the tie-break used for the top-roots
table).  Structure constants are computed over the integers with the
extraspecial-pair sign convention (extraspecial constants positive).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InvalidType, NotDominant, RankTooSmall

#: classical positive-root counts, used as a construction invariant
_POSITIVE_ROOT_COUNTS = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "E": lambda l: {6: 36, 7: 63, 8: 120}[l],
    "F": lambda l: 24,
    "G": lambda l: 6,
}

_RANK_RANGE = {
    "A": (1, 8),
    "B": (2, 8),
    "C": (3, 8),
    "D": (4, 8),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def _cartan_and_symmetrizer(label, rank):
    """Cartan matrix C[i][j] = <alpha_j, alpha_i^vee> and symmetrizer d.

    d_i is half the squared length of alpha_i in the smallest integer
    normalization, so diag(d) @ C is the (scaled) invariant form.
    """
    C = 2 * np.eye(rank, dtype=np.int64)

    def bond(i, j):  # simply-laced edge
        C[i, j] = C[j, i] = -1

    if label in ("A", "B", "C", "D", "F"):
        chain = rank if label != "D" else rank - 1
        for i in range(chain - 1):
            bond(i, i + 1)
    if label == "A":
        d = [1] * rank
    elif label == "B":
        # alpha_rank short
        d = [2] * (rank - 1) + [1]
        C[rank - 1, rank - 2] = -2
        C[rank - 2, rank - 1] = -1
    elif label == "C":
        # alpha_rank long
        d = [1] * (rank - 1) + [2]
        C[rank - 1, rank - 2] = -1
        C[rank - 2, rank - 1] = -2
    elif label == "D":
        d = [1] * rank
        bond(rank - 3, rank - 1)
    elif label == "E":
        d = [1] * rank
        C[:, :] = 2 * np.eye(rank, dtype=np.int64)
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        if rank >= 7:
            edges.append((5, 6))
        if rank == 8:
            edges.append((6, 7))
        for i, j in edges:
            bond(i, j)
    elif label == "F":
        d = [2, 2, 1, 1]
        C[2, 1] = -2
        C[1, 2] = -1
    elif label == "G":
        # alpha_1 short, alpha_2 long
        d = [1, 3]
        C[0, 1] = -3
        C[1, 0] = -1
    else:  # pragma: no cover
        raise InvalidType(label)
    return C, tuple(d)


@dataclass(frozen=True)
class RootSystem:
    """Positive roots of a simple type, with pairing data.

    roots are coefficient tuples over the simple roots, sorted by
    (height, tuple); coroots[i] is the integer coefficient vector of
    roots[i]^vee over the simple coroots.
    """

    label: str
    rank: int
    cartan: tuple
    sym: tuple
    roots: tuple
    heights: tuple
    coroots: tuple

    @property
    def num_positive(self):
        return len(self.roots)

    def index(self, root):
        return self.roots.index(tuple(root))

    def is_root(self, vec):
        return tuple(vec) in self._root_set

    @property
    def _root_set(self):
        return set(self.roots)

    def height(self, root):
        return sum(root)

    def pairing(self, weight, root_index):
        """<weight, beta^vee> for a weight in fundamental coordinates."""
        cov = self.coroots[root_index]
        return sum(w * c for w, c in zip(weight, cov))

    def norm2(self, vec):
        """Scaled squared length (consistent within the system)."""
        B = [[self.sym[i] * self.cartan[i][j] for j in range(self.rank)]
             for i in range(self.rank)]
        return sum(vec[i] * vec[j] * B[i][j]
                   for i in range(self.rank) for j in range(self.rank))

    def to_json_dict(self):
        return {
            "type": self.label,
            "rank": self.rank,
            "positive_roots": [list(r) for r in self.roots],
            "heights": list(self.heights),
        }

    def __repr__(self):
        return f"RootSystem({self.label}{self.rank}, {self.num_positive} positive roots)"


@lru_cache(maxsize=None)
def build_root_system(label, rank):
    """Generate all positive roots of the given simple type.

    Roots come back sorted by height then lexicographically; the count is
    checked against the classical value for the type.
    """
    label = str(label).upper()
    if label not in _RANK_RANGE:
        raise InvalidType(f"unknown type {label!r}")
    lo, hi = _RANK_RANGE[label]
    rank = int(rank)
    if not lo <= rank <= hi:
        raise InvalidType(f"{label}{rank} is not a valid simple type here")

    C, d = _cartan_and_symmetrizer(label, rank)
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(rank):
                # alpha_i-string through beta: down-length minus pairing
                pairing = sum(beta[j] * C[i][j] for j in range(rank))
                down = 0
                k = 1
                while True:
                    probe = tuple(b - k * s for b, s in zip(beta, simple[i]))
                    if probe in found or tuple(-x for x in probe) in found:
                        down = k
                        k += 1
                    else:
                        break
                if down - pairing >= 1:
                    up = tuple(b + s for b, s in zip(beta, simple[i]))
                    if up not in found:
                        found.add(up)
                        new.append(up)
        frontier = new

    roots = sorted(found, key=lambda r: (sum(r), r))
    expected = _POSITIVE_ROOT_COUNTS[label](rank)
    if len(roots) != expected:  # pragma: no cover
        raise AssertionError(f"{label}{rank}: got {len(roots)} roots, expected {expected}")
    heights = tuple(sum(r) for r in roots)
    if heights.count(max(heights)) != 1:  # pragma: no cover
        raise AssertionError("maximal-height root is not unique")

    # coroot coefficients: beta^vee = sum_j c_j d_j / d_beta alpha_j^vee
    B = [[d[i] * C[i][j] for j in range(rank)] for i in range(rank)]
    coroots = []
    for r in roots:
        n2 = sum(r[i] * r[j] * B[i][j] for i in range(rank) for j in range(rank))
        dbeta = Fraction(n2, 2)
        cov = tuple(Fraction(r[j] * d[j]) / dbeta for j in range(rank))
        if any(c.denominator != 1 for c in cov):  # pragma: no cover
            raise AssertionError("non-integral coroot coefficients")
        coroots.append(tuple(int(c) for c in cov))

    return RootSystem(
        label=label,
        rank=rank,
        cartan=tuple(tuple(int(x) for x in row) for row in C),
        sym=d,
        roots=tuple(roots),
        heights=heights,
        coroots=tuple(coroots),
    )


def top_three_roots(rs):
    """The three positive roots of greatest height, in ascending order.

    Ties at next-to-maximal height are broken by the coefficient-tuple order
    used throughout; only the set matters downstream.
    """
    if rs.rank < 2:
        raise RankTooSmall("need rank >= 2 for the top-roots table")
    return tuple(rs.roots[-3:])


def weyl_dimension(rs, weight):
    """dim H^0(weight) by Weyl's dimension formula, exact.

    weight is given in fundamental-weight coordinates and must be dominant.
    """
    weight = tuple(int(w) for w in weight)
    if len(weight) != rs.rank:
        raise NotDominant(f"weight has {len(weight)} coordinates, rank is {rs.rank}")
    if any(w < 0 for w in weight):
        raise NotDominant(f"weight {weight} is not dominant")
    num = 1
    den = 1
    for i in range(rs.num_positive):
        cov = rs.coroots[i]
        num *= sum((w + 1) * c for w, c in zip(weight, cov))
        den *= sum(cov)
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------------------
# structure constants


@dataclass(frozen=True)
class StructureConstants:
    """Integer constants N[i,j] with [e_i, e_j] = N[i,j] e_k when
    root_i + root_j = root_k; antisymmetric, zero when the sum is not a root."""

    system: RootSystem
    table: dict

    def constant(self, i, j):
        if i == j:
            return 0
        if (i, j) in self.table:
            return self.table[(i, j)]
        if (j, i) in self.table:
            return -self.table[(j, i)]
        return 0

    def bracket_target(self, i, j):
        s = tuple(a + b for a, b in zip(self.system.roots[i], self.system.roots[j]))
        return self.system.index(s) if s in self.system._root_set else None


def _down_string(root_set, xi, eta):
    """Largest k with eta - k*xi a root (positive or negative)."""
    k = 0
    while True:
        probe = tuple(e - (k + 1) * x for e, x in zip(eta, xi))
        if probe in root_set or tuple(-c for c in probe) in root_set:
            k += 1
        else:
            return k


@lru_cache(maxsize=None)
def structure_constants(rs):
    """Chevalley structure constants over Z by the extraspecial-pair method.

    For each non-simple positive root the special pair with minimal first
    member gets the positive constant (string length + 1); every other pair
    is forced by the four-root Jacobi relation.  Antisymmetry, the magnitude
    law |N| = p+1, and the Jacobi identity are exercised by the test suite.
    """
    roots = rs.roots
    pos = {r: i for i, r in enumerate(roots)}
    root_set = set(roots)

    def norm2(vec):
        return rs.norm2(vec)

    table = {}  # keyed by (xi_root, eta_root) with pos[xi] < pos[eta]

    def n_positive(x, y):
        if (x, y) in table:
            return table[(x, y)]
        if (y, x) in table:
            return -table[(y, x)]
        return Fraction(0)

    def n_full(x, y):
        z = tuple(a + b for a, b in zip(x, y))
        if z not in root_set and tuple(-c for c in z) not in root_set:
            return Fraction(0)
        xpos = x in root_set
        ypos = y in root_set
        if xpos and ypos:
            return n_positive(x, y)
        if not xpos and not ypos:
            return -n_full(tuple(-c for c in x), tuple(-c for c in y))
        if not xpos:
            return -n_full(y, x)
        # x positive, y negative; triple (x, y, -z) sums to zero
        if z in root_set:
            # N_{x,y} = -(z,z)/(x,x) * N_{-y, z}
            return -Fraction(norm2(z), norm2(x)) * n_full(tuple(-c for c in y), z)
        # z negative: N_{x,y} = (z,z)/(y,y) * N_{-z, x}
        return Fraction(norm2(z), norm2(tuple(-c for c in y))) * \
            n_full(tuple(-c for c in z), x)

    for gamma in roots:
        if sum(gamma) < 2:
            continue
        pairs = []
        for xi in roots:
            eta = tuple(g - x for g, x in zip(gamma, xi))
            if eta in root_set and pos[xi] < pos[eta]:
                pairs.append((xi, eta))
        pairs.sort(key=lambda pair: pos[pair[0]])
        if not pairs:  # pragma: no cover
            raise AssertionError("non-simple root with no special pair")
        alpha, beta = pairs[0]
        table[(alpha, beta)] = Fraction(_down_string(root_set, alpha, beta) + 1)
        for xi, eta in pairs[1:]:
            neg = lambda v: tuple(-c for c in v)
            bmx = tuple(b - x for b, x in zip(beta, xi))
            amx = tuple(a - x for a, x in zip(alpha, xi))
            t1 = Fraction(0)
            if bmx in root_set or neg(bmx) in root_set:
                t1 = n_full(beta, neg(xi)) * n_full(alpha, neg(eta)) / norm2(bmx)
            t2 = Fraction(0)
            if amx in root_set or neg(amx) in root_set:
                t2 = n_full(neg(xi), alpha) * n_full(beta, neg(eta)) / norm2(amx)
            val = Fraction(norm2(gamma)) / table[(alpha, beta)] * (t1 + t2)
            table[(xi, eta)] = val

    out = {}
    for (x, y), v in table.items():
        if v.denominator != 1:  # pragma: no cover
            raise AssertionError("non-integral structure constant")
        out[(pos[x], pos[y])] = int(v)
    return StructureConstants(system=rs, table=out)
