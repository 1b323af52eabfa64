"""Exact arithmetic over F_{p^e} and the dense matrix kernels everything else uses.

Scalars are integer codes 0..q-1, q = p^e: the base-p digits of a code are the
coefficients (constant term first) of a polynomial residue modulo a fixed
irreducible modulus.  The modulus for each (p, e) is the lexicographically
least irreducible monic polynomial, ordered by ascending coefficient tuple
(c_0, c_1, ..., c_{e-1}); with that convention field elements, and therefore
every enumeration downstream, are reproducible across runs.

Arithmetic is table driven (q x q add/mul tables, q-entry neg/inv tables),
which keeps prime fields and small extensions on one code path.  Matrix
kernels are exact; float64 BLAS is used internally for prime-field matrix
multiplication only where the integer result provably fits in the 53-bit
mantissa.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotNilpotentOfOrderP

# Largest extension field we will build tables for.  Scans in this package
# stay at q <= 125; the cap only guards against accidental huge requests.
MAX_FIELD_SIZE = 1024


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers on coefficient tuples (constant term first), used only
# while building field tables


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mulmod(a, b, modulus, p):
    # modulus is monic of degree e; a, b have degree < e
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1 if a and b else 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                prod[i + j] = (prod[i + j] + ca * cb) % p
    # reduce: x^e = -(modulus without leading term)
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for j in range(e):
                prod[deg - e + j] = (prod[deg - e + j] - c * modulus[j]) % p
    return _poly_trim(prod[:e])


def _poly_divisible(poly, div, p):
    # exact division test for monic div
    rem = list(poly)
    dd = len(div) - 1
    inv_lead = pow(div[-1], p - 2, p)
    while len(_poly_trim(rem)) - 1 >= dd:
        rem = list(_poly_trim(rem))
        deg = len(rem) - 1
        c = (rem[deg] * inv_lead) % p
        for j in range(dd + 1):
            rem[deg - dd + j] = (rem[deg - dd + j] - c * div[j]) % p
    return len(_poly_trim(rem)) == 0


def _monic_polys(p, degree):
    # ascending lex on (c_0, ..., c_{degree-1})
    def rec(prefix, k):
        if k == degree:
            yield tuple(prefix) + (1,)
            return
        for c in range(p):
            yield from rec(prefix + [c], k + 1)

    yield from rec([], 0)


def minimal_irreducible(p, e):
    """Lexicographically least monic irreducible of degree e over F_p.

    Irreducibility is checked by brute force: no monic divisor of degree
    1..e//2.  Fine for the small e used here.
    """
    if e == 1:
        return (0, 1)  # the polynomial x; unused, kept for uniformity
    divisors = []
    for d in range(1, e // 2 + 1):
        divisors.extend(_monic_polys(p, d))
    for cand in _monic_polys(p, e):
        if all(not _poly_divisible(cand, div, p) for div in divisors):
            return cand
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class Field:
    """The finite field F_{p^e} with table-driven arithmetic on integer codes."""

    def __init__(self, p, e=1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**e
        if q > MAX_FIELD_SIZE:
            raise ValueError(f"field size {q} exceeds cap {MAX_FIELD_SIZE}")
        self.p = p
        self.e = e
        self.q = q
        self.modulus = minimal_irreducible(p, e)

        codes = [self._decode(c) for c in range(q)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            pa = codes[a]
            for b in range(a, q):
                pb = codes[b]
                s = self._encode(
                    tuple((x + y) % p for x, y in self._zip(pa, pb)))
                m = self._encode(_poly_mulmod(pa, pb, self.modulus, p))
                add[a, b] = add[b, a] = s
                mul[a, b] = mul[b, a] = m
        self.add = add
        self.mul = mul
        self.neg = np.array(
            [self._encode(tuple((-x) % p for x in codes[a])) for a in range(q)],
            dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            # brute-force inverse from the multiplication table
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.inv = inv

    @staticmethod
    def _zip(a, b):
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return zip(a, b)

    def _decode(self, code):
        digits = []
        while code:
            digits.append(code % self.p)
            code //= self.p
        return tuple(digits)

    def _encode(self, poly):
        code = 0
        for c in reversed(_poly_trim(poly)):
            code = code * self.p + c
        return code

    # scalar helpers ------------------------------------------------------
    def scalar(self, n):
        """Embed an integer (element of the prime subfield) as a code."""
        return int(n) % self.p

    def sub(self, a, b):
        return int(self.add[a, self.neg[b]])

    def power(self, a, n):
        r, b = 1, int(a)
        n = int(n)
        while n:
            if n & 1:
                r = int(self.mul[r, b])
            b = int(self.mul[b, b])
            n >>= 1
        return r

    def elements(self):
        return range(self.q)

    def __repr__(self):
        return f"GF({self.p}^{self.e})" if self.e > 1 else f"GF({self.p})"

    def describe(self):
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


@lru_cache(maxsize=None)
def get_field(p, e=1):
    return Field(p, e)


# ---------------------------------------------------------------------------
# matrix kernels on integer-code numpy arrays


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n):
    return np.eye(n, dtype=np.int64)


def mat_add(field, a, b):
    if field.e == 1:
        return (a + b) % field.p
    return field.add[a, b]


def mat_sub(field, a, b):
    if field.e == 1:
        return (a - b) % field.p
    return field.add[a, field.neg[b]]


def mat_neg(field, a):
    if field.e == 1:
        return (-a) % field.p
    return field.neg[a]


def mat_scale(field, c, a):
    c = int(c)
    if field.e == 1:
        return (a * c) % field.p
    return field.mul[c, a]


def matmul(field, a, b):
    if field.e == 1:
        # exact: entries < p, inner dimension k gives values <= k(p-1)^2 << 2^53
        prod = np.rint(a.astype(np.float64) @ b.astype(np.float64))
        return prod.astype(np.int64) % field.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        out = field.add[out, field.mul[a[:, k][:, None], b[k, :][None, :]]]
    return out


def matvec(field, a, v):
    if field.e == 1:
        return (a @ v) % field.p
    out = np.zeros(a.shape[0], dtype=np.int64)
    for k in range(a.shape[1]):
        if v[k]:
            out = field.add[out, field.mul[a[:, k], v[k]]]
    return out


def mat_pow(field, a, n):
    result = identity(a.shape[0])
    base = a
    while n:
        if n & 1:
            result = matmul(field, result, base)
        base = matmul(field, base, base)
        n >>= 1
    return result


def kron(field, a, b):
    if field.e == 1:
        return np.kron(a, b) % field.p
    out = field.mul[a[:, None, :, None], b[None, :, None, :]]
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def _rank_gf2_packed(a):
    """GF(2) rank via bit-packed XOR elimination (fast path for big matrices)."""
    rows, cols = a.shape
    words = (cols + 63) // 64
    packed = np.zeros((rows, words), dtype=np.uint64)
    bits = a.astype(np.uint64)
    for w in range(words):
        lo, hi = 64 * w, min(64 * w + 64, cols)
        for j in range(lo, hi):
            packed[:, w] |= bits[:, j] << np.uint64(j - lo)
    r = 0
    for c in range(cols):
        w, s = divmod(c, 64)
        col = (packed[r:, w] >> np.uint64(s)) & np.uint64(1)
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            packed[[r, pr]] = packed[[pr, r]]
        hits = r + 1 + np.nonzero((packed[r + 1:, w] >> np.uint64(s)) & np.uint64(1))[0]
        if hits.size:
            packed[hits] ^= packed[r]
        r += 1
        if r == rows:
            break
    return r


def row_echelon(field, a, reduced=True):
    """Row-reduce a matrix of field codes.

    Returns (R, pivots).  With reduced=True each pivot is 1 and is the only
    nonzero entry in its column (RREF); otherwise only entries below pivots
    are cleared.
    """
    R = np.array(a, dtype=np.int64, copy=True)
    rows, cols = R.shape
    pivots = []
    r = 0
    prime = field.e == 1
    p = field.p
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        pv = int(R[r, c])
        if pv != 1:
            if prime:
                R[r] = (R[r] * pow(pv, p - 2, p)) % p
            else:
                R[r] = field.mul[field.inv[pv], R[r]]
        if reduced:
            idx = np.nonzero(R[:, c])[0]
            idx = idx[idx != r]
        else:
            idx = r + 1 + np.nonzero(R[r + 1:, c])[0]
        if idx.size:
            f = R[idx, c]
            if prime:
                R[idx] = (R[idx] - f[:, None] * R[r][None, :]) % p
            else:
                R[idx] = field.add[R[idx], field.mul[field.neg[f][:, None], R[r][None, :]]]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(field, a):
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    if field.p == 2 and field.e == 1 and min(a.shape) > 64:
        return _rank_gf2_packed(a)
    return len(row_echelon(field, a, reduced=False)[1])


def nullspace(field, a):
    """Basis of the right nullspace, returned as columns of a matrix."""
    rows, cols = a.shape
    R, pivots = row_echelon(field, a, reduced=True)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = mat_neg(field, R[i, fc])
    return basis


def solve(field, a, b):
    """Solve a @ x = b exactly; raises ValueError when inconsistent.

    b may be a vector or a matrix of stacked right-hand sides.
    """
    vec = b.ndim == 1
    B = b[:, None] if vec else b
    aug = np.concatenate([a, B], axis=1)
    R, pivots = row_echelon(field, aug, reduced=True)
    ncols = a.shape[1]
    if any(pc >= ncols for pc in pivots):
        raise ValueError("inconsistent linear system")
    x = np.zeros((ncols, B.shape[1]), dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, ncols:]
    return x[:, 0] if vec else x


def inverse(field, a):
    n = a.shape[0]
    return solve(field, a, identity(n))


def det(field, a):
    """Determinant via elimination; exact."""
    R = np.array(a, dtype=np.int64, copy=True)
    n = R.shape[0]
    prime = field.e == 1
    p = field.p
    d = 1
    for c in range(n):
        nz = np.nonzero(R[c:, c])[0]
        if nz.size == 0:
            return 0
        pr = c + int(nz[0])
        if pr != c:
            R[[c, pr]] = R[[pr, c]]
            d = field.neg[d]
        pv = int(R[c, c])
        d = (d * pv) % p if prime else int(field.mul[d, pv])
        idx = c + 1 + np.nonzero(R[c + 1:, c])[0]
        if idx.size:
            if prime:
                f = (R[idx, c] * pow(pv, p - 2, p)) % p
                R[idx] = (R[idx] - f[:, None] * R[c][None, :]) % p
            else:
                f = field.mul[R[idx, c], field.inv[pv]]
                R[idx] = field.add[R[idx], field.mul[field.neg[f][:, None], R[c][None, :]]]
    return int(d)


def column_space_pivots(field, a):
    """Indices of a maximal independent set of columns (deterministic)."""
    return row_echelon(field, a, reduced=False)[1]


# ---------------------------------------------------------------------------
# public matrix wrapper and Jordan types


@dataclass(frozen=True)
class ExactMatrix:
    """A dense matrix over a fixed finite field; immutable after construction."""

    field: Field
    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("entries must be 2-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
            raise ValueError("entries outside the declared field")
        object.__setattr__(self, "entries", arr)

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def __matmul__(self, other):
        return ExactMatrix(self.field, matmul(self.field, self.entries, other.entries))

    def __add__(self, other):
        return ExactMatrix(self.field, mat_add(self.field, self.entries, other.entries))

    def __sub__(self, other):
        return ExactMatrix(self.field, mat_sub(self.field, self.entries, other.entries))

    def power(self, n):
        return ExactMatrix(self.field, mat_pow(self.field, self.entries, n))

    def rank(self):
        return rank(self.field, self.entries)

    def nullspace(self):
        return ExactMatrix(self.field, nullspace(self.field, self.entries))


def _as_array(m):
    if isinstance(m, ExactMatrix):
        return m.field, m.entries
    raise TypeError("expected an ExactMatrix")


def matrix_rank(m):
    """Row rank via exact elimination."""
    field, arr = _as_array(m)
    return rank(field, arr)


@dataclass(frozen=True)
class JordanType:
    """Block multiplicities of a p-nilpotent matrix: blocks[i] counts size i+1.

    Block size never exceeds p, so len(blocks) == p.
    """

    p: int
    blocks: tuple

    def __post_init__(self):
        if len(self.blocks) != self.p:
            raise ValueError("need one multiplicity per block size 1..p")
        if any(b < 0 for b in self.blocks):
            raise ValueError("negative block multiplicity")

    @property
    def dim(self):
        return sum((i + 1) * b for i, b in enumerate(self.blocks))

    def multiplicity(self, size):
        return self.blocks[size - 1]

    def is_endotrivial_shape(self):
        """True when the type is [1] + m[p] or [p-1] + m[p]."""
        p = self.p
        inner = list(self.blocks[:-1])
        one = [0] * (p - 1)
        one[0] = 1
        pm1 = [0] * (p - 1)
        if p >= 2:
            pm1[p - 2] = 1
        return inner == one or inner == pm1

    def __str__(self):
        parts = [f"{b}[{i + 1}]" for i, b in enumerate(self.blocks) if b][::-1]
        return " + ".join(parts) if parts else "0"


def jordan_type_from_ranks(ranks, p):
    """Recover block multiplicities from the sequence [r_0, r_1, ...], r_i = rank(m^i)."""
    r = list(ranks) + [0, 0]
    blocks = tuple(r[i - 1] - 2 * r[i] + r[i + 1] for i in range(1, p + 1))
    return JordanType(p, blocks)


def nilpotent_jordan_type(m, p):
    """Jordan type of a matrix with m^p = 0, from ranks of powers.

    Accepts an ExactMatrix or a (field, array) pair.  Raises
    NotNilpotentOfOrderP when m^p != 0.  Using the rank sequence keeps the
    computation basis independent and exact.
    """
    field, arr = _as_array(m) if isinstance(m, ExactMatrix) else m
    if arr.shape[0] != arr.shape[1]:
        raise NotNilpotentOfOrderP("matrix is not square")
    ranks = [arr.shape[0]]
    power = arr
    for _ in range(p):
        ranks.append(rank(field, power))
        if ranks[-1] == 0:
            break
        power = matmul(field, power, arr)
    if ranks[-1] != 0:
        raise NotNilpotentOfOrderP(f"matrix power {p} is nonzero")
    while len(ranks) < p + 2:
        ranks.append(0)
    return jordan_type_from_ranks(ranks, p)
