"""Arithmetic for binary circulant matrices and block-circulant matrices.

A p x p binary circulant is identified with its first row, read as a
polynomial in GF(2)[x]/(x^p + 1): row i is the first row cyclically shifted
right by i, so a row vector times the matrix of m(x) equals v(x) * m(x) in
the ring.  Transposition maps coefficient i to (p - i) mod p.

Two multiplication routines are provided.  ``circ_mul_schoolbook`` is the
plain shift-and-xor product and serves as the reference implementation.
``circ_mul_winograd`` views the circulant as a Toeplitz matrix and splits it

    T = [[T0, T1],    v * T = [v0*T0 + v1*T2, v0*T1 + v1*T0]
         [T2, T0]]

into three half-size products v0*(T1-T0), v1*(T2-T0), (v0+v1)*T0, applied
recursively while the size is even and above a cutoff.  The matrix-side
decomposition depends only on the circulant and is cached; the vector-side
"evaluation" tree depends only on the input vector, which lets a block-row
product share it across block columns.

Operation counting is a model, not a machine-op tally: an attached
``OpCounter`` is charged length/2 per evaluation split, length per
interpolation, ceil(s^2/2) per direct Toeplitz product of size s, and the
vector length per plain XOR.  The charges are data independent and follow
the recursion actually executed, so the closed-form cost model in
``complexity`` reproduces them exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bitvec import BitVector
from .errors import ParameterError, SingularElementError, SingularMatrixError


@dataclass
class OpCounter:
    """Accumulator for modeled binary operations."""

    binary_ops: int = 0

    def add(self, n: int) -> None:
        self.binary_ops += n

    def reset(self) -> None:
        self.binary_ops = 0


def _compute_default_cutoff(limit: int = 512) -> int:
    # largest even size at which a direct product is not beaten by one split
    best = {1: 1}
    cutoff = 2
    for s in range(2, limit + 1):
        direct = (s * s + 1) // 2
        if s % 2:
            best[s] = direct
            continue
        split = 3 * best[s // 2] + (3 * s) // 2
        best[s] = min(direct, split)
        if direct <= split:
            cutoff = s
    return cutoff


DEFAULT_CUTOFF = _compute_default_cutoff()


# --- polynomial helpers on plain ints ---------------------------------


def _poly_mulmod(a: int, b: int, p: int) -> int:
    """a(x) * b(x) mod x^p + 1, iterating over the lighter operand."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    acc = 0
    while a:
        lsb = a & -a
        acc ^= b << (lsb.bit_length() - 1)
        a ^= lsb
    return (acc ^ (acc >> p)) & ((1 << p) - 1)


def _poly_invmod(a: int, p: int) -> int:
    """Inverse of a(x) mod x^p + 1 via extended Euclid."""
    mod = (1 << p) | 1
    r0, s0 = mod, 0
    r1, s1 = a, 1
    while r1:
        shift = r0.bit_length() - r1.bit_length()
        if shift < 0:
            r0, r1 = r1, r0
            s0, s1 = s1, s0
            continue
        r0 ^= r1 << shift
        s0 ^= s1 << shift
    if r0 != 1:
        raise SingularElementError(f"element shares a factor with x^{p}+1")
    mask = (1 << p) - 1
    while s0 >> p:
        s0 = (s0 & mask) ^ (s0 >> p)
    return s0


def _rotl(bits: int, s: int, p: int) -> int:
    s %= p
    if s == 0:
        return bits
    return ((bits << s) | (bits >> (p - s))) & ((1 << p) - 1)


# --- circulant elements ------------------------------------------------


@dataclass(eq=False)
class CirculantElement:
    """A p x p circulant, stored as its first row."""

    p: int
    poly: BitVector
    _trees: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.p < 1:
            raise ParameterError(f"block size must be positive, got {self.p}")
        if self.poly.n != self.p:
            raise ParameterError("first row length differs from block size")

    def __eq__(self, other):
        return (isinstance(other, CirculantElement)
                and self.p == other.p and self.poly == other.poly)

    @property
    def weight(self) -> int:
        return self.poly.weight

    def is_zero(self) -> bool:
        return self.poly.bits == 0

    def support(self) -> list[int]:
        return self.poly.support()

    def transform(self, cutoff: int | None = None):
        """Cached Toeplitz split decomposition used by the fast product."""
        cutoff = DEFAULT_CUTOFF if cutoff is None else cutoff
        tree = self._trees.get(cutoff)
        if tree is None:
            tree = _toeplitz_tree(_toeplitz_diag(self.poly.bits, self.p), self.p, cutoff)
            self._trees[cutoff] = tree
        return tree


@dataclass(frozen=True)
class SparseCirculant:
    """A circulant given by the support of its first row."""

    p: int
    support: tuple

    def __post_init__(self):
        sup = tuple(sorted(self.support))
        if len(set(sup)) != len(sup):
            raise ParameterError("support positions must be distinct")
        if sup and not (0 <= sup[0] and sup[-1] < self.p):
            raise ParameterError("support outside [0, p)")
        object.__setattr__(self, "support", sup)

    @property
    def weight(self) -> int:
        return len(self.support)

    def to_element(self) -> CirculantElement:
        return CirculantElement(self.p, BitVector.from_support(self.p, self.support))


def circ_zero(p: int) -> CirculantElement:
    return CirculantElement(p, BitVector.zeros(p))

def circ_one(p: int) -> CirculantElement:
    return CirculantElement(p, BitVector(1, p))

def circ_from_support(p: int, support) -> CirculantElement:
    return CirculantElement(p, BitVector.from_support(p, support))

def circ_random(p: int, rng) -> CirculantElement:
    return CirculantElement(p, BitVector.random(p, rng))


def circ_add(a: CirculantElement, b: CirculantElement, counter: OpCounter | None = None) -> CirculantElement:
    if a.p != b.p:
        raise ParameterError("block size mismatch")
    if counter is not None:
        counter.add(a.p)
    return CirculantElement(a.p, a.poly ^ b.poly)


def circ_mul_schoolbook(a: CirculantElement, b: CirculantElement) -> CirculantElement:
    """Reference product; also the fast path when an operand is sparse."""
    if a.p != b.p:
        raise ParameterError("block size mismatch")
    return CirculantElement(a.p, BitVector(_poly_mulmod(a.poly.bits, b.poly.bits, a.p), a.p))


def circ_transpose(a: CirculantElement) -> CirculantElement:
    p = a.p
    bits = a.poly.bits
    rest = bits >> 1
    rev = int(format(rest, f"0{p - 1}b")[::-1], 2) if p > 1 and rest else 0
    return CirculantElement(p, BitVector((bits & 1) | (rev << 1), p))


def circ_invert(a: CirculantElement) -> CirculantElement:
    """Ring inverse; raises SingularElementError when none exists."""
    return CirculantElement(a.p, BitVector(_poly_invmod(a.poly.bits, a.p), a.p))


# --- Winograd-split Toeplitz product -----------------------------------


def _toeplitz_diag(bits: int, p: int) -> int:
    # diagonal form of the circulant: bit (d + p - 1) holds entry T[i][i+d]
    return (bits >> 1) | (bits << (p - 1))


def _toeplitz_tree(diag: int, s: int, cutoff: int):
    if s <= cutoff or s & 1:
        return (diag,)
    h = s >> 1
    m = (1 << (2 * h - 1)) - 1
    d0 = (diag >> h) & m      # central block T0
    d1 = (diag >> s) & m      # upper right T1
    d2 = diag & m             # lower left T2
    return (
        _toeplitz_tree(d1 ^ d0, h, cutoff),
        _toeplitz_tree(d2 ^ d0, h, cutoff),
        _toeplitz_tree(d0, h, cutoff),
    )


def _eval_tree(v: int, s: int, cutoff: int, counter: OpCounter | None):
    """Vector-side subdivision [v0, v1, v0+v1], applied recursively."""
    if s <= cutoff or s & 1:
        return v
    h = s >> 1
    v0 = v & ((1 << h) - 1)
    v1 = v >> h
    if counter is not None:
        counter.add(h)
    return (
        _eval_tree(v0, h, cutoff, counter),
        _eval_tree(v1, h, cutoff, counter),
        _eval_tree(v0 ^ v1, h, cutoff, counter),
    )


def _combine(tree, ev, s: int, counter: OpCounter | None) -> int:
    if len(tree) == 1:
        diag = tree[0]
        acc = 0
        v = ev
        while v:
            lsb = v & -v
            acc ^= diag << (lsb.bit_length() - 1)
            v ^= lsb
        if counter is not None:
            counter.add((s * s + 1) >> 1)
        return (acc >> (s - 1)) & ((1 << s) - 1)
    h = s >> 1
    m0 = _combine(tree[0], ev[0], h, counter)
    m1 = _combine(tree[1], ev[1], h, counter)
    m2 = _combine(tree[2], ev[2], h, counter)
    if counter is not None:
        counter.add(s)
    return (m1 ^ m2) | ((m0 ^ m2) << h)


def circ_mul_winograd(a: CirculantElement, b: CirculantElement,
                      counter: OpCounter | None = None,
                      cutoff: int | None = None) -> CirculantElement:
    """Product a * b with b in Toeplitz-split form (a supplies the vector side)."""
    if a.p != b.p:
        raise ParameterError("block size mismatch")
    cutoff = DEFAULT_CUTOFF if cutoff is None else cutoff
    ev = _eval_tree(a.poly.bits, a.p, cutoff, counter)
    bits = _combine(b.transform(cutoff), ev, a.p, counter)
    return CirculantElement(a.p, BitVector(bits, a.p))


# --- block-circulant matrices ------------------------------------------


@dataclass(eq=False)
class QcMatrix:
    """Dense grid of circulant blocks sharing one block size."""

    p: int
    blocks: list

    def __post_init__(self):
        if not self.blocks or not self.blocks[0]:
            raise ParameterError("matrix needs at least one block")
        width = len(self.blocks[0])
        for row in self.blocks:
            if len(row) != width:
                raise ParameterError("ragged block grid")
            for blk in row:
                if blk.p != self.p:
                    raise ParameterError("block size mismatch inside matrix")
        self.blocks = tuple(tuple(row) for row in self.blocks)

    def __eq__(self, other):
        return (isinstance(other, QcMatrix) and self.p == other.p
                and self.blocks == other.blocks)

    @property
    def rows(self) -> int:
        return len(self.blocks)

    @property
    def cols(self) -> int:
        return len(self.blocks[0])

    @classmethod
    def identity(cls, p: int, n: int) -> "QcMatrix":
        return cls(p, [[circ_one(p) if i == j else circ_zero(p) for j in range(n)]
                       for i in range(n)])

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "QcMatrix":
        return cls(p, [[circ_zero(p) for _ in range(cols)] for _ in range(rows)])


def qc_add(a: QcMatrix, b: QcMatrix, counter: OpCounter | None = None) -> QcMatrix:
    if a.p != b.p or a.rows != b.rows or a.cols != b.cols:
        raise ParameterError("shape mismatch")
    return QcMatrix(a.p, [[circ_add(x, y, counter) for x, y in zip(ra, rb)]
                          for ra, rb in zip(a.blocks, b.blocks)])


def qc_transpose(a: QcMatrix) -> QcMatrix:
    return QcMatrix(a.p, [[circ_transpose(a.blocks[i][j]) for i in range(a.rows)]
                          for j in range(a.cols)])


def qc_mul(a: QcMatrix, b: QcMatrix, counter: OpCounter | None = None,
           cutoff: int | None = None, method: str | None = None) -> QcMatrix:
    """Block product a * b.

    With ``method="winograd"`` (the default whenever a counter is attached)
    each left-hand block is evaluated once per block row and reused across
    the block columns; recombining the inner partial sums is charged
    (inner - 1) * p per output block.  ``method="schoolbook"`` is the
    uncounted reference path, and the default without a counter because the
    shift-and-xor loop is faster in this implementation.
    """
    if a.p != b.p or a.cols != b.rows:
        raise ParameterError("shape mismatch")
    if method is None:
        method = "winograd" if counter is not None else "schoolbook"
    p, inner = a.p, a.cols
    out = []
    if method == "schoolbook":
        for i in range(a.rows):
            row = []
            for j in range(b.cols):
                acc = 0
                for l in range(inner):
                    x, y = a.blocks[i][l], b.blocks[l][j]
                    if x.poly.bits and y.poly.bits:
                        acc ^= _poly_mulmod(x.poly.bits, y.poly.bits, p)
                row.append(CirculantElement(p, BitVector(acc, p)))
            out.append(row)
        return QcMatrix(p, out)
    if method != "winograd":
        raise ParameterError(f"unknown method {method!r}")
    cutoff = DEFAULT_CUTOFF if cutoff is None else cutoff
    for i in range(a.rows):
        evs = [_eval_tree(a.blocks[i][l].poly.bits, p, cutoff, counter)
               for l in range(inner)]
        row = []
        for j in range(b.cols):
            acc = 0
            for l in range(inner):
                acc ^= _combine(b.blocks[l][j].transform(cutoff), evs[l], p, counter)
            if counter is not None and inner > 1:
                counter.add((inner - 1) * p)
            row.append(CirculantElement(p, BitVector(acc, p)))
        out.append(row)
    return QcMatrix(p, out)


def vec_mul(v: BitVector, mat: QcMatrix, counter: OpCounter | None = None,
            cutoff: int | None = None) -> BitVector:
    """Row vector times block matrix through the split-Toeplitz path.

    The evaluation tree of each p-bit chunk of v is built once and shared by
    all block columns, mirroring the accounting in ``qc_mul``.
    """
    p = mat.p
    if v.n != mat.rows * p:
        raise ParameterError(f"vector length {v.n} does not match {mat.rows} blocks of {p}")
    cutoff = DEFAULT_CUTOFF if cutoff is None else cutoff
    inner = mat.rows
    chunks = v.split(p)
    evs = [_eval_tree(c.bits, p, cutoff, counter) for c in chunks]
    outs = []
    for j in range(mat.cols):
        acc = 0
        for l in range(inner):
            acc ^= _combine(mat.blocks[l][j].transform(cutoff), evs[l], p, counter)
        if counter is not None and inner > 1:
            counter.add((inner - 1) * p)
        outs.append(BitVector(acc, p))
    return BitVector.join(outs)


def vec_mul_sparse(v: BitVector, mat: QcMatrix) -> BitVector:
    """Row vector times block matrix by rotate-and-xor over block supports."""
    p = mat.p
    if v.n != mat.rows * p:
        raise ParameterError(f"vector length {v.n} does not match {mat.rows} blocks of {p}")
    chunks = [c.bits for c in v.split(p)]
    outs = []
    for j in range(mat.cols):
        acc = 0
        for l in range(mat.rows):
            cl = chunks[l]
            if cl:
                for s in mat.blocks[l][j].support():
                    acc ^= _rotl(cl, s, p)
        outs.append(BitVector(acc, p))
    return BitVector.join(outs)


def qc_invert(mat: QcMatrix) -> QcMatrix:
    """Inverse over the circulant ring by block Gauss-Jordan elimination.

    Pivots are searched over the whole remaining submatrix (rows and columns
    may both be exchanged) and must be ring-invertible blocks.  A matrix can
    be invertible over GF(2) yet offer no such pivot; that case raises
    SingularMatrixError and callers relying on random inputs simply redraw.
    """
    if mat.rows != mat.cols:
        raise ParameterError("only square matrices can be inverted")
    nb, p = mat.rows, mat.p
    A = [[blk.poly.bits for blk in row] for row in mat.blocks]
    B = [[1 if i == j else 0 for j in range(nb)] for i in range(nb)]
    colperm = list(range(nb))
    for d in range(nb):
        found = None
        for r in range(d, nb):
            for c in range(d, nb):
                if A[r][c]:
                    try:
                        found = (r, c, _poly_invmod(A[r][c], p))
                        break
                    except SingularElementError:
                        continue
            if found:
                break
        if found is None:
            raise SingularMatrixError(f"no invertible pivot at elimination step {d}")
        r, c, inv = found
        A[d], A[r] = A[r], A[d]
        B[d], B[r] = B[r], B[d]
        if c != d:
            for row in A:
                row[d], row[c] = row[c], row[d]
            colperm[d], colperm[c] = colperm[c], colperm[d]
        A[d] = [_poly_mulmod(inv, x, p) if x else 0 for x in A[d]]
        B[d] = [_poly_mulmod(inv, x, p) if x else 0 for x in B[d]]
        for r2 in range(nb):
            if r2 == d or not A[r2][d]:
                continue
            f = A[r2][d]
            A[r2] = [x ^ (_poly_mulmod(f, y, p) if y else 0) for x, y in zip(A[r2], A[d])]
            B[r2] = [x ^ (_poly_mulmod(f, y, p) if y else 0) for x, y in zip(B[r2], B[d])]
    # the column exchanges mean B holds rows of the inverse in permuted order
    rows = [None] * nb
    for j in range(nb):
        rows[colperm[j]] = [CirculantElement(p, BitVector(x, p)) for x in B[j]]
    return QcMatrix(p, rows)
