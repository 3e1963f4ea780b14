"""Exact dense linear algebra over the rationals.

RatMatrix stores reduced (numerator, denominator) pairs in flat row-major
lists and delegates the heavy loops to hermicert._kernels.  All results are
exact; there is no floating point anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import _kernels as kernels


class SingularMatrixError(ValueError):
    """Inverse requested for a singular matrix."""


class NotSymmetricError(ValueError):
    """A symmetric-only operation was applied to an asymmetric matrix."""


class NoConnectedSelectionError(ValueError):
    """No connected-to-1 monomial subset reaches the required rank."""


class Inertia(NamedTuple):
    positive: int
    negative: int
    zero: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative


class RatMatrix:
    """Dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "_n", "_d")

    def __init__(self, rows: int, cols: int, nums: list[int], dens: list[int]):
        if len(nums) != rows * cols or len(dens) != rows * cols:
            raise ValueError("entry count does not match dimensions")
        self.rows = rows
        self.cols = cols
        self._n = nums
        self._d = dens

    @classmethod
    def from_rows(cls, rows: Sequence[Iterable]) -> "RatMatrix":
        data = [[Fraction(x) for x in row] for row in rows]
        r = len(data)
        c = len(data[0]) if r else 0
        if any(len(row) != c for row in data):
            raise ValueError("ragged rows")
        nums = [f.numerator for row in data for f in row]
        dens = [f.denominator for row in data for f in row]
        return cls(r, c, nums, dens)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, [0] * (rows * cols), [1] * (rows * cols))

    @classmethod
    def identity(cls, k: int) -> "RatMatrix":
        m = cls.zeros(k, k)
        for i in range(k):
            m._n[i * k + i] = 1
        return m

    @classmethod
    def diagonal(cls, values: Iterable) -> "RatMatrix":
        vals = [Fraction(v) for v in values]
        m = cls.zeros(len(vals), len(vals))
        for i, v in enumerate(vals):
            m._n[i * len(vals) + i] = v.numerator
            m._d[i * len(vals) + i] = v.denominator
        return m

    def entry(self, i: int, j: int) -> Fraction:
        p = i * self.cols + j
        return Fraction(self._n[p], self._d[p])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.entry(*ij)

    def to_rows(self) -> list[list[Fraction]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._n == other._n
            and self._d == other._d
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self._n), tuple(self._d)))

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(self.entry(i, j)) for j in range(self.cols)) for i in range(self.rows)
        )
        return f"RatMatrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        n, d = [], []
        for i in range(len(self._n)):
            rn, rd = kernels.q_add(self._n[i], self._d[i], other._n[i], other._d[i])
            n.append(rn)
            d.append(rd)
        return RatMatrix(self.rows, self.cols, n, d)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        self._check_same_shape(other)
        n, d = [], []
        for i in range(len(self._n)):
            rn, rd = kernels.q_sub(self._n[i], self._d[i], other._n[i], other._d[i])
            n.append(rn)
            d.append(rd)
        return RatMatrix(self.rows, self.cols, n, d)

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [-x for x in self._n], list(self._d))

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(f"dimension mismatch: {self.cols} vs {other.rows}")
        n, d = kernels.mat_mul(
            self.rows, self.cols, other.cols, self._n, self._d, other._n, other._d
        )
        return RatMatrix(self.rows, other.cols, n, d)

    def scale(self, factor) -> "RatMatrix":
        f = Fraction(factor)
        n, d = [], []
        for i in range(len(self._n)):
            rn, rd = kernels.q_mul(self._n[i], self._d[i], f.numerator, f.denominator)
            n.append(rn)
            d.append(rd)
        return RatMatrix(self.rows, self.cols, n, d)

    def transpose(self) -> "RatMatrix":
        n = [0] * (self.rows * self.cols)
        d = [1] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                n[j * self.rows + i] = self._n[i * self.cols + j]
                d[j * self.rows + i] = self._d[i * self.cols + j]
        return RatMatrix(self.cols, self.rows, n, d)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        k = self.rows
        for i in range(k):
            for j in range(i + 1, k):
                if (
                    self._n[i * k + j] != self._n[j * k + i]
                    or self._d[i * k + j] != self._d[j * k + i]
                ):
                    return False
        return True

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._n)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        tn, td = 0, 1
        for i in range(self.rows):
            p = i * self.cols + i
            tn, td = kernels.q_add(tn, td, self._n[p], self._d[p])
        return Fraction(tn, td)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "RatMatrix":
        n, d = [], []
        for i in row_idx:
            base = i * self.cols
            for j in col_idx:
                n.append(self._n[base + j])
                d.append(self._d[base + j])
        return RatMatrix(len(row_idx), len(col_idx), n, d)

    def row_pairs(self) -> tuple[list[int], list[int]]:
        return list(self._n), list(self._d)

    def _check_same_shape(self, other: "RatMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


def rank(a: RatMatrix) -> int:
    """Exact rank (fraction-free Bareiss elimination)."""
    return kernels.mat_rank(a.rows, a.cols, a._n, a._d)


def inverse(a: RatMatrix) -> RatMatrix:
    """Exact inverse; raises SingularMatrixError when det = 0."""
    if a.rows != a.cols:
        raise ValueError("inverse of a non-square matrix")
    res = kernels.mat_inverse(a.rows, a._n, a._d)
    if res is None:
        raise SingularMatrixError("matrix is singular")
    inv = RatMatrix(a.rows, a.cols, res[0], res[1])
    assert (a @ inv) == RatMatrix.identity(a.rows)
    return inv


def char_poly(a: RatMatrix) -> list[Fraction]:
    """Monic characteristic polynomial, descending coefficients.

    Faddeev-LeVerrier: O(k^4) but exact and simple; the matrices certified
    here are small.
    """
    if a.rows != a.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    cn, cd = kernels.charpoly(a.rows, a._n, a._d)
    return [Fraction(n, d) for n, d in zip(cn, cd)]


def inertia_ldl(a: RatMatrix) -> Inertia:
    """Inertia by exact symmetric elimination with diagonal pivoting.

    A vanishing remaining diagonal with a surviving off-diagonal entry is
    handled by an antidiagonal 2x2 congruence block contributing (+1, -1).
    """
    if not a.is_symmetric():
        raise NotSymmetricError("inertia requires a symmetric matrix")
    pos, neg, zero = kernels.inertia(a.rows, a._n, a._d)
    return Inertia(pos, neg, zero)


def sign_variations_int(coeffs: Sequence[Fraction]) -> int:
    """Sign changes across the nonzero coefficients, in order."""
    signs = [1 if c > 0 else -1 for c in coeffs if c != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def signature_descartes(a: RatMatrix) -> int:
    """Signature from Descartes' rule applied to the characteristic polynomial.

    All eigenvalues of a symmetric matrix are real, so the rule is exact:
    the signature is var(p(x)) - var(p(-x)).
    """
    if not a.is_symmetric():
        raise NotSymmetricError("signature requires a symmetric matrix")
    p = char_poly(a)
    k = len(p) - 1
    flipped = [c if (k - i) % 2 == 0 else -c for i, c in enumerate(p)]
    return sign_variations_int(p) - sign_variations_int(flipped)


class ConnectedSelection(NamedTuple):
    monomials: tuple[tuple[int, ...], ...]
    matrix: RatMatrix
    indices: tuple[int, ...]


def _has_divisor_link(mono: tuple[int, ...], chosen: set) -> bool:
    # connected-to-1 link: some single-variable quotient already selected
    if sum(mono) == 0:
        return True
    for i, e in enumerate(mono):
        if e and (mono[:i] + (e - 1,) + mono[i + 1 :]) in chosen:
            return True
    return False


def max_nonsingular_connected_submatrix(
    h: RatMatrix, monomials: Sequence[tuple[int, ...]]
) -> ConnectedSelection:
    """Largest nonsingular principal submatrix on a connected-to-1 label set.

    Scans the labels in their given (graded-lex) order and greedily keeps a
    monomial when it is linked to the current selection by a single-variable
    quotient and the principal minor stays nonsingular.  Stops as soon as
    rank(h) labels are selected; raises NoConnectedSelectionError when the
    scan cannot reach that size.
    """
    if not h.is_symmetric():
        raise NotSymmetricError("submatrix selection requires a symmetric matrix")
    if len(monomials) != h.rows:
        raise ValueError("label count does not match matrix size")
    target = rank(h)
    chosen_idx: list[int] = []
    chosen_set: set = set()
    for pos, mono in enumerate(monomials):
        if len(chosen_idx) == target:
            break
        if not _has_divisor_link(tuple(mono), chosen_set):
            continue
        trial = chosen_idx + [pos]
        sub = h.submatrix(trial, trial)
        if rank(sub) == len(trial):
            chosen_idx.append(pos)
            chosen_set.add(tuple(mono))
    if len(chosen_idx) != target:
        raise NoConnectedSelectionError(
            f"no connected selection of size {target} found (got {len(chosen_idx)})"
        )
    sub = h.submatrix(chosen_idx, chosen_idx)
    return ConnectedSelection(
        tuple(tuple(monomials[i]) for i in chosen_idx), sub, tuple(chosen_idx)
    )
