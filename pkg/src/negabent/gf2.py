"""Dense linear algebra over GF(2).

Vectors are 1-D ``uint8`` numpy arrays with entries in {0, 1}. Matrices are
wrapped in :class:`Gf2Matrix`, an immutable container around a 2-D ``uint8``
array. Vectors multiply matrices from the left (``x @ A``), so the image of a
row vector ``x`` under ``A`` is ``vec_matmul(x, A)``.

Elimination packs each row into a Python ``int`` and performs row operations
with XOR, so arbitrarily wide rows cost one big-int operation each.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, SingularMatrixError

__all__ = [
    "Gf2Matrix",
    "as_vector",
    "vector_to_int",
    "vector_from_int",
    "vector_to_hex",
    "vector_from_hex",
    "vec_matmul",
    "rank",
    "inverse",
    "is_orthogonal",
    "block_diag",
    "permutation_matrix",
    "lambda_matrix",
]


def as_vector(bits: Iterable[int] | np.ndarray, n: int | None = None) -> np.ndarray:
    """Return ``bits`` as a read-only GF(2) vector, checking entries and length."""
    v = np.array(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.int64)
    if v.ndim != 1:
        raise DimensionError(f"vector must be 1-D, got shape {v.shape}")
    if v.size and (v.min() < 0 or v.max() > 1):
        raise ValueError("vector entries must be 0 or 1")
    if n is not None and v.size != n:
        raise DimensionError(f"expected a vector of length {n}, got {v.size}")
    out = v.astype(np.uint8)
    out.flags.writeable = False
    return out


def vector_to_int(v: np.ndarray) -> int:
    """Pack ``v`` as sum(v[i] << i); coordinate 1 is the least significant bit."""
    return sum(int(b) << i for i, b in enumerate(v))


def vector_from_int(value: int, n: int) -> np.ndarray:
    if value < 0 or value >> n:
        raise ValueError(f"{value} does not fit in {n} bits")
    return as_vector([(value >> i) & 1 for i in range(n)])


def vector_to_hex(v: np.ndarray) -> str:
    width = max(1, -(-len(v) // 4))
    return format(vector_to_int(v), f"0{width}x")


def vector_from_hex(text: str, n: int) -> np.ndarray:
    return vector_from_int(int(text, 16), n)


class Gf2Matrix:
    """Immutable dense matrix over GF(2)."""

    __slots__ = ("_a",)

    def __init__(self, entries: Sequence[Sequence[int]] | np.ndarray):
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] == 0 or a.shape[1] == 0:
            raise DimensionError(f"matrix must be a non-empty 2-D grid, got shape {a.shape}")
        if a.min() < 0 or a.max() > 1:
            raise ValueError("matrix entries must be 0 or 1")
        a = a.astype(np.uint8)
        a.flags.writeable = False
        self._a = a

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(np.eye(n, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Gf2Matrix":
        return cls(np.zeros((rows, rows if cols is None else cols), dtype=np.uint8))

    @classmethod
    def from_text(cls, text: str) -> "Gf2Matrix":
        """Parse rows of '0'/'1' characters separated by newlines."""
        rows = [line.strip().replace(" ", "") for line in text.strip().splitlines()]
        rows = [r for r in rows if r]
        if not rows or any(set(r) - {"0", "1"} for r in rows):
            raise ValueError("matrix text must be rows of '0'/'1' characters")
        if len({len(r) for r in rows}) != 1:
            raise DimensionError("matrix rows have unequal lengths")
        return cls([[int(c) for c in r] for r in rows])

    def to_text(self) -> str:
        return "\n".join("".join(str(int(b)) for b in row) for row in self._a)

    @property
    def array(self) -> np.ndarray:
        """Read-only ``uint8`` view of the entries."""
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def T(self) -> "Gf2Matrix":
        return Gf2Matrix(self._a.T)

    def row_ints(self) -> list[int]:
        """Each row packed as an int, column j at bit j."""
        return [vector_to_int(r) for r in self._a]

    def tolist(self) -> list[list[int]]:
        return self._a.astype(int).tolist()

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return Gf2Matrix((self._a.astype(np.int64) @ other._a.astype(np.int64)) & 1)

    def __xor__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Gf2Matrix(self._a ^ other._a)

    __add__ = __xor__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        body = "; ".join("".join(str(int(b)) for b in row) for row in self._a)
        return f"Gf2Matrix[{body}]"


def vec_matmul(v: np.ndarray | Sequence[int], M: Gf2Matrix) -> np.ndarray:
    """Row-vector product ``v M`` over GF(2)."""
    v = as_vector(v)
    if v.size != M.rows:
        raise DimensionError(f"vector of length {v.size} cannot multiply a {M.rows}-row matrix")
    out = ((v.astype(np.int64) @ M.array.astype(np.int64)) & 1).astype(np.uint8)
    out.flags.writeable = False
    return out


def _eliminate(rows: list[int], ncols: int) -> tuple[int, list[int]]:
    """Gauss-Jordan elimination on packed rows; returns (rank, reduced rows)."""
    work = list(rows)
    r = 0
    for col in range(ncols):
        bit = 1 << col
        pivot = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        r += 1
        if r == len(work):
            break
    return r, work


def rank(M: Gf2Matrix) -> int:
    return _eliminate(M.row_ints(), M.cols)[0]


def inverse(M: Gf2Matrix) -> Gf2Matrix:
    """Inverse over GF(2) by elimination on the augmented matrix ``[M | I]``."""
    if not M.is_square:
        raise DimensionError(f"inverse needs a square matrix, got {M.shape}")
    n = M.rows
    aug = [row | (1 << (n + i)) for i, row in enumerate(M.row_ints())]
    r, red = _eliminate(aug, n)
    if r < n or any((red[i] & ((1 << n) - 1)) != 1 << i for i in range(n)):
        raise SingularMatrixError(f"matrix has rank {rank(M)} < {n}")
    return Gf2Matrix([[(red[i] >> (n + j)) & 1 for j in range(n)] for i in range(n)])


def is_orthogonal(M: Gf2Matrix) -> bool:
    if not M.is_square:
        raise DimensionError(f"orthogonality needs a square matrix, got {M.shape}")
    return M @ M.T == Gf2Matrix.identity(M.rows)


def block_diag(blocks: Sequence[Gf2Matrix]) -> Gf2Matrix:
    if not blocks:
        raise ValueError("block_diag needs at least one block")
    for b in blocks:
        if not b.is_square:
            raise DimensionError(f"diagonal blocks must be square, got {b.shape}")
    n = sum(b.rows for b in blocks)
    out = np.zeros((n, n), dtype=np.uint8)
    k = 0
    for b in blocks:
        out[k:k + b.rows, k:k + b.rows] = b.array
        k += b.rows
    return Gf2Matrix(out)


def permutation_matrix(perm: Sequence[int]) -> Gf2Matrix:
    """Matrix P with ``P[i, perm[i]] = 1``, so ``(x P)[perm[i]] = x[i]``."""
    perm = [int(p) for p in perm]
    n = len(perm)
    if n == 0 or sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    out = np.zeros((n, n), dtype=np.uint8)
    out[np.arange(n), perm] = 1
    return Gf2Matrix(out)


def lambda_matrix(n: int) -> Gf2Matrix:
    """Identity with an all-ones last column; ``x Λ`` replaces x_n by x_1 + ... + x_n."""
    if n < 1:
        raise ValueError("n must be positive")
    out = np.eye(n, dtype=np.uint8)
    out[:, n - 1] = 1
    return Gf2Matrix(out)
