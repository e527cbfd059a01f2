"""Dense complex matrices as morphisms of finite-dimensional Hilbert spaces.

A linear map f: C^n -> C^m is an m x n matrix.  Tensor products are Kronecker
products, so basis vector e_a ⊗ e_b has index a*dim(B) + b.
"""

from __future__ import annotations

import numpy as np

from dagcat.errors import BoundaryError


class ComplexMatrix:
    """Immutable complex matrix; ``rows`` is the codomain dimension."""

    __slots__ = ("array",)

    def __init__(self, data):
        arr = np.array(data, dtype=np.complex128)
        if arr.ndim != 2:
            raise BoundaryError(f"expected a 2-d matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix has non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexMatrix is immutable")

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    @classmethod
    def identity(cls, n: int) -> ComplexMatrix:
        return cls(np.eye(n))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ComplexMatrix:
        return cls(np.zeros((rows, cols)))

    def entries(self) -> list[tuple[float, float]]:
        return [(float(z.real), float(z.imag)) for z in self.array.ravel()]

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries) -> ComplexMatrix:
        if len(entries) != rows * cols:
            raise BoundaryError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        flat = [complex(re, im) for re, im in entries]
        return cls(np.array(flat, dtype=np.complex128).reshape(rows, cols))

    def __eq__(self, other):
        return isinstance(other, ComplexMatrix) and np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash((self.array.shape, self.array.tobytes()))

    def __repr__(self):
        return f"ComplexMatrix({np.array2string(self.array, precision=4, suppress_small=True)})"


def mat_compose(g: ComplexMatrix, f: ComplexMatrix) -> ComplexMatrix:
    if f.rows != g.cols:
        raise BoundaryError(f"cannot compose: f has {f.rows} output dims, g takes {g.cols}")
    return ComplexMatrix(g.array @ f.array)


def mat_kron(f: ComplexMatrix, g: ComplexMatrix) -> ComplexMatrix:
    return ComplexMatrix(np.kron(f.array, g.array))


def mat_dagger(f: ComplexMatrix) -> ComplexMatrix:
    return ComplexMatrix(f.array.conj().T)


def mat_cup(n: int) -> ComplexMatrix:
    """Column vector sum_i e_i ⊗ e_i, i.e. a 1 at every position i*n + i."""
    v = np.zeros((n * n, 1))
    v[[i * n + i for i in range(n)], 0] = 1
    return ComplexMatrix(v)


def mat_residual(f: ComplexMatrix, g: ComplexMatrix) -> float:
    if f.array.shape != g.array.shape:
        raise BoundaryError(f"cannot compare shapes {f.array.shape} and {g.array.shape}")
    if f.array.size == 0:
        return 0.0
    return float(np.max(np.abs(f.array - g.array)))
