"""
Линейная алгебра над F_p на numpy: приведение к ступенчатому виду, ранг, ядро.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .arith import inv_mod


def to_fp(matrix: np.ndarray, p: int) -> np.ndarray:
    return np.array(matrix, dtype=np.int64) % p


@dataclass(frozen=True)
class RowReduceResult:
    """Приведенная ступенчатая форма, ранг и столбцы ведущих элементов."""

    matrix: np.ndarray
    rank: int
    pivots: Tuple[int, ...]


def row_reduce(matrix: np.ndarray, p: int) -> RowReduceResult:
    """Гаусс-Жордан над F_p; нулевые строки отбрасываются."""
    mat = to_fp(matrix, p).copy()
    if mat.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {mat.shape}")
    m, n = mat.shape
    pivots: List[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nonzero = np.nonzero(mat[row:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = row + int(nonzero[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        mat[row] = (mat[row] * inv_mod(int(mat[row, col]), p)) % p
        others = np.nonzero(mat[:, col])[0]
        others = others[others != row]
        if others.size:
            factors = mat[others, col].reshape(-1, 1)
            mat[others] = (mat[others] - factors * mat[row]) % p
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat[:row], rank=row, pivots=tuple(pivots))


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    if matrix.size == 0:
        return 0
    return row_reduce(matrix, p).rank


def nullspace_basis(matrix: np.ndarray, p: int) -> np.ndarray:
    """Базис ядра matrix над F_p; строки результата - векторы базиса."""
    n = matrix.shape[1]
    if matrix.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    reduced = row_reduce(matrix, p)
    mat = reduced.matrix
    pivots = set(reduced.pivots)
    free_cols = [c for c in range(n) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = np.zeros(n, dtype=np.int64)
        vec[free] = 1
        for row, col in enumerate(reduced.pivots):
            vec[col] = (-mat[row, free]) % p
        basis.append(vec)
    if not basis:
        return np.zeros((0, n), dtype=np.int64)
    return np.vstack(basis)


def dense_rows(rows: Sequence[Dict[int, int]], ncols: int, p: int) -> np.ndarray:
    """Разреженные строки {столбец: значение} в плотную матрицу."""
    mat = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for col, val in row.items():
            mat[i, col] = val % p
    return mat


def reduce_stream(
    rows: Iterable[Dict[int, int]], ncols: int, p: int, chunk: int = 2000
) -> np.ndarray:
    """
    Приводит поток разреженных строк порциями.

    Хранится только текущая ступенчатая форма, поэтому память ограничена
    числом неизвестных, а не числом уравнений.

    Returns:
        np.ndarray: ненулевые строки приведенной формы
    """
    basis = np.zeros((0, ncols), dtype=np.int64)
    batch: List[Dict[int, int]] = []
    for row in rows:
        if any(v % p for v in row.values()):
            batch.append(row)
        if len(batch) >= chunk:
            basis = row_reduce(np.vstack([basis, dense_rows(batch, ncols, p)]), p).matrix
            batch = []
    if batch:
        basis = row_reduce(np.vstack([basis, dense_rows(batch, ncols, p)]), p).matrix
    return basis


def in_span(vector: np.ndarray, basis: np.ndarray, p: int) -> bool:
    """Лежит ли вектор в линейной оболочке строк basis."""
    if basis.shape[0] == 0:
        return not np.any(to_fp(vector, p))
    return rank_mod_p(np.vstack([basis, vector]), p) == rank_mod_p(basis, p)
