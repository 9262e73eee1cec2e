"""
Тесты линейной алгебры над F_p.
"""

import numpy as np
import pytest

from src.tilting_center.domain import linalg
from src.tilting_center.domain.linalg import (
    in_span,
    nullspace_basis,
    rank_mod_p,
    reduce_stream,
    row_reduce,
)


class TestRowReduce:
    """Гаусс-Жордан по модулю p."""

    def test_reduced_form(self):
        """Проверяет ведущие единицы и отброшенную зависимую строку."""
        result = row_reduce(np.array([[2, 4, 1], [1, 2, 0], [0, 0, 1]]), 3)
        assert result.rank == 2
        assert result.pivots == (0, 2)
        assert result.matrix.tolist() == [[1, 2, 0], [0, 0, 1]]

    def test_rank_depends_on_prime(self):
        """Проверяет, что det = 5 обнуляется только при p=5."""
        m = np.array([[1, 2], [3, 11]])
        assert rank_mod_p(m, 5) == 1
        assert rank_mod_p(m, 3) == 2

    def test_rejects_vector(self):
        with pytest.raises(ValueError):
            row_reduce(np.array([1, 2, 3]), 3)


class TestNullspace:
    """Ядро и принадлежность оболочке."""

    def test_kernel_vectors(self):
        """Проверяет, что базис ядра аннулируется матрицей и имеет размер n - rank."""
        m = np.array([[1, 1, 0, 2], [0, 1, 1, 1]])
        kernel = nullspace_basis(m, 3)
        assert kernel.shape == (2, 4)
        assert not np.any((m @ kernel.T) % 3)

    def test_empty_system(self):
        assert nullspace_basis(np.zeros((0, 3), dtype=np.int64), 5).tolist() == np.eye(3).tolist()

    def test_in_span(self):
        basis = np.array([[1, 0, 1], [0, 1, 1]])
        assert in_span(np.array([1, 1, 2]), basis, 3)
        assert not in_span(np.array([0, 0, 1]), basis, 3)
        assert in_span(np.array([0, 3, 6]), np.zeros((0, 3), dtype=np.int64), 3)


class TestReduceStream:
    """Потоковое приведение разреженных строк."""

    def test_chunks_agree_with_dense(self):
        """Проверяет, что порции любого размера дают ту же ступенчатую форму."""
        rows = [{0: 1, 2: 2}, {1: 1}, {0: 2, 1: 2, 2: 1}, {2: 3}, {3: 1, 0: 1}]
        dense = row_reduce(linalg.dense_rows(rows, 4, 3), 3).matrix
        for chunk in (1, 2, 10):
            assert reduce_stream(iter(rows), 4, 3, chunk=chunk).tolist() == dense.tolist()

    def test_public_surface(self):
        """Проверяет, что в модуле нет вспомогательного ранга наборов векторов."""
        assert not hasattr(linalg, "span_rank")
