import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from camp_locomotion.exceptions import EmptySelectionError

logger = logging.getLogger(__name__)


def _as_sequence(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64)
    return values.reshape(-1, 1) if values.ndim == 1 else values


def dtw_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Расстояние динамической трансформации времени с евклидовой локальной стоимостью.

    Note:
        Без ограничения полосы, концы последовательностей выровнены. Одномерные последовательности считаются
        последовательностями скаляров.

    Args:
        a (:obj:`numpy.ndarray`): (n,) или (n, d).
        b (:obj:`numpy.ndarray`): (m,) или (m, d).

    Returns:
        :obj:`float`: Стоимость оптимального выравнивания.

    Raises:
        :class:`camp_locomotion.exceptions.EmptySelectionError`: Пустая последовательность.
    """
    a, b = _as_sequence(a), _as_sequence(b)
    if not len(a) or not len(b):
        raise EmptySelectionError('DTW needs non-empty sequences')

    cost = cdist(a, b)
    prev = np.full(len(b) + 1, np.inf)
    prev[0] = 0.0
    for row in cost:
        diagonal_or_up = np.minimum(prev[:-1], prev[1:]) + row
        cur = np.empty_like(prev)
        cur[0] = np.inf
        for j in range(len(row)):
            cur[j + 1] = min(diagonal_or_up[j], cur[j] + row[j])
        prev = cur

    return float(prev[-1])


def dtw_matrix(sequences: Sequence[np.ndarray], workers: int = 1) -> np.ndarray:
    """Симметричная матрица попарных расстояний DTW с нулевой диагональю.

    Args:
        sequences (:obj:`Sequence` из :obj:`numpy.ndarray`): Последовательности.
        workers (:obj:`int`, optional): Число потоков для вычисления ячеек.

    Returns:
        :obj:`numpy.ndarray`: (k, k).
    """
    count = len(sequences)
    pairs = [(i, j) for i in range(count) for j in range(i + 1, count)]

    def cell(pair: tuple) -> float:
        return dtw_distance(sequences[pair[0]], sequences[pair[1]])

    if workers > 1:
        with ThreadPoolExecutor(workers) as executor:
            values = list(executor.map(cell, pairs))
    else:
        values = [cell(pair) for pair in pairs]

    matrix = np.zeros((count, count))
    for (i, j), value in zip(pairs, values):
        matrix[i, j] = matrix[j, i] = value

    logger.debug(f'Computed {len(pairs)} DTW cells')
    return matrix
