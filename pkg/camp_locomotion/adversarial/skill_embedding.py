import logging
from typing import Dict, Sequence

import numpy as np

from camp_locomotion.exceptions import DataError
from camp_locomotion.utils.seeding import SeedLike, make_rng

logger = logging.getLogger(__name__)


class SkillEmbeddingTable:
    """Обучаемая таблица E: метка навыка -> латентный вектор z ∈ ℝ^{d_z}.

    Note:
        Одна строка на навык, строки упорядочены по возрастанию метки. Инициализация: случайные строки единичной
        нормы. `params` является плоским представлением `weights`.

    Args:
        labels (:obj:`Sequence` из :obj:`int`): Метки навыков, представленные в таблице.
        dim (:obj:`int`, optional): Размерность латентного вектора.
        rng (:obj:`int` | :obj:`numpy.random.Generator`, optional): Генератор для инициализации.
    """

    def __init__(self, labels: Sequence[int], dim: int = 8, rng: SeedLike = None) -> None:
        self.labels = sorted(int(label) for label in labels)
        if not self.labels or len(set(self.labels)) != len(self.labels):
            raise DataError(f'Embedding table needs distinct labels, got {list(labels)}')

        self.dim = dim
        self._rows = {label: row for row, label in enumerate(self.labels)}

        weights = make_rng(rng).standard_normal((len(self.labels), dim))
        weights /= np.linalg.norm(weights, axis=1, keepdims=True)
        self.params = weights.reshape(-1)

    @property
    def weights(self) -> np.ndarray:
        return self.params.reshape(len(self.labels), self.dim)

    def __len__(self) -> int:
        return len(self.labels)

    def rows(self, labels: np.ndarray) -> np.ndarray:
        try:
            return np.array([self._rows[int(label)] for label in np.asarray(labels).reshape(-1)], dtype=np.int64)
        except KeyError as e:
            raise DataError(f'Skill label {e.args[0]} is not in the embedding table {self.labels}') from e

    def embed(self, labels: np.ndarray) -> np.ndarray:
        """z = E(y) для каждой метки, (B, d_z)."""
        return self.weights[self.rows(labels)]

    def accumulate_grad(self, labels: np.ndarray, grads: np.ndarray) -> np.ndarray:
        """Плоский градиент по таблице из градиентов по выбранным строкам (B, d_z)."""
        out = np.zeros_like(self.weights)
        np.add.at(out, self.rows(labels), grads)
        return out.reshape(-1)

    def to_arrays(self, prefix: str) -> Dict[str, np.ndarray]:
        return {f'{prefix}weights': self.weights, f'{prefix}labels': np.asarray(self.labels, dtype=np.float64)}

    def load_arrays(self, arrays: Dict[str, np.ndarray], prefix: str) -> None:
        labels = [int(label) for label in arrays[f'{prefix}labels']]
        if labels != self.labels:
            raise DataError(f'Checkpoint embedding labels {labels} differ from {self.labels}')
        self.params[...] = arrays[f'{prefix}weights'].reshape(-1)
