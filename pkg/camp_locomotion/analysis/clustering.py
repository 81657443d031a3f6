import logging
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist
from sklearn.cluster import KMeans
from sklearn.decomposition import PCA
from sklearn.metrics.cluster import contingency_matrix

from camp_locomotion.exceptions import EmptySelectionError

logger = logging.getLogger(__name__)


@dataclass
class ClusterResult:
    """Результат кластеризации.

    Attributes:
        assignments (:obj:`numpy.ndarray`): Номер кластера каждой точки (n,).
        purity (:obj:`float`): Σ_кластеров max число точек одной метки / n.
        centers (:obj:`numpy.ndarray`): Центры кластеров (k, d).
    """

    assignments: np.ndarray
    purity: float
    centers: np.ndarray


@dataclass
class Projection:
    """Проекция на главные компоненты.

    Attributes:
        coordinates (:obj:`numpy.ndarray`): (n, dims).
        explained_variance (:obj:`numpy.ndarray`): Дисперсии вдоль компонент (dims,).
        components (:obj:`numpy.ndarray`): Компоненты (dims, d), знак выбран так, что наибольшая по модулю
            нагрузка положительна.
        mean (:obj:`numpy.ndarray`): Среднее данных (d,).
    """

    coordinates: np.ndarray
    explained_variance: np.ndarray
    components: np.ndarray
    mean: np.ndarray


def spread_seeds(features: np.ndarray, k: int) -> np.ndarray:
    """Детерминированные начальные центры: точка, ближайшая к среднему, затем жадно самые удалённые точки."""
    first = int(np.argmin(np.linalg.norm(features - features.mean(axis=0), axis=1)))
    chosen = [first]
    distance = cdist(features, features[[first]])[:, 0]
    for _ in range(1, k):
        index = int(np.argmax(distance))
        chosen.append(index)
        distance = np.minimum(distance, cdist(features, features[[index]])[:, 0])
    return features[chosen].copy()


def purity(labels: np.ndarray, assignments: np.ndarray) -> float:
    table = contingency_matrix(labels, assignments)
    return float(table.max(axis=0).sum() / table.sum())


def kmeans_purity(features: np.ndarray, labels: np.ndarray, k: int) -> ClusterResult:
    """K-means с детерминированной инициализацией и чистота кластеров относительно истинных меток.

    Args:
        features (:obj:`numpy.ndarray`): Точки (n, d).
        labels (:obj:`numpy.ndarray`): Истинные метки (n,).
        k (:obj:`int`): Число кластеров.

    Returns:
        :obj:`camp_locomotion.analysis.clustering.ClusterResult`: Назначения, чистота и центры.

    Raises:
        :class:`camp_locomotion.exceptions.EmptySelectionError`: k < 1 или k больше числа точек.
    """
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels)
    if k < 1 or k > len(features):
        raise EmptySelectionError(f'Cannot form {k} clusters from {len(features)} points')

    model = KMeans(n_clusters=k, init=spread_seeds(features, k), n_init=1, random_state=0)
    assignments = model.fit_predict(features)

    return ClusterResult(assignments=assignments, purity=purity(labels, assignments), centers=model.cluster_centers_)


def pca_project(features: np.ndarray, dims: int = 2) -> Projection:
    """Проекция на `dims` главных компонент с детерминированным выбором знака."""
    features = np.asarray(features, dtype=np.float64)
    if len(features) < dims:
        raise EmptySelectionError(f'PCA to {dims} dimensions needs at least {dims} samples, got {len(features)}')

    pca = PCA(n_components=dims, svd_solver='full').fit(features)
    components = pca.components_.copy()
    signs = np.sign(components[np.arange(dims), np.argmax(np.abs(components), axis=1)])
    components *= np.where(signs == 0, 1.0, signs)[:, None]

    return Projection(
        coordinates=(features - pca.mean_) @ components.T,
        explained_variance=pca.explained_variance_.copy(),
        components=components,
        mean=pca.mean_.copy(),
    )
