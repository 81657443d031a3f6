import csv
import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from camp_locomotion.analysis.contacts import ContactMetrics
from camp_locomotion.exceptions import ClipFormatError, MissingRunError
from camp_locomotion.motion.kinematics import LEG_NAMES
from camp_locomotion.motion.skills import skill_name

EXPORT_FORMAT_VERSION = 1
DTW_KIND = 'camp-dtw'
CLUSTERS_KIND = 'camp-clusters'
PROJECTION_KIND = 'camp-projection'
CONTACTS_KIND = 'camp-contacts'

logger = logging.getLogger(__name__)


def _header(kind: str, **fields: object) -> str:
    extra = ''.join(f' {key}={value}' for key, value in fields.items())
    return f'# {kind} format_version={EXPORT_FORMAT_VERSION}{extra}\n'


def _read_versioned(path: str, kind: str) -> Tuple[Dict[str, str], List[List[str]]]:
    """Читает CSV с версионированной строкой-заголовком ``# <kind> format_version=N key=value ...``."""
    try:
        with open(path, newline='', encoding='utf-8') as f:
            first = f.readline().split()
            rows = list(csv.reader(f))
    except FileNotFoundError as e:
        raise MissingRunError(f'{path} not found') from e

    if len(first) < 3 or first[0] != '#' or first[1] != kind:
        raise ClipFormatError(f'{path}: not a {kind} file')
    fields = dict(item.split('=', 1) for item in first[2:] if '=' in item)
    if fields.get('format_version') != str(EXPORT_FORMAT_VERSION):
        raise ClipFormatError(f'{path}: unsupported {kind} version {fields.get("format_version")}')
    return fields, rows


def write_dtw_matrix(path: str, names: Sequence[str], matrix: np.ndarray) -> None:
    """Матрица DTW: строка с именами последовательностей, затем строка на каждую последовательность."""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.shape != (len(names), len(names)):
        raise ClipFormatError(f'Matrix shape {matrix.shape} does not match {len(names)} names')

    with open(path, 'w', newline='', encoding='utf-8') as f:
        f.write(_header(DTW_KIND))
        writer = csv.writer(f)
        writer.writerow(['name', *names])
        for name, row in zip(names, matrix):
            writer.writerow([name, *[repr(float(v)) for v in row]])
    logger.debug(f'Wrote {len(names)}x{len(names)} DTW matrix to {path}')


def read_dtw_matrix(path: str) -> Tuple[List[str], np.ndarray]:
    _, rows = _read_versioned(path, DTW_KIND)
    names = rows[0][1:]
    matrix = np.array([[float(v) for v in row[1:]] for row in rows[1:]], dtype=np.float64)
    return names, matrix.reshape(len(names), len(names))


def write_cluster_assignments(path: str, labels: Sequence[int], assignments: np.ndarray, purity: float) -> None:
    """Назначения кластеров по точкам, чистота записывается в строку-заголовок."""
    with open(path, 'w', newline='', encoding='utf-8') as f:
        f.write(_header(CLUSTERS_KIND, purity=repr(float(purity))))
        writer = csv.writer(f)
        writer.writerow(['index', 'label', 'skill_name', 'cluster'])
        for i, (label, cluster) in enumerate(zip(labels, assignments)):
            writer.writerow([i, int(label), skill_name(int(label)), int(cluster)])
    logger.debug(f'Wrote {len(labels)} cluster assignments to {path}')


def read_cluster_assignments(path: str) -> Tuple[np.ndarray, np.ndarray, float]:
    """Метки (n,), номера кластеров (n,) и чистота."""
    fields, rows = _read_versioned(path, CLUSTERS_KIND)
    body = rows[1:]
    labels = np.array([int(row[1]) for row in body], dtype=np.int64)
    clusters = np.array([int(row[3]) for row in body], dtype=np.int64)
    return labels, clusters, float(fields['purity'])


def write_projection(
    path: str, labels: Sequence[int], coordinates: np.ndarray, explained_variance: np.ndarray
) -> None:
    coordinates = np.asarray(coordinates, dtype=np.float64)
    dims = coordinates.shape[1]
    variance = ';'.join(repr(float(v)) for v in explained_variance)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        f.write(_header(PROJECTION_KIND, explained_variance=variance))
        writer = csv.writer(f)
        writer.writerow(['index', 'label', 'skill_name', *[f'pc{i + 1}' for i in range(dims)]])
        for i, (label, point) in enumerate(zip(labels, coordinates)):
            writer.writerow([i, int(label), skill_name(int(label)), *[repr(float(v)) for v in point]])
    logger.debug(f'Wrote {len(coordinates)} projected points to {path}')


def read_projection(path: str) -> Tuple[np.ndarray, np.ndarray]:
    _, rows = _read_versioned(path, PROJECTION_KIND)
    body = rows[1:]
    labels = np.array([int(row[1]) for row in body], dtype=np.int64)
    coordinates = np.array([[float(v) for v in row[3:]] for row in body], dtype=np.float64)
    return labels, coordinates


def write_contact_table(path: str, rows: Sequence[Tuple[str, int, ContactMetrics]]) -> None:
    """Коэффициенты опоры и фазовые сдвиги: строка на (источник, навык)."""
    with open(path, 'w', newline='', encoding='utf-8') as f:
        f.write(_header(CONTACTS_KIND))
        writer = csv.writer(f)
        duty = [f'duty_{leg}' for leg in LEG_NAMES]
        offsets = [f'offset_{leg}' for leg in LEG_NAMES]
        writer.writerow(['source', 'label', 'skill_name', *duty, *offsets])
        for source, label, metrics in rows:
            writer.writerow(
                [
                    source,
                    int(label),
                    skill_name(int(label)),
                    *[repr(float(v)) for v in metrics.duty_factors],
                    *[repr(float(v)) for v in metrics.phase_offsets],
                ]
            )
