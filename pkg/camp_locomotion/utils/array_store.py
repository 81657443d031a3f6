import logging
import os
from typing import Dict, Optional, Tuple

import numpy as np

from camp_locomotion.base import JSONType, dumps, loads
from camp_locomotion.exceptions import ClipFormatError, MissingRunError

ARRAY_STORE_VERSION = 1
PAYLOAD_DTYPE = '<f8'

logger = logging.getLogger(__name__)


def save_arrays(path: str, arrays: Dict[str, np.ndarray], meta: Optional[Dict[str, JSONType]] = None) -> None:
    """Сохраняет набор массивов в пару файлов ``<path>.json`` и ``<path>.bin``.

    Note:
        Манифест содержит версию формата, метаданные и для каждого массива имя, форму и смещение в байтах.
        Полезная нагрузка пишется подряд в порядке little-endian float64. Порядок записей в манифесте совпадает
        с порядком ключей в `arrays`.

    Args:
        path (:obj:`str`): Путь без расширения.
        arrays (:obj:`dict`): Имя массива -> массив.
        meta (:obj:`dict`, optional): Произвольные JSON метаданные.
    """
    entries = []
    offset = 0
    chunks = []
    for name, array in arrays.items():
        data = np.ascontiguousarray(np.asarray(array, dtype=np.float64)).astype(PAYLOAD_DTYPE, copy=False)
        entries.append({'name': name, 'dtype': PAYLOAD_DTYPE, 'shape': list(data.shape), 'offset': offset})
        chunks.append(data.tobytes())
        offset += data.nbytes

    manifest = {'format_version': ARRAY_STORE_VERSION, 'entries': entries, 'meta': meta or {}}

    with open(f'{path}.bin', 'wb') as f:
        for chunk in chunks:
            f.write(chunk)
    with open(f'{path}.json', 'w', encoding='utf-8') as f:
        f.write(dumps(manifest))

    logger.debug(f'Saved {len(entries)} arrays ({offset} bytes) to {path}')


def load_arrays(path: str) -> Tuple[Dict[str, np.ndarray], Dict[str, JSONType]]:
    """Загружает набор массивов, записанный :func:`save_arrays`.

    Args:
        path (:obj:`str`): Путь без расширения.

    Returns:
        :obj:`tuple`: Словарь массивов и метаданные.

    Raises:
        :class:`camp_locomotion.exceptions.MissingRunError`: Файлы не найдены.
        :class:`camp_locomotion.exceptions.ClipFormatError`: Несовместимая версия или повреждённый файл.
    """
    if not (os.path.isfile(f'{path}.json') and os.path.isfile(f'{path}.bin')):
        raise MissingRunError(f'Array store {path} not found')

    with open(f'{path}.json', encoding='utf-8') as f:
        manifest = loads(f.read())
    with open(f'{path}.bin', 'rb') as f:
        payload = f.read()

    if not isinstance(manifest, dict) or manifest.get('format_version') != ARRAY_STORE_VERSION:
        raise ClipFormatError(f'{path}.json: unsupported array store version')

    arrays = {}
    for entry in manifest['entries']:
        shape = tuple(entry['shape'])
        count = int(np.prod(shape)) if shape else 1
        start = entry['offset']
        end = start + count * 8
        if end > len(payload):
            raise ClipFormatError(f'{path}.bin: truncated payload for {entry["name"]}')
        arrays[entry['name']] = np.frombuffer(payload[start:end], dtype=PAYLOAD_DTYPE).reshape(shape).astype(np.float64)

    return arrays, manifest.get('meta', {})
