"""Хранилище клипов: один файл ``<skill>.clip`` на клип и общий ``manifest.json``.

Формат файла клипа (все целые little-endian):

* 8 байт: сигнатура ``CAMPCLIP``;
* uint16: версия формата;
* uint32: длина заголовка N в байтах;
* N байт: заголовок JSON в UTF-8 с отсортированными ключами;
* ``frame_count × 55`` значений float64 little-endian, кадр за кадром, поля в порядке ``fields`` заголовка.
"""
import logging
import os
import struct
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from camp_locomotion.base import dumps, loads
from camp_locomotion.exceptions import ClipFormatError, EmptySelectionError, MissingRunError, StoreExistsError
from camp_locomotion.motion.gait_spec import GaitSpec
from camp_locomotion.motion.motion_clip import MotionClip
from camp_locomotion.motion.skills import skill_name
from camp_locomotion.utils.log import log

CLIP_MAGIC = b'CAMPCLIP'
CLIP_FORMAT_VERSION = 1
CLIP_SUFFIX = '.clip'
MANIFEST_NAME = 'manifest.json'
_PREFIX = struct.Struct('<8sHI')

CLIP_FIELDS: Tuple[Tuple[str, int], ...] = (
    ('body_positions', 3),
    ('body_orientations', 4),
    ('joint_positions', 12),
    ('joint_velocities', 12),
    ('foot_positions', 12),
    ('foot_velocities', 12),
)
RECORD_WIDTH = sum(width for _, width in CLIP_FIELDS)

logger = logging.getLogger(__name__)


def clip_file_name(clip: MotionClip) -> str:
    return f'{skill_name(clip.label)}{CLIP_SUFFIX}'


def encode_clip(clip: MotionClip) -> bytes:
    header = {
        'format_version': CLIP_FORMAT_VERSION,
        'label': clip.label,
        'skill': skill_name(clip.label),
        'dt': clip.dt,
        'frame_count': len(clip),
        'fields': [[name, width] for name, width in CLIP_FIELDS],
        'gait_spec': clip.spec.to_dict() if clip.spec is not None else None,
    }
    header_bytes = dumps(header).encode('utf-8')

    records = np.concatenate([getattr(clip, name).reshape(len(clip), width) for name, width in CLIP_FIELDS], axis=1)

    prefix = _PREFIX.pack(CLIP_MAGIC, CLIP_FORMAT_VERSION, len(header_bytes))
    return prefix + header_bytes + records.astype('<f8').tobytes()


def decode_clip(data: bytes, source: str = '<bytes>') -> MotionClip:
    """Разбирает байтовое представление клипа.

    Raises:
        :class:`camp_locomotion.exceptions.ClipFormatError`: Неверная сигнатура, версия, поля или длина записи.
    """
    if len(data) < _PREFIX.size:
        raise ClipFormatError(f'{source}: file too short')

    magic, version, header_length = _PREFIX.unpack_from(data)
    if magic != CLIP_MAGIC:
        raise ClipFormatError(f'{source}: bad magic {magic!r}')
    if version != CLIP_FORMAT_VERSION:
        raise ClipFormatError(f'{source}: unsupported format version {version}')

    body_start = _PREFIX.size + header_length
    try:
        header = loads(data[_PREFIX.size:body_start].decode('utf-8'))
    except ValueError as e:
        raise ClipFormatError(f'{source}: unreadable header') from e

    fields = [tuple(item) for item in header.get('fields', [])]
    if fields != list(CLIP_FIELDS):
        raise ClipFormatError(f'{source}: unexpected field layout {fields}')

    count = int(header['frame_count'])
    expected = count * RECORD_WIDTH * 8
    if len(data) - body_start != expected:
        raise ClipFormatError(f'{source}: expected {expected} payload bytes, found {len(data) - body_start}')

    records = np.frombuffer(data[body_start:], dtype='<f8').reshape(count, RECORD_WIDTH).astype(np.float64)

    columns = {}
    start = 0
    for name, width in CLIP_FIELDS:
        columns[name] = records[:, start:start + width]
        start += width

    spec = GaitSpec.de_json(header['gait_spec']) if header.get('gait_spec') else None

    return MotionClip(
        label=int(header['label']),
        dt=float(header['dt']),
        body_positions=columns['body_positions'],
        body_orientations=columns['body_orientations'],
        joint_positions=columns['joint_positions'],
        joint_velocities=columns['joint_velocities'],
        foot_positions=columns['foot_positions'].reshape(count, 4, 3),
        foot_velocities=columns['foot_velocities'].reshape(count, 4, 3),
        spec=spec,
    )


def write_clip(path: str, clip: MotionClip) -> None:
    with open(path, 'wb') as f:
        f.write(encode_clip(clip))


def read_clip(path: str) -> MotionClip:
    with open(path, 'rb') as f:
        return decode_clip(f.read(), source=path)


def ensure_output_dir(out_dir: str, force: bool = False) -> None:
    """Создаёт каталог вывода, отказываясь писать в непустой каталог без `force`.

    Raises:
        :class:`camp_locomotion.exceptions.StoreExistsError`: Каталог не пуст и `force` не задан.
    """
    if os.path.isdir(out_dir) and os.listdir(out_dir) and not force:
        raise StoreExistsError(f'{out_dir} is not empty, pass --force to overwrite')
    os.makedirs(out_dir, exist_ok=True)


@log
def write_clip_store(out_dir: str, clips: Sequence[MotionClip], force: bool = False) -> List[str]:
    """Записывает клипы и манифест в каталог.

    Args:
        out_dir (:obj:`str`): Каталог хранилища.
        clips (:obj:`Sequence` из :obj:`camp_locomotion.MotionClip`): Клипы.
        force (:obj:`bool`, optional): Разрешить запись в непустой каталог.

    Returns:
        :obj:`list` из :obj:`str`: Имена записанных файлов.
    """
    if not clips:
        raise EmptySelectionError('Refusing to write an empty clip store')
    ensure_output_dir(out_dir, force)

    names = []
    entries = []
    for clip in sorted(clips, key=lambda c: c.label):
        name = clip_file_name(clip)
        write_clip(os.path.join(out_dir, name), clip)
        names.append(name)
        entries.append({'file': name, 'label': clip.label, 'skill': skill_name(clip.label), 'frame_count': len(clip)})

    manifest = {'format_version': CLIP_FORMAT_VERSION, 'clips': entries}
    with open(os.path.join(out_dir, MANIFEST_NAME), 'w', encoding='utf-8') as f:
        f.write(dumps(manifest))

    logger.info(f'Wrote {len(names)} clips to {out_dir}')
    return names


@log
def read_clip_store(store_dir: str, labels: Optional[Sequence[int]] = None) -> List[MotionClip]:
    """Читает клипы, перечисленные в манифесте хранилища.

    Args:
        store_dir (:obj:`str`): Каталог хранилища.
        labels (:obj:`Sequence` из :obj:`int`, optional): Оставить только эти метки.

    Returns:
        :obj:`list` из :obj:`camp_locomotion.MotionClip`: Клипы в порядке меток.
    """
    manifest_path = os.path.join(store_dir, MANIFEST_NAME)
    if not os.path.isfile(manifest_path):
        raise MissingRunError(f'No clip store manifest at {manifest_path}')

    with open(manifest_path, encoding='utf-8') as f:
        manifest: Dict = loads(f.read())  # type: ignore[assignment]

    clips = []
    for entry in manifest.get('clips', []):
        if labels is not None and entry['label'] not in labels:
            continue
        clips.append(read_clip(os.path.join(store_dir, entry['file'])))

    if not clips:
        raise EmptySelectionError(f'No clips selected from {store_dir}')
    return clips
