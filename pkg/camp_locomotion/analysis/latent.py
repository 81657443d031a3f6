import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from camp_locomotion.adversarial.normalizer import FeatureNormalizer, RawFeatures
from camp_locomotion.adversarial.skill_discriminator import SkillDiscriminator
from camp_locomotion.exceptions import DataError, EmptySelectionError
from camp_locomotion.motion.amp_feature import clip_amp_features
from camp_locomotion.motion.motion_clip import MotionClip
from camp_locomotion.motion.skills import skill_name

logger = logging.getLogger(__name__)


@dataclass
class LatentSequence:
    """Последовательность предсказаний ẑ по скользящим парам переходов одного клипа или роллаута.

    Attributes:
        values (:obj:`numpy.ndarray`): (n − 1, d_z) для n кадров.
        label (:obj:`int`): Метка навыка источника.
        dt (:obj:`float`): Шаг по времени между элементами, с.
    """

    values: np.ndarray
    label: int
    dt: float

    def __len__(self) -> int:
        return len(self.values)

    @property
    def name(self) -> str:
        return skill_name(self.label)

    def downsample(self, rate: float) -> 'LatentSequence':
        """Прореживание до частоты не выше `rate` Гц с целым шагом."""
        stride = max(1, int(round(1.0 / (rate * self.dt))))
        return LatentSequence(self.values[::stride], self.label, self.dt * stride)


def latent_sequence_from_features(
    features: np.ndarray, label: int, dt: float, skill_disc: SkillDiscriminator, normalizer: FeatureNormalizer
) -> LatentSequence:
    """ẑ для каждой пары последовательных кадров массива AMP признаков (n, 43)."""
    features = np.asarray(features, dtype=np.float64)
    if len(features) < 2:
        raise DataError(f'Latent sequence needs at least 2 frames, got {len(features)}')

    s_t = normalizer.normalize(RawFeatures(features[:-1])).values
    s_next = normalizer.normalize(RawFeatures(features[1:])).values
    values = skill_disc.net(np.concatenate([s_t, s_next], axis=1))
    return LatentSequence(values=values, label=int(label), dt=float(dt))


def latent_sequences(
    clips: Sequence[MotionClip], skill_disc: SkillDiscriminator, normalizer: FeatureNormalizer
) -> List[LatentSequence]:
    """Латентные последовательности эталонных клипов, по одной на клип."""
    return [
        latent_sequence_from_features(clip_amp_features(clip), clip.label, clip.dt, skill_disc, normalizer)
        for clip in clips
    ]


def standardize_sequences(sequences: Sequence[LatentSequence]) -> List[LatentSequence]:
    """Стандартизирует координаты по объединённому набору всех последовательностей (среднее 0, дисперсия 1)."""
    if not sequences:
        raise EmptySelectionError('No latent sequences to standardize')

    pooled = np.concatenate([seq.values for seq in sequences])
    mean = pooled.mean(axis=0)
    std = pooled.std(axis=0)
    std = np.where(std > 0, std, 1.0)

    return [LatentSequence((seq.values - mean) / std, seq.label, seq.dt) for seq in sequences]
