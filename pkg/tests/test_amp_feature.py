import numpy as np
import pytest

from camp_locomotion import AmpFeature, DataError, clip_amp_features, extract_amp_feature
from camp_locomotion.motion.amp_feature import AMP_FEATURE_DIM, AMP_FEATURE_SLICES


class TestAmpFeature:
    dim = 43
    base_height = 0.3
    forward_velocity = 0.5

    def test_expected_values(self, trot_clip):
        feature = extract_amp_feature(trot_clip.frame(5), trot_clip.frame(4), trot_clip.dt)

        assert AMP_FEATURE_DIM == self.dim
        assert feature.flatten().shape == (self.dim,)
        assert feature.base_height == pytest.approx([self.base_height])
        assert feature.base_linear_velocity == pytest.approx([self.forward_velocity, 0.0, 0.0], abs=1e-9)
        assert feature.base_angular_velocity == pytest.approx([0.0, 0.0, 0.0], abs=1e-9)
        assert np.array_equal(feature.foot_positions, trot_clip.foot_positions[5].reshape(12))

    def test_clip_features(self, trot_clip):
        features = clip_amp_features(trot_clip)

        assert features.shape == (len(trot_clip), self.dim)
        assert np.allclose(features[:, AMP_FEATURE_SLICES['base_height']], self.base_height)
        assert np.allclose(features[:, AMP_FEATURE_SLICES['base_linear_velocity']][:, 0], self.forward_velocity)
        assert np.array_equal(features[:, AMP_FEATURE_SLICES['joint_positions']], trot_clip.joint_positions)

    def test_unflatten(self, trot_clip):
        vector = clip_amp_features(trot_clip)[7]
        feature = AmpFeature.unflatten(vector)

        assert np.array_equal(feature.joint_velocities, trot_clip.joint_velocities[7])
        assert np.array_equal(feature.flatten(), vector)

    def test_unflatten_wrong_shape(self):
        with pytest.raises(DataError):
            AmpFeature.unflatten(np.zeros(self.dim - 1))

    def test_single_frame_clip(self, trot_clip):
        with pytest.raises(DataError):
            clip_amp_features(trot_clip.__class__.from_frames(0, trot_clip.dt, trot_clip.frames[:1]))

    def test_invalid_dt(self, trot_clip):
        with pytest.raises(DataError):
            extract_amp_feature(trot_clip.frame(1), trot_clip.frame(0), 0.0)
