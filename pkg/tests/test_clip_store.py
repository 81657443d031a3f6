import os

import numpy as np
import pytest

from camp_locomotion import (
    ClipFormatError,
    EmptySelectionError,
    MissingRunError,
    StoreExistsError,
    read_clip_store,
    write_clip_store,
)
from camp_locomotion.motion.clip_store import MANIFEST_NAME, decode_clip, encode_clip, read_clip


class TestClipStore:
    file_names = [
        'trot_2Hz.clip',
        'trot_4Hz.clip',
        'pace_2Hz.clip',
        'pace_4Hz.clip',
        'bound_2Hz.clip',
        'bound_4Hz.clip',
        'pronk_2Hz.clip',
        'pronk_4Hz.clip',
    ]

    def test_expected_values(self, tmp_path, expert_clips):
        names = write_clip_store(str(tmp_path), expert_clips)

        assert names == self.file_names
        assert sorted(os.listdir(tmp_path)) == sorted(self.file_names + [MANIFEST_NAME])

    def test_read_back(self, tmp_path, expert_clips):
        write_clip_store(str(tmp_path), expert_clips)
        clips = read_clip_store(str(tmp_path))

        assert [clip.label for clip in clips] == [clip.label for clip in expert_clips]
        for clip, original in zip(clips, expert_clips):
            assert clip.dt == original.dt
            assert clip.spec == original.spec
            assert np.array_equal(clip.joint_positions, original.joint_positions)
            assert np.array_equal(clip.foot_positions, original.foot_positions)

    def test_read_selected_labels(self, tmp_path, expert_clips):
        write_clip_store(str(tmp_path), expert_clips)

        assert [clip.label for clip in read_clip_store(str(tmp_path), labels=[4, 1])] == [1, 4]

    def test_encoding_is_stable(self, trot_clip):
        assert encode_clip(trot_clip) == encode_clip(trot_clip)
        assert encode_clip(decode_clip(encode_clip(trot_clip))) == encode_clip(trot_clip)

    def test_refuses_non_empty_dir(self, tmp_path, trot_clip):
        write_clip_store(str(tmp_path), [trot_clip])

        with pytest.raises(StoreExistsError):
            write_clip_store(str(tmp_path), [trot_clip])
        write_clip_store(str(tmp_path), [trot_clip], force=True)

    def test_empty_store(self, tmp_path):
        with pytest.raises(EmptySelectionError):
            write_clip_store(str(tmp_path), [])

    def test_missing_store(self, tmp_path):
        with pytest.raises(MissingRunError):
            read_clip_store(str(tmp_path / 'absent'))

    def test_bad_magic(self, trot_clip):
        data = encode_clip(trot_clip)

        with pytest.raises(ClipFormatError, match='magic'):
            decode_clip(b'NOTACLIP' + data[8:])

    def test_truncated(self, tmp_path, trot_clip):
        path = tmp_path / 'trot_2Hz.clip'
        path.write_bytes(encode_clip(trot_clip)[:-8])

        with pytest.raises(ClipFormatError, match='payload'):
            read_clip(str(path))

    def test_too_short(self):
        with pytest.raises(ClipFormatError):
            decode_clip(b'CAMP')
