import os

import numpy as np
import pytest

from camp_locomotion import ClipFormatError, MissingRunError, RolloutTrace, read_trace, write_trace
from camp_locomotion.sim.rollout_trace import trace_columns


def make_trace(skills, counts, dt=0.02, seed=0):
    rng = np.random.default_rng(seed)
    steps = sum(counts)
    return RolloutTrace(
        time=np.arange(steps) * dt,
        skill=np.repeat(skills, counts).astype(np.int64),
        velocity=np.tile([0.5, 0.0, 0.0], (steps, 1)),
        joint_targets=rng.normal(size=(steps, 12)),
        joint_positions=rng.normal(size=(steps, 12)),
        contacts=rng.random((steps, 4)) < 0.5,
        terminated=np.zeros(steps, dtype=bool),
    )


class TestRolloutTrace:
    skills = [0, 2, 4]
    counts = [175, 175, 150]
    dt = 0.02

    @pytest.fixture
    def trace(self):
        return make_trace(self.skills, self.counts, self.dt)

    def test_expected_values(self, trace):
        assert len(trace) == 500
        assert trace.dt == pytest.approx(self.dt)
        assert len(trace_columns()) == 35

    def test_segments(self, trace):
        segments = trace.segments()

        assert [label for label, _ in segments] == self.skills
        assert [len(segment) for _, segment in segments] == self.counts
        assert segments[1][1].time[0] == pytest.approx(3.5)

    def test_window(self, trace):
        window = trace.window(2.0, 4.0)

        assert len(window) == 100
        assert window.time[0] == pytest.approx(2.0)
        assert window.time[-1] == pytest.approx(3.98)
        assert set(window.skill.tolist()) == {0, 2}

    def test_empty(self):
        trace = make_trace([0], [0])

        assert trace.segments() == []
        assert trace.dt == 0.0

    def test_write_read(self, trace, tmp_path):
        path = os.path.join(tmp_path, 'trace.csv')
        write_trace(path, trace)
        restored = read_trace(path)

        assert np.array_equal(restored.time, trace.time)
        assert np.array_equal(restored.skill, trace.skill)
        assert np.array_equal(restored.joint_targets, trace.joint_targets)
        assert np.array_equal(restored.contacts, trace.contacts)
        assert np.array_equal(restored.terminated, trace.terminated)

    def test_skill_names_in_file(self, trace, tmp_path):
        path = os.path.join(tmp_path, 'trace.csv')
        write_trace(path, trace)

        with open(path, encoding='utf-8') as f:
            lines = f.read().splitlines()

        assert lines[0] == '# camp-trace format_version=1'
        assert lines[1].split(',') == trace_columns()
        assert lines[2].split(',')[2] == 'trot_2Hz'
        assert len(lines) == 502

    def test_write_read_empty(self, tmp_path):
        path = os.path.join(tmp_path, 'trace.csv')
        write_trace(path, make_trace([0], [0]))

        restored = read_trace(path)

        assert len(restored) == 0
        assert restored.joint_targets.shape == (0, 12)

    def test_bad_header(self, tmp_path):
        path = os.path.join(tmp_path, 'trace.csv')
        with open(path, 'w', encoding='utf-8') as f:
            f.write('time,skill\n0.0,0\n')

        with pytest.raises(ClipFormatError):
            read_trace(path)

    def test_missing(self, tmp_path):
        with pytest.raises(MissingRunError):
            read_trace(os.path.join(tmp_path, 'absent.csv'))
