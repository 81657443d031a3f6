import json
import os
import shutil

import numpy as np
import pytest

from camp_locomotion import (
    AblationConfig,
    CampTrainer,
    EmptySelectionError,
    ExperimentConfig,
    MissingRunError,
    preload_transitions,
)
from camp_locomotion.ppo.metrics import METRIC_COLUMNS, MetricsWriter, read_metrics
from camp_locomotion.ppo.trainer import latest_checkpoint, load_run_config, skill_velocities
from camp_locomotion.utils.array_store import load_arrays


class TestMetrics:
    def test_append_and_read(self, tmp_path):
        path = os.path.join(tmp_path, 'metrics.csv')
        writer = MetricsWriter(path)
        for iteration in range(3):
            writer.append({'iteration': iteration, 'reward_total': 0.5 * iteration, 'unknown': 1.0})

        rows = read_metrics(path)

        assert [row['iteration'] for row in rows] == [0, 1, 2]
        assert rows[2]['reward_total'] == 1.0
        assert rows[0]['kl'] == 0.0
        assert list(rows[0]) == METRIC_COLUMNS

    def test_resume_drops_later_rows(self, tmp_path):
        path = os.path.join(tmp_path, 'metrics.csv')
        writer = MetricsWriter(path)
        for iteration in range(4):
            writer.append({'iteration': iteration, 'reward_task': float(iteration)})

        MetricsWriter(path, start_iteration=2).append({'iteration': 2, 'reward_task': 9.0})

        assert [(row['iteration'], row['reward_task']) for row in read_metrics(path)] == [(0, 0), (1, 1), (2, 9)]

    def test_missing_file(self, tmp_path):
        assert read_metrics(os.path.join(tmp_path, 'absent.csv')) == []


class TestCampTrainer:
    iterations = 2
    checkpoints = ['iter_000000', 'iter_000001', 'iter_000002']

    def test_run_directory(self, trained_run):
        files = sorted(os.listdir(os.path.join(trained_run, 'checkpoints')))

        assert files == sorted(f'{name}.{ext}' for name in self.checkpoints for ext in ('bin', 'json'))
        assert os.path.isfile(os.path.join(trained_run, 'config.json'))
        assert latest_checkpoint(trained_run).endswith('iter_000002')

    def test_metrics(self, trained_run):
        rows = read_metrics(os.path.join(trained_run, 'metrics.csv'))

        assert [row['iteration'] for row in rows] == [0, 1]
        for row in rows:
            assert np.all(np.isfinite(list(row.values())))
            assert 0 <= row['reward_task'] <= 2.25
            assert 0 <= row['reward_style'] <= 1

    def test_saved_config_is_resolved(self, trained_run, tiny_config):
        config = load_run_config(trained_run)

        assert config.trainer.normalizer_update_iterations == 1
        assert config.trainer.skills == tiny_config.trainer.skills
        assert config == tiny_config.resolved()
        assert config.to_dict() == tiny_config.resolved().to_dict()

    def test_checkpoint_meta(self, trained_run):
        _, meta = load_arrays(latest_checkpoint(trained_run))

        assert meta['iteration'] == self.iterations
        assert meta['skills'] == ['trot_2Hz', 'pace_2Hz']
        assert len(meta['env_rngs']) == 2

    def test_resume_matches_continuous_run(self, tiny_config, tiny_expert, trained_run, tmp_path):
        out_dir = str(tmp_path)
        trainer = CampTrainer(tiny_config, tiny_expert, out_dir)
        trainer.train(1)
        trainer.close()

        resumed = CampTrainer.resume(out_dir, tiny_expert)
        assert resumed.iteration == 1
        resumed.train()
        resumed.close()

        assert read_metrics(os.path.join(out_dir, 'metrics.csv')) == read_metrics(
            os.path.join(trained_run, 'metrics.csv')
        )
        ours, _ = load_arrays(latest_checkpoint(out_dir))
        theirs, _ = load_arrays(latest_checkpoint(trained_run))
        assert np.array_equal(ours['ac.actor'], theirs['ac.actor'])
        assert np.array_equal(ours['adv.disc'], theirs['adv.disc'])

    def test_resume_extends_iterations(self, tiny_expert, trained_run, tmp_path):
        out_dir = os.path.join(tmp_path, 'copy')
        os.makedirs(os.path.join(out_dir, 'checkpoints'))
        for name in ('config.json', 'metrics.csv', 'checkpoints/iter_000002.bin', 'checkpoints/iter_000002.json'):
            shutil.copyfile(os.path.join(trained_run, name), os.path.join(out_dir, name))

        trainer = CampTrainer.resume(out_dir, tiny_expert, iterations=3)
        rows = trainer.train()
        trainer.close()

        assert [row['iteration'] for row in rows] == [2]
        assert [row['iteration'] for row in read_metrics(os.path.join(out_dir, 'metrics.csv'))] == [0, 1, 2]
        with open(os.path.join(out_dir, 'config.json'), encoding='utf-8') as f:
            assert json.load(f)['trainer']['iterations'] == 3

    def test_missing_expert_skill(self, tiny_config, clip_factory, tmp_path):
        expert = preload_transitions([clip_factory.get(0)], 20, rng=0)

        with pytest.raises(EmptySelectionError):
            CampTrainer(tiny_config, expert, str(tmp_path))

    def test_resume_without_run(self, tiny_expert, tmp_path):
        with pytest.raises(MissingRunError):
            CampTrainer.resume(str(tmp_path), tiny_expert)

    def test_skill_velocities(self, tiny_config):
        assert skill_velocities(tiny_config) == pytest.approx(np.array([[0.5, 0.0, 0.0], [0.5, 0.0, 0.0]]))

    def test_ablation_flags(self, tiny_config, tiny_expert, tmp_path):
        config = tiny_config.replace(ablation=AblationConfig(disable_skill_disc=True, disable_skill_obs=True))
        trainer = CampTrainer(config, tiny_expert, str(tmp_path))
        trainer.close()

        assert trainer.discriminators.skill_disc is None
        assert trainer.config.trainer.rewards.skill == 0.0
        assert trainer.env.disable_skill_obs

    def test_default_config(self):
        assert ExperimentConfig().trainer.skill_labels == [0, 2, 4]
