import json
import os

import pytest

from camp_locomotion import AblationConfig, ConfigError, ExperimentConfig
from camp_locomotion.config.ablation_config import ABLATION_VARIANTS


class TestExperimentConfig:
    seed = 7
    skills = ['pace_4Hz', 'trot_2Hz']
    latent_dim = 16

    @pytest.fixture
    def data(self):
        return {
            'seed': self.seed,
            'trainer': {'skills': self.skills, 'adversarial': {'latent_dim': self.latent_dim}},
        }

    def test_defaults(self):
        config = ExperimentConfig()

        assert config.seed == 0
        assert config.trainer.skill_labels == [0, 2, 4]
        assert config.trainer.adversarial.latent_dim == 8
        assert config.dataset.gaits == ['trot', 'pace', 'bound', 'pronk']
        assert not config.ablation.disable_skill_disc

    def test_de_json(self, data):
        config = ExperimentConfig.de_json(data)

        assert config.seed == self.seed
        assert config.trainer.skills == self.skills
        assert config.trainer.skill_labels == [3, 0]
        assert config.trainer.adversarial.latent_dim == self.latent_dim
        assert config.trainer.adversarial.gp_weight == 10.0
        assert config.env == ExperimentConfig().env

    def test_de_json_none(self):
        assert ExperimentConfig.de_json(None) is None

    @pytest.mark.parametrize(
        'data',
        [
            {'sed': 1},
            {'trainer': {'iteration': 10}},
            {'trainer': {'ppo': {'gama': 0.9}}},
            {'trainer': {'adversarial': {'latent': 4}}},
            {'env': {'randomization': {'frictions': [0.5, 1.0]}}},
            {'analysis': {'dtw': 25.0}},
        ],
    )
    def test_unknown_keys(self, data):
        with pytest.raises(ConfigError):
            ExperimentConfig.de_json(data)

    @pytest.mark.parametrize(
        'data',
        [
            {'seed': -1},
            {'trainer': {'skills': []}},
            {'trainer': {'skills': ['trot_2Hz', '0']}},
            {'trainer': {'skills': ['gallop_2Hz']}},
            {'trainer': {'ppo': {'gamma': 1.0}}},
            {'dataset': {'gaits': ['canter']}},
            {'env': {'episode_length': 0}},
            {'analysis': {'switch_window': 0.0}},
            {'trainer': {'adversarial': {'normalizer_warmup_fraction': 1.5}}},
            {'trainer': 'default'},
        ],
    )
    def test_invalid_values(self, data):
        with pytest.raises(ConfigError):
            ExperimentConfig.de_json(data)

    @pytest.mark.parametrize(
        'data',
        [
            {'trainer': {'actor_hidden': [8]}},
            {'trainer': {'critic_hidden': [8]}},
            {'trainer': {'checkpoint_interval': 7}},
            {'trainer': {'normalizer_update_iterations': 3}},
            {'trainer': {'ppo': {'num_envs': 2}}},
            {'trainer': {'ppo': {'horizon': 3}}},
            {'trainer': {'adversarial': {'disc_batch_size': 4}}},
            {'trainer': {'adversarial': {'disc_learning_rate': 0.5}}},
            {'env': {'contact_height': 0.02}},
            {'env': {'robot': {'base_mass': 7.0}}},
            {'dataset': {'transitions_per_clip': 10}},
            {'analysis': {'dtw_workers': 1}},
        ],
    )
    def test_equality_covers_every_field(self, data):
        assert ExperimentConfig.de_json(data) != ExperimentConfig()

    def test_equal_configs_hash_alike(self, data):
        first, second = ExperimentConfig.de_json(data), ExperimentConfig.de_json(data)

        assert first == second
        assert hash(first) == hash(second)

    def test_from_file(self, data, tmp_path):
        path = str(tmp_path / 'config.json')
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(data, f)

        assert ExperimentConfig.from_file(path) == ExperimentConfig.de_json(data)
        assert ExperimentConfig.from_file(None) == ExperimentConfig()

    def test_from_file_errors(self, tmp_path):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_file(os.path.join(str(tmp_path), 'absent.json'))

        path = str(tmp_path / 'broken.json')
        with open(path, 'w', encoding='utf-8') as f:
            f.write('{"seed": ')
        with pytest.raises(ConfigError):
            ExperimentConfig.from_file(path)

    def test_save_round_trip(self, data, tmp_path):
        config = ExperimentConfig.de_json(data).resolved()
        path = config.save(str(tmp_path))

        assert os.path.basename(path) == 'config.json'
        assert ExperimentConfig.from_file(path) == config
        assert ExperimentConfig.from_file(path).to_dict() == config.to_dict()

    def test_resolved(self, data):
        config = ExperimentConfig.de_json({**data, 'trainer': {'iterations': 40}})

        resolved = config.resolved()

        assert config.trainer.normalizer_update_iterations is None
        assert resolved.trainer.normalizer_update_iterations == 10
        assert resolved.trainer.rewards == config.trainer.rewards
        assert resolved.resolved() == resolved

    @pytest.mark.parametrize('variant', ['no_skill_reward', 'baseline'])
    def test_resolved_drops_skill_reward(self, variant):
        config = ExperimentConfig(ablation=AblationConfig.for_variant(variant)).resolved()

        assert config.trainer.rewards.skill == 0.0
        assert config.trainer.rewards.style == ExperimentConfig().trainer.rewards.style


class TestAblationConfig:
    def test_variants(self):
        flags = {
            variant: (
                config.disable_skill_obs,
                config.disable_conditioning,
                config.disable_skill_reward,
                config.disable_skill_disc,
            )
            for variant, config in ((v, AblationConfig.for_variant(v)) for v in ABLATION_VARIANTS)
        }

        assert flags == {
            'full': (False, False, False, False),
            'no_skill_obs': (True, False, False, False),
            'no_conditioning': (False, True, False, False),
            'no_skill_reward': (False, False, True, False),
            'baseline': (True, True, False, True),
        }

    def test_unknown_variant(self):
        with pytest.raises(ConfigError):
            AblationConfig.for_variant('no_discriminator')
