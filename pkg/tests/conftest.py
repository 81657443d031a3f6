import numpy as np
import pytest

from camp_locomotion import (
    CampTrainer,
    EnvConfig,
    ExperimentConfig,
    QuadrupedVecEnv,
    default_gait_spec,
    generate_clip,
    generate_dataset,
    preload_transitions,
)
from camp_locomotion.motion.gait_spec import GAITS
from camp_locomotion.motion.skills import FREQUENCIES, skill_gait_spec
from camp_locomotion.sim.domain_randomization import DomainRandomizationConfig

from . import TestGenerator


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: end-to-end training experiments, deselect with -m "not slow"')


@pytest.fixture(scope='session')
def trot_spec():
    return default_gait_spec('trot', 2.0)


@pytest.fixture(scope='session')
def trot_clip(trot_spec):
    return generate_clip(trot_spec, TestGenerator.duration, TestGenerator.dt, label=0)


@pytest.fixture(scope='session')
def expert_clips():
    return generate_dataset(GAITS, FREQUENCIES, duration=TestGenerator.duration, dt=TestGenerator.dt)


@pytest.fixture(scope='session')
def expert_buffer(expert_clips):
    return preload_transitions(expert_clips, 500, rng=0)


@pytest.fixture(scope='session')
def clip_factory():
    class ClipFactory:
        def get(self, label, duration=TestGenerator.duration, command_velocity=None):
            return generate_clip(skill_gait_spec(label, command_velocity), duration, TestGenerator.dt, label)

    return ClipFactory()


@pytest.fixture(scope='session')
def nominal_env_config():
    return EnvConfig(randomization=DomainRandomizationConfig(enabled=False))


@pytest.fixture(scope='session')
def skill_velocities():
    return np.array([[0.5, 0.0, 0.0], [0.5, 0.0, 0.0], [0.5, 0.0, 0.0]])


@pytest.fixture
def env_factory(skill_velocities):
    envs = []

    class EnvFactory:
        def get(self, config=None, num_envs=4, seed=0, **kwargs):
            env = QuadrupedVecEnv(config or EnvConfig(), num_envs, skill_velocities, seed=seed, **kwargs)
            envs.append(env)
            return env

    yield EnvFactory()

    for env in envs:
        env.close()


@pytest.fixture(scope='session')
def tiny_config():
    return ExperimentConfig.de_json(
        {
            'seed': 3,
            'env': {'episode_length': 50},
            'dataset': {'transitions_per_clip': 50},
            'trainer': {
                'iterations': 2,
                'skills': ['trot_2Hz', 'pace_2Hz'],
                'actor_hidden': [16],
                'critic_hidden': [16],
                'checkpoint_interval': 1,
                'normalizer_update_iterations': 1,
                'ppo': {'horizon': 4, 'num_envs': 2, 'epochs': 1, 'minibatches': 1},
                'adversarial': {'latent_dim': 4, 'disc_hidden': [16], 'skill_disc_hidden': [16], 'disc_batch_size': 8},
            },
            'analysis': {'evaluation_duration': 1.0, 'reference_duration': 2.0, 'skill_disc_epochs': 2},
        }
    )


@pytest.fixture(scope='session')
def tiny_expert(clip_factory):
    return preload_transitions([clip_factory.get(0), clip_factory.get(2)], 50, rng=0)


@pytest.fixture(scope='session')
def trained_run(tiny_config, tiny_expert, tmp_path_factory):
    out_dir = str(tmp_path_factory.mktemp('run'))
    trainer = CampTrainer(tiny_config, tiny_expert, out_dir)
    try:
        trainer.train()
    finally:
        trainer.close()
    return out_dir
