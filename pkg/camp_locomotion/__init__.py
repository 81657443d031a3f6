__version__ = '0.1.0'
__license__ = 'GNU Lesser General Public License v3 (LGPLv3)'
__copyright__ = 'Copyright (C) 2024 camp-locomotion contributors'

import logging

from .base import CampModel, JSONType

from .exceptions import (
    CampError,
    ConfigError,
    DataError,
    UnreachableTargetError,
    ClipFormatError,
    EmptySelectionError,
    NumericError,
    NonFiniteError,
    EnvStepError,
    MissingRunError,
    StoreExistsError,
)

from .motion.gait_spec import GaitSpec
from .motion.motion_frame import MotionFrame
from .motion.motion_clip import MotionClip
from .motion.amp_feature import AmpFeature, extract_amp_feature, clip_amp_features
from .motion.kinematics import forward_kinematics, leg_inverse_kinematics
from .motion.generator import generate_clip, generate_dataset
from .motion.skills import skill_label, skill_name, parse_skill, default_gait_spec
from .motion.transition_buffer import TransitionPair, TransitionBatch, TransitionBuffer, preload_transitions
from .motion.clip_store import write_clip_store, read_clip_store

from .sim.robot_model import RobotModel
from .sim.pd_params import PdParams
from .sim.domain_randomization import DomainRandomizationConfig, RandomizedParams, sample_randomization
from .sim.command import Command
from .sim.env_state import EnvState
from .sim.observation import build_observation, build_privileged_observation, amp_feature_from_state
from .sim.reward import task_reward
from .sim.env import StepOutput, VecStep, QuadrupedVecEnv
from .sim.rollout_trace import RolloutTrace, write_trace, read_trace

from .nn.mlp_spec import MlpSpec
from .nn.mlp import Mlp, ForwardCache, PenaltyResult
from .nn.adam import Adam, OptimizerState
from .nn.gradcheck import GradCheckResult, check_gradient

from .adversarial.normalizer import RawFeatures, NormalizedFeatures, NormalizedBatch, FeatureNormalizer
from .adversarial.skill_embedding import SkillEmbeddingTable
from .adversarial.conditional_discriminator import ConditionalDiscriminator
from .adversarial.skill_discriminator import SkillDiscriminator
from .adversarial.losses import DiscLossResult, SkillLossResult, disc_loss, skill_disc_loss
from .adversarial.rewards import style_reward, skill_reward, nearest_skill
from .adversarial.camp_discriminators import DiscriminatorStats, CampDiscriminators, train_skill_discriminator

from .ppo.ppo_config import PpoConfig
from .ppo.reward_weights import RewardWeights
from .ppo.actor_critic import ActorCritic
from .ppo.rollout_buffer import RolloutBuffer
from .ppo.gae import gae_advantages
from .ppo.rollout import compose_reward, collect_rollouts
from .ppo.ppo_update import UpdateStats, ppo_update
from .ppo.skill_schedule import ScheduleEntry, SkillSchedule

from .config.dataset_config import DatasetConfig
from .config.env_config import EnvConfig
from .config.adversarial_config import AdversarialConfig
from .config.trainer_config import TrainerConfig
from .config.ablation_config import AblationConfig
from .config.analysis_config import AnalysisConfig
from .config.experiment_config import ExperimentConfig

from .ppo.trainer import CampTrainer
from .ppo.evaluation import evaluate_schedule, load_policy

from .analysis.latent import LatentSequence, latent_sequences
from .analysis.dtw import dtw_distance, dtw_matrix
from .analysis.clustering import ClusterResult, Projection, kmeans_purity, pca_project
from .analysis.contacts import ContactMetrics, contact_metrics, phase_signature_distance
from .analysis.tracking import tracking_accuracy, expert_replay
from .analysis.skill_model import SkillModel, fit_skill_model
from .analysis.ablation import AblationRow, AblationReport, ablation_report

logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    '__copyright__',
    '__license__',
    '__version__',
    'CampModel',
    'JSONType',
    'CampError',
    'ConfigError',
    'DataError',
    'UnreachableTargetError',
    'ClipFormatError',
    'EmptySelectionError',
    'NumericError',
    'NonFiniteError',
    'EnvStepError',
    'MissingRunError',
    'StoreExistsError',
    'GaitSpec',
    'MotionFrame',
    'MotionClip',
    'AmpFeature',
    'extract_amp_feature',
    'clip_amp_features',
    'forward_kinematics',
    'leg_inverse_kinematics',
    'generate_clip',
    'generate_dataset',
    'skill_label',
    'skill_name',
    'parse_skill',
    'default_gait_spec',
    'TransitionPair',
    'TransitionBatch',
    'TransitionBuffer',
    'preload_transitions',
    'write_clip_store',
    'read_clip_store',
    'RobotModel',
    'PdParams',
    'DomainRandomizationConfig',
    'RandomizedParams',
    'sample_randomization',
    'Command',
    'EnvState',
    'build_observation',
    'build_privileged_observation',
    'amp_feature_from_state',
    'task_reward',
    'StepOutput',
    'VecStep',
    'QuadrupedVecEnv',
    'RolloutTrace',
    'write_trace',
    'read_trace',
    'MlpSpec',
    'Mlp',
    'ForwardCache',
    'PenaltyResult',
    'Adam',
    'OptimizerState',
    'GradCheckResult',
    'check_gradient',
    'RawFeatures',
    'NormalizedFeatures',
    'NormalizedBatch',
    'FeatureNormalizer',
    'SkillEmbeddingTable',
    'ConditionalDiscriminator',
    'SkillDiscriminator',
    'DiscLossResult',
    'SkillLossResult',
    'disc_loss',
    'skill_disc_loss',
    'style_reward',
    'skill_reward',
    'nearest_skill',
    'DiscriminatorStats',
    'CampDiscriminators',
    'train_skill_discriminator',
    'PpoConfig',
    'RewardWeights',
    'ActorCritic',
    'RolloutBuffer',
    'gae_advantages',
    'compose_reward',
    'collect_rollouts',
    'UpdateStats',
    'ppo_update',
    'ScheduleEntry',
    'SkillSchedule',
    'DatasetConfig',
    'EnvConfig',
    'AdversarialConfig',
    'TrainerConfig',
    'AblationConfig',
    'AnalysisConfig',
    'ExperimentConfig',
    'CampTrainer',
    'evaluate_schedule',
    'load_policy',
    'LatentSequence',
    'latent_sequences',
    'dtw_distance',
    'dtw_matrix',
    'ClusterResult',
    'Projection',
    'kmeans_purity',
    'pca_project',
    'ContactMetrics',
    'contact_metrics',
    'phase_signature_distance',
    'tracking_accuracy',
    'expert_replay',
    'SkillModel',
    'fit_skill_model',
    'AblationRow',
    'AblationReport',
    'ablation_report',
]
