"""Командная строка ``camp``: генерация данных, обучение, роллауты, анализ и абляции."""
import argparse
import dataclasses
import logging
import os
import sys
from typing import Callable, Dict, List, Optional, Sequence, Set

import numpy as np

from camp_locomotion.analysis.ablation import ablation_report, write_ablation_report
from camp_locomotion.analysis.clustering import kmeans_purity, pca_project
from camp_locomotion.analysis.contacts import ContactMetrics, contact_metrics
from camp_locomotion.analysis.dtw import dtw_matrix
from camp_locomotion.analysis.exports import (
    write_cluster_assignments,
    write_contact_table,
    write_dtw_matrix,
    write_projection,
)
from camp_locomotion.analysis.latent import LatentSequence, standardize_sequences
from camp_locomotion.analysis.skill_model import SkillModel, fit_skill_model, load_skill_model
from camp_locomotion.analysis.tracking import expert_replay, tracking_accuracy
from camp_locomotion.base import loads
from camp_locomotion.config.ablation_config import ABLATION_VARIANTS, AblationConfig
from camp_locomotion.config.experiment_config import ExperimentConfig
from camp_locomotion.exceptions import (
    CampError,
    ConfigError,
    DataError,
    EnvStepError,
    MissingRunError,
    NumericError,
    StoreExistsError,
)
from camp_locomotion.motion.clip_store import ensure_output_dir, read_clip_store, write_clip_store
from camp_locomotion.motion.generator import generate_dataset
from camp_locomotion.motion.motion_clip import MotionClip
from camp_locomotion.motion.skills import skill_frequency, skill_gait, skill_name
from camp_locomotion.motion.transition_buffer import TransitionBuffer, preload_transitions
from camp_locomotion.ppo.evaluation import evaluate_schedule, load_policy
from camp_locomotion.ppo.skill_schedule import SkillSchedule
from camp_locomotion.ppo.trainer import CHECKPOINT_DIR, CampTrainer, checkpoint_path, load_run_config
from camp_locomotion.sim.rollout_trace import read_trace, write_trace
from camp_locomotion.utils.seeding import stream_rng

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4
EXIT_INCOMPLETE = 5

ANALYSIS_KINDS = ('dtw', 'clusters', 'contacts', 'tracking')

logger = logging.getLogger('camp_locomotion.cli')


def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Конфигурация из файла с применёнными флагами командной строки."""
    config = ExperimentConfig.from_file(getattr(args, 'config', None))

    if getattr(args, 'seed', None) is not None:
        config = config.replace(seed=args.seed)

    trainer = config.trainer
    if getattr(args, 'iters', None) is not None:
        trainer = dataclasses.replace(trainer, iterations=args.iters)
    if getattr(args, 'envs', None) is not None:
        trainer = dataclasses.replace(trainer, ppo=dataclasses.replace(trainer.ppo, num_envs=args.envs))
    if getattr(args, 'skills', None):
        trainer = dataclasses.replace(trainer, skills=list(args.skills))

    ablation = config.ablation
    ablation = AblationConfig(
        disable_skill_obs=ablation.disable_skill_obs or getattr(args, 'no_skill_obs', False),
        disable_conditioning=ablation.disable_conditioning or getattr(args, 'no_conditioning', False),
        disable_skill_disc=ablation.disable_skill_disc or getattr(args, 'no_skill_disc', False),
        disable_skill_reward=ablation.disable_skill_reward or getattr(args, 'no_skill_reward', False),
    )

    dataset = config.dataset
    if getattr(args, 'gaits', None) is not None:
        dataset = dataclasses.replace(dataset, gaits=list(args.gaits))
    if getattr(args, 'frequencies', None) is not None:
        dataset = dataclasses.replace(dataset, frequencies=list(args.frequencies))
    if getattr(args, 'duration', None) is not None:
        dataset = dataclasses.replace(dataset, duration=args.duration)

    return config.replace(trainer=trainer, ablation=ablation, dataset=dataset)


def generate_clips(
    config: ExperimentConfig,
    gaits: Optional[Sequence[str]] = None,
    frequencies: Optional[Sequence[float]] = None,
    duration: Optional[float] = None,
) -> List[MotionClip]:
    dataset = config.dataset
    return generate_dataset(
        dataset.gaits if gaits is None else gaits,
        dataset.frequencies if frequencies is None else frequencies,
        dataset.duration if duration is None else duration,
        dataset.dt,
        dataset.command_velocity,
        dataset.body_height,
    )


def expert_clips(
    config: ExperimentConfig, data_dir: Optional[str], labels: Optional[Sequence[int]] = None
) -> List[MotionClip]:
    """Эталонные клипы из хранилища или, без него, сгенерированные по разделу `dataset`."""
    if data_dir:
        return read_clip_store(data_dir, labels)

    if labels is None:
        return generate_clips(config)
    clips = []
    for label in labels:
        clips.extend(generate_clips(config, [skill_gait(label)], [skill_frequency(label)]))
    return clips


def expert_buffer(config: ExperimentConfig, data_dir: Optional[str]) -> TransitionBuffer:
    clips = expert_clips(config, data_dir, config.trainer.skill_labels)
    return preload_transitions(clips, config.dataset.transitions_per_clip, rng=stream_rng(config.seed, 100))


def cmd_generate_data(args: argparse.Namespace) -> int:
    config = load_config(args)
    clips = generate_clips(config)
    write_clip_store(args.out_dir, clips, force=args.force)
    config.save(args.out_dir)
    print(f'Wrote {len(clips)} clips to {args.out_dir}')
    return EXIT_OK


def _run(trainer: CampTrainer) -> CampTrainer:
    try:
        trainer.train()
    finally:
        trainer.close()
    return trainer


def cmd_train(args: argparse.Namespace) -> int:
    if args.resume:
        config = load_run_config(args.out_dir)
        trainer = _run(CampTrainer.resume(args.out_dir, expert_buffer(config, args.data_dir), args.iters))
    else:
        config = load_config(args)
        ensure_output_dir(args.out_dir, args.force)
        trainer = _run(CampTrainer(config, expert_buffer(config, args.data_dir), args.out_dir))

    print(f'Trained {trainer.iteration} iterations, results in {args.out_dir}')
    return EXIT_OK


def _load_schedule(args: argparse.Namespace, config: ExperimentConfig) -> SkillSchedule:
    if args.schedule_file:
        with open(args.schedule_file, encoding='utf-8') as f:
            try:
                data = loads(f.read())
            except ValueError as e:
                raise ConfigError(f'{args.schedule_file}: invalid JSON ({e})') from e
        return SkillSchedule.de_json(data) or SkillSchedule.constant(config.trainer.skills[0])
    if args.schedule:
        return SkillSchedule.parse(args.schedule)
    return SkillSchedule.constant(config.trainer.skills[0])


def cmd_rollout(args: argparse.Namespace) -> int:
    ac, config = load_policy(args.run_dir, args.checkpoint)
    schedule = _load_schedule(args, config)
    trace = evaluate_schedule(ac, config, schedule, args.duration, args.seed, args.randomize)

    out = args.out or os.path.join(args.run_dir, 'trace.csv')
    os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
    write_trace(out, trace)
    print(f'Wrote {len(trace)} trace rows to {out}, {int(trace.terminated.sum())} terminations')
    return EXIT_OK


def _reference_clips(args: argparse.Namespace, config: ExperimentConfig) -> List[MotionClip]:
    if args.data_dir:
        return read_clip_store(args.data_dir)
    return generate_clips(config, duration=config.analysis.reference_duration)


def _skill_model(args: argparse.Namespace, config: ExperimentConfig, clips: List[MotionClip]) -> SkillModel:
    if args.run_dir:
        return load_skill_model(args.run_dir, args.checkpoint)
    return fit_skill_model(clips, config)


def _latents(args: argparse.Namespace, config: ExperimentConfig) -> List[LatentSequence]:
    clips = _reference_clips(args, config)
    return standardize_sequences(_skill_model(args, config, clips).latents(clips))


def analyze_dtw(args: argparse.Namespace, config: ExperimentConfig) -> None:
    sequences = [seq.downsample(config.analysis.dtw_rate) for seq in _latents(args, config)]
    names = [seq.name for seq in sequences]
    matrix = dtw_matrix([seq.values for seq in sequences], workers=config.analysis.dtw_workers)

    path = os.path.join(args.out_dir, 'dtw.csv')
    write_dtw_matrix(path, names, matrix)
    width = max(len(name) for name in names)
    for name, row in zip(names, matrix):
        print(f'{name.ljust(width)}  ' + ' '.join(f'{value:8.2f}' for value in row))
    print(f'DTW matrix written to {path}')


def analyze_clusters(args: argparse.Namespace, config: ExperimentConfig) -> None:
    sequences = _latents(args, config)
    features = np.concatenate([seq.values for seq in sequences])
    labels = np.concatenate([np.full(len(seq), seq.label, dtype=np.int64) for seq in sequences])

    result = kmeans_purity(features, labels, len(np.unique(labels)))
    projection = pca_project(features)
    write_cluster_assignments(os.path.join(args.out_dir, 'clusters.csv'), labels, result.assignments, result.purity)
    write_projection(
        os.path.join(args.out_dir, 'projection.csv'), labels, projection.coordinates, projection.explained_variance
    )
    print(f'K-means purity: {result.purity:.4f}')


def analyze_contacts(args: argparse.Namespace, config: ExperimentConfig) -> None:
    rows = []
    if args.trace:
        for path in args.trace:
            for label, segment in read_trace(path).segments():
                rows.append((path, label, contact_metrics(segment.contacts, segment.dt, skill_frequency(label))))
    else:
        for clip in _reference_clips(args, config):
            rows.append(('expert', clip.label, contact_metrics(clip.contacts(), clip.dt, skill_frequency(clip.label))))

    write_contact_table(os.path.join(args.out_dir, 'contacts.csv'), rows)
    for source, label, metrics in rows:
        print(f'{source} {skill_name(label)}: {_format_metrics(metrics)}')


def _format_metrics(metrics: ContactMetrics) -> str:
    duty = ', '.join(f'{value:.3f}' for value in metrics.duty_factors)
    offsets = ', '.join(f'{value:.3f}' for value in metrics.phase_offsets)
    return f'duty ({duty}), offsets ({offsets})'


def analyze_tracking(args: argparse.Namespace, config: ExperimentConfig) -> None:
    if args.trace:
        for path in args.trace:
            trace = read_trace(path)
            accuracy = tracking_accuracy(trace.joint_targets, trace.joint_positions, ignore_constant=True)
            print(f'{path}: tracking accuracy {accuracy:.2f}%')
        return

    for clip in _reference_clips(args, config):
        target, actual = expert_replay(clip, config.env)
        accuracy = tracking_accuracy(target, actual, ignore_constant=True)
        print(f'{skill_name(clip.label)} expert replay: tracking accuracy {accuracy:.2f}%')


ANALYSES: Dict[str, Callable[[argparse.Namespace, ExperimentConfig], None]] = {
    'dtw': analyze_dtw,
    'clusters': analyze_clusters,
    'contacts': analyze_contacts,
    'tracking': analyze_tracking,
}


def cmd_analyze(args: argparse.Namespace) -> int:
    config = load_config(args)
    os.makedirs(args.out_dir, exist_ok=True)
    config.save(args.out_dir)
    ANALYSES[args.kind](args, config)
    return EXIT_OK


def cmd_ablate(args: argparse.Namespace) -> int:
    """Пять запусков с общим зерном, различающихся только флагами абляции, и сравнительный отчёт."""
    base = load_config(args)
    os.makedirs(args.out_dir, exist_ok=True)
    failed: Set[str] = set()

    if not args.report_only:
        expert: Optional[TransitionBuffer] = None
        for variant in args.variants:
            config = base.replace(ablation=AblationConfig.for_variant(variant))
            run_dir = os.path.join(args.out_dir, variant)
            if os.path.isfile(checkpoint_path(run_dir, config.trainer.iterations) + '.json'):
                logger.info(f'Ablation run {variant} is already complete')
                continue

            if expert is None:
                expert = expert_buffer(base, args.data_dir)
            try:
                if os.path.isdir(os.path.join(run_dir, CHECKPOINT_DIR)) and not args.force:
                    logger.info(f'Resuming ablation run {variant}')
                    _run(CampTrainer.resume(run_dir, expert, config.trainer.iterations))
                else:
                    ensure_output_dir(run_dir, args.force)
                    _run(CampTrainer(config, expert, run_dir))
            except (NumericError, EnvStepError, MissingRunError, StoreExistsError) as e:
                logger.error(f'Ablation run {variant} failed: {e}')
                failed.add(variant)

    report = ablation_report(args.out_dir, args.variants, base.analysis)
    for row in report.rows:
        row.missing = row.missing or row.variant in failed

    path = write_ablation_report(args.out_dir, report)
    print(report.render(), end='')
    print(f'Report written to {path}')
    return EXIT_OK if report.complete else EXIT_INCOMPLETE


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', help='JSON experiment config; missing keys take defaults')
    parser.add_argument('--seed', type=int, help='root seed, overrides the config')
    parser.add_argument('--verbose', action='store_true', help='log at DEBUG level')


def _add_training_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--data-dir', help='clip store; generated in memory when omitted')
    parser.add_argument('--envs', type=int, help='number of parallel environments')
    parser.add_argument('--iters', type=int, help='total policy iterations')
    parser.add_argument('--skills', nargs='+', help='trained skills, e.g. trot_2Hz pace_2Hz')
    parser.add_argument('--force', action='store_true', help='write into a non-empty output directory')


def _add_ablation_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--no-skill-obs', action='store_true', help='zero the skill vector in observations')
    parser.add_argument('--no-conditioning', action='store_true', help='do not condition D on the skill latent')
    parser.add_argument('--no-skill-disc', action='store_true', help='disable the skill discriminator')
    parser.add_argument('--no-skill-reward', action='store_true', help='set the skill reward weight to 0')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='camp', description='Multi-skill quadruped locomotion with CAMP')
    subparsers = parser.add_subparsers(dest='command', required=True)

    generate = subparsers.add_parser('generate-data', help='write the synthetic expert clip store')
    _add_config_flags(generate)
    generate.add_argument('--out-dir', required=True)
    generate.add_argument('--gaits', nargs='*', help='subset of trot pace bound pronk')
    generate.add_argument('--frequencies', nargs='*', type=float, help='gait frequencies, Hz')
    generate.add_argument('--duration', type=float, help='clip duration, s')
    generate.add_argument('--force', action='store_true', help='overwrite a non-empty store')
    generate.set_defaults(handler=cmd_generate_data)

    train = subparsers.add_parser('train', help='train a multi-skill policy')
    _add_config_flags(train)
    _add_training_flags(train)
    _add_ablation_flags(train)
    train.add_argument('--out-dir', required=True)
    train.add_argument('--resume', action='store_true', help='continue from the latest checkpoint in --out-dir')
    train.set_defaults(handler=cmd_train)

    rollout = subparsers.add_parser('rollout', help='run a trained policy under a skill schedule')
    rollout.add_argument('--run-dir', required=True)
    rollout.add_argument('--checkpoint', help='checkpoint path without extension; latest when omitted')
    rollout.add_argument('--schedule', help='e.g. 0:trot_2Hz,3.5:pace_2Hz')
    rollout.add_argument('--schedule-file', help='JSON schedule with an "entries" list')
    rollout.add_argument('--duration', type=float, help='seconds, defaults to analysis.evaluation_duration')
    rollout.add_argument('--seed', type=int)
    rollout.add_argument('--randomize', action='store_true', help='sample dynamics randomization')
    rollout.add_argument('--out', help='trace CSV path, defaults to <run-dir>/trace.csv')
    rollout.add_argument('--verbose', action='store_true', help='log at DEBUG level')
    rollout.set_defaults(handler=cmd_rollout)

    analyze = subparsers.add_parser('analyze', help='latent, contact and tracking analyses')
    analyze.add_argument('kind', choices=ANALYSIS_KINDS)
    _add_config_flags(analyze)
    analyze.add_argument('--out-dir', required=True)
    analyze.add_argument('--data-dir', help='clip store; reference clips are generated when omitted')
    analyze.add_argument('--run-dir', help='take the skill discriminator from this run instead of fitting one')
    analyze.add_argument('--checkpoint', help='checkpoint path without extension')
    analyze.add_argument('--trace', nargs='+', help='rollout trace CSVs for contacts and tracking')
    analyze.set_defaults(handler=cmd_analyze)

    ablate = subparsers.add_parser('ablate', help='train the ablation variants and compare them')
    _add_config_flags(ablate)
    _add_training_flags(ablate)
    ablate.add_argument('--out-dir', required=True)
    ablate.add_argument('--variants', nargs='+', choices=ABLATION_VARIANTS, default=list(ABLATION_VARIANTS))
    ablate.add_argument('--report-only', action='store_true', help='only evaluate existing runs')
    ablate.set_defaults(handler=cmd_ablate)

    return parser


def exit_code(error: CampError) -> int:
    if isinstance(error, ConfigError):
        return EXIT_CONFIG
    if isinstance(error, (DataError, MissingRunError, StoreExistsError)):
        return EXIT_DATA
    if isinstance(error, (NumericError, EnvStepError)):
        return EXIT_NUMERIC
    return 1


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s [%(levelname)s] %(name)s: %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
    )

    try:
        return args.handler(args)
    except CampError as e:
        logger.error(str(e))
        return exit_code(e)


if __name__ == '__main__':
    sys.exit(main())
