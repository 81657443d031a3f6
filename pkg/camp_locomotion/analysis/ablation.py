import itertools
import logging
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from camp_locomotion.analysis.contacts import contact_metrics, phase_signature_distance
from camp_locomotion.config.ablation_config import ABLATION_VARIANTS
from camp_locomotion.config.analysis_config import AnalysisConfig
from camp_locomotion.config.experiment_config import ExperimentConfig
from camp_locomotion.exceptions import DataError, MissingRunError
from camp_locomotion.motion.skills import skill_frequency, skill_name
from camp_locomotion.ppo.actor_critic import ActorCritic
from camp_locomotion.ppo.evaluation import evaluate_schedule, load_policy
from camp_locomotion.ppo.skill_schedule import ScheduleEntry, SkillSchedule
from camp_locomotion.sim.rollout_trace import RolloutTrace
from camp_locomotion.utils.log import log

REPORT_FILE_NAME = 'ablation.txt'
VARIANT_TITLES = {
    'full': 'CAMP',
    'no_skill_obs': 'CAMP w/o skill observation',
    'no_conditioning': 'CAMP w/o conditioning',
    'no_skill_reward': 'CAMP w/o skill reward',
    'baseline': 'AMP baseline',
}

logger = logging.getLogger(__name__)


@dataclass
class SwitchResult:
    """Результат одного переключения навыка.

    Attributes:
        source (:obj:`int`): Метка навыка до переключения.
        target (:obj:`int`): Метка навыка после переключения.
        success (:obj:`bool`): Переключение удалось.
        distance_to_target (:obj:`float`, optional): Расстояние измеренной сигнатуры до сигнатуры нового навыка.
        distance_to_source (:obj:`float`, optional): Расстояние до сигнатуры прежнего навыка.
        terminated (:obj:`bool`): Эпизод завершился аварийно в окне переключения.
    """

    source: int
    target: int
    success: bool
    distance_to_target: Optional[float] = None
    distance_to_source: Optional[float] = None
    terminated: bool = False


@dataclass
class AblationRow:
    """Строка сравнения для одного варианта.

    Attributes:
        variant (:obj:`str`): Имя варианта.
        run_dir (:obj:`str`): Каталог запуска.
        missing (:obj:`bool`): Запуск отсутствует или не завершён.
        signatures (:obj:`dict`): Фазовые сдвиги ног для каждого командуемого навыка, :obj:`None` если
            походку измерить не удалось.
        max_signature_distance (:obj:`float`): Наибольшее попарное расстояние сигнатур.
        switches (:obj:`list` из :obj:`SwitchResult`): Все упорядоченные пары переключений.
        multi_gait (:obj:`bool`, optional): Политика воспроизводит различимые походки.
        switch (:obj:`bool`, optional): Все переключения удались.
    """

    variant: str
    run_dir: str
    missing: bool = False
    signatures: Dict[int, Optional[np.ndarray]] = field(default_factory=dict)
    max_signature_distance: float = 0.0
    switches: List[SwitchResult] = field(default_factory=list)
    multi_gait: Optional[bool] = None
    switch: Optional[bool] = None

    @property
    def title(self) -> str:
        return VARIANT_TITLES.get(self.variant, self.variant)

    @property
    def switch_rate(self) -> float:
        if not self.switches:
            return 0.0
        return sum(result.success for result in self.switches) / len(self.switches)


@dataclass
class AblationReport:
    rows: List[AblationRow]

    @property
    def complete(self) -> bool:
        return not any(row.missing for row in self.rows)

    def render(self) -> str:
        return render_ablation_table(self.rows)


def _measure_signature(trace: RolloutTrace, label: int) -> Optional[np.ndarray]:
    try:
        return contact_metrics(trace.contacts, trace.dt, skill_frequency(label)).phase_offsets
    except DataError as e:
        logger.debug(f'No gait signature for {skill_name(label)}: {e}')
        return None


def skill_signatures(ac: ActorCritic, config: ExperimentConfig) -> Dict[int, Optional[np.ndarray]]:
    """Фазовые сигнатуры установившихся походок для каждого обученного навыка.

    Note:
        Первые `switch_window` секунд роллаута отбрасываются как переходный процесс.
    """
    analysis = config.analysis
    signatures = {}
    for label in config.trainer.skill_labels:
        trace = evaluate_schedule(ac, config, SkillSchedule.constant(skill_name(label)))
        steady = trace.window(analysis.switch_window, analysis.evaluation_duration)
        signatures[label] = None if steady.terminated.any() else _measure_signature(steady, label)
    return signatures


def evaluate_switch(
    ac: ActorCritic, config: ExperimentConfig, source: int, target: int, signatures: Dict[int, Optional[np.ndarray]]
) -> SwitchResult:
    """Переключение `source` -> `target` в середине роллаута.

    Note:
        Переключение успешно, если в окне `switch_window` после команды эпизод не завершился аварийно, а
        сигнатура, измеренная во второй половине окна, ближе к сигнатуре нового навыка, чем к прежней.
    """
    analysis = config.analysis
    switch_time = 0.5 * analysis.evaluation_duration
    end = switch_time + analysis.switch_window
    schedule = SkillSchedule(
        [ScheduleEntry(0.0, skill_name(source)), ScheduleEntry(switch_time, skill_name(target))]
    )
    trace = evaluate_schedule(ac, config, schedule, duration=max(analysis.evaluation_duration, end))

    terminated = bool(trace.window(switch_time, end).terminated.any())
    measured = _measure_signature(trace.window(switch_time + 0.5 * analysis.switch_window, end), target)
    before, after = signatures.get(source), signatures.get(target)
    if terminated or measured is None or before is None or after is None:
        return SwitchResult(source, target, False, terminated=terminated)

    to_target = phase_signature_distance(measured, after)
    to_source = phase_signature_distance(measured, before)
    return SwitchResult(source, target, to_target < to_source, to_target, to_source, terminated)


@log
def evaluate_run(
    run_dir: str, variant: str = 'full', analysis: Optional[AnalysisConfig] = None
) -> AblationRow:
    """Измеряет наличие нескольких походок и успешность переключений для одного запуска.

    Args:
        run_dir (:obj:`str`): Каталог запуска.
        variant (:obj:`str`, optional): Имя варианта для отчёта.
        analysis (:obj:`camp_locomotion.AnalysisConfig`, optional): Параметры анализа вместо записанных в запуске.

    Returns:
        :obj:`camp_locomotion.analysis.ablation.AblationRow`: Строка сравнения.
    """
    ac, config = load_policy(run_dir)
    if analysis is not None:
        config = config.replace(analysis=analysis)

    row = AblationRow(variant, run_dir, signatures=skill_signatures(ac, config))
    measured = [signature for signature in row.signatures.values() if signature is not None]
    distances = [phase_signature_distance(a, b) for a, b in itertools.combinations(measured, 2)]
    row.max_signature_distance = max(distances, default=0.0)
    row.multi_gait = row.max_signature_distance > config.analysis.multi_gait_threshold

    labels = config.trainer.skill_labels
    row.switches = [
        evaluate_switch(ac, config, source, target, row.signatures)
        for source, target in itertools.permutations(labels, 2)
    ]
    row.switch = bool(row.switches) and all(result.success for result in row.switches)

    logger.info(
        f'{variant}: multi-gait {row.multi_gait} (max distance {row.max_signature_distance:.3f}), '
        f'switch {row.switch} ({row.switch_rate:.0%})'
    )
    return row


@log
def ablation_report(
    out_dir: str, variants: Sequence[str] = ABLATION_VARIANTS, analysis: Optional[AnalysisConfig] = None
) -> AblationReport:
    """Собирает сравнение вариантов из каталогов `out_dir/<variant>`.

    Note:
        Отсутствующий запуск не прерывает отчёт, а помечается в соответствующей строке.

    Returns:
        :obj:`camp_locomotion.analysis.ablation.AblationReport`: Отчёт.
    """
    rows = []
    for variant in variants:
        run_dir = os.path.join(out_dir, variant)
        try:
            rows.append(evaluate_run(run_dir, variant, analysis))
        except MissingRunError as e:
            logger.warning(f'Ablation run {variant} is missing: {e}')
            rows.append(AblationRow(variant, run_dir, missing=True))
    return AblationReport(rows)


def _yes_no(value: Optional[bool]) -> str:
    if value is None:
        return '-'
    return 'Yes' if value else 'No'


def render_ablation_table(rows: List[AblationRow]) -> str:
    """Текстовая таблица сравнения: метод, несколько походок, переключение и измеренные расстояния."""
    header = ['Method', 'Multi-gait', 'Switch', 'Max distance', 'Switch rate', 'Status']
    lines = [header]
    for row in rows:
        if row.missing:
            lines.append([row.title, '-', '-', '-', '-', 'missing'])
            continue
        lines.append(
            [
                row.title,
                _yes_no(row.multi_gait),
                _yes_no(row.switch),
                f'{row.max_signature_distance:.3f}',
                f'{row.switch_rate:.2f}',
                'ok',
            ]
        )

    widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
    rendered = [' | '.join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip() for line in lines]
    rendered.insert(1, '-+-'.join('-' * width for width in widths))

    for row in rows:
        if row.missing or not row.signatures:
            continue
        rendered.append('')
        rendered.append(f'{row.title} signatures (FL, FR, RL, RR):')
        for label, signature in row.signatures.items():
            text = 'unmeasured' if signature is None else ', '.join(f'{value:.3f}' for value in signature)
            rendered.append(f'  {skill_name(label)}: {text}')

    return '\n'.join(rendered) + '\n'


def write_ablation_report(out_dir: str, report: AblationReport) -> str:
    path = os.path.join(out_dir, REPORT_FILE_NAME)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(report.render())
    return path
