import csv
import logging
import os
from typing import Dict, List

logger = logging.getLogger(__name__)

METRIC_COLUMNS = [
    'iteration',
    'reward_total',
    'reward_task',
    'reward_style',
    'reward_skill',
    'disc_loss',
    'disc_expert_loss',
    'disc_policy_loss',
    'disc_penalty',
    'disc_accuracy',
    'skill_loss',
    'skill_penalty',
    'skill_accuracy',
    'policy_loss',
    'value_loss',
    'entropy',
    'kl',
    'learning_rate',
    'terminations',
]


def read_metrics(path: str) -> List[Dict[str, float]]:
    if not os.path.isfile(path):
        return []
    with open(path, newline='', encoding='utf-8') as f:
        return [{key: float(value) for key, value in row.items()} for row in csv.DictReader(f)]


class MetricsWriter:
    """Дописывает строки метрик обучения в CSV.

    Note:
        При продолжении обучения с итерации k строки с номером итерации >= k отбрасываются.

    Args:
        path (:obj:`str`): Путь к CSV файлу.
        start_iteration (:obj:`int`, optional): Первая итерация, которая будет записана.
    """

    def __init__(self, path: str, start_iteration: int = 0) -> None:
        self.path = path
        kept = [row for row in read_metrics(path) if row['iteration'] < start_iteration] if start_iteration else []
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.DictWriter(f, fieldnames=METRIC_COLUMNS)
            writer.writeheader()
            for row in kept:
                writer.writerow({**row, 'iteration': int(row['iteration'])})

    def append(self, row: Dict[str, float]) -> None:
        with open(self.path, 'a', newline='', encoding='utf-8') as f:
            writer = csv.DictWriter(f, fieldnames=METRIC_COLUMNS)
            writer.writerow({name: row.get(name, 0.0) for name in METRIC_COLUMNS})
