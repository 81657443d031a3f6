from typing import Optional, Tuple

import numpy as np


def gae_advantages(
    rewards: np.ndarray,
    values: np.ndarray,
    dones: np.ndarray,
    last_values: np.ndarray,
    gamma: float = 0.99,
    gae_lambda: float = 0.95,
    timeouts: Optional[np.ndarray] = None,
    timeout_values: Optional[np.ndarray] = None,
    normalize: bool = True,
) -> Tuple[np.ndarray, np.ndarray]:
    """Обобщённая оценка преимущества с разрывом на границах эпизодов.

    Note:
        При завершении по лимиту времени к награде добавляется γ·V(s_{t+1}) финального состояния до автосброса из
        ``timeout_values``; без них используется γ·V(s_t).
        Возвраты считаются до нормализации: returns = advantages + values.

    Args:
        rewards (:obj:`numpy.ndarray`): (T, N).
        values (:obj:`numpy.ndarray`): V(s_t), (T, N).
        dones (:obj:`numpy.ndarray`): Конец эпизода после шага t, (T, N).
        last_values (:obj:`numpy.ndarray`): V после последнего шага, (N,).
        gamma (:obj:`float`, optional): Коэффициент дисконтирования.
        gae_lambda (:obj:`float`, optional): Параметр GAE.
        timeouts (:obj:`numpy.ndarray`, optional): Завершения по лимиту времени, (T, N).
        timeout_values (:obj:`numpy.ndarray`, optional): V финального состояния на шагах с таймаутом, (T, N).
        normalize (:obj:`bool`, optional): Нормировать преимущества по пакету.

    Returns:
        :obj:`tuple`: (advantages, returns) формы (T, N).
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    rewards, values = np.atleast_2d(rewards), np.atleast_2d(values)
    dones = np.atleast_2d(np.asarray(dones, dtype=np.float64))
    last_values = np.atleast_1d(np.asarray(last_values, dtype=np.float64))
    if timeouts is not None:
        bootstrap = values if timeout_values is None else np.atleast_2d(np.asarray(timeout_values, dtype=np.float64))
        rewards = rewards + gamma * bootstrap * np.atleast_2d(np.asarray(timeouts, dtype=np.float64))

    advantages = np.zeros_like(rewards)
    running = np.zeros(rewards.shape[1])
    for t in reversed(range(len(rewards))):
        next_values = last_values if t == len(rewards) - 1 else values[t + 1]
        nonterminal = 1.0 - dones[t]
        delta = rewards[t] + gamma * next_values * nonterminal - values[t]
        running = delta + gamma * gae_lambda * nonterminal * running
        advantages[t] = running

    returns = advantages + values
    if normalize:
        advantages = (advantages - advantages.mean()) / (advantages.std() + 1e-8)

    return advantages, returns
