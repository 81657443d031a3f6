import numpy as np

from camp_locomotion.sim.command import Command
from camp_locomotion.sim.env_state import EnvState
from camp_locomotion.utils.rotations import world_to_body

LINEAR_TRACKING_WEIGHT = 1.5
ANGULAR_TRACKING_WEIGHT = 0.75
TRACKING_SIGMA = 0.15


def task_reward(state: EnvState, command: Command) -> np.ndarray:
    """Награда за отслеживание команды скорости.

    r = 1.5·exp(−‖v_xy^cmd − v_xy‖ / 0.15) + 0.75·exp(−|ω_z^cmd − ω_z| / 0.15), скорости в системе корпуса.

    Returns:
        :obj:`numpy.ndarray`: Награда (N,).
    """
    velocity = world_to_body(state.base_orientation, state.base_linear_velocity).reshape(-1, 3)
    linear_error = np.linalg.norm(command.velocity[:, :2] - velocity[:, :2], axis=1)
    angular_error = np.abs(command.velocity[:, 2] - state.base_angular_velocity[:, 2])

    return LINEAR_TRACKING_WEIGHT * np.exp(-linear_error / TRACKING_SIGMA) + ANGULAR_TRACKING_WEIGHT * np.exp(
        -angular_error / TRACKING_SIGMA
    )
