from typing import Any, Dict, Union

import numpy as np

SeedLike = Union[int, np.random.Generator, None]


def make_rng(seed: SeedLike) -> np.random.Generator:
    """Генератор из зерна; готовый генератор возвращается как есть."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def stream_rng(seed: int, *keys: int) -> np.random.Generator:
    """Независимый поток случайных чисел, заданный корневым зерном и ключами (например, индексом окружения)."""
    return np.random.default_rng(np.random.SeedSequence([seed, *keys]))


def dump_rng_state(rng: np.random.Generator) -> Dict[str, Any]:
    """Состояние генератора в виде JSON-совместимого словаря.

    Note:
        Большие целые числа состояния записываются строками.
    """

    def encode(value: Any) -> Any:  # noqa: ANN401
        if isinstance(value, dict):
            return {key: encode(item) for key, item in value.items()}
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            return str(int(value))
        return value

    return encode(rng.bit_generator.state)


def load_rng_state(rng: np.random.Generator, state: Dict[str, Any]) -> None:
    def decode(value: Any) -> Any:  # noqa: ANN401
        if isinstance(value, dict):
            return {key: decode(item) for key, item in value.items()}
        if isinstance(value, str) and value.lstrip('-').isdigit():
            return int(value)
        return value

    rng.bit_generator.state = decode(state)
