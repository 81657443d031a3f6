from typing import List

from camp_locomotion.base import CampModel, model
from camp_locomotion.exceptions import ConfigError

ACTIVATIONS = ('elu', 'tanh', 'identity')


@model
class MlpSpec(CampModel):
    """Класс, представляющий архитектуру многослойного перцептрона.

    Note:
        Выходной слой всегда линейный. `identity` для скрытых слоёв нужен только для проверок в замкнутой форме.

    Attributes:
        layer_sizes (:obj:`list` из :obj:`int`): Размеры: вход, скрытые слои, выход.
        activation (:obj:`str`): Активация скрытых слоёв: `elu`, `tanh`, `identity`.
        hidden_gain (:obj:`float`): Коэффициент ортогональной инициализации скрытых слоёв.
        output_gain (:obj:`float`): Коэффициент ортогональной инициализации выходного слоя.
    """

    layer_sizes: List[int]
    activation: str = 'elu'
    hidden_gain: float = 2**0.5
    output_gain: float = 1.0

    def __post_init__(self) -> None:
        if len(self.layer_sizes) < 3:
            raise ConfigError(f'MLP needs an input, at least one hidden layer and an output: {self.layer_sizes}')
        if any(int(size) != size or size <= 0 for size in self.layer_sizes):
            raise ConfigError(f'Layer sizes must be positive integers: {self.layer_sizes}')
        if self.activation not in ACTIVATIONS:
            raise ConfigError(f'Unknown activation {self.activation!r}, expected one of {ACTIVATIONS}')

        self.layer_sizes = [int(size) for size in self.layer_sizes]
        self._id_attrs = (tuple(self.layer_sizes), self.activation)

    @classmethod
    def build(cls, inputs: int, hidden: List[int], outputs: int, **kwargs: object) -> 'MlpSpec':
        return cls(layer_sizes=[inputs, *hidden, outputs], **kwargs)  # type: ignore[arg-type]

    @property
    def input_dim(self) -> int:
        return self.layer_sizes[0]

    @property
    def output_dim(self) -> int:
        return self.layer_sizes[-1]

    @property
    def layer_count(self) -> int:
        return len(self.layer_sizes) - 1

    @property
    def param_count(self) -> int:
        return sum((fan_in + 1) * fan_out for fan_in, fan_out in zip(self.layer_sizes[:-1], self.layer_sizes[1:]))
