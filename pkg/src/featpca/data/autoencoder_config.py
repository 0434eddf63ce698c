from typing import Literal, override

from ..jsonobj import JsonObj

type Activation = Literal["tanh", "sigmoid"]


class AutoencoderConfig(JsonObj):
    bottleneck: int = JsonObj.field(default=50, desc="width of the bottleneck layer")
    noise_mask_prob: float = JsonObj.field(default=0.1, desc="probability of zeroing each input entry while training")
    epochs: int = JsonObj.field(default=30, desc="training epochs (0 leaves the initial weights)")
    batch_size: int = JsonObj.field(default=32, desc="cells per minibatch")
    learning_rate: float = JsonObj.field(default=1e-3, desc="Adam step size")
    activation: Activation = JsonObj.field(default="tanh", desc="encoder nonlinearity")
    seed: int = JsonObj.field(default=0, desc="seed for weights, noise and batch order")

    @override
    def _check(self):
        if self.bottleneck < 1:
            return "bottleneck must be >= 1"
        if not 0 <= self.noise_mask_prob < 1:
            return "noise_mask_prob must be in [0, 1)"
        if self.epochs < 0:
            return "epochs must be >= 0"
        if self.batch_size < 1:
            return "batch_size must be >= 1"
        if not self.learning_rate > 0:
            return "learning_rate must be > 0"
        return None
