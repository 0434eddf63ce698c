from typing import override

from ..jsonobj import JsonObj


class HvgConfig(JsonObj):
    target_sum: float = JsonObj.field(default=1e4, desc="per-cell total after scaling")
    n_top_genes: int = JsonObj.field(default=10000, desc="number of highly variable genes kept (d')")
    n_bins: int = JsonObj.field(default=20, desc="number of mean bins for dispersion z-scoring")

    @override
    def _check(self):
        if self.n_top_genes < 1:
            return "n_top_genes must be >= 1"
        if self.n_bins < 1:
            return "n_bins must be >= 1"
        if not self.target_sum > 0:
            return "target_sum must be > 0"
        return None
