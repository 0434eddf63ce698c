from typing import Any, override

from ..jsonobj import JsonObj
from ..utils import round_sig
from .pipeline_config import PipelineConfig
from .subspace_spec import Strategy, SubspaceSummary


class ReportObj(JsonObj):
    @override
    def _serialize(self, key: str, v: Any):
        if isinstance(v, float):
            return key, round_sig(v)
        return None


class TrialResult(ReportObj):
    division_count: int
    ari: float | None = None
    n_components: int = 0
    subspace: SubspaceSummary | None = None
    error: str | None = None


class StrategyResult(ReportObj):
    strategy: Strategy
    trials: list[TrialResult] = JsonObj.field(default_factory=list)
    win_count: int = 0
    trial_count: int = 0
    mean_ari: float | None = None
    max_ari: float | None = None
    best_division_count: int | None = None

    @override
    def _check(self):
        if self.win_count > self.trial_count:
            return "win_count exceeds trial_count"
        aris = self.aris()
        if self.max_ari is not None and any(a > self.max_ari for a in aris):
            return "max_ari is below a listed ari"
        return None

    def aris(self):
        return [t.ari for t in self.trials if t.ari is not None]

    def series(self):
        """(division_count, ari) pairs of the successful trials"""
        return [(t.division_count, t.ari) for t in self.trials if t.ari is not None]


class PipelineReport(ReportObj):
    """Sweep results; per-stage timings are kept in `timings`, outside the serialized fields"""
    config: PipelineConfig
    imputed: bool = False
    n_cells: int = 0
    n_genes: int = 0
    n_clusters: int = 0
    baseline_ari: float = 0.0
    baseline_components: int = 0
    strategies: list[StrategyResult] = JsonObj.field(default_factory=list)

    _timings: dict[str, float] | None = None

    @property
    def timings(self) -> dict[str, float]:
        if self._timings is None:
            self._timings = {}
        return self._timings
