from typing import override

from ..jsonobj import JsonObj


class KmeansConfig(JsonObj):
    n_clusters: int = JsonObj.field(default=0, desc="number of clusters (0 = ground-truth class count)")
    n_init: int = JsonObj.field(default=10, desc="restarts, best inertia wins")
    max_iter: int = JsonObj.field(default=300, desc="Lloyd iterations per restart")
    tol: float = JsonObj.field(default=1e-6, desc="stop when the max center shift is <= tol")
    seed: int = JsonObj.field(default=0, desc="seed for k-means++ seeding")
    n_jobs: int = JsonObj.field(default=1, desc="restarts run concurrently on this many threads")

    @override
    def _check(self):
        if self.n_clusters < 0:
            return "n_clusters must be >= 1 (or 0 for the ground-truth count)"
        if self.n_init < 1:
            return "n_init must be >= 1"
        if self.max_iter < 1:
            return "max_iter must be >= 1"
        if self.tol < 0:
            return "tol must be >= 0"
        return None
