import math


def round_sig(v: float, digits: int = 10) -> float:
    if not math.isfinite(v) or v == 0:
        return v
    return float(f"{v:.{digits}g}")
