"""
Summary statistics for residual and timing samples
"""

from typing import Dict, Iterable, Optional

import numpy as np


def calculate_stats(values: Iterable[float]) -> Optional[Dict[str, float]]:
    """Calculate comprehensive statistics"""
    sorted_vals = np.sort(np.asarray(list(values), dtype=np.float64))
    n = len(sorted_vals)
    if n == 0:
        return None

    # Percentiles use the same nearest-rank rule as the benchmark reports
    def rank(q: float) -> float:
        return float(sorted_vals[min(int(n * q), n - 1)])

    return {
        'count': n,
        'min': float(sorted_vals[0]),
        'max': float(sorted_vals[-1]),
        'mean': float(np.mean(sorted_vals)),
        'median': float(np.median(sorted_vals)),
        'stddev': float(np.std(sorted_vals, ddof=1)) if n > 1 else 0.0,
        'p50': rank(0.50),
        'p75': rank(0.75),
        'p90': rank(0.90),
        'p95': rank(0.95),
        'p99': rank(0.99),
    }


__all__ = ['calculate_stats']
