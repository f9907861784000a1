"""
Volume Computation Benchmarking Tests
Wall-time measurements for every volume method, group enumeration and the oracle
"""

import json
import time
from pathlib import Path
from typing import Dict, List

import pytest

from hyptet.core import metrics
from hyptet.core.alt_formulas import coset_volumes, volume_hnice, volume_nicev
from hyptet.core.coords import b_from_c, circulants_from_angles
from hyptet.core.my_engine import buddies, volume_my
from hyptet.core.oracle import oracle_volume
from hyptet.core.sampling import random_finite_angles
from hyptet.core.symmetry import closure, generators
from hyptet.utils.stats import calculate_stats

# Test configuration
BASELINE_MY_MS = 5.0  # p95 target
BASELINE_FORMULA_MS = 10.0
BASELINE_COSETS_MS = 50.0
BASELINE_GROUP_SECONDS = 30.0
BASELINE_ORACLE_SECONDS = 60.0


class VolumeBenchmark:
    """Tracks timing measurements for benchmarking"""

    def __init__(self):
        self.measurements: Dict[str, List[float]] = {
            'my': [],
            'hnice': [],
            'nicev': [],
            'cosets': [],
            'buddies': [],
            'oracle': [],
        }

    def record(self, metric: str, value_ms: float):
        if metric in self.measurements:
            self.measurements[metric].append(value_ms)

    def get_stats(self, metric: str) -> Dict:
        return calculate_stats(self.measurements.get(metric, [])) or {}

    def generate_report(self) -> Dict:
        return {metric: self.get_stats(metric) for metric in self.measurements}


@pytest.fixture
def benchmark():
    """Fixture providing benchmark tracker"""
    return VolumeBenchmark()


def timed_ms(fn, *args) -> float:
    start = time.perf_counter()
    fn(*args)
    return (time.perf_counter() - start) * 1000


# ==================== Closed-Form Volume Timing ====================

@pytest.mark.benchmark
def test_my_volume_latency(rng, benchmark):
    """
    Murakami–Yano volume on random finite tetrahedra
    Target: p95 < 5ms
    """
    samples = [random_finite_angles(rng) for _ in range(50)]
    volume_my(samples[0])  # warm up

    for a in samples:
        benchmark.record('my', timed_ms(volume_my, a))

    stats = benchmark.get_stats('my')
    print(f"\nMurakami–Yano Volume Stats:")
    print(f"  Mean: {stats['mean']:.3f}ms")
    print(f"  p95: {stats['p95']:.3f}ms")
    print(f"  p99: {stats['p99']:.3f}ms")

    assert stats['p95'] < BASELINE_MY_MS, \
        f"p95 {stats['p95']:.3f}ms exceeds baseline {BASELINE_MY_MS}ms"


@pytest.mark.benchmark
def test_alternate_formula_latency(rng, benchmark):
    """
    H form, 𝓕 form, buddies and the ten coset formulas
    """
    for _ in range(20):
        c = circulants_from_angles(random_finite_angles(rng))
        benchmark.record('hnice', timed_ms(volume_hnice, c))
        benchmark.record('nicev', timed_ms(volume_nicev, c))
        benchmark.record('buddies', timed_ms(buddies, c))
        benchmark.record('cosets', timed_ms(coset_volumes, b_from_c(c)))

    for method in ('hnice', 'nicev', 'buddies', 'cosets'):
        stats = benchmark.get_stats(method)
        print(f"\n{method}: mean {stats['mean']:.3f}ms, p95 {stats['p95']:.3f}ms")

    assert benchmark.get_stats('hnice')['p95'] < BASELINE_FORMULA_MS
    assert benchmark.get_stats('nicev')['p95'] < BASELINE_FORMULA_MS
    assert benchmark.get_stats('cosets')['p95'] < BASELINE_COSETS_MS


# ==================== Group and Oracle Timing ====================

@pytest.mark.benchmark
@pytest.mark.slow
def test_group_enumeration_time():
    """Fresh closure of the twelve generators, bypassing the cached table"""
    start = time.perf_counter()
    table = closure(generators())
    elapsed = time.perf_counter() - start

    print(f"\nGroup enumeration: {len(table)} elements in {elapsed:.2f}s")
    assert len(table) == 23040
    assert elapsed < BASELINE_GROUP_SECONDS, f"enumeration took {elapsed:.1f}s"


@pytest.mark.benchmark
@pytest.mark.slow
def test_oracle_time(rng, benchmark):
    for _ in range(2):
        a = random_finite_angles(rng)
        benchmark.record('oracle', timed_ms(oracle_volume, a))

    stats = benchmark.get_stats('oracle')
    print(f"\nOracle: mean {stats['mean'] / 1000:.2f}s")
    assert stats['max'] / 1000 < BASELINE_ORACLE_SECONDS


# ==================== Metrics Wiring ====================

def test_evaluations_are_counted(rng):
    before = metrics.volume_evaluations_total.labels(method='my')._value.get()
    volume_my(random_finite_angles(rng))
    after = metrics.volume_evaluations_total.labels(method='my')._value.get()
    assert after == before + 1

    text = metrics.get_metrics_text().decode()
    assert 'volume_computation_seconds_count{method="my"}' in text


# ==================== Benchmarking Report Generator ====================

@pytest.mark.benchmark
def test_generate_benchmark_report(rng, benchmark, tmp_path):
    """
    Run a short benchmark over every closed form and write the report
    """
    for _ in range(10):
        a = random_finite_angles(rng)
        c = circulants_from_angles(a)
        benchmark.record('my', timed_ms(volume_my, a))
        benchmark.record('hnice', timed_ms(volume_hnice, c))
        benchmark.record('cosets', timed_ms(coset_volumes, b_from_c(c)))

    report = benchmark.generate_report()
    report['timestamp'] = time.time()

    report_file = tmp_path / "volume_benchmark.json"
    with open(report_file, 'w') as f:
        json.dump(report, f, indent=2)

    print(f"\nBenchmark report saved to: {report_file}")
    assert report_file.exists()
    assert report['my']['count'] == 10
    assert report['oracle'] == {}


# ==================== Baseline Comparison ====================

def load_baseline_metrics(baseline_path: Path) -> Dict:
    """Load baseline metrics from previous run"""
    if not baseline_path.exists():
        return {}
    with open(baseline_path) as f:
        return json.load(f)


@pytest.mark.regression
def test_volume_regression(rng):
    """
    Compare current performance against baseline
    Fails if performance has regressed significantly
    """
    baseline = load_baseline_metrics(Path("tests/benchmarks/baseline_results.json"))
    if 'my' not in baseline:
        pytest.skip("No baseline metrics found")

    current = VolumeBenchmark()
    for _ in range(30):
        current.record('my', timed_ms(volume_my, random_finite_angles(rng)))

    baseline_p95 = baseline['my'].get('p95', 0)
    current_p95 = current.get_stats('my')['p95']
    regression = (current_p95 - baseline_p95) / baseline_p95 if baseline_p95 > 0 else 0

    print(f"\nRegression Test:")
    print(f"  Baseline p95: {baseline_p95:.3f}ms")
    print(f"  Current p95: {current_p95:.3f}ms")
    print(f"  Regression: {regression * 100:.1f}%")

    assert regression < 0.2, f"Performance regressed by {regression * 100:.1f}%"


if __name__ == "__main__":
    # Run benchmarks directly
    pytest.main([__file__, "-v", "-m", "benchmark", "--tb=short"])
