"""
Performance Metrics Collection for hyptet
Prometheus-compatible metrics for volume computations, group enumeration and verification runs
"""

from prometheus_client import Counter, Histogram, Gauge, Info
from prometheus_client import CollectorRegistry, generate_latest
from functools import wraps
import asyncio
import time
import psutil
import os
from typing import Optional, Dict
import logging

logger = logging.getLogger(__name__)

# Create a custom registry for better control
registry = CollectorRegistry()

# ==================== Computation Metrics ====================

volume_computation_seconds = Histogram(
    'volume_computation_seconds',
    'Wall time of a single volume evaluation by method',
    ['method'],
    buckets=[1e-5, 1e-4, 1e-3, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 30.0],
    registry=registry
)

group_enumeration_seconds = Histogram(
    'group_enumeration_seconds',
    'Wall time of a breadth-first group closure',
    buckets=[0.001, 0.01, 0.1, 0.5, 1.0, 2.5, 5.0, 10.0],
    registry=registry
)

oracle_integration_seconds = Histogram(
    'oracle_integration_seconds',
    'Wall time of a Klein-model volume integration',
    buckets=[0.01, 0.1, 0.5, 1.0, 5.0, 10.0, 30.0, 60.0],
    registry=registry
)

# ==================== Throughput Metrics ====================

volume_evaluations_total = Counter(
    'volume_evaluations_total',
    'Volume evaluations by method',
    ['method'],
    registry=registry
)

oracle_cells_total = Counter(
    'oracle_cells_total',
    'Quadrature cells evaluated by the oracle',
    registry=registry
)

# ==================== Quality Metrics ====================

verification_residual_max = Gauge(
    'verification_residual_max',
    'Largest residual seen by a verification suite',
    ['suite'],
    registry=registry
)

verification_failures_total = Counter(
    'verification_failures_total',
    'Residuals above tolerance by suite',
    ['suite'],
    registry=registry
)

# ==================== Error Metrics ====================

domain_errors_total = Counter(
    'domain_errors_total',
    'Errors raised by the numerical core',
    ['error_type', 'component'],
    registry=registry
)

# ==================== Resource Metrics ====================

process_memory_bytes = Gauge(
    'process_memory_bytes',
    'Process memory usage',
    ['type'],  # rss, vms
    registry=registry
)

process_cpu_percent = Gauge(
    'process_cpu_percent',
    'Process CPU utilization percentage',
    registry=registry
)

# ==================== Service Info ====================

service_info = Info(
    'service',
    'Service information',
    registry=registry
)


# ==================== Helper Functions ====================

def track_time(metric: Histogram, labels: Optional[Dict[str, str]] = None):
    """
    Decorator to track execution time of functions

    Usage:
        @track_time(volume_computation_seconds, {'method': 'my'})
        def volume_my(angles):
            ...
    """
    def decorator(func):
        def observe(duration: float):
            if labels:
                metric.labels(**labels).observe(duration)
            else:
                metric.observe(duration)

        @wraps(func)
        async def async_wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return await func(*args, **kwargs)
            finally:
                observe(time.perf_counter() - start)

        @wraps(func)
        def sync_wrapper(*args, **kwargs):
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                observe(time.perf_counter() - start)

        if asyncio.iscoroutinefunction(func):
            return async_wrapper
        return sync_wrapper

    return decorator


def record_evaluation(method: str):
    volume_evaluations_total.labels(method=method).inc()


def record_error(error: Exception, component: str):
    error_type = getattr(error, 'code', type(error).__name__)
    domain_errors_total.labels(error_type=error_type, component=component).inc()


_residual_peaks: Dict[str, float] = {}


def record_residual(suite: str, residual: float, tol: float):
    if residual > _residual_peaks.get(suite, float('-inf')):
        _residual_peaks[suite] = residual
        verification_residual_max.labels(suite=suite).set(residual)
    if residual > tol:
        verification_failures_total.labels(suite=suite).inc()


def update_resource_metrics() -> Dict[str, float]:
    """Sample process resources; returns the sampled values for reports"""
    try:
        process = psutil.Process(os.getpid())
        mem_info = process.memory_info()
        cpu = process.cpu_percent(interval=None)
        process_memory_bytes.labels(type='rss').set(mem_info.rss)
        process_memory_bytes.labels(type='vms').set(mem_info.vms)
        process_cpu_percent.set(cpu)
        return {'rss_bytes': float(mem_info.rss), 'vms_bytes': float(mem_info.vms), 'cpu_percent': float(cpu)}
    except Exception as e:
        logger.error(f"Failed to update resource metrics: {e}")
        return {}


def initialize_metrics(version: str, environment: str = "development"):
    service_info.info({'version': version, 'environment': environment})
    logger.debug(f"Metrics initialized for hyptet {version} ({environment})")


def get_metrics_text() -> bytes:
    """Prometheus text exposition of the package registry"""
    update_resource_metrics()
    return generate_latest(registry)


__all__ = [
    'registry',
    'track_time',
    'record_evaluation',
    'record_error',
    'record_residual',
    'update_resource_metrics',
    'initialize_metrics',
    'get_metrics_text',
    'volume_computation_seconds',
    'group_enumeration_seconds',
    'oracle_integration_seconds',
    'volume_evaluations_total',
    'oracle_cells_total',
    'verification_residual_max',
    'verification_failures_total',
    'domain_errors_total',
]
