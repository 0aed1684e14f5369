"""Measurements on sampled population and norm curves."""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.signal import find_peaks

logger = logging.getLogger(__name__)

PEAK_PROMINENCE = 1e-6


def peak_times(
    t: np.ndarray, y: np.ndarray, prominence: float = PEAK_PROMINENCE
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Interior maxima of ``y`` refined by a parabola through each peak and its
    two neighbours. ``prominence`` is relative to the largest value of ``y``.

    Returns:
        (times, values) of the refined maxima.
    """
    t = np.asarray(t, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    idx, _ = find_peaks(y, prominence=prominence * float(np.max(y)))
    idx = idx[(idx > 0) & (idx < y.size - 1)]

    y_prev, y_mid, y_next = y[idx - 1], y[idx], y[idx + 1]
    curvature = y_prev - 2 * y_mid + y_next
    safe = np.where(curvature != 0, curvature, 1.0)
    offset = np.where(curvature != 0, 0.5 * (y_prev - y_next) / safe, 0.0)
    step = t[idx + 1] - t[idx]
    times = t[idx] + offset * step
    values = y_mid - 0.25 * (y_prev - y_next) * offset
    return times, values


def oscillation_period(t: np.ndarray, y: np.ndarray) -> float:
    """
    Mean spacing of successive maxima.

    Raises:
        ValueError: If fewer than two maxima are found.
    """
    times, _ = peak_times(t, y)
    logger.debug(f"Found {times.size} maxima")
    if times.size < 2:
        raise ValueError(f"Need at least two maxima to measure a period, found {times.size}.")
    return float(np.mean(np.diff(times)))


def envelope_decay_rate(t: np.ndarray, y: np.ndarray) -> float:
    """
    Decay rate k of y ~ exp(-k t) from a log-linear fit of successive maxima.

    Raises:
        ValueError: If fewer than two maxima are found.
    """
    times, values = peak_times(t, y)
    if times.size < 2:
        raise ValueError(f"Need at least two maxima to fit a decay rate, found {times.size}.")
    slope, _ = np.polyfit(times, np.log(values), 1)
    return float(-slope)


def growth_rate(
    t: np.ndarray, y: np.ndarray, window: Optional[Tuple[float, float]] = None
) -> float:
    """Slope of log(y) against t, optionally restricted to ``window``."""
    t = np.asarray(t, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if window is not None:
        mask = (t >= window[0]) & (t <= window[1])
        t, y = t[mask], y[mask]
    if t.size < 2:
        raise ValueError("Need at least two samples to fit a growth rate.")
    slope, _ = np.polyfit(t, np.log(y), 1)
    return float(slope)
