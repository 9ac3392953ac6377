"""Overflow-free hyperbolic helpers shared by both working media."""
import math
import numpy as np

LOG2 = math.log(2.0)


def log_cosh(x: float) -> float:
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax)) - LOG2


def log_sinh(x: float) -> float:
    if x <= 0:
        raise ValueError(f"log_sinh needs x > 0, got {x}")
    return x + math.log(-math.expm1(-2.0 * x)) - LOG2


def sech(x: float) -> float:
    ax = abs(x)
    e = math.exp(-ax)
    return 2.0 * e / (1.0 + e * e)


def coth(x: float) -> float:
    if x == 0:
        raise ValueError("coth is singular at 0")
    return 1.0 / math.tanh(x)


def log_one_minus_s2_tanh2(s: float, y: float) -> float:
    """log(1 - s^2 tanh^2 y) == log(1 + (1 - s^2) sinh^2 y) - 2 log cosh y."""
    if s <= 0.0:
        return 0.0
    log_sech2 = -2.0 * log_cosh(y)
    if s >= 1.0:
        return log_sech2
    return float(np.logaddexp(math.log1p(-s * s), 2.0 * math.log(s) + log_sech2))


def log_squeeze_ratio(x: float, s: float) -> float:
    """log[(1+s + e^{-x}(1-s)) / (1+s + e^{x}(1-s))] for x > 0, 0 < s <= 1."""
    if s >= 1.0:
        return 0.0
    q = (1.0 - s) / (1.0 + s)
    if x < 30.0:
        # 1 + q e^{-x} over 1 + q e^{x}, written as log1p of the (negative) excess
        return math.log1p(-2.0 * q * math.sinh(x) / (1.0 + q * math.exp(x)))
    log_q = math.log(q)
    return float(np.logaddexp(0.0, log_q - x) - np.logaddexp(0.0, log_q + x))
