"""Compiled inner loop for per-sample SGD."""

import math

import numba
import numpy as np

SINUSOID, LINEAR, SOFTPLUS, SIGMOID = 0, 1, 2, 3


@numba.njit(cache=True, inline="always")
def _act(kind, z):
    if kind == SINUSOID:
        return math.sin(z), math.cos(z)
    if kind == LINEAR:
        return z, 1.0
    if z >= 0:
        e = math.exp(-z)
        s = 1.0 / (1.0 + e)
    else:
        e = math.exp(z)
        s = e / (1.0 + e)
    if kind == SOFTPLUS:
        return max(z, 0.0) + math.log1p(math.exp(-abs(z))), s
    return s, s * (1.0 - s)


@numba.njit(cache=True)
def sgd_epoch(kinds, w, b, a, c, times, targets, order, lr, shrink, hidden_trainable, h, d):
    """One pass over ``order``; updates ``w, b, a, c`` in place.

    ``c`` is a length-1 array holding the output bias. ``h`` and ``d`` are
    scratch buffers of length ``len(kinds)``. Returns the sum of squared
    residuals seen before each step.
    """
    m = kinds.shape[0]
    sse = 0.0
    for idx in range(order.shape[0]):
        i = order[idx]
        t = times[i]
        if shrink > 0.0:
            for j in range(m):
                aj = a[j]
                if aj > shrink:
                    a[j] = aj - shrink
                elif aj < -shrink:
                    a[j] = aj + shrink
                else:
                    a[j] = 0.0
        y = c[0]
        for j in range(m):
            hj, dj = _act(kinds[j], w[j] * t + b[j])
            h[j] = hj
            d[j] = dj
            y += a[j] * hj
        r = y - targets[i]
        sse += r * r
        for j in range(m):
            gz = r * a[j] * d[j]
            a[j] -= lr * r * h[j]
            if hidden_trainable[j]:
                w[j] -= lr * gz * t
                b[j] -= lr * gz
        c[0] -= lr * r
    return sse
