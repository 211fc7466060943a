"""Numba kernels for orbit iteration, hash placement, and sorting.

Angles are carried as unsigned 64-bit fixed point: theta = bits / 2^64, and
one rotation step adds the rounded 64-bit image of omega with natural
wraparound.  This keeps the angle walk exactly invertible (needed for the
transfer-operator consistency guarantee), gives a zero-drift accumulator at
any mesh depth, and makes the hash slot floor(2^J theta) a plain shift.
All kernels share the one fibre expression below so that orbit generation
and transfer evaluation perform bitwise-identical arithmetic.

Every kernel carries an explicit signature: the angle words must never be
allowed to unify with a signed or floating type at a call boundary.
"""

from __future__ import annotations

import numpy as np
from numba import boolean, float64, int64, njit, types, uint64

TWO64 = 2.0**64

_STATE = types.Tuple((uint64, float64))
_ORBIT = types.Tuple((uint64[:], float64[:], float64[:]))
_SLOTS = types.Tuple((float64[:], float64[:], int64))


@njit(float64(float64, float64, float64, float64), cache=True)
def _fibre(x, theta, sigma, eps):
    return 2.0 * sigma * np.tanh(x) * (eps + abs(np.cos(2.0 * np.pi * theta)))


@njit(_STATE(uint64, uint64, float64, float64, float64, int64), cache=True)
def advance_state(t_bits, w_bits, x, sigma, eps, count):
    """Run `count` steps from state (t_bits, x); return the final state."""
    t = t_bits
    for _ in range(count):
        x = _fibre(x, t / TWO64, sigma, eps)
        t = t + w_bits
    return t, x


@njit(_ORBIT(uint64, uint64, float64, float64, float64, int64), cache=True)
def orbit_arrays(t_bits, w_bits, x, sigma, eps, count):
    """State pairs (theta_k, x_k) for k = 1..count, plus exact angle bits."""
    t = t_bits
    bits = np.empty(count, dtype=np.uint64)
    thetas = np.empty(count)
    xs = np.empty(count)
    for k in range(count):
        x = _fibre(x, t / TWO64, sigma, eps)
        t = t + w_bits
        bits[k] = t
        thetas[k] = t / TWO64
        xs[k] = x
    return bits, thetas, xs


@njit(float64(uint64, uint64, float64, float64, float64, int64), cache=True)
def transfer_eval_bits(theta_bits, w_bits, c, sigma, eps, k):
    """k-fold transfer iterate of the constant c, evaluated at theta.

    Walks the rotation back k steps (exact in fixed point) and re-applies the
    fibre map forward, which is the unrolled backward recursion.  Because the
    angle arithmetic inverts exactly and the fibre expression is shared with
    the orbit kernels, an orbit started at x0 = c satisfies
    x_k == transfer_eval_bits(theta_k_bits, ..., k) bit for bit.
    """
    t = theta_bits - uint64(k) * w_bits
    x = c
    for _ in range(k):
        x = _fibre(x, t / TWO64, sigma, eps)
        t = t + w_bits
    return x


@njit(_SLOTS(uint64, uint64, float64, float64, float64, int64), cache=True)
def fill_hash_slots(t_bits, w_bits, x, sigma, eps, J):
    """Place 2^J orbit points into slots by the angle hash i = floor(2^J theta).

    Occupied slots spill to the nearest free slot measured circularly, ties
    to the right.  Returns (thetas, z, displaced) in slot order; displaced is
    -1 if the search ever exhausts half the circle, which cannot happen while
    fewer points than slots have been placed but is guarded regardless.
    """
    n = int64(1) << J
    shift = uint64(64 - J)
    t = t_bits
    z = np.empty(n)
    thetas = np.empty(n)
    occ = np.zeros(n, dtype=np.bool_)
    displaced = 0
    for _ in range(n):
        x = _fibre(x, t / TWO64, sigma, eps)
        t = t + w_bits
        i = int64(t >> shift)
        if occ[i]:
            displaced += 1
            found = False
            for d in range(1, n // 2 + 1):
                r = (i + d) % n
                if not occ[r]:
                    i = r
                    found = True
                    break
                l = (i - d) % n
                if not occ[l]:
                    i = l
                    found = True
                    break
            if not found:
                return thetas, z, -1
        occ[i] = True
        z[i] = x
        thetas[i] = t / TWO64
    return thetas, z, displaced


@njit(types.void(float64[:], float64[:]), cache=True)
def insertion_sort_pairs(thetas, z):
    """In-place insertion sort of z by thetas; O(n + inversions)."""
    n = thetas.size
    for k in range(1, n):
        tk = thetas[k]
        zk = z[k]
        m = k - 1
        while m >= 0 and thetas[m] > tk:
            thetas[m + 1] = thetas[m]
            z[m + 1] = z[m]
            m -= 1
        thetas[m + 1] = tk
        z[m + 1] = zk


@njit(types.void(float64[:], float64[:], int64, int64), cache=True)
def _sift_down(thetas, z, start, end):
    root = start
    while 2 * root + 1 <= end:
        child = 2 * root + 1
        if child + 1 <= end and thetas[child] < thetas[child + 1]:
            child += 1
        if thetas[root] < thetas[child]:
            thetas[root], thetas[child] = thetas[child], thetas[root]
            z[root], z[child] = z[child], z[root]
            root = child
        else:
            return


@njit(types.void(float64[:], float64[:]), cache=True)
def heapsort_pairs(thetas, z):
    """In-place heapsort of z by thetas: the comparison-sort baseline."""
    n = thetas.size
    for start in range(n // 2 - 1, -1, -1):
        _sift_down(thetas, z, start, n - 1)
    for end in range(n - 1, 0, -1):
        thetas[0], thetas[end] = thetas[end], thetas[0]
        z[0], z[end] = z[end], z[0]
        _sift_down(thetas, z, 0, end - 1)


def warmup():
    """Touch every kernel once on tiny inputs (compiles or loads the cache)."""
    w = np.uint64(1) << np.uint64(63)
    advance_state(np.uint64(1), w, 1.0, 1.5, 0.0, 2)
    orbit_arrays(np.uint64(1), w, 1.0, 1.5, 0.0, 2)
    transfer_eval_bits(np.uint64(1), w, 4.0, 1.5, 0.0, 2)
    fill_hash_slots(np.uint64(1), w, 4.0, 1.5, 0.0, 4)
    a = np.array([0.3, 0.1, 0.2])
    b = np.array([1.0, 2.0, 3.0])
    insertion_sort_pairs(a, b)
    a = np.array([0.3, 0.1, 0.2])
    heapsort_pairs(a, b)
