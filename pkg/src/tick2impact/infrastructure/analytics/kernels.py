"""
Compiled inner loop of the imbalance state machine.

One call walks a whole trade tape for one target volume. Arrays are int64
except ``has_post``; outputs are trimmed copies, one row per terminated
episode.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def track_imbalance(
    timestamps: np.ndarray,
    sizes: np.ndarray,
    signs: np.ndarray,
    mid_half: np.ndarray,
    post_half: np.ndarray,
    has_post: np.ndarray,
    target: int,
    require_post: bool,
    last_mid_half: int,
    has_last_mid: bool,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray, int, int]:
    """
    Run the state machine over a tape.

    Returns:
        Per-episode imbalance, start mid, post mid, first and last trade
        time and window volume, then the number of zero crossings and the
        number of episodes dropped for want of a post quote
    """
    n = signs.shape[0]
    out_imbalance = np.empty(n, np.int64)
    out_p0 = np.empty(n, np.int64)
    out_post = np.empty(n, np.int64)
    out_first = np.empty(n, np.int64)
    out_last = np.empty(n, np.int64)
    out_total = np.empty(n, np.int64)
    count = 0
    resets = 0
    dropped = 0

    imbalance = 0
    p0 = 0
    t_first = 0
    total = 0
    for i in range(n):
        sign = signs[i]
        if imbalance == 0:
            if sign == 0:
                continue
            p0 = mid_half[i]
            t_first = timestamps[i]
            total = 0
        total += sizes[i]
        if sign == 0:
            continue

        updated = imbalance + sign * sizes[i]
        if imbalance != 0 and (updated == 0 or (updated > 0) != (imbalance > 0)):
            # the crossing trade's remaining volume does not open a new run
            imbalance = 0
            resets += 1
            continue
        imbalance = updated
        if abs(imbalance) < target:
            continue

        if has_post[i]:
            post = post_half[i]
        elif require_post or not has_last_mid:
            dropped += 1
            imbalance = 0
            continue
        else:
            post = last_mid_half
        out_imbalance[count] = imbalance
        out_p0[count] = p0
        out_post[count] = post
        out_first[count] = t_first
        out_last[count] = timestamps[i]
        out_total[count] = total
        count += 1
        imbalance = 0

    return (
        out_imbalance[:count].copy(),
        out_p0[:count].copy(),
        out_post[:count].copy(),
        out_first[:count].copy(),
        out_last[:count].copy(),
        out_total[:count].copy(),
        resets,
        dropped,
    )
