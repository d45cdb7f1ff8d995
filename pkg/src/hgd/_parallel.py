"""Split an exhaustive index space into aligned blocks and merge per-block histograms."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable

import numpy as np


def split_blocks(nbits: int, workers: int) -> list[tuple[int, int]]:
    """Partition ``[0, 2**nbits)`` by fixing the highest ``w`` bits.

    ``w`` is the smallest width giving at least ``workers`` blocks, capped
    at ``nbits``.
    """
    w = 0
    while (1 << w) < max(workers, 1) and w < nbits:
        w += 1
    size = 1 << (nbits - w)
    return [(b * size, (b + 1) * size) for b in range(1 << w)]


def parallel_histogram(
    nbits: int,
    width: int,
    run_block: Callable[[int, int, np.ndarray], None],
    workers: int = 1,
) -> list[int]:
    """Run ``run_block(start, stop, hist)`` over every block and sum the histograms.

    Each block owns its histogram; the merge is an integer sum, so the
    result does not depend on ``workers``.
    """
    blocks = split_blocks(nbits, workers)
    hists = [np.zeros(width, dtype=np.int64) for _ in blocks]
    if workers <= 1 or len(blocks) == 1:
        for (start, stop), h in zip(blocks, hists):
            run_block(start, stop, h)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_block, start, stop, h) for (start, stop), h in zip(blocks, hists)]
            for f in futures:
                f.result()
    total = [0] * width
    for h in hists:
        for i, c in enumerate(h.tolist()):
            total[i] += c
    return total
