#!/usr/bin/env python3
"""Which of a day's OHLC columns move together?

Treats one market day's open, high, low, and close vectors (one entry per
symbol) as four observations, measures 1 - correlation between them, and
merges bottom-up under average linkage.  Three merges take four columns to
one root; the Newick text and merge table say in which order.
"""

from datetime import date
from pathlib import Path

import numpy as np

from csie import MarketDay, cluster_day, dendrogram_svg

rng = np.random.default_rng(31)
out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

m = 40
symbols = [f"SYM{i:02d}" for i in range(m)]
opens = rng.uniform(10.0, 500.0, m)
closes = opens * np.exp(rng.normal(0, 0.02, m))
high = np.maximum(opens, closes) * np.exp(np.abs(rng.normal(0, 0.008, m)))
low = np.minimum(opens, closes) * np.exp(-np.abs(rng.normal(0, 0.008, m)))
volume = rng.integers(10_000, 900_000, m)

day = MarketDay(date(2023, 3, 17), symbols, opens, high, low, closes, volume)

tree = cluster_day(day)
print("merge order (raw prices):")
print(tree.merge_csv())
print("newick:", tree.newick())

logged = cluster_day(day, log_prices=True)
print("\nmerge order (log prices):")
print(logged.merge_csv())

(out_dir / "ohlc_dendrogram.svg").write_text(dendrogram_svg(tree))
print(f"dendrogram written to {out_dir / 'ohlc_dendrogram.svg'}")
