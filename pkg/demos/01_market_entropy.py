#!/usr/bin/env python3
"""Daily market entropy from a synthetic EOD feed.

Builds 120 trading days of 12 symbols, computes the per-day entropy of
value-weighted returns, and charts the series with a 20-day moving average.
Negative values mark days where selling dominated.
"""

from datetime import date, timedelta
from pathlib import Path

import numpy as np

from csie import MarketDay, csie_dated_series, csie_series, line_chart, moving_average

rng = np.random.default_rng(7)
out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

m = 12
symbols = [f"SYM{i:02d}" for i in range(m)]
closes = rng.uniform(20.0, 300.0, m)
sigmas = rng.uniform(0.01, 0.04, m)

days = []
d = date(2023, 1, 2)
while len(days) < 120:
    if d.weekday() < 5:
        opens = closes * np.exp(rng.normal(0, 0.003, m))
        closes = closes * np.exp(rng.normal(0, sigmas))
        high = np.maximum(opens, closes) * np.exp(np.abs(rng.normal(0, 0.005, m)))
        low = np.minimum(opens, closes) * np.exp(-np.abs(rng.normal(0, 0.005, m)))
        volume = rng.integers(50_000, 3_000_000, m)
        days.append(MarketDay(d, symbols, opens, high, low, closes, volume))
    d += timedelta(days=1)

rows = csie_series(days)

print(f"{len(rows)} trading days, {rows[0].m} symbols each")
print("\nfirst five days:")
print("date          signed      absolute   f")
for r in rows[:5]:
    print(f"{r.day}  {r.csie_signed:+.6f}  {r.csie_abs:.6f}  {r.f:.6f}")

signed = csie_dated_series(rows)
sell_days = int(np.sum(signed.values < 0))
print(f"\nselling dominated on {sell_days} of {len(rows)} days")
print(f"series mean {signed.values.mean():+.6f}, std {signed.values.std():.6f}")

chart = line_chart(
    signed,
    title="Daily market entropy, synthetic 12-symbol market",
    ma=moving_average(signed, 20),
    ma_label="20-day moving average",
    bubble_sizes=np.array([r.total_value for r in rows]),
    bubble_label="traded value",
)
(out_dir / "market_entropy.svg").write_text(chart)
print(f"\nchart written to {out_dir / 'market_entropy.svg'}")
