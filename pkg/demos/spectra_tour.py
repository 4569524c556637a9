#!/usr/bin/env python3
"""Walsh and nega spectra of a few small functions, side by side.

Run: python3 demos/spectra_tour.py
"""
from negabent import BooleanFunction, nega_transform_fast, walsh_transform
from negabent.classify import classify, is_negabent, sigma2
from negabent.spectra import format_value

samples = {
    "x1x2": BooleanFunction.from_anf("x1x2", 2),
    "0 (n=3)": BooleanFunction.zeros(3),
    "maj3": BooleanFunction.from_hex("e8"),
    "x1x2+x2x3+x3x4": BooleanFunction.from_anf("x1x2+x2x3+x3x4", 4),
}

for name, f in samples.items():
    w = " ".join(f"{v:>3}" for v in walsh_transform(f).tolist())
    nv = " ".join(format_value(z) for z in nega_transform_fast(f).values)
    r = classify(f)
    print(f"{name:>16}  n={f.n} deg={r.degree} bent={r.is_bent} negabent={r.is_negabent}")
    print(f"{'walsh':>16}  {w}")
    print(f"{'nega':>16}  {nv}")

# Bent-negabent functions stay bent-negabent after adding sigma_2.
f = samples["x1x2+x2x3+x3x4"]
print("\nf + sigma_2 still negabent:", is_negabent(f ^ sigma2(4)))
