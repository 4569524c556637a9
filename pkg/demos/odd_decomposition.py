#!/usr/bin/env python3
"""Odd n: a negabent function splits into two bent halves.

Uniformly random functions on 5 variables are almost never negabent, so
three are generated directly and one random function is kept for contrast.

Run: python3 demos/odd_decomposition.py
"""
import numpy as np

from negabent import BooleanFunction
from negabent.classify import extend_odd, is_bent, is_negabent, odd_decompose
from negabent.harness import random_negabent

rng = np.random.default_rng(2024)
n = 5

found = [random_negabent(n, rng) for _ in range(3)]
found.append(BooleanFunction.random(n, rng))   # almost surely not negabent

for f in found:
    dec = odd_decompose(f)
    print(f"f={f.to_hex()}  negabent={is_negabent(f)}")
    print(f"   g={dec.g.to_hex()} bent={is_bent(dec.g)}   h={dec.h.to_hex()} bent={is_bent(dec.h)}")
    print(f"   extension to {n + 1} variables bent: {is_bent(extend_odd(f))}")
