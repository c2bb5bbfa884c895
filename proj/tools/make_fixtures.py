#!/usr/bin/env python3
"""Regenerates the bundled fixture files in fixtures/.

Every value is written with Python's shortest round-trip float formatting, so
re-running the script is byte-stable and the files parse back to the exact
doubles used when the expected outputs were frozen.
"""

import json
import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, os.pardir, "fixtures")


def write(name, doc):
    path = os.path.join(OUT, name)
    with open(path, "w") as f:
        json.dump(doc, f, separators=(", ", ": "))
        f.write("\n")


def kernel(entries):
    return {"n": len(entries), "entries": entries}


def pmf(p):
    return {"n": len(p), "p": p}


def main():
    os.makedirs(OUT, exist_ok=True)

    # 3-state instance where conditioning increases entropy
    write("counterexample_kernel.json",
          kernel([[1.0, 0.0, 0.5], [0.0, 1.0, 1.0], [0.5, 1.0, 1.0]]))
    write("counterexample_pmf.json", pmf([0.25, 0.25, 0.5]))
    write("counterexample_joint.json",
          {"nx": 3, "ny": 2,
           "mass": [[0.0, 0.25], [0.0, 0.25], [0.25, 0.25]]})

    # plain kernels and pmfs
    for n in (2, 3, 4):
        ident = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
        write(f"identity{n}_kernel.json", kernel(ident))
        write(f"ones{n}_kernel.json", kernel([[1.0] * n for _ in range(n)]))
        write(f"uniform{n}_pmf.json", pmf([1.0 / n] * n))
    # distinct weights keep typicality atoms separate under the identity kernel
    write("distinct4_pmf.json", pmf([0.1, 0.2, 0.3, 0.4]))
    write("fuzzy2_kernel.json", kernel([[1.0, 0.5], [0.5, 1.0]]))
    write("twopoint_half_kernel.json", kernel([[1.0, 0.5], [0.5, 1.0]]))

    # two-block partition of three states with masses 0.3 / 0.7
    write("partition37_kernel.json",
          kernel([[1.0, 0.0, 0.0], [0.0, 1.0, 1.0], [0.0, 1.0, 1.0]]))
    write("partition37_pmf.json", pmf([0.3, 0.35, 0.35]))
    write("partition37_map.json", {"n": 3, "m": 2, "labels": [0, 1, 1]})

    # Gaussian kernel on four bin centers, intervals merged pairwise
    centers = [0.1, 0.4, 0.6, 0.9]
    ell = 0.5
    g = [[math.exp(-((a - b) ** 2) / (ell * ell)) for b in centers] for a in centers]
    write("gaussbin_kernel.json", kernel(g))
    write("gaussbin_map.json", {"n": 4, "m": 2, "labels": [0, 0, 1, 1]})

    write("injective3_map.json", {"n": 3, "m": 3, "labels": [2, 0, 1]})

    # frozen pseudo-random six-state instance (plain decimals, symmetric)
    r6 = [[1.0, 0.83, 0.21, 0.55, 0.09, 0.4],
          [0.83, 1.0, 0.37, 0.72, 0.18, 0.66],
          [0.21, 0.37, 1.0, 0.5, 0.91, 0.27],
          [0.55, 0.72, 0.5, 1.0, 0.33, 0.88],
          [0.09, 0.18, 0.91, 0.33, 1.0, 0.62],
          [0.4, 0.66, 0.27, 0.88, 0.62, 1.0]]
    write("random6_kernel.json", kernel(r6))
    write("random6_pmf.json", pmf([0.05, 0.3, 0.15, 0.2, 0.1, 0.2]))
    write("random6_map.json", {"n": 6, "m": 3, "labels": [0, 1, 0, 2, 1, 2]})

    # channels
    write("channel_identity3.json",
          {"nx": 3, "ny": 3, "rows": [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]})
    write("channel_rational4.json",
          {"nx": 2, "ny": 3, "rows": [[0.25, 0.5, 0.25], [0.0, 0.75, 0.25]]})
    write("channel_mix23.json",
          {"nx": 2, "ny": 3,
           "rows": [[0.3, 0.45, 0.25], [0.6, 0.1, 0.3]]})

    # independent joint: rows proportional to (0.4, 0.6), columns to (0.2, 0.3, 0.5)
    write("product_joint.json",
          {"nx": 2, "ny": 3,
           "mass": [[0.08, 0.12, 0.2], [0.12, 0.18, 0.3]]})

    # colinear metric on four points with unit spacing, merged pairwise
    d4 = [[float(abs(i - j)) for j in range(4)] for i in range(4)]
    write("metric_dist4.json", {"n": 4, "d": d4})
    write("metric_map4.json", {"n": 4, "m": 2, "labels": [0, 0, 1, 1]})
    write("coarse_uniform2_pmf.json", pmf([0.5, 0.5]))

    # map used to provoke a vanishing minimum typicality on identity kernels
    write("merge2_map3.json", {"n": 3, "m": 2, "labels": [0, 0, 1]})


if __name__ == "__main__":
    main()
