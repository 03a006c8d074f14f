"""Dev helper: find an E=-12 conformation of the 24-mer benchmark sequence
by simulated annealing with pivot moves.  Not part of the package."""

import math
import random
import sys

SEQ = "HHPHPPPHHHHPPHHHHPPPHPHH"
TARGET = -12

ROTS = [
    lambda v: (v[0], v[1]),
    lambda v: (-v[1], v[0]),
    lambda v: (-v[0], -v[1]),
    lambda v: (v[1], -v[0]),
    lambda v: (v[0], -v[1]),
    lambda v: (-v[0], v[1]),
    lambda v: (v[1], v[0]),
    lambda v: (-v[1], -v[0]),
]


def energy(coords, seq):
    occ = {p: i for i, p in enumerate(coords)}
    e = 0
    for i, p in enumerate(coords):
        if seq[i] != "H":
            continue
        for d in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            j = occ.get((p[0] + d[0], p[1] + d[1]))
            if j is not None and j > i + 1 and seq[j] == "H":
                e -= 1
    return e


def pivot(coords, rng):
    n = len(coords)
    i = rng.randrange(1, n)
    rot = rng.choice(ROTS)
    pivot_pt = coords[i]
    new = list(coords[: i + 1])
    for p in coords[i + 1 :]:
        v = (p[0] - pivot_pt[0], p[1] - pivot_pt[1])
        r = rot(v)
        new.append((pivot_pt[0] + r[0], pivot_pt[1] + r[1]))
    if len(set(new)) != n:
        return None
    return new


def main():
    rng = random.Random(int(sys.argv[1]) if len(sys.argv) > 1 else 1)
    n = len(SEQ)
    best_overall = 0
    for restart in range(10000):
        coords = [(i, 0) for i in range(n)]
        e = energy(coords, SEQ)
        temp = 2.0
        for step in range(200000):
            cand = pivot(coords, rng)
            if cand is None:
                continue
            ce = energy(cand, SEQ)
            if ce <= e or rng.random() < math.exp((e - ce) / temp):
                coords, e = cand, ce
            if e < best_overall:
                best_overall = e
                print(f"restart {restart} step {step}: E={e}", flush=True)
            if e <= TARGET:
                print("FOUND", e)
                print(coords)
                return
            temp = max(0.15, temp * 0.99997)
    print("not found; best", best_overall)


if __name__ == "__main__":
    main()
