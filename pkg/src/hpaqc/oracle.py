"""Independent ground truth for every other module.

Exhaustive evaluation of energy polynomials, direct HP contact counting on
decoded conformations, and depth-first enumeration of self-avoiding walks.
Nothing here reuses the Hamiltonian construction machinery, so agreement
between the two routes is meaningful evidence.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .pbf import PseudoBooleanFunction, assignment_to_string

MAX_BRUTE_FORCE_VARS = 24
DEFAULT_CHAIN_GUARD = 16
MAX_CHAIN_LENGTH = 24


def brute_force_minimum(
    f: PseudoBooleanFunction, n_vars: int | None = None
) -> tuple[int, list[str]]:
    """Exact global minimum and all minimizers by full enumeration.

    Returns the minimum value and the minimizing assignments as displayed
    bit strings (q_n ... q_1), in increasing numeric order.
    """
    n = f.max_var() if n_vars is None else n_vars
    if n_vars is not None and f.max_var() > n_vars:
        raise ValueError(f"function mentions variable {f.max_var()} > n_vars={n_vars}")
    if n > MAX_BRUTE_FORCE_VARS:
        raise ValueError(f"brute force supports up to {MAX_BRUTE_FORCE_VARS} variables, got {n}")

    masks = [
        (sum(1 << (i - 1) for i in key), coeff) for key, coeff in f.terms.items()
    ]
    best: int | None = None
    argmins: list[int] = []
    for b in range(1 << n):
        value = 0
        for mask, coeff in masks:
            if b & mask == mask:
                value += coeff
        if best is None or value < best:
            best = value
            argmins = [b]
        elif value == best:
            argmins.append(b)
    strings = [
        assignment_to_string({i: (b >> (i - 1)) & 1 for i in range(1, n + 1)}, n)
        for b in argmins
    ]
    return best if best is not None else 0, strings


# -- direct HP model ------------------------------------------------------------

def _validate_conformation(coords: Sequence[Sequence[int]], sequence: str) -> list[tuple[int, ...]]:
    if len(coords) != len(sequence):
        raise ValueError(
            f"conformation has {len(coords)} residues but sequence has {len(sequence)}"
        )
    points = [tuple(p) for p in coords]
    dims = {len(p) for p in points}
    if len(dims) != 1:
        raise ValueError("conformation mixes coordinate dimensions")
    if len(set(points)) != len(points):
        raise ValueError("conformation is not self-avoiding")
    for a, b in zip(points, points[1:]):
        if sum(abs(x - y) for x, y in zip(a, b)) != 1:
            raise ValueError(f"consecutive residues at {a} and {b} are not lattice neighbours")
    return points


def hp_energy(coords: Sequence[Sequence[int]], sequence: str) -> int:
    """Minus the number of non-consecutive H-H pairs in lattice contact."""
    points = _validate_conformation(coords, sequence)
    contacts = 0
    for i in range(len(points)):
        if sequence[i] != "H":
            continue
        for j in range(i + 2, len(points)):
            if sequence[j] != "H":
                continue
            if sum(abs(x - y) for x, y in zip(points[i], points[j])) == 1:
                contacts += 1
    return -contacts


# -- exhaustive fold enumeration --------------------------------------------------

@dataclass(frozen=True)
class NativeFoldResult:
    min_energy: int
    ground_walks: int  # rooted walks (first residue at the origin) hitting the minimum
    witness: tuple[tuple[int, ...], ...]


def _directions(dimension: int) -> list[tuple[int, ...]]:
    dirs = []
    for axis in range(dimension):
        for sign in (1, -1):
            step = [0] * dimension
            step[axis] = sign
            dirs.append(tuple(step))
    return dirs


def _search(sequence, dimension, prefix, prune, best_hint):
    """DFS over canonical walks extending `prefix`.

    Canonical means: first step +x, and while the walk is still confined to
    the x axis the only allowed off-axis step is +y.  Returns
    (best_contacts, walks_hitting_best, witness) where walk counts carry the
    symmetry multiplier (8/4 in 2D, 24/6 in 3D for turned/straight walks).
    """
    n = len(sequence)
    dirs = _directions(dimension)
    h_suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        h_suffix[i] = h_suffix[i + 1] + (1 if sequence[i] == "H" else 0)
    per_residue_cap = 2 * dimension - 1
    turned_factor = 8 if dimension == 2 else 24
    straight_factor = 4 if dimension == 2 else 6

    positions = list(prefix)
    occupied = {p: idx for idx, p in enumerate(positions)}
    axial = all(p[1:] == (0,) * (dimension - 1) for p in positions)

    def contacts_of(pos, idx):
        if sequence[idx] != "H":
            return 0
        found = 0
        for d in dirs:
            neighbour = tuple(a + b for a, b in zip(pos, d))
            r = occupied.get(neighbour)
            if r is not None and r < idx - 1 and sequence[r] == "H":
                found += 1
        return found

    base_contacts = 0
    for idx, pos in enumerate(positions):
        base_contacts += contacts_of(pos, idx)

    best = best_hint
    count = 0
    witness: tuple | None = None

    def visit(idx, contacts, is_axial):
        nonlocal best, count, witness
        if idx == n:
            factor = straight_factor if is_axial else turned_factor
            if best is None or contacts > best:
                best = contacts
                count = factor
                witness = tuple(positions)
            elif contacts == best:
                count += factor
            return
        if prune and best is not None and contacts + per_residue_cap * h_suffix[idx] < best:
            return
        tip = positions[-1]
        for d in dirs:
            if is_axial:
                # stay on the axis (+x) or make the canonical first turn (+y)
                if d[0] == -1 or (d[0] == 0 and d != (0,) + (1,) + (0,) * (dimension - 2)):
                    continue
            nxt = tuple(a + b for a, b in zip(tip, d))
            if nxt in occupied:
                continue
            occupied[nxt] = idx
            positions.append(nxt)
            visit(idx + 1, contacts + contacts_of(nxt, idx), is_axial and d[0] == 1)
            positions.pop()
            del occupied[nxt]

    visit(len(positions), base_contacts, axial)
    if best is None:
        return None, 0, None
    return best, count, witness


def _canonical_prefixes(sequence, dimension, depth):
    """All canonical partial walks of `depth` residues, in DFS order."""
    n = len(sequence)
    depth = min(depth, n)
    dirs = _directions(dimension)
    first_turn = (0,) + (1,) + (0,) * (dimension - 2)
    prefixes = []

    def grow(positions, is_axial):
        if len(positions) == depth:
            prefixes.append(tuple(positions))
            return
        if not positions:
            grow([(0,) * dimension], True)
            return
        if len(positions) == 1:
            step = (1,) + (0,) * (dimension - 1)
            grow(positions + [step], True)
            return
        tip = positions[-1]
        occupied = set(positions)
        for d in dirs:
            if is_axial and (d[0] == -1 or (d[0] == 0 and d != first_turn)):
                continue
            nxt = tuple(a + b for a, b in zip(tip, d))
            if nxt in occupied:
                continue
            grow(positions + [nxt], is_axial and d[0] == 1)

    grow([], True)
    return prefixes


def _search_task(args):
    sequence, dimension, prefix, prune = args
    return _search(sequence, dimension, prefix, prune, None)


def enumerate_native(
    sequence: str,
    dimension: int = 2,
    long_run: bool = False,
    prune: bool = True,
    workers: int | None = None,
) -> NativeFoldResult:
    """Exact HP ground energy by depth-first self-avoiding-walk enumeration.

    Symmetry is reduced by fixing the first step and the first turn; the
    reported walk count multiplies the symmetry factors back in, so it is
    the number of rooted walks.  Chains longer than 16 residues require
    long_run=True (expect hours for 24 residues).
    """
    n = len(sequence)
    if any(c not in "HP" for c in sequence):
        raise ValueError(f"sequence must contain only H/P, got {sequence!r}")
    if n < 2:
        raise ValueError("need at least two residues")
    if dimension not in (2, 3):
        raise ValueError(f"dimension must be 2 or 3, got {dimension}")
    if n > MAX_CHAIN_LENGTH:
        raise ValueError(f"chains longer than {MAX_CHAIN_LENGTH} residues are unsupported")
    if n > DEFAULT_CHAIN_GUARD and not long_run:
        raise ValueError(
            f"chain length {n} exceeds the default guard of {DEFAULT_CHAIN_GUARD}; "
            "pass long_run=True (or --long-run) to start an hours-scale enumeration"
        )

    if workers is None:
        workers = int(os.environ.get("HPAQC_THREADS", "1"))
    workers = max(1, workers)

    prefixes = _canonical_prefixes(sequence, dimension, depth=4)
    if workers == 1 or len(prefixes) <= 1:
        results = [_search(sequence, dimension, p, prune, None) for p in prefixes]
    else:
        tasks = [(sequence, dimension, p, prune) for p in prefixes]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_task, tasks))

    best = None
    count = 0
    witness = None
    for task_best, task_count, task_witness in results:
        if task_best is None:
            continue
        if best is None or task_best > best:
            best, count, witness = task_best, task_count, task_witness
        elif task_best == best:
            count += task_count
    if best is None:
        raise ValueError(f"no self-avoiding walk of length {n} exists")
    return NativeFoldResult(min_energy=-best, ground_walks=count, witness=witness)
