"""Exact multilinear polynomials over binary variables.

Variables are 1-based indices q_1, q_2, ...  Every function is kept in
canonical multilinear form: a map from sorted tuples of distinct variable
indices to nonzero integer coefficients, with the empty tuple keying the
constant term.  Idempotence (q_i * q_i = q_i) is applied on every product,
which makes the representation of a function unique -- two functions that
agree on all assignments have identical term maps.

All coefficients are exact Python integers; no floating point enters the
symbolic layer.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

Assignment = Union[Mapping[int, int], Sequence[int]]


def _canonical_key(indices: Iterable[int]) -> tuple[int, ...]:
    key = tuple(sorted(indices))
    for i in key:
        if not isinstance(i, int) or isinstance(i, bool) or i < 1:
            raise ValueError(f"variable index must be a positive integer, got {i!r}")
    for a, b in zip(key, key[1:]):
        if a == b:
            raise ValueError(f"variable {a} repeated within a single term")
    return key


def _lookup_bit(assignment: Assignment, index: int) -> int:
    if isinstance(assignment, Mapping):
        try:
            bit = assignment[index]
        except KeyError:
            raise ValueError(f"assignment missing variable {index}") from None
    else:
        if index > len(assignment):
            raise ValueError(f"assignment missing variable {index}")
        bit = assignment[index - 1]
    if bit not in (0, 1):
        raise ValueError(f"variable {index} must be 0 or 1, got {bit!r}")
    return bit


class PseudoBooleanFunction:
    """Integer-valued multilinear polynomial over binary variables."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Iterable[int], int] | None = None):
        canonical: dict[tuple[int, ...], int] = {}
        if terms:
            for key, coeff in terms.items():
                if not isinstance(coeff, int) or isinstance(coeff, bool):
                    raise ValueError(f"coefficient must be an integer, got {coeff!r}")
                if coeff == 0:
                    continue
                ck = _canonical_key(key)
                canonical[ck] = canonical.get(ck, 0) + coeff
                if canonical[ck] == 0:
                    del canonical[ck]
        self._terms = canonical

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value: int) -> "PseudoBooleanFunction":
        return cls({(): value})

    @classmethod
    def variable(cls, index: int) -> "PseudoBooleanFunction":
        return cls({(index,): 1})

    @classmethod
    def zero(cls) -> "PseudoBooleanFunction":
        return cls()

    # -- views -------------------------------------------------------------

    @property
    def terms(self) -> Mapping[tuple[int, ...], int]:
        """Read-only view of the canonical term map."""
        return MappingProxyType(self._terms)

    def support(self) -> tuple[int, ...]:
        """Sorted tuple of variable indices that actually appear."""
        seen: set[int] = set()
        for key in self._terms:
            seen.update(key)
        return tuple(sorted(seen))

    def max_var(self) -> int:
        return max((key[-1] for key in self._terms if key), default=0)

    def degree(self) -> int:
        return max((len(key) for key in self._terms), default=0)

    def term_census(self) -> dict[int, int]:
        """Count of stored terms per locality k (k=0 is the constant)."""
        census: dict[int, int] = {}
        for key in self._terms:
            census[len(key)] = census.get(len(key), 0) + 1
        return dict(sorted(census.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "PseudoBooleanFunction":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            new = merged.get(key, 0) + coeff
            if new:
                merged[key] = new
            else:
                merged.pop(key, None)
        return _from_canonical(merged)

    __radd__ = __add__

    def __neg__(self) -> "PseudoBooleanFunction":
        return _from_canonical({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "PseudoBooleanFunction":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "PseudoBooleanFunction":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "PseudoBooleanFunction":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        product: dict[tuple[int, ...], int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = k1 if not k2 else (k2 if not k1 else tuple(sorted(set(k1) | set(k2))))
                new = product.get(key, 0) + c1 * c2
                if new:
                    product[key] = new
                else:
                    product.pop(key, None)
        return _from_canonical(product)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = PseudoBooleanFunction.constant(other)
        if not isinstance(other, PseudoBooleanFunction):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "PseudoBooleanFunction(0)"
        parts = []
        for key in sorted(self._terms, key=lambda k: (len(k), k)):
            coeff = self._terms[key]
            mono = "*".join(f"q{i}" for i in key) or "1"
            parts.append(f"{'+' if coeff >= 0 else '-'} {abs(coeff)}*{mono}")
        return f"PseudoBooleanFunction({' '.join(parts).lstrip('+ ')})"

    # -- evaluation and rewriting -------------------------------------------

    def evaluate(self, assignment: Assignment) -> int:
        """Exact value at an assignment (mapping index -> bit, or a sequence
        whose position i-1 holds the bit of q_i)."""
        total = 0
        for key, coeff in self._terms.items():
            for i in key:
                if _lookup_bit(assignment, i) == 0:
                    break
            else:
                total += coeff
        return total

    def substitute_constants(self, bindings: Mapping[int, int]) -> "PseudoBooleanFunction":
        """Fix some variables to 0/1; the result mentions none of them."""
        for i, bit in bindings.items():
            if bit not in (0, 1):
                raise ValueError(f"binding for variable {i} must be 0 or 1, got {bit!r}")
        out: dict[tuple[int, ...], int] = {}
        for key, coeff in self._terms.items():
            reduced = []
            dead = False
            for i in key:
                if i in bindings:
                    if bindings[i] == 0:
                        dead = True
                        break
                else:
                    reduced.append(i)
            if dead:
                continue
            rk = tuple(reduced)
            new = out.get(rk, 0) + coeff
            if new:
                out[rk] = new
            else:
                out.pop(rk, None)
        return _from_canonical(out)

    def relabel(self, mapping: Mapping[int, int]) -> "PseudoBooleanFunction":
        """Rename variables; the effective map must be injective on the support."""
        support = self.support()
        effective = {i: mapping.get(i, i) for i in support}
        if len(set(effective.values())) != len(effective):
            raise ValueError("relabel mapping is not injective on the function support")
        out: dict[tuple[int, ...], int] = {}
        for key, coeff in self._terms.items():
            out[tuple(sorted(effective[i] for i in key))] = coeff
        return _from_canonical(out)

    def truth_vector(self, n_vars: int) -> np.ndarray:
        """Values on all 2**n_vars assignments as int64, q_1 the LSB of the index."""
        if n_vars < 0 or n_vars > 26:
            raise ValueError(f"truth_vector supports 0..26 variables, got {n_vars}")
        if self.max_var() > n_vars:
            raise ValueError(
                f"function mentions variable {self.max_var()} but only {n_vars} requested"
            )
        values = np.zeros(1 << n_vars, dtype=np.int64)
        idx = np.arange(1 << n_vars, dtype=np.int64)
        for key, coeff in self._terms.items():
            mask = 0
            for i in key:
                mask |= 1 << (i - 1)
            values[(idx & mask) == mask] += coeff
        return values


def _from_canonical(terms: dict[tuple[int, ...], int]) -> PseudoBooleanFunction:
    f = PseudoBooleanFunction.__new__(PseudoBooleanFunction)
    f._terms = terms
    return f


def _coerce(value):
    if isinstance(value, PseudoBooleanFunction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return PseudoBooleanFunction.constant(value)
    return NotImplemented


# -- Boolean operator constructors ------------------------------------------

def variable(index: int) -> PseudoBooleanFunction:
    return PseudoBooleanFunction.variable(index)


def constant(value: int) -> PseudoBooleanFunction:
    return PseudoBooleanFunction.constant(value)


def boolean_not(f: PseudoBooleanFunction) -> PseudoBooleanFunction:
    return 1 - f


def boolean_or(f: PseudoBooleanFunction, g: PseudoBooleanFunction) -> PseudoBooleanFunction:
    return f + g - f * g


def xnor(i: int, j: int) -> PseudoBooleanFunction:
    """Logical equality of two variables: 1 - q_i - q_j + 2 q_i q_j.

    Equals 1 exactly when q_i == q_j.  Rejects i == j, which would collapse
    to the constant 1 and almost certainly signals an encoding bug upstream.
    """
    if i == j:
        raise ValueError(f"xnor requires two distinct variables, got {i} twice")
    return PseudoBooleanFunction({(): 1, (i,): -1, (j,): -1, tuple(sorted((i, j))): 2})


def product(factors: Iterable[PseudoBooleanFunction]) -> PseudoBooleanFunction:
    out = PseudoBooleanFunction.constant(1)
    for f in factors:
        out = out * f
    return out


# -- assignment helpers -------------------------------------------------------

def assignment_from_string(bits: str) -> dict[int, int]:
    """Parse a displayed bit string (q_n ... q_1, most significant first).

    Spaces are ignored, so "0110 0101" works.  The rightmost character is q_1.
    """
    cleaned = bits.replace(" ", "")
    if not cleaned or any(c not in "01" for c in cleaned):
        raise ValueError(f"not a bit string: {bits!r}")
    n = len(cleaned)
    return {n - pos: int(c) for pos, c in enumerate(cleaned)}


def assignment_to_string(assignment: Mapping[int, int], n_vars: int) -> str:
    """Render an assignment in display order q_n ... q_1."""
    return "".join(str(_lookup_bit(assignment, i)) for i in range(n_vars, 0, -1))


# -- serialization ------------------------------------------------------------

def to_terms_list(f: PseudoBooleanFunction) -> list[dict]:
    """JSON-ready term list sorted by (locality, variable indices)."""
    return [
        {"vars": list(key), "coeff": f.terms[key]}
        for key in sorted(f.terms, key=lambda k: (len(k), k))
    ]


def from_terms_list(items: Iterable[Mapping]) -> PseudoBooleanFunction:
    terms: dict[tuple[int, ...], int] = {}
    for item in items:
        key = _canonical_key(item["vars"])
        coeff = item["coeff"]
        if not isinstance(coeff, int) or isinstance(coeff, bool):
            raise ValueError(f"coefficient must be an integer, got {coeff!r}")
        if key in terms:
            raise ValueError(f"duplicate term {key} in serialized polynomial")
        terms[key] = coeff
    return PseudoBooleanFunction(terms)
