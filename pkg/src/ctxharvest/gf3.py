"""Arithmetic over Z3 phase point vectors and the measurement contexts they span.

A displacement operator on one qutrit is labeled by a vector [p, q] over Z3;
on two qutrits by [p1, q1, p2, q2].  Two operators commute exactly when the
symplectic form of their labels vanishes, so a joint measurement (a context)
corresponds to a two-dimensional subspace of Z3^4 on which the form is zero.
There are exactly 40 such subspaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

PhasePointVector = tuple[int, ...]


def _validate(v: PhasePointVector) -> None:
    if len(v) not in (2, 4):
        raise ValueError(f"phase point vector must have length 2 or 4, got {len(v)}")
    if any(c not in (0, 1, 2) for c in v):
        raise ValueError(f"phase point vector coordinates must lie in {{0,1,2}}, got {v}")


def symplectic_form(v: PhasePointVector, w: PhasePointVector) -> int:
    """Symplectic pairing of two phase point vectors, an element of Z3.

    For [p1, q1, p2, q2] and the primed partner this is
    p1*q1' - q1*p1' + p2*q2' - q2*p2' mod 3.  It vanishes iff the labeled
    operators commute.
    """
    _validate(v)
    _validate(w)
    if len(v) != len(w):
        raise ValueError(f"length mismatch: {len(v)} vs {len(w)}")
    s = 0
    for i in range(0, len(v), 2):
        s += v[i] * w[i + 1] - v[i + 1] * w[i]
    return s % 3


def add(v: PhasePointVector, w: PhasePointVector) -> PhasePointVector:
    return tuple((a + b) % 3 for a, b in zip(v, w, strict=True))


def scale(c: int, v: PhasePointVector) -> PhasePointVector:
    return tuple((c * a) % 3 for a in v)


def is_isotropic(members: list[PhasePointVector]) -> bool:
    """True iff the symplectic form vanishes on every pair of the given vectors."""
    if not members:
        raise ValueError("need at least one vector")
    return all(
        symplectic_form(v, w) == 0 for v, w in itertools.combinations_with_replacement(members, 2)
    )


@dataclass(frozen=True)
class Context:
    """A Lagrangian subspace of Z3^4: one joint measurement of 9 commuting operators.

    `generators` are the two basis vectors in reduced echelon form; `members`
    are all 9 linear combinations (including the zero vector), sorted
    lexicographically.
    """

    generators: tuple[PhasePointVector, PhasePointVector]
    members: tuple[PhasePointVector, ...]

    def coefficients(self) -> dict[PhasePointVector, tuple[int, int]]:
        """Map each member to its (a, b) expansion in the two generators."""
        g1, g2 = self.generators
        out = {}
        for a in range(3):
            for b in range(3):
                out[add(scale(a, g1), scale(b, g2))] = (a, b)
        return out


def _rref_basis(v: PhasePointVector, w: PhasePointVector) -> tuple[PhasePointVector, PhasePointVector]:
    """Reduced echelon basis over Z3 of span{v, w} (assumed 2-dimensional)."""
    rows = [list(v), list(w)]
    pivot_cols = []
    r = 0
    for col in range(4):
        piv = next((i for i in range(r, 2) if rows[i][col] % 3 != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 if rows[r][col] % 3 == 1 else 2  # inverse of 1 is 1, of 2 is 2
        rows[r] = [(inv * x) % 3 for x in rows[r]]
        for i in range(2):
            if i != r and rows[i][col] % 3 != 0:
                c = rows[i][col] % 3
                rows[i] = [(x - c * y) % 3 for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == 2:
            break
    if r != 2:
        raise ValueError("vectors are linearly dependent")
    return tuple(rows[0]), tuple(rows[1])


def _span(v: PhasePointVector, w: PhasePointVector) -> tuple[PhasePointVector, ...]:
    return tuple(sorted({add(scale(a, v), scale(b, w)) for a in range(3) for b in range(3)}))


_CONTEXT_CACHE: list[Context] | None = None


def enumerate_contexts() -> list[Context]:
    """All 40 Lagrangian subspaces of (Z3^4, symplectic form), canonically ordered.

    Brute force over ordered pairs of independent, mutually orthogonal vectors;
    3^4 is small enough that this is exact and obviously correct.  Contexts are
    deduplicated by member set and sorted lexicographically by it, so the
    ordering is reproducible across runs.
    """
    global _CONTEXT_CACHE
    if _CONTEXT_CACHE is None:
        nonzero = [v for v in itertools.product(range(3), repeat=4) if any(v)]
        by_members: dict[tuple, tuple] = {}
        for v, w in itertools.combinations(nonzero, 2):
            if symplectic_form(v, w) != 0:
                continue
            members = _span(v, w)
            if len(members) != 9:
                continue  # w was a multiple of v
            if members not in by_members:
                by_members[members] = _rref_basis(v, w)
        _CONTEXT_CACHE = [
            Context(generators=gens, members=members)
            for members, gens in sorted(by_members.items())
        ]
    return list(_CONTEXT_CACHE)
