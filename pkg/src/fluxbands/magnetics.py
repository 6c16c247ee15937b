"""Magnetic phase function, its algebraic identities, and phase matrices.

The phase attached to an ordered pair of points is minus the flux of a
unit field through the triangle spanned by the two points and the origin:

    phase(x, y) = -(x1*y2 - x2*y1) / 2

It is antisymmetric and obeys the additive identity

    phase(x, y) + phase(y, z) = phase(x, z) + phase(x - y, y - z),

with the defect term bounded by ``|x-y| * |y-z| / 2``.  Multiplying a
hopping amplitude between ``x`` and ``y`` by ``exp(i*b*phase(x, y))``
threads a uniform flux ``b`` through every unit plaquette (up to the
orientation sign; the circulation around a positively oriented unit square
is ``-b`` in this convention).
"""

from __future__ import annotations

import numpy as np

from .lattice import DEFORMED, Lattice

STANDARD_PHASES = "standard"
DEFORMED_PHASES = "deformed"


def magnetic_phase(x, y) -> float:
    """Phase for the ordered pair ``(x, y)``; antisymmetric, zero on the diagonal."""
    x1, x2 = float(x[0]), float(x[1])
    y1, y2 = float(y[0]), float(y[1])
    return -0.5 * (x1 * y2 - x2 * y1)


def phase_matrix(coords: np.ndarray) -> np.ndarray:
    """Antisymmetric matrix of pair phases for the rows of ``coords``."""
    coords = np.asarray(coords, dtype=float)
    x1 = coords[:, 0]
    x2 = coords[:, 1]
    return -0.5 * (np.outer(x1, x2) - np.outer(x2, x1))


def phase_additive_defect(x, y, z) -> float:
    """Excess of the two-leg phase over the direct one.

    Returns ``phase(x, y) + phase(y, z) - phase(x, z)``, which equals
    ``phase(x - y, y - z)`` identically and is bounded in modulus by
    ``|x - y| * |y - z| / 2``.
    """
    return magnetic_phase(x, y) + magnetic_phase(y, z) - magnetic_phase(x, z)


def deformed_phase(lattice: Lattice, i: int, j: int) -> float:
    """Pair phase evaluated at the displaced physical points of a deformed lattice.

    The kernel of a deformed-lattice operator is indexed by integer labels
    while its phases are attached to the physical positions; this returns
    the phase of the physical pair ``(i, j)``.
    """
    if lattice.kind != DEFORMED or lattice.integer_points is None:
        raise ValueError("deformed phases require a deformed lattice with integer labels")
    return magnetic_phase(lattice.points[i], lattice.points[j])


def phase_coordinates(lattice: Lattice, phase_source: str) -> np.ndarray:
    """Coordinates feeding the phase matrix for the requested convention.

    ``"standard"`` evaluates phases at the integer labels when the lattice
    carries them (physical points otherwise); ``"deformed"`` evaluates them
    at the displaced physical points and requires a deformed lattice.
    """
    if phase_source == STANDARD_PHASES:
        return lattice.kernel_coords
    if phase_source == DEFORMED_PHASES:
        if lattice.kind != DEFORMED or lattice.integer_points is None:
            raise ValueError("deformed phases require a deformed lattice with integer labels")
        return lattice.points
    raise ValueError(f"unknown phase source {phase_source!r}")


def plaquette_circulation(b: float, corner) -> float:
    """Accumulated phase (times ``b``) around the unit square at ``corner``.

    The traversal is positively oriented; the result equals ``-b`` at every
    corner, so the flux per unit plaquette is ``b`` in absolute value.
    """
    c1, c2 = float(corner[0]), float(corner[1])
    ring = [
        (c1, c2),
        (c1 + 1.0, c2),
        (c1 + 1.0, c2 + 1.0),
        (c1, c2 + 1.0),
    ]
    total = 0.0
    for k in range(4):
        total += magnetic_phase(ring[k], ring[(k + 1) % 4])
    return b * total


def twist_matrix(matrix: np.ndarray, coords: np.ndarray, b: float) -> np.ndarray:
    """Entrywise product of ``matrix`` with the unimodular phase factors.

    Preserves Hermiticity (the phase matrix is antisymmetric), the
    diagonal, and every entrywise modulus.  ``b = 0`` returns the input
    unchanged, keeping real storage for untwisted operators.
    """
    if b == 0.0:
        return matrix.copy()
    return matrix * np.exp(1j * b * phase_matrix(coords))
