"""Finite planar lattices: integer boxes and their seeded deformations.

A lattice is an ordered finite point set in the plane.  Matrix indices of
every operator built on top of it follow the enumeration order of the
points, so the enumeration is part of the contract: integer boxes are
listed row-major with the first coordinate varying fastest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SQUARE = "square"
DEFORMED = "deformed"
GRID = "grid"


@dataclass(frozen=True)
class Lattice:
    """Ordered finite point set in the plane.

    Attributes
    ----------
    points : ndarray, shape (n, 2)
        Physical positions.  Row ``i`` is the lattice point with matrix
        index ``i``.
    integer_points : ndarray of int or None, shape (n, 2)
        Integer labels paired with ``points`` row by row (the value of the
        labelling bijection at each point).  Present for ``square`` and
        ``deformed`` lattices; ``None`` for scaled grids.
    kind : str
        One of ``"square"``, ``"deformed"``, ``"grid"``.
    """

    points: np.ndarray
    integer_points: np.ndarray | None
    kind: str

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError(f"points must have shape (n, 2), got {pts.shape}")
        object.__setattr__(self, "points", pts)
        if self.integer_points is not None:
            ints = np.asarray(self.integer_points)
            if ints.shape != pts.shape:
                raise ValueError("integer_points must align with points")
            object.__setattr__(self, "integer_points", ints.astype(np.int64))
            offsets = np.linalg.norm(pts - ints, axis=1)
            if np.any(offsets >= 0.5):
                raise ValueError("every point must lie within 1/2 of its integer label")

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def kernel_coords(self) -> np.ndarray:
        """Coordinates at which generating kernels are evaluated.

        For labelled lattices the kernel is transported through the
        labelling bijection, i.e. evaluated at the integer labels; plain
        grids use the physical points.
        """
        if self.integer_points is not None:
            return self.integer_points.astype(float)
        return self.points


def build_square_lattice(n_side: int) -> Lattice:
    """Return the ``n_side`` x ``n_side`` integer box, enumerated row-major.

    The first coordinate varies fastest: for ``n_side=2`` the order is
    (0,0), (1,0), (0,1), (1,1).
    """
    if n_side < 1:
        raise ValueError(f"n_side must be >= 1, got {n_side}")
    idx = np.arange(n_side)
    x2, x1 = np.meshgrid(idx, idx, indexing="ij")
    ints = np.column_stack([x1.ravel(), x2.ravel()]).astype(np.int64)
    return Lattice(points=ints.astype(float), integer_points=ints, kind=SQUARE)


def build_deformed_lattice(n_side: int, amplitude: float, seed: int) -> Lattice:
    """Displace each point of the integer box by a seeded random offset.

    Every offset has Euclidean norm at most ``amplitude``; with
    ``amplitude < 1/2`` the displaced points stay pairwise distinct and the
    map back to the original integer point is a bijection moving nothing by
    1/2 or more.  The offsets are a pure function of ``(seed, point)``, so
    reconstruction is bit-identical.

    Parameters
    ----------
    n_side : int
        Side length of the underlying integer box.
    amplitude : float
        Maximum displacement norm; must satisfy ``0 <= amplitude < 1/2``.
    seed : int
        Non-negative seed for the per-point counter-based generator.
    """
    if not 0.0 <= amplitude < 0.5:
        raise ValueError(f"amplitude must lie in [0, 1/2), got {amplitude}")
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    base = build_square_lattice(n_side)
    ints = base.integer_points
    offsets = np.zeros((len(base), 2))
    for i, (x1, x2) in enumerate(ints):
        rng = np.random.default_rng((int(seed), int(x1), int(x2)))
        u_angle, u_radius = rng.random(2)
        radius = amplitude * np.sqrt(u_radius)
        theta = 2.0 * np.pi * u_angle
        offsets[i] = (radius * np.cos(theta), radius * np.sin(theta))
    return Lattice(points=ints + offsets, integer_points=ints, kind=DEFORMED)


def build_grid_lattice(n_side: int, spacing: float) -> Lattice:
    """Square grid of ``n_side**2`` points with physical spacing ``spacing``.

    Used by the discretized continuum model; carries no integer labels
    because the physical points are not within 1/2 of their grid indices.
    """
    if n_side < 1:
        raise ValueError(f"n_side must be >= 1, got {n_side}")
    if spacing <= 0:
        raise ValueError(f"spacing must be positive, got {spacing}")
    square = build_square_lattice(n_side)
    return Lattice(points=spacing * square.points, integer_points=None, kind=GRID)


def min_pair_distance(lattice: Lattice) -> float:
    """Smallest distance between two distinct lattice points (exhaustive)."""
    pts = lattice.points
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.linalg.norm(diff, axis=-1)
    np.fill_diagonal(dist, np.inf)
    return float(dist.min())
