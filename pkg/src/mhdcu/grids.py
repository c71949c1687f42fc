"""Uniform cell grids with two ghost layers.

Array conventions: a 1-D field carries n + 2*ng cells, a 2-D field
(nx + 2*ng) x (ny + 2*ng); interior slices start at ``ng``. Face-centered
arrays carry one extra entry along their normal axis (faces of the
ghost-extended grid), so ``b1[i, k]`` is the x-face on the left edge of cell
column ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

NGHOST = 2


@dataclass(frozen=True)
class Grid1D:
    n: int
    x0: float
    x1: float
    ng: int = NGHOST

    def __post_init__(self):
        if self.n < 4:
            raise ValueError(f"need at least 4 cells, got {self.n}")
        if not self.x1 > self.x0:
            raise ValueError("empty domain")

    @property
    def dx(self):
        return (self.x1 - self.x0) / self.n

    @property
    def ncells(self):
        return self.n + 2 * self.ng

    @property
    def interior(self):
        return slice(self.ng, self.ng + self.n)

    def x_centers(self, with_ghosts=False):
        lo = -self.ng if with_ghosts else 0
        hi = self.n + self.ng if with_ghosts else self.n
        return self.x0 + (np.arange(lo, hi) + 0.5) * self.dx


@dataclass(frozen=True)
class Grid2D:
    nx: int
    ny: int
    x0: float
    x1: float
    y0: float
    y1: float
    ng: int = NGHOST

    def __post_init__(self):
        if self.nx < 4 or self.ny < 4:
            raise ValueError(f"need at least 4x4 cells, got {self.nx}x{self.ny}")
        if not (self.x1 > self.x0 and self.y1 > self.y0):
            raise ValueError("empty domain")

    @property
    def dx(self):
        return (self.x1 - self.x0) / self.nx

    @property
    def dy(self):
        return (self.y1 - self.y0) / self.ny

    @property
    def shape(self):
        """Cell-array shape including ghosts."""
        return (self.nx + 2 * self.ng, self.ny + 2 * self.ng)

    @property
    def interior(self):
        return (slice(self.ng, self.ng + self.nx), slice(self.ng, self.ng + self.ny))

    @property
    def cell_volume(self):
        return self.dx * self.dy

    def x_centers(self, with_ghosts=False):
        lo = -self.ng if with_ghosts else 0
        hi = self.nx + self.ng if with_ghosts else self.nx
        return self.x0 + (np.arange(lo, hi) + 0.5) * self.dx

    def y_centers(self, with_ghosts=False):
        lo = -self.ng if with_ghosts else 0
        hi = self.ny + self.ng if with_ghosts else self.ny
        return self.y0 + (np.arange(lo, hi) + 0.5) * self.dy

    def x_faces(self):
        """Interior x-face coordinates (nx + 1 values, domain edges included)."""
        return self.x0 + np.arange(self.nx + 1) * self.dx

    def y_faces(self):
        return self.y0 + np.arange(self.ny + 1) * self.dy

    def interior_meshgrid(self):
        return np.meshgrid(self.x_centers(), self.y_centers(), indexing="ij")
