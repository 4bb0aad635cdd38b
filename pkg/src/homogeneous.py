"""
homogeneous.py

Reductive homogeneous spaces G/H modelled at the Lie algebra level.

A ReductiveSpace is a Lie algebra g with a subalgebra h, a complement m and a
nondegenerate scalar product on m (the tangent space at the base point). The metric
Gram matrix is written in the canonical basis of m, so m coordinates are the
coordinates of Subspace.coordinates().

Validation happens once, at construction, in this order:
    1. g = m (+) h as vector spaces            -> not-complementary
    2. [h, m] contained in m                   -> not-ad-invariant-complement
    3. metric nondegenerate                    -> degenerate-metric
    4. ad(A)|_m metric-skew for each A in h    -> metric-not-isotropy-invariant
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Tuple
import logging

import numpy as np

from errors import DimensionMismatchError, NotInSubspaceError, ReductiveSpaceError
from exact import inverse, stack_rows, zeros_matrix
from forms import BilinearForm, signature, skew_defect
from lie_core import LieAlgebra, Subspace, bracket, product_subspace

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ReductiveSpace:
    """
    Validated reductive decomposition g = m (+) h with an Ad(H)-invariant metric on m.

    Attributes:
        g: The Lie algebra of the transitive group.
        h: Isotropy subalgebra, as a subspace of g.
        m: Complement identified with the tangent space at the base point.
        metric: Scalar product on m, in the canonical basis of m.
        name: Label used in logs and reports.
    """
    g: LieAlgebra
    h: Subspace
    m: Subspace
    metric: BilinearForm
    name: str = ""

    def __post_init__(self):
        self._validate()

    @property
    def dim(self) -> int:
        """Dimension of the homogeneous space, i.e. of m."""
        return self.m.dim

    @cached_property
    def _split_inverse(self) -> np.ndarray:
        # rows of the stacked basis are m then h; x @ inverse gives (m coords, h coords)
        stacked = stack_rows(self.m.vectors() + self.h.vectors(), self.g.dim)
        return inverse(stacked)

    def split_coordinates(self, x) -> Tuple[np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=object)
        if x.shape != (self.g.dim,):
            raise DimensionMismatchError(
                f"Vector has shape {x.shape}, space {self.name!r} lives in dimension {self.g.dim}")
        coords = np.dot(x, self._split_inverse)
        return coords[:self.m.dim], coords[self.m.dim:]

    def m_coordinates(self, x) -> np.ndarray:
        """Coordinates of the m component of x (the projection [x]_m) in the basis of m."""
        return self.split_coordinates(x)[0]

    def m_coordinates_of_rows(self, rows) -> np.ndarray:
        """m coordinates of each row of a (k x dim g) matrix, as a (k x dim m) matrix."""
        rows = np.asarray(rows, dtype=object)
        if rows.shape[0] == 0:
            return zeros_matrix(0, self.m.dim)
        return np.dot(rows, self._split_inverse[:, :self.m.dim])

    def from_m(self, coords) -> np.ndarray:
        return self.m.combine(coords)

    def inner(self, x, y):
        """Metric on the m components of x and y."""
        return self.metric(self.m_coordinates(x), self.m_coordinates(y))

    def _validate(self) -> None:
        g, h, m = self.g, self.h, self.m
        if h.ambient_dim != g.dim or m.ambient_dim != g.dim:
            raise DimensionMismatchError(
                f"h and m must live in g (dimension {g.dim}), got ambient dimensions "
                f"{h.ambient_dim} and {m.ambient_dim}")
        if self.metric.dim != m.dim:
            raise DimensionMismatchError(
                f"Metric of dimension {self.metric.dim} on m of dimension {m.dim}")

        if m.dim + h.dim != g.dim or m.sum(h).dim != g.dim:
            raise ReductiveSpaceError(
                "not-complementary",
                f"dim m = {m.dim}, dim h = {h.dim}, dim(m + h) = {m.sum(h).dim}, "
                f"dim g = {g.dim}")

        if not m.includes(product_subspace(g, h, m)):
            raise ReductiveSpaceError(
                "not-ad-invariant-complement", f"[h, m] is not contained in m for {self.name!r}")

        sig = signature(self.metric)
        if sig.n_zero > 0:
            raise ReductiveSpaceError(
                "degenerate-metric",
                f"metric on m has signature {sig.as_tuple()} for {self.name!r}")

        for index, A in enumerate(h.vectors()):
            report = skew_defect(isotropy_operator(self, A), self.metric)
            if not report.passed:
                raise ReductiveSpaceError(
                    "metric-not-isotropy-invariant",
                    f"ad of h basis vector {index} is not skew on m: {report.witness}")
        logger.debug("Validated reductive space %s (dim g = %d, dim m = %d)",
                     self.name, g.dim, m.dim)


def make_reductive_space(g: LieAlgebra, h: Subspace, m: Subspace, metric: BilinearForm,
                         name: str = "") -> ReductiveSpace:
    """
    Build and validate a reductive space.

    Raises:
        DimensionMismatchError: h, m or the metric have the wrong dimensions.
        ReductiveSpaceError: one of the four invariants fails; ``kind`` names it.
    """
    return ReductiveSpace(g, h, m, metric, name or g.name)


def project(space: ReductiveSpace, x) -> Tuple[np.ndarray, np.ndarray]:
    """Unique split x = x_m + x_h, both returned as vectors of g."""
    m_coords, h_coords = space.split_coordinates(x)
    return space.m.combine(m_coords), space.h.combine(h_coords)


def isotropy_operator(space: ReductiveSpace, A) -> np.ndarray:
    """
    Matrix of X -> [A, X]_m on m, in the canonical basis of m.

    Column j holds the m coordinates of [A, Z_j]_m for the j-th basis vector Z_j of m.
    """
    A = np.asarray(A, dtype=object)
    if not space.h.contains(A):
        raise NotInSubspaceError(f"Isotropy generator is not in h for {space.name!r}")
    brackets = stack_rows([bracket(space.g, A, Z) for Z in space.m.vectors()], space.g.dim)
    return space.m_coordinates_of_rows(brackets).T
