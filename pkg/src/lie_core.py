"""
lie_core.py

Exact finite-dimensional real Lie algebras given by structure constants.

The structure tensor is stored sparsely: for each ordered pair (i, j) of basis indices
the nonzero terms (k, c^k_ij) of [b_i, b_j] = sum_k c^k_ij b_k. The usual constructor,
LieAlgebra.from_brackets(), takes only pairs with i before j and completes the tensor
antisymmetrically; the raw constructor keeps whatever it is given so that validate()
can catch a broken tensor instead of hiding it.

Classes:
    Subspace: Canonical (reduced echelon) subspace of a coordinate space.
    LieAlgebra: Basis names plus sparse structure constants.

Functions:
    bracket(), ad_matrix(), validate()
    product_subspace(), lower_central_series(), nilpotency_step()
    is_ideal(), ideal_series()
    killing_form()
    semidirect_sum(), algebra_from_matrices()

Indexing of the lower central series: g^0 = g, g^{s+1} = [g, g^s]; an algebra is
s-step nilpotent when g^s = 0 and g^{s-1} != 0.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union
import logging

import numpy as np

from errors import (DerivationError, DimensionMismatchError, HomomorphismError, InputError,
                    NotInSubspaceError)
from exact import (arrays_equal, fraction_array, inverse, is_zero, nullspace, row_reduce,
                   stack_rows, to_fraction, unit_vector, zeros, zeros_matrix)
from report import Report

logger = logging.getLogger(__name__)

NOT_NILPOTENT = "not_nilpotent"

Terms = Tuple[Tuple[int, Fraction], ...]


@dataclass(frozen=True)
class Subspace:
    """
    Subspace of Q^n stored by the nonzero rows of its reduced row echelon form.

    Equal subspaces have identical representations, so == is subspace equality.
    Build instances with Subspace.span(), Subspace.zero() or Subspace.full().
    """
    ambient_dim: int
    basis: Tuple[Tuple[Fraction, ...], ...] = ()

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable) -> "Subspace":
        rows = stack_rows(vectors, ambient_dim)
        reduced, _ = row_reduce(rows, ambient_dim)
        return cls(ambient_dim, tuple(tuple(row) for row in reduced))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(ambient_dim, [unit_vector(ambient_dim, i) for i in range(ambient_dim)])

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> "Subspace":
        """Span of the given standard basis vectors."""
        return cls.span(ambient_dim, [unit_vector(ambient_dim, i) for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(c for c, v in enumerate(row) if v != 0) for row in self.basis)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Basis vectors as rows (dim x ambient_dim)."""
        matrix = zeros_matrix(self.dim, self.ambient_dim)
        for i, row in enumerate(self.basis):
            matrix[i, :] = row
        return matrix

    def vectors(self) -> List[np.ndarray]:
        return [self.matrix[i, :].copy() for i in range(self.dim)]

    def _check_ambient(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=object)
        if v.shape != (self.ambient_dim,):
            raise DimensionMismatchError(
                f"Vector has shape {v.shape}, expected ({self.ambient_dim},)")
        return v

    def coordinates(self, v) -> np.ndarray:
        """
        Coordinates of v in the canonical basis.

        With a reduced echelon basis the coordinates are the entries of v at the pivot
        columns; v lies in the subspace exactly when recombining them gives v back.
        """
        v = self._check_ambient(v)
        coords = fraction_array([v[p] for p in self.pivots]) if self.dim else zeros(0)
        if not arrays_equal(self.combine(coords), v):
            raise NotInSubspaceError("Vector is not in the subspace")
        return coords

    def combine(self, coords) -> np.ndarray:
        """The vector with the given coordinates in the canonical basis."""
        coords = np.asarray(coords, dtype=object)
        if coords.shape != (self.dim,):
            raise DimensionMismatchError(
                f"Coordinates have shape {coords.shape}, expected ({self.dim},)")
        if self.dim == 0:
            return zeros(self.ambient_dim)
        return np.dot(coords, self.matrix)

    def contains(self, v) -> bool:
        try:
            self.coordinates(v)
        except NotInSubspaceError:
            return False
        return True

    def includes(self, other: "Subspace") -> bool:
        """True when other is a subspace of self."""
        self._check_same_ambient(other)
        return all(self.contains(v) for v in other.vectors())

    def _check_same_ambient(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError(
                f"Ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_same_ambient(other)
        return Subspace.span(self.ambient_dim, self.vectors() + other.vectors())

    def intersection(self, other: "Subspace") -> "Subspace":
        """Solve sum a_i u_i = sum b_j v_j and map the kernel back through U."""
        self._check_same_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        combined = zeros_matrix(self.ambient_dim, self.dim + other.dim)
        combined[:, :self.dim] = self.matrix.T
        combined[:, self.dim:] = -other.matrix.T
        kernel = nullspace(combined, self.dim + other.dim)
        return Subspace.span(self.ambient_dim,
                             [self.combine(k[:self.dim]) for k in kernel])


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """
    Finite-dimensional real Lie algebra with exact sparse structure constants.

    Attributes:
        basis_names: One name per basis vector; dim is their count.
        structure: (i, j) -> ((k, c^k_ij), ...) with only nonzero coefficients.
        name: Optional label used in logs and reports.
    """
    basis_names: Tuple[str, ...]
    structure: Mapping[Tuple[int, int], Terms]
    name: str = ""

    def __post_init__(self):
        if len(set(self.basis_names)) != len(self.basis_names):
            raise InputError(f"Duplicate basis names in algebra {self.name!r}")
        n = len(self.basis_names)
        for (i, j), terms in self.structure.items():
            if not (0 <= i < n and 0 <= j < n) or any(not 0 <= k < n for k, _ in terms):
                raise DimensionMismatchError(
                    f"Structure constant index out of range in algebra {self.name!r}")
        object.__setattr__(self, "structure", MappingProxyType(dict(self.structure)))

    @classmethod
    def from_brackets(cls, basis_names: Sequence[str],
                      brackets: Iterable[Tuple[int, int, Mapping[int, object]]],
                      name: str = "") -> "LieAlgebra":
        """
        Build an algebra from [b_i, b_j] for i != j, completing antisymmetrically.

        Each bracket is (i, j, {k: coeff}); pairs given twice are summed, so callers
        can accumulate contributions. [b_i, b_i] must be zero.
        """
        accumulated: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for i, j, terms in brackets:
            if i == j:
                if any(to_fraction(c) != 0 for c in terms.values()):
                    raise InputError(f"Nonzero self-bracket for basis index {i}")
                continue
            if i > j:
                i, j = j, i
                terms = {k: -to_fraction(c) for k, c in terms.items()}
            slot = accumulated.setdefault((i, j), {})
            for k, c in terms.items():
                slot[k] = slot.get(k, Fraction(0)) + to_fraction(c)

        structure: Dict[Tuple[int, int], Terms] = {}
        for (i, j), terms in accumulated.items():
            clean = tuple(sorted((k, c) for k, c in terms.items() if c != 0))
            if clean:
                structure[(i, j)] = clean
                structure[(j, i)] = tuple((k, -c) for k, c in clean)
        return cls(tuple(basis_names), structure, name)

    @classmethod
    def abelian(cls, dim: int, name: str = "") -> "LieAlgebra":
        return cls(tuple(f"a{i + 1}" for i in range(dim)), {}, name or f"abelian-{dim}")

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def index(self, basis_name: str) -> int:
        return self.basis_names.index(basis_name)

    def basis_vector(self, basis_name: str) -> np.ndarray:
        return unit_vector(self.dim, self.index(basis_name))

    def terms(self, i: int, j: int) -> Terms:
        return self.structure.get((i, j), ())

    @cached_property
    def ad_basis(self) -> Tuple[np.ndarray, ...]:
        """ad(b_i) as exact matrices: ad(b_i)[k, j] = c^k_ij."""
        mats = []
        for i in range(self.dim):
            m = zeros_matrix(self.dim, self.dim)
            for j in range(self.dim):
                for k, c in self.terms(i, j):
                    m[k, j] = c
            mats.append(m)
        return tuple(mats)


def _check_vector(alg: LieAlgebra, v, label: str) -> np.ndarray:
    v = np.asarray(v, dtype=object)
    if v.shape != (alg.dim,):
        raise DimensionMismatchError(
            f"{label} has shape {v.shape}, algebra {alg.name!r} has dimension {alg.dim}")
    return v


def bracket(alg: LieAlgebra, x, y) -> np.ndarray:
    """[x, y] = sum_{i,j} x_i y_j [b_i, b_j], computed over the nonzero coordinates."""
    x = _check_vector(alg, x, "x")
    y = _check_vector(alg, y, "y")
    result = zeros(alg.dim)
    nonzero_y = [(j, yj) for j, yj in enumerate(y) if yj != 0]
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in nonzero_y:
            for k, c in alg.terms(i, j):
                result[k] += xi * yj * c
    return result


def ad_matrix(alg: LieAlgebra, x) -> np.ndarray:
    """Matrix of y -> [x, y] in the standard basis."""
    x = _check_vector(alg, x, "x")
    result = zeros_matrix(alg.dim, alg.dim)
    for i, xi in enumerate(x):
        if xi != 0:
            result = result + xi * alg.ad_basis[i]
    return result


def _sparse_bracket(alg: LieAlgebra, terms: Mapping[int, Fraction], k: int) -> Dict[int, Fraction]:
    """[sum_l terms[l] b_l, b_k] as a sparse mapping."""
    out: Dict[int, Fraction] = {}
    for l, c in terms.items():
        for m, d in alg.terms(l, k):
            out[m] = out.get(m, Fraction(0)) + c * d
    return out


def validate(alg: LieAlgebra) -> Report:
    """
    Exact check of antisymmetry and the Jacobi identity over all basis pairs/triples.

    Failures become report entries naming the first violating pair or triple; nothing
    is raised.
    """
    report = Report(check="validate", subject={"algebra": alg.name, "dim": alg.dim})
    names = alg.basis_names

    violation = None
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            forward = dict(alg.terms(i, j))
            backward = dict(alg.terms(j, i))
            keys = set(forward) | set(backward)
            if any(forward.get(k, 0) != -backward.get(k, 0) for k in keys):
                violation = (i, j)
                break
        if violation:
            break
    if violation:
        i, j = violation
        report.add("antisymmetry", False, pair=[names[i], names[j]], indices=[i, j])
    else:
        report.add("antisymmetry", True, pairs_checked=alg.dim * (alg.dim + 1) // 2)

    triples = 0
    failure = None
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            bij = dict(alg.terms(i, j))
            for k in range(j + 1, alg.dim):
                triples += 1
                total: Dict[int, Fraction] = {}
                for part in (_sparse_bracket(alg, bij, k),
                             _sparse_bracket(alg, dict(alg.terms(j, k)), i),
                             _sparse_bracket(alg, dict(alg.terms(k, i)), j)):
                    for m, c in part.items():
                        total[m] = total.get(m, Fraction(0)) + c
                residual = {m: c for m, c in total.items() if c != 0}
                if residual:
                    failure = (i, j, k, residual)
                    break
            if failure:
                break
        if failure:
            break
    if failure:
        i, j, k, residual = failure
        report.add("jacobi", False, triple=[names[i], names[j], names[k]],
                   residual={names[m]: c for m, c in sorted(residual.items())})
    else:
        report.add("jacobi", True, triples_checked=triples)

    report.message = "Lie algebra axioms hold" if report.passed else "Lie algebra axioms fail"
    return report


def product_subspace(alg: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """span{[u, v] : u in basis(U), v in basis(V)} in canonical form."""
    if U.ambient_dim != alg.dim or V.ambient_dim != alg.dim:
        raise DimensionMismatchError(
            f"Subspaces of dimension {U.ambient_dim}/{V.ambient_dim} do not live in "
            f"algebra {alg.name!r} of dimension {alg.dim}")
    products = [bracket(alg, u, v) for u in U.vectors() for v in V.vectors()]
    return Subspace.span(alg.dim, products)


def ideal_series(alg: LieAlgebra, n: Subspace) -> List[Subspace]:
    """
    Lower central series of the subalgebra n: n^0 = n, n^{s+1} = [n, n^s].

    Stops at the first stationary term, which is either 0 or a nonzero subspace that
    repeats (the repeat is not appended again).
    """
    series = [n]
    while True:
        nxt = product_subspace(alg, n, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def lower_central_series(alg: LieAlgebra) -> List[Subspace]:
    """[g^0, g^1, ...] with g^0 = g, ending at 0 or at the stationary nonzero term."""
    return ideal_series(alg, Subspace.full(alg.dim))


def series_step(series: Sequence[Subspace]) -> Union[int, str]:
    """Nilpotency step read off a series: index of its zero term, else not_nilpotent."""
    if series[-1].dim == 0:
        return len(series) - 1
    return NOT_NILPOTENT


def nilpotency_step(alg: LieAlgebra) -> Union[int, str]:
    """Smallest s with g^s = 0, or NOT_NILPOTENT when the series stalls above 0."""
    return series_step(lower_central_series(alg))


def is_ideal(alg: LieAlgebra, n: Subspace) -> bool:
    return n.includes(product_subspace(alg, Subspace.full(alg.dim), n))


def killing_form(alg: LieAlgebra):
    """B(x, y) = trace(ad x ad y), exact; returned as a forms.BilinearForm."""
    from forms import BilinearForm

    ad = alg.ad_basis
    gram = zeros_matrix(alg.dim, alg.dim)
    for i in range(alg.dim):
        for j in range(i, alg.dim):
            # trace(A B) = sum of the elementwise product of A and B^T
            value = sum((a * b for a, b in zip(ad[i].ravel(), ad[j].T.ravel())), Fraction(0))
            gram[i, j] = value
            gram[j, i] = value
    return BilinearForm(gram)


def semidirect_sum(ideal: LieAlgebra, acting: LieAlgebra, action: Sequence,
                   name: str = "") -> LieAlgebra:
    """
    The algebra ideal (+) acting with [(n,a),(n',a')] = ([n,n'] + a.n' - a'.n, [a,a']).

    Args:
        ideal: The algebra that becomes an ideal; its basis comes first.
        acting: The algebra acting by derivations; its basis follows.
        action: One matrix on the ideal per basis element of acting.

    Raises:
        DimensionMismatchError: wrong number or shape of action matrices.
        DerivationError: some D_a is not a derivation of the ideal.
        HomomorphismError: a -> D_a does not preserve brackets.
    """
    n, r = ideal.dim, acting.dim
    if len(action) != r:
        raise DimensionMismatchError(
            f"Expected {r} action matrices (one per basis element of {acting.name!r}), "
            f"got {len(action)}")
    mats = [fraction_array(m) for m in action]
    for a, m in enumerate(mats):
        if m.shape != (n, n):
            raise DimensionMismatchError(
                f"Action matrix for {acting.basis_names[a]} has shape {m.shape}, "
                f"expected ({n}, {n})")

    basis = [unit_vector(n, i) for i in range(n)]
    for a, d in enumerate(mats):
        for i in range(n):
            for j in range(i + 1, n):
                lhs = np.dot(d, bracket(ideal, basis[i], basis[j]))
                rhs = bracket(ideal, d[:, i], basis[j]) + bracket(ideal, basis[i], d[:, j])
                if not arrays_equal(lhs, rhs):
                    raise DerivationError(
                        f"Action of {acting.basis_names[a]} is not a derivation: "
                        f"D[{ideal.basis_names[i]},{ideal.basis_names[j]}] != "
                        f"[D{ideal.basis_names[i]},{ideal.basis_names[j]}] + "
                        f"[{ideal.basis_names[i]},D{ideal.basis_names[j]}]")

    for a in range(r):
        for b in range(a + 1, r):
            image = zeros_matrix(n, n)
            for k, c in acting.terms(a, b):
                image = image + c * mats[k]
            commutator = np.dot(mats[a], mats[b]) - np.dot(mats[b], mats[a])
            if not arrays_equal(image, commutator):
                raise HomomorphismError(
                    f"Action is not a homomorphism: D[{acting.basis_names[a]},"
                    f"{acting.basis_names[b]}] != [D{acting.basis_names[a]},"
                    f"D{acting.basis_names[b]}]")

    brackets = []
    for (i, j), terms in ideal.structure.items():
        if i < j:
            brackets.append((i, j, dict(terms)))
    for (a, b), terms in acting.structure.items():
        if a < b:
            brackets.append((n + a, n + b, {n + k: c for k, c in terms}))
    for a, d in enumerate(mats):
        for i in range(n):
            column = {k: d[k, i] for k in range(n) if d[k, i] != 0}
            if column:
                # [a, b_i] = D_a b_i
                brackets.append((n + a, i, column))

    names = list(ideal.basis_names) + list(acting.basis_names)
    result = LieAlgebra.from_brackets(
        names, brackets, name or f"{ideal.name} x| {acting.name}")
    logger.info("Built semidirect sum %s of dimension %d", result.name, result.dim)
    return result


def algebra_from_matrices(names: Sequence[str], matrices: Sequence, name: str = "") -> LieAlgebra:
    """
    Structure constants of a matrix Lie algebra, computed exactly.

    The matrices must be linearly independent and closed under the commutator. Each
    commutator is expressed in the basis through a fixed set of pivot entries (one
    exact inverse, computed once), then recombined and compared with the commutator
    so a non-closed family is rejected rather than silently projected.

    Integer matrices stay in numpy integer arithmetic for the commutators; only the
    coordinate extraction uses fractions.
    """
    if len(names) != len(matrices):
        raise DimensionMismatchError(f"{len(names)} names for {len(matrices)} matrices")
    mats = [np.asarray(m) for m in matrices]
    d = len(mats)
    if d == 0:
        return LieAlgebra((), {}, name)
    size = mats[0].size
    flat = np.array([m.ravel() for m in mats], dtype=object)
    # Pivot columns of the reduced basis are matrix entries on which the basis is
    # invertible; coordinates are read off those entries alone.
    _, entry_positions = row_reduce(flat, size)
    if len(entry_positions) < d:
        raise ValueError(f"Matrices for algebra {name!r} are linearly dependent")
    inv = inverse(flat[:, entry_positions])
    integral = all(m.dtype.kind in "iu" for m in mats)
    int_basis = np.array([m.ravel() for m in mats], dtype=np.int64) if integral else None

    brackets = []
    for i in range(d):
        for j in range(i + 1, d):
            comm = (mats[i] @ mats[j] - mats[j] @ mats[i]).ravel()
            if is_zero(comm):
                continue
            coords = np.dot(np.array([to_fraction(comm[p]) for p in entry_positions],
                                     dtype=object), inv)
            if integral and all(c.denominator == 1 for c in coords):
                rebuilt = np.array([int(c) for c in coords], dtype=np.int64) @ int_basis
                closed = np.array_equal(rebuilt, comm)
            else:
                rebuilt = np.dot(coords, flat)
                closed = arrays_equal(rebuilt, fraction_array(comm))
            if not closed:
                raise ValueError(
                    f"Matrices for algebra {name!r} are not closed under the commutator: "
                    f"[{names[i]},{names[j]}]")
            brackets.append((i, j, {k: c for k, c in enumerate(coords) if c != 0}))
    alg = LieAlgebra.from_brackets(names, brackets, name)
    logger.info("Computed structure constants of %s (dimension %d)", name, d)
    return alg
