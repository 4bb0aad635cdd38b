"""
forms.py

Exact symmetric bilinear forms: signatures, restrictions, orthocomplements and the
invariance checks used by the geometry modules.

Signatures come from congruence diagonalization with exact pivoting (never from
eigenvalues); by Sylvester's law of inertia the counts do not depend on the basis.
A zero diagonal with a nonzero off-diagonal entry (a hyperbolic pair) is handled by
replacing x_i with x_i + x_j, which puts 2<x_i, x_j> on the diagonal.

Definite means nondegenerate with all signs equal. A degenerate form is never
definite, but the zero-dimensional form is (vacuously).
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List
import logging

import numpy as np

from errors import DimensionMismatchError
from exact import fraction_array, identity, nullspace, zeros_matrix
from lie_core import LieAlgebra, Subspace
from report import Report

logger = logging.getLogger(__name__)

SPACELIKE = "spacelike"
TIMELIKE = "timelike"
NULL = "null"


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """Symmetric bilinear form given by an exact Gram matrix."""
    gram: np.ndarray

    def __post_init__(self):
        gram = fraction_array(self.gram)
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise DimensionMismatchError(f"Gram matrix must be square, got shape {gram.shape}")
        n = gram.shape[0]
        for i in range(n):
            for j in range(i + 1, n):
                if gram[i, j] != gram[j, i]:
                    raise ValueError(
                        f"Gram matrix is not symmetric at ({i}, {j}): "
                        f"{gram[i, j]} != {gram[j, i]}")
        gram.flags.writeable = False
        object.__setattr__(self, "gram", gram)

    @classmethod
    def identity(cls, n: int) -> "BilinearForm":
        return cls(identity(n))

    @classmethod
    def diagonal(cls, entries) -> "BilinearForm":
        entries = fraction_array(list(entries))
        gram = zeros_matrix(len(entries), len(entries))
        for i, value in enumerate(entries):
            gram[i, i] = value
        return cls(gram)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    def __call__(self, x, y) -> Fraction:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise DimensionMismatchError(
                f"Vectors of shape {x.shape}/{y.shape} for a form of dimension {self.dim}")
        if self.dim == 0:
            return Fraction(0)
        return Fraction(np.dot(np.dot(x, self.gram), y))

    def equals(self, other: "BilinearForm") -> bool:
        return self.dim == other.dim and all(
            a == b for a, b in zip(self.gram.ravel(), other.gram.ravel()))


@dataclass(frozen=True)
class Signature:
    """(n_plus, n_minus, n_zero) of a symmetric form."""
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def dim(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    def as_tuple(self):
        return (self.n_plus, self.n_minus, self.n_zero)

    def to_dict(self):
        return {"n_plus": self.n_plus, "n_minus": self.n_minus, "n_zero": self.n_zero}


def congruence_diagonal(form: BilinearForm) -> List[Fraction]:
    """
    Diagonal entries of an exact congruence diagonalization of the form.

    Symmetric Schur-complement elimination: pick a nonzero diagonal pivot, or create
    one from a hyperbolic pair, then eliminate its row and column together.
    """
    a = [[Fraction(v) for v in row] for row in form.gram]
    active = list(range(form.dim))
    diagonal: List[Fraction] = []
    while active:
        pivot = next((i for i in active if a[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for idx, i in enumerate(active) for j in active[idx + 1:]
                         if a[i][j] != 0), None)
            if pair is None:
                diagonal.extend(Fraction(0) for _ in active)
                break
            i, j = pair
            # x_i -> x_i + x_j applied to rows and columns
            for r in active:
                a[i][r] += a[j][r]
            for r in active:
                a[r][i] += a[r][j]
            pivot = i
        d = a[pivot][pivot]
        diagonal.append(d)
        rest = [r for r in active if r != pivot]
        for r in rest:
            factor = a[r][pivot] / d
            if factor == 0:
                continue
            for c in rest:
                a[r][c] -= factor * a[pivot][c]
        active = rest
    return diagonal


def signature(form: BilinearForm) -> Signature:
    diagonal = congruence_diagonal(form)
    return Signature(n_plus=sum(1 for d in diagonal if d > 0),
                     n_minus=sum(1 for d in diagonal if d < 0),
                     n_zero=sum(1 for d in diagonal if d == 0))


def is_nondegenerate(sig: Signature) -> bool:
    return sig.n_zero == 0


def is_definite(sig: Signature) -> bool:
    """Nondegenerate with a single sign; the zero-dimensional form counts as definite."""
    return sig.n_zero == 0 and (sig.n_plus == sig.dim or sig.n_minus == sig.dim)


def restrict_form(form: BilinearForm, S: Subspace) -> BilinearForm:
    """Gram matrix of the form on the canonical basis of S."""
    if S.ambient_dim != form.dim:
        raise DimensionMismatchError(
            f"Subspace of a {S.ambient_dim}-dimensional space restricted by a form of "
            f"dimension {form.dim}")
    if S.dim == 0:
        return BilinearForm(zeros_matrix(0, 0))
    basis = S.matrix
    return BilinearForm(np.dot(np.dot(basis, form.gram), basis.T))


def orthocomplement(form: BilinearForm, S: Subspace) -> Subspace:
    """{x : <x, s> = 0 for all s in S}, as the kernel of basis(S) @ gram."""
    if S.ambient_dim != form.dim:
        raise DimensionMismatchError(
            f"Subspace of a {S.ambient_dim}-dimensional space, form of dimension {form.dim}")
    if S.dim == 0:
        return Subspace.full(form.dim)
    constraints = np.dot(S.matrix, form.gram)
    return Subspace.span(form.dim, nullspace(constraints, form.dim))


def causal_character(form: BilinearForm, x) -> str:
    value = form(x, x)
    if value > 0:
        return SPACELIKE
    if value < 0:
        return TIMELIKE
    return NULL


def invariance_defect(alg: LieAlgebra, form: BilinearForm) -> Report:
    """
    Check <[x,y],z> = <x,[y,z]> on all basis triples, exactly.

    Passing means the form is ad-invariant (associative), i.e. the corresponding
    left-invariant metric is bi-invariant.
    """
    if form.dim != alg.dim:
        raise DimensionMismatchError(
            f"Form of dimension {form.dim} on algebra {alg.name!r} of dimension {alg.dim}")
    gram = form.gram
    names = alg.basis_names
    report = Report(check="invariance", subject={"algebra": alg.name, "dim": alg.dim})

    def pair_with(terms, k):
        # <sum_l c_l b_l, b_k>
        return sum((c * gram[l, k] for l, c in terms), Fraction(0))

    violations = 0
    first = None
    for i in range(alg.dim):
        for j in range(alg.dim):
            tij = alg.terms(i, j)
            for k in range(alg.dim):
                lhs = pair_with(tij, k)
                rhs = pair_with(alg.terms(j, k), i)
                if lhs != rhs:
                    violations += 1
                    if first is None:
                        first = (i, j, k, lhs - rhs)
    if first is None:
        report.add("associativity", True, triples_checked=alg.dim ** 3)
        report.message = "form is ad-invariant"
    else:
        i, j, k, defect = first
        report.add("associativity", False, triple=[names[i], names[j], names[k]],
                   defect=defect, violations=violations)
        report.message = "form is not ad-invariant"
    return report


def skew_defect(operator, form: BilinearForm) -> Report:
    """Check <Op x, y> + <x, Op y> = 0 on all basis pairs, exactly."""
    op = fraction_array(operator)
    if op.shape != (form.dim, form.dim):
        raise DimensionMismatchError(
            f"Operator of shape {op.shape} for a form of dimension {form.dim}")
    report = Report(check="skew", subject={"dim": form.dim})
    if form.dim == 0:
        report.add("skew", True, pairs_checked=0)
        return report
    defect = np.dot(op.T, form.gram) + np.dot(form.gram, op)
    for i in range(form.dim):
        for j in range(form.dim):
            if defect[i, j] != 0:
                report.add("skew", False, pair=[i, j], defect=defect[i, j])
                return report
    report.add("skew", True, pairs_checked=form.dim * form.dim)
    return report


def is_isometry(matrix, form: BilinearForm) -> bool:
    """True when W^T G W = G exactly."""
    w = fraction_array(matrix)
    if w.shape != (form.dim, form.dim):
        raise DimensionMismatchError(
            f"Matrix of shape {w.shape} for a form of dimension {form.dim}")
    if form.dim == 0:
        return True
    image = np.dot(np.dot(w.T, form.gram), w)
    return all(a == b for a, b in zip(image.ravel(), form.gram.ravel()))
