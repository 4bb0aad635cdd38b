"""
weak_symmetry.py

Tangent-space witnesses of weak symmetry at the base point.

A space is weakly symmetric when for each tangent vector xi there is an isometry
fixing the base point whose differential sends xi to -xi. At the linearized level a
witness is a matrix W on m with W xi = -xi and W^T G W = G.

Recipes:
    heisenberg, sphere-un   W = S . dphi, where dphi(v, w) = (-v, i w) is the
                            linearized coordinate conjugation, and S is
                            multiplication by i on the vector factor (an element of
                            the isotropy group). W(v, w) = (-v, -w) for
                            every xi.
    sp1-spn                 W = (g1 conjugation on Im H) x (reflection of H^{n-1} in the
                            quaternionic line through w), with g1 an imaginary
                            quaternion orthogonal to v. W depends on xi.

Since every invariant metric of these families is a <,>_1 + b <,>_2, a witness that
preserves both blocks separately works for the whole family.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Mapping, Optional, Sequence, Tuple
import itertools
import logging

import numpy as np

from catalog import get_entry, im_factor_dim, metric_blocks, normalize_id
from errors import DimensionMismatchError, UnknownExampleError
from exact import fraction_array, identity, zeros, zeros_matrix
from forms import BilinearForm, is_isometry
from geodesic import SamplerConfig
from homogeneous import ReductiveSpace
from report import Report

logger = logging.getLogger(__name__)

DEFAULT_METRIC_GRID = (-2, -1, 1, 2)

Quaternion = Tuple[Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True, eq=False)
class ReversalWitness:
    """Matrix W on m (canonical basis of m) and how it was built."""
    W: np.ndarray
    description: str

    def to_dict(self):
        return {"W": [list(row) for row in self.W], "description": self.description}


def verify_witness(space: ReductiveSpace, witness: ReversalWitness, xi) -> Report:
    """
    Check W xi = -xi and W^T G W = G exactly; both are reported separately.

    xi is given in m coordinates.
    """
    xi = fraction_array(xi)
    W = fraction_array(witness.W)
    if xi.shape != (space.dim,) or W.shape != (space.dim, space.dim):
        raise DimensionMismatchError(
            f"Witness of shape {W.shape} and xi of shape {xi.shape} for m of dimension {space.dim}")
    report = Report(check="weak-symmetry-witness",
                    subject={"space": space.name, "witness": witness.description})
    image = np.dot(W, xi) if space.dim else zeros(0)
    reversed_ok = all(a == -b for a, b in zip(image, xi))
    report.add("reversal", reversed_ok, xi=xi, image=image)
    report.add("isometry", is_isometry(W, space.metric))
    report.message = ("witness reverses xi isometrically" if report.passed
                      else "witness does not reverse xi isometrically")
    return report


def _complex_unit_blocks(pairs: int) -> np.ndarray:
    """Multiplication by i on C^pairs realized as (x, y) -> (-y, x) per slot."""
    J = zeros_matrix(2 * pairs, 2 * pairs)
    for r in range(pairs):
        J[2 * r + 1, 2 * r] = Fraction(1)
        J[2 * r, 2 * r + 1] = Fraction(-1)
    return J


def _block_diag(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    n1, n2 = first.shape[0], second.shape[0]
    out = zeros_matrix(n1 + n2, n1 + n2)
    out[:n1, :n1] = first
    out[n1:, n1:] = second
    return out


def _complex_witness(pairs: int) -> ReversalWitness:
    J = _complex_unit_blocks(pairs)
    dphi = _block_diag(fraction_array([[-1]]), J)
    scalar = _block_diag(fraction_array([[1]]), J)
    return ReversalWitness(np.dot(scalar, dphi),
                           "i . dphi with dphi(v,w) = (-v, i w): (v,w) -> (-v,-w)")


def quaternion_multiply(a: Sequence[Fraction], b: Sequence[Fraction]) -> Quaternion:
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)


def quaternion_conjugate(a: Sequence[Fraction]) -> Quaternion:
    return (a[0], -a[1], -a[2], -a[3])


def _orthogonal_axis(v: Sequence[Fraction]) -> np.ndarray:
    """
    A nonzero rational vector of R^3 orthogonal to v; the i axis when v = 0.

    |v|^2 e - (v.e) v with e the first axis of smallest |v_e|.
    """
    v = fraction_array(list(v))
    norm = sum(c * c for c in v)
    if norm == 0:
        return fraction_array([1, 0, 0])
    axis = min(range(3), key=lambda i: abs(v[i]))
    g = -v[axis] * v
    g[axis] += norm
    return g


def _half_turn(g: np.ndarray) -> np.ndarray:
    """Conjugation by the imaginary quaternion g on Im H: x -> 2 (g.x) g / |g|^2 - x."""
    norm = sum(c * c for c in g)
    return 2 * np.outer(g, g) / norm - identity(3)


def _line_reflection(w: List[Quaternion]) -> np.ndarray:
    """
    Matrix of x -> x - 2 w (w* x) / |w|^2 on H^{n-1}, the reflection in the
    quaternionic line through w; the identity when w = 0.
    """
    size = 4 * len(w)
    norm = sum(sum(c * c for c in q) for q in w)
    if norm == 0:
        return identity(size)
    R = identity(size)
    for col in range(size):
        x = [tuple(Fraction(1) if 4 * r + c == col else Fraction(0) for c in range(4))
             for r in range(len(w))]
        inner = (Fraction(0),) * 4
        for wr, xr in zip(w, x):
            inner = tuple(p + s for p, s in
                          zip(inner, quaternion_multiply(quaternion_conjugate(wr), xr)))
        for r, wr in enumerate(w):
            projected = quaternion_multiply(wr, inner)
            for c in range(4):
                R[4 * r + c, col] -= 2 * projected[c] / norm
    return R


def _symplectic_witness(xi: np.ndarray) -> ReversalWitness:
    v = xi[:3]
    w = [tuple(xi[3 + 4 * r: 7 + 4 * r]) for r in range((len(xi) - 3) // 4)]
    g1 = _orthogonal_axis(v)
    W = _block_diag(_half_turn(g1), _line_reflection(w))
    g1_text = "+".join(f"({c}){u}" for c, u in zip(g1, "ijk") if c != 0)
    w_zero = all(c == 0 for q in w for c in q)
    description = (f"g1 = {g1_text} conjugating Im H, "
                   + ("g2 = identity (w = 0)" if w_zero
                      else "g2 = reflection in the quaternionic line through w"))
    return ReversalWitness(W, description)


def witness_for(example_id: str, params: Optional[Mapping[str, Any]], xi) -> ReversalWitness:
    """
    Witness W with W xi = -xi for a catalog space; xi is in m coordinates.

    Raises:
        UnknownExampleError: the example has no witness recipe.
        DimensionMismatchError: xi does not have length dim m.
    """
    example_id = normalize_id(example_id)
    if example_id not in ("heisenberg", "sphere-un", "sp1-spn"):
        raise UnknownExampleError(f"No weak-symmetry witness recipe for {example_id}")
    space = get_entry(example_id, params).space
    xi = fraction_array(xi)
    if xi.shape != (space.dim,):
        raise DimensionMismatchError(
            f"xi has shape {xi.shape}, m has dimension {space.dim} for {example_id}")
    if example_id == "sp1-spn":
        return _symplectic_witness(xi)
    return _complex_witness((space.dim - 1) // 2)


def check_metric_family(witness: ReversalWitness,
                        blocks: Tuple[BilinearForm, BilinearForm],
                        grid: Sequence = DEFAULT_METRIC_GRID) -> Report:
    """W preserves each block, hence a<,>_1 + b<,>_2 for every (a, b) on the grid."""
    first, second = blocks
    report = Report(check="metric-family", subject={"witness": witness.description})
    report.add("block_1_preserved", is_isometry(witness.W, first))
    report.add("block_2_preserved", is_isometry(witness.W, second))
    failures = []
    pairs = list(itertools.product(grid, repeat=2))
    for a, b in pairs:
        a, b = Fraction(a), Fraction(b)
        metric = BilinearForm(a * first.gram + b * second.gram)
        if not is_isometry(witness.W, metric):
            failures.append([a, b])
    report.add("grid", not failures, pairs_checked=len(pairs), failures=failures)
    return report


def metric_family_independence(example_id: str, params: Optional[Mapping[str, Any]], xi,
                               grid: Sequence = DEFAULT_METRIC_GRID) -> Report:
    report = check_metric_family(witness_for(example_id, params, xi),
                                 metric_blocks(example_id, params), grid)
    report.subject.update({"example": normalize_id(example_id), "xi": fraction_array(xi)})
    return report


def weak_symmetry_survey(example_id: str, params: Optional[Mapping[str, Any]], samples: int,
                         seed: int, grid: Sequence = DEFAULT_METRIC_GRID,
                         entry_bound: int = 3) -> Report:
    """
    Witness and metric-family checks on the basis of m and on seeded samples.

    Samples are halves in [-entry_bound, entry_bound], drawn exactly as in the
    geodesic-orbit survey.
    """
    example_id = normalize_id(example_id)
    entry = get_entry(example_id, params)
    space = entry.space
    vectors = [(f"basis[{i}]", row) for i, row in enumerate(identity(space.dim))]
    vectors += [(f"sample[{s}]", c) for s, c in
                enumerate(SamplerConfig(seed, samples, entry_bound).coordinates(space.dim))]
    blocks = metric_blocks(example_id, params)

    report = Report(check="weak-symmetry", seed=seed, samples=samples,
                    subject={"space": space.name, "example": example_id,
                             "params": dict(entry.params),
                             "im_factor_dim": im_factor_dim(example_id)})
    reversal_failures, family_failures = [], []
    for label, xi in vectors:
        witness = witness_for(example_id, entry.params, xi)
        if not verify_witness(space, witness, xi).passed:
            reversal_failures.append(label)
        if not check_metric_family(witness, blocks, grid).passed:
            family_failures.append(label)
    report.add("witnesses", not reversal_failures, tested=len(vectors),
               failures=reversal_failures)
    report.add("metric_family", not family_failures, tested=len(vectors),
               grid=list(grid), failures=family_failures)
    report.message = (f"{len(vectors)} tangent vectors reversed isometrically"
                      if report.passed else "some tangent vectors have no valid witness")
    logger.info("Weak-symmetry survey on %s: %d vectors, verdict %s", space.name,
                len(vectors), report.verdict)
    return report
