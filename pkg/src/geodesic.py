"""
geodesic.py

Geodesic vectors, geodesic-orbit surveys and the two-step nilradical criterion.

Geodesic Lemma, as used here: for X in g the orbit exp(tX).o is a geodesic (for some
parameter) iff there is a constant k with

    < [X, Z]_m, X_m > = k < X_m, Z >     for every Z in m,

and k != 0 can only happen when the orbit is a null curve. A vector Xm in m is then a
geodesic vector up to isotropy when some A in h makes Xm + A satisfy the identity.
That condition is linear jointly in (A, k), so solve_geodesic_vector() does one exact
solve over dim h + 1 unknowns.

A geodesic-orbit survey can only find counterexamples. A passing survey is reported as
"no counterexample found"; the property quantifies over all of m and sampling does
not prove it.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple
import logging
import weakref

import numpy as np

from errors import (InputError, InternalContradictionError, NotAnIdealError,
                    NotInSubspaceError, NotNilpotentError)
from exact import format_fraction, fraction_array, is_zero, solve, stack_rows, zeros, zeros_matrix
from forms import (NULL, BilinearForm, causal_character, is_definite, orthocomplement,
                   signature, skew_defect)
from homogeneous import ReductiveSpace, isotropy_operator
from lie_core import (NOT_NILPOTENT, Subspace, bracket, ideal_series, is_ideal,
                      product_subspace, series_step)
from report import Report

logger = logging.getLogger(__name__)

GO_NO_COUNTEREXAMPLE = "no counterexample found"

# per-space (C, P, h_basis); entries go away with their space
_SOLVER_TENSORS: "weakref.WeakKeyDictionary[ReductiveSpace, tuple]" = weakref.WeakKeyDictionary()


@dataclass(frozen=True)
class LemmaResidual:
    """k and the residual L - kR of the lemma identity over the basis of m."""
    k: Fraction
    residual: np.ndarray
    consistent: bool

    def to_dict(self):
        return {"k": self.k, "residual": list(self.residual), "consistent": self.consistent}


@dataclass(frozen=True, eq=False)
class GeodesicCertificate:
    """
    Exact witness that X + A satisfies the lemma identity with constant k.

    Build with certify(), which checks the identity and the null clause.
    """
    X: np.ndarray
    A: np.ndarray
    k: Fraction
    null_flag: bool
    causal: str = NULL

    def to_dict(self):
        return {"X": list(self.X), "A": list(self.A), "k": self.k,
                "null": self.null_flag, "causal_character": self.causal,
                "affine_parameter": affine_parameter(self)}


def _lemma_terms(space: ReductiveSpace, X) -> Tuple[np.ndarray, np.ndarray]:
    """L(Z_j) = <[X, Z_j]_m, X_m> and R(Z_j) = <X_m, Z_j> over the basis of m."""
    x = space.m_coordinates(X)
    gx = np.dot(space.metric.gram, x) if space.dim else zeros(0)
    brackets = stack_rows([bracket(space.g, X, Z) for Z in space.m.vectors()], space.g.dim)
    projected = space.m_coordinates_of_rows(brackets)
    L = np.dot(projected, gx) if space.dim else zeros(0)
    return fraction_array(list(L)), fraction_array(list(gx))


def geodesic_lemma_residual(space: ReductiveSpace, X) -> LemmaResidual:
    """
    Evaluate the lemma identity for X without any isotropy correction.

    k is read off the first basis vector Z with R(Z) != 0; when R vanishes identically
    k is 0 and the residual is L itself.
    """
    L, R = _lemma_terms(space, X)
    pivot = next((j for j, r in enumerate(R) if r != 0), None)
    k = Fraction(0) if pivot is None else L[pivot] / R[pivot]
    residual = L - k * R if space.dim else zeros(0)
    return LemmaResidual(k=k, residual=residual, consistent=is_zero(residual))


def is_geodesic_vector(space: ReductiveSpace, X) -> bool:
    """True when the orbit of X in g itself (no correction from h) is a geodesic."""
    return geodesic_lemma_residual(space, X).consistent


def certify(space: ReductiveSpace, X, A, k) -> GeodesicCertificate:
    """
    Check the identity for X + A with constant k and return the certificate.

    Raises:
        NotInSubspaceError: X is not in m or A is not in h.
        InternalContradictionError: the identity fails, or k != 0 on a non-null X.
    """
    X = fraction_array(X)
    A = fraction_array(A)
    k = Fraction(k)
    if not space.m.contains(X):
        raise NotInSubspaceError(f"Certificate vector X is not in m for {space.name!r}")
    if not space.h.contains(A):
        raise NotInSubspaceError(f"Certificate correction A is not in h for {space.name!r}")
    L, R = _lemma_terms(space, X + A)
    if space.dim and not is_zero(L - k * R):
        raise InternalContradictionError(
            f"Lemma identity fails for the certificate on {space.name!r} with k = {k}")
    causal = causal_character(space.metric, space.m_coordinates(X))
    null_flag = causal == NULL
    if k != 0 and not null_flag:
        raise InternalContradictionError(
            f"Certificate with k = {k} on a non-null vector of {space.name!r}")
    return GeodesicCertificate(X=X, A=A, k=k, null_flag=null_flag, causal=causal)


def verify_certificate(space: ReductiveSpace, cert: GeodesicCertificate) -> bool:
    """Re-check a certificate through the direct bracket route, independent of the solver."""
    if not (space.m.contains(cert.X) and space.h.contains(cert.A)):
        return False
    L, R = _lemma_terms(space, cert.X + cert.A)
    if space.dim and not is_zero(L - cert.k * R):
        return False
    return cert.k == 0 or cert.null_flag


def _solver_tensors(space: ReductiveSpace):
    """
    Per-space matrices of the (A, k) system.

    Returns (C, P, h_basis): C[l][j, r] is the r-th m coordinate of [Z_l, Z_j]_m,
    P[i] = T_i^T G with T_i the isotropy operator of the i-th basis vector of h.
    """
    cached = _SOLVER_TENSORS.get(space)
    if cached is not None:
        return cached
    m_basis = space.m.vectors()
    C = []
    for Zl in m_basis:
        brackets = stack_rows([bracket(space.g, Zl, Zj) for Zj in m_basis], space.g.dim)
        C.append(space.m_coordinates_of_rows(brackets))
    h_basis = space.h.vectors()
    P = [np.dot(isotropy_operator(space, A).T, space.metric.gram) for A in h_basis]
    logger.debug("Prepared geodesic solver tensors for %s", space.name)
    _SOLVER_TENSORS[space] = (C, P, h_basis)
    return C, P, h_basis


def solve_geodesic_vector(space: ReductiveSpace, Xm) -> Optional[GeodesicCertificate]:
    """
    Find A in h and k with <[Xm + A, Z]_m, Xm> = k <Xm, Z> for every basis Z of m.

    Row j of the system is sum_i alpha_i <[A_i, Z_j]_m, Xm> - k <Xm, Z_j> =
    -<[Xm, Z_j]_m, Xm>. The canonical particular solution (free unknowns 0) is
    returned as a certificate; None means no (A, k) exists.

    Raises:
        NotInSubspaceError: Xm is not in m.
    """
    Xm = fraction_array(Xm)
    if not space.m.contains(Xm):
        raise NotInSubspaceError(f"Vector is not in m for {space.name!r}")
    d = space.dim
    if d == 0:
        return certify(space, Xm, zeros(space.g.dim), 0)
    C, P, h_basis = _solver_tensors(space)
    x = space.m.coordinates(Xm)
    gx = np.dot(space.metric.gram, x)

    L0 = zeros(d)
    for l, xl in enumerate(x):
        if xl != 0:
            L0 = L0 + xl * np.dot(C[l], gx)

    system = np.empty((d, len(h_basis) + 1), dtype=object)
    for i, Pi in enumerate(P):
        system[:, i] = np.dot(Pi, x)
    system[:, len(h_basis)] = -gx
    solution = solve(system, -L0)
    if solution is None:
        logger.debug("No geodesic certificate for %s in %s", list(x), space.name)
        return None

    A = zeros(space.g.dim)
    for alpha, Ai in zip(solution[:-1], h_basis):
        if alpha != 0:
            A = A + alpha * Ai
    return certify(space, Xm, A, solution[-1])


def reparametrize_null(k, t: float) -> float:
    """s = exp(-k t), the affine parameter along a null orbit with constant k != 0."""
    k = Fraction(k)
    if k == 0:
        raise InputError("k = 0: the orbit parameter t is already affine")
    return float(np.exp(-float(k) * t))


def affine_parameter(cert: GeodesicCertificate) -> str:
    if cert.k == 0:
        return "t"
    return f"s = exp({format_fraction(-cert.k)} t)"


@dataclass(frozen=True)
class SamplerConfig:
    """
    Seeded sampler of rational vectors in m.

    Entries are halves in [-entry_bound, entry_bound]; the same (seed, count) always
    yields the same vectors.
    """
    seed: int
    count: int
    entry_bound: int = 3

    def __post_init__(self):
        if self.count < 0:
            raise InputError(f"Sample count must be non-negative, got {self.count}")
        if self.entry_bound < 1:
            raise InputError(f"Entry bound must be positive, got {self.entry_bound}")

    def coordinates(self, dim: int) -> List[np.ndarray]:
        rng = np.random.default_rng(self.seed)
        raw = rng.integers(-2 * self.entry_bound, 2 * self.entry_bound, endpoint=True,
                           size=(self.count, dim))
        return [fraction_array([Fraction(int(v), 2) for v in row]) for row in raw]


def survey_vectors(space: ReductiveSpace, sampler: SamplerConfig) -> List[Tuple[str, np.ndarray]]:
    """Basis vectors of m, their pairwise sums, then the seeded samples, all as vectors of g."""
    basis = space.m.vectors()
    labelled = [(f"basis[{i}]", Z) for i, Z in enumerate(basis)]
    labelled += [(f"basis[{i}]+basis[{j}]", basis[i] + basis[j])
                 for i in range(len(basis)) for j in range(i + 1, len(basis))]
    labelled += [(f"sample[{s}]", space.from_m(c))
                 for s, c in enumerate(sampler.coordinates(space.dim))]
    return labelled


@dataclass
class GOReport:
    """Certificates and failures of one geodesic-orbit survey."""
    space_id: str
    samples_tested: int
    seed: int
    count: int
    failures: List[Dict] = field(default_factory=list)
    certificates: List[GeodesicCertificate] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_report(self) -> Report:
        report = Report(check="go-survey", subject={"space": self.space_id},
                        seed=self.seed, samples=self.count)
        nonzero_k = [c for c in self.certificates if c.k != 0]
        report.add("certificates", self.passed, tested=self.samples_tested,
                   certified=len(self.certificates), failures=self.failures)
        report.add("null_clause", all(c.null_flag for c in nonzero_k),
                   nonzero_k=len(nonzero_k))
        characters: Dict[str, int] = {}
        for cert in self.certificates:
            characters[cert.causal] = characters.get(cert.causal, 0) + 1
        report.add("causal_characters", True, informational=True, **characters)
        report.add("k_values", True, informational=True,
                   distinct=sorted({format_fraction(c.k) for c in self.certificates}))
        if self.passed:
            report.message = GO_NO_COUNTEREXAMPLE
        else:
            report.message = f"{len(self.failures)} vector(s) without a geodesic certificate"
        return report


def go_survey(space: ReductiveSpace, sampler: SamplerConfig,
              space_id: Optional[str] = None) -> GOReport:
    """
    Look for a geodesic certificate for every survey vector.

    Every certificate is re-verified through verify_certificate(); a certificate that
    does not re-verify is an internal contradiction, not a survey failure.
    """
    vectors = survey_vectors(space, sampler)
    result = GOReport(space_id=space_id or space.name, samples_tested=len(vectors),
                      seed=sampler.seed, count=sampler.count)
    logger.info("GO survey on %s: %d vectors (seed %d)", result.space_id, len(vectors),
                sampler.seed)
    for label, Xm in vectors:
        cert = solve_geodesic_vector(space, Xm)
        if cert is None:
            result.failures.append({"label": label, "X": list(space.m.coordinates(Xm))})
            continue
        if not verify_certificate(space, cert):
            raise InternalContradictionError(
                f"Certificate for {label} on {result.space_id} does not re-verify")
        result.certificates.append(cert)
    logger.info("GO survey on %s finished: %d certified, %d failures", result.space_id,
                len(result.certificates), len(result.failures))
    return result


def _restricted_operator(space: ReductiveSpace, zeta, target: Subspace) -> np.ndarray:
    """Matrix of ad(zeta) on an ad(zeta)-stable subspace, in target's canonical basis."""
    basis = target.vectors()
    op = np.empty((target.dim, target.dim), dtype=object)
    for j, W in enumerate(basis):
        op[:, j] = target.coordinates(bracket(space.g, zeta, W))
    return op


def _gram_on(space: ReductiveSpace, target: Subspace) -> BilinearForm:
    """Metric restricted to a subspace of m, in the canonical basis of target (inside g)."""
    basis = target.vectors()
    gram = zeros_matrix(target.dim, target.dim)
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            gram[i, j] = space.inner(u, v)
    return BilinearForm(gram)


def two_step_criterion(space: ReductiveSpace, n: Subspace) -> Report:
    """
    Riemannian two-step theorem for a nilpotent ideal n, as a report.

    Hypotheses: n lies in m and the metric restricted to [n, n] is definite.
    Conclusion: [n, [n, n]] = 0. Hypotheses, conclusion and the step of n are
    informational entries; the scored entry is their consistency, and a violation
    raises InternalContradictionError. For each basis vector zeta of
    [n,n]^perp (in m) intersected with n, ad(zeta) on [n, n] is checked for skewness
    against the restricted metric.

    Raises:
        NotAnIdealError: n is not an ideal of g.
        NotNilpotentError: the lower central series of n stalls above 0.
    """
    g = space.g
    if not is_ideal(g, n):
        raise NotAnIdealError(f"Subspace of dimension {n.dim} is not an ideal of {g.name!r}")
    step = series_step(ideal_series(g, n))
    if step == NOT_NILPOTENT:
        raise NotNilpotentError(f"Ideal of dimension {n.dim} in {g.name!r} is not nilpotent")

    derived = product_subspace(g, n, n)
    third = product_subspace(g, n, derived)
    report = Report(check="two-step", subject={"space": space.name, "dim_n": n.dim,
                                               "dim_derived": derived.dim})

    n_in_m = space.m.includes(n)
    report.add("hypothesis_n_in_m", n_in_m, informational=True)

    restricted = None
    if space.m.includes(derived):
        derived_m = Subspace.span(space.dim, [space.m.coordinates(v) for v in derived.vectors()])
        restricted = _gram_on(space, derived)
        sig = signature(restricted)
        definite = is_definite(sig)
        report.add("hypothesis_definite", definite, informational=True,
                   signature=sig.to_dict())
    else:
        definite = False
        report.add("hypothesis_definite", False, informational=True,
                   reason="[n,n] is not contained in m")

    conclusion = third.dim == 0
    report.add("conclusion_two_step", conclusion, informational=True, dim_third=third.dim)
    report.add("nilpotency_step", True, informational=True, step=step)

    if restricted is not None:
        perp_m = orthocomplement(space.metric, derived_m)
        perp = Subspace.span(g.dim, [space.from_m(v) for v in perp_m.vectors()])
        for index, zeta in enumerate(perp.intersection(n).vectors()):
            skew = skew_defect(_restricted_operator(space, zeta, derived), restricted)
            report.add(f"skew_on_derived[{index}]", skew.passed, informational=True,
                       zeta=zeta, witness=skew.witness)

    consistent = not (n_in_m and definite) or conclusion
    report.add("theorem_consistency", consistent)
    if not consistent:
        raise InternalContradictionError(
            f"Two-step hypotheses hold on {space.name!r} but [n,[n,n]] has dimension "
            f"{third.dim}")
    report.message = ("hypotheses hold, n is at most 2-step nilpotent" if n_in_m and definite
                      else f"hypotheses fail; n is {step}-step nilpotent")
    return report
