"""
expdemo.py

Points of SL(3,R) outside the image of the exponential map.

For a bi-invariant metric the geodesics through the identity are one-parameter
subgroups, so a group element outside exp(sl(3,R)) is not joined to the identity by
any geodesic. This is the only floating-point module of the toolkit.

Functions:
    Matrix exponential:
        matrix_exp(): scipy.linalg.expm, with exp(0) = I exactly
        exp_residual(): max |exp(X) exp(-X) - I|

    Exponential image:
        in_exp_image(): yes / no / unknown for a 3x3 matrix with det 1
        exp_image_report(): the same decision as a Report
        exp_image_survey(): seeded soundness run over constructed exponentials

Decision rule (distinct eigenvalues only):
    - a real negative eigenvalue has a single Jordan block of odd size, so there is no
      real logarithm: "no"
    - otherwise the principal logarithm is real, and its trace vanishes because
      det = 1: "yes"
    - eigenvalues closer than twice the tolerance: "unknown"
"""
from dataclasses import dataclass
from typing import Dict, List, Optional
import logging
import math

import numpy as np
import pandas as pd
from scipy.linalg import expm

from errors import InputError
from report import Report

logger = logging.getLogger(__name__)

YES = "yes"
NO = "no"
UNKNOWN = "unknown"

DEFAULT_TOLERANCE = 1e-9
DEFAULT_EXP_RESIDUAL_TOLERANCE = 1e-12


def _as_real_matrix(X, label: str = "matrix") -> np.ndarray:
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise InputError(f"{label} must be square, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise InputError(f"{label} has non-finite entries")
    return X


def matrix_exp(X) -> np.ndarray:
    """e^X for a real square matrix (scipy's Pade scaling and squaring). exp(0) = I exactly."""
    A = _as_real_matrix(X, "X")
    if not A.any():
        return np.eye(A.shape[0])
    return expm(A)


def exp_residual(X, relative: bool = False) -> float:
    """
    max |exp(X) exp(-X) - I|.

    With relative set, the residual is divided by max(1, |exp(X)| |exp(-X)|) in the
    infinity norm, the size of the rounding error the product can carry.
    """
    A = _as_real_matrix(X, "X")
    forward, backward = matrix_exp(A), matrix_exp(-A)
    residual = float(np.max(np.abs(forward @ backward - np.eye(A.shape[0]))))
    if relative:
        scale = np.linalg.norm(forward, np.inf) * np.linalg.norm(backward, np.inf)
        residual /= max(1.0, float(scale))
    return residual


@dataclass
class ExpImageResult:
    """Decision with the spectral data it was based on."""
    verdict: str
    eigenvalues: np.ndarray
    determinant: float
    separation: float
    tolerance: float

    def to_dict(self) -> Dict:
        return {
            "verdict": self.verdict,
            "eigenvalues": [[float(l.real), float(l.imag)] for l in self.eigenvalues],
            "determinant": float(self.determinant),
            "separation": float(self.separation),
            "tolerance": self.tolerance,
        }


def classify(g, det_one: bool = True, tolerance: float = DEFAULT_TOLERANCE) -> ExpImageResult:
    """
    Spectral decision behind in_exp_image().

    exp of a trace-zero matrix has determinant 1, so with det_one unset any other
    determinant is decided as "no" instead of raising.

    Raises:
        InputError: g is not square, not invertible, or det(g) is not 1 within tolerance
            while det_one is set.
    """
    g = _as_real_matrix(g, "g")
    det = float(np.linalg.det(g))
    if abs(det) <= tolerance:
        raise InputError(f"Matrix is not invertible (det = {det})")
    if det_one and abs(det - 1.0) > tolerance:
        raise InputError(f"Matrix does not have determinant 1 (det = {det})")

    eigenvalues = np.linalg.eigvals(g)
    eps = tolerance * max(1.0, float(np.max(np.abs(eigenvalues))))
    n = len(eigenvalues)
    gaps = [abs(eigenvalues[i] - eigenvalues[j]) for i in range(n) for j in range(i + 1, n)]
    separation = float(min(gaps)) if gaps else math.inf

    if abs(det - 1.0) > tolerance:
        verdict = NO
    elif separation <= 2 * eps:
        verdict = UNKNOWN
    elif any(abs(l.imag) <= eps and l.real < 0 for l in eigenvalues):
        verdict = NO
    else:
        verdict = YES
    logger.debug("Spectrum %s classified as %s", eigenvalues, verdict)
    return ExpImageResult(verdict, eigenvalues, det, separation, tolerance)


def in_exp_image(g, det_one: bool = True, tolerance: float = DEFAULT_TOLERANCE) -> str:
    """yes, no or unknown: is g = exp(X) for some real trace-zero X?"""
    return classify(g, det_one, tolerance).verdict


def exp_image_report(g, det_one: bool = True, tolerance: float = DEFAULT_TOLERANCE) -> Report:
    """
    Report for one matrix. The verdict is pass for a decision (yes or no) and fail for
    unknown; the decision itself is in the "decision" entry.
    """
    result = classify(g, det_one, tolerance)
    report = Report(check="exp-image", subject={"matrix": np.asarray(g, dtype=float)})
    report.add("decision", result.verdict != UNKNOWN, **result.to_dict())
    report.message = {
        YES: "matrix lies in the image of exp",
        NO: "matrix is not in the image of exp: no geodesic from the identity reaches it",
        UNKNOWN: "eigenvalues not reliably distinct; no decision",
    }[result.verdict]
    return report


def calculate_statistics(data: np.ndarray) -> Dict[str, float]:
    """Summary statistics of a sample (count only when it is empty)."""
    clean = pd.Series(data, dtype=float).dropna()
    if clean.empty:
        return {"count": 0}
    return {
        "count": int(clean.count()),
        "mean": float(clean.mean()),
        "std": float(clean.std(ddof=0)),
        "min": float(clean.min()),
        "max": float(clean.max()),
        "median": float(clean.median()),
    }


def random_trace_zero(rng: np.random.Generator, n: int = 3, scale: float = 1.0) -> np.ndarray:
    X = rng.normal(scale=scale, size=(n, n))
    return X - np.trace(X) / n * np.eye(n)


def exp_image_survey(samples: int, seed: int, tolerance: float = DEFAULT_TOLERANCE,
                     exp_residual_tolerance: float = DEFAULT_EXP_RESIDUAL_TOLERANCE,
                     matrices: Optional[List[np.ndarray]] = None) -> Report:
    """
    Classify exp(X) for seeded random trace-zero X; "no" on any of them is unsound.

    When matrices is given, those group elements are classified instead of generated
    exponentials (and the soundness entry does not apply).
    """
    report = Report(check="exp-image-survey", seed=seed, samples=samples,
                    subject={"tolerance": tolerance,
                             "exp_residual_tolerance": exp_residual_tolerance})
    rng = np.random.default_rng(seed)
    verdicts: Dict[str, int] = {YES: 0, NO: 0, UNKNOWN: 0}
    residuals, separations = [], []
    offending = []
    for index in range(samples):
        X = random_trace_zero(rng)
        residuals.append(exp_residual(X, relative=True))
        result = classify(matrix_exp(X), True, tolerance)
        verdicts[result.verdict] += 1
        separations.append(result.separation)
        if result.verdict == NO:
            offending.append({"index": index, "X": X})
    for g in matrices or []:
        verdicts[classify(g, True, tolerance).verdict] += 1

    report.add("constructed_never_no", not offending, failures=offending)
    worst = max(residuals) if residuals else 0.0
    report.add("exp_residual", worst <= exp_residual_tolerance, worst_relative=worst,
               statistics=calculate_statistics(np.array(residuals)))
    report.add("verdicts", True, informational=True, **verdicts)
    report.add("separation", True, informational=True,
               statistics=calculate_statistics(np.array(separations)))
    report.message = (f"{samples} constructed exponentials, none classified as outside the image"
                      if not offending else f"{len(offending)} exponentials classified as no")
    logger.info("Exp-image survey: %d samples, verdicts %s", samples, verdicts)
    return report
