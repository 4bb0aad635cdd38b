"""
catalog.py

Example spaces, realized over the reals with exact structure constants.

Complex scalars are 2x2 real blocks [[x, -y], [y, x]] and a complex vector
(x1 + i y1, ...) is the real vector (x1, y1, ...). Quaternions act on R^4 by left
multiplication, so a quaternionic matrix becomes a real matrix of 4x4 blocks.
Matrix algebras are turned into structure constants by
lie_core.algebra_from_matrices(); nothing is typed in by hand.

Every space orders the basis of g with m first, so m is spanned by the first dim m
standard basis vectors and its metric is diagonal (or anti-diagonal for the
Kath-Olbrich family) in those coordinates.

Examples:
    heisenberg    H(p,q) acted on by U(p,q): Heisenberg group of an indefinite
                  Hermitian form, metric a<,>_1 + b<,>_2
    sphere-un     U(n)/U(n-1), the sphere S^{2n-1}
    sp1-spn       Sp(1) x Sp(n) / (Sp(1) x Sp(n-1)), the sphere S^{4n-1}
    kath-olbrich  nilpotent Lie algebra R^m + C^{m+1} with a bi-invariant metric
    sl3-killing   SL(3,R) with the Killing form
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple
import logging

import numpy as np

from errors import InputError, ReductiveSpaceError, UnknownExampleError
from exact import to_fraction
from forms import BilinearForm, is_definite, signature
from homogeneous import ReductiveSpace, make_reductive_space
from lie_core import (LieAlgebra, Subspace, algebra_from_matrices, killing_form,
                      semidirect_sum)

logger = logging.getLogger(__name__)

# left multiplication by 1, i, j, k on R^4 = span(1, i, j, k)
QUATERNION_UNITS = {
    "1": np.eye(4, dtype=np.int64),
    "i": np.array([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=np.int64),
    "j": np.array([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=np.int64),
    "k": np.array([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=np.int64),
}
IMAGINARY_UNITS = ("i", "j", "k")
COMPLEX_UNIT = np.array([[0, -1], [1, 0]], dtype=np.int64)


@dataclass(frozen=True)
class ExampleInfo:
    params: Tuple[str, ...]
    defaults: Mapping[str, Any]
    description: str
    has_metric_family: bool = True


EXAMPLES: Dict[str, ExampleInfo] = {
    "heisenberg": ExampleInfo(
        ("p", "q", "a", "b"), {"p": 1, "q": 0, "a": 1, "b": 1},
        "Heisenberg group H(p,q;C) acted on by U(p,q), m = Im C + C^{p,q}"),
    "sphere-un": ExampleInfo(
        ("n", "a", "b"), {"n": 2, "a": 1, "b": 1},
        "Sphere S^{2n-1} = U(n)/U(n-1), m = Im C + C^{n-1}"),
    "sp1-spn": ExampleInfo(
        ("n", "a", "b"), {"n": 2, "a": 1, "b": 1},
        "Sphere S^{4n-1} = Sp(1) x Sp(n) / (Sp(1) x Sp(n-1)), m = Im H + H^{n-1}"),
    "kath-olbrich": ExampleInfo(
        ("m",), {"m": 1},
        "Kath-Olbrich nilpotent group R^m + C^{m+1} with a bi-invariant metric",
        has_metric_family=False),
    "sl3-killing": ExampleInfo(
        (), {}, "SL(3,R) with the bi-invariant metric of its Killing form",
        has_metric_family=False),
}
INTEGER_PARAMS = ("p", "q", "n", "m")


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    """A validated example space with its nilradical (when one is singled out)."""
    id: str
    params: Mapping[str, Any]
    space: ReductiveSpace
    provenance: str
    nilradical: Optional[Subspace] = None

    def to_dict(self) -> Dict[str, Any]:
        sig = signature(self.space.metric)
        return {
            "id": self.id,
            "params": dict(self.params),
            "dim_g": self.space.g.dim,
            "dim_h": self.space.h.dim,
            "dim_m": self.space.m.dim,
            "signature": list(sig.as_tuple()),
            "nilradical_dim": None if self.nilradical is None else self.nilradical.dim,
            "provenance": self.provenance,
        }


def normalize_id(example_id: str) -> str:
    normalized = example_id.strip().lower().replace("_", "-")
    if normalized not in EXAMPLES:
        raise UnknownExampleError(
            f"Unknown example id: {example_id!r} (known: {', '.join(EXAMPLES)})")
    return normalized


def normalize_params(example_id: str, params: Optional[Mapping[str, Any]] = None
                     ) -> Tuple[Tuple[str, Any], ...]:
    """Fill defaults, drop parameters the example does not take, and coerce types."""
    info = EXAMPLES[normalize_id(example_id)]
    params = {k: v for k, v in (params or {}).items() if v is not None}
    result = []
    for name in info.params:
        value = params.get(name, info.defaults[name])
        if name in INTEGER_PARAMS:
            try:
                value = int(value)
            except (TypeError, ValueError) as exc:
                raise InputError(f"Parameter {name} must be an integer, got {value!r}") from exc
        else:
            value = to_fraction(value)
        result.append((name, value))
    return tuple(result)


def _check_metric_scalars(a: Fraction, b: Fraction) -> None:
    if a == 0 or b == 0:
        raise ReductiveSpaceError("degenerate-metric",
                                  f"metric scalars must be nonzero, got a = {a}, b = {b}")


def _block_metric(v_dim: int, weights: Sequence[int], a: Fraction, b: Fraction) -> BilinearForm:
    return BilinearForm.diagonal([a] * v_dim + [b * w for w in weights])


def _realize_complex(re: np.ndarray, im: np.ndarray) -> np.ndarray:
    return np.kron(re, np.eye(2, dtype=np.int64)) + np.kron(im, COMPLEX_UNIT)


def _unit(size: int, r: int, s: int) -> np.ndarray:
    e = np.zeros((size, size), dtype=np.int64)
    e[r, s] = 1
    return e


def _unitary_basis(eps: Sequence[int], indices: Sequence[int], size: int
                   ) -> List[Tuple[str, np.ndarray]]:
    """
    Real realization of u(p,q) = {X : X* E + E X = 0}, E = diag(eps), on the given slots.

    iE_rr for each r; E_rs - E_sr and i(E_rs + E_sr) when eps_r = eps_s;
    E_rs + E_sr and i(E_rs - E_sr) when the signs differ.
    """
    zero = np.zeros((size, size), dtype=np.int64)
    basis = []
    for r in indices:
        basis.append((f"iE[{r + 1},{r + 1}]", _realize_complex(zero, _unit(size, r, r))))
    for pos, r in enumerate(indices):
        for s in indices[pos + 1:]:
            label = f"[{r + 1},{s + 1}]"
            ers, esr = _unit(size, r, s), _unit(size, s, r)
            if eps[r] == eps[s]:
                basis.append((f"E{label}-E^T", _realize_complex(ers - esr, zero)))
                basis.append((f"i(E{label}+E^T)", _realize_complex(zero, ers + esr)))
            else:
                basis.append((f"E{label}+E^T", _realize_complex(ers + esr, zero)))
                basis.append((f"i(E{label}-E^T)", _realize_complex(zero, ers - esr)))
    return basis


def _signs(p: int, q: int) -> List[int]:
    return [1] * p + [-1] * q


@lru_cache(maxsize=16)
def heisenberg_algebra(p: int, q: int) -> LieAlgebra:
    """
    h(p,q;C) = Im C + C^{p,q} with [(v,w),(v',w')] = (2 Im h(w,w'), 0).

    h(w,w') = sum eps_r w_r conj(w'_r). The factor 2 comes from the group law
    (v,w)(v',w') = (v + v' + Im h(w,w'), w + w').
    """
    eps = _signs(p, q)
    names = ["z"] + [f"{part}{r + 1}" for r in range(p + q) for part in ("x", "y")]
    # complex basis vectors: index 1 + 2r is the real unit in slot r, 2 + 2r the imaginary
    units = {1 + 2 * r: (r, complex(1, 0)) for r in range(p + q)}
    units.update({2 + 2 * r: (r, complex(0, 1)) for r in range(p + q)})
    brackets = []
    for i, (r, wi) in units.items():
        for j, (s, wj) in units.items():
            if i < j and r == s:
                im_h = eps[r] * (wi * wj.conjugate()).imag
                if im_h:
                    brackets.append((i, j, {0: 2 * int(im_h)}))
    return LieAlgebra.from_brackets(names, brackets, f"h({p},{q};C)")


@lru_cache(maxsize=16)
def _heisenberg_group_algebra(p: int, q: int) -> LieAlgebra:
    heis = heisenberg_algebra(p, q)
    N = p + q
    unitary = _unitary_basis(_signs(p, q), list(range(N)), N)
    upq = algebra_from_matrices([name for name, _ in unitary], [mat for _, mat in unitary],
                                f"u({p},{q})")
    action = []
    for _, mat in unitary:
        d = np.zeros((heis.dim, heis.dim), dtype=np.int64)
        d[1:, 1:] = mat
        action.append(d)
    return semidirect_sum(heis, upq, action, f"h({p},{q};C) x| u({p},{q})")


def heisenberg_space(p: int, q: int, a, b) -> CatalogEntry:
    if p < 0 or q < 0 or p + q < 1:
        raise InputError(f"heisenberg needs p, q >= 0 and p + q >= 1, got p = {p}, q = {q}")
    a, b = to_fraction(a), to_fraction(b)
    _check_metric_scalars(a, b)
    g = _heisenberg_group_algebra(p, q)
    dim_m = 1 + 2 * (p + q)
    m = Subspace.coordinate(g.dim, range(dim_m))
    h = Subspace.coordinate(g.dim, range(dim_m, g.dim))
    weights = [e for e in _signs(p, q) for _ in range(2)]
    space = make_reductive_space(g, h, m, _block_metric(1, weights, a, b),
                                 f"heisenberg(p={p},q={q},a={a},b={b})")
    return CatalogEntry("heisenberg", {"p": p, "q": q, "a": a, "b": b}, space,
                        EXAMPLES["heisenberg"].description, nilradical=m)


@lru_cache(maxsize=16)
def unitary_sphere_algebra(n: int) -> LieAlgebra:
    """u(n) with the basis of m = {[[v, -w*], [w, 0]]} first, then u(n-1)."""
    zero = np.zeros((n, n), dtype=np.int64)
    basis = [("v", _realize_complex(zero, _unit(n, 0, 0)))]
    for r in range(1, n):
        er1, e1r = _unit(n, r, 0), _unit(n, 0, r)
        basis.append((f"w{r + 1}_re", _realize_complex(er1 - e1r, zero)))
        basis.append((f"w{r + 1}_im", _realize_complex(zero, er1 + e1r)))
    basis += _unitary_basis([1] * n, list(range(1, n)), n)
    return algebra_from_matrices([name for name, _ in basis], [mat for _, mat in basis],
                                 f"u({n})")


def sphere_un_space(n: int, a, b) -> CatalogEntry:
    if n < 2:
        raise InputError(f"sphere-un needs n >= 2, got n = {n}")
    a, b = to_fraction(a), to_fraction(b)
    _check_metric_scalars(a, b)
    g = unitary_sphere_algebra(n)
    dim_m = 2 * n - 1
    m = Subspace.coordinate(g.dim, range(dim_m))
    h = Subspace.coordinate(g.dim, range(dim_m, g.dim))
    space = make_reductive_space(g, h, m, _block_metric(1, [1] * (dim_m - 1), a, b),
                                 f"sphere-un(n={n},a={a},b={b})")
    return CatalogEntry("sphere-un", {"n": n, "a": a, "b": b}, space,
                        EXAMPLES["sphere-un"].description)


def _quaternion_block(size: int, r: int, s: int, unit: str) -> np.ndarray:
    return np.kron(_unit(size, r, s), QUATERNION_UNITS[unit])


def _antihermitian(size: int, r: int, s: int, unit: str) -> np.ndarray:
    """q E_rs - conj(q) E_sr, realized; L(conj q) is the transpose of L(q)."""
    return (np.kron(_unit(size, r, s), QUATERNION_UNITS[unit])
            - np.kron(_unit(size, s, r), QUATERNION_UNITS[unit].T))


@lru_cache(maxsize=16)
def symplectic_sphere_algebra(n: int) -> LieAlgebra:
    """
    sp(1) + sp(n) as block-diagonal real matrices of size 4 + 4n.

    Basis order: m (v in Im H at entry (1,1) of sp(n), then w in H^{n-1} in the first
    column), then h (the diagonal sp(1), then sp(n-1) on the last n-1 slots).
    """
    size = 4 + 4 * n

    def embed(first: Optional[np.ndarray], second: Optional[np.ndarray]) -> np.ndarray:
        out = np.zeros((size, size), dtype=np.int64)
        if first is not None:
            out[:4, :4] = first
        if second is not None:
            out[4:, 4:] = second
        return out

    basis = [(f"v_{u}", embed(None, _quaternion_block(n, 0, 0, u))) for u in IMAGINARY_UNITS]
    for r in range(1, n):
        for u in QUATERNION_UNITS:
            basis.append((f"w{r + 1}_{u}", embed(None, _antihermitian(n, r, 0, u))))
    basis += [(f"diag_{u}", embed(QUATERNION_UNITS[u], _quaternion_block(n, 0, 0, u)))
              for u in IMAGINARY_UNITS]
    for r in range(1, n):
        for u in IMAGINARY_UNITS:
            basis.append((f"sp[{r + 1},{r + 1}]_{u}", embed(None, _quaternion_block(n, r, r, u))))
        for s in range(r + 1, n):
            for u in QUATERNION_UNITS:
                basis.append((f"sp[{r + 1},{s + 1}]_{u}", embed(None, _antihermitian(n, r, s, u))))
    return algebra_from_matrices([name for name, _ in basis], [mat for _, mat in basis],
                                 f"sp(1)+sp({n})")


def sp1_spn_space(n: int, a, b) -> CatalogEntry:
    if n < 2:
        raise InputError(f"sp1-spn needs n >= 2, got n = {n}")
    a, b = to_fraction(a), to_fraction(b)
    _check_metric_scalars(a, b)
    g = symplectic_sphere_algebra(n)
    dim_m = 3 + 4 * (n - 1)
    m = Subspace.coordinate(g.dim, range(dim_m))
    h = Subspace.coordinate(g.dim, range(dim_m, g.dim))
    space = make_reductive_space(g, h, m, _block_metric(3, [1] * (dim_m - 3), a, b),
                                 f"sp1-spn(n={n},a={a},b={b})")
    return CatalogEntry("sp1-spn", {"n": n, "a": a, "b": b}, space,
                        EXAMPLES["sp1-spn"].description)


@lru_cache(maxsize=16)
def kath_olbrich_algebra(m: int) -> LieAlgebra:
    """
    Basis z_1..z_m, e_1..e_{m+1}, f_1..f_{m+1} with
    [e_i, f_j] = z_{i+j-1}, [z_k, e_i] = f_{i+k}, [z_k, f_j] = -e_{k+j};
    out-of-range indices give 0.
    """
    z = {k: k - 1 for k in range(1, m + 1)}
    e = {i: m + i - 1 for i in range(1, m + 2)}
    f = {i: 2 * m + i for i in range(1, m + 2)}
    names = ([f"z{k}" for k in z] + [f"e{i}" for i in e] + [f"f{i}" for i in f])
    brackets = []
    for i in e:
        for j in f:
            if i + j - 1 in z:
                brackets.append((e[i], f[j], {z[i + j - 1]: 1}))
    for k in z:
        for i in e:
            if i + k in f:
                brackets.append((z[k], e[i], {f[i + k]: 1}))
        for j in f:
            if k + j in e:
                brackets.append((z[k], f[j], {e[k + j]: -1}))
    return LieAlgebra.from_brackets(names, brackets, f"kath-olbrich({m})")


def kath_olbrich_metric(m: int) -> BilinearForm:
    """<e_i,e_j> = <f_i,f_j> = delta_{i+j,m+2}, <z_k,z_l> = delta_{k+l,m+1}, R^m orthogonal to C^{m+1}."""
    dim = 3 * m + 2
    gram = np.full((dim, dim), Fraction(0), dtype=object)
    for k in range(1, m + 1):
        gram[k - 1, m - k] = Fraction(1)
    for offset in (m, 2 * m + 1):
        for i in range(1, m + 2):
            gram[offset + i - 1, offset + (m + 2 - i) - 1] = Fraction(1)
    return BilinearForm(gram)


def kath_olbrich(m: int) -> CatalogEntry:
    if m < 1:
        raise InputError(f"kath-olbrich needs m >= 1, got m = {m}")
    g = kath_olbrich_algebra(m)
    space = make_reductive_space(g, Subspace.zero(g.dim), Subspace.full(g.dim),
                                 kath_olbrich_metric(m), f"kath-olbrich(m={m})")
    return CatalogEntry("kath-olbrich", {"m": m}, space, EXAMPLES["kath-olbrich"].description,
                        nilradical=Subspace.full(g.dim))


@lru_cache(maxsize=1)
def sl3_algebra() -> LieAlgebra:
    names, mats = [], []
    for r, s in ((0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)):
        names.append(f"E{r + 1}{s + 1}")
        mats.append(_unit(3, r, s))
    names += ["H1", "H2"]
    mats += [_unit(3, 0, 0) - _unit(3, 1, 1), _unit(3, 1, 1) - _unit(3, 2, 2)]
    return algebra_from_matrices(names, mats, "sl(3,R)")


def sl3_killing_space() -> CatalogEntry:
    g = sl3_algebra()
    space = make_reductive_space(g, Subspace.zero(g.dim), Subspace.full(g.dim),
                                 killing_form(g), "sl3-killing")
    return CatalogEntry("sl3-killing", {}, space, EXAMPLES["sl3-killing"].description)


_BUILDERS = {
    "heisenberg": lambda p: heisenberg_space(p["p"], p["q"], p["a"], p["b"]),
    "sphere-un": lambda p: sphere_un_space(p["n"], p["a"], p["b"]),
    "sp1-spn": lambda p: sp1_spn_space(p["n"], p["a"], p["b"]),
    "kath-olbrich": lambda p: kath_olbrich(p["m"]),
    "sl3-killing": lambda p: sl3_killing_space(),
}


@lru_cache(maxsize=256)
def _cached_entry(example_id: str, params: Tuple[Tuple[str, Any], ...]) -> CatalogEntry:
    logger.info("Building catalog space %s %s", example_id, dict(params))
    return _BUILDERS[example_id](dict(params))


def get_entry(example_id: str, params: Optional[Mapping[str, Any]] = None) -> CatalogEntry:
    """Build (or fetch from cache) the catalog entry for an id and parameter mapping."""
    example_id = normalize_id(example_id)
    return _cached_entry(example_id, normalize_params(example_id, params))


def list_entries() -> List[Dict[str, Any]]:
    """Summary of every example at its default parameters."""
    return [get_entry(example_id).to_dict() for example_id in EXAMPLES]


def metric_blocks(example_id: str, params: Optional[Mapping[str, Any]] = None
                  ) -> Tuple[BilinearForm, BilinearForm]:
    """
    The two invariant blocks <,>_1 (on the Im factor) and <,>_2 (on the vector factor).

    Every invariant metric of the family is a <,>_1 + b <,>_2 with a, b nonzero.
    """
    example_id = normalize_id(example_id)
    if not EXAMPLES[example_id].has_metric_family:
        raise UnknownExampleError(f"{example_id} has no two-block metric family")
    values = dict(normalize_params(example_id, params))
    if example_id == "heisenberg":
        v_dim, weights = 1, [e for e in _signs(values["p"], values["q"]) for _ in range(2)]
    elif example_id == "sphere-un":
        v_dim, weights = 1, [1] * (2 * values["n"] - 2)
    else:
        v_dim, weights = 3, [1] * (4 * values["n"] - 4)
    return (_block_metric(v_dim, [0] * len(weights), Fraction(1), Fraction(0)),
            _block_metric(v_dim, weights, Fraction(0), Fraction(1)))


def im_factor_dim(example_id: str) -> int:
    """Dimension of the Im C / Im H factor at the start of m."""
    return 3 if normalize_id(example_id) == "sp1-spn" else 1


def is_riemannian(entry: CatalogEntry) -> bool:
    return is_definite(signature(entry.space.metric))
