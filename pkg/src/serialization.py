"""
serialization.py

JSON files for algebras, forms and reductive-space bundles.

Rationals are written as strings "p" or "p/q". Formats:

    algebra  {"dim": n, "basis": [names],
              "brackets": [{"i": name, "j": name, "terms": [{"k": name, "coeff": "p/q"}]}]}
             only pairs with i before j in basis order are listed
    form     {"dim": n, "gram": [["p/q", ...], ...]}
    space    {"algebra": <algebra>, "h_basis": [[...], ...], "m_basis": [[...], ...],
              "metric": <form>, "name": str, "nilradical_basis": [[...], ...]}
             name and nilradical_basis are optional
"""
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple
import json
import logging

import numpy as np

from errors import InputError, WsymError
from exact import fraction_array, format_fraction, to_fraction
from forms import BilinearForm
from homogeneous import ReductiveSpace, make_reductive_space
from lie_core import LieAlgebra, Subspace

logger = logging.getLogger(__name__)

SUPPORTED_FORMATS = [".json"]


def algebra_to_dict(alg: LieAlgebra) -> Dict[str, Any]:
    names = alg.basis_names
    brackets = []
    for (i, j), terms in sorted(alg.structure.items()):
        if i < j:
            brackets.append({
                "i": names[i],
                "j": names[j],
                "terms": [{"k": names[k], "coeff": format_fraction(c)} for k, c in terms],
            })
    return {"dim": alg.dim, "basis": list(names), "brackets": brackets}


def _require(data: Mapping[str, Any], key: str, kind: str) -> Any:
    if not isinstance(data, Mapping) or key not in data:
        raise InputError(f"{kind} file is missing the {key!r} field")
    return data[key]


def _require_int(data: Mapping[str, Any], key: str, kind: str) -> int:
    value = _require(data, key, kind)
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"{kind} file: {key!r} must be an integer, got {value!r}")
    try:
        return int(value)
    except ValueError as exc:
        raise InputError(f"{kind} file: {key!r} must be an integer, got {value!r}") from exc


def algebra_from_dict(data: Mapping[str, Any], name: str = "") -> LieAlgebra:
    basis = _require(data, "basis", "Algebra")
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise InputError("Algebra file: 'basis' must be a list of names")
    dim = _require_int(data, "dim", "Algebra")
    if dim != len(basis):
        raise InputError(f"Algebra file declares dim {dim} but lists {len(basis)} basis names")
    index = {b: i for i, b in enumerate(basis)}

    def lookup(basis_name: str) -> int:
        if basis_name not in index:
            raise InputError(f"Unknown basis name in algebra file: {basis_name!r}")
        return index[basis_name]

    seen = set()
    brackets = []
    for entry in data.get("brackets", []):
        i, j = lookup(_require(entry, "i", "Algebra")), lookup(_require(entry, "j", "Algebra"))
        if i >= j:
            raise InputError(
                f"Bracket [{basis[i]}, {basis[j]}] must be listed with i before j in basis order")
        if (i, j) in seen:
            raise InputError(f"Bracket [{basis[i]}, {basis[j]}] is listed twice")
        seen.add((i, j))
        terms = {}
        for t in _require(entry, "terms", "Algebra"):
            k = lookup(_require(t, "k", "Algebra"))
            if k in terms:
                raise InputError(f"Bracket [{basis[i]}, {basis[j]}] lists {basis[k]} twice")
            terms[k] = to_fraction(_require(t, "coeff", "Algebra"))
        brackets.append((i, j, terms))
    return LieAlgebra.from_brackets(basis, brackets, name or data.get("name", ""))


def form_to_dict(form: BilinearForm) -> Dict[str, Any]:
    return {"dim": form.dim,
            "gram": [[format_fraction(v) for v in row] for row in form.gram]}


def form_from_dict(data: Mapping[str, Any]) -> BilinearForm:
    dim = _require_int(data, "dim", "Form")
    gram = _require(data, "gram", "Form")
    if dim == 0:
        return BilinearForm(np.empty((0, 0), dtype=object))
    gram = fraction_array(gram)
    if gram.shape != (dim, dim):
        raise InputError(f"Form file declares dim {dim} but the gram has shape {gram.shape}")
    try:
        return BilinearForm(gram)
    except ValueError as exc:
        raise InputError(f"Form file: {exc}") from exc


def _vectors_to_list(subspace: Subspace) -> List[List[str]]:
    return [[format_fraction(v) for v in row] for row in subspace.basis]


def _subspace_from_list(rows: List, ambient_dim: int, label: str) -> Subspace:
    vectors = [fraction_array(row) for row in rows]
    for v in vectors:
        if v.shape != (ambient_dim,):
            raise InputError(f"{label} vector has length {len(v)}, expected {ambient_dim}")
    return Subspace.span(ambient_dim, vectors)


def space_to_dict(space: ReductiveSpace, nilradical: Optional[Subspace] = None) -> Dict[str, Any]:
    data = {
        "name": space.name,
        "algebra": algebra_to_dict(space.g),
        "h_basis": _vectors_to_list(space.h),
        "m_basis": _vectors_to_list(space.m),
        "metric": form_to_dict(space.metric),
    }
    if nilradical is not None:
        data["nilradical_basis"] = _vectors_to_list(nilradical)
    return data


def space_from_dict(data: Mapping[str, Any]) -> Tuple[ReductiveSpace, Optional[Subspace]]:
    """
    Rebuild and validate a space bundle.

    The metric Gram must be written in the canonical (reduced echelon) basis of the
    span of m_basis, which is what space_to_dict() produces.
    """
    name = data.get("name", "") if isinstance(data, Mapping) else ""
    g = algebra_from_dict(_require(data, "algebra", "Space"), name)
    h = _subspace_from_list(_require(data, "h_basis", "Space"), g.dim, "h_basis")
    m = _subspace_from_list(_require(data, "m_basis", "Space"), g.dim, "m_basis")
    metric = form_from_dict(_require(data, "metric", "Space"))
    nilradical = None
    if "nilradical_basis" in data:
        nilradical = _subspace_from_list(data["nilradical_basis"], g.dim, "nilradical_basis")
    return make_reductive_space(g, h, m, metric, name), nilradical


def load_json(file_path: str) -> Any:
    """Read a JSON file, with the same path checks as the other loaders."""
    path = Path(file_path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {file_path}")
    if path.suffix.lower() not in SUPPORTED_FORMATS:
        raise InputError(f"Unsupported file format: {path.suffix}")
    try:
        with open(path, "r") as json_file:
            return json.load(json_file)
    except json.JSONDecodeError as exc:
        raise InputError(f"Malformed JSON in {file_path}: {exc}") from exc


def dump_json(data: Any, file_path: Optional[str] = None, indent: Optional[int] = 2) -> str:
    """Serialize with sorted keys; write to file_path when given. Returns the text."""
    text = json.dumps(data, indent=indent, sort_keys=True)
    if file_path is not None:
        Path(file_path).write_text(text + "\n")
        logger.info("Wrote %s", file_path)
    return text


def _load(file_path: str, build: Callable[[Any], Any]) -> Any:
    """Build from a JSON file; content that does not fit the format is an InputError."""
    data = load_json(file_path)
    try:
        return build(data)
    except WsymError:
        raise
    except (TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"Malformed content in {file_path}: {exc}") from exc


def load_space(file_path: str) -> Tuple[ReductiveSpace, Optional[Subspace]]:
    return _load(file_path, space_from_dict)


def load_algebra(file_path: str) -> LieAlgebra:
    return _load(file_path, lambda data: algebra_from_dict(data, Path(file_path).stem))


def load_form(file_path: str) -> BilinearForm:
    return _load(file_path, form_from_dict)
