"""
export.py - Canonical JSON Files

Reads and writes the file formats used by the CLI.

Poset file:
{
    "bottom": 0,
    "covers": [[lower, upper], ...],
    "elements": [{"id": 0, "rank": 0}, ...],
    "top": 7
}

Complex file:
{
    "facets": [[v, ...], ...],
    "vertices": [v, ...]
}

Construction trace (written next to the output as <stem>.trace.json):
{
    "kind": "poset" | "complex",
    "labels": {"pi": 9, "rho": 1, ...},
    "target": {"alpha": [...], ...},
    "trace": [{"step": "join", "blocks": [...]}, {"step": "unzip", ...}, ...]
}

Every file is canonical: keys sorted, indent 2, trailing newline, element
and cover lists sorted. Writing the same object twice gives identical bytes.
"""

import json
from pathlib import Path
from typing import Any, Dict, Tuple, Union

from .errors import MalformedFile
from .poset import GradedPoset, validate
from .realize import Construction, SphereConstruction
from .simplicial import SimplicialComplex

PathLike = Union[str, Path]


# =============================================================================
# CANONICAL JSON
# =============================================================================

def canonical_dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(data: Any, output_path: PathLike) -> None:
    with open(output_path, "w", encoding="utf-8") as f:
        f.write(canonical_dumps(data))


def read_json(input_path: PathLike) -> Any:
    """
    Load a JSON document.

    Raises:
        MalformedFile: The file is not valid JSON
        OSError: The file cannot be read
    """
    with open(input_path, encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as exc:
            raise MalformedFile(f"{input_path}: {exc}")


# =============================================================================
# POSETS AND COMPLEXES
# =============================================================================

def complex_from_description(description: Dict) -> SimplicialComplex:
    """
    Build a complex from a complex-file description.

    Raises:
        MalformedFile: Missing fields, non-integer vertices, or facets using
            vertices not listed under `vertices`
    """
    try:
        vertices = description["vertices"]
        facets = description["facets"]
    except (KeyError, TypeError) as exc:
        raise MalformedFile(f"complex description lacks field {exc}")
    if not isinstance(vertices, list) or not isinstance(facets, list):
        raise MalformedFile("`vertices` and `facets` must be lists")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in vertices):
        raise MalformedFile("vertices must be integers")
    known = set(vertices)
    for facet in facets:
        if not isinstance(facet, list) or not set(facet) <= known:
            raise MalformedFile(f"bad facet {facet!r}")
    d = SimplicialComplex(facets)
    if set(d.vertices) != known:
        raise MalformedFile(f"vertices {sorted(known - set(d.vertices))} lie in no facet")
    return d


def load_object(input_path: PathLike) -> Union[GradedPoset, SimplicialComplex]:
    """
    Load a poset file or a complex file, deciding by its fields.

    Raises:
        MalformedFile: Neither format, or the content fails validation
    """
    data = read_json(input_path)
    if isinstance(data, dict) and "elements" in data:
        return validate(data)
    if isinstance(data, dict) and "facets" in data:
        return complex_from_description(data)
    raise MalformedFile(f"{input_path}: neither a poset nor a complex file")


def load_poset(input_path: PathLike) -> GradedPoset:
    obj = load_object(input_path)
    if not isinstance(obj, GradedPoset):
        raise MalformedFile(f"{input_path}: expected a poset file")
    return obj


def load_complex(input_path: PathLike) -> SimplicialComplex:
    obj = load_object(input_path)
    if not isinstance(obj, SimplicialComplex):
        raise MalformedFile(f"{input_path}: expected a complex file")
    return obj


def save_object(obj: Union[GradedPoset, SimplicialComplex], output_path: PathLike) -> None:
    write_json(obj.to_description(), output_path)


# =============================================================================
# CONSTRUCTION TRACES
# =============================================================================

def trace_path(output_path: PathLike) -> Path:
    """out.json -> out.trace.json; other names get .trace.json appended."""
    path = Path(output_path)
    if path.suffix == ".json":
        return path.with_suffix(".trace.json")
    return path.with_name(path.name + ".trace.json")


def construction_to_json(c: Union[Construction, SphereConstruction]) -> Dict[str, Any]:
    return {
        "kind": "poset" if isinstance(c, Construction) else "complex",
        "labels": dict(c.labels),
        "target": c.target,
        "trace": c.trace,
    }


def export_construction(c: Union[Construction, SphereConstruction],
                        output_path: PathLike) -> Tuple[Path, Path]:
    """
    Write the constructed object and its trace sidecar.

    Returns:
        (object path, trace path)
    """
    obj = c.poset if isinstance(c, Construction) else c.complex
    out = Path(output_path)
    save_object(obj, out)
    sidecar = trace_path(out)
    write_json(construction_to_json(c), sidecar)
    return out, sidecar


# =============================================================================
# VERIFICATION / TESTING
# =============================================================================

def verify_export() -> None:
    """Round-trip a realized poset and a flag sphere through canonical JSON."""
    import tempfile

    from .realize import flag_gamma4_construction, rank5_cd_construction

    print("Testing export module...")

    with tempfile.TemporaryDirectory() as tmp:
        poset_file = Path(tmp) / "p.json"
        c = rank5_cd_construction((1, 1, 1, 1))
        export_construction(c, poset_file)
        assert load_poset(poset_file) == c.poset
        first = poset_file.read_bytes()
        export_construction(c, poset_file)
        assert poset_file.read_bytes() == first
        print(f"✓ Poset round trip, {len(first)} bytes, canonical")

        sphere_file = Path(tmp) / "s.json"
        s = flag_gamma4_construction(2, 1)
        _, sidecar = export_construction(s, sphere_file)
        assert load_complex(sphere_file) == s.complex
        assert read_json(sidecar)["kind"] == "complex"
        print(f"✓ Complex round trip with trace {sidecar.name}")

    print("\n✓ Export module verification complete!")


if __name__ == "__main__":
    verify_export()
