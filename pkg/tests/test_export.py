"""Tests for canonical JSON files and construction traces."""

import json

import pytest

from cdgor.errors import MalformedFile
from cdgor.export import (
    canonical_dumps,
    complex_from_description,
    export_construction,
    load_complex,
    load_object,
    load_poset,
    read_json,
    save_object,
    trace_path,
    write_json,
)
from cdgor.flagvec import Rank5Coeffs
from cdgor.realize import (
    build_cycle_poset,
    flag_gamma4_construction,
    rank5_cd_construction,
    rank6_d_construction,
)


class TestCanonicalJson:

    def test_sorted_keys_and_newline(self):
        text = canonical_dumps({"b": 1, "a": [1, 2]})
        assert text.startswith('{\n  "a"')
        assert text.endswith("}\n")

    def test_write_then_read(self, tmp_path):
        path = tmp_path / "x.json"
        write_json({"k": [3, 1]}, path)
        assert read_json(path) == {"k": [3, 1]}

    def test_not_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(MalformedFile):
            read_json(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_json(tmp_path / "absent.json")


class TestPosetFiles:

    def test_round_trip(self, tmp_path, blocks):
        path = tmp_path / "p.json"
        for p in blocks.values():
            save_object(p, path)
            assert load_poset(path) == p

    def test_bytes_are_stable(self, tmp_path):
        p = build_cycle_poset(5)
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        save_object(p, first)
        save_object(load_poset(first), second)
        assert first.read_bytes() == second.read_bytes()

    def test_cover_lists_sorted(self, tmp_path):
        path = tmp_path / "p.json"
        save_object(build_cycle_poset(4), path)
        covers = json.loads(path.read_text())["covers"]
        assert covers == sorted(covers)

    def test_neither_format(self, tmp_path):
        path = tmp_path / "x.json"
        write_json({"hello": 1}, path)
        with pytest.raises(MalformedFile):
            load_object(path)

    def test_wrong_kind(self, tmp_path, octahedron):
        path = tmp_path / "c.json"
        save_object(octahedron, path)
        with pytest.raises(MalformedFile):
            load_poset(path)


class TestComplexFiles:

    def test_round_trip(self, tmp_path, octahedron):
        path = tmp_path / "c.json"
        save_object(octahedron, path)
        assert load_complex(path) == octahedron
        assert isinstance(load_object(path), type(octahedron))

    @pytest.mark.parametrize("description", [
        {"facets": [[0, 1]]},
        {"vertices": [0, 1], "facets": [[0, 2]]},
        {"vertices": [0, 1, 2], "facets": [[0, 1]]},
        {"vertices": ["a", "b"], "facets": [["a", "b"]]},
        {"vertices": [0, 1], "facets": "01"},
    ])
    def test_malformed(self, description):
        with pytest.raises(MalformedFile):
            complex_from_description(description)


class TestTraces:

    def test_trace_path(self):
        assert trace_path("out.json").name == "out.trace.json"
        assert trace_path("out").name == "out.trace.json"

    def test_poset_sidecar(self, tmp_path):
        c = rank5_cd_construction(Rank5Coeffs(1, 1, 1, 1))
        out, sidecar = export_construction(c, tmp_path / "p.json")
        assert load_poset(out) == c.poset
        trace = read_json(sidecar)
        assert trace["kind"] == "poset"
        assert trace["target"]["alpha"] == [1, 1, 1, 1]
        assert [s["step"] for s in trace["trace"]][:2] == ["join", "label"]
        assert trace["labels"]["rho"] == c.labels["rho"]

    def test_rank6_sidecar(self, tmp_path):
        c = rank6_d_construction(5, 5)
        _, sidecar = export_construction(c, tmp_path / "q.json")
        assert read_json(sidecar)["target"] == {"d": [1, 5, 5], "a": 2, "b": 3, "r": 1}

    def test_sphere_sidecar(self, tmp_path):
        c = flag_gamma4_construction(4, 4)
        out, sidecar = export_construction(c, tmp_path / "s.json")
        assert load_complex(out) == c.complex
        trace = read_json(sidecar)
        assert trace["kind"] == "complex"
        assert trace["target"]["path"] == "direct"

    def test_repeat_export_is_byte_identical(self, tmp_path):
        c = rank5_cd_construction(Rank5Coeffs(2, 3, 2, 4))
        out, sidecar = export_construction(c, tmp_path / "p.json")
        first = (out.read_bytes(), sidecar.read_bytes())
        export_construction(rank5_cd_construction(Rank5Coeffs(2, 3, 2, 4)), out)
        assert (out.read_bytes(), sidecar.read_bytes()) == first
