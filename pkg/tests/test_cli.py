import csv
import json

import jsonschema
import numpy as np
import pytest

from riccati_foliations import serialize as ser
from riccati_foliations.cli import main
from riccati_foliations.errors import ParseError
from riccati_foliations.holonomy import LoopPath
from riccati_foliations.poly_vf import cp2_field

from conftest import const, okamoto, random_riccati_field, xyz


def validate(obj, name):
    jsonschema.Draft202012Validator(ser.load_schema(name)).validate(obj)


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def field2(tmp_path):
    X, _ = random_riccati_field(np.random.default_rng(7), 2)
    return write_json(tmp_path / "field.json", ser.encode_field(X))


class TestSerialize:
    def test_field_roundtrip(self, rng):
        X, _ = random_riccati_field(rng, 3)
        back = ser.decode_field(json.loads(ser.dumps(ser.encode_field(X))))
        assert back == X

    def test_matrix_roundtrip_exact(self, rng):
        m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert np.array_equal(ser.decode_matrix(json.loads(ser.dumps(ser.encode_matrix(m)))), m)

    def test_loop_roundtrip(self):
        loop = LoopPath.circle(1 + 1j, 0.5) * LoopPath.circle(1 + 1j, 0.5)
        assert ser.decode_loop(ser.encode_loop(loop)).segments == loop.segments

    @pytest.mark.parametrize("bad", [[[1, 2], [3]], "x", [[True, 0, 0]] * 3, {"m": 1}])
    def test_bad_matrix(self, bad):
        with pytest.raises(ParseError):
            ser.decode_matrix(bad, 3)

    def test_real_and_pair_numbers(self):
        assert ser.decode_complex(2) == 2 and ser.decode_complex([1, -1]) == 1 - 1j

    def test_bad_field(self):
        with pytest.raises(ParseError):
            ser.decode_field({"components": [{"vars": ["x"]}]})


class TestCommands:
    def test_classify(self, tmp_path):
        inp = write_json(tmp_path / "m.json", [[2, 1, 0], [0, 2, 0], [0, 0, 5]])
        out = tmp_path / "out.json"
        assert main(["classify", "-i", inp, "-o", str(out)]) == 0
        rep = json.loads(out.read_text())
        validate(rep, "classification")
        assert rep["jordan_case"] == "II2" and rep["paper_type"] == "P2"
        assert rep["fixed_points"] == [[[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
                                       [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]]

    def test_check_accept(self, tmp_path):
        inp = write_json(tmp_path / "f.json", {"field": ser.encode_field(okamoto())})
        out = tmp_path / "out.json"
        assert main(["check", "-i", inp, "-o", str(out)]) == 0
        rep = json.loads(out.read_text())
        validate(rep, "check")
        assert rep["accepted"] and rep["fibers"]["infinity"]

    def test_check_reject_exit_3(self, tmp_path):
        x, y, z = xyz()
        inp = write_json(tmp_path / "f.json", ser.encode_field(cp2_field(const(1), y * y + z * z, y * z)))
        out = tmp_path / "out.json"
        assert main(["check", "-i", inp, "-o", str(out)]) == 3
        rep = json.loads(out.read_text())
        validate(rep, "check")
        assert rep["rejection"]["constraint"] == "F≠0"

    def test_holonomy_auto(self, tmp_path, field2):
        out = tmp_path / "h.json"
        assert main(["holonomy", "-i", field2, "--auto-generators", "--base", "0,-3",
                     "-o", str(out), "--tol-int", "1e-10"]) == 0
        rep = json.loads(out.read_text())
        validate(rep, "holonomy")
        assert len(rep["generators"]) == 3 and rep["generators"][-1]["fiber"] == "inf"
        assert rep["product_error"] < 1e-6

    def test_holonomy_loop(self, tmp_path, field2):
        loop = write_json(tmp_path / "loop.json", ser.encode_loop(LoopPath.circle(0, 5.0)))
        out = tmp_path / "h.json"
        assert main(["holonomy", "-i", field2, "--loop", loop, "-o", str(out)]) == 0
        validate(json.loads(out.read_text()), "holonomy")

    def test_synthesize(self, tmp_path):
        inp = write_json(tmp_path / "g.json", {"generators": [np.diag([1, 2, 3]).tolist(),
                                                             [[1, 1, 0], [0, 1, 1], [0, 0, 1]]]})
        out = tmp_path / "s.json"
        assert main(["synthesize", "-i", inp, "-o", str(out)]) == 0
        rep = json.loads(out.read_text())
        validate(rep, "synthesis")
        assert rep["passed"] and [g["index"] for g in rep["generators"]] == [0, 1, 2]

    def test_report(self, tmp_path, field2):
        out = tmp_path / "rep"
        assert main(["report", "-i", field2, "-o", str(out)]) == 0
        rep = json.loads((out / "report.json").read_text())
        validate(rep, "report")
        validate(rep["check"], "check")
        validate(rep["holonomy"], "holonomy")
        for name in rep["figures"]:
            assert (out / name).read_bytes()[:4] == b"\x89PNG"
        rows = list(csv.DictReader((out / "generators.tsv").open(), delimiter="\t"))
        assert [r["index"] for r in rows] == ["1", "2", "3"] and rows[-1]["fiber_re"] == "inf"

    def test_report_rejected(self, tmp_path):
        x, y, z = xyz()
        inp = write_json(tmp_path / "f.json", ser.encode_field(cp2_field(const(1), y ** 3, z)))
        out = tmp_path / "rep"
        assert main(["report", "-i", inp, "-o", str(out)]) == 3
        validate(json.loads((out / "report.json").read_text()), "report")


class TestExitCodes:
    def _error(self, out):
        rep = json.loads(out.read_text())
        validate(rep, "error")
        return rep

    def test_unreadable_input(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        out = tmp_path / "e.json"
        assert main(["classify", "-i", str(bad), "-o", str(out)]) == 1
        assert self._error(out)["exit_code"] == 1

    def test_wrong_shape(self, tmp_path):
        inp = write_json(tmp_path / "m.json", [[1, 0], [0, 1]])
        out = tmp_path / "e.json"
        assert main(["classify", "-i", inp, "-o", str(out)]) == 1

    def test_singular(self, tmp_path):
        inp = write_json(tmp_path / "m.json", [[1, 0, 0], [0, 1, 0], [0, 0, 0]])
        out = tmp_path / "e.json"
        assert main(["classify", "-i", inp, "-o", str(out)]) == 2
        assert self._error(out)["error"] == "DegenerateMatrix"

    def test_not_riccati_holonomy(self, tmp_path):
        x, y, z = xyz()
        inp = write_json(tmp_path / "f.json", ser.encode_field(cp2_field(const(1), y ** 3, z)))
        out = tmp_path / "e.json"
        code = main(["holonomy", "-i", inp, "--auto-generators", "--base", "0", "-o", str(out)])
        assert code == 3 and self._error(out)["error"] == "NotRiccati"

    def test_pole_on_path(self, tmp_path):
        x, y, z = xyz()
        inp = write_json(tmp_path / "f.json", ser.encode_field(cp2_field(x - 1, y, z)))
        loop = write_json(tmp_path / "l.json", ser.encode_loop(LoopPath.circle(0, 1.0)))
        out = tmp_path / "e.json"
        assert main(["holonomy", "-i", inp, "--loop", loop, "-o", str(out)]) == 4
        assert self._error(out)["error"] == "PoleOnPath"

    def test_missing_base(self, tmp_path, field2):
        out = tmp_path / "e.json"
        assert main(["holonomy", "-i", field2, "--auto-generators", "-o", str(out)]) == 1

    def test_bad_tolerance(self, tmp_path, field2):
        with pytest.raises(SystemExit) as exc:
            main(["check", "-i", field2, "--tol-eigen", "-1"])
        assert exc.value.code == 2


def test_deterministic_output(tmp_path, field2):
    outs = []
    for k in range(2):
        out = tmp_path / f"h{k}.json"
        main(["holonomy", "-i", field2, "--auto-generators", "--base", "0,-3", "-o", str(out), "--seed", "5"])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_stdout_output(tmp_path, capsys):
    inp = write_json(tmp_path / "m.json", np.eye(3).tolist())
    assert main(["classify", "-i", inp]) == 0
    assert json.loads(capsys.readouterr().out)["paper_type"] == "Identity"
