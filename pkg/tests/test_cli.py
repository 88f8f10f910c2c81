import io
import json

import pytest

from approxforms.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


class TestGolden:
    def test_inf_xor(self):
        code, out, _ = call("inf", "--truth-table", "0110")
        assert code == 0
        assert out == "n=2\nfactors=3\nimplications=2\nP3=0111\nP2=0001\nP1=0000\nreconstruction=OK\n"

    def test_inf_minimal(self):
        code, out, _ = call("inf", "--truth-table", "10", "--prove-minimal")
        r = kv(out)
        assert code == 0 and r["minimal_factors"] == "2" and r["synthesized_is_minimal"] == "true"

    def test_marginals(self):
        code, out, _ = call("lefebvre", "marginals", "--characteristic", "0.3,0.1,0.1,0.1,0.1,0.1,0.1,0.1")
        assert code == 0
        assert out == "x=0.4,0.4,0.4\nz=0.5\nf=0.544\ngap=0.044\n"

    def test_golden(self):
        code, out, _ = call("lefebvre", "golden")
        r = kv(out)
        assert code == 0 and r["root"] == "0.618033988749895"
        assert r["support_in_realist_area"] == "true"
        assert abs(float(r["x3_marginal"]) - float(r["root"])) <= 1e-12

    def test_golden_sampled(self):
        r = kv(call("lefebvre", "golden", "--samples", "100000", "--seed", "7")[1])
        assert r["outside_realist_area"] == "0" and r["within_3_stderr"] == "true"

    def test_choose(self):
        r = kv(call("lefebvre", "choose", "--bits", "011")[1])
        assert (r["stage1"], r["stage2"], r["stage3"]) == ("x1->x2", "x2->x1", "x1")
        assert r["output"] == r["formula"] == "0"

    def test_pure(self):
        r = kv(call("lefebvre", "pure", "--x", "0.5,0.5,1")[1])
        assert r["z"] == r["f"] == "0.75"

    def test_l_axioms(self):
        r = kv(call("lefebvre", "verify-axioms")[1])
        assert r["readiness.passed"] == "true" and r["bracket_variant.L2"] == "fail"

    def test_poset(self):
        r = kv(call("poset", "--domain", "cube:2")[1])
        assert r["D"] == "2" and r["rank2"] == "01,10"

    @pytest.mark.parametrize("system,algebra", [("A", "chain-primal:3"), ("B", "chain-primal:2"),
                                                ("A*", "boolean-dual"), ("B*", "boolean-dual")])
    def test_verify(self, system, algebra):
        code, out, _ = call("verify-axioms", "--algebra", algebra, "--domain", "cube:2", "--system", system)
        assert code == 0 and kv(out)["passed"] == "true"

    def test_sample_deterministic(self):
        argv = ("lefebvre", "sample", "--characteristic", "0,0.25,0,0.25,0,0.25,0,0.25", "--samples", "70000",
                "--seed", "3")
        assert call(*argv) == call(*argv)


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ("inf", "--truth-table", "012"),
        ("bogus",),
        ("lefebvre", "marginals", "--characteristic", "0.5,0.5"),
        ("lefebvre", "marginals", "--characteristic", "0.2,0.2,0.2,0.2,0.2,0.2,0.2,0.2"),
        ("lefebvre", "choose", "--bits", "21"),
        ("decompose", "--algebra", "chain-primal:2", "--domain", "chain:3", "--values", "1,0"),
        ("decompose", "--algebra", "nope", "--domain", "chain:3", "--values", "1,0,1"),
        ("poset", "--domain", "cube:40"),
        ("poset", "--domain", "/no/such/file.json"),
    ])
    def test_input_errors(self, argv):
        code, out, err = call(*argv)
        assert code == 1 and err.startswith("error:")

    def test_no_command(self):
        assert call()[0] == 1


class TestFiles:
    def test_round_trip(self, tmp_path):
        chain_file, padded = tmp_path / "c.json", tmp_path / "p.json"
        base = ("--algebra", "chain-primal:3", "--domain", "cube:2")
        code, _, _ = call("decompose", *base, "--values", "2,0,1,0", "-o", str(chain_file))
        assert code == 0
        doc = json.loads(chain_file.read_text())
        assert doc["verification"]["fold-equal"] is True
        assert doc["verification"]["boxminus-count"] <= doc["verification"]["D"]

        code, out, _ = call("fold", *base, "--chain", str(chain_file))
        assert code == 0 and json.loads(out)["values"] == {"00": "2", "01": "0", "10": "1", "11": "0"}

        code, _, _ = call("pad", *base, "--chain", str(chain_file), "-o", str(padded))
        assert code == 0
        assert len(json.loads(padded.read_text())["factors"]) == 3
        assert json.loads(call("fold", *base, "--chain", str(padded))[1]) == json.loads(out)

    def test_map_file(self, tmp_path):
        f = tmp_path / "m.json"
        f.write_text(json.dumps({"values": {"00": "0", "01": "1", "10": "1", "11": "0"}}))
        code, out, _ = call("decompose", "--algebra", "boolean-dual", "--domain", "cube:2", "--map", str(f))
        assert code == 0 and json.loads(out)["orientation"] == "dual"

    def test_poset_file(self, tmp_path):
        f = tmp_path / "p.json"
        f.write_text(json.dumps({"elements": ["a", "b", "c", "d"], "covers": [["a", "b"], ["a", "c"]]}))
        r = kv(call("poset", "--domain", str(f))[1])
        assert r["D"] == "1" and r["rank1"] == "a,d"

    def test_theta(self):
        code, out, _ = call("theta", "--algebra", "chain-primal:2", "--domain", "chain:3", "--values", "0,0,1")
        doc = json.loads(out)
        assert code == 0 and doc["ranks"] == [1, 2, 3]
        assert [list(f["values"].values()) for f in doc["factors"]] == [["0", "1", "1"], ["0", "1", "1"],
                                                                         ["0", "0", "1"]]

    def test_byte_identical(self):
        argv = ("decompose", "--algebra", "chain-primal:3", "--domain", "cube:2", "--values", "2,0,1,0")
        assert call(*argv)[1] == call(*argv)[1]

    def test_algebra_file(self, tmp_path):
        from approxforms.connectives import chain_primal, dump_algebra

        f = tmp_path / "alg.json"
        f.write_text(json.dumps(dump_algebra(chain_primal(3))))
        code, out, _ = call("verify-axioms", "--algebra", str(f), "--domain", "chain:3", "--system", "A")
        assert code == 0 and kv(out)["passed"] == "true"
        code, out, _ = call("decompose", "--algebra", str(f), "--domain", "chain:3", "--values", "2,0,1")
        assert code == 0 and json.loads(out)["verification"]["fold-equal"] is True
