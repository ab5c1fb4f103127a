import json

from copnc import certificates as C
from copnc.cli import main
from copnc.construct import bipartite_triple
from copnc.families import petersen_triple


class TestCertificates:
    def test_roundtrip(self, k33):
        t = bipartite_triple(k33)
        doc = C.certificate(k33, list(t.partitions))
        report = C.validate_certificate(doc)
        assert report["ok"]

    def test_schema_tag(self, k33):
        doc = C.certificate(k33, [])
        assert doc["schema"] == "copnc/1"

    def test_duplicated_edge_flagged(self, petersen):
        # duplicating a trail double-covers its edges
        doc = C.certificate(petersen, list(petersen_triple()))
        doc["partitions"][0].append(dict(doc["partitions"][0][0]))
        report = C.validate_certificate(doc)
        assert not report["ok"]
        assert any("covered 2 times" in v for v in report["partitions"][0]["violations"])

    def test_identical_partitions_flagged(self, k33):
        t = bipartite_triple(k33)
        doc = C.certificate(k33, [t.partitions[0], t.partitions[0]])
        report = C.validate_certificate(doc)
        assert not report["ok"]
        assert report["incompatible"][0]["agreement"] == list(range(6))

    def test_graph_mismatch(self, k33, cube):
        t = bipartite_triple(k33)
        doc = C.certificate(k33, list(t.partitions))
        report = C.validate_certificate(doc, expect_graph=cube)
        assert not report["ok"] and report["graph_mismatch"]

    def test_dumps_canonical(self, k33):
        t = bipartite_triple(k33)
        doc = C.certificate(k33, list(t.partitions))
        assert C.dumps(doc) == C.dumps(json.loads(C.dumps(doc)))

    def test_loop_trails_roundtrip(self, dumbbell):
        from copnc.search import find_nop

        p = find_nop(dumbbell)
        doc = json.loads(C.dumps(C.certificate(dumbbell, [p])))
        assert C.validate_certificate(doc)["ok"]


class TestCli:
    def test_construct_then_validate_closed_loop(self, tmp_path, capsys):
        out = tmp_path / "cert.json"
        assert main(["construct", "--method", "bipartite", "--graph", "k33", "--out", str(out)]) == 0
        assert main(["validate", str(out), "--graph", "k33"]) == 0

    def test_family_closed_loop(self, tmp_path):
        out = tmp_path / "flower7.json"
        assert main(["family", "flower:7", "--out", str(out)]) == 0
        assert main(["validate", str(out), "--graph", "flower:7"]) == 0

    def test_petersen_family_certificate(self, tmp_path):
        out = tmp_path / "pet.json"
        assert main(["family", "petersen", "--emit-partitions", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert len(doc["matchings"]) == 3
        assert main(["validate", str(out), "--graph", "petersen"]) == 0

    def test_validate_failure_exit_code(self, tmp_path, k33):
        t = bipartite_triple(k33)
        doc = C.certificate(k33, [t.partitions[0], t.partitions[0]])
        p = tmp_path / "bad.json"
        p.write_text(C.dumps(doc))
        assert main(["validate", str(p)]) == 2

    def test_construct_precondition_exit(self, capsys):
        assert main(["construct", "--method", "bipartite", "--graph", "k4"]) == 3
        assert main(["construct", "--method", "conformal", "--graph", "flower:5"]) == 3

    def test_switch_class_json(self, capsys):
        assert main(["switch-class", "--graph", "theta", "--moves", "conformal", "--matching", "0"]) == 0
        doc = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        assert doc["count"] == 2 and doc["sizes"] == [1, 1]

    def test_switch_class_odd_single(self, capsys):
        assert main(["switch-class", "--graph", "k4", "--moves", "odd"]) == 0
        doc = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
        assert doc["count"] == 1

    def test_sweep_g6(self, tmp_path, capsys, k4, k33, cube):
        from copnc.graph import to_graph6

        src = tmp_path / "tiny.g6"
        src.write_text("\n".join(to_graph6(g) for g in (k4, k33, cube)) + "\n")
        out = tmp_path / "report.jsonl"
        assert main(["sweep", "--input", f"@{src}", "--check", "thm5", "--out", str(out)]) == 0
        lines = [json.loads(l) for l in out.read_text().splitlines()]
        assert len(lines) == 3 and all(r["agree"] for r in lines)

    def test_sweep_edges_with_multigraphs(self, tmp_path, theta, dumbbell):
        from copnc.graph import to_edge_list

        src = tmp_path / "tiny.edges"
        src.write_text(to_edge_list(theta) + to_edge_list(dumbbell))
        out = tmp_path / "report.jsonl"
        assert main(["sweep", "--input", f"@{src}", "--check", "conj25", "--out", str(out)]) == 0
        lines = [json.loads(l) for l in out.read_text().splitlines()]
        assert lines[0]["triple_found"] is True  # three parallel edges
        assert lines[1]["triple_found"] is False  # loops block any triple
        assert all(r["agree"] for r in lines)

    def test_sweep_parallel_jobs(self, tmp_path, k4, k33):
        from copnc.graph import to_graph6

        src = tmp_path / "two.g6"
        src.write_text("\n".join(to_graph6(g) for g in (k4, k33)) + "\n")
        out = tmp_path / "report.jsonl"
        assert main(["sweep", "--input", f"@{src}", "--check", "conj25", "--jobs", "2", "--out", str(out)]) == 0
        lines = [json.loads(l) for l in out.read_text().splitlines()]
        assert [r["id"] for r in lines] == ["two:0", "two:1"]

    def test_family_regenerate(self, capsys):
        assert main(["family", "--regenerate"]) == 0

    def test_graph_file_resolver(self, tmp_path, petersen):
        from copnc.graph import to_graph6

        src = tmp_path / "one.g6"
        src.write_text(to_graph6(petersen) + "\n")
        assert main(["construct", "--method", "matching", "--graph", f"@{src}"]) == 0

    def test_multi_record_file_rejected_where_one_needed(self, tmp_path, k4, k33):
        from copnc.graph import to_graph6

        src = tmp_path / "two.g6"
        src.write_text("\n".join(to_graph6(g) for g in (k4, k33)) + "\n")
        assert main(["construct", "--method", "matching", "--graph", f"@{src}"]) == 5

    def test_validate_graph_mismatch_exit(self, tmp_path, k33):
        t = bipartite_triple(k33)
        p = tmp_path / "cert.json"
        p.write_text(C.dumps(C.certificate(k33, list(t.partitions))))
        assert main(["validate", str(p), "--graph", "cube"]) == 2

    def test_missing_certificate_exit(self):
        assert main(["validate", "/definitely/not/here.json"]) == 5
