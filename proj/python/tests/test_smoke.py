import pytest

import sseq


def test_fixtures_round_trip():
    ins = sseq.Instance.fixture("z4")
    text = ins.serialize()
    again = sseq.Instance.parse(text)
    assert again == ins
    assert again.serialize() == text
    assert ins.dimension == 1
    assert ins.declared_stages == 3
    assert ins.twist is None
    assert not ins.has_secondary
    assert ins.degrees == (0, 1)
    assert ins.levels == (0, 2)
    assert len(ins.digest()) == 16
    assert int(ins.digest(), 16)  # hex


def test_instances_survive_the_disk(tmp_path):
    ins = sseq.Instance.fixture("sl3")
    path = tmp_path / "sl3.json"
    ins.write(str(path))
    assert sseq.Instance.read(str(path)) == ins
    assert path.read_text() == ins.serialize()


def test_validate_reports_the_declared_shape():
    rep = sseq.validate(sseq.Instance.fixture("secondary"))
    assert rep["verdict"] == "ok"
    assert rep["metadata"]["twist"] == "O(1)"
    assert rep["secondary"] is True


def test_pages_show_the_collapse():
    rep = sseq.pages(sseq.Instance.fixture("sl3"), r_max=3)
    first = rep["pages"][0]
    assert first["page"] == 2
    spots = {(s["p"], s["q"]): s["group"] for s in first["spots"]}
    assert spots == {(1, 2): "Z/2", (2, 3): "Z/2"}
    assert first["differentials"][0]["isomorphism"] is True
    assert rep["pages"][1]["spots"] == []
    assert all(c["group"] == "0" for c in rep["infinity"]["cohomology"])


def test_tower_walks_the_stages():
    ins = sseq.Instance.fixture("z4")
    rep = sseq.tower(ins, [2])
    assert rep["degree"] == 1
    assert [st["zero"] for st in rep["stages"]] == [True, False]
    assert rep["vanishes"] is False
    assert rep["first_nonzero"] == 1
    assert rep["stage_bound"]["respected"] is True
    assert sseq.tower(ins, [4])["vanishes"] is True
    assert sseq.tower(ins, [2], degree=1) == rep


def test_secondary_summarizes_the_block():
    rep = sseq.secondary(sseq.Instance.fixture("secondary"))
    assert rep["integral"] == "Z"
    assert rep["cokernel"] == "Z/2"
    assert rep["zero"] is False


def test_gersten_instances_flow_into_pages():
    ins = sseq.gersten("P1", 3, 1, 2)
    assert not ins.has_secondary
    coh = {c["degree"]: c["group"] for c in sseq.pages(ins, r_max=2)["infinity"]["cohomology"]}
    assert coh[1] == "Z"
    mod2 = sseq.gersten("P1", 3, 1, 2, mod2=True, threads=2)
    coh2 = {c["degree"]: c["group"] for c in sseq.pages(mod2)["infinity"]["cohomology"]}
    assert coh2[1] == "Z/2"


def test_sq2_squares_and_twists():
    rep = sseq.sq2("h:4", "0", "h^3")
    assert rep["codim"] == 3
    assert rep["sq2"] == "h^4"
    assert rep["twisted_phi_twice"] == "0"
    assert rep["suspension_commutes"] is True
    twisted = sseq.sq2("a:2,b:2", "a", "a*b")
    assert twisted["sq2"] == "a*b^2 + a^2*b"
    assert twisted["twisted_phi"] == "a*b^2"


def test_errors_arrive_as_the_matching_python_type():
    with pytest.raises(ValueError, match="not valid JSON"):
        sseq.Instance.parse("{")
    with pytest.raises(ValueError, match="unknown name"):
        sseq.Instance.fixture("nope")
    with pytest.raises(NotImplementedError, match="format_version"):
        sseq.Instance.parse(sseq.Instance.fixture("z4").serialize().replace('"1"', '"2"', 1))
    with pytest.raises(ValueError, match="no secondary block"):
        sseq.secondary(sseq.Instance.fixture("z4"))
    with pytest.raises(ValueError, match="declares no dimension"):
        sseq.tower(sseq.gersten("A1", 3, 1, 1), [0, 0])
    with pytest.raises(ValueError, match="r-max"):
        sseq.pages(sseq.Instance.fixture("z4"), r_max=1)


def test_run_mirrors_the_command_line():
    code, out, err = sseq.run(["fixtures", "z4"])
    assert (code, err) == (0, "")
    assert sseq.Instance.parse(out) == sseq.Instance.fixture("z4")
    code, out, err = sseq.run(["pages", "--input", "no-such-file.json"])
    assert code == 1
    assert "cannot open" in err
