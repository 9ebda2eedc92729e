import pytest

from wdwb import GroupDescriptor, Matrix, WeilDatum, acceptability_scan, build_weidner, globally_conjugate
from wdwb import locally_conjugate, parse_scalar, session, validate_parameter, verify_weidner
from wdwb.cases import parity_witness, weidner_datum
from wdwb.errors import OrderMismatch, OutOfRange


def test_build_weidner_n3_images():
    p1, p2 = build_weidner(3)
    i, mi = parse_scalar("z4^1"), parse_scalar("z4^3")
    one = parse_scalar("1")
    assert p1.frobenius_image == Matrix.diag([i, i, one, one, mi, mi])
    assert p1.inertia_images[0] == Matrix.diag([one, i, i, mi, mi, one])
    assert p2.frobenius_image == p1.frobenius_image
    assert p2.inertia_images[0] == Matrix.diag([one, i, mi, i, mi, one])


def test_build_weidner_errors():
    with pytest.raises(OutOfRange):
        build_weidner(2)
    with session(6):
        with pytest.raises(OrderMismatch):
            build_weidner(3)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_build_weidner_validates(n):
    for p in build_weidner(n):
        assert p.target == GroupDescriptor("SO", 2 * n)
        assert validate_parameter(p)["valid"]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_verify_weidner_passes(n):
    report = verify_weidner(n)
    assert report["passed"], report
    names = [c["name"] for c in report["checks"]]
    assert names == ["local_conjugacy", "global_nonconjugacy", "centralizers", "monodromy_zero",
                     "representation_conjugacy"]
    assert all(c["paper_ref"] for c in report["checks"])
    assert report["checks"][2]["witness"]["dim"] == [(n - 2) ** 2 + 2] * 2
    assert report["elapsed"] is None


@pytest.mark.parametrize("n", [3, 4])
def test_parity_witnesses_are_conjugators(n):
    p1, p2 = build_weidner(n)
    G = p1.target
    for a in range(4):
        for b in range(4):
            g = parity_witness(n, a, b)
            x = ((b,), a)
            assert G.contains(g)
            assert g @ p1.image(x) @ g.inverse() == p2.image(x)


def test_verify_with_identical_pair_flags_deviation():
    report = verify_weidner(3, second="first")
    assert not report["passed"]
    status = {c["name"]: c["status"] for c in report["checks"]}
    assert status.pop("global_nonconjugacy") == "fail"
    assert set(status.values()) == {"pass"}
    bad = next(c for c in report["checks"] if c["name"] == "global_nonconjugacy")
    assert "Conjugate" in bad["deviation"]


def test_scan_small_targets_empty():
    assert acceptability_scan(WeilDatum.cyclic(2, frobenius_order=2), GroupDescriptor.parse("SL2")).pairs == []
    assert acceptability_scan(WeilDatum(WeilDatum.trivial().inertia, frobenius_order=4),
                              GroupDescriptor.parse("SO6")).pairs == []


@pytest.mark.parametrize("name", ["SO5", "SO4", "SL3"])
def test_scan_acceptable_targets_empty(name):
    res = acceptability_scan(weidner_datum(), GroupDescriptor.parse(name))
    assert res.pairs == [] and not res.exhausted


def test_scan_pairs_reverify(so6_scan):
    assert so6_scan.pairs
    for p1, p2 in so6_scan.pairs[:5]:
        assert locally_conjugate(p1, p2).conjugate
        assert globally_conjugate(p1, p2, seed=17).status == "NotConjugate"


def test_scan_deterministic():
    D = weidner_datum()
    a = acceptability_scan(D, GroupDescriptor.parse("SO4"), seed=3).to_json()
    b = acceptability_scan(D, GroupDescriptor.parse("SO4"), seed=3).to_json()
    assert a == b
