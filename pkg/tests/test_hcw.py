import pytest

from posetres import (FieldSpec, Poset, antichain_form, betti_table,
                      conic_complex, fill_cavity, hcw_support, hcwify,
                      incidence_poset, is_hcw, minimalize, minimize,
                      taylor_complex)
from posetres.errors import HypothesisFailed
from posetres.hcw import _boundary_of_chain
from posetres.posets import reduced_homology
from conftest import load_fixture_complex, RP2_GENS

Q = FieldSpec(0)
GF2 = FieldSpec(2)


def hollow_square_poset():
    """Four points and four joins: filter of a virtual top is a circle."""
    els = ["a", "b", "c", "d", "ab", "bc", "cd", "da", "t"]
    rels = [("a", "ab"), ("b", "ab"), ("b", "bc"), ("c", "bc"),
            ("c", "cd"), ("d", "cd"), ("d", "da"), ("a", "da")]
    rels += [(e, "t") for e in els if e != "t"]
    deg = {"a": (1, 0, 0, 0), "b": (0, 1, 0, 0), "c": (0, 0, 1, 0),
           "d": (0, 0, 0, 1), "ab": (1, 1, 0, 0), "bc": (0, 1, 1, 0),
           "cd": (0, 0, 1, 1), "da": (1, 0, 0, 1), "t": (1, 1, 1, 1)}
    return Poset(els, rels, deg=deg)


def test_antichain_form_identity_case():
    P = hollow_square_poset()
    K = P.filter_complex("t")
    # a 1-cycle already supported on dimension-1 apexes
    z = {("ab", "a"): Q(1), ("ab", "b"): Q(-1), ("bc", "b"): Q(1),
         ("bc", "c"): Q(-1), ("cd", "c"): Q(1), ("cd", "d"): Q(-1),
         ("da", "d"): Q(1), ("da", "a"): Q(-1)}
    assert not _boundary_of_chain(K, 1, z, Q)
    assert antichain_form(P, "t", dict(z), 1, Q) == z


def test_antichain_form_lowers_apex_dimension():
    # 0-cycle written via a 1-dimensional vertex: (ab) - (c) has a face with
    # top vertex ab of dimension 1; the reduction must land on points only
    P = hollow_square_poset()
    w = {("ab",): Q(1), ("c",): Q(-1)}
    z = antichain_form(P, "t", w, 0, Q)
    assert all(P.dim(f[0]) == 0 for f in z)
    # homologous: difference is a boundary in the filter
    K = P.filter_complex("t")
    diff = dict(z)
    for f, v in w.items():
        diff[f] = Q.sub(diff.get(f, Q.zero), v)
    from posetres.exactla import solve
    faces0 = K.faces[0]
    fix = {f: i for i, f in enumerate(faces0)}
    rhs = [Q.zero] * len(faces0)
    for f, v in diff.items():
        rhs[fix[f]] = v
    assert solve(K.boundary_matrix(1), rhs, Q) is not None


def test_fill_cavity_noop_when_no_cavity():
    C = load_fixture_complex("two_res_a.json", 0)
    P = incidence_poset(C)
    top = [e for e in P.elements if P.dim(e) == 2][0]
    P2, added = fill_cavity(P, top, 0, Q)
    assert added == [] and P2.covers == P.covers


def test_fill_cavity_requires_dimension_gap():
    P = hollow_square_poset()
    with pytest.raises(HypothesisFailed):
        fill_cavity(P, "ab", 0, Q)


def test_fill_cavity_rp2_top():
    C = load_fixture_complex("pp_res.json", 2)
    P = incidence_poset(C)
    top = [e for e in P.elements if P.dim(e) == 3][0]
    assert reduced_homology(P.filter_complex(top), GF2) == {1: 1, 2: 1}
    P2, added = fill_cavity(P, top, 1, GF2)
    assert len(added) == 1
    c, a = added[0]
    assert a == top and P.dim(c) == 2
    assert reduced_homology(P2.filter_complex(top), GF2) == {2: 1}
    assert conic_complex(P, GF2, True).same_matrices(
        conic_complex(P2, GF2, True))


def test_hcwify_already_hcw_is_identity():
    for name in ("two_res_a.json", "two_res_b.json"):
        P = incidence_poset(load_fixture_complex(name, 0))
        assert is_hcw(P, Q)
        Qp, report = hcwify(P, Q)
        assert report.added == []
        assert Qp.covers == P.covers


def test_hcwify_rp2_adds_one_relation():
    P = incidence_poset(load_fixture_complex("pp_res.json", 2))
    assert not is_hcw(P, GF2)
    Qp, report = hcwify(P, GF2)
    assert len(report.added) == 1
    assert is_hcw(Qp, GF2)
    assert not report.verdicts_before[report.added[0][1]]
    assert report.verdicts_after[report.added[0][1]]
    # idempotence on outputs
    Q2, report2 = hcwify(Qp, GF2)
    assert report2.added == [] and Q2.covers == Qp.covers
    dot = report.to_dot()
    assert "dashed" in dot
    assert report.to_json()["added_relations"] == [list(report.added[0])]


def test_hcwify_precondition_failure():
    # top filter with three points has homology rank 2, not 1
    P = Poset(["a", "b", "c", "t"], [("a", "t"), ("b", "t"), ("c", "t")],
              deg={"a": (1, 0, 0), "b": (0, 1, 0), "c": (0, 0, 1),
                   "t": (1, 1, 1)})
    with pytest.raises(HypothesisFailed):
        hcwify(P, Q)


def test_hcw_support_koszul():
    Qp, deg, H = hcw_support(minimalize([(1, 0), (0, 1)]), Q)
    assert len(Qp) == 3 and is_hcw(Qp, Q)
    assert H.ranks() == (2, 1)


def test_hcw_support_rp2():
    I = minimalize(RP2_GENS)
    Qp, deg, H = hcw_support(I, GF2)
    assert len(Qp) == 33 and is_hcw(Qp, GF2)
    assert betti_table(H).totals() == (10, 15, 7, 1)
    M = minimize(taylor_complex(I, GF2))
    assert betti_table(H).entries == betti_table(M).entries
