import pytest

from posetres import (FieldSpec, Poset, bar_reduce, betti_table,
                      conic_complex, conic_vs_simplicial, homogenize,
                      supports_resolution)
from posetres.conic import kernel_skeleton_check, skeleton_complex
from posetres.errors import HypothesisFailed, NotAMorphism
from posetres.incidence import incidence_poset
from conftest import load_fixture_complex

Q = FieldSpec(0)


def koszul_poset():
    return Poset(["a1", "a2", "b"], [("a1", "b"), ("a2", "b")],
                 deg={"a1": (1, 0), "a2": (0, 1), "b": (1, 1)})


def test_antichain_conic():
    P = Poset(["a", "b", "c"], [], deg={"a": (1,), "b": (2,), "c": (3,)})
    C = conic_complex(P, Q, augmented=True)
    assert C.ranks() == (3,)
    assert C.homology_ranks() == {0: 2}  # H~ of three points


def test_v_poset_conic_exact():
    C = conic_complex(koszul_poset(), Q, augmented=True)
    assert C.ranks() == (2, 1)
    assert C.is_exact()
    # the top generator maps to the difference of the two vertices
    (entries,) = [C.diffs[1]]
    vals = sorted(v for v in entries.values())
    assert len(entries) == 2 and sum(vals) == 0


def test_conic_component_dims_of_pp_incidence():
    C = load_fixture_complex("pp_res.json", 2)
    P = incidence_poset(C)
    CC = conic_complex(P, FieldSpec(2))
    assert CC.ranks() == (10, 15, 7, 1)
    assert all(d == 1 for d in CC.component_dims().values())


def test_conic_vs_simplicial_chain_and_hcw():
    chain = Poset([0, 1, 2], [(0, 1), (1, 2)])
    assert conic_vs_simplicial(chain, Q)
    assert conic_vs_simplicial(koszul_poset(), Q)


def test_conic_vs_simplicial_hypothesis_failure():
    C = load_fixture_complex("pp_res.json", 2)
    P = incidence_poset(C)
    with pytest.raises(HypothesisFailed):
        conic_vs_simplicial(P, FieldSpec(2))


def test_homogenize_koszul():
    H = homogenize(conic_complex(koszul_poset(), Q))
    assert H.ranks() == (2, 1)
    assert sorted(d for _, d in H.labels[0]) == [(0, 1), (1, 0)]
    assert H.labels[1][0][1] == (1, 1)
    H.check_complex()


def test_homogenize_requires_monotone_deg():
    P = Poset(["a", "b"], [("a", "b")])
    C = conic_complex(P, Q)
    with pytest.raises(NotAMorphism):
        homogenize(C, {"a": (1, 0), "b": (0, 2)})


def test_bar_homogenize_round_trip():
    C = load_fixture_complex("pp_res.json", 2)
    P = incidence_poset(C)
    CC = conic_complex(P, FieldSpec(2))
    B = bar_reduce(homogenize(CC, P.deg))
    remap = {(r, c): v for (r, c), v in
             ((tuple(k.split("#")[0] for k in key), v)
              for n, m in B.diffs.items() for key, v in m.items())}
    conic_named = {(r[0], c[0]): v for n, m in CC.diffs.items()
                   for (r, c), v in m.items()}
    assert remap == conic_named


def test_supports_resolution_fixtures():
    assert supports_resolution(koszul_poset(), Q) == (True, None)
    C = load_fixture_complex("pp_res.json", 2)
    P = incidence_poset(C)
    ok, witness = supports_resolution(P, FieldSpec(2))
    assert ok and witness is None


def test_supports_resolution_failure_witness():
    # three incomparable points below a top whose filter is disconnected
    P = Poset(["a", "b", "c", "t"],
              [("a", "t"), ("b", "t"), ("c", "t")],
              deg={"a": (1, 0, 0), "b": (0, 1, 0), "c": (0, 0, 1),
                   "t": (1, 1, 1)})
    ok, witness = supports_resolution(P, Q)
    assert not ok and witness == (0, 1, 1)
    from posetres import conic_complex
    sub = conic_complex(P, Q, augmented=True).restrict_deg_leq(witness)
    assert not sub.is_exact()


def test_kernel_skeleton_equality():
    for P in (koszul_poset(),
              incidence_poset(load_fixture_complex("two_res_a.json", 0))):
        C = conic_complex(P, Q)
        assert kernel_skeleton_check(C)


def test_skeleton_complex_faces():
    P = koszul_poset()
    S0 = skeleton_complex(P, 0)
    assert S0.face_counts() == {-1: 1, 0: 2}
    S1 = skeleton_complex(P, 1)
    assert S1.face_counts() == {-1: 1, 0: 3, 1: 2}


def test_conic_generators_have_cycle_boundaries():
    from posetres.hcw import _boundary_of_chain
    C = load_fixture_complex("two_res_a.json", 0)
    P = incidence_poset(C)
    CC = conic_complex(P, Q)
    for (a, i), z in CC.cycles.items():
        K = P.filter_complex(a)
        assert not _boundary_of_chain(K, P.dim(a) - 1, z, Q)


def test_homogenized_conic_equals_fixture_betti():
    C = load_fixture_complex("pp_res.json", 2)
    P = incidence_poset(C)
    H = homogenize(conic_complex(P, FieldSpec(2)), P.deg)
    assert betti_table(H).entries == betti_table(C).entries
