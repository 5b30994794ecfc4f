from math import comb

import pytest

from diamfree.diamgraph import lattice_graph
from diamfree.families import (M_exact, S, T, U, V2, W2, X, X_recursive, Y, Y_recursive, Z, Z_recursive, Family,
                               bound_table, frak_M, frak_M_general, recursive_family, recursive_family_size,
                               script_S1, script_S2)
from diamfree.lattice import Signature, TritVector, generate, squared_distance, zero_column_counts
from diamfree.solver import enumerate_maximum, independence_number
from diamfree.verify import averaging_holds


def test_frak_m_values():
    assert [frak_M(k) for k in range(1, 7)] == [6, 12, 22, 37, 58, 86]
    assert frak_M(0) == 3  # edge value used by the t = 6 bound
    with pytest.raises(ValueError):
        frak_M(-1)


@pytest.mark.parametrize("k", range(1, 7))
def test_s_sizes_and_hockey_stick(k):
    for i in range(1, k + 3):
        assert len(S(k, i)) == comb(k + 3 - i, 2)
    assert len(T(k, k + 1)) == 2
    assert sum(len(S(k, i)) for i in range(1, k + 2)) + len(T(k, k + 1)) == frak_M(k)


def test_index_range_errors():
    with pytest.raises(ValueError):
        S(2, 0)
    with pytest.raises(ValueError):
        T(2, 5)
    with pytest.raises(ValueError):
        U(2, 1)
    with pytest.raises(ValueError):
        Z(1)
    with pytest.raises(ValueError):
        script_S2(2)


@pytest.mark.parametrize("k", range(1, 7))
def test_xyz_sizes_and_diameter(k):
    fams = [X(k), Y(k)] + ([Z(k)] if k >= 2 else [])
    g = lattice_graph(Signature(1, k, 2))
    idx = g.index()
    for f in fams:
        assert len(f) == frak_M(k)
        assert f.max_squared_distance() <= 8
        assert g.is_independent(idx[x] for x in f)


@pytest.mark.parametrize("k", range(1, 7))
def test_direct_and_recursive_constructions_agree(k):
    assert X(k) == X_recursive(k)
    assert Y(k) == Y_recursive(k)
    if k >= 2:
        assert Z(k) == Z_recursive(k)


def test_y1_is_t11():
    assert list(Y(1)) == [x for x in generate(Signature(1, 1, 2)) if x[0] == 1]
    assert len(Y(1)) == 6


def test_v2_w2():
    g = lattice_graph(Signature(1, 2, 2))
    idx = g.index()
    for f in (V2(), W2()):
        assert len(f) == 11
        assert g.is_independent(idx[x] for x in f)
        rest = [x for x in g.vertices if x not in f]
        assert len(rest) == 19
        assert not any(all(squared_distance(x, y) < 10 for y in f) for x in rest)


def test_m_exact_examples():
    assert M_exact(Signature(2, 1, 2)).value == 15
    assert M_exact(Signature(1, 1, 2)).value == 6 == frak_M(1)
    assert M_exact(Signature(1, 5, 2)).value == 58
    assert M_exact(Signature(2, 5, 1)).value == 58  # M_mkl = M_lkm
    assert M_exact(Signature(1, 3, 3)) is None
    assert M_exact(Signature(0, 0, 1)) is None


@pytest.mark.parametrize("sig", [s for s, e in bound_table(7).items() if e.kind == "exact"
                                 and s.cardinality() <= 140], ids=str)
def test_exact_entries_match_solver(sig):
    g = lattice_graph(sig)
    assert independence_number(g).alpha == M_exact(sig).value


@pytest.mark.parametrize("sig", [(1, 0, 1), (1, 1, 1)])
def test_antipodal_structure(sig):
    g = lattice_graph(Signature(*sig))
    res = enumerate_maximum(g)
    for f in res.enumerated:
        assert all((x in f) != (-x in f) for x in g.vertices)
    assert len(res.enumerated) == 2 ** (g.order // 2)


def test_bound_table_records_both_range_readings():
    table = bound_table(7)
    entry = table[Signature(1, 3, 3)]
    assert entry.kind == "lower_bound" and entry.value == len(recursive_family(1, 3, 3))
    assert entry.meta["formula"] == 38
    assert entry.meta["open_range"] == [3, 0] and entry.meta["open_range_as_printed"] == [-1, 0]


@pytest.mark.parametrize("k", range(1, 7))
def test_general_formula_reduces_to_frak_m(k):
    assert frak_M_general(1, k, 2) == frak_M(k)
    assert len(recursive_family(1, k, 2)) == frak_M(k)


def test_general_formula_value_133():
    assert frak_M_general(1, 3, 3) == comb(3, 0) * comb(7, 4) + comb(3, 1) == 38


@pytest.mark.parametrize("sig", [(1, 3, 3), (1, 2, 3), (1, 4, 3), (2, 1, 3), (1, 3, 4), (2, 2, 3)])
def test_recursive_family_avoids_diameter(sig):
    F = recursive_family(*sig)
    g = lattice_graph(Signature(*sig))
    assert F.max_squared_distance() < g.diameter_sq
    assert len(F) == recursive_family_size(*sig)
    assert len(F) >= frak_M_general(*sig)


def test_recursive_family_beats_the_formula_off_l_equals_m_plus_1():
    # the construction's size exceeds the closed formula when l > m + 1
    assert len(recursive_family(1, 3, 3)) == 50 > frak_M_general(1, 3, 3)
    assert len(recursive_family(1, 2, 3)) == 30 == M_exact(Signature(1, 2, 3)).value


def test_recursive_family_range_errors():
    with pytest.raises(ValueError):
        recursive_family(2, 1, 2)
    with pytest.raises(ValueError):
        recursive_family(1, 1, 3)


@pytest.mark.parametrize("k", [4, 5])
def test_averaging_on_recursive_family(k):
    F = recursive_family(1, k, 2)
    assert k >= 1 * comb(3, 1) - 1 - 2 + 1
    assert max(zero_column_counts(F)[0]) >= frak_M_general(1, k - 1, 2)
    assert averaging_holds([F], k)[1]


def test_script_sets():
    assert all(x[0] == 1 and x[2] == 1 for x in script_S1(3))
    s2 = script_S2(3)
    assert {str(x) for x in s2} == {"++-000", "++0-00", "++00-0", "++000-"}


def test_family_json_roundtrip():
    f = X(3)
    text = f.dumps()
    g = Family.loads(text)
    assert g == f and g.dumps() == text
    assert f.to_dict()["signature"] == [1, 3, 2]


def test_family_validation():
    with pytest.raises(ValueError):
        Family.of("bad", [TritVector.parse("-0+")], Signature(1, 1, 2))
    f = Family.of("dup", ["-0++", "-0++", "0-++"])
    assert len(f) == 2 and f.signature == Signature(1, 1, 2)
