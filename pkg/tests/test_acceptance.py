"""Acceptance criteria, all exact. Run with ``pytest tests/test_acceptance.py -v``;
the terminal summary prints one PASS/FAIL line per criterion."""
import itertools
import time
from contextlib import contextmanager
from importlib.resources import files

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import dense_betti, dense_cohomology, is_unimodular, sympy_factors
from strategies import (
    int_matrices,
    low_rank_matrices,
    pairs,
    relabel_perms,
    semisimplicial_sets,
    simplicial_maps,
    snc_configurations,
)
from w0 import catalog, cli, io
from w0.geometry import (
    betti_bound_report,
    bound_check,
    convolve,
    dual_complex,
    kh_complete,
    khc_pair,
    kunneth_verify,
    les_verify,
    product_config,
    reorder_components,
    resolution_nerve,
)
from w0.sscomplex import (
    cochain_complex,
    cohomology,
    cone_long_exact_sequence,
    euler_characteristic,
    relabel,
)
from w0.zlinalg import CohomologyGroup, Ring, smith_normal_form

N_PROPERTY = 1000
Z = CohomologyGroup(1)
ZERO = CohomologyGroup(0)


def corpus(name):
    return str(files("w0") / "corpus" / f"{name}.json")


@contextmanager
def under_one_second():
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0, f"took {elapsed:.3f}s"


def free_ranks(groups):
    return [g.free_rank for g in groups]


def trim(xs):
    xs = list(xs)
    while xs and xs[-1] == 0:
        xs.pop()
    return xs


# 1 -------------------------------------------------------------------------


@pytest.mark.criterion(1)
@pytest.mark.parametrize("source", ["catalog", "json"])
def test_nodal_cubic_weight_zero(source):
    with under_one_second():
        res = catalog.nodal_cubic() if source == "catalog" else io.load(corpus("nodal_cubic"))
        groups = kh_complete(resolution_nerve(res), Ring.Z)
    assert groups[:2] == [Z, Z]
    assert all(g.is_zero for g in groups[2:])


@pytest.mark.criterion(1)
def test_nodal_cubic_betti_relation():
    with under_one_second():
        report = betti_bound_report(catalog.nodal_cubic())
    row = next(r for r in report.rows if r.degree == 1)
    # two preimages of the node, one singular point
    assert (row.computed, row.predicted) == (2 - 1, 2 - 1)
    assert report.passed


# 2 -------------------------------------------------------------------------


@pytest.mark.criterion(2)
@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_configurations(n):
    with under_one_second():
        S = dual_complex(io.load(corpus(f"i{n}")))
        groups = cohomology(S, Ring.Z)
    assert groups == [Z, Z]
    assert groups == cohomology(dual_complex(catalog.cycle_config(n)), Ring.Z)


@pytest.mark.criterion(2)
def test_tetrahedral_configuration():
    with under_one_second():
        groups = cohomology(dual_complex(io.load(corpus("tetrahedron"))), Ring.Z)
    assert groups == [Z, ZERO, Z]


# 3 -------------------------------------------------------------------------


@pytest.mark.criterion(3)
def test_rp2_torsion():
    with under_one_second():
        S = io.load(corpus("rp2"))
        over_z = cohomology(S, Ring.Z)
        over_q = cohomology(S, Ring.Q)
    assert over_z[2] == CohomologyGroup(0, (2,))
    assert over_z[2].format(Ring.Z) == "Z/2"
    assert over_q[2].free_rank == 0
    # the same answer straight from dense coboundaries
    assert dense_cohomology(S.levels, S.faces)[2] == (0, (2,))


# 4 -------------------------------------------------------------------------


@pytest.mark.criterion(4)
def test_p1_minus_two_points():
    with under_one_second():
        groups = khc_pair(io.load(corpus("cstar_pair")), Ring.Z)
    assert groups[1] == Z
    assert all(g.is_zero for i, g in enumerate(groups) if i != 1)


@pytest.mark.criterion(4)
def test_p1_minus_one_point():
    with under_one_second():
        groups = khc_pair(io.load(corpus("affine_line_pair")), Ring.Z)
    assert all(g.is_zero for g in groups)


# 5 -------------------------------------------------------------------------


@pytest.mark.criterion(5)
@settings(max_examples=N_PROPERTY)
@given(semisimplicial_sets())
def test_property_d_squared_zero(S):
    C = cochain_complex(S)
    for n in range(len(C.dims) - 1):
        assert (C.d(n + 1) @ C.d(n)).is_zero()


@pytest.mark.criterion(5)
@settings(max_examples=N_PROPERTY)
@given(st.one_of(int_matrices(), low_rank_matrices()))
def test_property_smith_form(A):
    m, n = A.shape
    sf = smith_normal_form(A)
    assert sf.U @ A @ sf.V == sf.D
    assert is_unimodular(sf.U.to_rows()) and is_unimodular(sf.V.to_rows())
    diag = [sf.D[i, i] for i in range(min(m, n))]
    assert all(sf.D[i, j] == 0 for i, j, _ in sf.D.items() if i != j)
    nonzero = [d for d in diag if d]
    assert diag[: len(nonzero)] == nonzero and all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert tuple(nonzero) == sympy_factors(A.to_rows(), m, n)


@pytest.mark.criterion(5)
@settings(max_examples=N_PROPERTY)
@given(semisimplicial_sets())
def test_property_euler_characteristic(S):
    betti = free_ranks(cohomology(S, Ring.Q))
    assert euler_characteristic(S) == sum((-1) ** i * b for i, b in enumerate(betti))
    assert euler_characteristic(S) == sum((-1) ** n * c for n, c in enumerate(S.levels))


@pytest.mark.criterion(5)
@settings(max_examples=N_PROPERTY)
@given(simplicial_maps())
def test_property_cone_sequence_exact(f):
    positions = cone_long_exact_sequence(f)
    assert positions
    for pos in positions:
        assert pos.over_z.exact, (pos.name, pos.over_z.defect)
        assert pos.over_q.exact, (pos.name, pos.over_q.defect)


@pytest.mark.criterion(5)
@settings(max_examples=N_PROPERTY)
@given(st.data())
def test_property_relabeling_invariance(data):
    S = data.draw(semisimplicial_sets())
    perms = data.draw(relabel_perms(S))
    R = relabel(S, perms)
    for ring in Ring:
        assert cohomology(R, ring) == cohomology(S, ring)


@pytest.mark.criterion(5)
@settings(max_examples=N_PROPERTY)
@given(st.data())
def test_property_component_reordering_invariance(data):
    cfg = data.draw(snc_configurations())
    order = data.draw(st.permutations(range(len(cfg.components))))
    before = dual_complex(cfg)
    after = dual_complex(reorder_components(cfg, order))
    assert after.levels == before.levels
    for ring in Ring:
        assert cohomology(after, ring) == cohomology(before, ring)


# 6 -------------------------------------------------------------------------

KUNNETH_FACTORS = {
    "point": catalog.point_config,
    "banana": catalog.banana,
    "I_3": lambda: catalog.cycle_config(3),
    "I_4": lambda: catalog.cycle_config(4),
    "tetrahedron": catalog.tetrahedron,
}


def _oracle_ranks(cfg):
    S = dual_complex(cfg)
    return dense_betti(S.levels, S.faces)


@pytest.mark.criterion(6)
@pytest.mark.parametrize("a,b", list(itertools.product(KUNNETH_FACTORS, repeat=2)))
def test_kunneth(a, b):
    A, B = KUNNETH_FACTORS[a](), KUNNETH_FACTORS[b]()
    with under_one_second():
        report = kunneth_verify(A, B)
    assert report.passed, [r for r in report.rows if not r.passed]
    expected = trim(convolve(_oracle_ranks(A), _oracle_ranks(B)))
    assert trim(r.computed for r in report.rows) == expected
    assert trim(_oracle_ranks(product_config(A, B))) == expected


@pytest.mark.criterion(6)
def test_kunneth_banana_squared():
    ranks = free_ranks(cohomology(dual_complex(product_config(catalog.banana(), catalog.banana())), Ring.Q))
    assert trim(ranks) == [1, 2, 1]


# 7 -------------------------------------------------------------------------


@pytest.mark.criterion(7)
@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_smooth_resolution_axiom(k):
    with under_one_second():
        groups = kh_complete(resolution_nerve(catalog.smooth(k)), Ring.Z)
    assert groups[0] == CohomologyGroup(k)
    assert all(g.is_zero for g in groups[1:])


@pytest.mark.criterion(7)
@settings(max_examples=N_PROPERTY)
@given(pairs())
def test_pair_sequence_axiom(p):
    report = les_verify(p)
    assert report.exact, [r for r in report.rows() if not (r["exact_Q"] and r["exact_Z"])]


# 8 -------------------------------------------------------------------------


@pytest.mark.criterion(8)
def test_bound_check_nodal_cubic():
    with under_one_second():
        kh = free_ranks(kh_complete(resolution_nerve(catalog.nodal_cubic()), Ring.Q))
        report = bound_check(kh, [1, 1])
    assert report.passed
    assert cli.main(["bound-check", corpus("nodal_cubic"), "--h", "1,1"]) == cli.OK
    assert cli.main(["bound-check", corpus("nodal_cubic_bounds")]) == cli.OK


@pytest.mark.criterion(8)
def test_bound_check_flags_inconsistent_input(capsys):
    status = cli.main(["bound-check", corpus("inconsistent_bounds")])
    out = capsys.readouterr().out
    assert status == cli.VERIFY_FAILED == 2
    assert "FAIL" in out
