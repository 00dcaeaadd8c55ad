"""Segment solver: constraint systems, scans, reduction, flattening."""

import random
from fractions import Fraction

import numpy as np
import pytest

from qupitcube import fp
from qupitcube.codes import CodeParams, PauliConfig, d3_code, d5_code, generator_config
from qupitcube.conditions import PrerequisiteError, base_matrix, rel_transition
from qupitcube.oracle import (
    DegenerateGeometryError,
    FlattenError,
    PivotError,
    SegmentGeometry,
    build_segment_constraints,
    canonical_reduction,
    flatten_segment,
    geometries,
    in_box_cubes,
    is_stabilizer_combination,
    kink_profile,
    max_nontrivial_length,
    solve_segment,
    verify_witness,
    width1_criterion,
)
from conftest import random_code

P2_TUPLE = CodeParams(2, (1, 0), (0, 1), (1, 1), (1, 0))


def test_constraint_matrix_shapes():
    d3 = d3_code()
    for w, l in ((1, 2), (2, 3), (3, 5), (2, 8)):
        geom = SegmentGeometry("flat", w, l, (0, 1))
        system = build_segment_constraints(d3, geom)
        assert system.matrix.shape == (2 * (w + 1) * (l - 1), 2 * w * l)


def test_width1_system_matches_block_form():
    # the four rows of the w=1, l=2 system are the displayed 2x2 block
    # matrix [[T_gb, T_da], [T_da, T_gb]], up to row order, for symmetric codes
    for code in (d3_code("S"), d5_code("S")):
        p = code.p
        a, b, g, d = code.pairs
        system = build_segment_constraints(code, SegmentGeometry("flat", 1, 2, (0, 1)))
        t_gb = base_matrix(g, b, p)
        t_da = base_matrix(d, a, p)
        block = np.block([[t_gb, t_da], [t_da, t_gb]]) % p
        mine = sorted(map(tuple, system.matrix.tolist()))
        theirs = sorted(map(tuple, block.tolist()))
        assert mine == theirs


def test_degenerate_geometries():
    with pytest.raises(DegenerateGeometryError):
        SegmentGeometry("flat", 1, 1, (0, 1))
    with pytest.raises(DegenerateGeometryError):
        SegmentGeometry("flat", 0, 3, (0, 1))
    with pytest.raises(DegenerateGeometryError):
        SegmentGeometry("cornered", 2, 3, (0, 1), corner_at=2)
    with pytest.raises(DegenerateGeometryError):
        SegmentGeometry("cornered", 1, 3, (0, 1), corner_at=None)
    with pytest.raises(ValueError):
        SegmentGeometry("flat", 2, 3, (1, 1))


def test_solve_segment_reference_codes():
    d3 = d3_code()
    sol = solve_segment(d3, SegmentGeometry("flat", 1, 3, (1, 0)))
    assert sol.nullspace_dim == 0 and not sol.nontrivial and sol.witness is None

    # width-1 strings exist for the degenerate p=2 tuple at every length
    for length in (2, 4, 8):
        assert any(solve_segment(P2_TUPLE, g).nontrivial
                   for g in geometries(1, length, "flat"))


def test_scan_bounds_quick():
    for parity in "SA":
        for variant in (0, 1):
            d3 = d3_code(parity, variant=variant)
            for w in (1, 2, 3):
                for kind in ("flat", "cornered"):
                    rpt = max_nontrivial_length(d3, w, kind=kind)
                    if rpt.max_nontrivial_length is not None:
                        assert rpt.max_nontrivial_length <= w + 1
    for parity in "SA":
        d5 = d5_code(parity)
        for w in (1, 2):
            for kind in ("flat", "cornered"):
                rpt = max_nontrivial_length(d5, w, kind=kind)
                if rpt.max_nontrivial_length is not None:
                    assert rpt.max_nontrivial_length <= 2 * w


def test_scan_unbounded_for_degenerate_tuple():
    l_max = 9
    rpt = max_nontrivial_length(P2_TUPLE, 1, l_max=l_max)
    assert rpt.max_nontrivial_length == l_max       # grows with the scan horizon
    assert rpt.nontrivial_lengths == list(range(2, l_max + 1))
    assert rpt.aspect_ratio == Fraction(l_max, 1)
    assert rpt.witness is not None


def test_scan_monotonicity():
    for code, w, kind in ((d5_code(), 3, "cornered"), (d3_code(), 3, "flat"),
                          (P2_TUPLE, 1, "flat")):
        rpt = max_nontrivial_length(code, w, kind=kind)
        found = set(rpt.nontrivial_lengths)
        for l in found:
            if l > 2:
                assert l - 1 in found


def test_width1_cornered_scan_is_empty():
    rpt = max_nontrivial_length(d3_code(), 1, kind="cornered")
    assert rpt.max_nontrivial_length is None and rpt.nullspace_dims == {}


def test_witness_reverification():
    rng = random.Random(59)
    checked = 0
    for _ in range(120):
        p = rng.choice((2, 3, 5))
        code = random_code(rng, p)
        kind = rng.choice(("flat", "cornered"))
        w = rng.randrange(1, 3) if kind == "flat" else 2
        geom = SegmentGeometry(kind, w, rng.randrange(2, 5),
                               rng.choice(((0, 1), (1, 2), (2, 0))),
                               corner_at=1 if kind == "cornered" else None)
        sol = solve_segment(code, geom)
        if sol.witness is not None:
            assert verify_witness(code, geom, sol.witness)
            checked += 1
    assert checked >= 20


def test_positive_dimension_when_deformability_fails_on_an_edge():
    # a proportional pair leaves a direction with an underdetermined chain
    cases = [
        P2_TUPLE,
        CodeParams(3, (1, 0), (0, 1), (1, 1), (2, 0)),   # delta ~ alpha
        CodeParams(5, (1, 0), (0, 1), (1, 1), (2, 2)),   # delta ~ gamma
    ]
    for code in cases:
        for length in (2, 4, 6):
            assert any(solve_segment(code, g).nullspace_dim > 0
                       for g in geometries(1, length, "flat"))


def test_canonical_reduction_matches_solver():
    for code in (d3_code(), d5_code("A")):
        for w in (1, 2, 3):
            for l in (2, 3, 5, 6):
                red = canonical_reduction(code, w, l)
                sol = solve_segment(code, SegmentGeometry("flat", w, l, (0, 1)))
                assert red.nullspace_dim == sol.nullspace_dim
                assert red.agrees_with_direct
                assert red.krylov_bound_ok


def test_canonical_reduction_width1_blocks():
    # the eliminated w=1, l=2 system carries the relative transition block
    for code in (d3_code("S"), d5_code("S")):
        p = code.p
        a, b, g, d = code.pairs
        red = canonical_reduction(code, 1, 2)
        t_named = rel_transition((d, a), (g, b), p)
        assert (red.transfer_blocks[0] == t_named).all()
        residual_named = (rel_transition((g, b), (d, a), p) - t_named) % p
        assert fp.mat_rank(red.residual, p) == fp.mat_rank(residual_named, p)


def test_canonical_reduction_cornered():
    red = canonical_reduction(d5_code(), 3, 4, kind="cornered", corner_at=1)
    sol = solve_segment(d5_code(), SegmentGeometry("cornered", 3, 4, (0, 1), 1))
    assert red.nullspace_dim == sol.nullspace_dim


def test_canonical_reduction_pivot_failure():
    degenerate = CodeParams(2, (1, 0), (1, 0), (1, 0), (1, 0))
    with pytest.raises(PivotError):
        canonical_reduction(degenerate, 1, 3)


def test_width1_criterion_agreement():
    out = width1_criterion(d3_code())
    assert all(out["det_nonzero"]) and all(out["oracle_no_string"])
    assert out["aggregate_agreement"] and out["multiset_agreement"]
    assert out["polarity"] == "det-nonzero-implies-no-string"
    with pytest.raises(PrerequisiteError):
        width1_criterion(P2_TUPLE)


def test_flatten_already_flat():
    d5 = d5_code()
    box = (2, 2, 3)
    cfg = PauliConfig(5)
    for q in sorted(kink_profile(box))[:3]:
        cfg.add(q, (1, 2))
    assert flatten_segment(d5, cfg, box) == cfg


def test_flatten_stabilizer_product():
    d5 = d5_code()
    box = (3, 3, 3)
    prod = generator_config(d5, (0, 0, 0)).mul(generator_config(d5, (1, 1, 1)))
    flat = flatten_segment(d5, prod, box)
    profile = kink_profile(box)
    assert all(q in profile for q in flat.support)
    diff = flat.mul(prod.scale(5 - 1))
    assert is_stabilizer_combination(d5, diff, box)


def test_flatten_two_by_two_box():
    rng = random.Random(61)
    d5 = d5_code()
    box = (2, 2, 4)
    cfg = PauliConfig(5)
    for c in in_box_cubes(box):
        k = rng.randrange(5)
        if k:
            cfg = cfg.mul(generator_config(d5, c).scale(k))
    profile = sorted(kink_profile(box))
    for q in profile[:4]:
        cfg.add(q, (rng.randrange(5), rng.randrange(5)))
    flat = flatten_segment(d5, cfg, box)
    assert not flat.is_identity()
    assert all(q in kink_profile(box) for q in flat.support)
    diff = flat.mul(cfg.scale(5 - 1))
    assert is_stabilizer_combination(d5, diff, box)


def test_flatten_blocking_site():
    cfg = PauliConfig(2)
    cfg.add((0, 1, 1), (1, 0))
    with pytest.raises(FlattenError) as err:
        flatten_segment(P2_TUPLE, cfg, (2, 2, 3))
    assert err.value.site is not None

    outside = PauliConfig(2)
    outside.add((5, 5, 5), (1, 0))
    with pytest.raises(ValueError):
        flatten_segment(P2_TUPLE, outside, (2, 2, 3))


def test_report_serialization():
    rpt = max_nontrivial_length(d3_code(), 2, l_max=4)
    d = rpt.as_dict()
    assert d["width"] == 2 and set(d["nullspace_dims"]) == {"2", "3", "4"}
