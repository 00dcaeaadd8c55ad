"""Transition matrices and the three no-string conditions."""

import random

import numpy as np
import pytest

from qupitcube import fp
from qupitcube.codes import CodeParams, d3_code, d5_code, symplectic_product
from qupitcube.conditions import (
    PrerequisiteError,
    SingularDenominatorError,
    base_matrix,
    check_deformability,
    check_no_minimal_string,
    check_pairing_squares,
    corner_determinant_check,
    minimal_string_determinants,
    pairing_squares,
    rel_transition,
    theorem1_report,
)
from qupitcube.classify import group_generators
from conftest import random_deformable_tuple, random_pair


def test_base_matrix_examples():
    assert (base_matrix((1, 0), (1, 1), 5) == [[1, 0], [1, 4]]).all()
    assert fp.mat_det(base_matrix((1, 0), (2, 0), 5), 5) == 0  # proportional rows
    assert (base_matrix((0, 1), (1, 1), 3) == [[0, 2], [1, 2]]).all()


def test_base_matrix_determinant_convention():
    # det T(A, C) = <C, A>, uniformly
    rng = random.Random(41)
    for p in (3, 5, 7):
        for _ in range(350):
            a, c = random_pair(rng, p), random_pair(rng, p)
            assert fp.mat_det(base_matrix(a, c, p), p) == symplectic_product(c, a, p)


def test_rel_transition_identities():
    rng = random.Random(43)
    for p in (3, 5, 7):
        for _ in range(350):
            t = random_deformable_tuple(rng, p)
            a, b, g, d = t
            assert (rel_transition((a, g), (a, g), p) == np.eye(2, dtype=int)).all()
            # chain rule: the left factor's numerator is the right factor's
            # denominator, and the outer pairs survive
            t1 = rel_transition((g, d), (a, b), p)
            t2 = rel_transition((b, a), (g, d), p)
            assert (fp.mat_mul(t1, t2, p) == rel_transition((b, a), (a, b), p)).all()
            xy = rel_transition((a, b), (g, d), p)
            assert (fp.mat_inverse(xy, p) == rel_transition((g, d), (a, b), p)).all()
            # swapping both rows of numerator and denominator changes nothing
            assert (xy == rel_transition((b, a), (d, g), p)).all()


def test_rel_transition_singular_denominator():
    with pytest.raises(SingularDenominatorError):
        rel_transition(((1, 0), (0, 1)), ((1, 1), (2, 2)), 5)


def test_deformability_examples():
    # every nonzero 4-tuple at p = 2 fails
    pairs2 = [(1, 0), (0, 1), (1, 1)]
    for a in pairs2:
        for b in pairs2:
            for g in pairs2:
                for d in pairs2:
                    code = CodeParams(2, a, b, g, d)
                    assert not check_deformability(code)

    d5 = d5_code()
    assert check_deformability(d5)
    prods = [symplectic_product(x, y, 5)
             for i, x in enumerate(d5.pairs) for y in d5.pairs[i + 1:]]
    assert prods == [1, 1, 2, 4, 2, 4]

    assert not check_deformability(CodeParams(5, (1, 0), (0, 1), (1, 1), (1, 1)))


def test_minimal_string_examples():
    assert check_no_minimal_string(d3_code()) == (True, True, True)
    # evaluated exactly; frozen after a solver cross-check at width 1
    d5 = d5_code()
    assert check_no_minimal_string(d5) == (True, True, True)
    with pytest.raises(PrerequisiteError):
        check_no_minimal_string(CodeParams(2, (1, 0), (0, 1), (1, 1), (1, 0)))


def test_involution_gives_zero_determinant():
    # an involution T = T^-1 makes T - T^-1 vanish identically
    T = np.array([[0, 1], [1, 0]], dtype=np.int64)
    p = 5
    diff = (T - fp.mat_inverse(T, p)) % p
    assert fp.mat_det(diff, p) == 0


def test_pairing_squares_examples():
    assert check_pairing_squares(d3_code()) == (False, False, False)

    d5 = d5_code()
    flags = check_pairing_squares(d5)
    detail = pairing_squares(d5)
    assert flags == (False, True, True)
    assert detail[0]["pairing"] == "alphabeta|gammadelta"
    assert detail[0]["squares_mod_p"] == (1, 1)      # 1^2 = 4^2 mod 5
    assert detail[0]["distinct_integer"] is True     # 1 != 16 in Z

    # <a,b> = 2 and <g,d> = 3 at p = 7: squares 4 vs 2 differ
    code7 = CodeParams(7, (1, 0), (0, 2), (1, 1), (4, 0))
    assert symplectic_product(code7.alpha, code7.beta, 7) == 2
    assert symplectic_product(code7.gamma, code7.delta, 7) == 3
    assert check_pairing_squares(code7)[0] is True
    assert pairing_squares(code7)[0]["squares_mod_p"] == (4, 2)


def test_theorem1_report_aggregation():
    rpt2 = theorem1_report(CodeParams(2, (1, 0), (0, 1), (1, 1), (1, 0)))
    assert not rpt2.deformability and rpt2.minimal_string is None
    assert rpt2.overall is False

    rpt3 = theorem1_report(d3_code())
    assert rpt3.deformability and all(rpt3.minimal_string)
    assert not all(rpt3.squares) and rpt3.overall is False

    rpt5 = theorem1_report(d5_code())
    assert rpt5.deformability and all(rpt5.minimal_string)
    assert rpt5.squares == (False, True, True)
    kinds = {d["kind"] for d in rpt5.discrepancies}
    assert "condition3-reading-mismatch" in kinds


def test_deformability_invariant_under_group():
    rng = random.Random(47)
    for p in (3, 5):
        gens = [fn for _, fn, bulk in group_generators(p) if not bulk]
        for _ in range(150):
            t = random_deformable_tuple(rng, p)
            g = rng.choice(gens)
            assert check_deformability(CodeParams(p, *g(t)))


def test_overall_verdict_orbit_invariant_sample():
    rng = random.Random(53)
    for p in (3, 5):
        gens = [fn for _, fn, bulk in group_generators(p) if not bulk]
        for _ in range(100):
            t = random_deformable_tuple(rng, p)
            base = theorem1_report(CodeParams(p, *t)).overall
            u = t
            for _ in range(rng.randrange(1, 5)):
                u = rng.choice(gens)(u)
            assert theorem1_report(CodeParams(p, *u)).overall == base


def test_corner_determinant_check_reference_codes():
    for code in (d3_code(), d5_code()):
        out = corner_determinant_check(code)
        assert out["nonzero"]
        assert {"computed_det", "claimed_det", "match"} <= set(out)


def test_minimal_string_determinants_are_recorded():
    d3 = d3_code()
    dets = minimal_string_determinants(d3)
    assert len(dets) == 3 and all(0 <= d < 3 for d in dets)
    rpt = theorem1_report(d3)
    assert rpt.details["width1_determinants"] == dets
