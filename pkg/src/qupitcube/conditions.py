"""Transition matrices and the three algebraic no-string conditions.

For two symplectic pairs A and C the base matrix is

    T(A, C) = [[A1, -A2],
               [C1, -C2]],        det T(A, C) = <C, A>.

Relative transition matrices T(num | den) = T(den)^-1 T(num) propagate
the unknown boundary pair of a string segment from one site to the next.
A code admits no width-1 string segment in a given direction when
det(T - T^-1) != 0 for that direction's transition matrix, and no string
of any width when additionally all squared symplectic products of
complementary pairings differ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import fp
from .codes import CodeParams, Pair, symplectic_product


class SingularDenominatorError(ValueError):
    """Raised when a transition denominator pair is symplectically degenerate."""


class PrerequisiteError(ValueError):
    """Raised when a check is asked for a code that fails deformability."""


PAIR_NAMES = ("alpha", "beta", "gamma", "delta")

# The three direction-resolved transition matrices for the width-1 test,
# as (numerator pair indices, denominator pair indices) into
# (alpha, beta, gamma, delta).
WIDTH1_TRANSITIONS = (
    ((3, 0), (2, 1)),   # T(delta alpha | gamma beta)
    ((0, 1), (3, 2)),   # T(alpha beta  | delta gamma)
    ((0, 3), (2, 1)),   # T(alpha delta | gamma beta)
)

# Complementary pairings for the squared-product condition.
PAIRINGS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def base_matrix(a: Pair, c: Pair, p: int) -> np.ndarray:
    """[[a1, -a2], [c1, -c2]] mod p."""
    return np.array([[a[0], -a[1]], [c[0], -c[1]]], dtype=np.int64) % p


def rel_transition(num: tuple[Pair, Pair], den: tuple[Pair, Pair], p: int) -> np.ndarray:
    """T(num | den) = T(den)^-1 T(num).

    Requires <den[0], den[1]> != 0; raises SingularDenominatorError
    otherwise.
    """
    if symplectic_product(den[0], den[1], p) == 0:
        raise SingularDenominatorError(
            f"denominator pairs {den} are proportional mod {p}")
    den_m = base_matrix(den[0], den[1], p)
    num_m = base_matrix(num[0], num[1], p)
    return fp.mat_mul(fp.mat_inverse(den_m, p), num_m, p)


def check_deformability(params: CodeParams) -> bool:
    """All six pairwise symplectic products among the four pairs nonzero."""
    return all(
        symplectic_product(a, b, params.p) != 0
        for a, b in combinations(params.pairs, 2)
    )


def width1_matrices(params: CodeParams) -> list[np.ndarray]:
    """The three direction transition matrices entering the width-1 test."""
    pairs = params.pairs
    out = []
    for (n0, n1), (d0, d1) in WIDTH1_TRANSITIONS:
        out.append(rel_transition((pairs[n0], pairs[n1]), (pairs[d0], pairs[d1]), params.p))
    return out


def minimal_string_determinants(params: CodeParams) -> list[int]:
    """det(T - T^-1) for each of the three direction matrices."""
    p = params.p
    dets = []
    for T in width1_matrices(params):
        diff = (T - fp.mat_inverse(T, p)) % p
        dets.append(fp.mat_det(diff, p))
    return dets


def check_no_minimal_string(params: CodeParams) -> tuple[bool, bool, bool]:
    """Per-direction flags: True when det(T - T^-1) != 0 (no width-1 string).

    Deformability is a prerequisite (it guarantees every inverse taken
    here exists); PrerequisiteError otherwise.
    """
    if not check_deformability(params):
        raise PrerequisiteError("code fails deformability; width-1 test undefined")
    return tuple(d != 0 for d in minimal_string_determinants(params))


def pairing_squares(params: CodeParams) -> list[dict]:
    """Squared symplectic products of the three complementary pairings.

    Each entry records the mod-p squares, the literal mod-p verdict, and
    the alternative integer-representative reading (squares compared in Z
    using representatives in [0, p)).  Only the mod-p verdict feeds the
    aggregate condition.
    """
    p = params.p
    pairs = params.pairs
    out = []
    for (i, j), (k, l) in PAIRINGS:
        u = symplectic_product(pairs[i], pairs[j], p)
        v = symplectic_product(pairs[k], pairs[l], p)
        out.append({
            "pairing": f"{PAIR_NAMES[i]}{PAIR_NAMES[j]}|{PAIR_NAMES[k]}{PAIR_NAMES[l]}",
            "products": (u, v),
            "squares_mod_p": ((u * u) % p, (v * v) % p),
            "distinct_mod_p": (u * u) % p != (v * v) % p,
            "distinct_integer": u * u != v * v,
        })
    return out


def check_pairing_squares(params: CodeParams) -> tuple[bool, bool, bool]:
    """Per-pairing flags of the squared-product condition, mod-p reading."""
    return tuple(e["distinct_mod_p"] for e in pairing_squares(params))


@dataclass
class TheoremReport:
    """Aggregate verdict of the three no-string conditions, with audit data."""

    deformability: bool
    minimal_string: tuple[bool, bool, bool] | None
    squares: tuple[bool, bool, bool]
    overall: bool
    details: dict = field(default_factory=dict)
    discrepancies: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "deformability": self.deformability,
            "minimal_string": list(self.minimal_string) if self.minimal_string else None,
            "squares": list(self.squares),
            "overall": self.overall,
            "details": self.details,
            "discrepancies": self.discrepancies,
        }


def theorem1_report(params: CodeParams) -> TheoremReport:
    """Evaluate all three conditions with every intermediate scalar recorded.

    ``overall`` is the conjunction; codes failing deformability short out
    the width-1 determinants (they are not defined there).  A pairing
    whose mod-p and integer readings disagree is listed as a discrepancy
    rather than silently resolved.
    """
    p = params.p
    prods = {
        f"{PAIR_NAMES[i]}{PAIR_NAMES[j]}": symplectic_product(params.pairs[i], params.pairs[j], p)
        for i, j in combinations(range(4), 2)
    }
    deform = check_deformability(params)
    squares_detail = pairing_squares(params)
    squares = tuple(e["distinct_mod_p"] for e in squares_detail)
    discrepancies = [
        {"kind": "condition3-reading-mismatch", "pairing": e["pairing"],
         "mod_p": e["distinct_mod_p"], "integer": e["distinct_integer"]}
        for e in squares_detail if e["distinct_mod_p"] != e["distinct_integer"]
    ]
    details = {"symplectic_products": prods, "pairing_squares": squares_detail}
    if deform:
        dets = minimal_string_determinants(params)
        minimal = tuple(d != 0 for d in dets)
        details["width1_determinants"] = dets
    else:
        minimal = None
        details["width1_determinants"] = None
    overall = deform and minimal is not None and all(minimal) and all(squares)
    return TheoremReport(deform, minimal, squares, overall, details, discrepancies)


def corner_determinant_check(params: CodeParams) -> dict:
    """Evaluate the corner transition block and its claimed determinant.

    T_int = T(delta 0 | gamma alpha) - T(beta delta | gamma alpha) T(alpha 0 | gamma alpha),
    where the zero-row base matrices are formed literally and never
    inverted.  The claimed closed form <a,g><a,d><d,a> is evaluated
    alongside the computed determinant; callers surface a mismatch as a
    discrepancy instead of asserting it.
    """
    p = params.p
    a, b, g, d = params.pairs
    zero: Pair = (0, 0)
    den = (g, a)
    t_d0 = rel_transition((d, zero), den, p)
    t_bd = rel_transition((b, d), den, p)
    t_a0 = rel_transition((a, zero), den, p)
    t_int = (t_d0 - fp.mat_mul(t_bd, t_a0, p)) % p
    det = fp.mat_det(t_int, p)
    ag = symplectic_product(a, g, p)
    ad = symplectic_product(a, d, p)
    da = symplectic_product(d, a, p)
    claimed = (ag * ad * da) % p
    return {
        "computed_det": det,
        "claimed_det": claimed,
        "match": det == claimed,
        "nonzero": det != 0 and claimed != 0,
    }
