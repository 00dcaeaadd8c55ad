"""Enumeration and orbit classification of deformable parameter tuples.

Two codes are equivalent when their defining tuples are related by a
permutation of (alpha, beta, gamma, delta), by a common left action of
SL(2, p), or by a common nonzero scalar.  Negating every pair maps a
symmetric code to the antisymmetric one on the same tuple; it is valid
in the bulk and at even lengths only, so it is carried as a flagged
generator and excluded from fixed-parity orbits (where it is redundant
anyway, since -I lies in SL(2, p)).

Orbits are computed by breadth-first closure and named by their
lexicographically least member, which is convention free and cheap at
the moduli of interest.
"""

from __future__ import annotations

from .codes import CodeParams, Pair, symplectic_product
from .conditions import theorem1_report
from .fp import check_prime

Tuple4 = tuple[Pair, Pair, Pair, Pair]

SL2_GENERATORS = (((1, 1), (0, 1)), ((0, -1), (1, 0)))


class OrbitOverflowError(RuntimeError):
    """Raised when a breadth-first orbit closure exceeds its cap."""


def nonzero_pairs(p: int) -> list[Pair]:
    return [(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]


def enumerate_deformable(p: int) -> list[Tuple4]:
    """All ordered 4-tuples of nonzero, pairwise non-proportional pairs.

    Pairwise non-proportionality is exactly the deformability condition
    (all six symplectic products nonzero).  Empty for p = 2: there are
    only three nontrivial pairs up to scale.
    """
    p = check_prime(p)
    pairs = nonzero_pairs(p)
    out = []
    for a in pairs:
        for b in pairs:
            if symplectic_product(a, b, p) == 0:
                continue
            for g in pairs:
                if symplectic_product(a, g, p) == 0 or symplectic_product(b, g, p) == 0:
                    continue
                for d in pairs:
                    if (symplectic_product(a, d, p) and symplectic_product(b, d, p)
                            and symplectic_product(g, d, p)):
                        out.append((a, b, g, d))
    return out


def primitive_root(p: int) -> int:
    """Smallest primitive root mod p (p prime)."""
    if p == 2:
        return 1
    order = p - 1
    factors = []
    n, d = order, 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    for g in range(2, p):
        if all(pow(g, order // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root found for {p}")


def _apply_matrix(t: Tuple4, M, p: int) -> Tuple4:
    return tuple(
        (((M[0][0] * a[0] + M[0][1] * a[1]) % p, (M[1][0] * a[0] + M[1][1] * a[1]) % p))
        for a in t
    )


def _apply_scalar(t: Tuple4, c: int, p: int) -> Tuple4:
    return tuple(((a[0] * c) % p, (a[1] * c) % p) for a in t)


def _swap(t: Tuple4, i: int) -> Tuple4:
    out = list(t)
    out[i], out[i + 1] = out[i + 1], out[i]
    return tuple(out)


def group_generators(p: int) -> list[tuple[str, callable, bool]]:
    """Equivalence-group generators as (name, action, bulk_only) triples.

    Adjacent transpositions generate the permutation action; the two
    SL(2, p) generators plus a primitive-root scalar generate the matrix
    action; the global negation is the bulk/even-length parity flip.
    """
    gens: list[tuple[str, callable, bool]] = []
    for i, name in ((0, "swap-alpha-beta"), (1, "swap-beta-gamma"), (2, "swap-gamma-delta")):
        gens.append((name, (lambda t, i=i: _swap(t, i)), False))
    for M in SL2_GENERATORS:
        gens.append((f"sl2-{M}", (lambda t, M=M: _apply_matrix(t, M, p)), False))
    r = primitive_root(p)
    gens.append((f"scalar-{r}", (lambda t: _apply_scalar(t, r, p)), False))
    gens.append(("parity-flip", (lambda t: _apply_scalar(t, p - 1, p)), True))
    return gens


def orbit(t: Tuple4, p: int, include_bulk: bool = False,
          cap: int | None = 10**6) -> set[Tuple4]:
    """Breadth-first closure of a tuple under the equivalence generators."""
    actions = [fn for _, fn, bulk in group_generators(p) if include_bulk or not bulk]
    seen = {t}
    frontier = [t]
    while frontier:
        nxt = []
        for u in frontier:
            for act in actions:
                v = act(u)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
                    if cap is not None and len(seen) > cap:
                        raise OrbitOverflowError(f"orbit of {t} exceeded cap {cap}")
        frontier = nxt
    return seen


def orbit_canonical(t: Tuple4, p: int, include_bulk: bool = False) -> Tuple4:
    """Lexicographically least member of the orbit (idempotent by construction)."""
    return min(orbit(t, p, include_bulk))


class OrbitCache:
    """Per-process canonical-form cache; amortizes one BFS per orbit."""

    def __init__(self, p: int):
        self.p = p
        self.cache: dict[Tuple4, Tuple4] = {}

    def canonical(self, t: Tuple4) -> Tuple4:
        hit = self.cache.get(t)
        if hit is not None:
            return hit
        orb = orbit(t, self.p)
        canon = min(orb)
        for u in orb:
            self.cache[u] = canon
        return canon


def classify_orbits(p: int, parity: str = "S",
                    canonical_map: dict[Tuple4, Tuple4] | None = None) -> dict:
    """Partition the deformable tuples at modulus p into equivalence orbits.

    Attaches the three-condition report of each orbit representative for
    the requested parity.  ``canonical_map`` may supply precomputed
    canonical forms (e.g. from a cache file or a worker pool).
    """
    tuples = enumerate_deformable(p)
    cache = OrbitCache(p)
    orbits: dict[Tuple4, int] = {}
    for t in tuples:
        canon = canonical_map.get(t) if canonical_map else None
        if canon is None:
            canon = cache.canonical(t)
        orbits[canon] = orbits.get(canon, 0) + 1
    entries = []
    for canon in sorted(orbits):
        rep = CodeParams(p, *canon, parity=parity)
        rpt = theorem1_report(rep)
        entries.append({
            "representative": [list(x) for x in canon],
            "orbit_size": orbits[canon],
            "theorem1": rpt.as_dict(),
            "parity_note": "symmetric and antisymmetric codes on this tuple are "
                           "bulk/even-length equivalent",
        })
    return {
        "p": p,
        "parity": parity,
        "deformable_count": len(tuples),
        "orbit_count": len(orbits),
        "orbits": entries,
    }


def scan_theorem1(p: int, oracle_wmax: int = 2, oracle_parity: str = "S") -> dict:
    """Split orbit representatives by the literal three-condition verdict.

    Returns the representatives passing all three conditions and, as the
    operationally meaningful list, those passing conditions 1 and 2 whose
    string bound max length <= 2w is confirmed by the segment solver up
    to width ``oracle_wmax``.
    """
    from .oracle import max_nontrivial_length

    report = classify_orbits(p, parity=oracle_parity)
    literal_pass = []
    cond12_oracle_pass = []
    for entry in report["orbits"]:
        canon = tuple(tuple(x) for x in entry["representative"])
        t1 = entry["theorem1"]
        if t1["overall"]:
            literal_pass.append(entry["representative"])
        if t1["deformability"] and t1["minimal_string"] and all(t1["minimal_string"]):
            ok = True
            widths = {}
            for w in range(1, oracle_wmax + 1):
                for kind in ("flat", "cornered"):
                    rpt = max_nontrivial_length(
                        CodeParams(p, *canon, parity=oracle_parity), w, kind=kind)
                    m = rpt.max_nontrivial_length
                    widths[f"{kind}-w{w}"] = m
                    if m is not None and m > 2 * w:
                        ok = False
            if ok:
                cond12_oracle_pass.append({
                    "representative": entry["representative"],
                    "oracle_max_lengths": widths,
                })
    return {
        "p": p,
        "orbit_count": report["orbit_count"],
        "deformable_count": report["deformable_count"],
        "literal_pass": literal_pass,
        "cond12_oracle_pass": cond12_oracle_pass,
    }


def write_canonical_cache(path, canonical_map: dict[Tuple4, Tuple4]) -> None:
    """Write one 'tuple -> canonical' line per entry (resume file for scans)."""
    with open(path, "w") as f:
        for t in sorted(canonical_map):
            f.write(_fmt(t) + " -> " + _fmt(canonical_map[t]) + "\n")


def read_canonical_cache(path) -> dict[Tuple4, Tuple4]:
    out: dict[Tuple4, Tuple4] = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            left, right = line.split("->")
            out[_parse(left)] = _parse(right)
    return out


def _fmt(t: Tuple4) -> str:
    return " ".join(f"{a},{b}" for a, b in t)


def _parse(s: str) -> Tuple4:
    parts = s.split()
    if len(parts) != 4:
        raise ValueError(f"bad tuple line: {s!r}")
    return tuple(tuple(int(x) for x in part.split(",")) for part in parts)
