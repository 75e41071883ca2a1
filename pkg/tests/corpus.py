"""Deterministic matrix corpus shared by the oracle and acceptance suites.

Matrices are identified with multisets of sign-canonical primitive rows (row
order and per-row signs never change the discriminant), so the corpus is
deduplicated by construction:

* n = 1: the all-ones columns for every N up to the size cap.
* n = 2: every multiset of rows drawn from the canonical primitive vectors
  with entries in [-2, 2] (8 of them), exhaustively.
* n = 3: every multiset of size <= 4 from the canonical primitive vectors
  with entries in [-1, 1] (13 of them), plus a seeded sample of size-5/6
  multisets from the full [-2, 2] pool (49 vectors).
"""

import itertools
import random
from math import gcd

from hkit.arrangement import build_discriminant, group_hyperplanes, stabilizer_rank
from hkit.hypertoric import HypertoricData
from hkit.intmat import IntMatrix, canonical_primitive, rank, smith_normal_form
from hkit.errors import HkitError

SAMPLE_SEED = 2024
SAMPLES_PER_SIZE = 150


def primitive_vectors(n, bound):
    """Canonical (positive leading entry) primitive vectors, sorted."""
    out = set()
    for v in itertools.product(range(-bound, bound + 1), repeat=n):
        if any(v):
            g = 0
            for x in v:
                g = gcd(g, x)
            if g == 1:
                out.add(canonical_primitive(v))
    return sorted(out)


def _multisets(pool, size):
    return itertools.combinations_with_replacement(pool, size)


def corpus_matrices(max_n=3, max_N=6):
    """Yield the deduplicated corpus as IntMatrix values (deterministic order)."""
    if max_n >= 1:
        for N in range(1, max_N + 1):
            yield IntMatrix([[1]] * N)
    if max_n >= 2:
        pool = primitive_vectors(2, 2)
        for N in range(1, max_N + 1):
            for rows in _multisets(pool, N):
                yield IntMatrix(rows, cols=2)
    if max_n >= 3:
        small_pool = primitive_vectors(3, 1)
        for N in range(1, min(4, max_N) + 1):
            for rows in _multisets(small_pool, N):
                yield IntMatrix(rows, cols=3)
        full_pool = primitive_vectors(3, 2)
        rng = random.Random(SAMPLE_SEED)
        for N in range(5, max_N + 1):
            seen = set()
            while len(seen) < SAMPLES_PER_SIZE:
                rows = tuple(sorted(rng.choice(full_pool) for _ in range(N)))
                seen.add(rows)
            for rows in sorted(seen):
                yield IntMatrix(rows, cols=3)


def valid_hypertoric(matrices):
    """Filter to HypertoricData-valid matrices, yielding the validated bundles."""
    for B in matrices:
        try:
            yield HypertoricData.from_matrix(B)
        except HkitError:
            continue


def probe_discriminant(B):
    """Stabilizer-probing oracle for the central discriminant (multiplicity =
    number of rows vanishing at a generic point of each candidate wall)."""
    n = B.cols
    candidates = sorted({canonical_primitive(B.row(i)) for i in range(B.rows)})
    reference = group_hyperplanes(n, ((c, 0) for c in candidates))
    built = build_discriminant(B)
    out = {}
    for idx, cand in enumerate(candidates):
        eta = _point_on(reference, idx)
        r, normals = stabilizer_rank(built, eta)
        if r != 1 or normals != [cand]:
            raise AssertionError(f"probe failed at wall {cand} of {B!r}")
        out[cand] = sum(
            1 for i in range(B.rows) if sum(b * x for b, x in zip(B.row(i), eta)) == 0
        )
    return out


def _point_on(reference, idx):
    from hkit.arrangement import generic_point_on

    return generic_point_on(reference, idx)


def probe_matches(B):
    probed = probe_discriminant(B)
    built = {
        c.hyperplane.normal: c.multiplicity for c in build_discriminant(B).components
    }
    return probed == built


def is_valid_matrix(B):
    return (
        rank(B) == B.cols
        and smith_normal_form(B).torsion_free
    )
