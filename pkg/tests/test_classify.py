"""Tests for geometric classification of point sets."""

import random

import pytest

from bksgeom.classify import (
    KIND_AFFINE_PLANE,
    KIND_ELLIPTIC_QUADRIC,
    KIND_FANO_PLANE,
    KIND_GENERIC,
    KIND_GRID,
    KIND_LINE,
    KIND_SINGLE_POINT,
    KIND_TRIANGLE,
    classify_set,
    is_cap,
    projective_closure,
)
from bksgeom.geometry import SymplecticPoint, enumerate_points, span
from bksgeom.pauli import parse_observable, point_word, to_symplectic

CONTEXT_WORDS = (
    ("ZIII", "IXII", "IIZI", "IIIX", "ZXZX"),
    ("ZIII", "IXII", "IIXI", "IIIZ", "ZXXZ"),
    ("XIII", "IXII", "IIZI", "IIIZ", "XXZZ"),
    ("XIII", "IXII", "IIXI", "IIIX", "XXXX"),
    ("ZXZX", "ZXXZ", "XXZZ", "XXXX"),
)


def pts(*words: str) -> list[SymplecticPoint]:
    return [to_symplectic(parse_observable(w)) for w in words]


# ---------------------------------------------------------------------------
# the built-in contexts


@pytest.mark.parametrize("words", CONTEXT_WORDS[:4])
def test_five_point_contexts_are_elliptic_quadrics(words):
    label = classify_set(pts(*words))
    assert label.kind == KIND_ELLIPTIC_QUADRIC
    assert label.ambient_rank == 4
    assert label.detail == ""
    assert is_cap(pts(*words))


def test_fifth_context_is_affine_plane():
    label = classify_set(pts(*CONTEXT_WORDS[4]))
    assert label.kind == KIND_AFFINE_PLANE
    assert label.ambient_rank == 3


# ---------------------------------------------------------------------------
# small shapes


def test_single_point():
    label = classify_set(pts("IXII"))
    assert label.kind == KIND_SINGLE_POINT
    assert label.ambient_rank == 1


def test_line_and_triangle():
    line = classify_set(pts("ZIII", "IXII", "ZXII"))
    assert (line.kind, line.ambient_rank) == (KIND_LINE, 2)
    tri = classify_set(pts("ZIII", "IXII", "IIZI"))
    assert (tri.kind, tri.ambient_rank) == (KIND_TRIANGLE, 3)


def test_pair_is_generic():
    label = classify_set(pts("ZIII", "IXII"))
    assert label.kind == KIND_GENERIC
    assert "2 points" in label.detail


def test_fano_plane():
    plane = span(pts(*CONTEXT_WORDS[4]))
    label = classify_set(enumerate_points(plane))
    assert label.kind == KIND_FANO_PLANE
    assert label.ambient_rank == 3


def test_grid_from_two_qubit_square():
    square = pts("XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY")
    label = classify_set(square)
    assert label.kind == KIND_GRID
    assert label.ambient_rank == 4


# ---------------------------------------------------------------------------
# caps that are not quadrics


def test_cap_with_coplanar_quadruple_is_not_quadric():
    """Over GF(2) the pair test alone is too weak: this five-point set has
    no collinear triple yet contains an affine plane, so it must not be
    classified as an elliptic quadric."""
    sample = [SymplecticPoint.from_value(2, v) for v in (8, 4, 2, 14, 1)]
    assert is_cap(sample)
    label = classify_set(sample)
    assert label.kind == KIND_GENERIC
    assert label.detail.startswith("coplanar quadruple:")
    assert label.detail == "coplanar quadruple: XI IX ZI YX"


def test_collinear_witness():
    label = classify_set(pts("ZIII", "IXII", "ZXII", "IIIX", "IIIZ"))
    assert label.kind == KIND_GENERIC
    assert label.detail == "collinear triple: ZIII IXII ZXII"


def test_four_general_position():
    label = classify_set(pts("ZIII", "IXII", "IIZI", "IIIX"))
    assert label.kind == KIND_GENERIC
    assert label.detail == "four points in general position (XOR sum nonzero)"
    assert label.ambient_rank == 4


# ---------------------------------------------------------------------------
# invariances and errors


def test_classification_is_permutation_invariant():
    rng = random.Random(8191)
    samples = [pts(*w) for w in CONTEXT_WORDS] + [
        pts("XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY")
    ]
    for sample in samples:
        base = classify_set(sample)
        for _ in range(30):
            shuffled = sample[:]
            rng.shuffle(shuffled)
            got = classify_set(shuffled)
            assert (got.kind, got.ambient_rank) == (base.kind, base.ambient_rank)


def test_duplicates_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        classify_set(pts("ZIII", "ZIII"))
    with pytest.raises(ValueError):
        is_cap(pts("ZIII", "IXII", "ZIII"))


def test_empty_rejected():
    with pytest.raises(ValueError):
        classify_set([])


def test_mixed_sizes_rejected():
    with pytest.raises(ValueError, match="different spaces"):
        classify_set(pts("XI") + pts("X"))


# ---------------------------------------------------------------------------
# projective closure


def test_closure_of_affine_context_leaves_a_line():
    closure, rest = projective_closure(pts(*CONTEXT_WORDS[4]))
    assert closure.rank == 3
    assert rest is not None
    assert rest.kind == KIND_LINE
    given = {p.value for p in pts(*CONTEXT_WORDS[4])}
    leftover = sorted(
        point_word(p) for p in enumerate_points(closure) if p.value not in given
    )
    assert leftover == ["IIYY", "YIIY", "YIYI"]


def test_closure_of_full_plane_has_no_complement():
    plane = span(pts(*CONTEXT_WORDS[4]))
    closure, rest = projective_closure(enumerate_points(plane))
    assert closure == plane
    assert rest is None


def test_closure_of_quadric_complement_is_generic():
    closure, rest = projective_closure(pts(*CONTEXT_WORDS[0]))
    assert closure.rank == 4
    assert rest is not None
    assert len(enumerate_points(closure)) == 15
