"""Tests for contexts, configurations, certificates, and the twin map."""

import pytest

from bksgeom.classify import KIND_LINE, projective_closure
from bksgeom.geometry import SymplecticPoint, enumerate_points
from bksgeom.magic import (
    MAX_EXHAUSTIVE_UNIVERSE,
    Context,
    ContextError,
    MagicConfiguration,
    canonical_context_sign,
    complement_config,
    context_sign,
    exhaustive_nchv_check,
    intersection_lines,
    parity_witness,
    shared_point,
    sorted_observables,
    validate_context,
)
from bksgeom.pauli import parse_observable, point_word, to_symplectic
from bksgeom.rectangle import (
    CONTEXT_WORDS,
    TWIN_CONTEXT_WORDS,
    anchor_point,
    magic_rectangle,
    twin_rectangle,
)


def pt(word: str) -> SymplecticPoint:
    return to_symplectic(parse_observable(word))


MERMIN_SQUARE = (
    ("XI", "IX", "XX"),
    ("IZ", "ZI", "ZZ"),
    ("XZ", "ZX", "YY"),
    ("XI", "IZ", "XZ"),
    ("IX", "ZI", "ZX"),
    ("XX", "ZZ", "YY"),
)


# ---------------------------------------------------------------------------
# context validation and signs


def test_builtin_context_signs():
    rect = magic_rectangle()
    assert [context_sign(c) for c in rect.contexts] == [1, 1, 1, 1, -1]
    assert [canonical_context_sign(c) for c in rect.contexts] == [1, 1, 1, 1, -1]


def test_validate_rejects_noncommuting():
    ctx = Context.from_words(("XIII", "ZIII", "YIII"))
    with pytest.raises(ContextError, match="XIII and ZIII do not commute"):
        validate_context(ctx)


def test_validate_rejects_non_identity_product():
    ctx = Context.from_words(("ZIII", "IXII"))
    with pytest.raises(ContextError, match="product is ZXII"):
        validate_context(ctx)


def test_validate_rejects_empty():
    with pytest.raises(ContextError, match="no observables"):
        validate_context(Context(()))


def test_validate_rejects_mixed_sizes():
    ctx = Context.from_words(("XI", "X"))
    with pytest.raises(ContextError, match="mixes qubit counts"):
        validate_context(ctx)


def test_negative_identity_context_is_valid():
    ctx = Context.from_words(("-II",))
    validate_context(ctx)
    assert context_sign(ctx) == -1
    assert canonical_context_sign(ctx) == 1
    assert ctx.points() == ()


def test_canonical_sign_ignores_member_signs():
    plain = Context.from_words(("ZXZX", "ZXXZ", "XXZZ", "XXXX"))
    flipped = Context.from_words(("-ZXZX", "ZXXZ", "-XXZZ", "XXXX"))
    assert context_sign(plain) == -1
    assert context_sign(flipped) == -1 * (-1) * (-1)
    assert canonical_context_sign(plain) == canonical_context_sign(flipped) == -1


def test_sorted_observables_order():
    ctx = Context.from_words(("ZIII", "-IIII", "IIIZ"))
    ordered = sorted_observables(ctx)
    assert [o.letters for o in ordered] == ["IIII", "IIIZ", "ZIII"]


def test_context_words_round_trip():
    ctx = Context.from_words(("-ZXZX", "XXXX"))
    assert ctx.words == ("-ZXZX", "XXXX")
    assert Context.from_words(ctx.words) == ctx


# ---------------------------------------------------------------------------
# configurations


def test_configuration_validates_contexts_on_construction():
    with pytest.raises(ContextError):
        MagicConfiguration.from_words([("XIII", "ZIII", "YIII")])
    with pytest.raises(ContextError, match="contexts mix qubit counts"):
        MagicConfiguration.from_words([("XI", "XI"), ("X", "X")])


def test_universe_is_sorted_and_deduplicated():
    rect = magic_rectangle()
    values = [p.value for p in rect.universe]
    assert values == sorted(values)
    assert len(values) == 11
    words = [point_word(p) for p in rect.universe]
    assert words == [
        "IIIZ",
        "IIZI",
        "ZIII",
        "IIIX",
        "IIXI",
        "IXII",
        "ZXZX",
        "ZXXZ",
        "XIII",
        "XXZZ",
        "XXXX",
    ]


def test_multiplicities():
    rect = magic_rectangle()
    mults = {point_word(p): m for p, m in rect.multiplicities.items()}
    assert mults["IXII"] == 4
    assert all(m == 2 for w, m in mults.items() if w != "IXII")
    assert sum(mults.values()) == 24


def test_empty_configuration():
    config = MagicConfiguration(())
    assert config.n is None
    assert config.universe == ()
    cert = parity_witness(config)
    assert cert.sign_product == 1
    assert cert.all_multiplicities_even
    assert cert.nchv_assignment_exists is True
    assert cert.witness == ()
    assert not cert.certified
    with pytest.raises(ContextError):
        shared_point(config)


# ---------------------------------------------------------------------------
# certificates


def test_rectangle_certificate():
    cert = parity_witness(magic_rectangle())
    assert cert.sign_product == -1
    assert cert.all_multiplicities_even
    assert cert.nchv_assignment_exists is False
    assert cert.witness is None
    assert cert.certified


def test_twin_certificate():
    cert = parity_witness(twin_rectangle())
    assert cert.certified
    assert cert.nchv_assignment_exists is False


def test_partial_configuration_is_satisfiable():
    partial = MagicConfiguration.from_words(CONTEXT_WORDS[:4])
    exists, witness = exhaustive_nchv_check(partial)
    assert exists
    assert witness is not None
    # The all-plus assignment is the first one scanned and satisfies the
    # four positive contexts.
    assert all(v == 1 for v in witness.values())
    cert = parity_witness(partial)
    assert not cert.certified
    assert cert.sign_product == 1
    assert cert.witness is not None


def test_odd_multiplicities_break_the_parity_argument():
    mixed = MagicConfiguration.from_words(
        list(CONTEXT_WORDS[:4]) + [TWIN_CONTEXT_WORDS[4]]
    )
    cert = parity_witness(mixed)
    assert cert.sign_product == -1
    assert not cert.all_multiplicities_even
    assert not cert.certified
    assert cert.nchv_assignment_exists is True


def test_mermin_square_certificate():
    config = MagicConfiguration.from_words(MERMIN_SQUARE)
    cert = parity_witness(config)
    assert cert.certified
    assert cert.sign_product == -1
    assert cert.nchv_assignment_exists is False


def test_parity_soundness_on_mutated_configurations():
    """Certified implies the oracle finds nothing; not certified with all
    multiplicities even implies the oracle finds an assignment.  Checked
    on 100 mutations of the built-in rectangle: context drops, member
    negations, and member or context reorderings."""
    import random

    rng = random.Random(170223)
    base = [list(words) for words in CONTEXT_WORDS]
    for _ in range(100):
        kept = [ctx[:] for ctx in base if rng.random() < 0.8]
        for ctx in kept:
            for i in range(len(ctx)):
                if rng.random() < 0.25:
                    word = ctx[i]
                    ctx[i] = word[1:] if word.startswith("-") else "-" + word
            rng.shuffle(ctx)
        rng.shuffle(kept)
        config = MagicConfiguration.from_words(kept)
        cert = parity_witness(config)
        assert cert.nchv_assignment_exists is not None
        if cert.certified:
            assert cert.nchv_assignment_exists is False
        elif cert.all_multiplicities_even:
            assert cert.nchv_assignment_exists is True
        exists, witness = exhaustive_nchv_check(config)
        assert exists == cert.nchv_assignment_exists
        if witness is not None:
            for ctx in config.contexts:
                prod = 1
                for p in ctx.points():
                    prod *= witness[p]
                assert prod == canonical_context_sign(ctx)


def test_large_universe_refuses_exhaustive_scan():
    n = 16
    words = []
    for i in range(n):
        words.append("I" * i + "X" + "I" * (n - 1 - i))
    for i in range(n):
        words.append("I" * i + "Z" + "I" * (n - 1 - i))
    groups = [(w, w) for w in words[: MAX_EXHAUSTIVE_UNIVERSE + 1]]
    config = MagicConfiguration.from_words(groups)
    assert len(config.universe) == MAX_EXHAUSTIVE_UNIVERSE + 1
    with pytest.raises(ValueError, match="universe has 31 points"):
        exhaustive_nchv_check(config)
    cert = parity_witness(config)
    assert cert.nchv_assignment_exists is None
    assert cert.witness is None
    assert not cert.certified


# ---------------------------------------------------------------------------
# intersection geometry


EXPECTED_LINES = {
    (0, 1): {"ZIII", "IXII", "ZXII"},
    (0, 2): {"IIZI", "IXII", "IXZI"},
    (0, 3): {"IIIX", "IXII", "IXIX"},
    (1, 2): {"IIIZ", "IXII", "IXIZ"},
    (1, 3): {"IIXI", "IXII", "IXXI"},
    (2, 3): {"XIII", "IXII", "XXII"},
}

EXPECTED_POINT_MEETS = {
    (0, 4): {"ZXZX"},
    (1, 4): {"ZXXZ"},
    (2, 4): {"XXZZ"},
    (3, 4): {"XXXX"},
}


def test_intersection_lines_of_rectangle():
    lines = intersection_lines(magic_rectangle())
    assert set(lines) == set(EXPECTED_LINES) | set(EXPECTED_POINT_MEETS)
    for pair, words in EXPECTED_LINES.items():
        sub = lines[pair]
        assert sub.rank == 2
        assert {point_word(p) for p in enumerate_points(sub)} == words
    for pair, words in EXPECTED_POINT_MEETS.items():
        sub = lines[pair]
        assert sub.rank == 1
        assert {point_word(p) for p in enumerate_points(sub)} == words


def test_shared_point_is_the_anchor():
    assert shared_point(magic_rectangle()) == anchor_point()
    assert point_word(anchor_point()) == "IXII"
    assert shared_point(twin_rectangle()) == anchor_point()


def test_shared_point_absent_for_mermin_square():
    config = MagicConfiguration.from_words(MERMIN_SQUARE)
    with pytest.raises(ContextError, match="no pair of context spans meets in a line"):
        shared_point(config)


# ---------------------------------------------------------------------------
# the complement (twin) map


def canon(config: MagicConfiguration):
    """Configuration up to member order: signed word sets plus signs."""
    return tuple(
        (frozenset(ctx.words), context_sign(ctx)) for ctx in config.contexts
    )


def test_complement_matches_builtin_twin():
    twin = complement_config(magic_rectangle(), anchor_point())
    assert canon(twin) == canon(twin_rectangle())
    for ctx, words in zip(twin.contexts, TWIN_CONTEXT_WORDS):
        assert {o.letters for o in ctx.observables} == set(words)
        assert all(o.sign == 1 for o in ctx.observables)


def test_complement_is_an_involution():
    rect = magic_rectangle()
    back = complement_config(complement_config(rect, anchor_point()), anchor_point())
    assert back == rect


def test_twin_signs_flip_only_the_affine_context():
    twin = twin_rectangle()
    assert [context_sign(c) for c in twin.contexts] == [1, 1, 1, 1, -1]


def test_twin_preserves_quadric_spans():
    rect_spans = magic_rectangle().context_spans()
    twin_spans = twin_rectangle().context_spans()
    for i in range(4):
        assert rect_spans[i] == twin_spans[i]
    # The affine contexts span different planes through the same line.
    assert rect_spans[4] != twin_spans[4]
    for config in (magic_rectangle(), twin_rectangle()):
        _, rest = projective_closure(list(config.contexts[4].points()))
        assert rest is not None and rest.kind == KIND_LINE


def test_complement_rejects_imaginary_anchor():
    with pytest.raises(ContextError, match="squares to -identity"):
        complement_config(magic_rectangle(), pt("YIII"))


def test_complement_rejects_anchor_breaking_commutation():
    with pytest.raises(ContextError):
        complement_config(magic_rectangle(), pt("ZIII"))


def test_complement_rejects_wrong_size_anchor():
    with pytest.raises(ContextError, match="anchor lives in n=2"):
        complement_config(magic_rectangle(), pt("IX"))


def test_no_anchor_preserves_a_full_grid():
    """Projecting a two-qubit square through any point breaks commutation:
    a line context forces the anchor to commute with all three of its
    points, which no point manages against a rank-4 span."""
    config = MagicConfiguration.from_words(MERMIN_SQUARE)
    for value in range(1, 16):
        with pytest.raises(ContextError):
            complement_config(config, SymplecticPoint.from_value(2, value))


def test_complement_fixes_a_line_context_through_its_own_point():
    config = MagicConfiguration.from_words([("XI", "IX", "XX")])
    twin = complement_config(config, pt("XX"))
    assert canon(twin) == canon(config)
    assert canon(complement_config(twin, pt("XX"))) == canon(config)


def test_quadric_contexts_share_two_points_pairwise():
    rect = magic_rectangle()
    anchor = anchor_point()
    for i in range(4):
        for j in range(i + 1, 4):
            common = set(rect.contexts[i].points()) & set(rect.contexts[j].points())
            assert len(common) == 2
            assert anchor in common
