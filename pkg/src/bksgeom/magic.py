"""Magic configurations of real Pauli observables and their certificates.

A context is a set of mutually commuting observables whose product is
plus or minus the identity; the product sign is what a noncontextual
value assignment must reproduce.  A configuration (a list of contexts)
admits no assignment v: points -> {+1, -1} exactly when the parity
argument applies: if every point appears in an even number of contexts
while the product of the context signs is -1, multiplying all context
constraints together gives +1 = -1.

Certification runs both directions: the parity certificate (structural,
instant) and an exhaustive scan over all 2^k assignments of the k-point
universe (the oracle).  Assignments act on sign-stripped observables, so
the sign a context constrains against is the canonical sign: the sign of
the product of the sign-stripped representatives.  For configurations
written with all-positive words the two notions coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .geometry import Subspace, SymplecticPoint, intersect, span
from .pauli import (
    PauliObservable,
    commutes,
    format_observable,
    from_symplectic,
    multiply,
    parse_observable,
    point_word,
    product_of_set,
    to_symplectic,
)

MAX_EXHAUSTIVE_UNIVERSE = 30


class ContextError(ValueError):
    """Raised when a context or configuration violates a structural rule."""


@dataclass(frozen=True)
class Context:
    """One measurement context.

    Attributes:
        observables: the members, in the order given.  Valid contexts
            have mutually commuting members whose product is plus or
            minus the identity; validity is checked by
            :func:`validate_context`, not at construction.
    """

    observables: Tuple[PauliObservable, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "observables", tuple(self.observables))

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "Context":
        return cls(tuple(parse_observable(w) for w in words))

    @property
    def words(self) -> Tuple[str, ...]:
        return tuple(format_observable(o) for o in self.observables)

    def points(self) -> Tuple[SymplecticPoint, ...]:
        """Sign-stripped members as projective points, identities skipped."""
        return tuple(to_symplectic(o) for o in self.observables if not o.is_identity)


def validate_context(ctx: Context) -> None:
    """Raise ContextError unless the context is structurally valid."""
    if not ctx.observables:
        raise ContextError("context has no observables")
    n = ctx.observables[0].n
    for obs in ctx.observables:
        if obs.n != n:
            raise ContextError(
                f"context mixes qubit counts ({n} and {obs.n})"
            )
    for i, a in enumerate(ctx.observables):
        for b in ctx.observables[i + 1 :]:
            if not commutes(a, b):
                raise ContextError(
                    f"observables {format_observable(a)} and "
                    f"{format_observable(b)} do not commute"
                )
    prod = product_of_set(ctx.observables)
    if not prod.is_identity:
        raise ContextError(
            f"context product is {format_observable(prod)}, "
            "not proportional to the identity"
        )


def context_sign(ctx: Context) -> int:
    """The sign of the product of the context members (+1 or -1)."""
    validate_context(ctx)
    return product_of_set(ctx.observables).sign


def canonical_context_sign(ctx: Context) -> int:
    """The product sign after stripping every member to its +1 representative.

    This is the sign a noncontextual assignment of the underlying points
    is constrained against; member signs cancel out of the constraint.
    """
    validate_context(ctx)
    stripped = [PauliObservable(o.n, o.x, o.z, 1) for o in ctx.observables]
    return product_of_set(stripped).sign


def sorted_observables(ctx: Context) -> Tuple[PauliObservable, ...]:
    """Members in canonical order: by point value, identities first."""

    def key(obs: PauliObservable) -> tuple[int, int]:
        value = 0 if obs.is_identity else to_symplectic(obs).value
        return (value, 0 if obs.sign > 0 else 1)

    return tuple(sorted(ctx.observables, key=key))


@dataclass(frozen=True)
class MagicConfiguration:
    """A list of contexts over a common qubit count.

    Every context is validated at construction, so an instance that
    exists is structurally sound; the interesting question is whether it
    admits a noncontextual assignment, answered by
    :func:`parity_witness` and :func:`exhaustive_nchv_check`.
    """

    contexts: Tuple[Context, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "contexts", tuple(self.contexts))
        for ctx in self.contexts:
            validate_context(ctx)
        counts = {ctx.observables[0].n for ctx in self.contexts}
        if len(counts) > 1:
            raise ContextError(f"contexts mix qubit counts {sorted(counts)}")

    @classmethod
    def from_words(cls, groups: Iterable[Iterable[str]]) -> "MagicConfiguration":
        return cls(tuple(Context.from_words(g) for g in groups))

    @property
    def n(self) -> Optional[int]:
        return self.contexts[0].observables[0].n if self.contexts else None

    @cached_property
    def universe(self) -> Tuple[SymplecticPoint, ...]:
        """Distinct points appearing in any context, ascending by value."""
        values: Dict[int, SymplecticPoint] = {}
        for ctx in self.contexts:
            for p in ctx.points():
                values[p.value] = p
        return tuple(values[v] for v in sorted(values))

    @cached_property
    def multiplicities(self) -> Dict[SymplecticPoint, int]:
        """How many context slots each point occupies (occurrences counted)."""
        counts: Dict[SymplecticPoint, int] = {}
        for ctx in self.contexts:
            for p in ctx.points():
                counts[p] = counts.get(p, 0) + 1
        return counts

    def context_spans(self) -> Tuple[Optional[Subspace], ...]:
        """Span of each context's point set (None for identity-only contexts)."""
        spans: list[Optional[Subspace]] = []
        for ctx in self.contexts:
            pts = ctx.points()
            spans.append(span(pts) if pts else None)
        return tuple(spans)


@dataclass(frozen=True)
class ContradictionCertificate:
    """Outcome of certifying a configuration.

    Attributes:
        sign_product: product of the canonical context signs.
        all_multiplicities_even: whether every universe point sits in an
            even number of context slots.
        nchv_assignment_exists: oracle verdict, or None when the
            universe was too large to scan.
        witness: a satisfying assignment as (point, value) pairs in
            ascending point order, when one exists.
    """

    sign_product: int
    all_multiplicities_even: bool
    nchv_assignment_exists: Optional[bool]
    witness: Optional[Tuple[Tuple[SymplecticPoint, int], ...]]

    @property
    def certified(self) -> bool:
        """True when the parity argument proves no assignment can exist."""
        return self.all_multiplicities_even and self.sign_product == -1

    def witness_dict(self) -> Optional[Dict[SymplecticPoint, int]]:
        return None if self.witness is None else dict(self.witness)


def _scan_tables(config: MagicConfiguration) -> tuple[np.ndarray, np.ndarray, int]:
    universe = config.universe
    index = {p.value: i for i, p in enumerate(universe)}
    masks = np.zeros(len(config.contexts), dtype=np.int64)
    parities = np.zeros(len(config.contexts), dtype=np.int64)
    for c, ctx in enumerate(config.contexts):
        mask = 0
        for p in ctx.points():
            mask ^= 1 << index[p.value]
        masks[c] = mask
        parities[c] = 1 if canonical_context_sign(ctx) == -1 else 0
    return masks, parities, len(universe)


def exhaustive_nchv_check(
    config: MagicConfiguration,
) -> tuple[bool, Optional[Dict[SymplecticPoint, int]]]:
    """Scan all 2^k assignments of the k-point universe.

    Returns (True, witness) with the first satisfying assignment in an
    ascending binary enumeration (all +1 comes first), or (False, None)
    when every assignment violates some context constraint.  Raises
    ValueError for universes above MAX_EXHAUSTIVE_UNIVERSE points; use
    parity_witness for those.
    """
    k = len(config.universe)
    if k > MAX_EXHAUSTIVE_UNIVERSE:
        raise ValueError(
            f"universe has {k} points, exhaustive scan supports at most "
            f"{MAX_EXHAUSTIVE_UNIVERSE}; use parity_witness instead"
        )
    masks, parities, _ = _scan_tables(config)
    v = _kernels.valuation_scan(masks, parities, k)
    if v < 0:
        return False, None
    assignment = {
        p: (-1 if (v >> i) & 1 else 1) for i, p in enumerate(config.universe)
    }
    return True, assignment


def parity_witness(config: MagicConfiguration) -> ContradictionCertificate:
    """Build the full certificate for a configuration.

    The parity fields are always filled.  The oracle verdict is filled
    when the universe is small enough to scan exhaustively, else left as
    None.  A certified certificate implies the oracle (when run) finds
    no assignment; the converse need not hold.
    """
    sign_product = 1
    for ctx in config.contexts:
        sign_product *= canonical_context_sign(ctx)
    all_even = all(m % 2 == 0 for m in config.multiplicities.values())
    exists: Optional[bool] = None
    witness: Optional[Tuple[Tuple[SymplecticPoint, int], ...]] = None
    if len(config.universe) <= MAX_EXHAUSTIVE_UNIVERSE:
        found, assignment = exhaustive_nchv_check(config)
        exists = found
        if assignment is not None:
            witness = tuple(sorted(assignment.items(), key=lambda kv: kv[0].value))
    return ContradictionCertificate(sign_product, all_even, exists, witness)


def intersection_lines(
    config: MagicConfiguration,
) -> Dict[Tuple[int, int], Subspace]:
    """Nonzero pairwise intersections of context spans.

    Keys are index pairs (i, j) with i < j into config.contexts; values
    are the intersection subspaces, included whenever their rank is at
    least 1.  Identity-only contexts have no span and produce no pairs.
    """
    spans = config.context_spans()
    out: Dict[Tuple[int, int], Subspace] = {}
    for i in range(len(spans)):
        for j in range(i + 1, len(spans)):
            if spans[i] is None or spans[j] is None:
                continue
            meet = intersect(spans[i], spans[j])
            if meet.rank >= 1:
                out[(i, j)] = meet
    return out


def shared_point(config: MagicConfiguration) -> SymplecticPoint:
    """The unique point on every pairwise intersection line of context spans.

    Only pairs whose spans meet in rank >= 2 (a line or more) take part.
    Raises ContextError when no pair meets in a line or when the common
    intersection of those meets is not a single point.
    """
    lines = [
        sub for sub in intersection_lines(config).values() if sub.rank >= 2
    ]
    if not lines:
        raise ContextError("no pair of context spans meets in a line")
    common = lines[0]
    for sub in lines[1:]:
        common = intersect(common, sub)
    if common.rank != 1:
        raise ContextError(
            f"no unique shared point; common intersection has rank {common.rank}"
        )
    return SymplecticPoint.from_value(config.n, common.rows[0])


def complement_config(
    config: MagicConfiguration, point: SymplecticPoint
) -> MagicConfiguration:
    """The twin configuration through an anchor point.

    Every observable other than the anchor itself is multiplied on the
    left by the anchor's positive observable P; occurrences of the
    anchor are kept fixed.  When P squares to +identity the map is an
    involution.  The result is validated on construction, so an anchor
    that breaks commutation somewhere raises ContextError.
    """
    if config.n is not None and point.n != config.n:
        raise ContextError(
            f"anchor lives in n={point.n} but configuration has n={config.n}"
        )
    anchor = from_symplectic(point)
    if multiply(anchor, anchor).sign != 1:
        raise ContextError(
            f"anchor {format_observable(anchor)} squares to -identity"
        )
    new_contexts = []
    for ctx in config.contexts:
        members = []
        for obs in ctx.observables:
            if not obs.is_identity and to_symplectic(obs) == point:
                members.append(obs)
            else:
                members.append(multiply(anchor, obs))
        new_contexts.append(Context(tuple(members)))
    return MagicConfiguration(tuple(new_contexts))
