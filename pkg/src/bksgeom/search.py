"""Search for magic configurations in the symplectic polar space.

Three searches are offered, selected by SearchOptions.shape:

* ``mermin_square``: 3x3 grids of two-qubit observables whose six line
  contexts certify a contradiction (ten exist, all magic).
* ``hc_rectangle``: the anchored four-qubit rectangle shape: four
  five-point elliptic quadric contexts through a common anchor point,
  each with canonical sign +1, spans pairwise meeting in lines through
  the anchor, every pair of contexts sharing exactly one further point,
  completed by the four odd-multiplicity points forming an affine plane
  context with canonical sign -1.
* ``ovoid_census``: no configurations, just the census of elliptic
  quadrics inside rank-4 ambient spaces (see :func:`cap_census`).

Rectangle search walks 4-cliques of maximal totally isotropic subspaces
through the anchor (pairwise meeting in lines), with per-pair
compatibility bitmasks pruning the cap choices and shared-point
distinctness pruning the surviving branches.  Results are emitted in
(configuration, twin) pairs so that truncation by ``limit`` never
separates a configuration from its complement; an odd limit simply
stops one pair earlier.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import _kernels
from .classify import KIND_ELLIPTIC_QUADRIC, KIND_GRID, classify_set
from .geometry import (
    MAX_QUBITS,
    Subspace,
    SymplecticPoint,
    all_points,
    enumerate_points,
    intersect,
    span,
    symplectic_form,
)
from .magic import (
    Context,
    MagicConfiguration,
    canonical_context_sign,
    complement_config,
    sorted_observables,
)
from .pauli import from_symplectic, to_symplectic

import numpy as np

SHAPES = ("mermin_square", "hc_rectangle", "ovoid_census")

_ANCHOR_DEFAULT_WORD_N4 = 64  # value of IXII at n=4


@dataclass(frozen=True)
class SearchOptions:
    """Parameters of a search run.

    Attributes:
        qubit_count: qubit count of the target space.
        anchor_point: common point required of rectangle contexts, or a
            membership filter for squares and the census; None picks the
            shape default (IXII for rectangles, no filter otherwise).
        shape: one of SHAPES.
        limit: maximum number of results to return (at least 1).
        dedup: canonicalise results and drop duplicates; rectangle twins
            are injected at emission only in this mode.
        seed: a known configuration to verify and emit first, before
            the systematic walk.
    """

    qubit_count: int
    anchor_point: Optional[SymplecticPoint] = None
    shape: str = "hc_rectangle"
    limit: int = 4
    dedup: bool = True
    seed: Optional[MagicConfiguration] = None

    def __post_init__(self) -> None:
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}; expected one of {SHAPES}")
        if not 1 <= self.qubit_count <= MAX_QUBITS:
            raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}]")
        if self.limit < 1:
            raise ValueError("limit must be at least 1")
        if self.anchor_point is not None and self.anchor_point.n != self.qubit_count:
            raise ValueError(
                f"anchor lives in n={self.anchor_point.n}, "
                f"search space has n={self.qubit_count}"
            )


# ---------------------------------------------------------------------------
# shared helpers


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _product_sign(n: int, values: Sequence[int]) -> tuple[int, int, int]:
    """Sign and residual (x, z) of the product of positive observables."""
    lowmask = (1 << n) - 1
    x = z = 0
    sign = 1
    for v in values:
        vx, vz = v >> n, v & lowmask
        if bin(z & vx).count("1") % 2:
            sign = -sign
        x ^= vx
        z ^= vz
    return sign, x, z


def _form_values(n: int, u: int, v: int) -> int:
    lowmask = (1 << n) - 1
    return (bin((u >> n) & (v & lowmask)).count("1") + bin((u & lowmask) & (v >> n)).count("1")) % 2


def _context_from_values(n: int, values: Sequence[int]) -> Context:
    return Context(
        tuple(
            from_symplectic(SymplecticPoint.from_value(n, v)) for v in sorted(values)
        )
    )


def canonical_config(config: MagicConfiguration) -> MagicConfiguration:
    """Sort members within contexts and contexts within the configuration."""
    ctxs = [Context(sorted_observables(ctx)) for ctx in config.contexts]

    def ctx_key(ctx: Context) -> tuple:
        return tuple(
            (0 if o.is_identity else to_symplectic(o).value, 0 if o.sign > 0 else 1)
            for o in ctx.observables
        )

    ctxs.sort(key=ctx_key)
    return MagicConfiguration(tuple(ctxs))


def _config_key(config: MagicConfiguration) -> tuple:
    return tuple(ctx.words for ctx in config.contexts)


class _Emitter:
    """Collects results up to a limit with optional canonical dedup."""

    def __init__(self, limit: int, dedup: bool):
        self.limit = limit
        self.dedup = dedup
        self.results: List[MagicConfiguration] = []
        self._seen: set = set()

    @property
    def full(self) -> bool:
        return len(self.results) >= self.limit

    def offer(self, configs: Sequence[MagicConfiguration]) -> bool:
        """Emit a group atomically; returns False when the walk should stop.

        Without dedup the group is emitted member by member and may be
        cut by the limit; with dedup the whole group must fit, keeping
        twin pairs intact.
        """
        if not self.dedup:
            for cfg in configs:
                if self.full:
                    return False
                self.results.append(cfg)
            return not self.full
        fresh = []
        for cfg in configs:
            canon = canonical_config(cfg)
            key = _config_key(canon)
            if key not in self._seen and all(k != key for k, _ in fresh):
                fresh.append((key, canon))
        if not fresh:
            return True
        if len(self.results) + len(fresh) > self.limit:
            return False
        for key, canon in fresh:
            self._seen.add(key)
            self.results.append(canon)
        return not self.full


# ---------------------------------------------------------------------------
# caps


def _third_table(points: Sequence[SymplecticPoint]) -> np.ndarray:
    index = {p.value: i for i, p in enumerate(points)}
    k = len(points)
    third = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(i + 1, k):
            t = index[points[i].value ^ points[j].value]
            third[i, j] = third[j, i] = t
    return third


def enumerate_caps(subspace: Subspace) -> List[Tuple[SymplecticPoint, ...]]:
    """All elliptic quadrics (5 points, no 3 collinear, no 4 coplanar)
    inside a rank-4 subspace, in lexicographic point order.
    """
    if subspace.rank != 4:
        raise ValueError(
            f"cap enumeration needs a rank-4 ambient space, got rank {subspace.rank}"
        )
    points = enumerate_points(subspace)
    rows = _kernels.cap_subsets(_third_table(points), -1)
    return [tuple(points[i] for i in row) for row in rows]


@functools.lru_cache(maxsize=8)
def maximal_isotropic_through(point: SymplecticPoint) -> Tuple[Subspace, ...]:
    """Every maximal totally isotropic subspace containing the point.

    In W(2N-1, 2) these have rank N; through any fixed point of the
    four-qubit space there are 135 of them.
    """
    n = point.n
    start = span([point])
    seen = {start.rows}
    stack = [start]
    found: List[Subspace] = []
    while stack:
        sub = stack.pop()
        if sub.rank == n:
            found.append(sub)
            continue
        for q in all_points(n):
            inside = q.value
            for row in sub.rows:
                inside = min(inside, inside ^ row)
            if inside == 0:
                continue
            if any(
                _form_values(n, q.value, row) for row in sub.rows
            ):
                continue
            new = span([SymplecticPoint.from_value(n, v) for v in sub.rows + (q.value,)])
            if new.rows not in seen:
                seen.add(new.rows)
                stack.append(new)
    found.sort(key=lambda s: s.rows)
    return tuple(found)


def cap_census(options: SearchOptions) -> List[Tuple[Subspace, List[Tuple[SymplecticPoint, ...]]]]:
    """Elliptic quadric census for the ovoid_census shape.

    Two qubits: the single ambient PG(3, 2) is the whole space.  Four
    qubits: the four maximal totally isotropic subspaces spanned by the
    built-in rectangle contexts.  An anchor filters caps by membership.
    Other qubit counts have no rank-4 ambient space singled out and are
    rejected.
    """
    if options.shape != "ovoid_census":
        raise ValueError("cap_census expects shape 'ovoid_census'")
    n = options.qubit_count
    if n == 2:
        unit = [SymplecticPoint.from_value(2, 1 << i) for i in range(4)]
        ambients = [span(unit)]
    elif n == 4:
        from .rectangle import magic_rectangle

        spans = magic_rectangle().context_spans()
        ambients = [s for s in spans[:4] if s is not None]
    else:
        raise ValueError(
            "ovoid census supports 2 qubits (the full PG(3,2)) or 4 qubits "
            "(the built-in ambient spaces); got "
            f"{n}"
        )
    out = []
    for amb in ambients:
        caps = enumerate_caps(amb)
        if options.anchor_point is not None:
            caps = [c for c in caps if options.anchor_point in c]
        out.append((amb, caps))
    return out


# ---------------------------------------------------------------------------
# mermin squares


def find_mermin_squares(options: SearchOptions) -> List[MagicConfiguration]:
    """All 3x3 observable grids at two qubits whose row and column
    contexts form a certified magic configuration.

    Deterministic: grids are generated in ascending order of their
    point sets and results are canonicalised under dedup.
    """
    if options.shape != "mermin_square":
        raise ValueError("find_mermin_squares expects shape 'mermin_square'")
    if options.qubit_count != 2:
        raise ValueError("mermin square search is defined for 2 qubits")
    n = 2
    values = [p.value for p in all_points(n)]
    lines = []
    for a, b in itertools.combinations(values, 2):
        c = a ^ b
        if c > b and _form_values(n, a, b) == 0:
            lines.append((a, b, c))
    lines.sort()

    partitions: Dict[frozenset, List[Tuple[Tuple[int, ...], ...]]] = {}
    for triple in itertools.combinations(lines, 3):
        union = set()
        for line in triple:
            union.update(line)
        if len(union) == 9:
            partitions.setdefault(frozenset(union), []).append(triple)

    emitter = _Emitter(options.limit, options.dedup)
    for nineset in sorted(partitions, key=lambda s: sorted(s)):
        parts = partitions[nineset]
        if len(parts) < 2:
            continue
        pts = [SymplecticPoint.from_value(n, v) for v in sorted(nineset)]
        if classify_set(pts).kind != KIND_GRID:
            continue
        if options.anchor_point is not None and options.anchor_point not in pts:
            continue
        for rows, cols in itertools.combinations(parts, 2):
            contexts = [_context_from_values(n, line) for line in rows + cols]
            config = MagicConfiguration(tuple(contexts))
            signs = [canonical_context_sign(ctx) for ctx in config.contexts]
            negatives = sum(1 for s in signs if s < 0)
            if negatives % 2 == 0:
                continue
            if not emitter.offer([config]):
                return emitter.results
    return emitter.results


# ---------------------------------------------------------------------------
# rectangles


class _RectangleWalk:
    """State of the clique walk: caches for caps, pair ranks, compat masks."""

    def __init__(self, anchor: SymplecticPoint):
        self.anchor = anchor
        self.n = anchor.n
        self.lagrangians = maximal_isotropic_through(anchor)
        self._caps: Dict[int, List[Tuple[int, ...]]] = {}
        self._cap_sets: Dict[int, List[frozenset]] = {}
        self._pair_ok: Dict[Tuple[int, int], bool] = {}
        self._compat: Dict[Tuple[int, int], Tuple[List[int], List[Dict[int, int]]]] = {}

    def caps(self, i: int) -> List[Tuple[int, ...]]:
        """Anchored caps of Lagrangian i with canonical sign +1."""
        if i not in self._caps:
            sub = self.lagrangians[i]
            points = enumerate_points(sub)
            anchor_index = points.index(self.anchor)
            rows = _kernels.cap_subsets(_third_table(points), anchor_index)
            good = []
            for row in rows:
                vals = tuple(points[j].value for j in row)
                sign, x, z = _product_sign(self.n, vals)
                if sign == 1 and x == 0 and z == 0:
                    good.append(vals)
            self._caps[i] = good
            self._cap_sets[i] = [frozenset(v) for v in good]
        return self._caps[i]

    def pair_ok(self, i: int, j: int) -> bool:
        """Spans must meet in exactly a line for the rectangle shape."""
        key = (i, j)
        if key not in self._pair_ok:
            meet = intersect(self.lagrangians[i], self.lagrangians[j])
            self._pair_ok[key] = meet.rank == 2
        return self._pair_ok[key]

    def compat(self, i: int, j: int) -> Tuple[List[int], List[Dict[int, int]]]:
        """Pair compatibility between the cap lists of two Lagrangians.

        Returns (masks, shared): masks[a] is a bitmask over caps(j) of
        the caps sharing exactly the anchor plus one further point with
        cap a of caps(i); shared[a][b] is that further point's value.
        """
        key = (i, j)
        if key not in self._compat:
            self.caps(i)
            self.caps(j)
            anchor_value = self.anchor.value
            masks: List[int] = []
            shared: List[Dict[int, int]] = []
            for set_a in self._cap_sets[i]:
                mask = 0
                values: Dict[int, int] = {}
                for b, set_b in enumerate(self._cap_sets[j]):
                    meet = set_a & set_b
                    if len(meet) == 2:
                        mask |= 1 << b
                        (extra,) = meet - {anchor_value}
                        values[b] = extra
                masks.append(mask)
                shared.append(values)
            self._compat[key] = (masks, shared)
        return self._compat[key]

    def complete(
        self, quads: Tuple[Tuple[int, ...], ...], odd: List[int]
    ) -> Optional[MagicConfiguration]:
        """Build the configuration when the odd points close up affinely."""
        if odd[0] ^ odd[1] ^ odd[2] ^ odd[3] != 0:
            return None
        for u, v in itertools.combinations(odd, 2):
            if _form_values(self.n, u, v):
                return None
        sign, x, z = _product_sign(self.n, odd)
        if sign != -1 or x or z:
            return None
        contexts = [_context_from_values(self.n, cap) for cap in quads]
        contexts.append(_context_from_values(self.n, sorted(odd)))
        return MagicConfiguration(tuple(contexts))


def _is_rectangle(config: MagicConfiguration, anchor: SymplecticPoint) -> bool:
    """Structural test of the anchored rectangle shape (any member order)."""
    if len(config.contexts) != 5:
        return False
    quads = []
    affine = None
    for ctx in config.contexts:
        pts = ctx.points()
        if len(set(pts)) != len(ctx.observables):
            return False
        if len(pts) == 5:
            quads.append(pts)
        elif len(pts) == 4:
            if affine is not None:
                return False
            affine = pts
        else:
            return False
    if len(quads) != 4 or affine is None:
        return False
    for pts in quads:
        if anchor not in pts:
            return False
        if classify_set(pts).kind != KIND_ELLIPTIC_QUADRIC:
            return False
        if canonical_context_sign(Context(tuple(from_symplectic(p) for p in pts))) != 1:
            return False
    spans = [span(pts) for pts in quads]
    if len({s.rows for s in spans}) != 4:
        return False
    for a, b in itertools.combinations(range(4), 2):
        shared = set(quads[a]) & set(quads[b])
        if len(shared) != 2 or anchor not in shared:
            return False
        if intersect(spans[a], spans[b]).rank != 2:
            return False
    counts: Dict[SymplecticPoint, int] = {}
    for pts in quads:
        for p in pts:
            counts[p] = counts.get(p, 0) + 1
    odd = sorted((p for p, c in counts.items() if c % 2 == 1), key=lambda p: p.value)
    if odd != sorted(affine, key=lambda p: p.value):
        return False
    acc = 0
    for p in affine:
        acc ^= p.value
    if acc != 0:
        return False
    affine_ctx = Context(tuple(from_symplectic(p) for p in affine))
    try:
        if canonical_context_sign(affine_ctx) != -1:
            return False
    except ValueError:
        return False
    return True


def find_magic_rectangles(options: SearchOptions) -> List[MagicConfiguration]:
    """Anchored rectangle search at four qubits.

    Walks 4-cliques of maximal totally isotropic subspaces through the
    anchor in canonical order, prunes cap choices with pairwise
    compatibility bitmasks, and completes each surviving quadruple with
    its four odd-multiplicity points.  Under dedup every found
    configuration is emitted together with its complement, so the
    result list is closed under twinning at any even limit.
    """
    if options.shape != "hc_rectangle":
        raise ValueError("find_magic_rectangles expects shape 'hc_rectangle'")
    if options.qubit_count != 4:
        raise ValueError("rectangle search is defined for 4 qubits")
    anchor = options.anchor_point
    if anchor is None:
        anchor = SymplecticPoint.from_value(4, _ANCHOR_DEFAULT_WORD_N4)
    emitter = _Emitter(options.limit, options.dedup)
    walk = _RectangleWalk(anchor)

    def emit(config: MagicConfiguration) -> bool:
        if options.dedup:
            return emitter.offer([config, complement_config(config, anchor)])
        return emitter.offer([config])

    if options.seed is not None:
        if not _is_rectangle(options.seed, anchor):
            raise ValueError("seed configuration does not have the rectangle shape")
        if not emit(options.seed):
            return emitter.results

    anchor_value = anchor.value
    count = len(walk.lagrangians)
    for a in range(count):
        if not walk.caps(a):
            continue
        for b in range(a + 1, count):
            if not walk.pair_ok(a, b) or not walk.caps(b):
                continue
            for c in range(b + 1, count):
                if not (walk.pair_ok(a, c) and walk.pair_ok(b, c)):
                    continue
                if not walk.caps(c):
                    continue
                for d in range(c + 1, count):
                    if not (
                        walk.pair_ok(a, d)
                        and walk.pair_ok(b, d)
                        and walk.pair_ok(c, d)
                    ):
                        continue
                    if not walk.caps(d):
                        continue
                    caps_a = walk.caps(a)
                    caps_b = walk.caps(b)
                    caps_c = walk.caps(c)
                    caps_d = walk.caps(d)
                    ab_mask, ab_val = walk.compat(a, b)
                    ac_mask, ac_val = walk.compat(a, c)
                    ad_mask, ad_val = walk.compat(a, d)
                    bc_mask, bc_val = walk.compat(b, c)
                    bd_mask, bd_val = walk.compat(b, d)
                    cd_mask, cd_val = walk.compat(c, d)
                    for ia in range(len(caps_a)):
                        if not (ab_mask[ia] and ac_mask[ia] and ad_mask[ia]):
                            continue
                        for ib in _bits(ab_mask[ia]):
                            s_ab = ab_val[ia][ib]
                            mask_c = ac_mask[ia] & bc_mask[ib]
                            if not mask_c:
                                continue
                            mask_d0 = ad_mask[ia] & bd_mask[ib]
                            if not mask_d0:
                                continue
                            for ic in _bits(mask_c):
                                s_ac = ac_val[ia][ic]
                                s_bc = bc_val[ib][ic]
                                # A shared point occurring twice would sit in
                                # three caps, breaking even multiplicity.
                                if s_ac == s_ab or s_bc == s_ab:
                                    continue
                                mask_d = mask_d0 & cd_mask[ic]
                                for id_ in _bits(mask_d):
                                    s_ad = ad_val[ia][id_]
                                    if s_ad == s_ab or s_ad == s_ac:
                                        continue
                                    s_bd = bd_val[ib][id_]
                                    if s_bd == s_ab or s_bd == s_bc:
                                        continue
                                    s_cd = cd_val[ic][id_]
                                    if s_cd == s_ac or s_cd == s_bc:
                                        continue
                                    quads = (
                                        caps_a[ia],
                                        caps_b[ib],
                                        caps_c[ic],
                                        caps_d[id_],
                                    )
                                    taken = (
                                        anchor_value,
                                        s_ab,
                                        s_ac,
                                        s_ad,
                                        s_bc,
                                        s_bd,
                                        s_cd,
                                    )
                                    odd = []
                                    for cap in quads:
                                        for v in cap:
                                            if v not in taken:
                                                odd.append(v)
                                    if len(odd) != 4:
                                        continue
                                    config = walk.complete(quads, odd)
                                    if config is not None and not emit(config):
                                        return emitter.results
    return emitter.results


# Alias matching the CLI shape token.
find_hc_rectangles = find_magic_rectangles
