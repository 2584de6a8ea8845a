"""Square-tiled surface census: transitive permutation pairs up to
simultaneous conjugation, mapping-class moves, and the move graph.

A degree-d square-tiled surface is a transitive pair (sigma, tau) in S_d;
its branching datum is the cycle type mu of the commutator, and its genus
comes from Riemann-Hurwitz over the torus.  The census enumerates one
canonical representative per simultaneous-conjugation orbit by fixing the
lex-least permutation of each cycle type as the sigma part and sweeping
tau orbits under the centralizer of sigma.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .graphs import ActionSpec, MultiGraph, schreier_graph
from .groups import BudgetExceeded

DEFAULT_DEGREE_CAP = 8

Perm = tuple[int, ...]


def _mul(a: Perm, b: Perm) -> Perm:
    """Left-action composition: (a*b)(x) = a(b(x))."""
    return tuple(a[x] for x in b)


def _inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[ai] = i
    return tuple(out)


def _conj(g: Perm, p: Perm) -> Perm:
    """g p g^(-1), computed without forming g^(-1)."""
    out = [0] * len(p)
    for i, pi in enumerate(p):
        out[g[i]] = g[pi]
    return tuple(out)


def commutator(sigma: Perm, tau: Perm) -> Perm:
    return _mul(_mul(sigma, tau), _mul(_inv(sigma), _inv(tau)))


def cycles_of(p: Perm) -> list[tuple[int, ...]]:
    """Cycles (fixed points included), each starting at its minimum,
    ordered by minimum."""
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = p[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Partition of d in canonical descending order."""
    return tuple(sorted((len(c) for c in cycles_of(p)), reverse=True))


def is_transitive(sigma: Perm, tau: Perm) -> bool:
    d = len(sigma)
    seen = [False] * d
    seen[0] = True
    frontier = [0]
    count = 1
    while frontier:
        nxt = []
        for x in frontier:
            for y in (sigma[x], tau[x]):
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    nxt.append(y)
        frontier = nxt
    return count == d


def subgroup_order(sigma: Perm, tau: Perm) -> int:
    """Order of <sigma, tau> by plain closure over products."""
    gens = (sigma, tau)
    ident = tuple(range(len(sigma)))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def encode_pair(sigma: Perm, tau: Perm) -> str:
    """Stable textual form: cycle notation with fixed points kept,
    the two permutations joined by '|'."""

    def one(p: Perm) -> str:
        return "".join("(" + ",".join(str(x) for x in c) + ")" for c in cycles_of(p))

    return one(sigma) + "|" + one(tau)


def parse_pair(text: str) -> "OrigamiPair":
    """Inverse of encode_pair; the degree is the number of points listed."""
    halves = text.strip().split("|")
    if len(halves) != 2:
        raise ValueError("pair encoding must have exactly one '|'")

    def one(s: str) -> dict[int, int]:
        images: dict[int, int] = {}
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError(f"bad cycle string {s!r}")
        for chunk in s[1:-1].split(")("):
            pts = [int(x) for x in chunk.split(",")]
            for a, b in zip(pts, pts[1:] + pts[:1]):
                if a in images:
                    raise ValueError(f"point {a} repeated in {s!r}")
                images[a] = b
        return images

    m1, m2 = one(halves[0]), one(halves[1])
    if set(m1) != set(m2):
        raise ValueError("the two permutations move different point sets")
    d = len(m1)
    if set(m1) != set(range(d)):
        raise ValueError(f"points must be exactly 0..{d - 1}")
    return OrigamiPair(
        tuple(m1[i] for i in range(d)), tuple(m2[i] for i in range(d))
    )


@dataclass(frozen=True)
class OrigamiPair:
    """A pair of permutations with cached commutator data."""

    sigma: Perm
    tau: Perm
    commutator: Perm = None  # type: ignore[assignment]
    commutator_type: tuple[int, ...] = None  # type: ignore[assignment]
    transitive: bool = None  # type: ignore[assignment]

    def __post_init__(self):
        sigma = tuple(int(x) for x in self.sigma)
        tau = tuple(int(x) for x in self.tau)
        d = len(sigma)
        if sorted(sigma) != list(range(d)) or sorted(tau) != list(range(d)):
            raise ValueError("sigma and tau must be permutations of the same degree")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "tau", tau)
        comm = commutator(sigma, tau)
        object.__setattr__(self, "commutator", comm)
        object.__setattr__(self, "commutator_type", cycle_type(comm))
        object.__setattr__(self, "transitive", is_transitive(sigma, tau))

    @property
    def degree(self) -> int:
        return len(self.sigma)

    def encode(self) -> str:
        return encode_pair(self.sigma, self.tau)


def genus(pair: OrigamiPair) -> int:
    """Riemann-Hurwitz genus of the cover: 1 + sum(e_i - 1)/2 over the
    commutator cycle lengths; integral because commutators are even."""
    if not pair.transitive:
        raise ValueError("genus requires a transitive pair (a connected cover)")
    excess = sum(e - 1 for e in pair.commutator_type)
    if excess % 2:
        raise RuntimeError("odd branching excess: commutator not even? (unreachable)")
    return 1 + excess // 2


@dataclass(frozen=True)
class CensusClass:
    """One simultaneous-conjugation orbit of transitive pairs."""

    rep: OrigamiPair
    orbit_size: int
    image_order: int
    genus: int

    @property
    def mu(self) -> tuple[int, ...]:
        return self.rep.commutator_type


def partitions(d: int) -> Iterator[tuple[int, ...]]:
    """Partitions of d in descending-part canonical form."""

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(cap, remaining), 0, -1):
            yield from rec(remaining - part, part, prefix + (part,))

    yield from rec(d, d, ())


def lex_least_of_type(lam: Sequence[int], d: int) -> Perm:
    """Lexicographically least permutation with cycle type lam: cycles in
    ascending length on consecutive blocks, each a forward shift."""
    if sum(lam) != d:
        raise ValueError(f"partition {lam} does not sum to {d}")
    images = []
    start = 0
    for length in sorted(lam):
        images.extend(list(range(start + 1, start + length)) + [start])
        start += length
    return tuple(images)


def _centralizer_generators(sigma0: Perm, lam_sorted: list[int]) -> list[Perm]:
    """Generators of the centralizer of the block-form permutation: each
    block's own rotation, plus pointwise swaps of adjacent equal blocks."""
    d = len(sigma0)
    ident = list(range(d))
    gens: list[Perm] = []
    starts = []
    pos = 0
    for length in lam_sorted:
        starts.append(pos)
        rot = ident.copy()
        for t in range(length):
            rot[pos + t] = pos + (t + 1) % length
        if length > 1:
            gens.append(tuple(rot))
        pos += length
    for idx in range(len(lam_sorted) - 1):
        if lam_sorted[idx] == lam_sorted[idx + 1]:
            swap = ident.copy()
            a, b = starts[idx], starts[idx + 1]
            for t in range(lam_sorted[idx]):
                swap[a + t], swap[b + t] = b + t, a + t
            gens.append(tuple(swap))
    out = []
    for g in gens:
        out.append(g)
        gi = _inv(g)
        if gi != g:
            out.append(gi)
    return out


def _centralizer_order(lam: Sequence[int]) -> int:
    mult: dict[int, int] = {}
    for part in lam:
        mult[part] = mult.get(part, 0) + 1
    out = 1
    for length, m in mult.items():
        out *= length**m * math.factorial(m)
    return out


@lru_cache(maxsize=8)
def _census_with_index(
    d: int, mu: tuple[int, ...] | None, cap: int = DEFAULT_DEGREE_CAP
) -> tuple[tuple[CensusClass, ...], dict[tuple[Perm, Perm], int]]:
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d > cap:
        raise BudgetExceeded(0, cap, f"census(d={d})")
    if mu is not None and (sum(mu) != d or any(p < 1 for p in mu)):
        raise ValueError(f"mu {mu} is not a partition of {d}")

    fact_d = math.factorial(d)
    found: list[tuple[OrigamiPair, frozenset[Perm], int]] = []
    for lam in partitions(d):
        lam_sorted = sorted(lam)
        sigma0 = lex_least_of_type(lam, d)
        cgens = _centralizer_generators(sigma0, lam_sorted)
        cent_order = _centralizer_order(lam)
        class_size = fact_d // cent_order
        handled: set[Perm] = set()
        for tau in itertools.permutations(range(d)):
            if tau in handled:
                continue
            if mu is not None and cycle_type(commutator(sigma0, tau)) != mu:
                continue
            if not is_transitive(sigma0, tau):
                continue
            orbit = {tau}
            frontier = [tau]
            while frontier:
                nxt = []
                for t in frontier:
                    for c in cgens:
                        t2 = _conj(c, t)
                        if t2 not in orbit:
                            orbit.add(t2)
                            nxt.append(t2)
                frontier = nxt
            handled |= orbit
            rep = OrigamiPair(sigma0, min(orbit))
            found.append((rep, frozenset(orbit), len(orbit) * class_size))

    found.sort(key=lambda item: (item[0].sigma, item[0].tau))
    classes = []
    pair_index: dict[tuple[Perm, Perm], int] = {}
    for cid, (rep, orbit, full_size) in enumerate(found):
        classes.append(
            CensusClass(
                rep=rep,
                orbit_size=full_size,
                image_order=subgroup_order(rep.sigma, rep.tau),
                genus=genus(rep),
            )
        )
        for t in orbit:
            pair_index[(rep.sigma, t)] = cid
    return tuple(classes), pair_index


def census(
    d: int, mu: Sequence[int] | None = None, cap: int = DEFAULT_DEGREE_CAP
) -> list[CensusClass]:
    """One CensusClass per simultaneous-conjugation orbit of transitive
    pairs of degree d, optionally filtered by commutator cycle type."""
    mu_key = tuple(sorted(mu, reverse=True)) if mu is not None else None
    classes, _ = _census_with_index(d, mu_key, cap)
    return list(classes)


def _move_T(p: OrigamiPair) -> OrigamiPair:
    return OrigamiPair(p.sigma, _mul(p.tau, p.sigma))


def _move_T_inv(p: OrigamiPair) -> OrigamiPair:
    return OrigamiPair(p.sigma, _mul(p.tau, _inv(p.sigma)))


def _move_S(p: OrigamiPair) -> OrigamiPair:
    return OrigamiPair(_inv(p.tau), p.sigma)


def _move_S_inv(p: OrigamiPair) -> OrigamiPair:
    return OrigamiPair(p.tau, _inv(p.sigma))


_MOVES = (_move_T, _move_T_inv, _move_S, _move_S_inv)
MOVE_NAMES = ("T", "T_inv", "S", "S_inv")


def nielsen_moves(p: OrigamiPair) -> list[OrigamiPair]:
    """Images under T: (s,t) -> (s,ts), S: (s,t) -> (t^-1,s) and their
    inverses.  The commutator cycle type is checked to survive each move."""
    out = []
    for fn in _MOVES:
        q = fn(p)
        if q.commutator_type != p.commutator_type:
            raise RuntimeError(
                f"puncture class changed under {fn.__name__}: convention bug (unreachable)"
            )
        out.append(q)
    return out


def _canonical_class(pair: OrigamiPair, pair_index: dict) -> int:
    """Class id of an arbitrary transitive pair: conjugate sigma onto the
    lex-least permutation of its cycle type, then look the tau part up in
    the census index (which covers whole centralizer orbits, so any cycle
    alignment works)."""
    d = pair.degree
    lam = cycle_type(pair.sigma)
    target_cycles = []
    start = 0
    for length in sorted(lam):
        target_cycles.append(list(range(start, start + length)))
        start += length
    source_cycles = sorted(cycles_of(pair.sigma), key=lambda c: (len(c), c[0]))
    g = [0] * d
    for src, dst in zip(source_cycles, target_cycles):
        for a, b in zip(src, dst):
            g[a] = b
    g = tuple(g)
    sigma0 = _conj(g, pair.sigma)
    tau0 = _conj(g, pair.tau)
    return pair_index[(sigma0, tau0)]


def origami_graph(
    d: int,
    mu: Sequence[int],
    image_order: int | None = None,
    cap: int = DEFAULT_DEGREE_CAP,
) -> MultiGraph:
    """The 4-regular move graph on census classes with commutator type mu,
    optionally restricted to classes with a given image-group order.

    A mu with no admissible pairs gives an explicit empty graph.
    """
    mu_key = tuple(sorted(mu, reverse=True))
    classes, pair_index = _census_with_index(d, mu_key, cap)
    if image_order is not None:
        keep = [cid for cid, c in enumerate(classes) if c.image_order == image_order]
    else:
        keep = list(range(len(classes)))
    label = f"origami(d={d};mu={'+'.join(map(str, mu_key))}" + (
        f";|G|={image_order})" if image_order is not None else ")"
    )
    if not keep:
        return MultiGraph(np.empty((0, 4), dtype=np.int32), label=label)
    position = {cid: idx for idx, cid in enumerate(keep)}
    moves = []
    for fn in _MOVES:
        images = np.empty(len(keep), dtype=np.int32)
        for idx, cid in enumerate(keep):
            target = _canonical_class(fn(classes[cid].rep), pair_index)
            if target not in position:
                raise RuntimeError(
                    "move left the filtered class set: image order not invariant? (unreachable)"
                )
            images[idx] = position[target]
        moves.append(images)
    states = [classes[cid].rep.encode() for cid in keep]
    return schreier_graph(ActionSpec(states, moves, label=label))
