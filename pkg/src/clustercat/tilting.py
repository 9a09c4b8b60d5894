"""Cluster tilting objects, their complements, and the exchange graph.

Enumeration happens in the modulus-1 category (sets of n indecomposables
with ext-vanishing in both directions between all members) and is
transported to higher modulus by twist-stable expansion.  A direct
in-category enumeration over twist-orbits doubles as an independent
oracle at small rank.  Graph edges come from orbit-level exchanges: drop
one twist-orbit, complete the remainder in the two possible ways.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .orbit import OrbitCategory, OrbitObject, TwistStableObject, distinct_count


class NotRigidError(ValueError):
    """The input has a nonvanishing self-extension somewhere."""


class NotExchangeError(ValueError):
    """The inputs do not form an exchange configuration."""


@dataclass(frozen=True)
class ClusterTilting:
    """Maximal rigid object of the modulus-1 category, n summands."""

    members: tuple[OrbitObject, ...]

    @property
    def key(self) -> tuple[str, ...]:
        return tuple(m.text for m in self.members)


@dataclass(frozen=True)
class GenClusterTilting:
    """Lift of a cluster tilting object: twist-stable with n orbits."""

    stable: TwistStableObject

    @property
    def members(self) -> tuple[OrbitObject, ...]:
        return self.stable.expansion

    @property
    def generator(self) -> tuple[OrbitObject, ...]:
        return self.stable.generator


@dataclass
class TiltingGraph:
    vertices: list[GenClusterTilting]
    edges: list[tuple[int, int]]
    modulus: int

    @cached_property
    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in self.vertices]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])


def is_connected(g: TiltingGraph) -> bool:
    if not g.vertices:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(g.vertices)


def _member_positions(cat: OrbitCategory, members) -> list[int]:
    return [cat.position(x) for x in members]


def _support_mask(positions) -> int:
    mask = 0
    for p in positions:
        mask |= 1 << p
    return mask


def _is_rigid(cat: OrbitCategory, positions) -> bool:
    mask = _support_mask(positions)
    compat = cat.compat_mask
    return all(mask & ~compat[p] == 0 for p in set(positions))


def enumerate_cluster_tilting(cat1: OrbitCategory) -> list[ClusterTilting]:
    """All cluster tilting objects of the modulus-1 category, canonical order."""
    if cat1.modulus != 1:
        raise ValueError("enumeration runs in the modulus-1 category")
    cached = getattr(cat1, "_tilting_cache", None)
    if cached is not None:
        return cached
    n = cat1.ar.quiver.vertex_count
    size = len(cat1.catalog)
    compat = cat1.compat_mask
    full = (1 << size) - 1
    found: list[tuple[int, ...]] = []

    def extend(chosen: tuple[int, ...], candidates: int, start: int) -> None:
        if len(chosen) == n:
            found.append(chosen)
            return
        for j in range(start, size):
            bit = 1 << j
            if candidates & bit and compat[j] & bit:
                extend(chosen + (j,), candidates & compat[j], j + 1)

    extend((), full, 0)

    results = []
    for chosen in sorted(found):
        # maximality: nothing outside is compatible with every member
        outside = full & ~_support_mask(chosen)
        for p in chosen:
            outside &= compat[p]
        if outside:
            raise RuntimeError("rigid n-set is not maximal; not a Dynkin situation")
        results.append(ClusterTilting(tuple(cat1.catalog[j] for j in chosen)))
    cat1._tilting_cache = results
    return results


def lift(t: ClusterTilting, cat: OrbitCategory) -> GenClusterTilting:
    """Twist-stable expansion of a modulus-1 cluster tilting object."""
    stable = cat.build_twist_stable(t.members)
    n = cat.ar.quiver.vertex_count
    if distinct_count(stable.expansion) != cat.modulus * n:
        raise RuntimeError("lift does not have m*n distinct summands")
    return GenClusterTilting(stable)


def cluster_tilting_check(
    cat: OrbitCategory, members
) -> tuple[bool, OrbitObject | None]:
    """Two-sided add-characterization scan over the whole catalog.

    True iff for every indecomposable X: ext1(X, each member) all vanish
    exactly when X is a member, and likewise for ext1(each member, X).
    Returns the first violating object otherwise.
    """
    positions = _member_positions(cat, members)
    support = _support_mask(positions)
    out_ok = cat.ext_zero_out
    in_ok = cat.ext_zero_in
    for j, x in enumerate(cat.catalog):
        member = bool(support & (1 << j))
        left_vanishes = support & ~out_ok[j] == 0  # ext1(X, every member) == 0
        right_vanishes = support & ~in_ok[j] == 0  # ext1(every member, X) == 0
        if left_vanishes != member or right_vanishes != member:
            return False, x
    return True, None


def complements(cat: OrbitCategory, members) -> list[OrbitObject]:
    """All Y completing an almost tilting object to a cluster tilting one.

    members must be rigid with nm-1 distinct summands; a rigid but
    non-extendable input yields the empty list (distinct from the error
    cases, which raise).
    """
    n = cat.ar.quiver.vertex_count
    positions = _member_positions(cat, members)
    expected = cat.modulus * n - 1
    if distinct_count(members) != expected:
        raise ValueError(
            f"almost tilting object needs {expected} distinct summands,"
            f" got {distinct_count(members)}"
        )
    if not _is_rigid(cat, positions):
        raise NotRigidError("input is not rigid")
    support = _support_mask(positions)
    candidates = ~support
    for p in set(positions):
        candidates &= cat.compat_mask[p]
    out = []
    for j in range(len(cat.catalog)):
        if candidates & (1 << j) and cat.compat_mask[j] & (1 << j):
            ok, _ = cluster_tilting_check(cat, list(members) + [cat.catalog[j]])
            if ok:
                out.append(cat.catalog[j])
    return out


def near_complements(
    cat: OrbitCategory, almost: TwistStableObject
) -> tuple[GenClusterTilting, GenClusterTilting]:
    """The two twist-stable completions of an almost near tilting object."""
    n = cat.ar.quiver.vertex_count
    if almost.modulus != cat.modulus:
        raise ValueError("modulus mismatch")
    if almost.orbit_count != n - 1:
        raise ValueError(
            f"almost near tilting object needs {n - 1} orbits, got {almost.orbit_count}"
        )
    if not _is_rigid(cat, _member_positions(cat, almost.expansion)):
        raise NotRigidError("input is not rigid")
    cat1 = cat.derived.orbit(1)
    gen = tuple(dict.fromkeys(almost.generator))  # distinct, order kept
    comps = complements(cat1, gen)
    if len(comps) != 2:
        raise NotExchangeError(
            f"generator is not an almost tilting object (found {len(comps)} complements)"
        )
    completions = []
    for x in comps:
        stable = cat.build_twist_stable(gen + (x,))
        ok, witness = cluster_tilting_check(cat, stable.expansion)
        if not ok:
            raise RuntimeError(f"completion failed the tilting check at {witness.text}")
        completions.append(GenClusterTilting(stable))
    return completions[0], completions[1]


def build_tilting_graph(cat: OrbitCategory) -> TiltingGraph:
    """Vertices are all lifts; edges are single-orbit exchanges."""
    cached = getattr(cat, "_graph_cache", None)
    if cached is not None:
        return cached
    cat1 = cat.derived.orbit(1)
    tiltings = enumerate_cluster_tilting(cat1)
    vertices = [lift(t, cat) for t in tiltings]
    index = {v.generator: i for i, v in enumerate(vertices)}
    edges = set()
    for i, v in enumerate(vertices):
        for drop in v.generator:
            rest = tuple(g for g in v.generator if g != drop)
            almost = cat.build_twist_stable(rest)
            a, b = near_complements(cat, almost)
            pair = {index[a.generator], index[b.generator]}
            if i not in pair:
                raise RuntimeError("exchange did not return the original vertex")
            other = (pair - {i}).pop() if len(pair) == 2 else i
            if other != i:
                edges.add((min(i, other), max(i, other)))
    graph = TiltingGraph(vertices, sorted(edges), cat.modulus)
    cat._graph_cache = graph
    return graph


def exchange_pair_ext(cat1: OrbitCategory, x1: OrbitObject, x2: OrbitObject) -> int:
    """Ext^1 dimension across an exchange pair of the modulus-1 category."""
    if cat1.modulus != 1:
        raise ValueError("exchange pairs live in the modulus-1 category")
    if x1 == x2:
        raise NotExchangeError("an exchange pair consists of two distinct objects")
    for t in enumerate_cluster_tilting(cat1):
        if x1 in t.members:
            rest = tuple(m for m in t.members if m != x1)
            comps = complements(cat1, rest)
            if set(comps) == {x1, x2}:
                return cat1.ext1(x1, x2)
    raise NotExchangeError(f"{x1.text}, {x2.text} do not exchange")


def enumerate_stable_tilting_direct(cat: OrbitCategory) -> list[tuple[OrbitObject, ...]]:
    """Independent oracle: scan twist-orbit unions inside the category itself.

    Enumerates all unions of n twist-orbits of the catalog that pass the
    two-sided add-characterization, without using the modulus-1 detour.
    Intended for small rank; cost grows as C(#orbits, n).
    """
    from itertools import combinations

    n = cat.ar.quiver.vertex_count
    perm = cat.twist_permutation
    seen = set()
    orbits = []
    for start in range(len(cat.catalog)):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cycle.append(j)
            seen.add(j)
            j = perm[j]
        orbits.append(tuple(sorted(cycle)))
    results = []
    for combo in combinations(orbits, n):
        members = [cat.catalog[j] for orbit in combo for j in orbit]
        ok, _ = cluster_tilting_check(cat, members)
        if ok:
            results.append(tuple(sorted(members, key=cat.position)))
    return sorted(results)
