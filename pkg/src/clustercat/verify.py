"""Verification battery: runs every invariant suite over small Dynkin cells.

The default battery is every orientation of A_1..A_4 and D_4, each with
modulus 1, 2 and 3.  Checks come in two groups: per-quiver (module and
derived level, modulus independent) and per-(quiver, modulus).  Each
check reports a name and an optional failure detail; the report is
machine readable and deterministic.
"""

from __future__ import annotations

from itertools import combinations

from .arquiver import ARQuiver
from .derived import DerivedCategory, DObject
from .orbit import OrbitCategory, distinct_count
from .quiver import Quiver, euler_form, positive_root_count
from .tilting import (
    build_tilting_graph,
    cluster_tilting_check,
    complements,
    enumerate_cluster_tilting,
    enumerate_stable_tilting_direct,
    exchange_pair_ext,
    is_connected,
    lift,
    near_complements,
)
from .endo import block_pattern_report, endo_profile, exchange_layer_dim, single_end_dim

DIAGRAMS: dict[str, tuple[int, tuple[tuple[int, int], ...]]] = {
    "A1": (1, ()),
    "A2": (2, ((1, 2),)),
    "A3": (3, ((1, 2), (2, 3))),
    "A4": (4, ((1, 2), (2, 3), (3, 4))),
    "D4": (4, ((1, 2), (2, 3), (2, 4))),
}

TILTING_COUNTS = {"A1": 2, "A2": 5, "A3": 14, "A4": 42, "D4": 50}

DEFAULT_M_VALUES = (1, 2, 3)


def orientations(name: str) -> list[tuple[str, Quiver]]:
    """All 2^edges orientations of a diagram, labelled name#k."""
    n, edges = DIAGRAMS[name]
    out = []
    for bits in range(1 << len(edges)):
        arrows = tuple(
            (a, b) if not bits & (1 << i) else (b, a) for i, (a, b) in enumerate(edges)
        )
        out.append((f"{name}#{bits}", Quiver(n, arrows)))
    return out


def run_verification(diagrams=None, m_values=DEFAULT_M_VALUES, tamper=None) -> dict:
    """Run the full battery; returns a JSON-ready report dict.

    tamper, when given, is called as tamper(label, ar) right after each
    AR quiver is built; it exists so tests can corrupt internal tables
    and confirm the battery notices.
    """
    names = list(diagrams) if diagrams else list(DIAGRAMS)
    for name in names:
        if name not in DIAGRAMS:
            raise ValueError(f"unknown diagram {name!r}; choose from {list(DIAGRAMS)}")
    cells = []
    total = failed = 0
    for name in names:
        for label, q in orientations(name):
            ar = ARQuiver(q)
            if tamper is not None:
                tamper(label, ar)
            derived = DerivedCategory(ar)
            checks = _quiver_checks(name, q, ar, derived)
            cells.append(
                {
                    "quiver": label,
                    "arrows": [list(a) for a in q.arrows],
                    "m": None,
                    "checks": checks,
                }
            )
            for m in m_values:
                cat = derived.orbit(m)
                cells.append(
                    {
                        "quiver": label,
                        "arrows": [list(a) for a in q.arrows],
                        "m": m,
                        "checks": _orbit_checks(name, cat),
                    }
                )
    for cell in cells:
        for check in cell["checks"]:
            total += 1
            if not check["passed"]:
                failed += 1
    return {
        "schema_version": 1,
        "battery": names,
        "m_values": list(m_values),
        "cells": cells,
        "checks_total": total,
        "checks_failed": failed,
        "passed": failed == 0,
    }


def _result(name: str, detail: str | None) -> dict:
    return {"name": name, "passed": detail is None, "detail": detail}


def _run_check(checks: list, check_name: str, fn) -> None:
    # a corrupted structure may make a check raise instead of returning a
    # detail string; either way it must land in the report, not crash it
    try:
        detail = fn()
    except Exception as exc:  # noqa: BLE001 - report and move on
        detail = f"check raised {type(exc).__name__}: {exc}"
    checks.append(_result(check_name, detail))


def _quiver_checks(name: str, q: Quiver, ar: ARQuiver, derived: DerivedCategory) -> list[dict]:
    checks = []

    def run(check_name, fn):
        _run_check(checks, check_name, fn)

    run("catalog-size-modules", lambda: _check_module_count(ar))
    run("mesh-additivity", lambda: _check_mesh_additivity(ar))
    run("arrow-multiplicity", lambda: _check_multiplicities(ar))
    run("oracle-hom-equivalence", lambda: _check_hom_oracle(ar))
    run("oracle-ext-equivalence", lambda: _check_ext_oracle(ar))
    run("ar-mesh-hom-identity", lambda: _check_mesh_hom_identity(ar))
    run("serre-derived", lambda: _check_serre_derived(derived))
    run("twist-shift-step", lambda: _check_twist_steps(derived))
    run("orientation-reversal", lambda: _check_reversal(q, ar))
    return checks


def _orbit_checks(name: str, cat: OrbitCategory) -> list[dict]:
    n = cat.ar.quiver.vertex_count
    m = cat.modulus
    checks = []

    def run(check_name, fn):
        _run_check(checks, check_name, fn)

    run("catalog-size-orbit", lambda: _check_orbit_count(cat))
    run("covering-fibers", lambda: _check_covering(cat))
    run("twist-free-orbits", lambda: _check_twist_orbits(cat))
    run("self-ext-vanishing", lambda: _check_self_ext(cat))
    run("end-dim-one", lambda: _check_end_dims(cat))
    run("serre-orbit", lambda: _check_serre_orbit(cat))
    if m == 1:
        run("cy-symmetry", lambda: _check_cy_symmetry(cat))
    run("fractional-cy", lambda: _check_fractional_cy(cat))
    run("rigidity-transfer", lambda: _check_rigidity_transfer(cat))
    run("twist-hom-invariance", lambda: _check_twist_hom_invariance(cat))
    if n <= 3:
        run("orbit-count-criterion", lambda: _check_orbit_count_criterion(cat))
    run("tilting-count", lambda: _check_tilting_count(name, cat))
    run("tilting-brute-force", lambda: _check_tilting_brute_force(cat))
    run("lift-check", lambda: _check_lifts(cat))
    if n <= 3 and m <= 2:
        run("direct-enumeration", lambda: _check_direct_enumeration(cat))
    run("complement-counts", lambda: _check_complements(cat))
    run("near-complement-pairs", lambda: _check_near_complements(cat))
    run("graph-connected", lambda: _check_graph_connected(cat))
    run("graph-shape", lambda: _check_graph_shape(name, cat))
    run("exchange-layer-dim", lambda: _check_exchange_layers(cat))
    if m == 1:
        run("exchange-pair-ext", lambda: _check_exchange_pairs(cat))
    run("endo-blocks", lambda: _check_endo_blocks(cat))
    return checks


# -- per-quiver checks ---------------------------------------------------


def _check_module_count(ar: ARQuiver) -> str | None:
    expected = positive_root_count(ar.dynkin)
    if len(ar.modules) != expected:
        return f"catalog has {len(ar.modules)} modules, expected {expected}"
    return None


def _check_mesh_additivity(ar: ARQuiver) -> str | None:
    for nid, middles in ar.mesh_middles.items():
        xid = ar.tau_inverse[nid]
        lhs = tuple(
            a + b
            for a, b in zip(ar.module(nid).dim_vector, ar.module(xid).dim_vector)
        )
        rhs = tuple(
            sum(ar.module(e).dim_vector[v] for e in middles)
            for v in range(ar.quiver.vertex_count)
        )
        if lhs != rhs:
            return f"mesh at m{nid}: {lhs} != {rhs}"
    return None


def _check_multiplicities(ar: ARQuiver) -> str | None:
    for s, t, mult in ar.arrow_multiplicities():
        if mult != 1:
            return f"arrow m{s} -> m{t} has multiplicity {mult}"
    return None


def _check_hom_oracle(ar: ARQuiver) -> str | None:
    for a in ar.modules:
        for b in ar.modules:
            fast = ar.hom_dim(a.id, b.id)
            oracle = ar.matrix_hom_dim(a.id, b.id)
            if fast != oracle:
                return f"hom(m{a.id}, m{b.id}): recursion {fast}, matrix oracle {oracle}"
    return None


def _check_ext_oracle(ar: ARQuiver) -> str | None:
    for a in ar.modules:
        for b in ar.modules:
            fast = ar.ext_dim(a.id, b.id)
            oracle = ar.resolution_ext_dim(a.id, b.id)
            if fast != oracle:
                return f"ext(m{a.id}, m{b.id}): Euler form {fast}, resolution oracle {oracle}"
            if fast < 0:
                return f"ext(m{a.id}, m{b.id}) negative: {fast}"
    return None


def _check_mesh_hom_identity(ar: ARQuiver) -> str | None:
    # along 0 -> tauN -> E -> N -> 0:
    # hom(M, tauN) - sum_E hom(M, E) + hom(M, N) = [M == N]
    for nid, middles in ar.mesh_middles.items():
        xid = ar.tau_inverse[nid]
        for m in ar.modules:
            val = (
                ar.hom_dim(m.id, nid)
                - sum(ar.hom_dim(m.id, e) for e in middles)
                + ar.hom_dim(m.id, xid)
            )
            if val != (1 if m.id == xid else 0):
                return f"mesh Hom identity fails at M=m{m.id}, mesh of m{nid}"
    return None


def _check_serre_derived(derived: DerivedCategory) -> str | None:
    ar = derived.ar
    objs = [DObject(m.id, s) for m in ar.modules for s in range(-2, 3)]
    for x in objs:
        sx = derived.shift(derived.tau(x), 1)
        for y in objs:
            if derived.hom(x, y) != derived.hom(y, sx):
                return f"Serre duality fails at ({x.text}, {y.text})"
    return None


def _check_twist_steps(derived: DerivedCategory) -> str | None:
    for m in derived.ar.modules:
        x = DObject(m.id, 0)
        step = derived.twist(x).shift - x.shift
        expected = 2 if m.is_injective else 1
        if step != expected:
            return f"twist shift step at m{m.id}: {step} != {expected}"
        if derived.twist_inv(derived.twist(x)) != x:
            return f"twist inverse fails at m{m.id}"
        if derived.tau_inv(derived.tau(x)) != x:
            return f"tau inverse fails at m{m.id}"
    return None


def _check_reversal(q: Quiver, ar: ARQuiver) -> str | None:
    rev = ARQuiver(q.reversed())
    if len(rev.modules) != len(ar.modules):
        return "reversed orientation changes the catalog size"
    if sorted(m.dim_vector for m in rev.modules) != sorted(
        m.dim_vector for m in ar.modules
    ):
        return "reversed orientation changes the dimension-vector multiset"
    if rev.dynkin != ar.dynkin:
        return "reversed orientation changes the Dynkin class"
    return None


# -- per-(quiver, m) checks ------------------------------------------------


def _check_orbit_count(cat: OrbitCategory) -> str | None:
    n = cat.ar.quiver.vertex_count
    expected = cat.modulus * (len(cat.ar.modules) + n)
    if len(cat.catalog) != expected:
        return f"orbit catalog has {len(cat.catalog)} objects, expected {expected}"
    if len(set(cat.catalog)) != expected:
        return "orbit catalog contains duplicates"
    return None


def _check_covering(cat: OrbitCategory) -> str | None:
    base = cat.derived.orbit(1)
    fibers: dict = {o.rep: 0 for o in base.catalog}
    for x in cat.catalog:
        image = cat.project(x)
        if image.rep not in fibers:
            return f"projection leaves the base catalog at {x.text}"
        fibers[image.rep] += 1
        if cat.project(cat.twist_action(x)) != image:
            return f"projection not twist-invariant at {x.text}"
    bad = {k.text: v for k, v in fibers.items() if v != cat.modulus}
    if bad:
        return f"fiber sizes off: {bad}"
    return None


def _check_twist_orbits(cat: OrbitCategory) -> str | None:
    perm = cat.twist_permutation
    seen = set()
    for start in range(len(perm)):
        if start in seen:
            continue
        length, j = 0, start
        while True:
            seen.add(j)
            length += 1
            j = perm[j]
            if j == start:
                break
        if length != cat.modulus:
            return f"twist orbit of size {length} != modulus {cat.modulus}"
    return None


def _check_self_ext(cat: OrbitCategory) -> str | None:
    for i, x in enumerate(cat.catalog):
        if cat.ext_table[i][i] != 0:
            return f"self-extension at {x.text}"
    return None


def _check_end_dims(cat: OrbitCategory) -> str | None:
    for x in cat.catalog:
        d = single_end_dim(cat, x)
        if d != 1:
            return f"endomorphism dimension {d} at {x.text}"
    return None


def _check_serre_orbit(cat: OrbitCategory) -> str | None:
    pos = {o.rep: i for i, o in enumerate(cat.catalog)}
    serre_idx = [pos[cat.serre(x).rep] for x in cat.catalog]
    table = cat.hom_table
    for i in range(len(cat.catalog)):
        for j in range(len(cat.catalog)):
            if table[i][j] != table[j][serre_idx[i]]:
                return (
                    f"orbit Serre duality fails at ({cat.catalog[i].text},"
                    f" {cat.catalog[j].text})"
                )
    return None


def _check_cy_symmetry(cat: OrbitCategory) -> str | None:
    table = cat.ext_table
    for i in range(len(table)):
        for j in range(len(table)):
            if table[i][j] != table[j][i]:
                return (
                    f"ext not symmetric at ({cat.catalog[i].text},"
                    f" {cat.catalog[j].text})"
                )
    return None


def _check_fractional_cy(cat: OrbitCategory) -> str | None:
    # the double shift by the modulus equals the modulus-th Serre power
    pos = {o.rep: i for i, o in enumerate(cat.catalog)}
    serre_idx = [pos[cat.serre(x).rep] for x in cat.catalog]
    for i, x in enumerate(cat.catalog):
        j = i
        for _ in range(cat.modulus):
            j = serre_idx[j]
        direct = cat.canonicalize(cat.derived.shift(x.rep, 2 * cat.modulus))
        if pos[direct.rep] != j:
            return f"fractional CY permutation fails at {x.text}"
    return None


def _check_rigidity_transfer(cat: OrbitCategory) -> str | None:
    # pairs suffice: both sides of the transfer identity are sums over
    # ordered pairs of generator summands
    base = cat.derived.orbit(1)
    singles = base.catalog
    for a in singles:
        for b in singles:
            sa = cat.build_twist_stable([a])
            sb = cat.build_twist_stable([b])
            total = sum(cat.ext1(x, y) for x in sa.expansion for y in sb.expansion)
            base_total = base.ext1(a, b)
            if total != cat.modulus * base_total:
                return (
                    f"expansion ext total {total} != m * {base_total}"
                    f" at ({a.text}, {b.text})"
                )
            if (total == 0) != (base_total == 0):
                return f"rigidity transfer equivalence fails at ({a.text}, {b.text})"
    return None


def _check_twist_hom_invariance(cat: OrbitCategory) -> str | None:
    base = cat.derived.orbit(1)
    for g in base.catalog:
        stable = cat.build_twist_stable([g])
        for y in cat.catalog:
            ref = sum(cat.hom(s, y) for s in stable.expansion)
            z = y
            for _ in range(cat.modulus - 1):
                z = cat.twist_action(z)
                if sum(cat.hom(s, z) for s in stable.expansion) != ref:
                    return f"twist Hom invariance fails at generator {g.text}, y {y.text}"
    return None


def _check_orbit_count_criterion(cat: OrbitCategory) -> str | None:
    # twist-stable rigid objects are tilting exactly when they use n orbits
    base = cat.derived.orbit(1)
    n = cat.ar.quiver.vertex_count
    size = len(base.catalog)
    compat = base.compat_mask
    rigid_sets: list[tuple[int, ...]] = []

    def extend(chosen, candidates, start):
        if chosen:
            rigid_sets.append(chosen)
        if len(chosen) == n:
            return
        for j in range(start, size):
            bit = 1 << j
            if candidates & bit and compat[j] & bit:
                extend(chosen + (j,), candidates & compat[j], j + 1)

    extend((), (1 << size) - 1, 0)
    for chosen in rigid_sets:
        gen = [base.catalog[j] for j in chosen]
        stable = cat.build_twist_stable(gen)
        positions = [cat.position(x) for x in stable.expansion]
        mask = 0
        for p in positions:
            mask |= 1 << p
        rigid = all(mask & ~cat.compat_mask[p] == 0 for p in positions)
        if not rigid:
            return f"expansion of a rigid generator is not rigid: {[g.text for g in gen]}"
        ok, _ = cluster_tilting_check(cat, stable.expansion)
        if ok != (stable.orbit_count == n):
            return (
                f"orbit-count criterion fails for generator {[g.text for g in gen]}:"
                f" tilting={ok}, orbits={stable.orbit_count}"
            )
    return None


def _check_tilting_count(name: str, cat: OrbitCategory) -> str | None:
    tiltings = enumerate_cluster_tilting(cat.derived.orbit(1))
    expected = TILTING_COUNTS[name]
    if len(tiltings) != expected:
        return f"{len(tiltings)} tilting objects, expected {expected}"
    return None


def _check_tilting_brute_force(cat: OrbitCategory) -> str | None:
    base = cat.derived.orbit(1)
    n = cat.ar.quiver.vertex_count
    size = len(base.catalog)
    compat = base.compat_mask
    brute = []
    for combo in combinations(range(size), n):
        mask = 0
        for p in combo:
            mask |= 1 << p
        if all(mask & ~compat[p] == 0 for p in combo):
            outside = 0
            rest = ((1 << size) - 1) & ~mask
            for j in range(size):
                if rest & (1 << j) and mask & ~compat[j] == 0 and compat[j] & (1 << j):
                    outside += 1
            if outside == 0:
                brute.append(combo)
    fast = [
        tuple(base.position(x) for x in t.members)
        for t in enumerate_cluster_tilting(base)
    ]
    if sorted(brute) != sorted(fast):
        return f"brute-force subset scan found {len(brute)}, enumeration {len(fast)}"
    return None


def _check_lifts(cat: OrbitCategory) -> str | None:
    base = cat.derived.orbit(1)
    n = cat.ar.quiver.vertex_count
    for t in enumerate_cluster_tilting(base):
        lifted = lift(t, cat)
        if distinct_count(lifted.members) != cat.modulus * n:
            return f"lift of {t.key} has wrong summand count"
        ok, witness = cluster_tilting_check(cat, lifted.members)
        if not ok:
            return f"lift of {t.key} fails the tilting check at {witness.text}"
    return None


def _check_direct_enumeration(cat: OrbitCategory) -> str | None:
    base = cat.derived.orbit(1)
    direct = enumerate_stable_tilting_direct(cat)
    lifted = sorted(
        tuple(sorted(lift(t, cat).members, key=cat.position))
        for t in enumerate_cluster_tilting(base)
    )
    if direct != lifted:
        return (
            f"direct in-category enumeration found {len(direct)} objects,"
            f" lifts give {len(lifted)}"
        )
    return None


def _check_complements(cat: OrbitCategory) -> str | None:
    base = cat.derived.orbit(1)
    expected = 1 if cat.modulus >= 2 else 2
    for t in enumerate_cluster_tilting(base):
        members = lift(t, cat).members
        for drop in members:
            rest = [x for x in members if x != drop]
            found = complements(cat, rest)
            if len(found) != expected:
                return (
                    f"{len(found)} complements after dropping {drop.text}"
                    f" from {t.key}, expected {expected}"
                )
            if drop not in found:
                return f"dropped summand {drop.text} not among its complements"
    return None


def _check_near_complements(cat: OrbitCategory) -> str | None:
    base = cat.derived.orbit(1)
    for t in enumerate_cluster_tilting(base):
        vertex = lift(t, cat)
        for drop in vertex.generator:
            rest = tuple(g for g in vertex.generator if g != drop)
            almost = cat.build_twist_stable(rest)
            a, b = near_complements(cat, almost)
            gens = {a.generator, b.generator}
            if vertex.generator not in gens:
                return f"near completion loses the original vertex at {t.key}"
            if len(gens) != 2:
                return f"near completions coincide at {t.key}"
            base_comps = set(complements(base, rest))
            swapped = {
                next(iter(set(g.generator) - set(rest))) for g in (a, b)
            }
            if swapped != base_comps:
                return f"near completions disagree with modulus-1 complements at {t.key}"
    return None


def _check_graph_connected(cat: OrbitCategory) -> str | None:
    graph = build_tilting_graph(cat)
    if not is_connected(graph):
        return "tilting graph is disconnected"
    return None


def _check_graph_shape(name: str, cat: OrbitCategory) -> str | None:
    graph = build_tilting_graph(cat)
    n = cat.ar.quiver.vertex_count
    for a, b in graph.edges:
        ga = set(graph.vertices[a].generator)
        gb = set(graph.vertices[b].generator)
        if len(ga - gb) != 1 or len(gb - ga) != 1:
            return "edge endpoints do not differ in exactly one orbit"
    degrees = [graph.degree(i) for i in range(len(graph.vertices))]
    if degrees and set(degrees) != {n}:
        return f"vertex degrees {sorted(set(degrees))} != {n}"
    if name == "A1" and (len(graph.vertices), len(graph.edges)) != (2, 1):
        return "A1 graph is not a single edge"
    if name == "A2":
        if (len(graph.vertices), len(graph.edges)) != (5, 5):
            return "A2 graph is not a pentagon"
    if name == "A3" and len(graph.vertices) != 14:
        return "A3 graph does not have 14 vertices"
    return None


def _check_exchange_layers(cat: OrbitCategory) -> str | None:
    graph = build_tilting_graph(cat)
    for a, b in graph.edges:
        va, vb = graph.vertices[a], graph.vertices[b]
        for one, two in ((va, vb), (vb, va)):
            swapped = tuple(set(two.generator) - set(one.generator))
            stable = cat.build_twist_stable(swapped)
            dim = exchange_layer_dim(cat, one, stable)
            if dim != cat.modulus:
                return f"exchange layer dimension {dim} != modulus on an edge"
    return None


def _check_exchange_pairs(cat: OrbitCategory) -> str | None:
    graph = build_tilting_graph(cat)
    for a, b in graph.edges:
        ga = set(graph.vertices[a].generator)
        gb = set(graph.vertices[b].generator)
        (x1,) = tuple(ga - gb)
        (x2,) = tuple(gb - ga)
        if exchange_pair_ext(cat, x1, x2) != 1:
            return f"exchange pair ({x1.text}, {x2.text}) not one-dimensional"
        if exchange_pair_ext(cat, x2, x1) != 1:
            return f"exchange pair ({x2.text}, {x1.text}) not one-dimensional"
    return None


def _check_endo_blocks(cat: OrbitCategory) -> str | None:
    base = cat.derived.orbit(1)
    m = cat.modulus
    projective_gen = None
    for t in enumerate_cluster_tilting(base):
        gct = lift(t, cat)
        profile = endo_profile(cat, gct)
        if not profile.module_tier:
            report = block_pattern_report(profile)
            if report.ok is not None:
                return "pattern check ran on a non-module-tier generator"
            continue
        report = block_pattern_report(profile)
        if report.ok is not True:
            return f"block pattern deviations at {t.key}: {report.deviations}"
        if profile.total != m * (profile.dim_c + profile.dim_e):
            return f"total dimension {profile.total} != m(C+E) at {t.key}"
        if m >= 2 and any(profile.block_dims[i][i] != profile.dim_c for i in range(m)):
            return f"diagonal block != dim C at {t.key}"
        if all(
            cat.ar.module(g.rep.module_id).is_projective and g.rep.shift == 0
            for g in gct.generator
        ):
            projective_gen = profile
    if projective_gen is not None and projective_gen.dim_e != 0:
        return "projective generator has nonzero superdiagonal dimension"
    return None
