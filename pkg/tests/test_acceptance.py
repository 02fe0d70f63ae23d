"""Acceptance criteria, one test per criterion.

Each test prints a single ``[criterion NN] PASS|FAIL`` line; the lines are
repeated in the terminal summary.
"""
import itertools
import json
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from coarse_lab.action import (
    Persistence,
    ThetaAction,
    check_dual_prehom,
    check_freeness,
    check_monoid_structure,
    check_phi,
    classify_persistence,
    compose_arrays,
    fixed_points,
    phi,
    phi_element,
    theta,
    three_coloring,
)
from coarse_lab.cli import run
from coarse_lab.cover import cover_at_infinity
from coarse_lab.generators import cycles_family, random_regular_large_girth, sl2_family, wang_space
from coarse_lab.graphs import Graph, Point, SpaceOfGraphs, cycle_graph, distance
from coarse_lab.monoid import PartialTranslation, compose, invert, is_idempotent, leq
from coarse_lab.orientation import orient_labelling, petersen_partition, validate_labelling
from coarse_lab.spectral import (
    GhostVerdict,
    certify_expander,
    classify_ghost,
    gaps,
    ghost_projection,
    laplacian,
    wang_projection,
)
from coarse_lab.words import IDENTITY, FreeWord, words_up_to

from helpers import cycle_gap

# dense-eigensolver oracle values (tests/oracles/sl2_oracle.py)
SL2_ORACLE = {3: 0.15849364905389035, 5: 0.095491502812526, 7: 0.07322330470336236,
              11: 0.04774575140626125, 13: 0.04060864117916807}


@pytest.fixture(scope="module")
def cycles():
    return ThetaAction(orient_labelling(cycles_family(range(5, 15))))


@pytest.fixture(scope="module")
def sl2():
    return ThetaAction(orient_labelling(sl2_family([3, 5])))


@pytest.fixture(scope="module")
def sl2_wide():
    return ThetaAction(orient_labelling(sl2_family([3, 5, 7])))


# ---------------------------------------------------------------- 1


def connected_bounded_graph(rng, n, max_deg):
    """Random tree with degrees <= max_deg, topped up with random extra edges."""
    edges, deg = set(), [0] * n
    for v in range(1, n):
        open_ = [u for u in range(v) if deg[u] < max_deg]
        u = open_[int(rng.integers(len(open_)))]
        edges.add((u, v))
        deg[u] += 1
        deg[v] += 1
    for _ in range(int(rng.integers(0, max_deg * n))):
        u, v = sorted(int(x) for x in rng.integers(n, size=2))
        if u != v and deg[u] < max_deg and deg[v] < max_deg and (u, v) not in edges:
            edges.add((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, frozenset(edges))


def partition_ok(G, classes, k):
    if len(classes) != k or Counter(e for c in classes for e in c) != Counter(G.edges):
        return False
    return all(max(Counter(v for e in c for v in e).values(), default=0) <= 2 for c in classes)


def labelling_ok(X, L):
    if not validate_labelling(L).ok:
        return False
    labelled = Counter((e.c, min(e.tail, e.head), max(e.tail, e.head)) for e in L.edges)
    expected = Counter((c, u, v) for c, G in enumerate(X.components) for u, v in G.edges)
    outs = Counter((e.c, e.tail, e.gen) for e in L.edges)
    ins = Counter((e.c, e.head, e.gen) for e in L.edges)
    return (labelled == expected and all(1 <= e.gen <= L.k for e in L.edges)
            and max(outs.values(), default=0) <= 1 and max(ins.values(), default=0) <= 1)


def test_criterion_01_orientation(accept):
    rng = np.random.default_rng(2024)
    failures, slowest = [], 0.0
    for trial in range(100):
        k = int(rng.integers(1, 4))
        n = int(rng.integers(2, 129))
        G = connected_bounded_graph(rng, n, 2 * k)
        t0 = time.perf_counter()
        classes = petersen_partition(G, k)
        X = SpaceOfGraphs((G,))
        L = orient_labelling(X)  # minimal k; the partition above uses the drawn k
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if not (partition_ok(G, classes, k) and labelling_ok(X, L) and dt < 1.0):
            failures.append((trial, n, k))
    families = [cycles_family(range(5, 15)), sl2_family([3, 5, 7]),
                random_regular_large_girth(4, [20, 40], girth_min=4, seed=1)]
    for X in families:
        L = orient_labelling(X)
        per_graph = [petersen_partition(G, L.k) for G in X.components]
        if not labelling_ok(X, L) or not all(partition_ok(G, c, L.k) for G, c in zip(X.components, per_graph)):
            failures.append(("family", X.sizes))
    accept(1, "Petersen partition and almost-k-orientation invariants", not failures,
           f"100 random graphs + 3 families, slowest {slowest:.3f}s, failures {failures[:3]}")


# ---------------------------------------------------------------- 2


def test_criterion_02_inverse_monoid(accept):
    four = SpaceOfGraphs((Graph(4, frozenset({(0, 1), (1, 2), (2, 3)})),))
    pts = four.points()
    exhaustive = [PartialTranslation(four, dict(zip(dom, img)))
                  for r in range(5)
                  for dom in itertools.combinations(pts, r)
                  for img in itertools.permutations(pts, r)]
    space = cycles_family([5, 6, 8])
    rng = np.random.default_rng(7)
    randoms = []
    for _ in range(200):
        pairs = {}
        for p in space.points():
            if rng.random() < 0.4:
                q = Point(p.component, (p.vertex + int(rng.integers(-2, 3))) % space.sizes[p.component])
                if q not in pairs.values():
                    pairs[p] = q
        randoms.append(PartialTranslation(space, pairs))

    bad = []
    for family in (exhaustive, randoms):
        for s in family:
            si = invert(s)
            if compose(compose(s, si), s) != s or invert(si) != s:
                bad.append(("regular", s))
        idem = [s for s in family if is_idempotent(s)]
        for e, f in itertools.product(idem[:40], repeat=2):
            if compose(e, f) != compose(f, e):
                bad.append(("commute", e, f))
        sample = family if family is exhaustive else family[:60]
        for s, t in itertools.product(sample, repeat=2):
            le = leq(s, t)
            # s <= t iff s = (s s^-1) t
            if le != (compose(compose(s, invert(s)), t) == s):
                bad.append(("order", s, t))
            if le and leq(t, s) and s != t:
                bad.append(("antisymmetry", s, t))
    for s, t, u in itertools.islice(itertools.product(exhaustive[::3], repeat=3), 20000):
        if leq(s, t) and leq(t, u) and not leq(s, u):
            bad.append(("transitivity", s, t, u))
    ok = not bad and len(exhaustive) == 209 and sum(map(is_idempotent, exhaustive)) == 16
    accept(2, "inverse-monoid axioms", ok, f"209 exhaustive + 200 random, violations {len(bad)}")


# ---------------------------------------------------------------- 3


def direct_dual_prehom_violations(action, L):
    words = list(words_up_to(action.k, L))
    th = {w: theta(action, w) for w in words}
    bad = 0
    for g, h in itertools.product(words, repeat=2):
        if not leq(compose(th[g], th[h]), theta(action, g * h)):
            bad += 1
    return bad, len(words) ** 2


def test_criterion_03_dual_prehomomorphism(accept, cycles, sl2):
    results = [check_dual_prehom(a, 3) for a in (cycles, sl2)]
    direct = [direct_dual_prehom_violations(a, 3) for a in (cycles, sl2)]
    ok = all(r.ok and not r.witnesses for r in results) and all(b == 0 for b, _ in direct)
    accept(3, "dual prehomomorphism for |g|,|h| <= 3", ok,
           f"checked {[r.checked for r in results]}, direct recheck {[n for _, n in direct]} pairs")


# ---------------------------------------------------------------- 4


def test_criterion_04_freeness(accept, cycles, sl2):
    results = [check_freeness(a, 6) for a in (cycles, sl2)]
    boundary = []
    for c, n in enumerate(cycles.space.sizes):
        for sign in (1, -1):
            fp = fixed_points(cycles, FreeWord.gen(1, sign * n), c)
            boundary.append(len(fp) == n)
    ok = all(r.ok for r in results) and all(boundary)
    accept(4, "freeness below girth, a1^n boundary", ok,
           f"checked {[r.checked for r in results]}, boundary cases {len(boundary)}")


# ---------------------------------------------------------------- 5


def test_criterion_05_three_coloring(accept, cycles, sl2, sl2_wide):
    attempts = successes = 0
    for action in (cycles, sl2, sl2_wide):
        X = action.space
        for w in words_up_to(action.k, 4):
            if w.is_identity():
                continue
            free = [not fixed_points(action, w, i) for i in range(len(X))]
            start = len(X)
            while start > 0 and free[start - 1]:
                start -= 1
            if start == len(X):
                continue
            attempts += 1
            colour = three_coloring(action, w, start)
            arr = action.array(w)
            covered = {X.index(p) for p in colour} == set(range(X.offsets[start], X.point_count))
            valid = all(colour[X.point_of_index[int(arr[x])]] != c
                        for p, c in colour.items()
                        if (x := X.index(p)) is not None and arr[x] >= 0)
            successes += covered and valid and set(colour.values()) <= {0, 1, 2}
    accept(5, "3-colouring of fixed-point-free theta_w", attempts > 0 and successes == attempts,
           f"{successes}/{attempts}")


# ---------------------------------------------------------------- 6


def test_criterion_06_spectral_exactness(accept):
    X = cycles_family(range(3, 65))
    gs = gaps(X)
    err = max(abs(g - cycle_gap(n)) for g, n in zip(gs, X.sizes))
    kernels = []
    for Y in (X, sl2_family([3, 5, 7]), random_regular_large_girth(4, [16, 30], girth_min=4, seed=2)):
        for i in range(len(Y)):
            ev = laplacian(Y, i).eigenvalues
            kernels.append(int(np.sum(np.abs(ev) <= 1e-9 * max(1.0, np.abs(ev).max()))))
    ok = err < 1e-9 and all(k == 1 for k in kernels)
    accept(6, "cycle gaps closed form, 1-dim kernels", ok,
           f"max error {err:.1e}, kernels checked {len(kernels)}")


# ---------------------------------------------------------------- 7


def test_criterion_07_expander_controls(accept):
    bad = []
    for top in (8, 14, 20, 33):
        X = cycles_family(range(3, top + 1))
        g = cycle_gap(top)
        for c_min in (g * (1 + 1e-9), g + 1e-6, 0.05, 0.25, 0.9):
            if c_min <= g:
                continue
            cert = certify_expander(X, c_min)
            if cert.verdict.value != "FAIL" or cert.witness is None:
                bad.append((top, c_min))
    primes = [5, 7, 11, 13]
    Y = sl2_family(primes)
    measured = gaps(Y)
    err = max(abs(m - SL2_ORACLE[p]) for m, p in zip(measured, primes))
    floor = min(SL2_ORACLE[p] for p in primes)
    cert = certify_expander(Y, floor - 1e-6)
    ok = not bad and err < 1e-6 and floor > 0 and cert.verdict.value == "PASS"
    accept(7, "expander controls", ok, f"SL2 gap error {err:.1e}, min pinned gap {floor:.6f}")


# ---------------------------------------------------------------- 8


def test_criterion_08_ghost_dichotomy(accept):
    X = cycles_family(range(3, 13))
    p = ghost_projection(X)
    bad = []
    for eps in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)):
        rep = classify_ghost(p, float(eps))
        want = {i for i, n in enumerate(X.sizes) if n <= 1 / eps}
        from_entries = {i for i, B in p.blocks.items() if np.abs(B).max() >= float(eps)}
        if rep.verdict is not GhostVerdict.GHOST or set(rep.offending_blocks) != want or from_entries != want:
            bad.append(("p", eps))
    truncations = 0
    base = cycles_family(range(3, 11))
    for rows in range(1, 9):
        sub = SpaceOfGraphs(base.components[:rows])
        n1 = sub.sizes[0]
        for cols in range(1, 9):
            Y = wang_space(sub, cols)
            q = wang_projection(Y)
            for eps in (Fraction(1, n1), Fraction(1, 2 * n1), Fraction(1, 8 * n1)):
                truncations += 1
                rep = classify_ghost(q, float(eps))
                if rep.verdict is not GhostVerdict.NOT_GHOST or rep.witness is None or rep.witness["column"] != 1:
                    bad.append(("q", rows, cols, eps))
                    continue
                # every rectangle R_{i,j} inside the truncation misses a column-1 block >= eps
                for j in range(1, cols):
                    B = q.blocks[Y.component_of[(1, j + 1)]]
                    if np.abs(B).max() < float(eps) * (1 - 1e-12):
                        bad.append(("rect", rows, cols, j, eps))
    accept(8, "ghost dichotomy p vs q", not bad, f"{truncations} Wang truncations, failures {bad[:3]}")


# ---------------------------------------------------------------- 9


def brute_cross(X, R):
    pts = X.points()
    return {(p, q) for p, q in itertools.product(pts, repeat=2)
            if p.component != q.component and distance(X, p, q) <= R}


def test_criterion_09_covering(accept, cycles, sl2):
    tiny = ThetaAction(orient_labelling(SpaceOfGraphs((Graph(1, frozenset()), Graph(1, frozenset()),
                                                       cycle_graph(5), cycle_graph(7)))))
    bad, cross_seen = [], 0
    for action in (cycles, sl2, tiny):
        for R in (1, 2, 3):
            rep = cover_at_infinity(action, R, 1)
            brute = brute_cross(action.space, R)
            cross_seen += len(brute)
            if rep.verdict != "PASS" or any(len(w) > R for w in rep.words_used) or rep.exceptional_pairs != brute:
                bad.append((action.space.sizes, R))
    accept(9, "cover at infinity, F_R = brute force", not bad and cross_seen > 0,
           f"cross pairs matched {cross_seen}, failures {bad}")


# ---------------------------------------------------------------- 10


def test_criterion_10_structure(accept, cycles, sl2, sl2_wide):
    reports = {name: check_monoid_structure(a, 3) for name, a in
               (("cycles", cycles), ("sl2{3,5}", sl2), ("sl2{3,5,7}", sl2_wide))}
    phis = [check_phi(a, 4) for a in (cycles, sl2, sl2_wide)]
    direct, persistent = [], 0
    for action in (cycles, sl2_wide):
        for w in words_up_to(action.k, 4):
            if classify_persistence(action, w).verdict is Persistence.PERSISTENT:
                persistent += 1
                if phi(action, w) != w:
                    direct.append(str(w))
                e = compose_arrays(action.array(w), action.array(w.inverse()))
                if phi_element(action, e, 4) != IDENTITY:
                    direct.append(f"idempotent {w}")
    ok = all(r.ok for r in reports.values()) and all(r.ok for r in phis) and not direct and persistent > 0
    accept(10, "structure clauses 1-3 and Phi", ok,
           f"{persistent} persistent words; SL2 {{3,5}} has 2 components so Phi is vacuous there; failures {direct[:3]}")


# ---------------------------------------------------------------- 11


def test_criterion_11_suite(accept, tmp_path):
    runs = [["suite", "--family", "cycles", "--lengths", "5..14"],
            ["suite", "--family", "sl2", "--primes", "3,5"]]
    t0 = time.perf_counter()
    codes, identical = [], []
    for argv in runs:
        blobs = []
        for rep in range(2):
            out = tmp_path / f"{argv[2]}-{rep}.json"
            code, _ = run(argv + ["--no-timestamp", "--json", str(out)])
            codes.append(code)
            blobs.append(out.read_bytes())
        identical.append(blobs[0] == blobs[1])
        json.loads(blobs[0])
    elapsed = time.perf_counter() - t0
    ok = codes == [0, 0, 0, 0] and all(identical) and elapsed < 300
    accept(11, "suite runtime and byte-identical reports", ok, f"{elapsed:.1f}s for 4 runs")
