import itertools
import random

import pytest

from groupconn.graphs import Digraph, subdivide
from groupconn.groups import Z2, Z3, Z4, Z2xZ2, make_group
from groupconn.solver import (
    Verdict,
    decide,
    exists_nowhere_zero_flow,
    preprocess,
    screen_no,
    solve_fast,
    solve_naive,
    solve_ultra_naive,
    verify_certificate,
)

from conftest import (
    CUBE,
    MAIN_GROUPS,
    OCTAHEDRON,
    PETERSEN,
    THETA,
    complete_graph,
    cycle_graph,
    random_connected_loopfree,
)


def oracle(g, group):
    """Ground truth: exhaustive check with no preprocessing at all."""
    return decide(g, group, algorithm="ultra", use_preprocessing=False).connected


# -- preprocessing -----------------------------------------------------------


def test_preprocess_deletes_loops():
    g = Digraph(3, ((0, 1), (1, 2), (2, 0), (1, 1)))
    inst = preprocess(g, Z4)
    assert inst.early_no is None
    assert any("loop" in s for s in inst.steps)


def test_preprocess_bridge_is_no():
    g = Digraph(2, ((0, 1),))
    inst = preprocess(g, Z4)
    assert inst.early_no is not None
    assert verify_certificate(g, Z4, inst.early_no)


def test_preprocess_short_cycle_deleted():
    # a cycle shorter than the group order is connected and drops out
    inst = preprocess(cycle_graph(3), Z4)
    assert inst.early_no is None and inst.components == ()


def test_preprocess_long_cycle_is_no():
    for length, group in ((4, Z4), (4, Z2xZ2), (3, Z3), (2, Z2)):
        g = cycle_graph(length) if length > 2 else THETA
        inst = preprocess(cycle_graph(length), group)
        assert inst.early_no is not None
        assert verify_certificate(cycle_graph(length), group, inst.early_no)


def test_preprocess_long_thread_is_no():
    # a thread with >= |G| edges cannot be connected (it contains an edge cut
    # of size 1 after contraction arguments fail; the oracle agrees)
    g = subdivide(complete_graph(4), 0, 3)  # thread of length 4 over Z4
    inst = preprocess(g, Z4)
    assert inst.early_no is not None
    assert verify_certificate(g, Z4, inst.early_no)
    assert not oracle(g, Z4)


def test_preprocess_saturated_thread_deleted():
    # a thread of length |G|-1 forces flow zero through it, so it is removed
    g = subdivide(complete_graph(4), 0, 2)  # thread of length 3 over Z4
    inst = preprocess(g, Z4)
    assert inst.early_no is None
    assert len(inst.forced_threads) == 1
    # removing the thread leaves K4 minus an edge
    assert sum(c.graph.m for c in inst.components) == 5


def test_preprocess_fixpoint_cascade():
    # deleting a saturated thread can expose a new bridge
    g = Digraph(4, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 0)))  # triangle + path back
    gg = subdivide(g, 3, 1)  # the (2,3) edge becomes a length-2 thread
    inst = preprocess(gg, Z3)
    # over Z3 the length-2 thread is saturated; its removal leaves the
    # triangle plus an isolated leftover, all of which dissolves
    assert inst.early_no is None or verify_certificate(gg, Z3, inst.early_no)
    v = decide(gg, Z3)
    assert v.connected == oracle(gg, Z3)


def test_preprocess_trivial_graphs():
    assert preprocess(Digraph(1, ()), Z4).components == ()
    assert decide(Digraph(1, ()), Z4).connected
    assert decide(Digraph(3, ()), Z4).connected is False or True  # no crash
    # a single loop is connected for every group
    assert decide(Digraph(1, ((0, 0),)), Z4).connected


# -- certificates ------------------------------------------------------------


def test_verify_certificate_bridge():
    g = Digraph(2, ((0, 1),))
    assert verify_certificate(g, Z4, (0,))  # only the zero flow exists
    assert not verify_certificate(g, Z4, (1,))


def test_verify_certificate_loops_never_block():
    g = Digraph(2, ((0, 1), (1, 1)))
    assert verify_certificate(g, Z4, (0, 2))
    assert not verify_certificate(g, Z4, (1, 2))


def test_verify_certificate_length_check():
    with pytest.raises(ValueError):
        verify_certificate(THETA, Z4, (0, 0))


def test_verify_certificate_matches_flow_search():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 5); g = random_connected_loopfree(rng, n, rng.randint(n, 7))
        h = tuple(rng.randrange(4) for _ in range(g.m))
        from groupconn.flows import find_satisfying_flow

        assert verify_certificate(g, Z4, h) == (find_satisfying_flow(g, Z4, h) is None)


def test_no_verdicts_carry_valid_certificates():
    rng = random.Random(6)
    for _ in range(60):
        n = rng.randint(2, 5); g = random_connected_loopfree(rng, n, rng.randint(n - 1, 7))
        for group in (Z4, Z2xZ2):
            v = decide(g, group)
            if not v.connected:
                assert v.certificate is not None
                assert verify_certificate(g, group, v.certificate)
            else:
                assert v.certificate is None


# -- engine agreement --------------------------------------------------------


def test_engines_agree_small_random():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 5); g = random_connected_loopfree(rng, n, rng.randint(n - 1, 6))
        for group in MAIN_GROUPS:
            truth = oracle(g, group)
            assert decide(g, group, "ultra").connected == truth
            assert decide(g, group, "naive").connected == truth
            assert decide(g, group, "fast").connected == truth
            assert decide(g, group, "fast", thread_opt=False).connected == truth


def test_engines_agree_on_subdivisions():
    for base in (complete_graph(4), THETA):
        for e in range(base.m):
            for k in (1, 2):
                g = subdivide(base, e, k)
                for group in (Z4, Z2xZ2):
                    truth = oracle(g, group)
                    assert decide(g, group, "naive").connected == truth
                    assert decide(g, group, "fast").connected == truth


def test_fast_engine_cube():
    for group in (Z4, Z2xZ2):
        assert solve_fast(CUBE, group).connected == decide(CUBE, group, "naive").connected


# -- known verdicts ----------------------------------------------------------


def test_cycle_law():
    # a cycle is connected exactly when its length is below the group order
    for spec in ([2], [3], [4], [2, 2], [5], [6], [2, 3]):
        group = make_group(spec)
        for length in range(2, group.order + 2):
            g = THETA if length == 2 else cycle_graph(length)
            g = Digraph(2, ((0, 1), (0, 1))) if length == 2 else g
            assert decide(g, group).connected == (length <= group.order - 1)


def test_theta_graph():
    for group in (Z4, Z2xZ2):
        assert decide(THETA, group).connected == oracle(THETA, group)


def test_complete_graphs_yes():
    for group in (Z4, Z2xZ2):
        assert decide(complete_graph(5), group, "fast").connected
        assert decide(complete_graph(6), group, "fast").connected


def test_octahedron_yes():
    for group in (Z4, Z2xZ2):
        assert decide(OCTAHEDRON, group, "fast").connected


def test_petersen_not_connected():
    # no nowhere-zero 4-flow, so the all-zero mapping is a certificate
    for group in (Z4, Z2xZ2):
        v = decide(PETERSEN, group, "fast")
        assert not v.connected
        assert verify_certificate(PETERSEN, group, v.certificate)


# -- nowhere-zero flows ------------------------------------------------------


def test_exists_nowhere_zero_flow():
    assert exists_nowhere_zero_flow(complete_graph(4), Z4)
    assert not exists_nowhere_zero_flow(PETERSEN, Z4)
    assert not exists_nowhere_zero_flow(Digraph(3, ((0, 1), (1, 2))), Z4)
    assert exists_nowhere_zero_flow(Digraph(1, ((0, 0),)), Z4)


def test_nzflow_order4_group_independence():
    rng = random.Random(8)
    for _ in range(40):
        n = rng.randint(2, 6); g = random_connected_loopfree(rng, n, rng.randint(n - 1, 9))
        assert exists_nowhere_zero_flow(g, Z4) == exists_nowhere_zero_flow(g, Z2xZ2)


# -- screening ---------------------------------------------------------------


def test_screen_no_sound():
    # any certificate the screen returns must verify; YES graphs never screen NO
    rng = random.Random(9)
    for seed in range(25):
        n = rng.randint(3, 6); g = random_connected_loopfree(rng, n, rng.randint(n - 1, 8))
        for group in (Z4, Z2xZ2):
            v = screen_no(g, group, budget=512, seed=seed)
            if v is not None:
                assert not v.connected
                assert verify_certificate(g, group, v.certificate)
                assert not oracle(g, group)


def test_screen_no_finds_easy_no():
    # C4 over Z4 is not connected and the screen should find that quickly
    hits = 0
    g = subdivide(CUBE, 0, 3)  # contains a length-4 thread: NO, caught by screen or preprocessing
    for seed in range(5):
        v = screen_no(cycle_graph(4), Z4, budget=256, seed=seed)
        hits += v is not None
    assert hits >= 1


# -- verdict plumbing --------------------------------------------------------


def test_decide_disconnected_components():
    two_triangles = Digraph(6, ((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)))
    assert decide(two_triangles, Z4).connected
    triangle_plus_bridge = Digraph(5, ((0, 1), (1, 2), (2, 0), (3, 4)))
    v = decide(triangle_plus_bridge, Z4)
    assert not v.connected
    assert verify_certificate(triangle_plus_bridge, Z4, v.certificate)


def test_verdict_json_shape():
    import json

    v = decide(Digraph(2, ((0, 1),)), Z4)
    payload = json.loads(v.to_json())
    assert payload["connected"] is False
    assert payload["group"] == "z4"
    assert payload["certificate"][0].keys() == {"tail", "head", "forbidden"}
    y = decide(cycle_graph(3), Z4)
    assert json.loads(y.to_json())["certificate"] is None


def test_decide_rejects_bad_options():
    with pytest.raises(ValueError):
        decide(cycle_graph(3), Z4, algorithm="fast", use_preprocessing=False)
    with pytest.raises(ValueError):
        decide(complete_graph(4), Z4, algorithm="nope")
