"""Generator families: shapes, counts and determinism."""

import pytest

from regsolve.arena import Player, edge_game_to_vertex_game, write_pgsolver
from regsolve.generators import SplitMix64, gen_figure, gen_h, gen_random


def test_h0_shape():
    g = gen_h(0)
    assert g.n == 1
    assert g.owner == (Player.ADAM,)
    assert g.successors == ((0,),)
    assert g.edge_priority == ((0,),)


def test_h1_matches_drawn_figure():
    g = gen_h(1)
    assert g.n == 2
    edges = sorted(g.edges())
    assert edges == [(0, 0, 0), (0, 1, 1), (1, 0, 2), (1, 1, 0)]


def test_h_counts():
    # edge recurrence: twice the previous family plus the two cross edges
    for n in range(7):
        g = gen_h(n)
        assert g.n == 2 ** n
        assert sum(len(s) for s in g.successors) == 3 * 2 ** n - 2
        assert all(o is Player.ADAM for o in g.owner)
        assert g.names[0] == "init"


def test_h_size_limit():
    with pytest.raises(ValueError, match="size limit"):
        gen_h(21)


def test_fig0_shape():
    g = gen_figure("fig0")
    assert sorted(g.edges()) == [
        (0, 0, 0),
        (0, 1, 1),
        (1, 1, 2),
        (1, 2, 3),
        (2, 2, 0),
    ]


def test_fighigh_shape():
    g = gen_figure("fighigh")
    assert sorted(g.edges()) == [(0, 0, 0), (0, 1, 1), (1, 0, 2), (1, 1, 0)]


def test_fig1_shape():
    g = gen_figure("fig1", 3)
    edges = list(g.edges())
    assert len(edges) == 16
    assert max(p for _, _, p in edges) == 6
    for j, i, p in edges:
        assert p == (2 * i if j <= i else 2 * j - 1)
    # the drawn 4-vertex instance: self-loops carry 0,2,4,6
    assert [p for j, i, p in edges if i == j] == [0, 2, 4, 6]


def test_fig1_requires_n():
    with pytest.raises(ValueError):
        gen_figure("fig1")
    with pytest.raises(ValueError):
        gen_figure("nosuch")


def test_random_forced_shape():
    g = gen_random(1, 0, 1, 1, 77)
    assert g.n == 1
    assert g.priority == (0,)
    assert g.successors == ((0,),)


def test_random_deterministic():
    a = gen_random(14, 5, 1, 4, seed=42)
    b = gen_random(14, 5, 1, 4, seed=42)
    assert write_pgsolver(a) == write_pgsolver(b)
    c = gen_random(14, 5, 1, 4, seed=43)
    assert write_pgsolver(a) != write_pgsolver(c)


def test_random_respects_bounds():
    for seed in range(20):
        g = gen_random(9, 4, 2, 3, seed)
        assert g.n == 9
        for v in range(g.n):
            assert 0 <= g.priority[v] <= 4
            assert 2 <= len(g.successors[v]) <= 3
            assert len(set(g.successors[v])) == len(g.successors[v])


def test_random_validates_parameters():
    from regsolve.arena import GameError

    with pytest.raises(GameError):
        gen_random(3, 2, 0, 2, 1)
    with pytest.raises(GameError):
        gen_random(3, 2, 2, 1, 1)
    with pytest.raises(GameError):
        gen_random(3, 2, 1, 4, 1)
    with pytest.raises(GameError):
        gen_random(3, -1, 1, 1, 1)


def test_splitmix_reference_values():
    # reference stream for seed 1234567 (first three outputs)
    rng = SplitMix64(1234567)
    assert rng.next_u64() == 6457827717110365317
    assert rng.next_u64() == 3203168211198807973
    assert rng.next_u64() == 9817491932198370423


def test_generated_families_convert_cleanly():
    for eg in [gen_h(3), gen_figure("fig0"), gen_figure("fig1", 4)]:
        g = edge_game_to_vertex_game(eg)
        assert g.n >= eg.n
        assert all(p >= 0 for p in g.priority)
