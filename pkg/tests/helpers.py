"""Shared test utilities: independent oracles and corpus builders.

The brute-force solvers enumerate positional strategies outright and are
only used on tiny games; the line-graph solver decides edge-priority
games without going through the intermediate-vertex conversion under
test.
"""

from __future__ import annotations

from itertools import product

from regsolve.arena import EdgeGame, ParityGame, Player
from regsolve.generators import gen_figure, gen_h, gen_random
from regsolve.solvers import solve_zielonka


def _play_winner(start: int, succ_choice, priority) -> Player:
    """Winner of the unique play under fixed positional choices."""
    seen: dict[int, int] = {}
    path = []
    v = start
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = succ_choice[v]
    cycle = path[seen[v]:]
    top = max(priority[u] for u in cycle)
    return Player.EVE if top % 2 == 0 else Player.ADAM


def brute_force_regions(game: ParityGame) -> tuple[set[int], set[int]]:
    """Exact winning regions by enumerating positional strategies."""
    eve_vs = [v for v in range(game.n) if game.owner[v] is Player.EVE]
    adam_vs = [v for v in range(game.n) if game.owner[v] is Player.ADAM]
    eve_strats = list(product(*(game.successors[v] for v in eve_vs)))
    adam_strats = list(product(*(game.successors[v] for v in adam_vs)))
    win_eve = set()
    for start in range(game.n):
        for es in eve_strats:
            choice = [0] * game.n
            for v, w in zip(eve_vs, es):
                choice[v] = w
            ok = True
            for ats in adam_strats:
                for v, w in zip(adam_vs, ats):
                    choice[v] = w
                if _play_winner(start, choice, game.priority) is not Player.EVE:
                    ok = False
                    break
            if ok:
                win_eve.add(start)
                break
    return win_eve, set(range(game.n)) - win_eve


def line_graph_regions(game: EdgeGame) -> tuple[set[int], set[int]]:
    """Edge-priority oracle: solve the line graph, then fold the first
    move back onto the base vertices."""
    edges = list(game.edges())
    out_of: dict[int, list[int]] = {v: [] for v in range(game.n)}
    for idx, (v, _w, _p) in enumerate(edges):
        out_of[v].append(idx)
    owners = tuple(game.owner[w] for (_v, w, _p) in edges)
    prios = tuple(p for (_v, _w, p) in edges)
    succs = tuple(tuple(out_of[w]) for (_v, w, _p) in edges)
    line = ParityGame(owners, prios, succs)
    sol = solve_zielonka(line)
    win_eve = set()
    for v in range(game.n):
        firsts = out_of[v]
        if game.owner[v] is Player.EVE:
            if any(e in sol.win_eve for e in firsts):
                win_eve.add(v)
        else:
            if all(e in sol.win_eve for e in firsts):
                win_eve.add(v)
    return win_eve, set(range(game.n)) - win_eve


def random_corpus(count: int, max_n: int, max_d: int, seed: int) -> list[ParityGame]:
    """Deterministic corpus of random games with n <= max_n, d <= max_d."""
    from regsolve.generators import SplitMix64

    rng = SplitMix64(seed)
    games = []
    for _ in range(count):
        n = 1 + rng.randrange(max_n)
        d = rng.randrange(max_d + 1)
        min_deg = 1
        max_deg = 1 + rng.randrange(min(n, 3))
        games.append(gen_random(n, d, min_deg, max_deg, rng.next_u64()))
    return games


def random_word_automaton(
    n_states: int, max_priority: int, seed: int, alphabet=("a", "b")
) -> "AltAutomaton":
    """Seeded random alternating parity word automaton."""
    from regsolve.automata import DIA, AltAutomaton, atom, conj, disj
    from regsolve.generators import SplitMix64

    rng = SplitMix64(seed)

    def formula(depth: int):
        if depth == 0 or rng.randrange(100) < 45:
            return atom(DIA, rng.randrange(n_states))
        arity = 2 + rng.randrange(2)
        ops = [formula(depth - 1) for _ in range(arity)]
        return conj(ops) if rng.randrange(2) == 0 else disj(ops)

    names = tuple(f"q{i}" for i in range(n_states))
    prios = tuple(rng.randrange(max_priority + 1) for _ in range(n_states))
    delta = {
        (q, a): formula(2)
        for q in range(n_states)
        for a in alphabet
    }
    return AltAutomaton(tuple(alphabet), "word", names, prios, 0, delta)


def random_lasso(seed: int, alphabet=("a", "b"), max_prefix=2, max_loop=3):
    """Seeded random ultimately periodic word."""
    from regsolve.automata import LassoWord
    from regsolve.generators import SplitMix64

    rng = SplitMix64(seed)
    plen = rng.randrange(max_prefix + 1)
    llen = 1 + rng.randrange(max_loop)
    prefix = tuple(alphabet[rng.randrange(len(alphabet))] for _ in range(plen))
    loop = tuple(alphabet[rng.randrange(len(alphabet))] for _ in range(llen))
    return LassoWord(prefix, loop)


def family_games(max_vertices: int = 16) -> list[tuple[str, EdgeGame]]:
    """Every generator family instance with at most `max_vertices`
    vertices."""
    out = [("fig0", gen_figure("fig0")), ("fighigh", gen_figure("fighigh"))]
    n = 0
    while 2 ** n <= max_vertices:
        out.append((f"h{n}", gen_h(n)))
        n += 1
    for m in range(1, max_vertices):
        if m + 1 > max_vertices:
            break
        out.append((f"fig1({m})", gen_figure("fig1", m)))
    return out
