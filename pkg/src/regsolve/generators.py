"""Deterministic game generators: the worked example families plus a
seeded random-game generator for corpus testing.

All randomness comes from SplitMix64 (documented in the README) so that
identical parameters and seed reproduce games bit for bit, in any
implementation of the same PRNG.
"""

from __future__ import annotations

from .arena import EdgeGame, GameError, ParityGame, Player

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 PRNG; `randrange` uses rejection sampling, so draws are
    unbiased and reproducible across languages."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def sample_distinct(self, n: int, count: int) -> list[int]:
        """`count` distinct values from [0, n), by partial Fisher-Yates;
        order of selection is kept."""
        pool = list(range(n))
        out = []
        for i in range(count):
            j = i + self.randrange(n - i)
            pool[i], pool[j] = pool[j], pool[i]
            out.append(pool[i])
        return out


def gen_h(n: int) -> EdgeGame:
    """Doubling family of one-player games that need many registers.

    The base game is a single opponent-owned vertex with a priority-0
    self-loop; level n glues two copies of level n-1 with a cross edge of
    priority 2n-1 from the first initial vertex to the second and one of
    priority 2n back.  Vertex 0 is the initial vertex (named "init").
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > 20:
        raise ValueError("n > 20 would exceed the 2**20 vertex size limit")
    succ: list[list[int]] = [[0]]
    prio: list[list[int]] = [[0]]
    for level in range(1, n + 1):
        half = len(succ)
        succ = [list(s) for s in succ] + [[w + half for w in s] for s in succ]
        prio = [list(p) for p in prio] + [list(p) for p in prio]
        succ[0].append(half)
        prio[0].append(2 * level - 1)
        succ[half].append(0)
        prio[half].append(2 * level)
    size = len(succ)
    names = ("init",) + ("",) * (size - 1)
    return EdgeGame(
        (Player.ADAM,) * size,
        tuple(tuple(s) for s in succ),
        tuple(tuple(p) for p in prio),
        names,
    )


def gen_figure(name: str, n: int | None = None) -> EdgeGame:
    """The three small one-player example arenas.

    - "fig0": three vertices in a line, self-loops 0/2/0 and forward
      edges 1 then 3.
    - "fighigh": two vertices with priority-0 self-loops and cross edges
      1 and 2.
    - "fig1" (needs n >= 1): vertices v_0..v_n with an edge from v_j to
      v_i of priority 2i when j <= i and 2j-1 when j > i.
    """
    if name == "fig0":
        return EdgeGame(
            (Player.ADAM,) * 3,
            ((0, 1), (1, 2), (2,)),
            ((0, 1), (2, 3), (0,)),
        )
    if name == "fighigh":
        return EdgeGame(
            (Player.ADAM,) * 2,
            ((0, 1), (1, 0)),
            ((0, 1), (0, 2)),
        )
    if name == "fig1":
        if n is None or n < 1:
            raise ValueError("fig1 requires n >= 1")
        succ = tuple(tuple(range(n + 1)) for _ in range(n + 1))
        prio = tuple(
            tuple(2 * i if j <= i else 2 * j - 1 for i in range(n + 1))
            for j in range(n + 1)
        )
        return EdgeGame((Player.ADAM,) * (n + 1), succ, prio)
    raise ValueError(f"unknown figure family: {name!r}")


def gen_random(n: int, d: int, min_deg: int, max_deg: int, seed: int) -> ParityGame:
    """Seeded random game: uniform owner, uniform priority in [0..d],
    uniform out-degree in [min_deg..max_deg] with distinct successors.

    Per vertex the draw order is owner, priority, degree, successors.
    """
    if n < 1:
        raise GameError("n must be at least 1")
    if d < 0:
        raise GameError("d must be non-negative")
    if not 1 <= min_deg <= max_deg <= n:
        raise GameError("need 1 <= min_deg <= max_deg <= n")
    rng = SplitMix64(seed)
    owners, prios, succs = [], [], []
    for _ in range(n):
        owners.append(Player.EVE if rng.randrange(2) == 0 else Player.ADAM)
        prios.append(rng.randrange(d + 1))
        deg = min_deg + rng.randrange(max_deg - min_deg + 1)
        succs.append(tuple(rng.sample_distinct(n, deg)))
    return ParityGame(tuple(owners), tuple(prios), tuple(succs))
