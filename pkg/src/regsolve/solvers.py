"""Baseline parity-game solvers and strategy verification.

``solve_zielonka`` is the trusted oracle; ``solve_spm`` (small progress
measures, lifted once per player) is the workhorse applied to register
arenas.  Both return full :class:`~regsolve.arena.Solution` objects and
are deterministic: attractors are computed in BFS order from the target
set and measure lifting processes the lowest vertex index first.
"""

from __future__ import annotations

import heapq
from collections import deque

from .arena import ParityGame, Player, Solution, dual_game, tarjan_scc


def attractor(
    game: ParityGame,
    player: Player,
    targets,
    active: list[bool],
    preds: list[list[int]],
) -> tuple[set[int], dict[int, int]]:
    """Attractor of `targets` for `player` within the `active` subgame.

    Returns the attractor set together with the attractor strategy for
    `player` on its vertices outside the target set (BFS tie-breaking).
    """
    attr = set(targets)
    strategy: dict[int, int] = {}
    out_left: dict[int, int] = {}
    queue = deque(sorted(attr))
    while queue:
        w = queue.popleft()
        for v in preds[w]:
            if not active[v] or v in attr:
                continue
            if game.owner[v] is player:
                attr.add(v)
                strategy[v] = w
                queue.append(v)
            else:
                left = out_left.get(v)
                if left is None:
                    left = sum(1 for u in game.successors[v] if active[u])
                left -= 1
                out_left[v] = left
                if left == 0:
                    attr.add(v)
                    queue.append(v)
    return attr, strategy


def _zielonka(game: ParityGame, active: list[bool], count: int, preds):
    """Recursive core, written as a generator trampoline to avoid
    exhausting the interpreter stack on deep recursions."""
    if count == 0:
        return {Player.EVE: set(), Player.ADAM: set()}, {Player.EVE: {}, Player.ADAM: {}}
    d = max(game.priority[v] for v in range(game.n) if active[v])
    player = Player.EVE if d % 2 == 0 else Player.ADAM
    tops = [v for v in range(game.n) if active[v] and game.priority[v] == d]
    attr, attr_strat = attractor(game, player, tops, active, preds)

    sub_active = active[:]
    for v in attr:
        sub_active[v] = False
    regions, strats = yield (sub_active, count - len(attr))

    opp = player.opponent
    if not regions[opp]:
        win = {v for v in range(game.n) if active[v]}
        strategy = dict(strats[player])
        strategy.update(attr_strat)
        for v in tops:
            if game.owner[v] is player:
                strategy[v] = next(w for w in game.successors[v] if active[w])
        regions = {player: win, opp: set()}
        strats = {player: strategy, opp: {}}
        return regions, strats

    battr, battr_strat = attractor(game, opp, regions[opp], active, preds)
    sub_active = active[:]
    for v in battr:
        sub_active[v] = False
    regions2, strats2 = yield (sub_active, count - len(battr))

    opp_win = regions2[opp] | battr
    opp_strat = dict(strats2[opp])
    opp_strat.update(battr_strat)
    opp_strat.update(strats[opp])
    return (
        {player: regions2[player], opp: opp_win},
        {player: strats2[player], opp: opp_strat},
    )


def solve_zielonka(game: ParityGame) -> Solution:
    """Exact winning regions and positional strategies (recursive
    attractor decomposition)."""
    preds = game.predecessor_lists()
    active = [True] * game.n

    stack = [_zielonka(game, active, game.n, preds)]
    result = None
    while stack:
        gen = stack[-1]
        try:
            sub_active, count = gen.send(result)
            result = None
            stack.append(_zielonka(game, sub_active, count, preds))
        except StopIteration as stop:
            result = stop.value
            stack.pop()
    regions, strats = result
    return Solution(
        frozenset(regions[Player.EVE]),
        frozenset(regions[Player.ADAM]),
        strats[Player.EVE],
        strats[Player.ADAM],
    )


# ---------------------------------------------------------------------------
# Small progress measures


class _Measures:
    """Eve-side progress measures over the odd priorities of a subgame.

    A measure is a tuple indexed by the occurring odd priorities in
    descending order; the component for priority p is capped by the
    number of priority-p vertices.  ``None`` is the top element.
    """

    def __init__(self, game: ParityGame, active: list[bool]):
        counts: dict[int, int] = {}
        for v in range(game.n):
            if active[v] and game.priority[v] % 2 == 1:
                counts[game.priority[v]] = counts.get(game.priority[v], 0) + 1
        self.odd_desc = sorted(counts, reverse=True)
        self.caps = tuple(counts[p] for p in self.odd_desc)
        self.zero = (0,) * len(self.odd_desc)

    def significant(self, priority: int) -> int:
        """Number of measure components for odd priorities >= priority."""
        lo, hi = 0, len(self.odd_desc)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.odd_desc[mid] >= priority:
                lo = mid + 1
            else:
                hi = mid
        return lo

    def prog(self, measure, priority: int):
        """Least measure m with m >=_priority `measure`, strict when
        `priority` is odd."""
        if measure is None:
            return None
        j = self.significant(priority)
        head = list(measure[:j])
        if priority % 2 == 0:
            return tuple(head) + self.zero[j:]
        # strictly increase the least significant component, with carry
        for i in range(j - 1, -1, -1):
            if head[i] < self.caps[i]:
                head[i] += 1
                for t in range(i + 1, j):
                    head[t] = 0
                return tuple(head) + self.zero[j:]
        return None


def _less(a, b) -> bool:
    """Strict measure comparison with None as top."""
    if b is None:
        return a is not None
    if a is None:
        return False
    return a < b


def _spm_lift(game: ParityGame, active: list[bool], preds) -> tuple[set[int], dict[int, int]]:
    """Run the lifting fixpoint for Eve; returns her region and strategy."""
    ms = _Measures(game, active)
    rho: list = [None] * game.n
    for v in range(game.n):
        if active[v]:
            rho[v] = ms.zero

    def value(v):
        out, first = None, True
        if game.owner[v] is Player.EVE:
            for w in game.successors[v]:
                if not active[w]:
                    continue
                m = ms.prog(rho[w], game.priority[v])
                if first or _less(m, out):
                    out, first = m, False
            return out
        out = ms.zero
        for w in game.successors[v]:
            if not active[w]:
                continue
            m = ms.prog(rho[w], game.priority[v])
            if _less(out, m):
                out = m
        return out

    heap = [v for v in range(game.n) if active[v]]
    heapq.heapify(heap)
    queued = [active[v] for v in range(game.n)]
    while heap:
        v = heapq.heappop(heap)
        queued[v] = False
        new = value(v)
        if _less(rho[v], new):
            rho[v] = new
            for u in preds[v]:
                if active[u] and not queued[u]:
                    queued[u] = True
                    heapq.heappush(heap, u)

    win = {v for v in range(game.n) if active[v] and rho[v] is not None}
    strategy: dict[int, int] = {}
    for v in win:
        if game.owner[v] is not Player.EVE:
            continue
        pick, pick_m, first = None, None, True
        for w in game.successors[v]:
            if not active[w]:
                continue
            m = ms.prog(rho[w], game.priority[v])
            if first or _less(m, pick_m):
                pick, pick_m, first = w, m, False
        strategy[v] = pick
    return win, strategy


def solve_spm(game: ParityGame) -> Solution:
    """Small progress measures, lifted once per player.

    Eve's region and strategy come from lifting on the game itself and
    Adam's from lifting on the dual game (owners swapped, priorities
    shifted by one).  The game is decomposed bottom-up along strongly
    connected components first; each component is solved by lifting and
    extended by attractors, which keeps the measure co-domains small
    without changing the returned partition.
    """
    preds = game.predecessor_lists()
    dual = dual_game(game)
    win_eve: set[int] = set()
    win_adam: set[int] = set()
    strat_eve: dict[int, int] = {}
    strat_adam: dict[int, int] = {}
    active = [True] * game.n
    # reverse topological order: when a component is reached, everything
    # it can leave into has been solved and absorbed already, so its
    # still-active part is a closed subgame.
    for comp in tarjan_scc(game.successors):
        part = [v for v in comp if active[v]]
        if not part:
            continue
        comp_active = [False] * game.n
        for v in part:
            comp_active[v] = True
        eve_part, eve_strat = _spm_lift(game, comp_active, preds)
        strat_eve.update(eve_strat)
        # by determinacy the rest of this closed subgame is Adam's; his
        # strategy comes from lifting the dual restricted to his region,
        # where measures stay finite instead of grinding to top
        adam_part = [v for v in part if v not in eve_part]
        adam_strat = {}
        if adam_part:
            adam_active = [False] * game.n
            for v in adam_part:
                adam_active[v] = True
            adam_won, adam_strat = _spm_lift(dual, adam_active, preds)
            if len(adam_won) != len(adam_part):
                raise AssertionError("dual lift failed to confirm Adam's region")
        strat_adam.update(adam_strat)
        ae, se = attractor(game, Player.EVE, eve_part, active, preds)
        aa, sa = attractor(game, Player.ADAM, adam_part, active, preds)
        win_eve |= ae
        win_adam |= aa
        for v, w in se.items():
            strat_eve.setdefault(v, w)
        for v, w in sa.items():
            strat_adam.setdefault(v, w)
        for v in ae:
            active[v] = False
        for v in aa:
            active[v] = False
    return Solution(frozenset(win_eve), frozenset(win_adam), strat_eve, strat_adam)


# ---------------------------------------------------------------------------
# Strategy verification


def verify_positional_strategy(
    game: ParityGame,
    player: Player,
    strategy: dict[int, int],
    region,
) -> bool:
    """Check that `strategy` wins for `player` everywhere on `region`.

    The region must be closed: opponent moves stay inside and strategy
    edges stay inside (violations raise ``ValueError``).  Returns True
    iff every cycle of the restricted graph (strategy edges for the
    player, all edges for the opponent) has a dominant priority of the
    player's parity.
    """
    region = set(region)
    restricted: dict[int, tuple[int, ...]] = {}
    for v in region:
        if game.owner[v] is player:
            if v not in strategy:
                raise ValueError(f"strategy undefined on vertex {v}")
            w = strategy[v]
            if w not in game.successors[v]:
                raise ValueError(f"strategy at {v} uses a non-edge")
            if w not in region:
                raise ValueError(f"strategy edge {v}->{w} leaves the region")
            restricted[v] = (w,)
        else:
            for w in game.successors[v]:
                if w not in region:
                    raise ValueError(f"region not closed: opponent edge {v}->{w} leaves it")
            restricted[v] = game.successors[v]

    bad_parity = 1 if player is Player.EVE else 0
    order = sorted(region)
    for p in sorted({game.priority[v] for v in region if game.priority[v] % 2 == bad_parity}):
        keep = [v for v in order if game.priority[v] <= p]
        kpos = {v: i for i, v in enumerate(keep)}
        adj = [
            tuple(kpos[w] for w in restricted[v] if w in kpos)
            for v in keep
        ]
        for comp in tarjan_scc(adj):
            if len(comp) == 1:
                v = keep[comp[0]]
                cyclic = v in restricted[v]
            else:
                cyclic = True
            if cyclic and any(game.priority[keep[i]] == p for i in comp):
                return False
    return True
