"""Core parity-game data model, PGSolver text I/O and graph utilities.

Games are finite arenas where every vertex has at least one successor.
Priorities live on vertices for :class:`ParityGame` and on edges for
:class:`EdgeGame`; ``edge_game_to_vertex_game`` converts between the two
by inserting priority-carrying intermediate vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations


class Player(Enum):
    EVE = 0
    ADAM = 1

    @property
    def opponent(self) -> "Player":
        return Player.ADAM if self is Player.EVE else Player.EVE

    def favours(self, priority: int) -> bool:
        """True when a dominant `priority` makes this player win."""
        return (priority % 2 == 0) == (self is Player.EVE)


class GameError(ValueError):
    """Malformed game description (parse error or broken invariant)."""


@dataclass(frozen=True)
class ParityGame:
    """Finite arena with vertex priorities.

    ``successors[v]`` is a non-empty ordered tuple of vertex indices.
    ``names[v]`` is an optional label ("" when absent).
    """

    owner: tuple[Player, ...]
    priority: tuple[int, ...]
    successors: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.owner)
        if n == 0:
            raise GameError("game has no vertices")
        if len(self.priority) != n or len(self.successors) != n:
            raise GameError("field lengths disagree")
        if not self.names:
            object.__setattr__(self, "names", ("",) * n)
        elif len(self.names) != n:
            raise GameError("field lengths disagree")
        for v in range(n):
            if self.priority[v] < 0:
                raise GameError(f"vertex {v} has negative priority")
            if not self.successors[v]:
                raise GameError(f"vertex {v} has no successors")
            for w in self.successors[v]:
                if not 0 <= w < n:
                    raise GameError(f"vertex {v} has dangling successor {w}")

    @property
    def n(self) -> int:
        return len(self.owner)

    @property
    def max_priority(self) -> int:
        return max(self.priority)

    def vertices(self) -> range:
        return range(self.n)

    def predecessor_lists(self) -> list[list[int]]:
        preds: list[list[int]] = [[] for _ in range(self.n)]
        for v in range(self.n):
            for w in self.successors[v]:
                preds[w].append(v)
        return preds


@dataclass(frozen=True)
class EdgeGame:
    """Finite arena with edge priorities (``edge_priority`` parallels
    ``successors``)."""

    owner: tuple[Player, ...]
    successors: tuple[tuple[int, ...], ...]
    edge_priority: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        n = len(self.owner)
        if n == 0:
            raise GameError("game has no vertices")
        if len(self.successors) != n or len(self.edge_priority) != n:
            raise GameError("field lengths disagree")
        if not self.names:
            object.__setattr__(self, "names", ("",) * n)
        elif len(self.names) != n:
            raise GameError("field lengths disagree")
        for v in range(n):
            if not self.successors[v]:
                raise GameError(f"vertex {v} has no successors")
            if len(self.successors[v]) != len(self.edge_priority[v]):
                raise GameError(f"vertex {v}: edge lists disagree")
            for w in self.successors[v]:
                if not 0 <= w < n:
                    raise GameError(f"vertex {v} has dangling successor {w}")
            for p in self.edge_priority[v]:
                if p < 0:
                    raise GameError(f"vertex {v} has negative edge priority")

    @property
    def n(self) -> int:
        return len(self.owner)

    @property
    def max_priority(self) -> int:
        return max(max(ps) for ps in self.edge_priority)

    def edges(self):
        for v in range(self.n):
            for w, p in zip(self.successors[v], self.edge_priority[v]):
                yield v, w, p


@dataclass(frozen=True)
class Solution:
    """Winning-region partition plus positional strategies.

    Strategies map each winner-owned vertex of the winning region to the
    chosen successor; plays following them never leave the region.
    """

    win_eve: frozenset[int]
    win_adam: frozenset[int]
    strategy_eve: dict[int, int] = field(default_factory=dict)
    strategy_adam: dict[int, int] = field(default_factory=dict)

    def winner(self, v: int) -> Player:
        return Player.EVE if v in self.win_eve else Player.ADAM

    def regions(self) -> tuple[frozenset[int], frozenset[int]]:
        return self.win_eve, self.win_adam


# ---------------------------------------------------------------------------
# PGSolver text format


def parse_pgsolver(text: str) -> ParityGame:
    """Parse the PGSolver ``.gm`` dialect.

    Header ``parity N;`` is optional.  Each vertex line reads
    ``<id> <priority> <owner> <succ>,<succ>,... ["name"];`` with a
    mandatory trailing semicolon.  Sparse ids are compacted; original ids
    are kept as names when no explicit name is given.
    """
    entries: list[tuple[int, int, int, list[int], str, int]] = []
    seen: dict[int, int] = {}
    header_done = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not line.endswith(";"):
            raise GameError(f"line {lineno}: missing trailing ';'")
        line = line[:-1].strip()
        if not header_done and line.startswith("parity"):
            header_done = True
            rest = line[len("parity"):].strip()
            if rest and not rest.isdigit():
                raise GameError(f"line {lineno}: malformed header")
            continue
        header_done = True
        name = ""
        if '"' in line:
            open_q = line.index('"')
            close_q = line.rindex('"')
            if close_q == open_q:
                raise GameError(f"line {lineno}: unbalanced quote")
            name = line[open_q + 1:close_q]
            line = line[:open_q].strip()
        fields = line.split()
        if len(fields) == 3 and all(f.lstrip("-").isdigit() for f in fields):
            raise GameError(f"line {lineno}: vertex {fields[0]} has no successors")
        if len(fields) != 4:
            raise GameError(f"line {lineno}: expected 4 fields, got {len(fields)}")
        ident_s, prio_s, owner_s, succ_s = fields
        try:
            ident, prio, owner = int(ident_s), int(prio_s), int(owner_s)
        except ValueError:
            raise GameError(f"line {lineno}: non-integer field") from None
        if ident < 0:
            raise GameError(f"line {lineno}: negative vertex id")
        if prio < 0:
            raise GameError(f"line {lineno}: vertex {ident} has negative priority")
        if owner not in (0, 1):
            raise GameError(f"line {lineno}: owner must be 0 or 1")
        if ident in seen:
            raise GameError(f"line {lineno}: duplicate vertex id {ident}")
        try:
            succs = [int(s) for s in succ_s.split(",") if s != ""]
        except ValueError:
            raise GameError(f"line {lineno}: malformed successor list") from None
        if not succs:
            raise GameError(f"line {lineno}: vertex {ident} has no successors")
        seen[ident] = len(entries)
        entries.append((ident, prio, owner, succs, name, lineno))

    if not entries:
        raise GameError("no vertices")

    owners, prios, succ_lists, names = [], [], [], []
    for idx, (ident, prio, owner, succs, name, lineno) in enumerate(entries):
        compact = []
        for s in succs:
            if s not in seen:
                raise GameError(f"line {lineno}: vertex {ident} has dangling successor {s}")
            compact.append(seen[s])
        owners.append(Player.EVE if owner == 0 else Player.ADAM)
        prios.append(prio)
        succ_lists.append(tuple(compact))
        if not name and ident != idx:
            name = str(ident)
        names.append(name)
    return ParityGame(tuple(owners), tuple(prios), tuple(succ_lists), tuple(names))


def write_pgsolver(game: ParityGame) -> str:
    """Emit PGSolver text; ``parse_pgsolver`` round-trips it."""
    lines = [f"parity {game.n - 1};"]
    for v in range(game.n):
        succ = ",".join(str(w) for w in game.successors[v])
        owner = 0 if game.owner[v] is Player.EVE else 1
        name = f' "{game.names[v]}"' if game.names[v] else ""
        lines.append(f"{v} {game.priority[v]} {owner} {succ}{name};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Edge-priority <-> vertex-priority conversion


def edge_game_to_vertex_game(game: EdgeGame) -> ParityGame:
    """Insert one priority-carrying vertex per edge of non-zero priority.

    Original vertices keep their indices (0..n-1) and get priority 0, so
    winners per original vertex carry over unchanged; priority-0 edges
    become direct edges.
    """
    owners = list(game.owner)
    prios = [0] * game.n
    succ_lists: list[list[int]] = [[] for _ in range(game.n)]
    names = list(game.names)
    inter_succ: list[int] = []
    for v in range(game.n):
        for w, p in zip(game.successors[v], game.edge_priority[v]):
            if p == 0:
                succ_lists[v].append(w)
            else:
                x = len(owners)
                owners.append(game.owner[v])
                prios.append(p)
                names.append("")
                inter_succ.append(w)
                succ_lists[v].append(x)
    for w in inter_succ:
        succ_lists.append([w])
    return ParityGame(
        tuple(owners), tuple(prios), tuple(tuple(s) for s in succ_lists), tuple(names)
    )


def vertex_game_to_edge_game(game: ParityGame) -> EdgeGame:
    """Assign each vertex's priority to its outgoing edges."""
    return EdgeGame(
        game.owner,
        game.successors,
        tuple(tuple(game.priority[v] for _ in game.successors[v]) for v in range(game.n)),
        game.names,
    )


# ---------------------------------------------------------------------------
# Graph utilities


def scc_decompose(game: ParityGame) -> list[list[int]]:
    """Strongly connected components in reverse topological order.

    Every edge of the condensation goes from a later list entry to an
    earlier one, i.e. sink components come first.
    """
    return tarjan_scc(game.successors)


def tarjan_scc(successors) -> list[list[int]]:
    """Iterative Tarjan over an adjacency structure (index -> iterable)."""
    n = len(successors)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            succ = successors[v]
            while pi < len(succ):
                w = succ[pi]
                pi += 1
                if index[w] == -1:
                    work[-1] = (v, pi)
                    work.append((w, 0))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comp.sort()
                sccs.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return sccs


def _has_cycle(vertices: list[int], succ_sets: dict[int, set[int]]) -> bool:
    indeg = {v: 0 for v in vertices}
    for v in vertices:
        for w in succ_sets[v]:
            indeg[w] += 1
    queue = [v for v in vertices if indeg[v] == 0]
    removed = 0
    while queue:
        v = queue.pop()
        removed += 1
        for w in succ_sets[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return removed < len(vertices)


def _induced(successors, vertices: set[int]) -> dict[int, set[int]]:
    return {v: {w for w in successors[v] if w in vertices} for v in vertices}


def feedback_vertex_bound(successors) -> int:
    """Greedy upper bound on the minimum feedback vertex set size.

    Repeatedly removes the highest-degree vertex of the remaining cyclic
    part; the removals form a feedback vertex set, so their count bounds
    the maximal number of vertex-disjoint cycles from above.
    """
    alive = set(range(len(successors)))
    succ_sets = _induced(successors, alive)
    count = 0
    while True:
        # trim vertices that cannot lie on a cycle
        changed = True
        while changed:
            changed = False
            for v in sorted(alive):
                if v in succ_sets[v]:
                    continue
                indeg = sum(1 for u in alive if v in succ_sets[u])
                if not succ_sets[v] or indeg == 0:
                    alive.discard(v)
                    for u in alive:
                        succ_sets[u].discard(v)
                    del succ_sets[v]
                    changed = True
        if not alive or not _has_cycle(sorted(alive), succ_sets):
            return count
        best = max(
            sorted(alive),
            key=lambda v: len(succ_sets[v])
            + sum(1 for u in alive if v in succ_sets[u])
            + (2 if v in succ_sets[v] else 0),
        )
        alive.discard(best)
        for u in alive:
            succ_sets[u].discard(best)
        del succ_sets[best]
        count += 1


def feedback_vertex_exact(vertices: list[int], successors) -> int:
    """Exact minimum feedback vertex set size by subset enumeration.

    Only intended for small vertex sets (<= 12 or so).
    """
    vs = set(vertices)
    succ_sets = _induced(successors, vs)
    if not _has_cycle(sorted(vs), succ_sets):
        return 0
    for size in range(1, len(vertices) + 1):
        for cut in combinations(vertices, size):
            rest = vs - set(cut)
            if not _has_cycle(sorted(rest), _induced(successors, rest)):
                return size
    return len(vertices)


def register_budget(game: ParityGame, refined: bool = False) -> int:
    """Number of registers sufficient for the register reduction.

    Returns ``1 + ceil(log2(zbar))`` where ``zbar`` bounds the maximal
    number of vertex-disjoint cycles from above; the default bound is
    |V|, and ``refined=True`` substitutes a greedy feedback-vertex-set
    bound (every cycle meets a feedback vertex set, and disjoint cycles
    meet it in distinct vertices).
    """
    zbar = game.n
    if refined:
        zbar = min(zbar, max(1, feedback_vertex_bound(game.successors)))
    zbar = max(1, zbar)
    return 1 + ceil_log2(zbar)


def ceil_log2(x: int) -> int:
    if x < 1:
        raise ValueError("ceil_log2 of non-positive value")
    return (x - 1).bit_length()


def dual_game(game: ParityGame) -> ParityGame:
    """Swap owners and shift priorities by one: winners swap."""
    return ParityGame(
        tuple(o.opponent for o in game.owner),
        tuple(p + 1 for p in game.priority),
        game.successors,
        game.names,
    )
