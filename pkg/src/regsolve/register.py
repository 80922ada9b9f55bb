"""Register arenas, register-indices and the register-based solver.

A k-register arena augments a parity game with k+1 registers holding
past priorities.  Each round has two halves: the controller picks a
register index i (the chosen register is overwritten by the current
vertex priority, lower registers reset to 0, higher ones absorb the
priority by max), which emits an output priority, and then the owner of
the underlying vertex moves.  Outputs form the parity condition of the
arena, so any parity solver decides the register game.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arena import (
    EdgeGame,
    ParityGame,
    Player,
    ceil_log2,
    edge_game_to_vertex_game,
    register_budget,
    write_pgsolver,
)
from .solvers import solve_spm, solve_zielonka

CHOOSE = 0
MOVE = 1


@dataclass(frozen=True)
class RegisterArena:
    """Reachable part of a k-register arena over a base game.

    ``states[i]`` is ``(base_vertex, registers, turn)`` with turn 0 for
    the controller's register choice and 1 for the move in the base
    game.  The first ``base_n`` states are the initial configurations
    ``(v, (0,...,0), 0)`` in base-vertex order.  The arena itself is an
    edge-priority game over the state indices.
    """

    arena: EdgeGame
    states: tuple[tuple[int, tuple[int, ...], int], ...]
    controller: Player
    k: int
    base_n: int
    base_d: int

    @property
    def size_bound(self) -> int:
        """Reachability bound: two turn flags per vertex and register
        vector."""
        return 2 * self.base_n * (self.base_d + 1) ** (self.k + 1)

    def state_index(self, state: tuple[int, tuple[int, ...], int]) -> int:
        return self.states.index(state)


def update_registers(regs: tuple[int, ...], i: int, p: int) -> tuple[int, ...]:
    """Overwrite register i with p, reset lower registers, absorb p into
    higher ones."""
    return (0,) * i + (p,) + tuple(max(r, p) for r in regs[i + 1:])


def build_register_arena(game: ParityGame, k: int, controller: Player) -> RegisterArena:
    """Reachable k-register arena with the given register controller.

    Choice edges carry output ``2i``/``2i+1`` from the parity of
    ``max(r_i, p)`` when Eve controls the registers, and ``2i+2``/``2i+1``
    from the parity of ``r_i`` alone when Adam does; move edges carry 0.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    d = game.max_priority
    index: dict[tuple[int, tuple[int, ...], int], int] = {}
    states: list[tuple[int, tuple[int, ...], int]] = []
    owners: list[Player] = []

    def intern(state) -> int:
        idx = index.get(state)
        if idx is None:
            idx = len(states)
            index[state] = idx
            states.append(state)
            owners.append(
                controller if state[2] == CHOOSE else game.owner[state[0]]
            )
        return idx

    zero = (0,) * (k + 1)
    for v in range(game.n):
        intern((v, zero, CHOOSE))
    succ: list[tuple[int, ...]] = []
    prio: list[tuple[int, ...]] = []
    cursor = 0
    while cursor < len(states):
        v, regs, turn = states[cursor]
        cursor += 1
        if turn == CHOOSE:
            p = game.priority[v]
            targets, outputs = [], []
            for i in range(k + 1):
                targets.append(intern((v, update_registers(regs, i, p), MOVE)))
                if controller is Player.EVE:
                    out = 2 * i if max(regs[i], p) % 2 == 0 else 2 * i + 1
                else:
                    out = 2 * i + 2 if regs[i] % 2 == 0 else 2 * i + 1
                outputs.append(out)
            succ.append(tuple(targets))
            prio.append(tuple(outputs))
        else:
            succ.append(tuple(intern((w, regs, CHOOSE)) for w in game.successors[v]))
            prio.append((0,) * len(game.successors[v]))

    arena = EdgeGame(tuple(owners), tuple(succ), tuple(prio))
    out = RegisterArena(arena, tuple(states), controller, k, game.n, d)
    if len(states) > out.size_bound:
        raise AssertionError("register arena exceeded its reachability bound")
    return out


def register_arena_to_pgsolver(ra: RegisterArena) -> str:
    """Debug dump: the converted arena as PGSolver text with state names
    ``(v,[r0,...,rk],t)`` on the register states."""
    vg = edge_game_to_vertex_game(ra.arena)
    names = list(vg.names)
    for idx, (v, regs, turn) in enumerate(ra.states):
        names[idx] = f"({v},[{','.join(map(str, regs))}],{turn})"
    relabelled = ParityGame(vg.owner, vg.priority, vg.successors, tuple(names))
    return write_pgsolver(relabelled)


def solve_register_game(
    game: ParityGame, k: int, controller: Player, engine: str = "zielonka"
) -> frozenset[int]:
    """Base vertices from which the controller's favoured player wins the
    k-register game starting with cleared registers.

    Builds the reachable arena and converts edge priorities to vertex
    priorities.  The arena is solved recursively by default: measure
    lifting is priority-exponential in theory but ratchets through huge
    measure chains on exactly the doubling arenas this pipeline has to
    handle, so it is only offered as a cross-validation engine
    (``engine="spm"``) for small arenas.
    """
    ra = build_register_arena(game, k, controller)
    vg = edge_game_to_vertex_game(ra.arena)
    sol = solve_spm(vg) if engine == "spm" else solve_zielonka(vg)
    region = sol.win_eve if controller is Player.EVE else sol.win_adam
    # initial configurations occupy the first base_n arena indices
    return frozenset(v for v in range(ra.base_n) if v in region)


def register_index(
    game: ParityGame, max_k: int | None = None
) -> tuple[int, dict[int, int]]:
    """Register-index of the game and of every vertex.

    For Eve-won vertices this is the least k such that Eve wins the
    Eve-controlled k-register game from there; for Adam-won vertices the
    least k such that Adam wins the Adam-controlled one.  The search
    deepens k from 0; the Eve side is guaranteed to finish within the
    register budget, the Adam side is cut off at ``1 + ceil(log2 n) + 1``
    (or ``max_k``) with a diagnostic.
    """
    sol = solve_zielonka(game)
    per_vertex: dict[int, int] = {}

    eve_cap = register_budget(game) if max_k is None else max_k
    adam_cap = 1 + ceil_log2(max(1, game.n)) + 1 if max_k is None else max_k

    pending = set(sol.win_eve)
    for k in range(eve_cap + 1):
        if not pending:
            break
        won = solve_register_game(game, k, Player.EVE)
        for v in sorted(pending & won):
            per_vertex[v] = k
        pending -= won
    if pending:
        raise RuntimeError(
            f"Eve-side register-index search exhausted k <= {eve_cap} "
            f"with vertices {sorted(pending)} unresolved"
        )

    pending = set(sol.win_adam)
    for k in range(adam_cap + 1):
        if not pending:
            break
        won = solve_register_game(game, k, Player.ADAM)
        for v in sorted(pending & won):
            per_vertex[v] = k
        pending -= won
    if pending:
        raise RuntimeError(
            f"Adam-side register-index search exhausted k <= {adam_cap} "
            f"with vertices {sorted(pending)} unresolved"
        )

    overall = max(per_vertex.values(), default=0)
    return overall, per_vertex


def solve_via_registers(game: ParityGame) -> tuple[frozenset[int], frozenset[int]]:
    """Solve a parity game through its register game at the budget.

    Eve's region is read off the Eve-controlled register game at
    ``k = register_budget(game, refined=True)``; the complement is
    Adam's by determinacy.
    """
    k = register_budget(game, refined=True)
    win_eve = solve_register_game(game, k, Player.EVE)
    win_adam = frozenset(v for v in range(game.n) if v not in win_eve)
    return win_eve, win_adam
