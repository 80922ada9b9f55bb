"""The register-indexed family of automata.

``build_parameterised(a, k)`` embeds the k-register game into the state
space of ``a``: states carry the register contents and the pending
output priority, register choices become (k+1)-way disjunctions at every
state entry and at every subformula boundary, and the state priority is
the output produced on the way in.
"""

from __future__ import annotations

from ..register import update_registers
from .core import AltAutomaton, And, Atom, Cond, atom, conj, disj

LITERAL = "literal"
AGGREGATE = "aggregate"


def _emitted(i: int, value: int) -> int:
    """Output of choosing register i against a priority value."""
    return 2 * i if value % 2 == 0 else 2 * i + 1


def build_parameterised(
    aut: AltAutomaton, k: int, rule: str = AGGREGATE
) -> AltAutomaton:
    """Automaton whose acceptance game is the k-register game of the
    input's acceptance game.

    ``rule`` selects how the value threaded through a transition
    condition interacts with register choices.  ``"aggregate"`` (the
    default) keeps the largest output emitted since the last state and
    maxes it with each choice's output, which is exactly the register
    game's output sequence and agrees with the register-game solver on
    every sampled instance.  ``"literal"`` instead threads the largest
    priority-domain value and derives a single output from it at the
    atom; it is kept for comparison but fails the behavioural check
    (it can accept where the register game is lost), so nothing in the
    package uses it.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if rule not in (LITERAL, AGGREGATE):
        raise ValueError(f"unknown rule {rule!r}")
    d = aut.max_priority
    indices = range(k + 1)

    state_index: dict[tuple[int, tuple[int, ...], int], int] = {}
    states: list[tuple[int, tuple[int, ...], int]] = []

    def intern(q: int, regs: tuple[int, ...], p: int) -> int:
        key = (q, regs, p)
        idx = state_index.get(key)
        if idx is None:
            idx = len(states)
            state_index[key] = idx
            states.append(key)
        return idx

    move_cache: dict[tuple[int, tuple[int, ...], int], Cond] = {}

    def move(cond: Cond, regs: tuple[int, ...], pending: int) -> Cond:
        key = (id(cond), regs, pending)
        got = move_cache.get(key)
        if got is not None:
            return got
        branches = []
        if isinstance(cond, Atom):
            for i in indices:
                if rule == LITERAL:
                    m = _emitted(i, max(regs[i], pending))
                else:
                    m = max(pending, _emitted(i, regs[i]))
                target = intern(cond.state, update_registers(regs, i, 0), m)
                branches.append(atom(cond.modal, target))
        else:
            combine = conj if isinstance(cond, And) else disj
            for i in indices:
                regs2 = update_registers(regs, i, 0)
                if rule == LITERAL:
                    p2 = max(regs[i], pending)
                else:
                    p2 = max(pending, _emitted(i, regs[i]))
                branches.append(combine(move(op, regs2, p2) for op in cond.operands))
        got = disj(branches)
        move_cache[key] = got
        return got

    entry_cache: dict[tuple[int, tuple[int, ...], str], Cond] = {}

    def entry(q: int, regs: tuple[int, ...], letter: str) -> Cond:
        key = (q, regs, letter)
        got = entry_cache.get(key)
        if got is not None:
            return got
        p = aut.priority[q]
        branches = []
        for i in indices:
            regs2 = update_registers(regs, i, p)
            if rule == LITERAL:
                seed = max(regs[i], p)
            else:
                seed = _emitted(i, max(regs[i], p))
            branches.append(move(aut.delta[(q, letter)], regs2, seed))
        got = disj(branches)
        entry_cache[key] = got
        return got

    zero = (0,) * (k + 1)
    intern(aut.initial, zero, 0)
    delta: dict[tuple[int, str], Cond] = {}
    cursor = 0
    while cursor < len(states):
        q, regs, _p = states[cursor]
        my_index = cursor
        cursor += 1
        for letter in aut.alphabet:
            delta[(my_index, letter)] = entry(q, regs, letter)

    names = tuple(
        f"{aut.names[q]}:{'.'.join(map(str, regs))}:{p}" for q, regs, p in states
    )
    priority = tuple(p for _q, _regs, p in states)
    return AltAutomaton(aut.alphabet, aut.mode, names, priority, 0, delta)
