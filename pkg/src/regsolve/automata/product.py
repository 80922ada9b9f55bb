"""Synchronised composition of an automaton with a game-alphabet
automaton.

The product runs the second automaton over the acceptance game of the
first, viewed as a tree over the game alphabet: each game edge is one
tree step for the second automaton, so its modal atoms consume one layer
of the first automaton's transition structure, with stutter layers
(boolean connectives) inlined as the matching connective.
"""

from __future__ import annotations

from ..arena import Player
from .core import (
    AltAutomaton,
    And,
    Atom,
    BOX,
    Cond,
    DIA,
    Or,
    atom,
    conj,
    disj,
    game_alphabet,
)


def sync_product(a: AltAutomaton, b: AltAutomaton) -> AltAutomaton:
    """Product accepting a tree iff `b` accepts the acceptance game of
    `a` on it; priorities (and hence weakness) come from `b`."""
    d = _game_alphabet_bound(b)
    if d < a.max_priority:
        raise ValueError(
            f"game alphabet of b covers priorities up to {d}, "
            f"but a uses priority {a.max_priority}"
        )

    state_index: dict[tuple[int, int], int] = {}
    states: list[tuple[int, int]] = []

    def intern(qa: int, qb: int) -> int:
        key = (qa, qb)
        idx = state_index.get(key)
        if idx is None:
            idx = len(states)
            state_index[key] = idx
            states.append(key)
        return idx

    def label(x) -> str:
        if isinstance(x, tuple):  # a state of `a`, not yet expanded
            return f"E{a.priority[x[1]]}"
        if isinstance(x, And) or (isinstance(x, Atom) and x.modal == BOX):
            return "A0"
        return "E0"

    cache: dict[tuple, Cond] = {}

    def f(x, y, letter: str) -> Cond:
        # interned conditions are immortal, so their ids are stable keys;
        # the state markers are value-compared tuples
        key = (
            x if isinstance(x, tuple) else id(x),
            y if isinstance(y, tuple) else id(y),
            letter,
        )
        got = cache.get(key)
        if got is not None:
            return got
        if isinstance(y, tuple):  # pending state of `b`: read the label here
            out = f(x, b.delta[(y[1], label(x))], letter)
        elif isinstance(y, Or):
            out = disj(f(x, op, letter) for op in y.operands)
        elif isinstance(y, And):
            out = conj(f(x, op, letter) for op in y.operands)
        else:  # y is a modal atom of b: advance one game edge
            pending = ("p", y.state)
            if isinstance(x, tuple):
                out = f(a.delta[(x[1], letter)], pending, letter)
            elif isinstance(x, Atom):
                out = atom(y.modal if a.mode == "tree" else DIA, intern(x.state, y.state))
            else:  # boolean stutter layer of `a`: b picks / quantifies the branch
                combine = disj if y.modal == DIA else conj
                out = combine(f(op, pending, letter) for op in x.operands)
        cache[key] = out
        return out

    intern(a.initial, b.initial)
    delta: dict[tuple[int, str], Cond] = {}
    cursor = 0
    while cursor < len(states):
        qa, qb = states[cursor]
        my_index = cursor
        cursor += 1
        for letter in a.alphabet:
            delta[(my_index, letter)] = f(("s", qa), ("p", qb), letter)

    names = []
    for qa, qb in states:
        names.append(f"({a.names[qa]},{b.names[qb]})")
    if len(set(names)) != len(names):
        names = [f"x{i}" for i in range(len(states))]

    priority = tuple(b.priority[qb] for _qa, qb in states)
    return AltAutomaton(a.alphabet, a.mode, tuple(names), priority, 0, delta)


def _game_alphabet_bound(b: AltAutomaton) -> int:
    """The d for which b's alphabet is exactly the game alphabet."""
    tags = set(b.alphabet)
    d = -1
    for letter in tags:
        if len(letter) < 2 or letter[0] not in "EA" or not letter[1:].isdigit():
            raise ValueError(f"b must run on the game alphabet, got letter {letter!r}")
        d = max(d, int(letter[1:]))
    if tags != set(game_alphabet(d)):
        raise ValueError("b's alphabet is not a complete game alphabet")
    return d
