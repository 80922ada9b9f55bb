"""Alternating parity automata over words and finitely represented
trees: positive transition conditions, acceptance games, and the
game-recognising automaton over the game alphabet.

Transition conditions are interned: structurally equal conditions are
the same object, so they hash and compare at pointer speed.  Conditions
are n-ary, positive (no negation) and never empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..arena import ParityGame, Player, ceil_log2, feedback_vertex_exact, tarjan_scc
from ..solvers import solve_zielonka

DIA = "dia"
BOX = "box"


class Cond:
    """Base class for transition conditions."""

    __slots__ = ()


class Atom(Cond):
    __slots__ = ("modal", "state", "_hash")

    def __init__(self, modal: str, state: int):
        self.modal = modal
        self.state = state
        self._hash = hash((modal, state))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Atom) and self.modal == other.modal and self.state == other.state
        )

    def __repr__(self):
        return f"{'<>' if self.modal == DIA else '[]'}{self.state}"


class And(Cond):
    __slots__ = ("operands", "_hash")

    def __init__(self, operands: tuple[Cond, ...]):
        self.operands = operands
        self._hash = hash(("and", operands))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (isinstance(other, And) and self.operands == other.operands)

    def __repr__(self):
        return "(" + " & ".join(map(repr, self.operands)) + ")"


class Or(Cond):
    __slots__ = ("operands", "_hash")

    def __init__(self, operands: tuple[Cond, ...]):
        self.operands = operands
        self._hash = hash(("or", operands))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (isinstance(other, Or) and self.operands == other.operands)

    def __repr__(self):
        return "(" + " | ".join(map(repr, self.operands)) + ")"


_atoms: dict[tuple[str, int], Atom] = {}
_ands: dict[tuple[Cond, ...], And] = {}
_ors: dict[tuple[Cond, ...], Or] = {}


def atom(modal: str, state: int) -> Atom:
    key = (modal, state)
    got = _atoms.get(key)
    if got is None:
        got = _atoms[key] = Atom(modal, state)
    return got


def _normalise(cls, items) -> tuple[Cond, ...]:
    flat: list[Cond] = []
    seen = set()
    for it in items:
        if isinstance(it, cls):
            inner = it.operands
        else:
            inner = (it,)
        for sub in inner:
            if id(sub) not in seen:
                seen.add(id(sub))
                flat.append(sub)
    return tuple(flat)


def conj(items) -> Cond:
    ops = _normalise(And, items)
    if not ops:
        raise ValueError("empty conjunction")
    if len(ops) == 1:
        return ops[0]
    got = _ands.get(ops)
    if got is None:
        got = _ands[ops] = And(ops)
    return got


def disj(items) -> Cond:
    ops = _normalise(Or, items)
    if not ops:
        raise ValueError("empty disjunction")
    if len(ops) == 1:
        return ops[0]
    got = _ors.get(ops)
    if got is None:
        got = _ors[ops] = Or(ops)
    return got


def cond_atoms(cond: Cond):
    """All atoms of a condition, left to right."""
    stack = [cond]
    while stack:
        c = stack.pop()
        if isinstance(c, Atom):
            yield c
        else:
            stack.extend(reversed(c.operands))


def cond_size(cond: Cond, seen=None) -> int:
    """Number of distinct subformulas (shared nodes counted once)."""
    if seen is None:
        seen = set()
    if id(cond) in seen:
        return 0
    seen.add(id(cond))
    if isinstance(cond, Atom):
        return 1
    return 1 + sum(cond_size(op, seen) for op in cond.operands)


# ---------------------------------------------------------------------------
# Automata, structures and words


@dataclass(frozen=True)
class AltAutomaton:
    """Alternating parity automaton; ``delta`` must be total on
    states x alphabet.  ``mode`` is "word" or "tree"; in word mode the
    two path quantifiers are equivalent and atoms are normalised to the
    diamond form."""

    alphabet: tuple[str, ...]
    mode: str
    names: tuple[str, ...]
    priority: tuple[int, ...]
    initial: int
    delta: dict[tuple[int, str], Cond]

    def __post_init__(self):
        if self.mode not in ("word", "tree"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not self.alphabet:
            raise ValueError("empty alphabet")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("duplicate letters")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate state names")
        n = len(self.names)
        if len(self.priority) != n or not 0 <= self.initial < n:
            raise ValueError("malformed state space")
        if any(p < 0 for p in self.priority):
            raise ValueError("negative priority")
        for q in range(n):
            for a in self.alphabet:
                cond = self.delta.get((q, a))
                if cond is None:
                    raise ValueError(f"delta not total: missing ({self.names[q]}, {a})")
                for at in cond_atoms(cond):
                    if not 0 <= at.state < n:
                        raise ValueError("transition references unknown state")
                    if self.mode == "word" and at.modal != DIA:
                        raise ValueError("word-mode conditions must use the diamond form")

    @property
    def n_states(self) -> int:
        return len(self.names)

    @property
    def max_priority(self) -> int:
        return max(self.priority)

    def transition_graph(self) -> list[tuple[int, ...]]:
        """q -> q' iff q' occurs in delta(q, a) for some letter a."""
        out: list[tuple[int, ...]] = []
        for q in range(self.n_states):
            targets: set[int] = set()
            for a in self.alphabet:
                targets.update(at.state for at in cond_atoms(self.delta[(q, a)]))
            out.append(tuple(sorted(targets)))
        return out

    def size_report(self) -> dict[str, int]:
        seen: set[int] = set()
        subformulas = 0
        for cond in self.delta.values():
            subformulas += cond_size(cond, seen)
        return {
            "states": self.n_states,
            "letters": len(self.alphabet),
            "subformulas": subformulas,
            "priorities": len(set(self.priority)),
        }


@dataclass(frozen=True)
class KripkeStructure:
    """Finite labelled graph with an initial vertex; represents the tree
    it unfolds into."""

    labels: tuple[str, ...]
    successors: tuple[tuple[int, ...], ...]
    initial: int = 0

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise ValueError("empty structure")
        if len(self.successors) != n or not 0 <= self.initial < n:
            raise ValueError("malformed structure")
        for v in range(n):
            if not self.successors[v]:
                raise ValueError(f"vertex {v} has no successors")
            if any(not 0 <= w < n for w in self.successors[v]):
                raise ValueError(f"vertex {v} has a dangling successor")

    @property
    def n(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class LassoWord:
    """Ultimately periodic word ``prefix . loop^omega``."""

    prefix: tuple[str, ...]
    loop: tuple[str, ...]

    def __post_init__(self):
        if not self.loop:
            raise ValueError("empty loop")

    def letter(self, i: int) -> str:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.loop[(i - len(self.prefix)) % len(self.loop)]


def lasso_to_kripke(word: LassoWord) -> KripkeStructure:
    """Path closing into a cycle; unfolding reproduces the word."""
    letters = word.prefix + word.loop
    n = len(letters)
    succ = tuple((v + 1,) if v + 1 < n else (len(word.prefix),) for v in range(n))
    return KripkeStructure(letters, succ, 0)


# ---------------------------------------------------------------------------
# Acceptance games


@dataclass(frozen=True)
class AcceptanceGame:
    """Parity game of a structure against an automaton, with the map
    from game positions back to (vertex, state-or-condition)."""

    game: ParityGame
    positions: tuple[tuple, ...]
    initial: int

    def index_of(self, position) -> int:
        return self.positions.index(position)


def acceptance_game(struct: KripkeStructure, aut: AltAutomaton) -> AcceptanceGame:
    """Membership game: states expand to their transition condition,
    disjunctions and diamonds belong to the accepting player,
    conjunctions and boxes to the opposing one; only state positions
    carry a priority."""
    for letter in struct.labels:
        if letter not in aut.alphabet:
            raise ValueError(f"structure label {letter!r} outside automaton alphabet")

    index: dict[tuple, int] = {}
    positions: list[tuple] = []
    owners: list[Player] = []
    prios: list[int] = []

    def intern(pos) -> int:
        idx = index.get(pos)
        if idx is not None:
            return idx
        idx = len(positions)
        index[pos] = idx
        positions.append(pos)
        if pos[0] == "q":
            owners.append(Player.EVE)
            prios.append(aut.priority[pos[2]])
        else:
            cond = pos[2]
            if isinstance(cond, And) or (isinstance(cond, Atom) and cond.modal == BOX):
                owners.append(Player.ADAM)
            else:
                owners.append(Player.EVE)
            prios.append(0)
        return idx

    initial = intern(("q", struct.initial, aut.initial))
    succ: list[tuple[int, ...]] = []
    cursor = 0
    while cursor < len(positions):
        kind, u, x = positions[cursor]
        cursor += 1
        if kind == "q":
            succ.append((intern(("f", u, aut.delta[(x, struct.labels[u])])),))
        elif isinstance(x, Atom):
            succ.append(tuple(intern(("q", w, x.state)) for w in struct.successors[u]))
        else:
            succ.append(tuple(intern(("f", u, op)) for op in x.operands))

    game = ParityGame(tuple(owners), tuple(prios), tuple(succ))
    return AcceptanceGame(game, tuple(positions), initial)


def accepts(struct: KripkeStructure, aut: AltAutomaton) -> bool:
    """True iff the accepting player wins the acceptance game from the
    initial position."""
    ag = acceptance_game(struct, aut)
    return ag.initial in solve_zielonka(ag.game).win_eve


def accepts_lasso(word: LassoWord, aut: AltAutomaton) -> bool:
    return accepts(lasso_to_kripke(word), aut)


# ---------------------------------------------------------------------------
# The game alphabet and the automaton recognising winning arenas


def game_alphabet(d: int) -> tuple[str, ...]:
    """Letters E0..Ed, A0..Ad: owner tag plus priority."""
    return tuple(f"E{i}" for i in range(d + 1)) + tuple(f"A{i}" for i in range(d + 1))


def parse_game_letter(letter: str) -> tuple[Player, int]:
    if len(letter) < 2 or letter[0] not in "EA" or not letter[1:].isdigit():
        raise ValueError(f"not a game letter: {letter!r}")
    return (Player.EVE if letter[0] == "E" else Player.ADAM, int(letter[1:]))


def build_pd(d: int) -> AltAutomaton:
    """Automaton over the game alphabet accepting the encoded games the
    accepting player wins: one state per priority, state i has priority
    i, E-letters go to a diamond and A-letters to a box on the letter's
    priority, independently of the current state."""
    if d < 0:
        raise ValueError("d must be non-negative")
    alphabet = game_alphabet(d)
    delta: dict[tuple[int, str], Cond] = {}
    for q in range(d + 1):
        for i in range(d + 1):
            delta[(q, f"E{i}")] = atom(DIA, i)
            delta[(q, f"A{i}")] = atom(BOX, i)
    return AltAutomaton(
        alphabet,
        "tree",
        tuple(str(i) for i in range(d + 1)),
        tuple(range(d + 1)),
        0,
        delta,
    )


def game_to_kripke(game: ParityGame, initial: int = 0, d: int | None = None) -> KripkeStructure:
    """Encode a parity game over the game alphabet: each vertex is
    labelled with its owner tag and priority."""
    if d is not None and d < game.max_priority:
        raise ValueError("alphabet bound below the game's maximal priority")
    labels = tuple(
        ("E" if game.owner[v] is Player.EVE else "A") + str(game.priority[v])
        for v in range(game.n)
    )
    return KripkeStructure(labels, game.successors, initial)


# ---------------------------------------------------------------------------
# Weakness and structural budgets


def is_weak(aut: AltAutomaton) -> bool:
    """Every strongly connected component of the transition graph holds
    states of a single parity."""
    graph = aut.transition_graph()
    for comp in tarjan_scc(graph):
        parities = {aut.priority[q] % 2 for q in comp}
        if len(parities) > 1:
            return False
    return True


def fvs_register_budget(struct: KripkeStructure, aut: AltAutomaton) -> int:
    """Register budget for acceptance games over this structure, driven
    by the largest per-component feedback vertex set of the structure
    (exact for components of at most 12 vertices, else their size)."""
    fbar = 1
    for comp in tarjan_scc(struct.successors):
        if len(comp) == 1:
            v = comp[0]
            size = 1 if v in struct.successors[v] else 0
        elif len(comp) <= 12:
            size = feedback_vertex_exact(comp, struct.successors)
        else:
            size = len(comp)
        fbar = max(fbar, size)
    return 1 + ceil_log2(max(1, fbar * aut.n_states))
