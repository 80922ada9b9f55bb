"""Alternating parity automata: acceptance games, the register-indexed
family, the game-recognising automaton, synchronised products, weakness
checking and the translation to weak automata."""

from .core import (
    AcceptanceGame,
    AltAutomaton,
    And,
    Atom,
    BOX,
    Cond,
    DIA,
    KripkeStructure,
    LassoWord,
    Or,
    acceptance_game,
    accepts,
    accepts_lasso,
    atom,
    build_pd,
    cond_atoms,
    cond_size,
    conj,
    disj,
    fvs_register_budget,
    game_alphabet,
    game_to_kripke,
    is_weak,
    lasso_to_kripke,
    parse_game_letter,
)
from .parameterised import AGGREGATE, LITERAL, build_parameterised
from .product import sync_product
from .textfmt import AutomatonFormatError, parse_automaton, write_automaton
from .weakening import apw_to_aww, weaken

__all__ = [
    "AcceptanceGame",
    "AltAutomaton",
    "And",
    "Atom",
    "BOX",
    "Cond",
    "DIA",
    "KripkeStructure",
    "LassoWord",
    "Or",
    "AGGREGATE",
    "LITERAL",
    "AutomatonFormatError",
    "acceptance_game",
    "accepts",
    "accepts_lasso",
    "apw_to_aww",
    "atom",
    "build_parameterised",
    "build_pd",
    "cond_atoms",
    "cond_size",
    "conj",
    "disj",
    "fvs_register_budget",
    "game_alphabet",
    "game_to_kripke",
    "is_weak",
    "lasso_to_kripke",
    "parse_automaton",
    "parse_game_letter",
    "sync_product",
    "weaken",
    "write_automaton",
]
