"""Line-based automaton text format.

    alphabet: a b c;
    mode: word;
    state q0 2;
    initial q0;
    trans q0 a := <> q1 & [] q0 | q1;

``&`` binds tighter than ``|``; ``<>``/``[]`` prefix a state name; a bare
state name is the word-mode atom.  The writer is canonical: states, then
transitions, each lexicographically ordered.
"""

from __future__ import annotations

import re

from .core import AltAutomaton, And, Atom, BOX, Cond, DIA, Or, atom, conj, disj


class AutomatonFormatError(ValueError):
    pass


_NAME = re.compile(r"[A-Za-z0-9_.:*+\-]+")
_TOKEN = re.compile(r"<>|\[\]|[()&|]|[A-Za-z0-9_.:*+\-]+")


def parse_automaton(text: str) -> AltAutomaton:
    """Parse the repo automaton format; inverse of ``write_automaton``."""
    alphabet: list[str] | None = None
    mode: str | None = None
    names: list[str] = []
    name_index: dict[str, int] = {}
    priorities: list[int] = []
    initial_name: str | None = None
    trans_lines: list[tuple[int, str, str, str]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if not line.endswith(";"):
            raise AutomatonFormatError(f"line {lineno}: missing trailing ';'")
        line = line[:-1].strip()
        if line.startswith("alphabet:"):
            letters = line[len("alphabet:"):].split()
            if not letters:
                raise AutomatonFormatError(f"line {lineno}: empty alphabet")
            for letter in letters:
                if not _NAME.fullmatch(letter):
                    raise AutomatonFormatError(f"line {lineno}: bad letter {letter!r}")
            alphabet = letters
        elif line.startswith("mode:"):
            mode = line[len("mode:"):].strip()
            if mode not in ("word", "tree"):
                raise AutomatonFormatError(f"line {lineno}: mode must be word or tree")
        elif line.startswith("state "):
            fields = line.split()
            if len(fields) != 3:
                raise AutomatonFormatError(f"line {lineno}: expected 'state <name> <priority>'")
            _, name, prio_s = fields
            if not _NAME.fullmatch(name):
                raise AutomatonFormatError(f"line {lineno}: bad state name {name!r}")
            if name in name_index:
                raise AutomatonFormatError(f"line {lineno}: duplicate state {name!r}")
            try:
                prio = int(prio_s)
            except ValueError:
                raise AutomatonFormatError(f"line {lineno}: bad priority {prio_s!r}") from None
            if prio < 0:
                raise AutomatonFormatError(f"line {lineno}: negative priority")
            name_index[name] = len(names)
            names.append(name)
            priorities.append(prio)
        elif line.startswith("initial "):
            initial_name = line[len("initial "):].strip()
        elif line.startswith("trans "):
            body = line[len("trans "):]
            if ":=" not in body:
                raise AutomatonFormatError(f"line {lineno}: trans line needs ':='")
            head, formula = body.split(":=", 1)
            fields = head.split()
            if len(fields) != 2:
                raise AutomatonFormatError(
                    f"line {lineno}: expected 'trans <state> <letter> := <formula>'"
                )
            trans_lines.append((lineno, fields[0], fields[1], formula.strip()))
        else:
            raise AutomatonFormatError(f"line {lineno}: unrecognised directive")

    if alphabet is None:
        raise AutomatonFormatError("missing alphabet line")
    if mode is None:
        raise AutomatonFormatError("missing mode line")
    if not names:
        raise AutomatonFormatError("no states declared")
    if initial_name is None:
        raise AutomatonFormatError("missing initial line")
    if initial_name not in name_index:
        raise AutomatonFormatError(f"initial state {initial_name!r} not declared")

    delta: dict[tuple[int, str], Cond] = {}
    for lineno, state_name, letter, formula in trans_lines:
        if state_name not in name_index:
            raise AutomatonFormatError(f"line {lineno}: unknown state {state_name!r}")
        if letter not in alphabet:
            raise AutomatonFormatError(f"line {lineno}: unknown letter {letter!r}")
        key = (name_index[state_name], letter)
        if key in delta:
            raise AutomatonFormatError(f"line {lineno}: duplicate transition")
        delta[key] = _parse_formula(formula, lineno, name_index, mode)

    for q, name in enumerate(names):
        for letter in alphabet:
            if (q, letter) not in delta:
                raise AutomatonFormatError(
                    f"missing transition for state {name!r} on letter {letter!r}"
                )
    return AltAutomaton(
        tuple(alphabet), mode, tuple(names), tuple(priorities),
        name_index[initial_name], delta,
    )


def _parse_formula(src: str, lineno: int, name_index: dict[str, int], mode: str) -> Cond:
    tokens = _TOKEN.findall(src)
    if "".join(tokens).replace(" ", "") != src.replace(" ", ""):
        raise AutomatonFormatError(f"line {lineno}: cannot tokenise formula {src!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def fail(msg):
        raise AutomatonFormatError(f"line {lineno}: {msg}")

    def parse_or() -> Cond:
        parts = [parse_and()]
        while peek() == "|":
            take()
            parts.append(parse_and())
        return disj(parts)

    def parse_and() -> Cond:
        parts = [parse_unit()]
        while peek() == "&":
            take()
            parts.append(parse_unit())
        return conj(parts)

    def parse_unit() -> Cond:
        tok = take()
        if tok is None:
            fail("unexpected end of formula")
        if tok == "(":
            inner = parse_or()
            if take() != ")":
                fail("missing ')'")
            return inner
        if tok in ("<>", "[]"):
            name = take()
            if name is None or not _NAME.fullmatch(name):
                fail("path quantifier must be followed by a state name")
            if name not in name_index:
                fail(f"unknown state {name!r}")
            modal = DIA if tok == "<>" or mode == "word" else BOX
            return atom(modal, name_index[name])
        if _NAME.fullmatch(tok):
            if mode != "word":
                fail("bare state atoms are only allowed in word mode")
            if tok not in name_index:
                fail(f"unknown state {tok!r}")
            return atom(DIA, name_index[tok])
        fail(f"unexpected token {tok!r}")

    out = parse_or()
    if peek() is not None:
        fail(f"trailing tokens after formula: {tokens[pos:]}")
    return out


def write_automaton(aut: AltAutomaton) -> str:
    """Canonical text: alphabet, mode, states and transitions in
    lexicographic order."""
    lines = [
        "alphabet: " + " ".join(sorted(aut.alphabet)) + ";",
        f"mode: {aut.mode};",
    ]
    order = sorted(range(aut.n_states), key=lambda q: aut.names[q])
    for q in order:
        lines.append(f"state {aut.names[q]} {aut.priority[q]};")
    lines.append(f"initial {aut.names[aut.initial]};")
    for q in order:
        for letter in sorted(aut.alphabet):
            cond = aut.delta[(q, letter)]
            lines.append(
                f"trans {aut.names[q]} {letter} := {_format(cond, aut)};"
            )
    return "\n".join(lines) + "\n"


def _format(cond: Cond, aut: AltAutomaton, level: int = 0) -> str:
    if isinstance(cond, Atom):
        if aut.mode == "word":
            return aut.names[cond.state]
        prefix = "<>" if cond.modal == DIA else "[]"
        return f"{prefix} {aut.names[cond.state]}"
    if isinstance(cond, And):
        body = " & ".join(_format(op, aut, 2) for op in cond.operands)
        return f"({body})" if level >= 2 else body
    body = " | ".join(_format(op, aut, 1) for op in cond.operands)
    return f"({body})" if level >= 1 else body
