"""Translation of alternating parity word automata into weak ones.

The input is first quotiented into an edge-priority view: the priority
of a state is pushed onto the atoms that enter it, and states that then
behave identically are merged (for the register-indexed family this
collapses the per-entry output component of the state space).  The
translation then stratifies each strongly connected component by a
bounded rank and peels the component's highest priority:

* odd top priority c: ranks belong to the accepting player as
  disjunctions.  A run may lower its rank at any step but never raise
  it; edges carrying c may only be taken when the rank on their target
  is even, and stabilising at an even rank rejects.  A rank that
  stabilises odd certifies that c is crossed finitely often, and the
  component continues with its remaining edges one level down.
* even top priority c: the mirror image.  Ranks belong to the opposing
  player as conjunctions, stabilising at an even rank accepts, and a
  stabilised odd rank certifies finitely many c-crossings before the
  recursion takes over.

Rank co-domains are [0..2|C|]: a run restricted to C is a dag of width
at most |C| whichever player it certifies for, and the standard pruning
argument labels it within that bound.  Components with single-parity
cycle priorities are copied unchanged, cross-component steps restart the
target's ranks at the top (sound: the component order is acyclic).
docs/weakening.md carries the correctness argument and the size
accounting.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..arena import ceil_log2, tarjan_scc
from .core import DIA, AltAutomaton, And, Atom, Cond, atom, conj, disj
from .parameterised import build_parameterised

ACCEPT = 2
REJECT = 1

DEFAULT_STATE_LIMIT = 400_000


class WeakeningOverflow(RuntimeError):
    """The translation exceeded its configured state limit."""


def apw_to_aww(aut: AltAutomaton, state_limit: int = DEFAULT_STATE_LIMIT) -> AltAutomaton:
    """Equivalent weak automaton over all omega-words.

    Pipeline: bring in the register-indexed family at
    ``k = 1 + ceil(log2(states))``, then peel the parameterised
    automaton's priorities rank by rank.
    """
    if aut.mode != "word":
        raise ValueError("the weak translation operates on word automata")
    k = 1 + ceil_log2(max(1, aut.n_states))
    staged = build_parameterised(aut, k)
    return weaken(staged, state_limit=state_limit)


def weaken(aut: AltAutomaton, state_limit: int = DEFAULT_STATE_LIMIT) -> AltAutomaton:
    """Weak automaton recognising the same omega-word language."""
    if aut.mode != "word":
        raise ValueError("the weak translation operates on word automata")
    view = _edge_view(aut)
    builder = _Builder(view, aut.alphabet, state_limit)
    initial = builder.top_entry(view.initial)
    names, prios, delta = builder.finish()
    return AltAutomaton(aut.alphabet, "word", names, prios, initial, delta)


# ---------------------------------------------------------------------------
# Edge-priority view and quotient


@dataclass
class _EdgeView:
    """Merged automaton with priorities on transition atoms.

    ``delta[cls][letter]`` is a condition whose atoms are
    ``("a", target_class, priority)`` markers encoded as leaf tuples in
    plain nested tuples ("and"/"or", operands...).
    """

    n: int
    initial: int
    delta: list[dict[str, tuple]]
    graph: list[tuple[tuple[int, int], ...]]  # (target, priority) edges


def _annotate(cond: Cond, prio) -> tuple:
    """Original condition to a nested-tuple form with target-priority
    annotated atoms."""
    if isinstance(cond, Atom):
        return ("a", cond.state, prio(cond.state))
    tag = "and" if isinstance(cond, And) else "or"
    return (tag,) + tuple(_annotate(op, prio) for op in cond.operands)


def _relabel(tree: tuple, mapping) -> tuple:
    if tree[0] == "a":
        return ("a", mapping[tree[1]], tree[2])
    return (tree[0],) + tuple(_relabel(op, mapping) for op in tree[1:])


def _edge_view(aut: AltAutomaton) -> _EdgeView:
    """Push state priorities onto incoming atoms, then merge states with
    identical behaviour (partition refinement).

    The priority of the initial state is dropped: it is seen once, so it
    never decides the limit of a run.
    """
    reach = _reachable_states(aut)
    annotated = {
        q: {a: _annotate(aut.delta[(q, a)], lambda t: aut.priority[t]) for a in aut.alphabet}
        for q in reach
    }
    # partition refinement on the annotated transition trees
    block = {q: 0 for q in reach}
    while True:
        signature = {
            q: tuple(
                _relabel(annotated[q][a], block) for a in aut.alphabet
            )
            for q in reach
        }
        fresh: dict[tuple, int] = {}
        next_block = {}
        for q in reach:
            sig = signature[q]
            if sig not in fresh:
                fresh[sig] = len(fresh)
            next_block[q] = fresh[sig]
        if next_block == block:
            break
        block = next_block

    classes = sorted(set(block.values()))
    rep: dict[int, int] = {}
    for q in reach:
        rep.setdefault(block[q], q)
    # compact class ids
    remap = {c: i for i, c in enumerate(classes)}
    block = {q: remap[b] for q, b in block.items()}
    rep = {remap[c]: q for c, q in rep.items()}

    n = len(classes)
    delta: list[dict[str, tuple]] = []
    graph: list[tuple[tuple[int, int], ...]] = []
    for cls in range(n):
        q = rep[cls]
        row = {a: _relabel(annotated[q][a], block) for a in aut.alphabet}
        delta.append(row)
        edges: set[tuple[int, int]] = set()
        for tree in row.values():
            _collect_edges(tree, edges)
        graph.append(tuple(sorted(edges)))
    return _EdgeView(n, block[aut.initial], delta, graph)


def _collect_edges(tree: tuple, out: set) -> None:
    if tree[0] == "a":
        out.add((tree[1], tree[2]))
        return
    for op in tree[1:]:
        _collect_edges(op, out)


def _reachable_states(aut: AltAutomaton) -> list[int]:
    graph = aut.transition_graph()
    seen = {aut.initial}
    stack = [aut.initial]
    while stack:
        q = stack.pop()
        for q2 in graph[q]:
            if q2 not in seen:
                seen.add(q2)
                stack.append(q2)
    return sorted(seen)


# ---------------------------------------------------------------------------
# Size accounting


def weakening_state_bound(aut: AltAutomaton) -> int:
    """Documented size bound for ``weaken`` on this input.

    With C ranging over the components of the merged edge-priority view,
    ``B(C) = (|C|+1)|C| + |C| * sum_i B(C_i)`` where the ``C_i`` are the
    components left after deleting the top-priority edges, and
    ``B(C) = |C|`` when the component's cycles carry one parity; the
    total is the sum over top-level components.
    """
    view = _edge_view(aut)
    return max(1, _bound_level(view, tuple(range(view.n)), frozenset()))


def _bound_level(view: _EdgeView, states, dead_edges) -> int:
    total = 0
    for comp, edges in _cyclic_components(view, states, dead_edges):
        if not edges:
            total += len(comp)
            continue
        parities = {p % 2 for _t, p in edges}
        if len(parities) == 1:
            total += len(comp)
            continue
        c = max(p for _t, p in edges)
        w = len(comp)
        total += (w + 1) * len(comp) + w * _bound_level(
            view, comp, dead_edges | {c}
        )
    return total


def _cyclic_components(view: _EdgeView, states, dead_priorities):
    """Components of the subgraph on `states` without edges whose
    priority is in `dead_priorities`; yields (component, internal cycle
    edges as (target, priority) pairs seen from inside)."""
    inside = set(states)
    order = sorted(inside)
    pos = {q: i for i, q in enumerate(order)}
    adj = [
        tuple(
            pos[t]
            for t, p in view.graph[q]
            if t in inside and p not in dead_priorities
        )
        for q in order
    ]
    for comp_idx in tarjan_scc(adj):
        comp = [order[i] for i in comp_idx]
        comp_set = set(comp)
        edges = set()
        for q in comp:
            for t, p in view.graph[q]:
                if t in comp_set and p not in dead_priorities:
                    if len(comp) > 1 or t == q:
                        edges.add((t, p))
        if len(comp) == 1 and not any(t == comp[0] for t, _p in edges):
            edges = set()
        yield comp, edges


# ---------------------------------------------------------------------------
# The builder


class _Builder:
    def __init__(self, view: _EdgeView, alphabet, state_limit: int):
        self.view = view
        self.alphabet = alphabet
        self.limit = state_limit
        self.names: list[str] = []
        self.prios: list[int] = []
        self.delta: dict[tuple[int, str], Cond] = {}
        self.index: dict[tuple, int] = {}
        self.top_entries: dict[int, int] = {}
        self._built_top = False

    def alloc(self, token: tuple, prio: int) -> int:
        idx = self.index.get(token)
        if idx is not None:
            return idx
        idx = len(self.names)
        if idx >= self.limit:
            raise WeakeningOverflow(f"weak translation exceeded {self.limit} states")
        self.index[token] = idx
        self.names.append(f"w{idx}")
        self.prios.append(prio)
        return idx

    def fill(self, idx: int, cls: int, resolver) -> None:
        for letter in self.alphabet:
            self.delta[(idx, letter)] = _rewrite(self.view.delta[cls][letter], resolver)

    def top_entry(self, cls: int) -> int:
        if not self._built_top:
            self._built_top = True

            def top_hook(target, prio, local):
                if local is None:
                    raise AssertionError("top level saw an unresolved atom")
                return local

            entries = self.transform(
                tuple(range(self.view.n)), frozenset(), (), top_hook
            )
            self.top_entries.update(entries)
        return self.top_entries[cls]

    def transform(self, states, dead, ctx, hook) -> dict[int, int]:
        """Build pieces for `states` in the edge-subgraph that omits
        priorities in `dead`; returns every member's entry state.

        `hook(target, prio, local)` finishes each atom: `local` is the
        in-level continuation, or None when the edge leaves this level
        (dead priority or foreign target), in which case the enclosing
        context resolves it."""
        entries: dict[int, int] = {}
        level = set(states)

        def resolve_factory(piece_local):
            def resolve(target, prio) -> Cond:
                local = piece_local(target, prio)
                if local is None and target in level and prio not in dead:
                    got = entries.get(target)
                    if got is None:
                        raise AssertionError("level entry used before construction")
                    local = atom(DIA, got)
                return hook(target, prio, local)

            return resolve

        for comp, edges in _cyclic_components(self.view, states, dead):
            comp_set = set(comp)
            if not edges:
                cls = comp[0]
                idx = self.alloc((ctx, "t", cls), REJECT)
                entries[cls] = idx
                self.fill(idx, cls, resolve_factory(lambda t, p: None))
                continue
            parities = {p % 2 for _t, p in edges}
            if len(parities) == 1:
                verdict = ACCEPT if parities == {0} else REJECT
                local_idx = {cls: self.alloc((ctx, "h", cls), verdict) for cls in comp}
                entries.update(local_idx)

                def piece_local(t, p, _li=local_idx, _cs=comp_set, _dead=dead):
                    return atom(DIA, _li[t]) if t in _cs and p not in _dead else None

                for cls in comp:
                    self.fill(local_idx[cls], cls, resolve_factory(piece_local))
                continue
            entries.update(self.peel(comp, edges, dead, ctx, resolve_factory, hook))
        return entries

    def peel(self, comp, edges, dead, ctx, resolve_factory, hook) -> dict[int, int]:
        comp_set = set(comp)
        c = max(p for _t, p in edges)
        odd_top = c % 2 == 1
        stratum_verdict = REJECT if odd_top else ACCEPT
        combine = disj if odd_top else conj
        width = len(comp)
        peel_id = ("peel", min(comp), c)
        outside = resolve_factory(lambda t, p: None)

        even_idx: dict[tuple[int, int], int] = {}
        for r in range(0, 2 * width + 1, 2):
            for cls in comp:
                even_idx[(cls, r)] = self.alloc((ctx, peel_id, r, "e", cls), stratum_verdict)
        odd_entries: dict[int, dict[int, int]] = {}

        def rank_options(target, prio, top) -> Cond:
            """Legal rank targets r2 <= top for an edge onto `target`:
            crossing a top-priority edge forces an even rank."""
            opts = []
            for r2 in range(top, -1, -1):
                if r2 % 2 == 0:
                    opts.append(atom(DIA, even_idx[(target, r2)]))
                elif prio != c:
                    sub = odd_entries.get(r2)
                    if sub is not None and target in sub:
                        opts.append(atom(DIA, sub[target]))
            if not opts:
                raise AssertionError("no legal rank for edge target")
            return combine(opts)

        def peel_hook_factory(r: int):
            def peel_hook(target, prio, local) -> Cond:
                if target not in comp_set or prio in dead:
                    return outside(target, prio)
                opts = [] if local is None else [local]
                if r > 0:
                    opts.append(rank_options(target, prio, r - 1))
                return combine(opts) if len(opts) > 1 else opts[0]

            return peel_hook

        sub_dead = dead | {c}
        for r in range(2 * width + 1):
            if r % 2 == 1:
                odd_entries[r] = self.transform(
                    comp, sub_dead, ctx + (peel_id, r), peel_hook_factory(r)
                )
            else:
                for cls in comp:

                    def resolver(t, p, _r=r):
                        if t in comp_set and p not in dead:
                            return rank_options(t, p, _r)
                        return outside(t, p)

                    self.fill(even_idx[(cls, r)], cls, resolver)

        return {cls: even_idx[(cls, 2 * width)] for cls in comp}

    def finish(self):
        return tuple(self.names), tuple(self.prios), self.delta


def _rewrite(tree: tuple, resolver) -> Cond:
    if tree[0] == "a":
        return resolver(tree[1], tree[2])
    ops = [_rewrite(op, resolver) for op in tree[1:]]
    return conj(ops) if tree[0] == "and" else disj(ops)
