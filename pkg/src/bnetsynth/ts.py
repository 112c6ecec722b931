"""Deterministic initialized transition systems.

States and events are opaque strings. A TS is valid when it is deterministic,
every state is reachable from the initial state, and every declared event
labels at least one edge. Canonical order everywhere is lexicographic over
identifier strings.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from . import lineio
from .lineio import ParseError


class InvalidTransitionSystem(ValueError):
    pass


@dataclass(frozen=True)
class TransitionSystem:
    states: tuple[str, ...]  # sorted
    events: tuple[str, ...]  # sorted
    initial: str
    delta: dict[tuple[str, str], str]  # (state, event) -> state
    edges: tuple[tuple[str, str, str], ...]  # sorted (src, event, dst)
    out: dict[str, tuple[tuple[str, str], ...]]  # state -> ((event, dst), ...) sorted
    name: Optional[str] = None

    def successor(self, state: str, event: str) -> Optional[str]:
        return self.delta.get((state, event))

    def __repr__(self) -> str:
        return (f"TransitionSystem({len(self.states)} states, "
                f"{len(self.events)} events, {len(self.edges)} edges)")


def build_ts(
    states: Iterable[str],
    events: Iterable[str],
    edges: Iterable[tuple[str, str, str]],
    initial: str,
    name: Optional[str] = None,
) -> TransitionSystem:
    """Validate and assemble a transition system.

    Raises InvalidTransitionSystem on dangling references, nondeterminism,
    unreachable states, events labeling no edge, or an undeclared initial
    state. Exact duplicate edges collapse silently.
    """
    state_set = set(states)
    event_set = set(events)
    if initial not in state_set:
        raise InvalidTransitionSystem(f"initial state {initial!r} not declared")

    delta: dict[tuple[str, str], str] = {}
    for src, event, dst in edges:
        for s in (src, dst):
            if s not in state_set:
                raise InvalidTransitionSystem(
                    f"edge ({src}, {event}, {dst}) references undeclared state {s!r}")
        if event not in event_set:
            raise InvalidTransitionSystem(
                f"edge ({src}, {event}, {dst}) references undeclared event {event!r}")
        prev = delta.get((src, event))
        if prev is not None and prev != dst:
            raise InvalidTransitionSystem(
                f"nondeterministic at ({src}, {event}): targets {prev!r} and {dst!r}")
        delta[(src, event)] = dst

    unused = event_set - {e for (_, e) in delta}
    if unused:
        raise InvalidTransitionSystem(
            "events labeling no edge: " + ", ".join(sorted(unused)))

    out_mut: dict[str, list[tuple[str, str]]] = {s: [] for s in state_set}
    for (src, event), dst in delta.items():
        out_mut[src].append((event, dst))

    seen = {initial}
    queue = deque([initial])
    while queue:
        s = queue.popleft()
        for _, dst in out_mut[s]:
            if dst not in seen:
                seen.add(dst)
                queue.append(dst)
    unreachable = state_set - seen
    if unreachable:
        raise InvalidTransitionSystem(
            "unreachable states: " + ", ".join(sorted(unreachable)))

    edge_list = tuple(sorted((src, e, dst) for (src, e), dst in delta.items()))
    out = {s: tuple(sorted(pairs)) for s, pairs in out_mut.items()}
    return TransitionSystem(
        states=tuple(sorted(state_set)),
        events=tuple(sorted(event_set)),
        initial=initial,
        delta=delta,
        edges=edge_list,
        out=out,
        name=name,
    )


# ---------------------------------------------------------------------------
# spanning trees

@dataclass(frozen=True)
class SpanningTree:
    root: str
    # state -> (parent state, event on the tree edge); root is absent
    parent: dict[str, tuple[str, str]]
    order: tuple[str, ...]  # discovery order, root first


def spanning_tree(ts: TransitionSystem) -> SpanningTree:
    """Breadth-first spanning tree from the initial state.

    Ties among edges discovering new states on the same level are broken by
    canonical (state, event) order, so the result is deterministic.
    """
    parent: dict[str, tuple[str, str]] = {}
    order = [ts.initial]
    seen = {ts.initial}
    level = [ts.initial]
    while level:
        candidates = sorted(
            (s, e, dst)
            for s in level
            for (e, dst) in ts.out[s]
            if dst not in seen
        )
        nxt = []
        for s, e, dst in candidates:
            if dst in seen:
                continue
            seen.add(dst)
            parent[dst] = (s, e)
            order.append(dst)
            nxt.append(dst)
        level = nxt
    return SpanningTree(root=ts.initial, parent=parent, order=tuple(order))


# ---------------------------------------------------------------------------
# separation atoms

@dataclass(frozen=True)
class SspAtom:
    s1: str
    s2: str

    def __str__(self) -> str:
        return f"ssp:{self.s1},{self.s2}"


@dataclass(frozen=True)
class EsspAtom:
    event: str
    state: str

    def __str__(self) -> str:
        return f"essp:{self.event},{self.state}"


SeparationAtom = SspAtom | EsspAtom


def enumerate_atoms(ts: TransitionSystem) -> list[SeparationAtom]:
    """All separation atoms in canonical order: state pairs, then event/state.

    State pairs are emitted once each with the lexicographically smaller
    state first; event/state atoms cover exactly the pairs where the event
    does not occur at the state.
    """
    atoms: list[SeparationAtom] = []
    for s1, s2 in combinations(ts.states, 2):
        atoms.append(SspAtom(s1, s2))
    for e in ts.events:
        for s in ts.states:
            if (s, e) not in ts.delta:
                atoms.append(EsspAtom(e, s))
    return atoms


def parse_atom(text: str) -> SeparationAtom:
    """Parse 'ssp:s1,s2' or 'essp:event,state'."""
    kind, _, rest = text.partition(":")
    parts = rest.split(",")
    if kind == "ssp" and len(parts) == 2 and all(parts):
        return SspAtom(parts[0], parts[1])
    if kind == "essp" and len(parts) == 2 and all(parts):
        return EsspAtom(parts[0], parts[1])
    raise ValueError(f"malformed atom {text!r}: expected ssp:s1,s2 or essp:e,s")


def validate_atom(ts: TransitionSystem, atom: SeparationAtom) -> None:
    """Raise ValueError unless atom is a genuine separation atom of ts."""
    if isinstance(atom, SspAtom):
        for s in (atom.s1, atom.s2):
            if s not in ts.out:
                raise ValueError(f"atom {atom} references unknown state {s!r}")
        if atom.s1 == atom.s2:
            raise ValueError(f"atom {atom} names the same state twice")
    else:
        if atom.event not in ts.events:
            raise ValueError(f"atom {atom} references unknown event {atom.event!r}")
        if atom.state not in ts.out:
            raise ValueError(f"atom {atom} references unknown state {atom.state!r}")
        if (atom.state, atom.event) in ts.delta:
            raise ValueError(
                f"atom {atom} is not an atom: {atom.event!r} occurs at {atom.state!r}")


# ---------------------------------------------------------------------------
# isomorphism

def isomorphic(a: TransitionSystem, b: TransitionSystem) -> Optional[dict[str, str]]:
    """Label-preserving isomorphism mapping a's states onto b's, or None.

    Events must match exactly by name; the initial states must correspond.
    """
    if len(a.states) != len(b.states) or a.events != b.events:
        return None
    phi = {a.initial: b.initial}
    queue = deque([a.initial])
    while queue:
        s = queue.popleft()
        t = phi[s]
        a_out = dict(a.out[s])
        b_out = dict(b.out[t])
        if a_out.keys() != b_out.keys():
            return None
        for e in sorted(a_out):
            u, v = a_out[e], b_out[e]
            if u in phi:
                if phi[u] != v:
                    return None
            else:
                phi[u] = v
                queue.append(u)
    if len(set(phi.values())) != len(phi):
        return None
    return phi


# ---------------------------------------------------------------------------
# file format

def parse_ts(text: str) -> TransitionSystem:
    lines = lineio.tokenize(text)
    lineio.expect_model(lines, "ts")
    name: Optional[str] = None
    initial: Optional[str] = None
    edges: list[tuple[str, str, str]] = []
    for lineno, toks in lines[1:]:
        if toks[0] == ".name":
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: .name takes one identifier")
            name = lineio.check_ident(toks[1], "name")
        elif toks[0] == ".initial":
            if len(toks) != 2:
                raise ParseError(f"line {lineno}: .initial takes one state")
            if initial is not None:
                raise ParseError(f"line {lineno}: duplicate .initial")
            initial = lineio.check_ident(toks[1], "state")
        elif toks[0] == ".edge":
            if len(toks) != 4:
                raise ParseError(f"line {lineno}: .edge takes src event dst")
            src = lineio.check_ident(toks[1], "state")
            event = lineio.check_ident(toks[2], "event")
            dst = lineio.check_ident(toks[3], "state")
            edges.append((src, event, dst))
        else:
            raise ParseError(f"line {lineno}: unknown directive {toks[0]!r}")
    if initial is None:
        raise ParseError("missing .initial directive")
    states = {initial} | {s for (s, _, _) in edges} | {d for (_, _, d) in edges}
    events = {e for (_, e, _) in edges}
    return build_ts(states, events, edges, initial, name=name)


def render_ts(ts: TransitionSystem) -> str:
    out = [".model ts"]
    if ts.name is not None:
        out.append(f".name {ts.name}")
    out.append(f".initial {ts.initial}")
    for src, event, dst in ts.edges:
        out.append(f".edge {src} {event} {dst}")
    return "\n".join(out) + "\n"


def read_ts(path: str) -> TransitionSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_ts(fh.read())


def write_ts(path: str, ts: TransitionSystem) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_ts(ts))
