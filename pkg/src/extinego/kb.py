"""Ground-predicate store backing every primitive's pre/postconditions.

Each agent holds one knowledge base per negotiation.  Facts are ground
predicates over item sets, proposal ids and agent ids; matching supports
wildcards but no unification beyond that.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArgumentError


class _Wildcard:
    def __repr__(self):
        return "?"


#: Matches any argument in a `holds` pattern.
ANY = _Wildcard()

# functor -> arity; item-set arguments match by set equality, not subset.
FUNCTORS = {
    "wait": 1,          # wait(x): items x are under negotiation
    "satisfied2": 2,    # satisfied2(x,d): d holds a promising proposal on x
    "satisfied3": 3,    # satisfied3(x,d,f): f's proposal on x interests d
    "know": 1,          # know(y): proposal y already received
    "sender": 2,        # sender(y,f): proposal/bid y came from f
    "preferred": 3,     # preferred(x,d,f): d ranks f best on x
    "rejected": 3,      # rejected(x,y,a): proposal y on x rejected w.r.t. a
    "committed": 3,     # committed(x,a,b): a's answer on x binds it to b
    "timeout": 1,       # timeout(x): decommitment window on x expired
    "condition": 2,     # condition(y,d): d respected the terms attached to y
    "proposal": 2,      # proposal(x,y): plain proposal y on items x
    "ext_proposal": 2,  # ext_proposal(x,y): extended proposal y on items x
    "bid": 2,           # bid(x,y): bid y (plain or extended) on items x
}


def _freeze(arg):
    if isinstance(arg, (set, frozenset, list, tuple)):
        return frozenset(str(a) for a in arg)
    if isinstance(arg, (str, _Wildcard)):
        return arg
    raise ArgumentError(f"unsupported predicate argument: {arg!r}")


def render_arg(arg) -> str:
    if isinstance(arg, frozenset):
        return "{" + ",".join(sorted(arg)) + "}"
    return str(arg)


@dataclass(frozen=True)
class Predicate:
    """One ground fact (or, with ANY arguments, a match pattern)."""

    functor: str
    args: tuple

    def __post_init__(self):
        arity = FUNCTORS.get(self.functor)
        if arity is None:
            raise ArgumentError(f"unknown functor: {self.functor!r}")
        if len(self.args) != arity:
            raise ArgumentError(
                f"{self.functor} expects {arity} arguments, got {len(self.args)}"
            )
        if self.functor == "committed" and self.args[1] == self.args[2]:
            raise ArgumentError("an agent cannot be committed to itself")

    @property
    def is_ground(self) -> bool:
        return not any(isinstance(a, _Wildcard) for a in self.args)

    def matches(self, ground: "Predicate") -> bool:
        if self.functor != ground.functor:
            return False
        return all(
            isinstance(mine, _Wildcard) or mine == theirs
            for mine, theirs in zip(self.args, ground.args)
        )

    def render(self) -> str:
        return f"{self.functor}({','.join(render_arg(a) for a in self.args)})"


def fact(functor: str, *args) -> Predicate:
    """Build a predicate, normalising item collections to frozen sets."""
    return Predicate(functor, tuple(_freeze(a) for a in args))


@dataclass(frozen=True)
class KnowledgeBase:
    """An agent's fact store.  Immutable; updates return a new value."""

    owner: str
    facts: frozenset = frozenset()

    def __contains__(self, p: Predicate) -> bool:
        return p in self.facts

    def __len__(self) -> int:
        return len(self.facts)

    def dump(self) -> str:
        """One fact per line, sorted lexicographically."""
        return "\n".join(sorted(f.render() for f in self.facts))


def assert_fact(kb: KnowledgeBase, p: Predicate) -> KnowledgeBase:
    """Add a ground fact; asserting twice changes nothing."""
    if not p.is_ground:
        raise ArgumentError(f"cannot assert a pattern: {p.render()}")
    if p in kb.facts:
        return kb
    return KnowledgeBase(kb.owner, kb.facts | {p})


def retract_fact(kb: KnowledgeBase, p: Predicate) -> KnowledgeBase:
    """Remove a fact; retracting an absent fact is a no-op."""
    if p not in kb.facts:
        return kb
    return KnowledgeBase(kb.owner, kb.facts - {p})


def holds(kb: KnowledgeBase, pattern: Predicate) -> frozenset:
    """All ground facts unifying with `pattern`; empty set means failure."""
    if pattern.is_ground:
        return frozenset({pattern} & kb.facts)
    return frozenset(f for f in kb.facts if pattern.matches(f))
