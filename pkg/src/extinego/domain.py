"""Core vocabulary of a negotiation.

Items, constraints, queries, proposals, bid terms, the negotiation record
itself, and the per-agent view of a running negotiation.  Everything here is
an immutable value; the operations at the bottom are pure functions over
those values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ArgumentError

ItemSet = frozenset

#: Constraint subject meaning "the negotiation as a whole", not one item.
WHOLE_NEGOTIATION = "*"

CONSTRAINT_KINDS = (
    "budget_max",
    "date_window",
    "category",
    "duration_max",
    "custom_key_value",
)

AGENCY = "agency"
SUPPLIER = "supplier"


def itemset(items) -> ItemSet:
    """Normalise any iterable of item ids into the canonical frozen form."""
    return frozenset(str(i) for i in items)


@dataclass(frozen=True)
class Item:
    """A single negotiable item, tied to one taxonomy class."""

    id: str
    class_ref: str


@dataclass(frozen=True)
class Constraint:
    """One restriction on an item or on the negotiation as a whole."""

    subject: str  # item id or WHOLE_NEGOTIATION
    kind: str
    value: object

    def __post_init__(self):
        if self.kind not in CONSTRAINT_KINDS:
            raise ArgumentError(f"unknown constraint kind: {self.kind!r}")
        if self.kind == "budget_max" and self.value < 0:
            raise ArgumentError("budget_max must be >= 0")
        if self.kind == "date_window":
            start, end = self.value
            if start > end:
                raise ArgumentError("date_window start must be <= end")

    def render(self) -> str:
        if self.kind == "date_window":
            start, end = self.value
            val = f"{start}..{end}"
        else:
            val = str(self.value)
        prefix = "" if self.subject == WHOLE_NEGOTIATION else f"{self.subject}."
        return f"{prefix}{self.kind}={val}"


def render_constraints(constraints) -> str:
    return ",".join(c.render() for c in constraints) if constraints else "-"


@dataclass(frozen=True)
class Query:
    """A request for a set of items, as issued by an agency."""

    id: str
    support: ItemSet
    constraints: tuple
    issuer: str
    deadline: int
    issued_at: int = 0

    def __post_init__(self):
        if not self.support:
            raise ArgumentError("query support must be nonempty")
        if self.deadline <= self.issued_at:
            raise ArgumentError("query deadline must be after issuance")

    def budget(self):
        for c in self.constraints:
            if c.kind == "budget_max":
                return c.value
        return None


@dataclass(frozen=True)
class Proposal:
    """A supplier's offer on a set of items, possibly extending the query.

    Prices are integer minor currency units; `total` must equal the sum of
    the per-item prices.  An extended proposal must add at least one item
    beyond `base_support` while keeping an overlap with it.
    """

    id: str
    responds_to: str  # query id
    items: ItemSet
    prices: dict  # item id -> minor units
    total: int
    conditions: tuple
    extended: bool
    base_support: ItemSet

    def __post_init__(self):
        if set(self.prices) != set(self.items):
            raise ArgumentError(f"proposal {self.id}: every item needs a price")
        if self.total != sum(self.prices.values()):
            raise ArgumentError(f"proposal {self.id}: total != sum of per-item prices")
        if self.extended:
            if self.items <= self.base_support:
                raise ArgumentError(f"proposal {self.id}: extended but adds nothing")
            if not (self.items & self.base_support):
                raise ArgumentError(f"proposal {self.id}: extension lost the original items")
        elif not self.items <= self.base_support:
            raise ArgumentError(f"proposal {self.id}: plain proposal outside the query support")

    def added_items(self) -> ItemSet:
        return self.items - self.base_support


@dataclass(frozen=True)
class BidTerms:
    """Validity window and penalty rate attached to a bid."""

    validity_period: int  # ticks the bid stays binding
    penalty_rate: float  # fraction of total price, in [0, 1]
    issued_at: int
    expiry_tick: int

    def __post_init__(self):
        if self.validity_period <= 0:
            raise ArgumentError("validity_period must be positive")
        if not 0.0 <= self.penalty_rate <= 1.0:
            raise ArgumentError("penalty_rate must be within [0, 1]")
        if self.expiry_tick != self.issued_at + self.validity_period:
            raise ArgumentError("expiry_tick must be issuance + validity_period")

    def render(self) -> str:
        return f"validity={self.validity_period},penalty={self.penalty_rate:g}"


@dataclass(frozen=True)
class Negotiation:
    """The negotiation record shared by all participants."""

    system_ref: str
    participants: frozenset
    item_universe: ItemSet
    roles: frozenset
    role_assignment: dict  # agent id -> role
    constraints: tuple

    def agency_ids(self):
        return sorted(a for a, r in self.role_assignment.items() if r == AGENCY)

    def supplier_ids(self):
        return sorted(a for a, r in self.role_assignment.items() if r == SUPPLIER)


@dataclass(frozen=True)
class Violation:
    code: str
    subject: str

    def __str__(self):
        return f"{self.code}: {self.subject}"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple

    @classmethod
    def from_violations(cls, violations):
        vs = tuple(violations)
        return cls(ok=not vs, violations=vs)


def validate_negotiation(n: Negotiation) -> ValidationReport:
    """Check every structural rule on a negotiation; violations are data."""
    found = []
    if len(n.roles) < 2:
        found.append(Violation("fewer than two roles", ",".join(sorted(n.roles))))
    for required in (AGENCY, SUPPLIER):
        if required not in n.roles:
            found.append(Violation("missing role", required))
    for agent in sorted(n.participants):
        role = n.role_assignment.get(agent)
        if role is None:
            found.append(Violation("participant without role", agent))
        elif role not in n.roles:
            found.append(Violation("role outside role set", f"{agent}:{role}"))
    for agent in sorted(n.role_assignment):
        if agent not in n.participants:
            found.append(Violation("role assigned to non-participant", agent))
        assigned = n.role_assignment[agent]
        if isinstance(assigned, (set, frozenset, list, tuple)):
            found.append(Violation("multiple roles", agent))
    if not any(c.kind == "duration_max" for c in n.constraints):
        found.append(Violation("missing duration constraint", n.system_ref))
    return ValidationReport.from_violations(found)


@dataclass
class NegotiationProcess:
    """One agent's view of a negotiation: what it knows and what happened.

    `history` is the ordered record of messages this agent sent or received,
    as (tick, message) pairs; ordering is by tick, then arrival sequence.
    """

    negotiation_ref: str
    owner: str
    known_peers: frozenset
    items: ItemSet  # item set at started_at
    role: str
    protocol_id: str
    history: list = field(default_factory=list)
    current_state: str = "initial"
    started_at: int = 0

    def record(self, tick: int, message) -> None:
        self.history.append((tick, message))


def extensible_sets(before: ItemSet, after: ItemSet) -> bool:
    """The extensibility predicate on two item sets.

    True exactly when the sets differ while still overlapping.
    """
    before = frozenset(before)
    after = frozenset(after)
    return before != after and bool(before & after)


def _accepted_extension_ids(history) -> set:
    """Proposal ids whose extension was later taken up by the agency."""
    from .protocol import PrimitiveKind

    accepted = set()
    for _, msg in history:
        if msg.kind in (PrimitiveKind.REGISTER, PrimitiveKind.ACCEPT):
            if msg.payload.proposal is not None:
                accepted.add(msg.payload.proposal.id)
    return accepted


def support_items(process: NegotiationProcess, at: int) -> ItemSet:
    """The item set in force at tick `at`, replayed from the history.

    Extensions only ever add items: each accepted extension event enlarges
    the set from its own tick onward.
    """
    from .protocol import PrimitiveKind

    if at < process.started_at:
        raise ArgumentError(
            f"tick {at} precedes the start of the process ({process.started_at})"
        )
    accepted = _accepted_extension_ids(process.history)
    items = set(process.items)
    for tick, msg in process.history:
        if tick > at:
            break
        if msg.kind in (PrimitiveKind.EXT_PROPOSE, PrimitiveKind.EXT_BID):
            proposal = msg.payload.proposal
            if proposal is not None and proposal.id in accepted:
                items |= proposal.items
    return frozenset(items)


def is_extensible(process: NegotiationProcess, t0: int, tm: int) -> bool:
    """Whether the process enlarged its item set between two instants."""
    if t0 >= tm:
        raise ArgumentError(f"t0 ({t0}) must precede tm ({tm})")
    return extensible_sets(support_items(process, t0), support_items(process, tm))
