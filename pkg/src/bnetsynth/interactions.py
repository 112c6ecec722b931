"""The eight boolean place/transition interactions and net types.

An interaction is a partial function {0,1} -> {0,1} describing how firing a
transition changes (or constrains) the token count of a single boolean place.
A net type is a non-empty set of interactions; everything downstream (regions,
nets, synthesis) is parameterized by one.
"""

from __future__ import annotations

# Canonical order. All iteration, serialization and enumeration that ranges
# over interactions uses this order.
INTERACTION_ORDER = ("nop", "inp", "out", "set", "res", "swap", "used", "free")

# partial maps as (value at 0, value at 1), None = undefined
_TABLE: dict[str, tuple[int | None, int | None]] = {
    "nop": (0, 1),
    "inp": (None, 0),
    "out": (1, None),
    "set": (1, 1),
    "res": (0, 0),
    "swap": (1, 0),
    "used": (None, 1),
    "free": (0, None),
}

# total on {0,1}
TOTAL = frozenset({"nop", "set", "res", "swap"})
# defined on exactly one input
PARTIAL = frozenset({"inp", "out", "used", "free"})


def is_interaction(name: str) -> bool:
    return name in _TABLE


def apply(interaction: str, value: int) -> int | None:
    """Apply an interaction to a place value. None when undefined there."""
    try:
        row = _TABLE[interaction]
    except KeyError:
        raise ValueError(f"unknown interaction {interaction!r}") from None
    if value not in (0, 1):
        raise ValueError(f"place value must be 0 or 1, got {value!r}")
    return row[value]


def non_nop(net_type: frozenset[str]) -> tuple[str, ...]:
    """Members of a net type other than nop, in canonical order."""
    return tuple(i for i in INTERACTION_ORDER if i in net_type and i != "nop")


def ordered(net_type: frozenset[str]) -> tuple[str, ...]:
    """Members of a net type in canonical order."""
    return tuple(i for i in INTERACTION_ORDER if i in net_type)


def parse_type(text: str) -> frozenset[str]:
    """Parse a comma-separated net type literal such as "nop,inp,set".

    Whitespace around items is ignored. Raises ValueError naming the
    offending token on unknown interactions, duplicates, or an empty list.
    """
    items = [tok.strip() for tok in text.split(",")]
    if items == [""]:
        raise ValueError("empty net type")
    seen: set[str] = set()
    for tok in items:
        if not is_interaction(tok):
            raise ValueError(f"unknown interaction {tok!r} in net type")
        if tok in seen:
            raise ValueError(f"duplicate interaction {tok!r} in net type")
        seen.add(tok)
    return frozenset(seen)


def format_type(net_type: frozenset[str]) -> str:
    """Render a net type as its canonical comma-separated literal."""
    return ",".join(ordered(net_type))
