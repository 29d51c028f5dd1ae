"""Question template machinery shared by both family catalogs.

A template is a small program: it enumerates valid candidates from the
episode index (bindings, evidence steps, typed ground truth), in a
deterministic order, having already applied its answerability preconditions.
The generator then samples a bounded number of candidates per template,
renders the surface form, and validates the instance.

Enumeration over step spans and anchors uses fixed lattices rather than all
O(T^2) combinations: aligned windows of a few sizes plus the whole scope, and
evenly strided step anchors. The lattices depend only on the scope length,
so a truncated episode enumerates exactly the candidates its prefix allows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

ABILITIES = (
    "single_hop",
    "multi_hop",
    "inducing",
    "spatial",
    "temporal",
    "logical",
    "adversarial",
)

ABILITY_BY_PREFIX = {
    "A": "single_hop",
    "B": "multi_hop",
    "C": "inducing",
    "D": "spatial",
    "E": "temporal",
    "F": "logical",
}

ADVERSARIAL_PREFIX = "ADV_"

NOT_ANSWERABLE = "not answerable"


@dataclass(frozen=True)
class Candidate:
    """One valid instantiation of a template before rendering."""

    bindings: dict
    evidence: tuple[int, ...]
    ground_truth: object
    answer_type: str | None = None


@dataclass(frozen=True)
class Template:
    """Surface form plus enumerator for one question template."""

    template_id: str
    family: str
    surface: str
    answer_type: str
    enumerate: Callable
    # Whole-episode aggregations get an explicit scope phrase under a horizon;
    # step- and window-pinned questions already name their referents.
    scope_sensitive: bool = False

    @property
    def ability(self) -> str:
        if self.template_id.startswith(ADVERSARIAL_PREFIX):
            return "adversarial"
        return ABILITY_BY_PREFIX[self.template_id[0]]


def step_lattice(T: int, limit: int = 24) -> list[int]:
    """Evenly strided step anchors including both endpoints."""
    if T <= 0:
        return []
    stride = max(1, T // limit)
    steps = sorted(set(range(1, T + 1, stride)) | {1, T})
    return steps


def window_lattice(T: int) -> list[tuple[int, int]]:
    """Whole scope plus aligned spans of a few fixed sizes."""
    if T <= 0:
        return []
    windows = {(1, T)}
    for size in (10, 25, 50, 100):
        if size >= T:
            continue
        for lo in range(1, T - size + 2, size):
            windows.add((lo, lo + size - 1))
    return sorted(windows)


def ordinal_phrase(ordinal: str) -> str:
    return {"second_last": "second last"}.get(ordinal, ordinal)


def unique_max(counts: dict) -> object | None:
    """Key of the strictly largest value, or None on ties or empty input."""
    best_key = None
    best = None
    tied = False
    for key in sorted(counts):
        value = counts[key]
        if best is None or value > best:
            best_key, best, tied = key, value, False
        elif value == best:
            tied = True
    return None if tied or best_key is None else best_key


def first_sentence(text: str) -> str:
    """Prefix of ``text`` through its first sentence terminator."""
    for i, ch in enumerate(text):
        if ch in ".!?":
            return text[: i + 1].strip()
    return text.strip()


def join_list(values) -> str:
    """Canonical single-string rendering of a list answer."""
    return ", ".join(str(v) for v in values)
