"""Curated slot vocabularies used by the question templates.

Each family ships plain-text word lists (one entry per line, ``#`` comments
and blank lines ignored). The lists deliberately include decoy entries that
no built-in environment ever emits, so the unanswerable-question pool cannot
run dry: candidate bindings are always checked against the episode text at
generation time, never trusted blindly.
"""

from __future__ import annotations

from importlib import resources

_CACHE: dict[tuple[str, str], tuple[str, ...]] = {}

CATEGORIES = {
    "grid": ("actions", "terrains", "resources", "crafts", "keywords"),
    "text": ("items", "locations", "keywords", "directions"),
}


def word_list(family: str, category: str) -> tuple[str, ...]:
    """Return the entries of one vocabulary list, in file order."""
    key = (family, category)
    if key not in _CACHE:
        if category not in CATEGORIES.get(family, ()):
            raise KeyError(f"no vocabulary {category!r} for family {family!r}")
        path = resources.files("traceqa").joinpath(f"data/vocab/{family}/{category}.txt")
        entries = []
        for line in path.read_text(encoding="utf-8").splitlines():
            word = line.strip()
            if word and not word.startswith("#"):
                entries.append(word)
        _CACHE[key] = tuple(entries)
    return _CACHE[key]
