"""Exact scoring rules for free-form answers against typed ground truth.

Strings are normalized (lowercase, parenthesized asides dropped, surrounding
quotes stripped, whitespace collapsed) and compared by normalized edit
distance with a 0.5 acceptance threshold, except for pattern classes that
demand exactness (URLs, file names, page references, phone numbers, clock
times, calendar dates, emails). Numeric types parse leniently ("4", "4.0",
trailing percent signs) but compare strictly for integers and within one
percent for floats, also accepting the 100x and 1/100 percent forms. List
ground truth holds alternatives: the prediction scores against its best
match. The label "not answerable" is reserved: such questions score only on
an exact normalized match, and the F1 metric splits on it (recall over
questions with a real answer, precision over predictions that committed to
one).

Every rule is deterministic, so identical inputs give identical reports.
"""

from __future__ import annotations

import re

NOT_ANSWERABLE = "not answerable"

_PAREN = re.compile(r"\([^()]*\)")
_WS = re.compile(r"\s+")

_EXACT_PATTERNS = (
    re.compile(r"^\S+://\S+$"),
    re.compile(r"^www\.\S+$"),
    re.compile(r"^[\w/-]+\.[a-z0-9]{1,4}$"),
    re.compile(r"^(?:p|pg|page)\.?\s*\d+$"),
    re.compile(r"^\+?[\d\s().-]*\d[\d\s().-]*$"),
    re.compile(r"^\d{1,2}(?::\d{2})?\s*[ap]\.?m\.?$"),
    re.compile(r"^\d{4}-\d{2}(?:-\d{2})?$"),
    re.compile(r"^[^@\s]+@[^@\s]+\.[^@\s]+$"),
)


def normalize_answer(text: str) -> str:
    """Canonical string form used by every comparison rule."""
    out = str(text).lower().strip()
    while True:
        before = out
        out = _PAREN.sub(" ", out)
        out = out.strip()
        while len(out) >= 2 and out[0] == out[-1] and out[0] in "'\"":
            out = out[1:-1].strip()
        out = _WS.sub(" ", out).strip()
        if out == before:
            return out


def requires_exact_match(text: str) -> bool:
    """True for normalized strings whose shape forbids fuzzy credit."""
    return any(p.match(text) for p in _EXACT_PATTERNS)


def levenshtein(a: str, b: str) -> int:
    """Edit distance with single-character insert, delete, and substitute."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ch_a in enumerate(a, start=1):
        current = [i]
        for j, ch_b in enumerate(b, start=1):
            cost = 0 if ch_a == ch_b else 1
            current.append(min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost))
        previous = current
    return previous[len(b)]


def anls_score(gt: str, pred: str) -> float:
    """Normalized edit similarity, zeroed below the 0.5 threshold."""
    g = normalize_answer(gt)
    p = normalize_answer(pred)
    if not g and not p:
        return 1.0
    denom = max(len(g), len(p))
    s = 1.0 - levenshtein(g, p) / denom
    return s if s > 0.5 else 0.0


def _parse_number(pred) -> float | None:
    if isinstance(pred, bool):
        return None
    if isinstance(pred, (int, float)):
        return float(pred)
    text = normalize_answer(str(pred))
    text = text.rstrip("%").strip()
    text = text.replace(",", "")
    if not text:
        return None
    try:
        return float(text)
    except ValueError:
        return None


def _score_integer(gt: int, pred) -> float:
    value = _parse_number(pred)
    if value is None or value != int(value):
        return 0.0
    return 1.0 if int(value) == int(gt) else 0.0


def _score_float(gt: float, pred) -> float:
    value = _parse_number(pred)
    if value is None:
        return 0.0
    for candidate in (float(gt), float(gt) / 100.0, float(gt) * 100.0):
        if value == candidate:
            return 1.0
        if abs(value - candidate) <= max(0.005, 0.01 * abs(candidate)):
            return 1.0
    return 0.0


def _score_yes_no(gt: str, pred) -> float:
    text = normalize_answer(str(pred))
    first = re.split(r"[\s,.!;:]+", text, maxsplit=1)[0] if text else ""
    return 1.0 if first == normalize_answer(gt) else 0.0


def _score_string(gt: str, pred) -> float:
    g = normalize_answer(gt)
    p = normalize_answer(str(pred))
    if g == NOT_ANSWERABLE or p == NOT_ANSWERABLE:
        return 1.0 if g == p else 0.0
    if requires_exact_match(g):
        return 1.0 if g == p else 0.0
    return anls_score(g, p)


def score_answer(ground_truth, prediction, answer_type: str) -> float:
    """Score one prediction in [0, 1] under the rule for its answer type.

    A None prediction always scores 0. List ground truth enumerates
    acceptable alternatives, each scored by its own element type.
    """
    if prediction is None:
        return 0.0
    if answer_type == "list":
        candidates = ground_truth if isinstance(ground_truth, (list, tuple)) else [ground_truth]
        best = 0.0
        for candidate in candidates:
            if isinstance(candidate, bool):
                element_type = "yes_no"
            elif isinstance(candidate, int):
                element_type = "integer"
            elif isinstance(candidate, float):
                element_type = "float"
            else:
                element_type = "string"
            best = max(best, score_answer(candidate, prediction, element_type))
        return best
    if answer_type in ("integer", "step_number"):
        if isinstance(ground_truth, str):
            return _score_string(ground_truth, prediction)
        return _score_integer(ground_truth, prediction)
    if answer_type == "float":
        if isinstance(ground_truth, str):
            return _score_string(ground_truth, prediction)
        return _score_float(ground_truth, prediction)
    if answer_type == "yes_no":
        return _score_yes_no(ground_truth, prediction)
    if answer_type == "string":
        return _score_string(str(ground_truth), prediction)
    raise ValueError(f"unknown answer type {answer_type!r}")


def _is_na_label(value) -> bool:
    return isinstance(value, str) and normalize_answer(value) == NOT_ANSWERABLE


def score_suite(qa_instances: list[dict], predictions: list[dict]) -> dict:
    """Score a QA file against a prediction file and aggregate the report.

    Predictions are matched by ``qa_id``; a question with no prediction
    counts as a committed wrong answer. Report fields: overall accuracy
    (mean score), NA-aware precision/recall/F1 using soft scores, and a
    per-ability accuracy breakdown, plus per-question scores for audits.
    """
    by_id = {p["qa_id"]: p for p in predictions}
    per_question = []
    ability_totals: dict[str, list[float]] = {}
    recall_scores: list[float] = []
    precision_scores: list[float] = []
    answered = 0
    for qa in qa_instances:
        pred_rec = by_id.get(qa["qa_id"])
        pred = pred_rec.get("answer") if pred_rec else None
        if pred_rec is not None:
            answered += 1
        s = score_answer(qa["ground_truth"], pred, qa["answer_type"])
        per_question.append(
            {
                "qa_id": qa["qa_id"],
                "ability": qa["ability"],
                "score": round(s, 6),
            }
        )
        ability_totals.setdefault(qa["ability"], []).append(s)
        gt_is_na = qa["answer_type"] == "string" and _is_na_label(qa["ground_truth"])
        pred_is_na = _is_na_label(pred) if pred is not None else False
        if not gt_is_na:
            recall_scores.append(s)
        if not pred_is_na:
            precision_scores.append(s)
    scores = [q["score"] for q in per_question]
    accuracy = sum(scores) / len(scores) if scores else 0.0
    recall = sum(recall_scores) / len(recall_scores) if recall_scores else 0.0
    precision = sum(precision_scores) / len(precision_scores) if precision_scores else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return {
        "total_questions": len(qa_instances),
        "answered": answered,
        "accuracy": round(accuracy, 6),
        "precision": round(precision, 6),
        "recall": round(recall, 6),
        "f1": round(f1, 6),
        "abilities": {
            ability: {
                "count": len(vals),
                "accuracy": round(sum(vals) / len(vals), 6),
            }
            for ability, vals in sorted(ability_totals.items())
        },
        "per_question": per_question,
    }
