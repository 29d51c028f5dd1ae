"""Frozen scoring-rule table plus an independent edit-distance oracle."""

import random
from functools import lru_cache

from traceqa.scoring import (
    anls_score,
    levenshtein,
    normalize_answer,
    requires_exact_match,
    score_answer,
    score_suite,
)


def oracle_levenshtein(a: str, b: str) -> int:
    """Top-down memoized recursion, structurally unlike the row-DP version."""

    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> int:
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        if a[i] == b[j]:
            return go(i + 1, j + 1)
        return 1 + min(go(i + 1, j), go(i, j + 1), go(i + 1, j + 1))

    return go(0, 0)


def test_levenshtein_matches_oracle():
    rng = random.Random(11)
    alphabet = "abcde"
    for _ in range(300):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 9)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 9)))
        assert levenshtein(a, b) == oracle_levenshtein(a, b)
    assert levenshtein("", "") == 0
    assert levenshtein("abc", "") == 3
    assert levenshtein("kitten", "sitting") == 3


def test_normalize_answer_table():
    cases = [
        ("  Hallway  ", "hallway"),
        ("Paris (France)", "paris"),
        ("'lamp'", "lamp"),
        ('"  The  Cellar "', "the cellar"),
        ("A (very (nested)) aside", "a aside"),
        ("(everything)", ""),
        ("Not  Answerable", "not answerable"),
        ("wood_pickaxe", "wood_pickaxe"),
    ]
    for raw, expected in cases:
        assert normalize_answer(raw) == expected
        assert normalize_answer(normalize_answer(raw)) == normalize_answer(raw)


def test_exact_match_classes():
    exact = [
        "https://example.com/page",
        "www.example.com",
        "notes.txt",
        "page 12",
        "p. 7",
        "555-0199",
        "42",
        "11:30 a.m.",
        "2026-08-13",
        "2026-08",
        "bob@example.com",
    ]
    fuzzy = [
        "hallway",
        "1 step right, 6 steps up and 3 steps right",
        "4 steps right and 7 steps up",
        "not answerable",
        "wood pickaxe",
    ]
    for text in exact:
        assert requires_exact_match(normalize_answer(text)), text
    for text in fuzzy:
        assert not requires_exact_match(normalize_answer(text)), text


def test_anls_threshold_behavior():
    assert anls_score("", "") == 1.0
    assert anls_score("abcd", "abcd") == 1.0
    # Similarity exactly 0.5 earns nothing; just above passes through.
    assert anls_score("abcd", "ab") == 0.0
    assert abs(anls_score("abcde", "abcd") - 0.8) < 1e-9
    assert abs(anls_score("hallway", "the hallway") - 7 / 11) < 1e-9
    assert abs(anls_score("hallway", "hallway!") - 0.875) < 1e-9
    assert anls_score("kitchen", "attic") == 0.0


def test_string_rule_table():
    cases = [
        ("hallway", "Hallway", 1.0),
        ("Paris (France)", "paris", 1.0),
        ("https://example.com/a", "https://example.com/b", 0.0),
        ("bob@example.com", "bob@example.org", 0.0),
        ("2026-08-13", "2026-08-14", 0.0),
        ("2026-08-13", "2026-08-13", 1.0),
        ("notes.txt", "note.txt", 0.0),
        ("0", "0", 1.0),
        ("0", "zero", 0.0),
        ("not answerable", "Not Answerable", 1.0),
        ("not answerable", "n/a", 0.0),
        ("not answerable", "kitchen", 0.0),
        ("kitchen", "not answerable", 0.0),
    ]
    for gt, pred, expected in cases:
        assert score_answer(gt, pred, "string") == expected, (gt, pred)


def test_integer_rule_table():
    cases = [
        (4, "4", 1.0),
        (4, "4.0", 1.0),
        (4, " 4 ", 1.0),
        (4, "4%", 1.0),
        (1000, "1,000", 1.0),
        (4, "four", 0.0),
        (4, "4.5", 0.0),
        (4, "5", 0.0),
        (4, 4, 1.0),
        (4, 4.0, 1.0),
        (-2, "-2", 1.0),
    ]
    for gt, pred, expected in cases:
        assert score_answer(gt, pred, "integer") == expected, (gt, pred)
        assert score_answer(gt, pred, "step_number") == expected, (gt, pred)


def test_float_rule_table():
    cases = [
        (0.35, "0.35", 1.0),
        (0.35, "35", 1.0),
        (0.35, "35%", 1.0),
        (0.35, "0.349", 1.0),
        (0.35, "0.30", 0.0),
        (72.0, "71.5", 1.0),
        (72.0, "70", 0.0),
        (0.0, "0", 1.0),
        (0.5, "oops", 0.0),
    ]
    for gt, pred, expected in cases:
        assert score_answer(gt, pred, "float") == expected, (gt, pred)


def test_yes_no_rule_table():
    cases = [
        ("yes", "yes", 1.0),
        ("yes", "Yes, I did.", 1.0),
        ("no", "No.", 1.0),
        ("no", "nope", 0.0),
        ("yes", "no", 0.0),
        ("yes", "", 0.0),
    ]
    for gt, pred, expected in cases:
        assert score_answer(gt, pred, "yes_no") == expected, (gt, pred)


def test_list_rule_takes_best_candidate():
    gt = ["2 steps up", "2 steps left"]
    assert score_answer(gt, "2 steps left", "list") == 1.0
    assert abs(score_answer(gt, "2 steps down", "list") - 2 / 3) < 1e-9
    assert score_answer([3, 5], "5", "list") == 1.0
    assert score_answer([3, 5], "4", "list") == 0.0
    assert score_answer(["wood, stone"], "wood, stone", "list") == 1.0
    assert score_answer([], "anything", "list") == 0.0


def test_missing_prediction_scores_zero():
    assert score_answer("hallway", None, "string") == 0.0
    assert score_answer(7, None, "integer") == 0.0


def _qa(qa_id, ability, gt, answer_type):
    return {
        "qa_id": qa_id,
        "ability": ability,
        "question": "q",
        "answer_type": answer_type,
        "ground_truth": gt,
        "metadata": {},
    }


def test_suite_report_hand_computed():
    qa = [
        _qa("q1", "single_hop", "hallway", "string"),
        _qa("q2", "adversarial", "not answerable", "string"),
        _qa("q3", "adversarial", "not answerable", "string"),
        _qa("q4", "single_hop", "lamp", "string"),
        _qa("q5", "inducing", 4, "integer"),
        _qa("q6", "multi_hop", "kitchen", "string"),
    ]
    predictions = [
        {"qa_id": "q1", "answer": "hallway"},
        {"qa_id": "q2", "answer": "not answerable"},
        {"qa_id": "q3", "answer": "kitchen"},
        {"qa_id": "q4", "answer": "not answerable"},
        {"qa_id": "q5", "answer": "4.0"},
    ]
    report = score_suite(qa, predictions)
    assert report["total_questions"] == 6
    assert report["answered"] == 5
    assert abs(report["accuracy"] - 0.5) < 1e-9
    assert abs(report["recall"] - 0.5) < 1e-9
    assert abs(report["precision"] - 0.5) < 1e-9
    assert abs(report["f1"] - 0.5) < 1e-9
    assert report["abilities"]["adversarial"] == {"count": 2, "accuracy": 0.5}
    assert report["abilities"]["single_hop"] == {"count": 2, "accuracy": 0.5}
    assert [q["score"] for q in report["per_question"]] == [1.0, 1.0, 0.0, 0.0, 1.0, 0.0]


def test_suite_report_empty_edges():
    report = score_suite([], [])
    assert report["accuracy"] == 0.0
    assert report["f1"] == 0.0

    qa = [_qa("q1", "adversarial", "not answerable", "string")]
    report = score_suite(qa, [{"qa_id": "q1", "answer": "not answerable"}])
    # The only question is refused correctly: nothing enters either
    # denominator, so F1 collapses to zero by convention while accuracy is 1.
    assert report["accuracy"] == 1.0
    assert report["f1"] == 0.0
