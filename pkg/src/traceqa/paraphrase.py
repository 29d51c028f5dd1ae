"""Optional surface rewriting for generated questions.

Rewriting must never change what a question asks. Every rewrite is checked
against the original: numbers, quoted values, and bound terms must survive,
and the result must be a single non-empty line. A rewrite that fails any
check is discarded and the programmatic surface is kept. The default
rewriter is the identity, so offline runs are unaffected; an external
rewriting service can be plugged in through environment variables.
"""

from __future__ import annotations

import json
import os
import random
import re
import urllib.request

ENDPOINT_VAR = "TRACEQA_PARAPHRASE_URL"
TOKEN_VAR = "TRACEQA_PARAPHRASE_TOKEN"

_NUMBER = re.compile(r"\d+")
_QUOTED = re.compile(r"'([^']*)'")


def identity_rewriter(question: str) -> str:
    return question


def http_rewriter(question: str) -> str:
    """POST the question to the configured endpoint; fall back on any error."""
    url = os.environ.get(ENDPOINT_VAR)
    if not url:
        return question
    payload = json.dumps({"text": question}).encode("utf-8")
    request = urllib.request.Request(
        url, data=payload, headers={"Content-Type": "application/json"}
    )
    token = os.environ.get(TOKEN_VAR)
    if token:
        request.add_header("Authorization", f"Bearer {token}")
    try:
        with urllib.request.urlopen(request, timeout=30) as response:
            body = json.loads(response.read().decode("utf-8"))
        return str(body.get("text", question))
    except Exception:
        return question


def consistency_check(original: str, rewritten: str, bindings: dict) -> bool:
    """True when the rewrite preserves every meaning-bearing token."""
    if "\n" in rewritten or not rewritten.strip():
        return False
    if sorted(_NUMBER.findall(original)) != sorted(_NUMBER.findall(rewritten)):
        return False
    for span in _QUOTED.findall(original):
        if span not in rewritten:
            return False
    lowered = rewritten.lower()
    for value in bindings.values():
        if isinstance(value, str) and value.lower() not in lowered:
            return False
    return True


def apply_paraphrase(suite: list[dict], config, rewriter=None) -> list[dict]:
    """Rewrite a seeded subset of questions in place; reject unsafe rewrites."""
    if rewriter is None:
        rewriter = http_rewriter if os.environ.get(ENDPOINT_VAR) else identity_rewriter
    rng = random.Random(f"{config.question_seed}:paraphrase")
    for instance in suite:
        if rng.random() >= config.paraphrase_rate:
            continue
        original = instance["question"]
        rewritten = rewriter(original).strip()
        if rewritten == original:
            continue
        if not consistency_check(original, rewritten, instance["metadata"]["value_bindings"]):
            continue
        instance["question"] = rewritten
        instance["metadata"]["source"] = "paraphrase"
    return suite
