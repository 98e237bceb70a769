"""Word error rate via minimum-edit-distance alignment at the word level."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

_PUNCTUATION = ".,!?;:\"'()"
_STRIP_TABLE = str.maketrans("", "", _PUNCTUATION)


class EmptyReferenceError(Exception):
    pass


@dataclass(frozen=True)
class WerResult:
    substitutions: int
    deletions: int
    insertions: int
    ref_len: int
    wer: float

    @property
    def edit_distance(self) -> int:
        return self.substitutions + self.deletions + self.insertions


def tokenize_transcript(text: str) -> list[str]:
    """Lowercase, drop . , ! ? ; : " ' ( ), split on whitespace runs."""
    return text.lower().translate(_STRIP_TABLE).split()


def wer(reference: Sequence[str], hypothesis: Sequence[str]) -> WerResult:
    """Align hypothesis to reference with unit edit costs and count the ops.

    Backtrace ties resolve substitution over deletion over insertion; the
    (S + D + I) total is tie-free either way.
    """
    n = len(reference)
    m = len(hypothesis)
    if n == 0:
        raise EmptyReferenceError("reference transcript has no words")

    # d[i][j]: edit distance between reference[:i] and hypothesis[:j].
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        d[i][0] = i
    for j in range(1, m + 1):
        d[0][j] = j
    for i in range(1, n + 1):
        ref_word = reference[i - 1]
        row = d[i]
        prev = d[i - 1]
        for j in range(1, m + 1):
            sub = prev[j - 1] + (ref_word != hypothesis[j - 1])
            dele = prev[j] + 1
            ins = row[j - 1] + 1
            row[j] = min(sub, dele, ins)

    subs = dels = inss = 0
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0 and d[i][j] == d[i - 1][j - 1] + (reference[i - 1] != hypothesis[j - 1]):
            if reference[i - 1] != hypothesis[j - 1]:
                subs += 1
            i -= 1
            j -= 1
        elif i > 0 and d[i][j] == d[i - 1][j] + 1:
            dels += 1
            i -= 1
        else:
            inss += 1
            j -= 1

    return WerResult(subs, dels, inss, n, (subs + dels + inss) / n)
