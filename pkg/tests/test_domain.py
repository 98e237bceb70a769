import pytest
from hypothesis import given
from hypothesis import strategies as st

from coachd.domain import (
    CoachingSnippet,
    EmptyInputError,
    EmptySnippetError,
    Ledger,
    MicroAssessment,
    Direction,
    DuplicateVoteError,
    SelfVoteError,
    SnippetTooLongError,
    TaskType,
    UnknownTaskTypeError,
    UnknownWorkerError,
    Worker,
    duplicate_rate,
    is_verbatim_duplicate,
    normalize_snippet_text,
    validate_snippet,
)

from helpers import make_ledger

TASK_LABELS = [
    "AudioTranscription",
    "Categorization",
    "DataCollection",
    "ImageTranscription",
    "ImageTagging",
    "Survey",
    "Writing",
    "Other",
]


class TestTaskType:
    def test_exactly_eight_labels(self):
        assert sorted(t.label for t in TaskType) == sorted(TASK_LABELS)
        assert len(TaskType) == 8

    @pytest.mark.parametrize("label", TASK_LABELS)
    def test_round_trip(self, label):
        assert TaskType.parse(label).label == label

    @pytest.mark.parametrize("label", ["survey", "Audio Transcription", "", "Unknown"])
    def test_rejects_unknown(self, label):
        with pytest.raises(UnknownTaskTypeError):
            TaskType.parse(label)


class TestNormalize:
    def test_collapses_whitespace(self):
        assert normalize_snippet_text("  use  headphones ") == "use headphones"

    def test_identity(self):
        assert normalize_snippet_text("abc") == "abc"

    def test_empty(self):
        assert normalize_snippet_text("") == ""

    @given(st.text())
    def test_idempotent(self, raw):
        once = normalize_snippet_text(raw)
        assert normalize_snippet_text(once) == once


class TestValidateSnippet:
    def test_boundary_100_accepted(self):
        text = "x" * 100
        assert validate_snippet(text, TaskType.SURVEY) == text

    def test_boundary_101_rejected(self):
        with pytest.raises(SnippetTooLongError):
            validate_snippet("x" * 101, TaskType.SURVEY)

    def test_whitespace_only_is_empty(self):
        with pytest.raises(EmptySnippetError):
            validate_snippet("   ", TaskType.AUDIO_TRANSCRIPTION)

    def test_unknown_task_type_label(self):
        with pytest.raises(UnknownTaskTypeError):
            validate_snippet("fine text", "NotAType")

    def test_counts_scalar_values_not_bytes(self):
        text = "é" * 100  # two UTF-8 bytes each
        assert validate_snippet(text, TaskType.WRITING) == text

    @given(st.text(max_size=300))
    def test_accepted_means_length_in_bounds(self, raw):
        try:
            normalized = validate_snippet(raw, TaskType.OTHER)
        except (EmptySnippetError, SnippetTooLongError):
            return
        assert 1 <= len(normalized) <= 100


class TestVerbatimDuplicate:
    def test_case_folding(self):
        assert is_verbatim_duplicate("use headphones", "Use Headphones")

    def test_distinct_texts(self):
        assert not is_verbatim_duplicate("use headphones", "use earphones")

    def test_whitespace_collapse(self):
        assert is_verbatim_duplicate("a  b", "a b")

    @given(st.text(max_size=60))
    def test_reflexive(self, text):
        assert is_verbatim_duplicate(text, text)

    @given(st.text(max_size=60), st.text(max_size=60))
    def test_symmetric(self, a, b):
        assert is_verbatim_duplicate(a, b) == is_verbatim_duplicate(b, a)

    @given(st.text(max_size=40), st.text(max_size=40), st.text(max_size=40))
    def test_transitive(self, a, b, c):
        if is_verbatim_duplicate(a, b) and is_verbatim_duplicate(b, c):
            assert is_verbatim_duplicate(a, c)


def _snippets(texts, created=None):
    created = created or range(len(texts))
    return [
        CoachingSnippet(f"s{i}", "w0", TaskType.SURVEY, text, at)
        for i, (text, at) in enumerate(zip(texts, created))
    ]


class TestDuplicateRate:
    def test_no_repeats(self):
        assert duplicate_rate(_snippets(["a", "b", "c"])) == 0.0

    def test_one_of_three(self):
        assert duplicate_rate(_snippets(["x", "x", "y"])) == pytest.approx(1 / 3)

    def test_three_of_four(self):
        assert duplicate_rate(_snippets(["x", "x", "x", "x"])) == 0.75

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            duplicate_rate([])

    def test_earlier_is_by_created_at(self):
        snippets = _snippets(["a", "b"], created=[5, 1])
        # "b" is older; "a" is not a duplicate of anything earlier.
        assert duplicate_rate(snippets) == 0.0

    @given(st.integers(min_value=1, max_value=30))
    def test_identical_list_rate(self, n):
        assert duplicate_rate(_snippets(["same"] * n)) == pytest.approx((n - 1) / n)


class TestLedgerInvariants:
    def test_snippet_requires_registered_author(self):
        ledger = Ledger()
        with pytest.raises(UnknownWorkerError):
            ledger.add_snippet(CoachingSnippet("s", "ghost", TaskType.SURVEY, "text", 0))

    def test_no_duplicate_vote(self):
        ledger = make_ledger(
            [("w0", 0), ("w1", 0)], [("s", "w0", TaskType.SURVEY, 0)], [("a0", "w1", "s", "up")]
        )
        with pytest.raises(DuplicateVoteError):
            ledger.add_assessment(MicroAssessment("a1", "w1", "s", Direction.DOWN, 1))

    def test_no_self_vote(self):
        ledger = make_ledger([("w0", 0)], [("s", "w0", TaskType.SURVEY, 0)])
        with pytest.raises(SelfVoteError):
            ledger.add_assessment(MicroAssessment("a0", "w0", "s", Direction.UP, 1))

    def test_worker_fields_validated(self):
        with pytest.raises(Exception):
            Worker("w", -1, 0)
