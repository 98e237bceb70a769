"""Vectorized per-round snippet scorer for simulation loops.

Recomputes, from scratch each call, exactly what the library's
``score_snippet`` would produce over the same ledger: agreement-based
reputations, mainstream/alternative classification with the classified vote
excluded from the other voters' reputations, and mainstream-only credit.
The exclusion step only changes a voter's agreement when the snippet sits on
an eligibility or majority boundary, so exact pair corrections are computed
just for those snippets; everything else reduces to O(votes) array work.
Equivalence against the pure implementation is pinned by tests.
"""

from __future__ import annotations

import numpy as np

from ..reputation import DEFAULT_CONFIG, ReputationConfig, experience_score
from ..selector import SnippetScore


class VectorScorer:
    def __init__(self, config: ReputationConfig = DEFAULT_CONFIG) -> None:
        self.config = config
        self.worker_index: dict[str, int] = {}
        self.snippet_index: dict[str, int] = {}
        self.snippet_ids: list[str] = []
        self.experience: list[float] = []
        self._capacity = 1024
        self._n = 0
        self._voter = np.zeros(self._capacity, dtype=np.int64)
        self._snip = np.zeros(self._capacity, dtype=np.int64)
        self._dir = np.zeros(self._capacity, dtype=np.int64)

    def register_worker(self, worker_id: str, tasks_completed: int) -> None:
        if worker_id in self.worker_index:
            raise ValueError(f"worker {worker_id!r} already registered")
        self.worker_index[worker_id] = len(self.experience)
        self.experience.append(experience_score(tasks_completed))

    def register_snippet(self, snippet_id: str) -> None:
        if snippet_id in self.snippet_index:
            raise ValueError(f"snippet {snippet_id!r} already registered")
        self.snippet_index[snippet_id] = len(self.snippet_ids)
        self.snippet_ids.append(snippet_id)

    def add_vote(self, voter_id: str, snippet_id: str, direction_sign: int) -> None:
        if direction_sign not in (1, -1):
            raise ValueError("direction_sign must be +1 or -1")
        if self._n == self._capacity:
            self._capacity *= 2
            for name in ("_voter", "_snip", "_dir"):
                grown = np.zeros(self._capacity, dtype=np.int64)
                grown[: self._n] = getattr(self, name)[: self._n]
                setattr(self, name, grown)
        self._voter[self._n] = self.worker_index[voter_id]
        self._snip[self._n] = self.snippet_index[snippet_id]
        self._dir[self._n] = direction_sign
        self._n += 1

    # -- scoring -------------------------------------------------------------

    def compute(self) -> dict[str, SnippetScore]:
        cfg = self.config
        n_snippets = len(self.snippet_ids)
        n_workers = len(self.experience)
        exp = np.asarray(self.experience)
        a = self._n
        if a == 0:
            return {
                sid: SnippetScore(sid, 0, 0.0, 0) for sid in self.snippet_ids
            }

        voter = self._voter[:a]
        snip = self._snip[:a]
        sign = self._dir[:a]

        up_s = np.bincount(snip[sign > 0], minlength=n_snippets)
        dn_s = np.bincount(snip[sign < 0], minlength=n_snippets)
        n_s = up_s + dn_s
        diff_s = up_s - dn_s

        # Agreement: each vote against the unweighted majority of the others.
        o_n = n_s[snip] - 1
        o_diff = diff_s[snip] - sign
        eligible = (o_n >= cfg.min_other_votes) & (o_diff != 0)
        match = eligible & (sign == np.sign(o_diff))
        matches_v = np.bincount(voter[match], minlength=n_workers)
        eligible_v = np.bincount(voter[eligible], minlength=n_workers)
        agree_v = np.where(
            eligible_v > 0,
            matches_v / np.maximum(eligible_v, 1),
            cfg.neutral_agreement,
        )
        rep_v = cfg.experience_weight * exp + cfg.agreement_weight * agree_v

        # Consensus of the other votes, base case: full-ledger reputations.
        rep_a = rep_v[voter]
        contrib = sign * rep_a
        total_s = np.bincount(snip, weights=contrib, minlength=n_snippets)
        consensus = total_s[snip] - contrib

        # Exact corrections where excluding the classified vote can change
        # another voter's agreement: eligibility boundary or near-tie.
        boundary = (n_s == cfg.min_other_votes + 1) | (
            (n_s > cfg.min_other_votes + 1) & (np.abs(diff_s) <= 2)
        )
        applies = n_s[snip] - 1 >= cfg.min_other_votes
        if np.any(boundary[snip] & applies):
            consensus = consensus.copy()
            for s in np.nonzero(boundary)[0]:
                idx = np.nonzero(snip == s)[0]
                if len(idx) - 1 < cfg.min_other_votes:
                    continue
                self._correct_snippet(
                    consensus, idx, int(diff_s[s]), int(n_s[s]),
                    sign, voter, exp, matches_v, eligible_v,
                )

        sig = np.sign(consensus)
        alternative = (
            applies
            & (np.abs(consensus) >= cfg.deviation_threshold)
            & (sign != sig)
        )
        mainstream = ~alternative
        credit_s = np.bincount(
            snip[mainstream], weights=contrib[mainstream], minlength=n_snippets
        )

        scores = {}
        for sid, i in self.snippet_index.items():
            scores[sid] = SnippetScore(
                sid, int(diff_s[i]), float(credit_s[i]), int(n_s[i])
            )
        return scores

    def _correct_snippet(
        self, consensus, idx, diff_s: int, n_s: int,
        sign, voter, exp, matches_v, eligible_v,
    ) -> None:
        cfg = self.config
        min_other = cfg.min_other_votes
        k = len(idx)
        for ai in range(k):
            a = idx[ai]
            da = int(sign[a])
            total = 0.0
            for bi in range(k):
                if bi == ai:
                    continue
                b = idx[bi]
                db = int(sign[b])
                vb = int(voter[b])
                y_n = n_s - 1
                y_diff = diff_s - db
                e1 = y_n >= min_other and y_diff != 0
                m1 = e1 and db == (1 if y_diff > 0 else -1)
                y2_n = n_s - 2
                y2_diff = diff_s - db - da
                e0 = y2_n >= min_other and y2_diff != 0
                m0 = e0 and db == (1 if y2_diff > 0 else -1)
                elig = int(eligible_v[vb]) - int(e1) + int(e0)
                matched = int(matches_v[vb]) - int(m1) + int(m0)
                agree = matched / elig if elig > 0 else cfg.neutral_agreement
                total += db * (cfg.experience_weight * exp[vb] + cfg.agreement_weight * agree)
            consensus[a] = total
