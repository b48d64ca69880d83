import math
import random
from itertools import accumulate, product

import pytest
from ceerlab.CeerLabError import CeerLabError, WordError
from ceerlab.CeerLabWarning import TruncationWarning
from ceerlab.Ceer.builder import build, uniform_join
from ceerlab.models import (
    Decision,
    IdN,
    IdOmega,
    Intervals,
    Mod,
    Presentation,
    PresentationKind,
    StratumKind,
)
from ceerlab.Semigroup.closure import congruence_closure, contains_coding_words, related_exponents
from ceerlab.Semigroup.decide import (
    fincl_class_size,
    fincl_decide,
    sr_decide,
    sr_from_join,
    sr_to_join,
    sz_decide,
)
from ceerlab.Semigroup.strata import (
    avoiding_count,
    avoiding_rank,
    avoiding_unrank,
    avoiding_words,
    classify,
    coding_occurrences,
    coding_word,
    iter_avoiding,
)
from ceerlab.Transversal.principal import is_transversal_at


def words_up_to(n):
    for length in range(1, n + 1):
        for letters in product("ab", repeat=length):
            yield "".join(letters)


def sr(spec):
    return Presentation(PresentationKind.SR, build(spec))


def fincl(spec):
    return Presentation(PresentationKind.FINCL, build(spec))


SMALL_CEERS = [IdOmega(), IdN(1), Mod(3), Intervals((2, 2))]


def block_size(sizes, x):
    """Size of the Intervals(sizes) class of x."""
    start = 0
    for end in accumulate(sizes):
        if x < end:
            return end - start
        start = end
    return 1


def separated_word(rng):
    """
    b^p, then coding words a b^i a separated by runs of a's, then b^r, with
    the coding exponents. No two coding factors share a letter.
    """
    exponents = [rng.randint(1, 8) for _ in range(rng.randint(0, 4))]
    body = ""
    for n, i in enumerate(exponents):
        if n:
            body += "a" * rng.randint(1, 2)
        body += "a" + "b" * i + "a"
    word = "b" * rng.randint(0, 2) + body + "b" * rng.randint(0, 2)
    return (word or "b"), exponents


# =============================================================================
# Tests for the strata
# =============================================================================


class TestStrata:
    """Tests for classify and the coding / avoiding words."""

    @pytest.mark.parametrize(
        "word, expected",
        [
            ("aba", "coding 1"),
            ("abba", "coding 2"),
            ("aaba", "contains-coding"),
            ("ababa", "contains-coding"),
            ("bab", "avoiding"),
            ("bbaabb", "avoiding"),
            ("a", "avoiding"),
        ],
    )
    def test_classify(self, word, expected):
        assert str(classify(word)) == expected

    def test_classify_rejects_bad_words(self):
        with pytest.raises(WordError):
            classify("")
        with pytest.raises(WordError):
            classify("abx")

    def test_strata_partition_short_words(self):
        """Should put every word up to length 12 in exactly one stratum."""
        counts = {}
        for w in words_up_to(12):
            kind = classify(w).kind
            counts.setdefault(len(w), {}).setdefault(kind, 0)
            counts[len(w)][kind] += 1
        for n in range(1, 13):
            assert sum(counts[n].values()) == 2**n
            assert counts[n].get(StratumKind.AVOIDING, 0) == n * (n + 1) // 2 + 1
            assert counts[n].get(StratumKind.CODING, 0) == (1 if n >= 3 else 0)

    def test_avoiding_words_match_brute_force(self):
        for n in range(1, 11):
            brute = sorted(w for w in words_up_to(n) if len(w) == n and classify(w).kind == StratumKind.AVOIDING)
            assert avoiding_words(n) == brute
            assert len(brute) == avoiding_count(n)

    def test_avoiding_rank_and_unrank(self):
        assert avoiding_unrank(0) == "a"
        assert avoiding_unrank(1) == "b"
        assert avoiding_unrank(2) == "aa"
        stream = iter_avoiding()
        for k in range(300):
            w = next(stream)
            assert avoiding_rank(w) == k
            assert avoiding_unrank(k) == w

    def test_avoiding_rank_rejects_coding_words(self):
        with pytest.raises(WordError):
            avoiding_rank("aba")

    def test_coding_word(self):
        assert coding_word(3) == "abbba"
        with pytest.raises(WordError):
            coding_word(0)

    def test_coding_occurrences(self):
        assert coding_occurrences("abaaba") == [(0, 1), (3, 1)]
        assert coding_occurrences("ababa") == [(0, 1), (2, 1)]
        assert coding_occurrences("babbba") == [(1, 3)]
        assert coding_occurrences("bbaab") == []


# =============================================================================
# Tests for S(R)
# =============================================================================


class TestSR:
    """Tests for the S(R) word problem and its isomorphism with R + Id_omega."""

    def test_examples(self):
        P = sr(Mod(2))
        assert sr_decide(P, 10, "aba", "abbba")
        assert not sr_decide(P, 10, "aba", "abba")
        assert sr_decide(P, 10, "aaba", "babab")
        assert not sr_decide(P, 10, "bab", "bba")
        assert sr_decide(P, 10, "bab", "bab")
        assert not sr_decide(P, 10, "aba", "aaba")

    def test_stage_bound(self):
        """Should only identify coding words once the exponents are in range."""
        P = sr(Mod(2))
        assert not sr_decide(P, 2, "aba", "abbba")
        assert sr_decide(P, 3, "aba", "abbba")

    def test_wrong_presentation(self):
        with pytest.raises(CeerLabError, match="expected a sr presentation"):
            sr_decide(fincl(Mod(2)), 10, "aba", "aba")

    def test_join_coding(self):
        assert sr_to_join("aba") == 0
        assert sr_to_join("abba") == 2
        assert sr_to_join("aaba") == 1
        assert sr_to_join("a") == 3
        assert sr_to_join("b") == 5
        assert sr_from_join(1) == "aaba"
        assert sr_from_join(4) == "abbba"

    def test_join_coding_round_trips(self):
        for n in range(400):
            assert sr_to_join(sr_from_join(n)) == n
        for w in words_up_to(8):
            if classify(w).kind != StratumKind.CONTAINS_CODING:
                assert sr_from_join(sr_to_join(w)) == w

    def test_isomorphism_preserves_equality(self):
        """Should decide u = v exactly when R + Id_omega relates their images."""
        R = build(Intervals((2, 3)))
        P = Presentation(PresentationKind.SR, R)
        J = uniform_join(R, build(IdOmega()))
        words = list(words_up_to(6))
        for s in (0, 3, 12):
            for u in words:
                for v in words:
                    assert sr_decide(P, s, u, v) == J.decide_at(s, sr_to_join(u), sr_to_join(v))

    def test_closure_oracle_agrees(self):
        """Should match a bounded breadth-first closure on words up to length 5."""
        P = sr(Mod(2))
        words = list(words_up_to(5))
        for u in words:
            closure = congruence_closure(P, 10, u, max_length=7)
            for v in words:
                assert (v in closure) == sr_decide(P, 10, u, v), (u, v)

    @pytest.mark.parametrize("spec", SMALL_CEERS, ids=repr)
    def test_closure_oracle_agrees_up_to_length_seven(self, spec):
        """Should match the breadth-first closure on every pair of words of length <= 7."""
        P = sr(spec)
        words = list(words_up_to(7))
        classes = {}
        for u in words:
            if u not in classes:
                closure = congruence_closure(P, 10, u, max_length=7)
                assert not closure.truncated
                for w in closure.words:
                    classes[w] = closure.words
            for v in words:
                assert (v in classes[u]) == sr_decide(P, 10, u, v), (u, v)

    @pytest.mark.parametrize("spec", SMALL_CEERS, ids=repr)
    def test_isomorphism_on_words_up_to_length_eight(self, spec):
        """Should carry S(R) equality to R + Id_omega on all words of length <= 8."""
        P = sr(spec)
        J = uniform_join(P.ceer, build(IdOmega()))
        words = list(words_up_to(8))
        plus = [w for w in words if classify(w).kind == StratumKind.CONTAINS_CODING]
        others = [w for w in words if classify(w).kind != StratumKind.CONTAINS_CODING]
        reps = others + plus[:: len(plus) // 10]
        code = {w: sr_to_join(w) for w in words}
        for s in (0, 4, 12):
            for u in reps:
                for v in reps:
                    assert sr_decide(P, s, u, v) == J.decide_at(s, code[u], code[v]), (s, u, v)
            for w in plus:
                assert code[w] == 1
                assert sr_decide(P, s, w, "aaba")
                assert not sr_decide(P, s, w, "aba")
                assert not sr_decide(P, s, w, "bab")

    @pytest.mark.parametrize("spec", SMALL_CEERS, ids=repr)
    def test_inverse_coding_reduces_the_join(self, spec):
        """Should relate codes n, m <= 60 exactly when their words are equal in S(R)."""
        P = sr(spec)
        J = uniform_join(P.ceer, build(IdOmega()))
        word = [sr_from_join(n) for n in range(61)]
        for s in (12, 40):
            for n in range(61):
                for m in range(61):
                    assert J.decide_at(s, n, m) == sr_decide(P, s, word[n], word[m]), (s, n, m)

    @pytest.mark.parametrize("spec", SMALL_CEERS, ids=repr)
    def test_avoiding_words_are_a_transversal(self, spec):
        """Should keep the avoiding words of length <= 8 pairwise distinct at every stage."""
        P = sr(spec)
        J = uniform_join(P.ceer, build(IdOmega()))
        avoiding = [w for n in range(1, 9) for w in avoiding_words(n)]
        assert len(avoiding) == sum(avoiding_count(n) for n in range(1, 9))
        for s in (0, 12, 100):
            for k, u in enumerate(avoiding):
                for v in avoiding[k + 1:]:
                    assert not sr_decide(P, s, u, v), (s, u, v)
            assert is_transversal_at(J, s, [sr_to_join(w) for w in avoiding])

    def test_length_bound_is_reported(self):
        closure = congruence_closure(sr(Mod(2)), 10, "abbba")
        assert closure.words == frozenset({"abbba", "aba"})
        assert closure.length_bounded
        assert not closure.complete

    def test_contains_coding_words(self):
        assert contains_coding_words(4) == ["aaba", "abaa", "abab", "baba"]


# =============================================================================
# Tests for the finite-class presentation
# =============================================================================


class TestFinCl:
    """Tests for fincl_decide and fincl_class_size."""

    def test_related_exponents(self):
        R = build(Intervals((2, 2)))
        assert related_exponents(R, 10, 1) == [1, 2]
        assert related_exponents(R, 10, 3) == [3, 4]
        assert related_exponents(R, 2, 7) == [7]

    def test_decide(self):
        P = fincl(Intervals((2, 2)))
        assert fincl_decide(P, 10, "aba", "abba") == Decision.EQUAL
        assert fincl_decide(P, 10, "aba", "abbba") == Decision.DISTINCT
        assert fincl_decide(P, 10, "babab", "babbab") == Decision.EQUAL

    def test_truncated_closure_is_unknown(self):
        P = fincl(Intervals((2, 2)))
        with pytest.warns(TruncationWarning):
            assert fincl_decide(P, 10, "aba", "abba", cap=1) == Decision.UNKNOWN

    def test_class_size_matches_the_product(self):
        """Should multiply the class sizes of separated coding factors."""
        P = fincl(Intervals((2, 3)))
        for w, size in [("aba", 2), ("abbab", 2), ("abaaba", 4), ("babbba", 3), ("bbb", 1)]:
            result = fincl_class_size(P, 12, w)
            assert result.size == size
            assert result.predicted == size
            assert not result.truncated

    @pytest.mark.parametrize("sizes", [(2, 2), (3,)])
    def test_product_law_on_generated_words(self, sizes):
        """Should match the product of block sizes on 200 words with separated factors."""
        P = fincl(Intervals(sizes))
        rng = random.Random(sum(sizes))
        for _ in range(200):
            w, exponents = separated_word(rng)
            expected = math.prod(block_size(sizes, i - 1) for i in exponents)
            assert [i for _, i in coding_occurrences(w)] == exponents
            result = fincl_class_size(P, 12, w)
            assert not result.truncated
            assert result.size == expected, w
            assert result.predicted == expected, w

    def test_no_prediction_for_shared_letters(self):
        result = fincl_class_size(fincl(Intervals((2, 2))), 10, "ababa")
        assert result.size == 4
        assert result.predicted is None

    def test_identity_classes_are_singletons(self):
        P = fincl(IdOmega())
        for w in words_up_to(6):
            assert fincl_class_size(P, 10, w).size == 1

    def test_wrong_presentation(self):
        with pytest.raises(CeerLabError):
            fincl_decide(sr(IdN(2)), 10, "aba", "aba")


# =============================================================================
# Tests for the subword-closure quotient
# =============================================================================


class TestSZ:
    def test_decide(self):
        Z = {"bb"}
        assert sz_decide(Z, "abba", "bbb")
        assert not sz_decide(Z, "ab", "ba")
        assert sz_decide(Z, "ab", "ab")
        assert not sz_decide(Z, "abba", "ab")

    def test_rejects_bad_words(self):
        with pytest.raises(WordError):
            sz_decide({"bb"}, "abba", "")
