"""Digit-prefix trie over the lexicon.

Encoders repeatedly ask "which words spell a prefix of the remaining
digits".  The trie answers that in one walk down the digit string,
keeping per-node word lists bucketed by POS tag for the tag-driven
encoders.  Words whose pronunciation encodes no digits are not
indexed; they can never consume input.
"""

from __future__ import annotations

from .corpus import Lexicon

__all__ = ["EncodingIndex", "NoCandidateError"]


class NoCandidateError(Exception):
    """No indexed word spells any prefix of the remaining digits."""


class _Node:
    __slots__ = ("children", "words", "by_pos")

    def __init__(self):
        self.children: dict[str, _Node] = {}
        self.words: list[str] = []
        self.by_pos: dict[str, list[str]] = {}


class EncodingIndex:
    """Prefix lookup over every lexicon word with a nonempty digit string."""

    def __init__(self, lexicon: Lexicon):
        self._root = _Node()
        self.max_word_digits = 0
        # lexicon iterates in sorted word order, so node lists stay sorted
        for entry in lexicon:
            if not entry.digits:
                continue
            node = self._root
            for digit in entry.digits:
                child = node.children.get(digit)
                if child is None:
                    child = node.children[digit] = _Node()
                node = child
            node.words.append(entry.word)
            node.by_pos.setdefault(entry.pos, []).append(entry.word)
            self.max_word_digits = max(self.max_word_digits, len(entry.digits))

    def _walk(self, digits: str):
        """Yield (prefix length, node) for every indexed prefix of digits."""
        node = self._root
        for i, digit in enumerate(digits):
            node = node.children.get(digit)
            if node is None:
                return
            yield i + 1, node

    def prefix_candidates(self, remaining: str, pos: str | None = None) -> list[tuple[str, int]]:
        """All (word, digits consumed) whose digits are a prefix of remaining.

        Results are ordered by consumed length ascending, words
        alphabetical within a length.  With pos given, only words whose
        dominant tag matches are returned.  Empty input is an error;
        an empty result list is not.
        """
        if not remaining:
            raise ValueError("remaining digits must be nonempty")
        out: list[tuple[str, int]] = []
        for length, node in self._walk(remaining):
            words = node.words if pos is None else node.by_pos.get(pos, [])
            out.extend((word, length) for word in words)
        return out

    def max_prefix_candidates(self, remaining: str) -> tuple[int, list[str]]:
        """Words spelling the longest spellable prefix of remaining.

        Returns (length, words).  Raises NoCandidateError when not even
        a one-digit prefix is spellable.
        """
        if not remaining:
            raise ValueError("remaining digits must be nonempty")
        best_length = 0
        best_words: list[str] = []
        for length, node in self._walk(remaining):
            if node.words:
                best_length, best_words = length, node.words
        if best_length == 0:
            raise NoCandidateError(f"no word spells a prefix of {remaining!r}")
        return best_length, list(best_words)

    def exact_candidates(self, digits: str, pos: str | None = None) -> list[str]:
        """Words whose digit string equals digits exactly (alphabetical)."""
        if not digits:
            raise ValueError("digits must be nonempty")
        node = self._root
        for digit in digits:
            node = node.children.get(digit)
            if node is None:
                return []
        words = node.words if pos is None else node.by_pos.get(pos, [])
        return list(words)
