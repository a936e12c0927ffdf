"""Major-system mapping from Arpabet phonemes to digits.

The major system assigns each digit to a family of consonant sounds:

    0 S Z        5 L
    1 T D TH DH  6 CH JH SH ZH
    2 N          7 K G
    3 M          8 F V
    4 R          9 P B

Vowels, NG, and the semivowels W, Y, HH carry no digit, so they are
free filler when spelling a digit string as words.  ER counts as a
vowel.  The mapping is over sounds, not letters, so it is applied to
Arpabet pronunciations rather than spellings.
"""

from __future__ import annotations

from collections.abc import Iterable

__all__ = [
    "ARPABET",
    "MAJOR_MAP",
    "NON_ENCODING",
    "VOWELS",
    "UnknownPhonemeError",
    "phoneme_to_digit",
    "pronunciation_to_digits",
    "strip_stress",
]

# digit -> consonant family, the definition everything else derives from
_DIGIT_FAMILIES = {
    "0": ("S", "Z"),
    "1": ("T", "D", "TH", "DH"),
    "2": ("N",),
    "3": ("M",),
    "4": ("R",),
    "5": ("L",),
    "6": ("CH", "JH", "SH", "ZH"),
    "7": ("K", "G"),
    "8": ("F", "V"),
    "9": ("P", "B"),
}

MAJOR_MAP: dict[str, str] = {
    phoneme: digit for digit, family in _DIGIT_FAMILIES.items() for phoneme in family
}

VOWELS: frozenset[str] = frozenset(
    ["AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY",
     "IH", "IY", "OW", "OY", "UH", "UW"]
)

# NG has no digit of its own, and W/Y/HH pattern with the vowels
NON_ENCODING: frozenset[str] = VOWELS | frozenset(["NG", "W", "Y", "HH"])

# the full 39-phoneme Arpabet inventory used by the CMU dictionary
ARPABET: frozenset[str] = frozenset(MAJOR_MAP) | NON_ENCODING


class UnknownPhonemeError(ValueError):
    """Raised for a symbol outside the Arpabet phoneme inventory."""


def strip_stress(token: str) -> str:
    """Normalize a dictionary phone to its bare phoneme symbol.

    Uppercases and removes a trailing stress marker (0, 1, or 2), so
    "AE1" -> "AE" and "t" -> "T".  Does not validate the result.
    """
    token = token.upper()
    if token and token[-1] in "012":
        return token[:-1]
    return token


def phoneme_to_digit(symbol: str) -> str | None:
    """Return the digit for a phoneme, or None for non-encoding ones.

    The symbol must be a bare phoneme (no stress marker).  Anything
    outside the Arpabet inventory raises UnknownPhonemeError.
    """
    digit = MAJOR_MAP.get(symbol)
    if digit is not None:
        return digit
    if symbol in NON_ENCODING:
        return None
    raise UnknownPhonemeError(f"unknown phoneme: {symbol!r}")


def pronunciation_to_digits(phonemes: Iterable[str]) -> str:
    """Spell a pronunciation as its digit string.

    Concatenates the digits of the encoding consonants in order and
    skips non-encoding phonemes.  An empty pronunciation gives "".
    """
    digits = []
    for symbol in phonemes:
        digit = phoneme_to_digit(symbol)
        if digit is not None:
            digits.append(digit)
    return "".join(digits)
