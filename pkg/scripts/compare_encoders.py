#!/usr/bin/env python3
"""Run all six encoders on the same digit strings and tabulate results.

Uses the repository data and cache directories; the first run builds
the caches (about ten seconds).  Defaults to the running example and
the first fifty digits of pi.

Usage:
    python3 scripts/compare_encoders.py
    python3 scripts/compare_encoders.py --seed 3 1234567890
"""

import argparse
from random import Random

from majorsystem.cli import _format_table, _load_resources, build_parser
from majorsystem.encoders import ENCODER_NAMES, EncoderConfig, encode
from majorsystem.verify import check_roundtrip, compute_metrics

PI_50 = "31415926535897932384626433832795028841971693993751"


def compare(digits: str, resources, lexicon, seed: int) -> str:
    rows = []
    for name in ENCODER_NAMES:
        config = EncoderConfig(encoder_kind=name, seed=seed)
        encoding = encode(digits, resources, config, Random(seed))
        metrics = compute_metrics(encoding, lexicon, resources.word_model)
        report = check_roundtrip(encoding, lexicon)
        rows.append([
            name, encoding.text(), str(metrics.word_count),
            f"{metrics.digits_per_word:.2f}",
            f"{metrics.model_score:.1f}",
            "OK" if report.ok else "FAILED",
        ])
    return _format_table(
        ["encoder", "encoding", "words", "digits/word", "log score",
         "round-trip"], rows)


def main() -> int:
    parser = argparse.ArgumentParser(
        description="Compare the six encoders on the same inputs.")
    parser.add_argument("digits", nargs="*", default=["86101521", PI_50],
                        help="digit strings to encode (default: demo pair)")
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    lexicon, resources = _load_resources(build_parser().parse_args(["stats"]))
    for digits in args.digits:
        print(f"input: {digits}  (seed {args.seed})")
        print(compare(digits, resources, lexicon, args.seed))
        print()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
