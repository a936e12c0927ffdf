#!/usr/bin/env python3
"""Measure how the digit-count weight shapes sentence encodings.

Encodes random fifty-digit strings with the sentence encoder at
several weight powers, with the argmax n-gram encoder as the
baseline row.  Higher powers should buy denser encodings (more
digits per word, fewer words) at some cost in word commonness.

Usage:
    python3 scripts/density_experiment.py
    python3 scripts/density_experiment.py --inputs 200 --powers 0 2 10
"""

import argparse
from random import Random

from majorsystem.cli import _format_table, _load_resources, build_parser
from majorsystem.encoders import EncoderConfig, encode


def random_inputs(count: int, length: int, seed: int) -> list[str]:
    rng = Random(seed)
    return ["".join(rng.choice("0123456789") for _ in range(length))
            for _ in range(count)]


def run(resources, lexicon, inputs: list[str], config_for) -> list[str]:
    words = sentences = frequency = 0
    digits_total = 0
    for i, digits in enumerate(inputs):
        encoding = encode(digits, resources, config_for(i), Random(i))
        words += encoding.word_count
        sentences += len(encoding.sentences)
        frequency += sum(lexicon[w].frequency for w in encoding.words)
        digits_total += len(digits)
    return [
        f"{digits_total / words:.2f}",
        f"{words / len(inputs):.1f}",
        f"{sentences / len(inputs):.1f}",
        f"{frequency / words:.0f}",
    ]


def main() -> int:
    parser = argparse.ArgumentParser(
        description="Sentence-encoder density across weight powers.")
    parser.add_argument("--inputs", type=int, default=100)
    parser.add_argument("--length", type=int, default=50)
    parser.add_argument("--powers", type=float, nargs="+",
                        default=[0.0, 1.0, 2.0, 5.0, 10.0])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    lexicon, resources = _load_resources(build_parser().parse_args(["stats"]))
    inputs = random_inputs(args.inputs, args.length, args.seed)

    rows = []
    for power in args.powers:
        cells = run(resources, lexicon, inputs,
                    lambda i: EncoderConfig(weight_power=power, seed=i))
        rows.append([f"sentence p={power:g}"] + cells)
    cells = run(resources, lexicon, inputs,
                lambda i: EncoderConfig(encoder_kind="ngram", seed=i))
    rows.append(["ngram argmax"] + cells)

    print(f"{args.inputs} random {args.length}-digit inputs, seed {args.seed}")
    print(_format_table(
        ["encoder", "digits/word", "words", "sentences", "mean freq"], rows))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
