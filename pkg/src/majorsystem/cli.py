"""Command-line interface: build caches, encode, decode, compare.

Exit codes: 0 success, 1 usage, 2 data or parse problem, 3 input
unencodable (or round-trip failure).  Lexicon and model caches are
keyed by a content hash of the input files and model hyperparameters;
a stale cache is rebuilt with a notice on stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path
from random import Random

from .corpus import (CorpusError, Lexicon, TaggedCorpus, build_lexicon,
                     default_data_dir, load_lexicon, parse_cmudict, parse_tag_map,
                     save_lexicon)
from .encoders import (ENCODER_NAMES, EncoderConfig, EncoderResources, Encoding,
                       UnencodableError, encode)
from .langmodel import (ModelCacheError, NgramModel, PosTrigramModel,
                        extract_templates, load_models, save_models,
                        training_streams)
from .phonetics import UnknownPhonemeError
from .verify import UnknownWordError, check_roundtrip, compute_metrics, decode

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_UNENCODABLE = 3

_LEXICON_FILE = "lexicon.tsv"
_MODELS_FILE = "models.bin"
_META_FILE = "meta.json"


class _Parser(argparse.ArgumentParser):
    """argparse variant whose usage errors exit 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _digit_string(value: str) -> str:
    if not value or not all(ch in "0123456789" for ch in value):
        raise argparse.ArgumentTypeError(f"not a decimal digit string: {value!r}")
    return value


def _notice(message: str) -> None:
    print(message, file=sys.stderr)


def build_parser() -> _Parser:
    data_dir = default_data_dir()
    parser = _Parser(
        prog="majorsystem",
        description="Encode digit strings as memorable word sequences.")
    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--cmudict", type=Path, default=data_dir / "cmudict.dict",
                      help="pronouncing dictionary file")
    data.add_argument("--corpus", type=Path, default=data_dir / "brown",
                      help="tagged corpus file or directory")
    data.add_argument("--tagmap", type=Path, default=data_dir / "brown-universal.map",
                      help="raw-to-universal tag map file")
    data.add_argument("--cache", type=Path,
                      default=data_dir.parent / "var" / "cache",
                      help="cache directory for lexicon and models")
    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--n", type=int, default=3, help="word model order")
    model.add_argument("--alpha", type=float, default=0.1, help="backoff factor")

    sub = parser.add_subparsers(dest="command", required=True)

    cmd = sub.add_parser("build", parents=[data, model],
                         help="build lexicon and model caches")
    cmd.set_defaults(func=cmd_build)

    cmd = sub.add_parser("encode", parents=[data, model],
                         help="encode a digit string as words")
    cmd.add_argument("digits", type=_digit_string)
    cmd.add_argument("--encoder", choices=ENCODER_NAMES, default="sentence")
    cmd.add_argument("--power", type=float, default=10.0,
                     help="digit-count exponent of the sentence encoder")
    cmd.add_argument("--chunk-size", type=int, default=3)
    cmd.add_argument("--mode", choices=("argmax", "sample"), default="argmax",
                     help="n-gram encoder choice rule")
    cmd.add_argument("--seed", type=int, default=None)
    cmd.add_argument("--format", choices=("plain", "tabular", "records"),
                     default="plain")
    cmd.set_defaults(func=cmd_encode)

    cmd = sub.add_parser("decode", parents=[data, model],
                         help="decode words back into digits")
    cmd.add_argument("words", nargs="+")
    cmd.set_defaults(func=cmd_decode)

    cmd = sub.add_parser("compare", parents=[data, model],
                         help="run all encoders on the same digits")
    cmd.add_argument("digits", type=_digit_string)
    cmd.add_argument("--power", type=float, default=10.0)
    cmd.add_argument("--chunk-size", type=int, default=3)
    cmd.add_argument("--mode", choices=("argmax", "sample"), default="argmax")
    cmd.add_argument("--seed", type=int, default=None)
    cmd.add_argument("--format", choices=("plain", "tabular", "records"),
                     default="plain")
    cmd.set_defaults(func=cmd_compare)

    cmd = sub.add_parser("stats", parents=[data, model],
                         help="print corpus, lexicon, and model statistics")
    cmd.set_defaults(func=cmd_stats)
    return parser


def _cache_key(args) -> str:
    """Content hash of the input files and model hyperparameters."""
    digest = hashlib.sha256()
    digest.update(b"majorsystem-cache-v1\0")
    for path in (Path(args.cmudict), Path(args.tagmap)):
        digest.update(path.name.encode())
        digest.update(path.read_bytes())
    corpus = Path(args.corpus)
    files = sorted(p for p in corpus.iterdir() if p.is_file()) if corpus.is_dir() else [corpus]
    for path in files:
        digest.update(path.name.encode())
        digest.update(path.read_bytes())
    digest.update(f"n={args.n} alpha={args.alpha}".encode())
    return digest.hexdigest()


def _build_resources(args, key: str) -> tuple[Lexicon, EncoderResources]:
    pronunciations = parse_cmudict(args.cmudict)
    tag_map = parse_tag_map(args.tagmap)
    corpus = TaggedCorpus.load(args.corpus, tag_map)
    lexicon = build_lexicon(pronunciations, corpus)
    word_sentences, tag_sentences = training_streams(corpus.sentences)
    word_model = NgramModel.train(word_sentences, n=args.n, alpha=args.alpha)
    pos_model = PosTrigramModel.train(tag_sentences, n=3, alpha=args.alpha)
    templates = extract_templates(corpus.sentences)

    cache = Path(args.cache)
    cache.mkdir(parents=True, exist_ok=True)
    save_lexicon(lexicon, cache / _LEXICON_FILE)
    save_models(cache / _MODELS_FILE, word_model, pos_model, templates, key)
    (cache / _META_FILE).write_text(
        json.dumps({"version": 1, "key": key}, sort_keys=True) + "\n",
        encoding="utf-8")
    resources = EncoderResources(lexicon, _index_for(lexicon), word_model,
                                 pos_model, templates)
    return lexicon, resources


def _index_for(lexicon: Lexicon):
    from .index import EncodingIndex
    return EncodingIndex(lexicon)


def _stored_key(cache: Path) -> str | None:
    meta = cache / _META_FILE
    if not meta.is_file():
        return None
    try:
        return json.loads(meta.read_text(encoding="utf-8")).get("key")
    except (OSError, json.JSONDecodeError):
        return None


def _load_resources(args, force_build: bool = False) -> tuple[Lexicon, EncoderResources]:
    cache = Path(args.cache)
    key = _cache_key(args)
    if not force_build:
        stored = _stored_key(cache)
        if stored == key:
            try:
                lexicon = load_lexicon(cache / _LEXICON_FILE)
                word_model, pos_model, templates = load_models(
                    cache / _MODELS_FILE, key)
                return lexicon, EncoderResources(
                    lexicon, _index_for(lexicon), word_model, pos_model, templates)
            except (CorpusError, ModelCacheError):
                _notice("cache unreadable, rebuilding")
        elif stored is None:
            _notice(f"building caches in {cache}")
        else:
            _notice("cache stale (inputs changed), rebuilding")
    return _build_resources(args, key)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = Random().randrange(2 ** 32)
    _notice(f"seed: {seed}")
    return seed


def _encoder_config(args, encoder: str, seed: int) -> EncoderConfig:
    return EncoderConfig(
        encoder_kind=encoder, n=args.n, alpha=args.alpha,
        weight_power=args.power, ngram_mode=args.mode, seed=seed,
        chunk_size=args.chunk_size)


def _format_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _print_stats(lexicon: Lexicon, resources: EncoderResources) -> None:
    stats = lexicon.stats
    print(f"corpus tokens:           {stats.corpus_tokens}")
    print(f"corpus types:            {stats.corpus_types}")
    print(f"corpus types lowercased: {stats.corpus_types_lowercased}")
    print(f"corpus sentences:        {stats.corpus_sentences}")
    print(f"dictionary words:        {stats.dictionary_words}")
    print(f"lexicon entries:         {len(lexicon)}")
    print(f"templates:               {len(resources.templates)}")
    print(f"word model: n={resources.word_model.n} "
          f"alpha={resources.word_model.alpha} "
          f"tokens={resources.word_model.total_tokens}")
    print(f"pos model:  n={resources.pos_model.n} "
          f"alpha={resources.pos_model.alpha}")


def cmd_build(args) -> int:
    lexicon, resources = _load_resources(args, force_build=True)
    _print_stats(lexicon, resources)
    print(f"cache: {args.cache}")
    return EXIT_OK


def cmd_stats(args) -> int:
    lexicon, resources = _load_resources(args)
    _print_stats(lexicon, resources)
    return EXIT_OK


def _print_encoding(encoding: Encoding, lexicon: Lexicon,
                    resources: EncoderResources, fmt: str) -> bool:
    """Print one encoding in the chosen format; returns round-trip ok."""
    report = check_roundtrip(encoding, lexicon)
    if fmt == "records":
        for record in encoding.to_records():
            print(json.dumps(record, sort_keys=True))
        if not report.ok:
            _notice(f"round-trip FAILED: {report.reason}")
        return report.ok
    metrics = compute_metrics(encoding, lexicon, resources.word_model)
    if fmt == "tabular":
        rows = []
        for sentence, spans, tags in zip(encoding.sentences, encoding.spans,
                                         encoding.tags):
            for word, span, tag in zip(sentence, spans, tags):
                rows.append([word, span, tag or "-"])
        print(_format_table(["word", "span", "tag"], rows))
    else:
        print(encoding.text())
        print("words: " + " ".join(encoding.words))
        print("spans: " + " ".join(encoding.word_spans))
    print(f"words={metrics.word_count} sentences={metrics.sentence_count} "
          f"digits/word={metrics.digits_per_word:.2f} "
          f"mean-freq={metrics.mean_word_frequency:.1f} "
          f"model-score={metrics.model_score:.2f}")
    if report.ok:
        print("round-trip: OK")
    else:
        print(f"round-trip: FAILED at {report.position}: {report.reason}")
    return report.ok


def cmd_encode(args) -> int:
    lexicon, resources = _load_resources(args)
    seed = _resolve_seed(args)
    config = _encoder_config(args, args.encoder, seed)
    encoding = encode(args.digits, resources, config, Random(seed))
    ok = _print_encoding(encoding, lexicon, resources, args.format)
    return EXIT_OK if ok else EXIT_UNENCODABLE


def cmd_decode(args) -> int:
    cache = Path(args.cache)
    lexicon = None
    if _stored_key(cache) == _cache_key(args):
        try:
            lexicon = load_lexicon(cache / _LEXICON_FILE)
        except CorpusError:
            lexicon = None
    if lexicon is None:
        lexicon, _ = _load_resources(args)
    print(decode(args.words, lexicon))
    return EXIT_OK


def cmd_compare(args) -> int:
    lexicon, resources = _load_resources(args)
    seed = _resolve_seed(args)
    rows = []
    encodings: list[Encoding] = []
    any_failed = False
    for name in ENCODER_NAMES:
        config = _encoder_config(args, name, seed)
        try:
            encoding = encode(args.digits, resources, config, Random(seed))
        except UnencodableError as exc:
            rows.append([name, f"unencodable: {exc}", "-", "-", "FAILED"])
            any_failed = True
            continue
        encodings.append(encoding)
        report = check_roundtrip(encoding, lexicon)
        metrics = compute_metrics(encoding, lexicon, resources.word_model)
        any_failed = any_failed or not report.ok
        rows.append([
            name, encoding.text(), str(metrics.word_count),
            f"{metrics.digits_per_word:.2f}",
            "OK" if report.ok else f"FAILED: {report.reason}",
        ])
    if args.format == "records":
        for encoding in encodings:
            for record in encoding.to_records():
                print(json.dumps(record, sort_keys=True))
    else:
        print(_format_table(
            ["encoder", "encoding", "words", "digits/word", "round-trip"], rows))
    return EXIT_UNENCODABLE if any_failed else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnencodableError as exc:
        _notice(f"unencodable: {exc}")
        return EXIT_UNENCODABLE
    except (CorpusError, UnknownPhonemeError, UnknownWordError) as exc:
        _notice(f"error: {exc}")
        return EXIT_DATA
    except OSError as exc:
        _notice(f"error: {exc}")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
