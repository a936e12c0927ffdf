"""Encode digit strings as memorable word sequences.

The major system maps digits to consonant sounds, so any number can
be spelled as words whose pronunciations carry exactly those sounds
in order.  This package builds an encodable lexicon from a
pronouncing dictionary and a tagged corpus, offers six encoders of
varying fluency, and decodes any encoding back to its digits.
"""

from .corpus import (Lexicon, LexiconEntry, LexiconStats, TaggedCorpus,
                     build_lexicon, load_lexicon, parse_cmudict, parse_tag_map,
                     save_lexicon)
from .encoders import (ENCODER_NAMES, EncoderConfig, EncoderResources, Encoding,
                       UnencodableChunkError, UnencodableError, encode,
                       encode_chunk, encode_ngram, encode_pos, encode_random,
                       encode_sentence, encode_unigram, post_process)
from .index import EncodingIndex, NoCandidateError
from .langmodel import (NgramModel, PosTrigramModel, SentenceTemplate,
                        TemplateStore, extract_templates, training_streams)
from .phonetics import (MAJOR_MAP, NON_ENCODING, UnknownPhonemeError,
                        phoneme_to_digit, pronunciation_to_digits, strip_stress)
from .verify import (Metrics, RoundtripReport, UnknownWordError, check_roundtrip,
                     compute_metrics, decode)

__version__ = "0.1.0"
