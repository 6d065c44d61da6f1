"""Model and tokenizer construction for the three supported families.

Two paths:

- ``base_model`` given: load pretrained weights and tokenizer with the
  transformers auto classes (a local directory or an installed checkpoint;
  a checkpoint that cannot be loaded is a clear error, not a crash).
- no ``base_model``: build a reduced-size, randomly initialized variant of
  the family's architecture plus a WordPiece tokenizer whose vocabulary is
  derived from the training corpus. This keeps the full pipeline runnable
  on any offline CPU box; the architecture differs from the full models
  only in size.
"""

from __future__ import annotations

from tokenizers import Tokenizer, normalizers, pre_tokenizers, processors
from tokenizers.models import WordPiece
from transformers import (
    AutoModelForSequenceClassification,
    AutoTokenizer,
    BertConfig,
    BertForSequenceClassification,
    PreTrainedTokenizerFast,
    RobertaConfig,
    RobertaForSequenceClassification,
    XLNetConfig,
    XLNetForSequenceClassification,
)

from .errors import ScorerError

SPECIAL_TOKENS = ("[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]")

# Reduced-variant dimensions: small enough for a CPU smoke run, deep
# enough to exercise the real architecture code paths.
_REDUCED_HIDDEN = 64
_REDUCED_LAYERS = 2
_REDUCED_HEADS = 2
_REDUCED_INTERMEDIATE = 128


def build_corpus_tokenizer(texts: list[str]) -> PreTrainedTokenizerFast:
    """A WordPiece tokenizer over the corpus's own word types.

    The vocabulary is the sorted set of lowercased words (punctuation
    split off) seen in ``texts``; unseen words map to ``[UNK]``. Building
    it is deterministic, so the same corpus always yields the same ids.
    """
    probe = Tokenizer(WordPiece(vocab={"[UNK]": 0}, unk_token="[UNK]"))
    probe.normalizer = normalizers.BertNormalizer(lowercase=True)
    probe.pre_tokenizer = pre_tokenizers.BertPreTokenizer()

    words: set[str] = set()
    for text in texts:
        normalized = probe.normalizer.normalize_str(text)
        words.update(w for w, _ in probe.pre_tokenizer.pre_tokenize_str(normalized))

    vocab = {token: i for i, token in enumerate(SPECIAL_TOKENS)}
    for word in sorted(words):
        if word not in vocab:
            vocab[word] = len(vocab)

    tokenizer = Tokenizer(WordPiece(vocab=vocab, unk_token="[UNK]"))
    tokenizer.normalizer = normalizers.BertNormalizer(lowercase=True)
    tokenizer.pre_tokenizer = pre_tokenizers.BertPreTokenizer()
    tokenizer.post_processor = processors.TemplateProcessing(
        single="[CLS] $A [SEP]",
        pair="[CLS] $A [SEP] $B [SEP]",
        special_tokens=[("[CLS]", vocab["[CLS]"]), ("[SEP]", vocab["[SEP]"])],
    )
    return PreTrainedTokenizerFast(
        tokenizer_object=tokenizer,
        unk_token="[UNK]",
        pad_token="[PAD]",
        cls_token="[CLS]",
        sep_token="[SEP]",
        mask_token="[MASK]",
    )


def build_reduced_model(family: str, vocab_size: int, max_seq_len: int):
    """A small, randomly initialized two-class model of the given family."""
    if family == "bert":
        config = BertConfig(
            vocab_size=vocab_size,
            hidden_size=_REDUCED_HIDDEN,
            num_hidden_layers=_REDUCED_LAYERS,
            num_attention_heads=_REDUCED_HEADS,
            intermediate_size=_REDUCED_INTERMEDIATE,
            max_position_embeddings=max_seq_len + 4,
            num_labels=2,
            pad_token_id=0,
        )
        return BertForSequenceClassification(config)
    if family == "roberta":
        config = RobertaConfig(
            vocab_size=vocab_size,
            hidden_size=_REDUCED_HIDDEN,
            num_hidden_layers=_REDUCED_LAYERS,
            num_attention_heads=_REDUCED_HEADS,
            intermediate_size=_REDUCED_INTERMEDIATE,
            # RoBERTa offsets position ids past the pad index, so leave
            # extra room beyond the sequence length.
            max_position_embeddings=max_seq_len + 8,
            num_labels=2,
            pad_token_id=0,
        )
        return RobertaForSequenceClassification(config)
    if family == "xlnet":
        config = XLNetConfig(
            vocab_size=vocab_size,
            d_model=_REDUCED_HIDDEN,
            n_layer=_REDUCED_LAYERS,
            n_head=_REDUCED_HEADS,
            d_inner=_REDUCED_INTERMEDIATE,
            num_labels=2,
            pad_token_id=0,
        )
        return XLNetForSequenceClassification(config)
    raise ScorerError(f"unknown model family {family!r}")


def load_pretrained(base_model: str):
    """Load a pretrained checkpoint for fine-tuning (tokenizer, model)."""
    try:
        tokenizer = AutoTokenizer.from_pretrained(base_model)
        model = AutoModelForSequenceClassification.from_pretrained(
            base_model, num_labels=2
        )
    except Exception as exc:
        raise ScorerError(
            f"pretrained weights for {base_model!r} could not be loaded: {exc}"
        ) from exc
    return tokenizer, model
