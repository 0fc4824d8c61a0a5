#!/usr/bin/env python3
"""Build tokenizer fixtures and frozen reference values with the Hugging Face
`tokenizers` library, which serves as the independent reference BPE.

Outputs (under crates/core/data/):
  tokenizers/toy_bpe_1000.json      byte-level BPE, 1000 merges, trained on the mini-corpus
  tokenizers/toy_bpe_1000.tokens    external dump of the same model over the mini-corpus
  tokenizers/evler_char_bpe.json    char-level BPE trained on "evlerimizden evler ev"
  tokenizers/evlerimizden.json      byte-level model segmenting ev|ler|imiz|den
  tokenizers/worked_example.json    byte-level model emitting the seven worked-example tokens
  fixtures/reference_values.json    counts produced by the reference tools
"""
import json
import os
import unicodedata

from tokenizers import Tokenizer, models, pre_tokenizers, decoders, trainers

ROOT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")
CORPUS = os.path.join(ROOT, "corpus", "mini.jsonl")


def corpus_texts():
    out = []
    with open(CORPUS, encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                continue
            rec = json.loads(line)
            parts = [unicodedata.normalize("NFC", rec["question"])]
            parts += [unicodedata.normalize("NFC", c) for c in rec.get("choices", [])]
            out.append("\n".join(parts))
    return out


def byte_level_tokenizer(model):
    tok = Tokenizer(model)
    tok.pre_tokenizer = pre_tokenizers.ByteLevel(add_prefix_space=False, use_regex=True)
    tok.decoder = decoders.ByteLevel()
    return tok


def write_json(path, obj):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, ensure_ascii=False, indent=1)
        f.write("\n")


def chained_merges(pieces):
    """Merges that assemble each target piece left to right, in the byte-level alphabet."""
    bl = pre_tokenizers.ByteLevel(add_prefix_space=False, use_regex=False)
    merges = []
    for piece in pieces:
        mapped = bl.pre_tokenize_str(piece)[0][0]
        acc = mapped[0]
        for ch in mapped[1:]:
            if (acc, ch) not in merges:
                merges.append((acc, ch))
            acc += ch
    return merges


def handmade_model(pieces, path, text, expected):
    alphabet = pre_tokenizers.ByteLevel.alphabet()
    vocab = {ch: i for i, ch in enumerate(sorted(alphabet))}
    merges = chained_merges(pieces)
    for a, b in merges:
        if a + b not in vocab:
            vocab[a + b] = len(vocab)
    tok = byte_level_tokenizer(models.BPE(vocab=vocab, merges=merges))
    enc = tok.encode(text)
    decoded = [bytes_decode(t) for t in enc.tokens]
    assert decoded == expected, (decoded, expected)
    tok.save(path)
    return len(vocab), enc.tokens


BYTE_DECODER = None


def bytes_decode(token):
    global BYTE_DECODER
    if BYTE_DECODER is None:
        bs = list(range(ord("!"), ord("~") + 1)) + list(range(ord("¡"), ord("¬") + 1)) + list(range(ord("®"), ord("ÿ") + 1))
        cs = bs[:]
        n = 0
        for b in range(256):
            if b not in bs:
                bs.append(b)
                cs.append(256 + n)
                n += 1
        BYTE_DECODER = {chr(c): b for b, c in zip(bs, cs)}
    return bytes(BYTE_DECODER[c] for c in token).decode("utf-8")


def main():
    texts = corpus_texts()
    ref = {}
    ref["corpus"] = {
        "record_count": len(texts),
        "char_count": sum(len(t) for t in texts),
        "word_count": sum(len(t.split()) for t in texts),
        "bytes": os.path.getsize(CORPUS),
    }

    # 1000-merge byte-level model over the mini-corpus.
    tok = byte_level_tokenizer(models.BPE())
    trainer = trainers.BpeTrainer(
        vocab_size=256 + 1000,
        initial_alphabet=pre_tokenizers.ByteLevel.alphabet(),
        special_tokens=[],
        show_progress=False,
    )
    tok.train_from_iterator(texts, trainer)
    path = os.path.join(ROOT, "tokenizers", "toy_bpe_1000.json")
    tok.save(path)
    saved = json.load(open(path, encoding="utf-8"))
    n_merges = len(saved["model"]["merges"])
    encs = [tok.encode(t) for t in texts]
    per_record = [len(e.ids) for e in encs]
    unique_ids = sorted({i for e in encs for i in e.ids})
    ref["toy_bpe_1000"] = {
        "vocab_size": tok.get_vocab_size(),
        "merges": n_merges,
        "total_tokens": sum(per_record),
        "per_record": per_record,
        "unique_tokens": len(unique_ids),
        "first_record_ids": encs[0].ids,
        "second_record_ids": encs[1].ids,
    }
    dump = os.path.join(ROOT, "tokenizers", "toy_bpe_1000.tokens")
    with open(dump, "w", encoding="utf-8") as f:
        f.write(f"toy-bpe-1000 {tok.get_vocab_size()} marker=byte-level\n")
        for e in encs:
            for t in e.tokens:
                f.write(t + "\n")

    # 100-token char-level model on the motivating word family.
    ctok = Tokenizer(models.BPE())
    ctok.pre_tokenizer = pre_tokenizers.WhitespaceSplit()
    ctrainer = trainers.BpeTrainer(vocab_size=100, special_tokens=[], show_progress=False)
    ctok.train_from_iterator(["evlerimizden evler ev"], ctrainer)
    cpath = os.path.join(ROOT, "tokenizers", "evler_char_bpe.json")
    ctok.save(cpath)
    ref["evler_char_bpe"] = {
        "vocab_size": ctok.get_vocab_size(),
        "encode_evlerimizden": ctok.encode("evlerimizden").tokens,
        "encode_evlerde": ctok.encode("evlerde").tokens if all(
            c in ctok.get_vocab() for c in "evlerde") else None,
    }

    # Segments ev|ler|imiz|den.
    n, toks = handmade_model(
        ["ev", "ler", "imiz", "den"],
        os.path.join(ROOT, "tokenizers", "evlerimizden.json"),
        "evlerimizden",
        ["ev", "ler", "imiz", "den"],
    )
    ref["evlerimizden"] = {"vocab_size": n, "tokens": toks}

    # Worked example: seven unique surfaces over the sentence.
    sentence = "Çocuklar bahçede oynayacak ve bahçede gülecek"
    n, toks = handmade_model(
        ["Çocuklar", " bahçe", "de", " oynayacak", " ve", " gül", "ecek"],
        os.path.join(ROOT, "tokenizers", "worked_example.json"),
        sentence,
        ["Çocuklar", " bahçe", "de", " oynayacak", " ve", " bahçe", "de", " gül", "ecek"],
    )
    ref["worked_example"] = {"vocab_size": n, "tokens": toks}

    write_json(os.path.join(ROOT, "fixtures", "reference_values.json"), ref)
    print(json.dumps({k: (v if k != "toy_bpe_1000" else {kk: vv for kk, vv in v.items() if "ids" not in kk and kk != "per_record"}) for k, v in ref.items()}, ensure_ascii=False, indent=1))


if __name__ == "__main__":
    main()
