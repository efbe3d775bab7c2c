"""Minimal byte-pair-merge subword tokenizer.

Works over whitespace-pretokenized words; the last symbol of each word
carries an end-of-word marker so decoding recovers spacing exactly. The
base alphabet always covers printable ASCII, so any canonical prompt
roundtrips even with an untrained (merge-free) tokenizer.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable

END_OF_WORD = "</w>"
UNK = "<unk>"

_PRINTABLE = [chr(c) for c in range(32, 127) if chr(c) != " "]


class BpeTokenizer:
    def __init__(self, merges: list[tuple[str, str]] | None = None):
        self.merges: list[tuple[str, str]] = list(merges or [])
        self._rebuild_vocab()

    def _rebuild_vocab(self):
        tokens = [UNK]
        tokens += _PRINTABLE
        tokens += [c + END_OF_WORD for c in _PRINTABLE]
        for a, b in self.merges:
            merged = a + b
            if merged not in tokens:
                tokens.append(merged)
        self.id_to_token = tokens
        self.token_to_id = {t: i for i, t in enumerate(tokens)}
        self._merge_rank = {pair: i for i, pair in enumerate(self.merges)}

    @property
    def size(self) -> int:
        return len(self.id_to_token)

    def surface(self, token_id: int) -> str:
        return self.id_to_token[token_id]

    @staticmethod
    def _word_symbols(word: str) -> list[str]:
        syms = list(word)
        syms[-1] = syms[-1] + END_OF_WORD
        return syms

    def _apply_merges(self, syms: list[str]) -> list[str]:
        while len(syms) > 1:
            pairs = [(self._merge_rank.get((syms[i], syms[i + 1])), i) for i in range(len(syms) - 1)]
            ranked = [(r, i) for r, i in pairs if r is not None]
            if not ranked:
                break
            _, i = min(ranked)
            syms = syms[:i] + [syms[i] + syms[i + 1]] + syms[i + 2 :]
        return syms

    def encode(self, text: str) -> list[int]:
        ids: list[int] = []
        for word in text.split():
            for sym in self._apply_merges(self._word_symbols(word)):
                ids.append(self.token_to_id.get(sym, self.token_to_id[UNK]))
        return ids

    def decode(self, ids: Iterable[int]) -> str:
        text = "".join(self.id_to_token[i] for i in ids)
        return text.replace(END_OF_WORD, " ").rstrip(" ")

    def train(self, corpus: Iterable[str], num_merges: int) -> "BpeTokenizer":
        """Learn up to `num_merges` merge rules by pair frequency (in place)."""
        words = Counter()
        for text in corpus:
            for word in text.split():
                if all(c in self.token_to_id for c in word):
                    words[tuple(self._word_symbols(word))] += 1
        vocab = dict(words)
        for _ in range(num_merges):
            pairs: Counter = Counter()
            for syms, n in vocab.items():
                for i in range(len(syms) - 1):
                    pairs[(syms[i], syms[i + 1])] += n
            if not pairs:
                break
            # Deterministic tie-break on the pair itself.
            (a, b), count = max(pairs.items(), key=lambda kv: (kv[1], kv[0]))
            if count < 2:
                break
            self.merges.append((a, b))
            merged = a + b
            new_vocab = {}
            for syms, n in vocab.items():
                out = []
                i = 0
                while i < len(syms):
                    if i + 1 < len(syms) and syms[i] == a and syms[i + 1] == b:
                        out.append(merged)
                        i += 2
                    else:
                        out.append(syms[i])
                        i += 1
                new_vocab[tuple(out)] = new_vocab.get(tuple(out), 0) + n
            vocab = new_vocab
        self._rebuild_vocab()
        return self

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as f:
            f.write("#version: textlayout-bpe-1\n")
            for a, b in self.merges:
                f.write(f"{a}\t{b}\n")

    @classmethod
    def load(cls, path) -> "BpeTokenizer":
        merges = []
        with open(path, encoding="utf-8") as f:
            for line in f:
                line = line.rstrip("\n")
                if not line or line.startswith("#"):
                    continue
                a, _, b = line.partition("\t")
                merges.append((a, b))
        return cls(merges)
