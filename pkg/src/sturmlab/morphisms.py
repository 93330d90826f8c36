"""The elementary morphisms L_x and R_x and decoding of their images."""

from __future__ import annotations

from dataclasses import dataclass, field
import re

import numpy as np

from . import kernels
from .errors import NotDecodableError


def to_codes(word: str) -> np.ndarray:
    return np.frombuffer(word.encode("ascii"), dtype=np.uint8) - 97


def from_codes(codes: np.ndarray) -> str:
    return (np.asarray(codes, dtype=np.uint8) + 97).tobytes().decode("ascii")


@dataclass(frozen=True)
class Morphism:
    """``L_x``: x -> x, y -> xy; ``R_x``: x -> x, y -> yx (for every y != x)."""

    kind: str
    letter: str
    alphabet: tuple[str, ...] = ("a", "b")
    _images: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in ("L", "R"):
            raise ValueError(f"morphism kind must be L or R, not {self.kind!r}")
        object.__setattr__(self, "alphabet", tuple(sorted(set(self.alphabet) | {self.letter})))
        x = self.letter
        if self.kind == "L":
            images = {y: x if y == x else x + y for y in self.alphabet}
        else:
            images = {y: x if y == x else y + x for y in self.alphabet}
        object.__setattr__(self, "_images", images)

    @classmethod
    def parse(cls, text: str, alphabet=("a", "b")) -> Morphism:
        m = re.fullmatch(r"([LR])_([a-z])", text.strip())
        if not m:
            raise ValueError(f"not a morphism name: {text!r} (expected e.g. L_a, R_b)")
        return cls(m.group(1), m.group(2), tuple(alphabet))

    def __str__(self):
        return f"{self.kind}_{self.letter}"

    def image(self, letter: str) -> str:
        try:
            return self._images[letter]
        except KeyError:
            # Letters outside the declared alphabet still follow the rule.
            x = self.letter
            return x + letter if self.kind == "L" else letter + x

    def __call__(self, word: str) -> str:
        return apply_morphism(self, word)


def apply_morphism(m: Morphism, word: str) -> str:
    return "".join(m.image(c) for c in word)


@dataclass(frozen=True)
class DecodeCertificate:
    """Token boundaries (cut points, starting at 0), the decoded word and the unconsumed tail."""

    boundaries: tuple[int, ...]
    decoded: str
    tail: str
    sync: str

    def to_json(self):
        return {"boundaries": list(self.boundaries), "decoded": self.decoded,
                "tail": self.tail, "sync": self.sync}


def desubstitute(word: str, m: Morphism, final: bool = False) -> tuple[str, DecodeCertificate]:
    """Decode ``word`` over the code of ``m``.

    ``word`` is read as a prefix of a longer (possibly infinite) image unless
    ``final`` is set.  For L_x a trailing lone x may still grow into a
    two-letter codeword, and for R_x a trailing non-x letter still waits for
    its x; either is returned as an incomplete tail of length 1.  With
    ``final=True`` the end of input closes the last token instead.
    """
    codes = to_codes(word)
    x = ord(m.letter) - 97
    kind = 0 if m.kind == "L" else 1
    out, starts, consumed, error = kernels.decode(codes, x, kind, bool(final))
    if error >= 0:
        raise NotDecodableError(word, m, int(error))
    decoded = from_codes(out)
    boundaries = tuple(int(s) for s in starts) + (int(consumed),)
    tail = word[consumed:]
    if not decoded:
        sync = "empty"
    elif m.kind == "L":
        if consumed < len(word):
            sync = f"final token closed by the pair ({word[consumed - 1]}, {m.letter}) at {consumed - 1}"
        elif word[-1] != m.letter:
            sync = "final token is a complete two-letter codeword"
        else:
            sync = "final token closed by end of input"
    else:
        sync = f"final token ends in {m.letter} at {consumed - 1}; every pair ({m.letter}, c) synchronizes"
    return decoded, DecodeCertificate(boundaries, decoded, tail, sync)

