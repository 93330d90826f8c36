"""The two finite colorings of nonempty factors.

``sturmian3``: 0 for non-prefixes, 1 for prefixes rich in a, 2 for prefixes
rich in b.  ``epi``: 0 for non-prefixes, i for prefixes ending in the i-th
letter, letters ordered by first appearance in the word.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NotAFactorError, PreconditionError, RichnessError
from .factors import factor_table, richness
from .words import WordSpec, as_spec, prefix

STURMIAN_3 = "sturmian3"
EPISTURMIAN_K1 = "epi"
SCHEMES = (STURMIAN_3, EPISTURMIAN_K1)


@dataclass(frozen=True)
class Coloring:
    scheme: str
    spec: WordSpec
    order: tuple[str, ...]
    forced: bool = False

    @property
    def n_colors(self) -> int:
        return 3 if self.scheme == STURMIAN_3 else len(self.order) + 1

    def describe(self) -> dict:
        return {"scheme": self.scheme, "spec": self.spec.render(),
                "order": list(self.order), "forced": self.forced}


def letter_order(spec: WordSpec) -> tuple[str, ...]:
    """Alphabet letters in order of first appearance."""
    wanted = set(spec.alphabet)
    n = 64
    while True:
        w = prefix(spec, n)
        seen = list(dict.fromkeys(w))
        if set(seen) >= wanted:
            return tuple(c for c in seen if c in wanted)
        n *= 4


def make_coloring(spec: WordSpec | str, scheme: str = STURMIAN_3, forced: bool = False) -> Coloring:
    """Bind a coloring scheme to a word.

    ``forced=True`` skips the scheme's precondition; a ``sturmian3`` prefix
    that is rich in no letter is then colored by its last letter.
    """
    spec = as_spec(spec)
    if scheme == STURMIAN_3:
        if not forced and not spec.sturmian:
            raise PreconditionError(f"sturmian3 needs a Sturmian word, got {spec}")
        if set(spec.alphabet) - {"a", "b"}:
            raise PreconditionError("sturmian3 needs a word over {a, b}")
        return Coloring(scheme, spec, ("a", "b"), forced)
    if scheme == EPISTURMIAN_K1:
        if not forced and not spec.standard:
            raise PreconditionError(f"epi needs a standard episturmian word, got {spec}")
        return Coloring(scheme, spec, letter_order(spec), forced)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")


@dataclass(frozen=True)
class ColorVerdict:
    factor: str
    color: int
    is_prefix: bool
    letter: str | None = None
    witness: str | None = None
    rule: str = ""

    def __str__(self):
        if not self.is_prefix:
            return f"{self.color} (factor, not a prefix)"
        if self.rule == "richness":
            return f"{self.color} (prefix, rich in {self.letter}, witness {self.witness})"
        if self.rule == "forced-last-letter":
            return f"{self.color} (prefix, rich in no letter; forced coloring uses last letter {self.letter})"
        return f"{self.color} (prefix, ends in {self.letter})"

    def to_json(self):
        return {"factor": self.factor, "color": self.color, "prefix": self.is_prefix,
                "letter": self.letter, "witness": self.witness, "rule": self.rule}


def explain_color(coloring: Coloring, v: str) -> ColorVerdict:
    if not v:
        raise PreconditionError("colors are defined for nonempty factors")
    spec = coloring.spec
    table = factor_table(spec, len(v))
    if v not in table:
        raise NotAFactorError(f"{v!r} is not a factor of {spec}")
    if prefix(spec, len(v)) != v:
        return ColorVerdict(v, 0, False, rule="non-prefix")
    if coloring.scheme == EPISTURMIAN_K1:
        return ColorVerdict(v, 1 + coloring.order.index(v[-1]), True, v[-1], rule="final-letter")
    try:
        verdict = richness(spec, v)
    except RichnessError:
        if not coloring.forced:
            raise
        return ColorVerdict(v, 1 + coloring.order.index(v[-1]), True, v[-1],
                            rule="forced-last-letter")
    return ColorVerdict(v, 1 + coloring.order.index(verdict.letter), True,
                        verdict.letter, verdict.witness, rule="richness")


def color(coloring: Coloring, v: str) -> int:
    return explain_color(coloring, v).color


def prefix_colors(coloring: Coloring, horizon: int, word: str | None = None,
                  z: np.ndarray | None = None) -> np.ndarray:
    """Colors of all prefixes of length 1..horizon-1, indexed by length.

    Entry 0 is unused and entries that cannot be decided from the first
    ``horizon`` letters are -1.  For ``sturmian3`` the windows of length l
    keep the prefix's letter counts until the first mismatch between the word
    and its shift by l, at position z[l]; the window just past it differs by
    one, so a balanced word's prefix of length l is rich in the letter at
    position z[l].
    """
    if word is None:
        word = prefix(coloring.spec, horizon)
    codes = np.frombuffer(word.encode("ascii"), np.uint8) - 97
    out = np.full(horizon, -1, np.int8)
    lengths = np.arange(1, horizon)
    if coloring.scheme == EPISTURMIAN_K1:
        rank = np.zeros(26, np.int8)
        for i, c in enumerate(coloring.order):
            rank[ord(c) - 97] = i + 1
        out[1:] = rank[codes[:-1]]
        return out
    if z is None:
        z = kernels.z_function(codes)
    lce = z[1:horizon]
    known = lengths + lce < horizon
    rich = codes[np.minimum(lce, horizon - 1)]  # 0 for a, 1 for b
    out[1:] = np.where(known, rich + 1, -1)
    if coloring.forced:
        last = codes[:-1]
        out[1:] = np.where(known, out[1:], last + 1)
    return out


def color_class_prefixes(coloring: Coloring, target: int, max_len: int) -> list[int]:
    """All lengths l <= max_len whose prefix has color ``target``, ascending."""
    if not 0 <= target < coloring.n_colors:
        raise ValueError(f"color {target} out of range for {coloring.scheme}")
    if target == 0 or max_len < 1:
        return []
    horizon = max(2 * max_len + 2, 64)
    while True:
        colors = prefix_colors(coloring, horizon)
        if (colors[1 : max_len + 1] >= 0).all():
            return [int(l) for l in np.flatnonzero(colors[: max_len + 1] == target)]
        horizon *= 2
