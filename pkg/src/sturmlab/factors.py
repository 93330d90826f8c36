"""Factor sets, balance, special factors, richness and letter frequencies."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from . import kernels
from .contfrac import ContinuedFraction
from .errors import (NotAFactorError, NotSturmianError, PreconditionError,
                     ResourceBoundError, RichnessError)
from .reports import CheckReport
from .words import WordSpec, as_spec, max_prefix, prefix


@dataclass(frozen=True)
class FactorTable:
    """All distinct factors of length ``m`` of an infinite word.

    ``certificate`` is ``"sturmian-complexity"`` when exactly m+1 factors were
    found for a spec expected to be Sturmian, and ``"saturated-heuristic"``
    when the count merely stopped growing across a doubling of the source.
    """

    spec: str
    m: int
    alphabet: tuple[str, ...]
    factors: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]
    source_length: int
    certificate: str
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {f: i for i, f in enumerate(self.factors)})

    @property
    def certified(self) -> bool:
        return self.certificate == "sturmian-complexity"

    def __len__(self):
        return len(self.factors)

    def __contains__(self, word):
        return word in self._index

    def __iter__(self):
        return iter(self.factors)

    def count_vector(self, word: str) -> tuple[int, ...]:
        return self.counts[self._index[word]]

    def abelian_vectors(self) -> set[tuple[int, ...]]:
        return set(self.counts)

    def to_json(self):
        return {"spec": self.spec, "m": self.m, "factors": list(self.factors),
                "counts": [list(c) for c in self.counts],
                "source_length": self.source_length, "certificate": self.certificate}


def factor_table(spec: WordSpec | str, m: int, mode: str = "auto",
                 limit: int | None = None) -> FactorTable:
    """Collect the length-``m`` factors from growing prefixes until certified.

    ``mode`` selects the certificate: ``"sturmian"`` (complexity m+1),
    ``"heuristic"`` (count stable across a doubling) or ``"auto"``, which
    uses the Sturmian certificate exactly for specs expected to be Sturmian.
    """
    if m < 0:
        raise ValueError("factor length must be nonnegative")
    if mode not in ("auto", "sturmian", "heuristic"):
        raise ValueError(f"unknown mode {mode!r}")
    return _factor_table(as_spec(spec), m, mode, limit or max_prefix())


@lru_cache(maxsize=8192)
def _factor_table(spec, m, mode, limit):
    sturmian = mode == "sturmian" or (mode == "auto" and spec.sturmian)
    alphabet = spec.alphabet
    n = max(4 * m + 16, 64)
    previous = -1
    while True:
        n = min(n, limit)
        w = prefix(spec, n, limit)
        found = sorted({w[i : i + m] for i in range(n - m + 1)})
        certificate = None
        if sturmian:
            if len(found) > m + 1:
                raise NotSturmianError(f"{spec} has {len(found)} > {m + 1} factors of length {m}")
            if len(found) == m + 1:
                certificate = "sturmian-complexity"
        elif len(found) == previous:
            certificate = "saturated-heuristic"
        if certificate:
            counts = tuple(tuple(f.count(c) for c in alphabet) for f in found)
            table = FactorTable(spec.render(), m, alphabet, tuple(found), counts, n, certificate)
            if sturmian and m >= 1:
                vectors = sorted(table.abelian_vectors())
                if len(vectors) != 2 or any(abs(x - y) != 1 for x, y in zip(*vectors)):
                    raise NotSturmianError(f"{spec}: length-{m} factors are not balanced")
            return table
        if n >= limit:
            raise ResourceBoundError(f"{spec}: length-{m} factor table not certified "
                                     f"within {limit} letters")
        previous = len(found)
        n *= 2


class BalanceResult(NamedTuple):
    balanced: bool
    witness: tuple[str, str] | None

    def __bool__(self):
        return self.balanced


def is_balanced(word: str) -> BalanceResult:
    """Balance over {a, b}; on failure the witness pair differs by >= 2 in its a-count."""
    if set(word) - {"a", "b"}:
        raise PreconditionError("balance is defined here for words over {a, b}")
    n = len(word)
    if n < 2:
        return BalanceResult(True, None)
    indicator = (np.frombuffer(word.encode("ascii"), np.uint8) == ord("a")).astype(np.int64)
    lo, hi, arg_lo, arg_hi = kernels.window_extrema(indicator, n)
    bad = np.flatnonzero(hi - lo > 1)
    if bad.size == 0:
        return BalanceResult(True, None)
    length = int(bad[0])
    i, j = int(arg_hi[length]), int(arg_lo[length])
    return BalanceResult(False, (word[i : i + length], word[j : j + length]))


def special_factors(spec: WordSpec | str, m: int, side: str = "right") -> list[str]:
    """Length-``m`` factors extendable by two distinct letters on ``side``."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    table = factor_table(spec, m + 1)
    extensions = defaultdict(set)
    for f in table:
        if side == "right":
            extensions[f[:-1]].add(f[-1])
        else:
            extensions[f[1:]].add(f[0])
    return sorted(u for u, letters in extensions.items() if len(letters) >= 2)


@dataclass(frozen=True)
class RichnessVerdict:
    factor: str
    letter: str
    witness: str

    def to_json(self):
        return {"factor": self.factor, "letter": self.letter, "witness": self.witness}


def richness(spec: WordSpec | str, word: str) -> RichnessVerdict:
    """The unique letter z such that some factor of equal length has fewer z's."""
    spec = as_spec(spec)
    if not word:
        raise PreconditionError("richness is defined for nonempty factors")
    if len(spec.alphabet) != 2:
        raise PreconditionError("richness is defined for two-letter words")
    table = factor_table(spec, len(word))
    if word not in table:
        raise NotAFactorError(f"{word!r} is not a factor of {spec}")
    verdict = _richness_from_table(table, word)
    if verdict is None:
        raise RichnessError(f"{word!r} is rich in no letter or in both letters of {spec}")
    return verdict


def _richness_from_table(table: FactorTable, word: str) -> RichnessVerdict | None:
    mine = table.count_vector(word)
    qualifying = []
    for pos, letter in enumerate(table.alphabet):
        low = min(c[pos] for c in table.counts)
        if mine[pos] > low:
            witness = min(f for f, c in zip(table.factors, table.counts) if c[pos] == low)
            qualifying.append(RichnessVerdict(word, letter, witness))
    return qualifying[0] if len(qualifying) == 1 else None


# --------------------------------------------------------------------------
# Frequencies


@dataclass(frozen=True)
class Frequency:
    """Frequency of ``letter``: exact as a continued fraction, or an empirical estimate."""

    letter: str
    exact: bool
    lower: Fraction
    upper: Fraction
    cf: ContinuedFraction | None = None

    @property
    def value(self) -> float:
        return float(self.cf) if self.cf is not None else float(self.lower)

    def compare(self, x: Fraction) -> int:
        if self.cf is None:
            raise PreconditionError("exact comparison needs an exact frequency")
        return _compare(self.cf, Fraction(x))

    def to_json(self):
        return {"letter": self.letter, "exact": self.exact,
                "cf": self.cf.render() if self.cf else None,
                "lower": str(self.lower), "upper": str(self.upper), "value": self.value}


@lru_cache(maxsize=1 << 16)
def _compare(cf: ContinuedFraction, x: Fraction) -> int:
    return cf.compare(x)


def slope_frequency(spec: WordSpec | str, letter: str = "b",
                    precision: Fraction = Fraction(1, 10**9),
                    sample: int = 10**5) -> Frequency:
    """Frequency of ``letter``; exact for specs with a closed-form slope.

    Other specs get the empirical ratio over a prefix of ``sample`` letters,
    flagged ``exact=False`` (lower == upper == the ratio).
    """
    spec = as_spec(spec)
    cf = spec.slope()
    if cf is not None and letter in ("a", "b"):
        if letter == "a":
            cf = cf.complement()
        lo, hi = cf.bounds(Fraction(precision))
        return Frequency(letter, True, lo, hi, cf)
    n = min(sample, max_prefix())
    ratio = Fraction(prefix(spec, n).count(letter), n)
    return Frequency(letter, False, ratio, ratio)


# --------------------------------------------------------------------------
# Checks


def check_lemma_lastletter(spec: WordSpec | str, m_max: int = 100) -> CheckReport:
    """Right special factors are rich in their first letter, left special ones in their last."""
    spec = as_spec(spec)
    report = CheckReport("lastletter", spec.render(), m_max)
    for m in range(1, m_max + 1):
        for side, pick in (("right", 0), ("left", -1)):
            for w in special_factors(spec, m, side):
                verdict = richness(spec, w)
                entry = {"factor": w, "side": side, "richness": verdict.letter,
                         "witness": verdict.witness}
                report.witnesses.append(entry)
                if verdict.letter != w[pick]:
                    report.violations.append(entry)
    return report


def check_counting_inequalities(spec: WordSpec | str, m_max: int = 100) -> CheckReport:
    """|V| f - 1 < |V|_x < |V| f + 1 for all factors, and |U|_x / |U| > f when U is rich in x."""
    spec = as_spec(spec)
    if spec.slope() is None:
        raise PreconditionError(f"{spec} has no exact slope")
    freqs = {x: slope_frequency(spec, x) for x in ("a", "b")}
    report = CheckReport("counting", spec.render(), m_max)
    checked = 0
    for m in range(1, m_max + 1):
        table = factor_table(spec, m)
        for f, counts in zip(table.factors, table.counts):
            for x, c in zip(table.alphabet, counts):
                fx = freqs[x]
                if not (fx.compare(Fraction(c + 1, m)) < 0 and fx.compare(Fraction(c - 1, m)) > 0):
                    report.violations.append({"factor": f, "letter": x, "count": c, "kind": "two-sided"})
            verdict = _richness_from_table(table, f)
            if verdict is None:
                report.violations.append({"factor": f, "kind": "richness-undefined"})
                continue
            c = counts[table.alphabet.index(verdict.letter)]
            if not freqs[verdict.letter].compare(Fraction(c, m)) < 0:
                report.violations.append({"factor": f, "letter": verdict.letter, "count": c,
                                          "kind": "rich-frequency"})
            checked += 1
    report.details = {"factors_checked": checked,
                      "f_a": freqs["a"].to_json(), "f_b": freqs["b"].to_json()}
    return report


def check_separating(spec: WordSpec | str, m_max: int = 50, letter: str = "a") -> CheckReport:
    """Every length-2 factor contains ``letter``; no factor up to ``m_max`` has two
    consecutive letters different from it."""
    spec = as_spec(spec)
    report = CheckReport("separating", spec.render(), m_max, details={"letter": letter})
    for f in factor_table(spec, 2):
        if letter not in f:
            report.violations.append({"factor": f})
            report.witnesses.append(f)
    if not report.violations and m_max >= 2:
        for f in factor_table(spec, m_max):
            for i in range(len(f) - 1):
                if f[i] != letter and f[i + 1] != letter:
                    report.violations.append({"factor": f, "position": i})
                    report.witnesses.append(f[i : i + 2])
                    break
    return report


def check_fact4(spec: WordSpec | str, m_max: int = 20) -> CheckReport:
    """For every factor u some letter b bounds its two-sided extensions:
    each xuy in the factor set has x = b or y = b."""
    spec = as_spec(spec)
    report = CheckReport("fact4", spec.render(), m_max)
    for m in range(0, m_max + 1):
        extensions = defaultdict(set)
        for f in factor_table(spec, m + 2):
            extensions[f[1:-1]].add((f[0], f[-1]))
        for u in sorted(extensions):
            ext = extensions[u]
            pivots = [b for b in spec.alphabet if all(x == b or y == b for x, y in ext)]
            if not pivots:
                report.violations.append({"factor": u, "extensions": sorted(x + y for x, y in ext)})
            elif m <= 2:
                report.witnesses.append({"factor": u, "pivot": pivots[0],
                                         "extensions": sorted(x + y for x, y in ext)})
    return report


def check_fact1(spec: WordSpec | str, m_max: int = 100) -> CheckReport:
    """Every prefix up to ``m_max`` is left special."""
    spec = as_spec(spec)
    report = CheckReport("fact1", spec.render(), m_max)
    for m in range(0, m_max + 1):
        p = prefix(spec, m)
        if p not in special_factors(spec, m, "left"):
            report.violations.append({"prefix_length": m, "prefix": p})
    return report


def check_complexity(spec: WordSpec | str, m_max: int = 200) -> CheckReport:
    """Certified m+1 complexity and the two-vector balance shape for every m <= m_max."""
    spec = as_spec(spec)
    report = CheckReport("complexity", spec.render(), m_max)
    for m in range(0, m_max + 1):
        try:
            table = factor_table(spec, m, mode="sturmian")
        except (NotSturmianError, ResourceBoundError) as exc:
            report.violations.append({"m": m, "error": str(exc)})
            break
        if m <= 3:
            report.witnesses.append({"m": m, "factors": list(table.factors)})
    return report


def check_balance(spec: WordSpec | str, n: int = 2000) -> CheckReport:
    """Balance of the prefix of length ``n`` (and so of every shorter prefix)."""
    spec = as_spec(spec)
    report = CheckReport("balance", spec.render(), n)
    result = is_balanced(prefix(spec, n))
    if not result:
        report.violations.append({"witness": list(result.witness)})
    return report


def check_special_unique(spec: WordSpec | str, m_max: int = 100) -> CheckReport:
    """Exactly one left and one right special factor of every length."""
    spec = as_spec(spec)
    report = CheckReport("special", spec.render(), m_max)
    for m in range(0, m_max + 1):
        for side in ("left", "right"):
            found = special_factors(spec, m, side)
            if len(found) != 1:
                report.violations.append({"m": m, "side": side, "found": found})
    return report


CHECKS = {
    "lastletter": check_lemma_lastletter,
    "counting": check_counting_inequalities,
    "separating": check_separating,
    "fact4": check_fact4,
    "fact1": check_fact1,
    "complexity": check_complexity,
    "balance": check_balance,
    "special": check_special_unique,
}
