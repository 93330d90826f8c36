"""Exact infinite words: constructors, prefixes, windows and the spec grammar.

Words are plain ``str`` over the letters ``a``, ``b``, ``c``, ...  An
infinite word is described by an immutable, hashable ``WordSpec``; its
prefixes are generated on demand and cached per spec.

Spec grammar (whitespace is not allowed)::

    fibonacci | tribonacci
    epi:dir=(<letters>)*            epi:dir=<letters>,(<letters>)*
    sturmian:d=(<ints>)*            sturmian:d=<ints>,(<ints>)*
    mech:cf=[0;(<ints>)],rho=<p>/<q>  mech:cf=[0;<ints>,(<ints>)],rho=<p>/<q>
    morphic:<x>-><word>;...;seed=<x>
    literal:<letters>(<letters>)*
    swap:<spec>                     letter exchange a <-> b
    cat:<letters>+<spec>            finite word followed by a spec
    desub:<L|R>_<x>:<spec>          inverse image under L_x or R_x

``<ints>`` are comma separated positive integers, ``rho`` may also be
written as an integer (``rho=0``) and defaults to 0 when omitted.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, cycle
import os
import re
import threading

from .contfrac import ContinuedFraction, from_directive
from .errors import (BothFoundError, NeitherFoundError, PreconditionError,
                     ResourceBoundError, SpecInvariantError, SpecSyntaxError)
from .morphisms import Morphism, desubstitute

DEFAULT_MAX_PREFIX = 10**6


def max_prefix() -> int:
    """Prefix resource bound; ``STURMLAB_MAX_PREFIX`` overrides the default."""
    value = os.environ.get("STURMLAB_MAX_PREFIX")
    return int(value) if value else DEFAULT_MAX_PREFIX


class WordSpec:
    """Base class of the word constructors."""

    kind = "abstract"
    sturmian = False
    standard = False

    @property
    def alphabet(self) -> tuple[str, ...]:
        raise NotImplementedError

    def slope(self) -> ContinuedFraction | None:
        """Exact frequency of the letter b, when known in closed form."""
        return None

    def render(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.render()

    def _generate(self, n: int) -> str:
        """Return at least ``n`` letters of the word (possibly more)."""
        raise NotImplementedError


def _check_letters(word, what):
    if not re.fullmatch(r"[a-z]*", word):
        raise SpecInvariantError("letters", f"{what} must use the letters a-z, got {word!r}")


def _ints(xs):
    return ",".join(map(str, xs))


@dataclass(frozen=True)
class SturmianDirective(WordSpec):
    """Characteristic word with directive sequence ``d`` (head, then tail forever)."""

    head: tuple[int, ...]
    tail: tuple[int, ...]
    kind = "sturmian"
    sturmian = True
    standard = True

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(self.head))
        object.__setattr__(self, "tail", tuple(self.tail))
        if not self.tail:
            raise SpecInvariantError("directive-tail-nonempty", "directive tail must be nonempty")
        if any(d < 1 for d in self.head + self.tail):
            raise SpecInvariantError("positive-partial-quotients", "directive terms must be positive")

    @property
    def alphabet(self):
        return ("a", "b")

    def slope(self):
        return from_directive(self.head, self.tail)

    def render(self):
        head = _ints(self.head) + "," if self.head else ""
        return f"sturmian:d={head}({_ints(self.tail)})*"

    def _generate(self, n):
        # s_{-1} = b, s_0 = a, s_m = s_{m-1}^{d_m} s_{m-2}
        prev, cur = "b", "a"
        for d in chain(self.head, cycle(self.tail)):
            if len(cur) >= n:
                break
            prev, cur = cur, cur * d + prev
        return cur


@dataclass(frozen=True)
class EpisturmianDirective(WordSpec):
    """Standard episturmian word with directive ``head + tail^omega``."""

    head: str
    tail: str
    kind = "episturmian"
    standard = True

    def __post_init__(self):
        _check_letters(self.head + self.tail, "directive")
        if not self.tail:
            raise SpecInvariantError("directive-tail-nonempty", "directive tail must be nonempty")
        if len(set(self.tail)) < 2:
            raise SpecInvariantError("directive-tail-two-letters",
                                     "directive tail must contain >=2 distinct letters")

    @property
    def alphabet(self):
        return tuple(sorted(set(self.head + self.tail)))

    @property
    def sturmian(self):
        return len(self.alphabet) == 2

    def slope(self):
        if self.alphabet != ("a", "b"):
            return None
        runs_head, runs_tail = _directive_runs(self.head, self.tail)
        cf = from_directive(runs_head, runs_tail)
        # A directive starting with b yields the exchanged characteristic word.
        return cf if (self.head + self.tail)[0] == "a" else cf.complement()

    def render(self):
        head = self.head + "," if self.head else ""
        return f"epi:dir={head}({self.tail})*"

    def _generate(self, n):
        # phi = L_{x_1} o ... o L_{x_m}; the word is the limit of phi(x_{m+1}).
        phi = {y: y for y in self.alphabet}
        for x in chain(self.head, cycle(self.tail)):
            u = phi[x]
            if len(u) >= n:
                return u
            phi = {y: u if y == x else u + phi[y] for y in self.alphabet}
        raise AssertionError("unreachable")


def _directive_runs(head: str, tail: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Run lengths of ``head + tail^omega`` as an eventually periodic sequence."""
    stream = head + tail * 3
    # Cut at a run boundary inside the periodic part so that runs never straddle
    # the seam between two copies of the rotated tail.
    p = len(head) + 1
    while stream[p - 1] == stream[p]:
        p += 1
    new_head, new_tail = stream[:p], stream[p : p + len(tail)]

    def runs(w):
        return tuple(len(m.group(0)) for m in re.finditer(r"(.)\1*", w))

    return runs(new_head), runs(new_tail)


@dataclass(frozen=True)
class Mechanical(WordSpec):
    """Lower mechanical word read from index 1: letter m is b iff
    ``floor(slope*(m+2) + rho) - floor(slope*(m+1) + rho) == 1``.

    With ``rho = 0`` this is the characteristic word of the slope.
    """

    cf: ContinuedFraction
    rho: Fraction = Fraction(0)
    kind = "mechanical"
    sturmian = True

    def __post_init__(self):
        object.__setattr__(self, "rho", Fraction(self.rho))
        if not 0 <= self.rho < 1:
            raise SpecInvariantError("rho-range", f"rho must lie in [0, 1), got {self.rho}")

    @property
    def standard(self):
        return self.rho == 0

    @property
    def alphabet(self):
        return ("a", "b")

    def slope(self):
        return self.cf

    def render(self):
        rho = f"{self.rho.numerator}/{self.rho.denominator}"
        return f"mech:cf={self.cf.render()},rho={rho}"

    def _generate(self, n):
        floors = self.cf.floors_affine(n + 1, self.rho)
        return "".join("b" if floors[m + 2] - floors[m + 1] else "a" for m in range(n))


@dataclass(frozen=True)
class Morphic(WordSpec):
    """Fixed point of a substitution prolongable on ``seed``."""

    rules: tuple[tuple[str, str], ...]
    seed: str
    kind = "morphic"

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(sorted((str(k), str(v)) for k, v in dict(self.rules).items())))
        table = dict(self.rules)
        for k, v in self.rules:
            _check_letters(k + v, "substitution")
            if len(k) != 1:
                raise SpecInvariantError("letters", f"rule source must be one letter, got {k!r}")
            if not v:
                raise SpecInvariantError("nonerasing", f"image of {k} is empty")
        image = table.get(self.seed)
        if image is None or not image.startswith(self.seed) or len(image) < 2:
            raise SpecInvariantError("prolongable",
                                     f"substitution must be prolongable on {self.seed!r}")
        missing = set(self._reachable()) - set(table)
        if missing:
            raise SpecInvariantError("total", f"no rule for letters {sorted(missing)}")

    def _reachable(self):
        table = dict(self.rules)
        seen, todo = set(), [self.seed]
        while todo:
            c = todo.pop()
            if c in seen:
                continue
            seen.add(c)
            todo.extend(table.get(c, ""))
        return sorted(seen)

    @property
    def alphabet(self):
        return tuple(self._reachable())

    def render(self):
        rules = ";".join(f"{k}->{v}" for k, v in self.rules)
        return f"morphic:{rules};seed={self.seed}"

    def _generate(self, n):
        table = dict(self.rules)
        w = self.seed
        while len(w) < n:
            w = "".join(table[c] for c in w)
        return w


@dataclass(frozen=True)
class Literal(WordSpec):
    """Eventually periodic word ``head + tail^omega``."""

    head: str
    tail: str
    kind = "literal"

    def __post_init__(self):
        _check_letters(self.head + self.tail, "literal")
        if not self.tail:
            raise SpecInvariantError("literal-tail-nonempty", "periodic tail must be nonempty")

    @property
    def alphabet(self):
        return tuple(sorted(set(self.head + self.tail)))

    def render(self):
        return f"literal:{self.head}({self.tail})*"

    def _generate(self, n):
        reps = max(0, -(-(n - len(self.head)) // len(self.tail)))
        return self.head + self.tail * reps


@dataclass(frozen=True)
class Exchanged(WordSpec):
    """The parent word with a and b swapped."""

    parent: WordSpec
    kind = "exchanged"

    def __post_init__(self):
        if not set(self.parent.alphabet) <= {"a", "b"}:
            raise SpecInvariantError("exchange-binary", "exchange needs a word over {a, b}")

    @property
    def alphabet(self):
        return ("a", "b")

    @property
    def sturmian(self):
        return self.parent.sturmian

    @property
    def standard(self):
        return self.parent.standard

    def slope(self):
        cf = self.parent.slope()
        return None if cf is None else cf.complement()

    def render(self):
        return f"swap:{self.parent.render()}"

    def _generate(self, n):
        return exchange(prefix(self.parent, n))


@dataclass(frozen=True)
class Prepended(WordSpec):
    """A finite word followed by the parent word."""

    letters: str
    parent: WordSpec
    kind = "prepended"

    def __post_init__(self):
        _check_letters(self.letters, "prepended word")

    @property
    def alphabet(self):
        return tuple(sorted(set(self.letters) | set(self.parent.alphabet)))

    @property
    def sturmian(self):
        return self.parent.sturmian

    def slope(self):
        return self.parent.slope()

    def render(self):
        return f"cat:{self.letters}+{self.parent.render()}"

    def _generate(self, n):
        return self.letters + prefix(self.parent, max(0, n - len(self.letters)))


@dataclass(frozen=True)
class Derived(WordSpec):
    """The word t with ``morphism(t) = parent``, decoded lazily from the parent."""

    parent: WordSpec
    morphism: Morphism
    kind = "derived"

    @property
    def alphabet(self):
        return self.parent.alphabet

    @property
    def sturmian(self):
        return self.parent.sturmian

    def render(self):
        return f"desub:{self.morphism}:{self.parent.render()}"

    def _generate(self, n):
        # Codewords have length <= 2, so 2n+2 parent letters always suffice;
        # start near the typical ratio instead, since nested derived words
        # multiply the overshoot at every level.
        size = min(n + n // 2 + 8, 2 * n + 2)
        while True:
            source = prefix(self.parent, size)
            decoded, _ = desubstitute(source, self.morphism)
            if len(decoded) >= n or size >= 2 * n + 2:
                return decoded
            ratio = len(source) / max(1, len(decoded))
            size = min(max(int(n * ratio) + 8, size + 8), 2 * n + 2)


_CACHE: OrderedDict[WordSpec, str] = OrderedDict()
_CACHE_SIZE = 128
_LOCK = threading.Lock()


def prefix(spec: WordSpec, n: int, limit: int | None = None) -> str:
    """The prefix of length ``n`` of the infinite word described by ``spec``."""
    if n < 0:
        raise ValueError("prefix length must be nonnegative")
    limit = max_prefix() if limit is None else limit
    if n > limit:
        raise ResourceBoundError(f"prefix of length {n} exceeds the bound {limit}")
    with _LOCK:
        cached = _CACHE.get(spec)
        if cached is not None:
            _CACHE.move_to_end(spec)
            if len(cached) >= n:
                return cached[:n]
    word = spec._generate(n)
    if len(word) < n:
        raise AssertionError(f"{spec} produced {len(word)} < {n} letters")
    with _LOCK:
        cached = _CACHE.get(spec)
        if cached is None or len(cached) < len(word):
            _CACHE[spec] = word
            _CACHE.move_to_end(spec)
            while len(_CACHE) > _CACHE_SIZE:
                _CACHE.popitem(last=False)
    return word[:n]


def window(spec: WordSpec, k: int, n: int, limit: int | None = None) -> str:
    if k < 0 or n < 0:
        raise ValueError("offset and length must be nonnegative")
    return prefix(spec, k + n, limit)[k:]


_SWAP = str.maketrans("ab", "ba")


def exchange(word: str) -> str:
    if set(word) - {"a", "b"}:
        raise PreconditionError("exchange needs a word over {a, b}")
    return word.translate(_SWAP)


def exchange_spec(spec: WordSpec) -> WordSpec:
    if isinstance(spec, Exchanged):
        return spec.parent
    return Exchanged(spec)


def detect_type(spec: WordSpec, bound: int = 1000) -> str:
    """``'a'`` if aa occurs in the first ``bound`` letters and bb does not, ``'b'`` symmetrically."""
    if len(spec.alphabet) != 2:
        raise PreconditionError("type detection needs a two-letter word")
    w = prefix(spec, bound)
    has_aa, has_bb = "aa" in w, "bb" in w
    if has_aa and has_bb:
        raise BothFoundError(f"{spec} contains both aa and bb; it is not balanced")
    if has_aa:
        return "a"
    if has_bb:
        return "b"
    raise NeitherFoundError(f"neither aa nor bb in the first {bound} letters of {spec}")


# --------------------------------------------------------------------------
# Parsing

ALIASES = {
    "fibonacci": "sturmian:d=(1)*",
    "tribonacci": "epi:dir=(abc)*",
}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise SpecSyntaxError(message, self.text, self.pos if pos is None else pos)

    def peek(self, s):
        return self.text.startswith(s, self.pos)

    def expect(self, s):
        if not self.peek(s):
            self.error(f"expected {s!r}")
        self.pos += len(s)

    def match(self, pattern):
        m = re.compile(pattern).match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group(0)

    def letters(self, allow_empty=True):
        word = self.match(r"[a-z]*")
        if not word and not allow_empty:
            self.error("expected letters")
        return word

    def int_list(self):
        start = self.pos
        word = self.match(r"\d+(,\d+)*")
        if word is None:
            self.error("expected positive integers", start)
        values = tuple(int(v) for v in word.split(","))
        return values

    def head_tail_ints(self, closer):
        # [<ints>,](<ints>)<closer>
        head = ()
        if not self.peek("("):
            head = self.int_list()
            self.expect(",")
        self.expect("(")
        tail = self.int_list()
        self.expect(")" + closer)
        return head, tail

    def spec(self) -> WordSpec:
        for alias, expansion in ALIASES.items():
            if self.peek(alias):
                end = self.pos + len(alias)
                if end == len(self.text) or not self.text[end].isalnum():
                    self.pos = end
                    return parse_word_spec(expansion)
        if self.peek("epi:dir="):
            self.pos += len("epi:dir=")
            head = ""
            if not self.peek("("):
                head = self.letters(allow_empty=False)
                self.expect(",")
            self.expect("(")
            tail = self.letters(allow_empty=False)
            self.expect(")*")
            return EpisturmianDirective(head, tail)
        if self.peek("sturmian:d="):
            self.pos += len("sturmian:d=")
            head, tail = self.head_tail_ints("*")
            return SturmianDirective(head, tail)
        if self.peek("mech:cf=[0;"):
            self.pos += len("mech:cf=[0;")
            head, tail = self.head_tail_ints("]")
            rho = Fraction(0)
            if self.peek(",rho="):
                self.pos += len(",rho=")
                start = self.pos
                text = self.match(r"\d+(/\d+)?")
                if text is None:
                    self.error("expected a rational p/q", start)
                try:
                    rho = Fraction(text)
                except ZeroDivisionError:
                    self.error("zero denominator", start)
            try:
                cf = ContinuedFraction(head, tail)
            except ValueError as exc:
                raise SpecInvariantError("positive-partial-quotients", str(exc)) from None
            return Mechanical(cf, rho)
        if self.peek("morphic:"):
            self.pos += len("morphic:")
            rules = []
            while not self.peek("seed="):
                start = self.pos
                src = self.match(r"[a-z]")
                if src is None:
                    self.error("expected a rule like a->ab", start)
                self.expect("->")
                rules.append((src, self.letters(allow_empty=False)))
                self.expect(";")
            self.expect("seed=")
            seed = self.match(r"[a-z]")
            if seed is None:
                self.error("expected a seed letter")
            if len({k for k, _ in rules}) != len(rules):
                raise SpecInvariantError("function", "duplicate rule for a letter")
            return Morphic(tuple(rules), seed)
        if self.peek("literal:"):
            self.pos += len("literal:")
            head = self.letters()
            self.expect("(")
            tail = self.letters(allow_empty=False)
            self.expect(")*")
            return Literal(head, tail)
        if self.peek("swap:"):
            self.pos += len("swap:")
            return Exchanged(self.spec())
        if self.peek("cat:"):
            self.pos += len("cat:")
            letters = self.letters(allow_empty=False)
            self.expect("+")
            return Prepended(letters, self.spec())
        if self.peek("desub:"):
            self.pos += len("desub:")
            start = self.pos
            name = self.match(r"[LR]_[a-z]")
            if name is None:
                self.error("expected a morphism such as L_a", start)
            self.expect(":")
            parent = self.spec()
            return Derived(parent, Morphism.parse(name, parent.alphabet))
        self.error("unknown word constructor")


def parse_word_spec(text: str) -> WordSpec:
    """Parse a spec string; see the module docstring for the grammar."""
    parser = _Parser(text)
    spec = parser.spec()
    if parser.pos != len(text):
        parser.error("trailing characters")
    return spec


def as_spec(spec: WordSpec | str) -> WordSpec:
    return parse_word_spec(spec) if isinstance(spec, str) else spec
