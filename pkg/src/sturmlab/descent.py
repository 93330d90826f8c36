"""Descent of monochromatic prefix factorizations through L_a and R_a.

Given blocks U_1, ..., U_n that are prefixes of a type-a Sturmian word s,
occur consecutively from position 0 and share one richness letter, either all
blocks end in a (then s = R_a(t)) or every U_i a is again a prefix (then
s = L_a(t)).  Decoding the blocks gives prefixes V_i of t with the same
richness and |V_1| < |U_1|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import (DescentAssertionError, NeitherCaseError, NeitherFoundError, NotDecodableError,
                     PreconditionError)
from .factors import is_balanced, richness
from .morphisms import Morphism, apply_morphism, desubstitute
from .words import Derived, WordSpec, as_spec, detect_type, exchange, exchange_spec, prefix

BALANCE_BOUND = 2000


def _word_type(spec: WordSpec, total: int) -> str:
    # Deeply nested derived words are costly to expand; look only as far as
    # the blocks need unless that window shows neither aa nor bb.
    try:
        return detect_type(spec, max(64, 4 * total))
    except NeitherFoundError:
        return detect_type(spec)


class CaseTag(str, Enum):
    ENDS_IN_A = "ENDS_IN_A"
    PREFIX_EXTENDS_BY_A = "PREFIX_EXTENDS_BY_A"


def _check_blocks(spec: WordSpec, blocks) -> str:
    """Blocks must be nonempty prefixes of ``spec`` laid end to end from position 0."""
    blocks = list(blocks)
    if not blocks:
        raise PreconditionError("a factorization needs at least one block")
    total = sum(len(b) for b in blocks)
    w = prefix(spec, total + 1)
    k = 0
    for i, b in enumerate(blocks):
        if not b:
            raise PreconditionError(f"block {i} is empty")
        if w[: len(b)] != b:
            raise PreconditionError(f"block {i} ({b!r}) is not a prefix of {spec}")
        if w[k : k + len(b)] != b:
            raise PreconditionError(f"block {i} ({b!r}) does not occur at its offset {k}")
        k += len(b)
    return w


def classify_prefix_factorization(spec: WordSpec | str, blocks, check_richness: bool = True) -> CaseTag:
    """Which of the two descent cases the blocks fall into."""
    spec = as_spec(spec)
    if _word_type(spec, sum(len(b) for b in blocks)) != "a":
        raise PreconditionError(f"{spec} is not of type a; exchange it first")
    w = _check_blocks(spec, blocks)
    if check_richness:
        letters = {richness(spec, b).letter for b in blocks}
        if len(letters) != 1:
            raise PreconditionError(f"blocks differ in richness: {sorted(letters)}")
    if all(b.endswith("a") for b in blocks):
        return CaseTag.ENDS_IN_A
    # A b-initial word has no L_a preimage; such words are only handled through
    # the all-blocks-end-in-a case, so reaching here with one is a failure.
    if w[0] != "a":
        raise NeitherCaseError(f"{spec} starts with b and not every block ends in a")
    for i, b in enumerate(blocks):
        if prefix(spec, len(b) + 1) != b + "a":
            raise NeitherCaseError(f"block {i} ({b!r}) ends in b and {b}a is not a prefix")
    return CaseTag.PREFIX_EXTENDS_BY_A


def _extends_by_a(spec: WordSpec, blocks) -> bool:
    w = prefix(spec, max(len(b) for b in blocks) + 1)
    return w[0] == "a" and all(w[: len(b) + 1] == b + "a" for b in blocks)


@dataclass
class DescentStep:
    spec: WordSpec
    blocks: tuple[str, ...]
    case: CaseTag | None
    morphism: Morphism
    derived: WordSpec
    derived_blocks: tuple[str, ...]
    letters: tuple[str, ...]
    exchanged: bool = False
    notes: dict = field(default_factory=dict)

    def to_json(self):
        return {"spec": self.spec.render(), "blocks": list(self.blocks),
                "case": self.case.value if self.case else None,
                "morphism": str(self.morphism), "exchanged": self.exchanged,
                "derived": self.derived.render(), "derived_blocks": list(self.derived_blocks),
                "letters": list(self.letters),
                "lengths": [len(b) for b in self.blocks],
                "derived_lengths": [len(v) for v in self.derived_blocks],
                **({"notes": self.notes} if self.notes else {})}


def _fail(message, **counterexample):
    raise DescentAssertionError(message, {k: str(v) if isinstance(v, WordSpec) else v
                                          for k, v in counterexample.items()})


def _synchronized(spec: WordSpec, blocks, x: str) -> bool:
    # Every L_x codeword starts with x, so a token boundary at the end of the
    # chain needs x right after it.  In an infinite factorization the next
    # block supplies it; a finite chain has to check.
    total = sum(len(b) for b in blocks)
    return prefix(spec, total + 1)[total] == x


def _require_sync(spec: WordSpec, blocks, x: str):
    if not _synchronized(spec, blocks, x):
        raise NeitherCaseError(f"the letter after the last block is not {x}; "
                               f"its L_{x} decoding is not synchronized")


def _decode_blocks(blocks, m: Morphism, spec: WordSpec):
    out = []
    for b in blocks:
        try:
            v, cert = desubstitute(b, m, final=True)
        except NotDecodableError as exc:
            _fail(f"block is not decodable under {m}", spec=spec, block=b, position=exc.position)
        if cert.tail or apply_morphism(m, v) != b:
            _fail(f"decoding under {m} does not reproduce the block", spec=spec, block=b, decoded=v)
        out.append(v)
    return out


def _check_derived_prefixes(derived: WordSpec, vs, spec: WordSpec, m: Morphism):
    t = prefix(derived, sum(len(v) for v in vs))
    k = 0
    for v in vs:
        if t[: len(v)] != v or t[k : k + len(v)] != v:
            _fail("decoded block is not a prefix of the derived word at its offset",
                  spec=spec, morphism=str(m), block=v, offset=k, derived_prefix=t[: k + len(v)])
        k += len(v)


def descend_factorization(spec: WordSpec | str, blocks) -> DescentStep:
    """One descent step for a Sturmian word; type-b words are exchanged and mapped back."""
    spec = as_spec(spec)
    blocks = tuple(blocks)
    exchanged = _word_type(spec, sum(len(b) for b in blocks)) == "b"
    work = exchange_spec(spec) if exchanged else spec
    ublocks = tuple(exchange(b) for b in blocks) if exchanged else blocks
    case = classify_prefix_factorization(work, ublocks)
    notes = {}
    both = case is CaseTag.ENDS_IN_A and _extends_by_a(work, ublocks)
    if both:
        # The R_a preimage is only guaranteed balanced when the blocks go on
        # forever, so a finite chain takes L_a whenever it is synchronized.
        notes["both_cases"] = True
        if _synchronized(work, ublocks, "a"):
            case = CaseTag.PREFIX_EXTENDS_BY_A
    m = Morphism("L" if case is CaseTag.PREFIX_EXTENDS_BY_A else "R", "a")
    if m.kind == "L":
        _require_sync(work, ublocks, "a")
    vs = _decode_blocks(ublocks, m, work)
    derived = Derived(work, m)
    _check_derived_prefixes(derived, vs, work, m)
    if m.kind == "R":
        # Nested derived words cost twice their length per level, so the
        # bound follows the chain instead of a fixed length.
        bound = min(BALANCE_BOUND, max(64, 4 * sum(len(u) for u in ublocks)))
        balanced = is_balanced(prefix(derived, bound))
        notes["derived_balanced"] = bool(balanced)
        notes["balance_bound"] = bound
        if not balanced and both:
            raise NeitherCaseError("both cases hold, L_a is not synchronized and the "
                                   "R_a preimage is unbalanced")
        if not balanced:
            _fail("R_a-derived word is not balanced", spec=work, witness=list(balanced.witness))
    letters = []
    for u, v in zip(ublocks, vs):
        ru, rv = richness(work, u).letter, richness(derived, v).letter
        if ru != rv:
            _fail("richness changed under descent", spec=work, block=u, decoded=v,
                  before=ru, after=rv)
        letters.append(ru)
    if not len(vs[0]) < len(ublocks[0]):
        _fail("first block did not shrink", spec=work, block=ublocks[0], decoded=vs[0])
    if exchanged:
        derived = exchange_spec(derived)
        vs = [exchange(v) for v in vs]
        letters = [exchange(c) for c in letters]
    return DescentStep(spec, blocks, case, m, derived, tuple(vs), tuple(letters), exchanged, notes)


def descend_episturmian(spec: WordSpec | str, blocks) -> DescentStep:
    """One L_x descent step, x the first letter, for blocks ending in one common letter."""
    spec = as_spec(spec)
    blocks = tuple(blocks)
    w = _check_blocks(spec, blocks)
    finals = {b[-1] for b in blocks}
    if len(finals) != 1:
        raise PreconditionError(f"blocks end in different letters: {sorted(finals)}")
    x = w[0]
    for i, b in enumerate(blocks):
        if prefix(spec, len(b) + 1) != b + x:
            raise NeitherCaseError(f"block {i} ({b!r}) is not followed by {x} as a prefix")
    _require_sync(spec, blocks, x)
    m = Morphism("L", x, spec.alphabet)
    vs = _decode_blocks(blocks, m, spec)
    derived = Derived(spec, m)
    _check_derived_prefixes(derived, vs, spec, m)
    for u, v in zip(blocks, vs):
        if u[-1] != v[-1]:
            _fail("last letter changed under descent", spec=spec, block=u, decoded=v)
    if not len(vs[0]) < len(blocks[0]):
        _fail("first block did not shrink", spec=spec, block=blocks[0], decoded=vs[0])
    return DescentStep(spec, blocks, None, m, derived, tuple(vs),
                       tuple(u[-1] for u in blocks))


@dataclass
class DescentTrace:
    spec: WordSpec
    blocks: tuple[str, ...]
    steps: list[DescentStep]
    status: str
    dropped: int = 0

    @property
    def first_lengths(self) -> list[int]:
        lengths = [len(self.blocks[0])] if self.blocks else []
        return lengths + [len(s.derived_blocks[0]) for s in self.steps]

    @property
    def strictly_decreasing(self) -> bool:
        ls = self.first_lengths
        return all(a > b for a, b in zip(ls, ls[1:]))

    def to_json(self):
        return {"spec": self.spec.render(), "blocks": list(self.blocks), "status": self.status,
                "dropped_blocks": self.dropped, "first_lengths": self.first_lengths,
                "strictly_decreasing": self.strictly_decreasing,
                "steps": [s.to_json() for s in self.steps]}


def _power_of_first(block: str) -> bool:
    return block == block[0] * len(block)


def descend_chain(spec: WordSpec | str, blocks, episturmian: bool = False) -> DescentTrace:
    """Descend repeatedly while at least two blocks remain.

    A chain whose first block is c^p cannot shrink further and stops.  When the
    blocks fit neither case, the last block is dropped and the step retried:
    a finite chain may end with a block that an infinite one would extend.
    """
    spec = as_spec(spec)
    blocks = tuple(blocks)
    trace = DescentTrace(spec, blocks, [], "insufficient blocks")
    step_fn = descend_episturmian if episturmian else descend_factorization
    current, cur_blocks = spec, blocks
    while len(cur_blocks) >= 2:
        if _power_of_first(cur_blocks[0]):
            trace.status = "first block is a power of the first letter"
            break
        try:
            step = step_fn(current, cur_blocks)
        except NeitherCaseError:
            cur_blocks = cur_blocks[:-1]
            trace.dropped += 1
            continue
        trace.steps.append(step)
        current, cur_blocks = step.derived, step.derived_blocks
    else:
        if trace.steps:
            trace.status = "insufficient blocks after descent"
    if not trace.strictly_decreasing:
        raise DescentAssertionError("first-block lengths did not strictly decrease",
                                    {"first_lengths": trace.first_lengths})
    return trace

