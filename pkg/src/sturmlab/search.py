"""Exhaustive search for monochromatic prefix factorizations.

A node of the search tree is a factorization U_1 ... U_m of a prefix of the
word into blocks that are themselves prefixes of the word and all carry one
color.  At covered length k the admissible next blocks are the prefixes of
length l <= lce(k) in the color class; the root's children are limited to
l <= N.  Every node is finitely branching, so a tree without truncated nodes
is finite: no infinite monochromatic factorization exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .coloring import STURMIAN_3, Coloring, explain_color, prefix_colors
from .errors import IncompleteReportError, PreconditionError, SturmlabError
from .reports import CheckReport
from .words import Literal, WordSpec, as_spec, max_prefix, prefix

DEFAULT_MAX_LEN = 2000
DEFAULT_BUDGET = 10**7
VALIDATION_SAMPLE = 100

STATUS_NAMES = ("internal", "dead", "truncated")


def _codes(word: str) -> np.ndarray:
    return np.frombuffer(word.encode("ascii"), np.uint8) - 97


def lce(spec: WordSpec | str, k: int, cap: int) -> tuple[int, bool]:
    """Longest l <= cap with window(k, l) == prefix(l); exact iff a mismatch was seen."""
    if k < 1 or cap < 0:
        raise ValueError("lce needs k >= 1 and cap >= 0")
    w = _codes(prefix(as_spec(spec), k + cap))
    diff = np.flatnonzero(w[k : k + cap] != w[:cap])
    if diff.size:
        return int(diff[0]), True
    return cap, False


@dataclass(frozen=True)
class LceTable:
    """lce(k) for every offset of a generated prefix of length ``horizon``."""

    spec: WordSpec
    horizon: int
    values: np.ndarray
    exact: np.ndarray

    def __getitem__(self, k: int) -> tuple[int, bool]:
        return int(self.values[k]), bool(self.exact[k])


def lce_table(spec: WordSpec | str, horizon: int) -> LceTable:
    spec = as_spec(spec)
    z = kernels.z_function(_codes(prefix(spec, horizon)))
    offsets = np.arange(horizon)
    exact = offsets + z < horizon
    exact[0] = False
    return LceTable(spec, horizon, z, exact)


@dataclass(frozen=True)
class Factorization:
    spec: WordSpec
    lengths: tuple[int, ...]

    @property
    def covered(self) -> int:
        return sum(self.lengths)

    def blocks(self) -> list[str]:
        w = prefix(self.spec, self.covered)
        out, k = [], 0
        for l in self.lengths:
            out.append(w[k : k + l])
            k += l
        return out

    def is_valid(self) -> bool:
        w = prefix(self.spec, self.covered)
        k = 0
        for l in self.lengths:
            if w[k : k + l] != w[:l]:
                return False
            k += l
        return True


@dataclass
class SearchReport:
    spec: WordSpec
    scheme: str
    target: int
    max_len: int
    node_budget: int
    horizon: int
    total_nodes: int
    max_depth: int
    max_covered: int
    dead: int
    truncated: int
    complete: bool
    roots: list[dict] = field(default_factory=list)
    validated_nodes: int = 0
    tree: tuple[np.ndarray, np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    @property
    def internal(self) -> int:
        return self.total_nodes - self.dead - self.truncated

    @property
    def finite(self) -> bool:
        """No truncated node and the budget was not hit: the tree is certified finite."""
        return self.complete and self.truncated == 0

    def nodes(self) -> list[Factorization]:
        """Every enumerated factorization, the empty one first, in depth-first order."""
        if self.tree is None:
            raise PreconditionError("the search was run without recording the tree")
        parent, end, _ = self.tree
        lengths: list[tuple[int, ...]] = []
        out = [Factorization(self.spec, ())]
        for i in range(parent.shape[0]):
            p = int(parent[i])
            base = () if p < 0 else lengths[p]
            start = sum(base)
            lengths.append(base + (int(end[i]) - start,))
            out.append(Factorization(self.spec, lengths[-1]))
        return out

    def deepest(self) -> Factorization:
        """The first node in depth-first order among those of maximal depth."""
        nodes = self.nodes()
        return max(nodes, key=lambda f: len(f.lengths))

    def to_json(self) -> dict:
        return {
            "spec": self.spec.render(),
            "scheme": self.scheme,
            "target": self.target,
            "max_len": self.max_len,
            "node_budget": self.node_budget,
            "horizon": self.horizon,
            "total_nodes": self.total_nodes,
            "internal": self.internal,
            "dead": self.dead,
            "truncated": self.truncated,
            "max_depth": self.max_depth,
            "max_covered": self.max_covered,
            "complete": self.complete,
            "finite": self.finite,
            "validated_nodes": self.validated_nodes,
            "roots": self.roots,
        }


def enumerate_monochromatic(coloring: Coloring, target: int, max_len: int = DEFAULT_MAX_LEN,
                            node_budget: int = DEFAULT_BUDGET, horizon_cap: int | None = None,
                            record: bool = True, validate: int = VALIDATION_SAMPLE) -> SearchReport:
    """Enumerate the tree of monochromatic prefix factorizations in color ``target``.

    The word is generated up to a horizon that doubles until every node's lce
    and every needed prefix color is decided, or the horizon cap is reached;
    nodes still undecided at the cap are reported as truncated.
    """
    if not 0 <= target < coloring.n_colors:
        raise ValueError(f"color {target} out of range for {coloring.scheme}")
    if max_len < 1 or node_budget < 1:
        raise ValueError("max_len and node_budget must be positive")
    spec = coloring.spec
    cap = min(max_prefix(), horizon_cap or max(64 * max_len, 1 << 16))
    horizon = min(max(4 * max_len, 64), cap)
    while True:
        word = prefix(spec, horizon)
        z = kernels.z_function(_codes(word))
        colors = prefix_colors(coloring, horizon, word=word, z=z)
        class_lengths = np.flatnonzero(colors == target).astype(np.int64)
        unknown = np.flatnonzero(colors[1:] < 0)
        first_unknown = int(unknown[0]) + 1 if unknown.size else horizon + 1
        if target == 0:
            class_lengths = class_lengths[:0]
        root_open = target != 0 and first_unknown <= max_len
        roots = class_lengths[class_lengths <= min(max_len, first_unknown - 1)]
        (r_nodes, r_dead, r_trunc, r_depth, r_cover, n_nodes, exhausted,
         parent, end, status) = kernels.search_forest(
            z, horizon, class_lengths, first_unknown, roots, node_budget - 1, record)
        unresolved = root_open or int(r_trunc.sum()) > 0
        if unresolved and horizon < cap and not exhausted:
            horizon = min(2 * horizon, cap)
            continue
        break

    root_dead = not root_open and roots.size == 0
    report = SearchReport(
        spec=spec, scheme=coloring.scheme, target=target, max_len=max_len,
        node_budget=node_budget, horizon=horizon,
        total_nodes=1 + int(n_nodes),
        max_depth=int(r_depth.max()) if r_depth.size else 0,
        max_covered=int(r_cover.max()) if r_cover.size else 0,
        dead=int(r_dead.sum()) + int(root_dead),
        truncated=int(r_trunc.sum()) + int(root_open),
        complete=not bool(exhausted),
        roots=[{"length": int(roots[i]), "block": word[: int(roots[i])],
                "nodes": int(r_nodes[i]), "dead": int(r_dead[i]),
                "truncated": int(r_trunc[i]), "max_depth": int(r_depth[i]),
                "max_covered": int(r_cover[i])}
               for i in range(roots.shape[0]) if r_nodes[i] > 0],
        tree=(parent, end, status) if record else None,
    )
    if record and validate:
        report.validated_nodes = _validate_sample(report, coloring, word, validate)
    return report


def _direct_prefix_color(coloring: Coloring, word: str, l: int) -> int:
    """Prefix color from letter counts over all windows of the generated word."""
    if coloring.scheme != STURMIAN_3:
        return 1 + coloring.order.index(word[l - 1])
    b = np.concatenate([[0], np.cumsum(_codes(word), dtype=np.int64)])
    sums = b[l:] - b[:-l]
    mine = int(sums[0])
    rich_b, rich_a = mine > sums.min(), mine < sums.max()
    if rich_a == rich_b:
        if coloring.forced:
            return 1 + coloring.order.index(word[l - 1])
        raise SturmlabError(f"prefix of length {l} has no unique richness letter")
    return 2 if rich_b else 1


def _validate_sample(report: SearchReport, coloring: Coloring, word: str, size: int) -> int:
    """Re-check a seeded sample of nodes by direct comparison; raise on any mismatch."""
    nodes = report.nodes()[1:]
    if not nodes:
        return 0
    rng = np.random.default_rng(0)
    picks = rng.choice(len(nodes), size=min(size, len(nodes)), replace=False)
    seen: dict[int, int] = {}
    for i in sorted(int(p) for p in picks):
        node = nodes[i]
        k = 0
        for l in node.lengths:
            if word[k : k + l] != word[:l]:
                raise SturmlabError(f"node {node.lengths}: block at {k} is not the prefix of length {l}")
            if l not in seen:
                seen[l] = _direct_prefix_color(coloring, word, l)
            if seen[l] != report.target:
                raise SturmlabError(f"node {node.lengths}: prefix of length {l} has color {seen[l]}")
            k += l
    return len(picks)


@dataclass
class Verdict:
    spec: WordSpec
    scheme: str
    status: str
    reports: list[SearchReport]
    limiting: list[str] = field(default_factory=list)
    demonstration: dict | None = None

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_json(self) -> dict:
        out = {"spec": self.spec.render(), "scheme": self.scheme, "status": self.status,
               "limiting": self.limiting, "reports": [r.to_json() for r in self.reports]}
        if self.demonstration is not None:
            out["demonstration"] = self.demonstration
        return out


def periodic_demonstration(coloring: Coloring, repeats: int = 8) -> dict | None:
    """For a purely periodic literal word U^omega, the factorization U U U ... and its color."""
    spec = coloring.spec
    if not isinstance(spec, Literal) or spec.head:
        return None
    u = spec.tail
    for p in range(1, len(u) + 1):
        if len(u) % p == 0 and u[:p] * (len(u) // p) == u:
            u = u[:p]
            break
    blocks = [u] * repeats
    colors = sorted({explain_color(coloring, b).color for b in blocks})
    return {"block": u, "repeats": repeats, "colors": colors,
            "monochromatic": len(colors) == 1 and colors[0] != 0,
            "matches_prefix": "".join(blocks) == prefix(spec, len(u) * repeats)}


def verify_no_monochromatic(coloring: Coloring, max_len: int = DEFAULT_MAX_LEN,
                            node_budget: int = DEFAULT_BUDGET,
                            horizon_cap: int | None = None) -> Verdict:
    """PASS iff the search tree of every color is certified finite."""
    reports, limiting = [], []
    for target in range(coloring.n_colors):
        r = enumerate_monochromatic(coloring, target, max_len, node_budget, horizon_cap,
                                    record=False, validate=0)
        reports.append(r)
        if not r.complete:
            limiting.append(f"color {target}: node budget {node_budget} exhausted")
        elif r.truncated:
            limiting.append(f"color {target}: {r.truncated} nodes unresolved at horizon {r.horizon}")
    status = "INCONCLUSIVE" if limiting else "PASS"
    return Verdict(coloring.spec, coloring.scheme, status, reports, limiting,
                   periodic_demonstration(coloring))


def check_lemma_cp(report: SearchReport, spec: WordSpec | str | None = None) -> CheckReport:
    """Every root block c^p (c the first letter) heads a finite subtree; record its dieout depth."""
    spec = report.spec if spec is None else as_spec(spec)
    if not report.finite:
        raise IncompleteReportError("check_lemma_cp needs a complete report with no truncation")
    first = prefix(spec, 1)
    rows, violations = [], []
    for root in report.roots:
        if root["block"] != first * root["length"]:
            continue
        rows.append({"block": root["block"], "dieout_depth": root["max_depth"],
                     "nodes": root["nodes"]})
        if root["truncated"]:
            violations.append(root["block"])
    return CheckReport("lemma-cp", spec.render(), report.max_len, violations,
                       details={"target": report.target, "power_roots": rows})


def sample_descent_chain(coloring: Coloring, target: int, depth: int = 2,
                         max_len: int = DEFAULT_MAX_LEN, node_budget: int = DEFAULT_BUDGET):
    """Descend the deepest monochromatic factorization found by the search.

    Returns a descent trace; when the deepest factorization has fewer than
    ``depth`` blocks the trace carries no steps and says so.
    """
    from .descent import DescentTrace, descend_chain

    if coloring.scheme == STURMIAN_3 and target not in (1, 2):
        raise PreconditionError("descent needs a prefix color (1 or 2)")
    report = enumerate_monochromatic(coloring, target, max_len, node_budget, validate=0)
    chain = report.deepest()
    blocks = tuple(chain.blocks())
    if len(blocks) < max(depth, 2):
        return DescentTrace(coloring.spec, blocks, [], "insufficient blocks")
    return descend_chain(coloring.spec, blocks, episturmian=coloring.scheme != STURMIAN_3)
