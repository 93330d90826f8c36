"""Slow, independent reference implementations used only by the tests.

None of these share code with the package: words are built by textbook
recurrences, floors by Decimal arithmetic, richness by counting every window
and factorizations by enumerating compositions.
"""

from decimal import Decimal, getcontext
from functools import lru_cache


def standard_sturmian(d, n):
    """Prefix of the characteristic word of slope [0; 1+d1, d2, ...] via
    s_{-1} = b, s_0 = a, s_k = s_{k-1}^{d_k} s_{k-2}."""
    prev, cur = "b", "a"
    k = 0
    while len(cur) < n:
        prev, cur = cur, cur * d(k) + prev
        k += 1
    return cur[:n]


def palindromic_closure(w):
    for i in range(len(w)):
        suffix = w[i:]
        if suffix == suffix[::-1]:
            return w + w[:i][::-1]
    return w


def episturmian(directive, n):
    """Standard episturmian prefix by iterated palindromic closure."""
    w, i = "", 0
    while len(w) < n + 1:
        w = palindromic_closure(w + directive(i))
        i += 1
    return w[:n]


def golden_mechanical(n, rho=Decimal(0), digits=60):
    """Characteristic-convention word of slope (3 - sqrt 5)/2: letter m is b
    iff floor(alpha (m+2) + rho) - floor(alpha (m+1) + rho) = 1."""
    getcontext().prec = digits
    alpha = (3 - Decimal(5).sqrt()) / 2
    out = []
    for m in range(n):
        hi = int((alpha * (m + 2) + rho).to_integral_value(rounding="ROUND_FLOOR"))
        lo = int((alpha * (m + 1) + rho).to_integral_value(rounding="ROUND_FLOOR"))
        out.append("b" if hi - lo == 1 else "a")
    return "".join(out)


def window_set(word, m):
    return {word[i : i + m] for i in range(len(word) - m + 1)}


def brute_richness(word, factor):
    """Richness judged against every window of ``word`` of the same length."""
    m = len(factor)
    counts = [w.count("b") for w in window_set(word, m)]
    mine = factor.count("b")
    rich_b, rich_a = mine > min(counts), mine < max(counts)
    if rich_a == rich_b:
        return None
    return "b" if rich_b else "a"


def decode_backtracking(word, kind, x):
    """All parses of ``word`` over the code of L_x / R_x (complete parses only)."""
    letters = sorted(set(word) | {x})
    codewords = {x: x}
    for y in letters:
        if y != x:
            codewords[y] = x + y if kind == "L" else y + x

    @lru_cache(maxsize=None)
    def parses(i):
        if i == len(word):
            return [""]
        out = []
        for y, c in codewords.items():
            if word.startswith(c, i):
                out.extend(y + rest for rest in parses(i + len(c)))
        return out

    return parses(0)


def compositions_oracle(word, color_of, target, first_max, total_max):
    """All tuples (l1, ..., lm) with l1 <= first_max and sum <= total_max whose
    blocks are prefixes of ``word`` at their offsets with color ``target``.

    Extensions of an invalid tuple are invalid, so the enumeration prunes
    there; otherwise every composition is considered.
    """
    found = [()]

    def extend(lengths, k):
        limit = first_max if not lengths else total_max - k
        for l in range(1, min(limit, total_max - k) + 1):
            if word[k : k + l] != word[:l] or color_of(l) != target:
                continue
            node = lengths + (l,)
            found.append(node)
            extend(node, k + l)

    extend((), 0)
    return found


def unpruned_compositions(word, color_of, target, total_max):
    """Every composition of every k <= total_max, filtered; exponential, small k only."""
    out = [()]
    for k in range(1, total_max + 1):
        for mask in range(1 << (k - 1)):
            lengths, run = [], 1
            for bit in range(k - 1):
                if mask >> bit & 1:
                    lengths.append(run)
                    run = 1
                else:
                    run += 1
            lengths.append(run)
            pos, ok = 0, True
            for l in lengths:
                if word[pos : pos + l] != word[:l] or color_of(l) != target:
                    ok = False
                    break
                pos += l
            if ok:
                out.append(tuple(lengths))
    return out
