"""Link patterns, their word encodings and the Temperley-Lieb Markov chains.

Labels run ``1 .. 2N`` and are cyclic.  Encodings:

* Dyck word (length ``2N``): ``a`` at the smaller label of each pair, ``b`` at the larger.
* half-turn word (length ``N``): for a half-turn symmetric pattern, letter ``i``
  is ``a`` if ``i`` is paired with ``j`` where ``i < j < i + N``, ``c`` if paired
  with ``i + N``, and ``b`` otherwise.  On these words the label shift
  ``i -> i + 1`` is a cyclic rotation.

Quarter-turn and quasi-quarter-turn FPLs are summarised by words of half the
length, see :func:`qt_reduce` and :func:`qqt_reduce`.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .core import Fpl, asm_to_fpl
from .enumeration import SymmetryClass, check_size, enumerate_asms
from .errors import (
    BadFactorization,
    IncompatibleSize,
    MalformedDyck,
    MalformedWord,
    NotHalfTurnSymmetric,
    NotIrreducible,
    NotSquareWord,
)
from .exact import SingularMatrix, solve


@dataclass(frozen=True)
class LinkPattern:
    n_arcs: int
    pairs: frozenset[tuple[int, int]]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Iterable[int]]) -> "LinkPattern":
        norm = frozenset(tuple(sorted(p)) for p in pairs)
        labels = sorted(x for p in norm for x in p)
        n = len(norm)
        if labels != list(range(1, 2 * n + 1)):
            raise ValueError(f"pairs do not partition 1..{2 * n}")
        pat = cls(n, norm)
        if not pat.is_noncrossing():
            raise ValueError("pattern is crossing")
        return pat

    def partner(self) -> dict[int, int]:
        out = {}
        for i, j in self.pairs:
            out[i] = j
            out[j] = i
        return out

    def is_noncrossing(self) -> bool:
        for (i, j), (k, l) in combinations(sorted(self.pairs), 2):
            if i < k < j < l or k < i < l < j:
                return False
        return True

    def shifted(self, by: int = 1) -> "LinkPattern":
        m = 2 * self.n_arcs
        return LinkPattern(self.n_arcs, frozenset(
            tuple(sorted(((i - 1 + by) % m + 1, (j - 1 + by) % m + 1))) for i, j in self.pairs
        ))

    def is_half_turn_symmetric(self) -> bool:
        return self.shifted(self.n_arcs) == self


# --- extraction ---------------------------------------------------------------


def boundary_order(n: int) -> list[tuple[tuple[int, int], str]]:
    """All 4n border half-edges, counterclockwise from the top of the left side."""
    order = [((i, 0), "W") for i in range(n)]
    order += [((n - 1, j), "S") for j in range(n)]
    order += [((i, n - 1), "E") for i in range(n - 1, -1, -1)]
    order += [((0, j), "N") for j in range(n - 1, -1, -1)]
    return order


def extract_link_pattern(f: Fpl) -> LinkPattern:
    labels = {}
    for half in boundary_order(f.n):
        if half in f.boundary_edges:
            labels[half] = len(labels) + 1
    ports: dict[tuple[int, int], list] = {}
    for u, v in f.internal_edges:
        ports.setdefault(u, []).append(v)
        ports.setdefault(v, []).append(u)
    for half, label in labels.items():
        ports.setdefault(half[0], []).append(label)
    pairs = set()
    for (vertex, _), label in labels.items():
        came, cur = label, vertex
        while True:
            first, second = ports[cur]
            other = second if first == came else first
            if isinstance(other, int):
                pairs.add((min(label, other), max(label, other)))
                break
            came, cur = cur, other
    return LinkPattern(f.n, frozenset(pairs))


# --- Dyck words ---------------------------------------------------------------


def is_dyck(word: str) -> bool:
    height = 0
    for ch in word:
        if ch == "a":
            height += 1
        elif ch == "b":
            height -= 1
        else:
            return False
        if height < 0:
            return False
    return height == 0


def pattern_to_dyck(p: LinkPattern) -> str:
    word = [""] * (2 * p.n_arcs)
    for i, j in p.pairs:
        word[i - 1], word[j - 1] = "a", "b"
    return "".join(word)


def dyck_to_pattern(word: str) -> LinkPattern:
    if len(word) % 2 or not is_dyck(word):
        raise MalformedDyck(f"{word!r} is not a Dyck word")
    stack, pairs = [], set()
    for pos, ch in enumerate(word, start=1):
        if ch == "a":
            stack.append(pos)
        else:
            pairs.add((stack.pop(), pos))
    return LinkPattern(len(word) // 2, frozenset(pairs))


def dyck_words(n: int) -> list[str]:
    """All Dyck words with ``n`` a's, in lex order."""
    out: list[str] = []

    def rec(prefix: str, opened: int, height: int) -> None:
        if len(prefix) == 2 * n:
            out.append(prefix)
            return
        if opened < n:
            rec(prefix + "a", opened + 1, height + 1)
        if height > 0:
            rec(prefix + "b", opened, height - 1)

    rec("", 0, 0)
    return out


def all_link_patterns(n: int) -> list[LinkPattern]:
    return [dyck_to_pattern(w) for w in dyck_words(n)]


# --- half-turn words --------------------------------------------------------------


def is_ht_word(word: str) -> bool:
    n = len(word)
    if n == 0 or set(word) - set("abc"):
        return False
    if n % 2 == 0:
        return "c" not in word and word.count("a") == word.count("b")
    if word.count("c") != 1 or word.count("a") != word.count("b"):
        return False
    u, v = word.split("c")
    return is_dyck(v + u)


def ht_words(n: int) -> list[str]:
    """All valid half-turn words of length ``n``, in lex order."""
    if n % 2 == 0:
        out = []
        for ones in combinations(range(n), n // 2):
            word = ["b"] * n
            for k in ones:
                word[k] = "a"
            out.append("".join(word))
        return sorted(out)
    out = []
    for pos in range(n):
        for d in dyck_words(n // 2):
            # word = u c v with v u = d; rotate d so that c lands on ``pos``
            v, u = d[: n - 1 - pos], d[n - 1 - pos:]
            out.append(u + "c" + v)
    return sorted(out)


def ht_encode(p: LinkPattern) -> str:
    if not p.is_half_turn_symmetric():
        raise NotHalfTurnSymmetric("pattern is not invariant under the shift by N")
    n = p.n_arcs
    mate = p.partner()
    letters = []
    for i in range(1, n + 1):
        j = mate[i]
        if j == i + n:
            letters.append("c")
        elif i < j < i + n:
            letters.append("a")
        else:
            letters.append("b")
    return "".join(letters)


def ht_decode(word: str) -> LinkPattern:
    if not is_ht_word(word):
        raise MalformedWord(f"{word!r} is not a half-turn word")
    n = len(word)
    full = word + word
    if n % 2:
        start = word.index("c")
    else:
        # rotate to a point of minimal height so the rotated word is Dyck
        height, low, start = 0, 0, 0
        for pos, ch in enumerate(word):
            height += 1 if ch == "a" else -1
            if height < low:
                low, start = height, pos + 1
    pairs = set()
    stack: list[int] = []
    for offset in range(2 * n):
        pos = (start + offset) % (2 * n)
        ch = full[pos]
        label = pos + 1
        if ch == "c":
            if label <= n:
                pairs.add((label, label + n))
        elif ch == "a":
            stack.append(label)
        else:
            other = stack.pop()
            pairs.add((min(other, label), max(other, label)))
    pat = LinkPattern(n, frozenset(pairs))
    if ht_encode(pat) != word:
        raise MalformedWord(f"{word!r} does not decode consistently")
    return pat


def rotate_word(word: str, cls: "SymmetryClass | str") -> str:
    """Image of an encoded pattern under the label shift ``i -> i + 1``.

    For Dyck words this goes through the pattern; every other encoding used
    here is a half-turn word, on which the shift is a cyclic rotation.
    """
    cls = SymmetryClass.parse(cls)
    if cls is SymmetryClass.PLAIN:
        return pattern_to_dyck(dyck_to_pattern(word).shifted(1))
    return word[-1] + word[:-1]


# --- quarter-turn reductions --------------------------------------------------------


def qt_reduce(word: str) -> str:
    if len(word) % 2:
        raise NotSquareWord(f"{word!r} has odd length")
    half = len(word) // 2
    if word[:half] != word[half:]:
        raise NotSquareWord(f"{word!r} is not of the form w'w'")
    return word[:half]


def qqt_reduce(word: str) -> str:
    if len(word) % 4 != 2:
        raise BadFactorization(f"length {len(word)} is not 2 mod 4")
    half = len(word) // 2
    first, second = word[:half], word[half:]
    diff = [k for k in range(half) if first[k] != second[k]]
    if len(diff) != 1:
        raise BadFactorization(f"halves of {word!r} differ in {len(diff)} positions")
    k = diff[0]
    if {first[k], second[k]} != {"a", "b"}:
        raise BadFactorization(f"mismatch {first[k]}/{second[k]} is not a/b")
    u, v = first[:k], first[k + 1:]
    if not is_dyck(v + u):
        raise BadFactorization(f"{v + u!r} is not a Dyck word")
    return u + "c" + v


# --- Temperley-Lieb generators --------------------------------------------------------


def apply_e(i: int, p: LinkPattern) -> LinkPattern:
    m = 2 * p.n_arcs
    i = (i - 1) % m + 1
    i1 = i % m + 1
    mate = p.partner()
    if mate[i] == i1:
        return p
    j, k = mate[i], mate[i1]
    pairs = set(p.pairs)
    pairs -= {tuple(sorted((i, j))), tuple(sorted((i1, k)))}
    pairs |= {tuple(sorted((i, i1))), tuple(sorted((j, k)))}
    return LinkPattern(p.n_arcs, frozenset(pairs))


def apply_e_sym(i: int, p: LinkPattern) -> LinkPattern:
    n = p.n_arcs
    if n < 2:
        raise ValueError("symmetrised generators need N >= 2")
    if not p.is_half_turn_symmetric():
        raise NotHalfTurnSymmetric("pattern is not invariant under the shift by N")
    return apply_e(i, apply_e(i + n, p))


def random_pattern(n: int, rng: random.Random) -> LinkPattern:
    """Uniform-ish random noncrossing pattern (random walk on the TL chain)."""
    p = dyck_to_pattern("ab" * n)
    for _ in range(4 * n * n + 4):
        p = apply_e(rng.randint(1, 2 * n), p)
    return p.shifted(rng.randint(0, 2 * n - 1))


# --- Markov chains ---------------------------------------------------------------


@dataclass(frozen=True)
class TransitionMatrix:
    cls: SymmetryClass
    size: int
    states: tuple[str, ...]
    generators: int
    entries: Mapping[tuple[int, int], Fraction] = field(repr=False)

    def row(self, a: int) -> dict[int, Fraction]:
        return {b: v for (x, b), v in self.entries.items() if x == a}

    def successors(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.states]
        for a, b in self.entries:
            out[a].append(b)
        return out


def transition_matrix(n: int, cls: "SymmetryClass | str" = SymmetryClass.PLAIN) -> TransitionMatrix:
    cls = SymmetryClass.parse(cls)
    if cls is SymmetryClass.PLAIN:
        if n < 1:
            raise ValueError("N must be at least 1")
        states = dyck_words(n)
        decode, encode, gens = dyck_to_pattern, pattern_to_dyck, 2 * n
        step = apply_e
    elif cls is SymmetryClass.HALF_TURN:
        if n < 2:
            raise ValueError("the half-turn chain needs N >= 2")
        states = ht_words(n)
        decode, encode, gens = ht_decode, ht_encode, n
        step = apply_e_sym
    else:
        raise ValueError(f"no Temperley-Lieb chain for class {cls.value}")
    index = {w: k for k, w in enumerate(states)}
    counts: dict[tuple[int, int], int] = {}
    for a, word in enumerate(states):
        pat = decode(word)
        for i in range(1, gens + 1):
            b = index[encode(step(i, pat))]
            counts[(a, b)] = counts.get((a, b), 0) + 1
    entries = {key: Fraction(c, gens) for key, c in counts.items()}
    return TransitionMatrix(cls, n, tuple(states), gens, entries)


def is_irreducible(m: TransitionMatrix) -> bool:
    succ = m.successors()
    pred: list[list[int]] = [[] for _ in m.states]
    for a, bs in enumerate(succ):
        for b in bs:
            pred[b].append(a)
    for graph in (succ, pred):
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for b in graph[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        if len(seen) != len(m.states):
            return False
    return True


def is_aperiodic(m: TransitionMatrix) -> bool:
    """An irreducible chain with a self-loop is aperiodic; otherwise check cycle gcd."""
    if any(a == b for a, b in m.entries):
        return True
    from math import gcd

    succ = m.successors()
    level = {0: 0}
    queue = deque([0])
    g = 0
    while queue:
        a = queue.popleft()
        for b in succ[a]:
            if b not in level:
                level[b] = level[a] + 1
                queue.append(b)
            else:
                g = gcd(g, level[a] + 1 - level[b])
    return g == 1


def stationary_distribution(m: TransitionMatrix) -> list[Fraction]:
    """Exact solution of ``mu P = mu`` with entries summing to 1."""
    if not is_irreducible(m):
        raise NotIrreducible("transition matrix is not irreducible")
    k = len(m.states)
    g = m.generators
    # columns of (G P - G I)^T, as integers
    system = [[0] * k for _ in range(k)]
    for (a, b), v in m.entries.items():
        system[b][a] += int(v * g)
    for a in range(k):
        system[a][a] -= g
    system[-1] = [1] * k
    rhs = [0] * (k - 1) + [1]
    try:
        mu = solve(system, rhs)
    except SingularMatrix as exc:
        raise NotIrreducible(str(exc)) from None
    if any(x <= 0 for x in mu):
        raise NotIrreducible("stationary vector has a non-positive entry")
    return mu


def stationary_residual(m: TransitionMatrix, mu: list[Fraction]) -> list[Fraction]:
    out = [-x for x in mu]
    for (a, b), v in m.entries.items():
        out[b] += mu[a] * v
    return out


# --- pattern distributions ---------------------------------------------------------


@dataclass(frozen=True)
class PatternDistribution:
    size: int
    cls: SymmetryClass
    counts: Mapping[str, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def probabilities(self) -> dict[str, Fraction]:
        t = self.total
        return {w: Fraction(c, t) for w, c in self.counts.items()}

    def records(self) -> list[tuple[str, int]]:
        return sorted(self.counts.items())


def word_space(size: int, cls: "SymmetryClass | str") -> list[str]:
    """Every word the encoding of a class member could take."""
    cls = SymmetryClass.parse(cls)
    if cls is SymmetryClass.PLAIN:
        return dyck_words(size)
    if cls is SymmetryClass.HALF_TURN:
        return ht_words(size)
    return ht_words(size // 2)


def encode_fpl(f: Fpl, cls: "SymmetryClass | str") -> str:
    cls = SymmetryClass.parse(cls)
    pat = extract_link_pattern(f)
    if cls is SymmetryClass.PLAIN:
        return pattern_to_dyck(pat)
    word = ht_encode(pat)
    if cls is SymmetryClass.HALF_TURN:
        return word
    if cls is SymmetryClass.QUARTER_TURN:
        return qt_reduce(word)
    return qqt_reduce(word)


def pattern_counts(size: int, cls: "SymmetryClass | str" = SymmetryClass.PLAIN) -> PatternDistribution:
    """Exact per-pattern counts over the class, zero-count words included."""
    cls = SymmetryClass.parse(cls)
    check_size(size, cls)
    counts = dict.fromkeys(word_space(size, cls), 0)
    for a in enumerate_asms(size, cls):
        word = encode_fpl(asm_to_fpl(a), cls)
        if word not in counts:
            raise IncompatibleSize(f"unexpected word {word!r} for class {cls.value}")
        counts[word] += 1
    return PatternDistribution(size, cls, counts)


def iter_patterns(size: int, cls: "SymmetryClass | str") -> Iterator[tuple[str, Fpl]]:
    cls = SymmetryClass.parse(cls)
    for a in enumerate_asms(size, cls):
        f = asm_to_fpl(a)
        yield encode_fpl(f, cls), f
