"""Checkpointed collision families in the free algebra, and their spans.

The family lives at levels k = 1, 2, ...: level k works with words of block
length N(k) = b^(k*k) over the alphabet x0..x_{k-1} and marks the checkpoint
positions c_0 = 0, c_{p+1} = r^p * b^((k-1)^2) (p = 0..k), c_{k+2} = N(k)
inside a word of length N(k) - 1.  Collision elements are the monomials with
equal letters at two checkpoint positions ("repeat") and the two-monomial
sums whose members swap a pair of distinct letters across two checkpoint
positions and agree elsewhere ("swap").

Spans queried here, always inside one bi-graded component (length, degree):

  words           sum over m >= 0 of A(m*N) * derivatives of alphabet words
                  of length N(k) * (anything on the right);
  collisions      same with collision elements of level k in the middle;
  collisions_sum  union of collisions rows for levels 1..k;
  ideal_level     two-sided ideal generated by all derivatives of alphabet
                  words of length 2*N(k);
  ideal           union of ideal_level rows over every level whose block
                  fits the component length.

A level is degenerate when its checkpoints are not strictly increasing
(r^k >= b^(2k-1)); its collision family is then empty because the outermost
checkpoint position falls outside the word.  Constructors accept such
parameter sets so that the healthy levels remain usable; eager validation is
available separately.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .budgets import BudgetExceeded, Budgets, DEFAULT_BUDGETS
from .fields import RationalField
from .freealg import FreePoly, derive_iter, word_stats
from .membership import (
    Echelon,
    MembershipCertificate,
    verify_functional,
    verify_member_combination,
)

__all__ = [
    "ParamsError",
    "ConstructionParams",
    "words_iter",
    "count_words",
    "word_generators",
    "CollisionElement",
    "collision_test",
    "collision_elements",
    "SpanQuery",
    "SPACES",
    "span_rows",
    "span_basis",
    "SpanOracle",
    "signed_reorder_word",
    "signed_reorder",
]


class ParamsError(ValueError):
    """Invalid construction parameters or an out-of-range level."""


_DEFAULT_FIELD = RationalField()


@dataclass(frozen=True)
class ConstructionParams:
    base: int = 10
    ratio: int = 3
    k_max: int = 1
    field: object = _DEFAULT_FIELD

    def __post_init__(self):
        if not isinstance(self.base, int) or self.base < 2:
            raise ParamsError(f"base must be an integer >= 2, got {self.base!r}")
        if not isinstance(self.ratio, int) or self.ratio < 2:
            raise ParamsError(f"ratio must be an integer >= 2, got {self.ratio!r}")
        if not isinstance(self.k_max, int) or self.k_max < 1:
            raise ParamsError(f"k_max must be an integer >= 1, got {self.k_max!r}")

    def _check_level(self, k: int):
        if not 1 <= k <= self.k_max:
            raise ParamsError(f"level {k} outside 1..k_max={self.k_max}")

    def block(self, k: int) -> int:
        """Block length N(k) = base^(k*k)."""
        self._check_level(k)
        return self.base ** (k * k)

    def checkpoints(self, k: int) -> list[int]:
        """The k+3 checkpoint values c_0 .. c_{k+2}."""
        self._check_level(k)
        b, r = self.base, self.ratio
        inner = [r**p * b ** ((k - 1) ** 2) for p in range(k + 1)]
        return [0] + inner + [b ** (k * k)]

    def level_valid(self, k: int) -> bool:
        """Strict monotonicity of the checkpoints at level k."""
        c = self.checkpoints(k)
        return all(c[i] < c[i + 1] for i in range(len(c) - 1))

    def invalid_levels(self) -> list[int]:
        return [k for k in range(1, self.k_max + 1) if not self.level_valid(k)]

    def require_level(self, k: int):
        self._check_level(k)
        if not self.level_valid(k):
            c = self.checkpoints(k)
            raise ParamsError(
                f"level {k} is degenerate: checkpoints {c} are not strictly "
                f"increasing (need ratio^{k} < base^{2 * k - 1})"
            )

    def validate(self):
        """Raise unless every level up to k_max has monotone checkpoints."""
        bad = self.invalid_levels()
        if bad:
            self.require_level(bad[0])


# -- word enumeration ---------------------------------------------------------


def words_iter(length: int, degree: int, max_letter: int | None = None):
    """All words of the given length and degree in ascending lexicographic
    order, letters capped at max_letter when given."""
    if length < 0 or degree < 0:
        return
    cap = degree if max_letter is None else min(max_letter, degree)
    if degree > cap * length:
        return
    if length == 0:
        if degree == 0:
            yield ()
        return
    # smallest word: mass packed as far right as the cap allows
    w = [0] * length
    rem, pos = degree, length - 1
    while rem > 0:
        take = min(cap, rem)
        w[pos] = take
        rem -= take
        pos -= 1
    while True:
        yield tuple(w)
        # successor: bump the rightmost slot that has mass available to its
        # right, then re-pack that mass minimally
        s = w[length - 1]
        found = -1
        for i in range(length - 2, -1, -1):
            if s >= 1 and w[i] < cap:
                found = i
                break
            s += w[i]
        if found < 0:
            return
        w[found] += 1
        s -= 1
        for j in range(found + 1, length):
            w[j] = 0
        pos = length - 1
        while s > 0:
            take = min(cap, s)
            w[pos] = take
            s -= take
            pos -= 1


def count_words(length: int, degree: int) -> int:
    """Dimension of the bi-graded component: compositions of the degree into
    `length` non-negative parts."""
    if length < 0 or degree < 0:
        return 0
    if length == 0:
        return 1 if degree == 0 else 0
    return comb(degree + length - 1, length - 1)


def word_generators(params: ConstructionParams, k: int, n: int, l: int = 0,
                    budgets: Budgets = DEFAULT_BUDGETS) -> list[FreePoly]:
    """Order-l derivatives of all k^n words of length n over x0..x_{k-1}."""
    params._check_level(k)
    if n < 0 or l < 0:
        raise ValueError("length and derivative order must be >= 0")
    total = k**n
    if total > budgets.max_basis_size:
        raise BudgetExceeded(
            f"alphabet enumeration needs {total} words (budget "
            f"{budgets.max_basis_size})",
            words=total,
        )
    field = params.field
    out = []
    for letters in itertools.product(range(k), repeat=n):
        out.append(derive_iter(FreePoly.monomial(field, letters), l))
    return out


# -- collision elements -------------------------------------------------------


@dataclass(frozen=True)
class CollisionElement:
    """A spanning element of the level-k collision family.

    kind "repeat": one word with equal letters at checkpoint positions
    c_{p+1}, c_{q+1}.  kind "swap": two words that swap distinct letters
    (larger, smaller) across those positions and agree elsewhere.
    """

    level: int
    kind: str
    words: tuple[tuple, ...]
    pair: tuple[int, int]          # (p, q), 0 <= p < q <= level
    positions: tuple[int, int]     # the 1-based positions c_{p+1}, c_{q+1}
    letters: tuple[int, ...]       # (letter,) for repeat, (larger, smaller) for swap

    def poly(self, field) -> FreePoly:
        return FreePoly(field, {w: field.one for w in self.words})

    def component(self) -> tuple[int, int]:
        return word_stats(self.words[0])


def _usable_pairs(params: ConstructionParams, k: int) -> list[tuple[int, int, int, int]]:
    """(p, q, pos_p, pos_q) for checkpoint pairs that land inside words of
    length N(k)-1; empty for degenerate levels."""
    cps = params.checkpoints(k)
    length = params.block(k) - 1
    inner = cps[1 : k + 2]
    out = []
    for p in range(k + 1):
        for q in range(p + 1, k + 1):
            if inner[p] < inner[q] <= length:
                out.append((p, q, inner[p], inner[q]))
    return out


def collision_test(params: ConstructionParams, k: int, candidate):
    """Test a word (repeat kind) or a pair of words (swap kind).

    Returns the witnessing CollisionElement or None.  The candidate length
    must be N(k)-1; anything else is an error, not a negative answer.
    """
    params._check_level(k)
    length = params.block(k) - 1
    pairs = _usable_pairs(params, k)
    if isinstance(candidate, tuple) and candidate and isinstance(candidate[0], tuple):
        if len(candidate) != 2:
            raise ValueError("swap candidates are pairs of words")
        s1, s2 = candidate
        if len(s1) != length or len(s2) != length:
            raise ValueError(
                f"wrong length: expected {length}, got {len(s1)} and {len(s2)}"
            )
        diff = [i for i in range(length) if s1[i] != s2[i]]
        if len(diff) != 2:
            return None
        i, j = diff
        for p, q, pos_p, pos_q in pairs:
            if (pos_p - 1, pos_q - 1) == (i, j):
                if s1[i] == s2[j] and s1[j] == s2[i] and s1[i] != s1[j]:
                    hi, lo = max(s1[i], s1[j]), min(s1[i], s1[j])
                    ws = tuple(sorted((s1, s2)))
                    return CollisionElement(k, "swap", ws, (p, q),
                                            (pos_p, pos_q), (hi, lo))
                return None
        return None
    word = candidate
    if len(word) != length:
        raise ValueError(f"wrong length: expected {length}, got {len(word)}")
    for p, q, pos_p, pos_q in pairs:
        if word[pos_p - 1] == word[pos_q - 1]:
            return CollisionElement(k, "repeat", (word,), (p, q),
                                    (pos_p, pos_q), (word[pos_p - 1],))
    return None


def _splice(rest: tuple, length: int, placed: dict[int, int]) -> tuple:
    """Insert letters at fixed 1-based positions, filling the rest in order."""
    it = iter(rest)
    return tuple(placed[i] if i in placed else next(it) for i in range(1, length + 1))


def collision_elements(params: ConstructionParams, k: int, degree: int,
                       budgets: Budgets = DEFAULT_BUDGETS):
    """All level-k collision elements of the component (N(k)-1, degree), in a
    fixed order: repeat kind in word order, then swap kind by checkpoint pair
    and letter pair."""
    params._check_level(k)
    length = params.block(k) - 1
    pairs = _usable_pairs(params, k)
    if not pairs or degree < 0:
        return
    dim = count_words(length, degree)
    if dim > budgets.max_component_dim:
        raise BudgetExceeded(
            f"component ({length}, {degree}) has dimension {dim} (budget "
            f"{budgets.max_component_dim})",
            component_dimension=dim,
        )
    for w in words_iter(length, degree):
        for p, q, pos_p, pos_q in pairs:
            if w[pos_p - 1] == w[pos_q - 1]:
                yield CollisionElement(k, "repeat", (w,), (p, q),
                                       (pos_p, pos_q), (w[pos_p - 1],))
                break
    for p, q, pos_p, pos_q in pairs:
        for hi in range(1, degree + 1):
            for lo in range(0, min(hi - 1, degree - hi) + 1):
                for rest in words_iter(length - 2, degree - hi - lo):
                    s1 = _splice(rest, length, {pos_p: hi, pos_q: lo})
                    s2 = _splice(rest, length, {pos_p: lo, pos_q: hi})
                    ws = tuple(sorted((s1, s2)))
                    yield CollisionElement(k, "swap", ws, (p, q),
                                           (pos_p, pos_q), (hi, lo))


# -- span queries and row enumeration ----------------------------------------

SPACES = ("words", "collisions", "collisions_sum", "ideal_level", "ideal")


@dataclass(frozen=True)
class SpanQuery:
    space: str
    length: int
    degree: int
    level: int | None = None

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValueError(f"unknown span space {self.space!r} (one of {SPACES})")
        if self.length < 1 or self.degree < 0:
            raise ValueError("component needs length >= 1 and degree >= 0")
        if self.space == "ideal":
            if self.level is not None:
                raise ValueError("the truncated ideal query takes no level")
        elif self.level is None or self.level < 1:
            raise ValueError(f"space {self.space!r} needs a level >= 1")


def _core_rows_alphabet(params, k, n, dw, l, cache):
    """Term dicts of D^l(w) for alphabet words w of length n and degree dw."""
    key = (k, n, dw, l)
    got = cache.get(key)
    if got is None:
        field = params.field
        got = []
        for w in words_iter(n, dw, max_letter=k - 1):
            p = derive_iter(FreePoly.monomial(field, w), l)
            if not p.is_zero():
                got.append(p.terms)
        cache[key] = got
    return got


def _rows_words_like(params, k, L, d, core_len, left_lengths, cache):
    """Rows u * D^l(w) * v with w an alphabet word of length core_len; the
    left factor length runs over left_lengths, the right factor fills up."""
    for len_u in left_lengths:
        len_v = L - core_len - len_u
        if len_v < 0:
            continue
        for du in range(d + 1):
            for l in range(d - du + 1):
                for dw in range(min(d - du - l, (k - 1) * core_len) + 1):
                    dv = d - du - l - dw
                    cores = _core_rows_alphabet(params, k, core_len, dw, l, cache)
                    if not cores:
                        continue
                    for u in words_iter(len_u, du):
                        for core in cores:
                            for v in words_iter(len_v, dv):
                                yield {u + cw + v: c for cw, c in core.items()}


def _rows_collisions(params, k, L, d, budgets):
    N = params.block(k)
    one = params.field.one
    zcache: dict[int, list[CollisionElement]] = {}
    m = 0
    while m * N + (N - 1) <= L:
        len_u = m * N
        len_v = L - len_u - (N - 1)
        for du in range(d + 1):
            for dz in range(d - du + 1):
                dv = d - du - dz
                zs = zcache.get(dz)
                if zs is None:
                    zs = list(collision_elements(params, k, dz, budgets))
                    zcache[dz] = zs
                if not zs:
                    continue
                for u in words_iter(len_u, du):
                    for z in zs:
                        for v in words_iter(len_v, dv):
                            yield {u + w + v: one for w in z.words}
        m += 1


def _dispatch_rows(params, query, budgets, cache):
    space, L, d, k = query.space, query.length, query.degree, query.level
    if space == "collisions":
        yield from _rows_collisions(params, k, L, d, budgets)
    elif space == "collisions_sum":
        for level in range(1, k + 1):
            yield from _rows_collisions(params, level, L, d, budgets)
    elif space == "words":
        N = params.block(k)
        lefts = [m * N for m in range(L // N + 1) if m * N + N <= L]
        yield from _rows_words_like(params, k, L, d, N, lefts, cache)
    elif space == "ideal_level":
        N2 = 2 * params.block(k)
        lefts = list(range(0, max(L - N2, -1) + 1))
        yield from _rows_words_like(params, k, L, d, N2, lefts, cache)
    else:  # ideal: every level whose block fits the length
        k = 1
        while True:
            N = params.base ** (k * k)
            if N > L:
                break
            N2 = 2 * N
            lefts = list(range(0, max(L - N2, -1) + 1))
            yield from _rows_words_like(params, k, L, d, N2, lefts, cache)
            k += 1


def span_rows(params: ConstructionParams, query: SpanQuery,
              budgets: Budgets = DEFAULT_BUDGETS, _cache: dict | None = None):
    """Deterministic enumeration of the spanning family of the queried space
    inside the component, as sparse word->scalar dicts."""
    dim = count_words(query.length, query.degree)
    if dim > budgets.max_component_dim:
        raise BudgetExceeded(
            f"component ({query.length}, {query.degree}) has dimension {dim} "
            f"(budget {budgets.max_component_dim})",
            component_dimension=dim,
        )
    cache = {} if _cache is None else _cache
    count = 0
    for row in _dispatch_rows(params, query, budgets, cache):
        count += 1
        if count > budgets.max_basis_size:
            raise BudgetExceeded(
                f"spanning family for {query} exceeds {budgets.max_basis_size} "
                f"rows (component dimension {dim})",
                component_dimension=dim,
            )
        yield row


def span_basis(params: ConstructionParams, query: SpanQuery,
               budgets: Budgets = DEFAULT_BUDGETS) -> list[FreePoly]:
    """The spanning family as polynomials (unreduced, possibly dependent)."""
    field = params.field
    return [FreePoly(field, row) for row in span_rows(params, query, budgets)]


# -- membership oracle --------------------------------------------------------


class SpanOracle:
    """Caches one echelon per span query and answers membership with
    re-verifiable certificates."""

    def __init__(self, params: ConstructionParams, budgets: Budgets = DEFAULT_BUDGETS):
        self.params = params
        self.budgets = budgets
        self._echelons: dict[SpanQuery, Echelon] = {}
        self._cores: dict = {}

    def echelon(self, query: SpanQuery) -> Echelon:
        ech = self._echelons.get(query)
        if ech is None:
            ech = Echelon(self.params.field, track_combinations=True,
                          max_rows=self.budgets.max_basis_size)
            # two passes with canonical indices: single-term rows claim their
            # pivots for free, after which longer rows reduce mostly against
            # trivial rows and elimination stays cheap
            multi = False
            for i, row in enumerate(span_rows(self.params, query,
                                              self.budgets, self._cores)):
                if len(row) == 1:
                    ech.insert(row, index=i)
                else:
                    multi = True
            if multi:
                for i, row in enumerate(span_rows(self.params, query,
                                                  self.budgets, self._cores)):
                    if len(row) > 1:
                        ech.insert(row, index=i)
            self._echelons[query] = ech
        return ech

    def _check_query_input(self, a: FreePoly, query: SpanQuery):
        if a.field != self.params.field:
            raise ValueError("query polynomial is over the wrong field")
        if a.is_zero():
            return True
        if a.bigrade() != (query.length, query.degree):
            raise ValueError(
                f"query polynomial is not homogeneous of component "
                f"({query.length}, {query.degree}): bigrade {a.bigrade()}"
            )
        return False

    def member(self, a: FreePoly, query: SpanQuery) -> MembershipCertificate:
        if self._check_query_input(a, query):
            return MembershipCertificate("member", combination=[])
        ech = self.echelon(query)
        combo = ech.member_combination(a.terms)
        if combo is not None:
            return MembershipCertificate("member", combination=combo)
        return MembershipCertificate("non_member", functional=ech.functional(a.terms))

    def normal_form(self, a: FreePoly, query: SpanQuery) -> FreePoly:
        if self._check_query_input(a, query):
            return FreePoly.zero(self.params.field)
        residue, _ = self.echelon(query).reduce(a.terms)
        return FreePoly(self.params.field, residue)

    def verify(self, a: FreePoly, query: SpanQuery,
               cert: MembershipCertificate) -> bool:
        """Re-check a certificate against the regenerated spanning family."""
        field = self.params.field
        if cert.kind == "member":
            needed = {idx for idx, _ in cert.combination}
            rows: dict[int, dict] = {}
            if needed:
                for i, row in enumerate(span_rows(self.params, query,
                                                  self.budgets, self._cores)):
                    if i in needed:
                        rows[i] = row
                        if len(rows) == len(needed):
                            break
                if len(rows) != len(needed):
                    return False
            return verify_member_combination(field, a.terms, cert.combination,
                                             rows.__getitem__)
        if cert.kind == "non_member":
            return verify_functional(
                field, a.terms, cert.functional,
                span_rows(self.params, query, self.budgets, self._cores))
        raise ValueError(f"unknown certificate kind {cert.kind!r}")

    def component_stats(self, query: SpanQuery) -> dict:
        ech = self.echelon(query)
        return {
            "component_dimension": count_words(query.length, query.degree),
            "family_size": ech.inserted,
            "rank": len(ech),
        }


# -- signed checkpoint reorder -------------------------------------------------


def _parity(seq: list[int]) -> int:
    """Inversion parity of a permutation of 0..n-1: +1 even, -1 odd."""
    inv = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv % 2 else 1


def signed_reorder_word(params: ConstructionParams, k: int, word: tuple):
    """The signed checkpoint-reorder image of one word of length N(k)-1.

    Reads the letters at the inner checkpoint positions c_1..c_{k+1}; when
    they form a permutation of the target letters x_{c_0}..x_{c_k}, the image
    is the word with those letters rewritten in target order, signed by the
    permutation's parity; otherwise the image is zero (returns None).
    """
    params.require_level(k)
    length = params.block(k) - 1
    if len(word) != length:
        raise ValueError(f"wrong length: expected {length}, got {len(word)}")
    cps = params.checkpoints(k)
    positions = cps[1 : k + 2]
    targets = tuple(cps[0 : k + 1])
    letters = tuple(word[p - 1] for p in positions)
    if sorted(letters) != sorted(targets):
        return None
    where = {t: i for i, t in enumerate(targets)}
    sign = _parity([where[l] for l in letters])
    out = list(word)
    for pos, t in zip(positions, targets):
        out[pos - 1] = t
    return sign, tuple(out)


def signed_reorder(params: ConstructionParams, k: int, a: FreePoly) -> FreePoly:
    """Linear extension of signed_reorder_word."""
    field = a.field
    items = []
    for w, c in a.terms.items():
        img = signed_reorder_word(params, k, w)
        if img is None:
            continue
        sign, w2 = img
        items.append((w2, c if sign > 0 else field.neg(c)))
    return FreePoly.from_terms(field, items)
