"""Exact sparse linear algebra for span membership over words.

Vectors are dicts from word to nonzero scalar.  An Echelon holds an
incrementally built row-echelon family: each stored row is normalized so its
smallest word (by length, then lexicographic order) has coefficient one, and
that word is the row's pivot.  No back-substitution is performed; reduction
eliminates pivots in increasing word order with a heap, which is safe because
eliminating a pivot only introduces words larger than it.

Combination tracking is lazy: each pivot row remembers only which earlier
pivots its reduction used, and combinations over the original insertion
indices are expanded (and memoized) when a certificate is actually requested.
Bulk insertion therefore costs no more than the elimination itself.

Membership answers come with checkable certificates: a member is an explicit
combination of the inserted vectors, a non-member a finite linear functional
that kills every inserted vector but not the query.  Verification redoes the
arithmetic directly and never trusts the elimination.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .budgets import BudgetExceeded
from .freealg import word_key

__all__ = [
    "Echelon",
    "MembershipCertificate",
    "verify_member_combination",
    "verify_functional",
]


@dataclass
class MembershipCertificate:
    """Evidence for a membership verdict, checkable without the echelon.

    kind "member": combination holds (index, coeff) pairs over the inserted
    vectors, indices in insertion order.  kind "non_member": functional maps
    words to scalars; it must vanish on every inserted vector and take the
    value one on the query.
    """

    kind: str
    combination: list[tuple[int, object]] | None = None
    functional: dict[tuple, object] | None = None


def add_into(field, target: dict, src: dict, c):
    """target += c * src in place, dropping cancelled entries."""
    fadd, fmul = field.add, field.mul
    for w, v in src.items():
        cv = fmul(c, v)
        if not cv:
            continue
        cur = target.get(w)
        nv = cv if cur is None else fadd(cur, cv)
        if nv:
            target[w] = nv
        else:
            del target[w]


class Echelon:
    def __init__(self, field, track_combinations: bool = True, max_rows: int | None = None):
        self.field = field
        self.rows: dict[tuple, dict] = {}  # pivot word -> normalized row
        # pivot -> (original index, normalizing scalar, pivots its reduction used)
        self.history: dict[tuple, tuple[int, object, dict]] = {}
        self._flat_cache: dict[tuple, dict[int, object]] = {}
        self.track = track_combinations
        self.max_rows = max_rows
        self.inserted = 0  # one past the largest original index seen

    def __len__(self) -> int:
        return len(self.rows)

    def pivots(self) -> list[tuple]:
        return sorted(self.rows, key=word_key)

    def _reduce(self, vec: dict, want_used: bool):
        """Residue of vec and the pivot multiples subtracted to reach it."""
        field = self.field
        fsub, fmul = field.sub, field.mul
        vec = {w: v for w, v in vec.items() if v}
        used: dict[tuple, object] = {}
        heap = [(word_key(w), w) for w in vec]
        heapq.heapify(heap)
        rows = self.rows
        while heap:
            _, w = heapq.heappop(heap)
            c = vec.get(w)
            if not c:
                continue
            row = rows.get(w)
            if row is None:
                continue
            del vec[w]
            for m, v in row.items():
                if m == w:
                    continue
                cv = fmul(c, v)
                if not cv:
                    continue
                cur = vec.get(m)
                if cur is None:
                    vec[m] = field.neg(cv)
                    heapq.heappush(heap, (word_key(m), m))
                else:
                    nv = fsub(cur, cv)
                    if nv:
                        vec[m] = nv
                    else:
                        del vec[m]
            if want_used:
                used[w] = c
        return vec, used

    def reduce(self, vec: dict) -> tuple[dict, dict[tuple, object]]:
        """Residue of vec modulo the current rows, plus the multiple of each
        pivot row that was subtracted along the way."""
        return self._reduce(vec, True)

    def insert(self, vec: dict, index: int | None = None) -> tuple | None:
        """Add a vector to the family.  Returns the new pivot word, or None
        when the vector was already in the span.

        The certificate index defaults to a running counter; passing it
        explicitly lets callers insert out of enumeration order (for example
        single-term rows first) while keeping canonical indices.
        """
        idx = self.inserted if index is None else index
        self.inserted = max(self.inserted, idx + 1)
        residue, used = self._reduce(vec, self.track)
        if not residue:
            return None
        if self.max_rows is not None and len(self.rows) >= self.max_rows:
            raise BudgetExceeded(
                f"echelon exceeds {self.max_rows} rows", max_basis_size=self.max_rows
            )
        field = self.field
        pivot = min(residue, key=word_key)
        inv = field.inv(residue[pivot])
        fmul = field.mul
        self.rows[pivot] = {w: fmul(inv, v) for w, v in residue.items()}
        if self.track:
            self.history[pivot] = (idx, inv, used)
        return pivot

    def _flat(self, pivot: tuple) -> dict[int, object]:
        """Combination of original vectors equal to the stored pivot row,
        expanded through the elimination history and memoized."""
        cache = self._flat_cache
        if pivot in cache:
            return cache[pivot]
        field = self.field
        stack = [pivot]
        while stack:
            p = stack[-1]
            if p in cache:
                stack.pop()
                continue
            idx, inv, used = self.history[p]
            missing = [q for q in used if q not in cache]
            if missing:
                stack.extend(missing)
                continue
            # rows[p] = inv * (original idx - sum used[q] * rows[q])
            flat = {idx: inv}
            for q, c in used.items():
                scale = field.neg(field.mul(inv, c))
                if scale:
                    add_into(field, flat, cache[q], scale)
            cache[p] = flat
            stack.pop()
        return cache[pivot]

    def contains(self, vec: dict) -> bool:
        residue, _ = self._reduce(vec, False)
        return not residue

    def member_combination(self, vec: dict) -> list[tuple[int, object]] | None:
        """Combination of inserted vectors equal to vec, or None if outside
        the span.  Requires combination tracking."""
        if not self.track:
            raise ValueError("echelon was built without combination tracking")
        residue, used = self._reduce(vec, True)
        if residue:
            return None
        field = self.field
        combo: dict[int, object] = {}
        for p, c in used.items():
            add_into(field, combo, self._flat(p), c)
        return sorted(combo.items())

    def functional(self, vec: dict) -> dict[tuple, object] | None:
        """Linear functional vanishing on every inserted vector with value one
        on vec, or None when vec lies in the span.

        Values are fixed on non-pivot words first (one on the residue's
        smallest word after normalization, zero elsewhere), then each pivot's
        value is forced by its own row, solved in descending pivot order so
        every later word is already known.
        """
        residue, _ = self._reduce(vec, False)
        if not residue:
            return None
        field = self.field
        fadd, fmul = field.add, field.mul
        marked = min(residue, key=word_key)
        y: dict[tuple, object] = {marked: field.inv(residue[marked])}
        for pivot in sorted(self.rows, key=word_key, reverse=True):
            row = self.rows[pivot]
            acc = field.zero
            for w, c in row.items():
                if w == pivot:
                    continue
                val = y.get(w)
                if val:
                    acc = fadd(acc, fmul(c, val))
            if acc:
                y[pivot] = field.neg(acc)
        return y


def verify_member_combination(field, query: dict, combination, vector_at) -> bool:
    """Check query == sum of coeff * vector_at(index) by direct arithmetic."""
    acc: dict = {}
    for idx, coeff in combination:
        add_into(field, acc, vector_at(idx), coeff)
    if len(acc) != len(query):
        return False
    return all(acc.get(w) == v for w, v in query.items())


def apply_functional(field, functional: dict, vec: dict):
    acc = field.zero
    fadd, fmul = field.add, field.mul
    for w, v in vec.items():
        c = functional.get(w)
        if c:
            acc = fadd(acc, fmul(c, v))
    return acc


def verify_functional(field, query: dict, functional: dict, vectors) -> bool:
    """Check the functional kills every vector in the iterable and evaluates
    to one on the query."""
    if apply_functional(field, functional, query) != field.one:
        return False
    return all(not apply_functional(field, functional, vec) for vec in vectors)
