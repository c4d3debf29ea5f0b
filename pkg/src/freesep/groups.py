"""Finite groups as validated Cayley tables, plus the free-product word
engine with reduced normal forms.

A group is nominal: two structurally identical tables are distinct factor
objects, so the two sides of a free product stay separate even when G and
H are isomorphic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ValidationError


class FiniteGroup:
    """A finite group given by element labels and a Cayley table of indices.

    table[i][j] is the index of x_i * x_j. Construction validates the
    Latin square property, a two-sided identity, two-sided inverses and
    (unless the table is associative by construction) all n^3 triples.
    """

    __slots__ = ("labels", "table", "order", "identity", "name", "_inv", "_index")

    def __init__(self, labels, table, name="", _assume_associative=False):
        labels = tuple(str(l) for l in labels)
        n = len(labels)
        if n == 0:
            raise ValidationError("a group needs at least one element")
        if len(set(labels)) != n:
            raise ValidationError("element labels must be unique")
        table = tuple(tuple(row) for row in table)
        if len(table) != n or any(len(row) != n for row in table):
            raise ValidationError(f"Cayley table must be {n}x{n}")
        full = frozenset(range(n))
        for i, row in enumerate(table):
            if not all(isinstance(v, int) and 0 <= v < n for v in row):
                raise ValidationError(f"row {i} contains an out-of-range index")
        for i in range(n):
            if frozenset(table[i]) != full:
                raise ValidationError(f"not a Latin square: row {i} repeats an element")
            if frozenset(table[j][i] for j in range(n)) != full:
                raise ValidationError(f"not a Latin square: column {i} repeats an element")

        identity = next(
            (e for e in range(n)
             if all(table[e][j] == j and table[j][e] == j for j in range(n))),
            None,
        )
        if identity is None:
            raise ValidationError("no two-sided identity element")

        inv = [None] * n
        for i in range(n):
            j = table[i].index(identity)
            if table[j][i] != identity:
                raise ValidationError(f"element {labels[i]} has no two-sided inverse")
            inv[i] = j

        if not _assume_associative:
            for a in range(n):
                ra = table[a]
                for b in range(n):
                    ab = ra[b]
                    rb = table[b]
                    rab = table[ab]
                    for c in range(n):
                        if rab[c] != ra[rb[c]]:
                            raise ValidationError(
                                f"not associative at ({labels[a]}, {labels[b]}, {labels[c]})"
                            )

        self.labels = labels
        self.table = table
        self.order = n
        self.identity = identity
        self.name = name or f"group<{n}>"
        self._inv = tuple(inv)
        self._index = {label: i for i, label in enumerate(labels)}

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValidationError(f"no element labeled {label!r} in {self.name}") from None

    def element(self, ref) -> "GroupElement":
        """Element by index or by label."""
        if isinstance(ref, str):
            ref = self.index_of(ref)
        return GroupElement(self, ref)

    def elements(self):
        return (GroupElement(self, i) for i in range(self.order))

    def identity_element(self) -> "GroupElement":
        return GroupElement(self, self.identity)

    def nonidentity_elements(self):
        return (GroupElement(self, i) for i in range(self.order) if i != self.identity)

    def to_json_dict(self) -> dict:
        return {"labels": list(self.labels), "table": [list(r) for r in self.table]}

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True, slots=True)
class GroupElement:
    """An element of a specific FiniteGroup, referenced by index."""

    group: FiniteGroup
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise ValidationError(f"element index {self.index} out of range")

    @property
    def label(self) -> str:
        return self.group.labels[self.index]

    @property
    def is_identity(self) -> bool:
        return self.index == self.group.identity

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.group is not self.group:
            raise ValidationError("cannot multiply elements of different groups")
        return GroupElement(self.group, self.group.table[self.index][other.index])

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, self.group.inv(self.index))

    def __repr__(self):
        return f"{self.group.name}:{self.label}"


def element_order(x: GroupElement) -> int:
    """Least k >= 1 with x^k = identity."""
    e = x.group.identity
    k, cur = 1, x.index
    while cur != e:
        cur = x.group.table[cur][x.index]
        k += 1
    return k


def group_from_table(labels, table, name="") -> FiniteGroup:
    """Build and fully validate a group from an explicit Cayley table."""
    return FiniteGroup(labels, table, name=name)


def _cycle_label(perm: tuple[int, ...]) -> str:
    """Disjoint-cycle notation on 1-based points; 'e' for the identity."""
    n = len(perm)
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = []
        p = start
        while not seen[p]:
            seen[p] = True
            cyc.append(p + 1)
            p = perm[p]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "e"


def group_from_permutations(generators, cap: int = 10000, name="") -> FiniteGroup:
    """Group generated by permutations in 1-based one-line image notation.

    Closure is breadth-first, so element order is deterministic. Raises
    ValidationError when the closure exceeds `cap`.
    """
    gens = []
    degree = 1
    for g in generators:
        g = tuple(int(v) for v in g)
        if sorted(g) != list(range(1, len(g) + 1)):
            raise ValidationError(f"{list(g)} is not a permutation in one-line notation")
        degree = max(degree, len(g))
        gens.append(g)
    # pad all permutations to a common degree, convert to 0-based images
    gens = [tuple(v - 1 for v in g) + tuple(range(len(g), degree)) for g in gens]

    ident = tuple(range(degree))
    order = {ident: 0}
    elems = [ident]
    queue = [ident]
    while queue:
        cur = queue.pop(0)
        for g in gens:
            nxt = tuple(cur[g[i]] for i in range(degree))  # cur o g: apply g first
            if nxt not in order:
                if len(elems) >= cap:
                    raise ValidationError(f"permutation closure exceeds cap of {cap} elements")
                order[nxt] = len(elems)
                elems.append(nxt)
                queue.append(nxt)

    table = [
        [order[tuple(a[b[i]] for i in range(degree))] for b in elems]
        for a in elems
    ]
    labels = [_cycle_label(p) for p in elems]
    return FiniteGroup(labels, table, name=name, _assume_associative=True)


def cyclic_group(n: int, gen_label: str = "g", name="") -> FiniteGroup:
    if n < 1:
        raise ValidationError("cyclic group order must be positive")
    labels = ["e"] + [gen_label if k == 1 else f"{gen_label}{k}" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(labels, table, name=name or f"Z{n}", _assume_associative=True)


def direct_product(G: FiniteGroup, H: FiniteGroup, name="") -> FiniteGroup:
    """Componentwise product of order |G|*|H|."""
    labels = [f"({a},{b})" for a in G.labels for b in H.labels]
    nH = H.order
    table = [
        [G.table[i1][j1] * nH + H.table[i2][j2]
         for j1 in range(G.order) for j2 in range(nH)]
        for i1 in range(G.order) for i2 in range(nH)
    ]
    return FiniteGroup(
        labels, table,
        name=name or f"{G.name}x{H.name}",
        _assume_associative=True,
    )


def group_from_json_dict(doc: dict, name="") -> FiniteGroup:
    """Parse the group input schema: labels+table, or permutation generators."""
    if not isinstance(doc, dict):
        raise ValidationError("group document must be a JSON object")
    if "permutations" in doc:
        return group_from_permutations(doc["permutations"], name=name)
    if "labels" in doc and "table" in doc:
        return group_from_table(doc["labels"], doc["table"], name=name)
    raise ValidationError('group document needs "labels"+"table" or "permutations"')


# -- free product words -------------------------------------------------------

SIDES = ("G", "H")


class Word:
    """A reduced alternating word in the free product of two groups.

    Syllables are (side, element) pairs with side "G" or "H"; raw input is
    normalized at construction: identity syllables are deleted and adjacent
    same-side syllables are multiplied inside their factor, cascading until
    the word is reduced. The empty word is the identity.
    """

    __slots__ = ("syllables",)

    def __init__(self, raw=()):
        out: list[tuple[str, GroupElement]] = []
        sides: dict[str, FiniteGroup] = {}
        for side, el in raw:
            if side not in SIDES:
                raise ValidationError(f"syllable side must be 'G' or 'H', got {side!r}")
            if not isinstance(el, GroupElement):
                raise ValidationError("syllable element must be a GroupElement")
            bound = sides.setdefault(side, el.group)
            if bound is not el.group:
                raise ValidationError(f"side {side} mixes elements of different groups")
            if el.is_identity:
                continue
            if out and out[-1][0] == side:
                merged = out.pop()[1] * el
                if not merged.is_identity:
                    out.append((side, merged))
            else:
                out.append((side, el))
        self.syllables = tuple(out)

    @property
    def length(self) -> int:
        return len(self.syllables)

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.syllables == other.syllables

    def __hash__(self):
        return hash(self.syllables)

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((side, el.inverse()) for side, el in reversed(self.syllables)))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Word()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def to_json_list(self) -> list:
        return [{"side": side, "element": el.label} for side, el in self.syllables]

    def __repr__(self):
        if not self.syllables:
            return "Word(<empty>)"
        return "Word(" + " ".join(f"{side}:{el.label}" for side, el in self.syllables) + ")"


def word_normalize(raw) -> Word:
    return Word(raw)


def word_mul(a: Word, b: Word) -> Word:
    return a * b


def word_inv(a: Word) -> Word:
    return a.inverse()


def word_pow(a: Word, k: int) -> Word:
    if k < 0:
        raise ValidationError("word_pow expects a nonnegative exponent")
    return a**k


def word_from_json_list(doc, G: FiniteGroup, H: FiniteGroup) -> Word:
    """Parse [{"side": "G"|"H", "element": label}, ...] against the two factors."""
    if not isinstance(doc, list):
        raise ValidationError("word document must be a JSON array of syllables")
    raw = []
    for syl in doc:
        if not isinstance(syl, dict) or "side" not in syl or "element" not in syl:
            raise ValidationError('each syllable needs "side" and "element"')
        side = syl["side"]
        if side == "G":
            raw.append((side, G.element(str(syl["element"]))))
        elif side == "H":
            raw.append((side, H.element(str(syl["element"]))))
        else:
            raise ValidationError(f"syllable side must be 'G' or 'H', got {side!r}")
    return Word(raw)


def enumerate_reduced_words(G: FiniteGroup, H: FiniteGroup, max_len: int):
    """Yield every reduced word of syllable length <= max_len exactly once."""
    if max_len < 0:
        raise ValidationError("max_len must be nonnegative")
    yield Word()
    pools = {
        "G": tuple(G.nonidentity_elements()),
        "H": tuple(H.nonidentity_elements()),
    }
    for length in range(1, max_len + 1):
        for start in SIDES:
            side_seq = [start if i % 2 == 0 else ("H" if start == "G" else "G")
                        for i in range(length)]
            for combo in itertools.product(*(pools[s] for s in side_seq)):
                w = Word.__new__(Word)
                w.syllables = tuple(zip(side_seq, combo))
                yield w


def count_reduced_words(G: FiniteGroup, H: FiniteGroup, max_len: int) -> int:
    """Closed-form count of reduced words of length <= max_len."""
    a, b = G.order - 1, H.order - 1
    total = 1
    for length in range(1, max_len + 1):
        ng = (length + 1) // 2
        total += a**ng * b ** (length - ng) + b**ng * a ** (length - ng)
    return total
