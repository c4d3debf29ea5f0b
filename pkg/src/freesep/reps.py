"""Representation builders: the regular representation of a finite group,
the block representation of G x H on the direct sum of the two group
algebras, and its lift to the free product over Q(t).

The lift fixes the images of G to the first-factor blocks and conjugates
the images of H by an invertible matrix C(t) that mixes the blocks.
Injectivity of the lift is verified exactly on every nonempty reduced
word up to a configured length; a collision raises FaithfulnessError so
callers can retry with a different conjugator.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from ._modmat import identity_flat, mul_flat
from .errors import FaithfulnessError, ValidationError
from .exactarith import QQ, QT, Matrix, Poly, RatFunc, is_prime, poly_lcm
from .groups import FiniteGroup, Word

ALL_ONES_SPEC = "all-ones"

#: entry range for pseudorandom integer conjugators I + t*R
_RANDOM_ENTRY_BOUND = 3


@dataclass(frozen=True, slots=True)
class RegularRep:
    """Left-multiplication permutation matrices on the element basis."""

    group: FiniteGroup
    dim: int
    images: tuple[Matrix, ...]


@dataclass(frozen=True, slots=True)
class ProductRep:
    """Block representation of G x H on Q[G] (+) Q[H], dimension |G|+|H|."""

    G: FiniteGroup
    H: FiniteGroup
    dim: int
    images_g: tuple[Matrix, ...]
    images_h: tuple[Matrix, ...]


class Cleared(NamedTuple):
    """A matrix over Q(t) stored as polynomial numerators over one denominator."""

    nums: tuple[tuple[Poly, ...], ...]
    den: Poly


@dataclass(frozen=True, slots=True, eq=False)
class FunctionFieldRep:
    """Syllable-to-matrix map for words in G * H over Q(t).

    images_g are constant block matrices; images_h are the second-factor
    blocks conjugated by `conjugator`. cleared_g/cleared_h memoize the
    common-denominator polynomial form of each syllable image, which is
    what word evaluation multiplies. verified_length records how far the
    injectivity harness checked.
    """

    G: FiniteGroup
    H: FiniteGroup
    dim: int
    conjugator_spec: str
    conjugator: Matrix
    images_g: tuple[Matrix, ...]
    images_h: tuple[Matrix, ...]
    cleared_g: tuple[Cleared, ...]
    cleared_h: tuple[Cleared, ...]
    verified_length: int

    def syllable_image(self, side: str, index: int) -> Matrix:
        return self.images_g[index] if side == "G" else self.images_h[index]

    def syllable_cleared(self, side: str, index: int) -> Cleared:
        return self.cleared_g[index] if side == "G" else self.cleared_h[index]


def build_regular_rep(G: FiniteGroup) -> RegularRep:
    """Permutation matrix of left multiplication for every element."""
    n = G.order
    zero, one = Fraction(0), Fraction(1)
    images = []
    for x in range(n):
        cols = [G.mul(x, j) for j in range(n)]  # x * basis_j = basis_{x*j}
        entries = [zero] * (n * n)
        for j, img in enumerate(cols):
            entries[img * n + j] = one
        images.append(Matrix(QQ, n, n, tuple(entries)))
    return RegularRep(group=G, dim=n, images=tuple(images))


def _embed_block(small: Matrix, n: int, offset: int) -> Matrix:
    """Place `small` on the diagonal of an n x n identity at `offset`."""
    zero, one = Fraction(0), Fraction(1)
    entries = [one if i == j else zero for i in range(n) for j in range(n)]
    k = small.rows
    for i in range(k):
        for j in range(k):
            entries[(offset + i) * n + (offset + j)] = small[i, j]
    return Matrix(QQ, n, n, tuple(entries))


def build_product_rep(G: FiniteGroup, H: FiniteGroup) -> ProductRep:
    """Faithful block representation of G x H; requires nontrivial factors."""
    if G.order < 2 or H.order < 2:
        raise ValidationError("both factor groups must be non-trivial")
    lam_g = build_regular_rep(G)
    lam_h = build_regular_rep(H)
    n = G.order + H.order
    images_g = tuple(_embed_block(m, n, 0) for m in lam_g.images)
    images_h = tuple(_embed_block(m, n, G.order) for m in lam_h.images)
    if len(set(images_g)) != G.order or len(set(images_h)) != H.order:
        raise ValidationError("block representation failed to separate elements")
    return ProductRep(G=G, H=H, dim=n, images_g=images_g, images_h=images_h)


def conjugator_matrix(spec: str, n: int) -> Matrix:
    """Matrix over Q(t) for a conjugator spec: 'all-ones' or 'random:<seed>'.

    'all-ones' is I + t*E with E the all-ones matrix; 'random:<seed>' is
    I + t*R for a seeded integer matrix R. Both have det with constant
    term 1, hence are invertible over Q(t).
    """
    t = RatFunc(Poly((0, 1)))
    one, zero = RatFunc(1), RatFunc()
    if spec == ALL_ONES_SPEC:
        entries = [
            (one + t) if i == j else t
            for i in range(n)
            for j in range(n)
        ]
        return Matrix(QT, n, n, tuple(entries))
    if spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError:
            raise ValidationError(f"bad conjugator seed in {spec!r}") from None
        rng = random.Random(seed)
        entries = []
        for i in range(n):
            for j in range(n):
                r = rng.randint(-_RANDOM_ENTRY_BOUND, _RANDOM_ENTRY_BOUND)
                base = one if i == j else zero
                entries.append(base + RatFunc(Poly((0, r))) if r else base)
        return Matrix(QT, n, n, tuple(entries))
    raise ValidationError(f"unknown conjugator spec {spec!r} (want 'all-ones' or 'random:<seed>')")


def _to_function_field(m: Matrix) -> Matrix:
    return m.map_entries(lambda c: RatFunc(Poly((c,))), QT)


def _clear_denominators(m: Matrix) -> Cleared:
    dens = [e.den for e in m.entries if e.den.degree > 0]
    if not dens:
        den = Poly((1,))
    else:
        den = dens[0]
        for d in dens[1:]:
            den = poly_lcm(den, d)
    rows = []
    for i in range(m.rows):
        row = []
        for j in range(m.cols):
            e = m[i, j]
            row.append(e.num * (den // e.den))
        rows.append(tuple(row))
    return Cleared(nums=tuple(rows), den=den)


def _cleared_identity(n: int) -> Cleared:
    one, zero = Poly((1,)), Poly()
    return Cleared(
        nums=tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
        den=Poly((1,)),
    )


def _cleared_mul(a: Cleared, b: Cleared) -> Cleared:
    n = len(a.nums)
    bt = tuple(tuple(b.nums[l][j] for l in range(n)) for j in range(n))  # columns of b
    rows = []
    for arow in a.nums:
        row = []
        for bcol in bt:
            acc = Poly()
            for x, y in zip(arow, bcol):
                if x.coeffs and y.coeffs:
                    acc = acc + x * y
            row.append(acc)
        rows.append(tuple(row))
    return Cleared(nums=tuple(rows), den=a.den * b.den)


def _cleared_to_matrix(c: Cleared) -> Matrix:
    n = len(c.nums)
    return Matrix(QT, n, n, tuple(RatFunc(num, c.den) for row in c.nums for num in row))


def _check_factor_homomorphism(group: FiniteGroup, cleared: tuple[Cleared, ...], side: str):
    # image(x)*image(y) == image(x*y), compared by cross-multiplying
    # denominators so no rational-function normalization is needed
    for x in range(group.order):
        cx = cleared[x]
        for y in range(group.order):
            prod = _cleared_mul(cx, cleared[y])
            target = cleared[group.mul(x, y)]
            for prow, trow in zip(prod.nums, target.nums):
                for pnum, tnum in zip(prow, trow):
                    if pnum * target.den != tnum * prod.den:
                        raise ValidationError(
                            f"factor {side} images are not homomorphic at "
                            f"({group.labels[x]}, {group.labels[y]})"
                        )


def _check_syllable_dets(images: tuple[Matrix, ...], side: str):
    one = RatFunc(1)
    for idx, m in enumerate(images):
        d = m.det()
        if d != one and d != -one:
            raise ValidationError(f"det of {side}-syllable image {idx} is {d!r}, not +1 or -1")


class _Screen(NamedTuple):
    """Modular screen for the injectivity harness: syllable images mod q."""

    s: int
    q: int
    images: dict[tuple[str, int], tuple[int, ...]]
    rational: dict[tuple[str, int], Matrix]


def _build_screen(rep: "FunctionFieldRep") -> _Screen:
    n = rep.dim
    syllables = [("G", el.index) for el in rep.G.nonidentity_elements()]
    syllables += [("H", el.index) for el in rep.H.nonidentity_elements()]
    dens = {rep.syllable_cleared(side, idx).den for side, idx in syllables}
    s = 1
    while any(not d.eval(s) for d in dens):
        s += 1
    rational = {}
    den_lcm = 1
    for side, idx in syllables:
        m = rep.syllable_image(side, idx).map_entries(lambda e: e.eval(s), QQ)
        rational[(side, idx)] = m
        for e in m.entries:
            den_lcm = math.lcm(den_lcm, e.denominator)
    q = 2
    while den_lcm % q == 0 or not is_prime(q):
        q += 1
    images = {}
    for key, m in rational.items():
        images[key] = tuple(
            e.numerator * pow(e.denominator, -1, q) % q for e in m.entries
        )
    return _Screen(s=s, q=q, images=images, rational=rational)


def _confirm_identity_exactly(rep, path, screen) -> bool:
    """True when the word along `path` really maps to the identity over Q(t)."""
    acc = Matrix.identity(QQ, rep.dim)
    for key in path:
        acc = acc * screen.rational[key]
    if not acc.is_identity():
        return False
    sym = _cleared_identity(rep.dim)
    for side, idx in path:
        sym = _cleared_mul(sym, rep.syllable_cleared(side, idx))
    return _cleared_to_matrix(sym).is_identity()


def _verify_injectivity(rep: "FunctionFieldRep", verify_len: int):
    """Check rho(w) != I for every nonempty reduced word with <= verify_len syllables.

    Words are screened by a single modular specialization; a word whose
    screen image is the identity is re-checked exactly over Q, then over
    Q(t), before being reported as a genuine collision.
    """
    screen = _build_screen(rep)
    n = rep.dim
    eye = identity_flat(n)
    pool = {
        "G": [("G", el.index) for el in rep.G.nonidentity_elements()],
        "H": [("H", el.index) for el in rep.H.nonidentity_elements()],
    }

    def descend(side: str, product: tuple[int, ...], path: list):
        for key in pool[side]:
            path.append(key)
            prod = mul_flat(product, screen.images[key], n, screen.q)
            if prod == eye and _confirm_identity_exactly(rep, path, screen):
                word = Word.__new__(Word)
                word.syllables = tuple(
                    (sd, rep.G.element(ix) if sd == "G" else rep.H.element(ix))
                    for sd, ix in path
                )
                raise FaithfulnessError(
                    f"representation collision: word of length {len(path)} maps to the identity",
                    word=word,
                )
            if len(path) < verify_len:
                descend("H" if side == "G" else "G", prod, path)
            path.pop()

    start = identity_flat(n)
    descend("G", start, [])
    descend("H", start, [])


def build_function_field_rep(
    G: FiniteGroup,
    H: FiniteGroup,
    conjugator_spec: str = ALL_ONES_SPEC,
    verify_len: int = 6,
) -> FunctionFieldRep:
    """Lift the block representation of G x H to G * H over Q(t).

    The G images stay the constant first-factor blocks; the H images are
    conjugated by the spec'd C(t). Injectivity is verified exactly for
    every nonempty reduced word of length <= verify_len; a collision
    raises FaithfulnessError carrying the offending word.
    """
    if verify_len < 2:
        raise ValidationError("verify_len must be at least 2")
    prod = build_product_rep(G, H)
    n = prod.dim
    conj = conjugator_matrix(conjugator_spec, n)
    conj_inv = conj.inverse(role="conjugator")
    images_g = tuple(_to_function_field(m) for m in prod.images_g)
    images_h = tuple(conj * _to_function_field(m) * conj_inv for m in prod.images_h)

    cleared_g = tuple(_clear_denominators(m) for m in images_g)
    cleared_h = tuple(_clear_denominators(m) for m in images_h)
    _check_factor_homomorphism(G, cleared_g, "G")
    _check_factor_homomorphism(H, cleared_h, "H")
    _check_syllable_dets(images_g, "G")
    _check_syllable_dets(images_h, "H")

    rep = FunctionFieldRep(
        G=G,
        H=H,
        dim=n,
        conjugator_spec=conjugator_spec,
        conjugator=conj,
        images_g=images_g,
        images_h=images_h,
        cleared_g=cleared_g,
        cleared_h=cleared_h,
        verified_length=verify_len,
    )
    _verify_injectivity(rep, verify_len)
    return rep


def _check_word_groups(rep: FunctionFieldRep, w: Word):
    for side, el in w.syllables:
        expected = rep.G if side == "G" else rep.H
        if el.group is not expected:
            raise ValidationError("word uses elements from groups other than the rep's factors")


def rep_apply_cleared(rep: FunctionFieldRep, w: Word) -> Cleared:
    _check_word_groups(rep, w)
    acc = _cleared_identity(rep.dim)
    for side, el in w.syllables:
        acc = _cleared_mul(acc, rep.syllable_cleared(side, el.index))
    return acc


def rep_apply(rep: FunctionFieldRep, w: Word) -> Matrix:
    """Image of a reduced word: the product of memoized syllable images."""
    return _cleared_to_matrix(rep_apply_cleared(rep, w))
