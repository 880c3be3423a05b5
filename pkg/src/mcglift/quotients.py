"""Finite quotient targets of surface groups and their homomorphism sets.

Targets are concrete permutation groups: S3 on 3 points, C2 on 2 points, A5
on 5 points, PSL2(F_p) on the p+1 points of the projective line, elementary
abelian 2-groups on paired points, and the trivial group.  A homomorphism
from the genus-g surface group is a 2g-tuple of target elements whose product
of commutators is the identity.

Enumeration splits off the last handle: the commutator map is tabulated once
per target, so a genus-g count costs |Q|^(2g-2) prefix tuples plus lookups
instead of |Q|^(2g) full tuples.  The independent check is the character
count |Hom| = |Q|^(2g-1) * sum over irreducible degrees d of d^(2-2g).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .perm import (
    EnumerationBoundExceeded,
    PermGroup,
    Permutation,
    mulclose,
    subgroup_witness,
)
from .words import surface_relator

DEFAULT_TUPLE_BUDGET = 10**8


class QuotientError(ValueError):
    pass


class RelatorViolation(QuotientError):
    """The proposed images do not kill the surface relator."""


class FiniteTarget:
    """A finite group realized by permutations, with deterministic element order.

    kind: one of "symmetric-3", "cyclic-2", "alternating-5", "psl2",
    "c2^k", "trivial".  `elements` is sorted by image tuples, which fixes
    element indices for enumeration order.  `character_degrees` is set for
    the targets whose irreducible degree lists the counting oracle knows.
    """

    def __init__(self, kind, param, elements, generators, name,
                 character_degrees=None, aut_rep_builder=None):
        self.kind = kind
        self.param = param
        self.elements = tuple(sorted(elements))
        self.generators = tuple(generators)
        self.name = name
        self.character_degrees = character_degrees
        self.degree = self.elements[0].degree
        self.order = len(self.elements)
        self.element_index = {p: i for i, p in enumerate(self.elements)}
        self.identity = Permutation.identity(self.degree)
        self._aut_rep_builder = aut_rep_builder
        self._aut_reps = None

    def aut_reps(self):
        """Permutations whose conjugation action realizes Aut(target)."""
        if self._aut_reps is None:
            if self._aut_rep_builder is None:
                raise QuotientError(
                    f"no automorphism realization stored for target {self.name}"
                )
            self._aut_reps = tuple(sorted(self._aut_rep_builder()))
        return self._aut_reps

    def __repr__(self):
        return f"FiniteTarget({self.name}, order={self.order})"


@lru_cache(maxsize=None)
def target_trivial():
    e = Permutation.identity(1)
    return FiniteTarget("trivial", None, [e], [], "1", character_degrees=(1,))


@lru_cache(maxsize=None)
def target_c2():
    flip = Permutation([1, 0])
    return FiniteTarget(
        "cyclic-2", None, [Permutation.identity(2), flip], [flip], "C2",
        character_degrees=(1, 1),
        aut_rep_builder=lambda: [Permutation.identity(2)],
    )


@lru_cache(maxsize=None)
def target_s3():
    gens = [Permutation([1, 0, 2]), Permutation([1, 2, 0])]
    elems = mulclose(gens, degree=3)
    assert len(elems) == 6
    return FiniteTarget(
        "symmetric-3", None, elems, gens, "S3",
        character_degrees=(1, 1, 2),
        aut_rep_builder=lambda: sorted(mulclose(gens, degree=3)),
    )


@lru_cache(maxsize=None)
def target_a5():
    gens = [Permutation([1, 2, 3, 4, 0]), Permutation([1, 2, 0, 3, 4])]
    elems = mulclose(gens, degree=5)
    assert len(elems) == 60
    return FiniteTarget(
        "alternating-5", None, elems, gens, "A5",
        character_degrees=(1, 3, 3, 4, 5),
        aut_rep_builder=lambda: sorted(
            mulclose(gens + [Permutation([1, 0, 2, 3, 4])], degree=5)
        ),
    )


@lru_cache(maxsize=None)
def target_c2k(k):
    """Elementary abelian C2^k on 2k points; basis vector i swaps 2i, 2i+1."""
    if not 1 <= k <= 20:
        raise QuotientError(f"c2^k supported for 1 <= k <= 20, got {k}")
    basis = []
    for i in range(k):
        images = list(range(2 * k))
        images[2 * i], images[2 * i + 1] = images[2 * i + 1], images[2 * i]
        basis.append(Permutation(images))
    elems = mulclose(basis, degree=2 * k, bound=2**21)
    return FiniteTarget(
        f"c2^{k}", k, elems, basis, f"C2^{k}",
        character_degrees=(1,) * (2**k),
    )


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _psl2_points(p):
    """Projective line over F_p: index x in 0..p-1 is [x:1], index p is [1:0]."""
    return p + 1


def psl2_matrix_perm(mat, p):
    """The permutation of P1(F_p) induced by a matrix [[a,b],[c,d]]."""
    a, b, c, d = (x % p for x in mat)
    if (a * d - b * c) % p == 0:
        raise QuotientError("singular matrix")
    images = []
    for x in range(p):
        num, den = (a * x + b) % p, (c * x + d) % p
        images.append((num * pow(den, -1, p)) % p if den else p)
    images.append((a * pow(c, -1, p)) % p if c else p)
    return Permutation(images)


def _smallest_nonsquare(p):
    squares = {pow(x, 2, p) for x in range(1, p)}
    for u in range(2, p):
        if u not in squares:
            return u
    raise QuotientError(f"no nonsquare mod {p}")


def _primitive_root(p):
    for u in range(2, p):
        x, n = u, 1
        while x != 1:
            x = x * u % p
            n += 1
        if n == p - 1:
            return u
    raise QuotientError(f"no primitive root mod {p}")


@lru_cache(maxsize=None)
def target_psl2(p):
    if not _is_prime(p) or p < 5:
        raise QuotientError(f"psl2 requires a prime p >= 5, got {p}")
    s = psl2_matrix_perm((0, -1, 1, 0), p)
    t = psl2_matrix_perm((1, 1, 0, 1), p)
    elems = mulclose([s, t], degree=p + 1, bound=2 * 10**6)
    expected = p * (p * p - 1) // 2
    assert len(elems) == expected, (len(elems), expected)

    def pgl_reps():
        u = _smallest_nonsquare(p)
        m = psl2_matrix_perm((u, 0, 0, 1), p)
        reps = mulclose([s, t, m], degree=p + 1, bound=4 * 10**6)
        assert len(reps) == p * (p * p - 1)
        return sorted(reps)

    return FiniteTarget(
        "psl2", p, elems, [s, t], f"PSL2({p})", aut_rep_builder=pgl_reps,
    )


def get_target(tag, prime=None):
    """Resolve a CLI-style target tag to a FiniteTarget."""
    if tag == "s3":
        return target_s3()
    if tag == "c2":
        return target_c2()
    if tag == "a5":
        return target_a5()
    if tag == "psl2":
        if prime is None:
            raise QuotientError("psl2 target needs a prime")
        return target_psl2(prime)
    raise QuotientError(f"unknown target {tag!r}")


class FiniteHom:
    """A homomorphism from the genus-g surface group to a finite target,
    recorded as the 2g-tuple of generator images."""

    __slots__ = ("target", "images", "_group")

    def __init__(self, target, images, validate=True):
        images = tuple(images)
        if len(images) % 2 or not images:
            raise QuotientError("images must be a 2g-tuple")
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_group", None)
        if validate:
            for img in images:
                if img not in target.element_index:
                    raise QuotientError("image is not a target element")
            if not self.relator_image().is_identity():
                raise RelatorViolation(
                    "generator images do not satisfy the surface relation"
                )

    def __setattr__(self, name, value):
        raise AttributeError("FiniteHom is immutable")

    @property
    def genus(self):
        return len(self.images) // 2

    def relator_image(self):
        return self.evaluate(surface_relator(self.genus))

    def evaluate(self, word):
        """Image of a word; letters multiply left to right."""
        result = self.target.identity
        images = self.images
        for letter in word:
            p = images[abs(letter) - 1]
            if letter < 0:
                p = p.inverse()
            result = result * p
        return result

    def image_group(self):
        if self._group is None:
            object.__setattr__(
                self, "_group",
                PermGroup(list(self.images), degree=self.target.degree),
            )
        return self._group

    def is_surjective(self):
        return self.image_group().order == self.target.order

    def key(self):
        return tuple(p.images for p in self.images)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteHom)
            and self.target is other.target
            and self.images == other.images
        )

    def __hash__(self):
        return hash((id(self.target), self.images))

    def __repr__(self):
        imgs = ", ".join(p.cycle_string() for p in self.images)
        return f"FiniteHom({self.target.name}; {imgs})"


def _commutator_index(target):
    """All ordered pairs grouped by commutator value, in index order."""
    elems = target.elements
    by_comm = {}
    pairs = []
    for x in elems:
        xi = x.inverse()
        for y in elems:
            c = x * y * xi * y.inverse()
            by_comm.setdefault(c, []).append((x, y))
            pairs.append((x, y, c))
    return pairs, by_comm


def enumerate_homs(genus, target, budget=DEFAULT_TUPLE_BUDGET):
    """All homomorphisms from the genus-g surface group to the target,
    ordered lexicographically by element indices."""
    if genus < 2:
        raise QuotientError(f"genus must be >= 2, got {genus}")
    if target.order ** (2 * genus) > budget:
        raise EnumerationBoundExceeded(
            f"{target.order}^{2 * genus} tuples exceed budget {budget}"
        )
    pairs, by_comm = _commutator_index(target)
    homs = []

    def descend(depth, prefix, product):
        if depth == genus - 1:
            tail = by_comm.get(product.inverse(), ())
            for x, y in tail:
                homs.append(FiniteHom(target, prefix + (x, y), validate=False))
            return
        for x, y, c in pairs:
            descend(depth + 1, prefix + (x, y), product * c)

    descend(0, (), target.identity)
    return homs


def enumerate_epis(genus, target, budget=DEFAULT_TUPLE_BUDGET):
    return [h for h in enumerate_homs(genus, target, budget) if h.is_surjective()]


def count_homs_oracle(genus, target):
    """|Hom| by the character-degree sum; independent of enumeration."""
    if genus < 2:
        raise QuotientError(f"genus must be >= 2, got {genus}")
    if target.character_degrees is None:
        raise QuotientError(
            f"target {target.name} has no stored character-degree list"
        )
    total = Fraction(0)
    for d in target.character_degrees:
        total += Fraction(1, d ** (2 * genus - 2))
    value = Fraction(target.order ** (2 * genus - 1)) * total
    if value.denominator != 1:
        raise QuotientError(
            f"character sum for {target.name} is not integral: {value}"
        )
    return int(value)


def borel_subgroup(p):
    """The upper-triangular (point-stabilizer) subgroup of PSL2(F_p), as a
    SubgroupWitness with exact index p+1 and order p(p-1)/2."""
    target = target_psl2(p)
    translation = psl2_matrix_perm((1, 1, 0, 1), p)
    u = _primitive_root(p)
    scaling = psl2_matrix_perm((u, 0, 0, pow(u, -1, p)), p)
    ambient = PermGroup(list(target.generators), degree=p + 1)
    sub = PermGroup([translation, scaling], degree=p + 1)
    expected = p * (p - 1) // 2
    if sub.order != expected:
        raise QuotientError(
            f"Borel subgroup order {sub.order}, expected {expected}"
        )
    witness = subgroup_witness(ambient, sub)
    assert witness.index == p + 1
    return witness


def mod2_homology_hom(genus):
    """The map onto C2^(2g) sending the i-th generator to the i-th basis
    vector; its kernel is the mod-2 homology cover subgroup."""
    if genus < 2:
        raise QuotientError(f"genus must be >= 2, got {genus}")
    target = target_c2k(2 * genus)
    return FiniteHom(target, target.generators)


def canonical_key(hom):
    return hom.key()


def canonical_rep_mod_auts(hom):
    """Lexicographically least target-conjugate of the hom under the stored
    automorphism realization; the representative of its Aut(target)-class."""
    best_key = None
    best_images = None
    for t in hom.target.aut_reps():
        ti = t.inverse()
        images = tuple(t * img * ti for img in hom.images)
        key = tuple(p.images for p in images)
        if best_key is None or key < best_key:
            best_key, best_images = key, images
    return FiniteHom(hom.target, best_images, validate=False)
