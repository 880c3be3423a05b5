"""Automorphisms of the surface group acting on finite-quotient homomorphisms.

An automorphism is stored by its images of the 2g standard generators, as
free words.  The standard generating set combines twist-type substitutions
along the handle curves, one twist along the separating-adjacent curve of
each consecutive handle pair, an orientation-type flip, and conjugations by
each generator.  Each generator carries an explicit inverse; compositions
are verified modulo the surface relation, not just freely.

Orbits of homomorphisms under precomposition are finite and computed by
breadth-first closure.  Closure of a member set under every generator (and
inverse) is exactly what makes the intersection of the member kernels
invariant under those automorphisms; `certify_characteristic` records the
induced index permutations as evidence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .perm import EnumerationBoundExceeded
from .quotients import FiniteHom, canonical_rep_mod_auts
from .words import (
    SurfacePresentation,
    format_word,
    free_reduce,
    inverse_word,
    surface_relator,
)

DEFAULT_ORBIT_CAP = 200000


class AutError(ValueError):
    pass


class SurfaceAuto:
    """An endomorphism of the rank-2g free group, recorded by generator
    images, intended to descend to the genus-g surface group."""

    __slots__ = ("genus", "images", "name")

    def __init__(self, genus, images, name=""):
        images = tuple(tuple(w) for w in images)
        if len(images) != 2 * genus:
            raise AutError(f"need {2 * genus} image words, got {len(images)}")
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("SurfaceAuto is immutable")

    def apply_letter(self, letter):
        if letter > 0:
            return self.images[letter - 1]
        return inverse_word(self.images[-letter - 1])

    def apply_word(self, word):
        out = []
        for letter in word:
            out.extend(self.apply_letter(letter))
        return free_reduce(out)

    def compose(self, other):
        """self after other: generator images of other, pushed through self."""
        if self.genus != other.genus:
            raise AutError("genus mismatch in composition")
        images = [self.apply_word(w) for w in other.images]
        return SurfaceAuto(
            self.genus, images, name=f"{self.name}*{other.name}"
        )

    def relator_image(self):
        return self.apply_word(surface_relator(self.genus))

    def preserves_relator(self, presentation=None):
        """True when the relator maps to a trivial word of the surface group,
        i.e. into the normal closure of the relator: the descent condition."""
        if presentation is None:
            presentation = SurfacePresentation(self.genus)
        return presentation.is_trivial(self.relator_image())

    def mod2_matrix(self):
        """Columns (as bitmasks over F2) of the induced map on first mod-2
        homology; bit i of column j is the parity of generator i+1 in the
        image of generator j+1."""
        cols = []
        for w in self.images:
            mask = 0
            for letter in w:
                mask ^= 1 << (abs(letter) - 1)
            cols.append(mask)
        return tuple(cols)

    def fixes_generators(self, presentation):
        return all(
            presentation.words_equal(self.images[i], ((i + 1),))
            for i in range(2 * self.genus)
        )

    def __eq__(self, other):
        return (
            isinstance(other, SurfaceAuto)
            and self.genus == other.genus
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.genus, self.images))

    def __repr__(self):
        parts = ", ".join(format_word(w) for w in self.images)
        return f"SurfaceAuto({self.name or 'unnamed'}: {parts})"


@dataclass(frozen=True)
class AutGen:
    """A named automorphism generator with its explicit inverse."""

    name: str
    forward: SurfaceAuto
    backward: SurfaceAuto

    @property
    def genus(self):
        return self.forward.genus

    def directions(self):
        return ((self.name, self.forward), (self.name + "~", self.backward))


def identity_auto(genus, name="id"):
    return SurfaceAuto(genus, [(i + 1,) for i in range(2 * genus)], name=name)


def inner_auto(genus, word, name=None):
    """Conjugation x -> w x w^-1 by a fixed word."""
    word = free_reduce(word)
    winv = inverse_word(word)
    images = [free_reduce(word + (i + 1,) + winv) for i in range(2 * genus)]
    if name is None:
        name = f"inn[{format_word(word)}]"
    return SurfaceAuto(genus, images, name=name)


def _single_image_auto(genus, letter, image, name):
    images = [(i + 1,) for i in range(2 * genus)]
    images[letter - 1] = tuple(image)
    return SurfaceAuto(genus, images, name=name)


def _neck_words(i):
    """Insertion words for the twist separating handles i and i+1 (1-based).

    Derived from the side-pairing reading of a simple closed curve crossing
    the a_i and a_(i+1) edge pairs of the 4g-gon once each.
    """
    ai, bi = 2 * i - 1, 2 * i
    aj, bj = 2 * i + 1, 2 * i + 2
    w_lo = (-bi, aj, -bj, -aj, bi, ai, -bi, -ai)
    w_hi = (aj, -bj, -aj, bi, ai, -bi, -ai, -bi)
    return w_lo, w_hi


def _neck_auto(genus, i, invert, name):
    w_lo, w_hi = _neck_words(i)
    if invert:
        w_lo, w_hi = inverse_word(w_lo), inverse_word(w_hi)
    ai, aj = 2 * i - 1, 2 * i + 1
    images = [(x + 1,) for x in range(2 * genus)]
    images[ai - 1] = free_reduce(w_lo + (ai,))
    images[aj - 1] = free_reduce(w_hi + (aj,))
    return SurfaceAuto(genus, images, name=name)


def _flip_auto(genus):
    images = [None] * (2 * genus)
    for i in range(1, genus + 1):
        j = genus + 1 - i
        images[2 * i - 2] = (2 * j,)      # a_i -> b_j
        images[2 * i - 1] = (2 * j - 1,)  # b_i -> a_j
    return SurfaceAuto(genus, images, name="flip")


def standard_autgens(genus):
    """The standard generator list: a-twists, b-twists, neck twists, the
    flip, and conjugations by each generator.  Deterministic order."""
    if genus < 2:
        raise AutError(f"genus must be >= 2, got {genus}")
    gens = []
    for i in range(1, genus + 1):
        ai, bi = 2 * i - 1, 2 * i
        gens.append(AutGen(
            f"ta{i}",
            _single_image_auto(genus, bi, (bi, ai), f"ta{i}"),
            _single_image_auto(genus, bi, (bi, -ai), f"ta{i}~"),
        ))
    for i in range(1, genus + 1):
        ai, bi = 2 * i - 1, 2 * i
        gens.append(AutGen(
            f"tb{i}",
            _single_image_auto(genus, ai, (ai, bi), f"tb{i}"),
            _single_image_auto(genus, ai, (ai, -bi), f"tb{i}~"),
        ))
    for i in range(1, genus):
        gens.append(AutGen(
            f"neck{i}",
            _neck_auto(genus, i, False, f"neck{i}"),
            _neck_auto(genus, i, True, f"neck{i}~"),
        ))
    flip = _flip_auto(genus)
    gens.append(AutGen("flip", flip, flip))
    for x in range(1, 2 * genus + 1):
        label = format_word((x,))
        gens.append(AutGen(
            f"inn-{label}",
            inner_auto(genus, (x,), f"inn-{label}"),
            inner_auto(genus, (-x,), f"inn-{label}~"),
        ))
    return gens


def precompose(hom, auto):
    """The homomorphism hom∘auto; raises RelatorViolation for a broken auto."""
    if 2 * auto.genus != len(hom.images):
        raise AutError("genus mismatch between hom and automorphism")
    images = [hom.evaluate(w) for w in auto.images]
    return FiniteHom(hom.target, images, validate=True)


@dataclass(frozen=True)
class OrbitRecord:
    """Closure of one homomorphism under the generator set, sorted."""

    genus: int
    target_name: str
    seed_key: tuple
    members: tuple
    generator_names: tuple
    mod_target_auts: bool

    @property
    def k(self):
        return len(self.members)

    def member_index(self):
        return {h.key(): i for i, h in enumerate(self.members)}


def _canonicalize(hom, mod_target_auts):
    return canonical_rep_mod_auts(hom) if mod_target_auts else hom


def orbit(seed, gens=None, mod_target_auts=False, cap=DEFAULT_ORBIT_CAP):
    """Breadth-first closure of the seed hom under precomposition by every
    generator and inverse, optionally reduced modulo target automorphisms."""
    if gens is None:
        gens = standard_autgens(seed.genus)
    start = _canonicalize(seed, mod_target_auts)
    seen = {start.key(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for member in frontier:
            for gen in gens:
                for _, auto in gen.directions():
                    image = _canonicalize(
                        precompose(member, auto), mod_target_auts)
                    key = image.key()
                    if key not in seen:
                        if len(seen) >= cap:
                            raise EnumerationBoundExceeded(
                                f"orbit closure exceeded cap {cap}"
                            )
                        seen[key] = image
                        nxt.append(image)
        frontier = nxt
    members = tuple(seen[k] for k in sorted(seen))
    return OrbitRecord(
        genus=seed.genus,
        target_name=seed.target.name,
        seed_key=start.key(),
        members=members,
        generator_names=tuple(g.name for g in gens),
        mod_target_auts=mod_target_auts,
    )


def certify_characteristic(members, gens, mod_target_auts=False):
    """Check the member set is closed under every generator direction.

    Returns a dict: pass flag, the index permutation induced by each
    generator direction (the evidence), and for every member a witness pair
    (direction label, source index) showing deletion of that member breaks
    closure.  On failure: the offending (direction, member index, image key).
    """
    members = list(members)
    index = {h.key(): i for i, h in enumerate(members)}
    if len(index) != len(members):
        raise AutError("duplicate members in characteristic certification")
    permutations = {}
    for gen in gens:
        for label, auto in gen.directions():
            images = []
            for i, member in enumerate(members):
                image = _canonicalize(
                    precompose(member, auto), mod_target_auts)
                j = index.get(image.key())
                if j is None:
                    return {
                        "pass": False,
                        "failure": {
                            "direction": label,
                            "member": i,
                            "escaped_to": image.key(),
                        },
                    }
                images.append(j)
            if sorted(images) != list(range(len(members))):
                return {
                    "pass": False,
                    "failure": {
                        "direction": label,
                        "member": None,
                        "escaped_to": "not a bijection",
                    },
                }
            permutations[label] = tuple(images)
    witnesses = {}
    for m in range(len(members)):
        for label, perm in permutations.items():
            hit = [i for i in range(len(members)) if perm[i] == m and i != m]
            if hit:
                witnesses[m] = (label, hit[0])
                break
    return {
        "pass": True,
        "size": len(members),
        "permutations": permutations,
        "deletion_witnesses": witnesses,
    }
