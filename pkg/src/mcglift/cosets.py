"""Coset tables, Reidemeister-Schreier generators, and induced automorphisms.

A finite-index subgroup of the surface group is realized through a finite
quotient: either the full kernel of a homomorphism, or the preimage of a
subgroup of the target.  The surface group acts on the left cosets; a
breadth-first spanning tree gives one transversal word per coset, and the
non-tree table entries give Schreier generators for the subgroup —
2g·d − (d−1) of them, a free generating set since the subgroup is itself a
surface group of genus d(g−1)+1.

For a subgroup invariant under an automorphism φ, restriction is computed
extensionally: expand a Schreier generator into the ambient group, apply φ,
and rewrite the result back over the Schreier generators by walking the
coset table.  Expansion of a rewritten word telescopes back to the original
word reduced, so round-trip identities hold freely; equalities involving
genuinely different words go through the Dehn word-problem engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .autos import inner_auto
from .quotients import FiniteHom, mod2_homology_hom, target_c2
from .words import (
    SurfacePresentation,
    format_word,
    free_reduce,
    inverse_word,
    surface_relator,
)

DEFAULT_SUBGROUP_ELEMENT_BOUND = 10**6


class CosetError(ValueError):
    pass


class CosetEscape(CosetError):
    """A word expected to lie in the subgroup moved coset 0."""

    def __init__(self, message, coset):
        super().__init__(message)
        self.coset = coset


class CharacteristicViolation(CosetError):
    """An automorphism claimed to preserve the subgroup did not."""


class CosetTable:
    """Left-coset action of the 2g generators on the d cosets of a subgroup.

    Coset 0 is the subgroup itself; `schreier_reps[c]` is a word carrying
    coset 0 to coset c (so reps[0] is empty).  `tree_pairs` marks the (coset,
    generator) entries used by the spanning tree; their Schreier generators
    are freely trivial and are skipped by rewriting.
    """

    def __init__(self, hom, genus, points, identity_point, act, label):
        self.hom = hom
        self.genus = genus
        self.d = len(points)
        self.label = label
        # breadth-first relabeling from the subgroup coset
        index = {identity_point: 0}
        order = [identity_point]
        reps = [()]
        tree = set()
        qi = 0
        letters = []
        for x in range(1, 2 * genus + 1):
            letters.extend((x, -x))
        while qi < len(order):
            point = order[qi]
            c = index[point]
            qi += 1
            for letter in letters:
                image = act(letter, point)
                if image not in index:
                    index[image] = len(order)
                    order.append(image)
                    reps.append(free_reduce((letter,) + reps[c]))
                    if letter > 0:
                        tree.add((c, letter))
                    else:
                        tree.add((len(order) - 1, -letter))
        if len(order) != len(points):
            raise CosetError(
                f"action is intransitive: reached {len(order)} of {len(points)}"
            )
        self.schreier_reps = tuple(reps)
        self.tree_pairs = frozenset(tree)
        self.act_pos = []
        self.act_neg = []
        for x in range(1, 2 * genus + 1):
            self.act_pos.append(tuple(index[act(x, p)] for p in order))
            self.act_neg.append(tuple(index[act(-x, p)] for p in order))
        self._rs = None
        relator = surface_relator(genus)
        for c in range(self.d):
            if self.apply_word(relator, c) != c:
                raise CosetError(f"relator moves coset {c}; table is corrupt")

    def apply_letter(self, letter, c):
        if letter > 0:
            return self.act_pos[letter - 1][c]
        return self.act_neg[-letter - 1][c]

    def apply_word(self, word, c=0):
        """Image of coset c under the word; rightmost letter acts first."""
        for letter in reversed(word):
            c = self.apply_letter(letter, c)
        return c

    def contains(self, word):
        return self.apply_word(word) == 0

    def __repr__(self):
        return f"CosetTable(genus={self.genus}, d={self.d}, {self.label})"


def build_coset_table(hom, sub=None, bound=DEFAULT_SUBGROUP_ELEMENT_BOUND):
    """Coset table of the preimage of `sub` under hom (kernel when sub is
    None).  `sub` is a SubgroupWitness inside the hom's target group."""
    if not hom.is_surjective():
        raise CosetError("coset tables require a surjective homomorphism")
    genus = hom.genus
    target = hom.target
    if sub is None:
        elems = target.elements
        eindex = target.element_index

        def act(letter, point):
            p = target.elements[point]
            img = hom.images[abs(letter) - 1]
            if letter < 0:
                img = img.inverse()
            return eindex[img * p]

        identity_point = eindex[target.identity]
        return CosetTable(hom, genus, range(len(elems)), identity_point,
                          act, "kernel")
    if sub.ambient.degree != target.degree:
        raise CosetError("subgroup witness does not live in the hom's target")
    sub_elems = frozenset(sub.sub.elements(bound))
    cosets = set()
    for q in target.elements:
        cosets.add(frozenset(q * h for h in sub_elems))
    if len(cosets) != sub.index:
        raise CosetError(
            f"found {len(cosets)} cosets, expected index {sub.index}"
        )

    def act(letter, point):
        img = hom.images[abs(letter) - 1]
        if letter < 0:
            img = img.inverse()
        return frozenset(img * q for q in point)

    return CosetTable(hom, genus, cosets, sub_elems, act,
                      f"index-{sub.index} subgroup")


@dataclass(frozen=True)
class RSGenerators:
    """Schreier generators of the subgroup: one per non-tree table entry.

    `pairs[i]` = (coset, generator letter); `words[i]` is the subgroup
    element t_{x·c}^-1 · x · t_c as a reduced surface word.  Labels are
    y1..yN in pair order.
    """

    table: CosetTable
    pairs: tuple
    words: tuple

    @property
    def count(self):
        return len(self.pairs)

    def labels(self):
        return tuple(f"y{i + 1}" for i in range(len(self.pairs)))

    def pair_index(self):
        return {pair: i for i, pair in enumerate(self.pairs)}


def schreier_generators(table):
    """The non-tree Schreier generators, memoized on the table."""
    if table._rs is not None:
        return table._rs
    pairs = []
    words = []
    reps = table.schreier_reps
    for c in range(table.d):
        for x in range(1, 2 * table.genus + 1):
            if (c, x) in table.tree_pairs:
                continue
            pairs.append((c, x))
            image = table.apply_letter(x, c)
            words.append(free_reduce(
                inverse_word(reps[image]) + (x,) + reps[c]))
    rs = RSGenerators(table=table, pairs=tuple(pairs), words=tuple(words))
    expected = 2 * table.genus * table.d - (table.d - 1)
    if rs.count != expected:
        raise CosetError(
            f"Schreier generator count {rs.count}, expected {expected}"
        )
    for w in rs.words:
        if not table.contains(w):
            raise CosetError("Schreier generator escapes the subgroup")
    table._rs = rs
    return rs


def rewrite(table, word):
    """Express a subgroup element as a word over the Schreier generators.

    Peels letters from the right, emitting the non-tree generator met at
    each step; raises CosetEscape when the input is not in the subgroup.
    """
    rs = schreier_generators(table)
    index = rs.pair_index()
    emitted = []
    c = 0
    for letter in reversed(word):
        if letter > 0:
            pair = (c, letter)
            c = table.apply_letter(letter, c)
        else:
            c = table.apply_letter(letter, c)
            pair = (c, -letter)
        if pair in table.tree_pairs:
            continue
        i = index[pair]
        emitted.append(i + 1 if letter > 0 else -(i + 1))
    if c != 0:
        raise CosetEscape(
            f"word {format_word(word)} lands on coset {c}, not the subgroup",
            c,
        )
    emitted.reverse()
    return _rs_free_reduce(emitted)


def _rs_free_reduce(letters):
    out = []
    for letter in letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def expand(rs_word, rs):
    """Push a Schreier-generator word back down to a surface-group word."""
    out = []
    for letter in rs_word:
        w = rs.words[letter - 1] if letter > 0 else inverse_word(
            rs.words[-letter - 1])
        out.extend(w)
    return free_reduce(out)


@dataclass(frozen=True)
class AutImage:
    """The restriction of an automorphism to the subgroup, recorded as one
    Schreier-generator word per Schreier generator."""

    source_name: str
    rs: RSGenerators
    values: tuple

    def apply_rs_word(self, rs_word):
        out = []
        for letter in rs_word:
            v = self.values[letter - 1] if letter > 0 else tuple(
                -x for x in reversed(self.values[-letter - 1]))
            out.extend(v)
        return _rs_free_reduce(out)

    def compose(self, other):
        """self after other, as maps on the subgroup."""
        values = tuple(self.apply_rs_word(v) for v in other.values)
        return AutImage(
            source_name=f"{self.source_name}*{other.source_name}",
            rs=self.rs,
            values=values,
        )

    def is_identity_on_generators(self, presentation=None):
        rs = self.rs
        if presentation is None:
            presentation = SurfacePresentation(rs.table.genus)
        return all(
            presentation.words_equal(expand(v, rs), rs.words[i])
            for i, v in enumerate(self.values)
        )

    def as_dict(self):
        labels = self.rs.labels()

        def fmt(word):
            return "".join(
                (labels[x - 1] if x > 0 else labels[-x - 1].upper())
                for x in word
            ) or "1"

        return {labels[i]: fmt(v) for i, v in enumerate(self.values)}


def alpha_apply(table, auto, name=None):
    """Restrict the automorphism to the subgroup: expand each Schreier
    generator, apply, and rewrite back.  A coset escape here falsifies the
    claim that the subgroup is invariant under the automorphism."""
    rs = schreier_generators(table)
    values = []
    for w in rs.words:
        image = auto.apply_word(w)
        try:
            values.append(rewrite(table, image))
        except CosetEscape as e:
            raise CharacteristicViolation(
                f"automorphism {auto.name or name} moves the subgroup: "
                f"image of {format_word(w)} reaches coset {e.coset}"
            ) from e
    return AutImage(
        source_name=name or auto.name or "phi",
        rs=rs,
        values=tuple(values),
    )


def inner_compatibility_holds(table, u, presentation=None):
    """Whether restricting conjugation-by-u equals conjugation by rewrite(u)
    on every Schreier generator, for a subgroup word u."""
    rs = schreier_generators(table)
    if presentation is None:
        presentation = SurfacePresentation(table.genus)
    conj = inner_auto(table.genus, u)
    image = alpha_apply(table, conj)
    ru = rewrite(table, u)
    rui = [-x for x in reversed(ru)]
    for j, v in enumerate(image.values):
        direct = _rs_free_reduce(list(ru) + [j + 1] + rui)
        if v != direct and not presentation.words_equal(
                expand(v, rs), expand(direct, rs)):
            return False
    return True


def verify_finite_index_containment(table, presentation=None):
    """Check the restriction mechanism on inner automorphisms by subgroup
    elements: for every Schreier generator u, the restriction of conjugation
    by u is conjugation by rewrite(u) — so restriction carries the subgroup
    onto itself, of finite index d in the ambient group.  Returns (ok, d)."""
    rs = schreier_generators(table)
    if presentation is None:
        presentation = SurfacePresentation(table.genus)
    for u in rs.words:
        if not inner_compatibility_holds(table, u, presentation):
            return False, table.d
    return True, table.d


def verify_injectivity_mechanism(table, auto, presentation=None, bound=4096):
    """Desk-scale check of the unique-roots implication: if the restriction
    fixes every Schreier generator, the automorphism fixes every ambient
    generator.  True when the implication holds for this automorphism."""
    rs = schreier_generators(table)
    if presentation is None:
        presentation = SurfacePresentation(table.genus)
    image = alpha_apply(table, auto)
    for v in image.values:
        if sum(len(rs.words[abs(x) - 1]) for x in v) > bound:
            raise CosetError(
                f"restriction image exceeds expansion bound {bound}")
    fixes_sub = image.is_identity_on_generators(presentation)
    if not fixes_sub:
        return True
    return auto.fixes_generators(presentation)


def certified_homology_table(genus, gens=None):
    """The mod-2 homology cover table (d = 2^(2g)), with its characteristic
    certificate.

    The kernel is the intersection of the kernels of all 2^(2g)−1 surjections
    onto the order-2 group; the certificate is the closure of that full set
    under the automorphism generators, which therefore permute the kernels
    and preserve the intersection.  Each surjection is checked to factor
    through the homology map, pinning the intersection identity at this
    level.
    """
    from .autos import certify_characteristic, orbit, standard_autgens

    if gens is None:
        gens = standard_autgens(genus)
    c2 = target_c2()
    flip = c2.generators[0]
    seed = FiniteHom(
        c2, [flip] + [c2.identity] * (2 * genus - 1))
    rec = orbit(seed, gens, mod_target_auts=False)
    expected = 2 ** (2 * genus) - 1
    if rec.k != expected:
        raise CosetError(
            f"closure found {rec.k} order-2 surjections, expected {expected};"
            " the generator set does not act fully on mod-2 homology"
        )
    cert = certify_characteristic(rec.members, gens)
    if not cert["pass"]:
        raise CosetError("characteristic certification failed unexpectedly")
    hom = mod2_homology_hom(genus)
    masks = {_functional_mask(member) for member in rec.members}
    if masks != set(range(1, 2 ** (2 * genus))):
        raise CosetError(
            "orbit members do not realize every nonzero functional on mod-2"
            " homology; intersection identity broken"
        )
    table = build_coset_table(hom)
    return table, rec, cert


def _functional_mask(member):
    """A hom onto the order-2 group is the composite of the homology map
    with the functional reading off these generator parities."""
    flip = member.target.generators[0]
    mask = 0
    for i, img in enumerate(member.images):
        if img == flip:
            mask |= 1 << i
    return mask
