"""Permutations and permutation groups with exact big-integer orders.

Composition convention, used everywhere in this package:

    (p * q)(x) = p(q(x))        -- q acts first.

Groups are held as a base and strong generating set (deterministic
Schreier-Sims), so orders are exact Python integers and membership is
decided by sifting.  Groups are immutable once constructed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

DEFAULT_ENUMERATION_BOUND = 10**6


class PermError(ValueError):
    pass


class MembershipError(PermError):
    """Raised when an operation requires an element the group does not contain."""


class EnumerationBoundExceeded(PermError):
    """Raised when an operation would enumerate more elements than allowed."""


class StructuralFormError(PermError):
    """Raised when a structural path is requested on a group not in S3-block form."""


class Sylow2Stalled(PermError):
    """Raised if the grown 2-subgroup stalls below the 2-part of the order."""


class Permutation:
    """An immutable permutation of {0, ..., n-1}, stored as its image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(images)
        seen = [False] * len(images)
        for x in images:
            if not 0 <= x < len(images) or seen[x]:
                raise PermError(f"not a permutation: {images!r}")
            seen[x] = True
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_hash", hash(images))

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @staticmethod
    def identity(degree):
        return Permutation(range(degree))

    @staticmethod
    def from_cycles(degree, cycles):
        images = list(range(degree))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return Permutation(images)

    @staticmethod
    def parse(text, degree):
        """Parse cycle notation like "(0 1 2)(3 4)" or "()" for the identity."""
        text = text.strip().replace(",", " ")
        cycles = []
        depth = 0
        cur = []
        token = ""
        for ch in text:
            if ch == "(":
                if depth:
                    raise PermError(f"bad cycle notation: {text!r}")
                depth = 1
                cur = []
                token = ""
            elif ch == ")":
                if token:
                    cur.append(int(token))
                    token = ""
                if cur:
                    cycles.append(cur)
                depth = 0
            elif ch.isspace():
                if token:
                    cur.append(int(token))
                    token = ""
            elif ch.isdigit():
                if not depth:
                    raise PermError(f"bad cycle notation: {text!r}")
                token += ch
            else:
                raise PermError(f"bad cycle notation: {text!r}")
        if depth or token:
            raise PermError(f"unterminated cycle: {text!r}")
        return Permutation.from_cycles(degree, cycles)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, x):
        return self.images[x]

    def __mul__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise PermError("degree mismatch")
        img = self.images
        return Permutation([img[x] for x in other.images])

    def inverse(self):
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(inv)

    def is_identity(self):
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self, include_fixed=False):
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycs)

    def order(self):
        n = 1
        for c in self.cycles():
            k = len(c)
            g = _gcd(n, k)
            n = n // g * k
        return n

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other):
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({self.cycle_string()!r}, degree={self.degree})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def compose(p, q):
    """(p * q)(x) = p(q(x)); q acts first."""
    return p * q


class _Level:
    """One level of a stabilizer chain: a base point, the strong generators
    placed at this level (they fix all earlier base points and move this
    one or deeper), and a Schreier tree for the orbit.

    The orbit at level j is computed under every strong generator fixing the
    first j base points — i.e. the generators placed at levels j, j+1, … —
    so trees are rebuilt with that union, not with this level's list alone.
    """

    __slots__ = ("base", "gens", "tree")

    def __init__(self, base):
        self.base = base
        self.gens = []
        self.tree = {base: None}

    def rebuild_orbit(self, acting_gens):
        self.tree = {self.base: None}
        queue = [self.base]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for g in acting_gens:
                y = g.images[x]
                if y not in self.tree:
                    self.tree[y] = (g, x)
                    queue.append(y)

    def transversal(self, point):
        """Element of <gens> mapping base to point, read off the Schreier tree."""
        step = self.tree[point]
        if step is None:
            return None  # identity; callers special-case to avoid building one
        g, parent = step
        result = g
        step = self.tree[parent]
        while step is not None:
            g, parent = step
            result = result * g
            step = self.tree[parent]
        return result


class PermGroup:
    """A permutation group with a deterministic base and strong generating set.

    `known_order` is an optional externally computed order: construction stops
    as soon as the transversal product count reaches it.  The partial chain is
    still sound for membership and order queries because the set of elements
    that sift to the identity has exactly `prod(orbit lengths)` members and is
    contained in the group.
    """

    def __init__(self, generators, degree=None, known_order=None):
        generators = [g for g in generators if not g.is_identity()]
        if degree is None:
            if not generators:
                raise PermError("degree required for a trivial group")
            degree = generators[0].degree
        for g in generators:
            if g.degree != degree:
                raise PermError("generator degree mismatch")
        self.degree = degree
        self.generators = tuple(generators)
        self._levels = []
        self._build(known_order)
        self._order = 1
        for lvl in self._levels:
            self._order *= len(lvl.tree)

    # -- construction -------------------------------------------------------

    def _build(self, known_order):
        for g in self.generators:
            if known_order is not None and self._chain_count() == known_order:
                return
            self._add_generator(g)
        # Complete the chain: level i is verified once every Schreier
        # generator of level i sifts to the identity through deeper levels.
        i = len(self._levels) - 1
        while i >= 0:
            if known_order is not None and self._chain_count() == known_order:
                return
            witness = self._first_schreier_residue(i)
            if witness is None:
                i -= 1
            else:
                residue, level_index = witness
                self._place(residue, level_index)
                i = level_index
        if known_order is not None and self._chain_count() != known_order:
            raise PermError(
                f"computed order {self._chain_count()} != declared {known_order}"
            )

    def _chain_count(self):
        n = 1
        for lvl in self._levels:
            n *= len(lvl.tree)
        return n

    def _acting_gens(self, j):
        """S_j: every strong generator fixing the first j base points."""
        gens = []
        for lvl in self._levels[j:]:
            gens.extend(lvl.gens)
        return gens

    def _add_generator(self, g):
        residue, idx = self._sift(g)
        if not residue.is_identity():
            self._place(residue, idx)

    def _place(self, g, idx):
        if idx == len(self._levels):
            base = min(x for x in range(self.degree) if g.images[x] != x)
            self._levels.append(_Level(base))
        self._levels[idx].gens.append(g)
        # g joins S_j for every j <= idx; those orbits can all grow.
        acting = self._acting_gens(idx)
        for j in range(idx, -1, -1):
            self._levels[j].rebuild_orbit(acting)
            if j > 0:
                acting = acting + self._levels[j - 1].gens

    def _first_schreier_residue(self, i):
        """First nontrivial sifted Schreier generator at level i, or None."""
        lvl = self._levels[i]
        acting = self._acting_gens(i)
        for x in sorted(lvl.tree):
            tx = lvl.transversal(x)
            for g in acting:
                y = g.images[x]
                ty = lvl.transversal(y)
                # schreier generator t_y^-1 * g * t_x, which fixes the base
                s = g if tx is None else g * tx
                if ty is not None:
                    s = ty.inverse() * s
                if s.is_identity():
                    continue
                residue, idx = self._sift(s, start=i + 1)
                if not residue.is_identity():
                    return residue, idx
        return None

    def _sift(self, p, start=0):
        """Strip p against the chain; returns (residue, level it got stuck at)."""
        for idx in range(start, len(self._levels)):
            lvl = self._levels[idx]
            y = p.images[lvl.base]
            if y == lvl.base:
                continue
            if y not in lvl.tree:
                return p, idx
            t = lvl.transversal(y)
            p = t.inverse() * p
        return p, len(self._levels)

    # -- queries ------------------------------------------------------------

    @property
    def order(self):
        return self._order

    def sift(self, p):
        residue, _ = self._sift(p)
        return residue

    def __contains__(self, p):
        if not isinstance(p, Permutation) or p.degree != self.degree:
            return False
        return self.sift(p).is_identity()

    def identity(self):
        return Permutation.identity(self.degree)

    def elements(self, bound=DEFAULT_ENUMERATION_BOUND):
        """All elements, by deterministic transversal products.

        Raises EnumerationBoundExceeded if the order exceeds `bound`.
        """
        if bound is not None and self.order > bound:
            raise EnumerationBoundExceeded(
                f"group order {self.order} exceeds enumeration bound {bound}"
            )
        transversals = []
        for lvl in self._levels:
            ts = []
            for x in sorted(lvl.tree):
                ts.append(lvl.transversal(x))
            transversals.append(ts)
        out = [Permutation.identity(self.degree)]
        for ts in reversed(transversals):
            nxt = []
            for t in ts:
                for e in out:
                    nxt.append(e if t is None else t * e)
            out = nxt
        return out

    def base_points(self):
        return tuple(lvl.base for lvl in self._levels)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def build_bsgs(generators, degree=None, known_order=None):
    """Construct a PermGroup (base and strong generating set) from generators."""
    return PermGroup(generators, degree=degree, known_order=known_order)


def is_member(group, p):
    return p in group


@dataclass(frozen=True)
class SubgroupWitness:
    """A subgroup H of an ambient group G together with its exact index."""

    ambient: PermGroup
    sub: PermGroup
    index: int

    def __post_init__(self):
        if self.ambient.degree != self.sub.degree:
            raise PermError("ambient/subgroup degree mismatch")
        for g in self.sub.generators:
            if g not in self.ambient:
                raise MembershipError(
                    f"subgroup generator {g.cycle_string()} not in ambient group"
                )
        if self.sub.order * self.index != self.ambient.order:
            raise PermError(
                f"index {self.index} * subgroup order {self.sub.order}"
                f" != ambient order {self.ambient.order}"
            )


def subgroup_witness(ambient, sub):
    if ambient.order % sub.order:
        raise PermError("subgroup order does not divide ambient order")
    return SubgroupWitness(ambient, sub, ambient.order // sub.order)


def conjugate_subgroup(group, sub, x):
    """The subgroup x * sub * x^-1, for x a member of `group`."""
    if x not in group:
        raise MembershipError("conjugating element is not in the group")
    xi = x.inverse()
    gens = [x * h * xi for h in sub.generators]
    return PermGroup(gens, degree=group.degree)


# -- Sylow 2-subgroups ------------------------------------------------------


def two_part(n):
    t = 1
    while n % 2 == 0:
        n //= 2
        t *= 2
    return t


def s3_block_count(group):
    """Number k of 3-point blocks if the group lies in S3 x ... x S3 acting on
    {0,1,2} + {3,4,5} + ..., else None."""
    if group.degree % 3:
        return None
    k = group.degree // 3
    for g in group.generators:
        for j in range(k):
            lo = 3 * j
            for x in range(lo, lo + 3):
                if not lo <= g.images[x] < lo + 3:
                    return None
    return k


def _block_sign_vector(p, k):
    """Per-block parity as a bitmask: bit j set iff the restriction to block j
    is a transposition."""
    mask = 0
    for j in range(k):
        lo = 3 * j
        a, b, c = p.images[lo], p.images[lo + 1], p.images[lo + 2]
        # parity of the restriction: even iff it is a 3-cycle or identity
        fixed = (a == lo) + (b == lo + 1) + (c == lo + 2)
        if fixed == 1:
            mask |= 1 << j
    return mask


def _sylow2_structural(group, seed):
    """2-Sylow of G <= S3^k as a complement to the odd part G n A3^k.

    The sign map s: G -> F2^k has image V of order 2^r with r = the 2-part
    exponent of |G|; the kernel is the odd abelian part.  A complement is
    produced by the coprime-order averaging of the section cocycle, then
    verified by an order computation.
    """
    k = group.degree // 3
    rng = random.Random(seed)
    gens = list(group.generators)
    rng.shuffle(gens)

    # Row-reduce the generator sign vectors over F2, tracking group elements.
    # Entries are kept in insertion order: each stored mask is then reduced
    # against every earlier entry, so earlier pivot bits never reappear and
    # dependent vectors always cancel to zero.
    basis = []  # list of (pivot_bit, mask, element)
    for g in gens:
        mask, elem = _block_sign_vector(g, k), g
        for pivot, bmask, belem in basis:
            if mask >> pivot & 1:
                mask ^= bmask
                elem = belem.inverse() * elem
        if mask:
            basis.append((mask.bit_length() - 1, mask, elem))
    r = len(basis)
    if r == 0:
        return subgroup_witness(group, PermGroup([], degree=group.degree))

    ident = Permutation.identity(group.degree)

    def section(bits):
        e = ident
        for i in range(r):
            if bits >> i & 1:
                e = e * basis[i][2]
        return e

    t = [section(bits) for bits in range(1 << r)]

    def coc(u, v):
        return t[u] * t[v] * t[u ^ v].inverse()

    # e(u) = (prod_w c(u, w))^q with q * 2^r = -1 mod 3 makes e(u)t(u) a
    # homomorphism from V; its image is the complement.
    q = 1 if (2**r) % 3 == 2 else 2
    hgens = []
    for i in range(r):
        u = 1 << i
        b = ident
        for w in range(1 << r):
            b = b * coc(u, w)
        e = b if q == 1 else b * b
        hgens.append(e * t[u])
    sub = PermGroup(hgens, degree=group.degree)
    if sub.order != 1 << r or two_part(group.order) != 1 << r:
        raise Sylow2Stalled(
            f"structural complement has order {sub.order}, expected {1 << r}"
        )
    return subgroup_witness(group, sub)


def _sylow2_growth(group, seed, bound):
    """Grow a 2-subgroup by adjoining elements while the order stays a 2-power."""
    target = two_part(group.order)
    if target == 1:
        return subgroup_witness(group, PermGroup([], degree=group.degree))
    elements = group.elements(bound)
    rng = random.Random(seed)
    rng.shuffle(elements)
    sub = PermGroup([], degree=group.degree)
    while sub.order < target:
        for x in elements:
            if x.is_identity() or x in sub:
                continue
            cand = PermGroup(sub.generators + (x,), degree=group.degree)
            if cand.order > sub.order and cand.order & (cand.order - 1) == 0:
                sub = cand
                break
        else:
            raise Sylow2Stalled(
                f"2-subgroup stalled at order {sub.order} below 2-part {target}"
            )
    return subgroup_witness(group, sub)


def sylow2(group, seed=0, method="auto", bound=DEFAULT_ENUMERATION_BOUND):
    """A Sylow 2-subgroup of `group`, as a SubgroupWitness.

    method: "auto" picks the structural path for groups in S3-block form and
    the enumeration growth path otherwise; both can be forced.
    """
    if method not in ("auto", "structural", "growth"):
        raise PermError(f"unknown sylow2 method {method!r}")
    blocked = s3_block_count(group) is not None
    if method == "structural" or (method == "auto" and blocked):
        if not blocked:
            raise StructuralFormError(
                "structural sylow2 requested on a group not in S3-block form"
            )
        return _sylow2_structural(group, seed)
    return _sylow2_growth(group, seed, bound)


# -- normalizer check -------------------------------------------------------


def _normalizer_is_self_enumeration(witness, bound):
    g, h = witness.ambient, witness.sub
    hgens = h.generators
    for x in g.elements(bound):
        if all(x * hg * x.inverse() in h for hg in hgens):
            if x not in h:
                return False
    return True


def _normalizer_is_self_structural(witness):
    """Certify N_G(H) = H for H a 2-Sylow of a subdirect G <= S3^k.

    Requirements checked: G preserves the 3-blocks and is surjective onto
    each factor; |H| equals the 2-part of |G|; every H generator restricts on
    each block to the identity or to one fixed transposition X_j; every block
    is hit.  Under these the centralizer of X_j in S3 being {1, X_j} forces
    any normalizing element into H.
    """
    g, h = witness.ambient, witness.sub
    k = s3_block_count(g)
    if k is None:
        raise StructuralFormError(
            "structural normalizer check requested on a group not in S3-block form"
        )
    for j in range(k):
        lo = 3 * j
        proj = PermGroup(
            [Permutation([p.images[lo + i] - lo for i in range(3)])
             for p in g.generators],
            degree=3,
        )
        if proj.order != 6:
            raise StructuralFormError(
                f"factor {j} projection has order {proj.order}, not subdirect onto S3"
            )
    if h.order != two_part(g.order):
        raise StructuralFormError(
            f"subgroup order {h.order} is not the 2-part of {g.order}"
        )
    chosen = [None] * k
    for p in h.generators:
        for j in range(k):
            lo = 3 * j
            rest = tuple(p.images[lo + i] - lo for i in range(3))
            if rest == (0, 1, 2):
                continue
            if sorted(rest) != [0, 1, 2] or _restriction_order(rest) != 2:
                raise StructuralFormError(
                    f"subgroup restriction to block {j} is not an involution"
                )
            if chosen[j] is None:
                chosen[j] = rest
            elif chosen[j] != rest:
                raise StructuralFormError(
                    f"block {j} sees two distinct involutions; subgroup is not"
                    " inside a product of the chosen 2-Sylows"
                )
    if any(c is None for c in chosen):
        missing = [j for j, c in enumerate(chosen) if c is None]
        raise StructuralFormError(f"no subgroup generator hits blocks {missing}")
    return True


def _restriction_order(rest):
    seen = 0
    order = 1
    for start in range(3):
        if seen >> start & 1:
            continue
        n = 0
        x = start
        while not seen >> x & 1:
            seen |= 1 << x
            x = rest[x]
            n += 1
        order = order * n // _gcd(order, n)
    return order


def normalizer_is_self(witness, bound=DEFAULT_ENUMERATION_BOUND, method="auto"):
    """Decide whether N_G(H) = H.

    method "enumeration" scans every ambient element; "structural" certifies
    the Sylow-in-subdirect-product situation without enumeration; "auto" uses
    enumeration when the ambient order is within `bound`, else structural.
    """
    if method == "enumeration":
        return _normalizer_is_self_enumeration(witness, bound)
    if method == "structural":
        return _normalizer_is_self_structural(witness)
    if method != "auto":
        raise PermError(f"unknown normalizer method {method!r}")
    if witness.ambient.order <= bound:
        return _normalizer_is_self_enumeration(witness, bound)
    return _normalizer_is_self_structural(witness)


def mulclose(generators, degree=None, bound=DEFAULT_ENUMERATION_BOUND):
    """Brute-force closure; the independent oracle for BSGS orders."""
    if degree is None:
        degree = generators[0].degree
    elems = {Permutation.identity(degree)}
    frontier = list(elems)
    while frontier:
        nxt = []
        for e in frontier:
            for g in generators:
                p = g * e
                if p not in elems:
                    if len(elems) >= bound:
                        raise EnumerationBoundExceeded(
                            f"closure exceeded bound {bound}"
                        )
                    elems.add(p)
                    nxt.append(p)
        frontier = nxt
    return elems
