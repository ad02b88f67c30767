"""Permutations of the nine inflection points and small-group utilities.

Permutations act on the letters 1..9.  Products compose left to right:
(p * q)(x) = q(p(x)), matching the convention in which a monodromy
homomorphism sends a concatenation of loops to the product of their
permutations in traversal order.

Groups are handled by brute force (breadth-first closure, orbit scans,
exhaustive conjugacy search); every group that appears here has order at
most 216, so nothing cleverer is warranted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations as _itertools_permutations

import numpy as np

from .errors import SchemaError

N_LETTERS = 9


@dataclass(frozen=True)
class Perm:
    """A permutation of 1..9 stored as a tuple of images."""

    images: tuple

    def __init__(self, images):
        t = tuple(int(x) for x in images)
        if sorted(t) != list(range(1, N_LETTERS + 1)):
            raise SchemaError(f"not a permutation of 1..{N_LETTERS}: {t}")
        object.__setattr__(self, 'images', t)

    @classmethod
    def identity(cls):
        return cls(range(1, N_LETTERS + 1))

    @classmethod
    def from_cycles(cls, cycles):
        """Build from an iterable of cycles, e.g. [(2, 8, 5), (3, 6, 9)]."""
        img = list(range(1, N_LETTERS + 1))
        for cyc in cycles:
            cyc = list(cyc)
            seen = set(cyc)
            if len(seen) != len(cyc) or not seen <= set(range(1, N_LETTERS + 1)):
                raise SchemaError(f"bad cycle {cyc}")
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b
        p = cls(img)
        return p

    @classmethod
    def parse(cls, text):
        """Parse cycle notation like "(2,8,5)(3,6,9)"; "()" is the identity."""
        s = text.strip().replace(" ", "")
        if s == "()":
            return cls.identity()
        if not re.fullmatch(r"(\(\d(,\d)*\))+", s):
            raise SchemaError(f"bad cycle string {text!r}")
        cycles = [tuple(int(x) for x in grp.split(","))
                  for grp in re.findall(r"\(([^()]*)\)", s)]
        return cls.from_cycles(cycles)

    def __call__(self, x):
        return self.images[x - 1]

    def __mul__(self, other):
        # apply self first, then other
        return Perm(tuple(other.images[i - 1] for i in self.images))

    def inverse(self):
        inv = [0] * N_LETTERS
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Perm(inv)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        acc = Perm.identity()
        for _ in range(n):
            acc = acc * self
        return acc

    def conjugate_by(self, g):
        """g^-1 * self * g in left-to-right composition."""
        return g.inverse() * self * g

    def cycles(self, include_fixed=False):
        seen = set()
        out = []
        for start in range(1, N_LETTERS + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self(x)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self):
        """Cycle lengths including fixed points, descending."""
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)),
                            reverse=True))

    def order(self):
        n = 1
        p = self
        while p != Perm.identity():
            p = p * self
            n += 1
        return n

    def __str__(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        parts = []
        for cyc in sorted(cycs, key=min):
            k = cyc.index(min(cyc))
            rot = cyc[k:] + cyc[:k]
            parts.append("(" + ",".join(str(x) for x in rot) + ")")
        return "".join(parts)

    def __repr__(self):
        return f"Perm.parse({str(self)!r})"


@dataclass(frozen=True)
class PermGroup:
    """A finite permutation group given by generators; elements cached."""

    generators: tuple
    elements: frozenset

    def __init__(self, generators):
        gens = tuple(generators)
        object.__setattr__(self, 'generators', gens)
        object.__setattr__(self, 'elements', frozenset(closure(gens)))

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, p):
        return p in self.elements

    def __eq__(self, other):
        return self.elements == other.elements

    def __le__(self, other):
        return self.elements <= other.elements

    def orbits(self):
        """Orbits on 1..9, each sorted, ordered by smallest element."""
        seen = set()
        out = []
        for x in range(1, N_LETTERS + 1):
            if x in seen:
                continue
            orb = {x}
            frontier = [x]
            while frontier:
                y = frontier.pop()
                for g in self.generators:
                    z = g(y)
                    if z not in orb:
                        orb.add(z)
                        frontier.append(z)
            seen |= orb
            out.append(tuple(sorted(orb)))
        return out

    def orbit_sizes(self):
        return tuple(sorted((len(o) for o in self.orbits()), reverse=True))

    def stabilizer(self, letter):
        """The subgroup fixing a letter (brute force over elements)."""
        fixed = [p for p in self.elements if p(letter) == letter]
        return PermGroup(tuple(sorted(fixed, key=lambda p: p.images)))

    def is_k_transitive(self, k):
        """Exhaustive check on ordered k-tuples of distinct letters."""
        base = tuple(range(1, k + 1))
        reached = set()
        for p in self.elements:
            reached.add(tuple(p(x) for x in base))
        count = 1
        for n in range(N_LETTERS, N_LETTERS - k, -1):
            count *= n
        return len(reached) == count

    def conjugacy_class(self, p):
        return frozenset(p.conjugate_by(g) for g in self.elements)


def closure(generators):
    """All products of the generators (breadth-first)."""
    gens = [g for g in generators]
    if not gens:
        return {Perm.identity()}
    found = {Perm.identity()}
    frontier = [Perm.identity()]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p * g
                if q not in found:
                    found.add(q)
                    nxt.append(q)
        frontier = nxt
    return found


def coset_action(group, subgroup, representatives, labels):
    """Action of the group generators on left cosets r * H.

    representatives: one Perm per coset, aligned with labels (distinct
    hashable labels, e.g. the letters a coset should correspond to).
    Returns {label: {generator index: image label}} flattened into a dict
    mapping each generator of `group` to a label permutation dict.
    Raises SchemaError if the representatives do not enumerate the cosets
    exactly once.
    """
    H = subgroup.elements
    cosets = []
    for r in representatives:
        cosets.append(frozenset(r * h for h in H))
    if len(set(cosets)) != len(cosets):
        raise SchemaError("representatives repeat a coset")
    if len(cosets) * len(H) != group.order:
        raise SchemaError("representatives do not cover the cosets")
    index_of = {c: i for i, c in enumerate(cosets)}
    actions = {}
    for g in group.generators:
        mapping = {}
        for i, r in enumerate(representatives):
            moved = frozenset((g * r) * h for h in H)
            j = index_of.get(moved)
            if j is None:
                raise SchemaError("coset action leaves the listed cosets")
            mapping[labels[i]] = labels[j]
        actions[g] = mapping
    return actions


def _encode(images_array):
    """Mixed-radix integer encoding of permutation rows (vectorized)."""
    code = np.zeros(images_array.shape[0], dtype=np.int64)
    for col in range(N_LETTERS):
        code = code * 16 + images_array[:, col]
    return code


def conjugate_in_s9(G, H):
    """A permutation s with s^-1 G s = H, or None.

    Exhaustive scan of all 9! candidates, vectorized; candidates are
    pruned generator by generator before the full subgroup check.  The
    cycle-type multiset of the two groups is compared first.
    """
    if G.order != H.order:
        return None
    type_count_G = {}
    for p in G.elements:
        t = p.cycle_type()
        type_count_G[t] = type_count_G.get(t, 0) + 1
    type_count_H = {}
    for p in H.elements:
        t = p.cycle_type()
        type_count_H[t] = type_count_H.get(t, 0) + 1
    if type_count_G != type_count_H:
        return None

    all_perms = np.array(list(_itertools_permutations(range(1, N_LETTERS + 1))),
                         dtype=np.int8)                      # (362880, 9)
    inv = np.argsort(all_perms, axis=1).astype(np.int8) + 1  # s^-1 images
    H_codes = _encode(np.array([p.images for p in H.elements], dtype=np.int64))
    H_codes = np.sort(H_codes)

    mask = np.ones(len(all_perms), dtype=bool)
    for g in G.generators:
        g_img = np.array(g.images, dtype=np.int64)
        rows = np.nonzero(mask)[0]
        if len(rows) == 0:
            return None
        s = all_perms[rows].astype(np.int64)
        s_inv = inv[rows].astype(np.int64)
        # (s^-1 g s)(x) = s(g(s^-1(x))) with left-to-right composition
        conj = np.take_along_axis(s, g_img[s_inv - 1] - 1, axis=1)
        codes = _encode(conj)
        ok = np.searchsorted(H_codes, codes)
        ok = (ok < len(H_codes)) & (H_codes[np.clip(ok, 0, len(H_codes) - 1)]
                                    == codes)
        mask[rows] = ok
    for row in np.nonzero(mask)[0]:
        s = Perm(all_perms[row])
        if all(g.conjugate_by(s) in H for g in G.generators):
            return s
    return None


def verify_relations(env, relations):
    """Evaluate word equations like "g1*g2*g1 == g2*g1*g2" or "g1^3 == ()".

    env maps names to Perms.  Returns a list of booleans, one per relation.
    """
    results = []
    for rel in relations:
        if "==" not in rel:
            raise SchemaError(f"relation needs '==': {rel!r}")
        lhs, rhs = rel.split("==")
        results.append(_eval_word(lhs, env) == _eval_word(rhs, env))
    return results


def _eval_word(text, env):
    s = text.strip()
    if s == "()":
        return Perm.identity()
    acc = Perm.identity()
    for factor in s.split("*"):
        factor = factor.strip()
        m = re.fullmatch(r"(\w+)(?:\^(-?\d+))?", factor)
        if not m:
            raise SchemaError(f"bad factor {factor!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name not in env:
            raise SchemaError(f"unknown generator {name!r}")
        acc = acc * (env[name] ** exp)
    return acc


# the standard generators of the monodromy group on the nine labels
G0 = Perm.from_cycles([(1, 2, 4), (5, 6, 8), (3, 9, 7)])
G1 = Perm.from_cycles([(4, 5, 6), (7, 9, 8)])
G2 = Perm.from_cycles([(2, 8, 5), (3, 6, 9)])
G3 = Perm.from_cycles([(1, 4, 7), (3, 9, 6)])
G4 = Perm.from_cycles([(1, 7, 4), (2, 5, 8)])


def hesse_group():
    """The full monodromy group <g0, g1> of order 216."""
    return PermGroup((G0, G1))


def local_cusp_group():
    """The order-24 subgroup <g1, g2> (monodromy near a cuspidal cubic)."""
    return PermGroup((G1, G2))
