"""Finite groupoids as a toy model of the h-level hierarchy.

Objects model terms of a type, morphisms model identifications (paths).
Levels follow this numbering: -2 contractible, -1 propositions (empty or
contractible), 0 sets, 1 groupoids.  A finite 1-groupoid has level at most
1, so computed levels saturate there.

Composition is written diagrammatically: ``compose[f, g]`` is "f, then g",
defined when ``dst[f] == src[g]``.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import GroupoidError


@dataclass(frozen=True)
class FiniteGroupoid:
    objects: int
    src: tuple[int, ...]
    dst: tuple[int, ...]
    compose: Mapping[tuple[int, int], int] = field(hash=False, repr=False)
    ident: tuple[int, ...] = ()
    inverse: tuple[int, ...] = field(default=(), repr=False)

    def __post_init__(self):
        object.__setattr__(self, "src", tuple(self.src))
        object.__setattr__(self, "dst", tuple(self.dst))
        object.__setattr__(self, "ident", tuple(self.ident))
        object.__setattr__(self, "compose", dict(self.compose))
        object.__setattr__(self, "inverse", _validate(self))

    @property
    def morphisms(self) -> int:
        return len(self.src)

    def hom(self, x: int, y: int) -> list[int]:
        self._check_object(x)
        self._check_object(y)
        return [f for f in range(self.morphisms) if self.src[f] == x and self.dst[f] == y]

    def _check_object(self, x: int) -> None:
        if not isinstance(x, int) or not 0 <= x < self.objects:
            raise GroupoidError(f"unknown object {x!r}")

    def components(self) -> list[list[int]]:
        parent = list(range(self.objects))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for f in range(self.morphisms):
            a, b = find(self.src[f]), find(self.dst[f])
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for x in range(self.objects):
            groups.setdefault(find(x), []).append(x)
        return [groups[k] for k in sorted(groups)]

    def vertex_group(self, x: int) -> FiniteGroup:
        elems = self.hom(x, x)
        pos = {f: i for i, f in enumerate(elems)}
        table = [[pos[self.compose[g, f]] for f in elems] for g in elems]
        return FiniteGroup(table)

    def to_json(self) -> dict:
        return {
            "objects": self.objects,
            "morphisms": [{"src": s, "dst": d} for s, d in zip(self.src, self.dst)],
            "compose": [[f, g, h] for (f, g), h in sorted(self.compose.items())],
            "id": list(self.ident),
        }

    @classmethod
    def from_json(cls, data) -> FiniteGroupoid:
        try:
            morphisms = data["morphisms"]
            compose = {}
            for triple in data["compose"]:
                f, g, h = triple
                if (f, g) in compose and compose[f, g] != h:
                    raise GroupoidError(f"composite of {f} then {g} given twice")
                compose[f, g] = h
            return cls(int(data["objects"]), [m["src"] for m in morphisms],
                       [m["dst"] for m in morphisms], compose, data["id"])
        except (KeyError, TypeError, ValueError) as e:
            raise GroupoidError(f"malformed groupoid: {e!r}") from e


def _validate(g: FiniteGroupoid) -> tuple[int, ...]:
    n, m = g.objects, len(g.src)
    if n < 0 or len(g.dst) != m:
        raise GroupoidError("inconsistent object/morphism counts")
    for f in range(m):
        if not (0 <= g.src[f] < n and 0 <= g.dst[f] < n):
            raise GroupoidError(f"morphism {f} has an unknown endpoint", f)
    if len(g.ident) != n:
        raise GroupoidError("need exactly one identity per object")
    for x, e in enumerate(g.ident):
        if not 0 <= e < m or g.src[e] != x or g.dst[e] != x:
            raise GroupoidError(f"identity of object {x} must be an endomorphism of {x}", x)
    for (f, gg), h in g.compose.items():
        if not (0 <= f < m and 0 <= gg < m and 0 <= h < m) or g.dst[f] != g.src[gg]:
            raise GroupoidError(f"composite entry {[f, gg, h]} is not composable", (f, gg, h))
        if g.src[h] != g.src[f] or g.dst[h] != g.dst[gg]:
            raise GroupoidError(f"composite {h} of {f} then {gg} has wrong endpoints", (f, gg, h))
    out_of = [[] for _ in range(n)]
    for f in range(m):
        out_of[g.src[f]].append(f)
    for f in range(m):
        for gg in out_of[g.dst[f]]:
            if (f, gg) not in g.compose:
                raise GroupoidError(f"missing composite of {f} then {gg}", (f, gg))
    c = g.compose
    for f in range(m):
        if c[g.ident[g.src[f]], f] != f or c[f, g.ident[g.dst[f]]] != f:
            raise GroupoidError(f"identity law fails for morphism {f}", f)
    for f in range(m):
        for gg in out_of[g.dst[f]]:
            for h in out_of[g.dst[gg]]:
                if c[c[f, gg], h] != c[f, c[gg, h]]:
                    raise GroupoidError(f"composition is not associative on {(f, gg, h)}",
                                        (f, gg, h))
    inverse = []
    for f in range(m):
        inv = next((h for h in out_of[g.dst[f]]
                    if c[f, h] == g.ident[g.src[f]] and c[h, f] == g.ident[g.dst[f]]), None)
        if inv is None:
            raise GroupoidError(f"morphism {f} has no inverse", f)
        inverse.append(inv)
    return tuple(inverse)


def load_groupoid(path) -> FiniteGroupoid:
    with open(path, encoding="utf-8") as fh:
        try:
            return FiniteGroupoid.from_json(json.load(fh))
        except json.JSONDecodeError as e:
            raise GroupoidError(f"{path}: not valid JSON ({e})") from e


# ---------------------------------------------------------------- groups

class FiniteGroup:
    """Group on ``0..n-1`` with ``table[a][b] = a*b``; validated on construction."""

    def __init__(self, table: Sequence[Sequence[int]]):
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise GroupoidError("a group table must be a non-empty square")
        if any(not isinstance(v, int) or not 0 <= v < n for row in table for v in row):
            raise GroupoidError("group table entries must be element indices")
        self.table = [list(row) for row in table]
        self.order = n
        t = self.table
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupoidError(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))
        units = [e for e in range(n) if all(t[e][x] == x == t[x][e] for x in range(n))]
        if not units:
            raise GroupoidError("no identity element")
        self.identity = units[0]
        for a in range(n):
            if not any(t[a][b] == self.identity == t[b][a] for b in range(n)):
                raise GroupoidError(f"element {a} has no inverse", a)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k


def cyclic_group(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group(k: int) -> list[list[int]]:
    """Multiplication table of S_k; elements are permutations in lexicographic
    order and ``a*b`` means "apply b, then a"."""
    perms = list(itertools.permutations(range(k)))
    pos = {p: i for i, p in enumerate(perms)}
    return [[pos[tuple(a[b[i]] for i in range(k))] for b in perms] for a in perms]


def groups_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    """Brute-force search for a multiplication-preserving bijection."""
    n = g.order
    if n != h.order:
        return False
    og = [g.element_order(a) for a in range(n)]
    oh = [h.element_order(a) for a in range(n)]
    if Counter(og) != Counter(oh):
        return False
    image = [-1] * n
    used = [False] * n
    image[g.identity], used[h.identity] = h.identity, True
    order = [a for a in range(n) if a != g.identity]

    def consistent(a):
        for b in range(n):
            if image[b] < 0:
                continue
            for x, y in ((a, b), (b, a)):
                p = g.table[x][y]
                if image[p] >= 0 and image[p] != h.table[image[x]][image[y]]:
                    return False
        return True

    def rec(k):
        if k == len(order):
            return True
        a = order[k]
        for cand in range(n):
            if used[cand] or oh[cand] != og[a]:
                continue
            image[a], used[cand] = cand, True
            if consistent(a) and rec(k + 1):
                return True
            image[a], used[cand] = -1, False
        return False

    return rec(0)


# ---------------------------------------------------------------- constructions

def discrete(n: int) -> FiniteGroupoid:
    """n objects, identities only."""
    return FiniteGroupoid(n, range(n), range(n), {(x, x): x for x in range(n)}, range(n))


def point() -> FiniteGroupoid:
    return discrete(1)


def empty() -> FiniteGroupoid:
    return discrete(0)


def indiscrete(n: int) -> FiniteGroupoid:
    """n objects with exactly one morphism between any two (contractible)."""
    pairs = [(x, y) for x in range(n) for y in range(n)]
    idx = {p: i for i, p in enumerate(pairs)}
    compose = {(idx[x, y], idx[y, z]): idx[x, z] for x, y in pairs for z in range(n)}
    return FiniteGroupoid(n, [p[0] for p in pairs], [p[1] for p in pairs], compose,
                          [idx[x, x] for x in range(n)])


def delooping(table: Sequence[Sequence[int]]) -> FiniteGroupoid:
    """One object whose endomorphisms are the group elements."""
    grp = FiniteGroup(table)
    n = grp.order
    # "f, then g" is the product g*f
    compose = {(f, g): grp.table[g][f] for f in range(n) for g in range(n)}
    return FiniteGroupoid(1, [0] * n, [0] * n, compose, [grp.identity])


def action_groupoid(table: Sequence[Sequence[int]], action: Sequence[Sequence[int]]
                    ) -> FiniteGroupoid:
    """Objects are points; a morphism (g, x) goes from x to g.x.

    ``action[g][x]`` is the image of point x under group element g.
    """
    grp = FiniteGroup(table)
    npts = len(action[0]) if action else 0
    if len(action) != grp.order or any(len(row) != npts for row in action):
        raise GroupoidError("action table must have one row per group element")
    for g, h, x in itertools.product(range(grp.order), range(grp.order), range(npts)):
        if action[grp.table[g][h]][x] != action[g][action[h][x]]:
            raise GroupoidError(f"not an action: ({g}*{h}).{x} != {g}.({h}.{x})", (g, h, x))
    if any(action[grp.identity][x] != x for x in range(npts)):
        raise GroupoidError("identity element does not act trivially")
    morph = [(g, x) for x in range(npts) for g in range(grp.order)]
    idx = {m: i for i, m in enumerate(morph)}
    compose = {}
    for g, x in morph:
        for h in range(grp.order):
            compose[idx[g, x], idx[h, action[g][x]]] = idx[grp.table[h][g], x]
    return FiniteGroupoid(npts, [x for _, x in morph], [action[g][x] for g, x in morph],
                          compose, [idx[grp.identity, x] for x in range(npts)])


def disjoint_union(*parts: FiniteGroupoid) -> FiniteGroupoid:
    src, dst, ident, compose = [], [], [], {}
    obj_off = mor_off = 0
    for g in parts:
        src += [s + obj_off for s in g.src]
        dst += [d + obj_off for d in g.dst]
        ident += [e + mor_off for e in g.ident]
        compose.update({(f + mor_off, h + mor_off): k + mor_off
                        for (f, h), k in g.compose.items()})
        obj_off += g.objects
        mor_off += g.morphisms
    return FiniteGroupoid(obj_off, src, dst, compose, ident)


def relabel(g: FiniteGroupoid, obj_perm: Sequence[int], mor_perm: Sequence[int]
            ) -> FiniteGroupoid:
    """Isomorphic copy: object x becomes obj_perm[x], morphism f becomes mor_perm[f]."""
    m = g.morphisms
    src, dst = [0] * m, [0] * m
    for f in range(m):
        src[mor_perm[f]] = obj_perm[g.src[f]]
        dst[mor_perm[f]] = obj_perm[g.dst[f]]
    ident = [0] * g.objects
    for x in range(g.objects):
        ident[obj_perm[x]] = mor_perm[g.ident[x]]
    compose = {(mor_perm[f], mor_perm[h]): mor_perm[k] for (f, h), k in g.compose.items()}
    return FiniteGroupoid(g.objects, src, dst, compose, ident)


# ---------------------------------------------------------------- h-levels

def hom_type(g: FiniteGroupoid, x: int, y: int) -> FiniteGroupoid:
    """The identity type x = y: the discrete groupoid on the morphisms x -> y."""
    return discrete(len(g.hom(x, y)))


def is_contractible(g: FiniteGroupoid) -> bool:
    return g.objects > 0 and all(
        len(g.hom(x, y)) == 1 for x in range(g.objects) for y in range(g.objects))


def has_level(g: FiniteGroupoid, n: int) -> bool:
    """The inductive predicate: level -2 is contractibility, level n+1 means
    every identity type has level n."""
    if n < -2:
        return False
    if n == -2:
        return is_contractible(g)
    return all(has_level(hom_type(g, x, y), n - 1)
               for x in range(g.objects) for y in range(g.objects))


def h_level(g: FiniteGroupoid) -> int:
    """Least level of ``g``.  The empty groupoid gets -1 (the definition is
    vacuous there; the level list puts the empty type among propositions)."""
    if is_contractible(g):
        return -2
    if g.objects == 0:
        return -1
    return max(-1, 1 + max(h_level(hom_type(g, x, y))
                           for x in range(g.objects) for y in range(g.objects)))


def truncate(g: FiniteGroupoid, k: int) -> FiniteGroupoid:
    if not isinstance(k, int) or k < -2:
        raise GroupoidError(f"truncation level must be an integer >= -2, got {k!r}")
    if k == -2:
        if g.objects == 0:
            raise GroupoidError("the empty groupoid has no contractible truncation")
        return point()
    if k == -1:
        return empty() if g.objects == 0 else point()
    if k == 0:
        return discrete(len(g.components()))
    return g


def equivalent(g: FiniteGroupoid, h: FiniteGroupoid) -> bool:
    """Equivalence of groupoids: matching components with isomorphic vertex groups."""
    cg, ch = g.components(), h.components()
    if len(cg) != len(ch):
        return False
    left = [g.vertex_group(c[0]) for c in cg]
    right = [h.vertex_group(c[0]) for c in ch]
    unmatched = list(range(len(right)))
    for grp in left:
        hit = next((j for j in unmatched if groups_isomorphic(grp, right[j])), None)
        if hit is None:
            return False
        unmatched.remove(hit)
    return True
