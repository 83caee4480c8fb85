"""Exhaustive subgroup machinery for small groups.

A GroupTable holds the full element list of an ambient permutation group
(capped order) with a multiplication table, so subgroups become frozensets
of element indices and intersections become set operations.  The lattice
is generated by extending each known subgroup by double-coset
representatives, which reaches every subgroup exactly once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .perm import PermGroup, compose, format_perm, identity, inverse, perm_order


class OrderCapExceeded(ValueError):
    pass


class GroupTable:
    """Element table of a finite permutation group with order <= cap."""

    HARD_CAP = 2000

    def __init__(self, group: PermGroup, order_cap: int = 1000):
        cap = min(order_cap, self.HARD_CAP)
        if group.order > cap:
            raise OrderCapExceeded(
                f"group order {group.order} exceeds cap {cap}"
            )
        self.group = group
        self.degree = group.degree
        elems = sorted(group.elements())
        self.elements = elems
        self.n = len(elems)
        index = {p: i for i, p in enumerate(elems)}
        self.index = index
        self.identity = index[identity(group.degree)]
        # multiplication via short keys: an element is pinned down by its
        # images of the chain base, so row building avoids full composes
        base = group.base if group.base else [0]
        key_of = {tuple(p[b] for b in base): i for i, p in enumerate(elems)}
        self.mul = [
            [key_of[tuple(q[p[b]] for b in base)] for q in elems] for p in elems
        ]
        self.inv = [index[inverse(p)] for p in elems]
        self.gen_idx = [index[g] for g in group.generators]
        if not self.gen_idx:
            self.gen_idx = [self.identity]
        self.element_order = [perm_order(p) for p in elems]

    # -- elementary operations ----------------------------------------------

    def closure(self, gens):
        """Subgroup generated by the given element indices, as a frozenset."""
        e = self.identity
        seen = {e}
        frontier = [e]
        mul = self.mul
        gens = [g for g in gens if g != e]
        while frontier:
            x = frontier.pop()
            row = mul[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def conjugate_set(self, elems, g):
        gi = self.inv[g]
        mul = self.mul
        row = mul[gi]
        return frozenset(mul[row[x]][g] for x in elems)

    def is_subgroup_set(self, elems):
        mul = self.mul
        return all(mul[a][b] in elems for a in elems for b in elems)

    def subgroup_generators(self, elems):
        """Greedy small generating list for a subgroup given as a set."""
        gens = []
        have = {self.identity}
        for x in sorted(elems):
            if x not in have:
                gens.append(x)
                have = self.closure(gens)
                if len(have) == len(elems):
                    break
        return tuple(gens)

    def perm_of(self, idx):
        return self.elements[idx]

    def word_of(self, idx) -> str:
        return format_perm(self.elements[idx])

    def subgroup_perm_group(self, record) -> PermGroup:
        return PermGroup(
            [self.elements[i] for i in record.generators] or [],
            self.degree,
        )


@dataclass(frozen=True)
class SubgroupRecord:
    parent: GroupTable = field(compare=False, repr=False)
    elements: frozenset
    order: int
    generators: tuple

    @staticmethod
    def from_set(table, elems, gens=None):
        if gens is None:
            gens = table.subgroup_generators(elems)
        return SubgroupRecord(table, frozenset(elems), len(elems), tuple(gens))

    def key(self):
        return tuple(sorted(self.elements))

    def contains(self, other: "SubgroupRecord") -> bool:
        return other.elements <= self.elements


class Lattice:
    """All subgroups of the ambient group, with maximality flags."""

    def __init__(self, table: GroupTable):
        self.table = table
        self.subgroups: list[SubgroupRecord] = []
        self.maximal_flags: list[bool] = []
        self._by_key = {}
        self._build()

    def _build(self):
        table = self.table
        m = table.n
        full = frozenset(range(m))

        def add(elems, gens):
            key = elems
            if key in self._by_key:
                return self._by_key[key]
            rec = SubgroupRecord.from_set(table, elems, gens)
            self._by_key[key] = len(self.subgroups)
            self.subgroups.append(rec)
            self.maximal_flags.append(True)
            return len(self.subgroups) - 1

        trivial = frozenset([table.identity])
        add(trivial, ())
        add(full, tuple(table.gen_idx))
        worklist = [trivial]
        processed = set()
        while worklist:
            elems = worklist.pop(0)
            if elems in processed:
                continue
            processed.add(elems)
            rec = self.subgroups[self._by_key[elems]]
            if 2 * rec.order >= m:
                # only the whole group lies above; H is maximal unless H = G
                if rec.order < m:
                    self.maximal_flags[self._by_key[elems]] = True
                continue
            gens = list(rec.generators)
            visited = bytearray(m)
            for x in elems:
                visited[x] = 1
            reached_only_full = True
            mul = self.table.mul
            for g in range(m):
                if visited[g]:
                    continue
                # mark the double coset H g H
                stack = [g]
                visited[g] = 1
                while stack:
                    x = stack.pop()
                    for h in gens or [table.identity]:
                        for y in (mul[h][x], mul[x][h]):
                            if not visited[y]:
                                visited[y] = 1
                                stack.append(y)
                new_elems = table.closure(list(gens) + [g])
                if len(new_elems) < m:
                    reached_only_full = False
                    idx = add(new_elems, tuple(gens) + (g,))
                    worklist.append(new_elems)
            if rec.order < m:
                self.maximal_flags[self._by_key[elems]] = reached_only_full
        # canonical order: by order then element tuple
        order = sorted(
            range(len(self.subgroups)),
            key=lambda i: (self.subgroups[i].order, self.subgroups[i].key()),
        )
        self.subgroups = [self.subgroups[i] for i in order]
        self.maximal_flags = [self.maximal_flags[i] for i in order]
        self._by_key = {rec.elements: i for i, rec in enumerate(self.subgroups)}

    def find(self, elems) -> SubgroupRecord:
        return self.subgroups[self._by_key[frozenset(elems)]]

    def maximal_subgroups(self):
        return [
            rec
            for rec, flag in zip(self.subgroups, self.maximal_flags)
            if flag and rec.order < self.table.n
        ]


def all_subgroups(G: PermGroup, order_cap: int = 1000):
    """Complete subgroup list of G (order capped), each exactly once."""
    table = GroupTable(G, order_cap)
    return Lattice(table).subgroups


def maximal_subgroups(lattice: Lattice):
    return lattice.maximal_subgroups()


def frattini(lattice: Lattice) -> SubgroupRecord:
    """Intersection of all maximal subgroups."""
    maxs = lattice.maximal_subgroups()
    table = lattice.table
    if not maxs:
        return lattice.find(frozenset(range(table.n)))
    elems = frozenset.intersection(*(rec.elements for rec in maxs))
    return lattice.find(elems)


def core(lattice: Lattice, H: SubgroupRecord) -> SubgroupRecord:
    """Largest normal subgroup inside H: intersection over all conjugates."""
    table = lattice.table
    if not H.elements <= frozenset(range(table.n)):
        raise ValueError("H does not live in this group")
    seen = {H.elements}
    stack = [H.elements]
    inter = set(H.elements)
    while stack:
        cur = stack.pop()
        for g in table.gen_idx:
            conj = table.conjugate_set(cur, g)
            if conj not in seen:
                seen.add(conj)
                stack.append(conj)
                inter &= conj
    return lattice.find(frozenset(inter))


def conjugacy_classes_of_subgroups(lattice: Lattice, records):
    """Partition records into conjugacy classes; reps are canonical-min."""
    table = lattice.table
    remaining = {rec.elements: rec for rec in records}
    classes = []
    while remaining:
        start = min(remaining, key=lambda e: tuple(sorted(e)))
        orbit = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            for g in table.gen_idx:
                conj = table.conjugate_set(cur, g)
                if conj not in orbit:
                    orbit.add(conj)
                    stack.append(conj)
        cls = [remaining.pop(e) for e in orbit if e in remaining]
        cls.sort(key=lambda r: r.key())
        classes.append(cls)
    classes.sort(key=lambda cls: cls[0].key())
    return classes


def normal_subgroups(lattice: Lattice):
    table = lattice.table
    out = []
    for rec in lattice.subgroups:
        if all(
            table.conjugate_set(rec.elements, g) == rec.elements
            for g in table.gen_idx
        ):
            out.append(rec)
    return out


def derived_subgroup_set(table: GroupTable, elems=None):
    """Commutator subgroup (of a subgroup, default the whole group)."""
    if elems is None:
        elems = range(table.n)
    elems = list(elems)
    mul, inv = table.mul, table.inv
    comms = set()
    for a in elems:
        for b in elems:
            comms.add(mul[mul[inv[a]][inv[b]]][mul[a][b]])
    return table.closure(table.subgroup_generators(table.closure(sorted(comms))))


def is_soluble(table: GroupTable) -> bool:
    cur = frozenset(range(table.n))
    while len(cur) > 1:
        nxt = derived_subgroup_set(table, cur)
        if nxt == cur:
            return False
        cur = nxt
    return True


def is_nilpotent_set(table: GroupTable, elems) -> bool:
    """Lower central series of the subgroup on the given elements."""
    full = frozenset(elems)
    cur = full
    mul, inv = table.mul, table.inv
    while len(cur) > 1:
        comms = set()
        for a in full:
            for b in cur:
                comms.add(mul[mul[inv[a]][inv[b]]][mul[a][b]])
        nxt = table.closure(table.subgroup_generators(table.closure(sorted(comms))))
        if nxt == cur:
            return False
        cur = nxt
    return True


def lattice_to_json(lattice: Lattice) -> str:
    """Subgroup list with orders, generator words and inclusion edges."""
    subs = lattice.subgroups
    entries = []
    for i, rec in enumerate(subs):
        entries.append(
            {
                "id": i,
                "order": rec.order,
                "generators": [lattice.table.word_of(g) for g in rec.generators],
                "maximal": lattice.maximal_flags[i] and rec.order < lattice.table.n,
            }
        )
    edges = []
    for i, a in enumerate(subs):
        for j, b in enumerate(subs):
            if i != j and a.order < b.order and a.elements <= b.elements:
                # keep only covering edges
                if not any(
                    a.elements <= c.elements < b.elements and c.order > a.order
                    for k, c in enumerate(subs)
                    if k not in (i, j) and c.elements < b.elements
                ):
                    edges.append([i, j])
    return json.dumps({"subgroups": entries, "inclusions": edges}, indent=1)
