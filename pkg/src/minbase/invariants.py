"""Exact intersection number, base number and b(G,H) with witness
certificates, chief series with non-Frattini flags, and the chief-factor
upper bound on the intersection number.

Everything works on a GroupTable (full element table of the ambient
group), so subgroup states are frozensets and searches are breadth-first
with memoized intersection states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .lattice import (
    GroupTable,
    Lattice,
    SubgroupRecord,
    conjugacy_classes_of_subgroups,
    core,
    derived_subgroup_set,
    frattini,
    is_nilpotent_set,
    is_soluble,
    normal_subgroups,
)
from .perm import CosetAction, PermGroup


class NotSoluble(ValueError):
    pass


# ---------------------------------------------------------------------------
# intersection number


@dataclass
class AlphaCertificate:
    value: int
    witness: list
    frattini_order: int
    exhaustive: bool = True

    def verify(self, table) -> bool:
        inter = frozenset.intersection(*(rec.elements for rec in self.witness))
        return len(inter) == self.frattini_order and len(self.witness) == self.value


def alpha(lattice: Lattice) -> AlphaCertificate:
    """Minimal number of maximal subgroups intersecting to the Frattini
    subgroup, by breadth-first search over distinct intersection states.

    The first subgroup ranges over conjugacy-class representatives only
    (the quantity is conjugation-invariant); all later choices range over
    every maximal subgroup.
    """
    table = lattice.table
    if table.n == 1:
        raise ValueError("the trivial group has no maximal subgroups")
    maxs = lattice.maximal_subgroups()
    frat = frattini(lattice).elements
    reps = [cls[0] for cls in conjugacy_classes_of_subgroups(lattice, maxs)]
    states = {}
    for rec in reps:
        states.setdefault(rec.elements, [rec])
    seen = set(states)
    depth = 1
    while True:
        for elems, chain in states.items():
            if elems == frat:
                return AlphaCertificate(depth, chain, len(frat))
        nxt = {}
        for elems, chain in states.items():
            for rec in maxs:
                inter = elems & rec.elements
                if inter == elems or inter in seen or inter in nxt:
                    continue
                nxt[inter] = chain + [rec]
        if not nxt:
            raise RuntimeError("search exhausted without reaching the Frattini subgroup")
        seen.update(nxt)
        states = nxt
        depth += 1


# ---------------------------------------------------------------------------
# base size of a primitive action and the base number


@dataclass
class BaseSizeCertificate:
    value: int
    subgroup: SubgroupRecord
    conjugators: list  # element indices; the witness conjugates are H^g
    core_order: int

    def verify(self, table) -> bool:
        inter = set(self.subgroup.elements)
        for g in self.conjugators:
            inter &= table.conjugate_set(self.subgroup.elements, g)
        return len(inter) == self.core_order and len(self.conjugators) == self.value - 1


def base_size_subgroup(lattice: Lattice, H: SubgroupRecord) -> BaseSizeCertificate:
    """Minimal number of conjugates of the maximal subgroup H whose
    intersection is the core of H, by BFS over intersection states."""
    table = lattice.table
    idx = lattice._by_key.get(H.elements)
    if idx is None or not lattice.maximal_flags[idx] or H.order == table.n:
        raise ValueError("H must be a maximal subgroup of the ambient group")
    # conjugates, each with one conjugating element
    conjugates = {H.elements: table.identity}
    stack = [H.elements]
    while stack:
        cur = stack.pop()
        c = conjugates[cur]
        for g in table.gen_idx:
            conj = table.conjugate_set(cur, g)
            if conj not in conjugates:
                conjugates[conj] = table.mul[c][g]
                stack.append(conj)
    core_elems = frozenset.intersection(*conjugates.keys())
    states = {H.elements: []}
    seen = {H.elements}
    depth = 1
    while True:
        for elems, gs in states.items():
            if elems == core_elems:
                return BaseSizeCertificate(depth, H, gs, len(core_elems))
        nxt = {}
        for elems, gs in states.items():
            for conj, g in conjugates.items():
                inter = elems & conj
                if inter == elems or inter in seen or inter in nxt:
                    continue
                nxt[inter] = gs + [g]
        if not nxt:
            raise RuntimeError("conjugate intersections never reached the core")
        seen.update(nxt)
        states = nxt
        depth += 1


@dataclass
class BetaCertificate:
    value: object  # int or math.inf
    chosen: object  # BaseSizeCertificate or None
    empty_star_evidence: list  # (maximal class rep, core order) when infinite
    frattini_order: int = 0


def beta(lattice: Lattice) -> BetaCertificate:
    """Minimum of b(G,H) over maximal H whose core equals the Frattini
    subgroup; infinity (with per-class core evidence) if there is none."""
    table = lattice.table
    frat = frattini(lattice).elements
    maxs = lattice.maximal_subgroups()
    classes = conjugacy_classes_of_subgroups(lattice, maxs)
    star_reps = []
    evidence = []
    for cls in classes:
        rec = cls[0]
        c = core(lattice, rec)
        if c.elements == frat:
            star_reps.append(rec)
        else:
            evidence.append((rec, c.order))
    if not star_reps:
        return BetaCertificate(math.inf, None, evidence, len(frat))
    best = None
    for rec in star_reps:
        cert = base_size_subgroup(lattice, rec)
        if best is None or cert.value < best.value:
            best = cert
    return BetaCertificate(best.value, best, [], len(frat))


# ---------------------------------------------------------------------------
# chief series, chief length, non-Frattini count


@dataclass
class ChiefFactor:
    top: SubgroupRecord
    bottom: SubgroupRecord
    order: int
    abelian: bool
    non_frattini: bool
    composition_length: int


@dataclass
class ChiefSeriesReport:
    series: list  # SubgroupRecords, descending from G to 1
    factors: list  # ChiefFactor, top-down
    chief_length: int
    non_frattini_count: int


def _prime_power(n):
    for p in range(2, n + 1):
        if p * p > n:
            return n, 1
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            return (p, k) if n == 1 else (None, None)
    return None, None


def _quotient_table(table: GroupTable, K: SubgroupRecord, cap=2000):
    """The quotient by a normal subgroup, realized through the coset
    action of the underlying permutation group (degree = index of K)."""
    Kperm = table.subgroup_perm_group(K)
    action = CosetAction(table.group, Kperm)
    qtable = GroupTable(action.image, cap)
    return qtable, action


def chief_series(lattice: Lattice) -> ChiefSeriesReport:
    """A chief series of the ambient group with per-factor flags."""
    table = lattice.table
    normals = normal_subgroups(lattice)
    frat = frattini(lattice).elements
    series = [lattice.find(frozenset(range(table.n)))]
    while series[-1].order > 1:
        cur = series[-1].elements
        below = [r for r in normals if r.elements < cur]
        best = max(below, key=lambda r: (r.order, r.key()))
        series.append(best)
    factors = []
    for top, bottom in zip(series, series[1:]):
        order = top.order // bottom.order
        abelian = derived_subgroup_set(table, top.elements) <= bottom.elements
        p, k = _prime_power(order)
        if abelian:
            comp_len = k
        else:
            comp_len = _composition_length_of_factor(table, top, bottom)
        if bottom.order == 1:
            nf = not (top.elements <= frat)
        else:
            qtable, action = _quotient_table(table, bottom)
            qlat = Lattice(qtable)
            qfrat = frattini(qlat).elements
            img = _subgroup_image_in_quotient(table, bottom, top, qtable, action)
            nf = not (img <= qfrat)
        factors.append(
            ChiefFactor(top, bottom, order, abelian, nf, comp_len)
        )
    return ChiefSeriesReport(
        series,
        factors,
        len(factors),
        sum(1 for f in factors if f.non_frattini),
    )


def _subgroup_image_in_quotient(table, K, H, qtable, action=None):
    """Image of H in the quotient by K, as a set of quotient indices."""
    if action is None:
        action = CosetAction(table.group, table.subgroup_perm_group(K))
    img_gens = [
        action.perm_image(table.perm_of(g))
        for g in table.subgroup_generators(H.elements)
    ]
    return qtable.closure([qtable.index[g] for g in img_gens])


def _composition_length_of_factor(table, top, bottom) -> int:
    """Composition length of the section top/bottom."""
    if bottom.order == 1:
        sub = table.subgroup_perm_group(top)
        return _composition_length_of_group(sub)
    qtable, action = _quotient_table(table, bottom)
    img = _subgroup_image_in_quotient(table, bottom, top, qtable, action)
    rec = SubgroupRecord.from_set(qtable, img)
    return _composition_length_of_factor(qtable, rec, _trivial_record(qtable))


def _trivial_record(table):
    return SubgroupRecord.from_set(table, frozenset([table.identity]))


def _composition_length_of_group(G: PermGroup) -> int:
    if G.order == 1:
        return 0
    order = G.order
    p, k = _prime_power(order)
    table = GroupTable(G, 2000)
    if derived_subgroup_set(table) == frozenset([table.identity]) and p is not None:
        return k
    lat = Lattice(table)
    normals = [r for r in normal_subgroups(lat) if r.order > 1]
    minimal = min(normals, key=lambda r: (r.order, r.key()))
    if minimal.order == order:
        return 1  # simple
    below = _composition_length_of_group(table.subgroup_perm_group(minimal))
    qtable, _ = _quotient_table(table, minimal)
    return below + _composition_length_of_group(qtable.group)


def chief_length_mod_frattini(lattice: Lattice) -> int:
    """Chief length of the quotient by the Frattini subgroup."""
    table = lattice.table
    frat_rec = frattini(lattice)
    if frat_rec.order == 1:
        return chief_series(lattice).chief_length
    qtable, _ = _quotient_table(table, frat_rec)
    return chief_series(Lattice(qtable)).chief_length


# ---------------------------------------------------------------------------
# chief-factor modules over the prime field and the general bound


def _gl_matrices_of_abelian_factor(table, top, bottom, p, d):
    """Conjugation matrices of the ambient generators on the section
    top/bottom, an elementary abelian p-group of rank d, over F_p."""
    mul, inv = table.mul, table.inv
    Kset = bottom.elements
    coset_of = {}
    reps = []
    for x in sorted(top.elements):
        if x in coset_of:
            continue
        cid = len(reps)
        reps.append(x)
        for k in Kset:
            coset_of[mul[k][x]] = cid
    ident_coset = coset_of[table.identity]
    # label cosets with F_p^d coordinates by greedy spanning
    vec_of = {ident_coset: (0,) * d}
    basis = []
    for cid in range(len(reps)):
        if cid in vec_of:
            continue
        j = len(basis)
        basis.append(cid)
        current = list(vec_of.items())
        for known_cid, v in current:
            acc = known_cid
            for i in range(1, p):
                acc = coset_of[mul[reps[acc]][reps[cid]]]
                vec = list(v)
                vec[j] = (vec[j] + i) % p
                vec_of[acc] = tuple(vec)
    assert len(basis) == d and len(vec_of) == len(reps)
    mats = []
    for g in table.gen_idx:
        cols = []
        for cid in basis:
            img = coset_of[mul[mul[inv[g]][reps[cid]]][g]]
            cols.append(vec_of[img])
        # matrix with columns = images of basis vectors
        mats.append(tuple(tuple(cols[j][i] for j in range(d)) for i in range(d)))
    return mats


def _solve_intertwiners(mats_a, mats_b, p, d):
    """Basis of {T : T A_g = B_g T for all g} over F_p, d x d matrices."""
    rows = []
    for A, B in zip(mats_a, mats_b):
        for i in range(d):
            for j in range(d):
                # entry (i,j) of T*A - B*T, linear in T's entries
                row = [0] * (d * d)
                for k in range(d):
                    row[i * d + k] = (row[i * d + k] + A[k][j]) % p
                for k in range(d):
                    row[k * d + j] = (row[k * d + j] - B[i][k]) % p
                rows.append(row)
    return _nullspace(rows, d * d, p)


def _nullspace(rows, ncols, p):
    rows = [r[:] for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = pow(rows[r][c], p - 2, p) if p > 2 else rows[r][c]
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rows[i][fc]) % p
        basis.append(tuple(v))
    return basis


def _is_invertible(flat, d, p):
    m = [list(flat[i * d : (i + 1) * d]) for i in range(d)]
    r = 0
    for c in range(d):
        pivot = next((i for i in range(r, d) if m[i][c] % p), None)
        if pivot is None:
            return False
        m[r], m[pivot] = m[pivot], m[r]
        inv = pow(m[r][c], p - 2, p) if p > 2 else m[r][c]
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(d):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
    return True


@dataclass
class ChiefBoundReport:
    abelian_classes: list  # (delta, dim_over_endo, p, d)
    nonabelian_classes: list  # (delta, n_A)
    bound: int
    alpha_value: int
    soluble: bool
    soluble_bound: object  # sum of (delta + 3) over abelian classes, or None
    verdict: bool


def chief_factor_bound(lattice: Lattice) -> ChiefBoundReport:
    """Upper bound on the intersection number from the non-Frattini chief
    factors: abelian classes are grouped by module isomorphism over the
    prime field (exact); non-abelian ones by order and composition length
    (an approximation that can only split true classes)."""
    table = lattice.table
    report = chief_series(lattice)
    nf = [f for f in report.factors if f.non_frattini]
    ab = [f for f in nf if f.abelian]
    nonab = [f for f in nf if not f.abelian]
    # abelian: compute module matrices, then group by isomorphism
    mods = []
    for f in ab:
        p, d = _prime_power(f.order)
        mats = _gl_matrices_of_abelian_factor(table, f.top, f.bottom, p, d)
        mods.append((f, p, d, mats))
    classes = []
    for item in mods:
        placed = False
        for cls in classes:
            f0, p0, d0, mats0 = cls[0]
            if item[1] == p0 and item[2] == d0:
                sols = _solve_intertwiners(item[3], mats0, p0, d0)
                nonzero = [s for s in sols if any(s)]
                if nonzero:
                    assert _is_invertible(nonzero[0], d0, p0)
                    cls.append(item)
                    placed = True
                    break
        if not placed:
            classes.append([item])
    abelian_classes = []
    for cls in classes:
        f0, p, d, mats = cls[0]
        e = len(_solve_intertwiners(mats, mats, p, d))
        assert e >= 1 and d % e == 0
        abelian_classes.append((len(cls), d // e, p, d))
    nonab_groups = {}
    for f in nonab:
        key = (f.order, f.composition_length)
        nonab_groups.setdefault(key, []).append(f)
    nonabelian_classes = [
        (len(v), k[1]) for k, v in sorted(nonab_groups.items())
    ]
    bound = sum(delta for delta, *_ in abelian_classes)
    bound += sum(dim for _, dim, *_ in abelian_classes)
    bound += sum(max(4, delta) for delta, _ in nonabelian_classes)
    bound += sum((3 * n - 1) // 2 for _, n in nonabelian_classes)
    a = alpha(lattice)
    soluble = is_soluble(table)
    soluble_bound = (
        sum(delta + 3 for delta, *_ in abelian_classes) if soluble else None
    )
    return ChiefBoundReport(
        abelian_classes,
        nonabelian_classes,
        bound,
        a.value,
        soluble,
        soluble_bound,
        a.value <= bound,
    )


@dataclass
class SolubleReport:
    alpha_value: int
    chief_length: int
    non_frattini_count: int
    derived_nilpotent: bool
    alpha_le_length: bool
    alpha_le_non_frattini: object  # bool, or None when not applicable


def soluble_bounds_report(lattice: Lattice) -> SolubleReport:
    """For a soluble group: intersection number against chief length, and
    against the non-Frattini count when the derived subgroup is nilpotent."""
    table = lattice.table
    if not is_soluble(table):
        raise NotSoluble("the group is not soluble")
    a = alpha(lattice).value
    report = chief_series(lattice)
    lam = report.chief_length
    delta = report.non_frattini_count
    derived = derived_subgroup_set(table)
    dnil = is_nilpotent_set(table, derived)
    return SolubleReport(
        a,
        lam,
        delta,
        dnil,
        a <= lam,
        (a <= delta) if dnil else None,
    )


# ---------------------------------------------------------------------------
# empirical fixed-point-ratio sum


def _is_prime(n):
    if n < 2:
        return False
    for p in range(2, int(n**0.5) + 1):
        if n % p == 0:
            return False
    return True


def qhat_empirical(table: GroupTable, H: SubgroupRecord, c: int) -> Fraction:
    """Exact sum over prime-order classes of |x^G| * fpr(x)^c, with
    fpr(x) = |x^G ∩ H| / |x^G|, for the action on cosets of H."""
    if c < 1:
        raise ValueError("c must be at least 1")
    if H.order == table.n:
        raise ValueError("H must be a proper subgroup")
    mul, inv = table.mul, table.inv
    visited = bytearray(table.n)
    total = Fraction(0)
    for x in range(table.n):
        if visited[x] or not _is_prime(table.element_order[x]):
            continue
        cls = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in table.gen_idx:
                z = mul[mul[inv[g]][y]][g]
                if z not in cls:
                    cls.add(z)
                    stack.append(z)
        for y in cls:
            visited[y] = 1
        size = len(cls)
        in_h = len(cls & H.elements)
        total += Fraction(in_h**c, size ** (c - 1))
    return total
