"""Search for abelian subgroups of maximal order.

``max_abelian_order`` is the production search: a depth-first
branch-and-bound over abelian subgroups.  Each node holds a genuine
subgroup (the closure of the elements adjoined so far, never a bare
commuting set); children adjoin one element of the node's centralizer
at a time, in a fixed canonical order (element order descending, then
image tuple ascending), and each adjoined element must come later in
that order than the previous choice, which eliminates permuted revisits
of the same chain.  A subtree is cut when the centralizer of its
subgroup is no larger than the best order found so far, since every
abelian overgroup of A lies inside C_G(A).  The walk is rooted once per
conjugacy class (the quantity searched for is conjugation-invariant,
and any abelian subgroup is reached from the class representative of
one of its elements), and is seeded with the best cyclic order so the
bound bites immediately.

``max_abelian_brute`` is the independent oracle: a plain exhaustive
depth-first enumeration from the trivial subgroup over all elements,
with no conjugacy shortcuts and no pruning, visiting every abelian
subgroup at least once.  It shares nothing with the production search
beyond element enumeration.

Node counts are deterministic: identical inputs explore identical
trees.  Reported wall times are measurement only and never feed back
into the search.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .perms import DEFAULT_ENUM_CAP, PermGroup, Permutation, SubgroupHandle

DEFAULT_BRUTE_CAP = 2000


@dataclass
class AbelianWitness:
    """Generators certifying an abelian subgroup of the stated order."""

    generators: list[Permutation]
    order: int
    normal_in_parent: bool


@dataclass
class MaxAbelianResult:
    m: int
    witness: AbelianWitness
    nodes_explored: int
    wall_time: float


@dataclass
class PGroupBoundReport:
    """Exponent data for a p-group of order p^k.

    ``s`` is the exponent of a maximal-order abelian normal subgroup,
    ``c`` the exponent of the center, and ``v`` = s.  ``bound_holds``
    records k <= s(s+1)/2 and ``burnside_holds`` records
    k - v <= (v-c)(v+c-1)/2.
    """

    p: int
    k: int
    s: int
    c: int
    v: int
    bound_holds: bool
    burnside_holds: bool


class _SearchTables:
    """Canonically ordered element matrix with index arithmetic."""

    def __init__(self, group: PermGroup, enum_cap: int):
        table = group.element_table(enum_cap)
        matrix, orders = table.matrix, table.orders
        n, d = matrix.shape
        keys = tuple(matrix[:, i] for i in range(d - 1, -1, -1)) + (-orders,)
        canon = np.lexsort(keys)
        self.matrix = np.ascontiguousarray(matrix[canon])
        self.orders = orders[canon]
        self.index = {self.matrix[i].tobytes(): i for i in range(n)}
        self.n = n
        self.identity = self.index[
            np.arange(d, dtype=matrix.dtype).tobytes()
        ]
        # conjugacy-class representatives, as minimal canonical indices
        rank_of_enum = np.empty(n, dtype=np.int64)
        rank_of_enum[canon] = np.arange(n)
        _, classes = group.conjugacy_classes(enum_cap)
        self.class_reps = sorted(int(rank_of_enum[cls].min()) for cls in classes)
        self._cent_cache: dict[int, np.ndarray] = {}

    def mul(self, i: int, j: int) -> int:
        row = self.matrix[i][self.matrix[j]]
        return self.index[row.tobytes()]

    def centralizer_mask(self, i: int) -> np.ndarray:
        cached = self._cent_cache.get(i)
        if cached is None:
            row = self.matrix[i]
            cached = np.all(self.matrix[:, row] == row[self.matrix], axis=1)
            self._cent_cache[i] = cached
        return cached

    def clear_cache(self) -> None:
        self._cent_cache.clear()

    def extend_closure(self, subgroup: set[int], x: int) -> set[int]:
        """Closure of subgroup ∪ {x} when x centralizes the subgroup."""
        powers = [x]
        cur = self.mul(x, x)
        while cur != self.identity:
            powers.append(cur)
            cur = self.mul(cur, x)
        out = set(subgroup)
        for a in subgroup:
            for p in powers:
                out.add(self.mul(a, p))
        return out


def _search_tables(group: PermGroup, enum_cap: int) -> _SearchTables:
    cached = getattr(group, "_abelmax_tables", None)
    if cached is None:
        cached = _SearchTables(group, enum_cap)
        group._abelmax_tables = cached
    return cached


class _AbelianDFS:
    """Shared depth-first walk over abelian-subgroup chains.

    With ``prune`` the walk is the branch-and-bound described in the
    module docstring.  Without it the walk is exhaustive and invokes
    ``on_closure`` for every subgroup node constructed, which is what
    the normal-subgroup variant needs.
    """

    def __init__(self, group, enum_cap, prune=True, on_closure=None):
        self.group = group
        self.tables = _search_tables(group, enum_cap)
        self.prune = prune
        self.on_closure = on_closure
        self.nodes = 0
        self.best_order = 1
        self.best_chain: list[int] = []

    def run(self) -> None:
        t = self.tables
        if t.n == 1:
            return
        if self.prune:
            # seed: the best cyclic subgroup (first element of maximal order)
            self.best_order = int(t.orders.max())
            self.best_chain = [int(np.argmax(t.orders))]
        all_idx = np.arange(t.n, dtype=np.int64)
        for root in t.class_reps:
            if int(t.orders[root]) == 1:
                continue
            cmask = t.centralizer_mask(root)
            if self.prune and int(np.count_nonzero(cmask)) <= self.best_order:
                continue
            closure = t.extend_closure({t.identity}, root)
            self._visit(closure, [root])
            cand = all_idx[cmask]
            cand = cand[~np.isin(cand, np.fromiter(closure, dtype=np.int64))]
            self._expand(closure, [root], cmask, cand)
            t.clear_cache()

    def _visit(self, closure: set[int], chain: list[int]) -> None:
        self.nodes += 1
        if len(closure) > self.best_order:
            self.best_order = len(closure)
            self.best_chain = list(chain)
        if self.on_closure is not None:
            self.on_closure(closure, chain)

    def _expand(self, closure, chain, cmask, cand) -> None:
        t = self.tables
        for pos in range(len(cand)):
            x = int(cand[pos])
            bmask = cmask & t.centralizer_mask(x)
            if self.prune and int(np.count_nonzero(bmask)) <= self.best_order:
                continue
            bigger = t.extend_closure(closure, x)
            self._visit(bigger, chain + [x])
            rest = cand[pos + 1 :]
            if rest.size:
                sub = rest[bmask[rest]]
                if sub.size:
                    sub = sub[~np.isin(sub, np.fromiter(bigger, dtype=np.int64))]
                if sub.size:
                    self._expand(bigger, chain + [x], bmask, sub)


def _witness_from_chain(
    group: PermGroup, tables: _SearchTables, chain: list[int]
) -> AbelianWitness:
    if not chain:
        return AbelianWitness([], 1, True)
    gens = [Permutation(tables.matrix[i].tolist()) for i in chain]
    handle = SubgroupHandle(group, gens, PermGroup(gens).order_value)
    return AbelianWitness(gens, handle.order, group.is_normal(handle))


def max_abelian_order(
    group: PermGroup, enum_cap: int = DEFAULT_ENUM_CAP
) -> MaxAbelianResult:
    """Exact maximal abelian subgroup order, by pruned branch-and-bound."""
    t0 = time.perf_counter()
    dfs = _AbelianDFS(group, enum_cap, prune=True)
    dfs.run()
    tables = dfs.tables
    witness = _witness_from_chain(group, tables, dfs.best_chain)
    assert witness.order == dfs.best_order
    return MaxAbelianResult(
        dfs.best_order, witness, dfs.nodes, time.perf_counter() - t0
    )


def max_abelian_brute(
    group: PermGroup, brute_cap: int = DEFAULT_BRUTE_CAP
) -> MaxAbelianResult:
    """Exhaustive oracle for the maximal abelian order.

    Works directly on image tuples, enumerates chains from the trivial
    subgroup over all elements (no conjugacy reduction), and never
    prunes, so every abelian subgroup is visited at least once.
    """
    n = group.order_value
    if n > brute_cap:
        raise CapacityError(f"group order {n} exceeds brute-force cap {brute_cap}")
    t0 = time.perf_counter()
    elems = group.enumerate_elements(brute_cap)
    imgs = [e.images for e in elems]
    index = {img: i for i, img in enumerate(imgs)}

    def mul(i, j):
        a, b = imgs[i], imgs[j]
        return index[tuple(a[x] for x in b)]

    def commutes(i, j):
        return mul(i, j) == mul(j, i)

    def closure_with(subgroup, x):
        powers = [x]
        cur = mul(x, x)
        while cur != 0:
            powers.append(cur)
            cur = mul(cur, x)
        out = set(subgroup)
        for a in subgroup:
            for p in powers:
                out.add(mul(a, p))
        return out

    state = {"best": 1, "chain": [], "nodes": 0}

    def visit(closure, chain):
        state["nodes"] += 1
        if len(closure) > state["best"]:
            state["best"] = len(closure)
            state["chain"] = list(chain)

    def extend(closure, chain, cand):
        for pos, x in enumerate(cand):
            bigger = closure_with(closure, x)
            visit(bigger, chain + [x])
            rest = [
                y for y in cand[pos + 1 :] if y not in bigger and commutes(y, x)
            ]
            if rest:
                extend(bigger, chain + [x], rest)

    for x in range(1, n):
        clo = closure_with({0}, x)
        visit(clo, [x])
        cand = [y for y in range(x + 1, n) if y not in clo and commutes(x, y)]
        if cand:
            extend(clo, [x], cand)

    gens = [elems[i] for i in state["chain"]]
    if gens:
        handle = SubgroupHandle(group, gens, PermGroup(gens).order_value)
        witness = AbelianWitness(gens, handle.order, group.is_normal(handle))
    else:
        witness = AbelianWitness([], 1, True)
    assert witness.order == state["best"]
    return MaxAbelianResult(
        state["best"], witness, state["nodes"], time.perf_counter() - t0
    )


def _pgroup_exponent(order: int, p: int) -> int:
    k = 0
    while order % p == 0:
        order //= p
        k += 1
    if order != 1:
        raise ValueError("order is not a power of p")
    return k


def max_abelian_normal(
    pgroup: PermGroup, enum_cap: int = DEFAULT_ENUM_CAP
) -> AbelianWitness:
    """An abelian normal subgroup of maximal order in a p-group.

    Exhaustive over abelian-subgroup chains (normality cannot be
    bounded the way plain order can), with the normality test memoized
    per distinct subgroup.  Abelian input is returned whole.
    """
    factors = pgroup.order.factors
    if len(factors) != 1:
        raise ValueError(
            f"not a p-group: order {pgroup.order_value} = {pgroup.order.factored_str()}"
        )
    if pgroup.is_abelian():
        return AbelianWitness(list(pgroup.generators), pgroup.order_value, True)
    tables = _search_tables(pgroup, enum_cap)
    gen_rows = [np.array(g.images) for g in pgroup.generators]
    gen_inv_rows = [np.array(g.inverse().images) for g in pgroup.generators]

    seen: dict[frozenset, bool] = {}
    best = {"order": 0, "chain": None}

    def is_normal_set(closure: frozenset) -> bool:
        for garr, ginv in zip(gen_rows, gen_inv_rows):
            for i in closure:
                conj = garr[tables.matrix[i][ginv]].astype(tables.matrix.dtype)
                if tables.index[conj.tobytes()] not in closure:
                    return False
        return True

    def on_closure(closure, chain):
        key = frozenset(closure)
        normal = seen.get(key)
        if normal is None:
            normal = is_normal_set(key)
            seen[key] = normal
        if normal and len(closure) > best["order"]:
            best["order"] = len(closure)
            best["chain"] = list(chain)

    dfs = _AbelianDFS(pgroup, enum_cap, prune=False, on_closure=on_closure)
    dfs.run()
    assert best["chain"] is not None  # the center guarantees a hit
    witness = _witness_from_chain(pgroup, tables, best["chain"])
    assert witness.order == best["order"] and witness.normal_in_parent
    return witness


def pgroup_bound_check(
    pgroup: PermGroup, enum_cap: int = DEFAULT_ENUM_CAP
) -> PGroupBoundReport:
    """Exponent bounds relating |P|, its center, and its largest abelian normal subgroup."""
    factors = pgroup.order.factors
    if len(factors) != 1 or pgroup.order_value == 1:
        raise ValueError("input must be a nontrivial p-group")
    (p, k), = factors.items()
    witness = max_abelian_normal(pgroup, enum_cap)
    s = _pgroup_exponent(witness.order, p)
    c = _pgroup_exponent(pgroup.center(enum_cap).order, p)
    v = s
    return PGroupBoundReport(
        p=p,
        k=k,
        s=s,
        c=c,
        v=v,
        bound_holds=k <= s * (s + 1) // 2,
        burnside_holds=(k - v) <= (v - c) * (v + c - 1) // 2,
    )
