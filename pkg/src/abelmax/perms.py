"""Finite permutation group engine.

Permutations act on the points 0..degree-1 and are stored as image
tuples.  Groups are built from generators; the order and membership
tests come from a deterministic stabilizer chain (base points are
chosen as the smallest moved point at each level, orbits are explored
breadth-first with the generators in list order, so identical inputs
always produce identical chains).

Bulk element work (centralizers, conjugation, normalizer scans) runs on
a numpy matrix holding one image row per group element; groups are
enumerated only when their order fits under an explicit cap, and the
cap is enforced with a CapacityError rather than truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError
from .numtheory import FactoredInteger

DEFAULT_ENUM_CAP = 200_000


class Permutation:
    """A bijection on {0..degree-1} stored as a tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images do not form a permutation")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        p = cls.__new__(cls)
        p.images = tuple(range(degree))
        return p

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> "Permutation":
        """Build from disjoint cycles of 0-indexed points."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for a in cycle:
                if not 0 <= a < degree:
                    raise ValueError(f"point {a} out of range for degree {degree}")
                if a in seen:
                    raise ValueError(f"point {a} repeated across cycles")
                seen.add(a)
            for a, b in zip(cycle, cycle[1:]):
                images[a] = b
            if cycle:
                images[cycle[-1]] = cycle[0]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(i) = self(other(i))."""
        if len(self.images) != len(other.images):
            raise ValueError("degree mismatch")
        p = Permutation.__new__(Permutation)
        s = self.images
        p.images = tuple(s[i] for i in other.images)
        return p

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        p = Permutation.__new__(Permutation)
        p.images = tuple(inv)
        return p

    def __pow__(self, n: int) -> "Permutation":
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(len(self.images))
        square = self
        while n:
            if n & 1:
                result = result * square
            square = square * square
            n >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def cycle_string(self, one_indexed: bool = False) -> str:
        shift = 1 if one_indexed else 0
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + ",".join(str(a + shift) for a in c) + ")" for c in cs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_string()}, degree={len(self.images)})"


class StabilizerChain:
    """Deterministic Schreier-Sims stabilizer chain.

    ``base[i]`` is the smallest point moved at level i; strong
    generators are stored with the depth of the base prefix they fix.
    After construction every Schreier generator sifts to the identity,
    so the product of orbit sizes is the exact group order.
    """

    def __init__(self, generators: list[Permutation], degree: int):
        self.degree = degree
        self.base: list[int] = []
        self._strong: list[tuple[Permutation, int]] = []
        self._transversals: list[dict[int, Permutation]] = []
        self._identity = Permutation.identity(degree)
        for g in generators:
            if g.degree != degree:
                raise ValueError("degree mismatch among generators")
            if not g.is_identity():
                self._add_strong(g, self._fix_depth(g))
        for i in range(len(self.base)):
            self._rebuild_orbit(i)
        self._close()

    def _fix_depth(self, g: Permutation) -> int:
        for i, b in enumerate(self.base):
            if g(b) != b:
                return i
        return len(self.base)

    def _add_strong(self, g: Permutation, depth: int) -> None:
        if depth == len(self.base):
            b = min(p for p in range(self.degree) if g(p) != p)
            self.base.append(b)
            self._transversals.append({b: self._identity})
        self._strong.append((g, depth))

    def _level_gens(self, i: int) -> list[Permutation]:
        return [g for g, d in self._strong if d >= i]

    def _rebuild_orbit(self, i: int) -> None:
        gens = self._level_gens(i)
        b = self.base[i]
        transversal = {b: self._identity}
        queue = [b]
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            ua = transversal[a]
            for g in gens:
                c = g(a)
                if c not in transversal:
                    transversal[c] = g * ua
                    queue.append(c)
        self._transversals[i] = transversal

    def _strip(self, p: Permutation, start: int) -> tuple[Permutation, int]:
        for level in range(start, len(self.base)):
            gamma = p(self.base[level])
            if gamma == self.base[level]:
                continue
            u = self._transversals[level].get(gamma)
            if u is None:
                return p, level
            p = u.inverse() * p
        return p, len(self.base)

    def _close(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            added = self._check_level(i)
            i = i - 1 if added is None else added

    def _check_level(self, i: int):
        self._rebuild_orbit(i)
        transversal = self._transversals[i]
        gens = self._level_gens(i)
        for a in list(transversal):
            ua = transversal[a]
            for g in gens:
                uc = transversal[g(a)]
                schreier = uc.inverse() * (g * ua)
                if schreier.is_identity():
                    continue
                residue, level = self._strip(schreier, i + 1)
                if not residue.is_identity():
                    self._add_strong(residue, level)
                    self._rebuild_orbit(level)
                    return level
        return None

    def order_int(self) -> int:
        return math.prod(len(t) for t in self._transversals)

    def order(self) -> FactoredInteger:
        result = FactoredInteger.one()
        for t in self._transversals:
            result = result * FactoredInteger.from_int(len(t))
        return result

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        residue, _ = self._strip(p, 0)
        return residue.is_identity()


@dataclass
class ElementTable:
    """All group elements as a (N, degree) image matrix, row 0 = identity."""

    matrix: np.ndarray
    index: dict[bytes, int]
    orders: np.ndarray

    def lookup(self, row: np.ndarray) -> int:
        return self.index[row.tobytes()]

    def permutation(self, i: int) -> Permutation:
        return Permutation(self.matrix[i].tolist())

    def __len__(self) -> int:
        return self.matrix.shape[0]


def _row_order(row) -> int:
    seen = [False] * len(row)
    result = 1
    for start in range(len(row)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = row[j]
            length += 1
        result = math.lcm(result, length)
    return result


class PermGroup:
    """Immutable permutation group defined by its generators.

    The stabilizer chain (and hence the exact order) is computed at
    construction; element enumeration, conjugacy classes and other
    whole-group tables are built lazily and cached.
    """

    def __init__(self, generators: list[Permutation], degree: int | None = None):
        if not generators:
            raise ValueError(
                "empty generator list; use PermGroup.trivial(degree) for the trivial group"
            )
        degs = {g.degree for g in generators}
        if len(degs) != 1:
            raise ValueError(f"generators have mixed degrees {sorted(degs)}")
        self.degree = degs.pop()
        if degree is not None and degree != self.degree:
            raise ValueError("declared degree does not match generators")
        self.generators = list(generators)
        self.chain = StabilizerChain(self.generators, self.degree)
        self.order: FactoredInteger = self.chain.order()
        self._table: ElementTable | None = None
        self._classes: tuple[list[int], list[np.ndarray]] | None = None

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls([Permutation.identity(degree)])

    @property
    def order_value(self) -> int:
        return self.order.value

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, p: Permutation) -> bool:
        return self.chain.contains(p)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(
            (a * b).images == (b * a).images
            for i, a in enumerate(gens)
            for b in gens[i + 1 :]
        )

    # ── element enumeration ─────────────────────────────────────────

    def element_table(self, cap: int = DEFAULT_ENUM_CAP) -> ElementTable:
        if self._table is not None:
            return self._table
        n = self.order_value
        if n > cap:
            raise CapacityError(
                f"group order {n} exceeds element-enumeration cap {cap}"
            )
        dtype = np.uint8 if self.degree <= 256 else np.uint16
        gen_rows = [np.array(g.images, dtype=dtype) for g in self.generators]
        matrix = np.empty((n, self.degree), dtype=dtype)
        matrix[0] = np.arange(self.degree, dtype=dtype)
        index = {matrix[0].tobytes(): 0}
        lo, hi = 0, 1
        while lo < hi:
            for g in gen_rows:
                products = g[matrix[lo:hi]]  # left-multiply each frontier row
                for row in products:
                    key = row.tobytes()
                    if key not in index:
                        index[key] = len(index)
                        matrix[len(index) - 1] = row
            lo, hi = hi, len(index)
        orders = np.fromiter(
            (_row_order(matrix[i].tolist()) for i in range(n)), dtype=np.int64, count=n
        )
        self._table = ElementTable(matrix, index, orders)
        return self._table

    def enumerate_elements(self, cap: int = DEFAULT_ENUM_CAP) -> list[Permutation]:
        table = self.element_table(cap)
        return [table.permutation(i) for i in range(len(table))]

    # ── conjugacy classes ───────────────────────────────────────────

    def conjugacy_classes(
        self, cap: int = DEFAULT_ENUM_CAP
    ) -> tuple[list[int], list[np.ndarray]]:
        """Return (class representatives, classes) as element indices.

        The representative of a class is its smallest element index;
        classes are listed by representative index, identity first.
        """
        if self._classes is not None:
            return self._classes
        table = self.element_table(cap)
        n = len(table)
        matrix = table.matrix
        # For each generator g, the index permutation i -> index(g x_i g^-1).
        conj_maps = []
        for g in self.generators:
            garr = np.array(g.images)
            ginv = np.array(g.inverse().images)
            conj_rows = garr[matrix[:, ginv]].astype(matrix.dtype)
            conj_maps.append(
                np.fromiter(
                    (table.index[conj_rows[i].tobytes()] for i in range(n)),
                    dtype=np.int64,
                    count=n,
                )
            )
        assigned = np.full(n, -1, dtype=np.int64)
        reps: list[int] = []
        classes: list[np.ndarray] = []
        for start in range(n):
            if assigned[start] >= 0:
                continue
            cid = len(reps)
            members = [start]
            assigned[start] = cid
            qi = 0
            while qi < len(members):
                x = members[qi]
                qi += 1
                for cmap in conj_maps:
                    y = int(cmap[x])
                    if assigned[y] < 0:
                        assigned[y] = cid
                        members.append(y)
            reps.append(start)
            classes.append(np.array(sorted(members), dtype=np.int64))
        self._classes = (reps, classes)
        return self._classes

    # ── centralizers ────────────────────────────────────────────────

    def _centralizer_mask(
        self, rows: list[np.ndarray], cap: int = DEFAULT_ENUM_CAP
    ) -> np.ndarray:
        table = self.element_table(cap)
        matrix = table.matrix
        mask = np.ones(len(table), dtype=bool)
        for s in rows:
            s = np.asarray(s)
            mask &= np.all(matrix[:, s] == s[matrix], axis=1)
        return mask

    def centralizer(
        self, elements, cap: int = DEFAULT_ENUM_CAP
    ) -> "SubgroupHandle":
        """The subgroup of all elements commuting with every one given."""
        elems = list(elements)
        for p in elems:
            if not self.contains(p):
                raise ValueError(f"{p!r} is not a member of the group")
        mask = self._centralizer_mask([np.array(p.images) for p in elems], cap)
        indices = np.nonzero(mask)[0]
        gens, order = self._reduce_generators(indices, cap)
        return SubgroupHandle(self, gens, order)

    def center(self, cap: int = DEFAULT_ENUM_CAP) -> "SubgroupHandle":
        return self.centralizer(self.generators, cap)

    def _reduce_generators(
        self, indices, cap: int = DEFAULT_ENUM_CAP
    ) -> tuple[list[Permutation], int]:
        """Greedy generating set for the subgroup formed by `indices`.

        The indices must be closed under the group operation; elements
        are scanned in index order, which makes the result
        deterministic.
        """
        table = self.element_table(cap)
        target = len(indices)
        if target == 1:
            return [], 1
        gens: list[Permutation] = []
        chain = None
        for i in indices:
            if i == 0:
                continue
            p = table.permutation(int(i))
            if chain is not None and chain.contains(p):
                continue
            gens.append(p)
            chain = StabilizerChain(gens, self.degree)
            if chain.order_int() == target:
                break
        assert chain is not None and chain.order_int() == target
        return gens, target

    # ── normal-structure queries ────────────────────────────────────

    def is_normal(self, sub: "SubgroupHandle") -> bool:
        """Whether g H g^-1 = H for every generator g (hence for all of G)."""
        hgroup = sub.group()
        for g in self.generators:
            ginv = g.inverse()
            for h in sub.generators:
                if not hgroup.contains(g * h * ginv):
                    return False
        return True

    def normal_closure(self, elements) -> "SubgroupHandle":
        """Smallest normal subgroup of G containing the given elements."""
        gens: list[Permutation] = []
        for p in elements:
            if not self.contains(p):
                raise ValueError(f"{p!r} is not a member of the group")
            if not p.is_identity():
                gens.append(p)
        if not gens:
            return SubgroupHandle(self, [], 1)
        chain = StabilizerChain(gens, self.degree)
        queue = list(gens)
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            for g in self.generators:
                c = g * x * g.inverse()
                if not chain.contains(c):
                    gens.append(c)
                    queue.append(c)
                    chain = StabilizerChain(gens, self.degree)
        return SubgroupHandle(self, gens, chain.order_int())

    def minimal_normal_subgroups(
        self, cap: int = DEFAULT_ENUM_CAP
    ) -> list["SubgroupHandle"]:
        """Minimal nontrivial normal subgroups.

        Each minimal normal subgroup is the normal closure of any of
        its non-identity elements, and closures are constant on
        conjugacy classes, so one closure per class suffices.
        """
        reps, _ = self.conjugacy_classes(cap)
        table = self.element_table(cap)
        closures: list[SubgroupHandle] = []
        for r in reps:
            if r == 0:
                continue
            n = self.normal_closure([table.permutation(r)])
            if any(
                n.order == m.order and _handle_leq(m, n) for m in closures
            ):
                continue
            closures.append(n)
        minimal = [
            n
            for n in closures
            if not any(m.order < n.order and _handle_leq(m, n) for m in closures)
        ]
        minimal.sort(key=lambda h: (h.order, [g.images for g in h.generators]))
        return minimal

    def is_simple(self, cap: int = DEFAULT_ENUM_CAP) -> bool:
        """True when the only normal subgroups are trivial and the whole group."""
        if self.order_value == 1:
            return False
        reps, _ = self.conjugacy_classes(cap)
        table = self.element_table(cap)
        for r in reps:
            if r == 0:
                continue
            if self.normal_closure([table.permutation(r)]).order != self.order_value:
                return False
        return True

    # ── Sylow subgroups ─────────────────────────────────────────────

    def sylow_subgroup(self, p: int, cap: int = DEFAULT_ENUM_CAP) -> "SubgroupHandle":
        """A Sylow p-subgroup, grown cyclically through normalizers.

        Starts from the p-part of the first element of order divisible
        by p and repeatedly adjoins a p-element of the normalizer until
        the full p-part of the group order is reached; every step is a
        deterministic scan in element-index order.
        """
        e = self.order.factors.get(p, 0)
        if e == 0:
            raise ValueError(f"{p} does not divide the group order {self.order_value}")
        target = p**e
        table = self.element_table(cap)
        orders = table.orders
        seed_idx = int(np.nonzero(orders % p == 0)[0][0])
        seed = table.permutation(seed_idx)
        k = seed.order()
        while k % p == 0:
            k //= p
        gens = [seed**k]
        chain = StabilizerChain(gens, self.degree)
        while chain.order_int() < target:
            member = self._element_index_set(gens, cap)
            norm_mask = self._normalizer_mask(gens, member, cap)
            for i in np.nonzero(norm_mask)[0]:
                i = int(i)
                if i in member:
                    continue
                o = int(orders[i])
                while o % p == 0:
                    o //= p
                if o != 1:
                    continue
                gens.append(table.permutation(i))
                chain = StabilizerChain(gens, self.degree)
                break
            else:
                raise AssertionError("normalizer growth stalled; this is a bug")
        return SubgroupHandle(self, gens, target)

    def _element_index_set(self, gens: list[Permutation], cap: int) -> set[int]:
        """Indices (in this group's table) of the subgroup generated by gens."""
        table = self.element_table(cap)
        seen = {0}
        queue = [0]
        gen_idx = [table.lookup(np.array(g.images, dtype=table.matrix.dtype)) for g in gens]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            xrow = table.matrix[x]
            for gi in gen_idx:
                prod = table.matrix[gi][xrow]  # g ∘ x
                j = table.index[prod.tobytes()]
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return seen

    def _normalizer_mask(
        self, sub_gens: list[Permutation], member: set[int], cap: int
    ) -> np.ndarray:
        """Boolean mask of elements x with x H x^-1 = H (H given by sub_gens)."""
        table = self.element_table(cap)
        matrix = table.matrix
        n = len(table)
        inv_all = np.argsort(matrix, axis=1)
        member_bytes = {matrix[i].tobytes() for i in member}
        mask = np.ones(n, dtype=bool)
        for h in sub_gens:
            harr = np.array(h.images)
            inner = harr[inv_all]  # h ∘ x^-1 per row
            conj = np.take_along_axis(matrix, inner.astype(np.int64), axis=1)
            keep = np.fromiter(
                (conj[i].tobytes() in member_bytes for i in range(n)),
                dtype=bool,
                count=n,
            )
            mask &= keep
        return mask


def _handle_leq(a: "SubgroupHandle", b: "SubgroupHandle") -> bool:
    bg = b.group()
    return all(bg.contains(g) for g in a.generators)


@dataclass
class SubgroupHandle:
    """A subgroup of a parent group, carried as generators plus order."""

    parent: PermGroup
    generators: list[Permutation]
    order: int
    _group: PermGroup | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for g in self.generators:
            if not self.parent.contains(g):
                raise ValueError(f"generator {g!r} is not in the parent group")

    def group(self) -> PermGroup:
        if self._group is None:
            if self.generators:
                self._group = PermGroup(self.generators)
            else:
                self._group = PermGroup.trivial(self.parent.degree)
            assert self._group.order_value == self.order
        return self._group

    def contains(self, p: Permutation) -> bool:
        return self.group().contains(p)

    def elements(self, cap: int = DEFAULT_ENUM_CAP) -> list[Permutation]:
        return self.group().enumerate_elements(cap)

    def is_abelian(self) -> bool:
        return self.group().is_abelian()

    def is_normal_in_parent(self) -> bool:
        return self.parent.is_normal(self)
