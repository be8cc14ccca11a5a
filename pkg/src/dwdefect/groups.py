"""Finite groups as multiplication tables, homomorphisms, group sets and bisets.

Elements are dense integer ids ``0..order-1`` and the identity is always id 0.
Everything is deterministic: orbits, classes and enumerations come out in
lexicographic order of ids.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import charge
from .errors import BudgetError, InputError, ValidationError

__all__ = [
    "FiniteGroup",
    "ProductGroup",
    "GroupHom",
    "GSet",
    "BiSet",
    "EdgewiseGSet",
    "LazyGSet",
    "Orbit",
    "ConjugacyClass",
    "make_group",
    "group_from_descriptor",
    "subgroup_as_group",
    "conjugation_gset",
    "conjugacy_data",
    "enumerate_homs",
    "commutator",
    "surface_relator",
    "orbits",
    "orbit_of",
    "burnside_count",
]

# dense multiplication tables of product groups are only built below this
_DENSE_PRODUCT_LIMIT = 4096


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, mul, name: str = "G", labels: Sequence[str] | None = None, *, check: bool = True):
        mul = np.asarray(mul, dtype=np.int64)
        if check:
            _validate_table(mul)
        self.order = int(mul.shape[0])
        self._mul = _frozen(mul)
        inv = np.empty(self.order, dtype=np.int64)
        rows, cols = np.nonzero(mul == 0)
        inv[rows] = cols
        self._inv = _frozen(inv)
        self.identity = 0
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.order))
        if len(self.labels) != self.order:
            raise ValidationError(f"group {name}: {len(self.labels)} labels for {self.order} elements")
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        self.generators = self._greedy_generators()

    # -- table access -------------------------------------------------
    @property
    def mul(self) -> np.ndarray:
        return self._mul

    @property
    def inv(self) -> np.ndarray:
        return self._inv

    def multiply(self, a, b):
        """Product a·b; works elementwise on integer arrays."""
        return self._mul[a, b]

    def inverse(self, a):
        return self._inv[a]

    def conjugate(self, g, x):
        """g·x·g⁻¹."""
        return self.multiply(self.multiply(g, x), self.inverse(g))

    # -- derived data --------------------------------------------------
    def _greedy_generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        closure = {0}
        for g in range(self.order):
            if len(closure) == self.order:
                break
            if g not in closure:
                gens.append(g)
                closure = set(self.closure(gens))
        return tuple(gens)

    def closure(self, elements: Iterable[int]) -> tuple[int, ...]:
        """Sorted element list of the subgroup generated by `elements`."""
        gens = list(dict.fromkeys(int(x) for x in elements))
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = int(self.multiply(s, x))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def element_order(self, g: int) -> int:
        k, x = 1, int(g)
        while x != 0:
            x = int(self.multiply(x, g))
            k += 1
        return k

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(int(self.multiply(a, b)) == int(self.multiply(b, a)) for a in gens for b in gens)

    def centralizer(self, x: int) -> tuple[int, ...]:
        g = np.arange(self.order)
        return tuple(int(h) for h in np.nonzero(self.multiply(g, x) == self.multiply(x, g))[0])

    def element(self, value) -> int:
        """Resolve an element given as an id or as one of the labels."""
        if isinstance(value, (bool, np.bool_)):
            raise InputError(f"group {self.name}: boolean is not an element")
        if isinstance(value, (int, np.integer)):
            if not 0 <= int(value) < self.order:
                raise InputError(f"group {self.name}: element id {value} out of range")
            return int(value)
        if isinstance(value, str):
            if value in self._label_index:
                return self._label_index[value]
            if value.lstrip("-").isdigit():
                return self.element(int(value))
        raise InputError(f"group {self.name}: unknown element {value!r}")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


class ProductGroup(FiniteGroup):
    """Direct product of groups, element ids in mixed radix (first factor most significant).

    The multiplication table is only materialized on demand for small orders;
    products are otherwise computed factorwise.
    """

    def __init__(self, factors: Sequence[FiniteGroup], name: str | None = None):
        self.factors = tuple(factors)
        self.radices = tuple(f.order for f in self.factors)
        strides = [1] * len(self.factors)
        for i in range(len(self.factors) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.radices[i + 1]
        self.strides = tuple(strides)
        self.order = math.prod(self.radices)
        self.identity = 0
        self.name = name or ("x".join(f.name for f in self.factors) if self.factors else "1")
        self._mul_cache: np.ndarray | None = None
        self._labels: tuple[str, ...] | None = None
        self._label_index = None
        ids = np.arange(self.order, dtype=np.int64)
        self._inv = _frozen(self._combine([f.inverse(d) for f, d in zip(self.factors, self.digits(ids))], ids.shape))
        gens = []
        for i, f in enumerate(self.factors):
            gens.extend(int(s) * self.strides[i] for s in f.generators)
        self.generators = tuple(sorted(gens))

    def digits(self, g) -> list:
        g = np.asarray(g, dtype=np.int64)
        return [(g // s) % r for s, r in zip(self.strides, self.radices)]

    def _combine(self, digits, shape=()) -> np.ndarray:
        out = np.zeros(np.shape(digits[0]) if digits else shape, dtype=np.int64)
        for d, s in zip(digits, self.strides):
            out = out + np.asarray(d, dtype=np.int64) * s
        return out

    def pack(self, components: Sequence[int]) -> int:
        return int(sum(int(c) * s for c, s in zip(components, self.strides)))

    def unpack(self, g: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self.digits(int(g)))

    def multiply(self, a, b):
        if self._mul_cache is not None:
            return self._mul_cache[a, b]
        da, db = self.digits(a), self.digits(b)
        shape = np.broadcast(np.asarray(a), np.asarray(b)).shape
        out = self._combine([f.multiply(x, y) for f, x, y in zip(self.factors, da, db)], shape)
        if np.ndim(out) == 0:
            return int(out)
        return out

    def inverse(self, a):
        return self._inv[a]

    @property
    def mul(self) -> np.ndarray:
        if self._mul_cache is None:
            if self.order > _DENSE_PRODUCT_LIMIT:
                raise BudgetError(f"product group {self.name} of order {self.order} is too large for a dense table")
            ids = np.arange(self.order)
            table = self.multiply(ids[:, None], ids[None, :])
            self._mul_cache = _frozen(np.asarray(table, dtype=np.int64))
        return self._mul_cache

    @property
    def labels(self) -> tuple[str, ...]:
        if self._labels is None:
            if self.order > 10**6:
                raise BudgetError(f"product group {self.name}: too many elements to label")
            self._labels = tuple(
                "(" + ",".join(f.labels[c] for f, c in zip(self.factors, comps)) + ")"
                for comps in itertools.product(*(range(r) for r in self.radices))
            )
        return self._labels

    def element(self, value) -> int:
        if isinstance(value, (list, tuple)) and len(value) == len(self.factors):
            return self.pack([f.element(v) for f, v in zip(self.factors, value)])
        if self._label_index is None and isinstance(value, str):
            self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        return FiniteGroup.element(self, value)

    def embed(self, index: int, g: int) -> int:
        return int(g) * self.strides[index]

    def __repr__(self) -> str:
        return f"ProductGroup({self.name}, order={self.order})"


def _validate_table(mul: np.ndarray) -> None:
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise ValidationError(f"multiplication table must be a non-empty square array, got shape {mul.shape}")
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise ValidationError("multiplication table has entries outside 0..order-1")
    ids = np.arange(n)
    for b in range(n):
        if mul[0, b] != b:
            raise ValidationError(f"element 0 is not a left unit: failing triple (0, {b}, {int(mul[0, b])})")
        if mul[b, 0] != b:
            raise ValidationError(f"element 0 is not a right unit: failing triple ({b}, 0, {int(mul[b, 0])})")
    for a in range(n):
        right = np.nonzero(mul[a] == 0)[0]
        if len(right) == 0 or mul[right[0], a] != 0:
            raise ValidationError(f"element {a} has no two-sided inverse")
    if n <= 256:
        for a in range(n):
            lhs = mul[mul[a]]  # lhs[b, c] = (a b) c
            rhs = mul[a][mul]  # rhs[b, c] = a (b c)
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                b, c = (int(x) for x in bad[0])
                raise ValidationError(f"multiplication is not associative: failing triple ({a}, {b}, {c})")
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, 100_000))
        bad = np.nonzero(mul[mul[a, b], c] != mul[a, mul[b, c]])[0]
        if len(bad):
            i = bad[0]
            raise ValidationError(
                f"multiplication is not associative: failing triple ({a[i]}, {b[i]}, {c[i]})"
            )
    assert np.array_equal(np.sort(mul, axis=1), np.tile(ids, (n, 1))), "table rows are not permutations"


# -- presets ----------------------------------------------------------------


def _power_label(sym: str, k: int) -> str:
    return "" if k == 0 else (sym if k == 1 else f"{sym}{k}")


def _cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError(f"cyclic group needs n >= 1, got {n}")
    ids = np.arange(n)
    labels = ["e"] + [_power_label("x", k) for k in range(1, n)]
    return FiniteGroup((ids[:, None] + ids[None, :]) % n, name=f"Z{n}", labels=labels, check=False)


def _dihedral(n: int) -> FiniteGroup:
    # id k + n*f stands for r^k s^f, with s r s = r^-1
    if n < 1:
        raise InputError(f"dihedral group needs n >= 1, got {n}")
    order = 2 * n
    mul = np.empty((order, order), dtype=np.int64)
    for x in range(order):
        a, f = x % n, x // n
        for y in range(order):
            b, h = y % n, y // n
            k = (a + (b if f == 0 else -b)) % n
            mul[x, y] = k + n * ((f + h) % 2)
    labels = []
    for x in range(order):
        k, f = x % n, x // n
        lab = _power_label("r", k) + ("s" if f else "")
        labels.append(lab or "e")
    return FiniteGroup(mul, name=f"D{n}", labels=labels, check=False)


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen, parts = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(str(i + 1))
            i = perm[i]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "e"


def _symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 5:
        raise InputError(f"symmetric group needs 1 <= n <= 5, got {n}")
    perms = list(itertools.permutations(range(n)))  # lexicographic, identity first
    index = {p: i for i, p in enumerate(perms)}
    mul = np.empty((len(perms), len(perms)), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            # apply q first, then p
            mul[i, j] = index[tuple(p[q[k]] for k in range(n))]
    return FiniteGroup(mul, name=f"S{n}", labels=[_cycle_label(p) for p in perms], check=False)


def make_group(kind: str, n: int | None = None, *, factors: Sequence[FiniteGroup] = (), table=None,
               name: str | None = None, labels: Sequence[str] | None = None) -> FiniteGroup:
    """Build a validated group: cyclic n, dihedral n (order 2n), symmetric n ≤ 5, product, or table."""
    if kind == "cyclic":
        group = _cyclic(_need_n(kind, n))
    elif kind == "dihedral":
        group = _dihedral(_need_n(kind, n))
    elif kind == "symmetric":
        group = _symmetric(_need_n(kind, n))
    elif kind == "product":
        if len(factors) < 1:
            raise InputError("product group needs at least one factor")
        prod = ProductGroup(factors)
        if prod.order > _DENSE_PRODUCT_LIMIT:
            return prod
        group = FiniteGroup(prod.mul, name=prod.name, labels=prod.labels, check=False)
    elif kind == "table":
        if table is None:
            raise InputError("table group needs a multiplication table")
        group = FiniteGroup(table, name=name or "G", labels=labels)
    else:
        raise InputError(f"unknown group kind {kind!r}")
    if name:
        group.name = name
    return group


def _need_n(kind: str, n) -> int:
    if n is None or isinstance(n, bool) or int(n) != n:
        raise InputError(f"{kind} group needs an integer n")
    return int(n)


def group_from_descriptor(desc: dict, known: dict[str, FiniteGroup] | None = None, name: str | None = None) -> FiniteGroup:
    """Build a group from its JSON descriptor; product factors may name known groups."""
    if not isinstance(desc, dict) or "kind" not in desc:
        raise InputError(f"group descriptor must be an object with a 'kind', got {desc!r}")
    kind = desc["kind"]
    factors = []
    for f in desc.get("factors", []):
        if isinstance(f, str):
            if not known or f not in known:
                raise InputError(f"product factor {f!r} is not a known group")
            factors.append(known[f])
        else:
            factors.append(group_from_descriptor(f, known))
    return make_group(kind, desc.get("n"), factors=factors, table=desc.get("table"), name=name,
                      labels=desc.get("labels"))


def subgroup_as_group(G: FiniteGroup, elements: Iterable[int], name: str | None = None) -> tuple[FiniteGroup, np.ndarray]:
    """A subgroup as a standalone group plus its embedding (new id -> id in G)."""
    elems = np.array(sorted(set(int(x) for x in elements)), dtype=np.int64)
    if len(elems) == 0 or elems[0] != 0:
        raise ValidationError("subgroup must contain the identity")
    lookup = {int(x): i for i, x in enumerate(elems)}
    prods = G.multiply(elems[:, None], elems[None, :])
    try:
        table = np.vectorize(lookup.__getitem__, otypes=[np.int64])(prods)
    except KeyError as exc:
        raise ValidationError("element list is not closed under multiplication") from exc
    labels = None
    if G.order <= 10**6:
        labels = [G.labels[int(x)] for x in elems]
    return FiniteGroup(table, name=name or f"sub({G.name})", labels=labels, check=False), elems


# -- homomorphisms -----------------------------------------------------------


class GroupHom:
    """A homomorphism stored as an image table source-id -> target-id."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, image, *, check: bool = True):
        self.source = source
        self.target = target
        self.image = _frozen(np.asarray(image, dtype=np.int64).reshape(source.order))
        if check:
            self._validate()

    def _validate(self) -> None:
        img = self.image
        if img.min() < 0 or img.max() >= self.target.order:
            raise ValidationError("homomorphism image outside the target group")
        if img[0] != 0:
            raise ValidationError("homomorphism does not send identity to identity")
        g = np.arange(self.source.order)
        for s in self.source.generators:
            lhs = img[self.source.multiply(s, g)]
            rhs = self.target.multiply(img[s], img[g])
            bad = np.nonzero(lhs != rhs)[0]
            if len(bad):
                raise ValidationError(f"not a homomorphism: image of {s}·{int(bad[0])} is wrong")

    def __call__(self, g):
        return self.image[g]

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self ∘ other."""
        return GroupHom(other.source, self.target, self.image[other.image], check=False)

    @staticmethod
    def identity(G: FiniteGroup) -> "GroupHom":
        return GroupHom(G, G, np.arange(G.order), check=False)

    @staticmethod
    def projection(P: ProductGroup, index: int) -> "GroupHom":
        ids = np.arange(P.order)
        return GroupHom(P, P.factors[index], P.digits(ids)[index], check=False)

    @staticmethod
    def trivial(source: FiniteGroup, target: FiniteGroup) -> "GroupHom":
        return GroupHom(source, target, np.zeros(source.order, dtype=np.int64), check=False)


# -- group sets ---------------------------------------------------------------


class GSet:
    """A left action of `group` on points 0..size-1, given by a dense table act[g][m]."""

    def __init__(self, group: FiniteGroup, table, *, check: bool = True, labels: Sequence[str] | None = None):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != group.order:
            raise ValidationError(f"action table must have shape ({group.order}, size), got {table.shape}")
        self.group = group
        self.size = int(table.shape[1])
        self._table = _frozen(table)
        self.labels = tuple(labels) if labels is not None else None
        if check:
            self._validate()

    def _validate(self) -> None:
        t = self._table
        if self.size and (t.min() < 0 or t.max() >= self.size):
            raise ValidationError("action table has points out of range")
        if not np.array_equal(t[0], np.arange(self.size)):
            raise ValidationError("identity does not act trivially")
        g = np.arange(self.group.order)
        for s in self.group.generators:
            lhs = t[s][t]  # s ▷ (g ▷ m)
            rhs = t[self.group.multiply(s, g)]
            bad = np.argwhere(lhs != rhs)
            if len(bad):
                gi, m = (int(x) for x in bad[0])
                raise ValidationError(f"not an action: {s}▷({gi}▷{m}) differs from ({s}·{gi})▷{m}")

    @property
    def table(self) -> np.ndarray:
        return self._table

    def act(self, g: int, m: int) -> int:
        return int(self._table[g, m])

    def perm(self, g: int) -> np.ndarray:
        """Images of all points under g."""
        return self._table[g]

    def images_of(self, m: int) -> np.ndarray:
        """g▷m for every group element g."""
        return self._table[:, m]

    def label(self, m: int) -> str:
        return self.labels[m] if self.labels is not None else str(m)

    def dense(self) -> "GSet":
        return self


class EdgewiseGSet(GSet):
    """Product of biset coordinates acted on by a product group through endpoint factors.

    Coordinate i is a point of ``bisets[i]``; with ``endpoints[i] = (t, s)`` the
    group element (g_0, g_1, ...) acts by m_i ↦ g_t ▷ m_i ◁ g_s⁻¹.
    Points are mixed-radix ids, first coordinate most significant.
    """

    def __init__(self, group: ProductGroup, bisets: Sequence["BiSet"], endpoints: Sequence[tuple[int, int]]):
        if len(bisets) != len(endpoints):
            raise ValidationError("one endpoint pair is needed per coordinate")
        for i, (M, (t, s)) in enumerate(zip(bisets, endpoints)):
            if group.factors[t] is not M.left or group.factors[s] is not M.right:
                raise ValidationError(
                    f"coordinate {i}: biset groups {M.left.name}/{M.right.name} do not match "
                    f"factors {group.factors[t].name}/{group.factors[s].name}"
                )
        self.group = group
        self.bisets = tuple(bisets)
        self.endpoints = tuple((int(t), int(s)) for t, s in endpoints)
        self.radices = tuple(M.size for M in self.bisets)
        strides = [1] * len(self.radices)
        for i in range(len(self.radices) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.radices[i + 1]
        self.strides = tuple(strides)
        self.size = math.prod(self.radices)
        self.labels = None
        self._table = None

    def coords(self, m) -> list:
        m = np.asarray(m, dtype=np.int64)
        return [(m // s) % r for s, r in zip(self.strides, self.radices)]

    def pack(self, coords: Sequence[int]) -> int:
        return int(sum(int(c) * s for c, s in zip(coords, self.strides)))

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.coords(int(m)))

    def _act_coords(self, gdigits, coords):
        out = []
        for M, (t, s), c in zip(self.bisets, self.endpoints, coords):
            right = M.ract[M.right.inverse(gdigits[s]), c]
            out.append(M.lact[gdigits[t], right])
        return out

    def _pack_arrays(self, coords, shape=()) -> np.ndarray:
        out = np.zeros(np.shape(coords[0]) if coords else shape, dtype=np.int64)
        for c, s in zip(coords, self.strides):
            out = out + c * s
        return out

    def act(self, g: int, m: int) -> int:
        return int(self._pack_arrays(self._act_coords(self.group.digits(g), self.coords(m))))

    def perm(self, g: int) -> np.ndarray:
        pts = np.arange(self.size, dtype=np.int64)
        return self._pack_arrays(self._act_coords(self.group.digits(g), self.coords(pts)), pts.shape)

    def images_of(self, m: int) -> np.ndarray:
        gs = np.arange(self.group.order, dtype=np.int64)
        coords = [np.full(self.group.order, c, dtype=np.int64) for c in self.unpack(m)]
        return self._pack_arrays(self._act_coords(self.group.digits(gs), coords), gs.shape)

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            charge(self.group.order * self.size, None, "dense action table")
            self._table = _frozen(np.stack([self.perm(g) for g in range(self.group.order)]))
        return self._table

    def label(self, m: int) -> str:
        return "(" + ",".join(M.label(c) for M, c in zip(self.bisets, self.unpack(m))) + ")"

    def dense(self) -> GSet:
        return GSet(self.group, self.table, check=False)


class LazyGSet(GSet):
    """A G-set described by callables; the dense table is built only on request.

    ``perm_fn(g)`` returns the images of all points under g and ``images_fn(m)``
    returns g▷m for all g.
    """

    def __init__(self, group: FiniteGroup, size: int, perm_fn, images_fn, labels: Sequence[str] | None = None):
        self.group = group
        self.size = int(size)
        self._perm_fn = perm_fn
        self._images_fn = images_fn
        self.labels = tuple(labels) if labels is not None else None
        self._table = None

    def act(self, g: int, m: int) -> int:
        return int(self._perm_fn(int(g))[int(m)])

    def perm(self, g: int) -> np.ndarray:
        return np.asarray(self._perm_fn(int(g)), dtype=np.int64)

    def images_of(self, m: int) -> np.ndarray:
        return np.asarray(self._images_fn(int(m)), dtype=np.int64)

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            charge(self.group.order * self.size, None, "dense action table")
            self._table = _frozen(np.stack([self.perm(g) for g in range(self.group.order)])
                                  if self.group.order else np.zeros((0, self.size), dtype=np.int64))
        return self._table

    def dense(self) -> GSet:
        return GSet(self.group, self.table, check=False, labels=self.labels)


class BiSet:
    """A set with commuting left `left`-action and right `right`-action.

    ``lact[g][m] = g ▷ m`` and ``ract[h][m] = m ◁ h``.
    """

    def __init__(self, left: FiniteGroup, right: FiniteGroup, lact, ract, *, name: str = "M",
                 labels: Sequence[str] | None = None, check: bool = True):
        self.left = left
        self.right = right
        self.lact = _frozen(np.asarray(lact, dtype=np.int64).reshape(left.order, -1))
        self.ract = _frozen(np.asarray(ract, dtype=np.int64).reshape(right.order, -1))
        self.size = int(self.lact.shape[1])
        self.name = name
        self.labels = tuple(labels) if labels is not None else None
        self.transparent_of: FiniteGroup | None = None
        if check:
            self._validate()

    def _validate(self) -> None:
        if self.ract.shape[1] != self.size:
            raise ValidationError(f"biset {self.name}: left and right tables disagree on size")
        GSet(self.left, self.lact)
        # a right action of R is a left action of R through inverses
        GSet(self.right, self.ract[self.right.inv])
        for g in self.left.generators:
            for h in self.right.generators:
                if not np.array_equal(self.lact[g][self.ract[h]], self.ract[h][self.lact[g]]):
                    raise ValidationError(f"biset {self.name}: actions of {g} and {h} do not commute")

    def label(self, m: int) -> str:
        return self.labels[m] if self.labels is not None else str(m)

    def point(self, value) -> int:
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            if 0 <= int(value) < self.size:
                return int(value)
        elif isinstance(value, str):
            if self.labels is not None and value in self.labels:
                return self.labels.index(value)
            if value.isdigit():
                return self.point(int(value))
        raise InputError(f"biset {self.name}: unknown point {value!r}")

    def as_gset(self) -> EdgewiseGSet:
        """The same set as a left (left × right)-set via (g,h)▷m = g▷m◁h⁻¹."""
        return EdgewiseGSet(ProductGroup([self.left, self.right]), [self], [(0, 1)])

    def opposite(self) -> "BiSet":
        """The biset with roles swapped: r▷m = m◁r⁻¹ and m◁l = l⁻¹▷m."""
        op = BiSet(self.right, self.left, self.ract[self.right.inv], self.lact[self.left.inv],
                   name=self.name + "^op", labels=self.labels, check=False)
        if self.transparent_of is not None:
            op.transparent_of = self.transparent_of
        return op

    @property
    def is_transparent(self) -> bool:
        return self.transparent_of is not None

    @staticmethod
    def transparent(G: FiniteGroup, name: str | None = None) -> "BiSet":
        """G as a G×G^op-set by left and right multiplication."""
        ids = np.arange(G.order)
        M = BiSet(G, G, G.multiply(ids[:, None], ids[None, :]), G.multiply(ids[None, :], ids[:, None]),
                  name=name or G.name,
                  labels=G.labels, check=False)
        M.transparent_of = G
        return M

    @staticmethod
    def trivial(left: FiniteGroup, right: FiniteGroup, size: int = 1, name: str = "pt",
                labels: Sequence[str] | None = None) -> "BiSet":
        """`size` points fixed by both groups."""
        return BiSet(left, right, np.tile(np.arange(size), (left.order, 1)),
                     np.tile(np.arange(size), (right.order, 1)), name=name, labels=labels, check=False)


# -- orbits ------------------------------------------------------------------


@dataclass(frozen=True)
class Orbit:
    rep: int
    members: tuple[int, ...]
    stabilizer: tuple[int, ...]
    transversal: dict  # point -> element taking rep to that point

    @property
    def size(self) -> int:
        return len(self.members)


def _generator_perms(S: GSet) -> list[tuple[int, np.ndarray]]:
    return [(s, np.asarray(S.perm(s))) for s in S.group.generators]


def _orbit_from(S: GSet, start: int, gperms) -> Orbit:
    G = S.group
    trans = {start: 0}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        tp = trans[p]
        for s, perm in gperms:
            q = int(perm[p])
            if q not in trans:
                trans[q] = int(G.multiply(s, tp))
                queue.append(q)
    images = np.asarray(S.images_of(start))
    stab = tuple(int(g) for g in np.nonzero(images == start)[0])
    return Orbit(start, tuple(sorted(trans)), stab, trans)


def orbit_of(S: GSet, point: int) -> Orbit:
    """The orbit through `point`, with transversal based at `point` itself."""
    return _orbit_from(S, int(point), _generator_perms(S))


def orbits(S: GSet, budget: int | None = None) -> list[Orbit]:
    """All orbits, each represented by its smallest point, in increasing order."""
    charge(S.size * max(1, len(S.group.generators)), budget, "orbit enumeration")
    gperms = _generator_perms(S)
    seen = np.zeros(S.size, dtype=bool)
    out = []
    for m in range(S.size):
        if seen[m]:
            continue
        orb = _orbit_from(S, m, gperms)
        seen[list(orb.members)] = True
        out.append(orb)
    return out


def burnside_count(S: GSet, budget: int | None = None):
    """Number of orbits by Burnside's lemma, (1/|G|) Σ_g |Fix(g)|, as an exact Fraction."""
    from fractions import Fraction

    charge(S.group.order * S.size, budget, "Burnside count")
    pts = np.arange(S.size)
    fixed = sum(int(np.count_nonzero(np.asarray(S.perm(g)) == pts)) for g in range(S.group.order))
    return Fraction(fixed, S.group.order)


# -- conjugacy ---------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClass:
    rep: int
    members: tuple[int, ...]
    centralizer: tuple[int, ...]


def conjugation_gset(G: FiniteGroup) -> GSet:
    ids = np.arange(G.order)
    return GSet(G, G.conjugate(ids[:, None], ids[None, :]), check=False, labels=G.labels)


def conjugacy_data(G: FiniteGroup) -> list[ConjugacyClass]:
    """Conjugacy classes in order of their smallest element, with centralizers."""
    return [ConjugacyClass(o.rep, o.members, o.stabilizer) for o in orbits(conjugation_gset(G))]


# -- homomorphism enumeration -----------------------------------------------


def commutator(i: int, j: int) -> list[int]:
    """The word a_i a_j a_i⁻¹ a_j⁻¹ (generators are 1-based, negatives are inverses)."""
    return [i, j, -i, -j]


def surface_relator(genus: int) -> list[int]:
    """[a_1,b_1]⋯[a_g,b_g] on generators a_k = 2k-1, b_k = 2k."""
    word: list[int] = []
    for k in range(genus):
        word += commutator(2 * k + 1, 2 * k + 2)
    return word


def _eval_word(G: FiniteGroup, word: Sequence[int], columns: np.ndarray) -> np.ndarray:
    val = np.zeros(columns.shape[0], dtype=np.int64)
    for letter in word:
        x = columns[:, abs(letter) - 1]
        if letter < 0:
            x = G.inverse(x)
        val = np.asarray(G.multiply(val, x), dtype=np.int64)
    return val


def enumerate_homs(rank: int, relators: Sequence[Sequence[int]], G: FiniteGroup,
                   budget: int | None = None) -> list[tuple[int, ...]]:
    """All tuples (x_1..x_r) in G^r satisfying every relator, in lexicographic order.

    A relator is a word of nonzero integers: k means a_k and -k means a_k⁻¹.
    Each relator is tested as soon as the prefix covers all of its letters.
    """
    if rank < 0:
        raise InputError("rank must be non-negative")
    by_level: dict[int, list[Sequence[int]]] = {}
    for word in relators:
        if any(not isinstance(l, (int, np.integer)) or l == 0 or abs(l) > rank for l in word):
            raise InputError(f"relator {list(word)} uses letters outside a_1..a_{rank}")
        by_level.setdefault(max((abs(l) for l in word), default=0), []).append(word)
    rows = np.zeros((1, 0), dtype=np.int64)
    used = 0
    n = G.order
    for level in range(1, rank + 1):
        used += rows.shape[0] * n
        charge(used, budget, f"homomorphism enumeration into {G.name}")
        rows = np.hstack([np.repeat(rows, n, axis=0), np.tile(np.arange(n, dtype=np.int64), rows.shape[0])[:, None]])
        for word in by_level.get(level, []):
            rows = rows[_eval_word(G, word, rows) == 0]
    return [tuple(int(x) for x in r) for r in rows]
