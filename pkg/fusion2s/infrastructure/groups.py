"""Finite abelian groups Z_{n_1} x ... x Z_{n_k}

Elements are residue vectors in a fixed cyclic decomposition, enumerated in
lexicographic order. Characters are identified with elements through the
same decomposition: the character with index a sends g to
exp(2*pi*i * sum_i a_i*g_i/n_i).

Everything here is brute force over the element list; the size cap from
settings keeps that honest.
"""

import math
import re
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from fusion2s.infrastructure.errors import InputError, SizeError
from fusion2s.infrastructure.roots import UnityScalar
from fusion2s.infrastructure.settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class GroupElement:
    """Residue vector (g_1, ..., g_k)"""
    residues: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "residues", tuple(int(r) for r in self.residues))

    def __iter__(self) -> Iterator[int]:
        return iter(self.residues)

    def __len__(self) -> int:
        return len(self.residues)

    def __getitem__(self, i: int) -> int:
        return self.residues[i]

    def __str__(self) -> str:
        return "(" + ",".join(str(r) for r in self.residues) + ")"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """G = Z_{n_1} x ... x Z_{n_k} with the cyclic factor orders in a fixed order"""
    orders: Tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n < 1 for n in orders):
            raise InputError(f"Cyclic factor orders must be >= 1, got {list(orders)}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        """Least common multiple of the factor orders"""
        return math.lcm(1, *self.orders)

    def __str__(self) -> str:
        return " x ".join(f"Z_{n}" for n in self.orders) if self.orders else "Z_1"

    def check_size(self, limit: Optional[int] = None) -> None:
        """Raise SizeError if |G| exceeds the cap"""
        limit = limit if limit is not None else get_settings().max_group_size
        if self.size > limit:
            raise SizeError(self.size, limit)

    def element(self, residues: Iterable[int]) -> GroupElement:
        """Element with the given residues, reduced mod the factor orders"""
        values = tuple(residues)
        if len(values) != self.rank:
            raise InputError(f"Element {values} has {len(values)} residues, {self} needs {self.rank}")
        return GroupElement(tuple(int(r) % n for r, n in zip(values, self.orders)))

    @property
    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.rank)

    def generators(self) -> List[GroupElement]:
        """Standard generators e_i of the cyclic factors"""
        return [
            GroupElement(tuple(1 % n if j == i else 0 for j, n in enumerate(self.orders)))
            for i in range(self.rank)
        ]

    def check(self, g: GroupElement) -> GroupElement:
        """Validate that g is a reduced element of this group"""
        if len(g) != self.rank:
            raise InputError(f"Element {g} has {len(g)} residues, {self} needs {self.rank}")
        if any(not 0 <= r < n for r, n in zip(g, self.orders)):
            raise InputError(f"Element {g} is not reduced modulo {list(self.orders)}")
        return g

    def add(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self.check(g)
        self.check(h)
        return GroupElement(tuple((a + b) % n for a, b, n in zip(g, h, self.orders)))

    def neg(self, g: GroupElement) -> GroupElement:
        self.check(g)
        return GroupElement(tuple(-a % n for a, n in zip(g, self.orders)))

    def scale(self, m: int, g: GroupElement) -> GroupElement:
        self.check(g)
        return GroupElement(tuple(m * a % n for a, n in zip(g, self.orders)))

    def order_of(self, g: GroupElement) -> int:
        """Least m >= 1 with m*g = 0"""
        self.check(g)
        return math.lcm(1, *(n // math.gcd(n, a) for a, n in zip(g, self.orders)))

    def elements(self, limit: Optional[int] = None) -> List[GroupElement]:
        """All elements in lexicographic order"""
        self.check_size(limit)
        return list(_elements(self.orders))

    def index_of(self, g: GroupElement) -> int:
        """Position of g in the lexicographic element list"""
        index = 0
        for r, n in zip(g, self.orders):
            index = index * n + r
        return index

    def residue_array(self) -> np.ndarray:
        """|G| x k integer array of residues, rows in lexicographic order"""
        self.check_size()
        return _residue_array(self.orders)

    def index_array(self, residues: np.ndarray) -> np.ndarray:
        """Element indices of the (reduced) residue rows of an array"""
        reduced = residues % np.array(self.orders, dtype=np.int64)
        return reduced @ _radix(self.orders)

    def sum_indices(self, left: np.ndarray, right: Optional[np.ndarray] = None) -> np.ndarray:
        """Indices of g + h for g in `left` (rows) and h in `right` (columns, default all)"""
        table = self.residue_array()
        right_rows = table if right is None else table[right]
        return self.index_array(table[left][:, None, :] + right_rows[None, :, :])

    def character_numerators(self) -> np.ndarray:
        """C[a, g] with chi_a(g) = exp(2*pi*i*C[a, g]/exponent)"""
        self.check_size()
        return _character_numerators(self.orders)


@lru_cache(maxsize=256)
def _elements(orders: Tuple[int, ...]) -> Tuple[GroupElement, ...]:
    return tuple(GroupElement(tuple(int(r) for r in row)) for row in _residue_array(orders))


@lru_cache(maxsize=256)
def _radix(orders: Tuple[int, ...]) -> np.ndarray:
    weights = np.ones(len(orders), dtype=np.int64)
    for i in range(len(orders) - 2, -1, -1):
        weights[i] = weights[i + 1] * orders[i + 1]
    return weights


@lru_cache(maxsize=256)
def _residue_array(orders: Tuple[int, ...]) -> np.ndarray:
    if not orders:
        table = np.zeros((1, 0), dtype=np.int64)
    else:
        grids = np.meshgrid(*(np.arange(n, dtype=np.int64) for n in orders), indexing="ij")
        table = np.stack([grid.ravel() for grid in grids], axis=1)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=256)
def _character_numerators(orders: Tuple[int, ...]) -> np.ndarray:
    exponent = math.lcm(1, *orders)
    table = _residue_array(orders)
    weights = np.array([exponent // n for n in orders], dtype=np.int64)
    numerators = ((table * weights) @ table.T) % exponent
    numerators.flags.writeable = False
    return numerators


def _spans_exactly(parent: FiniteAbelianGroup, members: Tuple[GroupElement, ...]) -> bool:
    """True iff the span of the members has no further elements, i.e. they are closed.

    The span is grown one cyclic subgroup at a time and abandoned as soon as
    it outgrows the member set.
    """
    size = len(members)
    if size == 1:
        return True
    orders = np.array(parent.orders, dtype=np.int64)
    radix = _radix(parent.orders)
    rows = np.array([g.residues for g in members], dtype=np.int64)
    span = np.zeros((1, parent.rank), dtype=np.int64)
    spanned = {0}
    for row, index in zip(rows, (rows @ radix).tolist()):
        if index in spanned:
            continue
        order = math.lcm(1, *(n // math.gcd(n, int(a)) for a, n in zip(row, parent.orders)))
        if order > size:
            return False
        multiples = (np.arange(order, dtype=np.int64)[:, None] * row) % orders
        span = np.unique(((span[:, None, :] + multiples[None, :, :]) % orders).reshape(-1, parent.rank), axis=0)
        if len(span) > size:
            return False
        spanned = set((span @ radix).tolist())
    return len(span) == size


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a FiniteAbelianGroup, stored as its sorted member list"""
    parent: FiniteAbelianGroup
    members: Tuple[GroupElement, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.parent.check(g) for g in self.members)))
        if self.parent.identity not in members:
            raise InputError("A subgroup must contain the identity")
        if self.parent.size % len(members):
            raise InputError(f"{len(members)} elements cannot form a subgroup of a group of order {self.parent.size}")
        if not _spans_exactly(self.parent, members):
            raise InputError(f"Members {', '.join(str(g) for g in members)} are not closed under addition")
        object.__setattr__(self, "members", members)

    @classmethod
    def trivial(cls, parent: FiniteAbelianGroup) -> "Subgroup":
        return cls(parent, (parent.identity,))

    @classmethod
    def whole(cls, parent: FiniteAbelianGroup) -> "Subgroup":
        return cls(parent, tuple(parent.elements()))

    @classmethod
    def generated_by(cls, parent: FiniteAbelianGroup, generators: Iterable[GroupElement]) -> "Subgroup":
        """Smallest subgroup containing the generators"""
        span = {parent.identity}
        for g in generators:
            parent.check(g)
            if g in span:
                continue
            multiples = [parent.scale(m, g) for m in range(parent.order_of(g))]
            span = {parent.add(s, t) for s in span for t in multiples}
        return cls(parent, tuple(span))

    @cached_property
    def member_set(self) -> FrozenSet[GroupElement]:
        return frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def index(self) -> int:
        return self.parent.size // self.order

    def __contains__(self, g: object) -> bool:
        return g in self.member_set

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.parent == other.parent and self.member_set <= other.member_set

    def generating_set(self) -> List[GroupElement]:
        """Greedy generating set: each member not yet spanned is adjoined"""
        span = Subgroup.trivial(self.parent)
        gens = []
        for g in self.members:
            if g not in span:
                gens.append(g)
                span = _adjoin(self.parent, span, g)
        return gens

    def indices(self) -> np.ndarray:
        """Element indices of the members, ascending"""
        rows = np.array([g.residues for g in self.members], dtype=np.int64).reshape(self.order, self.parent.rank)
        return rows @ _radix(self.parent.orders)

    def __str__(self) -> str:
        return "{" + ", ".join(str(g) for g in self.members) + "}"


@dataclass(frozen=True)
class Character:
    """Character chi_a of G, indexed by a group element a"""
    parent: FiniteAbelianGroup
    index: GroupElement

    def __post_init__(self):
        self.parent.check(self.index)

    def evaluate(self, g: GroupElement) -> UnityScalar:
        self.parent.check(g)
        return UnityScalar(sum(Fraction(a * x, n) for a, x, n in zip(self.index, g, self.parent.orders)))

    __call__ = evaluate

    def is_trivial(self) -> bool:
        return self.index == self.parent.identity


@dataclass(frozen=True)
class SubgroupCharacter:
    """Character of a subgroup H, given by its values on the members of H.

    Value i is exp(2*pi*i*numerators[i]/denominator), in member order.
    `label` is the least ambient character index restricting to it.
    """
    subgroup: Subgroup
    numerators: Tuple[int, ...]
    denominator: int
    label: GroupElement = field(compare=False)

    def __post_init__(self):
        if len(self.numerators) != self.subgroup.order:
            raise InputError(f"{len(self.numerators)} values given for a subgroup of order {self.subgroup.order}")
        if self.denominator < 1:
            raise InputError(f"Denominator must be positive, got {self.denominator}")
        object.__setattr__(self, "numerators", tuple(int(x) % self.denominator for x in self.numerators))

    @cached_property
    def values(self) -> Tuple[UnityScalar, ...]:
        return tuple(UnityScalar(Fraction(x, self.denominator)) for x in self.numerators)

    @cached_property
    def _positions(self) -> Dict[GroupElement, int]:
        return {h: i for i, h in enumerate(self.subgroup.members)}

    def evaluate(self, h: GroupElement) -> UnityScalar:
        try:
            return UnityScalar(Fraction(self.numerators[self._positions[h]], self.denominator))
        except KeyError as e:
            raise InputError(f"{h} is not a member of the subgroup") from e

    __call__ = evaluate

    def is_trivial(self) -> bool:
        return not any(self.numerators)


def enumerate_elements(group: FiniteAbelianGroup, limit: Optional[int] = None) -> List[GroupElement]:
    """All elements of G in lexicographic order

    Raises:
        SizeError: If |G| exceeds the cap
    """
    return group.elements(limit)


def coset_transversal(group: FiniteAbelianGroup, subgroup: Subgroup) -> List[GroupElement]:
    """Lexicographically least member of each coset of H, identity first

    Raises:
        InputError: If H is not a subgroup of G
    """
    if subgroup.parent != group:
        raise InputError(f"Subgroup lives in {subgroup.parent}, not in {group}")
    covered = set()
    representatives = []
    for g in group.elements():
        if g in covered:
            continue
        representatives.append(g)
        covered.update(group.add(g, h) for h in subgroup.members)
    return representatives


def enumerate_subgroups(group: FiniteAbelianGroup, limit: Optional[int] = None) -> List[Subgroup]:
    """Every subgroup of G, sorted by order then member list.

    Subgroups are grown from {0} by adjoining one element at a time; only
    one element per coset needs trying, since g and g + s give the same span.

    Raises:
        SizeError: If |G| exceeds the cap
    """
    group.check_size(limit)
    trivial = Subgroup.trivial(group)
    found: Dict[Tuple[GroupElement, ...], Subgroup] = {trivial.members: trivial}
    frontier = [trivial]
    while frontier:
        grown = []
        for subgroup in frontier:
            for g in coset_transversal(group, subgroup)[1:]:
                candidate = _adjoin(group, subgroup, g)
                if candidate.members not in found:
                    found[candidate.members] = candidate
                    grown.append(candidate)
        frontier = grown
    subgroups = sorted(found.values(), key=lambda s: (s.order, s.members))
    logger.debug(f"{group} has {len(subgroups)} subgroups")
    return subgroups


def _adjoin(group: FiniteAbelianGroup, subgroup: Subgroup, g: GroupElement) -> Subgroup:
    multiples = [group.scale(m, g) for m in range(group.order_of(g))]
    return Subgroup(group, tuple({group.add(s, t) for s in subgroup.members for t in multiples}))


def characters(group: FiniteAbelianGroup) -> List[Character]:
    """All characters of G, ordered by index"""
    return [Character(group, a) for a in group.elements()]


def character_eval(chi: Character, g: GroupElement) -> UnityScalar:
    """chi(g)

    Raises:
        InputError: If g does not belong to the character's group
    """
    return chi.evaluate(g)


def characters_of_subgroup(subgroup: Subgroup) -> List[SubgroupCharacter]:
    """The |H| distinct characters of H, by restricting every character of G.

    Ordered by first occurrence along the ambient character indices, so the
    trivial character comes first.
    """
    group = subgroup.parent
    numerators = group.character_numerators()[:, subgroup.indices()]
    _, first = np.unique(numerators, axis=0, return_index=True)
    elements = group.elements()
    restricted = [
        SubgroupCharacter(subgroup, tuple(numerators[a].tolist()), group.exponent, label=elements[a])
        for a in sorted(int(i) for i in first)
    ]
    if len(restricted) != subgroup.order:
        raise InputError(f"Found {len(restricted)} restricted characters for a subgroup of order {subgroup.order}")
    return restricted


def group_from_orders(orders: Sequence[int]) -> FiniteAbelianGroup:
    """Build a group from a list of cyclic factor orders, enforcing the size cap"""
    group = FiniteAbelianGroup(tuple(orders))
    group.check_size()
    return group


def parse_orders(text: str) -> List[int]:
    """Cyclic factor orders from "2,2", "2x2" or "2 x 2"

    Raises:
        InputError: If a factor is missing or not an integer
    """
    if not text.strip():
        raise InputError("At least one cyclic factor order is required")
    try:
        return [int(part) for part in re.split(r"[,xX]", text)]
    except ValueError as e:
        raise InputError(f"Group orders must be integers separated by ',' or 'x', got {text!r}") from e
