"""Quadratic forms and bicharacters presenting braidings on Vec_G

A braiding on Vec_G is handled through its quadratic form
q(x) = exp(2*pi*i*Q(x)) with Q(x) = sum_i r_i x_i^2 + sum_{i<j} s_ij x_i x_j,
and its double braiding b(g, h) = q(g + h) / (q(g) q(h)). The associator
cochain is never materialized; everything downstream consumes q and b.
"""

import math
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from fusion2s.infrastructure.errors import (
    BilinearityError,
    FormValidationError,
    InputError,
    InvariantViolation,
    QuadraticityError,
    WellDefinednessError,
)
from fusion2s.infrastructure.groups import FiniteAbelianGroup, GroupElement, Subgroup
from fusion2s.infrastructure.roots import UnityScalar
from fusion2s.infrastructure.settings import get_settings

logger = logging.getLogger(__name__)

OffDiagonal = Tuple[Tuple[Tuple[int, int], Fraction], ...]

# Row block size for chunked bilinearity checks on large groups
_CHUNK = 256


def _reduce(value) -> Fraction:
    return Fraction(value) % 1


def _common_denominator(values: Iterable[Fraction]) -> int:
    return math.lcm(1, *(v.denominator for v in values))


@dataclass(frozen=True)
class Bicharacter:
    """B(g, h) = sum_ij matrix[i][j] * g_i * h_j mod 1"""
    group: FiniteAbelianGroup
    matrix: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_reduce(v) for v in row) for row in self.matrix)
        k = self.group.rank
        if len(rows) != k or any(len(row) != k for row in rows):
            raise InputError(f"Bicharacter matrix must be {k}x{k} for {self.group}")
        object.__setattr__(self, "matrix", rows)

    @cached_property
    def denominator(self) -> int:
        return _common_denominator(v for row in self.matrix for v in row)

    def exponent(self, g: GroupElement, h: GroupElement) -> Fraction:
        self.group.check(g)
        self.group.check(h)
        k = self.group.rank
        return sum((self.matrix[i][j] * g[i] * h[j] for i in range(k) for j in range(k)), Fraction(0)) % 1

    def value(self, g: GroupElement, h: GroupElement) -> UnityScalar:
        return UnityScalar(self.exponent(g, h))


def validate_bicharacter(beta: Bicharacter) -> Bicharacter:
    """Check that every coefficient respects the residue relations

    Raises:
        WellDefinednessError: If n_i * beta_ij or n_j * beta_ij is not an integer
    """
    orders = beta.group.orders
    for i, row in enumerate(beta.matrix):
        for j, value in enumerate(row):
            if (orders[i] * value).denominator != 1 or (orders[j] * value).denominator != 1:
                raise WellDefinednessError(
                    f"Bicharacter entry ({i},{j}) = {value} is not well defined on Z_{orders[i]} x Z_{orders[j]}"
                )
    return beta


@dataclass(frozen=True)
class QuadraticForm:
    """Q(x) = sum_i diag[i] x_i^2 + sum_{i<j} s_ij x_i x_j mod 1.

    `offdiag` holds ((i, j), s_ij) pairs with i < j, sorted, zeros dropped.
    `bicharacter` records a bicharacter the form was derived from, if any.
    """
    group: FiniteAbelianGroup
    diag: Tuple[Fraction, ...]
    offdiag: OffDiagonal = ()
    bicharacter: Optional[Bicharacter] = field(default=None, compare=False)
    validated: bool = field(default=False, compare=False)

    def __post_init__(self):
        diag = tuple(_reduce(v) for v in self.diag)
        if len(diag) != self.group.rank:
            raise InputError(f"Form has {len(diag)} diagonal coefficients, {self.group} needs {self.group.rank}")
        offdiag: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), value in self.offdiag:
            i, j = int(i), int(j)
            if i == j or not (0 <= i < self.group.rank and 0 <= j < self.group.rank):
                raise InputError(f"Off-diagonal key ({i},{j}) is not a pair of distinct factor indices")
            key = (min(i, j), max(i, j))
            offdiag[key] = _reduce(offdiag.get(key, Fraction(0)) + Fraction(value))
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", tuple(sorted((k, v) for k, v in offdiag.items() if v != 0)))

    @classmethod
    def from_coefficients(
        cls,
        group: FiniteAbelianGroup,
        diag: Sequence,
        offdiag: Optional[Mapping[Tuple[int, int], object]] = None,
    ) -> "QuadraticForm":
        pairs = tuple((key, Fraction(value)) for key, value in (offdiag or {}).items())
        return cls(group, tuple(Fraction(v) for v in diag), pairs)

    @cached_property
    def denominator(self) -> int:
        return _common_denominator(list(self.diag) + [v for _, v in self.offdiag])

    @cached_property
    def table(self) -> np.ndarray:
        """Numerators of Q on every element (element order) over `denominator`"""
        den = self.denominator
        residues = self.group.residue_array()
        values = np.zeros(len(residues), dtype=np.int64)
        for i, r in enumerate(self.diag):
            values += int(r * den) * residues[:, i] * residues[:, i]
        for (i, j), s in self.offdiag:
            values += int(s * den) * residues[:, i] * residues[:, j]
        values %= den
        values.flags.writeable = False
        return values

    def exponent(self, g: GroupElement) -> Fraction:
        self.group.check(g)
        return Fraction(int(self.table[self.group.index_of(g)]), self.denominator)

    def value(self, g: GroupElement) -> UnityScalar:
        """q(g)"""
        return UnityScalar(self.exponent(g))

    def braiding_rows(self, indices: np.ndarray, columns: Optional[np.ndarray] = None) -> np.ndarray:
        """Numerators of b(g, h) for g in `indices` (rows) against h in `columns` (default all)"""
        sums = self.group.sum_indices(indices, columns)
        table = self.table
        right = table if columns is None else table[columns]
        return (table[sums] - table[indices][:, None] - right[None, :]) % self.denominator

    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.diag) and not self.offdiag

    def __str__(self) -> str:
        terms = [f"{r}*x{i}^2" for i, r in enumerate(self.diag) if r]
        terms += [f"{s}*x{i}*x{j}" for (i, j), s in self.offdiag]
        return f"Q on {self.group}: " + (" + ".join(terms) if terms else "0")


def trivial_form(group: FiniteAbelianGroup) -> QuadraticForm:
    """The symmetric braiding q = 1, already validated"""
    return QuadraticForm(group, (Fraction(0),) * group.rank, validated=True)


def form_from_values(group: FiniteAbelianGroup, values: Mapping[GroupElement, object]) -> QuadraticForm:
    """Recover coefficients from the exponents Q(g) and validate.

    r_i = Q(e_i) and s_ij = Q(e_i + e_j) - Q(e_i) - Q(e_j); elements missing
    from `values` count as 0.

    Raises:
        FormValidationError: If the coefficients do not give a quadratic form
        InputError: If the recovered form disagrees with a supplied value
    """
    def at(g: GroupElement) -> Fraction:
        return _reduce(values.get(g, 0))

    generators = group.generators()
    diag = tuple(at(e) for e in generators)
    offdiag = tuple(
        ((i, j), at(group.add(generators[i], generators[j])) - diag[i] - diag[j])
        for i in range(group.rank)
        for j in range(i + 1, group.rank)
    )
    q = validate_form(QuadraticForm(group, diag, offdiag))
    for g, value in values.items():
        if q.exponent(group.check(g)) != _reduce(value):
            raise InputError(f"Values are not a quadratic form: Q({g}) = {_reduce(value)}, coefficients give {q.exponent(g)}")
    return q


def _check_well_defined(q: QuadraticForm) -> None:
    orders = q.group.orders
    for i, r in enumerate(q.diag):
        n = orders[i]
        if (2 * n * r).denominator != 1 or (n * n * r).denominator != 1:
            raise WellDefinednessError(
                f"Diagonal coefficient r_{i} = {r} is not well defined on Z_{n} (need 2*n*r and n^2*r integral)"
            )
    for (i, j), s in q.offdiag:
        if (orders[i] * s).denominator != 1 or (orders[j] * s).denominator != 1:
            raise WellDefinednessError(
                f"Off-diagonal coefficient s_{i}{j} = {s} is not well defined on Z_{orders[i]} x Z_{orders[j]}"
            )


def _element_orders(group: FiniteAbelianGroup) -> np.ndarray:
    residues = group.residue_array()
    if group.rank == 0:
        return np.ones(1, dtype=np.int64)
    orders = np.array(group.orders, dtype=np.int64)
    return np.lcm.reduce(orders // np.gcd(orders, residues), axis=1)


def _check_quadratic(q: QuadraticForm) -> None:
    group = q.group
    den = q.denominator
    table = q.table
    residues = group.residue_array()
    element_orders = _element_orders(group)

    negated = table[group.index_array(-residues)]
    bad = np.flatnonzero(negated != table)
    if bad.size:
        g = group.elements()[int(bad[0])]
        raise QuadraticityError(f"q(-g) != q(g) at g = {g}")

    for m in range(2, group.exponent + 1):
        multiples = table[group.index_array(m * residues)]
        bad = np.flatnonzero((element_orders >= m) & ((multiples - m * m * table) % den != 0))
        if bad.size:
            g = group.elements()[int(bad[0])]
            raise QuadraticityError(f"q({m}*g) != q(g)^{m * m} at g = {g}")


def _check_bilinear(q: QuadraticForm, exhaustive_limit: int) -> None:
    group = q.group
    den = q.denominator
    size = group.size
    all_indices = np.arange(size, dtype=np.int64)

    if size <= exhaustive_limit:
        b = q.braiding_rows(all_indices)
        sums = group.sum_indices(all_indices)
        # b(g + g', h) == b(g, h) + b(g', h) for every triple
        lhs = b[sums]
        rhs = b[:, None, :] + b[None, :, :]
        bad = np.argwhere((lhs - rhs) % den != 0)
    else:
        generators = np.array([group.index_of(e) for e in group.generators()], dtype=np.int64)
        gen_rows = q.braiding_rows(generators)
        bad = np.zeros((0, 3), dtype=np.int64)
        for start in range(0, size, _CHUNK):
            block = all_indices[start:start + _CHUNK]
            shifted = group.sum_indices(block, generators)
            rows = q.braiding_rows(block)
            for pos in range(len(generators)):
                lhs = q.braiding_rows(shifted[:, pos])
                hits = np.argwhere((lhs - rows - gen_rows[pos][None, :]) % den != 0)
                if hits.size:
                    g, h = hits[0]
                    bad = np.array([[block[g], generators[pos], h]])
                    break
            if bad.size:
                break

    if bad.size:
        elements = group.elements()
        g, g2, h = (elements[int(i)] for i in bad[0])
        raise BilinearityError(f"b({g} + {g2}, {h}) != b({g}, {h}) * b({g2}, {h})")


def validate_form(q: QuadraticForm, exhaustive_limit: Optional[int] = None) -> QuadraticForm:
    """Check the quadratic-form axioms and return the form marked validated.

    Args:
        q: Form to check
        exhaustive_limit: Group order up to which bilinearity is checked on
            every triple; above it, on (g, generator, h) triples

    Returns:
        The same form with `validated` set

    Raises:
        WellDefinednessError: If a coefficient ignores the residue relations
        QuadraticityError: If q(m*g) != q(g)**(m*m) or q(-g) != q(g)
        BilinearityError: If the polarization is not bi-additive
        SizeError: If the group exceeds the size cap
    """
    if q.validated:
        return q
    q.group.check_size()
    limit = exhaustive_limit if exhaustive_limit is not None else get_settings().exhaustive_check_limit
    _check_well_defined(q)
    _check_quadratic(q)
    _check_bilinear(q, limit)
    logger.debug(f"Validated {q}")
    return replace(q, validated=True)


def ensure_validated(q: QuadraticForm) -> QuadraticForm:
    return q if q.validated else validate_form(q)


def double_braiding(q: QuadraticForm, g: GroupElement, h: GroupElement) -> UnityScalar:
    """b(g, h) = q(g + h) / (q(g) q(h))

    Raises:
        InputError: If g or h is not an element of the form's group
    """
    group = q.group
    group.check(g)
    group.check(h)
    table = q.table
    numerator = table[group.index_of(group.add(g, h))] - table[group.index_of(g)] - table[group.index_of(h)]
    return UnityScalar(Fraction(int(numerator), q.denominator))


@lru_cache(maxsize=512)
def muger_center(q: QuadraticForm) -> Subgroup:
    """Radical of b: every l with b(e_i, l) = 1 on each standard generator e_i"""
    q = ensure_validated(q)
    group = q.group
    generators = np.array([group.index_of(e) for e in group.generators()], dtype=np.int64)
    if generators.size:
        central = np.flatnonzero(~q.braiding_rows(generators).any(axis=0))
    else:
        central = np.zeros(1, dtype=np.int64)
    elements = group.elements()
    radical = Subgroup(group, tuple(elements[int(i)] for i in central))
    logger.debug(f"Muger center of {q} has order {radical.order}")
    return radical


class Flavor(str, Enum):
    """Symmetric category type of the Muger center"""
    TANNAKIAN = "Tannakian"
    SUPER_TANNAKIAN = "superTannakian"


@dataclass(frozen=True)
class MugerClassification:
    radical: Subgroup
    sign_character: Dict[GroupElement, int] = field(compare=False)
    flavor: Flavor
    tannakian_part: Subgroup

    def sign(self, l: GroupElement) -> int:
        return self.sign_character[l]


def classify_muger(q: QuadraticForm) -> MugerClassification:
    """Tannakian or super-Tannakian, from q restricted to the Muger center

    Raises:
        InvariantViolation: If q on the radical is not a +-1 valued homomorphism
    """
    q = ensure_validated(q)
    radical = muger_center(q)
    signs: Dict[GroupElement, int] = {}
    for l in radical:
        e = q.exponent(l)
        if e not in (0, Fraction(1, 2)):
            logger.error(f"q({l}) = exp(2 pi i {e}) on the Muger center is not +-1")
            raise InvariantViolation(f"q({l}) has exponent {e} on the Muger center, expected 0 or 1/2")
        signs[l] = -1 if e else 1

    group = q.group
    generators = radical.generating_set()
    for l in radical:
        for gen in generators:
            if signs[group.add(l, gen)] != signs[l] * signs[gen]:
                logger.error(f"Sign character fails multiplicativity at {l} + {gen}")
                raise InvariantViolation(f"q restricted to the Muger center is not a homomorphism at {l} + {gen}")

    kernel = Subgroup(group, tuple(l for l in radical if signs[l] == 1))
    flavor = Flavor.TANNAKIAN if kernel.order == radical.order else Flavor.SUPER_TANNAKIAN
    logger.info(f"Muger center of order {radical.order} is {flavor.value}")
    return MugerClassification(radical=radical, sign_character=signs, flavor=flavor, tannakian_part=kernel)


@lru_cache(maxsize=512)
def qform_of_bicharacter(beta: Bicharacter) -> QuadraticForm:
    """q(g) = B(g, g), with r_i = beta_ii and s_ij = beta_ij + beta_ji

    Raises:
        WellDefinednessError: If the bicharacter itself is not well defined
        InvariantViolation: If the induced form fails validation
    """
    validate_bicharacter(beta)
    k = beta.group.rank
    diag = tuple(beta.matrix[i][i] for i in range(k))
    offdiag = tuple(
        ((i, j), beta.matrix[i][j] + beta.matrix[j][i]) for i in range(k) for j in range(i + 1, k)
    )
    try:
        q = validate_form(QuadraticForm(beta.group, diag, offdiag))
    except FormValidationError as e:
        logger.error(f"Form induced by a valid bicharacter failed validation: {e}")
        raise InvariantViolation(f"Induced form failed validation: {e}") from e
    return replace(q, bicharacter=beta)


def realize_bicharacter(q: QuadraticForm) -> Optional[Bicharacter]:
    """A bicharacter B with B(g, g) = Q(g), or None when none exists.

    On the fixed decomposition this exists exactly when n_i * r_i is integral
    for every diagonal coefficient; the upper-triangular choice
    beta_ii = r_i, beta_ij = s_ij, beta_ji = 0 then works.
    """
    if q.bicharacter is not None:
        return q.bicharacter
    orders = q.group.orders
    if any((n * r).denominator != 1 for n, r in zip(orders, q.diag)):
        return None
    k = q.group.rank
    matrix = [[Fraction(0)] * k for _ in range(k)]
    for i, r in enumerate(q.diag):
        matrix[i][i] = r
    for (i, j), s in q.offdiag:
        matrix[i][j] = s
    return validate_bicharacter(Bicharacter(q.group, tuple(tuple(row) for row in matrix)))
