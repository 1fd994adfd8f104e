"""Braided module categories over pointed braided fusion categories

An indecomposable module category over Vec_G is M_(H, mu) for a subgroup H;
with associator data out of scope, mu is never stored and H stands for the
module category. A module braiding exists exactly when H lies in the Muger
center, and then every character chi of G gives one, acting on M_k (x) g by
sigma = b(g, k) * chi(g).

Schur equivalence is decided two ways that must agree: the existence of a
k with chi_1/chi_2 = b(., k), and equality of the restrictions to the Muger
center.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, List, Sequence, Tuple

import numpy as np

from fusion2s.infrastructure.errors import CrossCheckError, ExistenceError, InputError, InvariantViolation
from fusion2s.infrastructure.forms import QuadraticForm, double_braiding, ensure_validated, muger_center
from fusion2s.infrastructure.groups import (
    Character,
    FiniteAbelianGroup,
    GroupElement,
    Subgroup,
    SubgroupCharacter,
    characters,
    characters_of_subgroup,
    coset_transversal,
    enumerate_subgroups,
)
from fusion2s.infrastructure.roots import UnityScalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BraidedModuleCat:
    """Module category M_(H, mu) with the module braiding given by chi"""
    form: QuadraticForm
    subgroup: Subgroup
    character: Character

    def __post_init__(self):
        if self.subgroup.parent != self.form.group or self.character.parent != self.form.group:
            raise InputError("Subgroup and character must live in the form's group")
        if not module_braiding_exists(self.subgroup, self.form):
            raise ExistenceError(f"No module braiding on M_H: H = {self.subgroup} is not inside the Muger center")

    def simples(self) -> List[GroupElement]:
        """Coset representatives k labelling the simple objects M_k"""
        return coset_transversal(self.form.group, self.subgroup)

    def is_regular(self) -> bool:
        return self.subgroup.is_trivial()


@dataclass(frozen=True)
class SchurClass:
    """Schur equivalence class, labelled by chi restricted to the Muger center"""
    form: QuadraticForm
    restricted_character: SubgroupCharacter
    representative: BraidedModuleCat = field(compare=False)

    def evaluate(self, l: GroupElement) -> UnityScalar:
        return self.restricted_character.evaluate(l)


def module_braiding_exists(subgroup: Subgroup, q: QuadraticForm) -> bool:
    """True iff H is contained in the Muger center of q

    Raises:
        InputError: If H is not a subgroup of the form's group
    """
    if subgroup.parent != q.group:
        raise InputError(f"Subgroup lives in {subgroup.parent}, the form in {q.group}")
    return subgroup.is_subgroup_of(muger_center(q))


def enumerate_module_braidings(subgroup: Subgroup, q: QuadraticForm) -> List[BraidedModuleCat]:
    """One braided module category per character of G, in character order

    Raises:
        ExistenceError: If H is not inside the Muger center
    """
    q = ensure_validated(q)
    if not module_braiding_exists(subgroup, q):
        raise ExistenceError(f"No module braiding on M_H: H = {subgroup} is not inside the Muger center")
    return [BraidedModuleCat(q, subgroup, chi) for chi in characters(q.group)]


def enumerate_braided_module_categories(q: QuadraticForm) -> List[BraidedModuleCat]:
    """Every (H, chi) with H a subgroup of the Muger center and chi a character of G"""
    q = ensure_validated(q)
    radical = muger_center(q)
    categories = []
    for subgroup in enumerate_subgroups(q.group):
        if subgroup.is_subgroup_of(radical):
            categories.extend(enumerate_module_braidings(subgroup, q))
    logger.debug(f"{len(categories)} braided module categories over {q}")
    return categories


def sigma_scalar(module: BraidedModuleCat, k: GroupElement, g: GroupElement) -> UnityScalar:
    """Module braiding on M_k (x) g: b(g, k) * chi(g)

    Raises:
        InputError: If k or g is not an element of the form's group
    """
    return double_braiding(module.form, g, k) * module.character.evaluate(g)


def sigma_grid(
    q: QuadraticForm, chars: np.ndarray, simples: np.ndarray, elements: np.ndarray
) -> Tuple[np.ndarray, int]:
    """Numerators N[c, g, k] of sigma(M_k, g) = b(g, k) * chi_c(g), with their common denominator.

    All three arguments are element indices in the form's group: `chars`
    indexes the characters chi_c, `elements` the g and `simples` the k.
    """
    group = q.group
    den = math.lcm(q.denominator, group.exponent)
    braid = q.braiding_rows(elements, simples) * (den // q.denominator)
    chi = group.character_numerators()[np.ix_(chars, elements)] * (den // group.exponent)
    return (chi[:, :, None] + braid[None, :, :]) % den, den


def _element_indices(group: FiniteAbelianGroup, elements: Sequence[GroupElement]) -> np.ndarray:
    return np.array([group.index_of(g) for g in elements], dtype=np.int64)


def sigma_constant_on_center(module: BraidedModuleCat) -> bool:
    """Whether sigma(M_k, g) is the same for every simple M_k once g is Muger-central"""
    q = module.form
    group = q.group
    radical = muger_center(q)
    chars = _element_indices(group, [module.character.index])
    grid, _ = sigma_grid(q, chars, _element_indices(group, module.simples()), radical.indices())
    varying = np.flatnonzero((grid[0] != grid[0][:, :1]).any(axis=1))
    if varying.size:
        logger.warning(f"sigma(., {radical.members[varying[0]]}) is not constant on {module.subgroup}")
        return False
    return True


def _monodromy_rows(q: QuadraticForm) -> np.ndarray:
    """Numerators of b(e_i, k) over q.denominator: one row per generator, one column per k"""
    group = q.group
    return q.braiding_rows(_element_indices(group, group.generators()))


@lru_cache(maxsize=512)
def monodromy_image(q: QuadraticForm) -> FrozenSet[Tuple[Fraction, ...]]:
    """The characters b(., k), k in G, as exponent vectors on the generators"""
    q = ensure_validated(q)
    if not q.group.rank:
        return frozenset({()})
    distinct = np.unique(_monodromy_rows(q).T, axis=0)
    return frozenset(tuple(Fraction(int(x), q.denominator) for x in row) for row in distinct)


def monodromy_characters(q: QuadraticForm) -> np.ndarray:
    """Index a_k with b(., k) = chi_{a_k}, for every k in element order

    Raises:
        InvariantViolation: If some b(., k) is not a character of G
    """
    group = q.group
    if not group.rank:
        return np.zeros(group.size, dtype=np.int64)
    # chi_a(e_i) = exp(2 pi i a_i / n_i), so a_i = n_i * b(e_i, k)
    scaled = _monodromy_rows(q) * np.array(group.orders, dtype=np.int64)[:, None]
    if (scaled % q.denominator).any():
        raise InvariantViolation(f"b(., k) is not a character of {group} for some k")
    return group.index_array((scaled // q.denominator).T)


def schur_criteria_agree(q: QuadraticForm) -> bool:
    """Both Schur criteria on every pair of characters of G at once.

    chi_a and chi_c are equivalent by monodromy iff chi_{a-c} = b(., k) for
    some k, and by restriction iff chi_{a-c} is trivial on the Muger center.
    As a - c runs over all of G, the criteria agree on every pair exactly
    when both describe the same set of differences.
    """
    q = ensure_validated(q)
    group = q.group
    by_monodromy = np.zeros(group.size, dtype=bool)
    by_monodromy[monodromy_characters(q)] = True
    by_restriction = ~group.character_numerators()[:, muger_center(q).indices()].any(axis=1)
    disagree = np.flatnonzero(by_monodromy != by_restriction)
    if disagree.size:
        logger.warning(f"Schur criteria disagree on {disagree.size} character differences of {q}")
        return False
    return True


def _ratio_vector(first: Character, second: Character) -> Tuple[Fraction, ...]:
    return tuple((first(e) / second(e)).exponent for e in first.parent.generators())


def _same_restriction(first: Character, second: Character, radical: Subgroup) -> bool:
    return all(first(l) == second(l) for l in radical)


def schur_equivalent(first: BraidedModuleCat, second: BraidedModuleCat) -> bool:
    """Decide Schur equivalence, cross-checking both criteria

    Raises:
        InputError: If the two categories live over different forms
        CrossCheckError: If the monodromy and restriction criteria disagree
    """
    if first.form != second.form:
        raise InputError("Schur equivalence is only defined over a common braided category")
    q = first.form
    # characters are determined by their values on generators
    by_monodromy = _ratio_vector(first.character, second.character) in monodromy_image(q)
    by_restriction = _same_restriction(first.character, second.character, muger_center(q))
    if by_monodromy != by_restriction:
        logger.error(
            f"Schur criteria disagree for characters {first.character.index} and {second.character.index}"
        )
        raise CrossCheckError(
            f"Monodromy criterion says {by_monodromy}, restriction criterion says {by_restriction}"
        )
    return by_monodromy


def schur_classes(q: QuadraticForm) -> List[SchurClass]:
    """Schur classes of braided module categories, one per character of the Muger center.

    Sorted by the restricted character's exponent sequence. Each class keeps
    the regular module category of the least character index reaching it.

    Raises:
        InvariantViolation: If the class count differs from |Z_2(G)|
    """
    q = ensure_validated(q)
    group = q.group
    radical = muger_center(q)
    try:
        restricted = characters_of_subgroup(radical)
    except InputError as e:
        logger.error(f"Restricting the characters of {group} to its Muger center failed: {e}")
        raise InvariantViolation(str(e)) from e
    regular = Subgroup.trivial(group)
    classes = [SchurClass(q, rc, BraidedModuleCat(q, regular, Character(group, rc.label))) for rc in restricted]

    orbits = group.size // len(monodromy_image(q))
    if orbits != radical.order:
        raise InvariantViolation(f"|G| / |monodromy image| = {orbits}, expected {radical.order}")

    ordered = sorted(classes, key=lambda c: c.restricted_character.numerators)
    logger.debug(f"{len(ordered)} Schur classes over {q}")
    return ordered


def schur_class_of(module: BraidedModuleCat) -> SchurClass:
    """The Schur class containing a braided module category"""
    for schur_class in schur_classes(module.form):
        if all(module.character(l) == schur_class.evaluate(l) for l in schur_class.restricted_character.subgroup):
            return schur_class
    raise InvariantViolation(f"Character {module.character.index} restricts to no Schur class")


def regular_representative(module: BraidedModuleCat) -> BraidedModuleCat:
    """The regular module category with the same chi, certified Schur equivalent

    Raises:
        InvariantViolation: If the certification fails
    """
    if module.is_regular():
        return module
    regular = BraidedModuleCat(module.form, Subgroup.trivial(module.form.group), module.character)
    if not _same_restriction(module.character, regular.character, muger_center(module.form)):
        raise InvariantViolation(f"Regular representative of {module.subgroup} changed the Muger restriction")
    return regular
