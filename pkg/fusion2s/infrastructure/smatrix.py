"""The 2-categorical S-matrix, character tables and the per-instance theorem check

`st_matrix_direct` goes through the module-category formulas: Schur classes,
their regular representatives and the module braiding at the unit simple.
`st_matrix_via_center` goes through the Drinfeld center. `verify_theorem`
compares both against the character table of the Muger center, which
`char_table` builds from its own cyclic decomposition.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from fusion2s.infrastructure.center_oracle import (
    CenterSMatrix,
    center_defect,
    center_s_matrix,
    multiplicativity_holds,
    muger_columns,
    restrict_and_dedup,
)
from fusion2s.infrastructure.errors import InvariantViolation, OracleUnavailable
from fusion2s.infrastructure.forms import (
    Bicharacter,
    Flavor,
    QuadraticForm,
    classify_muger,
    ensure_validated,
    muger_center,
    qform_of_bicharacter,
    realize_bicharacter,
)
from fusion2s.infrastructure.groups import (
    Character,
    FiniteAbelianGroup,
    GroupElement,
    Subgroup,
    characters_of_subgroup,
)
from fusion2s.infrastructure.modcats import (
    BraidedModuleCat,
    regular_representative,
    schur_classes,
    schur_criteria_agree,
    sigma_constant_on_center,
    sigma_grid,
)
from fusion2s.infrastructure.roots import (
    LabeledUnityMatrix,
    PermutationMatch,
    matrices_equal_up_to_perm,
    orthogonality_defect,
)
from fusion2s.infrastructure.settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CharacterTable:
    """Rows labelled by characters, columns by the elements of `group`.

    `decomposition` lists the (generator, order) pairs of the cyclic
    decomposition the rows were built from; empty when rows came from
    restricting ambient characters.
    """
    group: Union[FiniteAbelianGroup, Subgroup]
    table: LabeledUnityMatrix
    decomposition: Tuple[Tuple[GroupElement, int], ...] = ()


def _members(group: Union[FiniteAbelianGroup, Subgroup]) -> Tuple[FiniteAbelianGroup, List[GroupElement]]:
    if isinstance(group, Subgroup):
        return group.parent, list(group.members)
    return group, group.elements()


def _cyclic_span(parent: FiniteAbelianGroup, g: GroupElement) -> List[GroupElement]:
    return [parent.scale(m, g) for m in range(parent.order_of(g))]


def cyclic_decomposition(group: Union[FiniteAbelianGroup, Subgroup]) -> List[Tuple[GroupElement, int]]:
    """Generators of a direct sum of cyclic subgroups equal to the group.

    Elements of largest order are peeled first, each meeting the span of the
    earlier ones only in 0; the search backtracks on a dead end.

    Raises:
        InvariantViolation: If no decomposition is found
    """
    parent, members = _members(group)
    target = len(members)
    candidates = sorted((g for g in members if g != parent.identity), key=lambda g: (-parent.order_of(g), g))

    def peel(span: frozenset, chosen: List[Tuple[GroupElement, int]]) -> Optional[List[Tuple[GroupElement, int]]]:
        if len(span) == target:
            return chosen
        for g in candidates:
            cyclic = _cyclic_span(parent, g)
            if any(x in span for x in cyclic[1:]):
                continue
            grown = frozenset(parent.add(s, x) for s in span for x in cyclic)
            found = peel(grown, chosen + [(g, len(cyclic))])
            if found is not None:
                return found
        return None

    found = peel(frozenset([parent.identity]), [])
    if found is None:
        raise InvariantViolation(f"No cyclic decomposition found for a group of order {target}")
    return found


def char_table(group: Union[FiniteAbelianGroup, Subgroup], independent: bool = True) -> CharacterTable:
    """Character table of G or of a subgroup.

    Args:
        group: The group or subgroup
        independent: Build rows from an own cyclic decomposition (default)
            rather than by restricting the characters of the ambient group

    Raises:
        SizeError: If the ambient group exceeds the size cap
        InvariantViolation: If the table fails its consistency checks
    """
    parent, members = _members(group)
    parent.check_size()

    if not independent:
        if isinstance(group, Subgroup):
            rows = characters_of_subgroup(group)
            labels = [rc.label for rc in rows]
            grid = np.array([rc.numerators for rc in rows], dtype=np.int64).reshape(len(rows), len(members))
        else:
            labels = members
            grid = group.character_numerators()
        table = LabeledUnityMatrix(tuple(labels), tuple(members), grid, parent.exponent)
        return CharacterTable(group, table)

    decomposition = cyclic_decomposition(group)
    dual = FiniteAbelianGroup(tuple(d for _, d in decomposition))
    generators = np.array([g.residues for g, _ in decomposition], dtype=np.int64).reshape(dual.rank, parent.rank)
    # element with coordinates c is sum_j c_j * generator_j; coordinate rows in dual element order
    spanned = parent.index_array(dual.residue_array() @ generators)
    member_indices = np.array([parent.index_of(g) for g in members], dtype=np.int64)
    if not np.array_equal(np.sort(spanned), member_indices):
        raise InvariantViolation("Cyclic decomposition does not cover the group")

    # member j (ascending index) has coordinates dual.elements()[order[j]]
    order = np.argsort(spanned)
    numerators = dual.character_numerators()[:, order]
    table = LabeledUnityMatrix(tuple(dual.elements()), tuple(members), numerators, dual.exponent)
    if table.numerators[0].any():
        raise InvariantViolation("First row of a character table must be trivial")
    return CharacterTable(group, table, tuple(decomposition))


def st_matrix_direct(q: QuadraticForm) -> LabeledUnityMatrix:
    """S-tilde through the module categories: rows are Schur classes, columns
    Muger-central elements, entries sigma(M_0, l) on the regular representative."""
    q = ensure_validated(q)
    group = q.group
    radical = muger_center(q)
    classes = schur_classes(q)
    regulars = [regular_representative(c.representative) for c in classes]
    chars = np.array([group.index_of(m.character.index) for m in regulars], dtype=np.int64)
    unit = np.array([group.index_of(group.identity)], dtype=np.int64)
    grid, den = sigma_grid(q, chars, unit, radical.indices())
    grid = grid[:, :, 0]

    expected = np.array(
        [c.restricted_character.numerators for c in classes], dtype=np.int64
    ).reshape(len(classes), radical.order) * (den // group.exponent)
    mismatched = np.flatnonzero((grid != expected % den).any(axis=1))
    if mismatched.size:
        label = classes[int(mismatched[0])].restricted_character.label
        raise InvariantViolation(f"Module braiding at the unit disagrees with class {label}")
    labels = [c.restricted_character.label for c in classes]
    return LabeledUnityMatrix(tuple(labels), tuple(radical.members), grid, den)


def st_matrix_via_center(beta: Bicharacter) -> LabeledUnityMatrix:
    """S-tilde from the Drinfeld center: Muger columns, then distinct rows

    Raises:
        SizeError: If |G| exceeds the oracle cap
        InvariantViolation: If deduplication does not give a square matrix
    """
    return _oracle_matrix(center_s_matrix(beta.group), beta)


def _oracle_matrix(s_matrix: CenterSMatrix, beta: Bicharacter) -> LabeledUnityMatrix:
    columns = muger_columns(beta)
    return restrict_and_dedup(s_matrix, columns).relabeled(col_labels=[c.grade for c in columns])


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of certifying one category"""
    form: QuadraticForm
    radical: Subgroup
    flavor: Flavor
    st_direct: LabeledUnityMatrix
    char_table: CharacterTable
    direct_match: PermutationMatch
    checks: Tuple[Check, ...]
    verdict: Verdict
    st_oracle: Optional[LabeledUnityMatrix] = None
    oracle_match: Optional[PermutationMatch] = None
    defects: Dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS

    def failed_checks(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]


def _entry_orders_divide(matrix: LabeledUnityMatrix, exponent: int) -> bool:
    return exponent % matrix.denominator == 0


def verify_theorem(q: QuadraticForm, with_oracle: bool = False) -> TheoremReport:
    """Certify that S-tilde equals the character table of the Muger center.

    Args:
        q: The braided category, as a quadratic form
        with_oracle: Also compute S-tilde through the Drinfeld center

    Returns:
        TheoremReport with verdict PASS iff every check held

    Raises:
        OracleUnavailable: If the oracle is requested and q has no bicharacter
        SizeError: If a size cap is exceeded
    """
    q = ensure_validated(q)
    tolerance = get_settings().tolerance
    logger.info(f"Verifying {q} (oracle: {with_oracle})")

    beta = None
    if with_oracle:
        beta = realize_bicharacter(q)
        if beta is None:
            raise OracleUnavailable(f"{q} is not induced by any bicharacter on {q.group}")

    classification = classify_muger(q)
    radical = classification.radical
    direct = st_matrix_direct(q)
    table = char_table(radical)
    direct_match = matrices_equal_up_to_perm(direct, table.table)
    # chi(l) does not depend on k and the regular module has every k as a simple,
    # so the trivial character on it decides constancy for every (H, chi)
    unit_module = BraidedModuleCat(q, Subgroup.trivial(q.group), Character(q.group, q.group.identity))

    defects = {
        "st_direct": orthogonality_defect(direct),
        "char_table": orthogonality_defect(table.table),
    }
    radical_exponent = max((q.group.order_of(l) for l in radical), default=1)
    checks = [
        Check("direct_equals_char_table", bool(direct_match)),
        Check("schur_class_count", direct.shape[0] == radical.order, f"{direct.shape[0]} classes, |Z2| = {radical.order}"),
        Check("schur_criteria_agree", schur_criteria_agree(q), "monodromy and restriction on every character pair"),
        Check("sigma_constant_on_center", sigma_constant_on_center(unit_module)),
        Check("st_direct_orthogonal", defects["st_direct"] < tolerance, f"defect {defects['st_direct']:.3g}"),
        Check("char_table_orthogonal", defects["char_table"] < tolerance, f"defect {defects['char_table']:.3g}"),
        Check("entry_orders", _entry_orders_divide(direct, radical_exponent)),
    ]

    oracle = None
    oracle_match = None
    if beta is not None:
        if qform_of_bicharacter(beta) != q:
            raise InvariantViolation("Realized bicharacter does not induce the form")
        s_matrix = center_s_matrix(beta.group)
        oracle = _oracle_matrix(s_matrix, beta)
        oracle_match = matrices_equal_up_to_perm(oracle, direct)
        defects["center"] = center_defect(s_matrix)
        checks.append(Check("oracle_equals_direct", bool(oracle_match)))
        checks.append(Check("muger_multiplicativity", multiplicativity_holds(s_matrix, beta)))
        checks.append(Check("center_nondegenerate", defects["center"] < tolerance, f"defect {defects['center']:.3g}"))

    verdict = Verdict.PASS if all(c.passed for c in checks) else Verdict.FAIL
    if verdict == Verdict.FAIL:
        logger.warning(f"Verification FAILED for {q}: {[c.name for c in checks if not c.passed]}")
    else:
        logger.info(f"Verification passed for {q}")
    return TheoremReport(
        form=q,
        radical=radical,
        flavor=classification.flavor,
        st_direct=direct,
        char_table=table,
        direct_match=direct_match,
        checks=tuple(checks),
        verdict=verdict,
        st_oracle=oracle,
        oracle_match=oracle_match,
        defects=defects,
    )
