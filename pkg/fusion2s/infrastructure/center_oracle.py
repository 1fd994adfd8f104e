"""Drinfeld-center path for bicharacter braidings

For Vec_G with trivial associator the center has one simple (g, a) per grade
g and character chi_a, and the unnormalized S-matrix entry between (g, a) and
(h, b) is chi_a(h) * chi_b(g). The Muger center embeds into it by
l -> (l, a_l) with chi_{a_l}(h) = B(h, l). Keeping only the embedded columns
and deleting repeated rows gives the 2-categorical S-matrix independently of
the module-category computation.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence

import numpy as np

from fusion2s.infrastructure.errors import InputError, InvariantViolation, SizeError
from fusion2s.infrastructure.forms import Bicharacter, muger_center, qform_of_bicharacter
from fusion2s.infrastructure.groups import FiniteAbelianGroup, GroupElement
from fusion2s.infrastructure.roots import LabeledUnityMatrix, orthogonality_defect
from fusion2s.infrastructure.settings import get_settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CenterSimple:
    """Simple object of Z(Vec_G): grade g with half-braiding chi_a on delta_h"""
    grade: GroupElement
    half_braiding: GroupElement

    def __str__(self) -> str:
        return f"({self.grade};{self.half_braiding})"


@dataclass(frozen=True)
class CenterSMatrix:
    group: FiniteAbelianGroup
    matrix: LabeledUnityMatrix

    @property
    def simples(self) -> List[CenterSimple]:
        return list(self.matrix.row_labels)


def _check_oracle_size(group: FiniteAbelianGroup, limit: Optional[int]) -> None:
    limit = limit if limit is not None else get_settings().oracle_max_group_size
    if group.size > limit:
        raise SizeError(group.size, limit, what="Drinfeld-center group")


def center_simples(group: FiniteAbelianGroup, limit: Optional[int] = None) -> List[CenterSimple]:
    """All |G|^2 simples (g, a), grade-major in element order

    Raises:
        SizeError: If |G| exceeds the oracle cap
        InvariantViolation: If some half-braiding is not multiplicative
    """
    _check_oracle_size(group, limit)
    numerators = group.character_numerators()
    sums = group.sum_indices(np.arange(group.size))
    # chi_a(h + h') == chi_a(h) * chi_a(h') for every a
    products = (numerators[:, :, None] + numerators[:, None, :]) % group.exponent
    if not np.array_equal(numerators[:, sums], products):
        raise InvariantViolation(f"A half-braiding on {group} is not multiplicative")
    elements = group.elements()
    return [CenterSimple(g, a) for g in elements for a in elements]


def center_s_matrix(group: FiniteAbelianGroup, limit: Optional[int] = None) -> CenterSMatrix:
    """Unnormalized S-matrix of Z(Vec_G): S[(g,a),(h,b)] = chi_a(h) * chi_b(g)

    Raises:
        SizeError: If |G| exceeds the oracle cap
    """
    _check_oracle_size(group, limit)
    return _center_s_matrix(group)


@lru_cache(maxsize=4)
def _center_s_matrix(group: FiniteAbelianGroup) -> CenterSMatrix:
    simples = center_simples(group, group.size)
    chi = group.character_numerators()
    n = group.size
    # axes (g, a, h, b): chi[a, h] + chi[b, g]
    grid = chi[None, :, :, None] + chi.T[:, None, None, :]
    grid = grid.reshape(n * n, n * n) % group.exponent
    if not np.array_equal(grid, grid.T):
        raise InvariantViolation(f"Center S-matrix of {group} is not symmetric")
    matrix = LabeledUnityMatrix(tuple(simples), tuple(simples), grid, group.exponent)
    logger.debug(f"Built {n * n}x{n * n} center S-matrix for {group}")
    return CenterSMatrix(group, matrix)


def embed_muger(l: GroupElement, beta: Bicharacter) -> CenterSimple:
    """Image (l, a_l) of a Muger-central l, with chi_{a_l}(h) = B(h, l)

    Raises:
        InputError: If l is not in the Muger center of the induced form
    """
    group = beta.group
    group.check(l)
    if l not in muger_center(qform_of_bicharacter(beta)):
        raise InputError(f"{l} is not in the Muger center")
    # chi_a(e_i) = exp(2 pi i a_i / n_i) must equal B(e_i, l)
    index = group.element(
        int(beta.exponent(e, l) * n) for e, n in zip(group.generators(), group.orders)
    )
    return CenterSimple(l, index)


def restrict_and_dedup(s_matrix: CenterSMatrix, columns: Sequence[CenterSimple]) -> LabeledUnityMatrix:
    """Keep the given columns, then the first occurrence of every distinct row

    Raises:
        InputError: If a column is not a simple of the matrix
        InvariantViolation: If the distinct-row count differs from the column count
    """
    missing = [c for c in columns if not s_matrix.matrix.has_column(c)]
    if missing:
        raise InputError(f"{missing[0]} is not a simple of the center")
    restricted = s_matrix.matrix.select_columns(list(columns))
    _, first = np.unique(restricted.numerators, axis=0, return_index=True)
    reduced = restricted.select_rows(sorted(int(i) for i in first))
    if reduced.shape[0] != reduced.shape[1]:
        logger.error(f"Row deduplication left {reduced.shape[0]} rows for {reduced.shape[1]} columns")
        raise InvariantViolation(
            f"Deduplicated S-matrix is {reduced.shape[0]}x{reduced.shape[1]}, expected square"
        )
    return reduced


def muger_columns(beta: Bicharacter) -> List[CenterSimple]:
    """Embedded Muger center, in radical order"""
    return [embed_muger(l, beta) for l in muger_center(qform_of_bicharacter(beta))]


def multiplicativity_holds(s_matrix: CenterSMatrix, beta: Bicharacter) -> bool:
    """S[z, embed(l + l')] == S[z, embed(l)] * S[z, embed(l')] for every row z and radical l, l'"""
    group = beta.group
    radical = muger_center(qform_of_bicharacter(beta))
    matrix = s_matrix.matrix
    den = matrix.denominator
    positions = [matrix.column_position(embed_muger(l, beta)) for l in radical]
    columns = matrix.numerators[:, positions]
    radical_indices = radical.indices()
    # position within the radical of l + l'
    sums = np.searchsorted(radical_indices, group.sum_indices(radical_indices, radical_indices))
    failing = np.argwhere(
        (columns[:, sums] != (columns[:, :, None] + columns[:, None, :]) % den).any(axis=0)
    )
    if failing.size:
        l, m = (radical.members[int(i)] for i in failing[0])
        logger.warning(f"Multiplicativity fails on Muger columns {l}, {m}")
        return False
    return True


def center_defect(s_matrix: CenterSMatrix) -> float:
    """Orthogonality defect of the center S-matrix (non-degeneracy certificate).

    S[(g,a),(h,b)] = chi_a(h) * chi_b(g) is the Kronecker square of the
    character table X up to a column permutation, so S S^* / |G|^2 = A (x) A
    with A = X X^* / |G|. The defect is read off A without forming S S^*.
    A matrix not of that shape falls back to the dense product.
    """
    group = s_matrix.group
    n = group.size
    chi = group.character_numerators()
    expected = (chi[None, :, :, None] + chi.T[:, None, None, :]) % group.exponent
    if s_matrix.matrix.shape != (n * n, n * n) or not np.array_equal(
        s_matrix.matrix.rescaled(group.exponent).reshape(n, n, n, n), expected
    ):
        logger.warning(f"Center S-matrix of {group} does not factor through its character table")
        return orthogonality_defect(s_matrix.matrix)

    values = np.exp(2j * np.pi * chi / group.exponent)
    gram = values @ values.conj().T / n
    diagonal = np.diag(gram)
    off = np.abs(gram - np.diag(diagonal)).max() if n > 1 else 0.0
    # entries of A (x) A - I: d_i d_k - 1, d_i * A_kl and A_ij * A_kl off the diagonal
    return float(max(np.abs(np.outer(diagonal, diagonal) - 1).max(), np.abs(diagonal).max() * off, off * off))
