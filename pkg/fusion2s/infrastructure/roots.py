"""Exact roots of unity and labeled matrices of them

A root of unity is stored as its exponent: a reduced rational p/q in [0, 1)
standing for exp(2*pi*i*p/q). Products, inverses and powers are exponent
arithmetic mod 1, so every entrywise comparison is exact. Sums of roots are
never represented; checks that need them (orthogonality) go through complex
floats.

A LabeledUnityMatrix keeps its entries as an integer numerator grid over one
common denominator, which keeps large Drinfeld-center matrices cheap.
"""

import math
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from fusion2s.infrastructure.errors import InputError

logger = logging.getLogger(__name__)



@dataclass(frozen=True, order=True)
class UnityScalar:
    """A root of unity exp(2*pi*i*exponent) with exact exponent in [0, 1)"""
    exponent: Fraction = Fraction(0)

    def __post_init__(self):
        e = self.exponent
        if not isinstance(e, Fraction):
            e = Fraction(e)
        if not 0 <= e < 1:
            e = e % 1
        object.__setattr__(self, "exponent", e)

    @classmethod
    def of(cls, numerator: int, denominator: int = 1) -> "UnityScalar":
        """Build exp(2*pi*i*numerator/denominator)"""
        if denominator == 0:
            raise InputError("Root of unity denominator cannot be zero")
        return cls(Fraction(numerator, denominator))

    @classmethod
    def one(cls) -> "UnityScalar":
        return cls(Fraction(0))

    def mul(self, other: "UnityScalar") -> "UnityScalar":
        return UnityScalar(self.exponent + other.exponent)

    def inv(self) -> "UnityScalar":
        return UnityScalar(-self.exponent)

    def pow(self, m: int) -> "UnityScalar":
        return UnityScalar(self.exponent * m)

    def eq(self, other: "UnityScalar") -> bool:
        return self.exponent == other.exponent

    __mul__ = mul
    __pow__ = pow

    def __truediv__(self, other: "UnityScalar") -> "UnityScalar":
        return UnityScalar(self.exponent - other.exponent)

    @property
    def order(self) -> int:
        """Multiplicative order of the root"""
        return self.exponent.denominator

    def is_one(self) -> bool:
        return self.exponent == 0

    def to_complex(self) -> complex:
        """Floating-point value, for orthogonality checks only"""
        angle = 2 * math.pi * self.exponent
        return complex(math.cos(angle), math.sin(angle))

    def __str__(self) -> str:
        return f"{self.exponent.numerator}/{self.exponent.denominator}"


@dataclass(frozen=True)
class PermutationMatch:
    """Outcome of a permutation-equivalence test.

    When `equal` is true, first[i][j] == second[rows[i]][cols[j]] for all i, j.
    """
    equal: bool
    rows: Optional[Tuple[int, ...]] = None
    cols: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.equal


@dataclass(frozen=True, eq=False)
class LabeledUnityMatrix:
    """Row/column-labeled matrix of roots of unity.

    Entry (i, j) is exp(2*pi*i*numerators[i, j]/denominator). The denominator
    is always the least common one, so equal matrices have equal grids.
    """
    row_labels: Tuple[Hashable, ...]
    col_labels: Tuple[Hashable, ...]
    numerators: np.ndarray
    denominator: int = 1

    def __post_init__(self):
        rows = tuple(self.row_labels)
        cols = tuple(self.col_labels)
        if len(set(rows)) != len(rows):
            raise InputError("Row labels must be pairwise distinct")
        if len(set(cols)) != len(cols):
            raise InputError("Column labels must be pairwise distinct")

        den = int(self.denominator)
        if den < 1:
            raise InputError(f"Denominator must be positive, got {den}")
        nums = np.array(self.numerators, dtype=np.int64).reshape(len(rows), len(cols)) % den
        common = math.gcd(den, int(np.gcd.reduce(nums.ravel()))) if nums.size else den
        if common > 1:
            nums //= common
            den //= common
        nums.flags.writeable = False

        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)
        object.__setattr__(self, "numerators", nums)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def from_scalars(
        cls,
        row_labels: Sequence[Hashable],
        col_labels: Sequence[Hashable],
        grid: Sequence[Sequence[UnityScalar]],
    ) -> "LabeledUnityMatrix":
        """Build a matrix from a grid of UnityScalar values"""
        if len(grid) != len(row_labels) or any(len(row) != len(col_labels) for row in grid):
            raise InputError(
                f"Entry grid does not match {len(row_labels)}x{len(col_labels)} labels"
            )
        den = math.lcm(1, *(entry.exponent.denominator for row in grid for entry in row))
        nums = [
            [entry.exponent.numerator * (den // entry.exponent.denominator) for entry in row]
            for row in grid
        ]
        return cls(tuple(row_labels), tuple(col_labels), np.array(nums, dtype=np.int64), den)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    @property
    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    @cached_property
    def _row_index(self) -> Dict[Hashable, int]:
        return {label: i for i, label in enumerate(self.row_labels)}

    @cached_property
    def _col_index(self) -> Dict[Hashable, int]:
        return {label: j for j, label in enumerate(self.col_labels)}

    def column_position(self, label: Hashable) -> int:
        try:
            return self._col_index[label]
        except KeyError as e:
            raise InputError(f"Unknown column label {label!r}") from e

    def has_column(self, label: Hashable) -> bool:
        return label in self._col_index

    def entry(self, i: int, j: int) -> UnityScalar:
        return UnityScalar(Fraction(int(self.numerators[i, j]), self.denominator))

    def entry_at(self, row_label: Hashable, col_label: Hashable) -> UnityScalar:
        """Entry addressed by labels"""
        try:
            return self.entry(self._row_index[row_label], self._col_index[col_label])
        except KeyError as e:
            raise InputError(f"Unknown label {e.args[0]!r}") from e

    def entries(self) -> List[List[UnityScalar]]:
        return [[self.entry(i, j) for j in range(self.shape[1])] for i in range(self.shape[0])]

    def rescaled(self, denominator: int) -> np.ndarray:
        """Numerator grid over a multiple of the own denominator"""
        if denominator % self.denominator:
            raise InputError(f"{denominator} is not a multiple of {self.denominator}")
        return self.numerators * (denominator // self.denominator)

    def to_complex(self) -> np.ndarray:
        return np.exp(2j * np.pi * self.numerators / self.denominator)

    def select_columns(self, labels: Sequence[Hashable]) -> "LabeledUnityMatrix":
        """Sub-matrix on the given columns, in the given order"""
        missing = [label for label in labels if label not in self._col_index]
        if missing:
            raise InputError(f"Columns not present in matrix: {missing}")
        idx = [self._col_index[label] for label in labels]
        return LabeledUnityMatrix(self.row_labels, tuple(labels), self.numerators[:, idx], self.denominator)

    def select_rows(self, indices: Sequence[int]) -> "LabeledUnityMatrix":
        idx = list(indices)
        return LabeledUnityMatrix(
            tuple(self.row_labels[i] for i in idx), self.col_labels, self.numerators[idx, :], self.denominator
        )

    def permuted(self, rows: Sequence[int], cols: Sequence[int]) -> "LabeledUnityMatrix":
        """Matrix whose i-th row/j-th column is the rows[i]-th row/cols[j]-th column of self"""
        return LabeledUnityMatrix(
            tuple(self.row_labels[i] for i in rows),
            tuple(self.col_labels[j] for j in cols),
            self.numerators[np.ix_(list(rows), list(cols))],
            self.denominator,
        )

    def relabeled(
        self,
        row_labels: Optional[Sequence[Hashable]] = None,
        col_labels: Optional[Sequence[Hashable]] = None,
    ) -> "LabeledUnityMatrix":
        return LabeledUnityMatrix(
            tuple(row_labels) if row_labels is not None else self.row_labels,
            tuple(col_labels) if col_labels is not None else self.col_labels,
            self.numerators,
            self.denominator,
        )

    def canonical_form(self) -> "LabeledUnityMatrix":
        """Rows and columns sorted lexicographically by exponent sequence, to a fixpoint"""
        rows, cols = _doubly_sorted_orders(self.numerators)
        return self.permuted(rows, cols)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledUnityMatrix):
            return NotImplemented
        return (
            self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and self.denominator == other.denominator
            and np.array_equal(self.numerators, other.numerators)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"LabeledUnityMatrix(shape={self.shape}, denominator={self.denominator})"


def _doubly_sorted_orders(grid: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Alternately sort rows and columns lexicographically until neither moves"""
    n_rows, n_cols = grid.shape
    rows = np.arange(n_rows)
    cols = np.arange(n_cols)
    if grid.size == 0:
        return rows, cols
    for _ in range(n_rows + n_cols + 1):
        sub = grid[np.ix_(rows, cols)]
        new_rows = rows[np.lexsort(sub.T[::-1])]
        sub = grid[np.ix_(new_rows, cols)]
        new_cols = cols[np.lexsort(sub[::-1])]
        if np.array_equal(new_rows, rows) and np.array_equal(new_cols, cols):
            break
        rows, cols = new_rows, new_cols
    return rows, cols


def _sorted_lines(grid: np.ndarray) -> np.ndarray:
    """Multiset of row multisets, as a sorted array"""
    lines = np.sort(grid, axis=1)
    return lines[np.lexsort(lines.T[::-1])] if lines.size else lines


def _bipartite_matching(candidates: List[List[int]], size: int) -> Optional[List[int]]:
    """Perfect matching left i -> right candidates[i] (Kuhn's augmenting paths)"""
    owner = [-1] * size

    def augment(i: int, seen: List[bool]) -> bool:
        for c in candidates[i]:
            if not seen[c]:
                seen[c] = True
                if owner[c] == -1 or augment(owner[c], seen):
                    owner[c] = i
                    return True
        return False

    for i in range(len(candidates)):
        if not augment(i, [False] * size):
            return None
    matching = [-1] * len(candidates)
    for c, i in enumerate(owner):
        if i >= 0:
            matching[i] = c
    return matching


def _search_permutations(a: np.ndarray, b: np.ndarray) -> Optional[Tuple[List[int], List[int]]]:
    """Backtracking search for rows/cols with a[i, j] == b[rows[i], cols[j]]"""
    n_rows, n_cols = a.shape
    row_keys_b = [tuple(sorted(b[r])) for r in range(n_rows)]
    col_keys_a = [tuple(sorted(a[:, j])) for j in range(n_cols)]
    col_keys_b = [tuple(sorted(b[:, c])) for c in range(n_cols)]

    row_candidates = [
        [r for r in range(n_rows) if row_keys_b[r] == tuple(sorted(a[i]))] for i in range(n_rows)
    ]
    start = [[c for c in range(n_cols) if col_keys_b[c] == col_keys_a[j]] for j in range(n_cols)]
    order = sorted(range(n_rows), key=lambda i: (len(row_candidates[i]), i))
    assignment = [-1] * n_rows
    used = [False] * n_rows

    def extend(depth: int, col_candidates: List[List[int]]) -> Optional[List[int]]:
        if depth == n_rows:
            return _bipartite_matching(col_candidates, n_cols)
        i = order[depth]
        for r in row_candidates[i]:
            if used[r]:
                continue
            narrowed = [[c for c in col_candidates[j] if b[r, c] == a[i, j]] for j in range(n_cols)]
            if any(not cands for cands in narrowed) or _bipartite_matching(narrowed, n_cols) is None:
                continue
            used[r] = True
            assignment[i] = r
            found = extend(depth + 1, narrowed)
            if found is not None:
                return found
            used[r] = False
            assignment[i] = -1
        return None

    cols = extend(0, start)
    if cols is None:
        return None
    return list(assignment), cols


def matrices_equal_up_to_perm(first: LabeledUnityMatrix, second: LabeledUnityMatrix) -> PermutationMatch:
    """Decide whether two matrices agree exactly after permuting rows and columns.

    The doubly-sorted canonical forms are compared first; when they differ a
    backtracking search settles the question, so the answer is always exact.

    Args:
        first: Matrix whose rows/columns are mapped
        second: Matrix they are mapped onto

    Returns:
        PermutationMatch carrying witness permutations when equal
    """
    if first.shape != second.shape:
        return PermutationMatch(False)
    n_rows, n_cols = first.shape
    if n_rows == 0 or n_cols == 0:
        return PermutationMatch(True, tuple(range(n_rows)), tuple(range(n_cols)))

    den = math.lcm(first.denominator, second.denominator)
    a = first.rescaled(den)
    b = second.rescaled(den)

    if not np.array_equal(_sorted_lines(a), _sorted_lines(b)) or not np.array_equal(
        _sorted_lines(a.T), _sorted_lines(b.T)
    ):
        return PermutationMatch(False)

    rows_a, cols_a = _doubly_sorted_orders(a)
    rows_b, cols_b = _doubly_sorted_orders(b)
    if np.array_equal(a[np.ix_(rows_a, cols_a)], b[np.ix_(rows_b, cols_b)]):
        rows = [0] * n_rows
        cols = [0] * n_cols
        for i in range(n_rows):
            rows[int(rows_a[i])] = int(rows_b[i])
        for j in range(n_cols):
            cols[int(cols_a[j])] = int(cols_b[j])
        return PermutationMatch(True, tuple(rows), tuple(cols))

    logger.debug(f"Canonical forms differ for {first.shape} matrices; searching permutations")
    found = _search_permutations(a, b)
    if found is None:
        return PermutationMatch(False)
    rows, cols = found
    return PermutationMatch(True, tuple(rows), tuple(cols))


def orthogonality_defect(matrix: LabeledUnityMatrix) -> float:
    """Max-norm of (M M^* - n I)/n for a square n x n matrix, in floating point

    Raises:
        InputError: If the matrix is not square
    """
    if not matrix.is_square:
        raise InputError(f"Orthogonality defect needs a square matrix, got {matrix.shape}")
    n = matrix.shape[0]
    if n == 0:
        return 0.0
    values = matrix.to_complex()
    gram = values @ values.conj().T
    return float(np.max(np.abs(gram - n * np.eye(n)))) / n
