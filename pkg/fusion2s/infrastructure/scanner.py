"""Batch certification over every small pointed braided category

Enumerates abelian groups in invariant-factor form and every quadratic form
on the admissible coefficient grid, then runs the theorem check on each.
"""

import math
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Optional, Tuple

from fusion2s.infrastructure.errors import Fusion2SError
from fusion2s.infrastructure.forms import QuadraticForm, realize_bicharacter, trivial_form, validate_form
from fusion2s.infrastructure.groups import FiniteAbelianGroup
from fusion2s.infrastructure.settings import get_settings
from fusion2s.infrastructure.smatrix import TheoremReport, Verdict, verify_theorem

logger = logging.getLogger(__name__)

# a worker process does not pay for itself on fewer instances
_MIN_JOBS_PER_WORKER = 256
_MAX_CHUNK = 256


def _invariant_factor_chains(size: int, smallest: int) -> Iterator[Tuple[int, ...]]:
    """Chains d_1 | d_2 | ... with product `size`, every d_j a multiple of `smallest`"""
    if size == 1:
        yield ()
        return
    for d in range(smallest, size + 1, smallest):
        if size % d:
            continue
        rest = size // d
        # remaining factors are multiples of d, so their product is 1 or at least d
        if rest != 1 and rest < d:
            continue
        for tail in _invariant_factor_chains(rest, d):
            yield (d,) + tail


def abelian_groups_up_to(max_size: int) -> List[FiniteAbelianGroup]:
    """One group per isomorphism class of order <= max_size, as Z_{d_1} x ... with d_1 | d_2 | ...

    The trivial group is Z_1.
    """
    groups = [FiniteAbelianGroup((1,))] if max_size >= 1 else []
    for size in range(2, max_size + 1):
        chains = sorted(_invariant_factor_chains(size, 2))
        groups.extend(FiniteAbelianGroup(chain) for chain in chains)
    return groups


def _diagonal_grid(n: int) -> List[Fraction]:
    step = 2 * n if n % 2 == 0 else n
    return [Fraction(t, step) for t in range(step)]


def enumerate_forms(group: FiniteAbelianGroup) -> List[QuadraticForm]:
    """Every validated quadratic form on the admissible grid, deduplicated by value table.

    Diagonal coefficients run over (1/2n)Z for even n and (1/n)Z for odd n,
    off-diagonal ones over (1/gcd(n_i, n_j))Z, all mod 1.
    """
    orders = group.orders
    pairs = [(i, j) for i in range(len(orders)) for j in range(i + 1, len(orders))]
    diagonal_choices = [_diagonal_grid(n) for n in orders]
    offdiagonal_choices = [
        [Fraction(t, math.gcd(orders[i], orders[j])) for t in range(math.gcd(orders[i], orders[j]))]
        for i, j in pairs
    ]
    if group.size == 1:
        return [trivial_form(group)]

    seen = set()
    forms = []
    for diag in product(*diagonal_choices):
        for off in product(*offdiagonal_choices):
            q = validate_form(QuadraticForm(group, diag, tuple(zip(pairs, off))))
            key = (q.denominator, q.table.tobytes())
            if key in seen:
                continue
            seen.add(key)
            forms.append(q)
    logger.debug(f"{len(forms)} quadratic forms on {group}")
    return forms


@dataclass(frozen=True)
class ScanRecord:
    """One verified instance"""
    form: QuadraticForm
    verdict: Verdict
    with_oracle: bool
    report: Optional[TheoremReport] = field(default=None, compare=False)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.verdict == Verdict.PASS


@dataclass(frozen=True)
class ScanSummary:
    max_size: int
    records: Tuple[ScanRecord, ...]

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def failures(self) -> List[ScanRecord]:
        return [r for r in self.records if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures


def _verify_instance(job: Tuple[QuadraticForm, bool]) -> ScanRecord:
    q, with_oracle = job
    try:
        report = verify_theorem(q, with_oracle=with_oracle)
    except Fusion2SError as e:
        logger.error(f"Instance {q} raised {type(e).__name__}: {e}")
        return ScanRecord(q, Verdict.FAIL, with_oracle, error=f"{type(e).__name__}: {e}")
    return ScanRecord(q, report.verdict, with_oracle, report=report)


def scan_jobs(max_size: int, with_oracle: bool = True) -> List[Tuple[QuadraticForm, bool]]:
    """(form, use_oracle) for every instance, oracle only where a bicharacter exists within the cap"""
    oracle_cap = get_settings().oracle_max_group_size
    jobs = []
    for group in abelian_groups_up_to(max_size):
        for q in enumerate_forms(group):
            use_oracle = with_oracle and group.size <= oracle_cap and realize_bicharacter(q) is not None
            jobs.append((q, use_oracle))
    return jobs


def scan(max_size: int, with_oracle: bool = True, workers: Optional[int] = None) -> ScanSummary:
    """Verify every quadratic form on every abelian group of order <= max_size.

    Args:
        max_size: Largest group order
        with_oracle: Add the Drinfeld-center comparison where available
        workers: Worker processes; defaults to settings, capped so each
            worker gets at least a chunk of instances. Record order does not
            depend on it

    Raises:
        SizeError: If max_size exceeds the group size cap
    """
    FiniteAbelianGroup((max_size,)).check_size()
    jobs = scan_jobs(max_size, with_oracle)
    if workers is None:
        workers = max(1, min(get_settings().scan_workers, len(jobs) // _MIN_JOBS_PER_WORKER))
    logger.info(f"Scanning {len(jobs)} instances up to order {max_size} with {workers} worker(s)")

    if workers > 1:
        chunksize = max(1, min(_MAX_CHUNK, len(jobs) // (4 * workers)))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_verify_instance, jobs, chunksize=chunksize))
    else:
        records = [_verify_instance(job) for job in jobs]

    summary = ScanSummary(max_size, tuple(records))
    if summary.passed:
        logger.info(f"All {summary.total} instances passed")
    else:
        logger.warning(f"{len(summary.failures)} of {summary.total} instances failed")
    return summary
