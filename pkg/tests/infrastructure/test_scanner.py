from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from fusion2s.infrastructure.errors import InvariantViolation, SizeError
from fusion2s.infrastructure.forms import muger_center
from fusion2s.infrastructure.groups import Subgroup, characters, enumerate_subgroups
from fusion2s.infrastructure.modcats import (
    BraidedModuleCat,
    enumerate_module_braidings,
    schur_classes,
    schur_criteria_agree,
    schur_equivalent,
    sigma_constant_on_center,
    sigma_grid,
    sigma_scalar,
)
from fusion2s.infrastructure.scanner import (
    ScanRecord,
    abelian_groups_up_to,
    enumerate_forms,
    scan,
    scan_jobs,
)
from fusion2s.infrastructure.smatrix import Verdict


class TestAbelianGroups:

    def test_up_to_four(self):
        assert [g.orders for g in abelian_groups_up_to(4)] == [(1,), (2,), (3,), (2, 2), (4,)]

    def test_invariant_factors_divide(self):
        for group in abelian_groups_up_to(32):
            orders = group.orders
            assert all(b % a == 0 for a, b in zip(orders, orders[1:]))

    @pytest.mark.parametrize("size, count", [(8, 3), (12, 2), (16, 5), (32, 7)])
    def test_isomorphism_class_counts(self, size, count):
        assert len([g for g in abelian_groups_up_to(size) if g.size == size]) == count

    def test_total_up_to_sixteen(self):
        assert len(abelian_groups_up_to(16)) == 25

    def test_zero(self):
        assert abelian_groups_up_to(0) == []


class TestEnumerateForms:

    def test_z2_has_four(self, make_group):
        # Act
        forms = enumerate_forms(make_group(2))

        # Assert
        assert sorted(q.diag[0] for q in forms) == [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]

    @pytest.mark.parametrize("orders, count", [((1,), 1), ((3,), 3), ((4,), 8), ((2, 2), 32), ((5,), 5)])
    def test_counts(self, make_group, orders, count):
        assert len(enumerate_forms(make_group(*orders))) == count

    def test_all_validated_and_distinct(self, make_group):
        forms = enumerate_forms(make_group(2, 4))
        assert all(q.validated for q in forms)
        assert len({q.table.tobytes() + bytes([q.denominator]) for q in forms}) == len(forms)


class TestScan:

    def test_max_one(self):
        summary = scan(1)
        assert summary.total == 1
        assert summary.passed

    def test_max_two(self):
        # Act
        summary = scan(2)

        # Assert
        assert summary.total == 5
        assert summary.passed
        assert all(r.verdict == Verdict.PASS for r in summary.records)

    def test_max_four_includes_both_order_four_groups(self):
        summary = scan(4)
        groups = {r.form.group.orders for r in summary.records}
        assert {(4,), (2, 2)} <= groups
        assert summary.total == 1 + 4 + 3 + 32 + 8
        assert summary.passed

    def test_oracle_only_where_realizable(self):
        jobs = dict((q, oracle) for q, oracle in scan_jobs(2))
        semion = next(q for q in jobs if q.diag == (Fraction(1, 4),))
        svec = next(q for q in jobs if q.diag == (Fraction(1, 2),))
        assert not jobs[semion]
        assert jobs[svec]

    def test_without_oracle(self):
        assert not any(oracle for _, oracle in scan_jobs(4, with_oracle=False))

    def test_size_cap(self, monkeypatch):
        monkeypatch.setenv("FUSION2S_MAX_GROUP", "4")
        with pytest.raises(SizeError):
            scan(5)

    def test_errors_become_failures(self, mocker):
        # Arrange
        mocker.patch(
            "fusion2s.infrastructure.scanner.verify_theorem", side_effect=InvariantViolation("broken")
        )

        # Act
        summary = scan(2, workers=1)

        # Assert
        assert not summary.passed
        assert len(summary.failures) == 5
        assert summary.records[0].error == "InvariantViolation: broken"

    def test_order_does_not_depend_on_workers(self):
        serial = scan(3, workers=1)
        parallel = scan(3, workers=2)
        assert [r.form for r in serial.records] == [r.form for r in parallel.records]
        assert [r.verdict for r in parallel.records] == [Verdict.PASS] * parallel.total

    def test_default_workers_stay_serial_for_small_scans(self, monkeypatch, mocker):
        # Arrange
        monkeypatch.setenv("FUSION2S_SCAN_WORKERS", "8")
        pool = mocker.patch("fusion2s.infrastructure.scanner.ProcessPoolExecutor")

        # Act
        summary = scan(4)

        # Assert
        assert summary.passed
        pool.assert_not_called()

    def test_record_passed(self, semion):
        assert ScanRecord(semion, Verdict.PASS, False).passed
        assert not ScanRecord(semion, Verdict.FAIL, False).passed

    def test_every_form_up_to_sixteen(self):
        # Act
        summary = scan(16)

        # Assert
        assert summary.total == 18641
        assert summary.passed, [str(r.form) for r in summary.failures]
        with_oracle = next(r for r in reversed(summary.records) if r.with_oracle)
        names = {c.name for c in with_oracle.report.checks}
        assert {"schur_criteria_agree", "sigma_constant_on_center", "center_nondegenerate"} <= names


class TestClassificationProperties:
    """Class counts, criterion agreement and constancy on every scanned form up to order 8."""

    @pytest.fixture(scope="class")
    def forms(self):
        return [q for group in abelian_groups_up_to(8) for q in enumerate_forms(group)]

    def test_class_count_is_radical_order(self, forms):
        for q in forms:
            assert len(schur_classes(q)) == muger_center(q).order

    def test_schur_criteria_agree_on_every_pair(self, forms):
        for q in forms:
            assert schur_criteria_agree(q), str(q)

    def test_pairwise_criteria_on_small_forms(self, forms):
        for q in (q for q in forms if q.group.size <= 4):
            modules = enumerate_module_braidings(Subgroup.trivial(q.group), q)
            for first in modules:
                for second in modules:
                    schur_equivalent(first, second)

    def test_sigma_constant_for_every_subgroup_and_character(self, forms):
        subgroups = {}
        for q in forms:
            radical = muger_center(q)
            if q.group not in subgroups:
                subgroups[q.group] = enumerate_subgroups(q.group)
            for subgroup in subgroups[q.group]:
                if not subgroup.is_subgroup_of(radical):
                    continue
                for chi in characters(q.group):
                    assert sigma_constant_on_center(BraidedModuleCat(q, subgroup, chi)), str(q)

    def test_vectorized_sigma_matches_scalar(self, forms):
        for q in (q for q in forms if q.group.size <= 4):
            group = q.group
            everything = np.arange(group.size)
            grid, den = sigma_grid(q, everything, everything, everything)
            elements = group.elements()
            for c, chi in enumerate(characters(group)):
                module = BraidedModuleCat(q, Subgroup.trivial(group), chi)
                for g, h in product(range(group.size), repeat=2):
                    expected = sigma_scalar(module, elements[h], elements[g])
                    assert Fraction(int(grid[c, g, h]), den) == expected.exponent
