from fractions import Fraction

import pytest

from fusion2s.infrastructure.errors import CrossCheckError, ExistenceError, InputError
from fusion2s.infrastructure.forms import double_braiding, muger_center
from fusion2s.infrastructure.groups import Character, GroupElement, Subgroup, characters
from fusion2s.infrastructure.modcats import (
    BraidedModuleCat,
    enumerate_braided_module_categories,
    enumerate_module_braidings,
    module_braiding_exists,
    monodromy_characters,
    monodromy_image,
    regular_representative,
    schur_class_of,
    schur_classes,
    schur_criteria_agree,
    schur_equivalent,
    sigma_constant_on_center,
    sigma_scalar,
)
from fusion2s.infrastructure.roots import UnityScalar


def el(*residues):
    return GroupElement(tuple(residues))


class TestModuleBraidingExists:

    def test_regular_module_always_braids(self, semion):
        assert module_braiding_exists(Subgroup.trivial(semion.group), semion)

    def test_semion_whole_group_has_none(self, semion):
        assert not module_braiding_exists(Subgroup.whole(semion.group), semion)

    def test_svec_whole_group(self, svec):
        assert module_braiding_exists(Subgroup.whole(svec.group), svec)

    def test_z4_quarter(self, z4_quarter):
        group = z4_quarter.group
        assert module_braiding_exists(Subgroup(group, (el(0), el(2))), z4_quarter)
        assert not module_braiding_exists(Subgroup.whole(group), z4_quarter)

    def test_foreign_subgroup(self, semion, make_group):
        with pytest.raises(InputError):
            module_braiding_exists(Subgroup.trivial(make_group(3)), semion)

    def test_non_subgroup_is_rejected(self, z4_quarter):
        with pytest.raises(InputError, match="not closed"):
            module_braiding_exists(Subgroup(z4_quarter.group, (el(0), el(1))), z4_quarter)


class TestEnumerateModuleBraidings:

    def test_one_per_character(self, svec):
        modules = enumerate_module_braidings(Subgroup.whole(svec.group), svec)
        assert [m.character.index for m in modules] == [el(0), el(1)]

    def test_missing_braiding_raises(self, semion):
        # Act & Assert
        with pytest.raises(ExistenceError, match="Muger center"):
            enumerate_module_braidings(Subgroup.whole(semion.group), semion)

    def test_direct_construction_raises(self, semion):
        with pytest.raises(ExistenceError):
            BraidedModuleCat(semion, Subgroup.whole(semion.group), Character(semion.group, el(0)))

    def test_all_categories_for_svec(self, svec):
        # two subgroups of the radical, two characters each
        assert len(enumerate_braided_module_categories(svec)) == 4

    def test_all_categories_for_semion(self, semion):
        assert len(enumerate_braided_module_categories(semion)) == 2

    def test_simples_are_cosets(self, z4_quarter):
        module = BraidedModuleCat(z4_quarter, muger_center(z4_quarter), Character(z4_quarter.group, el(1)))
        assert module.simples() == [el(0), el(1)]
        assert not module.is_regular()


class TestSigma:

    def test_sigma_on_unit_simple_is_the_character(self, z4_quarter):
        chi = Character(z4_quarter.group, el(1))
        module = BraidedModuleCat(z4_quarter, Subgroup.trivial(z4_quarter.group), chi)
        for g in z4_quarter.group.elements():
            assert sigma_scalar(module, el(0), g) == chi(g)

    def test_sigma_includes_monodromy(self, semion):
        module = BraidedModuleCat(semion, Subgroup.trivial(semion.group), Character(semion.group, el(0)))
        assert sigma_scalar(module, el(1), el(1)) == UnityScalar.of(1, 2)

    def test_constant_on_muger_center(self, make_form):
        q = make_form([2, 4], ["1/2", "1/4"])
        radical = muger_center(q)
        for subgroup in [Subgroup.trivial(q.group), radical]:
            for chi in characters(q.group):
                assert sigma_constant_on_center(BraidedModuleCat(q, subgroup, chi))


class TestMonodromyImage:

    def test_modular_image_is_everything(self, semion):
        assert monodromy_image(semion) == frozenset({(Fraction(0),), (Fraction(1, 2),)})

    def test_symmetric_image_is_trivial(self, svec):
        assert monodromy_image(svec) == frozenset({(Fraction(0),)})

    def test_size_is_index_of_radical(self, make_form):
        q = make_form([2, 4], ["1/2", "1/4"])
        assert len(monodromy_image(q)) == q.group.size // muger_center(q).order


class TestSchurEquivalence:

    def test_semion_everything_equivalent(self, semion):
        first, second = enumerate_module_braidings(Subgroup.trivial(semion.group), semion)
        assert schur_equivalent(first, second)

    def test_svec_characters_are_distinct(self, svec):
        first, second = enumerate_module_braidings(Subgroup.trivial(svec.group), svec)
        assert schur_equivalent(first, first)
        assert not schur_equivalent(first, second)

    def test_different_forms(self, semion, svec):
        first = enumerate_module_braidings(Subgroup.trivial(semion.group), semion)[0]
        second = enumerate_module_braidings(Subgroup.trivial(svec.group), svec)[0]
        with pytest.raises(InputError):
            schur_equivalent(first, second)

    def test_criteria_disagreement_is_reported(self, svec, mocker):
        # Arrange
        mocker.patch("fusion2s.infrastructure.modcats._same_restriction", return_value=True)
        first, second = enumerate_module_braidings(Subgroup.trivial(svec.group), svec)

        # Act & Assert
        with pytest.raises(CrossCheckError):
            schur_equivalent(first, second)

    def test_criteria_agree_on_every_pair(self, make_form):
        q = make_form([2, 4], ["1/2", "1/4"], {(0, 1): "1/2"})
        modules = enumerate_module_braidings(Subgroup.trivial(q.group), q)
        for first in modules:
            for second in modules:
                schur_equivalent(first, second)


class TestSchurClasses:

    @pytest.mark.parametrize(
        "orders, diag, count",
        [
            ([2], ["1/4"], 1),
            ([2], ["1/2"], 2),
            ([2], ["0"], 2),
            ([4], ["1/4"], 2),
            ([2, 2], ["0", "0"], 4),
            ([3], ["1/3"], 1),
        ],
    )
    def test_count_is_muger_order(self, make_form, orders, diag, count):
        assert len(schur_classes(make_form(orders, diag))) == count

    def test_sorted_by_exponents(self, make_form):
        classes = schur_classes(make_form([2, 2], ["0", "0"]))
        keys = [tuple(v.exponent for v in c.restricted_character.values) for c in classes]
        assert keys == sorted(keys)
        assert classes[0].restricted_character.is_trivial()

    def test_representatives_are_regular(self, z4_quarter):
        for schur_class in schur_classes(z4_quarter):
            assert schur_class.representative.is_regular()

    def test_schur_class_of_module(self, z4_quarter):
        # Arrange
        radical = muger_center(z4_quarter)
        module = BraidedModuleCat(z4_quarter, radical, Character(z4_quarter.group, el(1)))

        # Act
        found = schur_class_of(module)

        # Assert
        assert found.evaluate(el(2)) == UnityScalar.of(1, 2)

    def test_every_module_has_a_class(self, svec):
        classes = schur_classes(svec)
        for module in enumerate_braided_module_categories(svec):
            assert schur_class_of(module) in classes


class TestRegularRepresentative:

    def test_regular_is_fixed(self, svec):
        module = BraidedModuleCat(svec, Subgroup.trivial(svec.group), Character(svec.group, el(1)))
        assert regular_representative(module) is module

    def test_keeps_character(self, svec):
        module = BraidedModuleCat(svec, Subgroup.whole(svec.group), Character(svec.group, el(1)))
        regular = regular_representative(module)
        assert regular.is_regular()
        assert regular.character == module.character
        assert schur_equivalent(module, regular)


class TestMonodromyCharacters:

    def test_semion(self, semion):
        assert list(monodromy_characters(semion)) == [0, 1]

    def test_svec_is_trivial(self, svec):
        assert list(monodromy_characters(svec)) == [0, 0]

    def test_matches_double_braiding(self, make_form):
        q = make_form([2, 4], ["1/2", "1/4"], {(0, 1): "1/2"})
        elements = q.group.elements()
        for k, a in zip(elements, monodromy_characters(q)):
            chi = Character(q.group, elements[int(a)])
            assert all(chi(g) == double_braiding(q, g, k) for g in elements)


class TestSchurCriteriaAgree:

    @pytest.mark.parametrize("orders, diag", [([2], ["1/4"]), ([2], ["1/2"]), ([4], ["1/4"]), ([2, 2], ["0", "1/2"])])
    def test_agree(self, make_form, orders, diag):
        assert schur_criteria_agree(make_form(orders, diag))

    def test_detects_wrong_center(self, svec, mocker):
        # Arrange
        mocker.patch("fusion2s.infrastructure.modcats.muger_center", return_value=Subgroup.trivial(svec.group))

        # Act & Assert
        assert not schur_criteria_agree(svec)


class TestSigmaConstancy:

    def test_detects_non_central_element(self, semion, mocker):
        # Arrange
        mocker.patch("fusion2s.infrastructure.modcats.muger_center", return_value=Subgroup.whole(semion.group))
        module = BraidedModuleCat(semion, Subgroup.trivial(semion.group), Character(semion.group, el(0)))

        # Act & Assert
        assert not sigma_constant_on_center(module)
