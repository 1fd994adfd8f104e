from fractions import Fraction

import pytest

from fusion2s.infrastructure import center_oracle
from fusion2s.infrastructure.center_oracle import (
    CenterSMatrix,
    CenterSimple,
    center_defect,
    center_s_matrix,
    center_simples,
    embed_muger,
    multiplicativity_holds,
    muger_columns,
    restrict_and_dedup,
)
from fusion2s.infrastructure.errors import InputError, SizeError
from fusion2s.infrastructure.forms import Bicharacter
from fusion2s.infrastructure.groups import GroupElement
from fusion2s.infrastructure.roots import LabeledUnityMatrix, UnityScalar, orthogonality_defect


def el(*residues):
    return GroupElement(tuple(residues))


@pytest.fixture
def svec_beta(make_group):
    return Bicharacter(make_group(2), ((Fraction(1, 2),),))


@pytest.fixture
def rep_z2_beta(make_group):
    return Bicharacter(make_group(2), ((Fraction(0),),))


class TestCenterSimples:

    def test_count_is_square_of_order(self, make_group):
        assert len(center_simples(make_group(2, 2))) == 16

    def test_grade_major_order(self, make_group):
        simples = center_simples(make_group(2))
        assert simples[:2] == [CenterSimple(el(0), el(0)), CenterSimple(el(0), el(1))]

    def test_oracle_size_cap(self, make_group):
        with pytest.raises(SizeError, match="Drinfeld-center"):
            center_simples(make_group(4, 4), limit=8)

    def test_oracle_cap_from_settings(self, make_group, monkeypatch):
        monkeypatch.setenv("FUSION2S_ORACLE_MAX_GROUP", "3")
        with pytest.raises(SizeError):
            center_s_matrix(make_group(4))

    def test_str(self):
        assert str(CenterSimple(el(1), el(0))) == "(1;0)"


class TestCenterSMatrix:

    def test_shape_and_symmetry(self, make_group):
        # Act
        s = center_s_matrix(make_group(3)).matrix

        # Assert
        assert s.shape == (9, 9)
        assert (s.numerators == s.numerators.T).all()

    def test_entry_formula(self, make_group):
        group = make_group(4)
        s = center_s_matrix(group).matrix
        x = CenterSimple(el(1), el(2))
        y = CenterSimple(el(3), el(1))
        # chi_2(3) * chi_1(1) = exp(2 pi i (6 + 1) / 4)
        assert s.entry_at(x, y) == UnityScalar.of(7, 4)

    def test_unit_row_is_trivial(self, make_group):
        s = center_s_matrix(make_group(2, 2)).matrix
        unit = CenterSimple(el(0, 0), el(0, 0))
        assert all(s.entry_at(unit, c).is_one() for c in s.col_labels)

    def test_center_is_nondegenerate(self, make_group):
        assert center_defect(center_s_matrix(make_group(2, 3))) < 1e-9

    @pytest.mark.parametrize("orders", [(1,), (2,), (4,), (2, 3), (2, 2)])
    def test_factored_defect_matches_dense_product(self, make_group, orders):
        s_matrix = center_s_matrix(make_group(*orders))
        assert abs(center_defect(s_matrix) - orthogonality_defect(s_matrix.matrix)) < 1e-12

    def test_factored_defect_skips_dense_product(self, make_group, mocker):
        # Arrange
        spy = mocker.spy(center_oracle, "orthogonality_defect")

        # Act
        defect = center_defect(center_s_matrix(make_group(2, 32)))

        # Assert
        assert defect < 1e-9
        assert spy.call_count == 0

    def test_tampered_matrix_falls_back_to_dense_product(self, make_group, mocker):
        # Arrange
        original = center_s_matrix(make_group(2))
        numerators = original.matrix.numerators.copy()
        numerators[1, 1] = (numerators[1, 1] + 1) % original.matrix.denominator
        tampered = CenterSMatrix(
            original.group,
            LabeledUnityMatrix(original.matrix.row_labels, original.matrix.col_labels, numerators, original.matrix.denominator),
        )
        spy = mocker.spy(center_oracle, "orthogonality_defect")

        # Act
        defect = center_defect(tampered)

        # Assert
        assert spy.call_count == 1
        assert defect > 1e-3


class TestEmbedMuger:

    def test_svec_fermion(self, svec_beta):
        assert embed_muger(el(1), svec_beta) == CenterSimple(el(1), el(1))

    def test_rep_z2(self, rep_z2_beta):
        assert embed_muger(el(1), rep_z2_beta) == CenterSimple(el(1), el(0))

    def test_non_central_element(self, make_group):
        semion_like = Bicharacter(make_group(4), ((Fraction(1, 4),),))
        with pytest.raises(InputError, match="not in the Muger center"):
            embed_muger(el(1), semion_like)

    def test_half_braiding_matches_bicharacter(self, make_group):
        group = make_group(2, 4)
        beta = Bicharacter(group, ((Fraction(1, 2), 0), (0, Fraction(1, 4))))
        for simple in muger_columns(beta):
            chi_a = simple.half_braiding
            for h in group.elements():
                value = sum(Fraction(a * x, n) for a, x, n in zip(chi_a, h, group.orders)) % 1
                assert value == beta.exponent(h, simple.grade)


class TestRestrictAndDedup:

    def test_svec(self, svec_beta):
        # Arrange
        s = center_s_matrix(svec_beta.group)

        # Act
        reduced = restrict_and_dedup(s, muger_columns(svec_beta))

        # Assert
        assert reduced.shape == (2, 2)
        assert reduced.denominator == 2

    def test_keeps_first_occurrence(self, rep_z2_beta):
        s = center_s_matrix(rep_z2_beta.group)
        reduced = restrict_and_dedup(s, muger_columns(rep_z2_beta))
        assert reduced.row_labels == (CenterSimple(el(0), el(0)), CenterSimple(el(0), el(1)))

    def test_unknown_column(self, svec_beta, make_group):
        s = center_s_matrix(svec_beta.group)
        with pytest.raises(InputError):
            restrict_and_dedup(s, [CenterSimple(el(1, 0), el(0, 0))])

    def test_modular_gives_one_by_one(self, make_group):
        beta = Bicharacter(make_group(3), ((Fraction(1, 3),),))
        reduced = restrict_and_dedup(center_s_matrix(beta.group), muger_columns(beta))
        assert reduced.shape == (1, 1)
        assert reduced.entry(0, 0).is_one()


class TestMultiplicativity:

    def test_holds_for_bicharacters(self, make_group):
        group = make_group(2, 2)
        beta = Bicharacter(group, ((Fraction(1, 2), 0), (0, 0)))
        assert multiplicativity_holds(center_s_matrix(group), beta)

    def test_holds_for_svec(self, svec_beta):
        assert multiplicativity_holds(center_s_matrix(svec_beta.group), svec_beta)
