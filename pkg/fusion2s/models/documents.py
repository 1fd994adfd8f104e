"""Input and report documents

Exact rationals travel as "p/q" strings so no float ever touches braiding
data. Labels are residue vectors, or {grade, half_braiding} pairs for
Drinfeld-center simples.
"""

import re
from fractions import Fraction
from functools import singledispatch
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from fusion2s.infrastructure.center_oracle import CenterSimple
from fusion2s.infrastructure.errors import InputError
from fusion2s.infrastructure.forms import (
    Bicharacter,
    Flavor,
    MugerClassification,
    QuadraticForm,
    qform_of_bicharacter,
    trivial_form,
    validate_form,
)
from fusion2s.infrastructure.groups import FiniteAbelianGroup, GroupElement, Subgroup
from fusion2s.infrastructure.modcats import SchurClass
from fusion2s.infrastructure.roots import LabeledUnityMatrix, PermutationMatch, UnityScalar
from fusion2s.infrastructure.smatrix import CharacterTable, Check, TheoremReport, Verdict

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_PAIR = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", "-p/q" or "p" exactly

    Raises:
        InputError: If the text is not a rational or the denominator is zero
    """
    match = _RATIONAL.match(str(text))
    if not match:
        raise InputError(f"Not a rational of the form p/q: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise InputError(f"Zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _check_rational(text: str) -> str:
    try:
        parse_rational(text)
    except InputError as e:
        raise ValueError(str(e)) from e
    return text


class QuadraticFormDocument(BaseModel):
    """Coefficients of Q(x) = sum r_i x_i^2 + sum_{i<j} s_ij x_i x_j"""
    diag: List[str] = Field(default_factory=list, description="r_i as rational strings")
    offdiag: Dict[str, str] = Field(default_factory=dict, description='s_ij keyed by "i,j" (0-based)')

    @field_validator("diag")
    @classmethod
    def validate_diag(cls, v: List[str]) -> List[str]:
        return [_check_rational(x) for x in v]

    @field_validator("offdiag")
    @classmethod
    def validate_offdiag(cls, v: Dict[str, str]) -> Dict[str, str]:
        for key, value in v.items():
            if not _PAIR.match(key):
                raise ValueError(f'Off-diagonal key must look like "i,j", got {key!r}')
            _check_rational(value)
        return v


class BicharacterDocument(BaseModel):
    matrix: List[List[str]] = Field(default_factory=list, description="beta_ij as rational strings")

    @field_validator("matrix")
    @classmethod
    def validate_matrix(cls, v: List[List[str]]) -> List[List[str]]:
        return [[_check_rational(x) for x in row] for row in v]


class CategorySpec(BaseModel):
    """A pointed braided category: a group and at most one of form or bicharacter.

    With neither, the braiding is the symmetric one given by the trivial form.
    """
    group: List[int] = Field(..., min_length=1, description="Cyclic factor orders")
    quadratic_form: Optional[QuadraticFormDocument] = None
    bicharacter: Optional[BicharacterDocument] = None

    @field_validator("group")
    @classmethod
    def validate_group(cls, v: List[int]) -> List[int]:
        if any(n < 1 for n in v):
            raise ValueError("Cyclic factor orders must be >= 1")
        return v

    @model_validator(mode="after")
    def validate_braiding(self) -> "CategorySpec":
        if self.quadratic_form is not None and self.bicharacter is not None:
            raise ValueError("Give either quadratic_form or bicharacter, not both")
        return self

    @classmethod
    def parse_document(cls, text: str) -> "CategorySpec":
        """Parse a JSON document

        Raises:
            InputError: If the document is malformed
        """
        try:
            return cls.model_validate_json(text)
        except ValidationError as e:
            raise InputError(f"Invalid category document: {e}") from e

    def to_group(self) -> FiniteAbelianGroup:
        group = FiniteAbelianGroup(tuple(self.group))
        group.check_size()
        return group

    def to_form(self) -> QuadraticForm:
        """The validated quadratic form this document presents

        Raises:
            InputError: On malformed coefficients (FormValidationError subclasses included)
            SizeError: If the group exceeds the size cap
        """
        group = self.to_group()
        if self.bicharacter is not None:
            matrix = tuple(tuple(parse_rational(x) for x in row) for row in self.bicharacter.matrix)
            return qform_of_bicharacter(Bicharacter(group, matrix))
        if self.quadratic_form is None:
            return trivial_form(group)
        doc = self.quadratic_form
        diag = [parse_rational(x) for x in doc.diag] or [Fraction(0)] * group.rank
        offdiag = {}
        for key, value in doc.offdiag.items():
            i, j = (int(x) for x in _PAIR.match(key).groups())
            offdiag[(i, j)] = parse_rational(value)
        return validate_form(QuadraticForm.from_coefficients(group, diag, offdiag))

    @classmethod
    def from_form(cls, q: QuadraticForm) -> "CategorySpec":
        """Normalized document: coefficients reduced mod 1"""
        group = list(q.group.orders)
        if q.bicharacter is not None:
            matrix = [[format_rational(v) for v in row] for row in q.bicharacter.matrix]
            return cls(group=group, bicharacter=BicharacterDocument(matrix=matrix))
        form = QuadraticFormDocument(
            diag=[format_rational(r) for r in q.diag],
            offdiag={f"{i},{j}": format_rational(s) for (i, j), s in q.offdiag},
        )
        return cls(group=group, quadratic_form=form)


class CenterSimpleDocument(BaseModel):
    grade: List[int]
    half_braiding: List[int]


Label = Union[List[int], CenterSimpleDocument]


@singledispatch
def render_label(label) -> Label:
    raise InputError(f"No document form for label {label!r}")


@render_label.register
def _(label: GroupElement) -> Label:
    return list(label.residues)


@render_label.register
def _(label: CenterSimple) -> Label:
    return CenterSimpleDocument(grade=list(label.grade.residues), half_braiding=list(label.half_braiding.residues))


def parse_label(label: Label):
    if isinstance(label, CenterSimpleDocument):
        return CenterSimple(GroupElement(tuple(label.grade)), GroupElement(tuple(label.half_braiding)))
    return GroupElement(tuple(label))


def _elements(members) -> List[List[int]]:
    return [list(g.residues) for g in members]


class UnityMatrixDocument(BaseModel):
    """Labeled matrix of roots of unity, entries as exponent strings"""
    row_labels: List[Label]
    col_labels: List[Label]
    entries: List[List[str]]

    @classmethod
    def from_matrix(cls, matrix: LabeledUnityMatrix) -> "UnityMatrixDocument":
        return cls(
            row_labels=[render_label(x) for x in matrix.row_labels],
            col_labels=[render_label(x) for x in matrix.col_labels],
            entries=[[format_rational(e.exponent) for e in row] for row in matrix.entries()],
        )

    def to_matrix(self) -> LabeledUnityMatrix:
        grid = [[UnityScalar(parse_rational(x)) for x in row] for row in self.entries]
        return LabeledUnityMatrix.from_scalars(
            [parse_label(x) for x in self.row_labels],
            [parse_label(x) for x in self.col_labels],
            grid,
        )


class PermutationDocument(BaseModel):
    """Witness: first[i][j] == second[rows[i]][cols[j]]"""
    equal: bool
    rows: Optional[List[int]] = None
    cols: Optional[List[int]] = None

    @classmethod
    def from_match(cls, match: PermutationMatch) -> "PermutationDocument":
        return cls(
            equal=match.equal,
            rows=list(match.rows) if match.rows is not None else None,
            cols=list(match.cols) if match.cols is not None else None,
        )


class CheckDocument(BaseModel):
    name: str
    passed: bool
    detail: str = ""

    @classmethod
    def from_check(cls, check: Check) -> "CheckDocument":
        return cls(name=check.name, passed=check.passed, detail=check.detail)


class ValidationDocument(BaseModel):
    valid: bool = True
    spec: CategorySpec


class SignDocument(BaseModel):
    element: List[int]
    sign: int


class MugerDocument(BaseModel):
    group: List[int]
    radical: List[List[int]]
    flavor: Flavor
    sign_character: List[SignDocument]
    tannakian_part: List[List[int]]

    @classmethod
    def from_classification(cls, classification: MugerClassification) -> "MugerDocument":
        radical = classification.radical
        return cls(
            group=list(radical.parent.orders),
            radical=_elements(radical),
            flavor=classification.flavor,
            sign_character=[SignDocument(element=list(l.residues), sign=classification.sign(l)) for l in radical],
            tannakian_part=_elements(classification.tannakian_part),
        )


class SchurClassDocument(BaseModel):
    """Restricted character on the Muger center, with the ambient character labelling it"""
    label: List[int]
    values: List[str]

    @classmethod
    def from_class(cls, schur_class: SchurClass) -> "SchurClassDocument":
        restricted = schur_class.restricted_character
        return cls(
            label=list(restricted.label.residues),
            values=[format_rational(v.exponent) for v in restricted.values],
        )


class ClassificationDocument(BaseModel):
    group: List[int]
    radical: List[List[int]]
    classes: List[SchurClassDocument]
    module_categories: int = Field(..., description="Braided module categories (H, chi) before Schur equivalence")
    monodromy_image_size: int


class CharacterTableDocument(BaseModel):
    orders: List[int]
    decomposition: List[List[int]] = Field(default_factory=list, description="Peeled generators, each followed by its order")
    table: UnityMatrixDocument

    @classmethod
    def from_table(cls, table: CharacterTable) -> "CharacterTableDocument":
        group = table.group
        parent = group.parent if isinstance(group, Subgroup) else group
        return cls(
            orders=list(parent.orders),
            decomposition=[list(g.residues) + [d] for g, d in table.decomposition],
            table=UnityMatrixDocument.from_matrix(table.table),
        )


class STMatrixDocument(BaseModel):
    path: str = Field(..., description='"direct" or "center"')
    spec: CategorySpec
    matrix: UnityMatrixDocument


class ReportDocument(BaseModel):
    """Machine-readable theorem report"""
    spec: CategorySpec
    radical: List[List[int]]
    flavor: Flavor
    st_direct: UnityMatrixDocument
    char_table: UnityMatrixDocument
    direct_match: PermutationDocument
    st_oracle: Optional[UnityMatrixDocument] = None
    oracle_match: Optional[PermutationDocument] = None
    checks: List[CheckDocument]
    defects: Dict[str, float] = Field(default_factory=dict)
    verdict: Verdict

    @classmethod
    def from_report(cls, report: TheoremReport) -> "ReportDocument":
        return cls(
            spec=CategorySpec.from_form(report.form),
            radical=_elements(report.radical),
            flavor=report.flavor,
            st_direct=UnityMatrixDocument.from_matrix(report.st_direct),
            char_table=UnityMatrixDocument.from_matrix(report.char_table.table),
            direct_match=PermutationDocument.from_match(report.direct_match),
            st_oracle=UnityMatrixDocument.from_matrix(report.st_oracle) if report.st_oracle is not None else None,
            oracle_match=PermutationDocument.from_match(report.oracle_match) if report.oracle_match is not None else None,
            checks=[CheckDocument.from_check(c) for c in report.checks],
            defects=dict(report.defects),
            verdict=report.verdict,
        )


class ScanRecordDocument(BaseModel):
    """One line of a scan output file"""
    spec: CategorySpec
    verdict: Verdict
    with_oracle: bool
    radical_order: Optional[int] = None
    flavor: Optional[Flavor] = None
    error: Optional[str] = None


class ScanSummaryDocument(BaseModel):
    max_size: int
    instances: int
    failures: int
    verdict: Verdict
