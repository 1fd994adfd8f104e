"""Multi-format output for fusion2s documents

- json: the pydantic document, indented, byte-stable for identical input
- table: a human-readable rendering; roots of unity appear as their
  exponent fraction p/q, with 1, -1, i and -i marked symbolically
"""

import logging
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Type

from pydantic import BaseModel

from fusion2s.infrastructure.errors import InputError
from fusion2s.models.documents import (
    CategorySpec,
    CenterSimpleDocument,
    CharacterTableDocument,
    ClassificationDocument,
    MugerDocument,
    ReportDocument,
    ScanSummaryDocument,
    STMatrixDocument,
    UnityMatrixDocument,
    ValidationDocument,
    parse_rational,
)

logger = logging.getLogger(__name__)

LEGEND = "entries p/q stand for exp(2*pi*i*p/q); [1] [-1] [i] [-i] mark the fourth roots of unity"

_SYMBOLS = {
    Fraction(0): "1",
    Fraction(1, 2): "-1",
    Fraction(1, 4): "i",
    Fraction(3, 4): "-i",
}


class OutputFormat(str, Enum):
    """Supported output formats"""
    TABLE = "table"
    JSON = "json"


def render_entry(text: str) -> str:
    """Exponent string as a table cell, e.g. "1/2[-1]" """
    value = parse_rational(text) % 1
    cell = f"{value.numerator}/{value.denominator}"
    symbol = _SYMBOLS.get(value)
    return f"{cell}[{symbol}]" if symbol else cell


def _label(label) -> str:
    if isinstance(label, CenterSimpleDocument):
        return "(" + ",".join(map(str, label.grade)) + ";" + ",".join(map(str, label.half_braiding)) + ")"
    return "(" + ",".join(map(str, label)) + ")"


def _elements(members: List[List[int]]) -> str:
    return "{" + ", ".join(_label(m) for m in members) + "}"


def _group(orders: List[int]) -> str:
    return " x ".join(f"Z_{n}" for n in orders)


class ReportGenerator:
    """Renders any fusion2s document in the requested format"""

    def __init__(self):
        self._renderers: Dict[Type[BaseModel], Callable[[BaseModel], List[str]]] = {
            ValidationDocument: self._validation_lines,
            MugerDocument: self._muger_lines,
            ClassificationDocument: self._classification_lines,
            STMatrixDocument: self._st_matrix_lines,
            CharacterTableDocument: self._char_table_lines,
            ReportDocument: self._report_lines,
            ScanSummaryDocument: self._scan_lines,
        }

    def generate(self, document: BaseModel, output_format: OutputFormat = OutputFormat.TABLE) -> str:
        """Render a document

        Args:
            document: One of the fusion2s documents
            output_format: table or json

        Returns:
            The rendered text, newline-terminated

        Raises:
            InputError: If the format or document type is not supported
        """
        if output_format == OutputFormat.JSON:
            return document.model_dump_json(indent=2) + "\n"
        elif output_format == OutputFormat.TABLE:
            renderer = self._renderers.get(type(document))
            if renderer is None:
                raise InputError(f"No table rendering for {type(document).__name__}")
            return "\n".join(renderer(document)) + "\n"
        else:
            raise InputError(f"Unsupported format: {output_format}")

    def render_matrix(self, matrix: UnityMatrixDocument) -> List[str]:
        """Aligned grid with row and column labels"""
        header = [""] + [_label(c) for c in matrix.col_labels]
        rows = [[_label(r)] + [render_entry(x) for x in row] for r, row in zip(matrix.row_labels, matrix.entries)]
        widths = [max(len(line[i]) for line in [header] + rows) for i in range(len(header))]
        return ["  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in [header] + rows]

    def _spec_lines(self, spec: CategorySpec) -> List[str]:
        lines = [f"group: {_group(spec.group)}"]
        if spec.bicharacter is not None:
            lines.append("bicharacter: " + "; ".join(" ".join(row) for row in spec.bicharacter.matrix))
        elif spec.quadratic_form is not None:
            lines.append("diag: " + " ".join(spec.quadratic_form.diag))
            if spec.quadratic_form.offdiag:
                lines.append("offdiag: " + " ".join(f"{k}:{v}" for k, v in spec.quadratic_form.offdiag.items()))
        else:
            lines.append("trivial form")
        return lines

    def _validation_lines(self, doc: ValidationDocument) -> List[str]:
        return ["valid"] + self._spec_lines(doc.spec)

    def _muger_lines(self, doc: MugerDocument) -> List[str]:
        signs = " ".join(f"{_label(s.element)}:{'+' if s.sign > 0 else '-'}" for s in doc.sign_character)
        return [
            f"group: {_group(doc.group)}",
            f"Muger center ({len(doc.radical)}): {_elements(doc.radical)}",
            f"flavor: {doc.flavor.value}",
            f"q on the center: {signs}",
            f"Tannakian part ({len(doc.tannakian_part)}): {_elements(doc.tannakian_part)}",
        ]

    def _classification_lines(self, doc: ClassificationDocument) -> List[str]:
        lines = [
            f"group: {_group(doc.group)}",
            f"Muger center ({len(doc.radical)}): {_elements(doc.radical)}",
            f"braided module categories: {doc.module_categories}",
            f"monodromy characters: {doc.monodromy_image_size}",
            f"Schur classes: {len(doc.classes)}",
        ]
        for schur_class in doc.classes:
            values = " ".join(render_entry(v) for v in schur_class.values)
            lines.append(f"  chi{_label(schur_class.label)}: {values}")
        return lines

    def _st_matrix_lines(self, doc: STMatrixDocument) -> List[str]:
        return [f"S-tilde ({doc.path} path)"] + self._spec_lines(doc.spec) + self.render_matrix(doc.matrix) + [LEGEND]

    def _char_table_lines(self, doc: CharacterTableDocument) -> List[str]:
        return [f"character table of {_group(doc.orders)}"] + self.render_matrix(doc.table) + [LEGEND]

    def _report_lines(self, doc: ReportDocument) -> List[str]:
        lines = self._spec_lines(doc.spec)
        lines.append(f"Muger center ({len(doc.radical)}): {_elements(doc.radical)}, {doc.flavor.value}")
        lines.append("S-tilde (direct):")
        lines += self.render_matrix(doc.st_direct)
        if doc.st_oracle is not None:
            lines.append("S-tilde (Drinfeld center):")
            lines += self.render_matrix(doc.st_oracle)
        lines.append("character table of the Muger center:")
        lines += self.render_matrix(doc.char_table)
        for check in doc.checks:
            mark = "ok" if check.passed else "FAILED"
            lines.append(f"  [{mark}] {check.name}" + (f" ({check.detail})" if check.detail else ""))
        if doc.direct_match.equal:
            lines.append(f"witness rows {doc.direct_match.rows} cols {doc.direct_match.cols}")
        lines.append(LEGEND)
        lines.append(f"verdict: {doc.verdict.value}")
        return lines

    def _scan_lines(self, doc: ScanSummaryDocument) -> List[str]:
        return [
            f"scanned {doc.instances} instances up to order {doc.max_size}",
            f"failures: {doc.failures}",
            f"verdict: {doc.verdict.value}",
        ]
