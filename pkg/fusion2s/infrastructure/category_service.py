"""Document-level operations shared by the CLI and the HTTP API"""

import logging
from typing import List, Optional

from fusion2s.infrastructure.errors import OracleUnavailable
from fusion2s.infrastructure.forms import classify_muger, realize_bicharacter
from fusion2s.infrastructure.groups import group_from_orders
from fusion2s.infrastructure.modcats import enumerate_braided_module_categories, monodromy_image, schur_classes
from fusion2s.infrastructure.scanner import ScanSummary, scan
from fusion2s.infrastructure.smatrix import Verdict, char_table, st_matrix_direct, st_matrix_via_center, verify_theorem
from fusion2s.models.documents import (
    CategorySpec,
    CharacterTableDocument,
    ClassificationDocument,
    MugerDocument,
    ReportDocument,
    ScanRecordDocument,
    ScanSummaryDocument,
    SchurClassDocument,
    STMatrixDocument,
    UnityMatrixDocument,
    ValidationDocument,
)

logger = logging.getLogger(__name__)


class CategoryService:
    """Runs computations on CategorySpec input and returns documents.

    Every method raises the fusion2s exception hierarchy unchanged; callers
    map it to exit codes or HTTP statuses.
    """

    def validate(self, spec: CategorySpec) -> ValidationDocument:
        q = spec.to_form()
        logger.info(f"Validated {q}")
        return ValidationDocument(valid=True, spec=CategorySpec.from_form(q))

    def muger(self, spec: CategorySpec) -> MugerDocument:
        return MugerDocument.from_classification(classify_muger(spec.to_form()))

    def classify(self, spec: CategorySpec) -> ClassificationDocument:
        q = spec.to_form()
        classes = schur_classes(q)
        radical = classes[0].restricted_character.subgroup
        return ClassificationDocument(
            group=list(q.group.orders),
            radical=[list(l.residues) for l in radical],
            classes=[SchurClassDocument.from_class(c) for c in classes],
            module_categories=len(enumerate_braided_module_categories(q)),
            monodromy_image_size=len(monodromy_image(q)),
        )

    def st_matrix(self, spec: CategorySpec, via_center: bool = False) -> STMatrixDocument:
        """S-tilde by the direct path, or through the Drinfeld center

        Raises:
            OracleUnavailable: If via_center is requested for a form with no bicharacter
        """
        q = spec.to_form()
        if via_center:
            beta = realize_bicharacter(q)
            if beta is None:
                raise OracleUnavailable(f"{q} is not induced by any bicharacter on {q.group}")
            matrix = st_matrix_via_center(beta)
            path = "center"
        else:
            matrix = st_matrix_direct(q)
            path = "direct"
        return STMatrixDocument(path=path, spec=CategorySpec.from_form(q), matrix=UnityMatrixDocument.from_matrix(matrix))

    def character_table(self, orders: List[int]) -> CharacterTableDocument:
        return CharacterTableDocument.from_table(char_table(group_from_orders(orders)))

    def verify(self, spec: CategorySpec, with_oracle: bool = False) -> ReportDocument:
        return ReportDocument.from_report(verify_theorem(spec.to_form(), with_oracle=with_oracle))

    def scan(self, max_size: int, with_oracle: bool = True, workers: Optional[int] = None) -> ScanSummary:
        return scan(max_size, with_oracle=with_oracle, workers=workers)


def scan_record_documents(summary: ScanSummary) -> List[ScanRecordDocument]:
    """One document per instance, in scan order"""
    documents = []
    for record in summary.records:
        report = record.report
        documents.append(
            ScanRecordDocument(
                spec=CategorySpec.from_form(record.form),
                verdict=record.verdict,
                with_oracle=record.with_oracle,
                radical_order=report.radical.order if report is not None else None,
                flavor=report.flavor if report is not None else None,
                error=record.error,
            )
        )
    return documents


def scan_summary_document(summary: ScanSummary) -> ScanSummaryDocument:
    return ScanSummaryDocument(
        max_size=summary.max_size,
        instances=summary.total,
        failures=len(summary.failures),
        verdict=Verdict.PASS if summary.passed else Verdict.FAIL,
    )
