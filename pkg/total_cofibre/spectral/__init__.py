from .field import RATIONALS, Field, FieldMatrix
from .pages import (
    AbutmentReport,
    AbutmentRow,
    E2Report,
    E2Row,
    SpectralPage,
    abutment_check,
    e2_check,
    render_table,
    ss_pages,
)
