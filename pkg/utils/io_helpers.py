"""
Input/Output helpers for the command line and HTTP surfaces.
"""

import json
from pathlib import Path

from pydantic import BaseModel

from models.errors import MatrixParseError, ScalarParseError
from models.exactfield import Field, FieldScalar
from models.exactmatrix import ExactMatrix, matrix_parse


def load_matrix_arg(text: str, field: Field | None = None) -> ExactMatrix:
    """Inline matrix text, `@path` to a file holding it, or an SNA(2) generator name."""
    from services.sna import GENERATOR_NAMES, generator

    text = text.strip()
    if text in GENERATOR_NAMES:
        return generator(text) if field is None else generator(text, field)
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise MatrixParseError(f"cannot read matrix file {path}: {exc}") from exc
    return matrix_parse(text, field)


def parse_scalar_list(text: str, field: Field) -> list[FieldScalar]:
    """Comma-separated scalars; an empty string is the empty list."""
    text = text.strip()
    if not text:
        return []
    try:
        return [field.parse(part) for part in text.split(",")]
    except ValueError as exc:
        raise ScalarParseError(str(exc)) from exc


def dump_json(report: BaseModel) -> str:
    return json.dumps(report.model_dump(), sort_keys=True, indent=2)

