"""Delimited text I/O for vectors and matrices, JSON reports and run manifests."""

from pathlib import Path
from typing import Any, BinaryIO
import json

import numpy as np
from pydantic import ValidationError

from src.core.errors import InputFormatError, ParameterError
from src.models.schemas import RunManifest

MANIFEST_SUFFIX = ".manifest.json"


def read_matrix(path: str | Path, delimiter: str | None = None, header: bool = False) -> np.ndarray:
    """
    Read one vector (or matrix row) per line.

    Args:
        path: Input file
        delimiter: Field separator; None splits on whitespace and accepts commas
        header: Skip a single header line

    Returns:
        2-D float64 array

    Raises:
        OSError: If the file cannot be read
        InputFormatError: On empty input, ragged rows or non-numeric fields
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    lines = text.splitlines()
    if header:
        lines = lines[1:]
    lines = [line for line in lines if line.strip()]
    if not lines:
        raise InputFormatError(f"{path}: no data rows")

    rows = []
    for number, line in enumerate(lines, start=2 if header else 1):
        fields = line.split(delimiter) if delimiter else line.replace(",", " ").split()
        try:
            rows.append([float(field) for field in fields])
        except ValueError as e:
            raise InputFormatError(f"{path}:{number}: {e}") from e
    widths = {len(row) for row in rows}
    if len(widths) != 1 or 0 in widths:
        raise InputFormatError(f"{path}: rows have differing lengths {sorted(widths)}")

    arr = np.array(rows, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise InputFormatError(f"{path}: non-finite values")
    return arr


def write_matrix(target: str | Path | BinaryIO, arr: np.ndarray, delimiter: str = ",") -> None:
    """Write rows to a path or binary stream with 17 significant digits so values round-trip exactly."""
    if isinstance(target, (str, Path)):
        target = Path(target)
    np.savetxt(target, np.atleast_2d(arr), fmt="%.17g", delimiter=delimiter)


def to_json(payload: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n"


def write_report(path: str | Path, payload: dict[str, Any]) -> None:
    Path(path).write_text(to_json(payload), encoding="utf-8")


def manifest_path(output: str | Path) -> Path:
    """Sidecar manifest location for an output file."""
    output = Path(output)
    return output.with_name(output.name + MANIFEST_SUFFIX)


def write_manifest(manifest: RunManifest, output: str | Path | None, target: str | Path | None = None) -> Path:
    """
    Write the manifest next to `output`, or to `target` when given.

    Args:
        manifest: Run manifest
        output: Output file the manifest describes (None for standard output)
        target: Explicit manifest location

    Returns:
        Path of the manifest file
    """
    if target is None:
        if output is None:
            raise ParameterError("A manifest needs an output file or an explicit target")
        target = manifest_path(output)
    target = Path(target)
    target.write_text(manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return target


def read_manifest(path: str | Path) -> RunManifest:
    """
    Load a manifest for replay.

    Raises:
        InputFormatError: If the file is not a valid manifest
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        return RunManifest.model_validate_json(text)
    except ValidationError as e:
        raise InputFormatError(f"{path}: invalid manifest: {e}") from e


def manifest_body(manifest: RunManifest) -> dict[str, Any]:
    """Manifest fields embedded in reports, without the timestamp or the output path."""
    body = manifest.model_dump(mode="json", exclude={"timestamp"})
    body["parameters"].pop("output", None)
    return body
