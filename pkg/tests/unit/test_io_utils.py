"""Unit tests for matrix, report and manifest I/O."""

import io
import json

import numpy as np
import pytest

from src.core.errors import InputFormatError, ParameterError
from src.models.schemas import RunManifest
from src.utils.io_utils import (
    manifest_body,
    manifest_path,
    read_manifest,
    read_matrix,
    to_json,
    write_manifest,
    write_matrix,
)


@pytest.fixture
def manifest():
    """Маніфест запуску rip."""
    return RunManifest(
        command="rip",
        parameters={"k": 2, "input": "phi.csv", "output": "out.json"},
        seeds={"seed": 0},
        version="1.0.0",
    )


class TestReadMatrix:
    """Tests for read_matrix."""

    def test_comma_and_whitespace(self, tmp_path):
        """Тест: коми та пробіли розділяють поля за замовчуванням."""
        path = tmp_path / "m.txt"
        path.write_text("1,2,3\n4 5 6\n")

        assert read_matrix(path).tolist() == [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]

    def test_header_and_delimiter(self, tmp_path):
        """Тест: заголовок пропускається, роздільник задається явно."""
        path = tmp_path / "m.tsv"
        path.write_text("a\tb\n1.5\t-2\n")

        assert read_matrix(path, delimiter="\t", header=True).tolist() == [[1.5, -2.0]]

    def test_blank_lines_ignored(self, tmp_path):
        """Тест: порожні рядки ігноруються."""
        path = tmp_path / "m.txt"
        path.write_text("1,2\n\n3,4\n\n")

        assert read_matrix(path).shape == (2, 2)

    @pytest.mark.parametrize("content", ["", "1,2\n3\n", "1,x\n", "1,nan\n"])
    def test_malformed_input(self, tmp_path, content):
        """Тест: порожній, нерівний або нечисловий вхід дає InputFormatError."""
        path = tmp_path / "bad.txt"
        path.write_text(content)

        with pytest.raises(InputFormatError):
            read_matrix(path)

    def test_missing_file(self, tmp_path):
        """Тест: відсутній файл дає OSError."""
        with pytest.raises(OSError):
            read_matrix(tmp_path / "missing.txt")


class TestWriteMatrix:
    """Tests for write_matrix."""

    def test_values_survive_exactly(self, tmp_path):
        """Тест: 17 значущих цифр відтворюють значення точно."""
        arr = np.random.default_rng(0).standard_normal((3, 4))
        path = tmp_path / "out.csv"

        write_matrix(path, arr)

        np.testing.assert_array_equal(read_matrix(path), arr)

    def test_writes_to_stream(self):
        """Тест: запис у бінарний потік."""
        buffer = io.BytesIO()

        write_matrix(buffer, np.array([[1.0, 0.5]]))

        assert buffer.getvalue().decode().strip() == "1,0.5"


class TestReportsAndManifests:
    """Tests for JSON reports and manifests."""

    def test_json_is_canonical(self):
        """Тест: ключі відсортовані, у кінці новий рядок."""
        text = to_json({"b": 1, "a": 2})

        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')

    def test_manifest_round_trip(self, tmp_path, manifest):
        """Тест: маніфест пишеться поруч з виходом і читається назад."""
        output = tmp_path / "out.json"

        written = write_manifest(manifest, output)

        assert written == manifest_path(output)
        assert written.name == "out.json.manifest.json"
        assert read_manifest(written).parameters == manifest.parameters

    def test_manifest_explicit_target(self, tmp_path, manifest):
        """Тест: явний шлях маніфесту для виводу у stdout."""
        written = write_manifest(manifest, None, tmp_path / "run.json")

        assert written == tmp_path / "run.json"
        assert read_manifest(written).command == "rip"

    def test_manifest_needs_a_location(self, manifest):
        """Тест: без виходу і без шляху маніфест не пишеться."""
        with pytest.raises(ParameterError):
            write_manifest(manifest, None)

    def test_invalid_manifest(self, tmp_path):
        """Тест: невідома команда у маніфесті дає InputFormatError."""
        path = tmp_path / "bad.manifest.json"
        path.write_text(json.dumps({"command": "train", "parameters": {}, "seeds": {}, "version": "1"}))

        with pytest.raises(InputFormatError):
            read_manifest(path)

    def test_body_drops_volatile_fields(self, manifest):
        """Тест: тіло маніфесту у звіті не містить часу та шляху виходу."""
        body = manifest_body(manifest)

        assert "timestamp" not in body
        assert "output" not in body["parameters"]
        assert manifest.parameters["output"] == "out.json"
