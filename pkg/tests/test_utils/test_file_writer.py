from pathlib import Path

from mcera_miner.utils.file_writer import FileWriter


def test_file_writer_chunked_csv(tmp_path: Path) -> None:
    writer = FileWriter()
    path = tmp_path / "out.csv"
    fieldnames = ["id", "value"]
    rows = [{"id": str(i), "value": str(i * 2)} for i in range(5)]

    progress: list[tuple[int, int]] = []
    written = writer.append_csv(
        path,
        fieldnames,
        rows,
        chunk_size=2,
        progress_callback=lambda total_rows, total_bytes: progress.append((total_rows, total_bytes)),
    )

    content = path.read_text(encoding="utf-8").strip().splitlines()
    assert written == 5
    assert content[0] == "id,value"
    assert len(content) == 6
    assert [rows for rows, _ in progress] == [2, 4, 5]
    assert progress[-1][1] >= len("id,value\n")


def test_file_writer_appends_without_second_header(tmp_path: Path) -> None:
    writer = FileWriter()
    path = tmp_path / "runs.csv"
    writer.append_csv(path, ["id"], [{"id": "1"}])
    first = path.read_text(encoding="utf-8")

    writer.append_csv(path, ["id"], [{"id": "2"}, {"id": "3"}])

    content = path.read_text(encoding="utf-8")
    assert content.startswith(first)
    assert content.splitlines() == ["id", "1", "2", "3"]


def test_file_writer_header_for_empty_file(tmp_path: Path) -> None:
    path = tmp_path / "empty.csv"
    path.touch()
    assert FileWriter().append_csv(path, ["id"], []) == 0
    assert path.read_text(encoding="utf-8") == "id\n"
