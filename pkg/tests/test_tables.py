import numpy as np
import pytest

from wm import SeriesTable, read_table, write_table
from wm.errors import DomainError, TableFormatError


def _table():
    x = np.array([1.0, 2.0, 3.5])
    return SeriesTable("demo", "angle",
                       (("angle", x),
                        ("a", np.array([0.1, 0.2, 1 / 3])),
                        ("b", np.array([9.0, -2.5e-17, 4e12]))))


class TestSeriesTable:
    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            SeriesTable("t", "x", (("x", np.array([1.0, 2.0])),
                                   ("y", np.array([1.0]))))

    def test_x_must_increase(self):
        with pytest.raises(DomainError):
            SeriesTable("t", "x", (("x", np.array([2.0, 1.0])),))

    def test_gap_mask(self):
        t = SeriesTable("t", "x", (("x", np.array([1.0, 2.0])),
                                   ("y", np.array([np.nan, 3.0]))))
        assert list(t.gap_rows()) == [True, False]


class TestRoundTrip:
    def test_exact_round_trip(self, tmp_path):
        t = _table()
        path = write_table(t, tmp_path / "demo.out")
        back = read_table(path, t.labels)
        for label in t.labels:
            assert np.array_equal(back.column(label), t.column(label))

    def test_round_trip_tolerance(self, tmp_path):
        rng = np.random.default_rng(5)
        x = np.sort(rng.uniform(0, 90, 50))
        x += np.arange(50) * 1e-9  # enforce strict increase
        t = SeriesTable("r", "x", (("x", x), ("y", rng.normal(size=50))))
        back = read_table(write_table(t, tmp_path / "r.out"), t.labels)
        assert np.max(np.abs(back.column("y") - t.column("y"))) <= 1e-12

    def test_headerless_shape(self, tmp_path):
        path = write_table(_table(), tmp_path / "demo.out")
        lines = [l for l in path.read_text().splitlines() if l.strip()]
        assert len(lines) == 3
        assert all(len(line.split()) == 3 for line in lines)
        # no header: every field parses as a number
        float(lines[0].split()[0])

    def test_gap_written_as_blank_line_and_dropped_on_read(self, tmp_path):
        t = SeriesTable("g", "x", (("x", np.array([1.0, 2.0, 3.0])),
                                   ("y", np.array([5.0, np.nan, 7.0]))))
        path = write_table(t, tmp_path / "g.out")
        raw_lines = path.read_text().splitlines()
        assert raw_lines[1] == ""
        back = read_table(path, ("x", "y"))
        assert list(back.column("x")) == [1.0, 3.0]


class TestReadErrors:
    def test_ragged_rows_report_line(self, tmp_path):
        path = tmp_path / "bad.out"
        path.write_text("1 2 3\n4 5\n")
        with pytest.raises(TableFormatError) as err:
            read_table(path)
        assert err.value.line_no == 2

    def test_non_numeric(self, tmp_path):
        path = tmp_path / "bad.out"
        path.write_text("1 2\n3 x\n")
        with pytest.raises(TableFormatError):
            read_table(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.out"
        path.write_text("\n\n")
        with pytest.raises(TableFormatError):
            read_table(path)


class TestColumnRoles:
    def test_skip_x_column_like_the_plot_reader(self, tmp_path):
        t = SeriesTable("displace", "angle",
                        (("angle", np.array([1.0, 2.0])),
                         ("cabs(uux)", np.array([0.5, 0.6])),
                         ("cabs(uuz)", np.array([1.5, 1.6]))))
        path = write_table(t, tmp_path / "displace.out")
        back = read_table(path, (None, "d1", "d2"))
        assert back.labels == ("row", "d1", "d2")
        assert list(back.column("d1")) == [0.5, 0.6]
        assert list(back.column("d2")) == [1.5, 1.6]

    def test_default_roles(self, tmp_path):
        path = write_table(_table(), tmp_path / "demo.out")
        back = read_table(path)
        assert back.labels == ("c1", "c2", "c3")

    def test_role_count_mismatch(self, tmp_path):
        path = write_table(_table(), tmp_path / "demo.out")
        with pytest.raises(TableFormatError):
            read_table(path, ("x", "y"))
