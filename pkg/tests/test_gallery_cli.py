import json
import random
from fractions import Fraction

import pytest

from adelic import DomainError, cis, winding_number
from adelic.cli import main
from adelic.gallery import (
    GalleryEntry,
    gallery_entry,
    gallery_names,
    ramp_rows,
    ternary_ramp,
    ternary_ramp_map,
)


class TestTernaryRamp:
    def test_base_values(self):
        assert ternary_ramp(0.0) == 0.0
        assert ternary_ramp(0.9) == pytest.approx(0.3, abs=1e-12)
        # hand derivation: (10/9)/(2/3) * (f(-1) + 1/3) + 1/3 with f(-1) = -1/3
        assert ternary_ramp(1.0) == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_odd_symmetry(self):
        for x in (0.4, 1.7, 5.0, 26.0, 200.0):
            assert ternary_ramp(-x) == pytest.approx(-ternary_ramp(x), abs=1e-12)

    def test_domain_guard(self):
        with pytest.raises(DomainError):
            ternary_ramp(3.0**7)

    def test_shift_translation_bound(self):
        # |f(x + 2 * 3^n k) - f(x) - 3^n k| < (1/2) 3^-n on the source window
        rng = random.Random(5)
        for n in range(0, 4):
            unit = 2 * 3**n
            for k in (-3, -1, 1, 2):
                for _ in range(60):
                    x = rng.uniform(-(3**n), 3**n - 1e-9)
                    if abs(x + unit * k) > 3.0**6:
                        continue
                    err = abs(ternary_ramp(x + unit * k) - ternary_ramp(x) - 3**n * k)
                    assert err < 0.5 * 3.0 ** (-n)

    def test_certified_period_and_winding(self):
        from adelic import ProbePlan
        import numpy as np

        f = ternary_ramp_map()
        probe = ProbePlan(points=tuple(np.linspace(-9.0, 9.0, 37)))
        w = winding_number(f, 0.125, 200, probe)
        # smallest shift 2 * 3^n whose chord bound clears 1/8 is 54
        assert w.period_used == 54
        assert w.value == Fraction(1, 2)


class TestRampRows:
    def test_endpoints_and_base_value(self):
        rows = ramp_rows(0.05)
        assert rows[0][0] == -9.0 and rows[-1][0] == 9.0
        mid = min(rows, key=lambda r: abs(r[0]))
        assert mid[1] == pytest.approx(0.0, abs=1e-12)

    def test_strictly_increasing(self):
        rows = ramp_rows(0.01)
        values = [v for _, v in rows]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_bad_step(self):
        with pytest.raises(DomainError):
            ramp_rows(0.0)


class TestGalleryRegistry:
    def test_every_entry_builds(self):
        for name in gallery_names():
            entry = gallery_entry(name)
            assert entry.build() is not None

    def test_json_round_trip_all_entries(self):
        for name in gallery_names():
            entry = gallery_entry(name)
            again = GalleryEntry.from_json(json.loads(json.dumps(entry.to_json())))
            assert again == entry
            assert again.build() is not None

    def test_alias_and_params(self):
        entry = gallery_entry("exp", q="2/3")
        assert entry.name == "exp(q*x)"
        assert winding_number(entry.build()).value == Fraction(2, 3)

    def test_unknown_rejected(self):
        with pytest.raises(DomainError):
            gallery_entry("nope")
        with pytest.raises(DomainError):
            gallery_entry("one", bogus=1)


class TestCli:
    def test_winding_exponential(self, capsys):
        assert main(["winding", "--map", "exp(q*x)", "--q", "2/3"]) == 0
        assert capsys.readouterr().out.strip() == "2/3"

    def test_winding_character(self, capsys):
        assert main(["winding", "--map", "character"]) == 0
        assert capsys.readouterr().out.strip() == "-1"

    def test_winding_json(self, capsys):
        assert main(["winding", "--map", "ternary-ramp", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["value"] == "1/2" and data["period"] == 54

    def test_crt_decompose(self, capsys, tmp_path):
        path = tmp_path / "x.json"
        path.write_text(json.dumps({"support": [{"p": 2, "k": 3, "rep": "1/2"}]}))
        assert main(["crt-decompose", "--adele", str(path), "--n", "2"]) == 0
        assert capsys.readouterr().out.strip() == "1/2"

    def test_char_zero(self, capsys, tmp_path):
        path = tmp_path / "zero.json"
        path.write_text(json.dumps({"support": [], "real": 0.0}))
        assert main(["char", "--adele", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "1+0i"

    def test_char_half(self, capsys, tmp_path):
        path = tmp_path / "h.json"
        path.write_text(json.dumps({"support": [{"p": 2, "k": 3, "rep": "1/2"}]}))
        assert main(["char", "--adele", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "-1+0i"

    def test_metric(self, capsys, tmp_path):
        a = tmp_path / "a.json"
        a.write_text(json.dumps({
            "support": [{"p": 3, "k": 4, "rep": "1/3"}], "real": 1.5,
        }))
        b = tmp_path / "b.json"
        b.write_text(json.dumps({"support": []}))
        assert main(["metric", "--adele", str(a), "--adele2", str(b)]) == 0
        assert capsys.readouterr().out.strip() == "4.5"

    def test_winding_field(self, capsys):
        code = main([
            "winding-field", "--map", "two-block-bump", "--n", "1",
            "--den-bound", "6",
        ])
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert data == {
            "N": 1,
            "values": [{"alpha": "0", "w": 1}, {"alpha": "1/2", "w": -2}],
        }

    def test_example_plot_stdout(self, capsys):
        assert main(["example-plot", "--step", "3.0"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "x,f"
        assert lines[1].startswith("-9,")
        assert lines[-1].startswith("9,")

    def test_example_plot_files(self, tmp_path, capsys):
        out = tmp_path / "fig.csv"
        assert main(["example-plot", "--step", "0.5", "--out", str(out)]) == 0
        assert out.exists()
        assert (tmp_path / "fig.png").exists()
        header = out.read_text().splitlines()[0]
        assert header == "x,f"

    def test_lift_csv(self, capsys):
        code = main([
            "lift", "--map", "exp(q*x)", "--q", "1/3",
            "--from", "0", "--to", "3", "--step", "0.5",
        ])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "x,lift"
        last = lines[-1].split(",")
        assert float(last[0]) == 3.0
        assert float(last[1]) == pytest.approx(1.0, abs=1e-9)

    def test_k1_limit(self, capsys):
        assert main(["k1-limit", "--check-chains", "12"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert "chains" in out

    def test_usage_exit_code(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["bogus"])
        assert info.value.code == 64

    def test_domain_error_exit_code(self, capsys):
        assert main(["winding", "--map", "nope"]) == 1
        assert main(["crt-decompose", "--adele", "/does/not/exist.json", "--n", "2"]) == 1

    def test_certificate_error_exit_code(self, capsys, tmp_path):
        # depth 2 residue cannot decide membership at scale 16 (e_2 = 4)
        path = tmp_path / "shallow.json"
        path.write_text(json.dumps({"support": [{"p": 2, "k": 2, "rep": "1/2"}]}))
        assert main(["crt-decompose", "--adele", str(path), "--n", "16"]) == 2
