"""figviz tests, including the secondary acceptance criterion: heatmap
bright-pixel support matches the restricted-support analysis."""

import hashlib

import numpy as np
import pytest

from figviz import (FigureSpec, FigvizError, read_walk_csv, render_curves,
                    render_heatmap)
from figviz.heatmap import main as heatmap_main
from figviz.curves import main as curves_main


def sha(path):
    return hashlib.sha256(open(path, "rb").read()).hexdigest()


def bright_columns(render, threshold):
    """Labels whose post-exponent probability ever exceeds the threshold."""
    mask = render.data.max(axis=0) > threshold
    return {lbl for lbl, hit in zip(render.labels, mask) if hit}


def shares_a_site(label, sites):
    return len(set(map(int, label.split("|"))) & sites) >= 1


# ------------------------------------------------------------------ CSV reader

def test_read_walk_csv(csv_dir):
    table = read_walk_csv(str(csv_dir / "fig1c.csv"))
    assert table.labels == [str(i) for i in range(1, 11)]
    assert table.probs.shape == (400, 10)
    assert np.max(np.abs(table.probs.sum(axis=1) - 1.0)) < 1e-9


def test_read_walk_csv_rejects_malformed(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,1,2\n0,0.5,0.5\n")
    with pytest.raises(FigvizError):
        read_walk_csv(str(bad))
    bad.write_text("t,1\n0,0.5,0.9\n")
    with pytest.raises(FigvizError):
        read_walk_csv(str(bad))
    bad.write_text("t,1\n0,abc\n")
    with pytest.raises(FigvizError):
        read_walk_csv(str(bad))


def test_figure_spec_validation(tmp_path):
    with pytest.raises(FigvizError):
        FigureSpec(inputs=[], style="heatmap", output="x.png")
    with pytest.raises(FigvizError):
        FigureSpec(inputs=["a.csv"], style="sculpture", output="x.png")
    with pytest.raises(FigvizError):
        FigureSpec(inputs=["a.csv"], style="heatmap", output="x.png", power=0.0)
    with pytest.raises(FigvizError):
        FigureSpec(inputs=["a.csv"], style="curves", output="x.png", targets=[])


# ------------------------------------------------- acceptance criterion 11 (a)

def test_symmetric_two_fermion_heatmap_is_localised(csv_dir, tmp_path):
    spec = FigureSpec(inputs=[str(csv_dir / "fig1a.csv")], style="heatmap",
                      output=str(tmp_path / "fig1a.png"))
    render = render_heatmap(spec)
    assert render.data.shape == (400, 190)
    bright = bright_columns(render, 0.05)
    allowed = {lbl for lbl in render.labels if shares_a_site(lbl, {10, 15})}
    assert len(allowed) == 37
    assert bright <= allowed  # support never leaves the allowed set
    # the initial configuration stays a bright band at every time
    start = render.data[:, render.labels.index("10|15")]
    assert float(start.min()) > 0.6  # floor ((N-2k)/N)^2 = 0.64


def test_ring_two_fermion_heatmap_spreads(csv_dir, tmp_path):
    spec = FigureSpec(inputs=[str(csv_dir / "fig1b.csv")], style="heatmap",
                      output=str(tmp_path / "fig1b.png"), power=0.1)
    render = render_heatmap(spec)
    bright = bright_columns(render, 0.3)  # 1e-2 probability -> 0.63 after ^0.1
    allowed = {lbl for lbl in render.labels if shares_a_site(lbl, {10, 15})}
    assert len(bright) > 150  # spread across essentially all configurations
    assert bright - allowed  # including many forbidden-for-the-symmetric-model ones


def test_one_fermion_heatmap_bright_band_at_start(csv_dir, tmp_path):
    spec = FigureSpec(inputs=[str(csv_dir / "fig1c.csv")], style="heatmap",
                      output=str(tmp_path / "fig1c.png"))
    render = render_heatmap(spec)
    assert bright_columns(render, 0.5) == {"5"}
    assert float(render.data[:, render.labels.index("5")].min()) > 0.6
    others = np.delete(render.data, render.labels.index("5"), axis=1)
    assert float(others.max()) < 0.05  # spread law tops out at 2/N^2 * 2 = 0.04


def test_constant_one_column_renders_uniform_max_color(tmp_path):
    path = tmp_path / "const.csv"
    lines = ["t,1"] + [f"{t},1" for t in range(5)]
    path.write_text("\n".join(lines) + "\n")
    spec = FigureSpec(inputs=[str(path)], style="heatmap",
                      output=str(tmp_path / "const.png"))
    render = render_heatmap(spec)
    assert np.all(render.data == 1.0)
    assert np.all(render.rgba == render.rgba[0, 0])  # one uniform color


# ------------------------------------------------- acceptance criterion 11 (b)

def test_marked_curve_overlays(csv_dir, tmp_path):
    spec = FigureSpec(inputs=[str(csv_dir / "fig2.csv")], style="curves",
                      output=str(tmp_path / "fig2.png"),
                      targets=["p11@beta=0", "p11@beta=0.05", "p11@beta=1"])
    render = render_curves(spec)
    assert render.n_lines == 3
    assert render.legend == ["p11@beta=0", "p11@beta=0.05", "p11@beta=1"]
    table = read_walk_csv(str(csv_dir / "fig2.csv"))
    assert np.all(table.column("p11@beta=0") == 1.0)
    assert float(table.column("p11@beta=1").min()) < 0.7  # symmetric dip at N=4


def test_two_file_overlay_gets_stem_prefixed_legend(csv_dir, tmp_path):
    spec = FigureSpec(
        inputs=[str(csv_dir / "fig1c.csv"), str(csv_dir / "fig1c.csv")],
        style="curves", output=str(tmp_path / "overlay.png"), targets=["5"])
    render = render_curves(spec)
    assert render.legend == ["fig1c: 5", "fig1c: 5"]


def test_curves_empty_targets_is_error(csv_dir, tmp_path):
    with pytest.raises(FigvizError):
        FigureSpec(inputs=[str(csv_dir / "fig2.csv")], style="curves",
                   output=str(tmp_path / "x.png"), targets=[])


def test_curves_unknown_target_is_error(csv_dir, tmp_path):
    spec = FigureSpec(inputs=[str(csv_dir / "fig2.csv")], style="curves",
                      output=str(tmp_path / "x.png"), targets=["p99@beta=7"])
    with pytest.raises(FigvizError):
        render_curves(spec)


# -------------------------------------------------------------- invariants

def test_rendering_is_read_only_and_stable(csv_dir, tmp_path):
    src = csv_dir / "fig1c.csv"
    before = sha(src)
    out1 = tmp_path / "a.png"
    out2 = tmp_path / "b.png"
    spec1 = FigureSpec(inputs=[str(src)], style="heatmap", output=str(out1))
    spec2 = FigureSpec(inputs=[str(src)], style="heatmap", output=str(out2))
    r1 = render_heatmap(spec1)
    r2 = render_heatmap(spec2)
    assert sha(src) == before  # inputs untouched
    assert r1.image_size == r2.image_size == (640, 480)
    assert (r1.vmin, r1.vmax) == (r2.vmin, r2.vmax) == (0.0, 1.0)
    assert np.array_equal(r1.data, r2.data)


# ------------------------------------------------------------------- CLI entry

def test_heatmap_cli(csv_dir, tmp_path):
    out = tmp_path / "cli.png"
    code = heatmap_main(["--input", str(csv_dir / "fig1b.csv"),
                         "--output", str(out), "--power", "0.1"])
    assert code == 0 and out.exists()


def test_heatmap_cli_malformed_csv(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("not,a,walk\n1,2,3\n")
    code = heatmap_main(["--input", str(bad), "--output", str(tmp_path / "x.png")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_curves_cli(csv_dir, tmp_path):
    out = tmp_path / "curves.png"
    code = curves_main(["--input", str(csv_dir / "fig2.csv"),
                        "--output", str(out),
                        "--targets", "p11@beta=0.05,p22@beta=0.05"])
    assert code == 0 and out.exists()


def test_curves_cli_empty_targets(csv_dir, tmp_path, capsys):
    code = curves_main(["--input", str(csv_dir / "fig2.csv"),
                        "--output", str(tmp_path / "x.png"), "--targets", ""])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_cli_usage_error_exit_codes():
    assert heatmap_main([]) == 2
    assert curves_main(["--input", "x.csv"]) == 2
