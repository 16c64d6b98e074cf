import matplotlib
import pytest
from matplotlib.collections import PolyCollection

from fairloop_plots import (FIGURES, EmptyDataError, FigureSpec,
                            MANIFEST_SOURCES, SchemaError, build_figure,
                            render)
from fairloop_plots.cli import main

SOURCE = MANIFEST_SOURCES


def spec_for(figure, golden, out_dir, **kw):
    return FigureSpec(figure=figure,
                      inputs=(golden[figure] / SOURCE[figure],),
                      output=out_dir / f"{figure}.png", **kw)


@pytest.mark.parametrize("figure", sorted(FIGURES))
def test_every_figure_renders(figure, golden, tmp_path):
    path = render(spec_for(figure, golden, tmp_path))
    assert path.exists()
    assert path.stat().st_size > 1000


def test_tradeoff_band_structure(golden, tmp_path):
    fig = build_figure(spec_for("tradeoff", golden, tmp_path))
    ax = fig.axes[0]
    assert len(fig.axes) == 1
    assert len(ax.lines) == 2  # engagement and negative polarization
    bands = [c for c in ax.collections if isinstance(c, PolyCollection)]
    assert len(bands) == 2     # one +-1 sd band per curve
    labels = [line.get_label() for line in ax.lines]
    assert "engagement" in labels
    assert "negative polarization" in labels
    # negative polarization really is plotted negated
    pol_line = ax.lines[labels.index("negative polarization")]
    assert max(pol_line.get_ydata()) <= 0.0
    matplotlib.pyplot.close(fig)


@pytest.mark.parametrize("figure", ["creators_exposure", "creators_opportunity"])
def test_creators_two_panel_structure(figure, golden, tmp_path):
    fig = build_figure(spec_for(figure, golden, tmp_path))
    assert len(fig.axes) == 2  # retention on top, utilities below
    top, bottom = fig.axes
    assert len(top.lines) >= 3       # one retention curve per creator
    assert len(bottom.lines) >= 4    # utility plus per-group future utility
    matplotlib.pyplot.close(fig)


def test_rendering_deterministic(golden, tmp_path):
    a = render(spec_for("tradeoff", golden, tmp_path / "a"))
    b = render(spec_for("tradeoff", golden, tmp_path / "b"))
    assert a.read_bytes() == b.read_bytes()


def test_rendering_does_not_mutate_inputs(golden, tmp_path):
    src = golden["tradeoff"] / SOURCE["tradeoff"]
    before = src.read_bytes()
    render(spec_for("tradeoff", golden, tmp_path))
    assert src.read_bytes() == before


def test_single_point_tradeoff_renders(tmp_path):
    csv = tmp_path / "tradeoff.csv"
    csv.write_text("epsilon,mean_eng,sd_eng,mean_pol,sd_pol\n"
                   "0.5,0.3,0.01,0.1,0.02\n")
    path = render(FigureSpec(figure="tradeoff", inputs=(csv,),
                             output=tmp_path / "one.png"))
    assert path.exists()


def test_schema_mismatch_names_column(tmp_path):
    csv = tmp_path / "tradeoff.csv"
    csv.write_text("epsilon,mean_eng,sd_eng,mean_pol\n0.5,0.3,0.01,0.1\n")
    with pytest.raises(SchemaError, match="sd_pol"):
        build_figure(FigureSpec(figure="tradeoff", inputs=(csv,),
                                output=tmp_path / "x.png"))


def test_empty_data_explicit_error(tmp_path):
    csv = tmp_path / "tradeoff.csv"
    csv.write_text("epsilon,mean_eng,sd_eng,mean_pol,sd_pol\n")
    with pytest.raises(EmptyDataError):
        build_figure(FigureSpec(figure="tradeoff", inputs=(csv,),
                                output=tmp_path / "x.png"))


def test_unknown_figure_rejected(tmp_path):
    with pytest.raises(ValueError):
        FigureSpec(figure="pie", inputs=(tmp_path / "a.csv",),
                   output=tmp_path / "x.png")


# --- command line ----------------------------------------------------------

def test_cli_with_explicit_input(golden, tmp_path):
    src = golden["controller"] / SOURCE["controller"]
    out = tmp_path / "controller.png"
    assert main(["controller", "--in", str(src), "--out", str(out)]) == 0
    assert out.exists()


def test_cli_with_manifest(golden, tmp_path):
    manifest = golden["tradeoff"] / "manifest.json"
    out = tmp_path / "tradeoff.png"
    assert main(["tradeoff", "--manifest", str(manifest),
                 "--out", str(out)]) == 0
    assert out.exists()


def test_cli_schema_error_exit_code(tmp_path):
    csv = tmp_path / "bad.csv"
    csv.write_text("epsilon,mean_eng\n0.1,0.2\n")
    assert main(["tradeoff", "--in", str(csv),
                 "--out", str(tmp_path / "x.png")]) == 2


def test_cli_empty_data_exit_code(tmp_path):
    csv = tmp_path / "empty.csv"
    csv.write_text("epsilon,mean_eng,sd_eng,mean_pol,sd_pol\n")
    assert main(["tradeoff", "--in", str(csv),
                 "--out", str(tmp_path / "x.png")]) == 3


def test_cli_requires_some_input(tmp_path):
    assert main(["tradeoff", "--out", str(tmp_path / "x.png")]) == 2
