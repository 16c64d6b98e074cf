"""Figure rendering for fairloop experiment outputs."""

__version__ = "0.1.0"

from .figures import MANIFEST_SOURCES, FigureSpec, build_figure, render
from .schemas import FIGURES, EmptyDataError, SchemaError

__all__ = ["__version__", "FIGURES", "FigureSpec", "MANIFEST_SOURCES",
           "EmptyDataError", "SchemaError", "build_figure", "render"]
