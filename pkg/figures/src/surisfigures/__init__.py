from .render import KINDS, FigureDataError, FigureSpec, load_rows, render

__all__ = ["KINDS", "FigureDataError", "FigureSpec", "load_rows", "render"]

__version__ = "0.1.0"
