"""Presentation-only figure rendering for trapwave CSV outputs."""

from .render import (FIGURES, FigureSpec, MissingInputError,
                     SchemaMismatchError, figure_specs, render, render_all)

__version__ = "0.1.0"
