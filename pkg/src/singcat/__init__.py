"""Exact computations in singularity categories of finite-dimensional algebras."""

from .exactlin import Field
from .algebra import Algebra, parse_algebra, load_file, load_text

__all__ = ["Field", "Algebra", "parse_algebra", "load_file", "load_text"]
__version__ = "0.1.0"
