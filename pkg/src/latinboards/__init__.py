"""Symmetric boards, warp classes, Latin boards and critical sets.

The package builds game boards whose points come from exact geometric
sources (tiled polygons, polyhedral surfaces, kaleidoscopic orbits),
solves for warp classes through them, labels the results into Latin
boards, and generates uniquely-completable puzzles from those boards.
"""

from latinboards.errors import LatinBoardsError

__version__ = "0.1.0"

__all__ = ["LatinBoardsError", "__version__"]
