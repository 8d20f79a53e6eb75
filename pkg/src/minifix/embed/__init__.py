"""Program embeddings: atomic patterns, CV/PACV vectors, distances, TED."""

from __future__ import annotations

from .._kernels import BACKEND_NAME, USING_COMPILED
from ..lang.ast import ALL_KINDS, EPSILON, Node, binarize
from .ted import tree_edit_distance, tree_size
from .vectors import (
    CharacteristicVector,
    LabelAlphabet,
    Pacv,
    char_vector,
    cv_distance,
    forest_pacv,
    pacv,
    pacv_distance,
    pattern_count,
    template_index,
)

#: The fixed MiniImp label alphabet (Epsilon is the empty label, id 0).
MINIIMP_ALPHABET = LabelAlphabet(
    tuple(k for k in ALL_KINDS if k != EPSILON), epsilon=EPSILON)


def program_pacv(program: Node, q: int) -> Pacv:
    """Pacv of a whole program: binarize, then embed over the MiniImp alphabet."""
    return pacv(binarize(program), q, MINIIMP_ALPHABET)


def program_cv(program: Node, q: int) -> CharacteristicVector:
    return char_vector(binarize(program), q, MINIIMP_ALPHABET)


__all__ = [
    "BACKEND_NAME", "USING_COMPILED", "CharacteristicVector", "LabelAlphabet",
    "MINIIMP_ALPHABET", "Pacv", "char_vector", "cv_distance", "forest_pacv",
    "pacv", "pacv_distance", "pattern_count", "program_cv", "program_pacv",
    "template_index", "tree_edit_distance", "tree_size",
]
