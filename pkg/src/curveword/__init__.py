"""Signed Gauss words: surfaces, cyclic classes, symbol tables and the J+, J-, St invariants of spherical curves."""

from curveword.cyclic import CyclicClass, cyclic_canonical, orbit, shift, unshift
from curveword.invariants import (
    FeatureVector,
    SymbolTable,
    arnold_invariants,
    build_spherical_table,
    evaluate,
    feature_vector,
    planar_invariants,
)
from curveword.surface import face_count, genus, is_spherical
from curveword.words import (
    PHI,
    Letter,
    Sign,
    SignedWord,
    WordClass,
    canonicalize,
    enumerate_words,
    format_word,
    parse,
    subword,
)

__version__ = "0.1.0"
