"""
bvgroup: the braided Thompson group BV as tree-braid-tree diagrams.

Submodules
----------
trees       binary trees as prefix-free branch sets
braids      Artin braid words, cabling, Garside normal form
diagrams    tree-braid-tree diagrams: reduction, products, keys
generators  x_i, sigma_i, tau_i, words, relators, the subgroup F
divergence  explicit paths avoiding a ball, certificates and their verifier
oracle      BFS balls, word lengths and divergence spot checks
cli         command-line interface
"""

__version__ = "0.1.0"

from .trees import BinaryTree, all_right
from .braids import BraidWord, canonical_letters, normal_form, words_equal
from .diagrams import (
    IDENTITY,
    TreeBraidTree,
    branches,
    ell0,
    ell1,
    invert,
    is_in_F,
    multiply,
    n_carets,
    product,
    reduce,
)
from .generators import (
    FINITE_ALPHABET,
    GenLetter,
    GenWord,
    eval_word,
    letter_diagram,
    sigma_gen,
    tau_gen,
    to_finite,
    x_gen,
)
from .divergence import (
    PAPER,
    TEST_SCALE,
    DivergenceConfig,
    PathCertificate,
    build_path,
    verify_certificate,
)
from .oracle import ball, divergence_spotcheck, word_length

__all__ = [
    "BinaryTree",
    "all_right",
    "BraidWord",
    "canonical_letters",
    "normal_form",
    "words_equal",
    "IDENTITY",
    "TreeBraidTree",
    "branches",
    "ell0",
    "ell1",
    "invert",
    "is_in_F",
    "multiply",
    "n_carets",
    "product",
    "reduce",
    "FINITE_ALPHABET",
    "GenLetter",
    "GenWord",
    "eval_word",
    "letter_diagram",
    "sigma_gen",
    "tau_gen",
    "to_finite",
    "x_gen",
    "PAPER",
    "TEST_SCALE",
    "DivergenceConfig",
    "PathCertificate",
    "build_path",
    "verify_certificate",
    "ball",
    "divergence_spotcheck",
    "word_length",
]
