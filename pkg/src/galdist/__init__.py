"""Exact combinatorics of P(K)\\GL(n,K)/GL(n,F) double cosets, segment
calculus, and the classification of distinguished generic representations."""

from .classifier import (
    GenericFamily,
    PairingCertificate,
    WitnessCertificate,
    check_witness,
    classify,
    exists_witness,
    find_pairing_form,
    normalize_order,
    theorem_equivalence,
)
from .cosets import CosetIndex, enumerate_I, involution_of, representative
from .exact import QuadMatrix, QuadScalar, mat_inverse, subspace_intersect_dim
from .roots import Composition, Root, WeylPerm
from .segments import LabelUniverse, Segment, jacquet_split, linked

__version__ = "0.1.0"
