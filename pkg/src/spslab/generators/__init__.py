"""Instance generators: fixtures, vector-space models, unions and the exhaustive corpus."""

from .canonical import canonical_digest, canonical_key
from .compose import disjoint_union
from .enumeration import enumerate_instances, from_family, measured_corpus, measured_variants
from .fixtures import FIXTURES, fixture
from .vector import NonReflexiveFormError, SingularFormError, VectorModel, from_vector_space

__all__ = [
    "canonical_digest",
    "canonical_key",
    "disjoint_union",
    "enumerate_instances",
    "from_family",
    "measured_corpus",
    "measured_variants",
    "FIXTURES",
    "fixture",
    "VectorModel",
    "from_vector_space",
    "SingularFormError",
    "NonReflexiveFormError",
]
