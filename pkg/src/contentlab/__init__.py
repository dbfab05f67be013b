"""Exhaustive decision procedures for content, McCoy and related properties
of free algebras over finite commutative rings."""

from .algebra import (
    AlgebraElement,
    FreeAlgebra,
    MonoidTable,
    alg_group,
    alg_identity,
    alg_monoid,
    alg_quadratic,
    alg_truncated,
    base_change,
    content,
    content_oracle,
    localize_algebra,
)
from .descriptors import parse_algebra, parse_descriptor, parse_element, parse_ring
from .errors import (
    ContentLabError,
    DegenerateDepthError,
    DescriptorSyntaxError,
    DomainMismatchError,
    InvalidModulusError,
    InvalidMonoidError,
    InvalidMultSetError,
    SizeCapError,
)
from .finring import (
    FiniteRing,
    RingElement,
    RingMap,
    classify_elements,
    is_isomorphic,
    localize,
    make_product,
    make_quotient,
    make_truncated_poly_ring,
    make_zmod,
)
from .ideals import (
    Ideal,
    SaturatedMultSet,
    annihilator,
    enumerate_ideals,
    ideal_combine,
    ideal_generate,
    radical,
    saturated_mult_sets,
    spectrum,
)
from .properties import (
    Verdict,
    dedekind_mertens_number,
    has_fidel_A,
    has_property_A,
    is_content_algebra,
    is_mccoy,
    is_residually_mccoy,
    is_semicontent,
    is_weak_content_primes,
    is_weak_content_radical,
)

__version__ = "0.1.0"

__all__ = [
    "parse_algebra",
    "parse_descriptor",
    "parse_element",
    "parse_ring",
    "AlgebraElement",
    "FreeAlgebra",
    "MonoidTable",
    "alg_group",
    "alg_identity",
    "alg_monoid",
    "alg_quadratic",
    "alg_truncated",
    "base_change",
    "content",
    "content_oracle",
    "localize_algebra",
    "ContentLabError",
    "DegenerateDepthError",
    "DescriptorSyntaxError",
    "DomainMismatchError",
    "InvalidModulusError",
    "InvalidMonoidError",
    "InvalidMultSetError",
    "SizeCapError",
    "FiniteRing",
    "RingElement",
    "RingMap",
    "classify_elements",
    "is_isomorphic",
    "localize",
    "make_product",
    "make_quotient",
    "make_truncated_poly_ring",
    "make_zmod",
    "Ideal",
    "SaturatedMultSet",
    "annihilator",
    "enumerate_ideals",
    "ideal_combine",
    "ideal_generate",
    "radical",
    "saturated_mult_sets",
    "spectrum",
    "Verdict",
    "dedekind_mertens_number",
    "has_fidel_A",
    "has_property_A",
    "is_content_algebra",
    "is_mccoy",
    "is_residually_mccoy",
    "is_semicontent",
    "is_weak_content_primes",
    "is_weak_content_radical",
]
