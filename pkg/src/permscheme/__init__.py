"""Counting pattern-avoiding permutations via discovered prefix schemes."""

from .counting import SchemeIntegrityError, count, count_class, sequence
from .oracle import (
    count_avoiders,
    empirical_deletable,
    empirical_gap_set,
    empirical_scheme_search,
    enumerate_avoiders,
    prefix_class_members,
)
from .perms import (
    Perm,
    PatternSet,
    avoids_all,
    complement,
    contains,
    delete_rank,
    format_permutation,
    inverse,
    normalize_patterns,
    parse_pattern_set,
    parse_permutation,
    reduce_word,
    refinements,
    reverse,
    symmetry_closure,
    symmetry_images,
)
from .reasoning import (
    Bailout,
    DeletionAnalysis,
    Event,
    GapSet,
    OrderFacts,
    analyze_deletable,
    certify_deletable,
    certify_gap,
    compute_gap_set,
    find_bailout,
    find_deletable_rank,
    order_facts,
)
from .recurrence import RecurrenceCandidate, guess_recurrence, required_terms, verify_recurrence
from .scheme import (
    Scheme,
    SchemeFormatError,
    deserialize,
    search,
    search_with_symmetries,
    serialize,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Bailout",
    "DeletionAnalysis",
    "Event",
    "GapSet",
    "OrderFacts",
    "PatternSet",
    "Perm",
    "RecurrenceCandidate",
    "Scheme",
    "SchemeFormatError",
    "SchemeIntegrityError",
    "analyze_deletable",
    "avoids_all",
    "certify_deletable",
    "certify_gap",
    "complement",
    "compute_gap_set",
    "contains",
    "count",
    "count_avoiders",
    "count_class",
    "delete_rank",
    "deserialize",
    "empirical_deletable",
    "empirical_gap_set",
    "empirical_scheme_search",
    "enumerate_avoiders",
    "find_bailout",
    "find_deletable_rank",
    "format_permutation",
    "guess_recurrence",
    "inverse",
    "normalize_patterns",
    "order_facts",
    "parse_pattern_set",
    "parse_permutation",
    "prefix_class_members",
    "reduce_word",
    "refinements",
    "required_terms",
    "reverse",
    "search",
    "search_with_symmetries",
    "sequence",
    "serialize",
    "symmetry_closure",
    "symmetry_images",
    "validate",
]
