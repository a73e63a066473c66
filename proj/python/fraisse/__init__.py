"""Finite structures, Fraisse classes and interpretation encodings."""

from fraisse._core import (
    ClassSpec,
    Encoding,
    Structure,
    are_isomorphic,
    build_generic,
    catalog_names,
    chain_gap,
    check_axiom,
    code_order,
    encode_society,
    get_class,
    hf_strings,
    hf_verify,
    is_member,
    lift_arity,
    members_of_size,
    one_sort_round_trip,
    one_sort_text,
    order_expansion,
    product,
    ramsey_search,
    remove_cliques,
    search_interpretation,
    verify_extension,
)

__all__ = [
    "ClassSpec",
    "Encoding",
    "Structure",
    "are_isomorphic",
    "build_generic",
    "catalog_names",
    "chain_gap",
    "check_axiom",
    "code_order",
    "encode_society",
    "get_class",
    "hf_strings",
    "hf_verify",
    "is_member",
    "lift_arity",
    "members_of_size",
    "one_sort_round_trip",
    "one_sort_text",
    "order_expansion",
    "product",
    "ramsey_search",
    "remove_cliques",
    "search_interpretation",
    "verify_extension",
]
