"""Compilers from automata and correspondence problems into formulas."""

from .buchi import BuchiAutomaton, encode_acceptance, encode_buchi, encode_runs
from .pcp import (
    PCPInstance,
    Variant,
    correspondence_word,
    lemma_correspondence,
    pcp_encode,
    pcp_witness,
)
from .tiles import product, split_product, word_block

__all__ = [
    "BuchiAutomaton",
    "PCPInstance",
    "Variant",
    "correspondence_word",
    "encode_acceptance",
    "encode_buchi",
    "encode_runs",
    "lemma_correspondence",
    "pcp_encode",
    "pcp_witness",
    "product",
    "split_product",
    "word_block",
]
