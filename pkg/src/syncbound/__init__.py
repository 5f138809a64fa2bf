"""Reset thresholds, rank spectra and reset-word synthesis for synchronizing automata."""

__version__ = "0.1.0"

from .automaton import (
    Automaton,
    StateSet,
    apply_word,
    corank,
    format_word,
    is_synchronizing,
    parse_word,
    singleton_kernel,
)
from .certify import bound_table, certify
from .corpus import cerny, parse, random_automaton, serialize
from .spectrum import INF, exact_rt, image_bfs, rank_profile
from .synthesis import escape_word, frankl_step, shitov_step, synthesize
