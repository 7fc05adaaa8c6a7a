"""Exact cop numbers, graph invariants and cop-number classifiers for small graphs."""
from .copwin import cop_number, is_dismantlable, is_k_copwin, naive_copwin_oracle
from .graph import Graph, canonical_form, decode_graph6, encode_graph6, enumerate_connected

__version__ = "0.1.0"
