"""Complexity classification of list homomorphism problems for graphs with loops."""

from .classify import ClassificationReport, classify, validate_report
from .decomp import decompose, replay
from .fo import dismantle_square, fo_structural
from .graph import Graph, parse_graph, serialize_graph
from .patterns import find_pattern, in_class_L
from .polymorphisms import find_conservative_majority, find_permutability_chain

__version__ = "0.1.0"
