"""Fuzzy component specifications over stream semantics.

Components declare typed channels, fuzzy ports and rule bases; the inference
engine runs them tick by tick, and the behavior module scores stream outputs
against fuzzy types.
"""

from .behavior import (AcceptanceReport, FuzzyBehavior, FuzzyChannel, FuzzyInterface, FuzzyType,
                       acc_bounds, acc_combine, acc_element, acc_mean, acceptance,
                       check_alpha_realizable, extend_behavior, extend_function,
                       realizability_frontier)
from .fuzzy import UNDEFINED, FuzzyRelation, FuzzySet, alpha_cut, compose_maxmin, membership, support
from .inference import (Component, InferenceTrace, MooreMachine, Rule, RuleBase, applicability,
                        assemble, defuzzify_mom, extract_moore, implied_output, simulate, step)
from .interface import (Channel, FiniteCarrier, FuzzyPort, FuzzyProperty, GridCarrier,
                        PortInterpretation, can_connect, carrier_subset, classify_totality, interpret, validate_port)
from .strategies import MappingStrategy, apply_strategy, refresh_all
from .streams import TimedStream, UntimedStream, at, at_time, concat, extrema, length, take

__version__ = "0.1.0"
