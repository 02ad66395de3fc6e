"""Exact state calculus for generic deformations of colored sl(N) link homology."""

from .diagrams import (ColoredBraid, Crossing, DiagramError, KnottedMoyGraph, MoyGraph, ParseError, Vertex,
                       braid_closure_to_knotted, color_complement, mirror, parse_braid, parse_pd,
                       reverse_orientation)
from .invariants import (SInvariantResult, chirality_certificate, cobordism_constant_state_transport,
                         s_bounds, s_exact, s_invariant, symmetry_relations)
from .statecalc import (GradedStateSet, State, StateRing, enumerate_quasi_states, enumerate_states,
                        idempotent_ring, resolve_state, shift_s, shift_s_prime)
from .symkit import MAX_N, RootSet, SymPoly

__version__ = "0.1.0"
