from .core import (GradedStateSet, State, StateError, admissibility_via_evaluation, bar_diagram,
                   crossing_admissible, crossing_h, crossing_quasi_admissible, enumerate_pre_states,
                   enumerate_quasi_states, enumerate_states, h_grading, is_quasi_state, is_state,
                   mask_indices, op_diagram, popcount, relabel_sigma, resolve_state, shift_s,
                   shift_s_prime, state_dual_bar, state_dual_op, subsets_of_size, vertex_admissible)
from .ring import StateRing, StateRingElement, edge_alphabet, idempotent_ring
