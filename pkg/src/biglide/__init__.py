"""Stiffness and natural-frequency analysis of a two-rail planar parallel
mechanism, with drive-only (simplified) and lumped virtual-spring (refined)
models and constant-stroke leg-length studies.
"""

from .beams import BeamParams, beam_end_compliance, fit_equivalent_beam, scale_geometry
from .dataset import IFW, MechanismDataset, load_dataset, save_dataset
from .mechanism import (Geometry, build_leg_chain, inverse_kinematics, jacobian,
                        workspace_bounds)
from .modal import assemble_system, classify_mode, discretize_link, natural_frequencies
from .numerics import generalized_eigs, invert_symmetric, solve_linear
from .output import emit_csv, read_csv
from .robot import ModelOptions, refined_compliance, refined_modes, robot_system
from .simplified import deflection_simplified, frequencies_simplified
from .sweeps import SweepRecord, alpha_sweep, frequency_map, stiffness_map, trend_report
from .vjm import (deflection_refined, leg_cartesian_stiffness, manipulator_stiffness,
                  passive_jacobian, spring_jacobian)

__version__ = "0.1.0"
