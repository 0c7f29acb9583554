"""Objective corotational rates: material-spin families, tangent stiffness
tensors A(B), and necessary-and-sufficient positivity / invertibility
classification, with a numeric property harness for the identity calculus."""

from .kinematics import (Composite, KinematicState, Motion, RigidRotation,
                         SimpleShear, TabulatedPolynomial, TriaxialDiagonal,
                         Uniaxial, builtin_motions, material_derivative_fd,
                         polar_decompose, state_at)
from .rates import (PrimaryLaw, ProductLaw, RichterLaw, StressLaw, almansi_law,
                    constant_law, corotational_rate, induced_stiffness_H,
                    isochoric_neo_hooke_law, linear_law, log_law,
                    noncorotational_rate, parse_law, perfect_fluid_law,
                    perfect_fluid_quadratic, sigma_and_gradient)
from .spins import (GForm, NuForm, SpinDiscontinuityError, SpinGenerator,
                    aifantis, aifantis_g, aifantis_nu, g_classical,
                    green_naghdi, gurtin_spear, logarithmic, nu_to_g,
                    parse_generator, spin_tensor, zaremba_jaumann)
from .stiffness import (RateClassification, ZEntry, ZTable, a44_report,
                        assemble_A, assemble_A_g, assemble_A_nu, classify,
                        gbar, quadratic_form_decomposed, z_table)
from .strains import (positivity_sweep, scale_derivative, scale_function,
                      scale_function_mirror, seth_hill, seth_hill_frechet,
                      strain_rate_pairing)
from .tensors import (NotPositiveDefiniteError, Spectral3, commutator, dev,
                      embed6, extract6, frechet_log, frechet_primary,
                      haar_rotation, invariants, unweighted_vec,
                      primary_matrix_function, random_spd, skew, skew3,
                      spectral_decompose, sym, sym3, tensor_log, tensor_power,
                      tensor_sqrt)
from .verify import CheckResult, run_suite

__version__ = "0.1.0"
