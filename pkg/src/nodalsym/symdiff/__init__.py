"""Symmetric differentials, cover rings, node charts and resultants."""
from .cover import CoverElement, MultiQuadraticRing, ZeroDivisorError
from .cuboid import (FORM_LABELS, cuboid_form_file, cuboid_forms, cuboid_ring, eta,
                     omega7_projective, pythagorean_conic)
from .forms import (FormUndefinedError, InconsistentParametrization, Parametrization,
                    PulledBackForm, SymmetricForm, curve_in_locus, pullback)
from .io import (FormFile, FormFileError, data_path, parametrization_from_dict, parse_form_text,
                 read_form_file, read_json, read_parametrization)
from .nodechart import (BUILTIN_CHARTS, NodeChart, NodeChartError, NodeExpansion, Obstruction,
                        ObstructionList, chart_from_dict, chi0_by_obstructions, cone_chart,
                        cuboid_node_chart, extension_obstructions, lift_node_branch, node_expand,
                        obstruction_rank, v_mn_forms)
from .resultant import (IdenticallyZeroResultant, ResultantLocus, determinant,
                        hyperplane_vanishing_extends, resultant_locus, sylvester_matrix,
                        sylvester_resultant)

__all__ = [n for n in dir() if not n.startswith("_")]
