"""depthzero: exact-arithmetic invariants of based root data with a
Frobenius twist, parabolic Deligne-Lusztig enumeration over small finite
fields, and truncated Puiseux specialization for GL_n."""

from .root_datum import (BasedRootDatum, WeylElement, classify_cocharacter,
                         datum_from_spec, gl_datum, gl_res_scalars_datum,
                         pairing, two_rho, weyl_group)
from .alcove import (FacetRecord, b_sigma_orbit, base_alcove_contains,
                     facet_is_minimal, facet_of_lambda, length_zero_w)
from .lambda_engine import (LambdaData, ShimuraDatum, component_group,
                            compute_lambda, lambdapst_check,
                            rootset_identities, shimura_datum, weil_d)
from .finite_linear import (FieldTower, FqElement, MatrixFq, enumerate_group,
                            frobenius, group_order, kernel_name, moore_det,
                            root_group_element, tower)
from .dl_variety import (YwPoint, act, canonicalize, enumerate_Yw,
                         inertia_torus_element, lang_value, m_wsigma_points,
                         phi_w)
from .puiseux import PuiseuxElement, series_literal, solve_sigma_lift
from .toroidal_fan import (ConeRecord, FanData, cartan_decompose, kgl_fan,
                           locate, specialize_point)
from .lt_specialize import (BreakData, FlagPoint, LevelVector, breaks,
                            flag_from_breaks, normalize_breaks,
                            stratum_report, verify_level_equation,
                            wedge_oracle)

__version__ = "0.1.0"
