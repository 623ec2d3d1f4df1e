"""Internal Lie algebras in concrete symmetric monoidal categories, at finite truncation."""
from .linalg import Field, GF, Matrix, QQ, kernel_basis, parse_field, quotient_basis, rref, solve
from .monoidal import (LP, Category, CategoryError, Chain, Colour, GradeGroup, GradedObject,
                       Morphism, Super, Vect, direct_sum, hom_object, identity, make_object,
                       morphism_from_images, symmetry, tensor_morphisms, tensor_objects)
from .lie import (LieObject, abelian_lie, check_lie, check_lie_morphism, commutator_lie,
                  lie_from_constants)
from .enveloping import (BimonoidObject, MonoidObject, TruncatedUEA, TruncationError,
                         check_bimonoid, check_hopf, check_monoid, delta_monoid,
                         free_monoid_truncated, primitives, uea)
from .actions import (EquivariantLieObject, LieAction, MonoidAction, action_nilpotency_bound,
                      action_tensor, action_transpose, check_equivariant, check_lie_action,
                      check_monoid_action, convolution_lie, endo_monoid, exp_translation_action,
                      lie_to_monoid_action, monoid_to_lie_action)
from .points import (ExponentObject, Point, action_to_point, adjunction_check, exponent,
                     kernel_functor, lift_morphism, point_to_action, transpose_down, transpose_up)
from .enumerate import enumerate_homs_F2
from .reports import Check, Report

__version__ = "0.1.0"
