"""Directed A-infinity categories over GF(2): twisted complexes, twists and mutations."""

from .ainf import (AInfCategory, MuEntry, ValidationReport, gram_matrix, hom_cohomology,
                   hom_dims_table, validate_ainf, validate_directed)
from .catfile import ParseError, parse_category, serialize
from .generators import KnottedSpec, a3_path, gen_knotted, random_category
from .gf2 import (CochainComplex, GradedMap, GradedSpace, cohomology, dual, rank, shift,
                  tensor)
from .knotted import oracle_complex, run_knotted_pipeline
from .mutation import (HurwitzName, MoveResult, MutationWord, apply_c, apply_c_inv, apply_r,
                       apply_r_inv, apply_shift, apply_word, parse_word, subcategory_crosscheck_c)
from .twist import (Summand, TwObject, cone, dual_twist_object, extract_directed_subcategory,
                    hom_complex, mc_check, object_tw, triangle_euler_check, twist_object)

__version__ = "0.1.0"
