"""Construction and certification of Latin squares and hypercubes without proper subsquares."""
from .core import (Hypercube, LatinSquare, PairIndexedSquare, PerturbedSquare, boost, corrupted_product,
                   cyclic_square, direct_product, eta_plan, near_copy, random_latin_square, relabel_prec1,
                   row_cycle, shift_by, shifted_near_copy, switch_eta, switch_row_cycle)
from .verify import (HyperBox, SubBox, brute_force_subhypercubes, brute_force_subsquares, closure,
                     contains_intercalate, find_intercalate, find_proper_subhypercube, find_proper_subsquare,
                     is_isotopic, is_ninf, is_subhypercube, is_subsquare, minimal_subsquares,
                     perturbed_subsquares, sampled_subsquare_search)
from .certify import (CertLevel, CondIIIWitness, CondIIWitness, XMember, certify_x_member,
                      check_condition_i, check_condition_ii, check_condition_iii, check_corrupting_pair,
                      check_properties, corrupter, find_witnesses)
from .construct import (base_square, build_hypercube, build_square, extend, kotzig_turgeon, plan_order,
                        search_ninf)

__all__ = [name for name in dir() if not name.startswith("_")]
