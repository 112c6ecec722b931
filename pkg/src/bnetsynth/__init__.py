"""Boolean net synthesis from transition systems under restriction bounds."""

from .engine import (EnumerationStats, SynthesisOutcome,
                     candidate_count_formula, enumerate_valid_regions,
                     region_solves, solve_atom, solve_drts, synthesize_net,
                     verify_lemma1)
from .interactions import (INTERACTION_ORDER, PARTIAL, TOTAL, apply,
                           format_type, non_nop, parse_type)
from .nets import (BooleanNet, InvalidNet, build_net, dependency_by_place,
                   dependency_number, fire, parse_net, reachability_graph,
                   read_net, render_net, write_net)
from .reductions import (HittingSetInstance, ReductionArtifact,
                         alpha_witness_region, build_hs_instance,
                         hs_brute_force, is_hitting_set, parse_hs, read_hs,
                         reduce_instance, reduce_t11, reduce_t12, reduce_t13,
                         reduce_t14, relevant_paths, render_hs, render_meta,
                         write_hs)
from .regions import (InvalidRegion, Region, expand_region, image_of_path,
                      implicit_form, parse_region, render_region,
                      restriction_count, solves_essp, solves_ssp,
                      validate_region)
from .ts import (EsspAtom, InvalidTransitionSystem, SspAtom,
                 TransitionSystem, build_ts, enumerate_atoms, isomorphic,
                 parse_atom, parse_ts, read_ts, render_ts, spanning_tree,
                 validate_atom, write_ts)

__version__ = "0.1.0"

__all__ = [
    "BooleanNet", "EnumerationStats", "EsspAtom", "HittingSetInstance",
    "INTERACTION_ORDER", "InvalidNet", "InvalidRegion",
    "InvalidTransitionSystem", "PARTIAL", "Region", "ReductionArtifact",
    "SspAtom", "SynthesisOutcome", "TOTAL", "TransitionSystem",
    "alpha_witness_region", "apply", "build_hs_instance", "build_net",
    "build_ts", "candidate_count_formula", "dependency_by_place",
    "dependency_number", "enumerate_atoms", "enumerate_valid_regions",
    "expand_region", "fire", "format_type", "hs_brute_force",
    "image_of_path", "implicit_form", "is_hitting_set",
    "isomorphic", "non_nop", "parse_atom", "parse_hs", "parse_net",
    "parse_region", "parse_ts", "parse_type", "reachability_graph",
    "read_hs", "read_net", "read_ts", "reduce_instance", "reduce_t11",
    "reduce_t12", "reduce_t13", "reduce_t14", "region_solves",
    "relevant_paths", "render_hs", "render_meta", "render_net",
    "render_region", "render_ts", "restriction_count", "solve_atom",
    "solve_drts", "solves_essp", "solves_ssp", "spanning_tree",
    "synthesize_net", "validate_atom", "validate_region", "verify_lemma1",
    "write_hs", "write_net", "write_ts",
]
