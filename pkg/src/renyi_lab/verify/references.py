"""The classical fact each property checks, shown next to its verify row."""

from typing import Dict

REFERENCES: Dict[str, str] = {
    "renyi_entropy.non_increasing_in_order": "monotonicity of H_a in the order",
    "renyi_entropy.concave_below_one": "concavity of H_a for orders below one",
    "renyi_entropy.order_zero": "Hartley entropy as the order-zero limit",
    "renyi_entropy.order_infinity": "min-entropy as the order-infinity limit",
    "renyi_entropy.order_one": "Shannon entropy as the order-one limit",
    "renyi_entropy.log_sum_inequality": "variational form of H_a via the log-sum inequality",
    "renyi_entropy.campbell_codelength": "Campbell's coding theorem",
    "renyi_entropy.unique_optimizer": "tilted distribution as the unique optimizer for H_a",
    "renyi_entropy.approximate_recursivity": "approximate grouping rule for H_a",
    "renyi_divergence.non_decreasing_in_order": "monotonicity of D_a in the order",
    "renyi_divergence.non_negative": "Gibbs' inequality for D_a",
    "renyi_divergence.convexity": "convexity of D_a",
    "renyi_divergence.order_zero": "order-zero limit of D_a",
    "renyi_divergence.order_infinity": "max-divergence as the order-infinity limit",
    "renyi_divergence.order_one": "KL divergence as the order-one limit",
    "renyi_divergence.data_processing": "data-processing inequality for D_a",
    "renyi_divergence.unique_optimizer": "tilted distribution as the unique optimizer for D_a",
    "alpha_information.order_relation": "ordering of Sibson's and Csiszar's mutual informations",
    "alpha_information.entropy_bounds": "entropy upper bounds on I_a and K_a",
    "alpha_information.i_alpha_shape": "concavity and convexity of Sibson's I_a",
    "alpha_information.k_alpha_shape": "concavity of K_a in P and convexity of the alpha-norm sum in W",
    "alpha_information.capacity_equals_k_maximum": "equality of the Sibson and Csiszar capacities",
    "alpha_information.data_processing": "data-processing inequality for I_a and K_a",
    "shannon.mutual_information_forms": "variational and divergence forms of mutual information",
    "shannon.capacity_certificate": "Blahut-Arimoto capacity bounds",
    "generalized_divergence.variational_form": "variational form of the generalized divergence",
    "variational.entropy_form": "variational form of H_a",
    "variational.divergence_form": "variational form of D_a",
    "variational.i_alpha_form": "variational form of Sibson's I_a",
    "variational.k_alpha_form": "variational form of Csiszar's K_a",
    "variational.j_functional_form": "variational form of the J functional",
    "variational.j_functional_additive": "additivity of J over product distributions",
    "types.sequence_probability": "probability of a sequence from its type",
    "types.class_size_bounds": "type class size bounds",
    "types.type_count": "number of types of a given length",
    "types.deviation_bound": "Sanov-type deviation bound",
    "hyptest.lower_bound": "Renyi lower bound on the composite test exponent",
    "hyptest.equality_with_worst_noise": "tightness of the lower bound under worst noise",
    "hyptest.strict_gap_away_from_worst_noise": "strictness of the lower bound away from worst noise",
    "exponent_alpha.non_increasing": "monotonicity of E(a) in the order",
    "exponent_alpha.endpoint": "E(a) at the tilted endpoint order",
    "exponent_alpha.small_order": "E(a) as the order tends to zero",
    "hyptest.false_alarm_bound": "binomial false alarm bound of the modified rule",
    "hyptest.achievability_envelope": "finite-n achievability of the miss-detection exponent",
    "hyptest.disjoint_support_rule": "zero miss detection for disjoint supports",
    "hyptest.monte_carlo_agreement": "Monte Carlo estimate against the exact error probability",
}
