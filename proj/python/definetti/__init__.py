"""Exact finite de Finetti certificates for exchangeable laws on finite alphabets.

Laws are stored in type-class form: one per-sequence probability per type
(letter-count vector), in lexicographic type order. All information
quantities are in nats.
"""

from ._core import (
    CertificationFailure,
    Law,
    adversarial_search,
    certificate_ratio,
    certify,
    component_grid,
    cond_mi_sum,
    conditional_mutual_information,
    diaconis_pair,
    entropy,
    fit_mixture_weights,
    iid,
    iid_mixture,
    improve_certificate,
    mixing_measure,
    mutual_information,
    polya,
    random_dirichlet,
    relative_entropy,
    select_mstar,
    tail_mi,
    total_variation,
    urn,
)

__all__ = [
    "CertificationFailure",
    "Law",
    "adversarial_search",
    "certificate_ratio",
    "certify",
    "component_grid",
    "cond_mi_sum",
    "conditional_mutual_information",
    "diaconis_pair",
    "entropy",
    "fit_mixture_weights",
    "iid",
    "iid_mixture",
    "improve_certificate",
    "mixing_measure",
    "mutual_information",
    "polya",
    "random_dirichlet",
    "relative_entropy",
    "select_mstar",
    "tail_mi",
    "total_variation",
    "urn",
]

__version__ = "0.1.0"
