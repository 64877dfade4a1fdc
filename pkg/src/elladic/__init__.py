"""Exact ell-adic measure calculus and the L-functions built from it."""

from .padic import (
    PadicNum,
    angle_repr,
    is_odd_prime,
    one_unit_pow,
    residue_mod,
    teichmuller,
    unit_decompose,
)
from .bernoulli import bernoulli_number, bernoulli_poly, bernoulli_poly_coeffs, gen_bernoulli
from .measures import (
    CongruenceReport,
    Factor,
    MeasureTower,
    Word,
    bernoulli_measure,
    congruence_check,
    dilation_pullback,
    dirac_tower,
    integrate,
    measure_from_tower,
    mellin_multi,
    product_tower,
    pushforward_linear,
    random_bounded_tower,
    raw_word_integral,
    restrict,
    successive_difference_pushforward,
    tower_from_json,
    tower_to_json,
    word_coefficient,
    zero_tower,
)
from .transforms import (
    IwasawaSeries,
    f_transform,
    measure_from_p_series,
    p_series_to_f,
    p_transform,
)
from .ncseries import (
    NcSeries,
    ReducedSeries,
    bch,
    bch_reduced,
    bch_scaled_pair,
    bch_scaled_pair_display,
    bernoulli_kernel,
    gamma_series,
    inversion_closed_form,
    inversion_pipeline,
    l_from_li,
    li_from_l,
    reduce_series,
)
from .lfunctions import (
    DirichletCharacter,
    SigmaDependentError,
    classical_dirichlet_special,
    dirichlet_l,
    dirichlet_node,
    hurwitz_l,
    hurwitz_node,
    interpolation_weight,
    kl_node,
    kl_node_rational,
    kubota_leopoldt,
    minus_one_l,
    smallest_regularizer,
    zinv_l,
    zinv_node,
    zinv_report,
)

__version__ = "0.1.0"
