//! Multi-index counterpart of the vacuum graph Hopf algebra.

mod coproduct;
mod index;
mod pmap;
mod theta;
mod thresholds;

pub use coproduct::{
    coproduct_mi_closed, coproduct_mi_closed_unrestricted, coproduct_mi_extended, coproduct_mi_general,
    coproduct_mi_general_unrestricted, d_operator, d_power, y_generator,
};
pub use index::{
    counting_map, counting_map_forest, mi_sum_mul, mi_sum_pow, sum_to_json, tensor_to_json, MIForest, MIPoly,
    MISum, MITensor, MultiIndex,
};
pub use pmap::{p_map, p_map_forest, p_map_sum, p_map_tensor};
pub use theta::{eta, middle_square_lhs, middle_square_rhs, sigma_symbol, theta_m, MiSymbol, SymPoly};
pub use thresholds::{d_star_e, d_star_m, family_members, n_star_e, n_star_m, subdivergence_classes};
