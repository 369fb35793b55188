//! Bell polynomials, the Wick map and the free symmetric algebra over R[X].

mod bell;
mod free;
mod map;

pub use bell::{bell_complete, bell_eval, bell_partial, is_monic_in_x, partition_coefficient, render_bell, BellVar};
pub use free::{
    antipode_generator, antipode_h, coproduct_h, free_wick, h_generator, h_mul, mu_hat, HElement, HTensor,
    SymMonomial,
};
pub use map::{wick_map, wick_map_formal, wick_map_xy, SigmaPoly};

use crate::algebra::render_poly;
use crate::exact_algebra::PolyXY;

pub fn render_formal(p: &PolyXY<SigmaPoly>, latex: bool) -> String {
    p.render(
        |c| {
            render_poly(
                c,
                |s| if latex { format!("\\sigma_{{{s}}}") } else { format!("s{s}") },
                latex,
            )
        },
        latex,
    )
}
