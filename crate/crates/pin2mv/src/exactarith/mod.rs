//! Exact rationals, 2-adic valuations and truncated power series.

mod oracle;
mod rat;
mod series;
mod val2;

pub use oracle::bm_multinomial_oracle;
pub use rat::Rat;
pub use series::{
    compose_exp_minus_one, compose_horner, compose_log1p, log1p_over_z_pow, series_compose_subst,
    stirling1_table, stirling2_table, TruncSeries,
};
pub use val2::{val2, val2_i64, val2_int, Val2};
