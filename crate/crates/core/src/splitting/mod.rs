//! Splitting iterations: plain PMHSS and its Anderson-accelerated variant.

pub mod anderson;
pub mod pmhss;

pub use anderson::{aa_lsq_step, aa_pmhss_solve, aa_pmhss_solve_from, Anderson, AndersonUpdate};
pub use pmhss::{pmhss_solve, pmhss_solve_from, pmhss_step, PmhssMap};
