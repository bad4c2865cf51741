use std::fmt;
use std::str::FromStr;

use hssolve::{
    aa_pmhss_solve, plain_gmres_solve, pmhss_gmres_solve, pmhss_solve, presb_gmres_solve, Report,
    SolverConfig, System,
};

use crate::error::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Pmhss,
    AaPmhss,
    Gmres,
    PmhssGmres,
    PresbGmres,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Pmhss,
        Method::AaPmhss,
        Method::Gmres,
        Method::PmhssGmres,
        Method::PresbGmres,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Pmhss => "pmhss",
            Self::AaPmhss => "aa_pmhss",
            Self::Gmres => "gmres",
            Self::PmhssGmres => "pmhss_gmres",
            Self::PresbGmres => "presb_gmres",
        }
    }

    /// Methods whose outer loop goes through `A + B` solves.
    pub fn uses_inner_solver(self) -> bool {
        self != Self::Gmres
    }

    pub fn solve(self, sys: &System, cfg: &SolverConfig) -> hssolve::Result<Report> {
        match self {
            Self::Pmhss => pmhss_solve(sys, cfg),
            Self::AaPmhss => aa_pmhss_solve(sys, cfg),
            Self::Gmres => plain_gmres_solve(sys, cfg),
            Self::PmhssGmres => pmhss_gmres_solve(sys, cfg),
            Self::PresbGmres => presb_gmres_solve(sys, cfg),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|m| m.name() == key)
            .ok_or_else(|| {
                BenchError::Usage(format!(
                    "unknown method {s:?}; expected one of pmhss, aa_pmhss, gmres, pmhss_gmres, presb_gmres"
                ))
            })
    }
}

/// Parses a list of method names, rejecting the whole list on any unknown
/// entry.
pub fn parse_methods<S: AsRef<str>>(names: &[S]) -> Result<Vec<Method>, BenchError> {
    names.iter().map(|n| n.as_ref().parse()).collect()
}
