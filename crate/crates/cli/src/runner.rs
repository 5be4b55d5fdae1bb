//! Named verification suites and the options they read.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;
use yangian_core::cohom::{verify_bicomplex, verify_cartier, verify_solver, verify_whitehead, Bicomplex};
use yangian_core::current::{verify_bialgebra, verify_generation, verify_min_presentation, CurrentAlgebra};
use yangian_core::envelope::verify_gnw;
use yangian_core::freequant::{
    verify_coproduct_well_defined, verify_hopf, verify_primitive_defects, verify_sl2_steps, verify_t_identities,
};
use yangian_core::{Check, Envelope, Fault, FreeModel, Report};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("unknown suite `{0}` (known: {known})", known = Suite::ALL.map(|s| s.name()).join(", "))]
    UnknownSuite(String),
    #[error("invalid Lie type `{0}`: expected A<k> with k >= 1, or a comma list such as A1,A2")]
    BadType(String),
    #[error("fault `{fault}` does not affect suite `{suite}`")]
    IrrelevantFault { fault: Fault, suite: Suite },
    #[error(transparent)]
    Core(#[from] yangian_core::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Gnw,
    Bialgebra,
    MinPresentation,
    Generation,
    Defects,
    Sl2Steps,
    TIdentities,
    CoproductWd,
    Hopf,
    Whitehead,
    Cartier,
    Bicomplex,
    Solver,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Gnw,
        Suite::Bialgebra,
        Suite::MinPresentation,
        Suite::Generation,
        Suite::Defects,
        Suite::Sl2Steps,
        Suite::TIdentities,
        Suite::CoproductWd,
        Suite::Hopf,
        Suite::Whitehead,
        Suite::Cartier,
        Suite::Bicomplex,
        Suite::Solver,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gnw => "gnw",
            Suite::Bialgebra => "bialgebra",
            Suite::MinPresentation => "min-presentation",
            Suite::Generation => "generation",
            Suite::Defects => "defects",
            Suite::Sl2Steps => "sl2-steps",
            Suite::TIdentities => "t-identities",
            Suite::CoproductWd => "coproduct-wd",
            Suite::Hopf => "hopf",
            Suite::Whitehead => "whitehead",
            Suite::Cartier => "cartier",
            Suite::Bicomplex => "bicomplex",
            Suite::Solver => "solver",
        }
    }

    /// Ranks run when `--type` is not given.
    fn default_ranks(self) -> &'static [usize] {
        match self {
            Suite::Cartier => &[],
            Suite::Gnw | Suite::Bialgebra | Suite::Generation | Suite::Sl2Steps | Suite::Bicomplex | Suite::Solver => &[1],
            _ => &[1, 2],
        }
    }

    pub fn accepts(self, fault: Fault) -> bool {
        match self {
            Suite::Gnw => fault == Fault::Nu,
            Suite::Sl2Steps => matches!(fault, Fault::OmegaSign | Fault::CocycleScale | Fault::Step2Drop),
            Suite::Defects | Suite::TIdentities | Suite::CoproductWd | Suite::Hopf => {
                matches!(fault, Fault::OmegaSign | Fault::CocycleScale)
            }
            Suite::Solver => fault == Fault::EquivariantShift,
            _ => false,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = RunError;

    fn from_str(s: &str) -> Result<Self, RunError> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| RunError::UnknownSuite(s.to_string()))
    }
}

/// Parses `A1`, `A2,A3`, ... into ranks.
pub fn parse_types(s: &str) -> Result<Vec<usize>, RunError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.strip_prefix('A')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|k| *k >= 1)
                .ok_or_else(|| RunError::BadType(s.to_string()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub ranks: Option<Vec<usize>>,
    pub degree: Option<usize>,
    pub max_u_degree: Option<u32>,
    pub seed: u64,
    pub fault: Option<Fault>,
    pub samples: usize,
    pub seeds: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { ranks: None, degree: None, max_u_degree: None, seed: 1, fault: None, samples: 100, seeds: 20 }
    }
}

fn run_one(suite: Suite, rank: usize, o: &SuiteOptions) -> Result<Report, RunError> {
    let env = Envelope::sl(rank + 1)?;
    let model = || FreeModel::with_fault(env.clone(), o.fault);
    let current = || CurrentAlgebra::new(env.g().clone());
    let u_degree = |small: u32, large: u32| o.max_u_degree.unwrap_or(if rank == 1 { small } else { large });
    let degree = o.degree.unwrap_or(2);
    Ok(match suite {
        Suite::Gnw => verify_gnw(&env, o.fault),
        Suite::Bialgebra => verify_bialgebra(&current(), u_degree(3, 2)),
        Suite::MinPresentation => verify_min_presentation(&current()),
        Suite::Generation => verify_generation(&current(), u_degree(4, 3)),
        Suite::Defects => verify_primitive_defects(&model()?)?,
        Suite::Sl2Steps => verify_sl2_steps(&model()?, o.fault)?,
        Suite::TIdentities => verify_t_identities(&model()?),
        Suite::CoproductWd => verify_coproduct_well_defined(&model()?),
        Suite::Hopf => verify_hopf(&model()?),
        Suite::Whitehead => verify_whitehead(&env, degree, o.seed),
        Suite::Cartier => unreachable!("cartier does not depend on the Lie type"),
        Suite::Bicomplex => verify_bicomplex(&Bicomplex::new(env, degree), o.samples, o.seed),
        Suite::Solver => verify_solver(&Bicomplex::new(env, degree), o.seed..o.seed + o.seeds, o.fault),
    })
}

/// Runs a suite over every requested type. With several types the check
/// ids are prefixed by the type.
pub fn run_suite(suite: Suite, o: &SuiteOptions) -> Result<Report, RunError> {
    if let Some(f) = o.fault {
        if !suite.accepts(f) {
            return Err(RunError::IrrelevantFault { fault: f, suite });
        }
    }
    let start = Instant::now();
    let mut report = if suite == Suite::Cartier {
        verify_cartier(&[1, 2, 3], o.degree.unwrap_or(4))
    } else {
        let ranks = o.ranks.clone().unwrap_or_else(|| suite.default_ranks().to_vec());
        let reports: Vec<Report> = ranks.iter().map(|&r| run_one(suite, r, o)).collect::<Result<_, _>>()?;
        if let [single] = reports.as_slice() {
            single.clone()
        } else {
            let algebra = reports.iter().map(|r| r.algebra.clone()).collect::<Vec<_>>().join(",");
            let checks: Vec<Check> = reports
                .into_iter()
                .flat_map(|r| {
                    let a = r.algebra;
                    r.checks.into_iter().map(move |c| Check { id: format!("{a}/{}", c.id), ..c })
                })
                .collect();
            Report::new(suite.name(), algebra, checks)
        }
    };
    report.suite = suite.name().to_string();
    report.seed = o.seed;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_lists() {
        assert_eq!(parse_types("A1,A2").unwrap(), vec![1, 2]);
        assert_eq!(parse_types("A3").unwrap(), vec![3]);
        assert!(parse_types("B2").is_err());
        assert!(parse_types("A0").is_err());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(RunError::UnknownSuite(_))));
    }

    #[test]
    fn multi_type_reports_are_prefixed() {
        let o = SuiteOptions { ranks: Some(vec![1, 2]), ..Default::default() };
        let r = run_suite(Suite::CoproductWd, &o).unwrap();
        assert!(r.passed());
        assert_eq!(r.algebra, "A1,A2");
        assert!(r.checks.iter().any(|c| c.id.starts_with("A1/")) && r.checks.iter().any(|c| c.id.starts_with("A2/")));
    }

    #[test]
    fn faults_must_match_the_suite() {
        let o = SuiteOptions { fault: Some(Fault::Nu), ..Default::default() };
        assert!(matches!(run_suite(Suite::Hopf, &o), Err(RunError::IrrelevantFault { .. })));
    }
}
