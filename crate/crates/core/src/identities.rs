//! Named identities and a dispatcher that runs them on any generated object.
//!
//! Poset identities given a complex run on its face poset with a top
//! element adjoined.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::generators::{face_poset, Generated};
use crate::poset::GradedPoset;
use crate::report::VerificationReport;
use crate::toric;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    Ds,
    FlagDs,
    SimplicialDs,
    FlagPoset,
    Stanley,
    Swartz,
    OneSing,
    Generalized,
    Main,
    EulerRel,
    LowerEulerian,
    Dual,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::Ds,
        Identity::FlagDs,
        Identity::SimplicialDs,
        Identity::FlagPoset,
        Identity::Stanley,
        Identity::Swartz,
        Identity::OneSing,
        Identity::Generalized,
        Identity::Main,
        Identity::EulerRel,
        Identity::LowerEulerian,
        Identity::Dual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Ds => "ds",
            Identity::FlagDs => "flag-ds",
            Identity::SimplicialDs => "simplicial-ds",
            Identity::FlagPoset => "flag-poset",
            Identity::Stanley => "stanley",
            Identity::Swartz => "swartz",
            Identity::OneSing => "1sing",
            Identity::Generalized => "generalized",
            Identity::Main => "main",
            Identity::EulerRel => "euler-rel",
            Identity::LowerEulerian => "lower-eulerian",
            Identity::Dual => "dual",
        }
    }

    fn on_complexes(self) -> bool {
        matches!(self, Identity::Ds | Identity::FlagDs)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::BadArguments(format!("unknown identity `{s}`")))
    }
}

/// Whether an error means "this identity does not apply here" rather than
/// "the input is broken".
pub fn is_precondition(e: &Error) -> bool {
    matches!(
        e,
        Error::NotPure
            | Error::NotSimplicial(_)
            | Error::NotEulerian
            | Error::NotSemiEulerian
            | Error::NotOneSing(_)
            | Error::ParityNotApplicable(_)
            | Error::RangeViolation { .. }
            | Error::NotLowerEulerian(_)
            | Error::BadArguments(_)
    )
}

fn with_poset<T>(object: &Generated, run: impl FnOnce(&GradedPoset) -> Result<T>) -> Result<T> {
    match object {
        Generated::Poset(p) => run(p),
        Generated::Complex(c) => run(&face_poset(c, true)?),
        Generated::Balanced(b) => run(&face_poset(b.complex(), true)?),
    }
}

fn on_poset(identity: Identity, p: &GradedPoset) -> Result<VerificationReport> {
    match identity {
        Identity::SimplicialDs => p.verify_simplicial_ds(),
        Identity::FlagPoset => p.verify_flag_poset(),
        Identity::Stanley => toric::verify_stanley(p),
        Identity::Swartz => toric::verify_swartz(p),
        Identity::OneSing => {
            let mut report = toric::verify_1sing(p)?;
            match toric::verify_vertex_link_relation(p) {
                Ok(extra) => report.absorb("vertex-link ", extra),
                Err(Error::ParityNotApplicable(_)) => {}
                Err(e) => return Err(e),
            }
            Ok(report)
        }
        Identity::Generalized => {
            let mut report = toric::verify_generalized(p)?;
            report.absorb("lemma ", toric::verify_lower_interval_lemmas(p)?);
            Ok(report)
        }
        Identity::Main => {
            let mut report = toric::verify_main(p)?;
            let pascal = toric::verify_pascal(p, 10)?;
            let failing = pascal.asserted_rows().filter(|r| !r.residual.is_zero()).count() as i64;
            report.check("pascal: failing cells, u <= 10", failing, 0);
            Ok(report)
        }
        Identity::EulerRel => toric::verify_euler_relation(p),
        Identity::LowerEulerian => toric::verify_lower_eulerian(p),
        Identity::Dual => toric::dual_defect_report(p),
        Identity::Ds | Identity::FlagDs => unreachable!("complex identities are dispatched separately"),
    }
}

/// Runs one identity. Fails with a precondition error when it does not
/// apply to the object.
pub fn verify(identity: Identity, object: &Generated) -> Result<VerificationReport> {
    match (identity, object) {
        (Identity::Ds, Generated::Poset(_)) | (Identity::FlagDs, Generated::Poset(_)) => Err(Error::BadArguments(
            format!("`{identity}` needs a simplicial complex, got a poset"),
        )),
        (Identity::Ds, _) => {
            let complex = object.complex().expect("complex variants");
            let mut report = complex.verify_pure_ds()?;
            report.absorb("short-h ", complex.verify_short_h()?);
            Ok(report)
        }
        (Identity::FlagDs, Generated::Balanced(b)) => {
            let mut report = b.verify_flag_ds()?;
            report.absorb("short ", b.verify_short_flag()?);
            Ok(report)
        }
        (Identity::FlagDs, _) => Err(Error::BadArguments(
            "`flag-ds` needs a balanced complex (add a `colors:` line)".into(),
        )),
        _ => with_poset(object, |p| on_poset(identity, p)),
    }
}

/// Result of one identity inside [`verify_all`].
#[derive(Clone, Debug)]
pub enum Outcome {
    Ran(VerificationReport),
    Skipped { identity: Identity, reason: Error },
}

impl Outcome {
    pub fn passed(&self) -> bool {
        match self {
            Outcome::Ran(r) => r.pass,
            Outcome::Skipped { .. } => true,
        }
    }
}

/// Every identity whose preconditions hold, in [`Identity::ALL`] order.
/// Errors other than failed preconditions are returned.
pub fn verify_all(object: &Generated) -> Result<Vec<Outcome>> {
    let poset = match object {
        Generated::Poset(_) => None,
        Generated::Complex(c) => Some(face_poset(c, true)?),
        Generated::Balanced(b) => Some(face_poset(b.complex(), true)?),
    };
    Identity::ALL
        .into_iter()
        .map(|identity| {
            let result = match (&poset, identity.on_complexes()) {
                (Some(p), false) => on_poset(identity, p),
                _ => verify(identity, object),
            };
            match result {
                Ok(report) => Ok(Outcome::Ran(report)),
                Err(reason) if is_precondition(&reason) => Ok(Outcome::Skipped { identity, reason }),
                Err(e) => Err(e),
            }
        })
        .collect()
}
