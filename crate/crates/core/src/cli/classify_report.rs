use std::fmt;

use crate::classify::{classify_origin, two_jet_class, SingularityLabel, TwoJetClass};
use crate::scalar::Scalar;

use super::Prepared;

#[derive(Debug, Clone)]
pub struct ClassifyReport {
    pub two_jet: TwoJetClass,
    pub frontal: bool,
    pub obstruction: String,
    /// Label of the frontal part at the origin.
    pub label: SingularityLabel,
    pub notes: Vec<String>,
}

pub fn classify_report<S: Scalar>(p: &Prepared<S>) -> ClassifyReport {
    ClassifyReport {
        two_jet: two_jet_class(&p.normal_form),
        frontal: p.frontal,
        obstruction: p.obstruction.pretty(),
        label: classify_origin(&p.frontal_part),
        notes: p.notes.clone(),
    }
}

impl fmt::Display for ClassifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "2-jet: {}", self.two_jet)?;
        if self.frontal {
            writeln!(f, "frontal; {} at origin", self.label)?;
        } else {
            writeln!(f, "not frontal; obstruction {}", self.obstruction)?;
            writeln!(f, "frontal part: {} at origin", self.label)?;
        }
        Ok(())
    }
}
