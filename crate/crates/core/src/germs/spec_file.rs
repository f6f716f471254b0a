//! JSON germ specs:
//! `{"vars": ["u","v","s"], "order": N, "components": [[[[i,j,k], num, den], ...] x 3]}`.

use std::collections::HashSet;

use num::bigint::BigInt;
use num::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{Exp, Jet, MAX_ORDER};
use crate::scalar::{rational_from_parts, Rational};

use super::MapGerm;

/// Integer written either as a JSON number or as a decimal string (for big values).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecInt {
    Int(i64),
    Str(String),
}

impl SpecInt {
    fn as_text(&self) -> String {
        match self {
            SpecInt::Int(n) => n.to_string(),
            SpecInt::Str(s) => s.clone(),
        }
    }

    fn from_bigint(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => SpecInt::Int(v),
            None => SpecInt::Str(n.to_string()),
        }
    }
}

pub type SpecTerm = (Exp, SpecInt, SpecInt);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermSpec {
    pub vars: Vec<String>,
    pub order: usize,
    pub components: Vec<Vec<SpecTerm>>,
}

impl GermSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Validates and builds the exact germ.
    pub fn to_germ(&self) -> Result<MapGerm<Rational>> {
        if self.vars != ["u", "v", "s"] {
            return Err(Error::Spec(format!(
                "vars must be [\"u\",\"v\",\"s\"], got {:?}",
                self.vars
            )));
        }
        if self.order > MAX_ORDER {
            return Err(Error::Spec(format!(
                "order {} exceeds the maximum {MAX_ORDER}",
                self.order
            )));
        }
        if self.components.len() != 3 {
            return Err(Error::Spec(format!(
                "expected 3 components, got {}",
                self.components.len()
            )));
        }
        let mut jets = Vec::with_capacity(3);
        for (ci, comp) in self.components.iter().enumerate() {
            let mut seen = HashSet::new();
            let mut jet = Jet::zero(self.order);
            for (e, num, den) in comp {
                let at = || format!("component {ci}, monomial {e:?}");
                if !seen.insert(*e) {
                    return Err(Error::Spec(format!("{}: duplicate exponent", at())));
                }
                if e[0] == 0 && e[1] == 0 {
                    return Err(Error::Spec(format!(
                        "{}: violates f(0,0,s) = 0",
                        at()
                    )));
                }
                let deg = e[0] + e[1] + e[2];
                if deg > self.order {
                    return Err(Error::Spec(format!(
                        "{}: degree {deg} exceeds order {}",
                        at(),
                        self.order
                    )));
                }
                let c = rational_from_parts(&num.as_text(), &den.as_text()).ok_or_else(|| {
                    Error::Spec(format!("{}: bad coefficient or zero denominator", at()))
                })?;
                jet.set_coeff(*e, c);
            }
            jets.push(jet);
        }
        let z = jets.pop().expect("3 components");
        let y = jets.pop().expect("3 components");
        let x = jets.pop().expect("3 components");
        MapGerm::new(x, y, z)
    }

    pub fn from_germ(g: &MapGerm<Rational>) -> Self {
        let components = g
            .components()
            .iter()
            .map(|c| {
                c.terms()
                    .filter(|(_, v)| !num::Zero::is_zero(*v))
                    .map(|(e, v)| (e, SpecInt::from_bigint(v.numer()), SpecInt::from_bigint(v.denom())))
                    .collect()
            })
            .collect();
        GermSpec {
            vars: vec!["u".into(), "v".into(), "s".into()],
            order: g.order(),
            components,
        }
    }
}
