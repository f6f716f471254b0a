//! 2-jet classes and cuspidal `S_k^±` recognition on normal forms.

use std::fmt;

use crate::error::Result;
use crate::frontal::singular_sets;
use crate::germs::{D2Sign, FrontalNormalForm, NormalFormS1};
use crate::jets::Var;
use crate::scalar::Scalar;

/// The two admissible 2-jet classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoJetClass {
    /// `(u, v^2, 0)`
    Fold,
    /// `(u, v^2, uv)`
    CrossCap,
}

impl fmt::Display for TwoJetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoJetClass::Fold => write!(f, "(u,v^2,0)"),
            TwoJetClass::CrossCap => write!(f, "(u,v^2,uv)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn of(x: f64) -> Self {
        if x > 0.0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LabelKind {
    RegularPoint,
    CuspidalEdge,
    CuspidalCrossCap,
    /// For even `k` the two signs are A-equivalent; `sign_equivalent` records that.
    CuspidalSk {
        k: usize,
        sign: Sign,
        sign_equivalent: bool,
    },
    Unclassified(String),
}

/// A label plus the derivative values that decided it.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityLabel {
    pub kind: LabelKind,
    pub witness: Vec<(String, f64)>,
}

impl SingularityLabel {
    fn new(kind: LabelKind, witness: Vec<(String, f64)>) -> Self {
        SingularityLabel { kind, witness }
    }

    /// Short machine-friendly tag (used in CSV output).
    pub fn code(&self) -> String {
        match &self.kind {
            LabelKind::RegularPoint => "regular".into(),
            LabelKind::CuspidalEdge => "cuspidal_edge".into(),
            LabelKind::CuspidalCrossCap => "cuspidal_cross_cap".into(),
            LabelKind::CuspidalSk { k, sign, .. } => format!("S{k}{}", sign.symbol()),
            LabelKind::Unclassified(_) => "unclassified".into(),
        }
    }
}

impl fmt::Display for SingularityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            LabelKind::RegularPoint => write!(f, "regular point"),
            LabelKind::CuspidalEdge => write!(f, "cuspidal edge"),
            LabelKind::CuspidalCrossCap => write!(f, "cuspidal cross cap"),
            LabelKind::CuspidalSk {
                k,
                sign,
                sign_equivalent,
            } => {
                write!(f, "S_{k}^{}", sign.symbol())?;
                if *sign_equivalent {
                    write!(f, " (k even: S_{k}^+ and S_{k}^- are equivalent)")?;
                }
                Ok(())
            }
            LabelKind::Unclassified(why) => write!(f, "unclassified ({why})"),
        }
    }
}

/// `(u,v^2,uv)`-class iff `(f33)_u(0,0) != 0`.
pub fn two_jet_class<S: Scalar>(nf: &NormalFormS1<S>) -> TwoJetClass {
    if nf.f33.coeff([1, 0, 0]).is_negligible() {
        TwoJetClass::Fold
    } else {
        TwoJetClass::CrossCap
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Label of `f(., ., 0)` at the origin from `c1` and `c3`.
pub fn classify_origin<S: Scalar>(fnf: &FrontalNormalForm<S>) -> SingularityLabel {
    let c1_0 = fnf.c1.constant_term().clone();
    let c3_0 = fnf.c3.constant_term().clone();
    let mut witness = vec![("c1(0,0)".to_string(), c1_0.to_f64())];
    if !c1_0.is_negligible() {
        return SingularityLabel::new(LabelKind::CuspidalEdge, witness);
    }
    witness.push(("c3(0,0,0)".to_string(), c3_0.to_f64()));
    for i in 1..=fnf.c1.order() {
        let coeff = fnf.c1.coeff([i, 0, 0]);
        let value = coeff.to_f64() * factorial(i);
        witness.push((format!("d^{i}c1/du^{i}(0,0)"), value));
        if coeff.is_negligible() {
            continue;
        }
        if c3_0.is_negligible() {
            return SingularityLabel::new(
                LabelKind::Unclassified("c3(0,0,0) = 0".into()),
                witness,
            );
        }
        let k = i - 1;
        let sign = Sign::of(value * c3_0.to_f64());
        let kind = if k == 0 {
            LabelKind::CuspidalCrossCap
        } else {
            LabelKind::CuspidalSk {
                k,
                sign,
                sign_equivalent: k % 2 == 0,
            }
        };
        return SingularityLabel::new(kind, witness);
    }
    SingularityLabel::new(
        LabelKind::Unclassified(format!(
            "all u-derivatives of c1 vanish through order {}",
            fnf.c1.order()
        )),
        witness,
    )
}

/// Label of the point `(u0, v0)` at parameter `s`.
pub fn label_point<S: Scalar>(fnf: &FrontalNormalForm<S>, u0: f64, v0: f64, s: f64) -> SingularityLabel {
    if v0 != 0.0 {
        return SingularityLabel::new(LabelKind::RegularPoint, vec![("v".into(), v0)]);
    }
    if u0 == 0.0 && s == 0.0 {
        return classify_origin(fnf);
    }
    let c1 = fnf.c1.to_f64();
    let val = c1.evaluate_f64([u0, 0.0, s]);
    let scale = 1.0 + u0.abs() + s.abs();
    let witness = vec![
        ("c1(u,s)".to_string(), val),
        ("(c1)_u(u,s)".to_string(), c1.differentiate(Var::U).evaluate_f64([u0, 0.0, s])),
    ];
    if val.abs() > 1e-12 * scale {
        SingularityLabel::new(LabelKind::CuspidalEdge, witness)
    } else {
        SingularityLabel::new(LabelKind::CuspidalCrossCap, witness)
    }
}

/// Labels of the `S2` points at `s = -s_tilde^2` (or `+s_tilde^2` when `d2(0) < 0`).
pub fn label_singular_points<S: Scalar>(
    fnf: &FrontalNormalForm<S>,
    s_tilde: f64,
) -> Result<Vec<(f64, SingularityLabel)>> {
    let e = fnf.expand_c1()?;
    e.require_d20()?;
    let sigma = if e.sign == D2Sign::Positive { 1.0 } else { -1.0 };
    let s = -sigma * s_tilde * s_tilde;
    let roots = singular_sets(fnf, s)?.s2;
    Ok(roots
        .into_iter()
        .map(|u0| (u0, label_point(fnf, u0, 0.0, s)))
        .collect())
}
