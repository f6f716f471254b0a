use crate::error::{Error, Result};
use crate::jets::{Exp, Jet, Var, DEFAULT_ORDER};
use crate::scalar::{Rational, Scalar};

use super::{MapGerm, NormalFormS1};

/// Names accepted by [`builtin`]; `{k}` is a positive integer, `{±}` an optional sign.
pub fn builtin_names() -> &'static [&'static str] {
    &[
        "fs_plus",
        "fs_minus",
        "example32",
        "cusp:S{k}{±} (k >= 0)",
        "mond:S0",
        "mond:S{k}{±}",
        "mond:B{k}{±}",
        "mond:C{k}{±}",
        "mond:F4",
        "mond_def:S{k}{±}",
        "mond_def:B{k}{±}",
        "mond_def:C{k}{±}",
        "mond_def:F4",
        "mond_def:F4_printed",
    ]
}

/// `z`-terms of each family; `x = u`, `y = v^2` throughout except `example32`.
fn z_terms(name: &str) -> Result<Vec<(Exp, i64)>> {
    let unknown = || Error::UnknownName(name.to_string());
    let deform = [([0, 1, 1], 1), ([0, 3, 1], 1)];
    let terms = match name {
        "fs_plus" => vec![([2, 3, 0], 1), ([0, 5, 0], 1), ([0, 3, 1], 1)],
        "fs_minus" => vec![([2, 3, 0], 1), ([0, 5, 0], -1), ([0, 3, 1], 1)],
        "mond:S0" => vec![([1, 1, 0], 1)],
        "mond:F4" => vec![([3, 1, 0], 1), ([0, 5, 0], 1)],
        "mond_def:F4" => {
            let mut t = vec![([3, 1, 0], 1), ([0, 5, 0], 1)];
            t.extend(deform);
            t
        }
        "mond_def:F4_printed" => {
            let mut t = vec![([3, 1, 0], 1), ([0, 6, 0], 1)];
            t.extend(deform);
            t
        }
        _ => {
            let (family, rest) = name.split_once(':').ok_or_else(unknown)?;
            let (letter, rest) = rest.split_at(rest.len().min(1));
            let (digits, sign) = match rest.strip_suffix('+') {
                Some(d) => (d, 1),
                None => match rest.strip_suffix('-') {
                    Some(d) => (d, -1),
                    None => (rest, 1),
                },
            };
            let k: usize = digits.parse().map_err(|_| unknown())?;
            if (k == 0 && family != "cusp") || k > 30 {
                return Err(unknown());
            }
            let mut t = match (family, letter) {
                ("cusp", "S") => vec![([k + 1, 3, 0], 1), ([0, 5, 0], sign)],
                ("mond" | "mond_def", "S") => vec![([0, 3, 0], 1), ([k + 1, 1, 0], sign)],
                ("mond" | "mond_def", "B") => vec![([2, 1, 0], 1), ([0, 2 * k + 1, 0], sign)],
                ("mond" | "mond_def", "C") => vec![([1, 3, 0], 1), ([k, 1, 0], sign)],
                _ => return Err(unknown()),
            };
            match family {
                "mond_def" => t.extend(deform),
                "cusp" => t.push(([0, 3, 1], 1)),
                _ => {}
            }
            t
        }
    };
    Ok(terms)
}

/// Named germ from the built-in catalogue at truncation order `order`.
pub fn builtin(name: &str, order: usize) -> Result<MapGerm<Rational>> {
    let order = if order == 0 { DEFAULT_ORDER } else { order };
    if name == "example32" {
        let y = Jet::from_int_terms(order, &[([2, 0, 0], 1), ([0, 2, 0], 1)]);
        let z = Jet::from_int_terms(
            order,
            &[
                ([2, 0, 0], 1),
                ([0, 3, 1], 1),
                ([2, 3, 0], 1),
                ([0, 5, 0], 1),
                ([0, 7, 0], 1),
                ([0, 1, 1], 1),
                ([2, 1, 0], 1),
            ],
        );
        return MapGerm::new(Jet::var(Var::U, order), y, z);
    }
    let terms = z_terms(name)?;
    if let Some(d) = terms.iter().map(|(e, _)| e[0] + e[1] + e[2]).max() {
        if d > order {
            return Err(Error::OrderTooLow { order, required: d });
        }
    }
    MapGerm::new(
        Jet::var(Var::U, order),
        Jet::monomial([0, 2, 0], Rational::from_i64(1), order),
        Jet::from_int_terms(order, &terms),
    )
}

/// Builtin germs are already in normal shape; this just reads the coefficients off.
pub fn builtin_normal_form(name: &str, order: usize) -> Result<NormalFormS1<Rational>> {
    NormalFormS1::read_off(&builtin(name, order)?)
}
