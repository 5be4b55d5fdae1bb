//! Canonical text forms. The output is accepted back by the expression
//! parser of the command-line tool.

use num_traits::{One, Signed};

use crate::exactnum::{fmt_rational, HPoly};

/// Renders `sum c_k hbar^k * key` over the given `(key, coefficient)` pairs.
///
/// The pairs are emitted in the given order, each coefficient split into its
/// powers of `hbar` in increasing order. An empty key stands for the unit.
pub fn render_terms(items: impl IntoIterator<Item = (String, HPoly)>) -> String {
    let mut out = String::new();
    for (key, poly) in items {
        for (k, c) in poly.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() {
                factors.push(fmt_rational(&mag));
            }
            match k {
                0 => {}
                1 => factors.push("hbar".into()),
                _ => factors.push(format!("hbar^{k}")),
            }
            if !key.is_empty() {
                factors.push(key.clone());
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            out.push_str(&factors.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Joins letter names into a product, `""` for the unit.
pub fn render_product<'a>(names: impl IntoIterator<Item = &'a str>) -> String {
    names.into_iter().collect::<Vec<_>>().join("*")
}

/// Renders the slots of a pure tensor; composite slots are parenthesised and
/// the unit is written `1`.
pub fn render_slots(slots: impl IntoIterator<Item = String>) -> String {
    slots
        .into_iter()
        .map(|s| {
            if s.is_empty() {
                "1".to_string()
            } else if s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        })
        .collect::<Vec<_>>()
        .join(" (x) ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn formats() {
        let items = vec![
            ("".to_string(), HPoly::constant(rat(-1, 2))),
            ("f*e".to_string(), &HPoly::one() + &HPoly::monomial(2, rat(3, 1))),
        ];
        assert_eq!(render_terms(items), "-(1/2) + f*e + 3*hbar^2*f*e");
        assert_eq!(render_terms(Vec::new()), "0");
        assert_eq!(render_slots(vec!["f*e".into(), "".into(), "h".into()]), "(f*e) (x) 1 (x) h");
    }
}
