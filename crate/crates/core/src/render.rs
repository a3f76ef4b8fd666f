//! Human-readable numbers and matrices.
//!
//! Entries that equal ±p·√r/q within tolerance (q ≤ 12, r ≤ 6) are shown
//! exactly; multiples of ω = e^{2πi/3} and its conjugate are recognized.
//! Everything else falls back to decimals. Display only.

use crate::linalg::{CMatrix, C64};

const MAX_DENOMINATOR: i64 = 12;
const RADICANDS: [i64; 5] = [1, 2, 3, 5, 6];
const MATCH: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Radical {
    negative: bool,
    numerator: i64,
    radicand: i64,
    denominator: i64,
}

impl Radical {
    fn find(x: f64) -> Option<Self> {
        for q in 1..=MAX_DENOMINATOR {
            for r in RADICANDS {
                let p = x * q as f64 / (r as f64).sqrt();
                let k = p.round();
                if k != 0.0 && (p - k).abs() <= MATCH * q as f64 && k.abs() <= 1000.0 {
                    let (num, den) = reduce(k.abs() as i64, q);
                    return Some(Self { negative: k < 0.0, numerator: num, radicand: r, denominator: den });
                }
            }
        }
        None
    }

    /// Renders with an optional unit symbol placed after the numerator.
    fn show(&self, unit: &str) -> String {
        let mut out = String::new();
        if self.negative {
            out.push('-');
        }
        let root = if self.radicand == 1 { String::new() } else { format!("√{}", self.radicand) };
        let head = match (self.numerator, root.is_empty(), unit.is_empty()) {
            (1, true, true) => "1".to_string(),
            (1, _, _) => format!("{root}{unit}"),
            (p, _, _) => format!("{p}{root}{unit}"),
        };
        out += &head;
        if self.denominator > 1 {
            out += &format!("/{}", self.denominator);
        }
        out
    }
}

fn reduce(p: i64, q: i64) -> (i64, i64) {
    let (mut a, mut b) = (p, q);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    (p / a, q / a)
}

fn decimal(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.to_string() }
}

pub fn real_number(x: f64) -> String {
    if x.abs() <= MATCH {
        return "0".into();
    }
    Radical::find(x).map_or_else(|| decimal(x), |r| r.show(""))
}

pub fn complex_number(z: C64) -> String {
    if z.im.abs() <= MATCH {
        return real_number(z.re);
    }
    let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    for (w, sym) in [(omega, "ω"), (omega.conj(), "ω̄")] {
        let k = z / w;
        if k.im.abs() <= MATCH {
            if let Some(r) = Radical::find(k.re) {
                return r.show(sym);
            }
        }
    }
    if z.re.abs() <= MATCH {
        return match Radical::find(z.im) {
            Some(r) => r.show("i"),
            None => format!("{}i", decimal(z.im)),
        };
    }
    let im = real_number(z.im.abs());
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{} {sign} {}i", real_number(z.re), im)
}

/// Largest factor f = S[0][0] such that every entry divided by f is a
/// radical with denominator 1; `None` if there is no such common factor.
fn prefactor(m: &CMatrix) -> Option<f64> {
    let f = m.get((0, 0))?.re;
    if f <= MATCH || m[(0, 0)].im.abs() > MATCH || (f - 1.0).abs() <= MATCH {
        return None;
    }
    let integral = m.iter().all(|z| {
        let x = z / f;
        if x.norm() <= MATCH {
            return true;
        }
        let parts = [x.re, x.im];
        let omega = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let as_omega = [x / omega, x / omega.conj()];
        let plain = parts.iter().all(|&v| v.abs() <= MATCH || Radical::find(v).is_some_and(|r| r.denominator == 1));
        plain
            || as_omega.iter().any(|k| k.im.abs() <= MATCH && Radical::find(k.re).is_some_and(|r| r.denominator == 1))
    });
    integral.then_some(f)
}

/// Markdown table with row and column labels, preceded by a common factor
/// when one exists.
pub fn matrix_markdown(m: &CMatrix, labels: &[String]) -> String {
    let factor = prefactor(m);
    let scale = factor.unwrap_or(1.0);
    let mut out = String::new();
    if let Some(f) = factor {
        out += &format!("Prefactor {}\n\n", real_number(f));
    }
    out += &format!("| | {} |\n|---|{}\n", labels.join(" | "), "---|".repeat(labels.len()));
    for i in 0..m.nrows() {
        let cells: Vec<String> = (0..m.ncols()).map(|j| complex_number(m[(i, j)] / scale)).collect();
        let label = labels.get(i).map_or("", String::as_str);
        out += &format!("| **{label}** | {} |\n", cells.join(" | "));
    }
    out
}

/// Bracketed single-line form such as `1/3·[[1, √2], [√2, -1]]`.
pub fn matrix_inline(m: &CMatrix) -> String {
    let factor = prefactor(m);
    let scale = factor.unwrap_or(1.0);
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| {
            let cells: Vec<String> = (0..m.ncols()).map(|j| complex_number(m[(i, j)] / scale)).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    let body = format!("[{}]", rows.join(", "));
    match factor {
        Some(f) => format!("{}·{body}", real_number(f)),
        None => body,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{from_real_rows, real};

    #[test]
    fn radicals() {
        assert_eq!(real_number(1.0 / 3.0), "1/3");
        assert_eq!(real_number(-2f64.sqrt() / 3.0), "-√2/3");
        assert_eq!(real_number(1.0 / 12f64.sqrt()), "√3/6");
        assert_eq!(real_number(3.0 * 2f64.sqrt()), "3√2");
        assert_eq!(real_number(0.123456789), "0.123457");
        assert_eq!(real_number(1e-15), "0");
    }

    #[test]
    fn omega_multiples() {
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert_eq!(complex_number(w / 3.0), "ω/3");
        assert_eq!(complex_number(-w.conj()), "-ω̄");
        assert_eq!(complex_number(C64::new(0.0, 0.5)), "i/2");
    }

    #[test]
    fn matrix_with_factor() {
        let r = 2f64.sqrt();
        let m = from_real_rows(&[vec![1.0, r], vec![r, -1.0]]) / real(3f64.sqrt());
        assert_eq!(matrix_inline(&m), "√3/3·[[1, √2], [√2, -1]]");
    }
}
