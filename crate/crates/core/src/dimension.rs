//! Closed-form dimension values.
//!
//! Each value is a ratio of logarithms of integers, `ln(num) / ln(den)`,
//! kept symbolically so that cases like `ln 16 / ln 8 = 4/3` can be reduced
//! exactly instead of compared as floats.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numerals::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LogRatio {
    pub num: u64,
    pub den: u64,
}

impl LogRatio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den < 2 {
            return Err(Error::Usage(format!("ln({num})/ln({den}) is undefined")));
        }
        Ok(LogRatio { num, den })
    }

    pub fn value(&self) -> f64 {
        (self.num as f64).ln() / (self.den as f64).ln()
    }

    /// `(a, b)` in lowest terms with `ln(num)/ln(den) = a/b`, when both
    /// arguments are powers of one integer.
    pub fn as_fraction(&self) -> Option<(u32, u32)> {
        if self.num == 1 {
            return Some((0, 1));
        }
        let (root_n, exp_n) = primitive_root(self.num);
        let (root_d, exp_d) = primitive_root(self.den);
        if root_n != root_d {
            return None;
        }
        let g = gcd(exp_n, exp_d);
        Some((exp_n / g, exp_d / g))
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "value": self.value(),
            "formula": { "num_args": [self.num], "den_args": [self.den] },
        });
        if let Some((a, b)) = self.as_fraction() {
            out["exact"] = json!(format!("{a}/{b}"));
        }
        out
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(g, k)` with `n = g^k` and `k` maximal.
fn primitive_root(n: u64) -> (u64, u32) {
    let max_k = 63 - n.leading_zeros();
    for k in (2..=max_k).rev() {
        let g = (n as f64).powf(1.0 / k as f64).round() as u64;
        for cand in g.saturating_sub(1)..=g + 1 {
            if cand >= 2 && cand.checked_pow(k) == Some(n) {
                return (cand, k);
            }
        }
    }
    (n, 1)
}

/// Self-affine dimension of the graph of the digit projection,
/// `2 ln(r+1) / ln((r+1) s)`, the root of `(r+1) ((r+1) s)^(-x/2) = 1`.
pub fn self_affine_dimension(params: Params) -> LogRatio {
    let b = params.wide_base() as u64;
    LogRatio {
        num: b * b,
        den: b * params.s() as u64,
    }
}

/// Dimension `ln(2s-r-1)/ln s` of the set of numbers with a unique
/// representation; only meaningful for `r < 2s-1`.
pub fn unique_set_dimension(params: Params) -> Result<LogRatio> {
    let (s, r) = (params.s() as u64, params.r() as u64);
    if r >= 2 * s - 1 {
        return Err(Error::Regime(format!(
            "unique-representation dimension needs r < 2s-1, got s={s} r={r}"
        )));
    }
    LogRatio::new(2 * s - r - 1, s)
}

/// Dimension `ln 2 / (2 ln s)` of the Cantor-type subset spanned by one
/// interchangeable pair inside a level set.
pub fn cantor_levelset_dimension(params: Params) -> LogRatio {
    let s = params.s() as u64;
    LogRatio { num: 2, den: s * s }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: u32, r: u32) -> Params {
        Params::new(s, r).unwrap()
    }

    #[test]
    fn self_affine_values() {
        let d = self_affine_dimension(p(2, 3));
        assert_eq!(d.as_fraction(), Some((4, 3)));
        assert!((d.value() - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(self_affine_dimension(p(3, 8)).as_fraction(), Some((4, 3)));
        assert_eq!(self_affine_dimension(p(3, 4)).as_fraction(), None);
    }

    #[test]
    fn unique_set_values() {
        let d = unique_set_dimension(p(3, 3)).unwrap();
        assert_eq!((d.num, d.den), (2, 3));
        assert!((d.value() - 0.63093).abs() < 1e-5);
        assert_eq!(unique_set_dimension(p(2, 2)).unwrap().value(), 0.0);
        assert!(matches!(unique_set_dimension(p(2, 3)), Err(Error::Regime(_))));
    }

    #[test]
    fn cantor_values() {
        assert_eq!(cantor_levelset_dimension(p(2, 5)).as_fraction(), Some((1, 2)));
        assert!((cantor_levelset_dimension(p(3, 3)).value() - 0.3155).abs() < 1e-4);
        assert_eq!(cantor_levelset_dimension(p(4, 4)).as_fraction(), Some((1, 4)));
    }

    #[test]
    fn roots() {
        assert_eq!(primitive_root(64), (2, 6));
        assert_eq!(primitive_root(81), (3, 4));
        assert_eq!(primitive_root(12), (12, 1));
        assert_eq!(primitive_root(2), (2, 1));
    }
}
