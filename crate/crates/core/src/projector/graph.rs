//! The graph of `f` as a self-affine set: exact samples, the generating
//! affine maps, a box-counting estimator and the Riemann integral.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::format_rational;
use crate::numerals::{Digit, Params};
use crate::rational::{ratio, Rational};

/// Largest number of points [`graph_sample`] will generate.
pub const DEFAULT_SAMPLE_BUDGET: u64 = 1 << 22;

/// Points `(x_num / x_den, y_num / y_den)` sharing two denominators, in
/// increasing order of `x`.
///
/// A graph sample of depth `n` holds `f` at every `k / (r+1)^n`, so
/// `x_den = (r+1)^n` and `y_den = s^n`. Numerators are not reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSample {
    pub x_base: u64,
    pub y_base: u64,
    pub depth: u32,
    pub x_den: u64,
    pub y_den: u64,
    pub points: Vec<(u64, u64)>,
}

impl GraphSample {
    /// A sample from explicit numerators over `x_base^depth` and
    /// `y_base^depth`. Points are sorted by `x` and deduplicated by `x`.
    pub fn from_points(
        x_base: u64,
        y_base: u64,
        depth: u32,
        mut points: Vec<(u64, u64)>,
    ) -> Result<Self> {
        if x_base < 2 || y_base < 2 {
            return Err(Error::Usage("sample bases must be at least 2".into()));
        }
        let too_deep = || Error::Budget(format!("depth {depth} overflows the sample denominators"));
        let x_den = x_base.checked_pow(depth).ok_or_else(too_deep)?;
        let y_den = y_base.checked_pow(depth).ok_or_else(too_deep)?;
        points.sort_unstable();
        points.dedup_by_key(|p| p.0);
        Ok(GraphSample {
            x_base,
            y_base,
            depth,
            x_den,
            y_den,
            points,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> (Rational, Rational) {
        let (xn, yn) = self.points[i];
        (
            Rational::new(xn.into(), self.x_den.into()),
            Rational::new(yn.into(), self.y_den.into()),
        )
    }

    pub fn exact_points(&self) -> impl Iterator<Item = (Rational, Rational)> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    /// One line per point, `x_num,x_den,y_num,y_den` in lowest terms, after
    /// a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x_num,x_den,y_num,y_den\n");
        for (x, y) in self.exact_points() {
            let _ = writeln!(out, "{},{},{},{}", x.numer(), x.denom(), y.numer(), y.denom());
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let points: Vec<Value> = self
            .exact_points()
            .map(|(x, y)| json!({ "x": format_rational(&x), "y": format_rational(&y) }))
            .collect();
        json!({ "depth": self.depth, "count": self.len(), "points": points })
    }
}

/// `f` at every `k / (r+1)^n`, `0 <= k < (r+1)^n`.
pub fn graph_sample(params: Params, n: u32) -> Result<GraphSample> {
    graph_sample_with_budget(params, n, DEFAULT_SAMPLE_BUDGET)
}

pub fn graph_sample_with_budget(params: Params, n: u32, budget: u64) -> Result<GraphSample> {
    let b = params.wide_base() as u64;
    let s = params.s() as u64;
    match b.checked_pow(n) {
        Some(count) if count <= budget => {}
        _ => {
            return Err(Error::Budget(format!(
                "sample of depth {n} needs {b}^{n} points, budget is {budget}"
            )))
        }
    }
    // word w·d has x numerator x·b + d and y numerator y·s + d
    let mut points = vec![(0u64, 0u64)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(points.len() * b as usize);
        for &(x, y) in &points {
            for d in 0..b {
                next.push((x * b + d, y * s + d));
            }
        }
        points = next;
    }
    Ok(GraphSample {
        x_base: b,
        y_base: s,
        depth: n,
        x_den: b.pow(n),
        y_den: s.pow(n),
        points,
    })
}

/// `(x, y) -> ((i + x)/(r+1), (i + y)/s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IfsMap {
    pub index: Digit,
    pub x_scale: Rational,
    pub x_offset: Rational,
    pub y_scale: Rational,
    pub y_offset: Rational,
}

impl IfsMap {
    pub fn apply(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        (
            &self.x_scale * x + &self.x_offset,
            &self.y_scale * y + &self.y_offset,
        )
    }

    /// Image of sample point `j` as numerators over the next depth's
    /// denominators. Requires a graph sample of `params`.
    pub fn apply_to_sample(&self, sample: &GraphSample, j: usize) -> (u64, u64) {
        let (x, y) = sample.points[j];
        let i = self.index as u64;
        (i * sample.x_den + x, i * sample.y_den + y)
    }

    pub fn to_json(&self) -> Value {
        let zero = "0/1";
        json!({
            "index": self.index,
            "matrix": [
                [format_rational(&self.x_scale), zero],
                [zero, format_rational(&self.y_scale)],
            ],
            "offset": [format_rational(&self.x_offset), format_rational(&self.y_offset)],
        })
    }
}

/// The `r+1` maps whose attractor is the graph of `f`.
pub fn ifs_maps(params: Params) -> Vec<IfsMap> {
    let b = params.wide_base() as i64;
    let s = params.s() as i64;
    (0..=params.r())
        .map(|i| IfsMap {
            index: i,
            x_scale: ratio(1, b),
            x_offset: ratio(i as i64, b),
            y_scale: ratio(1, s),
            y_offset: ratio(i as i64, s),
        })
        .collect()
}

/// Occupied boxes at one grid exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxCount {
    pub k: u32,
    /// Geometric mean side `(x_base y_base)^(-k/2)` of a box.
    pub scale: f64,
    pub count: u64,
    /// `ln(count / previous count) / ln(previous scale / scale)`.
    pub slope: Option<f64>,
}

/// Counts boxes `x_base^-k` wide and `y_base^-k` tall that contain a sample
/// point, for each grid exponent in increasing order.
///
/// A heuristic: for the graph of `f` the slopes approach the self-affine
/// dimension only loosely.
pub fn box_count_estimate(sample: &GraphSample, grid_exponents: &[u32]) -> Result<Vec<BoxCount>> {
    let mut ks = grid_exponents.to_vec();
    ks.sort_unstable();
    ks.dedup();
    if let Some(&k) = ks.iter().find(|&&k| k > sample.depth) {
        return Err(Error::Usage(format!(
            "grid exponent {k} needs a sample of depth at least {k}, got {}",
            sample.depth
        )));
    }
    let log_step = 0.5 * ((sample.x_base as f64) * (sample.y_base as f64)).ln();
    let mut out: Vec<BoxCount> = Vec::with_capacity(ks.len());
    for k in ks {
        let x_div = sample.x_base.pow(sample.depth - k);
        let y_div = sample.y_base.pow(sample.depth - k);
        let count = occupied(sample, x_div, y_div);
        let slope = out.last().map(|prev: &BoxCount| {
            (count as f64 / prev.count as f64).ln() / ((k - prev.k) as f64 * log_step)
        });
        out.push(BoxCount {
            k,
            scale: (-(k as f64) * log_step).exp(),
            count,
            slope,
        });
    }
    Ok(out)
}

fn occupied(sample: &GraphSample, x_div: u64, y_div: u64) -> u64 {
    let mut count = 0;
    let mut rows: Vec<u64> = Vec::new();
    // points are sorted by x, so each column is one contiguous run
    for column in sample.points.chunk_by(|a, b| a.0 / x_div == b.0 / x_div) {
        rows.clear();
        rows.extend(column.iter().map(|p| p.1 / y_div));
        rows.sort_unstable();
        rows.dedup();
        count += rows.len() as u64;
    }
    count
}

/// Left Riemann sum of `f` on the grid of step `(r+1)^-n`.
pub fn integral_estimate(params: Params, n: u32) -> Result<Rational> {
    let sample = graph_sample(params, n)?;
    let total: u128 = sample.points.iter().map(|p| p.1 as u128).sum();
    Ok(Rational::new(
        BigInt::from(total),
        BigInt::from(sample.x_den) * BigInt::from(sample.y_den),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projector::{f_eval, integral_exact};
    use crate::rational::{int, pow};
    use proptest::prelude::*;

    fn p(s: u32, r: u32) -> Params {
        Params::new(s, r).unwrap()
    }

    /// `(r/2) (1 - s^-n) / (s-1)`, the left sum written out.
    fn integral_estimate_closed_form(params: Params, n: u32) -> Rational {
        let s = params.s() as u64;
        int(params.r() as i64) * (int(1) - int(1) / pow(s, n)) / int(2 * (s as i64 - 1))
    }

    #[test]
    fn depth_one_sample() {
        let g = graph_sample(p(2, 3), 1).unwrap();
        let pts: Vec<_> = g.exact_points().collect();
        assert_eq!(
            pts,
            vec![
                (int(0), int(0)),
                (ratio(1, 4), ratio(1, 2)),
                (ratio(1, 2), int(1)),
                (ratio(3, 4), ratio(3, 2)),
            ]
        );
        let g0 = graph_sample(p(2, 3), 0).unwrap();
        assert_eq!(g0.exact_points().collect::<Vec<_>>(), vec![(int(0), int(0))]);
    }

    #[test]
    fn sample_points_lie_on_the_graph() {
        for params in [p(2, 3), p(3, 4), p(2, 2)] {
            let g = graph_sample(params, 3).unwrap();
            assert_eq!(g.len() as u64, (params.wide_base() as u64).pow(3));
            for (x, y) in g.exact_points() {
                assert_eq!(f_eval(&x, params).unwrap(), y);
            }
        }
    }

    #[test]
    fn sample_budget() {
        assert!(matches!(
            graph_sample_with_budget(p(2, 3), 5, 1000),
            Err(Error::Budget(_))
        ));
        assert!(graph_sample_with_budget(p(2, 3), 5, 1024).is_ok());
        assert!(matches!(graph_sample(p(2, 3), 40), Err(Error::Budget(_))));
    }

    #[test]
    fn map_two_of_four() {
        let maps = ifs_maps(p(2, 3));
        assert_eq!(maps.len(), 4);
        let (x, y) = maps[2].apply(&ratio(1, 3), &int(1));
        assert_eq!(x, ratio(1, 12) + ratio(1, 2));
        assert_eq!(y, ratio(1, 2) + int(1));
    }

    #[test]
    fn maps_keep_the_box() {
        let params = p(3, 5);
        let corners = [
            (int(0), int(0)),
            (int(1), int(0)),
            (int(0), params.x_max()),
            (int(1), params.x_max()),
        ];
        for m in ifs_maps(params) {
            for (x, y) in &corners {
                let (u, v) = m.apply(x, y);
                assert!(u >= int(0) && u <= int(1));
                assert!(v >= int(0) && v <= params.x_max());
            }
        }
    }

    #[test]
    fn images_are_graph_points() {
        let params = p(2, 3);
        let g = graph_sample(params, 3).unwrap();
        for m in ifs_maps(params) {
            for (x, y) in g.exact_points() {
                let (u, v) = m.apply(&x, &y);
                assert_eq!(f_eval(&u, params).unwrap(), v);
            }
        }
    }

    #[test]
    fn straight_line_has_slope_one() {
        let n = 10;
        let points = (0..1u64 << n).map(|k| (k, k)).collect();
        let line = GraphSample::from_points(2, 2, n, points).unwrap();
        let counts = box_count_estimate(&line, &[2, 4, 6, 8]).unwrap();
        for c in &counts[1..] {
            assert!((c.slope.unwrap() - 1.0).abs() < 1e-9);
        }
        assert_eq!(counts[0].count, 4);
    }

    #[test]
    fn box_counts_grow_with_depth() {
        let params = p(2, 3);
        let shallow = graph_sample(params, 5).unwrap();
        let deep = graph_sample(params, 10).unwrap();
        let ks = [1, 2, 3, 4, 5];
        let a = box_count_estimate(&shallow, &ks).unwrap();
        let b = box_count_estimate(&deep, &ks).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(y.count >= x.count);
        }
    }

    #[test]
    fn box_count_needs_depth() {
        let g = graph_sample(p(2, 3), 3).unwrap();
        assert!(box_count_estimate(&g, &[2, 4]).is_err());
    }

    #[test]
    fn csv_form() {
        let g = graph_sample(p(2, 3), 1).unwrap();
        assert_eq!(
            g.to_csv(),
            "x_num,x_den,y_num,y_den\n0,1,0,1\n1,4,1,2\n1,2,1,1\n3,4,3,2\n"
        );
    }

    #[test]
    fn riemann_sums() {
        let params = p(2, 3);
        for n in 0..8 {
            assert_eq!(
                integral_estimate(params, n).unwrap(),
                integral_estimate_closed_form(params, n)
            );
        }
        let e = integral_estimate(params, 10).unwrap();
        let err = integral_exact(params) - e;
        assert!(err > int(0) && err < ratio(1, 100));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn riemann_matches_closed_form(s in 2u32..5, extra in 0u32..3, n in 0u32..5) {
            let params = p(s, s + extra);
            prop_assert_eq!(
                integral_estimate(params, n).unwrap(),
                integral_estimate_closed_form(params, n)
            );
        }
    }
}
