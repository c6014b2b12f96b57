use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MultiplierSymbol;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyParams {
    /// Number of unit directions sampled; must be even so that `±v` pairs
    /// are present.
    pub direction_count: usize,
    /// Scales `t = 2^{-j}` for `j = 1..=scale_depth`.
    pub scale_depth: u32,
    pub tol: f64,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        ClassifyParams {
            direction_count: 16,
            scale_depth: 40,
            tol: 1e-3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadialCase {
    /// Every sampled direction has a radial limit.
    StarCondition,
    /// Two accumulation values, each shared by `m(a)` and `m(-a)`.
    IIa,
    /// Accumulation values of `m(a)` and `m(-a)` differ.
    IIb,
    Inconclusive,
}

/// Outcome of [`classify_radial`].
///
/// For `StarCondition` the `omega` table holds the radial limit per
/// direction; for `IIa`/`IIb` the witness fields describe the accumulation
/// sequence `a^n = 2^{-j} v` (`j` from `sequence_exponents`) along which
/// `m(a^n) → limit_a` and, for IIa, the complementary exponents along which
/// the value tends to `limit_b`; for IIb `limit_b` is the limit of `m(-a^n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialClassification {
    pub case: RadialCase,
    pub omega: Vec<OmegaSample>,
    /// Set when the radial limits are not constant (a degree-zero
    /// homogeneous profile other than a constant).
    pub nonconstant_limit: bool,
    pub direction: Option<[f64; 2]>,
    pub limit_a: Option<f64>,
    pub limit_b: Option<f64>,
    pub sequence_exponents: Vec<u32>,
    pub complementary_exponents: Vec<u32>,
    pub skipped_directions: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaSample {
    pub direction: [f64; 2],
    pub value: f64,
}

struct Ray {
    v: [f64; 2],
    /// `(j, m(2^{-j} v))` on the tail half of the scales.
    tail: Vec<(u32, f64)>,
}

impl Ray {
    fn range(&self) -> f64 {
        let (lo, hi) = self
            .tail
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), (_, v)| (l.min(*v), h.max(*v)));
        hi - lo
    }
}

fn sample_ray(symbol: &MultiplierSymbol, v: [f64; 2], depth: u32) -> Option<Ray> {
    let first = (depth / 2).max(1);
    let mut tail = Vec::new();
    for j in first..=depth {
        let t = 0.5f64.powi(j as i32);
        let (x, y) = (t * v[0], t * v[1]);
        if symbol.is_singular(x, y) {
            return None;
        }
        let m = symbol.eval(x, y);
        if !m.is_finite() {
            return None;
        }
        tail.push((j, m));
    }
    Some(ray_or_none(v, tail))
}

fn ray_or_none(v: [f64; 2], tail: Vec<(u32, f64)>) -> Ray {
    Ray { v, tail }
}

/// Splits sorted values into clusters separated by gaps larger than `gap`;
/// each cluster is `(min, max, members)`.
fn clusters_1d(values: &[f64], gap: f64) -> Vec<(f64, f64, usize)> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, f64, usize)> = Vec::new();
    for x in v {
        match out.last_mut() {
            Some(c) if x - c.1 <= gap => {
                c.1 = x;
                c.2 += 1;
            }
            _ => out.push((x, x, 1)),
        }
    }
    out
}

/// Detects radial limits or accumulation patterns of `m` at the origin by
/// dyadic sampling along `direction_count` rays.
pub fn classify_radial(symbol: &MultiplierSymbol, params: &ClassifyParams) -> RadialClassification {
    let count = params.direction_count.max(2) & !1;
    let tol = params.tol;
    let gap = 10.0 * tol;
    let rays: Vec<Option<Ray>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let a = TAU * i as f64 / count as f64;
            let v = [clean(a.cos()), clean(a.sin())];
            sample_ray(symbol, v, params.scale_depth)
        })
        .collect();
    let skipped = rays.iter().filter(|r| r.is_none()).count();
    let mut result = RadialClassification {
        case: RadialCase::Inconclusive,
        omega: Vec::new(),
        nonconstant_limit: false,
        direction: None,
        limit_a: None,
        limit_b: None,
        sequence_exponents: Vec::new(),
        complementary_exponents: Vec::new(),
        skipped_directions: skipped,
    };
    let usable: Vec<&Ray> = rays.iter().flatten().collect();
    if usable.is_empty() {
        return result;
    }

    if usable.iter().all(|r| r.range() <= tol) {
        result.case = RadialCase::StarCondition;
        result.omega = usable
            .iter()
            .map(|r| OmegaSample {
                direction: r.v,
                value: r.tail.last().expect("nonempty tail").1,
            })
            .collect();
        let vals: Vec<f64> = result.omega.iter().map(|o| o.value).collect();
        let spread = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - vals.iter().cloned().fold(f64::INFINITY, f64::min);
        result.nonconstant_limit = spread > gap;
        return result;
    }

    // Pair each ray with its antipode.
    let half = count / 2;
    let pairs: Vec<(&Ray, &Ray)> = (0..half)
        .filter_map(|i| match (&rays[i], &rays[i + half]) {
            (Some(p), Some(n)) => Some((p, n)),
            _ => None,
        })
        .collect();

    // Symmetric oscillation.
    let mut best: Option<(f64, usize, f64, f64)> = None;
    for (idx, (p, n)) in pairs.iter().enumerate() {
        let symmetric = p
            .tail
            .iter()
            .zip(&n.tail)
            .all(|(a, b)| (a.1 - b.1).abs() <= tol);
        if !symmetric {
            continue;
        }
        let vals: Vec<f64> = p.tail.iter().map(|t| t.1).collect();
        let cl = clusters_1d(&vals, gap);
        // Every value must recur: isolated samples mean the sequence has not
        // settled onto finitely many accumulation values.
        if cl.len() < 2 || cl.iter().any(|c| c.2 < 2) {
            continue;
        }
        let a = cl.last().expect("two clusters").1;
        let b = cl[0].0;
        if best.is_none_or(|bst| a - b > bst.0) {
            best = Some((a - b, idx, a, b));
        }
    }
    if let Some((_, idx, a, b)) = best {
        let (p, _) = pairs[idx];
        result.case = RadialCase::IIa;
        result.direction = Some(p.v);
        result.limit_a = Some(a);
        result.limit_b = Some(b);
        result.sequence_exponents = p.tail.iter().filter(|t| (t.1 - a).abs() <= gap).map(|t| t.0).collect();
        result.complementary_exponents =
            p.tail.iter().filter(|t| (t.1 - b).abs() <= gap).map(|t| t.0).collect();
        return result;
    }

    // Asymmetric pattern: cluster (m(a_j), m(-a_j)) in the plane.
    let mut best: Option<(f64, f64, usize, f64, f64, Vec<u32>)> = None;
    for (idx, (p, n)) in pairs.iter().enumerate() {
        let mut cls: Vec<([f64; 2], Vec<u32>)> = Vec::new();
        for (a, b) in p.tail.iter().zip(&n.tail) {
            let pt = [a.1, b.1];
            match cls
                .iter_mut()
                .find(|c| (c.0[0] - pt[0]).abs() <= gap && (c.0[1] - pt[1]).abs() <= gap)
            {
                Some(c) => c.1.push(a.0),
                None => cls.push((pt, vec![a.0])),
            }
        }
        // A genuine accumulation pattern needs every cluster to recur.
        if cls.iter().any(|c| c.1.len() < 2) {
            continue;
        }
        for (pt, js) in cls {
            let d = (pt[0] - pt[1]).abs();
            if d <= gap {
                continue;
            }
            let better = match &best {
                None => true,
                Some(bst) => d > bst.0 + tol || ((d - bst.0).abs() <= tol && pt[0] > bst.1 + tol),
            };
            if better {
                best = Some((d, pt[0], idx, pt[0], pt[1], js));
            }
        }
    }
    if let Some((_, _, idx, a, b, js)) = best {
        let (p, _) = pairs[idx];
        result.case = RadialCase::IIb;
        result.direction = Some(p.v);
        result.limit_a = Some(a);
        result.limit_b = Some(b);
        result.sequence_exponents = js;
    }
    result
}

/// Snaps `cos`/`sin` round-off at multiples of `π/2` to exact values.
fn clean(v: f64) -> f64 {
    if v.abs() < 1e-15 {
        0.0
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::by_id;

    #[test]
    fn gaussian_has_constant_limit() {
        let c = classify_radial(&by_id("gaussian").unwrap(), &ClassifyParams::default());
        assert_eq!(c.case, RadialCase::StarCondition);
        assert!(!c.nonconstant_limit);
        assert!(c.omega.iter().all(|o| (o.value - 1.0).abs() < 1e-3));
    }

    #[test]
    fn riesz_is_flagged() {
        let c = classify_radial(&by_id("riesz").unwrap(), &ClassifyParams::default());
        assert_eq!(c.case, RadialCase::StarCondition);
        assert!(c.nonconstant_limit);
        for o in &c.omega {
            assert!((o.value - o.direction[0]).abs() < 1e-9);
        }
    }

    #[test]
    fn dyadic_cos_is_symmetric_case() {
        let c = classify_radial(&by_id("dyadic-cos").unwrap(), &ClassifyParams::default());
        assert_eq!(c.case, RadialCase::IIa);
        assert_eq!(c.direction, Some([1.0, 0.0]));
        assert!((c.limit_a.unwrap() - 1.0).abs() < 1e-9);
        assert!((c.limit_b.unwrap() + 1.0).abs() < 1e-9);
        assert!(c.sequence_exponents.iter().all(|j| j % 2 == 0));
        assert!(c.skipped_directions >= 2);
    }

    #[test]
    fn dyadic_step_is_asymmetric_case() {
        let c = classify_radial(&by_id("dyadic-step").unwrap(), &ClassifyParams::default());
        assert_eq!(c.case, RadialCase::IIb);
        assert_eq!(c.direction, Some([1.0, 0.0]));
        assert!((c.limit_a.unwrap() - 1.0).abs() < 1e-9);
        assert!(c.limit_b.unwrap().abs() < 1e-9);
        assert!(c.sequence_exponents.iter().all(|j| j % 2 == 0));
    }

    #[test]
    fn undecidable_oscillation_is_inconclusive() {
        // sin(log2|x|) never settles and never repeats exactly on the dyadic
        // grid, so no finite clustering applies.
        let m = MultiplierSymbol::from_expression("sin(log2(|x|)) * (1 + 0*y)").unwrap();
        let c = classify_radial(&m, &ClassifyParams::default());
        assert_eq!(c.case, RadialCase::Inconclusive);
    }
}
