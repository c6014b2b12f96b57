use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{inv_pow2, rational_to_f64, LacunaryScheme, SchemeCase};
use crate::symbol::MultiplierSymbol;

/// Report keys. `D_printed` and `I_printed` are the literal readings of the
/// two conditions whose index orientation conflicts with the rest of the
/// list; they are reported but do not enter [`VerificationReport::all_passed`].
pub const CONDITION_KEYS: [&str; 11] = [
    "A", "B", "C", "D", "D_printed", "E", "F", "G", "H", "I", "I_printed",
];

/// Samples per ring and rings per ball for the symbol condition.
const A_ANGLES: usize = 24;
const A_RINGS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionOutcome {
    pub passed: bool,
    /// 1-based index `n` of the first violation.
    pub first_violation: Option<usize>,
    /// Whether the condition takes part in the overall verdict.
    pub operative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub conditions: BTreeMap<String, ConditionOutcome>,
}

impl VerificationReport {
    pub fn get(&self, key: &str) -> Option<&ConditionOutcome> {
        self.conditions.get(key)
    }

    pub fn passed(&self, key: &str) -> bool {
        self.get(key).is_some_and(|c| c.passed)
    }

    /// All operative conditions hold.
    pub fn all_passed(&self) -> bool {
        self.conditions.values().filter(|c| c.operative).all(|c| c.passed)
    }

    /// Keys of failing operative conditions, in key order.
    pub fn failing(&self) -> Vec<&str> {
        self.conditions
            .iter()
            .filter(|(_, c)| c.operative && !c.passed)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    fn put(&mut self, key: &str, first_violation: Option<usize>, operative: bool) {
        self.conditions.insert(
            key.to_string(),
            ConditionOutcome {
                passed: first_violation.is_none(),
                first_violation,
                operative,
            },
        );
    }
}

fn norm_sq(p: &[BigRational; 2]) -> BigRational {
    &p[0] * &p[0] + &p[1] * &p[1]
}

fn first<I: IntoIterator<Item = (usize, bool)>>(it: I) -> Option<usize> {
    it.into_iter().find(|(_, ok)| !ok).map(|(n, _)| n)
}

/// Every condition except the symbol condition `A`/`A′`, in exact arithmetic.
pub fn verify_geometry(scheme: &LacunaryScheme) -> VerificationReport {
    let mut rep = VerificationReport {
        conditions: BTreeMap::new(),
    };
    let s = scheme.s;
    let c = scheme.exact_centers();
    let r = &scheme.radii;
    let k2 = inv_pow2(scheme.n_sep);
    let k4 = &k2 * &k2;
    let csq: Vec<BigRational> = c.iter().map(norm_sq).collect();
    let rsq: Vec<BigRational> = r.iter().map(|x| x * x).collect();

    // B: r_n ≤ 2^{-N} r_{n+1}.
    rep.put("B", first((1..s).map(|n| (n, r[n - 1] <= &k2 * &r[n]))), true);

    // C: exact rational coordinates.
    rep.put(
        "C",
        first(
            scheme
                .centers
                .iter()
                .enumerate()
                .map(|(i, p)| (i + 1, p[0].is_exact() && p[1].is_exact())),
        ),
        true,
    );

    // D, operative orientation: |c^n| < 2^{-N} r_{n+1}.
    rep.put("D", first((1..s).map(|n| (n, csq[n - 1] < &k4 * &rsq[n]))), true);
    // D as literally printed: |c^{n+1}| < 2^{-N} r_n.
    rep.put("D_printed", first((1..s).map(|n| (n, csq[n] < &k4 * &rsq[n - 1]))), false);

    // E: |c_2| / |c_1| ≤ 1/(3^{s+2} s).
    let e_den = BigRational::from_integer(BigInt::from(3).pow(s as u32 + 2) * BigInt::from(s));
    rep.put(
        "E",
        first(c.iter().enumerate().map(|(i, p)| {
            let ok = !p[0].is_zero() && &p[1].abs() * &e_den <= p[0].abs();
            (i + 1, ok)
        })),
        true,
    );

    // F: |c^n| < 2^{-N} |c^{n+1}|.
    rep.put("F", first((1..s).map(|n| (n, csq[n - 1] < &k4 * &csq[n]))), true);

    // G: closed balls B(±c^n, r_n) miss both axes.
    rep.put(
        "G",
        first(c.iter().zip(r).enumerate().map(|(i, (p, rr))| {
            let ok = rr.is_positive() && rr < &p[0].abs() && rr < &p[1].abs();
            (i + 1, ok)
        })),
        true,
    );

    // H: |c^n_i| < 2^{-N} |c^{n+1}_i| for both coordinates.
    rep.put(
        "H",
        first((1..s).map(|n| {
            let ok = (0..2).all(|i| c[n - 1][i].abs() < &k2 * &c[n][i].abs());
            (n, ok)
        })),
        true,
    );

    // I: B(Σ_{j≤k} ζ_j c^j, ρ) ⊆ B(ζ_k c^k, r_k), i.e.
    // |Σ_{j<k} ζ_j c^j| + ρ ≤ r_k, for every sign pattern. The operative
    // reading uses ρ = r_1, the printed one ρ = r_s.
    let inclusion = |rho: &BigRational| {
        let mut sums: Vec<[BigRational; 2]> = vec![[BigRational::zero(), BigRational::zero()]];
        let mut bad = None;
        for k in 1..=s {
            let slack = &r[k - 1] - rho;
            let ok = !slack.is_negative() && {
                let slack_sq = &slack * &slack;
                sums.iter().all(|v| norm_sq(v) <= slack_sq)
            };
            if !ok {
                bad = Some(k);
                break;
            }
            if k < s {
                let ck = &c[k - 1];
                let mut next = Vec::with_capacity(sums.len() * 3);
                for v in &sums {
                    next.push(v.clone());
                    next.push([&v[0] + &ck[0], &v[1] + &ck[1]]);
                    next.push([&v[0] - &ck[0], &v[1] - &ck[1]]);
                }
                sums = next;
            }
        }
        bad
    };
    rep.put("I", inclusion(&r[0]), true);
    rep.put("I_printed", inclusion(&r[s - 1]), false);
    rep
}

/// Index of the first center whose balls violate the symbol condition, using
/// the construction margin: the normalised symbol must stay within `0.99 ε`
/// of its target at the ball centers and on `A_RINGS` concentric rings of
/// `A_ANGLES` points each.
pub(crate) fn symbol_condition_holds(
    symbol: &MultiplierSymbol,
    case: SchemeCase,
    frame: &super::AccumulationFrame,
    epsilon: f64,
    k: usize,
    center: [f64; 2],
    radius: f64,
) -> bool {
    let limit = 0.99 * epsilon;
    let targets: [(f64, f64); 2] = match case {
        SchemeCase::IIa => {
            let t = if k % 2 == 0 { 1.0 } else { -1.0 };
            [(1.0, t), (-1.0, t)]
        }
        SchemeCase::IIb => [(1.0, 1.0), (-1.0, 0.0)],
    };
    for (sign, target) in targets {
        let cx = sign * center[0];
        let cy = sign * center[1];
        let check = |x: f64, y: f64| -> bool {
            if symbol.is_singular(x, y) {
                return false;
            }
            let v = frame.normalize(case, symbol.eval(x, y));
            (v - target).abs() < limit
        };
        if !check(cx, cy) {
            return false;
        }
        for ring in 1..=A_RINGS {
            let rho = radius * ring as f64 / A_RINGS as f64;
            for a in 0..A_ANGLES {
                let phi = std::f64::consts::TAU * a as f64 / A_ANGLES as f64;
                if !check(cx + rho * phi.cos(), cy + rho * phi.sin()) {
                    return false;
                }
            }
        }
    }
    true
}

/// The full condition report: `A` (or `A′` for IIb) by sampling the symbol,
/// everything else exactly.
pub fn verify_conditions(scheme: &LacunaryScheme, symbol: &MultiplierSymbol) -> VerificationReport {
    let mut rep = verify_geometry(scheme);
    let centers = scheme.centers_f64();
    let bad = first(centers.iter().zip(&scheme.radii).enumerate().map(|(i, (c, r))| {
        let ok = symbol_condition_holds(
            symbol,
            scheme.case,
            &scheme.frame,
            scheme.epsilon,
            i + 1,
            *c,
            rational_to_f64(r),
        );
        (i + 1, ok)
    }));
    rep.put("A", bad, true);
    rep
}
