use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::Frequency;
use crate::error::{Error, Result};

/// Enumeration of `3^s` sign tuples is refused beyond this depth.
pub const MAX_LAMBDA_DEPTH: usize = 16;

/// Representation data of one element `q = Σ ζ_j c^j` of the sum set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaEntry {
    /// Signs `ζ_j ∈ {-1, 0, 1}`, one per center.
    pub zeta: Vec<i8>,
    /// Number of nonzero signs.
    pub chi: u32,
    /// Zero-based index of the last nonzero sign.
    pub top_index: usize,
}

impl LambdaEntry {
    /// Sign of the top-level summand.
    pub fn top_sign(&self) -> i8 {
        self.zeta[self.top_index]
    }
}

/// The set of nonzero signed subset sums of a center sequence, each with its
/// (verified unique) representation.
#[derive(Clone, Debug)]
pub struct LambdaSet {
    centers: Vec<Frequency>,
    elements: BTreeMap<Frequency, LambdaEntry>,
}

/// Enumerates every sign tuple and records each nonzero sum.
///
/// Two tuples reaching the same frequency (including a nonzero tuple summing
/// to the origin) is a hard [`Error::RepresentationCollision`]: that is the
/// operative lacunarity test.
pub fn build_lambda_set(centers: &[Frequency]) -> Result<LambdaSet> {
    let s = centers.len();
    if s == 0 {
        return Err(Error::InvalidCenters("at least one center is required".into()));
    }
    if s > MAX_LAMBDA_DEPTH {
        return Err(Error::ResourceExceeded(format!(
            "3^{s} sign tuples exceed the enumeration limit 3^{MAX_LAMBDA_DEPTH}"
        )));
    }
    for (i, c) in centers.iter().enumerate() {
        if c.is_zero() {
            return Err(Error::InvalidCenters(format!("center {} is zero", i + 1)));
        }
        if centers[..i].contains(c) {
            return Err(Error::InvalidCenters(format!("center {} repeats {c}", i + 1)));
        }
    }

    let mut elements = BTreeMap::new();
    let mut zeta = vec![0i8; s];
    enumerate(centers, 0, Frequency::ZERO, &mut zeta, &mut elements)?;
    Ok(LambdaSet {
        centers: centers.to_vec(),
        elements,
    })
}

fn enumerate(
    centers: &[Frequency],
    j: usize,
    acc: Frequency,
    zeta: &mut Vec<i8>,
    out: &mut BTreeMap<Frequency, LambdaEntry>,
) -> Result<()> {
    if j == centers.len() {
        let chi = zeta.iter().filter(|z| **z != 0).count() as u32;
        if chi == 0 {
            return Ok(());
        }
        if acc.is_zero() {
            return Err(Error::RepresentationCollision {
                frequency: acc,
                first: vec![0; zeta.len()],
                second: zeta.clone(),
            });
        }
        let top_index = zeta.iter().rposition(|z| *z != 0).unwrap_or(0);
        match out.entry(acc) {
            Entry::Occupied(e) => {
                return Err(Error::RepresentationCollision {
                    frequency: acc,
                    first: e.get().zeta.clone(),
                    second: zeta.clone(),
                })
            }
            Entry::Vacant(v) => {
                v.insert(LambdaEntry {
                    zeta: zeta.clone(),
                    chi,
                    top_index,
                });
            }
        }
        return Ok(());
    }
    let c = centers[j];
    for sign in [0i8, 1, -1] {
        let next = match sign {
            0 => Some(acc),
            1 => acc.checked_add(c),
            _ => acc.checked_sub(c),
        }
        .ok_or_else(|| Error::InvalidCenters("signed subset sum overflows i128".into()))?;
        zeta[j] = sign;
        enumerate(centers, j + 1, next, zeta, out)?;
    }
    zeta[j] = 0;
    Ok(())
}

impl LambdaSet {
    pub fn centers(&self) -> &[Frequency] {
        &self.centers
    }

    pub fn s(&self) -> usize {
        self.centers.len()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, q: &Frequency) -> Option<&LambdaEntry> {
        self.elements.get(q)
    }

    pub fn contains(&self, q: &Frequency) -> bool {
        self.elements.contains_key(q)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Frequency, &LambdaEntry)> {
        self.elements.iter()
    }

    /// Squared smallest center norm, exact.
    pub fn min_center_norm_sq(&self) -> BigInt {
        self.centers
            .iter()
            .map(|c| c.norm_sq())
            .min()
            .expect("nonempty center list")
    }

    /// Exact squared minimal pairwise distance (brute force, `O(|Λ|^2)`).
    /// `None` when the set has a single element.
    pub fn min_separation_sq(&self) -> Option<BigInt> {
        let pts: Vec<&Frequency> = self.elements.keys().collect();
        let mut best: Option<BigInt> = None;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                // Differences of two sums of at most s centers stay far inside
                // i128 for every scheme this crate constructs; fall back to
                // big integers if not.
                let d = match pts[i].checked_sub(*pts[j]) {
                    Some(d) => d.norm_sq(),
                    None => {
                        let a = BigInt::from(pts[i].k1) - BigInt::from(pts[j].k1);
                        let b = BigInt::from(pts[i].k2) - BigInt::from(pts[j].k2);
                        &a * &a + &b * &b
                    }
                };
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
        }
        best
    }

    /// Floating-point minimal pairwise distance (used for bump sizing).
    pub fn min_separation(&self) -> f64 {
        let pts: Vec<[f64; 2]> = self.elements.keys().map(|q| q.as_f64()).collect();
        let mut best = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = (pts[i][0] - pts[j][0]).hypot(pts[i][1] - pts[j][1]);
                best = best.min(d);
            }
        }
        best
    }
}
