use std::collections::BTreeMap;
use std::fmt::Debug;

use num_complex::Complex64;

use super::{Dyadic, Frequency};
use crate::error::{Error, Result};

/// Coefficient ring of a [`SparseTrigPoly`].
pub trait Coefficient: Clone + Debug + PartialEq + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    fn is_real(&self) -> bool;
    fn to_complex(&self) -> Complex64;
}

impl Coefficient for Dyadic {
    fn zero() -> Self {
        Dyadic::ZERO
    }
    fn one() -> Self {
        Dyadic::ONE
    }
    fn is_zero(&self) -> bool {
        Dyadic::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Dyadic::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Dyadic::mul(self, o)
    }
    fn neg(&self) -> Self {
        Dyadic::neg(self)
    }
    fn conj(&self) -> Self {
        *self
    }
    fn is_real(&self) -> bool {
        true
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
}

impl Coefficient for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn is_real(&self) -> bool {
        self.im == 0.0
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// A finite trigonometric sum `Σ c_q e^{2πi⟨q,ξ⟩}` on the torus `T^2`.
///
/// Zero coefficients are never stored. The `real_valued` flag is only set
/// when conjugate symmetry `c_{-q} = conj(c_q)` actually holds.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseTrigPoly<C = Complex64> {
    terms: BTreeMap<Frequency, C>,
    real_valued: bool,
}

impl<C: Coefficient> Default for SparseTrigPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> SparseTrigPoly<C> {
    pub fn zero() -> Self {
        SparseTrigPoly {
            terms: BTreeMap::new(),
            real_valued: true,
        }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Frequency::ZERO, c)
    }

    pub fn monomial(q: Frequency, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(q, c);
        p.real_valued = p.is_conjugate_symmetric();
        p
    }

    /// Collects terms, summing repeated frequencies. The real-valued flag is
    /// inferred from the coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Frequency, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (q, c) in terms {
            p.add_term(q, c);
        }
        p.real_valued = p.is_conjugate_symmetric();
        p
    }

    /// Adds `c` to the coefficient at `q`, keeping the canonical form. The
    /// real-valued flag is cleared; call [`Self::refresh_real_flag`] after a
    /// batch of edits.
    pub fn add_term(&mut self, q: Frequency, c: C) {
        if c.is_zero() {
            return;
        }
        self.real_valued = false;
        match self.terms.get_mut(&q) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&q);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(q, c);
            }
        }
    }

    pub fn refresh_real_flag(&mut self) {
        self.real_valued = self.is_conjugate_symmetric();
    }

    pub fn is_real_valued(&self) -> bool {
        self.real_valued
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, q: &Frequency) -> Option<&C> {
        self.terms.get(q)
    }

    pub fn coeff(&self, q: &Frequency) -> C {
        self.terms.get(q).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Frequency, &C)> {
        self.terms.iter()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = &Frequency> {
        self.terms.keys()
    }

    pub fn is_conjugate_symmetric(&self) -> bool {
        self.terms.iter().all(|(q, c)| match self.terms.get(&-*q) {
            Some(d) => *d == c.conj(),
            None => false,
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (q, c) in &o.terms {
            out.add_term(*q, c.clone());
        }
        out.real_valued = self.real_valued && o.real_valued || out.is_conjugate_symmetric();
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&C::one().neg()))
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        let terms: BTreeMap<Frequency, C> = self
            .terms
            .iter()
            .map(|(q, c)| (*q, c.mul(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out = SparseTrigPoly {
            terms,
            real_valued: false,
        };
        out.real_valued = if self.real_valued && k.is_real() {
            true
        } else {
            out.is_conjugate_symmetric()
        };
        out
    }

    /// Exact product (convolution of coefficient maps).
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (q, b) in &o.terms {
                let r = p.checked_add(*q).ok_or_else(|| {
                    Error::InvalidParameter(format!("frequency overflow forming {p} + {q}"))
                })?;
                out.add_term(r, a.mul(b));
            }
        }
        out.real_valued = self.real_valued && o.real_valued || out.is_conjugate_symmetric();
        Ok(out)
    }

    pub fn map<D: Coefficient, F: Fn(&Frequency, &C) -> D>(&self, f: F) -> SparseTrigPoly<D> {
        SparseTrigPoly::<D>::from_terms(self.terms.iter().map(|(q, c)| (*q, f(q, c))))
    }

    pub fn to_complex(&self) -> SparseTrigPoly<Complex64> {
        let terms = self
            .terms
            .iter()
            .map(|(q, c)| (*q, c.to_complex()))
            .filter(|(_, c)| !Coefficient::is_zero(c))
            .collect();
        SparseTrigPoly {
            terms,
            real_valued: self.real_valued,
        }
    }

    /// Drops the constant term.
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&Frequency::ZERO);
        out
    }

    /// `Σ |c_q|`, an upper bound for every L^p norm on the torus.
    pub fn abs_sum(&self) -> f64 {
        let v: Vec<f64> = self.terms.values().map(|c| c.to_complex().norm()).collect();
        crate::numeric::pairwise_sum(&v)
    }

    /// `Σ |c_q|^2`, the squared L² norm.
    pub fn square_sum(&self) -> f64 {
        let v: Vec<f64> = self.terms.values().map(|c| c.to_complex().norm_sqr()).collect();
        crate::numeric::pairwise_sum(&v)
    }

    /// Largest absolute frequency component along each axis.
    pub fn max_abs_frequency(&self) -> [u128; 2] {
        self.terms.keys().fold([0, 0], |m, q| {
            [m[0].max(q.k1.unsigned_abs()), m[1].max(q.k2.unsigned_abs())]
        })
    }

    /// `(Σ |q_1||c_q|, Σ |q_2||c_q|)`, so that `2π` times these bound the
    /// partial derivatives of the polynomial.
    pub fn gradient_weights(&self) -> [f64; 2] {
        let mut w = [0.0; 2];
        for (q, c) in &self.terms {
            let a = c.to_complex().norm();
            w[0] += q.k1.unsigned_abs() as f64 * a;
            w[1] += q.k2.unsigned_abs() as f64 * a;
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(a: i128, b: i128) -> Frequency {
        Frequency::new(a, b)
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut p = SparseTrigPoly::<Dyadic>::zero();
        p.add_term(f(1, 0), Dyadic::new(1, 1));
        p.add_term(f(1, 0), Dyadic::new(-1, 1));
        assert!(p.is_empty());
    }

    #[test]
    fn cosine_squared() {
        let half = Dyadic::new(1, 1);
        let c = SparseTrigPoly::from_terms([(f(3, 0), half), (f(-3, 0), half)]);
        assert!(c.is_real_valued());
        let sq = c.mul(&c).unwrap();
        assert_eq!(sq.coeff(&f(0, 0)), Dyadic::new(1, 1));
        assert_eq!(sq.coeff(&f(6, 0)), Dyadic::new(1, 2));
        assert_eq!(sq.len(), 3);
        assert!(sq.is_real_valued());
    }

    #[test]
    fn one_sided_exponential_is_not_real() {
        let e = SparseTrigPoly::monomial(f(2, 1), Dyadic::ONE);
        assert!(!e.is_real_valued());
        assert!(SparseTrigPoly::constant(Dyadic::ONE).is_real_valued());
    }

    #[test]
    fn complex_conversion_preserves_flag() {
        let half = Dyadic::new(1, 1);
        let c = SparseTrigPoly::from_terms([(f(3, 2), half), (f(-3, -2), half)]);
        let z = c.to_complex();
        assert!(z.is_real_valued());
        assert_eq!(z.coeff(&f(3, 2)), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn overflow_is_an_error() {
        let p = SparseTrigPoly::monomial(f(i128::MAX, 0), Dyadic::ONE);
        assert!(p.mul(&p).is_err());
    }
}
