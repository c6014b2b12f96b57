//! Multiplier symbols and the experiments that act on them directly.

mod catalog;
mod classify;
mod deleeuw;
mod expr;
mod probe;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use catalog::{by_id, catalog, CATALOG_IDS};
pub use classify::{classify_radial, ClassifyParams, RadialCase, RadialClassification};
pub use deleeuw::{deleeuw_sample, SampleWindow};
pub use expr::Expr;
pub use probe::{sup_norm_probe, ProbeProfile, ProbeRow, ProbeTable};

/// Declared regularity class of a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeclaredClass {
    Continuous,
    Homogeneous0,
    OscillatorySymmetric,
    OscillatoryAsymmetric,
    Custom,
}

type EvalFn = dyn Fn(f64, f64) -> f64 + Send + Sync;
type SingularFn = dyn Fn(f64, f64) -> bool + Send + Sync;

/// A bounded real-valued function on `R^2 \ {0}`.
///
/// Alongside the values, a symbol declares its singular locus (points where
/// it is discontinuous); lattice sampling refuses to read values there.
#[derive(Clone)]
pub struct MultiplierSymbol {
    id: String,
    eval: Arc<EvalFn>,
    singular: Arc<SingularFn>,
    pub declared_class: DeclaredClass,
    pub sup_norm_hint: Option<f64>,
}

impl fmt::Debug for MultiplierSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierSymbol")
            .field("id", &self.id)
            .field("declared_class", &self.declared_class)
            .field("sup_norm_hint", &self.sup_norm_hint)
            .finish()
    }
}

impl MultiplierSymbol {
    pub fn new<F, S>(
        id: impl Into<String>,
        declared_class: DeclaredClass,
        sup_norm_hint: Option<f64>,
        eval: F,
        singular: S,
    ) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
        S: Fn(f64, f64) -> bool + Send + Sync + 'static,
    {
        MultiplierSymbol {
            id: id.into(),
            eval: Arc::new(eval),
            singular: Arc::new(singular),
            declared_class,
            sup_norm_hint,
        }
    }

    /// A symbol given by an arithmetic expression in `x` and `y`; the
    /// singular locus is wherever the expression is not finite.
    pub fn from_expression(source: &str) -> crate::Result<Self> {
        let e = Arc::new(Expr::parse(source)?);
        let e2 = Arc::clone(&e);
        Ok(MultiplierSymbol::new(
            source.trim(),
            DeclaredClass::Custom,
            None,
            move |x, y| e.eval(x, y),
            move |x, y| !e2.eval(x, y).is_finite(),
        ))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    #[inline]
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.eval)(x, y)
    }

    #[inline]
    pub fn is_singular(&self, x: f64, y: f64) -> bool {
        (x == 0.0 && y == 0.0) || (self.singular)(x, y)
    }

    /// The dilated symbol `ξ ↦ m(ξ/σ)`.
    pub fn rescaled(&self, sigma: f64) -> MultiplierSymbol {
        assert!(sigma > 0.0 && sigma.is_finite(), "scale must be positive");
        let e = Arc::clone(&self.eval);
        let s = Arc::clone(&self.singular);
        MultiplierSymbol {
            id: format!("{}@/{}", self.id, sigma),
            eval: Arc::new(move |x, y| e(x / sigma, y / sigma)),
            singular: Arc::new(move |x, y| s(x / sigma, y / sigma)),
            declared_class: self.declared_class,
            sup_norm_hint: self.sup_norm_hint,
        }
    }
}
