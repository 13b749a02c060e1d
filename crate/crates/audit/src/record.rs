//! Identity records: a display, its expressions and the registered readings.

use std::fmt;
use std::sync::Arc;

use wp_products::{
    Complex64, Transform64, TransformMode, TransformOrder, TruncationPolicy, Weierstrass64,
};

use crate::error::AuditError;
use crate::sample::{Domain, Sample};

/// Values of every expression at one sample, indexed `[expression][component]`.
/// All expressions carry the same number of components.
pub type Values = Vec<Vec<Complex64>>;

pub type Evaluator = Arc<dyn Fn(&Ctx) -> wp_products::Result<Values> + Send + Sync>;

/// Evaluation context handed to the evaluators.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub sample: Sample,
    pub policy: TruncationPolicy,
}

impl Ctx {
    pub fn z(&self) -> Complex64 {
        self.sample.z
    }

    pub fn tau(&self) -> Complex64 {
        self.sample.tau
    }

    pub fn w(&self) -> wp_products::Result<Weierstrass64> {
        Weierstrass64::new(self.sample.tau, self.policy)
    }

    /// Transformation of order `sample.n` in the given mode.
    pub fn transform(&self, mode: TransformMode) -> wp_products::Result<Transform64> {
        let p = if mode == TransformMode::TauPlus2pOverN { self.sample.p } else { 0 };
        let order = TransformOrder::with_offset(self.sample.n as i64, p)?;
        Transform64::new(self.sample.tau, order, mode, self.policy)
    }

    pub fn n_tau(&self) -> wp_products::Result<Transform64> {
        self.transform(TransformMode::NTau)
    }
}

/// One reading of a display.
#[derive(Clone)]
pub struct Variant {
    pub label: String,
    pub eval: Evaluator,
}

/// A displayed identity with at least two expressions that should agree.
///
/// The first variant is always the literal reading.
#[derive(Clone)]
pub struct IdentityRecord {
    pub id: String,
    pub anchor: String,
    pub expressions: Vec<String>,
    pub variants: Vec<Variant>,
    pub domain: Domain,
    pub tolerance: f64,
}

pub const AS_PRINTED: &str = "as-printed";

impl IdentityRecord {
    pub fn new(id: &str, anchor: &str, expressions: &[&str]) -> Self {
        Self {
            id: id.to_string(),
            anchor: anchor.to_string(),
            expressions: expressions.iter().map(|s| s.to_string()).collect(),
            variants: Vec::new(),
            domain: Domain::default(),
            tolerance: 1e-9,
        }
    }

    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn domain(mut self, d: Domain) -> Self {
        self.domain = d;
        self
    }

    pub fn variant<F>(mut self, label: &str, f: F) -> Self
    where
        F: Fn(&Ctx) -> wp_products::Result<Values> + Send + Sync + 'static,
    {
        self.variants.push(Variant {
            label: label.to_string(),
            eval: Arc::new(f),
        });
        self
    }

    pub fn variant_labels(&self) -> Vec<&str> {
        self.variants.iter().map(|v| v.label.as_str()).collect()
    }

    /// Evaluates variant `i` and checks the shape of the result.
    pub fn evaluate(&self, i: usize, ctx: &Ctx) -> Result<wp_products::Result<Values>, AuditError> {
        let v = (self.variants[i].eval)(ctx);
        if let Ok(vals) = &v {
            let want = vals.first().map_or(0, Vec::len);
            if vals.len() != self.expressions.len() {
                return Err(AuditError::Shape {
                    id: self.id.clone(),
                    got: vals.len(),
                    want: self.expressions.len(),
                });
            }
            if let Some(bad) = vals.iter().find(|e| e.len() != want || e.is_empty()) {
                return Err(AuditError::Shape {
                    id: self.id.clone(),
                    got: bad.len(),
                    want,
                });
            }
        }
        Ok(v)
    }

    /// Structural checks: two or more expressions, a nonempty variant list
    /// with unique labels and an allowed order set that is not empty.
    pub fn validate(&self) -> Result<(), String> {
        if self.expressions.len() < 2 {
            return Err(format!("{}: fewer than two expressions", self.id));
        }
        if self.variants.is_empty() {
            return Err(format!("{}: no variants", self.id));
        }
        let mut labels = self.variant_labels();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(format!("{}: duplicate variant label", self.id));
        }
        if matches!(&self.domain.orders, Some(o) if o.is_empty()) || self.domain.offsets.is_empty() {
            return Err(format!("{}: empty domain", self.id));
        }
        Ok(())
    }
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("anchor", &self.anchor)
            .field("expressions", &self.expressions)
            .field("variants", &self.variant_labels())
            .field("domain", &self.domain)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

/// Wraps single values as one-component expressions.
pub fn scalars(v: impl IntoIterator<Item = Complex64>) -> Values {
    v.into_iter().map(|x| vec![x]).collect()
}
