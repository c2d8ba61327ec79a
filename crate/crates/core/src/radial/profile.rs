//! Radial amplitude profiles and spinor fields over partial-wave channels.
//!
//! A profile is either closed form (expression tree or value/derivative
//! closure pair) or sampled on the nodes of a specific grid. Closed-form
//! derivatives are exact: expression trees differentiate symbolically and
//! closures carry their derivative. Sampled profiles are differentiated with
//! 4th-order five-point stencils on the (non-uniform) node sequence, one-sided
//! at the array ends, and are treated as zero beyond the grid tail.

use super::grid::{fd_weights, RadialGrid};
use crate::angular::ChannelIndex;
use crate::weights::WeightExpr;
use std::sync::Arc;

type DynRadial = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A scalar radial function with an exact or stencil derivative.
#[derive(Clone)]
pub enum RadialFn {
    Zero,
    /// Closed form through the weight-expression grammar; the derivative
    /// comes from the symbolic engine.
    Expr { f: Arc<WeightExpr>, df: Arc<WeightExpr> },
    /// Closed form as paired value/derivative closures.
    Closure { f: DynRadial, df: DynRadial },
    /// Values on the nodes of the grid it was sampled on.
    Sampled(Arc<SampledProfile>),
}

pub struct SampledProfile {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
    /// Stencil first-derivative values, precomputed at construction.
    derivs: Vec<f64>,
}

impl SampledProfile {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Self {
        assert_eq!(nodes.len(), values.len());
        let n = nodes.len();
        let mut derivs = vec![0.0; n];
        if n >= 5 {
            for i in 0..n {
                let lo = i.saturating_sub(2).min(n - 5);
                let xs = &nodes[lo..lo + 5];
                let ws = fd_weights(xs, nodes[i], 1);
                derivs[i] = ws
                    .iter()
                    .zip(&values[lo..lo + 5])
                    .map(|(w, v)| w * v)
                    .sum();
            }
        }
        SampledProfile {
            nodes,
            values,
            derivs,
        }
    }
}

impl std::fmt::Debug for RadialFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RadialFn::Zero => write!(f, "RadialFn::Zero"),
            RadialFn::Expr { f: expr, .. } => write!(f, "RadialFn::Expr({})", expr.to_text()),
            RadialFn::Closure { .. } => write!(f, "RadialFn::Closure"),
            RadialFn::Sampled(s) => write!(f, "RadialFn::Sampled({} nodes)", s.nodes.len()),
        }
    }
}

impl RadialFn {
    /// Closed form from an expression tree; derivative via the symbolic
    /// engine.
    pub fn from_expr(expr: WeightExpr) -> Self {
        let df = expr.differentiate();
        RadialFn::Expr {
            f: Arc::new(expr),
            df: Arc::new(df),
        }
    }

    /// Closed form from value and exact-derivative closures.
    pub fn from_closures(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        RadialFn::Closure {
            f: Arc::new(f),
            df: Arc::new(df),
        }
    }

    /// Sample a closure on the grid nodes.
    pub fn sampled_on(grid: &RadialGrid, f: impl Fn(f64) -> f64) -> Self {
        let nodes = grid.nodes().to_vec();
        let values = nodes.iter().map(|&r| f(r)).collect();
        RadialFn::Sampled(Arc::new(SampledProfile::new(nodes, values)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, RadialFn::Zero)
    }

    /// Value at radius `r`; `node_index` identifies the grid node when the
    /// caller is iterating a grid (required for sampled profiles).
    pub fn eval_at(&self, node_index: Option<usize>, r: f64) -> f64 {
        match self {
            RadialFn::Zero => 0.0,
            RadialFn::Expr { f, .. } => f.eval(r),
            RadialFn::Closure { f, .. } => f(r),
            RadialFn::Sampled(s) => match node_index {
                Some(i) => s.values[i],
                None => 0.0, // beyond the sampling grid
            },
        }
    }

    /// Derivative at radius `r` (same indexing convention as `eval_at`).
    pub fn deriv_at(&self, node_index: Option<usize>, r: f64) -> f64 {
        match self {
            RadialFn::Zero => 0.0,
            RadialFn::Expr { df, .. } => df.eval(r),
            RadialFn::Closure { df, .. } => df(r),
            RadialFn::Sampled(s) => match node_index {
                Some(i) => s.derivs[i],
                None => 0.0,
            },
        }
    }

    /// The profile multiplied by a constant.
    pub fn scaled(&self, scale: f64) -> RadialFn {
        if scale == 0.0 {
            return RadialFn::Zero;
        }
        if scale == 1.0 {
            return self.clone();
        }
        match self {
            RadialFn::Zero => RadialFn::Zero,
            RadialFn::Expr { f, df } => {
                let (f, df) = ((**f).clone(), (**df).clone());
                RadialFn::Closure {
                    f: Arc::new(move |r| scale * f.eval(r)),
                    df: Arc::new(move |r| scale * df.eval(r)),
                }
            }
            RadialFn::Closure { f, df } => {
                let (f, df) = (Arc::clone(f), Arc::clone(df));
                RadialFn::Closure {
                    f: Arc::new(move |r| scale * f(r)),
                    df: Arc::new(move |r| scale * df(r)),
                }
            }
            RadialFn::Sampled(s) => {
                let values = s.values.iter().map(|v| scale * v).collect();
                RadialFn::Sampled(Arc::new(SampledProfile::new(s.nodes.clone(), values)))
            }
        }
    }
}

/// The pair `(f+, f-)` of radial amplitudes of a spinor in one channel,
/// in the `1/r`-normalized decomposition.
#[derive(Debug, Clone)]
pub struct RadialProfilePair {
    pub channel: ChannelIndex,
    pub f_plus: RadialFn,
    pub f_minus: RadialFn,
}

impl RadialProfilePair {
    pub fn new(channel: ChannelIndex, f_plus: RadialFn, f_minus: RadialFn) -> Self {
        RadialProfilePair {
            channel,
            f_plus,
            f_minus,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("duplicate channel {0} in spinor field")]
    DuplicateChannel(ChannelIndex),
}

/// A spinor field as a list of radial profile pairs over distinct channels.
#[derive(Debug, Clone, Default)]
pub struct SpinorField {
    pairs: Vec<RadialProfilePair>,
}

impl SpinorField {
    pub fn empty() -> Self {
        SpinorField { pairs: Vec::new() }
    }

    pub fn new(pairs: Vec<RadialProfilePair>) -> Result<Self, FieldError> {
        for (i, a) in pairs.iter().enumerate() {
            for b in &pairs[i + 1..] {
                if a.channel == b.channel {
                    return Err(FieldError::DuplicateChannel(a.channel));
                }
            }
        }
        Ok(SpinorField { pairs })
    }

    pub fn single(pair: RadialProfilePair) -> Self {
        SpinorField { pairs: vec![pair] }
    }

    pub fn pairs(&self) -> &[RadialProfilePair] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn scaled(&self, scale: f64) -> SpinorField {
        SpinorField {
            pairs: self
                .pairs
                .iter()
                .map(|p| RadialProfilePair {
                    channel: p.channel,
                    f_plus: p.f_plus.scaled(scale),
                    f_minus: p.f_minus.scaled(scale),
                })
                .collect(),
        }
    }
}
