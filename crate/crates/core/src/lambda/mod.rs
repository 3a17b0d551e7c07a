//! The lambda-function `λ(x) = sup{t ∈ [0,1] : x = t·e + (1−t)·y}` with `e`
//! an extreme point and `y` an element of the unit ball, evaluated in closed
//! form on the balls of several matrix and sequence spaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

mod closed_form;
mod decompose;
mod rank_one_min;

pub use closed_form::{
    counterexample_sequence, lambda_ell1, lambda_ell_inf, lambda_operator_norm, lambda_schatten_p,
    lambda_trace_class, m_q, trace_class_value,
};
pub use decompose::{attaining_decomposition, greedy_decomposition, operator_decomposition};
pub use rank_one_min::{min_rank_one_distance, rank_one_distance, RankOneMinimum};

/// Absolute slack on ball membership. Elements whose norm lies in
/// `(1, 1 + BALL_TOL]` are treated as sphere elements and rescaled.
pub const BALL_TOL: f64 = 1e-9;

/// Tolerance used to recognise an extreme point of the trace-norm ball
/// (`μ₁ ≥ 1 − EXTREME_TOL` and `‖a‖₁ − μ₁ ≤ EXTREME_TOL`).
pub const EXTREME_TOL: f64 = 1e-10;

/// Which closed form produced a [`LambdaResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    #[serde(rename = "trace-class")]
    TraceClass,
    #[serde(rename = "schatten-p")]
    SchattenP,
    #[serde(rename = "operator-norm-invertible")]
    OperatorNormInvertible,
    #[serde(rename = "operator-norm-singular")]
    OperatorNormSingular,
    #[serde(rename = "ell1")]
    Ell1,
    #[serde(rename = "ellinf")]
    EllInf,
    #[serde(rename = "extreme-point")]
    ExtremePoint,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::TraceClass => "trace-class",
            Branch::SchattenP => "schatten-p",
            Branch::OperatorNormInvertible => "operator-norm-invertible",
            Branch::OperatorNormSingular => "operator-norm-singular",
            Branch::Ell1 => "ell1",
            Branch::EllInf => "ellinf",
            Branch::ExtremePoint => "extreme-point",
        }
    }
}

/// A decomposition `a = t·e + (1−t)·y` with `e` extreme and `y` in the ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmenableTriplet {
    pub t: f64,
    pub e: ComplexMatrix,
    pub y: ComplexMatrix,
}

impl AmenableTriplet {
    /// `t·e + (1−t)·y`.
    pub fn combine(&self) -> ComplexMatrix {
        self.e.scale(self.t).add_scaled(1.0 - self.t, &self.y)
    }
}

/// Value of `λ` together with the quantities the formula was evaluated on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaResult {
    pub value: f64,
    pub branch: Branch,
    /// `‖a‖₁` (sum of the entries for sequences).
    pub norm1: f64,
    /// `‖a‖∞` (largest entry for sequences).
    pub norm_inf: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_q: Option<f64>,
    /// Smallest entry, for the `ℓ∞` form.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_p: Option<f64>,
    pub witness: Option<AmenableTriplet>,
}

impl LambdaResult {
    pub(crate) fn new(value: f64, branch: Branch, norm1: f64, norm_inf: f64) -> Self {
        Self {
            value,
            branch,
            norm1,
            norm_inf,
            m_q: None,
            m: None,
            p: None,
            norm_p: None,
            witness: None,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("lambda result serializes")
    }
}

/// The two unit balls whose extreme points the crate constructs explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallNorm {
    /// Trace norm; extreme points are the rank-one partial isometries.
    Trace,
    /// Operator norm; extreme points of the square ball are the unitaries.
    Operator,
}

impl BallNorm {
    pub fn name(self) -> &'static str {
        match self {
            BallNorm::Trace => "trace",
            BallNorm::Operator => "operator",
        }
    }

    pub fn norm(self, a: &ComplexMatrix) -> f64 {
        match self {
            BallNorm::Trace => crate::linalg::trace_norm(a),
            BallNorm::Operator => crate::linalg::operator_norm(a),
        }
    }
}

/// Selects a closed form by Schatten index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaNorm {
    Trace,
    Operator,
    Schatten(f64),
}

impl LambdaNorm {
    /// `p = 1` is the trace norm, `p = ∞` the operator norm.
    pub fn from_p(p: f64) -> Result<Self> {
        crate::linalg::check_p(p)?;
        Ok(if p == 1.0 {
            LambdaNorm::Trace
        } else if p.is_infinite() {
            LambdaNorm::Operator
        } else {
            LambdaNorm::Schatten(p)
        })
    }
}

/// Evaluates `λ(a)` on the ball selected by `norm`.
///
/// With `with_witness` set the result carries an attaining triplet; the
/// strictly convex `1 < p < ∞` balls have no constructed witness, so that
/// combination is rejected.
pub fn lambda(a: &ComplexMatrix, norm: LambdaNorm, with_witness: bool) -> Result<LambdaResult> {
    let mut res = match norm {
        LambdaNorm::Trace => lambda_trace_class(a)?,
        LambdaNorm::Operator => lambda_operator_norm(a)?,
        LambdaNorm::Schatten(p) => {
            if with_witness {
                return Err(Error::InvalidParameter(format!(
                    "no attaining decomposition is constructed for the Schatten {p}-ball"
                )));
            }
            lambda_schatten_p(a, p)?
        }
    };
    if !with_witness {
        res.witness = None;
    }
    Ok(res)
}
