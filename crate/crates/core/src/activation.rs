//! Activation function catalogue.
//!
//! Each kind carries the metadata the singularity probes care about:
//! smoothness class, period, and constancy.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ActivationError {
    #[error("{kind} has no supported derivative of order {order} at x = {x}")]
    UnsupportedDerivative { kind: String, order: u32, x: f64 },
    #[error("unknown activation '{0}' (expected sigmoid, sine, cosine, relu, identity, or constant:<c>)")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Smoothness {
    InfinitelyDifferentiable,
    C1,
    C0Piecewise,
}

/// Scalar activation `g: R -> R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Sigmoid,
    Sine,
    Cosine,
    Relu,
    Constant(f64),
    Identity,
}

impl Activation {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Activation::Sigmoid => 1.0 / (1.0 + (-x).exp()),
            Activation::Sine => x.sin(),
            Activation::Cosine => x.cos(),
            Activation::Relu => x.max(0.0),
            Activation::Constant(c) => c,
            Activation::Identity => x,
        }
    }

    /// Analytic derivative of the given order (>= 1).
    ///
    /// Sine, cosine, constant, and identity support every order in closed
    /// form; sigmoid supports orders 1 and 2; relu supports order 1 away
    /// from 0. Everything else is an [`ActivationError::UnsupportedDerivative`].
    pub fn eval_derivative(&self, x: f64, order: u32) -> Result<f64, ActivationError> {
        let unsupported = || ActivationError::UnsupportedDerivative {
            kind: self.name(),
            order,
            x,
        };
        if order == 0 {
            return Err(unsupported());
        }
        match *self {
            // d^l/dx^l sin(x) = sin(x + l*pi/2)
            Activation::Sine => Ok((x + order as f64 * FRAC_PI_2).sin()),
            Activation::Cosine => Ok((x + order as f64 * FRAC_PI_2).cos()),
            Activation::Constant(_) => Ok(0.0),
            Activation::Identity => Ok(if order == 1 { 1.0 } else { 0.0 }),
            Activation::Sigmoid => {
                let s = self.eval(x);
                match order {
                    1 => Ok(s * (1.0 - s)),
                    2 => Ok(s * (1.0 - s) * (1.0 - 2.0 * s)),
                    _ => Err(unsupported()),
                }
            }
            Activation::Relu => {
                if order != 1 || x == 0.0 {
                    Err(unsupported())
                } else {
                    Ok(if x > 0.0 { 1.0 } else { 0.0 })
                }
            }
        }
    }

    pub fn smoothness(&self) -> Smoothness {
        match self {
            Activation::Relu => Smoothness::C0Piecewise,
            _ => Smoothness::InfinitelyDifferentiable,
        }
    }

    pub fn period(&self) -> Option<f64> {
        match self {
            Activation::Sine | Activation::Cosine => Some(2.0 * PI),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Activation::Constant(_))
    }

    pub fn name(&self) -> String {
        match self {
            Activation::Sigmoid => "sigmoid".into(),
            Activation::Sine => "sine".into(),
            Activation::Cosine => "cosine".into(),
            Activation::Relu => "relu".into(),
            Activation::Constant(c) => format!("constant:{c}"),
            Activation::Identity => "identity".into(),
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Activation {
    type Err = ActivationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "sigmoid" => Ok(Activation::Sigmoid),
            "sine" | "sin" => Ok(Activation::Sine),
            "cosine" | "cos" => Ok(Activation::Cosine),
            "relu" => Ok(Activation::Relu),
            "identity" => Ok(Activation::Identity),
            other => {
                if let Some(c) = other.strip_prefix("constant:") {
                    c.parse::<f64>()
                        .ok()
                        .filter(|c| c.is_finite())
                        .map(Activation::Constant)
                        .ok_or_else(|| ActivationError::UnknownKind(other.to_string()))
                } else {
                    Err(ActivationError::UnknownKind(other.to_string()))
                }
            }
        }
    }
}
