//! Single-hidden-layer feed-forward network and its hidden layer output
//! matrix.
//!
//! For inputs `x_1..x_N` (one per row) and hidden units `(w_i, b_i)`, entry
//! `(j, i)` of the hidden layer output matrix is `g(w_i . x_j + b_i)`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::activation::Activation;
use crate::matrix::{DenseMatrix, LinalgError};

#[derive(Debug, Error)]
pub enum SlfnError {
    #[error("{context}: expected {expected}, got {found}")]
    ShapeMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model file i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("model file format: {0}")]
    Json(#[from] serde_json::Error),
}

/// Hidden layer: one weight row and one bias per unit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HiddenLayer {
    weights: DenseMatrix,
    biases: Vec<f64>,
    activation: Activation,
}

impl HiddenLayer {
    pub fn new(
        weights: DenseMatrix,
        biases: Vec<f64>,
        activation: Activation,
    ) -> Result<Self, SlfnError> {
        if biases.len() != weights.rows() {
            return Err(SlfnError::ShapeMismatch {
                context: "hidden layer biases per unit",
                expected: weights.rows(),
                found: biases.len(),
            });
        }
        if let Some(pos) = biases.iter().position(|b| !b.is_finite()) {
            return Err(SlfnError::Linalg(LinalgError::NonFinite { row: pos, col: 0 }));
        }
        Ok(HiddenLayer {
            weights,
            biases,
            activation,
        })
    }

    /// Number of hidden units.
    pub fn units(&self) -> usize {
        self.weights.rows()
    }

    /// Input dimension `n`.
    pub fn input_dim(&self) -> usize {
        self.weights.cols()
    }

    pub fn weights(&self) -> &DenseMatrix {
        &self.weights
    }

    pub fn biases(&self) -> &[f64] {
        &self.biases
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }
}

/// Builds the N x units hidden layer output matrix for `inputs` (N x n).
pub fn hidden_output_matrix(
    layer: &HiddenLayer,
    inputs: &DenseMatrix,
) -> Result<DenseMatrix, SlfnError> {
    if inputs.cols() != layer.input_dim() {
        return Err(SlfnError::ShapeMismatch {
            context: "input dimension vs hidden layer",
            expected: layer.input_dim(),
            found: inputs.cols(),
        });
    }
    let g = layer.activation;
    let h = DenseMatrix::from_fn(inputs.rows(), layer.units(), |j, i| {
        let x = inputs.row(j);
        let w = layer.weights.row(i);
        let dot: f64 = w.iter().zip(x).map(|(wi, xi)| wi * xi).sum();
        g.eval(dot + layer.biases[i])
    });
    Ok(h)
}

/// Fit metrics on one (inputs, targets) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residual {
    /// `||H beta - T||_F`
    pub absolute: f64,
    /// `absolute / ||T||_F`, or `absolute` when `||T||_F = 0`.
    pub relative: f64,
}

/// Trained network: hidden layer plus output weight matrix `beta`
/// (units x output dim).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Slfn {
    hidden: HiddenLayer,
    output_weights: DenseMatrix,
}

impl Slfn {
    pub fn new(hidden: HiddenLayer, output_weights: DenseMatrix) -> Result<Self, SlfnError> {
        if output_weights.rows() != hidden.units() {
            return Err(SlfnError::ShapeMismatch {
                context: "output weight rows vs hidden units",
                expected: hidden.units(),
                found: output_weights.rows(),
            });
        }
        Ok(Slfn {
            hidden,
            output_weights,
        })
    }

    pub fn hidden(&self) -> &HiddenLayer {
        &self.hidden
    }

    pub fn output_weights(&self) -> &DenseMatrix {
        &self.output_weights
    }

    pub fn output_dim(&self) -> usize {
        self.output_weights.cols()
    }

    /// Network outputs for `inputs` (N x n): `H(inputs) * beta`.
    pub fn forward(&self, inputs: &DenseMatrix) -> Result<DenseMatrix, SlfnError> {
        let h = hidden_output_matrix(&self.hidden, inputs)?;
        Ok(h.matmul(&self.output_weights)?)
    }

    /// Frobenius residual of the fit against `targets`.
    pub fn residual(
        &self,
        inputs: &DenseMatrix,
        targets: &DenseMatrix,
    ) -> Result<Residual, SlfnError> {
        let outputs = self.forward(inputs)?;
        let diff = outputs.sub(targets)?;
        let absolute = diff.frobenius_norm();
        let t_norm = targets.frobenius_norm();
        let relative = if t_norm == 0.0 {
            absolute
        } else {
            absolute / t_norm
        };
        Ok(Residual { absolute, relative })
    }

    pub fn save_json(&self, path: impl AsRef<Path>) -> Result<(), ModelError> {
        let json = serde_json::to_string_pretty(self)?;
        std::fs::write(path, json)?;
        Ok(())
    }

    pub fn load_json(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn scalar_layer(w: f64, b: f64, g: Activation) -> HiddenLayer {
        HiddenLayer::new(DenseMatrix::new(1, 1, vec![w]).unwrap(), vec![b], g).unwrap()
    }

    #[test]
    fn identity_unit_passes_input_through() {
        let layer = scalar_layer(1.0, 0.0, Activation::Identity);
        let x = DenseMatrix::new(1, 1, vec![2.0]).unwrap();
        let h = hidden_output_matrix(&layer, &x).unwrap();
        assert_eq!(h.as_slice(), &[2.0]);
    }

    #[test]
    fn constant_activation_fills_h_with_the_constant() {
        let layer = HiddenLayer::new(
            DenseMatrix::from_rows(&[vec![0.3], vec![-1.7]]).unwrap(),
            vec![0.9, 0.4],
            Activation::Constant(1.0),
        )
        .unwrap();
        let x = DenseMatrix::from_rows(&[vec![5.0], vec![-2.0]]).unwrap();
        let h = hidden_output_matrix(&layer, &x).unwrap();
        assert_eq!(h.as_slice(), &[1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn zero_weight_sigmoid_gives_half_column() {
        let layer = scalar_layer(0.0, 0.0, Activation::Sigmoid);
        let x = DenseMatrix::from_rows(&[vec![-3.0], vec![0.0], vec![11.0]]).unwrap();
        let h = hidden_output_matrix(&layer, &x).unwrap();
        assert_eq!(h.as_slice(), &[0.5, 0.5, 0.5]);
    }

    #[test]
    fn h_entry_layout_matches_samples_by_units() {
        // Two samples, two units with distinct weights: entry (j, i) must be
        // g(w_i . x_j + b_i).
        let layer = HiddenLayer::new(
            DenseMatrix::from_rows(&[vec![1.0], vec![2.0]]).unwrap(),
            vec![0.0, 1.0],
            Activation::Identity,
        )
        .unwrap();
        let x = DenseMatrix::from_rows(&[vec![10.0], vec![20.0]]).unwrap();
        let h = hidden_output_matrix(&layer, &x).unwrap();
        assert_eq!(h.get(0, 0), 10.0);
        assert_eq!(h.get(0, 1), 21.0);
        assert_eq!(h.get(1, 0), 20.0);
        assert_eq!(h.get(1, 1), 41.0);
    }

    #[test]
    fn forward_with_zero_beta_is_zero() {
        let layer = scalar_layer(0.7, 0.1, Activation::Sigmoid);
        let net = Slfn::new(layer, DenseMatrix::zeros(1, 1)).unwrap();
        let x = DenseMatrix::from_rows(&[vec![1.0], vec![2.0]]).unwrap();
        let out = net.forward(&x).unwrap();
        assert_eq!(out.as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn forward_composes_identity_chain() {
        let layer = scalar_layer(1.0, 0.0, Activation::Identity);
        let net = Slfn::new(layer, DenseMatrix::new(1, 1, vec![2.0]).unwrap()).unwrap();
        let x = DenseMatrix::new(1, 1, vec![3.0]).unwrap();
        assert_eq!(net.forward(&x).unwrap().as_slice(), &[6.0]);
    }

    #[test]
    fn forward_equals_h_times_beta() {
        let layer = HiddenLayer::new(
            DenseMatrix::from_rows(&[vec![0.5, -0.2], vec![1.5, 0.3], vec![-0.7, 0.9]]).unwrap(),
            vec![0.1, -0.4, 0.8],
            Activation::Sigmoid,
        )
        .unwrap();
        let beta = DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![2.0, 0.5], vec![-0.5, 0.25]])
            .unwrap();
        let net = Slfn::new(layer, beta.clone()).unwrap();
        let x = DenseMatrix::from_rows(&[vec![0.2, 0.4], vec![-1.0, 2.0]]).unwrap();
        let by_hand = hidden_output_matrix(net.hidden(), &x)
            .unwrap()
            .matmul(&beta)
            .unwrap();
        assert_eq!(net.forward(&x).unwrap(), by_hand);
    }

    #[test]
    fn residual_of_perfect_fit_is_zero() {
        let layer = scalar_layer(0.9, 0.2, Activation::Sigmoid);
        let net = Slfn::new(layer, DenseMatrix::new(1, 1, vec![3.0]).unwrap()).unwrap();
        let x = DenseMatrix::from_rows(&[vec![0.5], vec![1.5]]).unwrap();
        let t = net.forward(&x).unwrap();
        let r = net.residual(&x, &t).unwrap();
        assert_eq!(r.absolute, 0.0);
        assert_eq!(r.relative, 0.0);
    }

    #[test]
    fn zero_beta_against_nonzero_targets_has_unit_relative_residual() {
        let layer = scalar_layer(0.9, 0.2, Activation::Sigmoid);
        let net = Slfn::new(layer, DenseMatrix::zeros(1, 1)).unwrap();
        let x = DenseMatrix::from_rows(&[vec![0.5], vec![1.5]]).unwrap();
        let t = DenseMatrix::from_rows(&[vec![1.0], vec![-2.0]]).unwrap();
        let r = net.residual(&x, &t).unwrap();
        assert_abs_diff_eq!(r.relative, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn scalar_interpolation_solves_exactly() {
        // One sample (x=0, t=1) with sigmoid, w=0, b=0: h = 0.5, so
        // beta = h^-1 * t = 2 and the residual vanishes.
        let layer = scalar_layer(0.0, 0.0, Activation::Sigmoid);
        let x = DenseMatrix::new(1, 1, vec![0.0]).unwrap();
        let t = DenseMatrix::new(1, 1, vec![1.0]).unwrap();
        let h = hidden_output_matrix(&layer, &x).unwrap();
        let beta = crate::svd::pinv(&h).unwrap().matmul(&t).unwrap();
        assert_abs_diff_eq!(beta.get(0, 0), 2.0, epsilon = 1e-14);
        let net = Slfn::new(layer, beta).unwrap();
        let r = net.residual(&x, &t).unwrap();
        assert!(r.absolute < 1e-12);
    }

    #[test]
    fn duplicated_inputs_duplicate_h_rows_and_units_duplicate_columns() {
        let layer = HiddenLayer::new(
            DenseMatrix::from_rows(&[vec![0.4, -0.6], vec![0.4, -0.6], vec![1.1, 0.2]]).unwrap(),
            vec![0.3, 0.3, -0.5],
            Activation::Sigmoid,
        )
        .unwrap();
        let x = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![-0.5, 0.25], vec![1.0, 2.0]])
            .unwrap();
        let h = hidden_output_matrix(&layer, &x).unwrap();
        for i in 0..layer.units() {
            assert_eq!(h.get(0, i), h.get(2, i), "rows 0 and 2 must coincide");
        }
        for j in 0..x.rows() {
            assert_eq!(h.get(j, 0), h.get(j, 1), "columns 0 and 1 must coincide");
        }
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let layer = scalar_layer(1.0, 0.0, Activation::Identity);
        let x = DenseMatrix::zeros(2, 3);
        assert!(matches!(
            hidden_output_matrix(&layer, &x),
            Err(SlfnError::ShapeMismatch { expected: 1, found: 3, .. })
        ));
    }

    #[test]
    fn model_json_round_trip() {
        let layer = HiddenLayer::new(
            DenseMatrix::from_rows(&[vec![0.25, -1.5]]).unwrap(),
            vec![0.75],
            Activation::Constant(2.0),
        )
        .unwrap();
        let net = Slfn::new(layer, DenseMatrix::new(1, 2, vec![1.0, -2.0]).unwrap()).unwrap();
        let dir = std::env::temp_dir().join("elmprobe-model-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("model.json");
        net.save_json(&path).unwrap();
        let back = Slfn::load_json(&path).unwrap();
        assert_eq!(back.hidden().weights(), net.hidden().weights());
        assert_eq!(back.hidden().biases(), net.hidden().biases());
        assert_eq!(back.hidden().activation(), net.hidden().activation());
        assert_eq!(back.output_weights(), net.output_weights());
    }
}
