//! Parameter counts of the classical scoring models, for reporting.

use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// The compared model families, in their customary report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ComplexityModel {
    Unstructured,
    DistanceModel,
    SingleLayer,
    Bilinear,
    NeuralTensorNetwork,
    /// TransE and LMNNE share one entry: both embed relations as plain
    /// d-dimensional translation vectors.
    Translational,
}

impl ComplexityModel {
    pub const ALL: [ComplexityModel; 6] = [
        ComplexityModel::Unstructured,
        ComplexityModel::DistanceModel,
        ComplexityModel::SingleLayer,
        ComplexityModel::Bilinear,
        ComplexityModel::NeuralTensorNetwork,
        ComplexityModel::Translational,
    ];
}

impl fmt::Display for ComplexityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComplexityModel::Unstructured => "Unstructured",
            ComplexityModel::DistanceModel => "Distance Model (SE)",
            ComplexityModel::SingleLayer => "Single Layer Model",
            ComplexityModel::Bilinear => "Bilinear Model",
            ComplexityModel::NeuralTensorNetwork => "Neural Tensor Network (NTN)",
            ComplexityModel::Translational => "TransE / LMNNE",
        };
        f.write_str(s)
    }
}

/// Sizes the parameter-count formulas are evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComplexityInput {
    pub n_entities: u64,
    pub n_relations: u64,
    pub dim: u64,
    /// Tensor slice count for the neural models.
    pub slices: u64,
}

impl ComplexityInput {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("n_entities", self.n_entities),
            ("n_relations", self.n_relations),
            ("dim", self.dim),
            ("slices", self.slices),
        ] {
            if v == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

/// Number of free parameters of `model` at the given sizes.
pub fn param_complexity(model: ComplexityModel, input: ComplexityInput) -> u64 {
    let ComplexityInput {
        n_entities: ne,
        n_relations: nr,
        dim: d,
        slices: s,
    } = input;
    match model {
        ComplexityModel::Unstructured => ne * d,
        ComplexityModel::DistanceModel => ne * d + 2 * nr * d * d,
        ComplexityModel::SingleLayer => ne * d + 2 * nr * (s * d + s),
        ComplexityModel::Bilinear => ne * d + nr * d * d,
        ComplexityModel::NeuralTensorNetwork => ne * d + nr * (s * d * d + 2 * s * d + 2 * s),
        ComplexityModel::Translational => ne * d + nr * d,
    }
}

/// All six rows of the comparison.
pub fn complexity_table(input: ComplexityInput) -> Vec<(ComplexityModel, u64)> {
    ComplexityModel::ALL
        .iter()
        .map(|&m| (m, param_complexity(m, input)))
        .collect()
}
