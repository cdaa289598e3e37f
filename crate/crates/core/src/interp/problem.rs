use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hermlin::LinError;

/// One interpolation node: `f^(j)(z) / j! = values[j]` for `j < values.len()`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub z: Complex64,
    pub values: Vec<Complex64>,
}

impl Node {
    pub fn new(z: Complex64, values: Vec<Complex64>) -> Self {
        Self { z, values }
    }

    /// Node whose declared multiplicity must match the number of values.
    pub fn with_multiplicity(
        z: Complex64,
        multiplicity: usize,
        values: Vec<Complex64>,
    ) -> Result<Self, LinError> {
        if multiplicity == 0 || values.len() != multiplicity {
            return Err(LinError::ValueCountMismatch {
                expected: multiplicity,
                got: values.len(),
            });
        }
        Ok(Self { z, values })
    }

    pub fn multiplicity(&self) -> usize {
        self.values.len()
    }
}

/// Data of the interpolation problem in the class with `kappa` negative
/// squares.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterpProblem {
    pub nodes: Vec<Node>,
    #[serde(default)]
    pub kappa: usize,
}

impl InterpProblem {
    pub fn new(nodes: Vec<Node>, kappa: usize) -> Result<Self, LinError> {
        let p = Self { nodes, kappa };
        p.validate()?;
        Ok(p)
    }

    /// Total number of interpolation conditions.
    pub fn size(&self) -> usize {
        self.nodes.iter().map(Node::multiplicity).sum()
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.nodes.iter().map(|n| n.z).collect()
    }

    pub fn with_kappa(&self, kappa: usize) -> Self {
        Self {
            nodes: self.nodes.clone(),
            kappa,
        }
    }

    pub fn validate(&self) -> Result<(), LinError> {
        if self.nodes.is_empty() {
            return Err(LinError::EmptyProblem);
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if !(n.z.norm() < 1.0) {
                return Err(LinError::NodeOutsideDisk { index: i, z: n.z });
            }
            if n.values.is_empty() {
                return Err(LinError::ValueCountMismatch {
                    expected: 1,
                    got: 0,
                });
            }
            if let Some(j) = self.nodes[..i].iter().position(|m| m.z == n.z) {
                return Err(LinError::DuplicateNode { first: j, second: i });
            }
        }
        Ok(())
    }

    /// Offset of node `i`'s block in the stacked system.
    pub fn block_offset(&self, i: usize) -> usize {
        self.nodes[..i].iter().map(Node::multiplicity).sum()
    }
}
