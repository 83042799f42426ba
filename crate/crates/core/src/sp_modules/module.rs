use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleKind {
    H,
    Wedge2,
    Gr2,
    /// `Λ³H`; with a `(-1)` twist this is `L`.
    Lambda3,
    LmodH,
    HTensorGr2,
    Gr3,
}

impl ModuleKind {
    /// Weight before twisting.
    pub fn base_weight(self) -> i32 {
        match self {
            ModuleKind::H => -1,
            ModuleKind::Wedge2 | ModuleKind::Gr2 => -2,
            ModuleKind::Lambda3 | ModuleKind::HTensorGr2 | ModuleKind::Gr3 => -3,
            // quotient of L = Λ³H(-1)
            ModuleKind::LmodH => -3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModuleKind::H => "H",
            ModuleKind::Wedge2 => "Wedge2",
            ModuleKind::Gr2 => "Gr2",
            ModuleKind::Lambda3 => "Lambda3",
            ModuleKind::LmodH => "LmodH",
            ModuleKind::HTensorGr2 => "HTensorGr2",
            ModuleKind::Gr3 => "Gr3",
        }
    }
}

/// A free module with a fixed basis, a genus, and a Tate twist.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BasedModule {
    pub kind: ModuleKind,
    pub genus: usize,
    pub rank: usize,
    /// `V(n)` has weight `w - 2n`.
    pub twist: i32,
    pub labels: Vec<String>,
}

impl BasedModule {
    pub fn new(kind: ModuleKind, genus: usize, twist: i32, labels: Vec<String>) -> Self {
        BasedModule {
            kind,
            genus,
            rank: labels.len(),
            twist,
            labels,
        }
    }

    pub fn weight(&self) -> i32 {
        self.kind.base_weight() - 2 * self.twist
    }

    /// `name(twist)` as in `Lambda3(-1)`.
    pub fn display_name(&self) -> String {
        if self.twist == 0 {
            self.kind.name().to_string()
        } else {
            format!("{}({})", self.kind.name(), self.twist)
        }
    }
}

impl fmt::Display for BasedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [rank {}, weight {}]",
            self.display_name(),
            self.rank,
            self.weight()
        )
    }
}

/// Integer matrix between based modules; columns are images of source basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: BasedModule,
    pub target: BasedModule,
    pub matrix: IntMatrix,
    pub weight_shift: i32,
}

impl ModuleMap {
    pub fn new(source: BasedModule, target: BasedModule, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(Error::Dimension(format!(
                "{}x{} matrix for {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.display_name(),
                target.display_name()
            )));
        }
        let weight_shift = target.weight() - source.weight();
        Ok(ModuleMap {
            source,
            target,
            matrix,
            weight_shift,
        })
    }

    /// Endomorphism of `m`.
    pub fn endo(m: BasedModule, matrix: IntMatrix) -> Result<Self> {
        Self::new(m.clone(), m, matrix)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if other.target != self.source {
            return Err(Error::Dimension(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source.display_name(),
                self.target.display_name(),
                other.source.display_name(),
                other.target.display_name()
            )));
        }
        let mut m = ModuleMap::new(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix)?,
        )?;
        m.weight_shift = self.weight_shift + other.weight_shift;
        Ok(m)
    }

    pub fn apply(&self, v: &[num_bigint::BigInt]) -> Result<Vec<num_bigint::BigInt>> {
        self.matrix.mul_vec(v)
    }
}
