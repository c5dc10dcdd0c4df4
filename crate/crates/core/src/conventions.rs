//! Frozen convention choices, pinned by executable tests (see
//! `catalog::pin_exterior_factor` and `catalog::pin_notation_reading`).

use serde::Serialize;

/// `(dα)_ij = s·(∂_i α_j − ∂_j α_i)`.
pub const EXTERIOR_FACTOR: f64 = 0.5;

/// Heisenberg scale constants `(a, b)`: `α₁ = a(dz − y dx)`,
/// `g = α₁⊗α₁ + b(dx² + dy²) + dt²`.
pub const HEISENBERG_SCALES: (f64, f64) = (1.0, 0.5);

/// How the bracketed arguments of the Bochner formula are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotationReading {
    /// `ψ(ρ*)(R − L₃R)` is ψ applied to the ρ*-contraction of `R − L₃R`.
    ContractBracket,
    /// Contractions of `R` itself, the bracket multiplying the result.
    ContractCurvature,
}

pub const NOTATION_READING: NotationReading = NotationReading::ContractBracket;

pub const RIEMANN_CONVENTION: &str =
    "R(X,Y)V = ∇X∇YV − ∇Y∇XV − ∇[X,Y]V; R(X,Y,V,W) = g(R(X,Y)V,W); unit sphere R(X,Y,Y,X) = +1";
pub const RICCI_CONVENTION: &str = "ρ(X,Y) = Σ R(e_i,X,Y,e_i); ρ*(X,Y) = Σ R(X,e_i,Je_i,JY)";
pub const PI1_SIGN: &str = "π₁(X,Y,Z,W) = g(X,Z)g(Y,W) − g(Y,Z)g(X,W), so the unit sphere has R = −π₁";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConventionLedger {
    pub exterior_factor: f64,
    pub riemann: &'static str,
    pub ricci: &'static str,
    pub pi1_sign: &'static str,
    pub notation_reading: NotationReading,
    pub heisenberg_scales: [f64; 2],
}

impl ConventionLedger {
    pub fn one_line(&self) -> String {
        format!(
            "s = {}, reading = {}, heisenberg (a,b) = ({}, {})",
            self.exterior_factor,
            match self.notation_reading {
                NotationReading::ContractBracket => "contract-bracket",
                NotationReading::ContractCurvature => "contract-curvature",
            },
            self.heisenberg_scales[0],
            self.heisenberg_scales[1]
        )
    }
}

pub fn ledger() -> ConventionLedger {
    ConventionLedger {
        exterior_factor: EXTERIOR_FACTOR,
        riemann: RIEMANN_CONVENTION,
        ricci: RICCI_CONVENTION,
        pi1_sign: PI1_SIGN,
        notation_reading: NOTATION_READING,
        heisenberg_scales: [HEISENBERG_SCALES.0, HEISENBERG_SCALES.1],
    }
}
