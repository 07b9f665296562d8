use serde::Serialize;

use crate::algebra::Window;
use crate::bv::BvModel;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingFailure {
    pub check: String,
    pub monomial: String,
    pub got: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub model: String,
    /// Loop monomials `a` with `B(a⊗[M]) = B_{ΩG}(a)⊗[M]` checked.
    pub loop_checked: usize,
    /// Manifold classes `x` with `B(1⊗x) = 0` checked.
    pub manifold_checked: usize,
    pub failure: Option<EmbeddingFailure>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// `H*(ΩG)⊗[M]` and `1⊗ℍ*(M)` as sub-BV algebras.
pub fn check_sub_bv(model: &BvModel, window: &Window) -> Result<EmbeddingReport> {
    let sig = model.signature();
    let mut failure = None;
    let loops = sig.loop_basis_window(window);
    for a in &loops {
        let got = model.apply_b_monomial(a)?;
        let want = model.loop_operator(a)?;
        if got != want && failure.is_none() {
            failure = Some(EmbeddingFailure {
                check: "B(a⊗[M]) = B_loop(a)⊗[M]".into(),
                monomial: sig.format_monomial(a),
                got: sig.format(&got),
                expected: sig.format(&want),
            });
        }
    }
    let classes = sig.manifold_basis();
    for x in &classes {
        let got = model.apply_b_monomial(x)?;
        if !got.is_zero() && failure.is_none() {
            failure = Some(EmbeddingFailure {
                check: "B(1⊗x) = 0".into(),
                monomial: sig.format_monomial(x),
                got: sig.format(&got),
                expected: "0".into(),
            });
        }
    }
    Ok(EmbeddingReport {
        model: model.name().to_string(),
        loop_checked: loops.len(),
        manifold_checked: classes.len(),
        failure,
    })
}
