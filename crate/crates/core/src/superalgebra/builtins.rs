//! The hard-coded presentations.

use std::sync::Arc;

use crate::qfield::QRational;

use super::element::Algebra;
use super::presentation::{AlgebraPresentation, Parity, PresentationBuilder};
use super::AlgebraError;

fn q() -> QRational {
    QRational::q()
}

/// `q - q^-1`
pub fn q_bracket() -> QRational {
    QRational::q() - QRational::q_pow(-1)
}

/// Entries of the dual supermatrix: odd `alpha`, `delta`; even invertible
/// `b`, `c`, ranked in that order.
///
/// ```text
/// alpha b = q^-1 b alpha     alpha c = q^-1 c alpha
/// delta b = q^-1 b delta     delta c = q^-1 c delta
/// alpha delta + delta alpha = 0,   alpha^2 = delta^2 = 0
/// b c - c b = (q - q^-1) delta alpha
/// ```
///
/// Only these rules are stated; the rules for `b^-1` and `c^-1` come from
/// [`AlgebraPresentation::derive_inverse_rules`].
pub fn dual_algebra() -> AlgebraPresentation {
    let one = QRational::one();
    PresentationBuilder::new("dual")
        .generator("alpha", Parity::Odd, false)
        .generator("delta", Parity::Odd, false)
        .generator("b", Parity::Even, true)
        .generator("c", Parity::Even, true)
        .rule("b", "alpha", q(), &[])
        .rule("c", "alpha", q(), &[])
        .rule("b", "delta", q(), &[])
        .rule("c", "delta", q(), &[])
        .rule("delta", "alpha", -one.clone(), &[])
        .rule(
            "c",
            "b",
            one,
            &[(-q_bracket(), &[("delta", 1), ("alpha", 1)])],
        )
        .build()
        .expect("dual presentation is valid")
}

/// Entries of a `GL_q(1|1)` supermatrix: odd `beta`, `gamma`; even `a`, `d`.
///
/// ```text
/// a beta = q beta a     d beta = q beta d
/// a gamma = q gamma a   d gamma = q gamma d
/// beta gamma + gamma beta = 0,   beta^2 = gamma^2 = 0
/// a d - d a = (q - q^-1) gamma beta
/// ```
pub fn gl_algebra() -> AlgebraPresentation {
    let one = QRational::one();
    PresentationBuilder::new("gl")
        .generator("beta", Parity::Odd, false)
        .generator("gamma", Parity::Odd, false)
        .generator("a", Parity::Even, false)
        .generator("d", Parity::Even, false)
        .rule("a", "beta", q(), &[])
        .rule("d", "beta", q(), &[])
        .rule("a", "gamma", q(), &[])
        .rule("d", "gamma", q(), &[])
        .rule("gamma", "beta", -one.clone(), &[])
        .rule(
            "d",
            "a",
            one,
            &[(-q_bracket(), &[("gamma", 1), ("beta", 1)])],
        )
        .build()
        .expect("gl presentation is valid")
}

/// Quantum superplane `x xi = q xi x`, `xi^2 = 0`, ordered `x`, `xi`.
pub fn superplane() -> AlgebraPresentation {
    PresentationBuilder::new("plane")
        .generator("x", Parity::Even, false)
        .generator("xi", Parity::Odd, false)
        .rule("xi", "x", QRational::q_pow(-1), &[])
        .build()
        .expect("superplane presentation is valid")
}

/// Dual quantum superplane `eta^2 = 0`, `y eta = q eta y`, ordered `eta`, `y`.
pub fn dual_superplane() -> AlgebraPresentation {
    PresentationBuilder::new("dualplane")
        .generator("eta", Parity::Odd, false)
        .generator("y", Parity::Even, false)
        .rule("y", "eta", q(), &[])
        .build()
        .expect("dual superplane presentation is valid")
}

/// [`dual_algebra`] with the inverse-letter rules derived.
pub fn dual_with_inverses() -> AlgebraPresentation {
    dual_algebra().derive_inverse_rules()
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 7] = [
    "dual",
    "gl",
    "plane",
    "dualplane",
    "dualxdual",
    "glxplane",
    "dualxplane",
];

/// Looks up a built-in algebra by its command-line name. Algebras containing
/// the dual entries come with inverse rules; `dualxdual` names the second
/// copy's generators `alpha2`, `delta2`, `b2`, `c2`.
pub fn builtin(name: &str) -> Result<Algebra, AlgebraError> {
    let p = match name {
        "dual" => dual_with_inverses(),
        "gl" => gl_algebra(),
        "plane" => superplane(),
        "dualplane" => dual_superplane(),
        "dualxdual" => dual_with_inverses().tensor(&dual_with_inverses().renamed("2"))?,
        "glxplane" => gl_algebra().tensor(&superplane())?,
        "dualxplane" => dual_with_inverses().tensor(&superplane())?,
        other => return Err(AlgebraError::UnknownAlgebra(other.to_string())),
    };
    Ok(Arc::new(p))
}
