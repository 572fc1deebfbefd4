//! Relation-pattern checks on supermatrix entries. Failures are data: every
//! relation keeps its residual so a report can show what went wrong.

use std::fmt;

use crate::qfield::QRational;
use crate::superalgebra::{AlgebraError, Element};

use super::SuperMatrix;

/// One relation written as `residual = 0`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub residual: Result<Element, AlgebraError>,
}

impl Relation {
    pub fn new(label: impl Into<String>, residual: Result<Element, AlgebraError>) -> Self {
        Relation {
            label: label.into(),
            residual,
        }
    }

    pub fn holds(&self) -> bool {
        matches!(&self.residual, Ok(x) if x.is_zero())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.residual {
            Ok(x) => write!(f, "{}: residual {}", self.label, x),
            Err(e) => write!(f, "{}: error: {}", self.label, e),
        }
    }
}

/// Which product makes `BC - CB = (p - p^-1) X` true.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketOrdering {
    /// `X = D A`.
    Da,
    /// `X = A D`.
    Ad,
    /// Both, which happens when `A D = 0`.
    Both,
    Neither,
}

impl fmt::Display for BracketOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BracketOrdering::Da => "DA",
            BracketOrdering::Ad => "AD",
            BracketOrdering::Both => "DA and AD",
            BracketOrdering::Neither => "neither DA nor AD",
        })
    }
}

#[derive(Clone, Debug)]
pub struct BracketAudit {
    pub ordering: BracketOrdering,
    pub da: Relation,
    pub ad: Relation,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub relations: Vec<Relation>,
    pub bracket: Option<BracketAudit>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(Relation::holds)
            && self
                .bracket
                .as_ref()
                .is_none_or(|b| b.ordering != BracketOrdering::Neither)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Relation> {
        let bracket = self
            .bracket
            .as_ref()
            .filter(|b| b.ordering == BracketOrdering::Neither)
            .into_iter()
            .flat_map(|b| [&b.da, &b.ad]);
        self.relations.iter().filter(|r| !r.holds()).chain(bracket)
    }

    /// Failing relations joined with `; `, or `None` on success.
    pub fn witness(&self) -> Option<String> {
        let parts: Vec<String> = self.failures().map(|r| r.to_string()).collect();
        (!parts.is_empty()).then(|| parts.join("; "))
    }
}

fn twisted(x: &Element, y: &Element, s: &QRational) -> Result<Element, AlgebraError> {
    x.twisted_commutator(y, s)
}

fn anticommutator(x: &Element, y: &Element) -> Result<Element, AlgebraError> {
    twisted(x, y, &-QRational::one())
}

fn square(x: &Element) -> Result<Element, AlgebraError> {
    x.try_mul(x)
}

fn bracket_scalar(p: &QRational) -> QRational {
    p - &p.inv().expect("deformation parameter is nonzero")
}

/// Dual-matrix relations with parameter `p`:
/// `AB = p^-1 BA`, `AC = p^-1 CA`, `DB = p^-1 BD`, `DC = p^-1 CD`,
/// `AD + DA = 0`, `A^2 = D^2 = 0`, and `BC - CB = (p - p^-1) X` where the
/// audit records whether `X = DA` or `X = AD` makes it hold.
pub fn check_dual_pattern(x: &SuperMatrix, p: &QRational) -> CheckOutcome {
    let (a, b, c, d) = (x.a(), x.b(), x.c(), x.d());
    let pinv = p.inv().expect("deformation parameter is nonzero");
    let relations = vec![
        Relation::new("AB - p^-1 BA", twisted(a, b, &pinv)),
        Relation::new("AC - p^-1 CA", twisted(a, c, &pinv)),
        Relation::new("DB - p^-1 BD", twisted(d, b, &pinv)),
        Relation::new("DC - p^-1 CD", twisted(d, c, &pinv)),
        Relation::new("AD + DA", anticommutator(a, d)),
        Relation::new("A^2", square(a)),
        Relation::new("D^2", square(d)),
    ];
    let k = bracket_scalar(p);
    let comm = twisted(b, c, &QRational::one());
    let side = |l: &Element, r: &Element| -> Result<Element, AlgebraError> {
        comm.clone()?.try_sub(&l.try_mul(r)?.scale(&k))
    };
    let da = Relation::new("BC - CB - (p - p^-1) DA", side(d, a));
    let ad = Relation::new("BC - CB - (p - p^-1) AD", side(a, d));
    let ordering = match (da.holds(), ad.holds()) {
        (true, true) => BracketOrdering::Both,
        (true, false) => BracketOrdering::Da,
        (false, true) => BracketOrdering::Ad,
        (false, false) => BracketOrdering::Neither,
    };
    CheckOutcome {
        relations,
        bracket: Some(BracketAudit { ordering, da, ad }),
    }
}

/// GL-matrix relations with parameter `p`:
/// `AB = p BA`, `AC = p CA`, `DB = p BD`, `DC = p CD`, `BC + CB = 0`,
/// `B^2 = C^2 = 0`, `AD - DA = (p - p^-1) CB`.
pub fn check_gl_pattern(x: &SuperMatrix, p: &QRational) -> CheckOutcome {
    let (a, b, c, d) = (x.a(), x.b(), x.c(), x.d());
    let k = bracket_scalar(p);
    let bracket =
        twisted(a, d, &QRational::one()).and_then(|lhs| lhs.try_sub(&c.try_mul(b)?.scale(&k)));
    let relations = vec![
        Relation::new("AB - p BA", twisted(a, b, p)),
        Relation::new("AC - p CA", twisted(a, c, p)),
        Relation::new("DB - p BD", twisted(d, b, p)),
        Relation::new("DC - p CD", twisted(d, c, p)),
        Relation::new("BC + CB", anticommutator(b, c)),
        Relation::new("B^2", square(b)),
        Relation::new("C^2", square(c)),
        Relation::new("AD - DA - (p - p^-1) CB", bracket),
    ];
    CheckOutcome {
        relations,
        bracket: None,
    }
}

/// Relations a transformed coordinate pair should satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneKind {
    /// `(x, xi)`: `x xi - p xi x = 0`, `xi^2 = 0`.
    Plane,
    /// `(eta, y)`: `eta^2 = 0`, `y eta - p eta y = 0`.
    DualPlane,
}

/// Applies `x` to the column `(u, v)` and checks the primed pair against
/// `target`.
pub fn transform_plane(
    x: &SuperMatrix,
    coords: (&Element, &Element),
    target: PlaneKind,
    p: &QRational,
) -> CheckOutcome {
    let (u, v) = coords;
    let row = |i: usize| -> Result<Element, AlgebraError> {
        x.entry(i, 0)
            .try_mul(u)?
            .try_add(&x.entry(i, 1).try_mul(v)?)
    };
    let primed = row(0).and_then(|u2| Ok((u2, row(1)?)));
    let relations = match primed {
        Err(e) => vec![Relation::new("action", Err(e))],
        Ok((u2, v2)) => match target {
            PlaneKind::Plane => vec![
                Relation::new("x' xi' - p xi' x'", twisted(&u2, &v2, p)),
                Relation::new("xi'^2", square(&v2)),
            ],
            PlaneKind::DualPlane => vec![
                Relation::new("eta'^2", square(&u2)),
                Relation::new("y' eta' - p eta' y'", twisted(&v2, &u2, p)),
            ],
        },
    };
    CheckOutcome {
        relations,
        bracket: None,
    }
}
