use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::qfield::QRational;
use crate::superalgebra::{
    brute_force_nf, builtin, dual_superplane, dual_with_inverses, gl_algebra, normal_form,
    q_bracket, random_word, superplane, Algebra, AlgebraError, Element, BUILTIN_NAMES,
};
use crate::supermatrix::{
    check_dual_pattern, check_gl_pattern, closed_form_even, closed_form_even_cb, closed_form_odd,
    transform_plane, BracketOrdering, PlaneKind, Relation, SuperMatrix,
};

use super::{Status, SuiteConfig};

type Params = BTreeMap<String, Value>;
type Outcome = (Status, Option<String>, Params);

pub struct Check {
    pub id: &'static str,
    pub name: &'static str,
    /// The identity under test, in plain notation.
    pub statement: &'static str,
    pub run: fn(&SuiteConfig) -> Outcome,
}

macro_rules! check {
    ($id:literal, $name:literal, $stmt:literal, $body:ident) => {
        Check {
            id: $id,
            name: $name,
            statement: $stmt,
            run: |cfg| match $body(cfg) {
                Ok(out) => out,
                Err(e) => (
                    Status::Fail,
                    Some(format!("engine error: {e}")),
                    Params::new(),
                ),
            },
        }
    };
}

pub static CHECKS: [Check; 17] = [
    check!(
        "C01",
        "dual-relations-axioms",
        "alpha b = q^-1 b alpha, alpha c = q^-1 c alpha, delta b = q^-1 b delta, delta c = q^-1 c delta, \
         alpha delta + delta alpha = 0, alpha^2 = delta^2 = 0, bc - cb = (q - q^-1) delta alpha",
        dual_relations
    ),
    check!(
        "C02",
        "inverse-relations",
        "alpha b^-1 = q b^-1 alpha, alpha c^-1 = q c^-1 alpha, delta b^-1 = q b^-1 delta, delta c^-1 = q c^-1 delta, \
         b c^-1 - c^-1 b = (q - q^-1) alpha c^-1 delta c^-1",
        inverse_relations
    ),
    check!(
        "C03",
        "delta-commutation",
        "D1 b = b D1, D2 c = c D2, Dk alpha = q^2 alpha Dk, Dk delta = q^2 delta Dk (k = 1, 2), \
         D1 = bc - q delta alpha, D2 = cb - q alpha delta",
        delta_commutation
    ),
    check!(
        "C04",
        "delta-sdet-forms",
        "b^2 D1^-1 = b c^-1 - alpha c^-1 delta c^-1, c^2 D2^-1 = c b^-1 - delta b^-1 alpha b^-1",
        sdet_forms
    ),
    check!("C05", "sdet-central", "b^2 D1^-1 and c^2 D2^-1 commute with alpha, b, c, delta", sdet_central),
    check!(
        "C06",
        "left-inverse-two-sided",
        "L = [[-q D1^-1 delta, D1^-1 b], [D2^-1 c, -q D2^-1 alpha]] satisfies L M = M L = 1 and equals \
         [[-c^-1 delta c^-1, b^-1], [c^-1, -b^-1 alpha b^-1]] diag(c^2 D2^-1, b^2 D1^-1)",
        left_inverse
    ),
    check!(
        "C07",
        "decomposition",
        "M = [[alpha, b - alpha c^-1 delta], [c, 0]] [[1, c^-1 delta], [0, 1]], and inverting the factors gives M^-1",
        decomposition
    ),
    check!(
        "C08",
        "odd-power-closed-form",
        "M^(2n-1) = [[([n] alpha + q[n-1] delta)(bc)^(n-1), (bc + q[n-1]_{q^2} alpha delta)(bc)^(n-2) b], \
         [(cb + q[n-1]_{q^2} delta alpha)(cb)^(n-2) c, ([n] delta + q[n-1] alpha)(cb)^(n-1)]]",
        odd_closed_form
    ),
    check!(
        "C09",
        "even-power-closed-form",
        "M^(2n) = [[(bc + K alpha delta)(bc)^(n-1), [n](alpha + q delta) b (cb)^(n-1)], \
         [[n](delta + q alpha) c (bc)^(n-1), (bc + K delta alpha)(cb)^(n-1)]], K = q (1-q^2)/(1+q^2) [n][n-1]",
        even_closed_form
    ),
    check!(
        "C10",
        "odd-power-relations",
        "M^(2n-1) is a dual matrix with parameter q^(2n-1)",
        odd_power_relations
    ),
    check!(
        "C11",
        "even-power-relations",
        "M^(2n) satisfies the GL_q(1|1) relations with parameter q^(2n)",
        even_power_relations
    ),
    check!(
        "C12",
        "product-of-duals",
        "M M' for independent dual matrices satisfies the GL_q(1|1) relations with parameter q and not the dual ones",
        product_of_duals
    ),
    check!("C13", "gl-power-parameter", "M in GL_q(1|1) implies M^n in GL_{q^n}(1|1)", gl_powers),
    check!(
        "C14",
        "covariance-gl",
        "M = [[a, beta], [gamma, d]] preserves x xi = q xi x, xi^2 = 0 on (x, xi) and eta^2 = 0, y eta = q eta y on (eta, y)",
        covariance_gl
    ),
    check!(
        "C15",
        "covariance-dual",
        "M = [[alpha, b], [c, delta]] maps (x, xi) to a pair with eta^2 = 0, y eta = q eta y and (eta, y) to a pair \
         with x xi = q xi x, xi^2 = 0",
        covariance_dual
    ),
    check!(
        "C16",
        "confluence-fuzz",
        "normal_form agrees with random-order rewriting on random words in every built-in algebra",
        confluence
    ),
    check!(
        "C17",
        "sign-audit",
        "which of D A or A D makes B C - C B = (q^(2n-1) - q^-(2n-1)) X hold for M^(2n-1)",
        sign_audit
    ),
];

const WORDS_PER_ALGEBRA: usize = 24;
const BRUTE_SEEDS: u64 = 3;

fn params(pairs: &[(&str, Value)]) -> Params {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn max_n(cfg: &SuiteConfig) -> Params {
    params(&[("max_n", json!(cfg.max_n))])
}

fn verdict(relations: &[Relation], p: Params) -> Outcome {
    let failing: Vec<String> = relations
        .iter()
        .filter(|r| !r.holds())
        .map(|r| r.to_string())
        .collect();
    if failing.is_empty() {
        (Status::Pass, None, p)
    } else {
        (Status::Fail, Some(failing.join("; ")), p)
    }
}

struct Dual {
    alg: Algebra,
    m: SuperMatrix,
}

impl Dual {
    fn new() -> Result<Self, AlgebraError> {
        let alg = builtin("dual")?;
        let m = SuperMatrix::dual_generic(&alg, "")?;
        Ok(Dual { alg, m })
    }

    fn g(&self, name: &str) -> Result<Element, AlgebraError> {
        Element::generator(&self.alg, name)
    }

    fn w(&self, word: &[(&str, i32)]) -> Result<Element, AlgebraError> {
        Element::word(&self.alg, word, QRational::one())
    }
}

fn matrix_relations(label: &str, x: &SuperMatrix, y: &SuperMatrix) -> Vec<Relation> {
    let mut out = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            out.push(Relation::new(
                format!("{label} e{}{}", i + 1, j + 1),
                x.entry(i, j).try_sub(y.entry(i, j)),
            ));
        }
    }
    out
}

fn dual_relations(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let (alpha, delta, b, c) = (d.g("alpha")?, d.g("delta")?, d.g("b")?, d.g("c")?);
    let qi = QRational::q_pow(-1);
    let rels = vec![
        Relation::new("alpha b - q^-1 b alpha", alpha.twisted_commutator(&b, &qi)),
        Relation::new("alpha c - q^-1 c alpha", alpha.twisted_commutator(&c, &qi)),
        Relation::new("delta b - q^-1 b delta", delta.twisted_commutator(&b, &qi)),
        Relation::new("delta c - q^-1 c delta", delta.twisted_commutator(&c, &qi)),
        Relation::new(
            "alpha delta + delta alpha",
            alpha.twisted_commutator(&delta, &-QRational::one()),
        ),
        Relation::new("alpha^2", alpha.try_mul(&alpha)),
        Relation::new("delta^2", delta.try_mul(&delta)),
        Relation::new(
            "bc - cb - (q - q^-1) delta alpha",
            b.twisted_commutator(&c, &QRational::one())
                .and_then(|x| x.try_sub(&delta.try_mul(&alpha)?.scale(&q_bracket()))),
        ),
    ];
    Ok(verdict(&rels, Params::new()))
}

fn inverse_relations(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let stated_inverse = d
        .alg
        .rules()
        .filter(|r| !r.derived)
        .any(|r| r.left.inverse || r.right.inverse);
    if stated_inverse {
        return Ok((
            Status::Fail,
            Some("inverse-letter rules are stated rather than derived".into()),
            Params::new(),
        ));
    }
    let q = QRational::q();
    let mut rels = Vec::new();
    for odd in ["alpha", "delta"] {
        for inv in ["b", "c"] {
            let lhs = d.w(&[(odd, 1), (inv, -1)])?;
            let rhs = d.w(&[(inv, -1), (odd, 1)])?.scale(&q);
            rels.push(Relation::new(
                format!("{odd} {inv}^-1 - q {inv}^-1 {odd}"),
                lhs.try_sub(&rhs),
            ));
        }
    }
    let (status, witness, p) = verdict(&rels, Params::new());
    if status.is_fail() {
        return Ok((status, witness, p));
    }
    let lhs = d
        .w(&[("b", 1), ("c", -1)])?
        .try_sub(&d.w(&[("c", -1), ("b", 1)])?)?;
    let literal = d
        .w(&[("alpha", 1), ("c", -1), ("delta", 1), ("c", -1)])?
        .scale(&q_bracket());
    let sandwich = d
        .w(&[("c", -1), ("alpha", 1), ("delta", 1), ("c", -1)])?
        .scale(&q_bracket());
    let residual = lhs.try_sub(&literal)?;
    Ok(if residual.is_zero() {
        (Status::Pass, None, p)
    } else if lhs == sandwich {
        (
            Status::Anomaly(
                "b c^-1 - c^-1 b = (q - q^-1) c^-1 alpha delta c^-1 = (1 - q^-2) alpha c^-1 delta c^-1; \
                 the stated right-hand side is larger by a factor q"
                    .into(),
            ),
            Some(format!("b c^-1 - c^-1 b - (q - q^-1) alpha c^-1 delta c^-1 = {residual}")),
            p,
        )
    } else {
        (
            Status::Fail,
            Some(format!(
                "b c^-1 - c^-1 b - (q - q^-1) alpha c^-1 delta c^-1 = {residual}"
            )),
            p,
        )
    })
}

fn delta_commutation(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let (d1, d2) = (d.m.delta1()?, d.m.delta2()?);
    let (alpha, delta, b, c) = (d.g("alpha")?, d.g("delta")?, d.g("b")?, d.g("c")?);
    let q2 = QRational::q_pow(2);
    let one = QRational::one();
    let mut rels = vec![
        Relation::new("D1 b - b D1", d1.twisted_commutator(&b, &one)),
        Relation::new("D2 c - c D2", d2.twisted_commutator(&c, &one)),
    ];
    for (k, dk) in [(1, &d1), (2, &d2)] {
        rels.push(Relation::new(
            format!("D{k} alpha - q^2 alpha D{k}"),
            dk.twisted_commutator(&alpha, &q2),
        ));
        rels.push(Relation::new(
            format!("D{k} delta - q^2 delta D{k}"),
            dk.twisted_commutator(&delta, &q2),
        ));
    }
    Ok(verdict(&rels, Params::new()))
}

fn sdet_forms(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let first = d.w(&[("b", 1), ("c", -1)])?.try_sub(&d.w(&[
        ("alpha", 1),
        ("c", -1),
        ("delta", 1),
        ("c", -1),
    ])?)?;
    let second = d.w(&[("c", 1), ("b", -1)])?.try_sub(&d.w(&[
        ("delta", 1),
        ("b", -1),
        ("alpha", 1),
        ("b", -1),
    ])?)?;
    let rels = vec![
        Relation::new(
            "b^2 D1^-1 - (b c^-1 - alpha c^-1 delta c^-1)",
            d.m.sdet()?.try_sub(&first),
        ),
        Relation::new(
            "c^2 D2^-1 - (c b^-1 - delta b^-1 alpha b^-1)",
            d.m.sdet_second()?.try_sub(&second),
        ),
    ];
    Ok(verdict(&rels, Params::new()))
}

fn sdet_central(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let one = QRational::one();
    let mut rels = Vec::new();
    for (label, x) in [
        ("b^2 D1^-1", d.m.sdet()?),
        ("c^2 D2^-1", d.m.sdet_second()?),
    ] {
        for g in ["alpha", "b", "c", "delta"] {
            rels.push(Relation::new(
                format!("[{label}, {g}]"),
                x.twisted_commutator(&d.g(g)?, &one),
            ));
        }
    }
    Ok(verdict(&rels, Params::new()))
}

fn left_inverse(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let li = d.m.left_inverse()?;
    let id = SuperMatrix::identity(&d.alg);
    let mut rels = matrix_relations("L M - 1", &li.matmul(&d.m)?, &id);
    rels.extend(matrix_relations("M L - 1", &d.m.matmul(&li)?, &id));
    rels.extend(matrix_relations(
        "factorized - L",
        &d.m.factorized_inverse()?,
        &li,
    ));
    Ok(verdict(&rels, Params::new()))
}

fn decomposition(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let (lower, upper) = d.m.decomposition()?;
    let mut rels = matrix_relations("lower upper - M", &lower.matmul(&upper)?, &d.m);
    rels.extend(matrix_relations(
        "decomposition inverse - L",
        &d.m.inverse_via_decomposition()?,
        &d.m.left_inverse()?,
    ));
    Ok(verdict(&rels, Params::new()))
}

fn odd_closed_form(cfg: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let powers = d.m.powers(2 * cfg.max_n - 1)?;
    let mut rels = Vec::new();
    for n in 1..=cfg.max_n {
        let label = format!("n = {n}: closed form - M^{}", 2 * n - 1);
        rels.extend(matrix_relations(
            &label,
            &closed_form_odd(&d.alg, n)?,
            &powers[2 * n as usize - 2],
        ));
    }
    Ok(verdict(&rels, max_n(cfg)))
}

fn even_closed_form(cfg: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let powers = d.m.powers(2 * cfg.max_n)?;
    let mut literal = Vec::new();
    let mut repaired = Vec::new();
    for n in 1..=cfg.max_n {
        let direct = &powers[2 * n as usize - 1];
        let label = format!("n = {n}: closed form - M^{}", 2 * n);
        literal.extend(matrix_relations(
            &label,
            &closed_form_even(&d.alg, n)?,
            direct,
        ));
        repaired.extend(matrix_relations(
            &label,
            &closed_form_even_cb(&d.alg, n)?,
            direct,
        ));
    }
    let (status, witness, p) = verdict(&literal, max_n(cfg));
    if !status.is_fail() || repaired.iter().any(|r| !r.holds()) {
        return Ok((status, witness, p));
    }
    Ok((
        Status::Anomaly(
            "the (2,2) entry equals (cb + K delta alpha)(cb)^(n-1); the stated leading bc is off by -(q - q^-1) alpha delta (bc)^(n-1)"
                .into(),
        ),
        witness,
        p,
    ))
}

fn odd_power_relations(cfg: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let powers = d.m.powers(2 * cfg.max_n - 1)?;
    let mut failing = Vec::new();
    for n in 1..=cfg.max_n {
        let k = 2 * n as i64 - 1;
        let out = check_dual_pattern(&powers[k as usize - 1], &QRational::q_pow(k));
        if let Some(w) = out.witness() {
            failing.push(format!("n = {n}: {w}"));
        }
    }
    Ok(joined(failing, max_n(cfg)))
}

fn even_power_relations(cfg: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let powers = d.m.powers(2 * cfg.max_n)?;
    let mut failing = Vec::new();
    for n in 1..=cfg.max_n {
        let k = 2 * n as i64;
        let out = check_gl_pattern(&powers[k as usize - 1], &QRational::q_pow(k));
        if let Some(w) = out.witness() {
            failing.push(format!("n = {n}: {w}"));
        }
    }
    Ok(joined(failing, max_n(cfg)))
}

fn joined(failing: Vec<String>, p: Params) -> Outcome {
    if failing.is_empty() {
        (Status::Pass, None, p)
    } else {
        (Status::Fail, Some(failing.join("; ")), p)
    }
}

fn product_of_duals(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let t = builtin("dualxdual")?;
    let prod = SuperMatrix::dual_generic(&t, "")?.matmul(&SuperMatrix::dual_generic(&t, "2")?)?;
    let q = QRational::q();
    let gl = check_gl_pattern(&prod, &q);
    let dual = check_dual_pattern(&prod, &q);
    let p = params(&[("p", json!("q"))]);
    Ok(match (gl.passed(), dual.passed()) {
        (true, false) => (Status::Pass, None, p),
        (false, _) => (Status::Fail, gl.witness(), p),
        (true, true) => (
            Status::Fail,
            Some("the product also satisfies the dual relations".into()),
            p,
        ),
    })
}

fn gl_powers(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let alg: Algebra = Arc::new(gl_algebra());
    let m = SuperMatrix::gl_generic(&alg, "")?;
    let mut failing = Vec::new();
    for n in 2..=4u32 {
        let out = check_gl_pattern(&m.power(n)?, &QRational::q_pow(n as i64));
        if let Some(w) = out.witness() {
            failing.push(format!("n = {n}: {w}"));
        }
    }
    Ok(joined(failing, params(&[("n", json!([2, 3, 4]))])))
}

/// Label, algebra, whether the matrix is dual, coordinate names, target.
type CovarianceCase<'a> = (&'a str, Algebra, bool, (&'a str, &'a str), PlaneKind);

fn covariance(cases: Vec<CovarianceCase<'_>>, what: &str) -> Result<Outcome, AlgebraError> {
    let q = QRational::q();
    let mut failing = Vec::new();
    for (label, alg, is_dual, (u, v), target) in cases {
        let m = if is_dual {
            SuperMatrix::dual_generic(&alg, "")?
        } else {
            SuperMatrix::gl_generic(&alg, "")?
        };
        let (u, v) = (Element::generator(&alg, u)?, Element::generator(&alg, v)?);
        if let Some(w) = transform_plane(&m, (&u, &v), target, &q).witness() {
            failing.push(format!("{label}: {w}"));
        }
    }
    Ok(if failing.is_empty() {
        (Status::Pass, None, Params::new())
    } else {
        (
            Status::Anomaly(format!(
                "{what} not covariant under the super sign convention"
            )),
            Some(failing.join("; ")),
            Params::new(),
        )
    })
}

fn covariance_gl(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let v = Arc::new(gl_algebra().tensor(&superplane())?);
    let vhat = Arc::new(gl_algebra().tensor(&dual_superplane())?);
    covariance(
        vec![
            ("M (x, xi)", v, false, ("x", "xi"), PlaneKind::Plane),
            (
                "M (eta, y)",
                vhat,
                false,
                ("eta", "y"),
                PlaneKind::DualPlane,
            ),
        ],
        "gl matrix",
    )
}

fn covariance_dual(_: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let v = Arc::new(dual_with_inverses().tensor(&superplane())?);
    let vhat = Arc::new(dual_with_inverses().tensor(&dual_superplane())?);
    covariance(
        vec![
            ("M (x, xi)", v, true, ("x", "xi"), PlaneKind::DualPlane),
            ("M (eta, y)", vhat, true, ("eta", "y"), PlaneKind::Plane),
        ],
        "dual matrix",
    )
}

fn confluence(cfg: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let mut failing = Vec::new();
    let mut checked = 0usize;
    for (i, name) in BUILTIN_NAMES.iter().enumerate() {
        let alg = builtin(name)?;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i as u64));
        for _ in 0..WORDS_PER_ALGEBRA {
            let word = random_word(&alg, &mut rng, 6);
            let nf = normal_form(&alg, &word, QRational::one())?;
            for s in 0..BRUTE_SEEDS {
                let brute = brute_force_nf(
                    &alg,
                    &word,
                    QRational::one(),
                    cfg.seed.wrapping_mul(31).wrapping_add(s),
                )?;
                checked += 1;
                if brute != nf && failing.len() < 3 {
                    failing.push(format!(
                        "{name} {word:?}: engine {nf}, random order {brute}"
                    ));
                }
            }
        }
    }
    let p = params(&[("seed", json!(cfg.seed)), ("reductions", json!(checked))]);
    Ok(joined(failing, p))
}

fn sign_audit(cfg: &SuiteConfig) -> Result<Outcome, AlgebraError> {
    let d = Dual::new()?;
    let powers = d.m.powers(2 * cfg.max_n - 1)?;
    let mut orderings = Vec::new();
    let mut ad_witness = None;
    for n in 1..=cfg.max_n {
        let k = 2 * n as i64 - 1;
        let out = check_dual_pattern(&powers[k as usize - 1], &QRational::q_pow(k));
        let audit = out.bracket.expect("dual pattern records the bracket");
        if ad_witness.is_none() && !audit.ad.holds() {
            ad_witness = Some(format!("n = {n}: {}", audit.ad));
        }
        orderings.push(audit.ordering);
    }
    let p = max_n(cfg);
    let all = |o: BracketOrdering| {
        orderings
            .iter()
            .all(|x| *x == o || *x == BracketOrdering::Both)
    };
    Ok(if all(BracketOrdering::Ad) {
        (Status::Pass, None, p)
    } else if all(BracketOrdering::Da) {
        (
            Status::Anomaly(format!(
                "bracket holds with D A for n = 1..{}, not with the stated A D",
                cfg.max_n
            )),
            ad_witness,
            p,
        )
    } else {
        let list: Vec<String> = orderings
            .iter()
            .enumerate()
            .map(|(i, o)| format!("n = {}: {o}", i + 1))
            .collect();
        (Status::Fail, Some(list.join("; ")), p)
    })
}
