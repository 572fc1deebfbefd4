use std::sync::Arc;

use super::*;
use crate::superalgebra::{builtin, dual_superplane, dual_with_inverses, gl_algebra, superplane};

fn dual() -> (Algebra, SuperMatrix) {
    let alg = builtin("dual").unwrap();
    let m = SuperMatrix::dual_generic(&alg, "").unwrap();
    (alg, m)
}

fn el(alg: &Algebra, word: &[(&str, i32)], c: QRational) -> Element {
    Element::word(alg, word, c).unwrap()
}

fn q(k: i64) -> QRational {
    QRational::q_pow(k)
}

#[test]
fn products_of_the_generic_dual_matrix() {
    let (alg, m) = dual();
    assert_eq!(m.matmul(&SuperMatrix::identity(&alg)).unwrap(), m);
    let m2 = m.power(2).unwrap();
    assert_eq!(m2.format(), Format::Gl);
    assert_eq!(*m2.a(), el(&alg, &[("b", 1), ("c", 1)], q(0)));
    assert_eq!(
        *m2.b(),
        el(&alg, &[("alpha", 1), ("b", 1)], q(0)) + el(&alg, &[("delta", 1), ("b", 1)], q(1))
    );
    let m3 = m.power(3).unwrap();
    assert_eq!(m3.format(), Format::Dual);
    let expected = (el(&alg, &[("alpha", 1)], qnum(2, 1)) + el(&alg, &[("delta", 1)], q(1)))
        * el(&alg, &[("b", 1), ("c", 1)], q(0));
    assert_eq!(*m3.a(), expected);
    assert_eq!(m.power(1).unwrap(), m);
    assert!(m.power(0).unwrap().is_identity());
}

#[test]
fn format_tag_is_validated() {
    let (alg, _) = dual();
    let g = |n: &str| Element::generator(&alg, n).unwrap();
    assert!(SuperMatrix::new(g("b"), g("alpha"), g("delta"), g("c"), Format::Dual).is_err());
    assert!(SuperMatrix::new(g("b"), g("alpha"), g("delta"), g("c"), Format::Gl).is_ok());
    let other = builtin("gl").unwrap();
    let err = SuperMatrix::new(
        g("alpha"),
        g("b"),
        g("c"),
        Element::generator(&other, "d").unwrap(),
        Format::Untagged,
    );
    assert!(matches!(err, Err(AlgebraError::AlgebraMismatch { .. })));
}

#[test]
fn odd_closed_form() {
    let (alg, m) = dual();
    assert_eq!(closed_form_odd(&alg, 1).unwrap(), m);
    let powers = m.powers(11).unwrap();
    for n in 1..=6u32 {
        assert_eq!(
            closed_form_odd(&alg, n).unwrap(),
            powers[2 * n as usize - 2],
            "n = {n}"
        );
    }
    let b3 = closed_form_odd(&alg, 2).unwrap();
    let expected = (el(&alg, &[("b", 1), ("c", 1)], q(0))
        + el(&alg, &[("alpha", 1), ("delta", 1)], q(1)))
        * el(&alg, &[("b", 1)], q(0));
    assert_eq!(*b3.b(), expected);
}

#[test]
fn even_closed_form_needs_cb_in_the_last_entry() {
    let (alg, m) = dual();
    let powers = m.powers(12).unwrap();
    for n in 1..=6u32 {
        let direct = &powers[2 * n as usize - 1];
        assert_eq!(closed_form_even_cb(&alg, n).unwrap(), *direct, "n = {n}");
        let literal = closed_form_even(&alg, n).unwrap();
        let diff = literal.difference(direct).unwrap();
        assert!(diff.a().is_zero() && diff.b().is_zero() && diff.c().is_zero());
        // bc - cb = -(q - q^-1) alpha delta
        let bc_n1 = el(
            &alg,
            &[("b", n as i32 - 1), ("c", n as i32 - 1)],
            QRational::one(),
        );
        let expected = el(&alg, &[("alpha", 1), ("delta", 1)], -q_bracket()) * bc_n1;
        assert_eq!(*diff.d(), expected, "n = {n}");
    }
    assert_eq!(even_coefficient(1), QRational::zero());
    // K(2) = q (1 - q^2)
    assert_eq!(even_coefficient(2), QRational::q() - q(3));
}

fn q_bracket() -> QRational {
    QRational::q() - q(-1)
}

#[test]
fn deltas() {
    let (alg, m) = dual();
    let d1 = m.delta1().unwrap();
    let d2 = m.delta2().unwrap();
    assert_eq!(
        d1,
        el(&alg, &[("b", 1), ("c", 1)], q(0)) - el(&alg, &[("delta", 1), ("alpha", 1)], q(1))
    );
    assert_eq!(d2.to_string(), "b*c - (1)/(q)*alpha*delta");
    let g = |n: &str| Element::generator(&alg, n).unwrap();
    let q2 = q(2);
    assert_eq!(&d1 * &g("b"), &g("b") * &d1);
    assert_eq!(&d2 * &g("c"), &g("c") * &d2);
    for d in [&d1, &d2] {
        assert_eq!(d * &g("alpha"), (&g("alpha") * d).scale(&q2));
        assert_eq!(d * &g("delta"), (&g("delta") * d).scale(&q2));
    }
}

#[test]
fn superdeterminants() {
    let (alg, m) = dual();
    let sdet = m.sdet().unwrap();
    let expected = el(&alg, &[("b", 1), ("c", -1)], q(0))
        - el(
            &alg,
            &[("alpha", 1), ("c", -1), ("delta", 1), ("c", -1)],
            q(0),
        );
    assert_eq!(sdet, expected);
    assert_eq!(sdet.to_string(), "b*c^-1 - (1)/(q)*alpha*delta*c^-2");
    let second = m.sdet_second().unwrap();
    let expected = el(&alg, &[("c", 1), ("b", -1)], q(0))
        - el(
            &alg,
            &[("delta", 1), ("b", -1), ("alpha", 1), ("b", -1)],
            q(0),
        );
    assert_eq!(second, expected);
    let gens: Vec<Element> = m.entries().cloned().collect();
    assert!(sdet.is_central(&gens).unwrap());
    assert!(second.is_central(&gens).unwrap());
}

#[test]
fn inverses_agree() {
    let (alg, m) = dual();
    let li = m.left_inverse().unwrap();
    assert!(li.matmul(&m).unwrap().is_identity());
    assert!(m.matmul(&li).unwrap().is_identity());
    assert_eq!(m.inverse_via_decomposition().unwrap(), li);
    assert_eq!(m.factorized_inverse().unwrap(), li);

    let (lower, upper) = m.decomposition().unwrap();
    assert_eq!(lower.matmul(&upper).unwrap(), m);
    let c_inv_delta = el(&alg, &[("c", -1), ("delta", 1)], q(0));
    assert_eq!(*upper.b(), c_inv_delta);

    // alpha = delta = 0, b = c = 1 gives the flip
    let (zero, one) = (Element::zero(&alg), Element::one(&alg));
    let flip = SuperMatrix::new(
        zero.clone(),
        one.clone(),
        one.clone(),
        zero.clone(),
        Format::Untagged,
    )
    .unwrap();
    let inv = flip.left_inverse().unwrap();
    assert_eq!(inv, flip);
}

#[test]
fn relation_patterns_of_powers() {
    let (_, m) = dual();
    let powers = m.powers(6).unwrap();
    let base = check_dual_pattern(&m, &q(1));
    assert!(base.passed());
    assert_eq!(base.bracket.as_ref().unwrap().ordering, BracketOrdering::Da);
    assert!(!base.bracket.as_ref().unwrap().ad.holds());
    for n in 1..=3usize {
        let odd = check_dual_pattern(&powers[2 * n - 2], &q(2 * n as i64 - 1));
        assert!(odd.passed(), "{:?}", odd.witness());
        assert_eq!(odd.bracket.unwrap().ordering, BracketOrdering::Da);
        let even = check_gl_pattern(&powers[2 * n - 1], &q(2 * n as i64));
        assert!(even.passed(), "{:?}", even.witness());
    }
    let wrong = check_dual_pattern(&powers[1], &q(2));
    assert!(!wrong.passed());
    assert!(wrong.witness().unwrap().contains("A^2"));
}

#[test]
fn gl_powers_and_product_of_duals() {
    let g = Arc::new(gl_algebra());
    let m = SuperMatrix::gl_generic(&g, "").unwrap();
    for n in 1..=4u32 {
        assert!(
            check_gl_pattern(&m.power(n).unwrap(), &q(n as i64)).passed(),
            "n = {n}"
        );
    }
    assert!(!check_gl_pattern(&m.power(2).unwrap(), &q(1)).passed());

    let t = builtin("dualxdual").unwrap();
    let prod = SuperMatrix::dual_generic(&t, "")
        .unwrap()
        .matmul(&SuperMatrix::dual_generic(&t, "2").unwrap())
        .unwrap();
    assert!(check_gl_pattern(&prod, &q(1)).passed());
    assert!(!check_dual_pattern(&prod, &q(1)).passed());
}

#[test]
fn covariance() {
    let p = q(1);
    let cases = [
        (
            gl_algebra().tensor(&superplane()).unwrap(),
            false,
            ("x", "xi"),
            PlaneKind::Plane,
        ),
        (
            gl_algebra().tensor(&dual_superplane()).unwrap(),
            false,
            ("eta", "y"),
            PlaneKind::DualPlane,
        ),
        (
            dual_with_inverses().tensor(&superplane()).unwrap(),
            true,
            ("x", "xi"),
            PlaneKind::DualPlane,
        ),
        (
            dual_with_inverses().tensor(&dual_superplane()).unwrap(),
            true,
            ("eta", "y"),
            PlaneKind::Plane,
        ),
    ];
    for (alg, is_dual, (u, v), target) in cases {
        let alg = Arc::new(alg);
        let m = if is_dual {
            SuperMatrix::dual_generic(&alg, "")
        } else {
            SuperMatrix::gl_generic(&alg, "")
        }
        .unwrap();
        let (u, v) = (
            Element::generator(&alg, u).unwrap(),
            Element::generator(&alg, v).unwrap(),
        );
        let out = transform_plane(&m, (&u, &v), target, &p);
        assert!(out.passed(), "{}: {:?}", alg.name(), out.witness());
        assert!(transform_plane(
            &SuperMatrix::identity(&alg),
            (&u, &v),
            if is_dual { flip(target) } else { target },
            &p
        )
        .passed());
    }
}

fn flip(k: PlaneKind) -> PlaneKind {
    match k {
        PlaneKind::Plane => PlaneKind::DualPlane,
        PlaneKind::DualPlane => PlaneKind::Plane,
    }
}

#[test]
fn matrix_associativity() {
    let (alg, m) = dual();
    let li = m.left_inverse().unwrap();
    let sq = m.power(2).unwrap();
    let x = SuperMatrix::new(
        Element::generator(&alg, "delta").unwrap(),
        el(&alg, &[("c", 2)], q(3)),
        el(&alg, &[("b", -1)], q(-1)),
        Element::generator(&alg, "alpha").unwrap(),
        Format::Dual,
    )
    .unwrap();
    for (a, b, c) in [(&m, &li, &x), (&x, &sq, &m), (&li, &x, &x)] {
        assert_eq!(
            a.matmul(b).unwrap().matmul(c).unwrap(),
            a.matmul(&b.matmul(c).unwrap()).unwrap()
        );
    }
}
