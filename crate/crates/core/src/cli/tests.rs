use super::*;
use crate::expr::Span;
use crate::supermatrix::SuperMatrix;

fn dual() -> Algebra {
    builtin("dual").unwrap()
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("qdual").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn parse_accepts_the_grammar() {
    let alg = dual();
    let delta1 = SuperMatrix::dual_generic(&alg, "")
        .unwrap()
        .delta1()
        .unwrap();
    assert_eq!(evaluate("b*c - q*delta*alpha", &alg).unwrap(), delta1);
    assert_eq!(
        evaluate("b*c - (q - q^-1)*delta*alpha - (1/q)*delta*alpha", &alg).unwrap(),
        delta1
    );
    assert!(evaluate("alpha^2", &alg).unwrap().is_zero());
    assert!(parse("b^-1*alpha", &alg).is_ok());
    assert_eq!(
        evaluate("c*b", &alg).unwrap(),
        evaluate("b*c - (q - q^-1)*delta*alpha", &alg).unwrap()
    );
}

#[test]
fn parse_errors_carry_positions() {
    let alg = dual();
    assert_eq!(
        parse("b*foo", &alg).unwrap_err(),
        LangError::UnknownIdentifier {
            name: "foo".into(),
            span: Span { start: 2, end: 5 }
        }
    );
    assert!(matches!(
        parse("alpha^-1", &alg),
        Err(LangError::NegativePower { .. })
    ));
    assert!(matches!(parse("b c", &alg), Err(LangError::Syntax(e)) if e.position == 2));
    assert!(
        matches!(evaluate("b/c", &alg), Err(LangError::NonScalarDivisor { span }) if span.start == 2)
    );
    assert!(matches!(
        evaluate("b/(q - q)", &alg),
        Err(LangError::Field { .. })
    ));
    assert!(matches!(
        evaluate("(alpha + delta)^-1", &alg),
        Err(LangError::Algebra { .. })
    ));
    assert!(matches!(
        evaluate("b^99999999999", &alg),
        Err(LangError::ExponentRange { .. })
    ));
}

#[test]
fn scalars_fold_before_lowering() {
    let alg = dual();
    assert_eq!(
        print(&evaluate("1", &alg).unwrap(), RenderStyle::Ascii),
        "1"
    );
    assert_eq!(
        print(
            &evaluate("(1 - q^4)/(1 - q^2)", &alg).unwrap(),
            RenderStyle::Ascii
        ),
        "(q^2 + 1)"
    );
    let x = evaluate("(b + alpha)^-1", &alg).unwrap();
    assert!(x
        .try_mul(&evaluate("b + alpha", &alg).unwrap())
        .unwrap()
        .is_one());
}

#[test]
fn printed_forms_parse_back() {
    for name in BUILTIN_NAMES {
        let alg = builtin(name).unwrap();
        let gens: Vec<String> = alg.generators().iter().map(|g| g.name.clone()).collect();
        let mut inputs = vec![format!(
            "{}*{} - (q^3 - 1/2)/(q + 2)*{}",
            gens[1], gens[0], gens[0]
        )];
        inputs.push(format!("({} + q*{})^3", gens[gens.len() - 1], gens[0]));
        for input in inputs {
            let x = evaluate(&input, &alg).unwrap();
            let text = print(&x, RenderStyle::Ascii);
            assert_eq!(evaluate(&text, &alg).unwrap(), x, "{name}: {text}");
        }
    }
}

#[test]
fn styles() {
    let alg = dual();
    let x = evaluate("q^2*alpha*c^-1", &alg).unwrap();
    assert_eq!(print(&x, RenderStyle::Unicode), "(q²)·αc⁻¹");
    assert_eq!(print(&x, RenderStyle::Latex), "q^{2} \\alpha c^{-1}");
    let (code, out, _) = cli(&["nf", "--unicode", "delta*alpha"]);
    assert_eq!((code, out.as_str()), (0, "-αδ\n"));
}

#[test]
fn nf_command() {
    assert_eq!(
        cli(&["nf", "--algebra", "gl", "gamma*beta"]),
        (0, "-beta*gamma\n".into(), String::new())
    );
    assert_eq!(cli(&["nf", "-alpha*alpha"]).0, 0);
    let (code, _, err) = cli(&["nf", "--algebra", "gl", "alpha"]);
    assert_eq!(code, 2);
    assert!(
        err.contains("unknown identifier `alpha` at column 1"),
        "{err}"
    );
    assert_eq!(cli(&["nf", "--algebra", "nope", "1"]).0, 2);
    assert_eq!(cli(&["nf", "b*"]).0, 2);
}

#[test]
fn descriptor_files_load() {
    let (code, toml, _) = cli(&["algebra", "dualplane"]);
    assert_eq!(code, 0);
    let path = std::env::temp_dir().join(format!("qdual-cli-{}.toml", std::process::id()));
    std::fs::write(&path, toml).unwrap();
    let (code, out, err) = cli(&["nf", "--algebra", path.to_str().unwrap(), "y*eta"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, 0, "{err}");
    assert_eq!(out, cli(&["nf", "--algebra", "dualplane", "y*eta"]).1);
}

#[test]
fn matrix_commands() {
    let (code, out, _) = cli(&["matpow", "--n", "3", "--compare"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("equal\n"));
    assert_eq!(out.matches("e11 = ").count(), 2);
    let (code, out, _) = cli(&["matpow", "--n", "2", "--compare"]);
    assert_eq!(code, 1);
    assert!(out.contains("differ\n"));
    assert_eq!(
        cli(&["matpow", "--n", "2"]).1,
        cli(&["matpow", "--n", "2", "--direct"]).1
    );
    assert_eq!(cli(&["matpow", "--n", "0"]).0, 2);
    assert_eq!(cli(&["matpow", "--n", "2", "--direct", "--compare"]).0, 2);
    let (code, out, _) = cli(&["sdet"]);
    assert_eq!(
        (code, out.as_str()),
        (0, "b*c^-1 - (1)/(q)*alpha*delta*c^-2\n")
    );
    let (code, out, _) = cli(&["inverse"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn verify_command() {
    let (code, out, _) = cli(&["verify", "--only", "C05,c03", "--format", "machine"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    assert!(out.starts_with("{\"check_id\":\"C03\""));
    let (code, out, _) = cli(&["verify", "--only", "C17", "--max-n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("anomaly("));
    assert_eq!(cli(&["verify", "--only", "C99"]).0, 2);
    assert_eq!(cli(&["verify", "--max-n", "0"]).0, 2);
    assert_eq!(cli(&["verify", "--format", "yaml"]).0, 2);
}

#[test]
fn usage() {
    assert_eq!(cli(&["--bogus"]).0, 2);
    assert_eq!(cli(&[]).0, 2);
    let (code, out, _) = cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
    assert_eq!(cli(&["sdet", "--unicode", "--latex"]).0, 2);
}
