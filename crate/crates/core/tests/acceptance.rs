//! Acceptance criteria, one report line each. Runs without the libtest
//! harness so the lines are printed even when everything passes.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use repnum::arith::{p2, positivity_f};
use repnum::basis::{assemble_basis, declared_dimensions, supported_spaces, BasisError};
use repnum::decomp::{
    compare_printed, decompose, default_precision, printed_formulas, render_formula, table1, tabulated_spaces,
    verify_formula, verify_formula_against_oracle, PrintedComparison,
};
use repnum::etagen::gen_eta_series;
use repnum::genfun::{form_series, normalized_form_series, theta_series, FormSpec};
use repnum::modmeta::{certificate_consistent, eta_certificate, space_meta};
use repnum::oracle::{
    check_odd_square_bijection, check_squared_convolution, check_squared_odd, count_all, evaluate_identity, Identity,
};
use repnum::pkparam::{pk_suite, resolve_e4_12_or_14};
use repnum::qseries::{q, qi, FracQSeries, Q};

const SEED: u64 = 0x5eed_2024;

struct Outcome {
    pass: bool,
    detail: String,
    /// A failure that is expected and whose exact shape has been asserted.
    expected_failure: bool,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
            expected_failure: false,
        }
    }
}

fn spec(s: &str) -> FormSpec {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn random_coeffs(rng: &mut ChaCha8Rng, max_len: usize, max_c: u64) -> Vec<u64> {
    let k = rng.gen_range(1..=max_len);
    (0..k).map(|_| rng.gen_range(1..=max_c)).collect()
}

fn random_series(rng: &mut ChaCha8Rng, prec: usize) -> FracQSeries {
    let c: Vec<i64> = (0..prec).map(|_| rng.gen_range(-20..=20)).collect();
    FracQSeries::from_ints(Q::zero(), &c).expect("zero offset")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let rows = table1();
    let prec = 60;
    let matched = rows.iter().filter(|r| r.matches(prec).unwrap_or(false)).count();
    let row1: Vec<Q> = ["1/120", "0", "-3/40", "-2/15", "0", "6/5", "0", "0", "4"]
        .iter()
        .map(|c| c.parse().expect("rational"))
        .collect();
    let row1_ok = rows.first().is_some_and(|r| r.expected == row1);
    let elapsed = start.elapsed();
    Outcome::new(
        rows.len() == 21 && matched == 21 && row1_ok && elapsed < Duration::from_secs(60),
        format!("{matched}/{} rows exact at {prec} coefficients in {:.2?}", rows.len(), elapsed),
    )
}

fn corpus() -> Vec<FormSpec> {
    let mut out: Vec<FormSpec> = table1().iter().map(|r| r.spec.clone()).collect();
    for sp in tabulated_spaces() {
        out.extend(sp.rows.iter().take(2).map(|r| r.spec.clone()));
    }
    for s in [
        "tri=2^4",
        "tri=1^2 3^2",
        "tri=1^4 6^2",
        "tri=1 3 4^2 6^2",
        "sq=1 2; tri=4^2",
        "sq=1^4; tri=2 6",
        "hex=1; tri=1^2 3^2",
        "hex=8; tri=2 6",
        "fig3=2^4 4^4",
        "fig3=1^2 2",
        "fig3=1 3 5",
        "fig4=1^4 2^3 6",
        "fig4=2 3^4 6^3",
        "fig5=1^2",
        "fig6=1 2",
    ] {
        out.push(spec(s));
    }
    out
}

fn category(s: &FormSpec) -> &'static str {
    match (&s.figurate, s.hex.is_empty(), s.squares.is_empty()) {
        (Some(f), _, _) if f.a == 3 => "fig3",
        (Some(f), _, _) if f.a == 4 => "fig4",
        (Some(_), _, _) => "fig-other",
        (None, true, true) => "tri",
        (None, true, false) => "sq+tri",
        (None, false, true) => "hex+tri",
        (None, false, false) => "mixed",
    }
}

fn criterion_2() -> Outcome {
    let specs = corpus();
    let mut bad = Vec::new();
    for s in &specs {
        let series = form_series(s, 101);
        let counts = count_all(s, 100);
        if let Some(n) = (0..=100).find(|&n| series.coeffs()[n] != Q::from_integer(BigInt::from(counts[n]))) {
            bad.push(format!("{s} at n = {n}"));
        }
    }
    let mut cats: Vec<&str> = specs.iter().map(category).collect();
    cats.sort();
    cats.dedup();
    let covered = ["fig3", "fig4", "hex+tri", "mixed", "sq+tri", "tri"].iter().all(|c| cats.contains(c));
    Outcome::new(
        specs.len() >= 40 && covered && bad.is_empty(),
        format!(
            "{} specs ({}), n <= 100; {}",
            specs.len(),
            cats.join(", "),
            if bad.is_empty() { "all equal".to_string() } else { format!("mismatch: {}", bad.join("; ")) }
        ),
    )
}

fn criterion_3() -> Outcome {
    let bad: Vec<String> = Identity::ALL
        .iter()
        .filter_map(|&id| {
            (0..=30u64).find(|&n| {
                let (l, r) = evaluate_identity(id, n);
                l != r
            })
            .map(|n| format!("{} fails at n = {n}", id.name()))
        })
        .collect();
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} identities exact for n <= 30", Identity::ALL.len())
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let c = random_coeffs(&mut rng, 6, 6);
        let n = rng.gen_range(0..=40);
        if !check_odd_square_bijection(&c, n) {
            bad.push(format!("C = {c:?}, n = {n}"));
        }
    }
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() { "200 random (C, n), all equal".to_string() } else { format!("failures: {}", bad.join("; ")) },
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let prec = 150;
    let theta = theta_series(prec);
    let mut bad = Vec::new();
    for _ in 0..10 {
        let c = random_coeffs(&mut rng, 4, 6);
        let psi = form_series(&FormSpec::triangular(&c).expect("nonempty"), prec);
        let mut rhs = psi.dilate(2).truncate(prec);
        for &ci in &c {
            rhs = rhs.mul(&theta.dilate(ci as usize).truncate(prec));
        }
        if psi.mul(&psi) != rhs {
            bad.push(format!("square identity, C = {c:?}"));
        }
        if let Some(n) = (0..=30).find(|&n| !check_squared_convolution(&c, n) || !check_squared_odd(&c, n)) {
            bad.push(format!("convolution, C = {c:?}, n = {n}"));
        }
    }
    Outcome::new(
        bad.is_empty(),
        if bad.is_empty() {
            format!("10 random C to {prec} terms; convolution and odd-square forms for n <= 30")
        } else {
            bad.join("; ")
        },
    )
}

fn criterion_6() -> Outcome {
    let prec = 40;
    let reports = pk_suite(prec);
    let amb = resolve_e4_12_or_14(prec);
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.holds())
        .map(|r| format!("{} (q^{})", r.label, r.first_mismatch.map_or(-1, |n| n as i64)))
        .collect();
    let all_hold = failing.is_empty();
    // The printed displays for E4(d tau), d = 1..4, are those of E4 at the next
    // dilation, and the two f46 displays carry a constant term.
    let expected: [(&str, Option<usize>, Option<&str>); 10] = [
        ("E4", Some(1), Some("E4@2")),
        ("E4@2", Some(2), Some("E4@3")),
        ("E4@3", Some(3), Some("E4@4")),
        ("E4@4", Some(4), Some("E4@6")),
        ("E4@12", None, None),
        ("f46", Some(0), None),
        ("f46@2", Some(0), None),
        ("f412", None, None),
        ("G", None, None),
        ("H", None, None),
    ];
    let pattern_ok = reports.len() == expected.len()
        && reports.iter().zip(expected).all(|(r, (label, mis, is))| {
            r.label == label
                && r.first_mismatch == mis
                && (is.is_none() || r.printed_is.as_deref() == is)
                && r.factored_ok != Some(false)
        })
        && amb.resolved == Some(12);
    Outcome {
        pass: all_hold && amb.resolved.is_some(),
        detail: format!(
            "to q^{}; failing as printed: {}; 12 vs 14 resolved to {}; errata pattern {}",
            prec - 1,
            if all_hold { "none".to_string() } else { failing.join(", ") },
            amb.resolved.map_or("none".to_string(), |d| d.to_string()),
            if pattern_ok { "confirmed" } else { "NOT confirmed" }
        ),
        expected_failure: !all_hold && pattern_ok,
    }
}

fn criterion_7() -> Outcome {
    let mut exact3 = 0;
    let mut total3 = 0;
    let mut flips = Vec::new();
    let mut bad = Vec::new();
    for pf in printed_formulas() {
        let res = (|| -> Result<(), String> {
            let meta = space_meta(&pf.spec).map_err(|e| e.to_string())?;
            let basis = assemble_basis(meta.weight, meta.level, meta.disc()).map_err(|e| e.to_string())?;
            let prec = default_precision(&basis);
            let (target, _) = normalized_form_series(&pf.spec, prec).map_err(|e| e.to_string())?;
            let d = decompose(&target, &basis, prec).map_err(|e| e.to_string())?;
            let f = render_formula(&d).map_err(|e| e.to_string())?;
            if !verify_formula(&pf.spec, &d, 30).map_err(|e| e.to_string())?.ok() {
                bad.push(format!("{} rendered formula fails the oracle", pf.spec));
            }
            let cmp = compare_printed(&f, pf.formula.as_ref());
            if meta.weight == 3 {
                total3 += 1;
                exact3 += usize::from(cmp == PrintedComparison::Exact);
            }
            match cmp {
                PrintedComparison::SignFlipped => {
                    let printed = pf.formula.as_ref().expect("readable");
                    let rep = verify_formula_against_oracle(&pf.spec, printed, 30).map_err(|e| e.to_string())?;
                    if rep.ok() {
                        bad.push(format!("{} printed sign also verifies", pf.spec));
                    }
                    flips.push(pf.spec.to_string());
                }
                PrintedComparison::Different => bad.push(format!("{} differs from the printed formula", pf.spec)),
                _ => {}
            }
            Ok(())
        })();
        if let Err(e) = res {
            bad.push(format!("{}: {e}", pf.spec));
        }
    }
    let flip_24 = flips.iter().any(|s| s == "tri=2^4");
    Outcome::new(
        exact3 >= 10 && bad.is_empty() && flip_24,
        format!(
            "weight 3: {exact3}/{total3} exact, all oracle-verified to n = 30; weight-2 sign errata ({}): {}{}",
            flips.len(),
            flips.join(", "),
            if bad.is_empty() { String::new() } else { format!("; problems: {}", bad.join("; ")) }
        ),
    )
}

fn criterion_8() -> Outcome {
    // (spec, weight, level, character discriminant) as listed with the forms.
    let headers: [(&str, u32, u64, i64); 30] = [
        ("tri=2^4", 2, 4, 1),
        ("tri=1^2 3^2", 2, 6, 1),
        ("sq=1^2; tri=4^2", 2, 8, 1),
        ("sq=2; tri=2^2 4", 2, 8, 1),
        ("tri=1^2 2 4", 2, 8, 8),
        ("sq=1 2; tri=4^2", 2, 8, 8),
        ("sq=1 3; tri=2 6", 2, 12, 1),
        ("hex=1; tri=2 6", 2, 12, 1),
        ("tri=1 2^2 3", 2, 12, 12),
        ("sq=1^2; tri=2 6", 2, 12, 12),
        ("sq=3^2; tri=4^2", 2, 24, 1),
        ("hex=8; tri=2 6", 2, 24, 1),
        ("tri=3^2 4 6", 2, 24, 24),
        ("tri=1^4 2^2", 3, 4, -4),
        ("tri=2^4 4^2", 3, 8, -4),
        ("tri=4^6", 3, 8, -4),
        ("tri=1^2 2 4^3", 3, 8, -8),
        ("tri=1^5 3", 3, 6, -3),
        ("hex=1; tri=1^2 3^2", 3, 6, -3),
        ("tri=2^5 6", 3, 12, -3),
        ("tri=1^4 6^2", 3, 12, -4),
        ("tri=1 3 4^2 6^2", 3, 24, -3),
        ("tri=1^2 3^2 4^2", 3, 24, -4),
        ("tri=1^3 3 4 6", 3, 24, -8),
        ("tri=1^2 4 6^3", 3, 24, -24),
        ("sq=1^2; tri=2^4", 3, 4, -4),
        ("sq=1 2^3; tri=4^2", 3, 8, -8),
        ("sq=2^3 6; tri=4^2", 3, 24, -3),
        ("fig4=1^4 2^3 6", 4, 24, 12),
        ("fig4=1^8 2 6", 5, 24, -3),
    ];
    let mut bad = Vec::new();
    for (s, k, n, d) in headers {
        match space_meta(&spec(s)) {
            Ok(m) if (m.weight, m.level, m.disc()) == (k, n, d) => {}
            Ok(m) => bad.push(format!("{s}: got {m}")),
            Err(e) => bad.push(format!("{s}: {e}")),
        }
    }
    let mut certified = 0;
    for s in corpus().iter().chain(headers.iter().map(|h| spec(h.0)).collect::<Vec<_>>().iter()) {
        let Ok(meta) = space_meta(s) else { continue };
        match eta_certificate(s, &meta) {
            Ok(None) => {}
            Ok(Some(r)) if certificate_consistent(&r, &meta) => certified += 1,
            Ok(Some(r)) => bad.push(format!("{s}: certificate fails (min cusp order {})", r.min_cusp_order)),
            // the generalized quotient for even a other than 4 needs a larger level
            Err(_) if s.figurate.as_ref().is_some_and(|f| f.a % 2 == 0 && f.a != 4) => {}
            Err(e) => bad.push(format!("{s}: {e}")),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{} headers reproduced; {certified} eta-quotient certificates nonnegative at every cusp{}",
            headers.len(),
            if bad.is_empty() { String::new() } else { format!("; problems: {}", bad.join("; ")) }
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut bad = Vec::new();
    let prec = 12;
    for i in 0..500 {
        let (a, b, c) = (random_series(&mut rng, prec), random_series(&mut rng, prec), random_series(&mut rng, prec));
        let ok = a.add(&b) == b.add(&a)
            && a.mul(&b) == b.mul(&a)
            && a.add(&b).and_then(|x| x.add(&c)) == b.add(&c).and_then(|x| a.add(&x))
            && a.mul(&b).mul(&c) == a.mul(&b.mul(&c))
            && b.add(&c).map(|x| a.mul(&x)) == a.mul(&b).add(&a.mul(&c));
        if !ok {
            bad.push(format!("ring law case {i}"));
        }
    }
    for _ in 0..1000 {
        let d: i64 = rng.gen_range(1..=500);
        let x = q(rng.gen_range(0..=10 * d), d);
        let f = positivity_f(&x);
        if f < Q::zero() || positivity_f(&(&x + qi(1))) != f || p2(&x) < q(-1, 12) {
            bad.push(format!("positivity at {x}"));
        }
    }
    for _ in 0..50 {
        let delta: u64 = rng.gen_range(1..=8);
        let g = rng.gen_range(0..delta);
        let c: u64 = rng.gen_range(1..=4);
        if gen_eta_series(delta, g, 40).dilate(c as usize).truncate(40) != gen_eta_series(c * delta, c * g, 40) {
            bad.push(format!("duplication ({delta},{g},{c})"));
        }
    }
    let mut rows = 0;
    let mut incomplete = 0;
    for (k, n, d) in supported_spaces() {
        let (e, s) = declared_dimensions(k, n, d).expect("declared");
        match assemble_basis(k, n, d) {
            Ok(b) if b.dim() == e + s => rows += 1,
            Ok(b) => bad.push(format!("{}: dim {} != {}", b.tag(), b.dim(), e + s)),
            Err(BasisError::IncompleteBasis { .. }) => incomplete += 1,
            Err(err) => bad.push(format!("M{k}({n},{d}): {err}")),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "500 ring-law cases, 1000 rationals, 50 duplications; {rows} bases independent with declared dimensions ({incomplete} incomplete row skipped){}",
            if bad.is_empty() { String::new() } else { format!("; problems: {}", bad.join("; ")) }
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut weight3 = (0, 0);
    let mut other = (0, 0);
    let mut oracle = (0, 0);
    let mut bad = Vec::new();
    for sp in tabulated_spaces() {
        let basis = match assemble_basis(sp.weight, sp.level, sp.disc) {
            Ok(b) => b,
            Err(e) => {
                bad.push(format!("{}: {e}", sp.tag()));
                continue;
            }
        };
        let prec = default_precision(&basis);
        for row in &sp.rows {
            let exact = sp.check(row, &basis, prec).is_ok_and(|c| c.coefficients_match && c.header_matches);
            let slot = if sp.weight == 3 { &mut weight3 } else { &mut other };
            slot.1 += 1;
            slot.0 += usize::from(exact);
            if !exact {
                bad.push(format!("{} {}", sp.tag(), row.spec));
            }
            if sp.weight == 2 {
                oracle.1 += 1;
                let ok = normalized_form_series(&row.spec, prec)
                    .ok()
                    .and_then(|(t, _)| decompose(&t, &basis, prec).ok())
                    .and_then(|d| verify_formula(&row.spec, &d, 30).ok())
                    .is_some_and(|r| r.ok());
                oracle.0 += usize::from(ok);
            }
        }
    }
    Outcome::new(
        weight3.0 >= 10 && bad.is_empty() && oracle.0 == oracle.1,
        format!(
            "weight 3: {}/{} rows bit-exact; weights 2, 4, 5: {}/{} exact; weight-2 rows oracle-verified: {}/{}{}",
            weight3.0,
            weight3.1,
            other.0,
            other.1,
            oracle.0,
            oracle.1,
            if bad.is_empty() { String::new() } else { format!("; mismatched: {}", bad.join("; ")) }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut unexpected = 0;
    for (n, run) in criteria {
        let start = Instant::now();
        let o = run();
        let word = if o.pass { "PASS" } else { "FAIL" };
        let note = if o.expected_failure { " (known source errata, pattern asserted)" } else { "" };
        println!("criterion {n:>2} {word}{note}: {} [{:.2?}]", o.detail, start.elapsed());
        if !o.pass && !o.expected_failure {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
