//! The acceptance suite. Every criterion is a pure function of the seed;
//! nothing here reads the clock.

use std::collections::BTreeMap;

use ccr_hopf::algebra::{
    commutator, deformation_constant, expand_k, normal_form_with, Basis, Expr, Generator, Presentation, Schedule,
    Variant, Word,
};
use ccr_hopf::fock::{
    boundedness_trend, phi_pi_along, transfer_rep, truncation_sweep, vacuum_generating_function, Family,
    FockRepresentation, ModeSpace, SparseOperator,
};
use ccr_hopf::hopf::{AxiomChecker, HopfSpec, Residual, TensorExpr};
use ccr_hopf::measure::{bochner_mc, EtaSweep, GaussianModel, TestFunction};
use ccr_hopf::{Execution, Scalar};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{axiom_entry, ResultEntry};
use crate::CliError;

/// Criterion names in report order.
pub const CRITERIA: [&str; 12] = [
    "c01-ccr-normal-forms",
    "c02-confluence",
    "c03-collapse-identity",
    "c04-special-cases",
    "c05-classical-hopf",
    "c06-deformed-strict-hopf",
    "c07-collapsed-diagnostics",
    "c08-fock-numerics",
    "c09-representation-functor",
    "c10-transfer",
    "c11-boundedness-trend",
    "c12-measure",
];

pub fn run_all(seed: u64, exec: Execution) -> Result<Vec<ResultEntry>, CliError> {
    Ok(vec![
        ccr_normal_forms()?,
        confluence(seed, exec),
        collapse_identity(seed)?,
        special_cases(seed)?,
        classical_hopf(exec)?,
        deformed_strict_hopf(exec)?,
        collapsed_diagnostics(exec)?,
        fock_numerics(seed)?,
        representation_functor(seed, exec)?,
        transfer(seed)?,
        boundedness(exec)?,
        measure(seed, exec)?,
    ])
}

/// Independent stream for one criterion.
fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn ccr_normal_forms() -> Result<ResultEntry, CliError> {
    use Generator::*;
    let x = Expr::gen(Pi(0));
    let y = Expr::gen(Phi(0));
    let minus_i = -Scalar::i();
    let deformed = commutator(&x, &y, &Presentation::collapsed())?;
    let want_deformed = Expr::gen(I).scale(&(&minus_i * &Scalar::kappa()));
    let undeformed = commutator(&x, &y, &Presentation::undeformed())?;
    let want_undeformed = Expr::gen(I).scale(&minus_i);
    let ok = deformed == want_deformed && undeformed == want_undeformed;
    Ok(ResultEntry::check(
        CRITERIA[0],
        ok,
        0.0,
        json!({ "deformed": deformed.to_string(), "undeformed": undeformed.to_string() }),
    ))
}

fn random_presentation(r: &mut ChaCha8Rng) -> Presentation {
    let variant = [Variant::Undeformed, Variant::DeformedCollapsed, Variant::DeformedStrict][r.random_range(0..3)];
    let basis = if r.random_bool(0.5) { Basis::PhiPi } else { Basis::Ladder };
    Presentation::new(variant).with_basis(basis)
}

fn random_word(r: &mut ChaCha8Rng, p: &Presentation, d: u32, max_degree: usize) -> Word {
    use Generator::*;
    let len = r.random_range(0..=max_degree);
    let deformed = p.variant().is_deformed();
    let letters = (0..len)
        .map(|_| {
            let j = r.random_range(0..d);
            match r.random_range(0..if deformed { 8 } else { 6 }) {
                0 => Phi(j),
                1 => Pi(j),
                2 => APlus(j),
                3 => AMinus(j),
                4 => I,
                5 => Phi(j),
                6 => K,
                _ => Kinv,
            }
        })
        .collect();
    Word(letters)
}

/// Leftmost, rightmost and seeded-random redex choice on the same words.
pub fn confluence(seed: u64, exec: Execution) -> ResultEntry {
    const WORDS: usize = 1000;
    let mismatches: Vec<String> = exec
        .map_range(WORDS, |i| -> Option<String> {
            let mut r = rng(seed, 1000 + i as u64);
            let p = random_presentation(&mut r);
            let d = r.random_range(1..=4);
            let w = Expr::word(random_word(&mut r, &p, d, 8));
            let schedules = [Schedule::Leftmost, Schedule::Rightmost, Schedule::Seeded(seed ^ i as u64)];
            let forms: Vec<_> = schedules.iter().map(|&s| normal_form_with(&w, &p, s).ok()).collect();
            let agree = forms[0].is_some() && forms.iter().all(|f| f == &forms[0]);
            (!agree).then(|| format!("{w} in {:?}", p.variant()))
        })
        .into_iter()
        .flatten()
        .collect();
    ResultEntry::check(
        CRITERIA[1],
        mismatches.is_empty(),
        0.0,
        json!({ "words": WORDS, "schedules": 3, "mismatches": mismatches }),
    )
}

/// Reference for the deformation constant straight from `s = q^{c/2}`.
fn constant_from_s(q: f64, c: f64) -> f64 {
    let s = q.powf(c / 2.0);
    (s * s - 1.0 / (s * s)) / (c * (q - 1.0 / q))
}

pub fn collapse_identity(seed: u64) -> Result<ResultEntry, CliError> {
    use Generator::*;
    let p = Presentation::collapsed();
    let lhs = expand_k(&(&Expr::product(&[K, K]) - &Expr::product(&[Kinv, Kinv])), &p)?;
    let s = Scalar::s();
    let rhs = Expr::gen(I).scale(&(&(&s * &s) - &s.pow(-2)));
    let exact = lhs == rhs;
    let mut r = rng(seed, 3);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let q = loop {
            let q = r.random_range(0.2..5.0);
            if (q - 1.0f64).abs() > 1e-3 {
                break q;
            }
        };
        let c = r.random_range(0.1..3.0);
        worst = worst.max((constant_from_s(q, c) - deformation_constant(q, c)?).abs());
    }
    let tol = 1e-12;
    Ok(ResultEntry::check(
        CRITERIA[2],
        exact && worst < tol,
        tol,
        json!({ "expand_k": lhs.to_string(), "exact": exact, "max_numeric_error": worst }),
    ))
}

pub fn special_cases(seed: u64) -> Result<ResultEntry, CliError> {
    let mut r = rng(seed, 4);
    let mut at_c_one: f64 = 0.0;
    for _ in 0..100 {
        let q = r.random_range(0.05..20.0);
        at_c_one = at_c_one.max((deformation_constant(q, 1.0)? - 1.0).abs());
    }
    let mut near_q_one: f64 = 0.0;
    for c in [0.25, 1.0, 2.5] {
        for q in [1.0 - 1e-5, 1.0 + 1e-5] {
            near_q_one = near_q_one.max((deformation_constant(q, c)? - 1.0).abs());
        }
    }
    let ok = at_c_one < 1e-12 && near_q_one < 1e-8;
    Ok(ResultEntry::check(
        CRITERIA[3],
        ok,
        1e-12,
        json!({ "c_one_max_error": at_c_one, "q_near_one_max_error": near_q_one, "q_near_one_tolerance": 1e-8 }),
    ))
}

fn all_pass(name: &str, entries: Vec<ResultEntry>, extra: serde_json::Value) -> ResultEntry {
    let ok = entries.iter().all(|e| e.passed());
    let mut out = ResultEntry::check(
        name,
        ok,
        0.0,
        json!({ "axioms": entries.iter().map(|e| json!({ "name": e.name, "status": e.status, "value": e.value })).collect::<Vec<_>>(), "extra": extra }),
    );
    for n in entries.into_iter().flat_map(|e| e.notes) {
        if !out.notes.contains(&n) {
            out.notes.push(n);
        }
    }
    out
}

pub fn classical_hopf(exec: Execution) -> Result<ResultEntry, CliError> {
    let p = Presentation::strict();
    let c = AxiomChecker::new(HopfSpec::classical(), &p).modes(2).degree(3).execution(exec);
    let entries = vec![
        axiom_entry(&c.coassociativity()?),
        axiom_entry(&c.counit()?),
        axiom_entry(&c.antipode()?),
        axiom_entry(&c.cocommutativity()?),
    ];
    Ok(all_pass(CRITERIA[4], entries, json!(null)))
}

/// `phi(0) (x) (K - Kinv) + (Kinv - K) (x) phi(0)`.
fn expected_cocommutativity_witness() -> TensorExpr {
    use Generator::*;
    let phi = Word::single(Phi(0));
    let mut t = TensorExpr::zero(2);
    t.add_term(vec![phi.clone(), Word::single(K)], Scalar::one());
    t.add_term(vec![phi.clone(), Word::single(Kinv)], Scalar::from_int(-1));
    t.add_term(vec![Word::single(Kinv), phi.clone()], Scalar::one());
    t.add_term(vec![Word::single(K), phi], Scalar::from_int(-1));
    t
}

pub fn deformed_strict_hopf(exec: Execution) -> Result<ResultEntry, CliError> {
    let p = Presentation::strict();
    let c = AxiomChecker::new(HopfSpec::deformed(), &p).modes(2).degree(2).execution(exec);
    let mut entries = vec![
        axiom_entry(&c.coassociativity()?),
        axiom_entry(&c.multiplicativity()?),
        axiom_entry(&c.counit()?),
        axiom_entry(&c.antipode()?),
    ];
    let probe = c.cocommutativity()?;
    let witness = probe.find("phi(0)", "Δ - τΔ").map(|w| w.residual.clone());
    let recorded = witness == Some(Residual::Tensor(expected_cocommutativity_witness()));
    let mut probe_entry = axiom_entry(&probe);
    probe_entry.status = if !probe.passed() && recorded {
        crate::report::Status::Pass
    } else {
        crate::report::Status::Fail
    };
    probe_entry.name = "cocommutativity fails with the recorded witness".into();
    entries.push(probe_entry);

    let p1 = Presentation::strict().with_numeric(1.0, 2.5)?;
    let at_one = AxiomChecker::new(HopfSpec::deformed(), &p1).modes(2).degree(2).execution(exec);
    let mut e = axiom_entry(&at_one.cocommutativity()?);
    e.name = "cocommutativity at q = 1".into();
    entries.push(e);
    let witness_text = witness.map(|w| w.to_string());
    Ok(all_pass(CRITERIA[5], entries, json!({ "witness": "phi(0)", "residual": witness_text })))
}

pub fn collapsed_diagnostics(exec: Execution) -> Result<ResultEntry, CliError> {
    use Generator::*;
    let p = Presentation::collapsed();
    let r = AxiomChecker::new(HopfSpec::classical(), &p).execution(exec).respects_relations()?;
    let delta = r.find("I*I", "Δ").map(|c| c.residual.clone());
    let s = r.find("I*I", "S").map(|c| c.residual.clone());
    let want_delta = Residual::Tensor(TensorExpr::pure(vec![Word::single(I), Word::single(I)], Scalar::from_int(2)));
    let want_s = Residual::Expr(Expr::gen(I).scale(&Scalar::from_int(2)));
    let only_unit = r.counterexamples.iter().all(|c| c.witness == "I*I");
    let ok = delta.as_ref() == Some(&want_delta) && s.as_ref() == Some(&want_s) && only_unit;
    Ok(ResultEntry::check(
        CRITERIA[6],
        ok,
        0.0,
        json!({
            "delta_residual": delta.map(|x| x.to_string()),
            "antipode_residual": s.map(|x| x.to_string()),
            "other_relations_clean": only_unit,
        }),
    )
    .note("finding: a primitive unit is incompatible with the idempotent relation I*I = I; reported, not a build failure"))
}

fn random_complex(r: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    (0..d).map(|_| c64(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))).collect()
}

fn random_real(r: &mut ChaCha8Rng, d: usize, range: f64) -> Vec<f64> {
    (0..d).map(|_| r.random_range(-range..range)).collect()
}

pub fn fock_numerics(seed: u64) -> Result<ResultEntry, CliError> {
    let mut r = rng(seed, 8);
    let mut ccr: f64 = 0.0;
    let grams = [vec![vec![1.0, 0.0], vec![0.0, 1.0]], vec![vec![1.0, 0.3], vec![0.3, 2.0]]];
    for g in &grams {
        let m = ModeSpace::with_real_gram(g, 10)?;
        let l = ccr_hopf::fock::orthonormal_ladder(&m);
        let safe = m.safe_columns(2);
        for _ in 0..10 {
            let (v, w) = (random_complex(&mut r, 2), random_complex(&mut r, 2));
            let (_, minus_v) = l.along(&m, &v);
            let (plus_w, _) = l.along(&m, &w);
            let target = SparseOperator::identity(m.dim()).scale(m.inner(&v, &w));
            ccr = ccr.max((&minus_v.commutator(&plus_w) - &target).norm_on_columns(&safe));
        }
    }
    let reference = (-0.25f64).exp();
    let m = ModeSpace::new(1, 20)?;
    let z = vacuum_generating_function(&m, &[c64(1.0, 0.0)], None)?;
    let genfun_error = (z - c64(reference, 0.0)).norm();
    let sweep = truncation_sweep(1, &[c64(1.0, 0.0)], None, &[5, 10, 20, 40], reference)?;
    let monotone = sweep.windows(2).all(|w| w[1].error <= w[0].error.max(1e-14));
    let ok = ccr < 1e-12 && genfun_error < 1e-8 && monotone;
    Ok(ResultEntry::check(
        CRITERIA[7],
        ok,
        1e-12,
        json!({
            "ccr_residual": ccr,
            "generating_function": { "re": z.re, "im": z.im, "error": genfun_error, "tolerance": 1e-8 },
            "truncation": sweep,
            "monotone": monotone,
        }),
    ))
}

fn random_scalar(r: &mut ChaCha8Rng) -> Scalar {
    let re = Scalar::from_ratio(r.random_range(-4..=4), r.random_range(1..=3));
    let im = Scalar::from_ratio(r.random_range(-4..=4), r.random_range(1..=3));
    let c = &re + &(&im * &Scalar::i());
    match r.random_range(0..4) {
        0 => &c * &Scalar::kappa(),
        1 => &c * &Scalar::s(),
        _ => c,
    }
}

fn random_expr(r: &mut ChaCha8Rng, p: &Presentation, d: u32, max_degree: usize) -> Expr {
    let mut e = Expr::zero();
    for _ in 0..r.random_range(1..=3) {
        let w = random_word(r, p, d, max_degree);
        let c = random_scalar(r);
        e.add_term(w, c);
    }
    e
}

pub fn representation_functor(seed: u64, exec: Execution) -> Result<ResultEntry, CliError> {
    const EXPRS: usize = 200;
    let space = ModeSpace::new(2, 10)?;
    let safe = space.safe_columns(3);
    let reps: Vec<(Presentation, FockRepresentation)> = [Variant::Undeformed, Variant::DeformedCollapsed, Variant::DeformedStrict]
        .into_iter()
        .map(|v| {
            let p = Presentation::new(v);
            let rep = FockRepresentation::for_presentation(space.clone(), &p, (1.3, 1.2))?;
            Ok((p, rep))
        })
        .collect::<Result<_, CliError>>()?;
    let results = exec.map_range(EXPRS, |i| -> Result<f64, CliError> {
        let mut r = rng(seed, 9000 + i as u64);
        let (p, rep) = &reps[i % reps.len()];
        let p = p.clone().with_basis(if r.random_bool(0.5) { Basis::PhiPi } else { Basis::Ladder });
        let e = random_expr(&mut r, &p, 2, 3);
        let nf = normal_form_with(&e, &p, Schedule::Leftmost)?;
        let diff = &rep.represent(&e)? - &rep.represent(&nf)?;
        Ok(diff.norm_on_columns(&safe))
    });
    let mut worst: f64 = 0.0;
    for x in results {
        worst = worst.max(x?);
    }
    let tol = 1e-10;
    Ok(ResultEntry::check(
        CRITERIA[8],
        worst < tol,
        tol,
        json!({ "exprs": EXPRS, "max_residual": worst, "kappa": 1.3, "s": 1.2 }),
    ))
}

pub fn transfer(seed: u64) -> Result<ResultEntry, CliError> {
    let mut r = rng(seed, 10);
    let m = ModeSpace::new(2, 10)?;
    let ladder = ccr_hopf::fock::orthonormal_ladder(&m);
    let safe = m.safe_columns(2);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let q = r.random_range(0.3..3.0);
        let c = r.random_range(0.2..3.0);
        let t = transfer_rep(&m, q, c)?;
        let v: Vec<Complex64> = random_real(&mut r, 2, 1.0).into_iter().map(|x| c64(x, 0.0)).collect();
        let w: Vec<Complex64> = random_real(&mut r, 2, 1.0).into_iter().map(|x| c64(x, 0.0)).collect();
        let (_, pi_v) = phi_pi_along(&m, &ladder, &v);
        let (phi_w, _) = phi_pi_along(&m, &ladder, &w);
        let pi_v = pi_v.scale(c64(t.constant, 0.0));
        let target = SparseOperator::identity(m.dim()).scale(c64(0.0, -t.constant) * m.inner(&v, &w));
        worst = worst.max((&pi_v.commutator(&phi_w) - &target).norm_on_columns(&safe));
    }
    let tol = 1e-12;
    Ok(ResultEntry::check(CRITERIA[9], worst < tol, tol, json!({ "samples": 20, "max_residual": worst })))
}

pub fn boundedness(exec: Execution) -> Result<ResultEntry, CliError> {
    let r = 0.5 * 2f64.ln();
    let ds = [1usize, 2, 3];
    let reports = boundedness_trend(&[Family::Uniform { r }, Family::Summable { r }], &ds, 30, exec)?;
    let (uniform, summable) = (&reports[0], &reports[1]);
    let within = |x: f64, d: usize| (x - d as f64 / 8.0).abs() <= 0.02 * d as f64 / 8.0;
    let min_matches = uniform.points.iter().all(|p| within(p.min_eigenvalue, p.d));
    let min_ratio = uniform.min_eigenvalue_slope.abs() / summable.min_eigenvalue_slope.abs().max(f64::MIN_POSITIVE);
    let ok = min_matches && min_ratio >= 5.0;
    // the quantity that does carry d/8
    let exp_matches = uniform.points.iter().all(|p| within(p.vacuum_expectation, p.d));
    let exp_ratio = uniform.expectation_slope / summable.expectation_slope;
    let null_vector = reports.iter().flat_map(|t| &t.points).all(|p| p.min_eigenvalue.abs() < 1e-6 && p.converged);
    let mut entry = ResultEntry::check(
        CRITERIA[10],
        ok,
        0.02,
        json!({
            "reports": reports,
            "min_eigenvalue_matches_d_over_8": min_matches,
            "min_eigenvalue_slope_ratio": min_ratio,
            "vacuum_expectation_matches_d_over_8": exp_matches,
            "vacuum_expectation_slope_ratio": exp_ratio,
            "min_eigenvalue_is_zero": null_vector,
        }),
    );
    if !ok {
        entry = entry
            .note("b+b- annihilates the squeezed vacuum, so its spectrum starts at 0 for every d and both families")
            .note("d/8 = sum sinh^2 r is the Fock-vacuum expectation of b+b-, the scalar part of the transformed number operator")
            .note(format!(
                "expectation reading: matches d/8 within 2% = {exp_matches}, slope ratio {exp_ratio:.3}"
            ));
    }
    Ok(entry)
}

fn random_test_function(r: &mut ChaCha8Rng, d: usize) -> TestFunction {
    let mut poly = BTreeMap::new();
    for _ in 0..3 {
        let e: Vec<u32> = (0..d).map(|_| r.random_range(0..=2)).collect();
        poly.insert(e, c64(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)));
    }
    let mut a = DMatrix::from_fn(d, d, |_, _| r.random_range(-0.1..0.1));
    for i in 0..d {
        a[(i, i)] -= 0.5;
    }
    let b = random_complex(r, d).into_iter().map(|z| z * 0.3).collect();
    TestFunction::new(poly, a, b, c64(0.0, r.random_range(-1.0..1.0)))
}

/// Largest pointwise Weyl-relation residual over random functions and points.
pub fn weyl_trials(model: &GaussianModel, trials: usize, r: &mut ChaCha8Rng) -> f64 {
    let d = model.d();
    (0..trials)
        .map(|_| {
            let f = random_test_function(r, d);
            let (v, w, u) = (random_real(r, d, 1.0), random_real(r, d, 1.0), random_real(r, d, 1.5));
            model.weyl_relation_residual(&v, &w, &f, &u).norm()
        })
        .fold(0.0, f64::max)
}

pub fn measure(seed: u64, exec: Execution) -> Result<ResultEntry, CliError> {
    let mut r = rng(seed, 12);
    let models = [
        GaussianModel::fock(2),
        GaussianModel::new(DMatrix::from_row_slice(2, 2, &[1.5, 0.4, -0.2, 0.9]))?,
    ];
    let (mut cocycle, mut rn, mut eta, mut weyl): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for m in &models {
        for _ in 0..100 {
            let (v, w, u) = (random_real(&mut r, 2, 1.0), random_real(&mut r, 2, 1.0), random_real(&mut r, 2, 1.5));
            cocycle = cocycle.max(m.cocycle_residual(&v, &w, &u)?);
            rn = rn.max(m.radon_nikodym_residual(&v, &u)?);
        }
        for _ in 0..20 {
            let (v, u) = (random_real(&mut r, 2, 1.0), random_real(&mut r, 2, 1.5));
            eta = eta.max(m.eta(&v, &u, EtaSweep::default())?.error());
        }
        weyl = weyl.max(weyl_trials(m, 100, &mut r));
    }
    let v = [0.7, -0.4];
    let mc = bochner_mc(&models[1], &v, 100_000, seed, exec)?;
    let target = models[1].generating_function(&v);
    let brackets = mc.brackets(target, 3.0);
    let ok = cocycle < 1e-10 && rn < 1e-10 && eta < 1e-8 && brackets && weyl < 1e-10;
    Ok(ResultEntry::check(
        CRITERIA[11],
        ok,
        1e-10,
        json!({
            "cocycle_residual": cocycle,
            "radon_nikodym_residual": rn,
            "eta_error": eta,
            "eta_tolerance": 1e-8,
            "bochner": { "estimate": mc, "target": target, "within_3_sigma": brackets },
            "weyl_residual": weyl,
        }),
    ))
}
