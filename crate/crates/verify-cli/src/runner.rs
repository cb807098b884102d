//! Executes check families against shared engine contexts and aggregates
//! deterministic results.
//!
//! Durations: families whose items are computed through per-item library
//! primitives (structure pairs, Jacobi triples, matrix and realization pairs)
//! carry genuine per-check timings; batch families (the derived-identity and
//! property suites) amortize the batch time uniformly over their items.

use crate::catalog::{catalog, resolve_selection, CheckDescriptor, Family};
use conformal_algebra::{AlgebraElement, Generator, StructureTable};
use nc_calculus::{NCPolynomial, ResidualCheck, WordAlgebra};
use realizations::checks::{self, RealizedObservables};
use realizations::{MatrixRep, Realization, RealizationError};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;
use tensor_core::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub paper_ref: String,
    pub status: Status,
    pub residual_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_text: Option<String>,
    pub duration_ms: u64,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub particles: usize,
    pub seed: u64,
    pub jobs: usize,
    /// Test fixture: replaces one structure-table entry before running, so
    /// failure reporting paths can be exercised deliberately.
    pub corrupt: Option<(Generator, Generator, AlgebraElement)>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            particles: 2,
            seed: 1,
            jobs: 1,
            corrupt: None,
        }
    }
}

/// Lazily built shared engine state.
struct EngineCtx {
    table: StructureTable,
    particles: usize,
    seed: u64,
    alg: OnceLock<WordAlgebra>,
    rep: OnceLock<Result<MatrixRep, RealizationError>>,
    real: Mutex<BTreeMap<usize, &'static Realization>>,
    obs: Mutex<BTreeMap<usize, &'static RealizedObservables>>,
}

impl EngineCtx {
    fn new(opts: &RunOptions) -> Self {
        let mut table = StructureTable::conformal();
        if let Some((a, b, elem)) = &opts.corrupt {
            table = table.with_entry_override(*a, *b, elem.clone());
        }
        EngineCtx {
            table,
            particles: opts.particles,
            seed: opts.seed,
            alg: OnceLock::new(),
            rep: OnceLock::new(),
            real: Mutex::new(BTreeMap::new()),
            obs: Mutex::new(BTreeMap::new()),
        }
    }

    fn alg(&self) -> &WordAlgebra {
        self.alg.get_or_init(|| WordAlgebra::new(self.table.clone()))
    }

    fn rep(&self) -> &Result<MatrixRep, RealizationError> {
        self.rep.get_or_init(|| MatrixRep::build(&self.table))
    }

    /// The bare realization at `n` particles (valid for any `n >= 1`).
    /// Leaked deliberately: built at most twice per process and shared
    /// across worker threads for the whole run.
    fn realization(&self, n: usize) -> Result<&'static Realization, RealizationError> {
        let mut map = self.real.lock().expect("no poisoned locks");
        if let Some(r) = map.get(&n) {
            return Ok(r);
        }
        let leaked: &'static Realization = Box::leak(Box::new(Realization::new(n)?));
        map.insert(n, leaked);
        Ok(leaked)
    }

    /// Realized observables (positions, spin) at `n` particles; needs an
    /// invertible mass, hence `n >= 2`.
    fn obs(&self, n: usize) -> Result<&'static RealizedObservables, RealizationError> {
        let mut map = self.obs.lock().expect("no poisoned locks");
        if let Some(o) = map.get(&n) {
            return Ok(o);
        }
        let real = self.realization(n)?;
        let built = RealizedObservables::new(real.clone())?;
        let leaked: &'static RealizedObservables = Box::leak(Box::new(built));
        map.insert(n, leaked);
        Ok(leaked)
    }
}

fn nc_result(family: Family, check: ResidualCheck, duration_ms: u64) -> CheckResult {
    let (status, terms, text) = if check.residual.is_zero() {
        (Status::Pass, 0, None)
    } else {
        (
            Status::Fail,
            check.residual.num_terms(),
            Some(check.residual.to_string()),
        )
    };
    CheckResult {
        id: check.label,
        paper_ref: family.paper_ref().to_string(),
        status,
        residual_terms: terms,
        residual_text: text,
        duration_ms,
    }
}

fn simple_result(
    family: Family,
    id: String,
    passed: bool,
    terms: usize,
    text: Option<String>,
    duration_ms: u64,
) -> CheckResult {
    CheckResult {
        id,
        paper_ref: family.paper_ref().to_string(),
        status: if passed { Status::Pass } else { Status::Fail },
        residual_terms: if passed { 0 } else { terms },
        residual_text: if passed { None } else { text },
        duration_ms,
    }
}

fn error_results(family: Family, particles: usize, message: &str) -> Vec<CheckResult> {
    family
        .ids(particles)
        .into_iter()
        .map(|id| CheckResult {
            id,
            paper_ref: family.paper_ref().to_string(),
            status: Status::Error,
            residual_terms: 0,
            residual_text: Some(message.to_string()),
            duration_ms: 0,
        })
        .collect()
}

/// Converts a batch of labelled residuals, amortizing the elapsed time.
fn batch(family: Family, items: Vec<ResidualCheck>, elapsed_ms: u64) -> Vec<CheckResult> {
    let per = elapsed_ms / (items.len().max(1) as u64);
    items
        .into_iter()
        .map(|c| nc_result(family, c, per))
        .collect()
}

fn op_batch(
    family: Family,
    items: Vec<realizations::OperatorCheck>,
    elapsed_ms: u64,
) -> Vec<CheckResult> {
    let per = elapsed_ms / (items.len().max(1) as u64);
    items
        .into_iter()
        .map(|c| {
            let passed = c.residual.is_zero();
            simple_result(
                family,
                c.label,
                passed,
                c.residual.num_terms(),
                Some(c.residual.to_string()),
                per,
            )
        })
        .collect()
}

fn prop_result(family: Family, id: String, outcome: Result<(), String>, ms: u64) -> CheckResult {
    match outcome {
        Ok(()) => simple_result(family, id, true, 0, None, ms),
        Err(msg) => simple_result(family, id, false, 1, Some(msg), ms),
    }
}

fn run_family(ctx: &EngineCtx, family: Family) -> Vec<CheckResult> {
    use Family::*;
    let n = ctx.particles;
    let seed = ctx.seed;
    let start = Instant::now();
    let elapsed = |t: Instant| t.elapsed().as_millis() as u64;
    match family {
        Eq4Pairs => {
            let alg = ctx.alg();
            let mut out = Vec::new();
            for (a, b) in StructureTable::distinct_pairs() {
                let t = Instant::now();
                // Two independent residuals: the word-algebra bracket must
                // reproduce the table entry, and the table must be
                // antisymmetric. They are reported jointly but never summed,
                // so they cannot cancel each other.
                let reproduction = alg
                    .nc_bracket(&NCPolynomial::generator(a), &NCPolynomial::generator(b))
                    .sub(&NCPolynomial::from_element(alg.table().bracket_basis(a, b)));
                let antisymmetry = alg
                    .table()
                    .bracket_basis(a, b)
                    .add(alg.table().bracket_basis(b, a));
                let passed = reproduction.is_zero() && antisymmetry.is_zero();
                let mut parts = Vec::new();
                if !reproduction.is_zero() {
                    parts.push(format!("kernel vs table: {reproduction}"));
                }
                if !antisymmetry.is_zero() {
                    parts.push(format!("antisymmetry: {antisymmetry}"));
                }
                out.push(simple_result(
                    family,
                    format!("eq4.pair.{a}.{b}"),
                    passed,
                    reproduction.num_terms() + antisymmetry.num_terms(),
                    Some(parts.join("; ")),
                    elapsed(t),
                ));
            }
            out
        }
        Jacobi => {
            let mut out = Vec::new();
            for (a, b, c) in StructureTable::distinct_triples() {
                let t = Instant::now();
                let residual = ctx.table.jacobi_residual(a, b, c);
                let passed = residual.is_zero();
                out.push(simple_result(
                    family,
                    format!("jacobi.{a}.{b}.{c}"),
                    passed,
                    residual.num_terms(),
                    Some(residual.to_string()),
                    elapsed(t),
                ));
            }
            out
        }
        JacobiDegenerate => {
            let t = Instant::now();
            let bad: Vec<String> = StructureTable::degenerate_triples()
                .into_iter()
                .filter(|&(a, b, c)| !ctx.table.jacobi_residual(a, b, c).is_zero())
                .map(|(a, b, c)| format!("({a}, {b}, {c})"))
                .collect();
            vec![simple_result(
                family,
                "jacobi-degenerate.all".into(),
                bad.is_empty(),
                bad.len(),
                Some(format!("non-zero residuals at: {}", bad.join(", "))),
                elapsed(t),
            )]
        }
        Weights => Generator::basis()
            .into_iter()
            .map(|g| {
                let t = Instant::now();
                let residual = ctx.table.weight_residual(g);
                let passed = residual.is_zero();
                simple_result(
                    family,
                    format!("eq4.weight.{g}"),
                    passed,
                    residual.num_terms(),
                    Some(residual.to_string()),
                    elapsed(t),
                )
            })
            .collect(),
        LorentzSpans => {
            let mut out = Vec::new();
            for mu in 0..4u8 {
                for nu in (mu + 1)..4 {
                    let j = AlgebraElement::generator(Generator::J(mu, nu));
                    for (span, in_span, make) in [
                        ("P", true, Generator::P as fn(u8) -> Generator),
                        ("C", false, Generator::C as fn(u8) -> Generator),
                    ] {
                        let t = Instant::now();
                        let ok = (0..4u8).all(|rho| {
                            let b = ctx
                                .table
                                .bracket(&j, &AlgebraElement::generator(make(rho)));
                            if in_span {
                                b.in_p_span()
                            } else {
                                b.in_c_span()
                            }
                        });
                        out.push(simple_result(
                            family,
                            format!("eq4.lorentz-span.J{mu}{nu}.{span}"),
                            ok,
                            if ok { 0 } else { 1 },
                            Some("bracket left the span".into()),
                            elapsed(t),
                        ));
                    }
                }
            }
            out
        }
        MassShifts => batch(
            family,
            nc_calculus::check_mass_shifts(ctx.alg()),
            elapsed(start),
        ),
        Canonical => batch(
            family,
            nc_calculus::check_canonical_commutators(ctx.alg()),
            elapsed(start),
        ),
        PositionCommutators => batch(
            family,
            nc_calculus::check_position_commutators(ctx.alg()),
            elapsed(start),
        ),
        PauliLubanski => batch(
            family,
            nc_calculus::check_pauli_lubanski(ctx.alg()),
            elapsed(start),
        ),
        Redshift => batch(
            family,
            nc_calculus::check_redshift_law(ctx.alg()),
            elapsed(start),
        ),
        DoubleCommutators => batch(
            family,
            nc_calculus::check_double_commutators(ctx.alg()),
            elapsed(start),
        ),
        PropIdempotence => {
            let r = nc_calculus::prop_normal_form_idempotent(ctx.alg(), seed, 1000);
            vec![prop_result(
                family,
                "prop.normal-form-idempotence".into(),
                r,
                elapsed(start),
            )]
        }
        PropConfluence => {
            let r = nc_calculus::prop_confluence(ctx.alg(), seed, 1000);
            vec![prop_result(family, "prop.confluence".into(), r, elapsed(start))]
        }
        PropLeibniz => {
            let r = nc_calculus::prop_leibniz(ctx.alg(), seed, 300);
            vec![prop_result(family, "prop.leibniz".into(), r, elapsed(start))]
        }
        PropSymLeibniz => {
            let r = nc_calculus::prop_sym_leibniz(ctx.alg(), seed, 150);
            vec![prop_result(
                family,
                "prop.sym-leibniz".into(),
                r,
                elapsed(start),
            )]
        }
        PropWordJacobi => {
            let r = nc_calculus::prop_word_jacobi(ctx.alg(), seed, 150);
            vec![prop_result(
                family,
                "prop.word-jacobi".into(),
                r,
                elapsed(start),
            )]
        }
        PropGrading => {
            let r = nc_calculus::prop_grading(ctx.alg(), seed, 300);
            vec![prop_result(family, "prop.grading".into(), r, elapsed(start))]
        }
        MatrixSolve => {
            let r = ctx.rep();
            let passed = r.is_ok();
            vec![simple_result(
                family,
                "matrix.closure-solve".into(),
                passed,
                usize::from(!passed),
                r.as_ref().err().map(|e| e.to_string()),
                elapsed(start),
            )]
        }
        MatrixPairs => match ctx.rep() {
            Err(e) => error_results(family, n, &e.to_string()),
            Ok(rep) => {
                let mut out = Vec::new();
                for (a, b) in StructureTable::distinct_pairs() {
                    let t = Instant::now();
                    let lhs = rep.image(a).commutator(rep.image(b));
                    let rhs = rep
                        .apply(ctx.table.bracket_basis(a, b))
                        .expect("table coefficients are rational");
                    let residual = lhs.sub(&rhs);
                    let passed = residual.is_zero();
                    out.push(simple_result(
                        family,
                        format!("matrix.pair.{a}.{b}"),
                        passed,
                        residual.nonzero_entries(),
                        Some(residual.to_string()),
                        elapsed(t),
                    ));
                }
                out
            }
        },
        MatrixGAntisymmetry => match ctx.rep() {
            Err(e) => error_results(family, n, &e.to_string()),
            Ok(rep) => rep
                .g_antisymmetry_residuals()
                .into_iter()
                .map(|c| {
                    let passed = c.residual.is_zero();
                    simple_result(
                        family,
                        c.label,
                        passed,
                        c.residual.nonzero_entries(),
                        Some(c.residual.to_string()),
                        elapsed(start),
                    )
                })
                .collect(),
        },
        RealPairsOneParticle => match ctx.realization(1) {
            Err(e) => error_results(family, n, &e.to_string()),
            Ok(real) => op_batch(
                family,
                checks::check_pairs(real, &ctx.table),
                elapsed(start),
            ),
        },
        RealMassVanishesOneParticle => {
            let passed = realizations::RingCtx::new(1).s_poly().is_zero();
            vec![simple_result(
                family,
                "real.n1.mass-squared-vanishes".into(),
                passed,
                usize::from(!passed),
                Some("s != 0 at one particle".into()),
                elapsed(start),
            )]
        }
        RealPairs => match ctx.obs(n) {
            Err(e) => error_results(family, n, &e.to_string()),
            Ok(obs) => op_batch(
                family,
                checks::check_pairs(obs.realization(), &ctx.table),
                elapsed(start),
            ),
        },
        RealEq5 | RealEq7 | RealEq9 | RealEq10 | RealEq11 | RealEq12Eq13 => match ctx.obs(n) {
            Err(e) => error_results(family, n, &e.to_string()),
            Ok(obs) => {
                let r = match family {
                    RealEq5 => checks::check_eq5(obs),
                    RealEq7 => Ok(checks::check_eq7(obs)),
                    RealEq9 => checks::check_eq9(obs),
                    RealEq10 => checks::check_eq10(obs),
                    RealEq11 => checks::check_eq11(obs),
                    RealEq12Eq13 => Ok(checks::check_eq12_eq13(obs)),
                    _ => unreachable!(),
                };
                match r {
                    Err(e) => error_results(family, n, &e.to_string()),
                    Ok(items) => op_batch(family, items, elapsed(start)),
                }
            }
        },
        RealSpinWitness => match ctx.obs(n) {
            Err(e) => error_results(family, n, &e.to_string()),
            Ok(obs) => {
                let w = checks::spin_nontriviality_witness(obs);
                // Inverted expectation: the spin tensor must NOT vanish.
                let passed = !w.residual.is_zero();
                vec![simple_result(
                    family,
                    w.label,
                    passed,
                    usize::from(!passed),
                    Some("spin tensor vanished; spin checks would be vacuous".into()),
                    elapsed(start),
                )]
            }
        },
        RealMassExample => match ctx
            .realization(2)
            .and_then(checks::two_photon_mass_example)
        {
            Err(e) => error_results(family, n, &e.to_string()),
            Ok((m_sq, p_total)) => {
                let want = Scalar::from_int(4);
                let passed = m_sq == want && p_total.iter().all(|p| p.is_zero());
                vec![simple_result(
                    family,
                    "real.n2.two-photon-mass".into(),
                    passed,
                    usize::from(!passed),
                    Some(format!(
                        "M^2 = {m_sq} (want 4), P = ({}, {}, {})",
                        p_total[0], p_total[1], p_total[2]
                    )),
                    elapsed(start),
                )]
            }
        },
        RealHomomorphism => match ctx.obs(n) {
            Err(e) => error_results(family, n, &e.to_string()),
            Ok(obs) => {
                let r = checks::homomorphism_check(obs.realization(), ctx.alg(), seed, 20);
                vec![prop_result(
                    family,
                    format!("real.n{n}.homomorphism"),
                    r,
                    elapsed(start),
                )]
            }
        },
        RealEq7Points => match ctx.obs(n) {
            Err(e) => error_results(family, n, &e.to_string()),
            Ok(obs) => {
                let r = checks::eq7_point_checks(obs, seed, 100);
                vec![prop_result(
                    family,
                    format!("real.n{n}.eq7-point-evaluations"),
                    r,
                    elapsed(start),
                )]
            }
        },
        RealBridge => match ctx
            .obs(n)
            .and_then(|o| checks::bridge_examples(o.realization(), ctx.alg()))
        {
            Err(e) => error_results(family, n, &e.to_string()),
            Ok(items) => op_batch(family, items, elapsed(start)),
        },
    }
}

/// Runs the selected checks and returns results sorted by identifier.
/// `Err` is a usage error (unknown selection token).
pub fn run(tokens: &[String], opts: &RunOptions) -> Result<Vec<CheckResult>, String> {
    if opts.particles < 2 {
        return Err("--particles must be at least 2 (one massless particle has M = 0)".into());
    }
    let cat = catalog(opts.particles);
    let selected = resolve_selection(&cat, tokens)?;
    let mut families: Vec<Family> = Vec::new();
    let mut wanted_ids: Vec<&str> = Vec::new();
    for &i in &selected {
        let d: &CheckDescriptor = &cat[i];
        if !families.contains(&d.family) {
            families.push(d.family);
        }
        wanted_ids.push(&d.id);
    }
    let ctx = EngineCtx::new(opts);
    let jobs = opts.jobs.max(1);
    let queue = Mutex::new(families);
    let results = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let family = {
                    let mut q = queue.lock().expect("no poisoned locks");
                    match q.pop() {
                        Some(f) => f,
                        None => break,
                    }
                };
                let rs = run_family(&ctx, family);
                results.lock().expect("no poisoned locks").extend(rs);
            });
        }
    });
    let mut all = results.into_inner().expect("no poisoned locks");
    all.retain(|r| wanted_ids.contains(&r.id.as_str()));
    // Every selected identifier must come back with a result; a missing one
    // means catalog and runner labels drifted apart, which must surface as a
    // loud error rather than a silently shrunken report.
    for &i in &selected {
        let d = &cat[i];
        if !all.iter().any(|r| r.id == d.id) {
            all.push(CheckResult {
                id: d.id.clone(),
                paper_ref: d.paper_ref.clone(),
                status: Status::Error,
                residual_terms: 0,
                residual_text: Some(
                    "check did not run: identifier drift between catalog and runner".into(),
                ),
                duration_ms: 0,
            });
        }
    }
    all.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_ids_match_runtime_labels() {
        // Cheap families only; the expensive ones are pinned by the
        // acceptance suite, which runs everything.
        let opts = RunOptions::default();
        let ctx = EngineCtx::new(&opts);
        for family in [
            Family::Eq4Pairs,
            Family::Weights,
            Family::LorentzSpans,
            Family::MassShifts,
            Family::MatrixSolve,
            Family::MatrixPairs,
            Family::MatrixGAntisymmetry,
        ] {
            let ids = family.ids(opts.particles);
            let got: Vec<String> = run_family(&ctx, family)
                .into_iter()
                .map(|r| r.id)
                .collect();
            assert_eq!(ids, got, "id drift in {family:?}");
        }
    }
}
