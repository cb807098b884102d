//! Residual-zero checks for the derived identities, plus the randomized
//! property checks (confluence evidence, Leibniz, word-algebra Jacobi,
//! conformal-weight grading).
//!
//! Every deterministic check produces a labelled residual polynomial; the
//! identity holds iff the residual is empty. Nothing here ever asserts — the
//! caller (test suite or report runner) decides what a nonzero residual
//! means.

use crate::algebra::{Strategy, WordAlgebra};
use crate::observables::ObservableCatalog;
use crate::poly::{Letter, NCPolynomial, Word};
use conformal_algebra::{Generator, StructureTable};
use std::collections::BTreeMap;
use tensor_core::{epsilon_component_upper, metric_component, CoefficientExpr, Scalar, SplitMix64};

/// A labelled residual; the check passes iff `residual.is_zero()`.
#[derive(Clone, Debug)]
pub struct ResidualCheck {
    pub label: String,
    pub residual: NCPolynomial,
}

impl ResidualCheck {
    fn new(label: impl Into<String>, residual: NCPolynomial) -> Self {
        ResidualCheck {
            label: label.into(),
            residual,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

fn eta(a: u8, b: u8) -> Scalar {
    metric_component(a, b)
}

/// The word-algebra bracket of two single-generator words must reproduce the
/// structure table entry; one residual per unordered basis pair (105).
pub fn check_structure_pairs(alg: &WordAlgebra) -> Vec<ResidualCheck> {
    let mut out = Vec::new();
    for (a, b) in StructureTable::distinct_pairs() {
        let lhs = alg.nc_bracket(&NCPolynomial::generator(a), &NCPolynomial::generator(b));
        let rhs = NCPolynomial::from_element(alg.table().bracket_basis(a, b));
        out.push(ResidualCheck::new(
            format!("eq4.pair.{a}.{b}"),
            lhs.sub(&rhs),
        ));
    }
    out
}

/// `(g, P_rho P^rho)` expanded by hand through the Leibniz rule over the
/// structure table: `sum_rho eta^{rho rho} [(g, P_rho) P_rho + P_rho (g, P_rho)]`.
/// This derivation path never mentions mass-power letters, so comparing it
/// against the `M^k` bracket rules is a genuine consistency proof and not a
/// rule reading itself back.
fn leibniz_over_contraction(alg: &WordAlgebra, g: Generator) -> NCPolynomial {
    let mut out = NCPolynomial::zero();
    for rho in 0..4u8 {
        let table = NCPolynomial::from_element(alg.table().bracket_basis(g, Generator::P(rho)));
        let p = NCPolynomial::generator(Generator::P(rho));
        let sum = alg.multiply(&table, &p).add(&alg.multiply(&p, &table));
        out = out.add(&sum.scale(&eta(rho, rho)));
    }
    out
}

/// Mass shifts: `(P_mu, M^2) = (J_mn, M^2) = 0`, `(D, M^2) = 2 M^2`,
/// `(C_mu, M^2) = 4 (eta_{mu rho} D - J_{mu rho}) . P^rho`, the odd-power
/// form through `M^{+-1}` letters, and the consistency of the odd rule with
/// the even rule. The even shifts are derived from the structure table via
/// `leibniz_over_contraction` and compared against the rule-based shapes.
pub fn check_mass_shifts(alg: &WordAlgebra) -> Vec<ResidualCheck> {
    let obs = ObservableCatalog::new(alg);
    let msq = obs.mass_squared();
    let mut out = Vec::new();
    for mu in 0..4u8 {
        out.push(ResidualCheck::new(
            format!("eq5.shift.P{mu}"),
            leibniz_over_contraction(alg, Generator::P(mu)),
        ));
    }
    for mu in 0..4u8 {
        for nu in (mu + 1)..4u8 {
            out.push(ResidualCheck::new(
                format!("eq5.shift.J{mu}{nu}"),
                leibniz_over_contraction(alg, Generator::J(mu, nu)),
            ));
        }
    }
    {
        out.push(ResidualCheck::new(
            "eq5.shift.D",
            leibniz_over_contraction(alg, Generator::D).sub(&msq.scale(&Scalar::from_int(2))),
        ));
    }
    for mu in 0..4u8 {
        let rhs = alg.covector_dot(mu, &[]).scale(&Scalar::from_int(4));
        out.push(ResidualCheck::new(
            format!("eq5.shift.C{mu}"),
            leibniz_over_contraction(alg, Generator::C(mu)).sub(&rhs),
        ));
    }
    // Odd form: (C_mu, M) = 2 (eta D - J) . (P^rho / M).
    for mu in 0..4u8 {
        let c = NCPolynomial::generator(Generator::C(mu));
        let rhs = alg
            .covector_dot(mu, &[Letter::M(-1)])
            .scale(&Scalar::from_int(2));
        out.push(ResidualCheck::new(
            format!("eq5.shift-odd.C{mu}"),
            alg.nc_bracket(&c, &NCPolynomial::mpower(1)).sub(&rhs),
        ));
    }
    // Consistency of odd and even rules:
    // (C, M) M + M (C, M) = (C, M^2) as an unsymmetrized sum.
    for mu in 0..4u8 {
        let c = NCPolynomial::generator(Generator::C(mu));
        let cm = alg.nc_bracket(&c, &NCPolynomial::mpower(1));
        let lhs = alg
            .multiply(&cm, &NCPolynomial::mpower(1))
            .add(&alg.multiply(&NCPolynomial::mpower(1), &cm));
        let rhs = alg.nc_bracket(&c, &NCPolynomial::mpower(2));
        out.push(ResidualCheck::new(
            format!("eq5.consistency.C{mu}"),
            lhs.sub(&rhs),
        ));
    }
    // (Delta, M) = a^mu M . X_mu with the acceleration formal.
    {
        let delta = obs.accel_generator();
        let lhs = alg.nc_bracket(&delta, &NCPolynomial::mpower(1));
        let mut rhs = NCPolynomial::zero();
        for mu in 0..4u8 {
            rhs = rhs.add(
                &alg.sym_product(&NCPolynomial::mpower(1), &obs.position(mu))
                    .scale_coeff(&obs.accel_coeff(mu)),
            );
        }
        out.push(ResidualCheck::new("eq6.mass-shift", lhs.sub(&rhs)));
    }
    out
}

/// Canonical structure: `(P_mu, X_nu) = -eta_{mu nu}`, `(D, X_mu) = -X_mu`,
/// `(J_mn, X_rho) = eta_{n rho} X_m - eta_{m rho} X_n`.
pub fn check_canonical_commutators(alg: &WordAlgebra) -> Vec<ResidualCheck> {
    let obs = ObservableCatalog::new(alg);
    let x: Vec<NCPolynomial> = (0..4u8).map(|m| obs.position(m)).collect();
    let mut out = Vec::new();
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            let lhs = alg.nc_bracket(
                &NCPolynomial::generator(Generator::P(mu)),
                &x[nu as usize],
            );
            let rhs = NCPolynomial::from_scalar(-eta(mu, nu));
            out.push(ResidualCheck::new(
                format!("eq7.canonical-commutator.P{mu}.X{nu}"),
                lhs.sub(&rhs),
            ));
        }
    }
    for mu in 0..4u8 {
        let lhs = alg.nc_bracket(&NCPolynomial::generator(Generator::D), &x[mu as usize]);
        out.push(ResidualCheck::new(
            format!("eq7.dilatation.X{mu}"),
            lhs.add(&x[mu as usize]),
        ));
    }
    for mu in 0..4u8 {
        for nu in (mu + 1)..4u8 {
            for rho in 0..4u8 {
                let lhs = alg.nc_bracket(
                    &NCPolynomial::generator(Generator::J(mu, nu)),
                    &x[rho as usize],
                );
                let rhs = x[mu as usize]
                    .scale(&eta(nu, rho))
                    .sub(&x[nu as usize].scale(&eta(mu, rho)));
                out.push(ResidualCheck::new(
                    format!("eq7.rotation.J{mu}{nu}.X{rho}"),
                    lhs.sub(&rhs),
                ));
            }
        }
    }
    out
}

/// Position commutators: `(M.X_mu, M.X_nu) = J_mn` and
/// `M^2 . (X_mu, X_nu) = J_mn - (P_mu . X_nu - P_nu . X_mu) = S_mn`.
pub fn check_position_commutators(alg: &WordAlgebra) -> Vec<ResidualCheck> {
    let obs = ObservableCatalog::new(alg);
    let x: Vec<NCPolynomial> = (0..4u8).map(|m| obs.position(m)).collect();
    let m = NCPolynomial::mpower(1);
    let mx: Vec<NCPolynomial> = x.iter().map(|xi| alg.sym_product(&m, xi)).collect();
    let mut out = Vec::new();
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            let lhs = alg.nc_bracket(&mx[mu as usize], &mx[nu as usize]);
            let rhs = match Generator::j_normalized(mu, nu) {
                None => NCPolynomial::zero(),
                Some((sign, g)) => NCPolynomial::generator(g).scale(&Scalar::from_int(sign)),
            };
            out.push(ResidualCheck::new(
                format!("eq9.line1.{mu}.{nu}"),
                lhs.sub(&rhs),
            ));
        }
    }
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            let xx = alg.nc_bracket(&x[mu as usize], &x[nu as usize]);
            let lhs = alg.sym_product(&NCPolynomial::mpower(2), &xx);
            let rhs = obs.spin_tensor(mu, nu);
            out.push(ResidualCheck::new(
                format!("eq9.line2.{mu}.{nu}"),
                lhs.sub(&rhs),
            ));
        }
    }
    out
}

/// Pauli-Lubanski relations: transversality `S^mu . P_mu = 0`, the
/// reconstruction `S_mn = eps_{mn rho sigma} S^rho . (P^sigma / M)` under the
/// symmetrized reading, and the commutative-limit cross-check of `S^mu`
/// against brute-force epsilon summation.
pub fn check_pauli_lubanski(alg: &WordAlgebra) -> Vec<ResidualCheck> {
    let obs = ObservableCatalog::new(alg);
    let s_vec: Vec<NCPolynomial> = (0..4u8).map(|m| obs.pauli_lubanski(m)).collect();
    let mut out = Vec::new();
    {
        let mut acc = NCPolynomial::zero();
        for mu in 0..4u8 {
            acc = acc.add(&alg.sym_product(
                &s_vec[mu as usize],
                &NCPolynomial::generator(Generator::P(mu)),
            ));
        }
        out.push(ResidualCheck::new("eq10.transversality", acc));
    }
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            let mut recon = NCPolynomial::zero();
            for rho in 0..4u8 {
                for sigma in 0..4u8 {
                    // eps_{mu nu rho sigma} S^rho P^sigma / M
                    let coeff =
                        tensor_core::epsilon_component([mu, nu, rho, sigma]) * eta(sigma, sigma);
                    if coeff.is_zero() {
                        continue;
                    }
                    let p_over_m = NCPolynomial::term(
                        CoefficientExpr::one(),
                        vec![Letter::Gen(Generator::P(sigma)), Letter::M(-1)],
                    );
                    recon = recon.add(
                        &alg.sym_product(&s_vec[rho as usize], &p_over_m)
                            .scale(&coeff),
                    );
                }
            }
            out.push(ResidualCheck::new(
                format!("eq10.reconstruction.{mu}.{nu}"),
                obs.spin_tensor(mu, nu).sub(&recon),
            ));
        }
    }
    out.push(pauli_lubanski_classical_crosscheck(&s_vec));
    out
}

/// Commutative-limit oracle: with all letters treated as commuting symbols,
/// `S^mu` must equal the brute-force sum
/// `-1/2 eps^{mu nu rho sigma} J_{nu rho} P_sigma M^-1` assembled without the
/// word algebra. The residual re-encodes any mismatch as sorted words.
fn pauli_lubanski_classical_crosscheck(s_vec: &[NCPolynomial]) -> ResidualCheck {
    let mut residual = NCPolynomial::zero();
    for mu in 0..4u8 {
        // Engine side, collapsed to commuting symbols.
        let engine: BTreeMap<Word, CoefficientExpr> = s_vec[mu as usize].to_commutative();
        // Classical side by direct summation.
        let mut classical: BTreeMap<Word, CoefficientExpr> = BTreeMap::new();
        for nu in 0..4u8 {
            for rho in 0..4u8 {
                for sigma in 0..4u8 {
                    let eps = epsilon_component_upper([mu, nu, rho, sigma]);
                    if eps.is_zero() {
                        continue;
                    }
                    let Some((sign, j)) = Generator::j_normalized(nu, rho) else {
                        continue;
                    };
                    let mut word = vec![
                        Letter::Gen(j),
                        Letter::Gen(Generator::P(sigma)),
                        Letter::M(-1),
                    ];
                    word.sort();
                    let coeff = eps * Scalar::ratio(-sign, 2);
                    let slot = classical.entry(word).or_insert_with(CoefficientExpr::zero);
                    *slot = slot.add(&CoefficientExpr::from_scalar(coeff));
                }
            }
        }
        classical.retain(|_, c| !c.is_zero());
        // Difference, re-encoded for rendering.
        let mut keys: Vec<Word> = engine.keys().chain(classical.keys()).cloned().collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let e = engine.get(&k).cloned().unwrap_or_else(CoefficientExpr::zero);
            let c = classical
                .get(&k)
                .cloned()
                .unwrap_or_else(CoefficientExpr::zero);
            residual = residual.add(&NCPolynomial::term(e.sub(&c), k));
        }
    }
    ResidualCheck::new("eq10.classical-limit", residual)
}

/// Redshift law: `D = P_rho . X^rho` and
/// `(Delta, P_nu) = a^mu (eta_{mu nu} D - P_mu . X_nu + P_nu . X_mu - S_mn)`,
/// with the acceleration formal and additionally specialized to `a = e_3`.
pub fn check_redshift_law(alg: &WordAlgebra) -> Vec<ResidualCheck> {
    let obs = ObservableCatalog::new(alg);
    let mut out = Vec::new();
    out.push(ResidualCheck::new(
        "eq11.dilatation-decomposition",
        NCPolynomial::generator(Generator::D).sub(&obs.dilatation_from_position()),
    ));
    let delta = obs.accel_generator();
    let redshift_rhs = |nu: u8| -> NCPolynomial {
        let mut rhs = NCPolynomial::zero();
        for mu in 0..4u8 {
            let p_dot_x = |a: u8, b: u8| {
                alg.sym_product(&NCPolynomial::generator(Generator::P(a)), &obs.position(b))
            };
            let mut block = NCPolynomial::generator(Generator::D).scale(&eta(mu, nu));
            block = block.sub(&p_dot_x(mu, nu));
            block = block.add(&p_dot_x(nu, mu));
            block = block.sub(&obs.spin_tensor(mu, nu));
            rhs = rhs.add(&block.scale_coeff(&obs.accel_coeff(mu)));
        }
        rhs
    };
    for nu in 0..4u8 {
        let lhs = alg.nc_bracket(&delta, &NCPolynomial::generator(Generator::P(nu)));
        out.push(ResidualCheck::new(
            format!("eq11.redshift.P{nu}"),
            lhs.sub(&redshift_rhs(nu)),
        ));
    }
    // Specialization a = e_3: both sides rebuilt with the concrete direction
    // before any bracket is taken.
    let e3 = [
        Scalar::zero(),
        Scalar::zero(),
        Scalar::zero(),
        Scalar::one(),
    ];
    for nu in 0..4u8 {
        let lhs = alg.nc_bracket(
            &delta.substitute_accel(&e3),
            &NCPolynomial::generator(Generator::P(nu)),
        );
        let rhs = redshift_rhs(nu).substitute_accel(&e3);
        out.push(ResidualCheck::new(
            format!("eq11.redshift-a3.P{nu}"),
            lhs.sub(&rhs),
        ));
    }
    out
}

/// Double commutators: the invariance relation
/// `((Delta, X_nu), P_mu) = ((Delta, P_mu), X_nu)` and the covariance rule
/// equating both with `-eta_{mu nu} a^rho X_rho - a_mu X_nu + a_nu X_mu`.
///
/// `((Delta, P_mu), X_nu)` is computed directly; `((Delta, X_nu), P_mu)` goes
/// through the Jacobi identity using the constancy of `(X_nu, P_mu)`, since
/// a closed form for `(Delta, X_nu)` alone is not part of the machinery.
pub fn check_double_commutators(alg: &WordAlgebra) -> Vec<ResidualCheck> {
    let obs = ObservableCatalog::new(alg);
    let delta = obs.accel_generator();
    let x: Vec<NCPolynomial> = (0..4u8).map(|m| obs.position(m)).collect();
    let mut out = Vec::new();
    let covariance_rhs = |mu: u8, nu: u8| -> NCPolynomial {
        let mut rhs = NCPolynomial::zero();
        // -eta_{mu nu} a^rho X_rho
        for rho in 0..4u8 {
            rhs = rhs.add(
                &x[rho as usize]
                    .scale(&-eta(mu, nu))
                    .scale_coeff(&obs.accel_coeff(rho)),
            );
        }
        // -a_mu X_nu + a_nu X_mu with a_mu = eta_{mu mu} a^mu
        rhs = rhs.add(
            &x[nu as usize]
                .scale(&-eta(mu, mu))
                .scale_coeff(&obs.accel_coeff(mu)),
        );
        rhs = rhs.add(
            &x[mu as usize]
                .scale(&eta(nu, nu))
                .scale_coeff(&obs.accel_coeff(nu)),
        );
        rhs
    };
    for mu in 0..4u8 {
        let p = NCPolynomial::generator(Generator::P(mu));
        let delta_p = alg.nc_bracket(&delta, &p);
        for nu in 0..4u8 {
            let xv = &x[nu as usize];
            // ((Delta, P_mu), X_nu), direct.
            let direct = alg.nc_bracket(&delta_p, xv);
            // ((Delta, X_nu), P_mu) = (Delta, (X_nu, P_mu)) - (X_nu, (Delta, P_mu))
            let jacobi_route = alg
                .nc_bracket(&delta, &alg.nc_bracket(xv, &p))
                .sub(&alg.nc_bracket(xv, &delta_p));
            out.push(ResidualCheck::new(
                format!("eq12.invariance.{mu}.{nu}"),
                jacobi_route.sub(&direct),
            ));
            let rhs = covariance_rhs(mu, nu);
            out.push(ResidualCheck::new(
                format!("eq13.covariance-direct.{mu}.{nu}"),
                direct.sub(&rhs),
            ));
            out.push(ResidualCheck::new(
                format!("eq13.covariance-jacobi.{mu}.{nu}"),
                jacobi_route.sub(&rhs),
            ));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Randomized property checks
// ---------------------------------------------------------------------------

/// Random word over the full letter alphabet (optionally without `C` or `M`
/// letters), in arbitrary order, i.e. generally not normal.
fn random_word(rng: &mut SplitMix64, max_len: u64, with_m: bool) -> Word {
    let len = rng.below(max_len + 1);
    let basis = Generator::basis();
    let mut word = Vec::new();
    for _ in 0..len {
        if with_m && rng.chance(1, 5) {
            let k = [-2i64, -1, 1, 2, 3][rng.below(5) as usize];
            word.push(Letter::M(k));
        } else {
            word.push(Letter::Gen(basis[rng.below(15) as usize]));
        }
    }
    word
}

fn random_scalar(rng: &mut SplitMix64) -> Scalar {
    let re = Scalar::ratio(rng.range_i64(-3, 3), rng.range_i64(1, 3));
    let im = Scalar::ratio_i(rng.range_i64(-2, 2), 1);
    let s = re + im;
    if s.is_zero() {
        Scalar::one()
    } else {
        s
    }
}

/// Random raw polynomial; not normalized.
pub fn random_polynomial(
    rng: &mut SplitMix64,
    max_terms: u64,
    max_len: u64,
    with_m: bool,
) -> NCPolynomial {
    let terms = 1 + rng.below(max_terms);
    let mut p = NCPolynomial::zero();
    for _ in 0..terms {
        p.add_term(
            random_word(rng, max_len, with_m),
            CoefficientExpr::from_scalar(random_scalar(rng)),
        );
    }
    p
}

/// `normal_form(normal_form(p)) == normal_form(p)` on random raw input.
pub fn prop_normal_form_idempotent(
    alg: &WordAlgebra,
    seed: u64,
    samples: usize,
) -> Result<(), String> {
    let mut rng = SplitMix64::new(seed);
    for n in 0..samples {
        let p = random_polynomial(&mut rng, 3, 4, true);
        let once = alg
            .try_normal_form(&p)
            .map_err(|e| format!("sample {n}: {e}"))?;
        let twice = alg
            .try_normal_form(&once)
            .map_err(|e| format!("sample {n}: {e}"))?;
        if once != twice {
            return Err(format!(
                "sample {n}: normal form not idempotent for {p}: {once} vs {twice}"
            ));
        }
    }
    Ok(())
}

/// Deterministic and randomized reduction orders must agree (confluence
/// evidence on random raw polynomials).
pub fn prop_confluence(alg: &WordAlgebra, seed: u64, samples: usize) -> Result<(), String> {
    let mut rng = SplitMix64::new(seed);
    for n in 0..samples {
        let p = random_polynomial(&mut rng, 3, 4, true);
        let det = alg
            .try_normal_form(&p)
            .map_err(|e| format!("sample {n}: {e}"))?;
        let rand_seed = rng.next_u64();
        let rnd = alg
            .normal_form_randomized(&p, rand_seed)
            .map_err(|e| format!("sample {n}: {e}"))?;
        if det != rnd {
            return Err(format!(
                "sample {n}: reduction orders disagree for {p}: {det} vs {rnd}"
            ));
        }
    }
    Ok(())
}

/// Leibniz rule `(A, BC) = (A,B) C + B (A,C)` on random low-degree input.
pub fn prop_leibniz(alg: &WordAlgebra, seed: u64, samples: usize) -> Result<(), String> {
    let mut rng = SplitMix64::new(seed);
    for n in 0..samples {
        let a = random_polynomial(&mut rng, 2, 2, true);
        let b = random_polynomial(&mut rng, 2, 2, true);
        let c = random_polynomial(&mut rng, 2, 2, true);
        let lhs = alg.nc_bracket(&a, &alg.multiply(&b, &c));
        let rhs = alg
            .multiply(&alg.nc_bracket(&a, &b), &c)
            .add(&alg.multiply(&b, &alg.nc_bracket(&a, &c)));
        if lhs != rhs {
            return Err(format!("sample {n}: Leibniz fails for ({a}; {b}; {c})"));
        }
    }
    Ok(())
}

/// The Jacobi identity in the word algebra, which must hold identically
/// because the bracket derives from an associative product.
pub fn prop_word_jacobi(alg: &WordAlgebra, seed: u64, samples: usize) -> Result<(), String> {
    let mut rng = SplitMix64::new(seed);
    for n in 0..samples {
        let a = random_polynomial(&mut rng, 2, 2, true);
        let b = random_polynomial(&mut rng, 2, 2, true);
        let c = random_polynomial(&mut rng, 2, 2, true);
        let lhs = alg.nc_bracket(&alg.nc_bracket(&a, &b), &c);
        let rhs = alg
            .nc_bracket(&a, &alg.nc_bracket(&b, &c))
            .sub(&alg.nc_bracket(&b, &alg.nc_bracket(&a, &c)));
        if lhs != rhs {
            return Err(format!("sample {n}: Jacobi fails for ({a}; {b}; {c})"));
        }
    }
    Ok(())
}

/// Bracketing with `D` multiplies a normal-form monomial by its total
/// conformal weight.
pub fn prop_grading(alg: &WordAlgebra, seed: u64, samples: usize) -> Result<(), String> {
    let mut rng = SplitMix64::new(seed);
    let d = NCPolynomial::generator(Generator::D);
    for n in 0..samples {
        let raw = random_polynomial(&mut rng, 1, 4, true);
        let nf = alg
            .try_normal_form(&raw)
            .map_err(|e| format!("sample {n}: {e}"))?;
        for (word, _) in nf.iter() {
            let mono = NCPolynomial::term(CoefficientExpr::one(), word.clone());
            let lhs = alg.nc_bracket(&d, &mono);
            let rhs = mono.scale(&Scalar::from_int(NCPolynomial::word_weight(word)));
            if lhs != rhs {
                return Err(format!(
                    "sample {n}: grading fails for monomial {mono}: (D, m) = {lhs}"
                ));
            }
        }
    }
    Ok(())
}

/// Leibniz with the symmetrized dot: `(A, B.C) = (A,B).C + B.(A,C)`.
pub fn prop_sym_leibniz(alg: &WordAlgebra, seed: u64, samples: usize) -> Result<(), String> {
    let mut rng = SplitMix64::new(seed);
    for n in 0..samples {
        let a = random_polynomial(&mut rng, 2, 2, true);
        let b = random_polynomial(&mut rng, 2, 2, true);
        let c = random_polynomial(&mut rng, 2, 2, true);
        let lhs = alg.nc_bracket(&a, &alg.sym_product(&b, &c));
        let rhs = alg
            .sym_product(&alg.nc_bracket(&a, &b), &c)
            .add(&alg.sym_product(&b, &alg.nc_bracket(&a, &c)));
        if lhs != rhs {
            return Err(format!(
                "sample {n}: symmetrized Leibniz fails for ({a}; {b}; {c})"
            ));
        }
    }
    Ok(())
}

/// Normal form under an explicitly seeded strategy; exposed for the report
/// runner so the confluence check can be replayed with a chosen seed.
pub fn normal_form_seeded(
    alg: &WordAlgebra,
    p: &NCPolynomial,
    seed: u64,
) -> Result<NCPolynomial, crate::NcError> {
    alg.normal_form_terms(
        p.iter().map(|(w, c)| (w.clone(), c.clone())).collect(),
        &mut Strategy::Seeded(SplitMix64::new(seed)),
    )
}
