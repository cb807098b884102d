//! Identity verification inside the differential-operator realization.
//!
//! Every derived relation is rebuilt here at the operator level from the
//! realized generators (never by mapping the abstract engine's normal forms
//! through, except where the bridge itself is under test), so a pass is an
//! independent confirmation and not an echo of the word algebra.

use crate::diffop::DiffOperator;
use crate::point::{random_point, MomentumPoint};
use crate::realize::{OperatorCheck, Realization};
use crate::ring::{RingElem, RingPoly};
use crate::RealizationError;
use conformal_algebra::{Generator, StructureTable};
use nc_calculus::{random_polynomial, NCPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use tensor_core::{epsilon_component, metric_component, Scalar, SplitMix64};

fn eta(a: u8, b: u8) -> Scalar {
    metric_component(a, b)
}

/// Shared operator-level observables for one particle count.
pub struct RealizedObservables {
    real: Realization,
    x: Vec<DiffOperator>,
    spin: Vec<Vec<DiffOperator>>,
}

impl RealizedObservables {
    pub fn new(real: Realization) -> Result<Self, RealizationError> {
        let x: Vec<DiffOperator> = (0..4u8)
            .map(|nu| x_op(&real, nu))
            .collect::<Result<_, _>>()?;
        let mut spin = Vec::new();
        for mu in 0..4u8 {
            let mut row = Vec::new();
            for nu in 0..4u8 {
                row.push(spin_op(&real, &x, mu, nu));
            }
            spin.push(row);
        }
        Ok(RealizedObservables { real, x, spin })
    }

    pub fn realization(&self) -> &Realization {
        &self.real
    }

    pub fn position(&self, nu: u8) -> &DiffOperator {
        &self.x[nu as usize]
    }

    pub fn spin(&self, mu: u8, nu: u8) -> &DiffOperator {
        &self.spin[mu as usize][nu as usize]
    }
}

/// `rho(J_mn)` through slot normalization (zero on the diagonal).
fn j_op(real: &Realization, mu: u8, nu: u8) -> DiffOperator {
    match Generator::j_normalized(mu, nu) {
        None => DiffOperator::zero(real.ctx()),
        Some((sign, g)) => real.op(g).scale(&Scalar::from_int(sign)),
    }
}

/// `(eta_{mu rho} D - J_{mu rho}) . (P^rho sigma^k)` summed over `rho`.
fn covector_dot_op(
    real: &Realization,
    mu: u8,
    sigma_pow: i64,
) -> Result<DiffOperator, RealizationError> {
    let mut out = DiffOperator::zero(real.ctx());
    for rho in 0..4u8 {
        let mut left = real.op(Generator::D).scale(&eta(mu, rho));
        left = left.sub(&j_op(real, mu, rho));
        if left.is_zero() {
            continue;
        }
        let right = real
            .op(Generator::P(rho))
            .compose(&real.mass_power_op(sigma_pow)?)
            .scale(&eta(rho, rho));
        out = out.add(&left.sym(&right));
    }
    Ok(out)
}

/// `X_mu = (eta_{mu rho} D - J_{mu rho}) . (P^rho / M^2)` at operator level.
fn x_op(real: &Realization, mu: u8) -> Result<DiffOperator, RealizationError> {
    covector_dot_op(real, mu, -2)
}

/// `S_mn = J_mn - (P_m . X_n - P_n . X_m)` at operator level.
fn spin_op(real: &Realization, x: &[DiffOperator], mu: u8, nu: u8) -> DiffOperator {
    let p_dot_x = |a: u8, b: u8| real.op(Generator::P(a)).sym(&x[b as usize]);
    j_op(real, mu, nu)
        .sub(&p_dot_x(mu, nu))
        .add(&p_dot_x(nu, mu))
}

/// `S^mu = -1/2 eps^{mu nu rho sigma} J_{nu rho} . (P_sigma / M)`.
fn pauli_lubanski_op(real: &Realization) -> Result<Vec<DiffOperator>, RealizationError> {
    let sigma_inv = real.mass_power_op(-1)?;
    let mut out = Vec::new();
    for mu in 0..4u8 {
        let mut acc = DiffOperator::zero(real.ctx());
        for nu in 0..4u8 {
            for rho in 0..4u8 {
                for sig in 0..4u8 {
                    let eps = tensor_core::epsilon_component_upper([mu, nu, rho, sig]);
                    if eps.is_zero() {
                        continue;
                    }
                    let j = j_op(real, nu, rho);
                    if j.is_zero() {
                        continue;
                    }
                    let p_over_m = real.op(Generator::P(sig)).compose(&sigma_inv);
                    acc = acc.add(&j.sym(&p_over_m).scale(&(eps * Scalar::ratio(-1, 2))));
                }
            }
        }
        out.push(acc);
    }
    Ok(out)
}

fn check(label: String, residual: DiffOperator) -> OperatorCheck {
    OperatorCheck { label, residual }
}

/// Structure-table closure of the realized generators, all 105 pairs.
pub fn check_pairs(real: &Realization, table: &StructureTable) -> Vec<OperatorCheck> {
    let n = real.particles();
    real.verify_pairs(table)
        .into_iter()
        .map(|c| check(format!("real.n{n}.{}", c.label), c.residual))
        .collect()
}

/// Mass shifts in the realization; `M^2` is multiplication by `s` and `M` by
/// `sigma`.
pub fn check_eq5(obs: &RealizedObservables) -> Result<Vec<OperatorCheck>, RealizationError> {
    let real = &obs.real;
    let n = real.particles();
    let s_op = real.mass_power_op(2)?;
    let sigma_op = real.mass_power_op(1)?;
    let mut out = Vec::new();
    for mu in 0..4u8 {
        out.push(check(
            format!("real.n{n}.eq5.shift.P{mu}"),
            real.op(Generator::P(mu)).nbr(&s_op),
        ));
    }
    for mu in 0..4u8 {
        for nu in (mu + 1)..4u8 {
            out.push(check(
                format!("real.n{n}.eq5.shift.J{mu}{nu}"),
                real.op(Generator::J(mu, nu)).nbr(&s_op),
            ));
        }
    }
    out.push(check(
        format!("real.n{n}.eq5.shift.D"),
        real.op(Generator::D)
            .nbr(&s_op)
            .sub(&s_op.scale(&Scalar::from_int(2))),
    ));
    for mu in 0..4u8 {
        let rhs = covector_dot_op(real, mu, 0)?.scale(&Scalar::from_int(4));
        out.push(check(
            format!("real.n{n}.eq5.shift.C{mu}"),
            real.op(Generator::C(mu)).nbr(&s_op).sub(&rhs),
        ));
    }
    for mu in 0..4u8 {
        let rhs = covector_dot_op(real, mu, -1)?.scale(&Scalar::from_int(2));
        out.push(check(
            format!("real.n{n}.eq5.shift-odd.C{mu}"),
            real.op(Generator::C(mu)).nbr(&sigma_op).sub(&rhs),
        ));
    }
    Ok(out)
}

/// Canonical structure in the realization.
pub fn check_eq7(obs: &RealizedObservables) -> Vec<OperatorCheck> {
    let real = &obs.real;
    let n = real.particles();
    let id = DiffOperator::identity(real.ctx());
    let mut out = Vec::new();
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            let lhs = real.op(Generator::P(mu)).nbr(obs.position(nu));
            out.push(check(
                format!("real.n{n}.eq7.canonical-commutator.P{mu}.X{nu}"),
                lhs.add(&id.scale(&eta(mu, nu))),
            ));
        }
    }
    for mu in 0..4u8 {
        let lhs = real.op(Generator::D).nbr(obs.position(mu));
        out.push(check(
            format!("real.n{n}.eq7.dilatation.X{mu}"),
            lhs.add(obs.position(mu)),
        ));
    }
    for mu in 0..4u8 {
        for nu in (mu + 1)..4u8 {
            for rho in 0..4u8 {
                let lhs = real.op(Generator::J(mu, nu)).nbr(obs.position(rho));
                let rhs = obs
                    .position(mu)
                    .scale(&eta(nu, rho))
                    .sub(&obs.position(nu).scale(&eta(mu, rho)));
                out.push(check(
                    format!("real.n{n}.eq7.rotation.J{mu}{nu}.X{rho}"),
                    lhs.sub(&rhs),
                ));
            }
        }
    }
    out
}

/// Position commutators in the realization, both lines.
pub fn check_eq9(obs: &RealizedObservables) -> Result<Vec<OperatorCheck>, RealizationError> {
    let real = &obs.real;
    let n = real.particles();
    let sigma_op = real.mass_power_op(1)?;
    let s_op = real.mass_power_op(2)?;
    let mx: Vec<DiffOperator> = (0..4).map(|m| sigma_op.sym(obs.position(m))).collect();
    let mut out = Vec::new();
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            let lhs = mx[mu as usize].nbr(&mx[nu as usize]);
            out.push(check(
                format!("real.n{n}.eq9.line1.{mu}.{nu}"),
                lhs.sub(&j_op(real, mu, nu)),
            ));
        }
    }
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            let xx = obs.position(mu).nbr(obs.position(nu));
            let lhs = s_op.sym(&xx);
            out.push(check(
                format!("real.n{n}.eq9.line2.{mu}.{nu}"),
                lhs.sub(obs.spin(mu, nu)),
            ));
        }
    }
    Ok(out)
}

/// Pauli-Lubanski transversality and reconstruction in the realization.
pub fn check_eq10(obs: &RealizedObservables) -> Result<Vec<OperatorCheck>, RealizationError> {
    let real = &obs.real;
    let n = real.particles();
    let s_vec = pauli_lubanski_op(real)?;
    let sigma_inv = real.mass_power_op(-1)?;
    let mut out = Vec::new();
    {
        let mut acc = DiffOperator::zero(real.ctx());
        for mu in 0..4u8 {
            acc = acc.add(&s_vec[mu as usize].sym(real.op(Generator::P(mu))));
        }
        out.push(check(format!("real.n{n}.eq10.transversality"), acc));
    }
    for mu in 0..4u8 {
        for nu in 0..4u8 {
            let mut recon = DiffOperator::zero(real.ctx());
            for rho in 0..4u8 {
                for sig in 0..4u8 {
                    let coeff = epsilon_component([mu, nu, rho, sig]) * eta(sig, sig);
                    if coeff.is_zero() {
                        continue;
                    }
                    let p_over_m = real.op(Generator::P(sig)).compose(&sigma_inv);
                    recon = recon.add(&s_vec[rho as usize].sym(&p_over_m).scale(&coeff));
                }
            }
            out.push(check(
                format!("real.n{n}.eq10.reconstruction.{mu}.{nu}"),
                obs.spin(mu, nu).sub(&recon),
            ));
        }
    }
    Ok(out)
}

/// Redshift law in the realization: the dilatation decomposition and
/// `(Delta, P_nu)` for each basis acceleration direction.
pub fn check_eq11(obs: &RealizedObservables) -> Result<Vec<OperatorCheck>, RealizationError> {
    let real = &obs.real;
    let n = real.particles();
    let mut out = Vec::new();
    {
        let mut px = DiffOperator::zero(real.ctx());
        for rho in 0..4u8 {
            px = px.add(
                &real
                    .op(Generator::P(rho))
                    .sym(obs.position(rho))
                    .scale(&eta(rho, rho)),
            );
        }
        out.push(check(
            format!("real.n{n}.eq11.dilatation-decomposition"),
            real.op(Generator::D).sub(&px),
        ));
    }
    for lambda in 0..4u8 {
        let delta = real
            .op(Generator::C(lambda))
            .scale(&Scalar::ratio(1, 2));
        for nu in 0..4u8 {
            let lhs = delta.nbr(real.op(Generator::P(nu)));
            let p_dot_x =
                |a: u8, b: u8| real.op(Generator::P(a)).sym(obs.position(b));
            let rhs = real
                .op(Generator::D)
                .scale(&eta(lambda, nu))
                .sub(&p_dot_x(lambda, nu))
                .add(&p_dot_x(nu, lambda))
                .sub(obs.spin(lambda, nu));
            out.push(check(
                format!("real.n{n}.eq11.redshift.dir{lambda}.P{nu}"),
                lhs.sub(&rhs),
            ));
        }
    }
    Ok(out)
}

/// Invariance and covariance of the double commutators, for each basis
/// acceleration direction. Both double commutators are computed directly;
/// nothing is routed through the Jacobi identity here.
pub fn check_eq12_eq13(obs: &RealizedObservables) -> Vec<OperatorCheck> {
    let real = &obs.real;
    let n = real.particles();
    let mut out = Vec::new();
    for lambda in 0..4u8 {
        let delta = real
            .op(Generator::C(lambda))
            .scale(&Scalar::ratio(1, 2));
        for mu in 0..4u8 {
            let dp = delta.nbr(real.op(Generator::P(mu)));
            for nu in 0..4u8 {
                let dx = delta.nbr(obs.position(nu));
                let d1 = dx.nbr(real.op(Generator::P(mu)));
                let d2 = dp.nbr(obs.position(nu));
                // a = e_lambda: -eta_mn X_lambda - eta_{mu lambda} X_nu
                //               + eta_{nu lambda} X_mu
                let rhs = obs
                    .position(lambda)
                    .scale(&-eta(mu, nu))
                    .sub(&obs.position(nu).scale(&eta(mu, lambda)))
                    .add(&obs.position(mu).scale(&eta(nu, lambda)));
                out.push(check(
                    format!("real.n{n}.eq12.invariance.dir{lambda}.{mu}.{nu}"),
                    d1.sub(&d2),
                ));
                out.push(check(
                    format!("real.n{n}.eq13.covariance.dir{lambda}.{mu}.{nu}"),
                    d2.sub(&rhs),
                ));
            }
        }
    }
    out
}

/// The spin tensor must NOT vanish at two particles: the relative orbital
/// angular momentum of two scalar quanta is a genuine internal spin, which is
/// what makes the spin-dependent checks non-vacuous.
pub fn spin_nontriviality_witness(obs: &RealizedObservables) -> OperatorCheck {
    let n = obs.real.particles();
    check(
        format!("real.n{n}.spin-witness"),
        obs.spin(1, 2).clone(),
    )
}

/// Two counterpropagating photons: at `k_1 = (0,0,1)`, `k_2 = (0,0,-1)`
/// (so `omega = 1` each), the realized `M^2` takes the value 4 and the total
/// spatial momentum vanishes.
pub fn two_photon_mass_example(
    real: &Realization,
) -> Result<(Scalar, [Scalar; 3]), RealizationError> {
    if real.particles() != 2 {
        return Err(RealizationError::BadPoint(
            "the two-photon example needs exactly two particles".into(),
        ));
    }
    let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
    let point = MomentumPoint::new(
        vec![[rat(0), rat(0), rat(1)], [rat(0), rat(0), rat(-1)]],
        vec![rat(1), rat(1)],
    )?;
    let one = RingElem::one(real.ctx());
    let m_sq = point.evaluate(&real.mass_power_op(2)?, &one)?;
    let mut p_total = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
    for (j, slot) in p_total.iter_mut().enumerate() {
        *slot = point.evaluate(real.op(Generator::P(j as u8 + 1)), &one)?;
    }
    Ok((m_sq, p_total))
}

/// Randomized exact spot checks of the canonical commutator: the operator
/// `(P_mu, X_nu)` applied to a random polynomial at a random massive rational
/// point must return `-eta_mn` times the function value.
pub fn eq7_point_checks(
    obs: &RealizedObservables,
    seed: u64,
    samples: usize,
) -> Result<(), String> {
    let real = &obs.real;
    let ctx = real.ctx();
    let mut cached = Vec::new();
    for mu in 0..4u8 {
        let mut row = Vec::new();
        for nu in 0..4u8 {
            row.push(real.op(Generator::P(mu)).nbr(obs.position(nu)));
        }
        cached.push(row);
    }
    let mut rng = SplitMix64::new(seed);
    for i in 0..samples {
        let mu = rng.below(4) as u8;
        let nu = rng.below(4) as u8;
        let point = random_point(&mut rng, real.particles(), true);
        let f = random_test_function(ctx, &mut rng);
        let lhs = point
            .evaluate(&cached[mu as usize][nu as usize], &f)
            .map_err(|e| format!("sample {i}: {e}"))?;
        let f_val = point.eval_elem(&f).map_err(|e| format!("sample {i}: {e}"))?;
        let rhs = -eta(mu, nu) * f_val;
        if lhs != rhs {
            return Err(format!(
                "sample {i}: (P_{mu}, X_{nu}) f evaluated to {lhs}, expected {rhs}"
            ));
        }
    }
    Ok(())
}

fn random_test_function(ctx: crate::ring::RingCtx, rng: &mut SplitMix64) -> RingElem {
    let mut p = RingPoly::zero(ctx);
    let nterms = 1 + rng.below(3);
    for _ in 0..nterms {
        let mut powers = Vec::new();
        for _ in 0..rng.below(3) {
            let a = rng.below(ctx.n as u64) as usize;
            let j = rng.below(3) as usize;
            powers.push((ctx.k_var(a, j), 1u32));
        }
        let coeff = Scalar::from_int(rng.range_i64(-4, 4));
        p = p.add(&RingPoly::mono(ctx, &powers, coeff));
    }
    if p.is_zero() {
        p = RingPoly::one(ctx);
    }
    RingElem::from_poly(p)
}

/// `realize` is a homomorphism: `realize(p q) = realize(p) realize(q)`.
///
/// Checked exhaustively on every ordered pair of letters (generators and
/// `M^{+-1}`, `M^{+-2}`) — associativity then extends the property to longer
/// words — and additionally on bounded random polynomial products. Products
/// of four and more letters mixing several `C`'s with inverse mass powers are
/// left out of the random phase: they are already covered by the letter pairs
/// and induction, and their fifth-order compositions cost minutes of exact
/// arithmetic.
pub fn homomorphism_check(
    real: &Realization,
    alg: &nc_calculus::WordAlgebra,
    seed: u64,
    samples: usize,
) -> Result<(), String> {
    let mut alphabet: Vec<NCPolynomial> = Generator::basis()
        .into_iter()
        .map(NCPolynomial::generator)
        .collect();
    for k in [-2i64, -1, 1, 2] {
        alphabet.push(NCPolynomial::mpower(k));
    }
    let verify = |p: &NCPolynomial, q: &NCPolynomial, what: &str| -> Result<(), String> {
        let product = alg.multiply(p, q);
        let lhs = real.realize(&product).map_err(|e| format!("{what}: {e}"))?;
        let rhs = real
            .realize(p)
            .and_then(|a| Ok(a.compose(&real.realize(q)?)))
            .map_err(|e| format!("{what}: {e}"))?;
        if !lhs.sub(&rhs).is_zero() {
            return Err(format!("{what}: realize is not homomorphic on ({p}) * ({q})"));
        }
        Ok(())
    };
    for x in &alphabet {
        for y in &alphabet {
            verify(x, y, &format!("letter pair ({x}) * ({y})"))?;
        }
    }
    let mut rng = SplitMix64::new(seed);
    for i in 0..samples {
        let p = random_polynomial(&mut rng, 2, 2, true);
        let q = random_polynomial(&mut rng, 2, 1, true);
        verify(&p, &q, &format!("sample {i}"))?;
    }
    Ok(())
}

/// Bridge examples: abstract residuals map to the corresponding operators.
pub fn bridge_examples(
    real: &Realization,
    alg: &nc_calculus::WordAlgebra,
) -> Result<Vec<OperatorCheck>, RealizationError> {
    let n = real.particles();
    let obs = nc_calculus::ObservableCatalog::new(alg);
    let mut out = Vec::new();
    // realize(M^-2) is multiplication by 1/s: times s it is the identity.
    {
        let lhs = real
            .realize(&NCPolynomial::mpower(-2))?
            .compose(&real.mass_power_op(2)?);
        out.push(check(
            format!("real.n{n}.bridge.inverse-mass-square"),
            lhs.sub(&DiffOperator::identity(real.ctx())),
        ));
    }
    // realize((P_0, X_0)) = -1
    {
        let b = alg.nc_bracket(
            &NCPolynomial::generator(Generator::P(0)),
            &obs.position(0),
        );
        let lhs = real.realize(&b)?;
        out.push(check(
            format!("real.n{n}.bridge.canonical-commutator"),
            lhs.add(&DiffOperator::identity(real.ctx())),
        ));
    }
    // realize(D - P . X) = 0
    {
        let d = NCPolynomial::generator(Generator::D).sub(&obs.dilatation_from_position());
        out.push(check(
            format!("real.n{n}.bridge.dilatation-decomposition"),
            real.realize(&d)?,
        ));
    }
    Ok(out)
}
