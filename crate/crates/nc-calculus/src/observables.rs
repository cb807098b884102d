//! Builders for the derived observables: mass, position, spin tensor,
//! Pauli-Lubanski vector, the dilatation decomposition and the
//! accelerated-frame generator.
//!
//! Chained dots are binary and grouped exactly as in the defining relations;
//! where two factors commute (such as `P^rho` with `M^-2`) the grouping is
//! unambiguous and they are stored as one word.

use crate::algebra::WordAlgebra;
use crate::poly::{Letter, NCPolynomial};
use conformal_algebra::Generator;
use tensor_core::{
    epsilon_component_upper, metric_component, CoefficientExpr, IndexLabel, Scalar, TensorFactor,
};

pub struct ObservableCatalog<'a> {
    alg: &'a WordAlgebra,
}

impl<'a> ObservableCatalog<'a> {
    pub fn new(alg: &'a WordAlgebra) -> Self {
        ObservableCatalog { alg }
    }

    pub fn algebra(&self) -> &WordAlgebra {
        self.alg
    }

    /// `M^2 = eta^{rho sigma} P_rho P_sigma`, built as the defining
    /// contraction. Its normal form collapses to the formal letter `M^2`
    /// through the mass-shell rule, which is itself asserted by a unit test.
    pub fn mass_squared(&self) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for rho in 0..4u8 {
            let p = Letter::Gen(Generator::P(rho));
            out = out.add(&NCPolynomial::term(
                CoefficientExpr::from_scalar(metric_component(rho, rho)),
                vec![p, p],
            ));
        }
        self.alg.normal_form(&out)
    }

    /// The formal mass power `M^k`.
    pub fn mass_power(&self, k: i64) -> NCPolynomial {
        NCPolynomial::mpower(k)
    }

    /// `X_mu = (eta_{mu rho} D - J_{mu rho}) . (P^rho / M^2)`.
    pub fn position(&self, mu: u8) -> NCPolynomial {
        self.alg.covector_dot(mu, &[Letter::M(-2)])
    }

    /// `S_mu_nu = J_mu_nu - (P_mu . X_nu - P_nu . X_mu)`.
    pub fn spin_tensor(&self, mu: u8, nu: u8) -> NCPolynomial {
        let j = match Generator::j_normalized(mu, nu) {
            None => NCPolynomial::zero(),
            Some((sign, g)) => NCPolynomial::generator(g).scale(&Scalar::from_int(sign)),
        };
        let p_dot_x = |a: u8, b: u8| {
            self.alg.sym_product(
                &NCPolynomial::generator(Generator::P(a)),
                &self.position(b),
            )
        };
        j.sub(&p_dot_x(mu, nu)).add(&p_dot_x(nu, mu))
    }

    /// `S^mu = -1/2 eps^{mu nu rho sigma} J_{nu rho} . (P_sigma / M)`.
    pub fn pauli_lubanski(&self, mu: u8) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
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
                    let jpoly = NCPolynomial::generator(j).scale(&Scalar::from_int(sign));
                    let p_over_m = NCPolynomial::term(
                        CoefficientExpr::one(),
                        vec![Letter::Gen(Generator::P(sigma)), Letter::M(-1)],
                    );
                    let term = self
                        .alg
                        .sym_product(&jpoly, &p_over_m)
                        .scale(&(eps * Scalar::ratio(-1, 2)));
                    out = out.add(&term);
                }
            }
        }
        out
    }

    /// `D = P_rho . X^rho`, the dilatation rebuilt from position.
    pub fn dilatation_from_position(&self) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for rho in 0..4u8 {
            let term = self
                .alg
                .sym_product(
                    &NCPolynomial::generator(Generator::P(rho)),
                    &self.position(rho),
                )
                .scale(&metric_component(rho, rho));
            out = out.add(&term);
        }
        out
    }

    /// The accelerated-frame generator `Delta = a^mu C_mu / 2` with the
    /// acceleration kept as a formal commuting parameter.
    pub fn accel_generator(&self) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for mu in 0..4u8 {
            let coeff = CoefficientExpr::monomial(
                Scalar::ratio(1, 2),
                vec![TensorFactor::accel(IndexLabel::conc_up(mu))],
            )
            .expect("concrete accel index");
            out = out.add(&NCPolynomial::term(
                coeff,
                vec![Letter::Gen(Generator::C(mu))],
            ));
        }
        out
    }

    /// The formal coefficient `a^mu`.
    pub fn accel_coeff(&self, mu: u8) -> CoefficientExpr {
        CoefficientExpr::monomial(
            Scalar::one(),
            vec![TensorFactor::accel(IndexLabel::conc_up(mu))],
        )
        .expect("concrete accel index")
    }
}
