//! Exact 6x6 rational matrices and the so(4,2) representation of the
//! conformal algebra.
//!
//! Ambient metric `G = diag(+1,-1,-1,-1,-1,+1)`, basis matrices
//! `(L_ab)^c_d = delta^c_a G_bd - delta^c_b G_ad`. The embedding is
//!
//! ```text
//! J_mn -> L_mn      D -> zeta L_45
//! P_mu -> L_mu4 + L_mu5      C_mu -> gamma L_mu4 + delta L_mu5
//! ```
//!
//! with `alpha = beta = 1` fixing the `P`-`C` scaling freedom and the
//! remaining scalars solved exactly from closure. At this level the bracket
//! is the plain matrix commutator over the rationals; no imaginary unit
//! appears, and `[rho(A), rho(B)] = rho((A,B))` against the structure table.

use crate::solver::{solve_unique, LinearEquation};
use crate::RealizationError;
use conformal_algebra::{AlgebraElement, Generator, StructureTable};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use tensor_core::Scalar;

/// Row-major 6x6 matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat6 {
    data: Vec<BigRational>,
}

impl Mat6 {
    pub fn zero() -> Self {
        Mat6 {
            data: vec![BigRational::zero(); 36],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * 6 + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * 6 + c] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        Mat6 {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Mat6 {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Mat6 {
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Mat6 {
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Mat6::zero();
        for r in 0..6 {
            for k in 0..6 {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..6 {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c) + a * b;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Mat6::zero();
        for r in 0..6 {
            for c in 0..6 {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn nonzero_entries(&self) -> usize {
        self.data.iter().filter(|a| !a.is_zero()).count()
    }
}

impl fmt::Display for Mat6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..6 {
            let row: Vec<String> = (0..6).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Ambient metric component `G_aa` for `a` in `0..6`.
fn ambient_g(a: usize) -> i64 {
    match a {
        0 | 5 => 1,
        _ => -1,
    }
}

/// `(L_ab)^c_d = delta^c_a G_bd - delta^c_b G_ad`.
pub fn l_basis(a: usize, b: usize) -> Mat6 {
    let mut m = Mat6::zero();
    for c in 0..6 {
        for d in 0..6 {
            let mut v = 0i64;
            if c == a && b == d {
                v += ambient_g(b);
            }
            if c == b && a == d {
                v -= ambient_g(a);
            }
            if v != 0 {
                m.set(c, d, BigRational::from_integer(BigInt::from(v)));
            }
        }
    }
    m
}

/// The closure-solved scalars of the embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepCoefficients {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
    pub delta: BigRational,
    pub zeta: BigRational,
}

#[derive(Clone, Debug)]
pub struct MatrixRep {
    images: BTreeMap<Generator, Mat6>,
    coefficients: RepCoefficients,
}

fn scalar_to_rational(s: &Scalar) -> Result<BigRational, RealizationError> {
    s.as_rational().cloned().ok_or_else(|| {
        RealizationError::NonRationalCoefficient(s.to_string())
    })
}

fn rational_to_scalar(r: &BigRational) -> Scalar {
    Scalar::new(r.clone(), BigRational::zero())
}

impl MatrixRep {
    /// Solves the embedding coefficients from closure and builds the images.
    ///
    /// The solve is staged: `zeta` from `(D, P_mu) = P_mu`, then
    /// `(gamma, delta)` from `(P_mu, C_nu) = -2 eta_mn D - 2 J_mn` with the
    /// already-known `D` image. Everything else is verification.
    pub fn build(table: &StructureTable) -> Result<Self, RealizationError> {
        let alpha = BigRational::one();
        let beta = BigRational::one();
        let p_img = |mu: usize| l_basis(mu, 4).add(&l_basis(mu, 5));

        // Images of table values in the span of D, J, P, with D = zeta L_45
        // entering through its basis matrix so the zeta unknown stays factored
        // out where needed.
        let known_image = |e: &AlgebraElement, d_img: &Mat6| -> Result<Mat6, RealizationError> {
            let mut out = Mat6::zero();
            for (g, c) in e.iter() {
                let s = c.as_scalar().ok_or_else(|| {
                    RealizationError::NonRationalCoefficient(c.to_string())
                })?;
                let r = scalar_to_rational(&s)?;
                let m = match g {
                    Generator::D => d_img.clone(),
                    Generator::J(a, b) => l_basis(*a as usize, *b as usize),
                    Generator::P(mu) => p_img(*mu as usize),
                    Generator::C(_) => {
                        return Err(RealizationError::ClosureUnsolvable(
                            "bracket value involves C before C is solved".into(),
                        ))
                    }
                };
                out = out.add(&m.scale(&r));
            }
            Ok(out)
        };

        // zeta from [zeta L45, rho(P_mu)] = rho((D, P_mu)) for every mu.
        let mut rows = Vec::new();
        for mu in 0..4u8 {
            let k = l_basis(4, 5).commutator(&p_img(mu as usize));
            // (D, P_mu) lies in the P span, so a zero D image is fine here.
            let t = known_image(
                table.bracket_basis(Generator::D, Generator::P(mu)),
                &Mat6::zero(),
            )?;
            for idx in 0..36 {
                if k.data[idx].is_zero() && t.data[idx].is_zero() {
                    continue;
                }
                rows.push(LinearEquation {
                    coeffs: vec![rational_to_scalar(&k.data[idx])],
                    offset: -rational_to_scalar(&t.data[idx]),
                });
            }
        }
        let zeta = scalar_to_rational(&solve_unique(rows, 1)?[0])?;
        let d_img = l_basis(4, 5).scale(&zeta);

        // (gamma, delta) from [rho(P_mu), gamma L_nu4 + delta L_nu5]
        //                      = rho((P_mu, C_nu))
        // together with [rho(D), gamma L_nu4 + delta L_nu5]
        //                      = rho((D, C_nu)) = -(gamma L_nu4 + delta L_nu5);
        // the P rows alone only pin gamma - delta.
        let mut rows = Vec::new();
        let mut push_rows = |k_gamma: &Mat6, k_delta: &Mat6, rhs: &Mat6| {
            for idx in 0..36 {
                if k_gamma.data[idx].is_zero()
                    && k_delta.data[idx].is_zero()
                    && rhs.data[idx].is_zero()
                {
                    continue;
                }
                rows.push(LinearEquation {
                    coeffs: vec![
                        rational_to_scalar(&k_gamma.data[idx]),
                        rational_to_scalar(&k_delta.data[idx]),
                    ],
                    offset: -rational_to_scalar(&rhs.data[idx]),
                });
            }
        };
        for mu in 0..4u8 {
            for nu in 0..4u8 {
                let k_gamma = p_img(mu as usize).commutator(&l_basis(nu as usize, 4));
                let k_delta = p_img(mu as usize).commutator(&l_basis(nu as usize, 5));
                let rhs = known_image(
                    table.bracket_basis(Generator::P(mu), Generator::C(nu)),
                    &d_img,
                )?;
                push_rows(&k_gamma, &k_delta, &rhs);
            }
        }
        for nu in 0..4u8 {
            // (D, C_nu) = c * C_nu with c read off the table; any part of the
            // entry outside the C_nu ray goes to the constant side.
            let entry = table.bracket_basis(Generator::D, Generator::C(nu));
            let c_coeff = entry
                .coefficient(&Generator::C(nu))
                .as_scalar()
                .ok_or_else(|| RealizationError::NonRationalCoefficient(entry.to_string()))?;
            let c_rat = scalar_to_rational(&c_coeff)?;
            let mut rest = AlgebraElement::zero();
            for (g, c) in entry.iter() {
                if *g != Generator::C(nu) {
                    rest = rest.add(&AlgebraElement::term(c.clone(), *g));
                }
            }
            let rest_img = known_image(&rest, &d_img)?;
            let k_gamma = d_img
                .commutator(&l_basis(nu as usize, 4))
                .sub(&l_basis(nu as usize, 4).scale(&c_rat));
            let k_delta = d_img
                .commutator(&l_basis(nu as usize, 5))
                .sub(&l_basis(nu as usize, 5).scale(&c_rat));
            push_rows(&k_gamma, &k_delta, &rest_img);
        }
        let gd = solve_unique(rows, 2)?;
        let gamma = scalar_to_rational(&gd[0])?;
        let delta = scalar_to_rational(&gd[1])?;

        let mut images = BTreeMap::new();
        images.insert(Generator::D, d_img);
        for mu in 0..4 {
            for nu in (mu + 1)..4 {
                images.insert(Generator::J(mu as u8, nu as u8), l_basis(mu, nu));
            }
        }
        for mu in 0..4 {
            images.insert(Generator::P(mu as u8), p_img(mu));
            images.insert(
                Generator::C(mu as u8),
                l_basis(mu, 4).scale(&gamma).add(&l_basis(mu, 5).scale(&delta)),
            );
        }
        let rep = MatrixRep {
            images,
            coefficients: RepCoefficients {
                alpha,
                beta,
                gamma,
                delta,
                zeta,
            },
        };
        // Hard error if the solved rep does not close; a failure here means
        // the table or a convention is wrong, not the input.
        for r in rep.verify(table) {
            if !r.residual.is_zero() {
                return Err(RealizationError::ClosureUnsolvable(format!(
                    "solved matrix representation fails closure at {}",
                    r.label
                )));
            }
        }
        Ok(rep)
    }

    pub fn coefficients(&self) -> &RepCoefficients {
        &self.coefficients
    }

    pub fn image(&self, g: Generator) -> &Mat6 {
        &self.images[&g]
    }

    /// Linear extension to algebra elements; coefficients must be real
    /// rationals, which every structure-table entry satisfies.
    pub fn apply(&self, e: &AlgebraElement) -> Result<Mat6, RealizationError> {
        let mut out = Mat6::zero();
        for (g, c) in e.iter() {
            let s = c.as_scalar().ok_or_else(|| {
                RealizationError::NonRationalCoefficient(c.to_string())
            })?;
            out = out.add(&self.images[g].scale(&scalar_to_rational(&s)?));
        }
        Ok(out)
    }

    /// All 105 pair residuals `[rho(A), rho(B)] - rho((A,B))`.
    pub fn verify(&self, table: &StructureTable) -> Vec<MatrixCheck> {
        let mut out = Vec::new();
        for (a, b) in StructureTable::distinct_pairs() {
            let lhs = self.images[&a].commutator(&self.images[&b]);
            let rhs = self
                .apply(table.bracket_basis(a, b))
                .expect("table coefficients are rational");
            out.push(MatrixCheck {
                label: format!("matrix.pair.{a}.{b}"),
                residual: lhs.sub(&rhs),
            });
        }
        out
    }

    /// `rho(g)^T G + G rho(g)` for every generator; zero iff the image lies
    /// in the G-antisymmetric algebra.
    pub fn g_antisymmetry_residuals(&self) -> Vec<MatrixCheck> {
        let mut g_mat = Mat6::zero();
        for a in 0..6 {
            g_mat.set(a, a, BigRational::from_integer(BigInt::from(ambient_g(a))));
        }
        self.images
            .iter()
            .map(|(gen, m)| MatrixCheck {
                label: format!("matrix.g-antisymmetry.{gen}"),
                residual: m.transpose().mul(&g_mat).add(&g_mat.mul(m)),
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct MatrixCheck {
    pub label: String,
    pub residual: Mat6,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solved_coefficients() {
        let table = StructureTable::conformal();
        let rep = MatrixRep::build(&table).unwrap();
        let c = rep.coefficients();
        let one = BigRational::one();
        assert_eq!(c.alpha, one);
        assert_eq!(c.beta, one);
        assert_eq!(c.zeta, one);
        assert_eq!(c.gamma, -one.clone());
        assert_eq!(c.delta, one);
    }

    #[test]
    fn boost_image_entries() {
        // (L_01)^c_d = delta^c_0 G_1d - delta^c_1 G_0d has exactly the two
        // entries (0,1) -> -1 and (1,0) -> -1.
        let table = StructureTable::conformal();
        let rep = MatrixRep::build(&table).unwrap();
        let j01 = rep.image(Generator::J(0, 1));
        assert_eq!(j01.nonzero_entries(), 2);
        let minus_one = -BigRational::one();
        assert_eq!(j01.get(0, 1), &minus_one);
        assert_eq!(j01.get(1, 0), &minus_one);
    }

    #[test]
    fn closure_example_p0_c0() {
        let table = StructureTable::conformal();
        let rep = MatrixRep::build(&table).unwrap();
        let lhs = rep
            .image(Generator::P(0))
            .commutator(rep.image(Generator::C(0)));
        let rhs = rep
            .apply(table.bracket_basis(Generator::P(0), Generator::C(0)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn all_pairs_close_and_g_antisymmetric() {
        let table = StructureTable::conformal();
        let rep = MatrixRep::build(&table).unwrap();
        let checks = rep.verify(&table);
        assert_eq!(checks.len(), 105);
        assert!(checks.iter().all(|c| c.residual.is_zero()));
        let g_checks = rep.g_antisymmetry_residuals();
        assert_eq!(g_checks.len(), 15);
        assert!(g_checks.iter().all(|c| c.residual.is_zero()));
    }
}
