//! Exact evaluation of operators at rational on-shell momentum points.

use crate::diffop::DiffOperator;
use crate::ring::{RingCtx, RingElem, RingPoly};
use crate::RealizationError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use tensor_core::{Scalar, SplitMix64};

/// A rational on-shell point: `omega_a = |k_a|` with every component
/// rational, which requires Pythagorean-compatible momentum vectors.
#[derive(Clone, Debug)]
pub struct MomentumPoint {
    pub k: Vec<[BigRational; 3]>,
    pub omega: Vec<BigRational>,
}

impl MomentumPoint {
    pub fn new(k: Vec<[BigRational; 3]>, omega: Vec<BigRational>) -> Result<Self, RealizationError> {
        if k.len() != omega.len() {
            return Err(RealizationError::BadPoint(
                "momentum/energy arity mismatch".into(),
            ));
        }
        for (ka, wa) in k.iter().zip(&omega) {
            let norm2: BigRational = ka.iter().map(|c| c * c).sum();
            if wa * wa != norm2 {
                return Err(RealizationError::BadPoint(format!(
                    "off-shell point: omega^2 = {} but |k|^2 = {}",
                    wa * wa,
                    norm2
                )));
            }
            if !wa.is_positive() {
                return Err(RealizationError::BadPoint(
                    "energies must be positive".into(),
                ));
            }
        }
        Ok(MomentumPoint { k, omega })
    }

    pub fn particles(&self) -> usize {
        self.omega.len()
    }

    /// `s = (sum omega)^2 - |sum k|^2` at the point.
    pub fn s_value(&self) -> BigRational {
        let wsum: BigRational = self.omega.iter().sum();
        let mut ksum = [
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ];
        for ka in &self.k {
            for j in 0..3 {
                ksum[j] += &ka[j];
            }
        }
        &wsum * &wsum - ksum.iter().map(|c| c * c).sum::<BigRational>()
    }

    /// `sigma = sqrt(s)` when that is rational at this point.
    fn sigma_value(&self) -> Option<BigRational> {
        rational_sqrt(&self.s_value())
    }

    fn var_value(&self, ctx: RingCtx, v: usize) -> Result<BigRational, RealizationError> {
        if v == ctx.sigma_var() {
            return self.sigma_value().ok_or_else(|| {
                RealizationError::BadPoint(format!(
                    "sigma is irrational at this point (s = {})",
                    self.s_value()
                ))
            });
        }
        for a in 0..ctx.n {
            if v == ctx.omega_var(a) {
                return Ok(self.omega[a].clone());
            }
            for j in 0..3 {
                if v == ctx.k_var(a, j) {
                    return Ok(self.k[a][j].clone());
                }
            }
        }
        unreachable!("variable out of range")
    }

    pub fn eval_poly(&self, p: &RingPoly) -> Result<Scalar, RealizationError> {
        let ctx = p.ctx;
        assert_eq!(ctx.n, self.particles());
        let mut acc = Scalar::zero();
        for (mono, coeff) in p.iter() {
            let mut v = BigRational::from_integer(BigInt::from(1));
            for (var, e) in mono.iter().enumerate() {
                for _ in 0..*e {
                    v *= self.var_value(ctx, var)?;
                }
            }
            let term = coeff * &Scalar::new(v, BigRational::zero());
            acc += &term;
        }
        Ok(acc)
    }

    pub fn eval_elem(&self, e: &RingElem) -> Result<Scalar, RealizationError> {
        let num = self.eval_poly(&e.num)?;
        let ctx = e.ctx();
        let mut den = BigRational::from_integer(BigInt::from(1));
        if e.den().sigma > 0 {
            let sigma = self.sigma_value().ok_or_else(|| {
                RealizationError::BadPoint("sigma is irrational at this point".into())
            })?;
            for _ in 0..e.den().sigma {
                den *= &sigma;
            }
        }
        for (a, m) in e.den().omega.iter().enumerate() {
            for _ in 0..*m {
                den *= &self.omega[a];
            }
        }
        if e.den().s > 0 {
            let s = self.s_value();
            for _ in 0..e.den().s {
                den *= &s;
            }
        }
        let _ = ctx;
        if den.is_zero() {
            return Err(RealizationError::BadPoint(
                "denominator vanishes at this point".into(),
            ));
        }
        Ok(num * Scalar::new(den, BigRational::zero()).inv())
    }

    /// Exact value of `(op f)(point)`.
    pub fn evaluate(
        &self,
        op: &DiffOperator,
        f: &RingElem,
    ) -> Result<Scalar, RealizationError> {
        self.eval_elem(&op.apply(f))
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().sqrt();
    let den = r.denom().sqrt();
    if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

/// Random on-shell rational point from Pythagorean quadruples
/// `(x^2+y^2-z^2, 2xz, 2yz; x^2+y^2+z^2)`, with random component signs and
/// permutation. With `require_massive`, resamples until `s != 0`.
pub fn random_point(
    rng: &mut SplitMix64,
    n: usize,
    require_massive: bool,
) -> MomentumPoint {
    loop {
        let mut k = Vec::new();
        let mut omega = Vec::new();
        for _ in 0..n {
            let (x, y, z) = loop {
                let x = rng.range_i64(-4, 4);
                let y = rng.range_i64(-4, 4);
                let z = rng.range_i64(1, 4);
                if x * x + y * y + z * z > 0 && (x != 0 || y != 0) {
                    break (x, y, z);
                }
            };
            let mut comps = [x * x + y * y - z * z, 2 * x * z, 2 * y * z];
            let w = x * x + y * y + z * z;
            // random signs and slot permutation keep the shell condition
            for c in comps.iter_mut() {
                if rng.chance(1, 2) {
                    *c = -*c;
                }
            }
            let swap = rng.below(3) as usize;
            comps.swap(0, swap);
            let q = rng.range_i64(1, 3);
            k.push([
                BigRational::new(BigInt::from(comps[0]), BigInt::from(q)),
                BigRational::new(BigInt::from(comps[1]), BigInt::from(q)),
                BigRational::new(BigInt::from(comps[2]), BigInt::from(q)),
            ]);
            omega.push(BigRational::new(BigInt::from(w), BigInt::from(q)));
        }
        let point = MomentumPoint::new(k, omega).expect("construction is on-shell");
        if require_massive && point.s_value().is_zero() {
            continue;
        }
        return point;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn counterpropagating_photons() {
        let p = MomentumPoint::new(
            vec![
                [rat(0), rat(0), rat(1)],
                [rat(0), rat(0), rat(-1)],
            ],
            vec![rat(1), rat(1)],
        )
        .unwrap();
        assert_eq!(p.s_value(), rat(4));
        assert_eq!(p.sigma_value(), Some(rat(2)));
    }

    #[test]
    fn off_shell_points_are_rejected() {
        let r = MomentumPoint::new(vec![[rat(1), rat(0), rat(0)]], vec![rat(2)]);
        assert!(r.is_err());
    }

    #[test]
    fn evaluation_examples_at_the_two_photon_point() {
        use crate::diffop::DiffOperator;
        let ctx = RingCtx::new(2);
        let point = MomentumPoint::new(
            vec![[rat(0), rat(0), rat(1)], [rat(0), rat(0), rat(-1)]],
            vec![rat(1), rat(1)],
        )
        .unwrap();
        // identity on f = k_{1,z} evaluates to the component itself
        let f = RingElem::from_poly(RingPoly::var(ctx, ctx.k_var(0, 2)));
        let id = DiffOperator::identity(ctx);
        assert_eq!(
            point.evaluate(&id, &f).unwrap(),
            tensor_core::Scalar::one()
        );
        // multiplication by omega_1 + omega_2 on f = 1 evaluates to 2
        let p0 = DiffOperator::mult(RingElem::from_poly(
            RingPoly::var(ctx, ctx.omega_var(0)).add(&RingPoly::var(ctx, ctx.omega_var(1))),
        ));
        assert_eq!(
            point.evaluate(&p0, &RingElem::one(ctx)).unwrap(),
            tensor_core::Scalar::from_int(2)
        );
    }

    #[test]
    fn random_points_are_on_shell_and_massive() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..50 {
            let p = random_point(&mut rng, 2, true);
            assert!(!p.s_value().is_zero());
        }
    }
}
