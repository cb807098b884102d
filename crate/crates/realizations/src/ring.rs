//! The exact algebraic function ring of the N-particle massless realization.
//!
//! Variables: `sigma` (the mass `M`), the energies `omega_a`, and the spatial
//! momenta `k_{a,j}` for particles `a = 0..n`, `j = 0..3`. Relations, applied
//! eagerly so no `omega_a` or `sigma` degree above one survives:
//!
//! ```text
//! omega_a^2 = k_{a,0}^2 + k_{a,1}^2 + k_{a,2}^2
//! sigma^2   = s,  s = (sum_a omega_a)^2 - |sum_a k_a|^2
//! ```
//!
//! (`s` reduces to `2 sum_{a<b} (omega_a omega_b - k_a.k_b)`; for one particle
//! it vanishes identically.) The relation set has coprime leading terms, so
//! eager substitution computes canonical normal forms. Ring elements are
//! fractions with denominators restricted to monomials in `omega_a`, `sigma`
//! and `s`; equality is decided by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;
use tensor_core::Scalar;

/// Variable layout for `n` particles: index 0 is `sigma`, `1 + a` is
/// `omega_a`, and `1 + n + 3a + j` is `k_{a,j}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RingCtx {
    pub n: usize,
}

impl RingCtx {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        RingCtx { n }
    }

    pub fn num_vars(&self) -> usize {
        1 + 4 * self.n
    }

    pub fn sigma_var(&self) -> usize {
        0
    }

    pub fn omega_var(&self, a: usize) -> usize {
        assert!(a < self.n);
        1 + a
    }

    pub fn k_var(&self, a: usize, j: usize) -> usize {
        assert!(a < self.n && j < 3);
        1 + self.n + 3 * a + j
    }

    pub fn var_name(&self, v: usize) -> String {
        if v == 0 {
            return "sigma".into();
        }
        if v <= self.n {
            return format!("w{}", v - 1);
        }
        let rest = v - 1 - self.n;
        format!("k{}_{}", rest / 3, rest % 3)
    }

    /// `s = (sum omega)^2 - |sum k|^2` in reduced form:
    /// `2 sum_{a<b} (omega_a omega_b - k_a . k_b)`.
    pub fn s_poly(&self) -> RingPoly {
        let mut p = RingPoly::zero(*self);
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                let two = Scalar::from_int(2);
                p = p.add(&RingPoly::mono(
                    *self,
                    &[(self.omega_var(a), 1), (self.omega_var(b), 1)],
                    two.clone(),
                ));
                for j in 0..3 {
                    p = p.add(&RingPoly::mono(
                        *self,
                        &[(self.k_var(a, j), 1), (self.k_var(b, j), 1)],
                        -two.clone(),
                    ));
                }
            }
        }
        p
    }
}

type Mono = Vec<u32>;

/// Multivariate polynomial over `Q(i)`, kept reduced modulo the on-shell and
/// mass-shell relations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingPoly {
    pub ctx: RingCtx,
    terms: BTreeMap<Mono, Scalar>,
}

impl RingPoly {
    pub fn zero(ctx: RingCtx) -> Self {
        RingPoly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: RingCtx, s: Scalar) -> Self {
        Self::mono(ctx, &[], s)
    }

    pub fn one(ctx: RingCtx) -> Self {
        Self::constant(ctx, Scalar::one())
    }

    pub fn var(ctx: RingCtx, v: usize) -> Self {
        Self::mono(ctx, &[(v, 1)], Scalar::one())
    }

    pub fn mono(ctx: RingCtx, powers: &[(usize, u32)], coeff: Scalar) -> Self {
        let mut exps = vec![0u32; ctx.num_vars()];
        for &(v, e) in powers {
            exps[v] += e;
        }
        let mut p = RingPoly::zero(ctx);
        p.accumulate_reduced(exps, coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, mono: &[u32]) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `coeff * mono`, reducing `sigma^2 -> s` and
    /// `omega_a^2 -> |k_a|^2` to exhaustion.
    fn accumulate_reduced(&mut self, mono: Mono, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let ctx = self.ctx;
        // Reducible?
        if mono[ctx.sigma_var()] >= 2 {
            let mut base = mono.clone();
            base[ctx.sigma_var()] -= 2;
            for (m2, c2) in ctx.s_poly().terms {
                let merged = merge_mono(&base, &m2);
                self.accumulate_reduced(merged, &coeff * &c2);
            }
            return;
        }
        for a in 0..ctx.n {
            let w = ctx.omega_var(a);
            if mono[w] >= 2 {
                let mut base = mono.clone();
                base[w] -= 2;
                for j in 0..3 {
                    let mut m2 = base.clone();
                    m2[ctx.k_var(a, j)] += 2;
                    self.accumulate_reduced(m2, coeff.clone());
                }
                return;
            }
        }
        match self.terms.get_mut(&mono) {
            Some(slot) => {
                *slot += &coeff;
                if slot.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, coeff);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate_reduced(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.ctx);
        }
        RingPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx);
        let mut out = RingPoly::zero(self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.accumulate_reduced(merge_mono(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = RingPoly::one(self.ctx);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

fn merge_mono(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl fmt::Display for RingPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(v, e)| {
                        if *e == 1 {
                            self.ctx.var_name(v)
                        } else {
                            format!("{}^{}", self.ctx.var_name(v), e)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    vars.join(" ")
                } else {
                    format!("{} {}", c, vars.join(" "))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Denominator monomial `sigma^e * prod omega_a^{m_a} * s^f` with
/// `e in {0, 1}` (a `sigma^2` in a denominator is an `s`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenMono {
    pub sigma: u32,
    pub omega: Vec<u32>,
    pub s: u32,
}

impl DenMono {
    pub fn one(n: usize) -> Self {
        DenMono {
            sigma: 0,
            omega: vec![0; n],
            s: 0,
        }
    }

    fn normalized(mut self) -> Self {
        self.s += self.sigma / 2;
        self.sigma %= 2;
        self
    }

    fn mul(&self, other: &Self) -> Self {
        DenMono {
            sigma: self.sigma + other.sigma,
            omega: self
                .omega
                .iter()
                .zip(&other.omega)
                .map(|(a, b)| a + b)
                .collect(),
            s: self.s + other.s,
        }
        .normalized()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        DenMono {
            sigma: self.sigma.max(other.sigma),
            omega: self
                .omega
                .iter()
                .zip(&other.omega)
                .map(|(a, b)| *a.max(b))
                .collect(),
            s: self.s.max(other.s),
        }
    }

    /// The factor by which `self` must be multiplied to reach `target`
    /// (component-wise; `target` must dominate).
    fn complement(&self, target: &Self) -> Self {
        DenMono {
            sigma: target.sigma - self.sigma,
            omega: self
                .omega
                .iter()
                .zip(&target.omega)
                .map(|(a, b)| b - a)
                .collect(),
            s: target.s - self.s,
        }
    }

    fn is_one(&self) -> bool {
        self.sigma == 0 && self.s == 0 && self.omega.iter().all(|e| *e == 0)
    }

    /// The denominator as a reduced polynomial.
    pub fn as_poly(&self, ctx: RingCtx) -> RingPoly {
        let mut p = RingPoly::one(ctx);
        if self.sigma > 0 {
            p = p.mul(&RingPoly::var(ctx, ctx.sigma_var()).pow(self.sigma));
        }
        for (a, e) in self.omega.iter().enumerate() {
            if *e > 0 {
                p = p.mul(&RingPoly::var(ctx, ctx.omega_var(a)).pow(*e));
            }
        }
        if self.s > 0 {
            p = p.mul(&ctx.s_poly().pow(self.s));
        }
        p
    }
}

impl fmt::Display for DenMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.sigma > 0 {
            parts.push("sigma".to_string());
        }
        for (a, e) in self.omega.iter().enumerate() {
            if *e == 1 {
                parts.push(format!("w{a}"));
            } else if *e > 1 {
                parts.push(format!("w{a}^{e}"));
            }
        }
        if self.s == 1 {
            parts.push("s".to_string());
        } else if self.s > 1 {
            parts.push(format!("s^{}", self.s));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// A ring element `num / den`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElem {
    pub num: RingPoly,
    pub den: DenMono,
}

impl RingElem {
    pub fn zero(ctx: RingCtx) -> Self {
        RingElem {
            num: RingPoly::zero(ctx),
            den: DenMono::one(ctx.n),
        }
    }

    pub fn one(ctx: RingCtx) -> Self {
        RingElem {
            num: RingPoly::one(ctx),
            den: DenMono::one(ctx.n),
        }
    }

    pub fn from_poly(num: RingPoly) -> Self {
        let n = num.ctx.n;
        RingElem {
            num,
            den: DenMono::one(n),
        }
    }

    pub fn from_scalar(ctx: RingCtx, s: Scalar) -> Self {
        Self::from_poly(RingPoly::constant(ctx, s))
    }

    pub fn ctx(&self) -> RingCtx {
        self.num.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn with_den(self, target: &DenMono) -> RingPoly {
        let comp = self.den.complement(target);
        if comp.is_one() {
            self.num
        } else {
            self.num.mul(&comp.as_poly(self.num.ctx))
        }
    }

    /// The numerator this element takes over a dominating common denominator.
    pub fn numerator_over(&self, target: &DenMono) -> RingPoly {
        self.clone().with_den(target)
    }

    pub fn den(&self) -> &DenMono {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let num = self
            .clone()
            .with_den(&den)
            .add(&other.clone().with_den(&den));
        RingElem { num, den }.prune()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RingElem {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
        .prune()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        RingElem {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
        .prune()
    }

    /// Divides by the denominator monomial `sigma^e prod omega^m s^f`.
    pub fn div_den(&self, den: &DenMono) -> Self {
        RingElem {
            num: self.num.clone(),
            den: self.den.mul(den),
        }
    }

    fn prune(self) -> Self {
        if self.num.is_zero() {
            Self::zero(self.num.ctx)
        } else {
            self
        }
    }

    /// Multiplication by `sigma^k` for any integer `k`; negative powers use
    /// `1/sigma = sigma/s`.
    pub fn mul_sigma_power(&self, k: i64) -> Self {
        let ctx = self.ctx();
        if k >= 0 {
            let p = RingPoly::var(ctx, ctx.sigma_var()).pow(k as u32);
            self.mul(&Self::from_poly(p))
        } else {
            let a = (-k) as u32;
            // sigma^-a = sigma^(a mod 2) / s^((a+1)/2)
            let num_pow = a % 2;
            let s_pow = a / 2 + num_pow;
            let mut out = self.clone();
            if num_pow == 1 {
                out = out.mul(&Self::from_poly(RingPoly::var(ctx, ctx.sigma_var())));
            }
            out.div_den(&DenMono {
                sigma: 0,
                omega: vec![0; ctx.n],
                s: s_pow,
            })
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

// ---------------------------------------------------------------------------
// Exact differentiation
// ---------------------------------------------------------------------------

/// `d s / d k_{a,j}` as a ring element (denominator `omega_a`), with the
/// on-shell chain rule `d omega_a / d k_{a,j} = k_{a,j} / omega_a` included:
/// `ds = -2 sum_{b != a} k_{b,j} + 2 k_{a,j} (sum_{b != a} omega_b) / omega_a`.
pub fn ds_dk(ctx: RingCtx, a: usize, j: usize) -> RingElem {
    let mut num = RingPoly::zero(ctx);
    for b in 0..ctx.n {
        if b == a {
            continue;
        }
        num = num.add(&RingPoly::mono(
            ctx,
            &[(ctx.k_var(b, j), 1), (ctx.omega_var(a), 1)],
            Scalar::from_int(-2),
        ));
        num = num.add(&RingPoly::mono(
            ctx,
            &[(ctx.k_var(a, j), 1), (ctx.omega_var(b), 1)],
            Scalar::from_int(2),
        ));
    }
    let mut den = DenMono::one(ctx.n);
    den.omega[a] = 1;
    RingElem { num, den }.prune()
}

/// Total derivative of a reduced polynomial with respect to `k_{a,j}`.
pub fn d_poly(p: &RingPoly, a: usize, j: usize) -> RingElem {
    let ctx = p.ctx;
    let kv = ctx.k_var(a, j);
    let wv = ctx.omega_var(a);
    let sv = ctx.sigma_var();
    let mut out = RingElem::zero(ctx);
    for (m, c) in p.iter() {
        // plain k-variable part
        if m[kv] > 0 {
            let mut m2 = m.clone();
            m2[kv] -= 1;
            let mut piece = RingPoly::zero(ctx);
            piece.accumulate_reduced(m2, c * &Scalar::from_int(m[kv] as i64));
            out = out.add(&RingElem::from_poly(piece));
        }
        // omega_a factor (exponent is 0 or 1 after reduction)
        if m[wv] == 1 {
            let mut m2 = m.clone();
            m2[wv] -= 1;
            m2[kv] += 1;
            let mut piece = RingPoly::zero(ctx);
            piece.accumulate_reduced(m2, c.clone());
            let mut den = DenMono::one(ctx.n);
            den.omega[a] = 1;
            out = out.add(&RingElem { num: piece, den }.prune());
        }
        // sigma factor: d sigma = ds / (2 sigma) = ds sigma / (2 s)
        if m[sv] == 1 {
            let mut m2 = m.clone();
            m2[sv] -= 1;
            let mut piece = RingPoly::zero(ctx);
            piece.accumulate_reduced(m2, c.clone());
            let dsig = ds_dk(ctx, a, j)
                .mul(&RingElem::from_poly(RingPoly::var(ctx, sv)))
                .scale(&Scalar::ratio(1, 2))
                .div_den(&DenMono {
                    sigma: 0,
                    omega: vec![0; ctx.n],
                    s: 1,
                });
            out = out.add(&RingElem::from_poly(piece).mul(&dsig));
        }
    }
    out
}

/// Total derivative of a ring element with respect to `k_{a,j}`.
pub fn d_elem(e: &RingElem, a: usize, j: usize) -> RingElem {
    let ctx = e.ctx();
    let mut out = d_poly(&e.num, a, j).div_den(&e.den);
    if e.den.is_one() {
        return out;
    }
    // num * d(1/den) = -num/den * (e ds/(2s) + m_a k/(w_a^2) + f ds/s)
    let mut log_deriv = RingElem::zero(ctx);
    if e.den.sigma == 1 {
        log_deriv = log_deriv.add(
            &ds_dk(ctx, a, j)
                .scale(&Scalar::ratio(1, 2))
                .div_den(&DenMono {
                    sigma: 0,
                    omega: vec![0; ctx.n],
                    s: 1,
                }),
        );
    }
    let m_a = e.den.omega[a];
    if m_a > 0 {
        let mut den = DenMono::one(ctx.n);
        den.omega[a] = 2;
        log_deriv = log_deriv.add(
            &RingElem {
                num: RingPoly::mono(ctx, &[(ctx.k_var(a, j), 1)], Scalar::from_int(m_a as i64)),
                den,
            }
            .prune(),
        );
    }
    if e.den.s > 0 {
        log_deriv = log_deriv.add(
            &ds_dk(ctx, a, j)
                .scale(&Scalar::from_int(e.den.s as i64))
                .div_den(&DenMono {
                    sigma: 0,
                    omega: vec![0; ctx.n],
                    s: 1,
                }),
        );
    }
    out = out.sub(
        &RingElem {
            num: e.num.clone(),
            den: e.den.clone(),
        }
        .mul(&log_deriv),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx2() -> RingCtx {
        RingCtx::new(2)
    }

    #[test]
    fn omega_square_reduces_on_shell() {
        let ctx = ctx2();
        let w = RingPoly::var(ctx, ctx.omega_var(0));
        let w2 = w.mul(&w);
        let mut k2 = RingPoly::zero(ctx);
        for j in 0..3 {
            k2 = k2.add(&RingPoly::mono(ctx, &[(ctx.k_var(0, j), 2)], Scalar::one()));
        }
        assert_eq!(w2, k2);
    }

    #[test]
    fn sigma_square_is_s() {
        let ctx = ctx2();
        let sig = RingPoly::var(ctx, ctx.sigma_var());
        assert_eq!(sig.mul(&sig), ctx.s_poly());
    }

    #[test]
    fn one_particle_s_vanishes() {
        let ctx = RingCtx::new(1);
        assert!(ctx.s_poly().is_zero());
    }

    #[test]
    fn sigma_inverse_roundtrip() {
        let ctx = ctx2();
        let one = RingElem::one(ctx);
        for k in [-3i64, -2, -1, 1, 2, 3] {
            let x = one.mul_sigma_power(k).mul_sigma_power(-k);
            assert_eq!(x.sub(&one), RingElem::zero(ctx), "sigma^{k} inverse");
        }
    }

    #[test]
    fn derivative_of_omega_and_sigma() {
        let ctx = ctx2();
        // d omega_0 / d k_{0,1} = k_{0,1} / omega_0
        let w = RingElem::from_poly(RingPoly::var(ctx, ctx.omega_var(0)));
        let got = d_elem(&w, 0, 1);
        let mut den = DenMono::one(2);
        den.omega[0] = 1;
        let want = RingElem {
            num: RingPoly::var(ctx, ctx.k_var(0, 1)),
            den,
        };
        assert!(got.sub(&want).is_zero());
        // sigma * d sigma = ds/2
        let sig = RingElem::from_poly(RingPoly::var(ctx, ctx.sigma_var()));
        let lhs = sig.mul(&d_elem(&sig, 1, 2));
        let rhs = ds_dk(ctx, 1, 2).scale(&Scalar::ratio(1, 2));
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn quotient_rule_against_product() {
        let ctx = ctx2();
        // e = k_{0,0} / (omega_0 s): check d(e * omega_0 s) = d(k_{0,0})
        let mut den = DenMono::one(2);
        den.omega[0] = 1;
        den.s = 1;
        let e = RingElem {
            num: RingPoly::var(ctx, ctx.k_var(0, 0)),
            den: den.clone(),
        };
        let back = e.mul(&RingElem::from_poly(den.as_poly(ctx)));
        let d_direct = d_elem(&back, 0, 0);
        // product rule on e * (w0 s)
        let ws = RingElem::from_poly(den.as_poly(ctx));
        let d_product = d_elem(&e, 0, 0).mul(&ws).add(&e.mul(&d_elem(&ws, 0, 0)));
        assert!(d_direct.sub(&d_product).is_zero());
    }
}
