//! The associative word algebra and its normal-ordering rewrite kernel.
//!
//! Normal form: generator letters sorted `D < J < P < C` (each family by
//! index), all mass-power letters merged into a single rightmost `M^k`, and
//! no adjacent `P_0 P_0` pair anywhere: squares of `P_0` are eliminated
//! through the mass-shell relation `M^2 = P_rho P^rho` in favour of
//! `M^2 + P_1^2 + P_2^2 + P_3^2`. Reducing unconditionally (not merely in
//! words carrying a negative mass power) identifies the contraction
//! `P_rho P^rho` with the letter `M^2` itself; without that identification
//! the bracket rules for `M^k` are inconsistent with associativity and the
//! Leibniz property fails on words mixing `C` letters with positive mass
//! powers.
//!
//! Out-of-order adjacent letters rewrite through the structure table:
//! `y x -> x y + i (y, x)`, which is the operator identity for the normalized
//! bracket `(A, B) = [A, B]/(i hbar)` at `hbar = 1`. Mass-power letters
//! commute with `P` and `J`; against `D` and `C` they carry the bracket rules
//!
//! ```text
//! (D, M^k)    = k M^k
//! (C_mu, M)   = 2 (eta_{mu rho} D - J_{mu rho}) . (P^rho M^-1)
//! (C_mu, M^2) = 4 (eta_{mu rho} D - J_{mu rho}) . P^rho
//! (C_mu, M^-k) from A A^-1 = 1, other powers by Leibniz recursion.
//! ```
//!
//! Termination: swaps strictly reduce the inversion count, correction terms
//! strictly reduce the letter count or the `C`-letter count, and the
//! `P_0`-square elimination strictly reduces the `P_0` count; a step budget
//! backstops rule bugs. Confluence is evidenced by randomized-strategy
//! reduction tests.

use crate::poly::{Letter, NCPolynomial, Word};
use crate::NcError;
use conformal_algebra::{Generator, StructureTable};
use std::collections::BTreeMap;
use tensor_core::{metric_component, CoefficientExpr, Scalar, SplitMix64};

/// Default bound on rewrite steps per `normal_form` call.
pub const DEFAULT_STEP_BUDGET: usize = 50_000_000;

/// How the rewriter picks the next reducible term and violation. The
/// deterministic strategy always takes the first; the seeded strategy picks
/// uniformly, which is used to gather confluence evidence.
pub enum Strategy {
    Deterministic,
    Seeded(SplitMix64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Violation {
    /// `M(0)` at position `i`.
    DropM0(usize),
    /// Adjacent `M(a) M(b)` at `i`.
    MergeM(usize),
    /// `M(k)` immediately left of a generator letter at `i`.
    SwapMGen(usize),
    /// Adjacent generators out of order at `i`.
    SwapGenGen(usize),
    /// Adjacent `P_0 P_0` at `i`, eliminated via the mass-shell relation.
    PSquare(usize),
}

pub struct WordAlgebra {
    table: StructureTable,
    /// Precomputed `(C_mu, M^k)` for `k` in `{-2, -1, 1, 2}`.
    c_m_rules: BTreeMap<(u8, i64), NCPolynomial>,
    step_budget: usize,
}

impl WordAlgebra {
    pub fn new(table: StructureTable) -> Self {
        let mut alg = WordAlgebra {
            table,
            c_m_rules: BTreeMap::new(),
            step_budget: DEFAULT_STEP_BUDGET,
        };
        // (C_mu, M) = 2 (eta_{mu rho} D - J_{mu rho}) . (P^rho M^-1) and the
        // even companion; both are C-free, so computing them only needs the
        // generator-letter rules.
        for mu in 0..4u8 {
            let odd = alg
                .covector_dot(mu, &[Letter::M(-1)])
                .scale(&Scalar::from_int(2));
            let even = alg.covector_dot(mu, &[]).scale(&Scalar::from_int(4));
            alg.c_m_rules.insert((mu, 1), odd);
            alg.c_m_rules.insert((mu, 2), even);
        }
        // (C, M^-1) = -M^-1 (C, M) M^-1 and likewise for M^-2, exact
        // consequences of A A^-1 = 1.
        for mu in 0..4u8 {
            for k in [1i64, 2] {
                let pos = alg.c_m_rules[&(mu, k)].clone();
                let m_inv = NCPolynomial::mpower(-k);
                let neg = self_multiply3(&alg, &m_inv, &pos, &m_inv).neg();
                alg.c_m_rules.insert((mu, -k), neg);
            }
        }
        alg
    }

    pub fn with_step_budget(mut self, budget: usize) -> Self {
        self.step_budget = budget;
        self
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    /// `(eta_{mu rho} D - J_{mu rho}) . (P^rho <tail>)` summed over `rho`,
    /// with the symmetrized dot. This combination is the right-hand side
    /// shape of every mass-shift rule.
    pub fn covector_dot(&self, mu: u8, tail: &[Letter]) -> NCPolynomial {
        let mut out = NCPolynomial::zero();
        for rho in 0..4u8 {
            let mut left = NCPolynomial::zero();
            let eta = metric_component(mu, rho);
            if !eta.is_zero() {
                left = left.add(&NCPolynomial::generator(Generator::D).scale(&eta));
            }
            if let Some((sign, j)) = Generator::j_normalized(mu, rho) {
                left = left.add(&NCPolynomial::generator(j).scale(&Scalar::from_int(-sign)));
            }
            if left.is_zero() {
                continue;
            }
            let mut word = vec![Letter::Gen(Generator::P(rho))];
            word.extend_from_slice(tail);
            // P^rho = eta^{rho rho} P_rho
            let right = NCPolynomial::term(
                CoefficientExpr::from_scalar(metric_component(rho, rho)),
                word,
            );
            out = out.add(&self.sym_product(&left, &right));
        }
        out
    }

    /// `(C_mu, M^k)` as a normal-form polynomial.
    fn c_mpower_bracket(&self, mu: u8, k: i64) -> NCPolynomial {
        if k == 0 {
            return NCPolynomial::zero();
        }
        if let Some(rule) = self.c_m_rules.get(&(mu, k)) {
            return rule.clone();
        }
        // Leibniz recursion two steps at a time keeps parity:
        // (C, M^k) = (C, M^s) M^{k-s} + M^s (C, M^{k-s}) with s = +-2.
        let s = if k > 0 { 2 } else { -2 };
        let head = &self.c_m_rules[&(mu, s)];
        let rest = self.c_mpower_bracket(mu, k - s);
        self.multiply(head, &NCPolynomial::mpower(k - s))
            .add(&self.multiply(&NCPolynomial::mpower(s), &rest))
    }

    /// `(g, M^k)` for any generator letter.
    fn gen_mpower_bracket(&self, g: Generator, k: i64) -> NCPolynomial {
        match g {
            Generator::P(_) | Generator::J(_, _) => NCPolynomial::zero(),
            Generator::D => NCPolynomial::mpower(k).scale(&Scalar::from_int(k)),
            Generator::C(mu) => self.c_mpower_bracket(mu, k),
        }
    }

    fn find_violations(word: &Word, all: bool) -> Vec<Violation> {
        let mut out = Vec::new();
        for i in 0..word.len() {
            if matches!(word[i], Letter::M(0)) {
                out.push(Violation::DropM0(i));
                if !all {
                    return out;
                }
            }
            if i + 1 < word.len() {
                match (&word[i], &word[i + 1]) {
                    (Letter::M(_), Letter::M(_)) => out.push(Violation::MergeM(i)),
                    (Letter::M(_), Letter::Gen(_)) => out.push(Violation::SwapMGen(i)),
                    (Letter::Gen(y), Letter::Gen(x)) if y > x => {
                        out.push(Violation::SwapGenGen(i))
                    }
                    _ => {}
                }
                if !all && !out.is_empty() {
                    return out;
                }
                if word[i] == Letter::Gen(Generator::P(0))
                    && word[i + 1] == Letter::Gen(Generator::P(0))
                {
                    out.push(Violation::PSquare(i));
                    if !all {
                        return out;
                    }
                }
            }
        }
        out
    }

    /// Expands one rewrite of `word` at the violation into words with
    /// relative coefficients.
    fn apply_violation(&self, word: &Word, v: Violation) -> Vec<(Word, CoefficientExpr)> {
        let splice = |at: usize, len: usize, with: &[Letter]| -> Word {
            let mut w = Vec::with_capacity(word.len() - len + with.len());
            w.extend_from_slice(&word[..at]);
            w.extend_from_slice(with);
            w.extend_from_slice(&word[at + len..]);
            w
        };
        match v {
            Violation::DropM0(i) => vec![(splice(i, 1, &[]), CoefficientExpr::one())],
            Violation::MergeM(i) => {
                let (Letter::M(a), Letter::M(b)) = (word[i], word[i + 1]) else {
                    unreachable!()
                };
                let merged: &[Letter] = if a + b == 0 { &[] } else { &[Letter::M(a + b)] };
                vec![(splice(i, 2, merged), CoefficientExpr::one())]
            }
            Violation::SwapMGen(i) => {
                let (Letter::M(k), Letter::Gen(g)) = (word[i], word[i + 1]) else {
                    unreachable!()
                };
                // M^k g = g M^k - i (g, M^k)
                let mut out = vec![(
                    splice(i, 2, &[Letter::Gen(g), Letter::M(k)]),
                    CoefficientExpr::one(),
                )];
                let minus_i = -Scalar::i();
                for (bw, bc) in self.gen_mpower_bracket(g, k).iter() {
                    out.push((splice(i, 2, bw), bc.scale(&minus_i)));
                }
                out
            }
            Violation::SwapGenGen(i) => {
                let (Letter::Gen(y), Letter::Gen(x)) = (word[i], word[i + 1]) else {
                    unreachable!()
                };
                // y x = x y + i (y, x)
                let mut out = vec![(
                    splice(i, 2, &[Letter::Gen(x), Letter::Gen(y)]),
                    CoefficientExpr::one(),
                )];
                let plus_i = Scalar::i();
                for (g, c) in self.table.bracket_basis(y, x).iter() {
                    out.push((splice(i, 2, &[Letter::Gen(*g)]), c.scale(&plus_i)));
                }
                out
            }
            Violation::PSquare(i) => {
                // P_0 P_0 = M^2 + P_1 P_1 + P_2 P_2 + P_3 P_3
                let mut out = vec![(splice(i, 2, &[Letter::M(2)]), CoefficientExpr::one())];
                for j in 1..4u8 {
                    let pj = Letter::Gen(Generator::P(j));
                    out.push((splice(i, 2, &[pj, pj]), CoefficientExpr::one()));
                }
                out
            }
        }
    }

    /// Reduces a raw term list to normal form under the given strategy.
    pub fn normal_form_terms(
        &self,
        terms: Vec<(Word, CoefficientExpr)>,
        strategy: &mut Strategy,
    ) -> Result<NCPolynomial, NcError> {
        fn merge(map: &mut BTreeMap<Word, CoefficientExpr>, w: Word, c: CoefficientExpr) {
            if c.is_zero() {
                return;
            }
            match map.get_mut(&w) {
                Some(slot) => {
                    *slot = slot.add(&c);
                    if slot.is_zero() {
                        map.remove(&w);
                    }
                }
                None => {
                    map.insert(w, c);
                }
            }
        }

        let mut pool: BTreeMap<Word, CoefficientExpr> = BTreeMap::new();
        for (w, c) in terms {
            merge(&mut pool, w, c);
        }
        let mut done = NCPolynomial::zero();
        let mut steps = 0usize;
        while !pool.is_empty() {
            let (picked, coeff) = match strategy {
                Strategy::Deterministic => pool.pop_first().expect("pool nonempty"),
                Strategy::Seeded(rng) => {
                    let nth = rng.below(pool.len() as u64) as usize;
                    let key = pool.keys().nth(nth).expect("pool nonempty").clone();
                    let c = pool.remove(&key).expect("key present");
                    (key, c)
                }
            };
            let violations = match strategy {
                Strategy::Deterministic => Self::find_violations(&picked, false),
                Strategy::Seeded(_) => Self::find_violations(&picked, true),
            };
            if violations.is_empty() {
                done.add_term(picked, coeff);
                continue;
            }
            steps += 1;
            if steps > self.step_budget {
                return Err(NcError::StepBudgetExceeded {
                    budget: self.step_budget,
                });
            }
            let v = match strategy {
                Strategy::Deterministic => violations[0],
                Strategy::Seeded(rng) => violations[rng.below(violations.len() as u64) as usize],
            };
            for (w, c) in self.apply_violation(&picked, v) {
                merge(&mut pool, w, c.mul(&coeff));
            }
        }
        Ok(done)
    }

    /// Canonical normal form; panics only on step-budget exhaustion, which
    /// indicates a rule bug and is surfaced as a hard error.
    pub fn normal_form(&self, p: &NCPolynomial) -> NCPolynomial {
        self.try_normal_form(p).expect("rewrite step budget exceeded")
    }

    pub fn try_normal_form(&self, p: &NCPolynomial) -> Result<NCPolynomial, NcError> {
        self.normal_form_terms(
            p.iter().map(|(w, c)| (w.clone(), c.clone())).collect(),
            &mut Strategy::Deterministic,
        )
    }

    /// Normal form computed under a seeded random reduction order; used for
    /// confluence evidence.
    pub fn normal_form_randomized(
        &self,
        p: &NCPolynomial,
        seed: u64,
    ) -> Result<NCPolynomial, NcError> {
        self.normal_form_terms(
            p.iter().map(|(w, c)| (w.clone(), c.clone())).collect(),
            &mut Strategy::Seeded(SplitMix64::new(seed)),
        )
    }

    /// Associative product, result in normal form.
    pub fn multiply(&self, p: &NCPolynomial, q: &NCPolynomial) -> NCPolynomial {
        let mut raw = Vec::new();
        for (wp, cp) in p.iter() {
            for (wq, cq) in q.iter() {
                let mut w = wp.clone();
                w.extend_from_slice(wq);
                raw.push((w, cp.mul(cq)));
            }
        }
        self.normal_form_terms(raw, &mut Strategy::Deterministic)
            .expect("rewrite step budget exceeded")
    }

    /// Symmetrized product `p . q = (pq + qp)/2`.
    pub fn sym_product(&self, p: &NCPolynomial, q: &NCPolynomial) -> NCPolynomial {
        self.multiply(p, q)
            .add(&self.multiply(q, p))
            .scale(&Scalar::ratio(1, 2))
    }

    /// Normalized bracket `(p, q) = -i (pq - qp)`.
    pub fn nc_bracket(&self, p: &NCPolynomial, q: &NCPolynomial) -> NCPolynomial {
        self.multiply(p, q)
            .sub(&self.multiply(q, p))
            .scale(&-Scalar::i())
    }
}

fn self_multiply3(
    alg: &WordAlgebra,
    a: &NCPolynomial,
    b: &NCPolynomial,
    c: &NCPolynomial,
) -> NCPolynomial {
    alg.multiply(&alg.multiply(a, b), c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn alg() -> WordAlgebra {
        WordAlgebra::new(StructureTable::conformal())
    }

    fn gen(g: Generator) -> NCPolynomial {
        NCPolynomial::generator(g)
    }

    #[test]
    fn reorder_c0_p0() {
        // C0 P0 = P0 C0 + 2i D, from (C0, P0) = +2D
        let a = alg();
        let raw = NCPolynomial::term(
            CoefficientExpr::one(),
            vec![Letter::Gen(C(0)), Letter::Gen(P(0))],
        );
        let nf = a.normal_form(&raw);
        let want = NCPolynomial::term(
            CoefficientExpr::one(),
            vec![Letter::Gen(P(0)), Letter::Gen(C(0))],
        )
        .add(&gen(D).scale(&(Scalar::i() * Scalar::from_int(2))));
        assert_eq!(nf, want);
    }

    #[test]
    fn already_normal_word_is_fixed_point() {
        let a = alg();
        let p = NCPolynomial::term(
            CoefficientExpr::one(),
            vec![Letter::Gen(P(0)), Letter::Gen(C(0))],
        );
        assert_eq!(a.normal_form(&p), p);
    }

    #[test]
    fn mpower_merging() {
        let a = alg();
        let raw = NCPolynomial::term(CoefficientExpr::one(), vec![Letter::M(1), Letter::M(-1)]);
        assert_eq!(a.normal_form(&raw), NCPolynomial::one());
    }

    #[test]
    fn unit_of_multiplication() {
        let a = alg();
        let p = gen(C(2)).add(&gen(P(1)).scale(&Scalar::i()));
        assert_eq!(a.multiply(&NCPolynomial::one(), &p), p);
        assert_eq!(a.multiply(&p, &NCPolynomial::one()), p);
    }

    #[test]
    fn mass_relation_collapses_contracted_pair() {
        let a = alg();
        let mut q = NCPolynomial::zero();
        for rho in 0..4u8 {
            let w = vec![Letter::Gen(P(rho)), Letter::Gen(P(rho))];
            q = q.add(&NCPolynomial::term(
                CoefficientExpr::from_scalar(metric_component(rho, rho)),
                w,
            ));
        }
        // The contraction P_rho P^rho is the mass square itself ...
        assert_eq!(a.normal_form(&q), NCPolynomial::mpower(2));
        // ... so M^-2 (P_rho P^rho) = 1.
        let prod = a.multiply(&NCPolynomial::mpower(-2), &q);
        assert_eq!(prod, NCPolynomial::one());
    }

    #[test]
    fn sym_product_examples() {
        let a = alg();
        // sym(P0, C0) = P0 C0 + i D
        let got = a.sym_product(&gen(P(0)), &gen(C(0)));
        let want = NCPolynomial::term(
            CoefficientExpr::one(),
            vec![Letter::Gen(P(0)), Letter::Gen(C(0))],
        )
        .add(&gen(D).scale(&Scalar::i()));
        assert_eq!(got, want);
        // sym(P0, P1) = P0 P1
        assert_eq!(
            a.sym_product(&gen(P(0)), &gen(P(1))),
            NCPolynomial::term(
                CoefficientExpr::one(),
                vec![Letter::Gen(P(0)), Letter::Gen(P(1))],
            )
        );
        // sym(p, p) = p^2
        let p = gen(C(1)).add(&gen(P(2)));
        assert_eq!(a.sym_product(&p, &p), a.multiply(&p, &p));
    }

    #[test]
    fn bracket_reduces_to_table_on_letters() {
        let a = alg();
        assert_eq!(a.nc_bracket(&gen(D), &gen(P(1))), gen(P(1)));
        let pc = a.nc_bracket(&gen(P(0)), &gen(C(0)));
        assert_eq!(pc, gen(D).scale(&Scalar::from_int(-2)));
    }

    #[test]
    fn step_budget_is_a_hard_error() {
        let a = alg().with_step_budget(3);
        let raw = NCPolynomial::term(
            CoefficientExpr::one(),
            vec![
                Letter::Gen(C(3)),
                Letter::Gen(C(2)),
                Letter::Gen(P(1)),
                Letter::Gen(P(0)),
                Letter::Gen(D),
            ],
        );
        assert!(matches!(
            a.try_normal_form(&raw),
            Err(crate::NcError::StepBudgetExceeded { budget: 3 })
        ));
    }

    #[test]
    fn bracket_with_mass_powers() {
        let a = alg();
        // (P0, M^2) = 0
        assert!(a
            .nc_bracket(&gen(P(0)), &NCPolynomial::mpower(2))
            .is_zero());
        // (D, M^-2) = -2 M^-2
        assert_eq!(
            a.nc_bracket(&gen(D), &NCPolynomial::mpower(-2)),
            NCPolynomial::mpower(-2).scale(&Scalar::from_int(-2))
        );
    }
}
