//! Coefficient expressions: formal sums of (scalar x tensor-factor-multiset)
//! monomials, kept in canonical form.
//!
//! Canonicalization performs, to a fixed point:
//! - evaluation of fully concrete metric/Kronecker/epsilon factors,
//! - Kronecker elimination by index substitution,
//! - metric-metric contraction (`eta eta -> delta`),
//! - epsilon-pair expansion into signed Kronecker products (generalized
//!   determinant rule; the Lorentzian signature contributes the overall sign),
//!
//! then renames bound indices by first occurrence and fixes a canonical factor
//! and slot order, so equal values get identical representations.

use crate::factor::TensorFactor;
use crate::index::{IndexLabel, IndexValue, Variance, DIM};
use crate::scalar::Scalar;
use crate::{epsilon_component, epsilon_component_upper, metric_component, TensorError};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// One term of a coefficient: an exact scalar times a multiset of factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    pub scalar: Scalar,
    pub factors: Vec<TensorFactor>,
}

impl Monomial {
    pub fn new(scalar: Scalar, factors: Vec<TensorFactor>) -> Self {
        Monomial { scalar, factors }
    }
}

fn render_term(scalar: &Scalar, factors: &[TensorFactor]) -> String {
    if factors.is_empty() {
        return scalar.to_string();
    }
    let z = scalar.to_string();
    let coeff = if scalar.is_one() {
        String::new()
    } else if (-scalar).is_one() {
        "-".to_string()
    } else if !scalar.re().is_zero() && !scalar.im().is_zero() {
        format!("({z}) ")
    } else {
        format!("{z} ")
    };
    let body: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    format!("{coeff}{}", body.join(" "))
}

/// A canonical formal sum of monomials.
///
/// The representation is always canonical: constructing or combining
/// expressions re-canonicalizes, so `==` decides semantic equality (within
/// the reductions listed in the module docs).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoefficientExpr {
    terms: BTreeMap<Vec<TensorFactor>, Scalar>,
}

impl CoefficientExpr {
    pub fn zero() -> Self {
        CoefficientExpr {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_scalar(Scalar::one())
    }

    pub fn from_scalar(s: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(Vec::new(), s);
        }
        CoefficientExpr { terms }
    }

    /// Builds and canonicalizes an expression from raw monomials. This is the
    /// canonicalization entry point; it fails on malformed index pairing.
    pub fn from_monomials(monos: Vec<Monomial>) -> Result<Self, TensorError> {
        let mut terms: BTreeMap<Vec<TensorFactor>, Scalar> = BTreeMap::new();
        for m in monos {
            for (s, fs) in canon_monomial(m.scalar, m.factors)? {
                let entry = terms.entry(fs).or_insert_with(Scalar::zero);
                *entry += &s;
            }
        }
        terms.retain(|_, s| !s.is_zero());
        Ok(CoefficientExpr { terms })
    }

    /// Single-monomial convenience constructor.
    pub fn monomial(scalar: Scalar, factors: Vec<TensorFactor>) -> Result<Self, TensorError> {
        Self::from_monomials(vec![Monomial::new(scalar, factors)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The scalar value if the expression is a pure scalar (or zero).
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(Scalar::zero());
        }
        if self.terms.len() == 1 {
            let (fs, s) = self.terms.iter().next().unwrap();
            if fs.is_empty() {
                return Some(s.clone());
            }
        }
        None
    }

    pub fn iter_terms(&self) -> impl Iterator<Item = (&Vec<TensorFactor>, &Scalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        CoefficientExpr {
            terms: self
                .terms
                .iter()
                .map(|(fs, c)| (fs.clone(), c * s))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (fs, s) in &other.terms {
            let entry = terms.entry(fs.clone()).or_insert_with(Scalar::zero);
            *entry += s;
        }
        terms.retain(|_, s| !s.is_zero());
        CoefficientExpr { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CoefficientExpr {
            terms: self.terms.iter().map(|(fs, s)| (fs.clone(), -s)).collect(),
        }
    }

    /// Product of two expressions. Fails if concatenating factor lists
    /// produces malformed index pairing (e.g. a free name colliding with a
    /// bound pair).
    pub fn try_mul(&self, other: &Self) -> Result<Self, TensorError> {
        let mut monos = Vec::new();
        for (fa, sa) in &self.terms {
            for (fb, sb) in &other.terms {
                let mut fs = fa.clone();
                fs.extend(fb.iter().cloned());
                monos.push(Monomial::new(sa * sb, fs));
            }
        }
        Self::from_monomials(monos)
    }

    /// `try_mul` that panics on malformed input; fine for coefficients with
    /// concrete indices only, which is everything the word algebra produces.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("malformed coefficient product")
    }

    /// Substitutes concrete components for the acceleration parameter:
    /// `a^mu -> components[mu]`, and `a_mu -> eta_{mu mu} components[mu]`.
    /// Panics on symbolic acceleration slots, which the engine never builds.
    pub fn substitute_accel(&self, components: &[Scalar; 4]) -> Self {
        let mut monos = Vec::new();
        for (fs, s) in &self.terms {
            let mut scalar = s.clone();
            let mut rest = Vec::new();
            for f in fs {
                match f {
                    TensorFactor::Accel(slot) => {
                        let c = slot
                            .concrete()
                            .expect("symbolic acceleration slot in substitution");
                        scalar *= &components[c as usize];
                        if slot.variance == Variance::Lower {
                            scalar *= &metric_component(c, c);
                        }
                    }
                    other => rest.push(other.clone()),
                }
            }
            monos.push(Monomial::new(scalar, rest));
        }
        Self::from_monomials(monos).expect("substitution cannot malform indices")
    }

    /// Decomposes into raw monomials (already canonical).
    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(fs, s)| Monomial::new(s.clone(), fs.clone()))
            .collect()
    }
}

impl fmt::Display for CoefficientExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(fs, s)| render_term(s, fs))
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// Monomial canonicalization
// ---------------------------------------------------------------------------

fn occurrence_map(factors: &[TensorFactor]) -> BTreeMap<String, Vec<Variance>> {
    let mut occ: BTreeMap<String, Vec<Variance>> = BTreeMap::new();
    for f in factors {
        for slot in f.slots() {
            if let Some(n) = slot.name() {
                occ.entry(n.to_string()).or_default().push(slot.variance);
            }
        }
    }
    occ
}

fn validate_pairing(scalar: &Scalar, factors: &[TensorFactor]) -> Result<(), TensorError> {
    for (name, vs) in occurrence_map(factors) {
        let ok = match vs.len() {
            1 => true,
            2 => vs[0] != vs[1],
            _ => false,
        };
        if !ok {
            return Err(TensorError::MalformedIndexPairing {
                name,
                monomial: render_term(scalar, factors),
            });
        }
    }
    Ok(())
}

fn is_bound(occ: &BTreeMap<String, Vec<Variance>>, name: &str) -> bool {
    occ.get(name).is_some_and(|v| v.len() == 2)
}

/// Replaces the unique slot carrying `name` with `variance` (outside factor
/// `skip`) by `new_value`, keeping the slot's variance.
fn replace_partner(
    factors: &mut [TensorFactor],
    skip: usize,
    name: &str,
    variance: Variance,
    new_value: IndexValue,
) {
    for (i, f) in factors.iter_mut().enumerate() {
        if i == skip {
            continue;
        }
        for slot in f.slots_mut() {
            if slot.variance == variance && slot.name() == Some(name) {
                slot.value = new_value;
                return;
            }
        }
    }
    unreachable!("bound index `{name}` has no partner; pairing was validated");
}

fn epsilon_value(slots: &[IndexLabel; 4]) -> Option<Scalar> {
    let mut conc = [0u8; 4];
    for (i, s) in slots.iter().enumerate() {
        conc[i] = s.concrete()?;
    }
    Some(match slots[0].variance {
        Variance::Lower => epsilon_component(conc),
        Variance::Upper => epsilon_component_upper(conc),
    })
}

/// Reduces one monomial to a list of canonical `(scalar, factors)` terms.
#[allow(clippy::needless_range_loop)]
fn canon_monomial(
    scalar: Scalar,
    factors: Vec<TensorFactor>,
) -> Result<Vec<(Scalar, Vec<TensorFactor>)>, TensorError> {
    validate_pairing(&scalar, &factors)?;
    let mut scalar = scalar;
    let mut factors = factors;

    'reduce: loop {
        if scalar.is_zero() {
            return Ok(Vec::new());
        }

        // Fully concrete factors evaluate to their components.
        for i in 0..factors.len() {
            match &factors[i] {
                TensorFactor::Metric(a, b) => {
                    if let (Some(ca), Some(cb)) = (a.concrete(), b.concrete()) {
                        scalar *= &metric_component(ca, cb);
                        factors.remove(i);
                        continue 'reduce;
                    }
                }
                TensorFactor::Kronecker(a, b) => {
                    if let (Some(ca), Some(cb)) = (a.concrete(), b.concrete()) {
                        if ca != cb {
                            return Ok(Vec::new());
                        }
                        factors.remove(i);
                        continue 'reduce;
                    }
                }
                TensorFactor::Epsilon(slots) => {
                    if let Some(v) = epsilon_value(slots) {
                        scalar *= &v;
                        factors.remove(i);
                        continue 'reduce;
                    }
                    // Repeated concrete slots kill the monomial even when
                    // other slots stay symbolic.
                    for p in 0..4 {
                        for q in (p + 1)..4 {
                            if slots[p].concrete().is_some()
                                && slots[p].concrete() == slots[q].concrete()
                            {
                                return Ok(Vec::new());
                            }
                        }
                    }
                }
                TensorFactor::Accel(_) => {}
            }
        }

        let occ = occurrence_map(&factors);

        // Kronecker elimination by substitution.
        for i in 0..factors.len() {
            if let TensorFactor::Kronecker(a, b) = &factors[i] {
                if let (Some(na), Some(nb)) = (a.name(), b.name()) {
                    if na == nb {
                        // delta^n_n: trace over the bound pair.
                        scalar *= &Scalar::from_int(DIM as i64);
                        factors.remove(i);
                        continue 'reduce;
                    }
                }
                if let Some(na) = a.name() {
                    if is_bound(&occ, na) {
                        let (na, sub) = (na.to_string(), b.value.clone());
                        replace_partner(&mut factors, i, &na, Variance::Lower, sub);
                        factors.remove(i);
                        continue 'reduce;
                    }
                }
                if let Some(nb) = b.name() {
                    if is_bound(&occ, nb) {
                        let (nb, sub) = (nb.to_string(), a.value.clone());
                        replace_partner(&mut factors, i, &nb, Variance::Upper, sub);
                        factors.remove(i);
                        continue 'reduce;
                    }
                }
            }
        }

        // Metric-metric contraction over a shared bound name.
        for i in 0..factors.len() {
            let TensorFactor::Metric(ia, ib) = &factors[i] else {
                continue;
            };
            for j in (i + 1)..factors.len() {
                let TensorFactor::Metric(ja, jb) = &factors[j] else {
                    continue;
                };
                let shares = |x: &IndexLabel, y: &IndexLabel| {
                    x.name().is_some() && x.name() == y.name() && x.variance != y.variance
                };
                let pick = [(ia, ib, ja, jb), (ia, ib, jb, ja), (ib, ia, ja, jb), (ib, ia, jb, ja)]
                    .into_iter()
                    .find(|(shared_i, _, shared_j, _)| shares(shared_i, shared_j))
                    .map(|(_, other_i, _, other_j)| (other_i.clone(), other_j.clone()));
                if let Some((x, y)) = pick {
                    // eta^{xn} eta_{ny} -> delta^x_y (variances are opposite
                    // because the two metrics contract).
                    let merged = TensorFactor::metric(x, y);
                    factors.remove(j);
                    factors.remove(i);
                    factors.push(merged);
                    continue 'reduce;
                }
            }
        }

        // Epsilon pair with a shared contraction: generalized determinant.
        let mut eps_pair = None;
        'outer: for i in 0..factors.len() {
            let TensorFactor::Epsilon(si) = &factors[i] else {
                continue;
            };
            for j in (i + 1)..factors.len() {
                let TensorFactor::Epsilon(sj) = &factors[j] else {
                    continue;
                };
                if si[0].variance == sj[0].variance {
                    continue;
                }
                let share = si.iter().any(|a| {
                    a.name().is_some() && sj.iter().any(|b| b.name() == a.name())
                });
                if share {
                    eps_pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        if let Some((i, j)) = eps_pair {
            let (si, sj) = match (&factors[i], &factors[j]) {
                (TensorFactor::Epsilon(a), TensorFactor::Epsilon(b)) => (a.clone(), b.clone()),
                _ => unreachable!(),
            };
            let (upper, lower) = if si[0].variance == Variance::Upper {
                (si, sj)
            } else {
                (sj, si)
            };
            let mut rest = factors;
            rest.remove(j);
            rest.remove(i);
            // eps^{abcd} eps_{pqrs} = -sum_pi sgn(pi) prod_l delta^{a_l}_{p_pi(l)}
            let mut out = Vec::new();
            for (perm, sign) in permutations4() {
                let mut fs = rest.clone();
                for l in 0..4 {
                    fs.push(TensorFactor::kronecker(
                        upper[l].clone(),
                        lower[perm[l]].clone(),
                    ));
                }
                let s = &scalar * &Scalar::from_int(-sign);
                out.extend(canon_monomial(s, fs)?);
            }
            return Ok(out);
        }

        break;
    }

    Ok(match relabel_and_sort(&factors) {
        Some((sign, canon)) => vec![(scalar * &sign, canon)],
        None => Vec::new(),
    })
}

fn permutations4() -> Vec<([usize; 4], i64)> {
    let mut out = Vec::with_capacity(24);
    let mut idx = [0usize, 1, 2, 3];
    heap_permutations(&mut idx, 4, &mut out);
    out
}

fn heap_permutations(arr: &mut [usize; 4], k: usize, out: &mut Vec<([usize; 4], i64)>) {
    if k == 1 {
        out.push((*arr, perm_sign(arr)));
        return;
    }
    for i in 0..k {
        heap_permutations(arr, k - 1, out);
        if k.is_multiple_of(2) {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
}

fn perm_sign(p: &[usize; 4]) -> i64 {
    let mut s = 1i64;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Canonical labeling: minimum over factor orderings and slot arrangements
/// (metric swaps, epsilon permutations with sign) of the first-occurrence
/// renaming of bound indices. Only arrangements whose slots end up sorted
/// under their own renaming are candidates, which makes the chosen form a
/// fixed point of the procedure.
///
/// Returns `None` when a slot arrangement proves the monomial zero (repeated
/// epsilon slots), which cannot happen for reduced input but is guarded.
fn relabel_and_sort(factors: &[TensorFactor]) -> Option<(Scalar, Vec<TensorFactor>)> {
    if factors.is_empty() {
        return Some((Scalar::one(), Vec::new()));
    }
    let occ = occurrence_map(factors);
    let bound: Vec<String> = occ
        .iter()
        .filter(|(_, v)| v.len() == 2)
        .map(|(n, _)| n.clone())
        .collect();

    let n = factors.len();
    assert!(n <= 8, "monomial too large for canonical labeling");
    let mut order: Vec<usize> = (0..n).collect();
    let mut best: Option<(Vec<TensorFactor>, Scalar)> = None;
    permute_factors(&mut order, n, &mut |order| {
        arrange(factors, order, &bound, &mut best);
    });
    best.map(|(fs, sign)| (sign, fs))
}

fn permute_factors(order: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == 1 {
        visit(order);
        return;
    }
    for i in 0..k {
        permute_factors(order, k - 1, visit);
        if k.is_multiple_of(2) {
            order.swap(i, k - 1);
        } else {
            order.swap(0, k - 1);
        }
    }
}

/// Tries every slot arrangement of the factors in the given order, keeping
/// candidates that are sorted under their own first-occurrence renaming.
fn arrange(
    factors: &[TensorFactor],
    order: &[usize],
    bound: &[String],
    best: &mut Option<(Vec<TensorFactor>, Scalar)>,
) {
    // Enumerate slot arrangements factor by factor.
    let mut arranged: Vec<(Vec<TensorFactor>, Scalar)> = vec![(Vec::new(), Scalar::one())];
    for &fi in order {
        let mut next = Vec::new();
        for (prefix, sign) in &arranged {
            match &factors[fi] {
                TensorFactor::Metric(a, b) => {
                    for pair in [[a, b], [b, a]] {
                        let mut fs = prefix.clone();
                        fs.push(TensorFactor::Metric(pair[0].clone(), pair[1].clone()));
                        next.push((fs, sign.clone()));
                    }
                }
                TensorFactor::Epsilon(slots) => {
                    for (perm, psign) in permutations4() {
                        let mut fs = prefix.clone();
                        fs.push(TensorFactor::Epsilon([
                            slots[perm[0]].clone(),
                            slots[perm[1]].clone(),
                            slots[perm[2]].clone(),
                            slots[perm[3]].clone(),
                        ]));
                        next.push((fs, sign * &Scalar::from_int(psign)));
                    }
                }
                f => {
                    let mut fs = prefix.clone();
                    fs.push(f.clone());
                    next.push((fs, sign.clone()));
                }
            }
        }
        arranged = next;
        assert!(
            arranged.len() <= 300_000,
            "monomial too large for canonical labeling"
        );
    }

    'cand: for (fs, sign) in arranged {
        // First-occurrence renaming of bound names.
        let mut rename: BTreeMap<&str, String> = BTreeMap::new();
        let mut counter = 0usize;
        for f in &fs {
            for slot in f.slots() {
                if let Some(nm) = slot.name() {
                    if bound.iter().any(|b| b == nm) && !rename.contains_key(nm) {
                        rename.insert(nm, format!("b{counter}"));
                        counter += 1;
                    }
                }
            }
        }
        let mut renamed = fs.clone();
        for f in &mut renamed {
            for slot in f.slots_mut() {
                if let Some(nm) = slot.name() {
                    if let Some(new) = rename.get(nm) {
                        slot.value = IndexValue::Name(new.clone());
                    }
                }
            }
        }
        // Keep only arrangements sorted under their own renaming.
        for f in &renamed {
            match f {
                TensorFactor::Metric(a, b) => {
                    if a > b {
                        continue 'cand;
                    }
                }
                TensorFactor::Epsilon(slots) => {
                    for w in slots.windows(2) {
                        if w[0] >= w[1] {
                            continue 'cand;
                        }
                    }
                }
                _ => {}
            }
        }
        match best {
            Some((cur, _)) if *cur <= renamed => {}
            _ => *best = Some((renamed, sign)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(n: &str) -> IndexLabel {
        IndexLabel::up(n)
    }
    fn down(n: &str) -> IndexLabel {
        IndexLabel::down(n)
    }

    #[test]
    fn metric_trace_is_four() {
        // eta_{mu nu} eta^{mu nu} = 4
        let e = CoefficientExpr::monomial(
            Scalar::one(),
            vec![
                TensorFactor::metric(down("mu"), down("nu")),
                TensorFactor::metric(up("mu"), up("nu")),
            ],
        )
        .unwrap();
        assert_eq!(e.as_scalar(), Some(Scalar::from_int(4)));
    }

    #[test]
    fn epsilon_full_contraction() {
        // eps^{mnrs} eps_{mnrs} = -24 with Lorentzian signature
        let e = CoefficientExpr::monomial(
            Scalar::one(),
            vec![
                TensorFactor::epsilon([up("m"), up("n"), up("r"), up("s")]),
                TensorFactor::epsilon([down("m"), down("n"), down("r"), down("s")]),
            ],
        )
        .unwrap();
        assert_eq!(e.as_scalar(), Some(Scalar::from_int(-24)));
    }

    #[test]
    fn kronecker_substitutes_into_accel() {
        // delta^mu_nu a^nu = a^mu
        let e = CoefficientExpr::monomial(
            Scalar::one(),
            vec![
                TensorFactor::kronecker(up("mu"), down("nu")),
                TensorFactor::accel(up("nu")),
            ],
        )
        .unwrap();
        let want = CoefficientExpr::monomial(Scalar::one(), vec![TensorFactor::accel(up("mu"))])
            .unwrap();
        assert_eq!(e, want);
    }

    #[test]
    fn malformed_pairing_is_reported() {
        // `x` occurs twice with the same variance
        let err = CoefficientExpr::monomial(
            Scalar::one(),
            vec![TensorFactor::accel(up("x")), TensorFactor::accel(up("x"))],
        )
        .unwrap_err();
        match err {
            TensorError::MalformedIndexPairing { name, .. } => assert_eq!(name, "x"),
        }
    }

    #[test]
    fn bound_renaming_identifies_equal_values() {
        let a = CoefficientExpr::monomial(
            Scalar::one(),
            vec![
                TensorFactor::metric(down("alpha"), down("beta")),
                TensorFactor::accel(up("alpha")),
                TensorFactor::accel(up("beta")),
            ],
        )
        .unwrap();
        let b = CoefficientExpr::monomial(
            Scalar::one(),
            vec![
                TensorFactor::accel(up("q")),
                TensorFactor::metric(down("p"), down("q")),
                TensorFactor::accel(up("p")),
            ],
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn epsilon_antisymmetry_in_canonical_form() {
        let plus = CoefficientExpr::monomial(
            Scalar::one(),
            vec![TensorFactor::epsilon([
                down("a"),
                down("b"),
                IndexLabel::conc_down(0),
                IndexLabel::conc_down(1),
            ])],
        )
        .unwrap();
        let minus = CoefficientExpr::monomial(
            Scalar::one(),
            vec![TensorFactor::epsilon([
                down("b"),
                down("a"),
                IndexLabel::conc_down(0),
                IndexLabel::conc_down(1),
            ])],
        )
        .unwrap();
        assert_eq!(plus, minus.neg());
        assert!(plus.add(&minus).is_zero());
    }
}
