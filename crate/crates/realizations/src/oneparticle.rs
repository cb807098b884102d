//! The massless scalar one-particle realization, solved from closure.
//!
//! `P_0 = omega` and `P_j = k_j` act by multiplication; the remaining
//! generators are an ansatz over rotation-covariant operator bases whose
//! scales and ordering constants are solved exactly so that every structure
//! constant closes under symbolic commutation:
//!
//! ```text
//! J_jl = u1 (k_j d_l - k_l d_j) + u0_jl
//! J_0j = v1 omega d_j + v0_j
//! D    = w1 (k.d) + w0
//! C_0  = x1 omega Lap + x2 (k.d)^2/omega + x3 (k.d)/omega + x4 / omega
//! C_j  = y1 k_j Lap + y2 (k.d) d_j + y3 d_j
//!        + y4 k_j (k.d)^2/omega^2 + y5 k_j (k.d)/omega^2 + y6 k_j/omega^2
//! ```
//!
//! The solve is staged to stay linear: the scales `u1, v1, w1` come from the
//! brackets with the known `P`'s; the constants and `C` coefficients then
//! form one linear system over the brackets `(P, C)`, `(D, C)` and `(J, C)`.
//! Everything not used in the solve (in particular `(C, C) = 0`) is checked
//! afterwards over all 105 pairs, and any failure is a hard error.
//!
//! This is the helicity-0 realization. It is a faithful oracle for the
//! algebra and its derived identities — multi-particle scalar states already
//! carry nonzero internal angular momentum — but it is not a polarized
//! photon: helicity terms are deliberately out of scope.

use crate::diffop::DiffOperator;
use crate::ring::{DenMono, RingCtx, RingElem, RingPoly};
use crate::solver::{solve_unique, LinearEquation};
use crate::RealizationError;
use conformal_algebra::{Generator, StructureTable};
use std::collections::BTreeMap;
use std::sync::OnceLock;
use tensor_core::{metric_component, Scalar};

/// The closure-solved ansatz constants, shared by every particle count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedConstants {
    pub j_scale: Scalar,
    pub j_consts: [Scalar; 3],
    pub boost_scale: Scalar,
    pub boost_consts: [Scalar; 3],
    pub d_scale: Scalar,
    pub d_const: Scalar,
    pub c0: [Scalar; 4],
    pub cj: [Scalar; 6],
}

// ---------------------------------------------------------------------------
// Operator bases for one particle inside an n-particle ring
// ---------------------------------------------------------------------------

fn mult_var(ctx: RingCtx, v: usize) -> DiffOperator {
    DiffOperator::mult(RingElem::from_poly(RingPoly::var(ctx, v)))
}

fn omega_inv(ctx: RingCtx, a: usize, pow: u32) -> RingElem {
    let mut den = DenMono::one(ctx.n);
    den.omega[a] = pow;
    RingElem {
        num: RingPoly::one(ctx),
        den,
    }
}

fn euler(ctx: RingCtx, a: usize) -> DiffOperator {
    let mut out = DiffOperator::zero(ctx);
    for j in 0..3 {
        out = out.add(
            &mult_var(ctx, ctx.k_var(a, j)).compose(&DiffOperator::deriv(ctx, a, j)),
        );
    }
    out
}

fn rot(ctx: RingCtx, a: usize, j: usize, l: usize) -> DiffOperator {
    mult_var(ctx, ctx.k_var(a, j))
        .compose(&DiffOperator::deriv(ctx, a, l))
        .sub(&mult_var(ctx, ctx.k_var(a, l)).compose(&DiffOperator::deriv(ctx, a, j)))
}

fn boost_base(ctx: RingCtx, a: usize, j: usize) -> DiffOperator {
    mult_var(ctx, ctx.omega_var(a)).compose(&DiffOperator::deriv(ctx, a, j))
}

fn laplacian(ctx: RingCtx, a: usize) -> DiffOperator {
    let mut out = DiffOperator::zero(ctx);
    for j in 0..3 {
        let d = DiffOperator::deriv(ctx, a, j);
        out = out.add(&d.compose(&d));
    }
    out
}

/// The four `C_0` ansatz basis operators for particle `a`.
fn c0_basis(ctx: RingCtx, a: usize) -> [DiffOperator; 4] {
    let e = euler(ctx, a);
    [
        mult_var(ctx, ctx.omega_var(a)).compose(&laplacian(ctx, a)),
        e.compose(&e).scale_elem(&omega_inv(ctx, a, 1)),
        e.scale_elem(&omega_inv(ctx, a, 1)),
        DiffOperator::mult(omega_inv(ctx, a, 1)),
    ]
}

/// The six shared `C_j` ansatz basis operators for particle `a`, spatial `j`.
fn cj_basis(ctx: RingCtx, a: usize, j: usize) -> [DiffOperator; 6] {
    let e = euler(ctx, a);
    let kj_w2 = RingElem {
        num: RingPoly::var(ctx, ctx.k_var(a, j)),
        den: {
            let mut d = DenMono::one(ctx.n);
            d.omega[a] = 2;
            d
        },
    };
    [
        mult_var(ctx, ctx.k_var(a, j)).compose(&laplacian(ctx, a)),
        e.compose(&DiffOperator::deriv(ctx, a, j)),
        DiffOperator::deriv(ctx, a, j),
        e.compose(&e).scale_elem(&kj_w2),
        e.scale_elem(&kj_w2),
        DiffOperator::mult(kj_w2),
    ]
}

fn p_op(ctx: RingCtx, a: usize, mu: u8) -> DiffOperator {
    match mu {
        0 => mult_var(ctx, ctx.omega_var(a)),
        j => mult_var(ctx, ctx.k_var(a, (j - 1) as usize)),
    }
}

/// Materializes one generator for particle `a` from solved constants.
pub fn particle_op(
    ctx: RingCtx,
    consts: &SolvedConstants,
    g: Generator,
    a: usize,
) -> DiffOperator {
    let id = DiffOperator::identity(ctx);
    match g {
        Generator::P(mu) => p_op(ctx, a, mu),
        Generator::J(0, j) => boost_base(ctx, a, (j - 1) as usize)
            .scale(&consts.boost_scale)
            .add(&id.scale(&consts.boost_consts[(j - 1) as usize])),
        Generator::J(j, l) => {
            let idx = spatial_pair_index(j, l);
            rot(ctx, a, (j - 1) as usize, (l - 1) as usize)
                .scale(&consts.j_scale)
                .add(&id.scale(&consts.j_consts[idx]))
        }
        Generator::D => euler(ctx, a)
            .scale(&consts.d_scale)
            .add(&id.scale(&consts.d_const)),
        Generator::C(0) => {
            let basis = c0_basis(ctx, a);
            let mut out = DiffOperator::zero(ctx);
            for (b, coeff) in basis.iter().zip(&consts.c0) {
                out = out.add(&b.scale(coeff));
            }
            out
        }
        Generator::C(j) => {
            let basis = cj_basis(ctx, a, (j - 1) as usize);
            let mut out = DiffOperator::zero(ctx);
            for (b, coeff) in basis.iter().zip(&consts.cj) {
                out = out.add(&b.scale(coeff));
            }
            out
        }
    }
}

fn spatial_pair_index(j: u8, l: u8) -> usize {
    match (j, l) {
        (1, 2) => 0,
        (1, 3) => 1,
        (2, 3) => 2,
        _ => unreachable!("not a spatial rotation pair"),
    }
}

// ---------------------------------------------------------------------------
// Closure solving
// ---------------------------------------------------------------------------

/// `sum_i t_i * unknown_ops[i] + constant = 0` as an operator equation.
struct OpLinearForm {
    unknown: Vec<(usize, DiffOperator)>,
    constant: DiffOperator,
}

/// Flattens operator equations to scalar linear equations, one per
/// (multi-index, ring monomial) over a common denominator.
fn flatten(forms: &[OpLinearForm], unknowns: usize, ctx: RingCtx) -> Vec<LinearEquation> {
    let mut rows = Vec::new();
    for form in forms {
        let mut alphas: Vec<Vec<u32>> = Vec::new();
        let mut collect = |op: &DiffOperator| {
            for (alpha, _) in op.iter() {
                if !alphas.contains(alpha) {
                    alphas.push(alpha.clone());
                }
            }
        };
        for (_, op) in &form.unknown {
            collect(op);
        }
        collect(&form.constant);
        for alpha in &alphas {
            let coeff_of = |op: &DiffOperator| -> RingElem {
                op.iter()
                    .find(|(a, _)| *a == alpha)
                    .map(|(_, e)| e.clone())
                    .unwrap_or_else(|| RingElem::zero(ctx))
            };
            let elems: Vec<(usize, RingElem)> = form
                .unknown
                .iter()
                .map(|(i, op)| (*i, coeff_of(op)))
                .collect();
            let const_elem = coeff_of(&form.constant);
            let mut den = const_elem.den().clone();
            for (_, e) in &elems {
                den = den.lcm(e.den());
            }
            let nums: Vec<(usize, RingPoly)> = elems
                .iter()
                .map(|(i, e)| (*i, e.numerator_over(&den)))
                .collect();
            let const_num = const_elem.numerator_over(&den);
            let mut monos: Vec<Vec<u32>> = Vec::new();
            for (_, p) in &nums {
                for (m, _) in p.iter() {
                    if !monos.contains(m) {
                        monos.push(m.clone());
                    }
                }
            }
            for (m, _) in const_num.iter() {
                if !monos.contains(m) {
                    monos.push(m.clone());
                }
            }
            for m in &monos {
                let mut coeffs = vec![Scalar::zero(); unknowns];
                for (i, p) in &nums {
                    coeffs[*i] = p.coeff_of(m);
                }
                rows.push(LinearEquation {
                    coeffs,
                    offset: const_num.coeff_of(m),
                });
            }
        }
    }
    rows
}

/// Solves one scale unknown from `scale * base_bracket = target` equations.
fn solve_scale(
    pairs: &[(DiffOperator, DiffOperator)],
    ctx: RingCtx,
) -> Result<Scalar, RealizationError> {
    let forms: Vec<OpLinearForm> = pairs
        .iter()
        .map(|(lhs, target)| OpLinearForm {
            unknown: vec![(0, lhs.clone())],
            constant: target.neg(),
        })
        .collect();
    Ok(solve_unique(flatten(&forms, 1, ctx), 1)?[0].clone())
}

fn solve() -> Result<SolvedConstants, RealizationError> {
    let ctx = RingCtx::new(1);
    let a = 0usize;
    let table = StructureTable::conformal();
    let _eta = metric_component;

    // Stage 1: the three scales from brackets with P.
    let mut j_eqs = Vec::new();
    let mut boost_eqs = Vec::new();
    let mut d_eqs = Vec::new();
    for mu in 0..4u8 {
        let p = p_op(ctx, a, mu);
        for (j, l) in [(1u8, 2u8), (1, 3), (2, 3)] {
            let base = rot(ctx, a, (j - 1) as usize, (l - 1) as usize);
            let target = table_p_image(ctx, a, &table, Generator::J(j, l), Generator::P(mu));
            j_eqs.push((base.nbr(&p), target));
        }
        for j in 1..4u8 {
            let base = boost_base(ctx, a, (j - 1) as usize);
            let target = table_p_image(ctx, a, &table, Generator::J(0, j), Generator::P(mu));
            boost_eqs.push((base.nbr(&p), target));
        }
        let target = table_p_image(ctx, a, &table, Generator::D, Generator::P(mu));
        d_eqs.push((euler(ctx, a).nbr(&p), target));
    }
    let j_scale = solve_scale(&j_eqs, ctx)?;
    let boost_scale = solve_scale(&boost_eqs, ctx)?;
    let d_scale = solve_scale(&d_eqs, ctx)?;

    // Stage 2: constants and C coefficients, one joint linear system.
    // Unknowns: 0..3 J constants, 3..6 boost constants, 6 D constant,
    // 7..11 C_0 coefficients, 11..17 C_j coefficients.
    const U_J0: usize = 0;
    const U_V0: usize = 3;
    const U_W0: usize = 6;
    const U_X: usize = 7;
    const U_Y: usize = 11;
    let unknowns = 17;
    let id = DiffOperator::identity(ctx);

    // C_nu as a linear form in the unknowns.
    let c_form = |nu: u8| -> Vec<(usize, DiffOperator)> {
        match nu {
            0 => c0_basis(ctx, a)
                .into_iter()
                .enumerate()
                .map(|(i, b)| (U_X + i, b))
                .collect(),
            j => cj_basis(ctx, a, (j - 1) as usize)
                .into_iter()
                .enumerate()
                .map(|(i, b)| (U_Y + i, b))
                .collect(),
        }
    };
    // rho(g) as a known operator plus unknown-weighted pieces (constants for
    // D and J, the whole ansatz for C).
    let generator_form = |g: Generator| -> (DiffOperator, Vec<(usize, DiffOperator)>) {
        match g {
            Generator::P(mu) => (p_op(ctx, a, mu), Vec::new()),
            Generator::D => (
                euler(ctx, a).scale(&d_scale),
                vec![(U_W0, id.clone())],
            ),
            Generator::J(0, n) => (
                boost_base(ctx, a, (n - 1) as usize).scale(&boost_scale),
                vec![(U_V0 + (n - 1) as usize, id.clone())],
            ),
            Generator::J(m, n) => (
                rot(ctx, a, (m - 1) as usize, (n - 1) as usize).scale(&j_scale),
                vec![(U_J0 + spatial_pair_index(m, n), id.clone())],
            ),
            Generator::C(nu) => (DiffOperator::zero(ctx), c_form(nu)),
        }
    };
    // rho(table entry) as (known, unknown) linear form.
    let table_form = |g1: Generator,
                      g2: Generator|
     -> (DiffOperator, Vec<(usize, DiffOperator)>) {
        let mut known = DiffOperator::zero(ctx);
        let mut unknown: Vec<(usize, DiffOperator)> = Vec::new();
        for (g, coeff) in table.bracket_basis(g1, g2).iter() {
            let s = coeff.as_scalar().expect("table coefficients are scalars");
            let (k, u) = generator_form(*g);
            known = known.add(&k.scale(&s));
            for (i, op) in u {
                unknown.push((i, op.scale(&s)));
            }
        }
        (known, unknown)
    };

    // Equations (A, C_nu) = table value, for A among the P's, D and J's.
    // Additive constants in A drop out of every bracket, so the known part
    // of A suffices on the left.
    let mut forms = Vec::new();
    let mut lhs_generators: Vec<Generator> = (0..4u8).map(Generator::P).collect();
    lhs_generators.push(Generator::D);
    for m in 0..4u8 {
        for n in (m + 1)..4 {
            lhs_generators.push(Generator::J(m, n));
        }
    }
    for a_gen in lhs_generators {
        let (a_known, _) = generator_form(a_gen);
        for nu in 0..4u8 {
            let mut acc: BTreeMap<usize, DiffOperator> = BTreeMap::new();
            let mut push = |i: usize, op: DiffOperator| match acc.get_mut(&i) {
                Some(slot) => *slot = slot.add(&op),
                None => {
                    acc.insert(i, op);
                }
            };
            for (i, b) in c_form(nu) {
                push(i, a_known.nbr(&b));
            }
            let (rhs_known, rhs_unknown) = table_form(a_gen, Generator::C(nu));
            for (i, op) in rhs_unknown {
                push(i, op.neg());
            }
            forms.push(OpLinearForm {
                unknown: acc.into_iter().collect(),
                constant: rhs_known.neg(),
            });
        }
    }

    let solution = solve_unique(flatten(&forms, unknowns, ctx), unknowns)?;
    let consts = SolvedConstants {
        j_scale,
        j_consts: [
            solution[U_J0].clone(),
            solution[U_J0 + 1].clone(),
            solution[U_J0 + 2].clone(),
        ],
        boost_scale,
        boost_consts: [
            solution[U_V0].clone(),
            solution[U_V0 + 1].clone(),
            solution[U_V0 + 2].clone(),
        ],
        d_scale,
        d_const: solution[U_W0].clone(),
        c0: [
            solution[U_X].clone(),
            solution[U_X + 1].clone(),
            solution[U_X + 2].clone(),
            solution[U_X + 3].clone(),
        ],
        cj: [
            solution[U_Y].clone(),
            solution[U_Y + 1].clone(),
            solution[U_Y + 2].clone(),
            solution[U_Y + 3].clone(),
            solution[U_Y + 4].clone(),
            solution[U_Y + 5].clone(),
        ],
    };

    // Full verification at n = 1, including the (C, C) pairs the linear
    // stages never touched.
    for (g1, g2) in StructureTable::distinct_pairs() {
        let lhs = particle_op(ctx, &consts, g1, a).nbr(&particle_op(ctx, &consts, g2, a));
        let mut rhs = DiffOperator::zero(ctx);
        for (g, c) in table.bracket_basis(g1, g2).iter() {
            let s = c.as_scalar().expect("table coefficients are scalars");
            rhs = rhs.add(&particle_op(ctx, &consts, *g, a).scale(&s));
        }
        if !lhs.sub(&rhs).is_zero() {
            return Err(RealizationError::ClosureUnsolvable(format!(
                "solved one-particle ansatz fails closure at ({g1}, {g2})"
            )));
        }
    }
    Ok(consts)
}

/// `rho(table(g1, g2))` when the value lies in the P span (used while the
/// other images are still unknown).
fn table_p_image(
    ctx: RingCtx,
    a: usize,
    table: &StructureTable,
    g1: Generator,
    g2: Generator,
) -> DiffOperator {
    let mut out = DiffOperator::zero(ctx);
    for (g, c) in table.bracket_basis(g1, g2).iter() {
        let s = c.as_scalar().expect("table coefficients are scalars");
        match g {
            Generator::P(mu) => out = out.add(&p_op(ctx, a, *mu).scale(&s)),
            _ => panic!("bracket with P left the P span"),
        }
    }
    out
}

/// The closure-solved constants, computed once.
pub fn solved_constants() -> Result<&'static SolvedConstants, RealizationError> {
    static CELL: OnceLock<Result<SolvedConstants, RealizationError>> = OnceLock::new();
    CELL.get_or_init(solve).as_ref().map_err(|e| e.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_constants_are_rational_and_match_the_known_realization() {
        let c = solved_constants().unwrap();
        let i = Scalar::i();
        assert_eq!(c.j_scale, -i.clone());
        assert_eq!(c.boost_scale, -i.clone());
        assert_eq!(c.d_scale, i.clone());
        assert_eq!(c.d_const, i.clone());
        assert_eq!(c.j_consts, [Scalar::zero(), Scalar::zero(), Scalar::zero()]);
        assert_eq!(
            c.boost_consts,
            [Scalar::zero(), Scalar::zero(), Scalar::zero()]
        );
        assert_eq!(
            c.c0,
            [
                Scalar::from_int(-1),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero()
            ]
        );
        assert_eq!(
            c.cj,
            [
                Scalar::from_int(-1),
                Scalar::from_int(2),
                Scalar::from_int(2),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero()
            ]
        );
    }

    #[test]
    fn dilatation_bracket_applied_to_test_function() {
        // [realized D, realized P_1] f = realized P_1 f
        let ctx = RingCtx::new(1);
        let c = solved_constants().unwrap();
        let d = particle_op(ctx, c, Generator::D, 0);
        let p1 = particle_op(ctx, c, Generator::P(1), 0);
        let f = RingElem::from_poly(
            RingPoly::var(ctx, ctx.k_var(0, 1)).mul(&RingPoly::var(ctx, ctx.k_var(0, 2))),
        );
        let lhs = d.nbr(&p1).apply(&f);
        let rhs = p1.apply(&f);
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn translations_commute() {
        let ctx = RingCtx::new(1);
        let c = solved_constants().unwrap();
        for mu in 0..4u8 {
            for nu in 0..4u8 {
                let a = particle_op(ctx, c, Generator::P(mu), 0);
                let b = particle_op(ctx, c, Generator::P(nu), 0);
                assert!(a.nbr(&b).is_zero());
            }
        }
    }
}
