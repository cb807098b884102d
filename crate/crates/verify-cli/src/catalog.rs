//! The check catalog: every verification the engine defines, as stable
//! identifiers grouped into families that are executed together.

use conformal_algebra::{Generator, StructureTable};
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Algebra,
    Identities,
    Matrix,
    Realization,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Group::Algebra => "algebra",
            Group::Identities => "identities",
            Group::Matrix => "matrix",
            Group::Realization => "realization",
        };
        write!(f, "{s}")
    }
}

/// A family of checks produced by one engine call.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Eq4Pairs,
    Jacobi,
    JacobiDegenerate,
    Weights,
    LorentzSpans,
    MassShifts,
    Canonical,
    PositionCommutators,
    PauliLubanski,
    Redshift,
    DoubleCommutators,
    PropIdempotence,
    PropConfluence,
    PropLeibniz,
    PropSymLeibniz,
    PropWordJacobi,
    PropGrading,
    MatrixSolve,
    MatrixPairs,
    MatrixGAntisymmetry,
    RealPairsOneParticle,
    RealMassVanishesOneParticle,
    RealPairs,
    RealEq5,
    RealEq7,
    RealEq9,
    RealEq10,
    RealEq11,
    RealEq12Eq13,
    RealSpinWitness,
    RealMassExample,
    RealHomomorphism,
    RealEq7Points,
    RealBridge,
}

impl Family {
    pub fn all() -> Vec<Family> {
        use Family::*;
        vec![
            Eq4Pairs,
            Jacobi,
            JacobiDegenerate,
            Weights,
            LorentzSpans,
            MassShifts,
            Canonical,
            PositionCommutators,
            PauliLubanski,
            Redshift,
            DoubleCommutators,
            PropIdempotence,
            PropConfluence,
            PropLeibniz,
            PropSymLeibniz,
            PropWordJacobi,
            PropGrading,
            MatrixSolve,
            MatrixPairs,
            MatrixGAntisymmetry,
            RealPairsOneParticle,
            RealMassVanishesOneParticle,
            RealPairs,
            RealEq5,
            RealEq7,
            RealEq9,
            RealEq10,
            RealEq11,
            RealEq12Eq13,
            RealSpinWitness,
            RealMassExample,
            RealHomomorphism,
            RealEq7Points,
            RealBridge,
        ]
    }

    pub fn group(&self) -> Group {
        use Family::*;
        match self {
            Eq4Pairs | Jacobi | JacobiDegenerate | Weights | LorentzSpans => Group::Algebra,
            MassShifts | Canonical | PositionCommutators | PauliLubanski | Redshift
            | DoubleCommutators | PropIdempotence | PropConfluence | PropLeibniz
            | PropSymLeibniz | PropWordJacobi | PropGrading => Group::Identities,
            MatrixSolve | MatrixPairs | MatrixGAntisymmetry => Group::Matrix,
            RealPairsOneParticle | RealMassVanishesOneParticle | RealPairs | RealEq5 | RealEq7
            | RealEq9 | RealEq10 | RealEq11 | RealEq12Eq13 | RealSpinWitness | RealMassExample
            | RealHomomorphism | RealEq7Points | RealBridge => Group::Realization,
        }
    }

    pub fn module(&self) -> &'static str {
        match self.group() {
            Group::Algebra => "conformal-algebra",
            Group::Identities => "nc-calculus",
            Group::Matrix | Group::Realization => "realizations",
        }
    }

    /// The traceability tag shared by every check of the family.
    pub fn paper_ref(&self) -> &'static str {
        use Family::*;
        match self {
            Eq4Pairs => "Eq. (4): the conformal bracket table, e.g. (P_mu, C_nu) = -2 eta_{mu nu} D - 2 J_{mu nu}",
            Jacobi | JacobiDegenerate => "Eq. (3): ((A,B),C) = (A,(B,C)) - (B,(A,C))",
            Weights => "Eq. (4): conformal weights +1 (P), 0 (J, D), -1 (C) from brackets with D",
            LorentzSpans => "Eq. (4): (J, .) preserves the P span and the C span",
            MassShifts => "Eq. (5)/(6): (P,M^2)=(J,M^2)=0, (D,M^2)=2M^2, (C_mu,M^2)=4(eta_{mu rho}D - J_{mu rho}).P^rho; odd form via M^{+-1}",
            Canonical => "Eq. (7): (P_mu,X_nu) = -eta_{mu nu}, (D,X_mu) = -X_mu, (J_mn,X_rho) = eta_{n rho}X_m - eta_{m rho}X_n",
            PositionCommutators => "Eq. (9): (M.X_mu, M.X_nu) = J_mn and M^2.(X_mu,X_nu) = J_mn - (P_mu.X_nu - P_nu.X_mu) = S_mn",
            PauliLubanski => "Eq. (10): S_mn = eps_{mn rho sigma} S^rho P^sigma/M with S^mu = -1/2 eps^{mu nu rho sigma} J_{nu rho} P_sigma/M",
            Redshift => "Eq. (11): (Delta,P_nu) = a^mu (eta_{mu nu} D - P_mu.X_nu + P_nu.X_mu - S_mn), D = P_rho.X^rho",
            DoubleCommutators => "Eq. (12)/(13): ((Delta,X_nu),P_mu) = ((Delta,P_mu),X_nu) = -eta_{mu nu} a^rho X_rho - a_mu X_nu + a_nu X_mu",
            PropIdempotence => "rewriting kernel: normal form is idempotent",
            PropConfluence => "rewriting kernel: randomized reduction orders agree (confluence evidence)",
            PropLeibniz => "Eq. (2): the bracket is a derivation, (A,BC) = (A,B)C + B(A,C)",
            PropSymLeibniz => "Eq. (2)/(5): Leibniz with the symmetrized dot",
            PropWordJacobi => "Eq. (3): Jacobi holds identically in the word algebra",
            PropGrading => "Eq. (4): bracket with D grades monomials by conformal weight",
            MatrixSolve => "Eq. (4): so(4,2) embedding coefficients solved from closure",
            MatrixPairs => "Eq. (4): [rho(A), rho(B)] = rho((A,B)) for all pairs",
            MatrixGAntisymmetry => "so(4,2): rho(g)^T G + G rho(g) = 0, G = diag(+,-,-,-,-,+)",
            RealPairsOneParticle | RealPairs => "Eq. (4) as exact operator identities on momentum wavefunctions",
            RealMassVanishesOneParticle => "Eq. (1): a single massless particle has M^2 = 0",
            RealEq5 => "Eq. (5) in the realization, with M = sigma and M^2 = s",
            RealEq7 => "Eq. (7) in the realization",
            RealEq9 => "Eq. (9) in the realization (nonzero spin at two particles)",
            RealEq10 => "Eq. (10) in the realization",
            RealEq11 => "Eq. (11) in the realization",
            RealEq12Eq13 => "Eq. (12)/(13) in the realization",
            RealSpinWitness => "Eq. (9): S_mn must NOT vanish for two scalar particles",
            RealMassExample => "Eq. (1): two counterpropagating photons have M^2 = 4 omega^2 at zero momentum",
            RealHomomorphism => "realize is an algebra homomorphism",
            RealEq7Points => "Eq. (7): randomized exact point evaluations of (P_mu, X_nu) f = -eta_{mu nu} f",
            RealBridge => "Eq. (7)/(11): abstract normal forms map to the expected operators",
        }
    }

    /// Stable identifiers of every check this family will emit, in emission
    /// order. Must match the labels produced at run time; a test pins that.
    pub fn ids(&self, particles: usize) -> Vec<String> {
        use Family::*;
        let n = particles;
        match self {
            Eq4Pairs => StructureTable::distinct_pairs()
                .iter()
                .map(|(a, b)| format!("eq4.pair.{a}.{b}"))
                .collect(),
            Jacobi => StructureTable::distinct_triples()
                .iter()
                .map(|(a, b, c)| format!("jacobi.{a}.{b}.{c}"))
                .collect(),
            JacobiDegenerate => vec!["jacobi-degenerate.all".into()],
            Weights => Generator::basis()
                .iter()
                .map(|g| format!("eq4.weight.{g}"))
                .collect(),
            LorentzSpans => {
                let mut out = Vec::new();
                for mu in 0..4u8 {
                    for nu in (mu + 1)..4 {
                        out.push(format!("eq4.lorentz-span.J{mu}{nu}.P"));
                        out.push(format!("eq4.lorentz-span.J{mu}{nu}.C"));
                    }
                }
                out
            }
            MassShifts => {
                let mut out = Vec::new();
                for mu in 0..4 {
                    out.push(format!("eq5.shift.P{mu}"));
                }
                for mu in 0..4u8 {
                    for nu in (mu + 1)..4 {
                        out.push(format!("eq5.shift.J{mu}{nu}"));
                    }
                }
                out.push("eq5.shift.D".into());
                for mu in 0..4 {
                    out.push(format!("eq5.shift.C{mu}"));
                }
                for mu in 0..4 {
                    out.push(format!("eq5.shift-odd.C{mu}"));
                }
                for mu in 0..4 {
                    out.push(format!("eq5.consistency.C{mu}"));
                }
                out.push("eq6.mass-shift".into());
                out
            }
            Canonical => {
                let mut out = Vec::new();
                for mu in 0..4 {
                    for nu in 0..4 {
                        out.push(format!("eq7.canonical-commutator.P{mu}.X{nu}"));
                    }
                }
                for mu in 0..4 {
                    out.push(format!("eq7.dilatation.X{mu}"));
                }
                for mu in 0..4u8 {
                    for nu in (mu + 1)..4 {
                        for rho in 0..4 {
                            out.push(format!("eq7.rotation.J{mu}{nu}.X{rho}"));
                        }
                    }
                }
                out
            }
            PositionCommutators => {
                let mut out = Vec::new();
                for line in 1..=2 {
                    for mu in 0..4 {
                        for nu in 0..4 {
                            out.push(format!("eq9.line{line}.{mu}.{nu}"));
                        }
                    }
                }
                out
            }
            PauliLubanski => {
                let mut out = vec!["eq10.transversality".to_string()];
                for mu in 0..4 {
                    for nu in 0..4 {
                        out.push(format!("eq10.reconstruction.{mu}.{nu}"));
                    }
                }
                out.push("eq10.classical-limit".into());
                out
            }
            Redshift => {
                let mut out = vec!["eq11.dilatation-decomposition".to_string()];
                for nu in 0..4 {
                    out.push(format!("eq11.redshift.P{nu}"));
                }
                for nu in 0..4 {
                    out.push(format!("eq11.redshift-a3.P{nu}"));
                }
                out
            }
            DoubleCommutators => {
                let mut out = Vec::new();
                for mu in 0..4 {
                    for nu in 0..4 {
                        out.push(format!("eq12.invariance.{mu}.{nu}"));
                        out.push(format!("eq13.covariance-direct.{mu}.{nu}"));
                        out.push(format!("eq13.covariance-jacobi.{mu}.{nu}"));
                    }
                }
                out
            }
            PropIdempotence => vec!["prop.normal-form-idempotence".into()],
            PropConfluence => vec!["prop.confluence".into()],
            PropLeibniz => vec!["prop.leibniz".into()],
            PropSymLeibniz => vec!["prop.sym-leibniz".into()],
            PropWordJacobi => vec!["prop.word-jacobi".into()],
            PropGrading => vec!["prop.grading".into()],
            MatrixSolve => vec!["matrix.closure-solve".into()],
            MatrixPairs => StructureTable::distinct_pairs()
                .iter()
                .map(|(a, b)| format!("matrix.pair.{a}.{b}"))
                .collect(),
            MatrixGAntisymmetry => Generator::basis()
                .iter()
                .map(|g| format!("matrix.g-antisymmetry.{g}"))
                .collect(),
            RealPairsOneParticle => StructureTable::distinct_pairs()
                .iter()
                .map(|(a, b)| format!("real.n1.pair.{a}.{b}"))
                .collect(),
            RealMassVanishesOneParticle => vec!["real.n1.mass-squared-vanishes".into()],
            RealPairs => StructureTable::distinct_pairs()
                .iter()
                .map(|(a, b)| format!("real.n{n}.pair.{a}.{b}"))
                .collect(),
            RealEq5 => {
                let mut out = Vec::new();
                for mu in 0..4 {
                    out.push(format!("real.n{n}.eq5.shift.P{mu}"));
                }
                for mu in 0..4u8 {
                    for nu in (mu + 1)..4 {
                        out.push(format!("real.n{n}.eq5.shift.J{mu}{nu}"));
                    }
                }
                out.push(format!("real.n{n}.eq5.shift.D"));
                for mu in 0..4 {
                    out.push(format!("real.n{n}.eq5.shift.C{mu}"));
                }
                for mu in 0..4 {
                    out.push(format!("real.n{n}.eq5.shift-odd.C{mu}"));
                }
                out
            }
            RealEq7 => {
                let mut out = Vec::new();
                for mu in 0..4 {
                    for nu in 0..4 {
                        out.push(format!("real.n{n}.eq7.canonical-commutator.P{mu}.X{nu}"));
                    }
                }
                for mu in 0..4 {
                    out.push(format!("real.n{n}.eq7.dilatation.X{mu}"));
                }
                for mu in 0..4u8 {
                    for nu in (mu + 1)..4 {
                        for rho in 0..4 {
                            out.push(format!("real.n{n}.eq7.rotation.J{mu}{nu}.X{rho}"));
                        }
                    }
                }
                out
            }
            RealEq9 => {
                let mut out = Vec::new();
                for line in 1..=2 {
                    for mu in 0..4 {
                        for nu in 0..4 {
                            out.push(format!("real.n{n}.eq9.line{line}.{mu}.{nu}"));
                        }
                    }
                }
                out
            }
            RealEq10 => {
                let mut out = vec![format!("real.n{n}.eq10.transversality")];
                for mu in 0..4 {
                    for nu in 0..4 {
                        out.push(format!("real.n{n}.eq10.reconstruction.{mu}.{nu}"));
                    }
                }
                out
            }
            RealEq11 => {
                let mut out = vec![format!("real.n{n}.eq11.dilatation-decomposition")];
                for lambda in 0..4 {
                    for nu in 0..4 {
                        out.push(format!("real.n{n}.eq11.redshift.dir{lambda}.P{nu}"));
                    }
                }
                out
            }
            RealEq12Eq13 => {
                let mut out = Vec::new();
                for lambda in 0..4 {
                    for mu in 0..4 {
                        for nu in 0..4 {
                            out.push(format!("real.n{n}.eq12.invariance.dir{lambda}.{mu}.{nu}"));
                            out.push(format!("real.n{n}.eq13.covariance.dir{lambda}.{mu}.{nu}"));
                        }
                    }
                }
                out
            }
            RealSpinWitness => vec![format!("real.n{n}.spin-witness")],
            // The two-photon example is inherently a two-particle statement
            // and keeps its slot whatever the requested particle count.
            RealMassExample => vec!["real.n2.two-photon-mass".into()],
            RealHomomorphism => vec![format!("real.n{n}.homomorphism")],
            RealEq7Points => vec![format!("real.n{n}.eq7-point-evaluations")],
            RealBridge => vec![
                format!("real.n{n}.bridge.inverse-mass-square"),
                format!("real.n{n}.bridge.canonical-commutator"),
                format!("real.n{n}.bridge.dilatation-decomposition"),
            ],
        }
    }
}

/// One catalog entry.
#[derive(Clone, Debug, Serialize)]
pub struct CheckDescriptor {
    pub id: String,
    pub paper_ref: String,
    pub module: &'static str,
    pub group: Group,
    #[serde(skip)]
    pub family: Family,
}

/// The full catalog for the given particle count.
pub fn catalog(particles: usize) -> Vec<CheckDescriptor> {
    let mut out = Vec::new();
    for family in Family::all() {
        for id in family.ids(particles) {
            out.push(CheckDescriptor {
                id,
                paper_ref: family.paper_ref().to_string(),
                module: family.module(),
                group: family.group(),
                family,
            });
        }
    }
    out
}

/// Resolves selection tokens to a subset of the catalog. A token is `all`,
/// a group name, an exact identifier, or a dot-segment prefix of identifiers
/// (`jacobi` matches `jacobi.D.P0.C1` but not `jacobi-degenerate.all`).
pub fn resolve_selection(
    cat: &[CheckDescriptor],
    tokens: &[String],
) -> Result<Vec<usize>, String> {
    let mut picked = vec![false; cat.len()];
    for token in tokens {
        let mut hit = false;
        if token == "all" {
            picked.iter_mut().for_each(|p| *p = true);
            continue;
        }
        for (i, d) in cat.iter().enumerate() {
            let group_match = d.group.to_string() == *token;
            let id_match = d.id == *token || segment_prefix(&d.id, token);
            if group_match || id_match {
                picked[i] = true;
                hit = true;
            }
        }
        if !hit {
            return Err(format!("unknown check or group: `{token}`"));
        }
    }
    Ok(picked
        .iter()
        .enumerate()
        .filter(|(_, p)| **p)
        .map(|(i, _)| i)
        .collect())
}

fn segment_prefix(id: &str, token: &str) -> bool {
    let id_segs: Vec<&str> = id.split('.').collect();
    let tok_segs: Vec<&str> = token.split('.').collect();
    tok_segs.len() <= id_segs.len() && id_segs[..tok_segs.len()] == tok_segs[..]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_counts() {
        let cat = catalog(2);
        let count = |g: Group| cat.iter().filter(|d| d.group == g).count();
        assert_eq!(count(Group::Algebra), 105 + 455 + 1 + 15 + 12);
        assert_eq!(count(Group::Matrix), 1 + 105 + 15);
        assert!(cat.len() >= 105 + 455 + 100);
        // identifiers unique
        let mut ids: Vec<&String> = cat.iter().map(|d| &d.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), cat.len());
    }

    #[test]
    fn catalog_contains_the_documented_identifiers() {
        let cat = catalog(2);
        assert!(cat.iter().any(|d| d.id == "eq4.pair.P0.C0"));
        assert!(cat
            .iter()
            .any(|d| d.id.starts_with("eq7.canonical-commutator")));
    }

    #[test]
    fn selection_semantics() {
        let cat = catalog(2);
        let jacobi = resolve_selection(&cat, &["jacobi".into()]).unwrap();
        assert_eq!(jacobi.len(), 455);
        let degenerate = resolve_selection(&cat, &["jacobi-degenerate".into()]).unwrap();
        assert_eq!(degenerate.len(), 1);
        let all = resolve_selection(&cat, &["all".into()]).unwrap();
        assert_eq!(all.len(), cat.len());
        let group = resolve_selection(&cat, &["matrix".into()]).unwrap();
        assert_eq!(group.len(), 121);
        assert!(resolve_selection(&cat, &["nope".into()]).is_err());
    }
}
