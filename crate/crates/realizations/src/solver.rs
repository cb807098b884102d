//! Exact linear solving over the Gaussian rationals, used to pin down
//! representation coefficients from closure constraints. The systems here are
//! tiny and heavily overdetermined; we demand consistency and a unique
//! solution and fail loudly otherwise.

use crate::RealizationError;
use tensor_core::Scalar;

/// One equation `sum_i coeffs[i] * x_i + rhs_offset = 0`.
#[derive(Clone, Debug)]
pub struct LinearEquation {
    pub coeffs: Vec<Scalar>,
    pub offset: Scalar,
}

/// Solves the overdetermined system exactly. Errors if the system is
/// inconsistent or does not determine every unknown.
#[allow(clippy::needless_range_loop)]
pub fn solve_unique(
    mut rows: Vec<LinearEquation>,
    unknowns: usize,
) -> Result<Vec<Scalar>, RealizationError> {
    let mut pivots: Vec<Option<usize>> = vec![None; unknowns];
    let mut used: Vec<usize> = Vec::new();
    for col in 0..unknowns {
        let Some(r) = (0..rows.len())
            .find(|&r| !used.contains(&r) && !rows[r].coeffs[col].is_zero())
        else {
            continue;
        };
        let inv = rows[r].coeffs[col].inv();
        for c in rows[r].coeffs.iter_mut() {
            *c *= &inv;
        }
        rows[r].offset *= &inv;
        for other in 0..rows.len() {
            if other == r || rows[other].coeffs[col].is_zero() {
                continue;
            }
            let factor = rows[other].coeffs[col].clone();
            for c in 0..unknowns {
                let delta = &rows[r].coeffs[c] * &factor;
                rows[other].coeffs[c] -= &delta;
            }
            let delta = &rows[r].offset * &factor;
            rows[other].offset -= &delta;
        }
        pivots[col] = Some(r);
        used.push(r);
    }
    // Consistency: non-pivot rows must be 0 = 0.
    for (r, row) in rows.iter().enumerate() {
        if used.contains(&r) {
            continue;
        }
        if row.coeffs.iter().any(|c| !c.is_zero()) || !row.offset.is_zero() {
            return Err(RealizationError::ClosureUnsolvable(
                "inconsistent closure constraints".into(),
            ));
        }
    }
    let mut solution = vec![Scalar::zero(); unknowns];
    for (col, pivot) in pivots.iter().enumerate() {
        match pivot {
            Some(r) => solution[col] = -rows[*r].offset.clone(),
            None => {
                return Err(RealizationError::ClosureUnsolvable(format!(
                    "closure constraints leave unknown #{col} free"
                )))
            }
        }
    }
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn solves_a_small_system() {
        // x + y = 3, x - y = 1, plus a redundant copy
        let rows = vec![
            LinearEquation {
                coeffs: vec![s(1), s(1)],
                offset: s(-3),
            },
            LinearEquation {
                coeffs: vec![s(1), s(-1)],
                offset: s(-1),
            },
            LinearEquation {
                coeffs: vec![s(2), s(2)],
                offset: s(-6),
            },
        ];
        assert_eq!(solve_unique(rows, 2).unwrap(), vec![s(2), s(1)]);
    }

    #[test]
    fn rejects_inconsistent_and_underdetermined() {
        let bad = vec![
            LinearEquation {
                coeffs: vec![s(1)],
                offset: s(0),
            },
            LinearEquation {
                coeffs: vec![s(1)],
                offset: s(1),
            },
        ];
        assert!(solve_unique(bad, 1).is_err());
        let free = vec![LinearEquation {
            coeffs: vec![s(1), s(0)],
            offset: s(-1),
        }];
        assert!(solve_unique(free, 2).is_err());
    }
}
