//! Exact linear solving by fraction-free (Bareiss) elimination over the
//! Gaussian integers.
//!
//! Each equation is scaled to Gaussian-integer coefficients, reduced to a
//! fraction-free echelon form in which every intermediate entry is a minor of
//! the input (so the division by the previous pivot is always exact), and
//! finally back-substituted over the Gaussian rationals. Free unknowns are set
//! to zero and reported.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn zero() -> Self {
        GaussInt {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }

    fn one() -> Self {
        GaussInt {
            re: BigInt::one(),
            im: BigInt::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    /// Exact quotient; the caller guarantees divisibility.
    fn div_exact(&self, d: &GaussInt) -> GaussInt {
        if d.im.is_zero() {
            debug_assert!((&self.re % &d.re).is_zero() && (&self.im % &d.re).is_zero());
            return GaussInt {
                re: &self.re / &d.re,
                im: &self.im / &d.re,
            };
        }
        let norm = &d.re * &d.re + &d.im * &d.im;
        let num = self.mul(&GaussInt {
            re: d.re.clone(),
            im: -&d.im,
        });
        debug_assert!((&num.re % &norm).is_zero() && (&num.im % &norm).is_zero());
        GaussInt {
            re: num.re / &norm,
            im: num.im / norm,
        }
    }

    fn to_rational(&self) -> GaussianRational {
        GaussianRational::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }
}

/// One equation `Σ coefficients[j]·x_j = rhs`, stored sparsely.
#[derive(Clone, Debug, Default)]
pub struct Equation {
    pub coefficients: BTreeMap<usize, GaussianRational>,
    pub rhs: GaussianRational,
}

impl Equation {
    fn is_trivial(&self) -> bool {
        self.coefficients.values().all(Zero::is_zero) && self.rhs.is_zero()
    }

    /// Divides through by the first nonzero entry so that scalar multiples of
    /// the same equation compare equal.
    fn normalized(&self) -> Vec<(usize, GaussianRational)> {
        let lead = self
            .coefficients
            .values()
            .find(|c| !c.is_zero())
            .or(Some(&self.rhs).filter(|r| !r.is_zero()))
            .cloned()
            .unwrap_or_else(GaussianRational::one);
        let inv = lead.checked_inv().expect("nonzero lead");
        let mut out: Vec<(usize, GaussianRational)> = self
            .coefficients
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&j, c)| (j, c * &inv))
            .collect();
        out.push((usize::MAX, &self.rhs * &inv));
        out
    }
}

#[derive(Clone, Debug)]
pub struct LinearSolution {
    /// Value of every unknown; free unknowns are zero.
    pub values: Vec<GaussianRational>,
    /// Unknowns left undetermined by the equations.
    pub free: Vec<usize>,
    pub rank: usize,
}

fn lcm_of_denominators(eq: &Equation) -> BigInt {
    let mut l = BigInt::one();
    for c in eq.coefficients.values().chain(std::iter::once(&eq.rhs)) {
        l = l.lcm(c.re().denom());
        l = l.lcm(c.im().denom());
    }
    l
}

fn to_gauss_int(c: &GaussianRational, scale: &BigInt) -> GaussInt {
    let re = c.re() * BigRational::from_integer(scale.clone());
    let im = c.im() * BigRational::from_integer(scale.clone());
    debug_assert!(re.is_integer() && im.is_integer());
    GaussInt {
        re: re.to_integer(),
        im: im.to_integer(),
    }
}

/// Row-reduces a dense Gaussian-integer matrix in place to fraction-free
/// echelon form, returning the pivot columns (searched among `0..cols`).
fn bareiss(m: &mut [Vec<GaussInt>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut prev = GaussInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..width {
                let v = pivot.mul(&row[j]).sub(&lead.mul(&pivot_row[j]));
                row[j] = v.div_exact(&prev);
            }
            row[c] = GaussInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves the system in `unknowns` variables. Inconsistent systems give
/// [`Error::NoSolution`].
pub fn solve(unknowns: usize, equations: &[Equation]) -> Result<LinearSolution> {
    let mut seen = HashSet::new();
    let mut rows: Vec<Vec<GaussInt>> = Vec::new();
    for eq in equations.iter().filter(|e| !e.is_trivial()) {
        if !seen.insert(eq.normalized()) {
            continue;
        }
        let scale = lcm_of_denominators(eq);
        let mut row = vec![GaussInt::zero(); unknowns + 1];
        for (&j, c) in &eq.coefficients {
            assert!(j < unknowns, "unknown index {j} out of range");
            row[j] = to_gauss_int(c, &scale);
        }
        row[unknowns] = to_gauss_int(&eq.rhs, &scale);
        rows.push(row);
    }
    let pivots = bareiss(&mut rows, unknowns);
    let rank = pivots.len();
    if let Some(bad) = rows[rank..].iter().find(|row| !row[unknowns].is_zero()) {
        return Err(Error::NoSolution(format!(
            "inconsistent equation with right-hand side {}",
            bad[unknowns].to_rational()
        )));
    }
    let mut values = vec![GaussianRational::zero(); unknowns];
    for (r, &c) in pivots.iter().enumerate().rev() {
        let row = &rows[r];
        let mut acc = row[unknowns].to_rational();
        for j in c + 1..unknowns {
            if !row[j].is_zero() && !values[j].is_zero() {
                acc -= &(&row[j].to_rational() * &values[j]);
            }
        }
        values[c] = acc.checked_div(&row[c].to_rational())?;
    }
    let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
    let free = (0..unknowns).filter(|j| !pivot_set.contains(j)).collect();
    Ok(LinearSolution { values, free, rank })
}

/// Exact rank of a dense matrix.
pub fn rank(matrix: &[Vec<GaussianRational>]) -> usize {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<GaussInt>> = matrix
        .iter()
        .map(|row| {
            let eq = Equation {
                coefficients: row.iter().cloned().enumerate().collect(),
                rhs: GaussianRational::zero(),
            };
            let scale = lcm_of_denominators(&eq);
            row.iter().map(|c| to_gauss_int(c, &scale)).collect()
        })
        .collect();
    bareiss(&mut rows, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gr(a: i64, b: i64) -> GaussianRational {
        GaussianRational::from_ratio(a, b)
    }

    fn eq(coefs: &[(usize, GaussianRational)], rhs: GaussianRational) -> Equation {
        Equation {
            coefficients: coefs.iter().cloned().collect(),
            rhs,
        }
    }

    #[test]
    fn unique_solution() {
        // x + y = 3, x - y = 1  -> x = 2, y = 1
        let sys = [
            eq(&[(0, gr(1, 1)), (1, gr(1, 1))], gr(3, 1)),
            eq(&[(0, gr(1, 1)), (1, gr(-1, 1))], gr(1, 1)),
        ];
        let s = solve(2, &sys).unwrap();
        assert_eq!(s.values, vec![gr(2, 1), gr(1, 1)]);
        assert!(s.free.is_empty());
    }

    #[test]
    fn inconsistent_system() {
        let sys = [
            eq(&[(0, gr(1, 2))], gr(1, 1)),
            eq(&[(0, gr(1, 1))], gr(3, 1)),
        ];
        assert!(matches!(solve(1, &sys), Err(Error::NoSolution(_))));
    }

    #[test]
    fn free_unknowns_are_zero() {
        let sys = [eq(&[(0, gr(1, 1)), (2, gr(2, 1))], gr(4, 1))];
        let s = solve(3, &sys).unwrap();
        assert_eq!(s.free, vec![1, 2]);
        assert_eq!(s.values[0], gr(4, 1));
        assert_eq!(s.rank, 1);
    }

    #[test]
    fn complex_coefficients() {
        // i x = 1 + i
        let sys = [eq(&[(0, GaussianRational::i())], GaussianRational::from_parts(1, 1, 1, 1))];
        let s = solve(1, &sys).unwrap();
        assert_eq!(s.values[0], GaussianRational::from_parts(1, 1, -1, 1));
    }

    /// Random overdetermined consistent systems: the returned values satisfy
    /// every equation exactly.
    #[test]
    fn random_consistent_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..6);
            let m = rng.gen_range(n..n + 6);
            let truth: Vec<GaussianRational> = (0..n)
                .map(|_| GaussianRational::from_parts(rng.gen_range(-9..10), rng.gen_range(1..5), rng.gen_range(-3..4), 1))
                .collect();
            let mut eqs = Vec::new();
            for _ in 0..m {
                let coefs: Vec<(usize, GaussianRational)> = (0..n)
                    .map(|j| (j, GaussianRational::from_parts(rng.gen_range(-5..6), rng.gen_range(1..4), rng.gen_range(-2..3), 1)))
                    .collect();
                let rhs = coefs
                    .iter()
                    .fold(GaussianRational::zero(), |acc, (j, c)| &acc + &(c * &truth[*j]));
                eqs.push(eq(&coefs, rhs));
            }
            let s = solve(n, &eqs).unwrap();
            for e in &eqs {
                let lhs = e
                    .coefficients
                    .iter()
                    .fold(GaussianRational::zero(), |acc, (j, c)| &acc + &(c * &s.values[*j]));
                assert_eq!(lhs, e.rhs);
            }
        }
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = vec![
            vec![gr(1, 1), gr(2, 1), gr(3, 1)],
            vec![gr(2, 1), gr(4, 1), gr(6, 1)],
            vec![gr(0, 1), gr(1, 2), gr(1, 1)],
        ];
        assert_eq!(rank(&m), 2);
    }
}
