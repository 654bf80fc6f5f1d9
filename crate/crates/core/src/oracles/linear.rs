use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A dense square system `matrix · x = rhs` over the rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub dimension: usize,
    pub matrix: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

impl LinearSystem {
    pub fn new(matrix: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Self {
        let dimension = rhs.len();
        assert_eq!(matrix.len(), dimension, "row count");
        assert!(
            matrix.iter().all(|row| row.len() == dimension),
            "matrix must be square"
        );
        LinearSystem {
            dimension,
            matrix,
            rhs,
        }
    }

    /// Solves exactly with fraction-free (Bareiss) elimination.
    ///
    /// Each augmented row is first scaled by the lcm of its denominators so
    /// elimination runs over integers; every Bareiss division is exact.
    pub fn solve(&self) -> Result<Vec<Rational>> {
        let n = self.dimension;
        let mut a: Vec<Vec<BigInt>> = self
            .matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| {
                let lcm = row
                    .iter()
                    .chain(std::iter::once(b))
                    .fold(BigInt::one(), |l, q| l.lcm(q.denom()));
                row.iter()
                    .chain(std::iter::once(b))
                    .map(|q| q.numer() * (&lcm / q.denom()))
                    .collect()
            })
            .collect();

        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let pivot = (k + 1..n)
                    .find(|&i| !a[i][k].is_zero())
                    .ok_or(Error::SingularSystem(k))?;
                a.swap(k, pivot);
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                for j in k + 1..=n {
                    let v = &pivot_row[k] * &row[j] - &row[k] * &pivot_row[j];
                    debug_assert!((&v % &prev).is_zero());
                    row[j] = v / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }

        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = Rational::from_integer(a[i][n].clone());
            for j in i + 1..n {
                acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
            }
            x[i] = acc / Rational::from_integer(a[i][i].clone());
        }
        Ok(x)
    }
}
