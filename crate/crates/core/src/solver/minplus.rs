//! Dense square matrices over the (min, +) semiring.
//!
//! Entries are `u32` with `u32::MAX` as the infeasible marker; saturating
//! addition keeps it absorbing, so products never overflow. Multiplication
//! runs over output rows, in parallel when the `parallel` feature is on
//! (`min` is order-independent, so the result is identical either way).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub type Cost = u32;

/// Marker for an infeasible transition; strictly larger than any real
/// weight, absorbing under [`Cost::saturating_add`].
pub const INFINITY: Cost = Cost::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPlusMatrix {
    dim: usize,
    data: Vec<Cost>,
}

impl MinPlusMatrix {
    pub fn filled(dim: usize, value: Cost) -> Self {
        Self {
            dim,
            data: vec![value; dim * dim],
        }
    }

    /// The (min, +) identity: 0 on the diagonal, infinity elsewhere.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::filled(dim, INFINITY);
        for i in 0..dim {
            m.set(i, i, 0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Cost) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Cost {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Cost) {
        self.data[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Cost] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// (min, +) product; dispatches to the parallel kernel when available.
    pub fn mul(&self, rhs: &Self) -> Self {
        #[cfg(feature = "parallel")]
        {
            self.mul_par(rhs)
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.mul_seq(rhs)
        }
    }

    /// Single-threaded (min, +) product.
    pub fn mul_seq(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = Self::filled(self.dim, INFINITY);
        for (i, out_row) in out.data.chunks_mut(self.dim).enumerate() {
            mul_into_row(self.row(i), rhs, out_row);
        }
        out
    }

    /// (min, +) product parallelized over output rows.
    #[cfg(feature = "parallel")]
    pub fn mul_par(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = Self::filled(self.dim, INFINITY);
        out.data
            .par_chunks_mut(self.dim)
            .enumerate()
            .for_each(|(i, out_row)| mul_into_row(self.row(i), rhs, out_row));
        out
    }

    /// n-th (min, +) power by binary exponentiation; `n = 0` is the
    /// identity.
    pub fn power(&self, n: u64) -> Self {
        let mut result = Self::identity(self.dim);
        if n == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base);
        }
        result
    }

    /// n-th power by `n - 1` successive multiplications (`n >= 1`); the slow
    /// route kept as an algebraic cross-check of [`MinPlusMatrix::power`].
    pub fn power_iterative(&self, n: u64) -> Self {
        assert!(n >= 1, "iterative power needs n >= 1");
        let mut result = self.clone();
        for _ in 1..n {
            result = result.mul(self);
        }
        result
    }

    /// Smallest diagonal entry and its index (first index on ties).
    pub fn min_diagonal(&self) -> (usize, Cost) {
        (0..self.dim)
            .map(|i| (i, self.get(i, i)))
            .min_by_key(|&(i, c)| (c, i))
            .expect("matrix is nonempty")
    }
}

fn mul_into_row(a_row: &[Cost], rhs: &MinPlusMatrix, out_row: &mut [Cost]) {
    for (k, &aik) in a_row.iter().enumerate() {
        if aik == INFINITY {
            continue;
        }
        for (out, &bkj) in out_row.iter_mut().zip(rhs.row(k)) {
            let candidate = aik.saturating_add(bkj);
            if candidate < *out {
                *out = candidate;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> MinPlusMatrix {
        // small digraph distance matrix with one unreachable pair
        MinPlusMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 1) => 1,
            (1, 2) => 2,
            (2, 0) => 3,
            (0, 2) => 10,
            _ if i == j => 0,
            _ => INFINITY,
        })
    }

    #[test]
    fn identity_is_neutral() {
        let a = sample();
        let id = MinPlusMatrix::identity(3);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
    }

    #[test]
    fn mul_takes_cheapest_path() {
        let a = sample();
        let sq = a.mul(&a);
        // 0 -> 1 -> 2 beats the direct 0 -> 2
        assert_eq!(sq.get(0, 2), 3);
    }

    #[test]
    fn saturating_infinity_is_absorbing() {
        let mut a = MinPlusMatrix::filled(2, INFINITY);
        a.set(0, 0, 5);
        let sq = a.mul(&a);
        assert_eq!(sq.get(0, 0), 10);
        assert_eq!(sq.get(0, 1), INFINITY);
        assert_eq!(sq.get(1, 1), INFINITY);
    }

    #[test]
    fn power_routes_agree() {
        let a = sample();
        for n in 1..=8 {
            assert_eq!(a.power(n), a.power_iterative(n), "n = {n}");
        }
        assert_eq!(a.power(0), MinPlusMatrix::identity(3));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_products_match() {
        let a = sample();
        let b = a.power(3);
        assert_eq!(a.mul_par(&b), a.mul_seq(&b));
    }

    #[test]
    fn min_diagonal_prefers_first_index() {
        let mut a = MinPlusMatrix::filled(3, INFINITY);
        a.set(0, 0, 7);
        a.set(1, 1, 4);
        a.set(2, 2, 4);
        assert_eq!(a.min_diagonal(), (1, 4));
    }
}
