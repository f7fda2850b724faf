use crate::error::{Error, Result};
use crate::quantum::{Factorization, HermitianOperator};
use crate::scalar::{cr, CMatrix, Real, C};
use crate::tolerance;

use super::basis::{analysis_map, gell_mann_basis, synthesis_map};

/// A multipartite tensor structure; the same data as a [`Factorization`].
pub type Multipartition<T> = Factorization<T>;

/// Coefficients of an operator in the product of per-factor
/// [`gell_mann_basis`] elements, stored densely. Multi-indices are
/// flattened with factor 0 most significant and radix `d_α²`; label 0 on
/// a factor is its identity element.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorExpansion<T: Real> {
    dims: Vec<usize>,
    coefficients: Vec<T>,
}

impl<T: Real> OperatorExpansion<T> {
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        let mut labels = vec![0; self.dims.len()];
        let mut rest = flat;
        for (f, &d) in self.dims.iter().enumerate().rev() {
            labels[f] = rest % (d * d);
            rest /= d * d;
        }
        labels
    }

    pub fn flat_index(&self, labels: &[usize]) -> Option<usize> {
        if labels.len() != self.dims.len() {
            return None;
        }
        labels.iter().zip(&self.dims).try_fold(0usize, |acc, (&l, &d)| (l < d * d).then(|| acc * d * d + l))
    }

    pub fn coefficient(&self, labels: &[usize]) -> Option<T> {
        self.flat_index(labels).map(|i| self.coefficients[i])
    }

    /// Number of non-identity labels in the term at `flat`.
    pub fn order(&self, flat: usize) -> usize {
        self.multi_index(flat).iter().filter(|&&l| l != 0).count()
    }

    /// `(multi-index, coefficient)` for every term, in flat order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, T)> + '_ {
        self.coefficients.iter().enumerate().map(|(i, &c)| (self.multi_index(i), c))
    }

    /// `Σ coeff²`, which equals `‖H‖²_F`.
    pub fn norm_squared(&self) -> T {
        self.coefficients.iter().fold(T::zero(), |acc, &c| acc + c * c)
    }

    /// Zeroes every term touching at most `k` factors.
    pub(crate) fn retain_orders_above(&mut self, k: usize) {
        for i in 0..self.coefficients.len() {
            if self.order(i) <= k {
                self.coefficients[i] = T::zero();
            }
        }
    }

    /// Rebuilds the operator in the multipartition's product basis.
    pub fn to_local_operator(&self) -> CMatrix<T> {
        let maps: Vec<_> = self.dims.iter().map(|&d| synthesis_map(&gell_mann_basis::<T>(d))).collect();
        let mut x: Vec<C<T>> = self.coefficients.iter().map(|&c| cr(c)).collect();
        for (axis, map) in maps.iter().enumerate() {
            x = apply_axis(&x, &self.dims, axis, map);
        }
        from_pair_tensor(&x, &self.dims)
    }
}

/// Expands `frame† H frame` over the product operator basis of `p`.
pub fn operator_expansion<T: Real>(h: &HermitianOperator<T>, p: &Multipartition<T>) -> Result<OperatorExpansion<T>> {
    let local = p.operator_to_local(h.matrix())?;
    Ok(expand_local(&local, p.dims()))
}

pub(crate) fn expand_local<T: Real>(local: &CMatrix<T>, dims: &[usize]) -> OperatorExpansion<T> {
    let mut x = to_pair_tensor(local, dims);
    for (axis, &d) in dims.iter().enumerate() {
        x = apply_axis(&x, dims, axis, &analysis_map(&gell_mann_basis::<T>(d)));
    }
    OperatorExpansion {
        dims: dims.to_vec(),
        coefficients: x.iter().map(|z| z.re).collect(),
    }
}

/// Inverse of [`operator_expansion`]: the operator in the computational basis.
pub fn reconstruct_operator<T: Real>(e: &OperatorExpansion<T>, p: &Multipartition<T>) -> Result<HermitianOperator<T>> {
    if e.dims() != p.dims() {
        return Err(Error::InvalidFactorization("expansion and multipartition have different factors".into()));
    }
    Ok(HermitianOperator::from_hermitian_part(&p.operator_from_local(&e.to_local_operator())?))
}

fn digits(mut x: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (f, &d) in dims.iter().enumerate().rev() {
        out[f] = x % d;
        x /= d;
    }
    out
}

/// Reorders matrix entries into a tensor over per-factor pairs
/// `(i_α, j_α) ↦ i_α·d_α + j_α`, factor 0 most significant.
fn to_pair_tensor<T: Real>(m: &CMatrix<T>, dims: &[usize]) -> Vec<C<T>> {
    let total = m.nrows();
    let mut x = vec![cr(T::zero()); total * total];
    let row_digits: Vec<Vec<usize>> = (0..total).map(|i| digits(i, dims)).collect();
    for i in 0..total {
        for j in 0..total {
            let pos = dims
                .iter()
                .enumerate()
                .fold(0usize, |acc, (f, &d)| acc * d * d + row_digits[i][f] * d + row_digits[j][f]);
            x[pos] = m[(i, j)];
        }
    }
    x
}

fn from_pair_tensor<T: Real>(x: &[C<T>], dims: &[usize]) -> CMatrix<T> {
    let total: usize = dims.iter().product();
    let row_digits: Vec<Vec<usize>> = (0..total).map(|i| digits(i, dims)).collect();
    CMatrix::from_fn(total, total, |i, j| {
        let pos = dims
            .iter()
            .enumerate()
            .fold(0usize, |acc, (f, &d)| acc * d * d + row_digits[i][f] * d + row_digits[j][f]);
        x[pos]
    })
}

/// Contracts axis `axis` (extent `d²`) of the pair tensor with `map`
/// (`out[a] = Σ_p map[a][p]·x[p]`).
fn apply_axis<T: Real>(x: &[C<T>], dims: &[usize], axis: usize, map: &[Vec<C<T>>]) -> Vec<C<T>> {
    let n = dims[axis] * dims[axis];
    let right: usize = dims[axis + 1..].iter().map(|d| d * d).product();
    let left = x.len() / (n * right);
    let mut out = vec![cr(T::zero()); x.len()];
    for l in 0..left {
        for (a, row) in map.iter().enumerate() {
            let dst = (l * n + a) * right;
            for (p, &w) in row.iter().enumerate() {
                if w == cr(T::zero()) {
                    continue;
                }
                let src = (l * n + p) * right;
                for r in 0..right {
                    out[dst + r] += w * x[src + r];
                }
            }
        }
    }
    out
}

/// Hilbert–Schmidt weight `w_k` of the terms touching exactly `k` factors.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalityProfile<T: Real> {
    pub weight_by_order: Vec<T>,
}

impl<T: Real> LocalityProfile<T> {
    pub fn total(&self) -> T {
        self.weight_by_order.iter().fold(T::zero(), |a, &w| a + w)
    }

    /// `Σ_{j>k} w_j / Σ_j w_j`, or 0 for the zero operator.
    pub fn nonlocal_fraction(&self, k: usize) -> T {
        let total = self.total();
        if total == T::zero() {
            return T::zero();
        }
        let high = self.weight_by_order.iter().skip(k + 1).fold(T::zero(), |a, &w| a + w);
        high / total
    }
}

pub fn locality_profile<T: Real>(e: &OperatorExpansion<T>) -> LocalityProfile<T> {
    let mut weight_by_order = vec![T::zero(); e.dims().len() + 1];
    for (i, &c) in e.coefficients().iter().enumerate() {
        weight_by_order[e.order(i)] += c * c;
    }
    LocalityProfile { weight_by_order }
}

/// Whether the non-local fraction beyond order `k` is at most `tol`
/// (default [`tolerance::K_LOCALITY`]), together with that fraction.
pub fn k_locality_test<T: Real>(h: &HermitianOperator<T>, p: &Multipartition<T>, k: usize, tol: Option<T>) -> Result<(bool, T)> {
    if k == 0 || k > p.n_factors() {
        return Err(Error::InvalidParameter(format!("locality order {k} outside 1..={}", p.n_factors())));
    }
    let tol = tol.unwrap_or_else(|| T::tol(tolerance::K_LOCALITY));
    let fraction = locality_profile(&operator_expansion(h, p)?).nonlocal_fraction(k);
    Ok((fraction <= tol, fraction))
}
