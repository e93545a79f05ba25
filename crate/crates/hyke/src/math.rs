//! Dense vector primitives shared by every score function.
//!
//! All arithmetic is 64-bit floating point. The functions here are pure and
//! safe to call from any number of threads.

use crate::error::{Error, Result};

/// Sum of the element-wise product of the input vectors.
///
/// `dotsum(v1, ..., vk) = sum_i v1[i] * v2[i] * ... * vk[i]`. With two inputs
/// this is the ordinary inner product; the variadic form is the generalized
/// inner product used by every model in this crate.
pub fn dotsum(vectors: &[&[f64]]) -> Result<f64> {
    let first = vectors
        .first()
        .ok_or_else(|| Error::Invalid("dotsum requires at least one vector".into()))?;
    let len = first.len();
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != len {
            return Err(Error::Dimension {
                op: "dotsum",
                index,
                expected: len,
                found: v.len(),
            });
        }
    }
    let mut acc = 0.0;
    for i in 0..len {
        let mut term = 1.0;
        for v in vectors {
            term *= v[i];
        }
        acc += term;
    }
    Ok(acc)
}

/// Circular left rotation by `x` steps: `out[t] = v[(t + x) mod len]`.
///
/// `x` may exceed the vector length; it is reduced modulo the length.
pub fn circshift(v: &[f64], x: usize) -> Vec<f64> {
    if v.is_empty() {
        return Vec::new();
    }
    let x = x % v.len();
    let mut out = Vec::with_capacity(v.len());
    out.extend_from_slice(&v[x..]);
    out.extend_from_slice(&v[..x]);
    out
}

/// Feature map size of a valid (no padding) 1D convolution:
/// `q = floor((d - l) / s) + 1`. Caller guarantees `l <= d` and `s >= 1`.
pub fn feature_map_size(dim: usize, filter_len: usize, stride: usize) -> usize {
    (dim - filter_len) / stride + 1
}

/// Valid 1D cross-correlation of `v` with filter `w` at the given stride.
///
/// `out[t] = sum_u v[t*s + u] * w[u]` for `t = 0..q-1` where
/// `q = floor((d - l) / s) + 1`. No kernel flipping, no padding.
pub fn conv1d(v: &[f64], w: &[f64], stride: usize) -> Result<Vec<f64>> {
    if stride == 0 {
        return Err(Error::Invalid("conv1d stride must be positive".into()));
    }
    if w.is_empty() {
        return Err(Error::Invalid("conv1d filter must be nonempty".into()));
    }
    if w.len() > v.len() {
        return Err(Error::Dimension {
            op: "conv1d",
            index: 1,
            expected: v.len(),
            found: w.len(),
        });
    }
    let q = feature_map_size(v.len(), w.len(), stride);
    let mut out = Vec::with_capacity(q);
    for t in 0..q {
        let base = t * stride;
        let mut acc = 0.0;
        for (u, &wu) in w.iter().enumerate() {
            acc += v[base + u] * wu;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Central-difference gradient estimate of `f` at `x`:
/// `(f(x + eps*u_i) - f(x - eps*u_i)) / (2*eps)` per coordinate.
///
/// Test oracle for the analytic gradients; `eps` around 1e-5 works well for
/// the smooth multilinear scores in this crate.
pub fn finite_diff_grad<F>(f: F, x: &[f64], eps: f64) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let mut probe = x.to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        probe[i] = x[i] + eps;
        let hi = f(&probe);
        probe[i] = x[i] - eps;
        let lo = f(&probe);
        probe[i] = x[i];
        grad.push((hi - lo) / (2.0 * eps));
    }
    grad
}
