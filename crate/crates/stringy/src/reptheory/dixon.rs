//! Dixon-Schneider character tables.
//!
//! Work modulo the smallest prime `p = 1 (mod exponent)` with
//! `p > 2 sqrt(|G|)`. The class-algebra structure-constant matrices commute
//! and are semisimple over F_p (p does not divide |G|), and the common
//! eigenvectors are in bijection with the irreducible characters: the
//! eigenvector for chi carries `omega(i) = |C_i| chi(g_i) / chi(1)`.
//! Degrees are recovered from the second orthogonality relation, and the
//! character values are lifted to exact cyclotomics by inverting the
//! discrete Fourier transform of the power-map traces against a fixed
//! element of order `exponent` in F_p*.

use std::sync::Arc;

use num_traits::Zero;

use crate::arith::{Cyclotomic, Rational};
use crate::group::FiniteGroup;

use super::RepError;

struct Fp {
    p: u64,
}

impl Fp {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p), "inverting zero mod p");
        self.pow(a, self.p - 2)
    }
}

/// Dense matrix over F_p, row-major.
#[derive(Clone)]
struct FpMat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FpMat {
    fn zero(rows: usize, cols: usize) -> FpMat {
        FpMat { rows, cols, data: vec![0; rows * cols] }
    }

    fn identity(n: usize) -> FpMat {
        let mut m = FpMat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    fn at(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    fn mul(&self, other: &FpMat, fp: &Fp) -> FpMat {
        assert_eq!(self.cols, other.rows);
        let mut out = FpMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = fp.add(out.at(i, j), fp.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// In-place row reduction; returns the pivot column of each pivot row.
    fn rref(&mut self, fp: &Fp) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.at(r, col) != 0) else {
                continue;
            };
            for j in 0..self.cols {
                let tmp = self.at(row, j);
                self.set(row, j, self.at(pr, j));
                self.set(pr, j, tmp);
            }
            let inv = fp.inv(self.at(row, col));
            for j in 0..self.cols {
                self.set(row, j, fp.mul(self.at(row, j), inv));
            }
            for r in 0..self.rows {
                if r != row && self.at(r, col) != 0 {
                    let factor = self.at(r, col);
                    for j in 0..self.cols {
                        let v = fp.sub(self.at(r, j), fp.mul(factor, self.at(row, j)));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Columns spanning the kernel.
    fn kernel(&self, fp: &Fp) -> FpMat {
        let mut work = self.clone();
        let pivots = work.rref(fp);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FpMat::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, 1);
            for (prow, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, fp.sub(0, work.at(prow, fc)));
            }
        }
        basis
    }
}

/// Restriction of `m` to the invariant subspace spanned by the columns of
/// `basis`: the matrix `r` with `basis * r = m * basis`.
fn restrict(m: &FpMat, basis: &FpMat, fp: &Fp) -> Result<FpMat, RepError> {
    let target = m.mul(basis, fp);
    let d = basis.cols;
    let mut aug = FpMat::zero(basis.rows, 2 * d);
    for i in 0..basis.rows {
        for j in 0..d {
            aug.set(i, j, basis.at(i, j));
            aug.set(i, d + j, target.at(i, j));
        }
    }
    let pivots = aug.rref(fp);
    if pivots.len() != d || pivots.iter().any(|&c| c >= d) {
        return Err(RepError::InternalInconsistency("subspace basis is degenerate".into()));
    }
    let mut r = FpMat::zero(d, d);
    for (prow, _) in pivots.iter().enumerate() {
        for j in 0..d {
            r.set(prow, j, aug.at(prow, d + j));
        }
    }
    // Rows below the pivots must be zero on the target side or the
    // subspace was not invariant.
    for i in d..basis.rows {
        for j in 0..d {
            if aug.at(i, d + j) != 0 {
                return Err(RepError::InternalInconsistency(
                    "subspace not invariant under class matrix".into(),
                ));
            }
        }
    }
    Ok(r)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn choose_prime(exponent: u64, order: usize) -> Result<u64, RepError> {
    let bound_sq = 4 * order as u64; // p > 2 sqrt(n)  <=>  p^2 > 4n
    let mut k = 1u64;
    loop {
        let cand = k * exponent + 1;
        if cand * cand > bound_sq && is_prime(cand) {
            return Ok(cand);
        }
        k += 1;
        if k * exponent > 10_000_000 {
            return Err(RepError::InternalInconsistency(
                "no usable Dixon prime below 10^7".into(),
            ));
        }
    }
}

fn primitive_root(fp: &Fp) -> u64 {
    let p = fp.p;
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'outer: for w in 2..p {
        for &q in &factors {
            if fp.pow(w, (p - 1) / q) == 1 {
                continue 'outer;
            }
        }
        return w;
    }
    unreachable!("every prime field has a primitive root")
}

/// Unsorted rows `(degree, value per class)` of the character table.
pub(super) fn dixon_rows(
    group: &Arc<FiniteGroup>,
) -> Result<Vec<(usize, Vec<Cyclotomic>)>, RepError> {
    let n = group.order();
    let classes = group.conjugacy_classes();
    let r = classes.len();
    let e = group.exponent();
    let fp = Fp { p: choose_prime(e, n)? };
    let p = fp.p;

    let inv_class: Vec<usize> = classes
        .iter()
        .map(|c| group.class_of(group.inv(c.representative)) as usize)
        .collect();

    // Class-algebra structure constants. The eigenvector equation reads
    // (M_i v)_j = sum_k a_{ijk} v_k = omega(i) v_j with
    // a_{ijk} = #{x in C_i : x^{-1} z_k in C_j}.
    let mut mats = Vec::with_capacity(r);
    for i in 0..r {
        let mut m = FpMat::zero(r, r);
        for (k, ck) in classes.iter().enumerate() {
            let zk = ck.representative;
            for &x in &classes[i].members {
                let j = group.class_of(group.mul(group.inv(x), zk)) as usize;
                m.set(j, k, fp.add(m.at(j, k), 1));
            }
        }
        mats.push(m);
    }

    // Split the full space into common eigenlines.
    let mut spaces = vec![FpMat::identity(r)];
    for mat in mats.iter().skip(1) {
        if spaces.iter().all(|s| s.cols == 1) {
            break;
        }
        let mut next = Vec::new();
        for space in &spaces {
            if space.cols == 1 {
                next.push(space.clone());
                continue;
            }
            let restr = restrict(mat, space, &fp)?;
            let mut found = 0;
            for lambda in 0..p {
                let mut shifted = restr.clone();
                for i in 0..shifted.rows {
                    let v = fp.sub(shifted.at(i, i), lambda);
                    shifted.set(i, i, v);
                }
                let ker = shifted.kernel(&fp);
                if ker.cols > 0 {
                    found += ker.cols;
                    next.push(space.mul(&ker, &fp));
                }
                if found == space.cols {
                    break;
                }
            }
            if found != space.cols {
                return Err(RepError::InternalInconsistency(
                    "class matrix failed to split a subspace".into(),
                ));
            }
        }
        spaces = next;
    }
    if spaces.len() != r || spaces.iter().any(|s| s.cols != 1) {
        return Err(RepError::InternalInconsistency(format!(
            "expected {r} common eigenlines, found {}",
            spaces.len()
        )));
    }

    let size_inv: Vec<u64> =
        classes.iter().map(|c| fp.inv(c.members.len() as u64 % p)).collect();
    let n_mod = n as u64 % p;

    let mut rows = Vec::with_capacity(r);
    for space in &spaces {
        let raw: Vec<u64> = (0..r).map(|i| space.at(i, 0)).collect();
        if raw[0] == 0 {
            return Err(RepError::InternalInconsistency(
                "eigenvector vanishes on the identity class".into(),
            ));
        }
        let norm = fp.inv(raw[0]);
        let omega: Vec<u64> = raw.iter().map(|&v| fp.mul(v, norm)).collect();

        // 1/d^2 = (1/n) sum_i omega(i) omega(i*) / |C_i|.
        let mut s = 0u64;
        for i in 0..r {
            s = fp.add(s, fp.mul(fp.mul(omega[i], omega[inv_class[i]]), size_inv[i]));
        }
        if s == 0 {
            return Err(RepError::InternalInconsistency("degree norm vanished".into()));
        }
        let d_sq = fp.mul(n_mod, fp.inv(s));
        let d = (1..p)
            .find(|&t| fp.mul(t, t) == d_sq && t * t <= n as u64)
            .ok_or_else(|| {
                RepError::InternalInconsistency("no degree square root below sqrt(|G|)".into())
            })?;

        let chi_mod: Vec<u64> =
            (0..r).map(|i| fp.mul(fp.mul(d, omega[i]), size_inv[i])).collect();
        rows.push((d as usize, chi_mod));
    }

    // Lift to exact cyclotomic values.
    let w = primitive_root(&fp);
    let z = fp.pow(w, (p - 1) / e);
    debug_assert_eq!(fp.pow(z, e), 1);

    let power_class: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let m = group.order_of(c.representative);
            (0..m)
                .map(|j| group.class_of(group.pow(c.representative, j as i64)) as usize)
                .collect()
        })
        .collect();

    let mut out = Vec::with_capacity(r);
    for (d, chi_mod) in rows {
        let mut values = Vec::with_capacity(r);
        for (i, c) in classes.iter().enumerate() {
            let m = group.order_of(c.representative);
            let zi = fp.pow(z, e / m);
            let m_inv = fp.inv(m % p);
            let mut raw = vec![Rational::zero(); m as usize];
            for (k, slot) in raw.iter_mut().enumerate() {
                let mut acc = 0u64;
                for (j, &cls) in power_class[i].iter().enumerate() {
                    let expo = (m - (k as u64 * j as u64) % m) % m;
                    acc = fp.add(acc, fp.mul(chi_mod[cls], fp.pow(zi, expo)));
                }
                let mu = fp.mul(acc, m_inv);
                if mu as usize > d {
                    return Err(RepError::InternalInconsistency(format!(
                        "lifted multiplicity {mu} exceeds degree {d}"
                    )));
                }
                *slot = Rational::from_integer(mu.into());
            }
            let total: Rational = raw.iter().cloned().sum();
            if total != Rational::from_integer((d as i64).into()) {
                return Err(RepError::InternalInconsistency(
                    "lifted multiplicities do not sum to the degree".into(),
                ));
            }
            values.push(Cyclotomic::reduce(raw, m));
        }
        out.push((d, values));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_choice_examples() {
        // exponent 4, |G| = 8: need p = 1 mod 4 and p > 2 sqrt(8) ~ 5.66.
        assert_eq!(choose_prime(4, 8).unwrap(), 13);
        // exponent 60, |G| = 720: p = 61.
        assert_eq!(choose_prime(60, 720).unwrap(), 61);
        // exponent 6, |G| = 6: 7 > 2 sqrt(6) ~ 4.9.
        assert_eq!(choose_prime(6, 6).unwrap(), 7);
        assert_eq!(choose_prime(12, 24).unwrap(), 13);
    }

    #[test]
    fn primitive_roots_have_full_order() {
        for p in [3u64, 7, 13, 61] {
            let fp = Fp { p };
            let w = primitive_root(&fp);
            let mut seen = vec![false; p as usize];
            let mut x = 1u64;
            for _ in 0..p - 1 {
                assert!(!seen[x as usize]);
                seen[x as usize] = true;
                x = fp.mul(x, w);
            }
            assert_eq!(x, 1);
        }
    }

    #[test]
    fn kernel_and_restrict_roundtrip() {
        let fp = Fp { p: 13 };
        // A projection-like matrix: kernel dimension 1.
        let mut m = FpMat::zero(2, 2);
        m.set(0, 0, 1);
        let k = m.kernel(&fp);
        assert_eq!(k.cols, 1);
        assert_eq!(m.mul(&k, &fp).data, vec![0, 0]);
    }
}
