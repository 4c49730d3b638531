//! Dense square matrices over exact cyclotomic scalars.
//!
//! These are only ever as large as a representation's degree (desk scale),
//! so the determinant uses Laplace expansion with memoization over column
//! subsets rather than elimination: no divisions, hence no field inverses.

use crate::arith::{Cyclotomic, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    dim: usize,
    entries: Vec<Cyclotomic>, // row-major, dim * dim
}

impl CycMatrix {
    pub fn new(dim: usize, entries: Vec<Cyclotomic>) -> CycMatrix {
        assert_eq!(entries.len(), dim * dim, "matrix entry count");
        CycMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> CycMatrix {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            entries.extend(row);
        }
        CycMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> CycMatrix {
        let mut entries = vec![Cyclotomic::zero(1); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Cyclotomic::one();
        }
        CycMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Cyclotomic]> {
        self.entries.chunks(self.dim)
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = Cyclotomic::zero(1);
                for k in 0..d {
                    let a = self.at(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                entries.push(acc);
            }
        }
        CycMatrix { dim: d, entries }
    }

    pub fn transpose(&self) -> CycMatrix {
        let d = self.dim;
        let mut entries = Vec::with_capacity(d * d);
        for j in 0..d {
            for i in 0..d {
                entries.push(self.at(i, j).clone());
            }
        }
        CycMatrix { dim: d, entries }
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(1);
        for i in 0..self.dim {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    pub fn block_diag(&self, other: &CycMatrix) -> CycMatrix {
        let d = self.dim + other.dim;
        let zero = Cyclotomic::zero(1);
        let mut entries = vec![zero; d * d];
        for i in 0..self.dim {
            for j in 0..self.dim {
                entries[i * d + j] = self.at(i, j).clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                entries[(self.dim + i) * d + (self.dim + j)] = other.at(i, j).clone();
            }
        }
        CycMatrix { dim: d, entries }
    }

    /// Exact determinant by first-row Laplace expansion, memoized over the
    /// set of still-unused columns.
    pub fn det(&self) -> Cyclotomic {
        let d = self.dim;
        if d == 0 {
            return Cyclotomic::one();
        }
        assert!(d <= 20, "determinant expansion capped at dimension 20");
        let full: u32 = if d == 32 { u32::MAX } else { (1u32 << d) - 1 };
        let mut memo: Vec<Option<Cyclotomic>> = vec![None; (full as usize) + 1];
        self.det_rec(full, &mut memo)
    }

    fn det_rec(&self, mask: u32, memo: &mut Vec<Option<Cyclotomic>>) -> Cyclotomic {
        if mask == 0 {
            return Cyclotomic::one();
        }
        if let Some(v) = &memo[mask as usize] {
            return v.clone();
        }
        let row = self.dim - mask.count_ones() as usize;
        let mut acc = Cyclotomic::zero(1);
        let mut sign_plus = true;
        for j in 0..self.dim {
            if mask & (1 << j) == 0 {
                continue;
            }
            let a = self.at(row, j);
            if !a.is_zero() {
                let sub = self.det_rec(mask & !(1 << j), memo);
                let term = a.mul(&sub);
                acc = if sign_plus { acc.add(&term) } else { acc.sub(&term) };
            }
            sign_plus = !sign_plus;
        }
        memo[mask as usize] = Some(acc.clone());
        acc
    }

    /// Flattened canonical coefficients after lifting every entry to the
    /// given conductor; equal matrices produce equal keys, so this is a
    /// valid hash key within a fixed-conductor closure.
    pub fn closure_key(&self, conductor: u64) -> Vec<Rational> {
        let mut key = Vec::new();
        for e in &self.entries {
            key.extend(e.lift_to(conductor).coeffs().iter().cloned());
        }
        key
    }

    /// Least common multiple of the entry conductors.
    pub fn conductor_lcm(&self) -> u64 {
        use num_integer::Integer;
        self.entries.iter().fold(1u64, |acc, e| acc.lcm(&e.conductor()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn m2(a: i64, b: i64, c: i64, d: i64) -> CycMatrix {
        CycMatrix::from_rows(vec![
            vec![Cyclotomic::from_integer(a), Cyclotomic::from_integer(b)],
            vec![Cyclotomic::from_integer(c), Cyclotomic::from_integer(d)],
        ])
    }

    #[test]
    fn mul_and_det() {
        let a = m2(1, 2, 3, 4);
        let b = m2(0, 1, 1, 0);
        assert_eq!(a.mul(&b), m2(2, 1, 4, 3));
        assert_eq!(a.det().as_rational().unwrap(), rat(-2));
        assert_eq!(CycMatrix::identity(4).det().as_rational().unwrap(), rat(1));
    }

    #[test]
    fn quaternion_generator_relations() {
        // g = diag(i, -i), h = ((0,1),(-1,0)): g^2 = h^2 = -1, ghgh = -1... enough
        // to sanity-check multiplication over genuine cyclotomic entries.
        let i = Cyclotomic::root_of_unity(4, 1);
        let g = CycMatrix::from_rows(vec![
            vec![i.clone(), Cyclotomic::zero(1)],
            vec![Cyclotomic::zero(1), i.neg()],
        ]);
        let h = m2(0, 1, -1, 0);
        let minus_one = m2(-1, 0, 0, -1);
        assert_eq!(g.mul(&g), minus_one);
        assert_eq!(h.mul(&h), minus_one);
        assert_eq!(g.det().as_rational().unwrap(), rat(1));
        assert!(g.trace().is_zero());
        // gh = -hg
        let gh = g.mul(&h);
        let hg = h.mul(&g);
        assert_eq!(gh, CycMatrix::from_rows(vec![
            vec![Cyclotomic::zero(1), i.clone()],
            vec![i.clone(), Cyclotomic::zero(1)],
        ]));
        let neg_hg = CycMatrix::from_rows(
            hg.rows().map(|r| r.iter().map(|e| e.neg()).collect()).collect(),
        );
        assert_eq!(gh, neg_hg);
    }

    #[test]
    fn block_diag_trace_adds() {
        let a = m2(1, 0, 0, 2);
        let b = m2(3, 0, 0, 4);
        let s = a.block_diag(&b);
        assert_eq!(s.dim(), 4);
        assert_eq!(s.trace().as_rational().unwrap(), rat(10));
    }
}
