//! Representations as exact cyclotomic matrices, characters, fixed-subspace
//! dimensions, irreducible character tables, and restriction multiplicities.
//!
//! Character tables come from the Dixon-Schneider algorithm: the class
//! algebra is diagonalized over F_p for the smallest prime p with
//! `p = 1 (mod exponent)` and `p > 2 sqrt(|G|)`, and the eigenvalues are
//! lifted to exact cyclotomic values by discrete Fourier inversion against
//! a fixed element of order `exponent` in F_p. Abelian groups with a small
//! generating set take a direct shortcut instead. Either way the finished
//! table is verified against exact row and column orthogonality.

mod dixon;

use std::sync::{Arc, OnceLock};

use num_traits::Signed;
use thiserror::Error;

use crate::arith::{rat, ArithError, Cyclotomic, Rational};
use crate::group::{FiniteGroup, GroupError, ProductGroup, Provenance, SubgroupRef};
use crate::matrix::CycMatrix;

/// Cap on |G| * dim^2 for eagerly stored representation matrices.
pub const REPRESENTATION_ENTRY_CAP: usize = 10_000_000;

/// Abelian character shortcut is used only while the product of generator
/// orders stays below this; beyond it Dixon is cheaper.
const ABELIAN_CANDIDATE_CAP: u128 = 10_000;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("matrices do not define a homomorphism: rho(x*g) != rho(x)rho(g) at x={x}, g={g}")]
    NotAHomomorphism { x: u32, g: u32 },
    #[error("expected a non-negative integer, got {0}")]
    NotAnInteger(String),
    #[error("representations live over different groups")]
    GroupMismatch,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl From<ArithError> for RepError {
    fn from(e: ArithError) -> Self {
        RepError::NotAnInteger(e.to_string())
    }
}

/// A representation with one exact matrix per group element.
pub struct Representation {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<CycMatrix>,
    label: String,
    character: OnceLock<ClassFunction>,
}

impl Representation {
    /// Extends generator matrices along the breadth-first words and
    /// validates the homomorphism property on generators x all elements.
    pub fn build(
        group: Arc<FiniteGroup>,
        generator_matrices: Vec<CycMatrix>,
        label: impl Into<String>,
    ) -> Result<Representation, RepError> {
        let gens = group.generators();
        if generator_matrices.len() != gens.len() {
            return Err(RepError::InternalInconsistency(format!(
                "expected {} generator matrices, got {}",
                gens.len(),
                generator_matrices.len()
            )));
        }
        if generator_matrices.is_empty() {
            return Self::trivial_of_dim(group, 0, label);
        }
        let dim = generator_matrices[0].dim();
        if generator_matrices.iter().any(|m| m.dim() != dim) {
            return Err(RepError::InternalInconsistency("generator matrix sizes differ".into()));
        }
        let n = group.order();
        if n * dim * dim > REPRESENTATION_ENTRY_CAP {
            return Err(RepError::InternalInconsistency(format!(
                "representation storage {}x{}x{} exceeds cap",
                n, dim, dim
            )));
        }
        let mut matrices = Vec::with_capacity(n);
        matrices.push(CycMatrix::identity(dim));
        for idx in 1..n as u32 {
            let (parent, s) = group.derivation(idx).expect("non-identity element has a word");
            let m = matrices[parent as usize].mul(&generator_matrices[s as usize]);
            matrices.push(m);
        }
        let rep = Representation {
            group,
            dim,
            matrices,
            label: label.into(),
            character: OnceLock::new(),
        };
        rep.validate_homomorphism()?;
        Ok(rep)
    }

    /// The d-dimensional trivial representation (identity everywhere).
    pub fn trivial_of_dim(
        group: Arc<FiniteGroup>,
        dim: usize,
        label: impl Into<String>,
    ) -> Result<Representation, RepError> {
        let n = group.order();
        if n * dim * dim > REPRESENTATION_ENTRY_CAP {
            return Err(RepError::InternalInconsistency("trivial representation exceeds cap".into()));
        }
        let matrices = vec![CycMatrix::identity(dim); n];
        Ok(Representation { group, dim, matrices, label: label.into(), character: OnceLock::new() })
    }

    pub(crate) fn from_element_matrices(
        group: Arc<FiniteGroup>,
        matrices: Vec<CycMatrix>,
        label: impl Into<String>,
    ) -> Result<Representation, RepError> {
        let dim = matrices.first().map(|m| m.dim()).unwrap_or(0);
        let rep = Representation {
            group,
            dim,
            matrices,
            label: label.into(),
            character: OnceLock::new(),
        };
        rep.validate_homomorphism()?;
        Ok(rep)
    }

    fn validate_homomorphism(&self) -> Result<(), RepError> {
        let g = &self.group;
        for x in 0..g.order() as u32 {
            for (s, &gen) in g.generators().iter().enumerate() {
                let lhs = &self.matrices[g.mul(x, gen) as usize];
                let rhs = self.matrices[x as usize].mul(&self.matrices[gen as usize]);
                if *lhs != rhs {
                    let _ = s;
                    return Err(RepError::NotAHomomorphism { x, g: gen });
                }
            }
        }
        Ok(())
    }

    /// The regular representation: permutation matrices of left translation.
    pub fn regular(group: Arc<FiniteGroup>) -> Result<Representation, RepError> {
        let n = group.order();
        if n * n * n > REPRESENTATION_ENTRY_CAP {
            return Err(RepError::InternalInconsistency("regular representation exceeds cap".into()));
        }
        let mut matrices = Vec::with_capacity(n);
        for g in 0..n as u32 {
            let mut rows = vec![vec![Cyclotomic::zero(1); n]; n];
            for j in 0..n as u32 {
                rows[group.mul(g, j) as usize][j as usize] = Cyclotomic::one();
            }
            matrices.push(CycMatrix::from_rows(rows));
        }
        Representation::from_element_matrices(group, matrices, "reg")
    }

    /// The natural permutation representation, for permutation provenance.
    pub fn permutation_natural(group: Arc<FiniteGroup>) -> Result<Representation, RepError> {
        let images = group
            .perm_images()
            .ok_or_else(|| {
                RepError::InternalInconsistency(
                    "natural permutation representation needs permutation provenance".into(),
                )
            })?
            .to_vec();
        let mut matrices = Vec::with_capacity(group.order());
        for p in &images {
            let d = p.degree();
            let mut rows = vec![vec![Cyclotomic::zero(1); d]; d];
            for j in 0..d as u32 {
                rows[p.apply(j) as usize][j as usize] = Cyclotomic::one();
            }
            matrices.push(CycMatrix::from_rows(rows));
        }
        Representation::from_element_matrices(group, matrices, "perm")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self, g: u32) -> &CycMatrix {
        &self.matrices[g as usize]
    }

    /// The character: trace at one representative per conjugacy class.
    pub fn character(&self) -> &ClassFunction {
        self.character.get_or_init(|| {
            let values = self
                .group
                .conjugacy_classes()
                .iter()
                .map(|c| self.matrices[c.representative as usize].trace())
                .collect();
            ClassFunction { group: self.group.clone(), values }
        })
    }

    /// dim of the subspace fixed by the subgroup generated by `elements`.
    pub fn dim_fixed(&self, elements: &[u32]) -> Result<usize, RepError> {
        self.character().dim_fixed(elements)
    }

    /// Direct sum over the same group.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, RepError> {
        if !same_group(&self.group, &other.group) {
            return Err(RepError::GroupMismatch);
        }
        let matrices = self
            .matrices
            .iter()
            .zip(other.matrices.iter())
            .map(|(a, b)| a.block_diag(b))
            .collect();
        Ok(Representation {
            group: self.group.clone(),
            dim: self.dim + other.dim,
            matrices,
            label: format!("{}+{}", self.label, other.label),
            character: OnceLock::new(),
        })
    }

    /// The dual: `rho*(g) = transpose(rho(g^{-1}))`. No unitarity assumed.
    pub fn dual(&self) -> Representation {
        let g = &self.group;
        let matrices = (0..g.order() as u32)
            .map(|x| self.matrices[g.inv(x) as usize].transpose())
            .collect();
        Representation {
            group: self.group.clone(),
            dim: self.dim,
            matrices,
            label: format!("{}*", self.label),
            character: OnceLock::new(),
        }
    }

    /// External sum: `V (+) W` over `G x H`, block diagonal at each pair.
    pub fn external_sum(
        v: &Representation,
        w: &Representation,
        product: &ProductGroup,
    ) -> Result<Representation, RepError> {
        if !same_group(&v.group, &product.left) || !same_group(&w.group, &product.right) {
            return Err(RepError::GroupMismatch);
        }
        let group = product.group.clone();
        let matrices = (0..group.order() as u32)
            .map(|idx| {
                let (a, b) = product.pair_of(idx);
                v.matrices[a as usize].block_diag(&w.matrices[b as usize])
            })
            .collect();
        Ok(Representation {
            group,
            dim: v.dim + w.dim,
            matrices,
            label: format!("{}(x){}", v.label, w.label),
            character: OnceLock::new(),
        })
    }

    /// Whether every element acts with determinant 1.
    pub fn is_sl(&self) -> bool {
        self.group.conjugacy_classes().iter().all(|c| {
            self.matrices[c.representative as usize].det() == Cyclotomic::one()
        })
    }
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b)
}

/// A function constant on conjugacy classes, one value per class.
#[derive(Clone)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<Cyclotomic>) -> ClassFunction {
        assert_eq!(values.len(), group.conjugacy_classes().len());
        ClassFunction { group, values }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value_at(&self, g: u32) -> &Cyclotomic {
        &self.values[self.group.class_of(g) as usize]
    }

    pub fn conjugate(&self) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v.conjugate()).collect(),
        }
    }

    /// `(1/|G|) sum_g chi(g) conj(psi(g))`, evaluated classwise.
    pub fn inner(&self, other: &ClassFunction) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(1);
        for (c, (a, b)) in self
            .group
            .conjugacy_classes()
            .iter()
            .zip(self.values.iter().zip(other.values.iter()))
        {
            let term = a.mul(&b.conjugate()).scale(&rat(c.members.len() as i64));
            acc = acc.add(&term);
        }
        acc.scale(&Rational::new(1.into(), (self.group.order() as i64).into()))
    }

    /// dim of the fixed subspace of the subgroup generated by `elements`,
    /// via `(1/|H|) sum_{h in H} chi(h)`.
    pub fn dim_fixed(&self, elements: &[u32]) -> Result<usize, RepError> {
        let sub = self.group.subgroup_generated(elements);
        self.dim_fixed_subgroup(&sub)
    }

    pub fn dim_fixed_subgroup(&self, sub: &SubgroupRef) -> Result<usize, RepError> {
        let mut acc = Cyclotomic::zero(1);
        for &h in &sub.elements {
            acc = acc.add(&self.values[self.group.class_of(h) as usize]);
        }
        let avg = acc.scale(&Rational::new(1.into(), (sub.order() as i64).into()));
        rational_to_count(&avg.as_rational()?)
    }
}

fn rational_to_count(r: &Rational) -> Result<usize, RepError> {
    if !r.is_integer() || r.is_negative() {
        return Err(RepError::NotAnInteger(r.to_string()));
    }
    usize::try_from(r.to_integer())
        .map_err(|_| RepError::NotAnInteger(r.to_string()))
}

/// The full table of irreducible characters of a group.
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    rows: Vec<ClassFunction>,
    dims: Vec<usize>,
    trivial_row: usize,
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum TableMethod {
    /// Abelian shortcut when applicable, Dixon-Schneider otherwise.
    Auto,
    /// Force the Dixon-Schneider path.
    Dixon,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rows(&self) -> &[ClassFunction] {
        &self.rows
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Index of the trivial character.
    pub fn trivial_row(&self) -> usize {
        self.trivial_row
    }

    /// Exact row and column orthogonality plus the degree sum; returns an
    /// `InternalInconsistency` if any identity fails.
    pub fn verify_orthogonality(&self) -> Result<(), RepError> {
        let n = self.group.order() as i64;
        let r = self.rows.len();
        let classes = self.group.conjugacy_classes();
        if r != classes.len() {
            return Err(RepError::InternalInconsistency("row count != class count".into()));
        }
        let sq: usize = self.dims.iter().map(|d| d * d).sum();
        if sq != n as usize {
            return Err(RepError::InternalInconsistency(format!(
                "sum of squared degrees {sq} != group order {n}"
            )));
        }
        for s in 0..r {
            for t in 0..r {
                let ip = self.rows[s].inner(&self.rows[t]);
                let expect = if s == t { rat(1) } else { rat(0) };
                if ip.as_rational().ok() != Some(expect) {
                    return Err(RepError::InternalInconsistency(format!(
                        "row orthogonality fails at rows {s}, {t}"
                    )));
                }
            }
        }
        for (i, class_i) in classes.iter().enumerate() {
            for j in 0..r {
                let mut acc = Cyclotomic::zero(1);
                for row in &self.rows {
                    acc = acc.add(&row.values()[i].mul(&row.values()[j].conjugate()));
                }
                let expect = if i == j {
                    rat(n / class_i.members.len() as i64)
                } else {
                    rat(0)
                };
                if acc.as_rational().ok() != Some(expect) {
                    return Err(RepError::InternalInconsistency(format!(
                        "column orthogonality fails at classes {i}, {j}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Computes the irreducible character table, rows sorted by degree and then
/// by descending lexicographic value order (so the trivial character leads).
pub fn character_table(group: &Arc<FiniteGroup>) -> Result<CharacterTable, RepError> {
    character_table_with(group, TableMethod::Auto)
}

pub fn character_table_with(
    group: &Arc<FiniteGroup>,
    method: TableMethod,
) -> Result<CharacterTable, RepError> {
    let raw = if group.order() == 1 {
        vec![(1usize, vec![Cyclotomic::one()])]
    } else {
        let candidates: u128 = group
            .generators()
            .iter()
            .map(|&g| group.order_of(g) as u128)
            .product();
        let use_shortcut = method == TableMethod::Auto
            && group.is_abelian()
            && candidates <= ABELIAN_CANDIDATE_CAP;
        if use_shortcut {
            abelian_rows(group)?
        } else {
            dixon::dixon_rows(group)?
        }
    };
    let mut rows: Vec<(usize, Vec<Cyclotomic>)> = raw;
    rows.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            for (x, y) in a.1.iter().zip(b.1.iter()) {
                match y.cmp_canonical(x) {
                    std::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            std::cmp::Ordering::Equal
        })
    });
    let dims: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let rows: Vec<ClassFunction> = rows
        .into_iter()
        .map(|(_, values)| ClassFunction::new(group.clone(), values))
        .collect();
    let trivial_row = rows
        .iter()
        .position(|r| r.values().iter().all(|v| *v == Cyclotomic::one()))
        .ok_or_else(|| RepError::InternalInconsistency("no trivial character found".into()))?;
    let table = CharacterTable { group: group.clone(), rows, dims, trivial_row };
    table.verify_orthogonality()?;
    Ok(table)
}

/// Characters of an abelian group, directly from its cyclic generator data:
/// every candidate assignment of roots of unity to generators that extends
/// to a homomorphism along the word table is a character, and there are
/// exactly |G| of them.
fn abelian_rows(group: &Arc<FiniteGroup>) -> Result<Vec<(usize, Vec<Cyclotomic>)>, RepError> {
    let n = group.order();
    let e = group.exponent();
    let gens = group.generators();
    let orders: Vec<u64> = gens.iter().map(|&g| group.order_of(g)).collect();
    let roots: Vec<Cyclotomic> =
        (0..e).map(|k| Cyclotomic::root_of_unity(e, k as i64)).collect();

    let mut rows = Vec::new();
    let mut counter = vec![0u64; gens.len()];
    loop {
        // Exponent (base zeta_e) assigned to each generator position.
        let gen_exp: Vec<u64> =
            counter.iter().zip(&orders).map(|(&c, &o)| (e / o) * c % e).collect();
        // Extend along breadth-first words.
        let mut exps = vec![0u64; n];
        let mut consistent = true;
        for idx in 1..n as u32 {
            let word = group.word_of(idx);
            let mut a = 0u64;
            for &s in &word {
                a = (a + gen_exp[s as usize]) % e;
            }
            exps[idx as usize] = a;
        }
        // Multiplicativity on (element, generator) pairs settles the rest.
        'check: for x in 0..n as u32 {
            for (s, &g) in gens.iter().enumerate() {
                let y = group.mul(x, g);
                if (exps[x as usize] + gen_exp[s]) % e != exps[y as usize] {
                    consistent = false;
                    break 'check;
                }
            }
        }
        if consistent {
            let values: Vec<Cyclotomic> = group
                .conjugacy_classes()
                .iter()
                .map(|c| roots[exps[c.representative as usize] as usize].clone())
                .collect();
            rows.push((1usize, values));
        }
        // Mixed-radix increment.
        let mut pos = 0;
        loop {
            if pos == counter.len() {
                if rows.len() != n {
                    return Err(RepError::InternalInconsistency(format!(
                        "abelian shortcut found {} characters, expected {n}",
                        rows.len()
                    )));
                }
                return Ok(rows);
            }
            counter[pos] += 1;
            if counter[pos] < orders[pos] {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
}

/// Multiplicities `t_i` of the irreducibles of `H` in the restriction of a
/// class function to `H`; the class function is given over the parent group
/// and `to_parent` maps local indices into it.
pub fn restriction_multiplicities(
    ambient: &ClassFunction,
    local_table: &CharacterTable,
    to_parent: &[u32],
) -> Result<Vec<usize>, RepError> {
    let local = local_table.group();
    let h = local.order();
    let classes = local.conjugacy_classes();
    let mut out = Vec::with_capacity(local_table.len());
    for row in local_table.rows() {
        let mut acc = Cyclotomic::zero(1);
        for (c, chi_i) in classes.iter().zip(row.values()) {
            let parent_val = ambient.value_at(to_parent[c.representative as usize]);
            let term =
                parent_val.mul(&chi_i.conjugate()).scale(&rat(c.members.len() as i64));
            acc = acc.add(&term);
        }
        let t = acc.scale(&Rational::new(1.into(), (h as i64).into()));
        out.push(rational_to_count(&t.as_rational()?)?);
    }
    Ok(out)
}

/// Spec-level convenience: restriction multiplicities of a representation
/// to a subgroup, building the local group and its table on the spot.
pub fn irrep_multiplicities(
    v: &Representation,
    sub: &SubgroupRef,
) -> Result<Vec<usize>, RepError> {
    let (local, to_parent) = v.group().subgroup_as_group(sub)?;
    let table = character_table(&local)?;
    let t = restriction_multiplicities(v.character(), &table, &to_parent)?;
    let total: usize = t.iter().zip(table.dims()).map(|(ti, di)| ti * di).sum();
    if total != v.dim() {
        return Err(RepError::InternalInconsistency(format!(
            "restriction multiplicities sum to {total}, expected dim {}",
            v.dim()
        )));
    }
    Ok(t)
}

/// Matrix-generated group together with its tautological representation.
pub fn matrix_group(
    generator_matrices: Vec<CycMatrix>,
    cap: usize,
    label: impl Into<String>,
) -> Result<(Arc<FiniteGroup>, Representation), RepError> {
    if generator_matrices.is_empty() {
        return Err(RepError::InternalInconsistency(
            "matrix closure needs at least one generator".into(),
        ));
    }
    let dim = generator_matrices[0].dim();
    if generator_matrices.iter().any(|m| m.dim() != dim) {
        return Err(RepError::Group(GroupError::NotAGroup("matrix sizes differ".into())));
    }
    for m in &generator_matrices {
        if m.det().is_zero() {
            return Err(RepError::Group(GroupError::NotAGroup(
                "generator matrix is singular".into(),
            )));
        }
        // Finite order is required before attempting closure.
        let identity = CycMatrix::identity(dim);
        let mut power = m.clone();
        let mut steps = 1usize;
        while power != identity {
            power = power.mul(m);
            steps += 1;
            if steps > cap {
                return Err(RepError::Group(GroupError::InfiniteOrder { cap }));
            }
        }
    }
    let conductor = generator_matrices
        .iter()
        .fold(1u64, |acc, m| num_integer::Integer::lcm(&acc, &m.conductor_lcm()));
    let raw = crate::group::close_and_tabulate(
        CycMatrix::identity(dim),
        &generator_matrices,
        |a, b| a.mul(b),
        |m| m.closure_key(conductor),
        cap,
    )?;
    let group = FiniteGroup::from_closure_parts(
        raw.table,
        raw.words,
        raw.gen_elem,
        Provenance::MatrixClosure { dim },
    )?;
    let rep = Representation::from_element_matrices(group.clone(), raw.elements, label)?;
    Ok((group, rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{Permutation, DEFAULT_CLOSURE_CAP};
    use num_traits::Zero;

    pub(crate) fn quaternion() -> (Arc<FiniteGroup>, Representation) {
        let i = Cyclotomic::root_of_unity(4, 1);
        let zero = Cyclotomic::zero(1);
        let g = CycMatrix::from_rows(vec![
            vec![i.clone(), zero.clone()],
            vec![zero.clone(), i.conjugate()],
        ]);
        let h = CycMatrix::from_rows(vec![
            vec![zero.clone(), Cyclotomic::one()],
            vec![Cyclotomic::from_integer(-1), zero],
        ]);
        matrix_group(vec![g, h], DEFAULT_CLOSURE_CAP, "Q").unwrap()
    }

    fn s3() -> Arc<FiniteGroup> {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        FiniteGroup::from_permutations(vec![a, b], DEFAULT_CLOSURE_CAP).unwrap()
    }

    fn linear_q8(group: &Arc<FiniteGroup>, on_g: i64, on_h: i64, label: &str) -> Representation {
        let mk = |v: i64| CycMatrix::from_rows(vec![vec![Cyclotomic::from_integer(v)]]);
        Representation::build(group.clone(), vec![mk(on_g), mk(on_h)], label).unwrap()
    }

    #[test]
    fn quaternion_group_has_order_eight_and_five_classes() {
        let (group, rep) = quaternion();
        assert_eq!(group.order(), 8);
        assert_eq!(group.conjugacy_classes().len(), 5);
        assert_eq!(rep.dim(), 2);
        let sizes: Vec<usize> =
            group.conjugacy_classes().iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 8);
        assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 2);
        assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 3);
    }

    #[test]
    fn quaternion_tautological_character() {
        let (group, rep) = quaternion();
        let chi = rep.character();
        // chi(1) = 2, chi(-1) = -2, zero on the three 2-element classes.
        let mut by_size: Vec<(usize, Rational)> = group
            .conjugacy_classes()
            .iter()
            .zip(chi.values())
            .map(|(c, v)| (c.members.len(), v.as_rational().unwrap()))
            .collect();
        by_size.sort_by_key(|(s, _)| *s);
        assert_eq!(by_size[0].1, rat(2));
        assert_eq!(by_size[1].1, rat(-2));
        assert!(by_size[2..].iter().all(|(s, v)| *s == 2 && v.is_zero()));
    }

    #[test]
    fn trivial_character_is_all_ones() {
        let g = s3();
        let triv = Representation::trivial_of_dim(g, 1, "1").unwrap();
        assert!(triv.character().values().iter().all(|v| *v == Cyclotomic::one()));
    }

    #[test]
    fn regular_representation_character_of_s3() {
        let g = s3();
        let reg = Representation::regular(g).unwrap();
        let values: Vec<Rational> =
            reg.character().values().iter().map(|v| v.as_rational().unwrap()).collect();
        assert_eq!(values[0], rat(6));
        assert!(values[1..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn fixed_space_dimensions_of_quaternion_reps() {
        let (group, q) = quaternion();
        let g = group.generators()[0];
        let h = group.generators()[1];
        assert_eq!(q.dim_fixed(&[g, h]).unwrap(), 0);
        assert_eq!(q.dim_fixed(&[]).unwrap(), 2);
        let gh_rep = linear_q8(&group, -1, -1, "GH");
        assert_eq!(gh_rep.dim_fixed(&[group.mul(g, h)]).unwrap(), 1);
        assert_eq!(gh_rep.dim_fixed(&[g]).unwrap(), 0);
    }

    #[test]
    fn dim_fixed_depends_only_on_generated_subgroup() {
        let g = s3();
        let nat = Representation::permutation_natural(g.clone()).unwrap();
        let a = g.generators()[0];
        let b = g.generators()[1];
        // {a, b} and {b, a*b} generate the same group.
        assert_eq!(
            nat.dim_fixed(&[a, b]).unwrap(),
            nat.dim_fixed(&[b, g.mul(a, b)]).unwrap()
        );
    }

    #[test]
    fn character_table_of_c2() {
        let c2 = FiniteGroup::from_permutations(
            vec![Permutation::from_cycles(2, &[vec![0, 1]]).unwrap()],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        let t = character_table(&c2).unwrap();
        assert_eq!(t.dims(), &[1, 1]);
        assert_eq!(t.rows()[0].values(), &[Cyclotomic::one(), Cyclotomic::one()]);
        assert_eq!(
            t.rows()[1].values(),
            &[Cyclotomic::one(), Cyclotomic::from_integer(-1)]
        );
        assert_eq!(t.trivial_row(), 0);
    }

    #[test]
    fn character_table_of_quaternion_group() {
        let (group, _) = quaternion();
        let t = character_table(&group).unwrap();
        assert_eq!(t.dims(), &[1, 1, 1, 1, 2]);
        t.verify_orthogonality().unwrap();
    }

    #[test]
    fn character_table_of_s3_degrees_and_std_row() {
        let g = s3();
        let t = character_table(&g).unwrap();
        assert_eq!(t.dims(), &[1, 1, 2]);
        // The 2-dimensional row: 2 on the identity, 0 on transpositions,
        // -1 on 3-cycles. Identify classes by element order.
        let std = &t.rows()[2];
        for (c, v) in g.conjugacy_classes().iter().zip(std.values()) {
            let expected = match g.order_of(c.representative) {
                1 => rat(2),
                2 => rat(0),
                3 => rat(-1),
                _ => unreachable!(),
            };
            assert_eq!(v.as_rational().unwrap(), expected);
        }
    }

    #[test]
    fn character_table_degrees_of_d4_a4_s5_s6() {
        let d4 = FiniteGroup::from_permutations(
            vec![
                Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[vec![0, 2]]).unwrap(),
            ],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(character_table(&d4).unwrap().dims(), &[1, 1, 1, 1, 2]);

        let a4 = FiniteGroup::from_permutations(
            vec![
                Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap(),
                Permutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap(),
            ],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(character_table(&a4).unwrap().dims(), &[1, 1, 1, 3]);

        let s5 = FiniteGroup::from_permutations(
            vec![
                Permutation::from_cycles(5, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap(),
            ],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(s5.order(), 120);
        assert_eq!(character_table(&s5).unwrap().dims(), &[1, 1, 4, 4, 5, 5, 6]);

        let s6 = FiniteGroup::from_permutations(
            vec![
                Permutation::from_cycles(6, &[vec![0, 1]]).unwrap(),
                Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap(),
            ],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        assert_eq!(s6.order(), 720);
        assert_eq!(
            character_table(&s6).unwrap().dims(),
            &[1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16]
        );
    }

    #[test]
    fn abelian_shortcut_agrees_with_dixon() {
        for n in [2usize, 3, 4, 6, 12] {
            let cyc = FiniteGroup::from_permutations(
                vec![Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap()],
                DEFAULT_CLOSURE_CAP,
            )
            .unwrap();
            let auto = character_table(&cyc).unwrap();
            let forced = character_table_with(&cyc, TableMethod::Dixon).unwrap();
            assert_eq!(auto.dims(), forced.dims());
            for (a, b) in auto.rows().iter().zip(forced.rows()) {
                assert_eq!(a.values(), b.values(), "C{n} rows differ");
            }
        }
    }

    #[test]
    fn quaternion_restriction_multiplicities() {
        let (group, q) = quaternion();
        // Q restricted to the whole group is irreducible: t = (0,0,0,0,1).
        let whole = group.subgroup_generated(&[group.generators()[0], group.generators()[1]]);
        let t = irrep_multiplicities(&q, &whole).unwrap();
        assert_eq!(t, vec![0, 0, 0, 0, 1]);
        // Q restricted to <g> = C4 splits as the two faithful characters.
        let g = group.generators()[0];
        let c4 = group.subgroup_generated(&[g]);
        let t = irrep_multiplicities(&q, &c4).unwrap();
        assert_eq!(t.iter().sum::<usize>(), 2);
        assert_eq!(t.iter().filter(|&&x| x == 1).count(), 2);
        // Trivial representation restricted anywhere is all-trivial.
        let triv3 = Representation::trivial_of_dim(group.clone(), 3, "triv3").unwrap();
        let t = irrep_multiplicities(&triv3, &c4).unwrap();
        assert_eq!(t[0], 3);
        assert_eq!(t[1..].iter().sum::<usize>(), 0);
    }

    #[test]
    fn dual_of_quaternion_rep_is_self_dual() {
        let (_, q) = quaternion();
        let dual = q.dual();
        assert_eq!(q.character().values(), dual.character().values());
    }

    #[test]
    fn dual_character_is_conjugate_character() {
        let c3 = FiniteGroup::from_permutations(
            vec![Permutation::from_cycles(3, &[vec![0, 1, 2]]).unwrap()],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        let z3 = Representation::build(
            c3.clone(),
            vec![CycMatrix::from_rows(vec![vec![Cyclotomic::root_of_unity(3, 1)]])],
            "zeta",
        )
        .unwrap();
        let dual = z3.dual();
        for (a, b) in z3.character().values().iter().zip(dual.character().values()) {
            assert_eq!(a.conjugate(), *b);
        }
    }

    #[test]
    fn direct_sum_adds_characters_and_fixed_spaces() {
        let (group, q) = quaternion();
        let gh_rep = linear_q8(&group, -1, -1, "GH");
        let sum = q.direct_sum(&gh_rep).unwrap();
        assert_eq!(sum.dim(), 3);
        for ((a, b), s) in q
            .character()
            .values()
            .iter()
            .zip(gh_rep.character().values())
            .zip(sum.character().values())
        {
            assert_eq!(a.add(b), *s);
        }
        let g = group.generators()[0];
        assert_eq!(
            sum.dim_fixed(&[g]).unwrap(),
            q.dim_fixed(&[g]).unwrap() + gh_rep.dim_fixed(&[g]).unwrap()
        );
    }

    #[test]
    fn zero_dimensional_direct_sum_is_identity() {
        let (group, q) = quaternion();
        let zero = Representation::trivial_of_dim(group.clone(), 0, "0").unwrap();
        let sum = q.direct_sum(&zero).unwrap();
        assert_eq!(sum.dim(), 2);
        assert_eq!(sum.character().values(), q.character().values());
    }

    #[test]
    fn homomorphism_validation_rejects_bad_matrices() {
        let g = s3();
        // Send both generators to -1: the transposition relation forces
        // (1 2) -> -1 fine, but (1 2 3) has order 3, -1 does not.
        let bad = Representation::build(
            g,
            vec![
                CycMatrix::from_rows(vec![vec![Cyclotomic::from_integer(-1)]]),
                CycMatrix::from_rows(vec![vec![Cyclotomic::from_integer(-1)]]),
            ],
            "bad",
        );
        assert!(matches!(bad, Err(RepError::NotAHomomorphism { .. })));
    }

    #[test]
    fn infinite_order_matrix_is_rejected() {
        let shear = CycMatrix::from_rows(vec![
            vec![Cyclotomic::one(), Cyclotomic::one()],
            vec![Cyclotomic::zero(1), Cyclotomic::one()],
        ]);
        match matrix_group(vec![shear], 1000, "shear") {
            Err(RepError::Group(GroupError::InfiniteOrder { .. })) => {}
            other => panic!("expected InfiniteOrder, got {:?}", other.err()),
        }
    }

    #[test]
    fn external_sum_blockwise_character() {
        let c2 = FiniteGroup::from_permutations(
            vec![Permutation::from_cycles(2, &[vec![0, 1]]).unwrap()],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        let sign = Representation::build(
            c2.clone(),
            vec![CycMatrix::from_rows(vec![vec![Cyclotomic::from_integer(-1)]])],
            "sign",
        )
        .unwrap();
        let product = crate::group::direct_product(&c2, &c2, DEFAULT_CLOSURE_CAP).unwrap();
        let ext = Representation::external_sum(&sign, &sign, &product).unwrap();
        assert_eq!(ext.dim(), 2);
        // Character at (s, s) is -1 + -1 = -2; at (s, 1) it is -1 + 1 = 0.
        let idx_ss = product.index_of(1, 1);
        let idx_s1 = product.index_of(1, 0);
        assert_eq!(ext.character().value_at(idx_ss).as_rational().unwrap(), rat(-2));
        assert_eq!(ext.character().value_at(idx_s1).as_rational().unwrap(), rat(0));
    }

    #[test]
    fn sl_detection() {
        let (_, q) = quaternion();
        assert!(q.is_sl());
        let c2 = FiniteGroup::from_permutations(
            vec![Permutation::from_cycles(2, &[vec![0, 1]]).unwrap()],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        let sign = Representation::build(
            c2.clone(),
            vec![CycMatrix::from_rows(vec![vec![Cyclotomic::from_integer(-1)]])],
            "sign",
        )
        .unwrap();
        assert!(!sign.is_sl());
        let minus_i2 = Representation::build(
            c2,
            vec![CycMatrix::from_rows(vec![
                vec![Cyclotomic::from_integer(-1), Cyclotomic::zero(1)],
                vec![Cyclotomic::zero(1), Cyclotomic::from_integer(-1)],
            ])],
            "V",
        )
        .unwrap();
        assert!(minus_i2.is_sl());
    }
}
