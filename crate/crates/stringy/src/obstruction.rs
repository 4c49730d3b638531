//! Obstruction-bundle multiplicities and the dimension identities built on
//! them: the per-irreducible multiplicity formula, the two associativity
//! sums, Kunneth rank additivity, the abelian line criterion, and the
//! cotangent identity.
//!
//! For a pair (g1, g2) the twisting group is H = <g1, g2>. Writing V_i for
//! the irreducibles of H, the obstruction object over the sector is
//! determined by the multiplicities
//!
//! ```text
//! h_i = age_{V_i}(g1) + age_{V_i}(g2) - age_{V_i}(g1 g2)
//!       + dim V_i^{g1,g2} - dim V_i^{g1 g2}
//! ```
//!
//! together with the restriction multiplicities t_i of the ambient
//! representation; the total rank is `sum h_i t_i`. Every `dim(A + B)` of
//! fixed subspaces is computed by inclusion-exclusion with
//! `V^S intersect V^T = V^{S union T}`, so no subspace linear algebra is
//! ever performed.
//!
//! A negative or non-integral h_i would falsify the age inequality the
//! whole construction rests on; it aborts with a witness rather than warn.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Signed;
use thiserror::Error;

use crate::age::{eigen_multiplicities_of_character, AgeError, AgeRecord};
use crate::arith::{rat, Rational};
use crate::group::{
    direct_product, FiniteGroup, GroupError, ProductGroup, SubgroupRef, DEFAULT_CLOSURE_CAP,
};
use crate::reptheory::{
    character_table, restriction_multiplicities, CharacterTable, RepError, Representation,
};

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error(
        "negative/non-integral obstruction multiplicity: h[{irrep}] = {value} at pair \
         ({g1}, {g2}); this would falsify the age inequality"
    )]
    NegativeH { g1: u32, g2: u32, irrep: String, value: String },
    #[error("twisting group of pair ({g1}, {g2}) is not abelian")]
    NotAbelian { g1: u32, g2: u32 },
    #[error("sector bookkeeping is inconsistent: {0}")]
    Inconsistency(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Age(#[from] AgeError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Everything attached to one twisting subgroup, keyed by its element set
/// and shared by every pair that generates it.
pub struct TwistData {
    pub subgroup: SubgroupRef,
    pub local: Arc<FiniteGroup>,
    pub to_parent: Vec<u32>,
    from_parent: HashMap<u32, u32>,
    pub table: CharacterTable,
    /// Age records per irreducible row and local class representative.
    irrep_records: Vec<Vec<AgeRecord>>,
    /// dim V^H for the ambient representation.
    pub rep_fixed: usize,
    /// Restriction multiplicities t_i of the ambient representation.
    pub rep_mults: Vec<usize>,
}

impl TwistData {
    pub fn local_index(&self, parent: u32) -> u32 {
        self.from_parent[&parent]
    }
}

/// One irreducible's contribution to a sector decomposition.
#[derive(Clone, Debug)]
pub struct IrrepContribution {
    pub label: String,
    pub degree: usize,
    pub h: usize,
    pub t: usize,
}

/// The full 2-sector record for a pair (g1, g2).
#[derive(Clone, Debug)]
pub struct SectorData {
    pub pair: (u32, u32),
    pub twisting: SubgroupRef,
    pub per_irrep: Vec<IrrepContribution>,
    /// `sum h_i t_i`.
    pub rank: usize,
    /// `age(g1) + age(g2) - age(g1 g2)`.
    pub age_defect: Rational,
    /// `dim V^{g1 g2} - dim V^{g1, g2}`.
    pub codim_excess: usize,
}

/// Exact rank comparison for the Kunneth identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankComparison {
    pub lhs: i64,
    pub rhs: i64,
}

impl RankComparison {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Evaluates sector quantities for one representation, memoizing per-class
/// ages, fixed-space dimensions per subgroup, and twisting-group data per
/// subgroup element set. Safe for concurrent lookup-or-insert.
pub struct SectorEngine {
    rep: Arc<Representation>,
    class_ages: Vec<AgeRecord>,
    dim_cache: Mutex<HashMap<Vec<u32>, usize>>,
    twist_cache: Mutex<HashMap<Vec<u32>, Arc<TwistData>>>,
    doubled: OnceLock<Arc<SectorEngine>>,
}

impl SectorEngine {
    pub fn new(rep: Arc<Representation>) -> Result<SectorEngine, ObstructionError> {
        let group = rep.group().clone();
        let mut class_ages = Vec::with_capacity(group.conjugacy_classes().len());
        for c in group.conjugacy_classes() {
            class_ages.push(crate::age::eigen_multiplicities(&rep, c.representative)?);
        }
        Ok(SectorEngine {
            rep,
            class_ages,
            dim_cache: Mutex::new(HashMap::new()),
            twist_cache: Mutex::new(HashMap::new()),
            doubled: OnceLock::new(),
        })
    }

    pub fn rep(&self) -> &Arc<Representation> {
        &self.rep
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.rep.group()
    }

    /// Age of the ambient representation at g (class lookup).
    pub fn age_of(&self, g: u32) -> &Rational {
        &self.class_ages[self.group().class_of(g) as usize].age
    }

    pub fn age_record(&self, g: u32) -> &AgeRecord {
        &self.class_ages[self.group().class_of(g) as usize]
    }

    /// dim V^{<g>}.
    pub fn dim_fixed_cyclic(&self, g: u32) -> usize {
        self.class_ages[self.group().class_of(g) as usize].fixed_dim()
    }

    /// dim of the subspace fixed by the subgroup generated by `elements`.
    pub fn dim_fixed(&self, elements: &[u32]) -> Result<usize, ObstructionError> {
        let sub = self.group().subgroup_generated(elements);
        if let Some(&hit) = self.dim_cache.lock().unwrap().get(&sub.elements) {
            return Ok(hit);
        }
        let value = self.rep.character().dim_fixed_subgroup(&sub)?;
        self.dim_cache.lock().unwrap().insert(sub.elements, value);
        Ok(value)
    }

    /// Twisting-group data for the subgroup generated by `tuple`.
    pub fn twist(&self, tuple: &[u32]) -> Result<Arc<TwistData>, ObstructionError> {
        let sub = self.group().subgroup_generated(tuple);
        if let Some(hit) = self.twist_cache.lock().unwrap().get(&sub.elements) {
            return Ok(hit.clone());
        }
        let data = Arc::new(self.build_twist(sub)?);
        let mut cache = self.twist_cache.lock().unwrap();
        let entry = cache.entry(data.subgroup.elements.clone()).or_insert_with(|| data.clone());
        Ok(entry.clone())
    }

    fn build_twist(&self, sub: SubgroupRef) -> Result<TwistData, ObstructionError> {
        let (local, to_parent) = self.group().subgroup_as_group(&sub)?;
        let from_parent: HashMap<u32, u32> =
            to_parent.iter().enumerate().map(|(l, &p)| (p, l as u32)).collect();
        let table = character_table(&local)?;
        let mut irrep_records = Vec::with_capacity(table.len());
        for row in table.rows() {
            let mut per_class = Vec::with_capacity(local.conjugacy_classes().len());
            for c in local.conjugacy_classes() {
                per_class.push(eigen_multiplicities_of_character(row, c.representative)?);
            }
            irrep_records.push(per_class);
        }
        let rep_fixed = self.rep.character().dim_fixed_subgroup(&sub)?;
        self.dim_cache.lock().unwrap().insert(sub.elements.clone(), rep_fixed);
        let rep_mults = restriction_multiplicities(self.rep.character(), &table, &to_parent)?;
        Ok(TwistData {
            subgroup: sub,
            local,
            to_parent,
            from_parent,
            table,
            irrep_records,
            rep_fixed,
            rep_mults,
        })
    }

    /// The scalar form of the multiplicity formula for the ambient V:
    /// `age(g1) + age(g2) - age(g1 g2) + dim V^{g1,g2} - dim V^{g1 g2}`.
    pub fn h_scalar(&self, g1: u32, g2: u32) -> Result<Rational, ObstructionError> {
        let g12 = self.group().mul(g1, g2);
        let ages = self.age_of(g1) + self.age_of(g2) - self.age_of(g12);
        let joint = self.dim_fixed(&[g1, g2])? as i64;
        let prod = self.dim_fixed_cyclic(g12) as i64;
        Ok(ages + rat(joint - prod))
    }

    /// Full decomposition of the sector (g1, g2) over the irreducibles of
    /// the twisting group.
    pub fn decomposition(&self, g1: u32, g2: u32) -> Result<SectorData, ObstructionError> {
        let tw = self.twist(&[g1, g2])?;
        let l1 = tw.local_index(g1);
        let l2 = tw.local_index(g2);
        let l12 = tw.local.mul(l1, l2);
        let c1 = tw.local.class_of(l1) as usize;
        let c2 = tw.local.class_of(l2) as usize;
        let c12 = tw.local.class_of(l12) as usize;
        let trivial = tw.table.trivial_row();
        let mut per_irrep = Vec::with_capacity(tw.table.len());
        let mut rank = 0usize;
        for (i, records) in tw.irrep_records.iter().enumerate() {
            let joint = if i == trivial { 1i64 } else { 0 };
            let h_rat = &records[c1].age + &records[c2].age - &records[c12].age
                + rat(joint - records[c12].fixed_dim() as i64);
            let label = format!("X{}", i + 1);
            if !h_rat.is_integer() || h_rat.is_negative() {
                return Err(ObstructionError::NegativeH {
                    g1,
                    g2,
                    irrep: label,
                    value: h_rat.to_string(),
                });
            }
            let h = usize::try_from(h_rat.to_integer()).expect("desk-scale multiplicity");
            let t = tw.rep_mults[i];
            rank += h * t;
            per_irrep.push(IrrepContribution {
                label,
                degree: tw.table.dims()[i],
                h,
                t,
            });
        }
        let g12 = self.group().mul(g1, g2);
        let age_defect = self.age_of(g1) + self.age_of(g2) - self.age_of(g12);
        let codim_excess = self
            .dim_fixed_cyclic(g12)
            .checked_sub(tw.rep_fixed)
            .ok_or_else(|| {
                ObstructionError::Inconsistency(format!(
                    "dim V^{{g1 g2}} < dim V^H at pair ({g1}, {g2})"
                ))
            })?;
        // rank = defect - excess is forced by the multiplicity formula
        // summed against t_i; a mismatch is an internal defect.
        if rat(rank as i64 + codim_excess as i64) != age_defect {
            return Err(ObstructionError::Inconsistency(format!(
                "rank {rank} + excess {codim_excess} != age defect {age_defect} at ({g1}, {g2})"
            )));
        }
        Ok(SectorData {
            pair: (g1, g2),
            twisting: tw.subgroup.clone(),
            per_irrep,
            rank,
            age_defect,
            codim_excess,
        })
    }

    /// The two sides of the associativity identity, each evaluated exactly
    /// as displayed: multiplicity formula for the outer pair, plus the one
    /// for the inner pair, plus the excess-quotient dimension.
    pub fn associativity_sides(
        &self,
        g1: u32,
        g2: u32,
        g3: u32,
    ) -> Result<(Rational, Rational), ObstructionError> {
        let g = self.group().clone();
        let g12 = g.mul(g1, g2);
        let g23 = g.mul(g2, g3);
        let g123 = g.mul(g12, g3);

        let d123 = self.dim_fixed_cyclic(g123) as i64;
        let d_all = self.dim_fixed(&[g1, g2, g3])? as i64;

        // Side one groups (g1 g2, g3).
        let d12 = self.dim_fixed_cyclic(g12) as i64;
        let d12_3 = self.dim_fixed(&[g12, g3])? as i64;
        let d1_2 = self.dim_fixed(&[g1, g2])? as i64;
        let side1 = self.age_of(g12) + self.age_of(g3) - self.age_of(g123)
            + rat(-d123 + d12_3)
            + self.age_of(g1)
            + self.age_of(g2)
            - self.age_of(g12)
            + rat(-d12 + d1_2)
            + rat(d12 - d1_2 - d12_3 + d_all);

        // Side two groups (g1, g2 g3).
        let d23 = self.dim_fixed_cyclic(g23) as i64;
        let d1_23 = self.dim_fixed(&[g1, g23])? as i64;
        let d2_3 = self.dim_fixed(&[g2, g3])? as i64;
        let side2 = self.age_of(g1) + self.age_of(g23) - self.age_of(g123)
            + rat(-d123 + d1_23)
            + self.age_of(g2)
            + self.age_of(g3)
            - self.age_of(g23)
            + rat(-d23 + d2_3)
            + rat(d23 - d2_3 - d1_23 + d_all);

        Ok((side1, side2))
    }

    /// Counts, with multiplicity, the invariant lines L of the restriction
    /// to the abelian twisting group with `age_L(g1) + age_L(g2) > 1`.
    pub fn chen_hu_rank(&self, g1: u32, g2: u32) -> Result<usize, ObstructionError> {
        let tw = self.twist(&[g1, g2])?;
        if !tw.local.is_abelian() {
            return Err(ObstructionError::NotAbelian { g1, g2 });
        }
        debug_assert!(tw.table.dims().iter().all(|&d| d == 1));
        let c1 = tw.local.class_of(tw.local_index(g1)) as usize;
        let c2 = tw.local.class_of(tw.local_index(g2)) as usize;
        let one = rat(1);
        let mut count = 0usize;
        for (records, &t) in tw.irrep_records.iter().zip(&tw.rep_mults) {
            if &records[c1].age + &records[c2].age > one {
                count += t;
            }
        }
        Ok(count)
    }

    fn doubled_engine(&self) -> Result<&Arc<SectorEngine>, ObstructionError> {
        if self.doubled.get().is_none() {
            let doubled_rep = Arc::new(self.rep.direct_sum(&self.rep.dual())?);
            let engine = Arc::new(SectorEngine::new(doubled_rep)?);
            let _ = self.doubled.set(engine);
        }
        Ok(self.doubled.get().expect("just initialized"))
    }

    /// Both sides of the cotangent identity:
    /// lhs = rank over `V + V*` plus the codimension excess of V,
    /// rhs = `dim V - dim V^{g1} - dim V^{g2} + dim V^{g1,g2}`, the
    /// dimension of `V / (V^{g1} + V^{g2})` by inclusion-exclusion.
    pub fn cotangent_check(&self, g1: u32, g2: u32) -> Result<RankComparison, ObstructionError> {
        let doubled = self.doubled_engine()?.clone();
        let rank = doubled.decomposition(g1, g2)?.rank as i64;
        let g12 = self.group().mul(g1, g2);
        let joint = self.dim_fixed(&[g1, g2])? as i64;
        let lhs = rank + self.dim_fixed_cyclic(g12) as i64 - joint;
        let rhs = self.rep.dim() as i64
            - self.dim_fixed_cyclic(g1) as i64
            - self.dim_fixed_cyclic(g2) as i64
            + joint;
        Ok(RankComparison { lhs, rhs })
    }
}

/// Rank additivity across a product: obstruction ranks over `G x H` against
/// the sum of the factor ranks.
pub struct KunnethChecker {
    product: ProductGroup,
    sum_engine: SectorEngine,
    left_engine: SectorEngine,
    right_engine: SectorEngine,
}

impl KunnethChecker {
    pub fn new(
        v: Arc<Representation>,
        w: Arc<Representation>,
        cap: usize,
    ) -> Result<KunnethChecker, ObstructionError> {
        let product = direct_product(v.group(), w.group(), cap)?;
        let sum = Arc::new(Representation::external_sum(&v, &w, &product)?);
        Ok(KunnethChecker {
            product,
            sum_engine: SectorEngine::new(sum)?,
            left_engine: SectorEngine::new(v)?,
            right_engine: SectorEngine::new(w)?,
        })
    }

    pub fn product(&self) -> &ProductGroup {
        &self.product
    }

    pub fn sum_engine(&self) -> &SectorEngine {
        &self.sum_engine
    }

    /// lhs = rank over the product at ((g1,h1),(g2,h2)); rhs = sum of the
    /// factor ranks at (g1,g2) and (h1,h2).
    pub fn rank_check(
        &self,
        first: (u32, u32),
        second: (u32, u32),
    ) -> Result<RankComparison, ObstructionError> {
        let p1 = self.product.index_of(first.0, first.1);
        let p2 = self.product.index_of(second.0, second.1);
        let lhs = self.sum_engine.decomposition(p1, p2)?.rank as i64;
        let rhs = self.left_engine.decomposition(first.0, second.0)?.rank as i64
            + self.right_engine.decomposition(first.1, second.1)?.rank as i64;
        Ok(RankComparison { lhs, rhs })
    }
}

/// One-shot helpers mirroring the library surface for single calls; batch
/// work should hold a [`SectorEngine`].
pub fn h_scalar(
    v: &Arc<Representation>,
    g1: u32,
    g2: u32,
) -> Result<Rational, ObstructionError> {
    SectorEngine::new(v.clone())?.h_scalar(g1, g2)
}

pub fn obstruction_decomposition(
    v: &Arc<Representation>,
    g1: u32,
    g2: u32,
) -> Result<SectorData, ObstructionError> {
    SectorEngine::new(v.clone())?.decomposition(g1, g2)
}

pub fn associativity_sides(
    v: &Arc<Representation>,
    g1: u32,
    g2: u32,
    g3: u32,
) -> Result<(Rational, Rational), ObstructionError> {
    SectorEngine::new(v.clone())?.associativity_sides(g1, g2, g3)
}

pub fn chen_hu_rank(
    v: &Arc<Representation>,
    g1: u32,
    g2: u32,
) -> Result<usize, ObstructionError> {
    SectorEngine::new(v.clone())?.chen_hu_rank(g1, g2)
}

pub fn cotangent_check(
    v: &Arc<Representation>,
    g1: u32,
    g2: u32,
) -> Result<RankComparison, ObstructionError> {
    SectorEngine::new(v.clone())?.cotangent_check(g1, g2)
}

pub fn kunneth_rank_check(
    v: &Arc<Representation>,
    w: &Arc<Representation>,
    first: (u32, u32),
    second: (u32, u32),
) -> Result<RankComparison, ObstructionError> {
    KunnethChecker::new(v.clone(), w.clone(), DEFAULT_CLOSURE_CAP)?.rank_check(first, second)
}
