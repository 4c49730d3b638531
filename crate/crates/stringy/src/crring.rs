//! The graded stringy ring of `[C^n/G]`.
//!
//! One generator e_g per group element, graded by twice the age. Over the
//! point base the cup product collapses to a 0/1 rule: the Euler class of
//! the obstruction survives only at rank zero and the sector pushforward
//! survives only at codimension excess zero, and since
//! `rank + excess = age defect` with both sides non-negative, the combined
//! condition is exactly age additivity. So
//!
//! ```text
//! e_g * e_h = e_{gh}   if age(g) + age(h) = age(gh),   else 0.
//! ```
//!
//! The invariant subring is spanned by the class sums `E_[g]`; its exact
//! structure constants are non-negative integers. The normalization sits
//! in [`point_base_coefficient`] so an alternative (e.g. centralizer
//! weighted) convention could be swapped in; the associativity and grading
//! checks do not depend on it on the element basis.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::age::{eigen_multiplicities, AgeError};
use crate::arith::{rat, Rational};
use crate::group::{direct_product, FiniteGroup, GroupError, DEFAULT_CLOSURE_CAP};
use crate::reptheory::{RepError, Representation};

#[derive(Debug, Error)]
pub enum RingError {
    #[error("operands are not expressed in this ring's invariant basis")]
    BasisMismatch,
    #[error("representation {0} is not SL: some age is non-integral")]
    NotSL(String),
    #[error("ring construction is inconsistent: {0}")]
    Internal(String),
    #[error(transparent)]
    Age(#[from] AgeError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The point-base product coefficient on the element basis: 1 when the
/// ages add, nothing otherwise. The single place the normalization lives.
fn point_base_coefficient(
    age_g: &Rational,
    age_h: &Rational,
    age_gh: &Rational,
) -> Option<Rational> {
    if &(age_g + age_h) == age_gh {
        Some(rat(1))
    } else {
        None
    }
}

pub struct CRRing {
    group: Arc<FiniteGroup>,
    rep_label: String,
    /// 2 * age per element.
    element_degrees: Vec<Rational>,
    /// Row-major |G| x |G|: `Some(gh)` when the product survives.
    element_product: Vec<Option<u32>>,
    /// Degrees of the class sums (class invariants).
    class_degrees: Vec<Rational>,
    /// `structure[a][b][c]`: coefficient of E_c in E_a * E_b.
    structure: Vec<Vec<Vec<BigInt>>>,
    sl: bool,
}

impl CRRing {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rep_label(&self) -> &str {
        &self.rep_label
    }

    pub fn element_degree(&self, g: u32) -> &Rational {
        &self.element_degrees[g as usize]
    }

    /// `e_g * e_h` on the element basis.
    pub fn element_product(&self, g: u32, h: u32) -> Option<u32> {
        self.element_product[g as usize * self.group.order() + h as usize]
    }

    pub fn class_degrees(&self) -> &[Rational] {
        &self.class_degrees
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<BigInt>>] {
        &self.structure
    }

    /// Whether every age is integral (equivalently, det = 1 everywhere).
    pub fn is_sl(&self) -> bool {
        self.sl
    }

    /// Sorted class-sum degrees.
    pub fn degree_multiset(&self) -> Vec<Rational> {
        let mut out = self.class_degrees.clone();
        out.sort();
        out
    }
}

/// Builds the stringy ring of `[C^dim V / G]` from the ages of V.
pub fn build_cr_ring(v: &Representation) -> Result<CRRing, RingError> {
    let group = v.group().clone();
    let n = group.order();
    let classes = group.conjugacy_classes();
    let mut class_ages = Vec::with_capacity(classes.len());
    for c in classes {
        class_ages.push(eigen_multiplicities(v, c.representative)?.age);
    }
    let age_of = |g: u32| &class_ages[group.class_of(g) as usize];
    let element_degrees: Vec<Rational> =
        (0..n as u32).map(|g| age_of(g) * rat(2)).collect();
    let class_degrees: Vec<Rational> = class_ages.iter().map(|a| a * rat(2)).collect();
    let sl = class_ages.iter().all(|a| a.is_integer());

    let mut element_product = Vec::with_capacity(n * n);
    for g in 0..n as u32 {
        for h in 0..n as u32 {
            let gh = group.mul(g, h);
            let entry = point_base_coefficient(age_of(g), age_of(h), age_of(gh))
                .map(|coeff| {
                    debug_assert_eq!(coeff, rat(1));
                    gh
                });
            element_product.push(entry);
        }
    }

    // Class-sum structure constants: count surviving products of member
    // pairs landing in each class; equivariance makes the count an exact
    // multiple of the class size.
    let r = classes.len();
    let mut structure = vec![vec![vec![BigInt::zero(); r]; r]; r];
    for (a, ca) in classes.iter().enumerate() {
        for (b, cb) in classes.iter().enumerate() {
            let mut totals = vec![0u64; r];
            for &g in &ca.members {
                for &h in &cb.members {
                    if element_product[g as usize * n + h as usize].is_some() {
                        totals[group.class_of(group.mul(g, h)) as usize] += 1;
                    }
                }
            }
            for (c, &t) in totals.iter().enumerate() {
                let size = classes[c].members.len() as u64;
                if t % size != 0 {
                    return Err(RingError::Internal(format!(
                        "class product count {t} not divisible by class size {size}"
                    )));
                }
                structure[a][b][c] = BigInt::from(t / size);
            }
        }
    }

    Ok(CRRing {
        group,
        rep_label: v.label().to_string(),
        element_degrees,
        element_product,
        class_degrees,
        structure,
        sl,
    })
}

/// Bilinear product of two class-sum combinations, coefficients indexed by
/// conjugacy class.
pub fn ring_product(
    ring: &CRRing,
    a: &[Rational],
    b: &[Rational],
) -> Result<Vec<Rational>, RingError> {
    let r = ring.class_degrees.len();
    if a.len() != r || b.len() != r {
        return Err(RingError::BasisMismatch);
    }
    let mut out = vec![Rational::zero(); r];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let coeff = ai * bj;
            for (k, s) in ring.structure[i][j].iter().enumerate() {
                if !s.is_zero() {
                    out[k] += &coeff * Rational::from_integer(s.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Outcome of the ring verification.
#[derive(Clone, Debug)]
pub struct RingReport {
    pub triples_checked: u64,
    pub sampled: bool,
    pub unit_ok: bool,
    pub grading_ok: bool,
    pub commutativity_ok: bool,
    pub sl: bool,
    /// For SL inputs: whether every degree lies in 2Z.
    pub degrees_even: Option<bool>,
    pub failures: Vec<String>,
}

impl RingReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
            && self.unit_ok
            && self.grading_ok
            && self.commutativity_ok
            && self.degrees_even.unwrap_or(true)
    }
}

/// Verifies associativity on the full element basis (sampling above the
/// cap), unitality, grading additivity on surviving products, and class-sum
/// commutativity.
pub fn check_ring(ring: &CRRing, triple_cap: usize, samples: usize, seed: u64) -> RingReport {
    let n = ring.group.order();
    let mut failures = Vec::new();

    let unit_ok = (0..n as u32).all(|g| {
        ring.element_product(0, g) == Some(g) && ring.element_product(g, 0) == Some(g)
    });
    if !unit_ok {
        failures.push("identity generator is not a two-sided unit".into());
    }

    let mut grading_ok = true;
    for g in 0..n as u32 {
        for h in 0..n as u32 {
            if let Some(gh) = ring.element_product(g, h) {
                if ring.element_degree(g) + ring.element_degree(h)
                    != *ring.element_degree(gh)
                {
                    grading_ok = false;
                    failures.push(format!("grading fails on ({g}, {h})"));
                }
            }
        }
    }

    let compose = |x: Option<u32>, k: u32| x.and_then(|g| ring.element_product(g, k));
    let assoc = |g: u32, h: u32, k: u32| {
        let lhs = compose(ring.element_product(g, h), k);
        let rhs = match ring.element_product(h, k) {
            Some(hk) => ring.element_product(g, hk),
            None => None,
        };
        lhs == rhs
    };
    let total = (n as u128).pow(3);
    let sampled = total > triple_cap as u128;
    let triples_checked = if !sampled {
        let mut count = 0u64;
        for g in 0..n as u32 {
            for h in 0..n as u32 {
                for k in 0..n as u32 {
                    count += 1;
                    if !assoc(g, h, k) {
                        failures.push(format!("associativity fails on ({g}, {h}, {k})"));
                    }
                }
            }
        }
        count
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let g = rng.gen_range(0..n) as u32;
            let h = rng.gen_range(0..n) as u32;
            let k = rng.gen_range(0..n) as u32;
            if !assoc(g, h, k) {
                failures.push(format!("associativity fails on ({g}, {h}, {k})"));
            }
        }
        samples as u64
    };

    let r = ring.class_degrees.len();
    let mut commutativity_ok = true;
    for a in 0..r {
        for b in 0..r {
            if ring.structure[a][b] != ring.structure[b][a] {
                commutativity_ok = false;
                failures.push(format!("class sums E_{a}, E_{b} do not commute"));
            }
        }
    }

    let degrees_even = if ring.sl {
        Some(ring.class_degrees.iter().all(|d| {
            d.is_integer() && (d.to_integer() % BigInt::from(2)).is_zero()
        }))
    } else {
        None
    };
    if degrees_even == Some(false) {
        failures.push("SL input has a degree outside 2Z".into());
    }

    RingReport {
        triples_checked,
        sampled,
        unit_ok,
        grading_ok,
        commutativity_ok,
        sl: ring.sl,
        degrees_even,
        failures,
    }
}

/// Outcome of the ring-level Kunneth comparison.
#[derive(Clone, Debug)]
pub struct KunnethRingReport {
    pub class_count: usize,
    pub degree_multiset: Vec<Rational>,
    pub failures: Vec<String>,
}

impl KunnethRingReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds the ring of the external sum over `G x H` and compares it with the
/// graded tensor of the factor rings on the class-pair basis: degrees add
/// and every structure constant factors. Requires SL inputs, so that the
/// gradings are integral and no Koszul signs arise.
pub fn kunneth_ring_compare(
    v: &Representation,
    w: &Representation,
) -> Result<KunnethRingReport, RingError> {
    let ring_v = build_cr_ring(v)?;
    let ring_w = build_cr_ring(w)?;
    if !ring_v.sl {
        return Err(RingError::NotSL(v.label().to_string()));
    }
    if !ring_w.sl {
        return Err(RingError::NotSL(w.label().to_string()));
    }
    let product = direct_product(v.group(), w.group(), DEFAULT_CLOSURE_CAP)?;
    let sum = Representation::external_sum(v, w, &product)?;
    let ring_p = build_cr_ring(&sum)?;

    let pg = &product.group;
    let classes_p = pg.conjugacy_classes();
    let rv = ring_v.class_degrees.len();
    let rw = ring_w.class_degrees.len();
    let mut failures = Vec::new();

    // Product classes are exactly the class pairs.
    let mut pair_of_class = Vec::with_capacity(classes_p.len());
    for c in classes_p {
        let (a, b) = product.pair_of(c.representative);
        pair_of_class.push((v.group().class_of(a) as usize, w.group().class_of(b) as usize));
    }
    if classes_p.len() != rv * rw {
        failures.push(format!(
            "product has {} classes, expected {} class pairs",
            classes_p.len(),
            rv * rw
        ));
    } else {
        let mut seen = vec![false; rv * rw];
        for &(a, b) in &pair_of_class {
            seen[a * rw + b] = true;
        }
        if !seen.iter().all(|&s| s) {
            failures.push("product classes do not biject with class pairs".into());
        }
    }

    for (idx, &(a, b)) in pair_of_class.iter().enumerate() {
        let expect = &ring_v.class_degrees[a] + &ring_w.class_degrees[b];
        if ring_p.class_degrees[idx] != expect {
            failures.push(format!(
                "degree of product class {idx} is {} but factors give {expect}",
                ring_p.class_degrees[idx]
            ));
        }
    }

    for (i, &(a1, b1)) in pair_of_class.iter().enumerate() {
        for (j, &(a2, b2)) in pair_of_class.iter().enumerate() {
            for (k, &(a3, b3)) in pair_of_class.iter().enumerate() {
                let expect = &ring_v.structure[a1][a2][a3] * &ring_w.structure[b1][b2][b3];
                if ring_p.structure[i][j][k] != expect {
                    failures.push(format!(
                        "structure constant ({i},{j},{k}) = {} but tensor gives {expect}",
                        ring_p.structure[i][j][k]
                    ));
                }
            }
        }
    }

    Ok(KunnethRingReport {
        class_count: classes_p.len(),
        degree_multiset: ring_p.degree_multiset(),
        failures,
    })
}
