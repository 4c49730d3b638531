//! The age grading: exact eigenvalue-multiplicity extraction.
//!
//! For an element g of order n acting on V, the eigenvalues are n-th roots
//! of unity `zeta_n^k` with multiplicities `m_k`, recovered from the traces
//! of the powers `chi_V(g^j)` by exact DFT; the age is
//! `sum_k (k/n) m_k`, the sum of the normalized eigenvalue phases in [0,1).
//! Ages are always computed from characters, never from diagonalization,
//! so only traces and exact DFT are needed.
//!
//! n is the exact element order from the group table, not the group
//! exponent, so the phases carry denominators dividing o(g).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arith::{dft_multiplicities, ArithError, Cyclotomic, Rational};
use crate::reptheory::{ClassFunction, Representation};

#[derive(Debug, Error)]
pub enum AgeError {
    #[error("eigenvalue multiplicity is not an integer: {0}")]
    NotAnInteger(String),
    #[error("negative eigenvalue multiplicity {value} for zeta^{index}")]
    NegativeMultiplicity { index: usize, value: String },
    #[error("determinant is not a root of unity of the element order")]
    NotARootOfUnity,
}

impl From<ArithError> for AgeError {
    fn from(e: ArithError) -> Self {
        AgeError::NotAnInteger(e.to_string())
    }
}

/// Eigenvalue data of one element acting in one representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgeRecord {
    pub element: u32,
    /// Order n of the element in the group.
    pub order: u64,
    /// `multiplicities[k]` = multiplicity of the eigenvalue `zeta_n^k`.
    pub multiplicities: Vec<usize>,
    /// `sum_k (k/n) multiplicities[k]`.
    pub age: Rational,
}

impl AgeRecord {
    /// Total eigenvalue count, i.e. the dimension acted on.
    pub fn dim(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Multiplicity of the eigenvalue 1: the fixed-space dimension of the
    /// cyclic group generated by the element.
    pub fn fixed_dim(&self) -> usize {
        self.multiplicities[0]
    }
}

fn record_from_traces(
    element: u32,
    order: u64,
    traces: &[Cyclotomic],
) -> Result<AgeRecord, AgeError> {
    let raw = dft_multiplicities(traces)?;
    let mut multiplicities = Vec::with_capacity(raw.len());
    for (k, m) in raw.iter().enumerate() {
        if !m.is_integer() {
            return Err(AgeError::NotAnInteger(format!("m_{k} = {m}")));
        }
        if m.is_negative() {
            return Err(AgeError::NegativeMultiplicity { index: k, value: m.to_string() });
        }
        multiplicities.push(usize::try_from(m.to_integer()).expect("desk-scale multiplicity"));
    }
    let mut weighted = BigInt::zero();
    for (k, &m) in multiplicities.iter().enumerate() {
        weighted += BigInt::from(k) * BigInt::from(m);
    }
    let age = Rational::new(weighted, BigInt::from(order));
    Ok(AgeRecord { element, order, multiplicities, age })
}

/// Eigenvalue multiplicities of g on V, from the traces of its powers.
pub fn eigen_multiplicities(v: &Representation, g: u32) -> Result<AgeRecord, AgeError> {
    let group = v.group();
    let n = group.order_of(g);
    let traces: Vec<Cyclotomic> =
        (0..n).map(|j| v.matrix(group.pow(g, j as i64)).trace()).collect();
    let record = record_from_traces(g, n, &traces)?;
    debug_assert_eq!(record.dim(), v.dim());
    Ok(record)
}

/// The age of g on V.
pub fn age(v: &Representation, g: u32) -> Result<Rational, AgeError> {
    Ok(eigen_multiplicities(v, g)?.age)
}

/// Same extraction for a character given as a class function (used for the
/// irreducibles of twisting subgroups, where no matrices exist).
pub fn eigen_multiplicities_of_character(
    chi: &ClassFunction,
    g: u32,
) -> Result<AgeRecord, AgeError> {
    let group = chi.group();
    let n = group.order_of(g);
    let traces: Vec<Cyclotomic> =
        (0..n).map(|j| chi.value_at(group.pow(g, j as i64)).clone()).collect();
    record_from_traces(g, n, &traces)
}

/// The exponent D with `det(rho(g)) = zeta_n^D`, n the order of g. By the
/// determinant relation, `D = sum_k k m_k (mod n)`.
pub fn determinant_exponent(v: &Representation, g: u32) -> Result<u64, AgeError> {
    let n = v.group().order_of(g);
    let det = v.matrix(g).det();
    for d in 0..n {
        if det == Cyclotomic::root_of_unity(n, d as i64) {
            return Ok(d);
        }
    }
    Err(AgeError::NotARootOfUnity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_frac};
    use crate::group::{FiniteGroup, Permutation, DEFAULT_CLOSURE_CAP};
    use crate::matrix::CycMatrix;
    use crate::reptheory::{matrix_group, Representation};
    use std::sync::Arc;

    fn quaternion() -> (Arc<FiniteGroup>, Representation) {
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

    fn cyclic_rep(n: usize, k: i64) -> (Arc<FiniteGroup>, Representation) {
        let group = FiniteGroup::from_permutations(
            vec![Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap()],
            DEFAULT_CLOSURE_CAP,
        )
        .unwrap();
        let rep = Representation::build(
            group.clone(),
            vec![CycMatrix::from_rows(vec![vec![Cyclotomic::root_of_unity(n as u64, k)]])],
            "chi",
        )
        .unwrap();
        (group, rep)
    }

    #[test]
    fn quaternion_tautological_age_of_g() {
        let (group, q) = quaternion();
        let g = group.generators()[0];
        let record = eigen_multiplicities(&q, g).unwrap();
        assert_eq!(record.order, 4);
        assert_eq!(record.multiplicities, vec![0, 1, 0, 1]);
        assert_eq!(record.age, rat(1));
        assert_eq!(record.fixed_dim(), q.dim_fixed(&[g]).unwrap());
    }

    #[test]
    fn age_at_identity_is_zero() {
        let (_, q) = quaternion();
        let record = eigen_multiplicities(&q, 0).unwrap();
        assert_eq!(record.multiplicities, vec![2]);
        assert_eq!(record.age, rat(0));
    }

    #[test]
    fn linear_rep_g_acts_with_age_one_half() {
        let (group, _) = quaternion();
        // G: g -> -1, h -> 1. The element g has order 4 and -1 = zeta_4^2.
        let minus = CycMatrix::from_rows(vec![vec![Cyclotomic::from_integer(-1)]]);
        let plus = CycMatrix::from_rows(vec![vec![Cyclotomic::one()]]);
        let rep_g = Representation::build(group.clone(), vec![minus, plus], "G").unwrap();
        let g = group.generators()[0];
        let record = eigen_multiplicities(&rep_g, g).unwrap();
        assert_eq!(record.order, 4);
        assert_eq!(record.multiplicities, vec![0, 0, 1, 0]);
        assert_eq!(record.age, rat_frac(1, 2));
    }

    #[test]
    fn gh_rep_age_vanishes_on_gh() {
        let (group, _) = quaternion();
        let minus = CycMatrix::from_rows(vec![vec![Cyclotomic::from_integer(-1)]]);
        let rep_gh =
            Representation::build(group.clone(), vec![minus.clone(), minus], "GH").unwrap();
        let gh = group.mul(group.generators()[0], group.generators()[1]);
        assert_eq!(age(&rep_gh, gh).unwrap(), rat(0));
    }

    #[test]
    fn cyclic_scalar_ages() {
        let (group, rep) = cyclic_rep(3, 1);
        let s = group.generators()[0];
        assert_eq!(age(&rep, s).unwrap(), rat_frac(1, 3));
        assert_eq!(age(&rep, group.mul(s, s)).unwrap(), rat_frac(2, 3));
    }

    #[test]
    fn conjugation_invariance_on_quaternion() {
        let (group, q) = quaternion();
        for g in 0..group.order() as u32 {
            let base = age(&q, g).unwrap();
            for x in 0..group.order() as u32 {
                let conj = group.mul(group.mul(x, g), group.inv(x));
                assert_eq!(age(&q, conj).unwrap(), base);
            }
        }
    }

    #[test]
    fn additivity_under_direct_sum() {
        let (group, q) = quaternion();
        let dsum = q.direct_sum(&q).unwrap();
        for g in 0..group.order() as u32 {
            let single = age(&q, g).unwrap();
            assert_eq!(age(&dsum, g).unwrap(), &single + &single);
        }
    }

    #[test]
    fn determinant_relation() {
        let (group, q) = quaternion();
        for g in 0..group.order() as u32 {
            let record = eigen_multiplicities(&q, g).unwrap();
            let d = determinant_exponent(&q, g).unwrap();
            let weighted: usize = record
                .multiplicities
                .iter()
                .enumerate()
                .map(|(k, &m)| k * m)
                .sum();
            assert_eq!(weighted as u64 % record.order, d % record.order);
        }
    }

    #[test]
    fn dual_identity_age_plus_dual_age() {
        let (group, q) = quaternion();
        let dual = q.dual();
        for g in 0..group.order() as u32 {
            let lhs = age(&q, g).unwrap() + age(&dual, g).unwrap();
            let rhs = rat((q.dim() - q.dim_fixed(&[g]).unwrap()) as i64);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sl_inputs_have_integer_ages() {
        let (group, q) = quaternion();
        assert!(q.is_sl());
        for g in 0..group.order() as u32 {
            assert!(age(&q, g).unwrap().is_integer());
        }
    }

    #[test]
    fn zero_dimensional_rep_has_age_zero() {
        let (group, _) = quaternion();
        let zero = Representation::trivial_of_dim(group.clone(), 0, "0").unwrap();
        for g in 0..group.order() as u32 {
            let record = eigen_multiplicities(&zero, g).unwrap();
            assert_eq!(record.age, rat(0));
            assert_eq!(record.dim(), 0);
        }
    }
}
