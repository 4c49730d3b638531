//! Exact scalars: arbitrary-precision rationals and cyclotomic-field values.
//!
//! A [`Cyclotomic`] is stored as the canonical residue of `sum a_k zeta_n^k`
//! modulo the n-th cyclotomic polynomial `Phi_n`, in the power basis
//! `{zeta^0, ..., zeta^{phi(n)-1}}`. The conductor `n` is never minimized;
//! binary operations lift both operands to the least common multiple of
//! their conductors. Equality compares coefficient vectors after that
//! alignment, so the same field value stored at different conductors still
//! compares equal.
//!
//! Multiplicative inverses are not provided; nothing downstream needs them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar. `num_rational` keeps the canonical form the
/// pipeline relies on: reduced fraction, positive denominator, zero as 0/1.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction `n/d`.
pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    /// The value has a nonzero coefficient outside the constant term.
    #[error("cyclotomic value {0} is not rational")]
    NotRational(String),
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> usize {
    assert!(n >= 1, "totient of zero");
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    divs
}

/// Exact division of integer polynomials (ascending coefficients); the
/// divisor must be monic and the division must be exact.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut work = num.to_vec();
    let qd = work.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = work[i + dd].clone();
        if !c.is_zero() {
            for (j, dc) in den.iter().enumerate() {
                work[i + j] -= &c * dc;
            }
        }
        quot[i] = c;
    }
    assert!(work.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

fn cyclotomic_polynomial_uncached(n: u64) -> Vec<BigInt> {
    if n == 1 {
        // x - 1
        return vec![BigInt::from(-1), BigInt::one()];
    }
    // (x^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    let mut current = num;
    for d in divisors(n) {
        if d < n {
            let phi_d = cyclotomic_polynomial(d);
            current = poly_div_exact(&current, &phi_d);
        }
    }
    assert_eq!(current.len(), euler_phi(n) + 1);
    current
}

/// Coefficients of `Phi_n`, ascending, length `phi(n) + 1`. Computed once
/// per conductor and cached process-wide.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let computed = Arc::new(cyclotomic_polynomial_uncached(n));
    let mut guard = cache.lock().unwrap();
    guard.entry(n).or_insert(computed).clone()
}

/// An element of `Q(zeta_n)` in canonical form: exactly `phi(n)`
/// coefficients, the residue of the represented polynomial mod `Phi_n`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    /// Canonical residue of `sum raw[k] zeta_n^k` mod `Phi_n`. The raw
    /// vector may have any length.
    pub fn reduce(raw: Vec<Rational>, conductor: u64) -> Cyclotomic {
        assert!(conductor >= 1, "conductor must be positive");
        let phi = euler_phi(conductor);
        let phi_poly = cyclotomic_polynomial(conductor);
        let mut work = raw;
        if work.len() < phi {
            work.resize(phi, Rational::zero());
        }
        // Long division by the monic Phi_n, top down.
        for deg in (phi..work.len()).rev() {
            if work[deg].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut work[deg], Rational::zero());
            for (j, pc) in phi_poly.iter().enumerate().take(phi) {
                if !pc.is_zero() {
                    let delta = &c * Rational::from_integer(pc.clone());
                    work[deg - phi + j] -= delta;
                }
            }
        }
        work.truncate(phi);
        Cyclotomic { conductor, coeffs: work }
    }

    pub fn zero(conductor: u64) -> Cyclotomic {
        Cyclotomic { conductor, coeffs: vec![Rational::zero(); euler_phi(conductor)] }
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic::from_rational(Rational::one())
    }

    /// Embeds a rational at conductor 1.
    pub fn from_rational(r: Rational) -> Cyclotomic {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_integer(n: i64) -> Cyclotomic {
        Cyclotomic::from_rational(rat(n))
    }

    /// The root of unity `zeta_n^k` (k taken mod n), canonical at conductor n.
    pub fn root_of_unity(conductor: u64, k: i64) -> Cyclotomic {
        assert!(conductor >= 1, "conductor must be positive");
        let n = conductor as i64;
        let k = k.rem_euclid(n) as usize;
        let mut raw = vec![Rational::zero(); k + 1];
        raw[k] = Rational::one();
        Cyclotomic::reduce(raw, conductor)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Re-expresses the value at a multiple `m` of the current conductor.
    pub fn lift_to(&self, m: u64) -> Cyclotomic {
        assert!(m.is_multiple_of(self.conductor), "can only lift to a multiple conductor");
        if m == self.conductor {
            return self.clone();
        }
        let stride = (m / self.conductor) as usize;
        let mut raw = vec![Rational::zero(); (self.coeffs.len() - 1) * stride + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[k * stride] = c.clone();
            }
        }
        Cyclotomic::reduce(raw, m)
    }

    fn aligned(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift_to(m), other.lift_to(m))
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Cyclotomic {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.aligned(other);
        let mut raw = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Cyclotomic::reduce(raw, a.conductor)
    }

    /// Coefficient-wise scaling by a rational.
    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= r;
        }
        out
    }

    /// Galois conjugation `zeta -> zeta^{-1}` (complex conjugation on values).
    pub fn conjugate(&self) -> Cyclotomic {
        let n = self.conductor as usize;
        let mut raw = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(n - k) % n] += c;
            }
        }
        Cyclotomic::reduce(raw, self.conductor)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Result<Rational, ArithError> {
        if self.is_rational() {
            Ok(self.coeffs[0].clone())
        } else {
            Err(ArithError::NotRational(self.to_string()))
        }
    }

    /// The integer value, if the element is a rational integer.
    pub fn as_integer(&self) -> Result<BigInt, ArithError> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(ArithError::NotRational(self.to_string()))
        }
    }

    /// Deterministic total order: lift to the common conductor, compare
    /// coefficient vectors lexicographically. Used only for stable sorting.
    pub fn cmp_canonical(&self, other: &Cyclotomic) -> Ordering {
        let (a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter().zip(b.coeffs.iter()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

/// `3`, `-3`, or `1/2`: the coefficient syntax of the expression grammar.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Prints in the CLI expression grammar, e.g. `1/2 + 3*E(8)^2 - E(8)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.conductor;
        let mut first = true;
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = match k {
                0 => String::new(),
                1 => format!("E({n})"),
                _ => format!("E({n})^{k}"),
            };
            let abs = c.abs();
            let unit = abs.is_one() && k > 0;
            let body = if unit {
                root
            } else if k == 0 {
                format_rational(&abs)
            } else {
                format!("{}*{}", format_rational(&abs), root)
            };
            if first {
                if c.is_negative() {
                    if unit {
                        out.push_str(&format!("-1*{body}"));
                    } else {
                        out.push_str(&format!("-{body}"));
                    }
                } else {
                    out.push_str(&body);
                }
                first = false;
            } else if c.is_negative() {
                out.push_str(&format!(" - {body}"));
            } else {
                out.push_str(&format!(" + {body}"));
            }
        }
        if first {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Eigenvalue-multiplicity extraction by exact discrete Fourier transform.
///
/// `values[j]` is the trace of the j-th power of a finite-order operator
/// whose order divides `values.len()`; the result `m` satisfies
/// `m[k] = (1/n) sum_j values[j] zeta_n^{-kj}`, the multiplicity of the
/// eigenvalue `zeta_n^k`. Errors with `NotRational` if any `m[k]` fails to
/// be rational, which signals an invalid trace sequence.
pub fn dft_multiplicities(values: &[Cyclotomic]) -> Result<Vec<Rational>, ArithError> {
    let n = values.len();
    assert!(n >= 1, "need at least the trace of the identity power");
    let n_u = n as u64;
    let mut roots = Vec::with_capacity(n);
    for j in 0..n {
        roots.push(Cyclotomic::root_of_unity(n_u, j as i64));
    }
    let inv_n = Rational::new(BigInt::one(), BigInt::from(n));
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = Cyclotomic::zero(1);
        for (j, v) in values.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let e = (n - (k * j) % n) % n;
            acc = acc.add(&v.mul(&roots[e]));
        }
        out.push(acc.as_rational()? * &inv_n);
    }
    Ok(out)
}
