//! Constructors for the named generating functions.
//!
//! This module builds, as exact [`QSeries`]:
//! - the Dedekind eta function η(aτ) and arbitrary eta-quotients,
//! - the Jacobi theta functions ϑ₃, ϑ₄,
//! - the parity functions f_m(τ) = ¼(ϑ₃(mτ/8) − ϑ₄(mτ/8)),
//! - the quasimodular Eisenstein series E₂ and the weight-2 level-N
//!   Eisenstein series φ₂^{(N)},
//! - the Lambert-type sum Λ(τ) = Σ_{n≥1} (−1)ⁿ n q^{n(n+1)/2}/(1−qⁿ),
//! - the mock modular form Σ(τ) through the identity
//!   Σ(τ)η(τ)³ = −2(E₂(τ) + 24Λ(τ)),
//! - an independent Appell-Lerch construction of Σ(τ) (see [`appell`]),
//! - loading of the two level-23 weight-2 cusp forms from a data file.

pub mod appell;
mod cusp;

pub use cusp::{load_cusp_forms, CuspDataSet, CuspFormData};

use crate::coeff::Coeff;
use crate::error::FormsError;
use crate::exponent::{Exponent, LATTICE_DEN};
use crate::qseries::QSeries;

/// σ₁(k) for k = 0..=n_max (index 0 unused).
pub(crate) fn sigma1_table(n_max: usize) -> Vec<u64> {
    let mut table = vec![0u64; n_max + 1];
    for d in 1..=n_max {
        for m in (d..=n_max).step_by(d) {
            table[m] += d as u64;
        }
    }
    table
}

/// η(aτ) = q^{a/24} ∏_{m≥1} (1 − q^{am}), expanded below `trunc` via the
/// pentagonal number theorem.
pub fn eta(a: i64, trunc: Exponent) -> QSeries {
    assert!(a >= 1, "eta multiplier must be a positive integer");
    let trunc24 = trunc.num24();
    let mut terms: Vec<(Exponent, Coeff)> = Vec::new();
    let mut push = |k: i64| {
        let gp = k * (3 * k - 1) / 2;
        let e24 = a * (LATTICE_DEN * gp + 1);
        if e24 < trunc24 {
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            terms.push((Exponent::from_num24(e24), Coeff::from_int(sign)));
            true
        } else {
            false
        }
    };
    let mut k = 0i64;
    loop {
        let more_pos = push(k);
        let more_neg = if k > 0 { push(-k) } else { true };
        if !more_pos && !more_neg && k > 0 {
            break;
        }
        k += 1;
    }
    QSeries::from_terms(terms, trunc).expect("pentagonal exponents are distinct and below trunc")
}

/// A symbolic product ∏ η(a_i τ)^{e_i}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EtaQuotient {
    factors: Vec<(i64, i64)>,
}

impl EtaQuotient {
    /// Builds from (multiplier, exponent) pairs; duplicate multipliers are
    /// merged by summing exponents and zero exponents dropped.
    pub fn new(factors: &[(i64, i64)]) -> Self {
        let mut merged: Vec<(i64, i64)> = Vec::new();
        for &(a, e) in factors {
            assert!(a >= 1, "eta multiplier must be a positive integer");
            match merged.iter_mut().find(|(b, _)| *b == a) {
                Some((_, acc)) => *acc += e,
                None => merged.push((a, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        merged.sort_by_key(|&(a, _)| a);
        EtaQuotient { factors: merged }
    }

    pub fn factors(&self) -> &[(i64, i64)] {
        &self.factors
    }

    /// Valuation of the expansion: Σ a_i e_i / 24.
    pub fn valuation(&self) -> Exponent {
        Exponent::from_num24(self.factors.iter().map(|&(a, e)| a * e).sum())
    }

    /// Exact expansion, known below `trunc`.
    pub fn expand(&self, trunc: Exponent) -> QSeries {
        let v24 = self.valuation().num24();
        // Each factor needs relative precision trunc - valuation; powers and
        // inverses preserve relative precision.
        let rel24 = (trunc.num24() - v24).max(1);
        let mut result = QSeries::one(Exponent::from_num24(rel24));
        for &(a, e) in &self.factors {
            let factor = eta(a, Exponent::from_num24(rel24 + a));
            let powed = factor.pow(e).expect("eta has unit leading coefficient");
            result = result.mul(&powed);
        }
        result
    }
}

impl std::fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(a, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "eta({a}t)")?;
            } else {
                write!(f, "eta({a}t)^{e}")?;
            }
        }
        Ok(())
    }
}

/// ϑ₃(τ) = 1 + Σ_{m≥1} 2 q^{m²}.
pub fn theta3(trunc: Exponent) -> QSeries {
    let trunc24 = trunc.num24();
    let mut terms = vec![(Exponent::zero(), Coeff::one())];
    let mut m = 1i64;
    while m * m * LATTICE_DEN < trunc24 {
        terms.push((Exponent::from_int(m * m), Coeff::from_int(2)));
        m += 1;
    }
    QSeries::from_terms(terms, trunc).expect("square exponents are distinct")
}

/// ϑ₄(τ) = 1 + Σ_{m≥1} 2 (−q)^{m²} = 1 + Σ 2(−1)^m q^{m²}.
pub fn theta4(trunc: Exponent) -> QSeries {
    let trunc24 = trunc.num24();
    let mut terms = vec![(Exponent::zero(), Coeff::one())];
    let mut m = 1i64;
    while m * m * LATTICE_DEN < trunc24 {
        let sign = if m % 2 == 0 { 2 } else { -2 };
        terms.push((Exponent::from_int(m * m), Coeff::from_int(sign)));
        m += 1;
    }
    QSeries::from_terms(terms, trunc).expect("square exponents are distinct")
}

/// The parity function f_m(τ) = ¼(ϑ₃(mτ/8) − ϑ₄(mτ/8)) = Σ_{j≥1 odd} q^{m j²/8}.
///
/// Supported indices are the ones appearing in the congruence recipes:
/// m ∈ {7, 15, 23, 63}.
pub fn parity_function(m: i64, trunc: Exponent) -> Result<QSeries, FormsError> {
    if ![7, 15, 23, 63].contains(&m) {
        return Err(FormsError::UnsupportedParityIndex(m));
    }
    let trunc24 = trunc.num24();
    let mut terms = Vec::new();
    let mut j = 1i64;
    // exponent m j^2 / 8 = 3 m j^2 in 1/24 units
    while 3 * m * j * j < trunc24 {
        terms.push((Exponent::from_num24(3 * m * j * j), Coeff::one()));
        j += 2;
    }
    Ok(QSeries::from_terms(terms, trunc).expect("odd-square exponents are distinct"))
}

/// E₂(τ) = 1 − 24 Σ_{m≥1} σ₁(m) q^m.
pub fn eisenstein_e2(trunc: Exponent) -> QSeries {
    let n_max = ((trunc.num24() - 1).div_euclid(LATTICE_DEN)).max(0) as usize;
    let sigma = sigma1_table(n_max);
    let mut terms = vec![(Exponent::zero(), Coeff::one())];
    for (k, &s) in sigma.iter().enumerate().skip(1) {
        terms.push((
            Exponent::from_int(k as i64),
            Coeff::from_int(-24 * s as i64),
        ));
    }
    QSeries::from_terms(terms, trunc).expect("integer exponents are distinct")
}

/// φ₂^{(N)}(τ) = 1 + (24/(N−1)) Σ_{k≥1} σ₁(k)(q^k − N q^{Nk}),
/// the weight-2 Eisenstein series for Γ₀(N).
pub fn phi2(level: i64, trunc: Exponent) -> QSeries {
    assert!(level >= 2, "phi2 requires N >= 2");
    let n_max = ((trunc.num24() - 1).div_euclid(LATTICE_DEN)).max(0) as usize;
    let sigma = sigma1_table(n_max);
    let scale = Coeff::from_ratio(24, level - 1);
    let mut acc: Vec<Coeff> = vec![Coeff::zero(); n_max + 1];
    for (k, &s) in sigma.iter().enumerate().skip(1) {
        acc[k] += &(&scale * &Coeff::from_int(s as i64));
        let nk = k as i64 * level;
        if nk <= n_max as i64 {
            acc[nk as usize] += &(&scale * &Coeff::from_int(-(level) * s as i64));
        }
    }
    let mut terms = vec![(Exponent::zero(), Coeff::one())];
    for (k, c) in acc.into_iter().enumerate().skip(1) {
        if !c.is_zero() {
            terms.push((Exponent::from_int(k as i64), c));
        }
    }
    QSeries::from_terms(terms, trunc).expect("integer exponents are distinct")
}

/// Λ(τ) = Σ_{n≥1} (−1)ⁿ n q^{n(n+1)/2}/(1−qⁿ), expanded exactly.
///
/// The outer sum stops at the first n with n(n+1)/2 ≥ trunc; later terms
/// cannot contribute below the truncation order.
pub fn lambda_sum(trunc: Exponent) -> QSeries {
    let n_max = ((trunc.num24() - 1).div_euclid(LATTICE_DEN)).max(0);
    let mut acc: Vec<i64> = vec![0; (n_max + 1) as usize];
    let mut n = 1i64;
    while n * (n + 1) / 2 <= n_max {
        let sign = if n % 2 == 0 { n } else { -n };
        let mut e = n * (n + 1) / 2;
        while e <= n_max {
            acc[e as usize] += sign;
            e += n;
        }
        n += 1;
    }
    let terms = acc
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .map(|(k, c)| (Exponent::from_int(k as i64), Coeff::from_int(c)))
        .collect();
    QSeries::from_terms(terms, trunc).expect("integer exponents are distinct")
}

/// Σ(τ)η(τ)³ = −2(E₂(τ) + 24Λ(τ)).
///
/// This combination has integer coefficients; every coefficient except the
/// constant −2 is divisible by 24.
pub fn sigma_eta3(trunc: Exponent) -> QSeries {
    let e2 = eisenstein_e2(trunc);
    let lambda = lambda_sum(trunc);
    e2.scale(&Coeff::from_int(-2))
        .add(&lambda.scale(&Coeff::from_int(-48)))
}

/// The mock modular form Σ(τ) = −2(E₂ + 24Λ)/η³, with valuation −1/8 and
/// leading coefficient −2.
pub fn sigma_mock(trunc: Exponent) -> QSeries {
    // numerator known below T, eta^3 inverse known on [-1/8, T - 2/8):
    // product known below min(T - 1/8, T - 2/8) = T - 2/8.
    let t24 = trunc.num24() + 6;
    let numerator = sigma_eta3(Exponent::from_num24(t24));
    let eta3 = eta(1, Exponent::from_num24(t24 + 3))
        .pow(3)
        .expect("eta is a unit");
    let inv = eta3.invert().expect("eta^3 has leading coefficient 1");
    numerator.mul(&inv)
}

/// Raises a series to the given power; convenience re-export used by
/// formula tables.
pub(crate) fn qpow(s: &QSeries, n: i64) -> QSeries {
    s.pow(n).expect("power of unit-leading series")
}

/// φ₂^{(N)} through the logarithmic-derivative route
/// (24/(N−1)) · q d/dq log(η(Nτ)/η(τ)).
///
/// Exercised by the identity suite as an independent oracle for [`phi2`];
/// the divisor-sum form is the production path.
pub fn phi2_log_derivative(level: i64, trunc: Exponent) -> QSeries {
    assert!(level >= 2, "phi2 requires N >= 2");
    // relative precision of the quotient is what matters; its valuation is
    // (N-1)/24, so build both factors with enough slack.
    let slack = level - 1;
    let t = Exponent::from_num24(trunc.num24() + slack + 1);
    let quotient = eta(level, t).mul(&qpow(&eta(1, t), -1));
    let ratio = quotient
        .q_derivative()
        .mul(&quotient.invert().expect("unit"));
    ratio.scale(&Coeff::from_ratio(24, level - 1))
}
