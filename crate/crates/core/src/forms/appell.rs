//! Appell-Lerch construction of the mock modular form Σ(τ).
//!
//! Σ(τ) = −8( μ(1/2; τ) + μ(τ/2; τ) + μ((τ+1)/2; τ) ) with
//!
//! μ(z; τ) = (i e^{πiz} / θ₁(z; τ)) Σ_{n∈ℤ} (−1)ⁿ q^{n(n+1)/2} e^{2πinz} / (1 − qⁿ e^{2πiz}),
//! θ₁(z; τ) = Σ_{n∈ℤ} q^{(n+1/2)²/2} e^{2πi(n+1/2)(z+1/2)}.
//!
//! At the three special points, e^{2πiz} is ±1 times an integer or
//! half-integer power of q, so everything expands as a formal series on the
//! (1/24)ℤ lattice with Gaussian-rational coefficients. The factors of i in
//! e^{πiz} and θ₁ cancel between numerator and denominator; the summed result
//! is real, which the cross-check asserts. This route is an independent
//! oracle for [`super::sigma_mock`] and is intended for modest truncation
//! orders.

use crate::coeff::Coeff;
use crate::exponent::Exponent;
use crate::qseries::QSeries;

/// One of the three specializations of z.
#[derive(Clone, Copy, Debug)]
enum SpecialPoint {
    Half,        // z = 1/2
    HalfTau,     // z = τ/2
    HalfTauPlus, // z = (τ+1)/2
}

impl SpecialPoint {
    /// e^{2πiz} = sign · q^{w}: returns (sign, w in 1/24 units).
    fn q_power(self) -> (i64, i64) {
        match self {
            SpecialPoint::Half => (-1, 0),
            SpecialPoint::HalfTau => (1, 12),
            SpecialPoint::HalfTauPlus => (-1, 12),
        }
    }

    /// i·e^{πiz} = unit · q^{w/2}: returns (unit, w/2 in 1/24 units).
    fn mu_prefactor(self) -> (Coeff, Exponent) {
        match self {
            // i * i = -1
            SpecialPoint::Half => (Coeff::from_int(-1), Exponent::zero()),
            // i * q^{1/4}
            SpecialPoint::HalfTau => (Coeff::i(), Exponent::from_num24(6)),
            // i * i q^{1/4} = -q^{1/4}
            SpecialPoint::HalfTauPlus => (Coeff::from_int(-1), Exponent::from_num24(6)),
        }
    }
}

/// θ₁(z; τ) at a special point, known below `trunc`.
///
/// θ₁(z; τ) = i e^{πiz} Σ_{n∈ℤ} (−1)ⁿ (e^{2πiz})ⁿ q^{(2n+1)²/8 + n w}.
fn theta1_special(z: SpecialPoint, trunc: Exponent) -> QSeries {
    let (sign, w24) = z.q_power();
    let (unit, half24) = {
        let (u, e) = z.mu_prefactor();
        (u, e.num24())
    };
    let trunc24 = trunc.num24();
    let inner_trunc24 = trunc24 - half24;
    let mut acc: std::collections::BTreeMap<i64, i64> = std::collections::BTreeMap::new();
    // |n| beyond 1 + sqrt(trunc/12) cannot reach the window
    let bound = 2 + ((inner_trunc24.max(0) / 12) as f64).sqrt() as i64;
    for n in -bound..=bound {
        let e24 = 3 * (2 * n + 1) * (2 * n + 1) + n * w24;
        if e24 >= inner_trunc24 {
            continue;
        }
        // coefficient (−1)^n sign^n: 1 for even n, −sign for odd n
        let coeff = if n.rem_euclid(2) == 0 { 1i64 } else { -sign };
        *acc.entry(e24).or_insert(0) += coeff;
    }
    let terms = acc
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(e24, c)| (Exponent::from_num24(e24), Coeff::from_int(c)))
        .collect();
    let inner = QSeries::from_terms(terms, Exponent::from_num24(inner_trunc24))
        .expect("theta1 exponents are distinct");
    inner.mul_monomial(&unit, Exponent::from_num24(half24))
}

/// The bilateral Appell sum Σ_{n∈ℤ} (−1)ⁿ q^{n(n+1)/2} e^{2πinz} / (1 − qⁿe^{2πiz})
/// at a special point, known below `trunc`.
fn appell_numerator(z: SpecialPoint, trunc: Exponent) -> QSeries {
    let (sign, w24) = z.q_power();
    let trunc24 = trunc.num24();
    let mut acc: std::collections::BTreeMap<i64, Coeff> = std::collections::BTreeMap::new();
    let bound = 4 + (2.0 * (trunc24.max(0) as f64) / 24.0).sqrt() as i64;
    for n in -bound..=bound {
        // numerator monomial (−1)^n sign^n q^{n(n+1)/2 + n w}
        let base24 = 12 * n * (n + 1) + n * w24;
        let mut unit = if n.rem_euclid(2) == 0 { 1i64 } else { -1 };
        if sign < 0 && n.rem_euclid(2) == 1 {
            unit = -unit;
        }
        // denominator 1 − sign·q^{d}, d = n + w
        let d24 = n * 24 + w24;
        if d24 > 0 {
            // geometric: Σ_{j≥0} sign^j q^{jd}
            let mut j = 0i64;
            loop {
                let e24 = base24 + j * d24;
                if e24 >= trunc24 {
                    break;
                }
                let s = if sign < 0 && j.rem_euclid(2) == 1 {
                    -unit
                } else {
                    unit
                };
                *acc.entry(e24).or_insert_with(Coeff::zero) += &Coeff::from_int(s);
                j += 1;
            }
        } else if d24 == 0 {
            // z = 1/2, n = 0: denominator 1 − (−1) = 2
            if base24 < trunc24 {
                *acc.entry(base24).or_insert_with(Coeff::zero) += &Coeff::from_ratio(unit, 2);
            }
        } else {
            // 1/(1 − s q^{-|d|}) = −s q^{|d|} Σ_{j≥0} s^j q^{j|d|}
            let ad = -d24;
            let mut j = 0i64;
            loop {
                let e24 = base24 + ad + j * ad;
                if e24 >= trunc24 {
                    break;
                }
                let mut s = -unit * sign;
                if sign < 0 && j.rem_euclid(2) == 1 {
                    s = -s;
                }
                *acc.entry(e24).or_insert_with(Coeff::zero) += &Coeff::from_int(s);
                j += 1;
            }
        }
    }
    let terms = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e24, c)| (Exponent::from_num24(e24), c))
        .collect();
    QSeries::from_terms(terms, trunc).expect("accumulated exponents are distinct")
}

/// μ(z; τ) at a special point: prefactor · numerator / θ₁.
fn mu_special(z: SpecialPoint, trunc: Exponent) -> QSeries {
    // generous working window; the final sum is truncated by the caller
    let work = Exponent::from_num24(trunc.num24() + 48);
    let numerator = appell_numerator(z, work);
    let theta = theta1_special(z, work);
    let inv = theta
        .invert()
        .expect("theta1 specializations have nonzero leading term");
    let (unit, shift) = z.mu_prefactor();
    numerator.mul(&inv).mul_monomial(&unit, shift)
}

/// Σ(τ) via the Appell-Lerch sum: −8(μ(1/2) + μ(τ/2) + μ((τ+1)/2)).
///
/// Agrees with [`super::sigma_mock`] with identically vanishing imaginary
/// parts; intended as a cross-check at modest truncation orders.
pub fn sigma_via_appell_lerch(trunc: Exponent) -> QSeries {
    let m1 = mu_special(SpecialPoint::Half, trunc);
    let m2 = mu_special(SpecialPoint::HalfTau, trunc);
    let m3 = mu_special(SpecialPoint::HalfTauPlus, trunc);
    m1.add(&m2).add(&m3).scale(&Coeff::from_int(-8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::sigma_mock;

    #[test]
    fn matches_sigma_mock_through_39_eighths() {
        let trunc = Exponent::from_eighths(40);
        let via_mu = sigma_via_appell_lerch(trunc);
        let direct = sigma_mock(trunc);
        assert_eq!(
            via_mu.coefficient_at(Exponent::from_eighths(-1)).unwrap(),
            Coeff::from_int(-2)
        );
        for n in (-1..=39).filter(|n| n % 8 == 7 || *n == -1) {
            let e = Exponent::from_eighths(n);
            let c = via_mu.coefficient_at(e).unwrap();
            assert!(c.is_real(), "imaginary residue at q^{e}: {c}");
            assert_eq!(c, direct.coefficient_at(e).unwrap(), "mismatch at q^{e}");
        }
        assert!(via_mu.agrees_with(&direct));
    }

    #[test]
    fn imaginary_parts_vanish_everywhere() {
        let s = sigma_via_appell_lerch(Exponent::from_eighths(24));
        assert!(s.terms().all(|(_, c)| c.is_real()));
    }
}
