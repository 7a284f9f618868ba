//! The 21 McKay-Thompson series of Mathieu moonshine.
//!
//! Each series Σ_{ℓX}(τ) is encoded as data: a rational-linear combination of
//! Σ(τ)η(τ)³, Eisenstein series φ₂^{(N)}, eta-quotients and the two level-23
//! cusp forms, optionally divided (once, at the end) by η(τ)³. Keeping the
//! formulas as term lists makes the table auditable entry by entry.
//!
//! Every expansion has valuation −1/8 with leading coefficient −2, integer
//! coefficients, and support in exponents n/8 with n ≡ −1 (mod 8); `build`
//! verifies all three.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock, Mutex};

use num::bigint::BigInt;
use num::rational::Ratio;

use crate::coeff::Coeff;
use crate::error::McKayError;
use crate::exponent::Exponent;
use crate::forms::{eta, phi2, sigma_eta3, CuspDataSet, EtaQuotient};
use crate::qseries::QSeries;

/// Names of the 21 distinct McKay-Thompson series. The five merged names
/// (7AB, 14AB, 15AB, 21AB, 23AB) each stand for a pair of M₂₄ classes whose
/// series coincide.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[allow(non_camel_case_types)]
pub enum ClassId {
    C1A,
    C2A,
    C2B,
    C3A,
    C3B,
    C4A,
    C4B,
    C4C,
    C5A,
    C6A,
    C6B,
    C7AB,
    C8A,
    C10A,
    C11A,
    C12A,
    C12B,
    C14AB,
    C15AB,
    C21AB,
    C23AB,
}

use ClassId::*;

/// All 21 classes in a fixed display order.
pub const ALL_CLASSES: [ClassId; 21] = [
    C1A, C2A, C2B, C3A, C3B, C4A, C4B, C4C, C5A, C6A, C6B, C7AB, C8A, C10A, C11A, C12A, C12B,
    C14AB, C15AB, C21AB, C23AB,
];

impl ClassId {
    pub fn name(self) -> &'static str {
        match self {
            C1A => "1A",
            C2A => "2A",
            C2B => "2B",
            C3A => "3A",
            C3B => "3B",
            C4A => "4A",
            C4B => "4B",
            C4C => "4C",
            C5A => "5A",
            C6A => "6A",
            C6B => "6B",
            C7AB => "7AB",
            C8A => "8A",
            C10A => "10A",
            C11A => "11A",
            C12A => "12A",
            C12B => "12B",
            C14AB => "14AB",
            C15AB => "15AB",
            C21AB => "21AB",
            C23AB => "23AB",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassId {
    type Err = McKayError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_CLASSES
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| McKayError::UnknownClass(s.to_string()))
    }
}

/// One summand of a series formula.
#[derive(Clone, Debug)]
pub enum FormulaTerm {
    /// c · Σ(τ)η(τ)³
    SigmaEta3(Ratio<i64>),
    /// c · φ₂^{(N)}(τ)
    Phi2(i64, Ratio<i64>),
    /// c · ∏ η(a_iτ)^{e_i}
    Eta(EtaQuotient, Ratio<i64>),
    /// c · f_{23,i}(τ), referenced by data-file name
    CuspForm(&'static str, Ratio<i64>),
}

/// Symbolic formula for one series: `scale · (Σ terms) [/ η(τ)³]`.
#[derive(Clone, Debug)]
pub struct McKayFormula {
    pub class: ClassId,
    pub scale: Ratio<i64>,
    pub terms: Vec<FormulaTerm>,
    pub divide_by_eta3: bool,
}

fn r(p: i64, q: i64) -> Ratio<i64> {
    Ratio::new(p, q)
}

fn eta_term(factors: &[(i64, i64)], c: Ratio<i64>) -> FormulaTerm {
    FormulaTerm::Eta(EtaQuotient::new(factors), c)
}

static FORMULAS: LazyLock<Vec<McKayFormula>> = LazyLock::new(|| {
    use FormulaTerm::*;
    vec![
        McKayFormula {
            class: C1A,
            scale: r(1, 1),
            terms: vec![SigmaEta3(r(1, 1))],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C2A,
            scale: r(1, 3),
            terms: vec![SigmaEta3(r(1, 1)), Phi2(2, r(-4, 1))],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C2B,
            scale: r(1, 1),
            terms: vec![eta_term(&[(1, 5), (2, -4)], r(-2, 1))],
            divide_by_eta3: false,
        },
        McKayFormula {
            class: C3A,
            scale: r(1, 4),
            terms: vec![SigmaEta3(r(1, 1)), Phi2(3, r(-6, 1))],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C3B,
            scale: r(1, 1),
            terms: vec![eta_term(&[(1, 3), (3, -2)], r(-2, 1))],
            divide_by_eta3: false,
        },
        McKayFormula {
            class: C4A,
            scale: r(1, 1),
            terms: vec![eta_term(&[(2, 8), (1, -3), (4, -4)], r(-2, 1))],
            divide_by_eta3: false,
        },
        McKayFormula {
            class: C4B,
            scale: r(1, 6),
            terms: vec![SigmaEta3(r(1, 1)), Phi2(2, r(2, 1)), Phi2(4, r(-12, 1))],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C4C,
            scale: r(1, 1),
            terms: vec![eta_term(&[(1, 1), (2, 2), (4, -2)], r(-2, 1))],
            divide_by_eta3: false,
        },
        McKayFormula {
            class: C5A,
            scale: r(1, 6),
            terms: vec![SigmaEta3(r(1, 1)), Phi2(5, r(-10, 1))],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C6A,
            scale: r(1, 12),
            terms: vec![
                SigmaEta3(r(1, 1)),
                Phi2(2, r(2, 1)),
                Phi2(3, r(6, 1)),
                Phi2(6, r(-30, 1)),
            ],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C6B,
            scale: r(1, 1),
            terms: vec![eta_term(&[(2, 2), (3, 2), (1, -1), (6, -2)], r(-2, 1))],
            divide_by_eta3: false,
        },
        McKayFormula {
            class: C7AB,
            scale: r(1, 8),
            terms: vec![SigmaEta3(r(1, 1)), Phi2(7, r(-14, 1))],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C8A,
            scale: r(1, 12),
            terms: vec![SigmaEta3(r(1, 1)), Phi2(4, r(6, 1)), Phi2(8, r(-28, 1))],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C10A,
            scale: r(1, 1),
            terms: vec![eta_term(&[(2, 1), (5, 1), (10, -1)], r(-2, 1))],
            divide_by_eta3: false,
        },
        McKayFormula {
            class: C11A,
            scale: r(1, 12),
            terms: vec![
                SigmaEta3(r(1, 1)),
                Phi2(11, r(-22, 1)),
                eta_term(&[(1, 2), (11, 2)], r(264, 5)),
            ],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C12A,
            scale: r(1, 1),
            terms: vec![eta_term(
                &[(4, 2), (6, 3), (2, -1), (3, -1), (12, -2)],
                r(-2, 1),
            )],
            divide_by_eta3: false,
        },
        McKayFormula {
            class: C12B,
            scale: r(1, 1),
            terms: vec![eta_term(
                &[(1, 1), (4, 1), (6, 1), (2, -1), (12, -1)],
                r(-2, 1),
            )],
            divide_by_eta3: false,
        },
        McKayFormula {
            class: C14AB,
            scale: r(1, 24),
            terms: vec![
                SigmaEta3(r(1, 1)),
                Phi2(2, r(2, 3)),
                Phi2(7, r(14, 1)),
                Phi2(14, r(-182, 3)),
                eta_term(&[(1, 1), (2, 1), (7, 1), (14, 1)], r(112, 1)),
            ],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C15AB,
            scale: r(1, 24),
            terms: vec![
                SigmaEta3(r(1, 1)),
                Phi2(3, r(3, 2)),
                Phi2(5, r(5, 1)),
                Phi2(15, r(-105, 2)),
                eta_term(&[(1, 1), (3, 1), (5, 1), (15, 1)], r(90, 1)),
            ],
            divide_by_eta3: true,
        },
        McKayFormula {
            class: C21AB,
            scale: r(1, 1),
            terms: vec![
                eta_term(&[(7, 3), (3, -1), (21, -1)], r(-7, 3)),
                eta_term(&[(1, 3), (3, -2)], r(1, 3)),
            ],
            divide_by_eta3: false,
        },
        McKayFormula {
            class: C23AB,
            scale: r(1, 24),
            terms: vec![
                SigmaEta3(r(1, 1)),
                Phi2(23, r(-46, 1)),
                CuspForm("f23_1", r(276, 11)),
                CuspForm("f23_2", r(1932, 11)),
            ],
            divide_by_eta3: true,
        },
    ]
});

/// The symbolic formula for a class.
pub fn formula(class: ClassId) -> &'static McKayFormula {
    FORMULAS
        .iter()
        .find(|f| f.class == class)
        .expect("all classes have formulas")
}

/// The classes whose series is −2 times a single eta-quotient.
///
/// 21AB is a rational combination of two eta-quotients and is deliberately
/// not in this set; see [`eta_combination_classes`].
pub fn list_eta_product_classes() -> Vec<ClassId> {
    vec![C2B, C3B, C4A, C4C, C6B, C10A, C12A, C12B]
}

/// Classes built from eta-quotients only, but as a combination of more than
/// one quotient.
pub fn eta_combination_classes() -> Vec<ClassId> {
    vec![C21AB]
}

/// Evaluates the bracketed combination of a formula (everything except the
/// final division by η³), known below `trunc`.
fn numerator_series(
    f: &McKayFormula,
    trunc: Exponent,
    cusp: Option<&CuspDataSet>,
) -> Result<QSeries, McKayError> {
    let mut acc = QSeries::zero(trunc);
    for term in &f.terms {
        let part = match term {
            FormulaTerm::SigmaEta3(c) => sigma_eta3(trunc).scale(&coeff_of(*c)),
            FormulaTerm::Phi2(n, c) => phi2(*n, trunc).scale(&coeff_of(*c)),
            FormulaTerm::Eta(q, c) => q.expand(trunc).scale(&coeff_of(*c)),
            FormulaTerm::CuspForm(name, c) => {
                let set = cusp.ok_or(McKayError::CuspDataUnavailable)?;
                let data = set.get(name).ok_or(McKayError::CuspDataUnavailable)?;
                data.to_series(trunc)?.scale(&coeff_of(*c))
            }
        };
        acc = acc.add(&part);
    }
    Ok(acc.scale(&coeff_of(f.scale)))
}

fn coeff_of(c: Ratio<i64>) -> Coeff {
    Coeff::from_ratio(*c.numer(), *c.denom())
}

/// Registry with the shared expansion cache and the optional cusp-form data.
///
/// The registry is read-only after construction; builds are pure and the
/// cache fill is idempotent, so concurrent identical requests are safe.
pub struct McKayRegistry {
    cusp: Option<CuspDataSet>,
    cache: Mutex<HashMap<(ClassId, i64), Arc<QSeries>>>,
}

impl Default for McKayRegistry {
    fn default() -> Self {
        Self::new()
    }
}

impl McKayRegistry {
    /// Registry without level-23 cusp data: everything except 23AB works.
    pub fn new() -> Self {
        McKayRegistry {
            cusp: None,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_cusp_data(cusp: CuspDataSet) -> Self {
        McKayRegistry {
            cusp: Some(cusp),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn has_cusp_data(&self) -> bool {
        self.cusp.is_some()
    }

    pub fn cusp_data(&self) -> Option<&CuspDataSet> {
        self.cusp.as_ref()
    }

    /// Exact expansion of Σ_{ℓX} known below `trunc`, from the cache when
    /// available.
    pub fn build(&self, class: ClassId, trunc: Exponent) -> Result<Arc<QSeries>, McKayError> {
        let key = (class, trunc.num24());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let series = Arc::new(self.build_uncached(class, trunc)?);
        self.cache
            .lock()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&series));
        Ok(series)
    }

    fn build_uncached(&self, class: ClassId, trunc: Exponent) -> Result<QSeries, McKayError> {
        let f = formula(class);
        // numerator precision: the division by η³ shifts the window by 1/4
        let work = Exponent::from_num24(trunc.num24() + 6);
        let numerator = numerator_series(f, work, self.cusp.as_ref())?;
        let series = if f.divide_by_eta3 {
            let eta3 = eta(1, Exponent::from_num24(work.num24() + 3))
                .pow(3)
                .expect("eta is a unit");
            numerator.mul(&eta3.invert().expect("eta^3 has unit leading coefficient"))
        } else {
            numerator
        };
        // Invariants: integer coefficients, leading term −2 q^{−1/8},
        // support on exponents ≡ −1/8 (mod 1).
        for (e, c) in series.terms() {
            if c.as_integer().is_none() {
                return Err(McKayError::IntegralityViolation(e));
            }
            assert!(
                e.num24().rem_euclid(24) == 21,
                "{class}: support exponent {e} is not ≡ -1/8 (mod 1)"
            );
        }
        let (lead_e, lead_c) = series.leading().expect("series is nonzero");
        assert_eq!(
            lead_e,
            Exponent::from_eighths(-1),
            "{class}: wrong valuation"
        );
        assert_eq!(
            lead_c,
            &Coeff::from_int(-2),
            "{class}: wrong leading coefficient"
        );
        Ok(series)
    }

    /// The integer coefficient of q^{n/8} in Σ_{ℓX}; the expansion is built
    /// through grade `n` when not already cached. Truncation orders are
    /// rounded up to blocks of 256 grades so grade-by-grade scans reuse one
    /// cached expansion.
    pub fn grade_coefficient(&self, class: ClassId, n: i64) -> Result<BigInt, McKayError> {
        let block = ((n + 1).max(1) + 255).div_euclid(256) * 256;
        let series = self.build(class, Exponent::from_eighths(block))?;
        let c = series
            .coefficient_at(Exponent::from_eighths(n))
            .map_err(McKayError::Series)?;
        Ok(c.as_integer().expect("build verified integrality"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grades(series: &QSeries, n_max: i64) -> Vec<(i64, i64)> {
        series
            .terms()
            .map(|(e, c)| {
                (
                    e.as_eighths().unwrap(),
                    i64::try_from(&c.as_integer().unwrap()).unwrap(),
                )
            })
            .filter(|&(n, _)| n <= n_max)
            .collect()
    }

    #[test]
    fn class_names_roundtrip() {
        for c in ALL_CLASSES {
            assert_eq!(c.name().parse::<ClassId>().unwrap(), c);
        }
        assert!("9Z".parse::<ClassId>().is_err());
    }

    #[test]
    fn series_1a_is_sigma() {
        let reg = McKayRegistry::new();
        let s = reg.build(C1A, Exponent::from_eighths(56)).unwrap();
        let sigma = crate::forms::sigma_mock(Exponent::from_eighths(56));
        assert!(s.agrees_with(&sigma));
    }

    #[test]
    fn series_7ab_displayed_window() {
        let reg = McKayRegistry::new();
        let s = reg.build(C7AB, Exponent::from_eighths(200)).unwrap();
        let expected = vec![
            (-1, -2),
            (7, -1),
            (31, 4),
            (47, -2),
            (55, 2),
            (63, -3),
            (87, 6),
            (103, -6),
            (119, -4),
            (143, 8),
            (159, -6),
            (167, 4),
            (175, -7),
            (199, 12),
        ];
        assert_eq!(grades(&s, 199), expected);
    }

    #[test]
    fn series_2a_displayed_window() {
        let reg = McKayRegistry::new();
        let s = reg.build(C2A, Exponent::from_eighths(32)).unwrap();
        assert_eq!(
            grades(&s, 31),
            vec![(-1, -2), (7, -6), (15, 14), (23, -28), (31, 42)]
        );
    }

    #[test]
    fn eta_product_classes_have_even_coefficients() {
        let reg = McKayRegistry::new();
        for class in list_eta_product_classes() {
            let s = reg.build(class, Exponent::from_eighths(160)).unwrap();
            for (e, c) in s.terms() {
                let i = c.as_integer().unwrap();
                assert!(
                    &i % 2 == BigInt::from(0),
                    "{class} has odd coefficient at {e}"
                );
            }
        }
        assert!(!list_eta_product_classes().contains(&C2A));
        assert_eq!(eta_combination_classes(), vec![C21AB]);
    }

    #[test]
    fn twenty_one_series_pairwise_distinct() {
        // distinct within grade 50; 23AB is excluded without cusp data, and
        // its distinctness is covered by the acceptance suite
        let reg = McKayRegistry::new();
        let trunc = Exponent::from_eighths(51);
        let all: Vec<(ClassId, Arc<QSeries>)> = ALL_CLASSES
            .iter()
            .copied()
            .filter(|&c| c != C23AB)
            .map(|c| (c, reg.build(c, trunc).unwrap()))
            .collect();
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                assert!(
                    !all[i].1.agrees_with(&all[j].1),
                    "{} and {} agree through grade 50",
                    all[i].0,
                    all[j].0
                );
            }
        }
    }

    #[test]
    fn missing_cusp_data_is_reported() {
        let reg = McKayRegistry::new();
        let err = reg.build(C23AB, Exponent::from_eighths(8)).unwrap_err();
        assert!(matches!(err, McKayError::CuspDataUnavailable));
    }

    #[test]
    fn cache_returns_shared_expansion() {
        let reg = McKayRegistry::new();
        let a = reg.build(C2A, Exponent::from_eighths(16)).unwrap();
        let b = reg.build(C2A, Exponent::from_eighths(16)).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn trace_coefficients_match_displays() {
        let reg = McKayRegistry::new();
        assert_eq!(reg.grade_coefficient(C1A, 7).unwrap(), BigInt::from(90));
        assert_eq!(reg.grade_coefficient(C7AB, 7).unwrap(), BigInt::from(-1));
        assert_eq!(reg.grade_coefficient(C2A, 15).unwrap(), BigInt::from(14));
        assert_eq!(reg.grade_coefficient(C2A, -1).unwrap(), BigInt::from(-2));
        // off-support grades are simply zero
        assert_eq!(reg.grade_coefficient(C1A, 4).unwrap(), BigInt::from(0));
    }
}
