//! Truncated Laurent series on the exponent lattice (1/24)ℤ.
//!
//! A [`QSeries`] stores exact Gaussian-rational coefficients for every
//! exponent below an explicit truncation order. Requesting a coefficient at
//! or beyond the truncation is an error, never a silent zero: the congruence
//! certificates downstream depend on provably exact coefficient windows.
//!
//! Storage is dense along the arithmetic progression actually carrying the
//! support (`valuation + k*stride`). All series of interest here live on such
//! progressions (integer exponents, n/8 gradings, η(aτ) combs), so this keeps
//! the convolution cost predictable without paying for the full 1/24 grid.

use num::integer::Integer;
use num::rational::{BigRational, Ratio};
use num::Signed;

use crate::coeff::Coeff;
use crate::error::QSeriesError;
use crate::exponent::{Exponent, LATTICE_DEN};

/// A truncated formal Laurent series Σ c_e q^e, exact for all e < trunc.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    /// Exponent of the first stored coefficient, in 1/24 units.
    /// Equals `trunc24` for a series that is zero on its whole window.
    val24: i64,
    /// Positive step of the support progression, in 1/24 units.
    stride24: i64,
    /// Coefficient at exponent `val24 + k*stride24`; trailing zeros trimmed.
    coeffs: Vec<Coeff>,
    /// The series is known exactly for all exponents strictly below this.
    trunc24: i64,
}

impl QSeries {
    // ----- constructors ---------------------------------------------------

    /// The zero series, known below `trunc`.
    pub fn zero(trunc: Exponent) -> Self {
        QSeries {
            val24: trunc.num24(),
            stride24: LATTICE_DEN,
            coeffs: Vec::new(),
            trunc24: trunc.num24(),
        }
    }

    /// The constant 1, known below `trunc`.
    pub fn one(trunc: Exponent) -> Self {
        Self::monomial(Coeff::one(), Exponent::zero(), trunc)
    }

    /// The single term c·q^e. Panics if e ≥ trunc; use [`QSeries::from_terms`]
    /// for fallible construction.
    pub fn monomial(c: Coeff, e: Exponent, trunc: Exponent) -> Self {
        assert!(
            e < trunc,
            "monomial exponent must lie below the truncation order"
        );
        if c.is_zero() {
            return Self::zero(trunc);
        }
        QSeries {
            val24: e.num24(),
            stride24: (trunc.num24() - e.num24()).max(1),
            coeffs: vec![c],
            trunc24: trunc.num24(),
        }
    }

    /// Builds a series from explicit terms, all below `trunc` and pairwise
    /// distinct.
    pub fn from_terms(
        terms: Vec<(Exponent, Coeff)>,
        trunc: Exponent,
    ) -> Result<Self, QSeriesError> {
        let mut terms: Vec<(Exponent, Coeff)> = terms;
        terms.sort_by_key(|(e, _)| *e);
        for w in terms.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(QSeriesError::DuplicateExponent(w[0].0));
            }
        }
        if let Some((e, _)) = terms.iter().find(|(e, _)| *e >= trunc) {
            return Err(QSeriesError::ExponentBeyondTrunc(*e, trunc));
        }
        let nonzero: Vec<(i64, Coeff)> = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e.num24(), c))
            .collect();
        Ok(Self::from_sorted_nonzero(nonzero, trunc.num24()))
    }

    /// Internal: assemble from sorted nonzero (exponent24, coeff) pairs.
    fn from_sorted_nonzero(nonzero: Vec<(i64, Coeff)>, trunc24: i64) -> Self {
        if nonzero.is_empty() {
            return QSeries {
                val24: trunc24,
                stride24: LATTICE_DEN,
                coeffs: Vec::new(),
                trunc24,
            };
        }
        let val24 = nonzero[0].0;
        // the step of the support progression: gcd of the exponent offsets,
        // or the whole window for a single term
        let mut stride24 = 0i64;
        for (e, _) in &nonzero[1..] {
            stride24 = stride24.gcd(&(e - val24));
        }
        if stride24 == 0 {
            stride24 = trunc24 - val24;
        }
        stride24 = stride24.max(1);
        let last = nonzero.last().unwrap().0;
        let len = ((last - val24) / stride24 + 1) as usize;
        let mut coeffs = vec![Coeff::zero(); len];
        for (e, c) in nonzero {
            coeffs[((e - val24) / stride24) as usize] = c;
        }
        QSeries {
            val24,
            stride24,
            coeffs,
            trunc24,
        }
    }

    /// Re-normalizes: trims leading/trailing zeros and tightens the stride.
    fn normalize(self) -> Self {
        let nonzero: Vec<(i64, Coeff)> = self
            .coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.val24 + k as i64 * self.stride24, c))
            .collect();
        Self::from_sorted_nonzero(nonzero, self.trunc24)
    }

    // ----- accessors ------------------------------------------------------

    /// Exponent of the lowest stored coefficient; equals [`QSeries::trunc`]
    /// for a series that vanishes identically on its window.
    pub fn valuation(&self) -> Exponent {
        Exponent::from_num24(self.val24)
    }

    /// All exponents strictly below this are known exactly.
    pub fn trunc(&self) -> Exponent {
        Exponent::from_num24(self.trunc24)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Leading exponent and coefficient, unless the series is zero.
    pub fn leading(&self) -> Option<(Exponent, &Coeff)> {
        self.coeffs
            .first()
            .map(|c| (Exponent::from_num24(self.val24), c))
    }

    /// Iterates over the nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Coeff)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                (
                    Exponent::from_num24(self.val24 + k as i64 * self.stride24),
                    c,
                )
            })
    }

    /// The coefficient at exponent `e`.
    ///
    /// Exponents below the valuation report zero; exponents at or beyond the
    /// truncation order are an error.
    pub fn coefficient_at(&self, e: Exponent) -> Result<Coeff, QSeriesError> {
        let e24 = e.num24();
        if e24 >= self.trunc24 {
            return Err(QSeriesError::CoefficientOutOfRange(e, self.trunc()));
        }
        if e24 < self.val24 || (e24 - self.val24) % self.stride24 != 0 {
            return Ok(Coeff::zero());
        }
        let k = ((e24 - self.val24) / self.stride24) as usize;
        Ok(self.coeffs.get(k).cloned().unwrap_or_else(Coeff::zero))
    }

    // ----- ring operations ------------------------------------------------

    /// Exact termwise sum; the result is known below min(trunc_a, trunc_b).
    pub fn add(&self, other: &QSeries) -> QSeries {
        let trunc24 = self.trunc24.min(other.trunc24);
        let mut terms: Vec<(i64, Coeff)> = Vec::new();
        let mut push = |e: i64, c: &Coeff| {
            if e < trunc24 && !c.is_zero() {
                terms.push((e, c.clone()));
            }
        };
        for (k, c) in self.coeffs.iter().enumerate() {
            push(self.val24 + k as i64 * self.stride24, c);
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            push(other.val24 + k as i64 * other.stride24, c);
        }
        terms.sort_by_key(|(e, _)| *e);
        let mut merged: Vec<(i64, Coeff)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match merged.last_mut() {
                Some((le, lc)) if *le == e => *lc += &c,
                _ => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        QSeries::from_sorted_nonzero(merged, trunc24)
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.scale(&Coeff::from_int(-1)))
    }

    /// Termwise scalar multiple.
    pub fn scale(&self, c: &Coeff) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(self.trunc());
        }
        QSeries {
            val24: self.val24,
            stride24: self.stride24,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            trunc24: self.trunc24,
        }
        .normalize()
    }

    /// Exact Cauchy product; the result is known below
    /// min(trunc_a + val_b, trunc_b + val_a).
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let trunc24 = (self.trunc24 + other.val24).min(other.trunc24 + self.val24);
        if self.is_zero() || other.is_zero() {
            return QSeries {
                val24: trunc24,
                stride24: LATTICE_DEN,
                coeffs: Vec::new(),
                trunc24,
            };
        }
        let val24 = self.val24 + other.val24;
        let stride24 = self.stride24.gcd(&other.stride24);
        let len = if trunc24 > val24 {
            ((trunc24 - val24 - 1) / stride24 + 1) as usize
        } else {
            0
        };
        let mut acc = vec![Coeff::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ea = self.val24 + i as i64 * self.stride24;
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let e = ea + other.val24 + j as i64 * other.stride24;
                if e >= trunc24 {
                    break;
                }
                acc[((e - val24) / stride24) as usize] += &(a * b);
            }
        }
        QSeries {
            val24,
            stride24,
            coeffs: acc,
            trunc24,
        }
        .normalize()
    }

    /// Multiplicative inverse through the propagated truncation window.
    ///
    /// The leading coefficient must be nonzero; the result has valuation
    /// −valuation(self) and satisfies self·invert(self) = 1 on the common
    /// window.
    pub fn invert(&self) -> Result<QSeries, QSeriesError> {
        let lead = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c,
            _ => return Err(QSeriesError::SingularInversion),
        };
        let lead_inv = lead.inv().expect("nonzero leading coefficient");
        // Relative window: N known steps beyond the valuation are preserved.
        let g = self.stride24;
        let n = ((self.trunc24 - self.val24 - 1) / g + 1) as usize;
        let mut rel = vec![Coeff::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            rel[k] = c.clone();
        }
        let mut inv = vec![Coeff::zero(); n];
        inv[0] = lead_inv.clone();
        for k in 1..n {
            let mut s = Coeff::zero();
            for j in 1..=k {
                if !rel[j].is_zero() && !inv[k - j].is_zero() {
                    s += &(&rel[j] * &inv[k - j]);
                }
            }
            inv[k] = &(-s) * &lead_inv;
        }
        let val24 = -self.val24;
        let trunc24 = self.trunc24 - 2 * self.val24;
        Ok(QSeries {
            val24,
            stride24: g,
            coeffs: inv,
            trunc24,
        }
        .normalize())
    }

    /// Integer power, with negative exponents via inversion.
    pub fn pow(&self, n: i64) -> Result<QSeries, QSeriesError> {
        if n == 0 {
            // Preserve the relative precision of self as an absolute window.
            return Ok(QSeries::one(Exponent::from_num24(
                self.trunc24 - self.val24,
            )));
        }
        let (mut base, mut e) = if n < 0 {
            (self.invert()?, (-n) as u64)
        } else {
            (self.clone(), n as u64)
        };
        let mut result: Option<QSeries> = None;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    Some(r) => r.mul(&base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result.unwrap())
    }

    /// Applies τ → rτ, i.e. q^e ↦ q^{re}, for a positive rational r.
    ///
    /// Every support exponent and the truncation order must stay on the
    /// (1/24)ℤ lattice after scaling.
    pub fn substitute_scale(&self, r: Ratio<i64>) -> Result<QSeries, QSeriesError> {
        assert!(r.is_positive(), "substitution ratio must be positive");
        let factor = r.to_string();
        let trunc = Exponent::from_num24(self.trunc24).scale(r).ok_or_else(|| {
            QSeriesError::OffLattice {
                exponent: self.trunc(),
                factor: factor.clone(),
            }
        })?;
        let mut terms: Vec<(i64, Coeff)> = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.terms() {
            let scaled = e.scale(r).ok_or_else(|| QSeriesError::OffLattice {
                exponent: e,
                factor: factor.clone(),
            })?;
            terms.push((scaled.num24(), c.clone()));
        }
        Ok(QSeries::from_sorted_nonzero(terms, trunc.num24()))
    }

    /// Multiplies by the monomial c·q^e without losing precision: the
    /// truncation window shifts along with the support.
    pub fn mul_monomial(&self, c: &Coeff, e: Exponent) -> QSeries {
        if c.is_zero() {
            return QSeries::zero(Exponent::from_num24(self.trunc24 + e.num24()));
        }
        QSeries {
            val24: self.val24 + e.num24(),
            stride24: self.stride24,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            trunc24: self.trunc24 + e.num24(),
        }
        .normalize()
    }

    /// q d/dq: the term c·q^e maps to c·e·q^e.
    pub fn q_derivative(&self) -> QSeries {
        let terms: Vec<(i64, Coeff)> = self
            .terms()
            .map(|(e, c)| {
                let factor =
                    Coeff::from_rational(BigRational::new(e.num24().into(), LATTICE_DEN.into()));
                (e.num24(), c * &factor)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        QSeries::from_sorted_nonzero(terms, self.trunc24)
    }

    /// Reduces every known coefficient modulo M, returning residues in
    /// [0, M) for each support-lattice step from the valuation up to the
    /// truncation order.
    ///
    /// Every coefficient must be a rational integer; the first violation is
    /// reported with its exponent.
    pub fn reduce_mod(&self, modulus: u64) -> Result<Vec<u64>, QSeriesError> {
        assert!(modulus > 0, "modulus must be positive");
        let m = num::BigInt::from(modulus);
        let window = if self.trunc24 > self.val24 {
            ((self.trunc24 - self.val24 - 1) / self.stride24 + 1) as usize
        } else {
            0
        };
        let mut out = Vec::with_capacity(window);
        for k in 0..window {
            let c = self.coeffs.get(k).cloned().unwrap_or_else(Coeff::zero);
            let e = Exponent::from_num24(self.val24 + k as i64 * self.stride24);
            let int = c
                .as_integer()
                .ok_or_else(|| QSeriesError::NonIntegralCoefficient {
                    exponent: e,
                    value: c.to_string(),
                })?;
            let r = ((&int % &m) + &m) % &m;
            out.push(u64::try_from(&r).expect("residue fits in u64"));
        }
        Ok(out)
    }

    /// True when all known coefficients of `self` and `other` agree on the
    /// common window below min(trunc, trunc).
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        let t = self.trunc24.min(other.trunc24);
        let mut mine: Vec<(i64, &Coeff)> = self
            .terms()
            .filter(|(e, _)| e.num24() < t)
            .map(|(e, c)| (e.num24(), c))
            .collect();
        let mut theirs: Vec<(i64, &Coeff)> = other
            .terms()
            .filter(|(e, _)| e.num24() < t)
            .map(|(e, c)| (e.num24(), c))
            .collect();
        mine.sort_by_key(|(e, _)| *e);
        theirs.sort_by_key(|(e, _)| *e);
        mine == theirs
    }
}
