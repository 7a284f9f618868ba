//! M₂₄ character table ingestion and moonshine module decomposition.
//!
//! The character table ships as a data file: group order, 26 class records
//! and a 26×26 matrix of entries a + b√d over quadratic extensions
//! (d ∈ {−7, −15, −23} for M₂₄). Loading runs the full exact row and column
//! orthogonality relations; a table that passes them and has the right class
//! sizes is certified as a valid character table.
//!
//! Decomposition inverts tr(g|K_n) = Σ m_χ χ(g) through the orthogonality
//! relations: m_χ = (1/|G|) Σ_c |c| · tr(g_c|K_n) · conj(χ(g_c)). The
//! irrational parts cancel across conjugate class pairs, which is asserted,
//! and the resulting multiplicities must be integers.

use std::collections::BTreeMap;
use std::path::Path;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::M24Error;
use crate::mckay::{ClassId, McKayRegistry};

/// An exact value a + b√d (d square-free; d = 0 encodes a plain rational).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraicValue {
    pub a: BigRational,
    pub b: BigRational,
    pub d: i64,
}

impl AlgebraicValue {
    pub fn rational(a: BigRational) -> Self {
        AlgebraicValue {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn new(a: BigRational, b: BigRational, d: i64) -> Result<Self, M24Error> {
        if b.is_zero() {
            return Ok(AlgebraicValue { a, b, d: 0 });
        }
        if d == 0 {
            return Err(M24Error::MalformedData(
                "entry has nonzero irrational part but d = 0".into(),
            ));
        }
        Ok(AlgebraicValue { a, b, d })
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Complex conjugate: for d < 0 the irrational part flips sign; for
    /// d > 0 the value is real and fixed.
    pub fn conj(&self) -> Self {
        if self.d < 0 {
            AlgebraicValue {
                a: self.a.clone(),
                b: -self.b.clone(),
                d: self.d,
            }
        } else {
            self.clone()
        }
    }

    /// Product inside a common quadratic extension.
    pub fn mul(&self, other: &AlgebraicValue) -> Result<AlgebraicValue, M24Error> {
        if self.is_rational() {
            return Ok(AlgebraicValue {
                a: &self.a * &other.a,
                b: &self.a * &other.b,
                d: other.d,
            });
        }
        if other.is_rational() {
            return Ok(AlgebraicValue {
                a: &self.a * &other.a,
                b: &self.b * &other.a,
                d: self.d,
            });
        }
        if self.d != other.d {
            return Err(M24Error::MalformedData(format!(
                "product of incompatible extensions sqrt({}) and sqrt({})",
                self.d, other.d
            )));
        }
        let dd = BigRational::from_integer(self.d.into());
        let a = &self.a * &other.a + &(&self.b * &other.b) * &dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        let d = if b.is_zero() { 0 } else { self.d };
        Ok(AlgebraicValue { a, b, d })
    }
}

impl std::fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Accumulator for sums of algebraic values across different extensions.
#[derive(Default)]
struct AlgSum {
    rat: BigRational,
    irr: BTreeMap<i64, BigRational>,
}

impl AlgSum {
    fn add_scaled(&mut self, v: &AlgebraicValue, s: &BigRational) {
        self.rat += &v.a * s;
        if !v.b.is_zero() {
            let slot = self.irr.entry(v.d).or_insert_with(BigRational::zero);
            *slot += &v.b * s;
        }
    }

    fn into_rational(self) -> Result<BigRational, M24Error> {
        if self.irr.values().all(|x| x.is_zero()) {
            Ok(self.rat)
        } else {
            Err(M24Error::IrrationalResidue)
        }
    }
}

/// One conjugacy class record from the data file.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub name: String,
    pub size: u64,
    /// Which of the 21 McKay-Thompson series carries this class's traces.
    pub series_key: ClassId,
}

/// The validated character table.
#[derive(Debug)]
pub struct CharacterTable {
    pub group_order: u64,
    pub classes: Vec<ClassRecord>,
    /// `irreps[i][c]` = χ_{i+1}(g_c), rows in ATLAS order.
    pub irreps: Vec<Vec<AlgebraicValue>>,
    /// `conjugate_pairing[i] = j` with χ_{j+1} = conj(χ_{i+1}).
    pub conjugate_pairing: Vec<usize>,
}

// ----- data file schema ------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct EntryFile {
    a: String,
    b: String,
    d: i64,
}

#[derive(Serialize, Deserialize)]
struct ClassFile {
    name: String,
    size: u64,
    series_key: String,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    group_order: u64,
    classes: Vec<ClassFile>,
    irreps: Vec<Vec<EntryFile>>,
}

fn parse_rational(s: &str) -> Result<BigRational, M24Error> {
    let parse_int = |t: &str| -> Result<BigInt, M24Error> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| M24Error::MalformedData(format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den.is_zero() {
                return Err(M24Error::MalformedData(format!(
                    "zero denominator in {s:?}"
                )));
            }
            Ok(BigRational::new(parse_int(p)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

impl CharacterTable {
    /// Loads a table from the documented JSON schema and runs every
    /// validation oracle.
    pub fn load(path: &Path) -> Result<Self, M24Error> {
        let text = std::fs::read_to_string(path).map_err(|source| M24Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let file: TableFile =
            serde_json::from_str(&text).map_err(|e| M24Error::MalformedData(e.to_string()))?;
        let classes = file
            .classes
            .into_iter()
            .map(|c| {
                let series_key = c.series_key.parse::<ClassId>().map_err(|_| {
                    M24Error::MalformedData(format!("bad series key {:?}", c.series_key))
                })?;
                Ok(ClassRecord {
                    name: c.name,
                    size: c.size,
                    series_key,
                })
            })
            .collect::<Result<Vec<_>, M24Error>>()?;
        let irreps = file
            .irreps
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| AlgebraicValue::new(parse_rational(&e.a)?, parse_rational(&e.b)?, e.d))
                    .collect::<Result<Vec<_>, M24Error>>()
            })
            .collect::<Result<Vec<_>, M24Error>>()?;
        Self::from_parts(file.group_order, classes, irreps)
    }

    /// Builds and validates a table from already-parsed parts.
    ///
    /// Validation: class sizes sum to the group order, every row pair and
    /// column pair satisfies the exact orthogonality relation, and a
    /// conjugate partner exists for every irreducible.
    pub fn from_parts(
        group_order: u64,
        classes: Vec<ClassRecord>,
        irreps: Vec<Vec<AlgebraicValue>>,
    ) -> Result<Self, M24Error> {
        let n = classes.len();
        if irreps.len() != n || irreps.iter().any(|r| r.len() != n) {
            return Err(M24Error::MalformedData(format!(
                "expected a square {n}x{n} table matching the class list"
            )));
        }
        if n == 0 {
            return Err(M24Error::MalformedData("empty table".into()));
        }
        if classes[0].size != 1 {
            return Err(M24Error::MalformedData(
                "first class must be the identity (size 1)".into(),
            ));
        }
        let size_sum: u64 = classes.iter().map(|c| c.size).sum();
        if size_sum != group_order {
            return Err(M24Error::ClassSizeSum {
                got: size_sum.to_string(),
                expected: group_order.to_string(),
            });
        }

        let table = CharacterTable {
            group_order,
            conjugate_pairing: vec![0; n],
            classes,
            irreps,
        };
        table.check_row_orthogonality()?;
        table.check_column_orthogonality()?;
        let conjugate_pairing = table.derive_pairing()?;
        Ok(CharacterTable {
            conjugate_pairing,
            ..table
        })
    }

    fn check_row_orthogonality(&self) -> Result<(), M24Error> {
        let n = self.classes.len();
        let order = BigRational::from_integer(self.group_order.into());
        for i in 0..n {
            for j in i..n {
                let mut sum = AlgSum::default();
                for (c, class) in self.classes.iter().enumerate() {
                    let prod = self.irreps[i][c].mul(&self.irreps[j][c].conj())?;
                    sum.add_scaled(&prod, &BigRational::from_integer(class.size.into()));
                }
                let value = sum
                    .into_rational()
                    .map_err(|_| M24Error::OrthogonalityFailure {
                        kind: "rows",
                        i: i + 1,
                        j: j + 1,
                        value: "irrational residue".into(),
                    })?;
                let expected = if i == j {
                    order.clone()
                } else {
                    BigRational::zero()
                };
                if value != expected {
                    return Err(M24Error::OrthogonalityFailure {
                        kind: "rows",
                        i: i + 1,
                        j: j + 1,
                        value: (value / &order).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_column_orthogonality(&self) -> Result<(), M24Error> {
        let n = self.classes.len();
        for c in 0..n {
            for c2 in c..n {
                let mut sum = AlgSum::default();
                for row in &self.irreps {
                    let prod = row[c].mul(&row[c2].conj())?;
                    sum.add_scaled(&prod, &BigRational::one());
                }
                let value = sum
                    .into_rational()
                    .map_err(|_| M24Error::OrthogonalityFailure {
                        kind: "columns",
                        i: c + 1,
                        j: c2 + 1,
                        value: "irrational residue".into(),
                    })?;
                let expected = if c == c2 {
                    BigRational::new(
                        BigInt::from(self.group_order),
                        BigInt::from(self.classes[c].size),
                    )
                } else {
                    BigRational::zero()
                };
                if value != expected {
                    return Err(M24Error::OrthogonalityFailure {
                        kind: "columns",
                        i: c + 1,
                        j: c2 + 1,
                        value: value.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Matches every row with the unique row that is its entrywise
    /// conjugate. Real rows pair with themselves.
    fn derive_pairing(&self) -> Result<Vec<usize>, M24Error> {
        let n = self.classes.len();
        let mut pairing = Vec::with_capacity(n);
        for i in 0..n {
            let conj_row: Vec<AlgebraicValue> = self.irreps[i].iter().map(|v| v.conj()).collect();
            let j = (0..n)
                .find(|&j| self.irreps[j] == conj_row)
                .ok_or(M24Error::PairingFailure(i + 1))?;
            pairing.push(j);
        }
        Ok(pairing)
    }

    /// Degree of the (i+1)-st irreducible (its value on the identity).
    pub fn degree(&self, i: usize) -> BigInt {
        self.irreps[i][0]
            .as_rational()
            .expect("degrees are rational")
            .to_integer()
    }

    /// The complex-conjugate pair of irreducibles with the given degree,
    /// as 0-based row indices (i, pairing(i)) with i < pairing(i).
    pub fn complex_pair_by_degree(&self, degree: u64) -> Option<(usize, usize)> {
        let d = BigInt::from(degree);
        (0..self.classes.len()).find_map(|i| {
            let j = self.conjugate_pairing[i];
            (j > i && self.degree(i) == d).then_some((i, j))
        })
    }

    /// Index of the class with the given name.
    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }
}

// ----- decomposition ----------------------------------------------------------

/// The grades carrying the moonshine module: n = −1 and n ≡ 7 (mod 8).
pub fn grade_on_support(n: i64) -> bool {
    n == -1 || (n >= 0 && n.rem_euclid(8) == 7)
}

/// Traces tr(g|K_n) for every class column: the coefficient of q^{n/8} in
/// the class's McKay-Thompson series. Grades off the support give the zero
/// map.
pub fn traces_at_grade(
    registry: &McKayRegistry,
    table: &CharacterTable,
    n: i64,
) -> Result<Vec<BigInt>, M24Error> {
    if n < -1 {
        return Err(M24Error::InvalidGrade(n));
    }
    if !grade_on_support(n) {
        return Ok(vec![BigInt::zero(); table.classes.len()]);
    }
    table
        .classes
        .iter()
        .map(|c| {
            registry
                .grade_coefficient(c.series_key, n)
                .map_err(M24Error::from)
        })
        .collect()
}

/// Multiplicities of the 26 irreducibles in one graded piece K_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    pub n: i64,
    pub m: Vec<BigInt>,
}

/// Inverts the trace map through orthogonality:
/// m_χ = (1/|G|) Σ_c |c| · t_c · conj(χ(g_c)).
///
/// The irrational contributions must cancel and every multiplicity must be
/// an integer; violations signal inconsistent inputs.
pub fn decompose_traces(
    table: &CharacterTable,
    traces: &[BigInt],
    n: i64,
) -> Result<MultiplicityVector, M24Error> {
    assert_eq!(traces.len(), table.classes.len(), "one trace per class");
    let order = BigRational::from_integer(table.group_order.into());
    let mut m = Vec::with_capacity(table.irreps.len());
    for (i, row) in table.irreps.iter().enumerate() {
        let mut sum = AlgSum::default();
        for (c, class) in table.classes.iter().enumerate() {
            let weight = BigRational::from_integer(BigInt::from(class.size) * &traces[c]);
            sum.add_scaled(&row[c].conj(), &weight);
        }
        let value = sum.into_rational()? / &order;
        if !value.is_integer() {
            return Err(M24Error::NonIntegralMultiplicity {
                grade: n,
                index: i + 1,
                value: value.to_string(),
            });
        }
        m.push(value.to_integer());
    }
    Ok(MultiplicityVector { n, m })
}

/// Builds traces and decomposes the grade in one step.
pub fn decompose_grade(
    registry: &McKayRegistry,
    table: &CharacterTable,
    n: i64,
) -> Result<MultiplicityVector, M24Error> {
    let traces = traces_at_grade(registry, table, n)?;
    decompose_traces(table, &traces, n)
}

/// Recombines Σ_i m_i χ_i(g_c) for every class; the left inverse of
/// [`decompose_traces`].
pub fn recombine_traces(
    table: &CharacterTable,
    mv: &MultiplicityVector,
) -> Result<Vec<BigInt>, M24Error> {
    let mut out = Vec::with_capacity(table.classes.len());
    for c in 0..table.classes.len() {
        let mut sum = AlgSum::default();
        for (i, row) in table.irreps.iter().enumerate() {
            sum.add_scaled(&row[c], &BigRational::from_integer(mv.m[i].clone()));
        }
        let v = sum.into_rational()?;
        if !v.is_integer() {
            return Err(M24Error::MalformedData(format!(
                "recombined trace {v} at class {} is not an integer",
                table.classes[c].name
            )));
        }
        out.push(v.to_integer());
    }
    Ok(out)
}

/// Structure report for one grade: nonnegativity (n ≥ 0), equality across
/// conjugate pairs, and evenness for self-conjugate irreducibles.
#[derive(Clone, Debug, Serialize)]
pub struct PairStructureReport {
    pub n: i64,
    pub violations: Vec<String>,
}

impl PairStructureReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies the λ⊕λ̄ structure of K_n.
pub fn check_pair_structure(
    table: &CharacterTable,
    mv: &MultiplicityVector,
) -> PairStructureReport {
    let mut violations = Vec::new();
    for (i, m) in mv.m.iter().enumerate() {
        let j = table.conjugate_pairing[i];
        if mv.n >= 0 && m.is_negative() {
            violations.push(format!("m_{} = {} is negative", i + 1, m));
        }
        if mv.m[i] != mv.m[j] {
            violations.push(format!(
                "m_{} = {} differs from conjugate m_{} = {}",
                i + 1,
                mv.m[i],
                j + 1,
                mv.m[j]
            ));
        }
        if i == j && (&mv.m[i] % 2u8) != BigInt::zero() {
            violations.push(format!("self-conjugate m_{} = {} is odd", i + 1, mv.m[i]));
        }
    }
    PairStructureReport {
        n: mv.n,
        violations,
    }
}

/// Shape n = ℓm² with ℓ ∈ {7, 15, 23} and m odd (every such n is ≡ 7 mod 8).
pub fn qualifying_shape(n: i64) -> Option<(i64, i64)> {
    if n <= 0 {
        return None;
    }
    for l in [7i64, 15, 23] {
        if n % l == 0 {
            let k = n / l;
            let m = (k as f64).sqrt().round() as i64;
            if m * m == k && m % 2 == 1 {
                return Some((l, m));
            }
        }
    }
    None
}

/// One asserted parity statement about pair multiplicities.
#[derive(Clone, Debug, Serialize)]
pub struct ParityAssertion {
    pub description: String,
    pub value: String,
    pub odd: bool,
}

/// Report for the multiplicity-parity checks at one grade n = ℓm².
#[derive(Clone, Debug, Serialize)]
pub struct ApplicationReport {
    pub n: i64,
    pub ell: i64,
    pub m: i64,
    pub assertions: Vec<ParityAssertion>,
}

impl ApplicationReport {
    pub fn ok(&self) -> bool {
        self.assertions.iter().all(|a| a.odd)
    }
}

fn pair_multiplicity(
    table: &CharacterTable,
    mv: &MultiplicityVector,
    degree: u64,
) -> (usize, BigInt) {
    let (i, j) = table
        .complex_pair_by_degree(degree)
        .unwrap_or_else(|| panic!("no complex-conjugate pair of degree {degree}"));
    assert_eq!(mv.m[i], mv.m[j], "pair multiplicities must agree");
    (i, mv.m[i].clone())
}

fn is_odd(v: &BigInt) -> bool {
    (v % 2u8) != BigInt::zero()
}

/// Checks the parity statements about K_n for n = ℓm² (m odd):
/// - ℓ = 7: the multiplicity of the degree-45 pair plus that of the
///   degree-990 pair is odd; for 3 | m the degree-1035 complex pair is odd;
/// - ℓ = 15: the degree-231 pair multiplicity is odd;
/// - ℓ = 23: the degree-770 pair multiplicity is odd.
pub fn check_multiplicity_parity(
    table: &CharacterTable,
    mv: &MultiplicityVector,
) -> Result<ApplicationReport, M24Error> {
    let (ell, m) = qualifying_shape(mv.n).ok_or(M24Error::InvalidGrade(mv.n))?;
    let mut assertions = Vec::new();
    let pair_desc = |i: usize| format!("χ{}⊕χ{}", i + 1, table.conjugate_pairing[i] + 1);
    match ell {
        7 => {
            let (i45, m45) = pair_multiplicity(table, mv, 45);
            let (i990, m990) = pair_multiplicity(table, mv, 990);
            let total = &m45 + &m990;
            assertions.push(ParityAssertion {
                description: format!("m({}) + m({})", pair_desc(i45), pair_desc(i990)),
                value: total.to_string(),
                odd: is_odd(&total),
            });
            if m % 3 == 0 {
                let (i1035, m1035) = pair_multiplicity(table, mv, 1035);
                assertions.push(ParityAssertion {
                    description: format!("m({})", pair_desc(i1035)),
                    value: m1035.to_string(),
                    odd: is_odd(&m1035),
                });
            }
        }
        15 => {
            let (i231, m231) = pair_multiplicity(table, mv, 231);
            assertions.push(ParityAssertion {
                description: format!("m({})", pair_desc(i231)),
                value: m231.to_string(),
                odd: is_odd(&m231),
            });
        }
        23 => {
            let (i770, m770) = pair_multiplicity(table, mv, 770);
            assertions.push(ParityAssertion {
                description: format!("m({})", pair_desc(i770)),
                value: m770.to_string(),
                odd: is_odd(&m770),
            });
        }
        _ => unreachable!(),
    }
    Ok(ApplicationReport {
        n: mv.n,
        ell,
        m,
        assertions,
    })
}

/// One conjectured-pair presence check at a grade n = ℓm².
#[derive(Clone, Debug, Serialize)]
pub struct PresenceCheck {
    pub n: i64,
    pub ell: i64,
    pub m: i64,
    pub present: bool,
    pub detail: String,
}

/// For every n = ℓm² ≤ n_max verifies that K_n contains the conjectured
/// conjugate pair: one of the degree-45/990/1035 pairs for ℓ = 7, the
/// degree-231 pair for ℓ = 15 and the degree-770 pair for ℓ = 23.
pub fn check_conjectured_pairs(
    registry: &McKayRegistry,
    table: &CharacterTable,
    n_max: i64,
) -> Result<Vec<PresenceCheck>, M24Error> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        let Some((ell, m)) = qualifying_shape(n) else {
            continue;
        };
        let mv = decompose_grade(registry, table, n)?;
        let inspect = |degree: u64| -> (BigInt, String) {
            let (i, v) = pair_multiplicity(table, &mv, degree);
            let j = table.conjugate_pairing[i] + 1;
            (v.clone(), format!("m(χ{}⊕χ{}) = {}", i + 1, j, v))
        };
        let (present, detail) = match ell {
            7 => {
                let checks = [inspect(45), inspect(990), inspect(1035)];
                (
                    checks.iter().any(|(v, _)| v.is_positive()),
                    checks
                        .iter()
                        .map(|(_, s)| s.clone())
                        .collect::<Vec<_>>()
                        .join(", "),
                )
            }
            15 => {
                let (v, s) = inspect(231);
                (v.is_positive(), s)
            }
            23 => {
                let (v, s) = inspect(770);
                (v.is_positive(), s)
            }
            _ => unreachable!(),
        };
        out.push(PresenceCheck {
            n,
            ell,
            m,
            present,
            detail,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn half(n: i64) -> BigRational {
        BigRational::new(n.into(), 2.into())
    }

    /// The character table of the cyclic group C₃, with ω = (−1+√−3)/2.
    fn c3_table() -> CharacterTable {
        let omega = AlgebraicValue::new(half(-1), half(1), -3).unwrap();
        let omega_bar = omega.conj();
        let one = AlgebraicValue::from_int(1);
        let classes = vec![
            ClassRecord {
                name: "1A".into(),
                size: 1,
                series_key: ClassId::C1A,
            },
            ClassRecord {
                name: "3A".into(),
                size: 1,
                series_key: ClassId::C3A,
            },
            ClassRecord {
                name: "3B".into(),
                size: 1,
                series_key: ClassId::C3B,
            },
        ];
        let irreps = vec![
            vec![one.clone(), one.clone(), one.clone()],
            vec![one.clone(), omega.clone(), omega_bar.clone()],
            vec![one.clone(), omega_bar, omega],
        ];
        CharacterTable::from_parts(3, classes, irreps).unwrap()
    }

    #[test]
    fn c3_orthogonality_and_pairing() {
        let t = c3_table();
        assert_eq!(t.conjugate_pairing, vec![0, 2, 1]);
        assert_eq!(t.complex_pair_by_degree(1), Some((1, 2)));
    }

    #[test]
    fn corrupted_entry_fails_orthogonality() {
        let mut omega = AlgebraicValue::new(half(-1), half(1), -3).unwrap();
        let one = AlgebraicValue::from_int(1);
        let classes = vec![
            ClassRecord {
                name: "1A".into(),
                size: 1,
                series_key: ClassId::C1A,
            },
            ClassRecord {
                name: "3A".into(),
                size: 1,
                series_key: ClassId::C3A,
            },
            ClassRecord {
                name: "3B".into(),
                size: 1,
                series_key: ClassId::C3B,
            },
        ];
        omega.a = rat(1); // corrupt the rational part
        let irreps = vec![
            vec![one.clone(), one.clone(), one.clone()],
            vec![one.clone(), omega.clone(), omega.conj()],
            vec![one.clone(), omega.conj(), omega],
        ];
        let err = CharacterTable::from_parts(3, classes, irreps).unwrap_err();
        assert!(
            matches!(err, M24Error::OrthogonalityFailure { .. }),
            "got {err:?}"
        );
    }

    #[test]
    fn class_size_sum_is_checked() {
        let one = AlgebraicValue::from_int(1);
        let classes = vec![ClassRecord {
            name: "1A".into(),
            size: 1,
            series_key: ClassId::C1A,
        }];
        let err = CharacterTable::from_parts(2, classes, vec![vec![one]]).unwrap_err();
        assert!(matches!(err, M24Error::ClassSizeSum { .. }));
    }

    #[test]
    fn decompose_constant_traces_gives_trivial_rep() {
        // constant trace −2 decomposes as −2 × trivial representation
        let t = c3_table();
        let traces = vec![BigInt::from(-2), BigInt::from(-2), BigInt::from(-2)];
        let mv = decompose_traces(&t, &traces, -1).unwrap();
        assert_eq!(mv.m, vec![BigInt::from(-2), BigInt::zero(), BigInt::zero()]);
        let back = recombine_traces(&t, &mv).unwrap();
        assert_eq!(back, traces);
    }

    #[test]
    fn decompose_rejects_non_integral() {
        let t = c3_table();
        let traces = vec![BigInt::from(1), BigInt::zero(), BigInt::zero()];
        let err = decompose_traces(&t, &traces, 7).unwrap_err();
        assert!(matches!(err, M24Error::NonIntegralMultiplicity { .. }));
    }

    #[test]
    fn qualifying_shapes() {
        assert_eq!(qualifying_shape(7), Some((7, 1)));
        assert_eq!(qualifying_shape(63), Some((7, 3)));
        assert_eq!(qualifying_shape(15), Some((15, 1)));
        assert_eq!(qualifying_shape(23), Some((23, 1)));
        assert_eq!(qualifying_shape(28), None); // 7·4: m even
        assert_eq!(qualifying_shape(31), None);
        assert_eq!(qualifying_shape(0), None);
    }

    #[test]
    fn grade_support() {
        assert!(grade_on_support(-1));
        assert!(grade_on_support(7));
        assert!(grade_on_support(15));
        assert!(!grade_on_support(0));
        assert!(!grade_on_support(8));
    }

    #[test]
    fn pair_structure_detects_violations() {
        let t = c3_table();
        let bad = MultiplicityVector {
            n: 7,
            m: vec![BigInt::from(1), BigInt::from(2), BigInt::from(1)],
        };
        let rep = check_pair_structure(&t, &bad);
        assert!(!rep.ok());
        assert!(rep.violations.iter().any(|v| v.contains("self-conjugate")));
        assert!(rep.violations.iter().any(|v| v.contains("differs")));
    }
}
