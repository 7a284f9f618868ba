//! Level-23 cusp form data.
//!
//! The definition of the 23AB McKay-Thompson series uses two weight-2 cusp
//! forms f_{23,1}, f_{23,2} for Γ₀(23). Their q-expansions are not computed
//! here; they ship as a data file and are validated on load. When the file is
//! absent, everything that does not involve 23AB keeps working.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coeff::Coeff;
use crate::error::FormsError;
use crate::exponent::Exponent;
use crate::qseries::QSeries;

/// One loaded cusp form with integer coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CuspFormData {
    pub name: String,
    pub level: i64,
    pub weight: i64,
    /// Exponent of the first listed coefficient (≥ 1 for a cusp expansion).
    pub first_exponent: i64,
    /// Coefficients of q^{first_exponent}, q^{first_exponent+1}, ...
    pub coefficients: Vec<i64>,
}

impl CuspFormData {
    /// The expansion is known exactly below this integer exponent.
    pub fn declared_trunc(&self) -> Exponent {
        Exponent::from_int(self.first_exponent + self.coefficients.len() as i64)
    }

    /// Converts to a series known below `trunc`.
    ///
    /// Fails when the stored expansion is shorter than the requested window;
    /// the caller decides how many coefficients a given certification needs.
    pub fn to_series(&self, trunc: Exponent) -> Result<QSeries, FormsError> {
        if self.declared_trunc() < trunc {
            return Err(FormsError::DataUnavailable(format!(
                "{} is only known below q^{} but q^{} was requested",
                self.name,
                self.declared_trunc(),
                trunc
            )));
        }
        let terms = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(k, &c)| {
                (
                    Exponent::from_int(self.first_exponent + k as i64),
                    Coeff::from_int(c),
                )
            })
            .filter(|(e, _)| *e < trunc)
            .collect();
        Ok(QSeries::from_terms(terms, trunc)?)
    }

    fn validate(&self) -> Result<(), FormsError> {
        if self.first_exponent < 1 {
            return Err(FormsError::MalformedData(format!(
                "{}: a cusp expansion must have zero constant term (first_exponent = {})",
                self.name, self.first_exponent
            )));
        }
        if self.coefficients.is_empty() {
            return Err(FormsError::MalformedData(format!(
                "{}: empty coefficient list",
                self.name
            )));
        }
        Ok(())
    }
}

/// The set of cusp forms loaded from one data file, keyed by name.
#[derive(Clone, Debug, Default)]
pub struct CuspDataSet {
    forms: BTreeMap<String, CuspFormData>,
}

#[derive(Deserialize)]
struct CuspFile {
    forms: Vec<CuspFormData>,
}

impl CuspDataSet {
    pub fn get(&self, name: &str) -> Option<&CuspFormData> {
        self.forms.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.forms.keys().map(|s| s.as_str())
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn insert(&mut self, form: CuspFormData) -> Result<(), FormsError> {
        form.validate()?;
        self.forms.insert(form.name.clone(), form);
        Ok(())
    }
}

/// Loads and validates the cusp-form data file.
pub fn load_cusp_forms(path: &Path) -> Result<CuspDataSet, FormsError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormsError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: CuspFile =
        serde_json::from_str(&text).map_err(|e| FormsError::MalformedData(e.to_string()))?;
    let mut set = CuspDataSet::default();
    for form in file.forms {
        set.insert(form)?;
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(first: i64) -> CuspFormData {
        CuspFormData {
            name: "f23_1".into(),
            level: 23,
            weight: 2,
            first_exponent: first,
            coefficients: vec![1, -1, 0, 2],
        }
    }

    #[test]
    fn accepts_cusp_expansion() {
        let mut set = CuspDataSet::default();
        set.insert(sample(1)).unwrap();
        let s = set
            .get("f23_1")
            .unwrap()
            .to_series(Exponent::from_int(5))
            .unwrap();
        assert_eq!(
            s.coefficient_at(Exponent::from_int(1)).unwrap(),
            Coeff::one()
        );
        assert_eq!(
            s.coefficient_at(Exponent::from_int(4)).unwrap(),
            Coeff::from_int(2)
        );
    }

    #[test]
    fn rejects_nonzero_constant_term() {
        let mut set = CuspDataSet::default();
        let err = set.insert(sample(0)).unwrap_err();
        assert!(matches!(err, FormsError::MalformedData(_)));
    }

    #[test]
    fn reports_short_data() {
        let mut set = CuspDataSet::default();
        set.insert(sample(1)).unwrap();
        let err = set
            .get("f23_1")
            .unwrap()
            .to_series(Exponent::from_int(100))
            .unwrap_err();
        assert!(matches!(err, FormsError::DataUnavailable(_)));
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_cusp_forms(Path::new("/nonexistent/f23.json")).unwrap_err();
        assert!(matches!(err, FormsError::Io { .. }));
    }
}
