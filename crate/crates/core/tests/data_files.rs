//! Integration tests for the shipped data files and the documented file
//! interfaces: character table, cusp forms, recipe overrides, certificate
//! serialization.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use moonshine_core::exponent::Exponent;
use moonshine_core::forms::load_cusp_forms;
use moonshine_core::m24::CharacterTable;
use moonshine_core::mckay::{formula, ClassId, FormulaTerm, McKayRegistry};
use moonshine_core::parity::{
    load_recipe_overrides, parity_scan, sturm_verify, Generator, ParityCertificate,
};

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn registry_with_data() -> McKayRegistry {
    let set = load_cusp_forms(&data_dir().join("f23_cusp_forms.json")).expect("shipped data");
    McKayRegistry::with_cusp_data(set)
}

#[test]
fn shipped_character_table_loads_and_validates() {
    let table = CharacterTable::load(&data_dir().join("m24_character_table.json")).unwrap();
    assert_eq!(table.classes.len(), 26);
    // class sizes sum to the group order (checked on load; spot check values)
    assert_eq!(table.classes[0].name, "1A");
    assert_eq!(table.classes[1].size, 11385);
    assert_eq!(table.classes.iter().map(|c| c.size).sum::<u64>(), 244823040);
    // merged series keys: 7A and 7B both map to the 7AB series
    let i7a = table.class_index("7A").unwrap();
    let i7b = table.class_index("7B").unwrap();
    assert_eq!(table.classes[i7a].series_key, ClassId::C7AB);
    assert_eq!(table.classes[i7b].series_key, ClassId::C7AB);
}

#[test]
fn corrupted_table_entry_is_rejected() {
    let text = std::fs::read_to_string(data_dir().join("m24_character_table.json")).unwrap();
    // corrupt one degree-45 entry on 2A (-3 -> 3)
    let corrupted = text.replacen(
        "{\"a\": \"-3\", \"b\": \"0\", \"d\": 0}",
        "{\"a\": \"3\", \"b\": \"0\", \"d\": 0}",
        1,
    );
    assert_ne!(text, corrupted, "corruption must hit an entry");
    let dir = std::env::temp_dir().join("moonshine_corrupt_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    std::fs::write(&path, corrupted).unwrap();
    let err = CharacterTable::load(&path).unwrap_err();
    let msg = err.to_string();
    assert!(
        msg.contains("orthogonality"),
        "expected named orthogonality failure, got: {msg}"
    );
}

#[test]
fn shipped_cusp_forms_load_and_support_23ab() {
    let set = load_cusp_forms(&data_dir().join("f23_cusp_forms.json")).unwrap();
    let names: Vec<&str> = set.names().collect();
    assert_eq!(names, vec!["f23_1", "f23_2"]);
    for name in names {
        let form = set.get(name).unwrap();
        assert_eq!(form.level, 23);
        assert_eq!(form.weight, 2);
        assert!(form.first_exponent >= 1, "cusp expansion");
    }
    // integrality scan + leading window of the 23AB series act as the
    // data-sanity oracle (build checks integrality internally)
    let registry = registry_with_data();
    let series = registry
        .build(ClassId::C23AB, Exponent::from_eighths(1608))
        .unwrap();
    assert_eq!(
        series.coefficient_at(Exponent::from_eighths(-1)).unwrap(),
        moonshine_core::Coeff::from_int(-2)
    );
    // 23AB differs from every other class within grade 50
    let trunc = Exponent::from_eighths(51);
    let s23 = registry.build(ClassId::C23AB, trunc).unwrap();
    for class in moonshine_core::mckay::ALL_CLASSES {
        if class == ClassId::C23AB {
            continue;
        }
        let other = registry.build(class, trunc).unwrap();
        assert!(
            !s23.agrees_with(&other),
            "23AB agrees with {class} through grade 50"
        );
    }
}

#[test]
fn parity_scan_23ab_with_data() {
    let registry = registry_with_data();
    let cert = parity_scan(&registry, ClassId::C23AB, 1000).unwrap();
    assert!(cert.passed());
}

#[test]
fn recipe_override_file_roundtrip() {
    let overrides = load_recipe_overrides(&fixture("recipe_7ab.json")).unwrap();
    let recipe = overrides.get(&ClassId::C7AB).expect("7AB override");
    assert_eq!(recipe.combination.len(), 3);
    assert_eq!(recipe.context.level, 448);
    assert_eq!(recipe.context.bound, 129);
    assert!(recipe
        .combination
        .iter()
        .any(|(g, c)| *g == Generator::Phi2(7)
            && *c == moonshine_core::num::rational::Ratio::new(-7, 4)));

    // the override is validated and then certifies exactly like the derived recipe
    let registry = McKayRegistry::new();
    let cert = sturm_verify(&registry, ClassId::C7AB, Some(&overrides)).unwrap();
    assert!(cert.passed());
    assert_eq!(cert.bound, Some(129));
}

#[test]
fn invalid_override_recipe_is_rejected() {
    // a wrong coefficient breaks the even-integrality validation
    let overrides = load_recipe_overrides(&fixture("recipe_bad.json")).unwrap();
    let registry = McKayRegistry::new();
    let err = sturm_verify(&registry, ClassId::C7AB, Some(&overrides)).unwrap_err();
    let msg = err.to_string();
    assert!(
        msg.contains("validation") || msg.contains("non-integral") || msg.contains("odd"),
        "unexpected error: {msg}"
    );
}

#[test]
fn certificates_are_reproducible() {
    let registry = McKayRegistry::new();
    let a = sturm_verify(&registry, ClassId::C7AB, None).unwrap();
    let b = sturm_verify(&registry, ClassId::C7AB, None).unwrap();
    let ja = serde_json::to_string_pretty(&a).unwrap();
    let jb = serde_json::to_string_pretty(&b).unwrap();
    assert_eq!(ja, jb, "byte-identical certificates");
    let back: ParityCertificate = serde_json::from_str(&ja).unwrap();
    assert_eq!(back, a, "JSON round-trip is the identity");
}

#[test]
fn formula_table_matches_displayed_eta_products() {
    // 2B: -2 eta(t)^5 / eta(2t)^4
    let f2b = formula(ClassId::C2B);
    assert!(!f2b.divide_by_eta3);
    match &f2b.terms[..] {
        [FormulaTerm::Eta(q, c)] => {
            assert_eq!(q.factors(), &[(1, 5), (2, -4)]);
            assert_eq!(*c, moonshine_core::num::rational::Ratio::from_integer(-2));
        }
        other => panic!("unexpected 2B formula {other:?}"),
    }
    // 12B: -2 eta(t) eta(4t) eta(6t) / (eta(2t) eta(12t))
    let f12b = formula(ClassId::C12B);
    match &f12b.terms[..] {
        [FormulaTerm::Eta(q, c)] => {
            assert_eq!(q.factors(), &[(1, 1), (2, -1), (4, 1), (6, 1), (12, -1)]);
            assert_eq!(*c, moonshine_core::num::rational::Ratio::from_integer(-2));
        }
        other => panic!("unexpected 12B formula {other:?}"),
    }
}

#[test]
fn concurrent_cache_fill_is_idempotent() {
    let registry = Arc::new(McKayRegistry::new());
    let trunc = Exponent::from_eighths(200);
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let reg = Arc::clone(&registry);
            std::thread::spawn(move || reg.build(ClassId::C6A, trunc).unwrap())
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for pair in results.windows(2) {
        assert!(pair[0].agrees_with(&pair[1]));
    }
    let direct = results[0]
        .coefficient_at(Exponent::from_eighths(7))
        .unwrap()
        .as_integer()
        .unwrap();
    assert_eq!(registry.grade_coefficient(ClassId::C6A, 7).unwrap(), direct);
}

#[test]
fn perturbed_cusp_data_breaks_integrality() {
    // changing one coefficient of f23_1 by 1 shifts the 23AB numerator by
    // 276/11 at that order, which the integrality check rejects
    let text = std::fs::read_to_string(data_dir().join("f23_cusp_forms.json")).unwrap();
    let file: serde_json::Value = serde_json::from_str(&text).unwrap();
    let mut perturbed = file.clone();
    let c = perturbed["forms"][0]["coefficients"][5].as_i64().unwrap();
    perturbed["forms"][0]["coefficients"][5] = serde_json::json!(c + 1);
    let dir = std::env::temp_dir().join("moonshine_perturbed_f23");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f23_cusp_forms.json");
    std::fs::write(&path, serde_json::to_string(&perturbed).unwrap()).unwrap();

    let set = load_cusp_forms(&path).unwrap();
    let registry = McKayRegistry::with_cusp_data(set);
    let err = registry.build(ClassId::C23AB, Exponent::from_eighths(200)).unwrap_err();
    assert!(
        err.to_string().contains("non-integral"),
        "expected the integrality oracle to reject the perturbed data, got: {err}"
    );
}
