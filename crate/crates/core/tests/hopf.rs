use hopfcorr::hopf::Presentation;
use hopfcorr::io;
use hopfcorr::presets::{data_text, preset_presentation, PRESETS};
use hopfcorr::scalar::{Backend, Scalar};
use std::collections::BTreeMap;

#[test]
fn shipped_presentations_validate() {
    for name in PRESETS {
        let p = preset_presentation(name).unwrap();
        let rep = p.validate(3);
        assert!(rep.passed(), "{name}: {}", rep.to_json());
    }
}

#[test]
fn parameters_can_be_overridden() {
    let p = preset_presentation("suq2?q=1/3").unwrap();
    assert!(p.validate(3).passed());
    let u2 = preset_presentation("u2?q1=3&q2=2").unwrap();
    assert!(u2.validate(3).passed());
}

#[test]
fn float_backend_validates() {
    let p = preset_presentation("suq2").unwrap().to_backend(Backend::Float).unwrap();
    assert_eq!(p.backend, Backend::Float);
    assert!(p.validate(3).passed());
}

#[test]
fn saved_presentation_reloads() {
    let p = preset_presentation("suq2").unwrap();
    let text = io::save_presentation(&p);
    let back: Presentation = io::parse_presentation(&text, &BTreeMap::new()).unwrap();
    assert_eq!(io::save_presentation(&back), text);
    assert!(back.validate(3).passed());
}

#[test]
fn broken_counit_is_reported() {
    let text = data_text("c-z", "presentation").unwrap();
    let mut file: io::PresentationFile = serde_json::from_str(&text).unwrap();
    // eps(u u*) = 2 no longer matches eps(1) = 1.
    file.hopf.epsilon.insert("u".into(), "2".into());
    let p = file.build(&BTreeMap::new()).unwrap();
    let rep = p.verify_hopf_axioms(2);
    assert!(!rep.passed());
    assert!(rep.failures().next().is_some());
}

#[test]
fn identity_scaling_is_admissible() {
    for name in PRESETS {
        let p = preset_presentation(name).unwrap();
        let id = p.with_alpha(vec![Scalar::one(); p.ngens()]).unwrap();
        assert!(id.verify_admissible(3).passed(), "{name}");
    }
}
