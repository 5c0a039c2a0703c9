use klcells::g2::Classifier;
use klcells::induction::{build_preset, DatumFile, InductionDatum, Preset, Status};
use klcells::klbasis::KlData;
use klcells::{Ball, CoxeterSystem};

fn kl(radius: usize) -> KlData {
    KlData::new(Ball::new(CoxeterSystem::g2_affine(5, 1).unwrap(), radius).unwrap()).unwrap()
}

#[test]
fn c_sets_pass_and_give_an_ideal() {
    let k = kl(11);
    let classifier = Classifier::new().unwrap();
    let d = build_preset(&k, &Preset::G2CSets, Some(&classifier)).unwrap();
    let report = d.check_conditions();
    assert!(report.all_pass(), "{:?}", report.statuses);
    let all: Vec<usize> = (0..d.members.len()).collect();
    let ideal = d.induced_ideal(&report, &all).unwrap();
    assert!(ideal.repairs.is_empty());
    assert!(ideal.elements.count_ones(..) > 0);
}

#[test]
fn b3_preset_needs_a_repair() {
    let k = kl(13);
    let classifier = Classifier::new().unwrap();
    let d = build_preset(&k, &Preset::G2B3, Some(&classifier)).unwrap();
    let report = d.check_conditions();
    for i in 1..=4 {
        assert!(report.status(i).is_pass(), "I{i}: {:?}", report.status(i));
    }
    assert!(matches!(report.status(5), Status::Fail(_)));
}

#[test]
fn datum_file_matches_parabolic_preset() {
    let k = kl(9);
    let text = r#"{"name": "W'", "U": [
        {"u": "e", "X": "coset_reps(s2,s3)"},
        {"u": "s2", "X": "coset_reps(s2,s3)"},
        {"u": "s3", "X": "coset_reps(s2,s3)"},
        {"u": "s2.s3", "X": "coset_reps(s2,s3)"},
        {"u": "s3.s2", "X": "coset_reps(s2,s3)"},
        {"u": "s2.s3.s2", "X": "coset_reps(s2,s3)"}
    ]}"#;
    let file: DatumFile = serde_json::from_str(text).unwrap();
    let d = InductionDatum::new(&k, file.name.clone(), file.member_specs(k.ball()).unwrap(), None).unwrap();
    let report = d.check_conditions();
    assert!(report.all_pass(), "{:?}", report.statuses);
    let preset = build_preset(&k, &Preset::parse(k.ball(), "parabolic(s2,s3)").unwrap(), None).unwrap();
    assert_eq!(d.basis.len(), preset.basis.len());
}
