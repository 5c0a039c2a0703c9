use klcells::cells::{cells_with_interior, CellKind};
use klcells::g2::{predicted_partition, Classifier, Region, RegionMap};
use klcells::klbasis::KlData;
use klcells::{Ball, CoxeterSystem};

fn kl(a: i32, b: i32, radius: usize) -> KlData {
    KlData::new(Ball::new(CoxeterSystem::g2_affine(a, b).unwrap(), radius).unwrap()).unwrap()
}

#[test]
fn left_cells_follow_the_region_map() {
    let classifier = Classifier::new().unwrap();
    for (a, b) in [(5, 1), (9, 2)] {
        let k = kl(a, b, 14);
        let computed = cells_with_interior(&k, CellKind::Left, 8);
        let predicted = predicted_partition(&classifier, k.ball(), 8).unwrap();
        assert_eq!(computed.interior_diff(k.ball(), &predicted, 8), Vec::<String>::new(), "weights ({a},{b})");
    }
}

#[test]
fn equal_parameters_give_a_different_picture() {
    // With all weights equal the region map no longer describes the cells.
    let classifier = Classifier::new().unwrap();
    let k = kl(1, 1, 14);
    let computed = cells_with_interior(&k, CellKind::Left, 8);
    let predicted = predicted_partition(&classifier, k.ball(), 8).unwrap();
    assert!(!computed.interior_diff(k.ball(), &predicted, 8).is_empty());
}

#[test]
fn region_least_elements() {
    let ball = Ball::new(CoxeterSystem::g2_affine(5, 1).unwrap(), 12).unwrap();
    let map = RegionMap::new(&Classifier::new().unwrap(), &ball).unwrap();
    let least = |r| ball.word_string(map.min_element(r).unwrap());
    assert_eq!(least(Region::A(1)), "s1.s2.s1.s2.s1.s2");
    assert_eq!(least(Region::C(5)), "s1.s2.s1.s2.s1.s3.s2");
    assert_eq!(least(Region::B(3)), "s1.s3.s2.s1.s2.s3");
    assert_eq!(least(Region::F), "s2.s3.s2");
    assert_eq!(least(Region::Identity), "e");
}

#[test]
fn two_sided_cells_are_inverse_closed() {
    let k = kl(5, 1, 14);
    let two = cells_with_interior(&k, CellKind::TwoSided, 8);
    for w in k.ball().up_to(8) {
        assert!(two.same_cell(w, k.ball().inverse(w)), "{}", k.ball().word_string(w));
    }
}
