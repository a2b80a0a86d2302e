mod common;

#[test]
fn three_way_concatenation() {
    common::three_way_concatenation().unwrap();
}

#[test]
fn four_matching_concatenation() {
    common::four_matching_concatenation().unwrap();
}

#[test]
fn against_fixed_half() {
    common::against_fixed_half().unwrap();
}

#[test]
fn y2_last() {
    common::y2_last().unwrap();
}

#[test]
fn sandwich_invariant() {
    common::sandwich_invariant().unwrap();
}

#[test]
fn equitable_invariants() {
    common::equitable_invariants().unwrap();
}
