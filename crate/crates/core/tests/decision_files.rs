use blackswan_core::decision::{
    bundled, check_completeness, parse_problem, search_maps, Bounds, Property, SearchMethod,
};

#[test]
fn black_swans_block_every_complete_map() {
    let p = parse_problem(bundled::BLACK_SWAN).unwrap();
    for property in [Property::Occurring, Property::Complete] {
        let search = search_maps(&p.universe, &Bounds::default(), property).unwrap();
        assert_eq!(search.complete_maps, Some(0), "{property}");
        assert!(search
            .configs
            .iter()
            .all(|c| c.method == SearchMethod::Collision));
    }
}

#[test]
fn without_black_swans_complete_maps_exist() {
    let p = parse_problem(bundled::ALL_IMAGINABLE).unwrap();
    assert_eq!(p.universe.black_swan_set(), 0);
    let search = search_maps(&p.universe, &Bounds::default(), Property::Complete).unwrap();
    assert!(search.collision.is_none());
    let found: Vec<_> = search
        .configs
        .iter()
        .filter(|c| c.complete_maps.is_some_and(|n| n > 0))
        .collect();
    assert!(!found.is_empty());
    for c in found {
        assert!(c.actions >= 2, "one action cannot separate anything");
    }
    let report =
        check_completeness(&p.phi, &p.universe, &Bounds::default(), Property::Complete).unwrap();
    assert!(report.is_complete());
    assert_eq!(report.separations.len(), report.pairs_checked);
}

/// Counts complete maps over two imaginable events with two actions and two
/// outcomes by direct enumeration of maps and outcome tables.
fn two_event_oracle() -> u128 {
    let sets: [&[usize]; 3] = [&[0], &[1], &[0, 1]];
    let vector_id = |gamma: u32, set: &[usize]| -> usize {
        let mut digits = 0usize;
        for a in 0..2 {
            for &e in set {
                digits = digits << 1 | (gamma >> (a * 2 + e) & 1) as usize;
            }
        }
        if set.len() == 1 {
            digits
        } else {
            4 + digits
        }
    };
    let mut complete = 0;
    for map in 0u32..1 << 20 {
        let result = |gamma: u32, set: &[usize]| map >> vector_id(gamma, set) & 1;
        let separated = |y: &[usize], z: &[usize]| (0u32..16).any(|g| result(g, y) != result(g, z));
        if separated(sets[0], sets[1]) && separated(sets[0], sets[2]) && separated(sets[1], sets[2])
        {
            complete += 1;
        }
    }
    complete
}

#[test]
fn exhaustive_count_matches_an_independent_enumeration() {
    let p = parse_problem(bundled::ALL_IMAGINABLE).unwrap();
    let search = search_maps(&p.universe, &Bounds::default(), Property::Complete).unwrap();
    let two_by_two = search
        .configs
        .iter()
        .find(|c| c.actions == 2 && c.outcomes == 2)
        .unwrap();
    assert_eq!(two_by_two.method, SearchMethod::Exhaustive);
    assert_eq!(two_by_two.complete_maps, Some(two_event_oracle()));
    assert_eq!(two_by_two.complete_maps, Some(917_476));
}
