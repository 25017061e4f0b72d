//! Library predicates and sweeps against definition-level oracles.

mod common;

use std::collections::BTreeSet;

use hopspan::geom::{GeomObject, Point2};
use hopspan::graph::{brute_force_graph, build_intersection_graph};
use hopspan::udg::{hull_points, Disk, Side};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sweep_matches_predicate_matrix(seed in any::<u64>()) {
        let objects = common::random_mixed_instance(&mut ChaCha8Rng::seed_from_u64(seed));
        let sweep: BTreeSet<(usize, usize)> = build_intersection_graph(&objects).unwrap().edges().collect();
        let brute: BTreeSet<(usize, usize)> = brute_force_graph(&objects).unwrap().edges().collect();
        prop_assert_eq!(&sweep, &brute);
        prop_assert_eq!(sweep, common::oracle_edges(&objects));
    }

    #[test]
    fn disks_touching_at_distance_one(x in -5.0f64..5.0, y in -5.0f64..5.0) {
        let objects = [GeomObject::UnitDiskCenter(Point2::new(x, y)), GeomObject::UnitDiskCenter(Point2::new(x + 1.0, y))];
        let g = build_intersection_graph(&objects).unwrap();
        prop_assert_eq!(g.edges().count(), usize::from(common::oracle_meet(&objects[0], &objects[1])));
    }

    #[test]
    fn hull_bracketed_by_sampling(pts in prop::collection::vec((-1.0f64..1.0, 0.01f64..1.0), 1..20)) {
        let pts: Vec<Point2> = pts.into_iter().map(|(x, y)| Point2::new(x, y)).collect();
        let members = hull_points(&Disk, &pts, Side::Above).members;
        for i in 0..pts.len() {
            let (certain, possible) = common::hull_oracle(&pts, i);
            let m = members.contains(&i);
            prop_assert!(!certain || m, "point {} should be on the hull", i);
            prop_assert!(!m || possible, "point {} should not be on the hull", i);
        }
    }
}

#[test]
fn segment_oracle_sanity() {
    let p = |x, y| Point2::new(x, y);
    assert!(common::segments_meet(p(0.0, 0.0), p(1.0, 1.0), p(0.0, 1.0), p(1.0, 0.0)));
    assert!(common::segments_meet(p(0.0, 0.0), p(1.0, 0.0), p(1.0, 0.0), p(2.0, 5.0)));
    assert!(!common::segments_meet(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.0, 1.0)));
}
