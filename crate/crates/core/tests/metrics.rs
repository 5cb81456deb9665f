mod common;

use comtree::persistence::{bottleneck_distance, HalfInt, Slot};
use comtree::stability::{asn, min_vertex_cover, rsn, tsn, StarValue, DEFAULT_MVC_BUDGET};
use comtree::{fixtures, PersistenceDiagram};
use proptest::prelude::*;

use common::*;

fn diagram(points: &[(u32, u32)]) -> PersistenceDiagram {
    PersistenceDiagram::from_pairs(points.iter().copied())
}

/// Diagram points with 1 <= death <= birth <= 8.
fn points(max_len: usize) -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec(
        (1u32..=8, 0u32..=7).prop_map(|(d, extra)| (d, (d + extra).min(8))),
        0..=max_len,
    )
}

fn d2(a: &[(u32, u32)], b: &[(u32, u32)]) -> i64 {
    bottleneck_distance(&diagram(a), &diagram(b)).0.doubled()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bottleneck_matches_assignment_oracle(a in points(5), b in points(5)) {
        prop_assert_eq!(d2(&a, &b), bottleneck_brute(&a, &b));
    }

    #[test]
    fn bottleneck_is_symmetric_and_zero_on_equal(a in points(6), b in points(6)) {
        prop_assert_eq!(d2(&a, &b), d2(&b, &a));
        prop_assert_eq!(d2(&a, &a), 0);
    }

    #[test]
    fn bottleneck_triangle_inequality(a in points(5), b in points(5), c in points(5)) {
        prop_assert!(d2(&a, &c) <= d2(&a, &b) + d2(&b, &c));
    }

    #[test]
    fn witness_matching_realises_the_distance(a in points(6), b in points(6)) {
        let (pa, pb) = (diagram(&a), diagram(&b));
        let (d, m) = bottleneck_distance(&pa, &pb);
        let (ea, eb) = (pa.expanded(), pb.expanded());
        let mut left = vec![0; ea.len()];
        let mut right = vec![0; eb.len()];
        let mut worst = 0;
        for &(x, y) in &m.pairs {
            let cost = match (x, y) {
                (Slot::Point(i), Slot::Point(j)) => {
                    left[i] += 1;
                    right[j] += 1;
                    2 * (ea[i].0 as i64 - eb[j].0 as i64).abs().max((ea[i].1 as i64 - eb[j].1 as i64).abs())
                }
                (Slot::Point(i), Slot::Diagonal) => {
                    left[i] += 1;
                    (ea[i].1 - ea[i].0) as i64
                }
                (Slot::Diagonal, Slot::Point(j)) => {
                    right[j] += 1;
                    (eb[j].1 - eb[j].0) as i64
                }
                (Slot::Diagonal, Slot::Diagonal) => 0,
            };
            worst = worst.max(cost);
        }
        prop_assert!(left.iter().chain(&right).all(|&c| c == 1));
        prop_assert_eq!(worst, d.doubled());
        prop_assert_eq!(m.cost2, d.doubled());
    }

    #[test]
    fn removing_a_point_costs_at_most_half_its_persistence(a in points(6), pick in 0usize..6) {
        prop_assume!(!a.is_empty());
        let i = pick % a.len();
        let mut rest = a.clone();
        let removed = rest.remove(i);
        let half = (removed.1 - removed.0) as i64;
        prop_assert!(d2(&a, &rest) <= half);
        // a least-persistent point cannot be absorbed more cheaply: some
        // point must go to the diagonal
        let min = a.iter().map(|p| p.1 - p.0).min().unwrap();
        if removed.1 - removed.0 == min {
            prop_assert_eq!(d2(&a, &rest), half);
        }
    }
}

#[test]
fn fixed_bottleneck_values() {
    let shared_edge = [(1, 5), (3, 4)];
    assert_eq!(
        bottleneck_distance(&diagram(&shared_edge), &diagram(&[(1, 5)])).0,
        HalfInt::from_doubled(1)
    );
    assert_eq!(
        bottleneck_distance(&diagram(&shared_edge), &diagram(&[(1, 4)])).0,
        HalfInt::from_int(1)
    );
    assert_eq!(
        bottleneck_distance(&diagram(&[(1, 9), (1, 8)]), &diagram(&[(1, 9)])).0,
        HalfInt::from_doubled(7)
    );
    // moving to another point beats the diagonal
    assert_eq!(
        bottleneck_distance(&diagram(&[(1, 9)]), &diagram(&[(2, 9)])).0,
        HalfInt::from_int(1)
    );
}

#[test]
fn cover_matches_subset_oracle() {
    for stream in 0..150 {
        let n = 3 + (stream as usize % 10);
        let p = [0.2, 0.4, 0.6][stream as usize % 3];
        let g = sample_graph(77, stream, n, p);
        let result = min_vertex_cover(&g, DEFAULT_MVC_BUDGET);
        let exact = min_cover_brute(&g);
        assert_eq!(result.size, StarValue::Exact(exact), "stream {stream}");
        assert!(result.cover.covers(&g));
        assert_eq!(result.cover.vertices.len(), exact);
        assert_eq!(result.cover.covered_edge_count, g.edge_count());
        let lb = result.matching_lower_bound;
        assert!(lb <= exact && exact <= 2 * lb, "stream {stream}");
    }
}

#[test]
fn exhausted_budget_gives_sound_interval() {
    for stream in 0..40 {
        let g = sample_graph(78, stream, 12, 0.5);
        let exact = min_cover_brute(&g);
        let r = min_vertex_cover(&g, 0);
        assert!(r.size.lower() <= exact && exact <= r.size.upper());
        assert!(r.cover.covers(&g));
        assert_eq!(r.cover.vertices.len(), r.size.upper());
    }
}

#[test]
fn star_numbers_on_fixtures() {
    let (g, h) = fixtures::removal_two_addition_one();
    let s = tsn(&g, &h, DEFAULT_MVC_BUDGET);
    assert_eq!(
        (s.rsn.value, s.asn.value, s.tsn),
        (StarValue::Exact(2), StarValue::Exact(1), StarValue::Exact(3))
    );
    assert_eq!(s.asn.cover, vec!["h".to_string()]);

    let (g, h) = fixtures::star_removal_pair();
    let s = tsn(&g, &h, DEFAULT_MVC_BUDGET);
    assert_eq!(s.tsn, StarValue::Exact(1));
    assert_eq!(s.rsn.cover, vec!["e".to_string()]);
}

#[test]
fn star_numbers_swap_under_argument_exchange() {
    for stream in 0..60 {
        let g = sample_graph(90, stream, 9, 0.5);
        let h = sample_graph(91, stream, 9, 0.5);
        assert_eq!(
            rsn(&g, &h, DEFAULT_MVC_BUDGET).value,
            asn(&h, &g, DEFAULT_MVC_BUDGET).value
        );
        assert_eq!(tsn(&g, &h, DEFAULT_MVC_BUDGET).tsn, tsn(&h, &g, DEFAULT_MVC_BUDGET).tsn);
        assert_eq!(tsn(&g, &g, DEFAULT_MVC_BUDGET).tsn, StarValue::Exact(0));
    }
}
