use proptest::prelude::*;

use simulembed_core::seqpart::{greedy_partition, longest_monotonic_run, tuple_partition, TupleSequence};
use simulembed_core::verify::{check_partition, check_planar, check_planar_brute, Scene};
use simulembed_core::Point;

fn dp_longest(seq: &[i64]) -> usize {
    let n = seq.len();
    let mut up = vec![1; n];
    let mut down = vec![1; n];
    for j in 0..n {
        for i in 0..j {
            if seq[i] <= seq[j] {
                up[j] = up[j].max(up[i] + 1);
            }
            if seq[i] >= seq[j] {
                down[j] = down[j].max(down[i] + 1);
            }
        }
    }
    up.into_iter().chain(down).max().unwrap_or(0)
}

proptest! {
    #[test]
    fn longest_run_matches_quadratic_dp(seq in prop::collection::vec(-20i64..20, 1..80)) {
        prop_assert_eq!(longest_monotonic_run(&seq).unwrap().len(), dp_longest(&seq));
    }

    #[test]
    fn partitions_cover_and_stay_monotone(
        dims in (1usize..4, 1usize..60).prop_flat_map(|(k, n)| prop::collection::vec(prop::collection::vec(0i64..10, n), k))
    ) {
        let seq = TupleSequence::from_dimensions(&dims).unwrap();
        prop_assert!(check_partition(&seq, &tuple_partition(&seq, 0.5).unwrap()).is_empty());
        let one = TupleSequence::from_dimensions(&dims[..1]).unwrap();
        prop_assert!(check_partition(&one, &greedy_partition(&dims[0], 0.5).unwrap()).is_empty());
    }

    #[test]
    fn sweep_agrees_with_brute_force(
        pts in prop::collection::vec((0i64..6, 0i64..6), 2..7),
        raw in prop::collection::vec((0usize..7, 0usize..7, prop::collection::vec((0i64..6, 0i64..6), 0..2)), 0..6)
    ) {
        let mut points: Vec<Point> = Vec::new();
        for &(x, y) in &pts {
            let p = Point::from_ints(x, y);
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let n = points.len();
        let edges: Vec<(usize, usize, Vec<Point>)> = raw
            .into_iter()
            .filter(|(a, b, _)| a % n != b % n)
            .map(|(a, b, bends)| {
                let (a, b) = (a % n, b % n);
                let mut line = vec![points[a]];
                line.extend(bends.iter().map(|&(x, y)| Point::from_ints(x, y)));
                line.push(points[b]);
                (a, b, line)
            })
            .collect();
        let scene = Scene { points, edges };
        let fast = check_planar(&scene).unwrap().is_empty();
        let slow = check_planar_brute(&scene).unwrap().is_empty();
        prop_assert_eq!(fast, slow);
    }
}
