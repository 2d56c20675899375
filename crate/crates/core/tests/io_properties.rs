use proptest::prelude::*;

use reidemeister::corpus::{named, Corpus};
use reidemeister::io::{
    group_to_json, matrix_to_json, parse_cycles, parse_group_json, parse_matrix_json, parse_sigma_json,
};
use reidemeister::lattice::IntMatrix;
use reidemeister::wreath::SigmaElement;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sigma_round_trip(pairs in prop::collection::btree_map(prop::collection::vec(-9i64..=9, 2), 0usize..6, 0..8)) {
        let g = named("S3").unwrap();
        let s = SigmaElement::from_pairs(&g, pairs).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(parse_sigma_json(&text, &g, "t").unwrap(), s);
    }

    #[test]
    fn matrix_round_trip(rows in (1usize..5).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(any::<i64>(), k), k))) {
        let d = IntMatrix::from_i64(&rows).unwrap();
        let text = matrix_to_json(&d);
        prop_assert_eq!(parse_matrix_json(&text, "t").unwrap(), d);
    }

    #[test]
    fn permutations_round_trip(perm in (1usize..9).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())) {
        // write the permutation as disjoint cycles, then parse it back
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut text = String::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![];
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = perm[x];
            }
            text.push_str(&format!("({})", cycle.join(" ")));
        }
        prop_assert_eq!(parse_cycles(&text, n).unwrap(), perm);
    }
}

#[test]
fn corpus_groups_round_trip() {
    for g in Corpus::bundled().groups() {
        let text = group_to_json(g);
        let back = parse_group_json(&text, "t").unwrap();
        assert_eq!(back.table(), g.table());
        assert_eq!(group_to_json(&back), text);
    }
}
