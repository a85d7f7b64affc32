//! Cross-module invariant suites: randomized counting identities, path-star
//! family sweeps, and generator cross-checks against an independent
//! labeled-tree oracle.

use std::collections::HashSet;

use proptest::prelude::{any, prop, ProptestConfig, Strategy};
use proptest::{prop_assert, prop_assert_eq, proptest};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use arbormid::{
    brute_force_count, canonical_code, center_core_distance_bound, centroid_core_distance_bound,
    count_all_vertices, count_at_vertex, count_with_set, enumerate_free_trees, gamma_threshold,
    parse_edge_list, random_tree, relocate_path, subtree_core, tree_from_prufer,
    verify_intermediate_identities, verify_leaf_identity, verify_path_identity, write_edge_list,
    Count, LeafMove, Metric, PathMove, PathStarParams, Tree,
};

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xA5B0_0000 ^ tag)
}

/// Relabels a tree by `perm` (`perm[old] = new`, index 0 unused).
fn relabel(tree: &Tree, perm: &[usize]) -> Tree {
    let edges: Vec<(usize, usize)> = tree
        .edges()
        .iter()
        .map(|&(u, v)| (perm[u], perm[v]))
        .collect();
    Tree::from_edge_list(tree.n(), &edges).unwrap()
}

fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    let mut table = vec![0; n + 1];
    for (old, &new) in perm.iter().enumerate() {
        table[old + 1] = new;
    }
    table
}

#[test]
fn center_matches_diametral_path_middle() {
    for n in 1..=12 {
        for tree in enumerate_free_trees(n).unwrap() {
            // two BFS sweeps give a diametral pair
            let far = |from: usize| {
                (1..=n)
                    .max_by_key(|&v| tree.distance(from, v).unwrap())
                    .unwrap()
            };
            let u = far(1);
            let v = far(u);
            let path = tree.path_between(u, v).unwrap();
            let d = path.len() - 1;
            assert_eq!(d, tree.diameter());
            let mut middle = if d % 2 == 0 {
                vec![path[d / 2]]
            } else {
                vec![path[d / 2], path[d / 2 + 1]]
            };
            middle.sort_unstable();
            assert_eq!(tree.center().vertices(), middle, "n={n}");
        }
    }
}

#[test]
fn centroid_pair_weights_and_metric_inequalities() {
    for n in 1..=12 {
        for tree in enumerate_free_trees(n).unwrap() {
            let centroid = tree.centroid();
            if centroid.len() == 2 {
                assert_eq!(n % 2, 0);
                for &v in centroid.vertices() {
                    assert_eq!(tree.branch_weight(v).unwrap(), n / 2);
                }
            }
            let radius = tree.radius();
            let diameter = tree.diameter();
            assert!(radius <= diameter && diameter <= 2 * radius);
            let pairwise_max = (1..=n)
                .flat_map(|u| (u..=n).map(move |v| (u, v)))
                .map(|(u, v)| tree.distance(u, v).unwrap())
                .max()
                .unwrap();
            assert_eq!(diameter, pairwise_max);
        }
    }
}

#[test]
fn pendant_count_identities() {
    // a pendant v with neighbor w satisfies f(v) = 1 + f'(w), f(w) = 2 f'(w)
    // where f' counts in the tree with v removed
    for n in 3..=10 {
        for tree in enumerate_free_trees(n).unwrap() {
            let table = count_all_vertices(&tree);
            for v in 1..=n {
                if !tree.is_pendant(v) {
                    continue;
                }
                let w = tree.neighbors(v)[0];
                let (stripped, to_old) = tree.component_without_edge(w, v).unwrap();
                let w_local = to_old[1..].binary_search(&w).unwrap() + 1;
                let inner = count_at_vertex(&stripped, w_local).unwrap();
                assert_eq!(table.get(v), &(&inner + 1u32));
                assert_eq!(table.get(w), &(&inner * 2u32));
            }
        }
    }
}

#[test]
fn random_set_counts_match_oracle() {
    let mut rng = rng(1);
    for _ in 0..500 {
        let n = rng.gen_range(2..=14);
        let tree = random_tree(n, &mut rng);
        let size = rng.gen_range(1..=4.min(n));
        let mut set: Vec<usize> = (1..=n).collect();
        set.shuffle(&mut rng);
        set.truncate(size);
        assert_eq!(
            count_with_set(&tree, &set).unwrap(),
            brute_force_count(&tree, &set).unwrap(),
            "n={n} set={set:?}"
        );
    }
}

#[test]
fn count_is_monotone_under_containment() {
    let mut rng = rng(2);
    for _ in 0..300 {
        let n = rng.gen_range(2..=14);
        let tree = random_tree(n, &mut rng);
        let mut shuffled: Vec<usize> = (1..=n).collect();
        shuffled.shuffle(&mut rng);
        let large = rng.gen_range(1..=4.min(n));
        let small = rng.gen_range(1..=large);
        let superset = &shuffled[..large];
        let subset = &shuffled[..small];
        assert!(
            count_with_set(&tree, subset).unwrap() >= count_with_set(&tree, superset).unwrap()
        );
    }
}

#[test]
fn rerooted_table_matches_per_vertex_counts() {
    let mut rng = rng(3);
    for _ in 0..200 {
        let n = rng.gen_range(1..=60);
        let tree = random_tree(n, &mut rng);
        let table = count_all_vertices(&tree);
        for v in 1..=n {
            assert_eq!(table.get(v), &count_at_vertex(&tree, v).unwrap());
        }
    }
}

#[test]
fn pathstar_closed_counts_match_dp() {
    for n in 5..=40 {
        let mut family_size = 0;
        for g in 2..=n - 3 {
            family_size += 1;
            let params = PathStarParams::new(n, g).unwrap();
            let table = count_all_vertices(&params.build());
            for i in 1..=params.spine_len() {
                assert_eq!(&params.spine_subtree_count(i).unwrap(), table.get(i));
            }
            for leaf in params.spine_len() + 1..=n {
                assert_eq!(&params.leaf_subtree_count(), table.get(leaf));
            }
        }
        assert_eq!(family_size, n - 4, "family size at n={n}");
    }
}

#[test]
fn shortest_spine_members_have_coincident_middles() {
    for n in 6..=40 {
        let tree = PathStarParams::new(n, n - 3).unwrap().build();
        for metric in Metric::ALL {
            assert_eq!(metric.evaluate(&tree), 0, "n={n} metric={metric}");
        }
    }
}

#[test]
fn threshold_member_attains_the_center_core_bound() {
    for n in 5..=40 {
        let g0 = gamma_threshold(n).unwrap().g0;
        let closed = PathStarParams::new(n, g0)
            .unwrap()
            .center_core_distance_closed()
            .unwrap();
        assert_eq!(closed, center_core_distance_bound(n).unwrap(), "n={n}");
    }
}

#[test]
fn threshold_member_maximizes_both_closed_distances() {
    for n in 5..=40 {
        let g0 = gamma_threshold(n).unwrap().g0;
        let family: Vec<PathStarParams> = (2..=n - 3)
            .map(|g| PathStarParams::new(n, g).unwrap())
            .collect();
        let at = |p: &PathStarParams| {
            (
                p.center_core_distance_closed().unwrap(),
                p.centroid_core_distance_closed().unwrap(),
            )
        };
        let threshold = at(&PathStarParams::new(n, g0).unwrap());
        let max_center = family.iter().map(|p| at(p).0).max().unwrap();
        let max_centroid = family.iter().map(|p| at(p).1).max().unwrap();
        assert_eq!(threshold.0, max_center, "center-core at n={n}");
        assert_eq!(threshold.1, max_centroid, "centroid-core at n={n}");
    }
}

#[test]
fn threshold_invariants() {
    for n in 5..=2000 {
        let g0 = gamma_threshold(n).unwrap().g0;
        assert!((1u128 << g0) + g0 as u128 > (n - 1) as u128);
        assert!(g0 == 1 || (1u128 << (g0 - 1)) + (g0 - 1) as u128 <= (n - 1) as u128);
        assert!(g0 <= n / 2);
    }
}

/// Evaluates the leaf-move identity entirely with the brute-force oracle,
/// independent of the DP counting path.
fn leaf_identity_by_oracle(tree: &Tree, mv: &LeafMove, a: usize) -> bool {
    let moved = arbormid::relocate_leaf(tree, mv).unwrap();
    let (y, w) = (mv.pendant, mv.dest);
    let lhs = brute_force_count(&moved, &[a]).unwrap()
        + brute_force_count(tree, &[a, y]).unwrap()
        + brute_force_count(tree, &[a, w, y]).unwrap();
    let rhs = brute_force_count(tree, &[a]).unwrap() + brute_force_count(tree, &[a, w]).unwrap();
    lhs == rhs
}

fn random_leaf_move<R: Rng>(tree: &Tree, rng: &mut R) -> Option<LeafMove> {
    let n = tree.n();
    let pendants: Vec<usize> = (1..=n).filter(|&v| tree.is_pendant(v)).collect();
    let mut attempts = 0;
    loop {
        attempts += 1;
        if attempts > 50 {
            return None;
        }
        let y = *pendants.choose(rng).unwrap();
        let w = rng.gen_range(1..=n);
        let mv = LeafMove::new(y, w);
        if mv.validate(tree).is_ok() {
            return Some(mv);
        }
    }
}

#[test]
fn leaf_identity_random_large_cases() {
    let mut rng = rng(4);
    let mut checked = 0;
    let mut oracle_checked = 0;
    while checked < 1000 {
        let n = rng.gen_range(4..=14);
        let tree = random_tree(n, &mut rng);
        let Some(mv) = random_leaf_move(&tree, &mut rng) else {
            continue;
        };
        let a = loop {
            let a = rng.gen_range(1..=n);
            if a != mv.pendant {
                break a;
            }
        };
        assert!(verify_leaf_identity(&tree, &mv, a).unwrap(), "{mv:?} a={a}");
        assert!(verify_intermediate_identities(&tree, &mv, a).unwrap());
        if checked % 10 == 0 {
            assert!(leaf_identity_by_oracle(&tree, &mv, a), "{mv:?} a={a}");
            oracle_checked += 1;
        }
        checked += 1;
    }
    assert_eq!(oracle_checked, 100);
}

/// Hanging paths at `anchor`: for each neighbor, walk away from the anchor
/// while degrees stay 2 and collect the stretch if it ends in a pendant.
fn hanging_paths(tree: &Tree, anchor: usize) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    if tree.degree(anchor) < 3 {
        return found;
    }
    for &first in tree.neighbors(anchor) {
        let mut path = vec![first];
        let mut prev = anchor;
        let mut cur = first;
        while tree.degree(cur) == 2 {
            let next = *tree
                .neighbors(cur)
                .iter()
                .find(|&&w| w != prev)
                .unwrap();
            prev = cur;
            cur = next;
            path.push(cur);
        }
        if tree.degree(cur) == 1 {
            found.push(path);
        }
    }
    found
}

#[test]
fn path_identity_random_cases() {
    let mut rng = rng(5);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.gen_range(5..=14);
        let tree = random_tree(n, &mut rng);
        let anchors: Vec<usize> = (1..=n).filter(|&v| tree.degree(v) >= 3).collect();
        let Some(&anchor) = anchors.choose(&mut rng) else {
            continue;
        };
        let paths = hanging_paths(&tree, anchor);
        let Some(path) = paths.choose(&mut rng) else {
            continue;
        };
        let candidates: Vec<usize> = (1..=n)
            .filter(|&z| z != anchor && !path.contains(&z))
            .collect();
        let z = *candidates.choose(&mut rng).unwrap();
        let mv = PathMove::new(anchor, path.clone(), z);
        let a = *(1..=n)
            .filter(|v| !path.contains(v))
            .collect::<Vec<_>>()
            .choose(&mut rng)
            .unwrap();
        assert!(verify_path_identity(&tree, &mv, a).unwrap(), "{mv:?} a={a}");
        checked += 1;
    }
}

#[test]
fn path_move_keeps_core_side_dominant() {
    // under the lemma hypotheses (v in the core, its branch B not a path,
    // the hanging stretch nearest a pendant of B moved beyond its fork),
    // the moved tree counts v strictly above its B-side neighbor u
    let mut rng = rng(6);
    let mut instances = 0;
    'outer: for _ in 0..4000 {
        let n = rng.gen_range(6..=14);
        let tree = random_tree(n, &mut rng);
        let core = subtree_core(&tree);
        let &v = core.vertices().choose(&mut rng).unwrap();
        let neighbors: Vec<usize> = tree.neighbors(v).to_vec();
        for &u in neighbors.choose_multiple(&mut rng, neighbors.len()) {
            // branch at v through u, as a vertex set
            let (branch, to_old) = tree.component_without_edge(u, v).unwrap();
            let branch_is_path = (1..=branch.n()).all(|x| branch.degree(x) <= 2)
                && tree.degree(u) <= 2;
            if branch_is_path {
                continue;
            }
            let members: Vec<usize> = to_old[1..].to_vec();
            let pendants: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&x| tree.is_pendant(x))
                .collect();
            let Some(&x) = pendants.choose(&mut rng) else {
                continue;
            };
            // walk from x toward v to the nearest fork
            let toward_v = tree.path_between(x, v).unwrap();
            let Some(fork_idx) = toward_v.iter().position(|&c| tree.degree(c) >= 3) else {
                continue;
            };
            let anchor = toward_v[fork_idx];
            if !members.contains(&anchor) {
                // fork only at v itself; no room inside the branch for z
                continue;
            }
            let mut path: Vec<usize> = toward_v[..fork_idx].to_vec();
            path.reverse(); // now ordered from the anchor side out to x
            if path.is_empty() {
                continue;
            }
            let candidates: Vec<usize> = members
                .iter()
                .copied()
                .filter(|&z| {
                    if z == anchor || path.contains(&z) {
                        return false;
                    }
                    let via = tree.path_between(v, z).unwrap();
                    via.contains(&anchor) && !via.contains(&path[0])
                })
                .collect();
            let Some(&z) = candidates.choose(&mut rng) else {
                continue;
            };
            let mv = PathMove::new(anchor, path, z);
            if mv.validate(&tree).is_err() {
                continue;
            }
            let moved = relocate_path(&tree, &mv).unwrap();
            let after = count_all_vertices(&moved);
            assert!(
                after.get(v) > after.get(u),
                "v={v} u={u} {mv:?} on {:?}",
                tree.edges()
            );
            instances += 1;
            if instances >= 120 {
                break 'outer;
            }
        }
    }
    assert!(instances >= 120, "only {instances} valid instances sampled");
}

#[test]
fn moves_preserve_vertex_set_and_validity() {
    let mut rng = rng(7);
    for _ in 0..200 {
        let n = rng.gen_range(4..=14);
        let tree = random_tree(n, &mut rng);
        if let Some(mv) = random_leaf_move(&tree, &mut rng) {
            let moved = arbormid::relocate_leaf(&tree, &mv).unwrap();
            assert_eq!(moved.n(), n);
            assert!(moved.is_pendant(mv.pendant));
            assert_eq!(moved.degree(mv.dest), tree.degree(mv.dest) + 1);
        }
    }
}

/// Independent class count: decode every labeled tree from its sequence
/// encoding and deduplicate by canonical code.
fn free_tree_count_by_prufer(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let mut codes = HashSet::new();
    let mut seq = vec![1usize; n - 2];
    loop {
        let tree = tree_from_prufer(n, &seq).unwrap();
        codes.insert(canonical_code(&tree));
        let mut i = 0;
        loop {
            if i == seq.len() {
                return codes.len();
            }
            if seq[i] < n {
                seq[i] += 1;
                break;
            }
            seq[i] = 1;
            i += 1;
        }
    }
}

#[test]
fn generator_matches_labeled_tree_oracle() {
    for n in 1..=9 {
        let generated = enumerate_free_trees(n).unwrap().count();
        let oracle = free_tree_count_by_prufer(n);
        assert_eq!(generated, oracle, "n={n}");
    }
}

#[test]
fn generator_counts_stable_and_increasing() {
    let run = || -> Vec<usize> {
        (1..=16)
            .map(|n| enumerate_free_trees(n).unwrap().count())
            .collect()
    };
    let first = run();
    let second = run();
    assert_eq!(first, second);
    for n in 4..=16 {
        assert!(first[n - 1] > first[n - 2], "counts must grow at n={n}");
    }
}

#[test]
fn canonical_code_invariant_under_relabeling() {
    let mut rng = rng(8);
    let tree = random_tree(12, &mut rng);
    let codes: HashSet<_> = (0..100)
        .map(|_| {
            let perm = random_permutation(12, &mut rng);
            canonical_code(&relabel(&tree, &perm))
        })
        .collect();
    assert_eq!(codes.len(), 1);
}

#[test]
fn tree_metric_examples_on_family_members() {
    let p73 = PathStarParams::new(10, 3).unwrap().build();
    assert_eq!(p73.distance(8, 1).unwrap(), 7);
    assert_eq!(p73.path_between(1, 9).unwrap(), vec![1, 2, 3, 4, 5, 6, 7, 9]);
    assert_eq!(p73.diameter(), 7);
    assert_eq!(p73.radius(), 4);
    assert_eq!(
        p73.set_distance(p73.center().vertices(), subtree_core(&p73).vertices())
            .unwrap(),
        2
    );
    let p63 = PathStarParams::new(9, 3).unwrap().build();
    assert_eq!(
        p63.set_distance(p63.centroid().vertices(), subtree_core(&p63).vertices())
            .unwrap(),
        1
    );
}

#[test]
fn family_argmax_consistency() {
    use arbormid::gamma_argmax;
    for n in 5..=24 {
        let g0 = gamma_threshold(n).unwrap().g0;
        let family_value = |metric: Metric, g: usize| {
            metric.evaluate(&PathStarParams::new(n, g).unwrap().build())
        };
        for metric in [Metric::CenterCore, Metric::CentroidCore] {
            let best = gamma_argmax(n, metric).unwrap();
            assert_eq!(
                family_value(metric, best),
                family_value(metric, g0),
                "threshold misses the {metric} family max at n={n}"
            );
        }
        let best = gamma_argmax(n, Metric::CenterCentroid).unwrap();
        assert_eq!(
            family_value(Metric::CenterCentroid, best),
            family_value(Metric::CenterCentroid, n / 2),
            "half-pendant member misses the family max at n={n}"
        );
    }
}

#[test]
fn centroid_core_bound_examples() {
    assert_eq!(centroid_core_distance_bound(16).unwrap(), 3);
    assert_eq!(center_core_distance_bound(16).unwrap(), 5);
}

#[test]
fn survey_is_independent_of_worker_count() {
    use arbormid::survey;
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let quad = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    for metric in Metric::ALL {
        let one = single.install(|| survey(11, metric).unwrap());
        let four = quad.install(|| survey(11, metric).unwrap());
        assert_eq!(one.max_value, four.max_value);
        assert_eq!(one.maximizers, four.maximizers);
        assert_eq!(one.tree_count, four.tree_count);
    }
}

fn arb_tree(max_n: usize) -> impl Strategy<Value = Tree> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1..=n, n - 2)
            .prop_map(move |seq| tree_from_prufer(n, &seq).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn prop_edge_list_round_trip(tree in arb_tree(20)) {
        let text = write_edge_list(&tree);
        prop_assert_eq!(parse_edge_list(&text).unwrap(), tree);
    }

    #[test]
    fn prop_code_survives_relabeling(tree in arb_tree(12), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = random_permutation(tree.n(), &mut rng);
        prop_assert_eq!(canonical_code(&relabel(&tree, &perm)), canonical_code(&tree));
    }

    #[test]
    fn prop_middle_sets_are_small_and_adjacent(tree in arb_tree(16)) {
        for set in [tree.center(), tree.centroid(), subtree_core(&tree)] {
            prop_assert!(set.len() == 1 || set.len() == 2);
            if let [a, b] = *set.vertices() {
                prop_assert!(tree.has_edge(a, b));
            }
        }
    }

    #[test]
    fn prop_singleton_count_is_positive(tree in arb_tree(16), pick in any::<prop::sample::Index>()) {
        let v = pick.index(tree.n()) + 1;
        prop_assert!(count_at_vertex(&tree, v).unwrap() >= Count::from(1u32));
    }
}
