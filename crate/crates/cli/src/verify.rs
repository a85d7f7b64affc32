//! The `verify` subcommand: every invariant suite, each reported as one
//! `ok`/`FAIL` line. Exhaustive sweeps honor the order cap; randomized
//! suites are seeded and deterministic.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use arbormid::{
    betweenness_counterexample_tree, brute_force_count, center_core_distance_bound,
    centroid_between, centroid_core_distance_bound, core_after_leaf_move, count_all_vertices,
    count_at_vertex, count_with_set, enumerate_free_trees, gamma_threshold, random_tree,
    subtree_core, survey, trees_with_distinct_middles, verify_intermediate_identities,
    verify_leaf_identity, verify_path_identity, Count, LeafMove, Metric, PathMove,
    PathStarParams, Tree,
};

type Outcome = Result<String, String>;
type Suite = Box<dyn Fn() -> Outcome>;

pub fn run_all(n_max: usize, seed: u64) -> bool {
    let n_max = n_max.clamp(1, 18);
    let suites: Vec<(&str, Suite)> = vec![
        ("tree-structure", Box::new(move || tree_structure(n_max))),
        ("count-concavity", Box::new(move || count_concavity(n_max.min(12)))),
        ("count-oracle", Box::new(move || count_oracle(n_max.min(10), seed))),
        ("closed-forms", Box::new(closed_forms)),
        ("family-distances", Box::new(family_distances)),
        (
            "perturb-identities",
            Box::new(move || perturb_identities(n_max, seed)),
        ),
        ("extremal-bounds", Box::new(move || extremal_bounds(n_max.min(16)))),
        ("betweenness-family", Box::new(betweenness_family)),
        ("reconstruction", Box::new(move || reconstruction(n_max))),
    ];
    let mut all_ok = true;
    for (name, suite) in suites {
        match suite() {
            Ok(detail) => println!("ok {name} ({detail})"),
            Err(detail) => {
                all_ok = false;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    all_ok
}

fn check(cond: bool, detail: impl Fn() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn tree_structure(n_max: usize) -> Outcome {
    let mut trees = 0usize;
    for n in 1..=n_max {
        for tree in enumerate_free_trees(n).map_err(|e| e.to_string())? {
            trees += 1;
            for set in [tree.center(), tree.centroid(), subtree_core(&tree)] {
                check(set.len() == 1 || set.len() == 2, || {
                    format!("middle set {set:?} has bad size at n={n}")
                })?;
                if let [a, b] = *set.vertices() {
                    check(tree.has_edge(a, b), || {
                        format!("non-adjacent middle pair {set:?} at n={n}")
                    })?;
                }
                if n >= 3 {
                    check(
                        set.vertices().iter().all(|&v| !tree.is_pendant(v)),
                        || format!("pendant vertex in {set:?} at n={n}"),
                    )?;
                }
            }
            // center must be the middle of a diametral path
            let far = |from: usize| {
                (1..=n)
                    .max_by_key(|&v| tree.distance(from, v).unwrap())
                    .unwrap()
            };
            let u = far(1);
            let v = far(u);
            let path = tree.path_between(u, v).unwrap();
            let d = path.len() - 1;
            let mut middle = if d % 2 == 0 {
                vec![path[d / 2]]
            } else {
                vec![path[d / 2], path[d / 2 + 1]]
            };
            middle.sort_unstable();
            check(tree.center().vertices() == middle, || {
                format!("center differs from diametral middle at n={n}")
            })?;
            let centroid = tree.centroid();
            if centroid.len() == 2 {
                check(n % 2 == 0, || format!("two centroids at odd n={n}"))?;
                for &c in centroid.vertices() {
                    check(tree.branch_weight(c).unwrap() == n / 2, || {
                        format!("centroid weight differs from n/2 at n={n}")
                    })?;
                }
            }
            let (radius, diameter) = (tree.radius(), tree.diameter());
            check(radius <= diameter && diameter <= 2 * radius, || {
                format!("radius/diameter inequality fails at n={n}")
            })?;
        }
    }
    Ok(format!("{trees} trees, n <= {n_max}"))
}

fn count_concavity(n_max: usize) -> Outcome {
    let mut triples = 0usize;
    for n in 1..=n_max {
        for tree in enumerate_free_trees(n).map_err(|e| e.to_string())? {
            let table = count_all_vertices(&tree);
            for v in 1..=n {
                let around = tree.neighbors(v);
                for (i, &u) in around.iter().enumerate() {
                    for &w in &around[i + 1..] {
                        check(table.get(v) * 2u32 > table.get(u) + table.get(w), || {
                            format!("concavity fails on {u}-{v}-{w} at n={n}")
                        })?;
                        triples += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{triples} strict triples, n <= {n_max}"))
}

fn count_oracle(n_exhaustive: usize, seed: u64) -> Outcome {
    let mut vertices = 0usize;
    for n in 1..=n_exhaustive {
        for tree in enumerate_free_trees(n).map_err(|e| e.to_string())? {
            for v in 1..=n {
                let dp = count_at_vertex(&tree, v).unwrap();
                let oracle = brute_force_count(&tree, &[v]).unwrap();
                check(dp == oracle, || format!("count mismatch at n={n} v={v}"))?;
                vertices += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let n = rng.gen_range(2..=14);
        let tree = random_tree(n, &mut rng);
        let size = rng.gen_range(1..=4.min(n));
        let mut set: Vec<usize> = (1..=n).collect();
        set.shuffle(&mut rng);
        set.truncate(size);
        let dp = count_with_set(&tree, &set).unwrap();
        let oracle = brute_force_count(&tree, &set).unwrap();
        check(dp == oracle, || format!("set count mismatch, n={n} set={set:?}"))?;
        let subset = &set[..rng.gen_range(1..=set.len())];
        check(
            count_with_set(&tree, subset).unwrap() >= dp,
            || format!("containment monotonicity fails, n={n} set={set:?}"),
        )?;
    }
    Ok(format!(
        "{vertices} exhaustive vertices (n <= {n_exhaustive}), 200 random sets"
    ))
}

fn closed_forms() -> Outcome {
    let mut members = 0usize;
    for n in 5..=40 {
        let mut family = 0usize;
        for g in 2..=n - 3 {
            family += 1;
            members += 1;
            let params = PathStarParams::new(n, g).unwrap();
            let tree = params.build();
            let table = count_all_vertices(&tree);
            for i in 1..=params.spine_len() {
                check(&params.spine_subtree_count(i).unwrap() == table.get(i), || {
                    format!("spine count differs at n={n} g={g} i={i}")
                })?;
            }
            check(&params.leaf_subtree_count() == table.get(n), || {
                format!("leaf count differs at n={n} g={g}")
            })?;
            let center = tree.center();
            let centroid = tree.centroid();
            let core = subtree_core(&tree);
            check(params.center_closed().unwrap() == center, || {
                format!("closed center differs at n={n} g={g}")
            })?;
            check(params.centroid_closed().unwrap() == centroid, || {
                format!("closed centroid differs at n={n} g={g}")
            })?;
            check(params.subtree_core_closed().unwrap() == core, || {
                format!("closed core differs at n={n} g={g}")
            })?;
            let d_c_sc = tree.set_distance(center.vertices(), core.vertices()).unwrap();
            let d_cd_sc = tree
                .set_distance(centroid.vertices(), core.vertices())
                .unwrap();
            check(params.center_core_distance_closed().unwrap() == d_c_sc, || {
                format!("closed center-core distance differs at n={n} g={g}")
            })?;
            check(
                params.centroid_core_distance_closed().unwrap() == d_cd_sc,
                || format!("closed centroid-core distance differs at n={n} g={g}"),
            )?;
        }
        check(family == n - 4, || format!("family size {family} != n-4 at n={n}"))?;
    }
    Ok(format!("{members} family members, 5 <= n <= 40"))
}

fn family_distances() -> Outcome {
    for n in 6..=40 {
        let tree = PathStarParams::new(n, n - 3).unwrap().build();
        for metric in Metric::ALL {
            check(metric.evaluate(&tree) == 0, || {
                format!("{metric} nonzero on the shortest-spine member at n={n}")
            })?;
        }
    }
    for n in 5..=40 {
        let g0 = gamma_threshold(n).unwrap().g0;
        let threshold = PathStarParams::new(n, g0).unwrap();
        check(
            threshold.center_core_distance_closed().unwrap()
                == center_core_distance_bound(n).unwrap(),
            || format!("threshold member misses the center-core bound at n={n}"),
        )?;
        let center_max = (2..=n - 3)
            .map(|g| {
                PathStarParams::new(n, g)
                    .unwrap()
                    .center_core_distance_closed()
                    .unwrap()
            })
            .max()
            .unwrap();
        let centroid_max = (2..=n - 3)
            .map(|g| {
                PathStarParams::new(n, g)
                    .unwrap()
                    .centroid_core_distance_closed()
                    .unwrap()
            })
            .max()
            .unwrap();
        check(
            threshold.center_core_distance_closed().unwrap() == center_max,
            || format!("threshold not maximal for center-core at n={n}"),
        )?;
        check(
            threshold.centroid_core_distance_closed().unwrap() == centroid_max,
            || format!("threshold not maximal for centroid-core at n={n}"),
        )?;
    }
    for n in 5..=2000 {
        let g0 = gamma_threshold(n).unwrap().g0;
        check(
            (1u128 << g0) + g0 as u128 > (n - 1) as u128 && g0 <= n / 2,
            || format!("threshold scan inconsistent at n={n}"),
        )?;
    }
    Ok("shortest-spine zeros, threshold maximality, scan consistency".into())
}

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
            let next = *tree.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
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

fn perturb_identities(n_max: usize, seed: u64) -> Outcome {
    let mut leaf_checks = 0usize;
    for n in 3..=n_max.min(9) {
        for tree in enumerate_free_trees(n).map_err(|e| e.to_string())? {
            for y in (1..=n).filter(|&y| tree.is_pendant(y)) {
                for w in 1..=n {
                    let mv = LeafMove::new(y, w);
                    if mv.validate(&tree).is_err() {
                        continue;
                    }
                    for a in (1..=n).filter(|&a| a != y) {
                        check(verify_leaf_identity(&tree, &mv, a).unwrap(), || {
                            format!("leaf identity fails at n={n} {mv:?} a={a}")
                        })?;
                        check(verify_intermediate_identities(&tree, &mv, a).unwrap(), || {
                            format!("intermediate identity fails at n={n} {mv:?} a={a}")
                        })?;
                        leaf_checks += 1;
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9A7);
    let mut path_checks = 0usize;
    while path_checks < 200 {
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
        let free: Vec<usize> = (1..=n)
            .filter(|&v| v != anchor && !path.contains(&v))
            .collect();
        let z = *free.choose(&mut rng).unwrap();
        let a = *free.choose(&mut rng).unwrap();
        let mv = PathMove::new(anchor, path.clone(), z);
        check(verify_path_identity(&tree, &mv, a).unwrap(), || {
            format!("path identity fails for {mv:?} a={a}")
        })?;
        path_checks += 1;
    }
    let mut core_checks = 0usize;
    for n in 3..=n_max.min(10) {
        for tree in enumerate_free_trees(n).map_err(|e| e.to_string())? {
            for &v in subtree_core(&tree).vertices() {
                for y in (1..=n).filter(|&y| tree.is_pendant(y)) {
                    let mv = LeafMove::new(y, v);
                    if mv.validate(&tree).is_err() {
                        continue;
                    }
                    match core_after_leaf_move(&tree, v, &mv) {
                        Ok(_) => core_checks += 1,
                        Err(e) => return Err(format!("core stability: {e}")),
                    }
                }
            }
        }
    }
    Ok(format!(
        "{leaf_checks} leaf identities, {path_checks} path identities, {core_checks} core moves"
    ))
}

fn extremal_bounds(n_max: usize) -> Outcome {
    if n_max < 5 {
        return Ok("skipped (needs n-max >= 5)".into());
    }
    for n in 5..=n_max {
        let center_record = survey(n, Metric::CenterCore).map_err(|e| e.to_string())?;
        check(
            center_record.max_value == center_core_distance_bound(n).unwrap(),
            || format!("center-core max differs from the bound at n={n}"),
        )?;
        check(center_record.pathstar_attains(), || {
            format!("threshold path-star misses the center-core max at n={n}")
        })?;
        let centroid_record = survey(n, Metric::CentroidCore).map_err(|e| e.to_string())?;
        check(
            centroid_record.max_value == centroid_core_distance_bound(n).unwrap(),
            || format!("centroid-core max differs from the bound at n={n}"),
        )?;
        check(centroid_record.pathstar_attains(), || {
            format!("threshold path-star misses the centroid-core max at n={n}")
        })?;
        let cc_record = survey(n, Metric::CenterCentroid).map_err(|e| e.to_string())?;
        check(cc_record.max_value <= (n - 3) / 4, || {
            format!("center-centroid bound exceeded at n={n}")
        })?;
        check(cc_record.pathstar_attains(), || {
            format!("half-pendant path-star misses the center-centroid max at n={n}")
        })?;
    }
    Ok(format!("three metrics, 5 <= n <= {n_max}"))
}

fn betweenness_family() -> Outcome {
    let mut members = 0usize;
    for n in 5..=40 {
        for g in 2..=n - 3 {
            let params = PathStarParams::new(n, g).unwrap();
            check(params.centroid_between(), || {
                format!("betweenness fails at n={n} g={g}")
            })?;
            members += 1;
        }
    }
    Ok(format!("{members} family members, 5 <= n <= 40"))
}

fn reconstruction(n_max: usize) -> Outcome {
    let tree = betweenness_counterexample_tree().map_err(|e| e.to_string())?;
    check(!centroid_between(&tree), || {
        "the 27-vertex counterexample unexpectedly satisfies betweenness".into()
    })?;
    if n_max < 9 {
        return Ok("counterexample verified; middle-separation needs n-max >= 9".into());
    }
    let witnesses = trees_with_distinct_middles(9).map_err(|e| e.to_string())?;
    check(!witnesses.is_empty(), || {
        "no 9-vertex tree separates all three middles".into()
    })?;
    check(
        witnesses.iter().any(|w| w.max_count == Count::from(48u32)),
        || "no 9-vertex witness has maximum count 48".into(),
    )?;
    Ok(format!(
        "counterexample verified; {} separating trees on 9 vertices",
        witnesses.len()
    ))
}
