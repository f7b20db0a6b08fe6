use std::collections::BTreeSet;

use proptest::prelude::*;

use pigraph::alternating::{alternating_step, build_auxiliary_graph, extract_f, Step2Rejection};
use pigraph::apex::step3_fixup_observed;
use pigraph::gen::rng::Xorshift64Star;
use pigraph::gen::*;
use pigraph::graph::three_paths;
use pigraph::oracle::*;
use pigraph::toposort::{topological_sort, topological_sort_with, CycleFound};
use pigraph::transitive::{cocomparability_orient_with, NotCocomparability};
use pigraph::*;

/// Graphs on up to `max_n` vertices; each pair gets a draw in `0..100` and
/// becomes an edge below a per-graph density threshold.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (Just(n), 0u8..=100, prop::collection::vec(0u8..100, pairs))
        })
        .prop_map(|(n, density, draws)| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges = pairs.zip(draws).filter(|&(_, d)| d < density).map(|(e, _)| e);
            Graph::new(n, edges).unwrap()
        })
}

/// Chordless 4-cycles by testing every 4-subset in its three cyclic
/// arrangements.
fn brute_c4s(g: &Graph) -> Vec<[usize; 4]> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for [p, q, r, s] in [[a, b, c, d], [a, b, d, c], [a, c, b, d]] {
                        let sides = g.has_edge(p, q) && g.has_edge(q, r) && g.has_edge(r, s) && g.has_edge(s, p);
                        if sides && !g.has_edge(p, r) && !g.has_edge(q, s) {
                            out.push([p, q, r, s]);
                        }
                    }
                }
            }
        }
    }
    out
}

fn alternates(f: &impl Arcs, [a, b, c, d]: [usize; 4]) -> bool {
    let fwd = [(a, b), (c, b), (c, d), (a, d)];
    fwd.iter().all(|&(x, y)| f.has_arc(x, y)) || fwd.iter().all(|&(x, y)| f.has_arc(y, x))
}

fn has_cycle_dfs(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in arcs {
        succ[a].push(b);
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut mark = vec![0u8; n];
    fn visit(v: usize, succ: &[Vec<usize>], mark: &mut [u8]) -> bool {
        mark[v] = 1;
        for &w in &succ[v] {
            if mark[w] == 1 || (mark[w] == 0 && visit(w, succ, mark)) {
                return true;
            }
        }
        mark[v] = 2;
        false
    }
    (0..n).any(|v| mark[v] == 0 && visit(v, &succ, &mut mark))
}

/// Every satisfying assignment of the Step-2 formula, for formulas with at
/// most `max_vars` variables.
fn all_assignments(cnf: &pigraph::alternating::TwoCnf, max_vars: usize) -> Vec<Vec<bool>> {
    let vars = cnf.var_count();
    if vars > max_vars {
        return Vec::new();
    }
    (0u64..1 << vars)
        .map(|mask| (0..vars).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|a| cnf.is_satisfied_by(a))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(256) })]

    #[test]
    fn complement_is_an_involution(g in graph(12)) {
        let c = g.complement();
        prop_assert_eq!(c.m() + g.m(), g.n() * g.n().saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn three_path_count(g in graph(12)) {
        let want: usize = (0..g.n()).map(|v| g.degree(v) * g.degree(v).saturating_sub(1)).sum();
        let got = three_paths(&g).count();
        prop_assert_eq!(got, want);
        prop_assert!(got <= 2 * g.n() * g.m());
    }

    #[test]
    fn toposort_matches_dfs(n in 0usize..10, raw in prop::collection::vec((0usize..10, 0usize..10), 0..30)) {
        let arcs: Vec<(usize, usize)> = raw.into_iter().filter(|&(a, b)| a < n && b < n && a != b).collect();
        match topological_sort(n, &arcs) {
            Ok(order) => {
                prop_assert!(!has_cycle_dfs(n, &arcs));
                let mut pos = vec![usize::MAX; n];
                for (i, &v) in order.iter().enumerate() {
                    pos[v] = i;
                }
                prop_assert!(pos.iter().all(|&p| p != usize::MAX));
                prop_assert!(arcs.iter().all(|&(a, b)| pos[a] < pos[b]));
            }
            Err(CycleFound(c)) => {
                prop_assert!(has_cycle_dfs(n, &arcs));
                prop_assert!(!c.is_empty());
                for i in 0..c.len() {
                    prop_assert!(arcs.contains(&(c[i], c[(i + 1) % c.len()])));
                }
            }
        }
    }

    #[test]
    fn random_dags_sort(perm_seed in any::<u64>(), n in 1usize..12, raw in prop::collection::vec((0usize..12, 0usize..12), 0..40)) {
        let perm = Xorshift64Star::new(perm_seed).permutation(n);
        let arcs: Vec<(usize, usize)> = raw
            .into_iter()
            .filter(|&(a, b)| a < b && b < n)
            .map(|(a, b)| (perm[a], perm[b]))
            .collect();
        prop_assert!(topological_sort(n, &arcs).is_ok());
    }

    #[test]
    fn comparability_matches_brute_force(g in graph(7).prop_filter("m <= 12", |g| g.m() <= 12)) {
        let edges = g.edges();
        let m = edges.len();
        let transitive = |arcs: &BTreeSet<(usize, usize)>| {
            arcs.iter().all(|&(a, b)| {
                arcs.iter().filter(|&&(c, _)| c == b).all(|&(_, c)| arcs.contains(&(a, c)))
            })
        };
        let exists = (0u32..1 << m).any(|mask| {
            let arcs: BTreeSet<_> = edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (a, b) } else { (b, a) })
                .collect();
            transitive(&arcs)
        });
        match comparability_orient(&g) {
            Ok(f) => {
                prop_assert!(exists);
                prop_assert!(f.is_total());
                prop_assert!(transitive(&f.arcs().collect()));
            }
            Err(e) => {
                prop_assert!(!exists);
                prop_assert!(e.0.verify_in(&g));
            }
        }
    }

    #[test]
    fn accepted_complement_orientations_are_transitive(g in graph(9), seed in any::<u64>()) {
        match cocomparability_orient_with(&g, SeedOrder::Shuffled(seed)) {
            Ok(fbar) => {
                prop_assert!(verify_transitive_extension(&g, &fbar.order()).is_ok());
                let n = g.n();
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            if fbar.has_arc(a, b) && fbar.has_arc(b, c) {
                                prop_assert!(fbar.has_arc(a, c));
                            }
                        }
                    }
                }
                // cocomparability graphs have no chordless cycle on 5 or more vertices
                prop_assert!(chordless_cycles(&g, 5).is_empty());
            }
            Err(NotCocomparability::Forcing(chain)) => prop_assert!(chain.verify_in_complement(&g)),
            Err(NotCocomparability::Umbrella(u)) => prop_assert!(false, "unexpected umbrella {:?}", u),
        }
    }

    #[test]
    fn pair_graph_matches_definition(g in graph(8)) {
        let Ok(fbar) = cocomparability_orient(&g) else { return Ok(()); };
        let aux = build_auxiliary_graph(&g, &fbar);
        let got: BTreeSet<_> = aux.edge_list().into_iter().map(|(p, q)| (p.min(q), p.max(q))).collect();
        let mut want = BTreeSet::new();
        for &(a, b) in g.edges() {
            want.insert(((a, b), (b, a)));
        }
        for c in brute_c4s(&g) {
            for rot in 0..4 {
                let (x, y, z) = (c[rot], c[(rot + 1) % 4], c[(rot + 2) % 4]);
                for (p, q) in [((x, y), (y, z)), ((z, y), (y, x))] {
                    want.insert((p.min(q), p.max(q)));
                }
            }
        }
        prop_assert_eq!(got, want);
    }

    #[test]
    fn step2_output_meets_its_conditions(g in graph(8), seed in any::<u64>()) {
        let Ok(fbar) = cocomparability_orient_with(&g, SeedOrder::Shuffled(seed)) else { return Ok(()); };
        let s2 = match alternating_step(&g, &fbar) {
            Ok(s2) => s2,
            Err(Step2Rejection::AuxNotBipartite(c)) => { prop_assert!(c.verify(&g)); return Ok(()); }
            Err(Step2Rejection::PhiUnsatisfiable(c)) => { prop_assert!(c.verify(&g)); return Ok(()); }
        };
        let f = &s2.f;
        let c4s = brute_c4s(&g);
        for (u, v, w) in three_paths(&g) {
            if fbar.has_arc(w, u) {
                prop_assert!(!(f.has_arc(u, v) && f.has_arc(v, w)), "delta obstruction {:?}", (u, v, w));
            }
        }
        for &c in &c4s {
            prop_assert!(alternates(f, c), "{:?} does not alternate", c);
        }
        let on_c4: BTreeSet<(usize, usize)> = c4s
            .iter()
            .flat_map(|c| (0..4).map(move |i| (c[i].min(c[(i + 1) % 4]), c[i].max(c[(i + 1) % 4]))))
            .collect();
        for &(a, b) in g.edges() {
            prop_assert_eq!(f.is_oriented(a, b), on_c4.contains(&(a, b)));
        }
        prop_assert!(find_alternating_cycles(f, &fbar, 2).is_empty());
        prop_assert!(find_4_anticycles(f, &fbar).is_empty());
        let assignment = s2.phi.cnf.assignment().expect("solved formula");
        prop_assert!(s2.phi.cnf.is_satisfied_by(assignment));
    }

    #[test]
    fn formula_satisfiable_iff_an_orientation_exists(g in graph(7)) {
        let Ok(fbar) = cocomparability_orient(&g) else { return Ok(()); };
        let c4s = brute_c4s(&g);
        let on_c4: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| c4s.iter().any(|c| (0..4).any(|i| {
                let (x, y) = (c[i], c[(i + 1) % 4]);
                (x.min(y), x.max(y)) == (a, b)
            })))
            .collect();
        if on_c4.len() > 14 {
            return Ok(());
        }
        let exists = (0u32..1 << on_c4.len()).any(|mask| {
            let arcs: Vec<(usize, usize)> = on_c4
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (a, b) } else { (b, a) })
                .collect();
            let f = PartialOrientation::from_arcs(&g, arcs).unwrap();
            c4s.iter().all(|&c| alternates(&f, c)) && find_delta_obstructions(&f, &fbar).is_empty()
        });
        prop_assert_eq!(alternating_step(&g, &fbar).is_ok(), exists);
    }

    #[test]
    fn shuffled_seeds_accept_generated_instances(n in 0usize..40, rep_seed in any::<u64>(), seed in any::<u64>()) {
        let g = representation_to_graph(&random_representation(n, rep_seed));
        match recognize_with(&g, SeedOrder::Shuffled(seed)) {
            RecognitionOutcome::Accepted(o) => prop_assert!(verify_apex_ordering(&g, &o).is_ok()),
            RecognitionOutcome::Rejected(r) => prop_assert!(false, "rejected at {}", r.stage()),
        }
    }

    #[test]
    fn generator_soundness(n in 0usize..=8, seed in any::<u64>()) {
        let g = representation_to_graph(&random_representation(n, seed));
        prop_assert!(brute_force_recognize(&g).unwrap().is_some());
    }

    #[test]
    fn reduction_chordless_cycle_census(elements in 3usize..=6, triples in 0usize..=4, seed in any::<u64>()) {
        let inst = random_instance(elements, triples, seed).unwrap();
        let g = nonbetweenness_to_graph(&inst);
        let canonical = |c: &[usize]| {
            let k = c.len();
            let mut best: Option<Vec<usize>> = None;
            for s in 0..k {
                for dir in [1, k - 1] {
                    let r: Vec<usize> = (0..k).map(|i| c[(s + dir * i) % k]).collect();
                    if best.as_ref().is_none_or(|b| r < *b) {
                        best = Some(r);
                    }
                }
            }
            best.unwrap()
        };
        let got: BTreeSet<Vec<usize>> = chordless_cycles(&g, 4).iter().map(|c| canonical(c)).collect();
        let mut want = BTreeSet::new();
        for (h, &(i, j, k)) in inst.triples().iter().enumerate() {
            let (u, w) = inst.gadget_vertices(h);
            let (vi, vj, vk) = (inst.element_vertex(i), inst.element_vertex(j), inst.element_vertex(k));
            want.insert(canonical(&[u, w, vi, vj]));
            want.insert(canonical(&[u, w, vk, vj]));
        }
        prop_assert_eq!(got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(128) })]

    /// The claims behind Step 3, checked on every Step-2 orientation the
    /// formula allows (not only the solver's).
    #[test]
    fn step3_claims_hold_for_every_step2_orientation(g in graph(9), seed in any::<u64>()) {
        let Ok(fbar) = cocomparability_orient_with(&g, SeedOrder::Shuffled(seed)) else { return Ok(()); };
        let Ok(s2) = alternating_step(&g, &fbar) else { return Ok(()); };
        let c4s = brute_c4s(&g);
        for a in all_assignments(&s2.phi.cnf, 8) {
            let f = extract_f(&g, &s2.phi, &a);
            // Claim 1 cross-check on the Step-2 output
            prop_assert_eq!(!f.is_acyclic(), !find_alternating_cycles(&f, &fbar, 3).is_empty());
            prop_assert_eq!(!f.is_acyclic(), !find_directed_triangles(&f).is_empty());
            let mut violations = Vec::new();
            let f2 = step3_fixup_observed(&f, |v, fv, cur| {
                let six = find_alternating_cycles(cur, &fbar, 3);
                if six.iter().any(|c| c.contains(&v)) {
                    violations.push(format!("vertex {v}: 6-cycle through v"));
                }
                for &(w, u) in fv {
                    let on_six = six.iter().any(|c| (0..6).step_by(2).any(|i| (c[i], c[i + 1]) == (u, w)));
                    let on_delta = find_delta_obstructions(cur, &fbar)
                        .iter()
                        .any(|&(x, y, z)| (x, y) == (u, w) || (y, z) == (u, w));
                    if on_six || on_delta {
                        violations.push(format!("vertex {v}: reversed arc {:?}", (u, w)));
                    }
                }
                if c4s.iter().any(|&c| !alternates(cur, c)) {
                    violations.push(format!("vertex {v}: alternation lost"));
                }
            });
            prop_assert!(violations.is_empty(), "{:?}", violations);
            prop_assert!(find_directed_triangles(&f2).is_empty());
            prop_assert!(find_alternating_cycles(&f2, &fbar, 3).is_empty());
            prop_assert!(f2.is_acyclic());
            let sorted = topological_sort_with(g.n(), |u, out| {
                out.extend(f2.successors(u));
                out.extend(fbar.successors(u));
            });
            prop_assert!(sorted.is_ok());
            prop_assert_eq!(step3_fixup(&f2), f2);
        }
    }
}

/// Observational probe: orient every edge that Step 2 leaves undirected at
/// random, run Step 3 on the completed orientation, and count how often
/// `F″ ∪ F̄` ends up cyclic. Nothing here is a correctness requirement; the
/// tally is printed.
#[test]
fn completing_f_before_step3_probe() {
    let mut rng = Xorshift64Star::new(17);
    let (mut probes, mut cyclic, mut graphs) = (0, 0, 0);
    for round in 0..3000u64 {
        let n = 7 + (round % 4) as usize;
        let density = 30 + rng.below(70);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.below(100) < density {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        let Ok(fbar) = cocomparability_orient_with(&g, SeedOrder::Shuffled(round)) else {
            continue;
        };
        let Ok(s2) = alternating_step(&g, &fbar) else {
            continue;
        };
        graphs += 1;
        for a in all_assignments(&s2.phi.cnf, 8) {
            let f = extract_f(&g, &s2.phi, &a);
            for _ in 0..4 {
                let arcs: Vec<(usize, usize)> = g
                    .edges()
                    .iter()
                    .map(|&(x, y)| {
                        if f.has_arc(x, y) || (!f.has_arc(y, x) && rng.below(2) == 0) {
                            (x, y)
                        } else {
                            (y, x)
                        }
                    })
                    .collect();
                let total = PartialOrientation::from_arcs(&g, arcs).unwrap();
                let f2 = step3_fixup(&total);
                probes += 1;
                let sorted = topological_sort_with(g.n(), |u, out| {
                    out.extend(f2.successors(u));
                    out.extend(fbar.successors(u));
                });
                cyclic += sorted.is_err() as usize;
            }
        }
    }
    eprintln!("completion probe: {probes} completed orientations on {graphs} graphs, {cyclic} cyclic after step 3");
    assert!(probes > 0);
}
