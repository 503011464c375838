mod common;

use std::collections::HashSet;

use rigidity::{canonical_form, exhaustive_form, generate_candidates, is_rigid, CanonicalForm, Graph, ScanSpec};

fn brute_classes(n: usize, min_edges: usize, min_degree: usize) -> HashSet<CanonicalForm> {
    common::all_labeled(n)
        .filter(|g| g.edge_count() >= min_edges && g.min_degree() >= min_degree)
        .map(|g| exhaustive_form(&g).unwrap())
        .collect()
}

fn generated_classes(spec: &ScanSpec) -> Vec<Graph> {
    generate_candidates(spec).unwrap()
}

#[test]
fn candidates_match_brute_force_classes() {
    for (d, n) in [(2, 4), (2, 5), (2, 6), (3, 5), (3, 6), (3, 7), (4, 7)] {
        let spec = ScanSpec::new(d, n);
        let got = generated_classes(&spec);
        let forms: HashSet<CanonicalForm> = got.iter().map(|g| exhaustive_form(g).unwrap()).collect();
        assert_eq!(forms.len(), got.len(), "duplicate isomorphism class for d={d} n={n}");
        assert_eq!(forms, brute_classes(n, spec.min_edges(), d + 1), "d={d} n={n}");
    }
}

#[test]
fn relaxed_bounds_match_brute_force() {
    let mut spec = ScanSpec::new(2, 6);
    spec.min_edges = Some(7);
    spec.require_connectivity = Some(1);
    let got = generated_classes(&spec);
    let forms: HashSet<CanonicalForm> = got.iter().map(|g| exhaustive_form(g).unwrap()).collect();
    assert_eq!(forms.len(), got.len());
    assert_eq!(forms, brute_classes(6, 7, 1));
}

#[test]
fn nineteen_survivors_are_distinct_and_rigid() {
    let report = rigidity::hendrickson_scan(&ScanSpec::new(3, 7)).unwrap();
    assert_eq!(report.redundant_and_connected_count, 19);
    let candidates = generate_candidates(&ScanSpec::new(3, 7)).unwrap();
    let survivors: Vec<&Graph> = candidates
        .iter()
        .filter(|g| rigidity::classify(g, 3, 3, 0).unwrap().redundantly_rigid && rigidity::is_k_connected(g, 4))
        .collect();
    assert_eq!(survivors.len(), 19);
    let forms: HashSet<_> = survivors.iter().map(|g| canonical_form(g)).collect();
    assert_eq!(forms.len(), 19);
    assert!(survivors.iter().all(|g| is_rigid(g, 3, 3, 1).unwrap()));
}

#[test]
fn k4_is_the_only_dense_candidate_in_the_plane() {
    let mut spec = ScanSpec::new(2, 4);
    spec.min_edges = Some(5);
    let got = generate_candidates(&spec).unwrap();
    assert_eq!(got.len(), 1);
    assert!(got[0].is_complete());
}
