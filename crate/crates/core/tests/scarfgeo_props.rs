use std::collections::HashSet;

use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scarflab::complex::f_vector_of_closure;
use scarflab::ideal::*;
use scarflab::lattice::*;
use scarflab::scarfgeo::*;

fn pt(c: &[u32]) -> Point {
    Point::new(c.to_vec()).unwrap()
}

fn face_of(pts: &[Point], idx: &[usize]) -> Face {
    Face::from_points(idx.iter().map(|&i| pts[i].clone()).collect()).unwrap()
}

#[test]
fn geometric_and_label_tests_agree_on_small_faces() {
    for q in 1..=5usize {
        let p = extremal_power(q, 3).unwrap();
        let n = p.points.len();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let mut idx = vec![a, b, c];
                    idx.dedup();
                    let f = face_of(&p.points, &idx);
                    assert_eq!(
                        is_scarf_face_geometric(&f).unwrap(),
                        is_scarf_face_by_labels(&p.ideal, &idx).unwrap(),
                        "{f}"
                    );
                }
            }
        }
    }
}

#[test]
fn geometric_and_label_tests_agree_on_random_faces() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let powers: Vec<ExtremalPower> = (1..=6).map(|q| extremal_power(q, 3).unwrap()).collect();
    for _ in 0..10_000 {
        let p = &powers[rng.gen_range(0..powers.len())];
        let n = p.points.len();
        let size = rng.gen_range(1..=5.min(n));
        let mut idx = sample(&mut rng, n, size).into_vec();
        idx.sort_unstable();
        let f = face_of(&p.points, &idx);
        assert_eq!(
            is_scarf_face_geometric(&f).unwrap(),
            is_scarf_face_by_labels(&p.ideal, &idx).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn one_and_two_sided_systems_have_the_same_solutions() {
    for q in 1..=5usize {
        for r in 1..=3u32 {
            let pts = enumerate_points(q, r);
            let n = pts.len();
            for a in 0..n {
                for b in a..n {
                    for c in b..n {
                        let mut idx = vec![a, b, c];
                        idx.dedup();
                        let sys = HalfspaceSystem::new(&face_of(&pts, &idx)).unwrap();
                        let upper: Vec<&Point> = pts.iter().filter(|w| sys.contains_upper(w)).collect();
                        let both: Vec<&Point> = pts.iter().filter(|w| sys.contains(w)).collect();
                        assert_eq!(upper, both);
                        let listed = sys.lattice_points();
                        assert_eq!(listed.iter().collect::<Vec<_>>(), both);
                    }
                }
            }
        }
    }
}

#[test]
fn system_bounds_are_consistent() {
    let f = Face::from_points(vec![pt(&[2, 1, 0]), pt(&[0, 1, 2])]).unwrap();
    let sys = HalfspaceSystem::new(&f).unwrap();
    assert_eq!((sys.lo(0), sys.hi(0)), (0, 0));
    assert_eq!((sys.lo(0b111), sys.hi(0b111)), (3, 3));
    for m in 0..8 {
        assert!(sys.lo(m) <= sys.hi(m));
    }
    assert!(HalfspaceSystem::new(&Face::empty(3, 3)).is_err());
}

#[test]
fn polytope_examples() {
    let parallelogram = polytope_lattice_points(&Face::from_points(vec![pt(&[0, 0, 2]), pt(&[1, 1, 0])]).unwrap()).unwrap();
    assert!(parallelogram.contains(&pt(&[1, 0, 1])) && parallelogram.contains(&pt(&[0, 1, 1])));
    assert_eq!(polytope_lattice_points(&Face::from_points(vec![pt(&[2, 1, 0])]).unwrap()).unwrap(), vec![pt(&[2, 1, 0])]);
    let tri = Face::from_points(vec![pt(&[1, 1, 0]), pt(&[1, 0, 1]), pt(&[0, 1, 1])]).unwrap();
    assert_eq!(polytope_lattice_points(&tri).unwrap(), tri.points().to_vec());
}

#[test]
fn witness_examples() {
    let f = Face::from_points(vec![pt(&[0, 0, 2]), pt(&[1, 1, 0])]).unwrap();
    let w = find_witness(&f).unwrap().unwrap();
    assert_eq!(w.witness, pt(&[1, 0, 1]));
    assert!(w.whole_face);
    assert_eq!(w.subset, vec![0, 1]);

    // {3e_1, v} with v avoiding index 1: the witness is 2e_1 + e_j, j in supp v.
    let v = pt(&[0, 1, 1, 1, 0]);
    let f = Face::from_points(vec![pt(&[3, 0, 0, 0, 0]), v.clone()]).unwrap();
    let w = find_witness(&f).unwrap().unwrap();
    assert_eq!(w.witness.coords()[0], 2);
    let j = (1..5).find(|&j| w.witness.coords()[j] == 1).unwrap();
    assert!(v.coords()[j] > 0);

    let f = Face::from_points(vec![pt(&[2, 1, 1, 0]), pt(&[2, 0, 1, 1]), pt(&[1, 1, 1, 1])]).unwrap();
    assert!(find_witness(&f).unwrap().is_none());
    assert!(is_scarf_face_geometric(&f).unwrap());

    let f = Face::from_points(vec![pt(&[3, 0, 0, 0]), pt(&[1, 0, 1, 1])]).unwrap();
    assert!(!is_scarf_face_geometric(&f).unwrap());

    let tri = Face::from_points(vec![pt(&[2, 1, 0, 0, 0]), pt(&[1, 2, 0, 0, 0]), pt(&[0, 0, 1, 1, 1])]).unwrap();
    assert!(!is_scarf_face_geometric(&tri).unwrap());
}

#[test]
fn witnesses_are_valid_and_agree_with_the_fast_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3_000 {
        let q = rng.gen_range(2..=5usize);
        let r = rng.gen_range(1..=4u32);
        let pts = enumerate_points(q, r);
        let size = rng.gen_range(1..=5.min(pts.len()));
        let idx = sample(&mut rng, pts.len(), size).into_vec();
        let f = face_of(&pts, &idx);
        let report = find_witness(&f).unwrap();
        assert_eq!(report.is_none(), is_scarf_face_geometric(&f).unwrap(), "{f}");
        if let Some(rep) = report {
            let sub = f.subface(&rep.subset);
            assert!(!sub.contains(&rep.witness));
            assert!(HalfspaceSystem::new(&sub).unwrap().contains(&rep.witness));
            assert_eq!(rep.whole_face, rep.subset.len() == f.len());
        }
    }
}

#[test]
fn singletons_are_faces() {
    for p in enumerate_points(4, 3) {
        assert!(is_scarf_face_geometric(&Face::from_points(vec![p]).unwrap()).unwrap());
    }
}

#[test]
fn size_caps_are_enforced() {
    let pts = enumerate_points(3, 6);
    let big = Face::from_points(pts[..MAX_FACE_SIZE + 1].to_vec()).unwrap();
    assert!(matches!(is_scarf_face_geometric(&big), Err(scarflab::Error::Resource(_))));
    let wide = Face::from_points(vec![Point::new(vec![1; MAX_Q + 1]).unwrap()]).unwrap();
    assert!(matches!(find_witness(&wide), Err(scarflab::Error::Resource(_))));
}

#[test]
fn u_facet_examples() {
    assert_eq!(
        u_facet(&[0, 0, 0], 2).unwrap(),
        Face::from_points(vec![pt(&[1, 1, 0]), pt(&[1, 0, 1]), pt(&[0, 1, 1])]).unwrap()
    );
    assert_eq!(u_facet(&[1, 0, 0, 0], 2).unwrap().len(), 4);
    assert_eq!(u_facet(&[1, 0, 0], 4).unwrap(), Face::from_points(vec![pt(&[2, 1, 1])]).unwrap());
    assert!(u_facet(&[0, 0, 0], 4).is_err());
    assert_eq!(u_complex_facets(1, 1).unwrap(), vec![Face::from_points(vec![pt(&[1])]).unwrap()]);
}

#[test]
fn u_facets_are_scarf() {
    for q in 1..=6usize {
        // At q = 6 the 20-vertex facets make the subset walk slow; r = 3 is covered by the r3 catalog tests.
        let top = if q == 6 { 2 } else { 4 };
        for r in 1..=top {
            for f in u_complex_facets(q, r).unwrap() {
                assert!(is_scarf_face_geometric(&f).unwrap(), "{f}");
            }
        }
    }
}

#[test]
fn u_complex_counts() {
    assert_eq!(u_complex_facets(3, 2).unwrap().len(), 4);
    let facets = u_complex_facets(4, 3).unwrap();
    let sizes: Vec<usize> = facets.iter().map(Face::len).collect();
    assert_eq!(facets.len(), 15);
    // Ten tetrahedra from shifts by degree-two points, one reflected tetrahedron, four octahedra.
    assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 11);
    assert_eq!(sizes.iter().filter(|&&s| s == 6).count(), 4);
}

#[test]
fn scarf_complex_equals_u_complex_for_small_q() {
    for q in 1..=4usize {
        for r in 1..=4u32 {
            let p = extremal_power(q, r).unwrap();
            let idx = PointIndex::new(q, r);
            let scarf: HashSet<u64> = scarf_complex_bruteforce(&p.ideal, None, DEFAULT_FACE_LIMIT)
                .unwrap()
                .iter()
                .map(|f| f.iter().fold(0u64, |m, &i| m | 1 << i))
                .collect();
            let facets: Vec<u64> = u_complex_facets(q, r)
                .unwrap()
                .iter()
                .map(|f| idx.mask_of(f).unwrap())
                .collect();
            let closure_f = f_vector_of_closure(&facets);
            let mut scarf_f = vec![0u64; closure_f.len().max(1)];
            for m in &scarf {
                let d = m.count_ones() as usize - 1;
                if d >= scarf_f.len() {
                    scarf_f.resize(d + 1, 0);
                }
                scarf_f[d] += 1;
            }
            assert_eq!(scarf_f, closure_f, "q={q} r={r}");
            for m in &scarf {
                assert!(scarflab::complex::in_closure(&facets, *m), "q={q} r={r}");
            }
        }
    }
}

fn edge_law(q: usize, r: u32) {
    let pts = enumerate_points(q, r);
    let cache = EdgeCache::new();
    for u in pts.iter().filter(|p| p.is_square_free()) {
        for v in pts.iter().filter(|v| v.support_mask() & u.support_mask() == 0) {
            let pure_power = v.support_mask().count_ones() == 1;
            let f = Face::from_points(vec![u.clone(), v.clone()]).unwrap();
            let direct = is_scarf_face_geometric(&f).unwrap();
            assert_eq!(direct, !pure_power, "({u}) ({v})");
            assert_eq!(cache.is_scarf_edge(u, v).unwrap(), direct);
        }
    }
}

#[test]
fn square_free_edges_cubes() {
    for q in 2..=7 {
        edge_law(q, 3);
    }
}

#[test]
fn square_free_edges_squares() {
    for q in 2..=8 {
        edge_law(q, 2);
    }
}

#[test]
fn edge_cache_is_shared_across_orbits() {
    let cache = EdgeCache::new();
    let pts = enumerate_points(4, 3);
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let f = Face::from_points(vec![a.clone(), b.clone()]).unwrap();
            assert_eq!(cache.is_scarf_edge(a, b).unwrap(), is_scarf_face_geometric(&f).unwrap());
        }
    }
    // Far fewer orbit representatives than pairs.
    assert!(cache.len() < pts.len() * (pts.len() - 1) / 2 / 4);
}

proptest! {
    #[test]
    fn projection_identity(q in 1usize..9, mask in any::<u32>()) {
        let mask = mask & ((1 << q) - 1);
        let p = project_direction(mask, q);
        let full = (1u32 << q) - 1;
        let c = project_direction(full & !mask, q);
        for (a, b) in p.iter().zip(&c) {
            prop_assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn dot_with_everything_is_degree(coords in proptest::collection::vec(0u32..5, 1..7)) {
        let p = Point::new(coords).unwrap();
        let full = (1u32 << p.q()) - 1;
        prop_assert_eq!(dot_ea(&p, full), p.r());
        prop_assert_eq!(dot_ea(&p, 0), 0);
    }
}
