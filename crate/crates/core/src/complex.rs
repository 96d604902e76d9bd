//! Simplicial complexes given by facets, with faces as vertex bitmasks.

use rayon::prelude::*;

/// Iterator over the nonempty submasks of `mask`.
pub fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub;
        if sub == 0 {
            done = true;
            return None;
        }
        sub = (sub - 1) & mask;
        if sub == 0 {
            done = true;
        }
        Some(out)
    })
}

/// Drop facets contained in other facets and duplicates; sorted ascending.
pub fn maximal_masks(masks: &[u64]) -> Vec<u64> {
    let mut v: Vec<u64> = masks.to_vec();
    v.sort_unstable();
    v.dedup();
    let keep: Vec<u64> = v
        .iter()
        .copied()
        .filter(|&m| !v.iter().any(|&o| o != m && m & o == m))
        .collect();
    keep
}

/// Face counts by dimension of the complex generated by `facets`, trailing
/// zeros trimmed. Index `i` counts faces with `i + 1` vertices.
///
/// Each face is counted at the first facet (in the given order) containing
/// it, so no global face set is held in memory.
pub fn f_vector_of_closure(facets: &[u64]) -> Vec<u64> {
    let facets = maximal_masks(facets);
    let per_facet: Vec<Vec<u64>> = facets
        .par_iter()
        .enumerate()
        .map(|(k, &f)| {
            // A subset of f lies in an earlier facet g iff it lies in f ∩ g.
            let earlier = maximal_masks(
                &facets[..k]
                    .iter()
                    .map(|&g| f & g)
                    .filter(|&m| m != 0)
                    .collect::<Vec<_>>(),
            );
            let mut counts = vec![0u64; 65];
            for s in submasks(f) {
                if !earlier.iter().any(|&g| s & g == s) {
                    counts[s.count_ones() as usize] += 1;
                }
            }
            counts
        })
        .collect();
    let mut total = vec![0u64; 65];
    for c in per_facet {
        for (t, x) in total.iter_mut().zip(c) {
            *t += x;
        }
    }
    let mut out: Vec<u64> = total[1..].to_vec();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Whether `face` lies in some facet.
pub fn in_closure(facets: &[u64], face: u64) -> bool {
    facets.iter().any(|&f| face & f == face)
}
