//! Explicit isomorphisms between two-valued groups by colour refinement and
//! backtracking.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{order, ElementId, Pair, TwoValuedGroup};
use crate::structure::preserves_products;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Checks that `f` is a bijection fixing `e` with `f(x * y) = f(x) * f(y)`.
pub fn is_isomorphism(x: &TwoValuedGroup, z: &TwoValuedGroup, f: &[ElementId]) -> bool {
    if x.size() != z.size() || f.len() != x.size() || f.first() != Some(&ElementId::IDENTITY) {
        return false;
    }
    let mut seen = vec![false; z.size()];
    for v in f {
        if v.index() >= z.size() || std::mem::replace(&mut seen[v.index()], true) {
            return false;
        }
    }
    preserves_products(x, z, f)
}

/// An isomorphism `X → Z` if one exists, searching at most `budget` nodes.
///
/// The answer is deterministic: on failure the search space is exhausted.
pub fn witness_isomorphism(
    x: &TwoValuedGroup,
    z: &TwoValuedGroup,
    budget: u64,
) -> Result<Option<Vec<ElementId>>> {
    if x.size() != z.size() {
        return Ok(None);
    }
    let (cx, cz) = refine_jointly(x, z);
    let mut hist_x = BTreeMap::new();
    let mut hist_z = BTreeMap::new();
    for &c in &cx {
        *hist_x.entry(c).or_insert(0usize) += 1;
    }
    for &c in &cz {
        *hist_z.entry(c).or_insert(0usize) += 1;
    }
    if hist_x != hist_z {
        return Ok(None);
    }
    // most constrained colour classes first, identity first of all
    let mut sequence: Vec<ElementId> = x.elements().collect();
    sequence.sort_by_key(|a| (a.index() != 0, hist_x[&cx[a.index()]], cx[a.index()], *a));
    let mut search = Search {
        x,
        z,
        cx: &cx,
        cz: &cz,
        sequence,
        map: vec![None; x.size()],
        used: vec![false; z.size()],
        nodes: 0,
        budget,
    };
    if search.extend(0)? {
        let f: Vec<ElementId> = search
            .map
            .into_iter()
            .map(|v| v.expect("complete"))
            .collect();
        debug_assert!(is_isomorphism(x, z, &f));
        Ok(Some(f))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    x: &'a TwoValuedGroup,
    z: &'a TwoValuedGroup,
    cx: &'a [usize],
    cz: &'a [usize],
    sequence: Vec<ElementId>,
    map: Vec<Option<ElementId>>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> Result<bool> {
        if depth == self.sequence.len() {
            let f: Vec<ElementId> = self.map.iter().map(|v| v.expect("complete")).collect();
            return Ok(preserves_products(self.x, self.z, &f));
        }
        let a = self.sequence[depth];
        for b in self.z.elements() {
            if self.used[b.index()] || self.cz[b.index()] != self.cx[a.index()] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::Timeout(self.budget));
            }
            self.map[a.index()] = Some(b);
            self.used[b.index()] = true;
            if self.consistent(a) && self.extend(depth + 1)? {
                return Ok(true);
            }
            self.map[a.index()] = None;
            self.used[b.index()] = false;
        }
        Ok(false)
    }

    /// Products involving the newly assigned `a` must map into the target
    /// products wherever their elements are already assigned.
    fn consistent(&self, a: ElementId) -> bool {
        let fa = self.map[a.index()].expect("just assigned");
        self.x.elements().all(|c| {
            let Some(fc) = self.map[c.index()] else {
                return true;
            };
            let target = self.z.mul(fa, fc);
            let back = self.z.mul(fc, fa);
            fits(self.x.mul(a, c), target, &self.map) && fits(self.x.mul(c, a), back, &self.map)
        })
    }
}

fn fits(source: Pair, target: Pair, map: &[Option<ElementId>]) -> bool {
    match (map[source.lo().index()], map[source.hi().index()]) {
        (Some(p), Some(q)) => Pair::new(p, q) == target,
        (Some(p), None) | (None, Some(p)) => target.contains(p),
        (None, None) => true,
    }
}

/// Stable colourings of both groups in a shared colour space.
fn refine_jointly(x: &TwoValuedGroup, z: &TwoValuedGroup) -> (Vec<usize>, Vec<usize>) {
    let initial = |g: &TwoValuedGroup| -> Vec<(usize, usize, usize, bool)> {
        g.elements()
            .map(|a| {
                let ord = order(g, a).unwrap_or(0);
                let doubled = g.elements().filter(|&b| g.mul(a, b).is_doubled()).count();
                let inverses = g
                    .elements()
                    .filter(|&b| g.mul(a, b).contains(ElementId::IDENTITY))
                    .count();
                (ord, doubled, inverses, g.mul(a, a).is_doubled())
            })
            .collect()
    };
    let (ix, iz) = (initial(x), initial(z));
    let (mut cx, mut cz) = relabel(&ix, &iz);
    loop {
        let signature =
            |g: &TwoValuedGroup, c: &[usize]| -> Vec<(usize, Vec<(usize, usize, usize)>)> {
                g.elements()
                    .map(|a| {
                        let mut row: Vec<(usize, usize, usize)> = g
                            .elements()
                            .map(|b| {
                                let p = g.mul(a, b);
                                let (l, h) = (c[p.lo().index()], c[p.hi().index()]);
                                (c[b.index()], l.min(h), l.max(h))
                            })
                            .collect();
                        row.sort_unstable();
                        (c[a.index()], row)
                    })
                    .collect()
            };
        let (sx, sz) = (signature(x, &cx), signature(z, &cz));
        let (nx, nz) = relabel(&sx, &sz);
        let classes = |c: &[usize]| c.iter().collect::<std::collections::BTreeSet<_>>().len();
        let stable = classes(&nx) + classes(&nz) == classes(&cx) + classes(&cz);
        cx = nx;
        cz = nz;
        if stable {
            return (cx, cz);
        }
    }
}

fn relabel<T: Ord + Clone>(a: &[T], b: &[T]) -> (Vec<usize>, Vec<usize>) {
    let mut keys: Vec<T> = a.iter().chain(b).cloned().collect();
    keys.sort();
    keys.dedup();
    let id = |t: &T| keys.binary_search(t).expect("present");
    (a.iter().map(id).collect(), b.iter().map(id).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{principal, special_series, unipotent};

    #[test]
    fn finds_exceptional_isomorphisms() {
        let a = principal(&[4, 4]).unwrap();
        let u = unipotent(2).unwrap();
        let f = witness_isomorphism(&a, &u, DEFAULT_BUDGET)
            .unwrap()
            .unwrap();
        assert!(is_isomorphism(&a, &u, &f));
        let p4 = principal(&[4]).unwrap();
        let y1 = special_series(1).unwrap();
        assert!(witness_isomorphism(&p4, &y1, DEFAULT_BUDGET)
            .unwrap()
            .is_some());
    }

    #[test]
    fn rejects_non_isomorphic() {
        let c2 = principal(&[2]).unwrap();
        let c3 = principal(&[3]).unwrap();
        assert_eq!(witness_isomorphism(&c2, &c3, DEFAULT_BUDGET).unwrap(), None);
        let a = principal(&[4, 4, 4]).unwrap();
        let u = unipotent(3).unwrap();
        assert_eq!(witness_isomorphism(&a, &u, DEFAULT_BUDGET).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let a = principal(&[2, 2, 2]).unwrap();
        assert_eq!(witness_isomorphism(&a, &a, 3), Err(Error::Timeout(3)));
    }
}
