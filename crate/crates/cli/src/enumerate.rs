//! Brute-force enumeration of small commutative two-valued groups up to
//! isomorphism.
//!
//! Tables are symmetric with the identity row fixed. The cells `(a, b)`,
//! `1 ≤ a ≤ b`, are filled in row-major order; after every assignment each
//! triple whose products are already determined is checked for
//! associativity, and rows are checked for inverse uniqueness. Completed
//! tables are reduced to a canonical form (the smallest relabelled table over
//! all permutations fixing `e`) and verified against the full axioms.

use std::collections::BTreeSet;

use twovalued::group::verify_axioms;
use twovalued::{ElementId, Error, Pair, Result, TwoValuedGroup};

pub const DEFAULT_BUDGET: u64 = 2_000_000_000;
/// Largest `k` accepted; permutation canonicalization is `(k − 1)!`.
pub const MAX_SIZE: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Involutive commutative two-valued groups.
    InvolutiveCommutative,
    /// All commutative two-valued groups.
    Commutative,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// One representative per isomorphism class, in canonical table order.
    pub groups: Vec<TwoValuedGroup>,
    pub nodes: u64,
}

type Cell = (u8, u8);

pub fn enumerate_all(k: usize, scope: Scope, budget: u64) -> Result<Enumeration> {
    if k == 0 || k > MAX_SIZE {
        return Err(Error::PreconditionViolated(format!(
            "enumeration supports 1 ≤ k ≤ {MAX_SIZE}, got {k}"
        )));
    }
    let mut search = Search::new(k, scope, budget);
    search.run(0)?;
    let groups = search
        .found
        .iter()
        .map(|t| group_from_cells(k, t))
        .collect();
    Ok(Enumeration {
        groups,
        nodes: search.nodes,
    })
}

fn group_from_cells(k: usize, cells: &[Cell]) -> TwoValuedGroup {
    let names = std::iter::once("e".to_string())
        .chain((1..k).map(|i| format!("x{i}")))
        .collect();
    TwoValuedGroup::from_fn_named(names, |a, b| {
        let (l, h) = cells[a * k + b];
        (l as usize, h as usize)
    })
}

struct Search {
    k: usize,
    scope: Scope,
    budget: u64,
    nodes: u64,
    table: Vec<Option<Cell>>,
    order: Vec<(usize, usize)>,
    options: Vec<Vec<Cell>>,
    found: BTreeSet<Vec<Cell>>,
    rejected: BTreeSet<Vec<Cell>>,
    perms: Vec<Vec<usize>>,
}

impl Search {
    fn new(k: usize, scope: Scope, budget: u64) -> Self {
        let mut table = vec![None; k * k];
        for x in 0..k {
            table[x] = Some((x as u8, x as u8));
            table[x * k] = Some((x as u8, x as u8));
        }
        let mut order = Vec::new();
        let mut options = Vec::new();
        for a in 1..k {
            for b in a..k {
                order.push((a, b));
                let mut opts = Vec::new();
                for l in 0..k as u8 {
                    for h in l..k as u8 {
                        let keep = match scope {
                            Scope::Commutative => true,
                            // e ∈ x * y exactly when y = x
                            Scope::InvolutiveCommutative if a == b => l == 0,
                            Scope::InvolutiveCommutative => l != 0,
                        };
                        if keep {
                            opts.push((l, h));
                        }
                    }
                }
                options.push(opts);
            }
        }
        let mut perms = Vec::new();
        permutations(&mut (1..k).collect(), 0, &mut perms);
        Search {
            k,
            scope,
            budget,
            nodes: 0,
            table,
            order,
            options,
            found: BTreeSet::new(),
            rejected: BTreeSet::new(),
            perms,
        }
    }

    fn run(&mut self, depth: usize) -> Result<()> {
        if depth == self.order.len() {
            self.record();
            return Ok(());
        }
        let (a, b) = self.order[depth];
        for i in 0..self.options[depth].len() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let cell = self.options[depth][i];
            self.table[a * self.k + b] = Some(cell);
            self.table[b * self.k + a] = Some(cell);
            if self.inverses_ok(a) && self.inverses_ok(b) && self.associative_so_far(a, b) {
                self.run(depth + 1)?;
            }
        }
        self.table[a * self.k + b] = None;
        self.table[b * self.k + a] = None;
        Ok(())
    }

    fn cell(&self, a: usize, b: usize) -> Option<Cell> {
        self.table[a * self.k + b]
    }

    /// At most one `y` with `e ∈ x * y`, and exactly one once the row is full.
    fn inverses_ok(&self, x: usize) -> bool {
        if self.scope == Scope::InvolutiveCommutative {
            return true;
        }
        let mut hits = 0;
        let mut complete = true;
        for y in 0..self.k {
            match self.cell(x, y) {
                Some((0, _)) => hits += 1,
                Some(_) => {}
                None => complete = false,
            }
        }
        hits <= 1 && (!complete || hits == 1)
    }

    /// Checks every triple whose bracketings may use the cell just set and
    /// are already determined. Such a triple has `a` or `b` among `x, y, z`:
    /// the cell enters either as `x * y`, `y * z`, `p * z` or `x * p`.
    fn associative_so_far(&self, a: usize, b: usize) -> bool {
        let k = self.k;
        for x in 1..k {
            for y in 1..k {
                for z in 1..k {
                    let touches = [x, y, z].iter().any(|&t| t == a || t == b);
                    if touches && self.triple_fails(x, y, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn triple_fails(&self, x: usize, y: usize, z: usize) -> bool {
        let left = self.cell(x, y).and_then(|(p, q)| {
            let (l1, h1) = self.cell(p as usize, z)?;
            let (l2, h2) = self.cell(q as usize, z)?;
            Some(sorted4([l1, h1, l2, h2]))
        });
        let right = self.cell(y, z).and_then(|(p, q)| {
            let (l1, h1) = self.cell(x, p as usize)?;
            let (l2, h2) = self.cell(x, q as usize)?;
            Some(sorted4([l1, h1, l2, h2]))
        });
        matches!((left, right), (Some(l), Some(r)) if l != r)
    }

    fn record(&mut self) {
        let cells: Vec<Cell> = self.table.iter().map(|c| c.expect("complete")).collect();
        let canon = self.canonical(&cells);
        if self.found.contains(&canon) || self.rejected.contains(&canon) {
            return;
        }
        let g = group_from_cells(self.k, &canon);
        let report = verify_axioms(&g);
        let ok = report.is_two_valued_group
            && report.is_commutative
            && (self.scope == Scope::Commutative || report.is_involutive);
        if ok {
            self.found.insert(canon);
        } else {
            self.rejected.insert(canon);
        }
    }

    fn canonical(&self, cells: &[Cell]) -> Vec<Cell> {
        let k = self.k;
        let mut best: Option<Vec<Cell>> = None;
        for perm in &self.perms {
            // sigma maps old index to new index
            let mut sigma = vec![0usize; k];
            for (i, &p) in perm.iter().enumerate() {
                sigma[p] = i + 1;
            }
            let mut inv = vec![0usize; k];
            for old in 0..k {
                inv[sigma[old]] = old;
            }
            let mut t = Vec::with_capacity(k * k);
            for na in 0..k {
                for nb in 0..k {
                    let (l, h) = cells[inv[na] * k + inv[nb]];
                    let (l, h) = (sigma[l as usize] as u8, sigma[h as usize] as u8);
                    t.push((l.min(h), l.max(h)));
                }
            }
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
        best.expect("at least the identity permutation")
    }
}

fn sorted4(mut v: [u8; 4]) -> [u8; 4] {
    v.sort_unstable();
    v
}

fn permutations(items: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start >= items.len() {
        out.push(items.clone());
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, out);
        items.swap(start, i);
    }
}

/// Representative tables as groups with their cells, for listing.
pub fn describe(g: &TwoValuedGroup) -> String {
    let rows: Vec<String> = g
        .elements()
        .map(|a| {
            g.elements()
                .map(|b| {
                    let p: Pair = g.mul(a, b);
                    format!("{}{}", short(g, p.lo()), short(g, p.hi()))
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    rows.join(" | ")
}

fn short(g: &TwoValuedGroup, x: ElementId) -> String {
    if x == g.identity() {
        "e".into()
    } else {
        x.index().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let count = |k| {
            enumerate_all(k, Scope::InvolutiveCommutative, DEFAULT_BUDGET)
                .unwrap()
                .groups
                .len()
        };
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 2);
        assert_eq!(count(3), 2);
    }

    #[test]
    fn commutative_scope_includes_non_involutive() {
        // C₃ as a doubled single-valued group is commutative but not involutive
        let all = enumerate_all(3, Scope::Commutative, DEFAULT_BUDGET).unwrap();
        let inv = enumerate_all(3, Scope::InvolutiveCommutative, DEFAULT_BUDGET).unwrap();
        assert!(all.groups.len() > inv.groups.len());
    }

    #[test]
    fn budget() {
        assert!(matches!(
            enumerate_all(4, Scope::InvolutiveCommutative, 5),
            Err(Error::BudgetExceeded(5))
        ));
    }
}
