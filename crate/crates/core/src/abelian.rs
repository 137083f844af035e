//! Finite abelian groups: the residue-tuple model `C_{d₁} × … × C_{d_k}` and
//! explicit operation tables, plus invariant-factor computation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// `C_{d₁} × … × C_{d_k}` with elements encoded as mixed-radix indices.
///
/// The last coordinate varies fastest, so index order is the lexicographic
/// order of residue tuples and index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbelianGroup {
    factors: Vec<u64>,
}

impl FinAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if let Some(d) = factors.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidFactors(format!(
                "factor {d} is smaller than 2"
            )));
        }
        let size = factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| Error::InvalidFactors("group is too large".into()))?;
        debug_assert!(size >= 1);
        Ok(FinAbelianGroup { factors })
    }

    /// Factors must form a divisor chain `d₁ | d₂ | … | d_k`.
    pub fn from_chain(factors: Vec<u64>) -> Result<Self> {
        if !is_divisor_chain(&factors) {
            return Err(Error::InvalidFactors(format!(
                "{factors:?} is not a divisor chain"
            )));
        }
        Self::new(factors)
    }

    pub fn trivial() -> Self {
        FinAbelianGroup {
            factors: Vec::new(),
        }
    }

    pub fn boolean(m: usize) -> Self {
        FinAbelianGroup {
            factors: vec![2; m],
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn size(&self) -> usize {
        self.factors.iter().product::<u64>() as usize
    }

    pub fn is_canonical(&self) -> bool {
        is_divisor_chain(&self.factors)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<u64> {
        let mut t = vec![0; self.factors.len()];
        for (slot, &d) in t.iter_mut().zip(&self.factors).rev() {
            *slot = index as u64 % d;
            index /= d as usize;
        }
        t
    }

    pub fn index(&self, tuple: &[u64]) -> usize {
        assert_eq!(tuple.len(), self.factors.len());
        tuple
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&t, &d)| acc * d as usize + (t % d) as usize)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.tuple(a), self.tuple(b));
        let sum: Vec<u64> = ta
            .iter()
            .zip(&tb)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        self.index(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let t: Vec<u64> = self
            .tuple(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d - x) % d)
            .collect();
        self.index(&t)
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.tuple(a)
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&x, &d)| lcm(acc, d / gcd(x, d)))
    }

    pub fn direct_product(&self, other: &FinAbelianGroup) -> FinAbelianGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        FinAbelianGroup { factors }
    }

    pub fn tuple_label(&self, index: usize) -> String {
        let parts: Vec<String> = self.tuple(index).iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }

    /// Number of elements of each order (a map from order to count).
    pub fn order_counts(&self) -> BTreeMap<u64, usize> {
        let mut counts = BTreeMap::new();
        for a in 0..self.size() {
            *counts.entry(self.element_order(a)).or_insert(0) += 1;
        }
        counts
    }

    /// Canonical invariant factors of this group, whatever form its factors take.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut primary: Vec<(u64, u32)> = Vec::new();
        for &d in &self.factors {
            for (p, e) in factorize(d) {
                primary.push((p, e));
            }
        }
        chain_from_prime_powers(&primary)
    }
}

/// Involutive automorphism of a [`FinAbelianGroup`], given as a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutiveAutomorphism {
    map: Vec<usize>,
}

impl InvolutiveAutomorphism {
    pub fn new(group: &FinAbelianGroup, map: Vec<usize>) -> Result<Self> {
        let n = group.size();
        if map.len() != n {
            return Err(Error::NotAutomorphism(format!(
                "map has {} entries, expected {n}",
                map.len()
            )));
        }
        let mut seen = vec![false; n];
        for &m in &map {
            if m >= n || seen[m] {
                return Err(Error::NotAutomorphism("map is not a permutation".into()));
            }
            seen[m] = true;
        }
        for a in 0..n {
            for b in 0..n {
                if map[group.add(a, b)] != group.add(map[a], map[b]) {
                    return Err(Error::NotAutomorphism(format!(
                        "map does not respect the sum of {} and {}",
                        group.tuple_label(a),
                        group.tuple_label(b)
                    )));
                }
            }
        }
        if (0..n).any(|a| map[map[a]] != a) {
            return Err(Error::NotInvolutiveAutomorphism);
        }
        Ok(InvolutiveAutomorphism { map })
    }

    /// `g ↦ g⁻¹`.
    pub fn antipodal(group: &FinAbelianGroup) -> Self {
        InvolutiveAutomorphism {
            map: (0..group.size()).map(|a| group.neg(a)).collect(),
        }
    }

    /// `(a, b) ↦ (a, a + b)` on `C₂ⁿ × C₂ⁿ`, the first `n` coordinates being `a`.
    pub fn unipotent(group: &FinAbelianGroup) -> Result<Self> {
        let k = group.rank();
        if !k.is_multiple_of(2) || group.factors().iter().any(|&d| d != 2) {
            return Err(Error::NotAutomorphism(
                "unipotent involution needs a group of the form C₂ⁿ × C₂ⁿ".into(),
            ));
        }
        let n = k / 2;
        let map = (0..group.size())
            .map(|i| {
                let mut t = group.tuple(i);
                for j in 0..n {
                    t[n + j] = (t[n + j] + t[j]) % 2;
                }
                group.index(&t)
            })
            .collect();
        Ok(InvolutiveAutomorphism { map })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }
}

/// A finite group given by its operation table, identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitGroup {
    size: usize,
    table: Vec<usize>,
}

impl ExplicitGroup {
    pub fn new(size: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != size * size || table.iter().any(|&c| c >= size) {
            return Err(Error::NotAbelian("malformed operation table".into()));
        }
        Ok(ExplicitGroup { size, table })
    }

    pub fn from_fin_abelian(a: &FinAbelianGroup) -> Self {
        let n = a.size();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(a.add(x, y));
            }
        }
        ExplicitGroup { size: n, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    /// Checks identity at 0, associativity, inverses and commutativity.
    pub fn verify_abelian(&self) -> Result<()> {
        let n = self.size;
        if (0..n).any(|a| self.op(0, a) != a || self.op(a, 0) != a) {
            return Err(Error::NotAbelian("index 0 is not an identity".into()));
        }
        for a in 0..n {
            if !(0..n).any(|b| self.op(a, b) == 0) {
                return Err(Error::NotAbelian(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                if self.op(a, b) != self.op(b, a) {
                    return Err(Error::NotAbelian(format!("{a} and {b} do not commute")));
                }
                for c in 0..n {
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                        return Err(Error::NotAbelian(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut k = 1;
        let mut p = a;
        while p != 0 {
            p = self.op(p, a);
            k += 1;
        }
        k
    }

    pub fn order_counts(&self) -> BTreeMap<u64, usize> {
        let mut counts = BTreeMap::new();
        for a in 0..self.size {
            *counts.entry(self.element_order(a)).or_insert(0) += 1;
        }
        counts
    }
}

/// Invariant factors `d₁ | … | d_k` of an explicit finite abelian group.
///
/// Works prime by prime: for each `p` dividing the order, `|A[p^j]|` (the
/// number of elements whose order divides `p^j`) equals
/// `p^{Σ_i min(j, e_i)}`, which pins down the exponents `e_i` of the
/// `p`-primary part.
pub fn invariant_factors(group: &ExplicitGroup) -> Result<Vec<u64>> {
    group.verify_abelian()?;
    let orders: Vec<u64> = (0..group.size()).map(|a| group.element_order(a)).collect();
    let mut primary = Vec::new();
    for (p, top) in factorize(group.size() as u64) {
        // counts[j] = log_p |A[p^j]|
        let mut logs = Vec::with_capacity(top as usize + 1);
        for j in 0..=top {
            let pj = p.pow(j);
            let c = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
            logs.push(exact_log(c, p).ok_or_else(|| {
                Error::NotAbelian(format!("{c} elements of order dividing {pj}"))
            })?);
        }
        // number of cyclic factors with exponent >= j is logs[j] - logs[j-1]
        let at_least: Vec<u32> = (1..logs.len()).map(|j| logs[j] - logs[j - 1]).collect();
        for j in 0..at_least.len() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            let exactly = at_least[j]
                .checked_sub(next)
                .ok_or_else(|| Error::NotAbelian("inconsistent p-torsion counts".into()))?;
            for _ in 0..exactly {
                primary.push((p, j as u32 + 1));
            }
        }
    }
    Ok(chain_from_prime_powers(&primary))
}

/// Assembles prime powers `p^e` into the canonical divisor chain.
pub fn chain_from_prime_powers(primary: &[(u64, u32)]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &(p, e) in primary {
        if e > 0 {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut chain = vec![1u64; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (i, e) in exps.into_iter().enumerate() {
            // largest exponents go to the last factor
            chain[len - 1 - i] *= p.pow(e);
        }
    }
    chain
}

/// Canonical chain of an arbitrary list of cyclic factors.
pub fn canonical_chain(factors: &[u64]) -> Vec<u64> {
    let primary: Vec<(u64, u32)> = factors.iter().flat_map(|&d| factorize(d)).collect();
    chain_from_prime_powers(&primary)
}

pub fn is_divisor_chain(factors: &[u64]) -> bool {
    factors.iter().all(|&d| d >= 2) && factors.windows(2).all(|w| w[1] % w[0] == 0)
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn exact_log(mut c: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    while c > 1 {
        if !c.is_multiple_of(p) {
            return None;
        }
        c /= p;
        k += 1;
    }
    (c == 1).then_some(k)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
