//! Finite two-valued groups stored as full product tables.
//!
//! A [`TwoValuedGroup`] is an `n × n` table of unordered pairs. The identity
//! always sits at index 0 and every [`Pair`] is stored sorted, so two tables
//! describing the same multiplication on the same labelling compare equal.

use std::fmt;

use crate::error::{Error, Result};

/// Index of an element inside a [`TwoValuedGroup`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn new(index: usize) -> Self {
        ElementId(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(index: usize) -> Self {
        ElementId::new(index)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Unordered pair of elements, the value of a two-valued product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    lo: ElementId,
    hi: ElementId,
}

impl Pair {
    pub fn new(a: ElementId, b: ElementId) -> Self {
        if a <= b {
            Pair { lo: a, hi: b }
        } else {
            Pair { lo: b, hi: a }
        }
    }

    pub fn doubled(a: ElementId) -> Self {
        Pair { lo: a, hi: a }
    }

    pub fn lo(self) -> ElementId {
        self.lo
    }

    pub fn hi(self) -> ElementId {
        self.hi
    }

    pub fn is_doubled(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, x: ElementId) -> bool {
        self.lo == x || self.hi == x
    }

    /// The element left over after removing one copy of `x`.
    pub fn other(self, x: ElementId) -> Option<ElementId> {
        if self.lo == x {
            Some(self.hi)
        } else if self.hi == x {
            Some(self.lo)
        } else {
            None
        }
    }

    pub fn elements(self) -> [ElementId; 2] {
        [self.lo, self.hi]
    }

    pub fn map(self, f: impl Fn(ElementId) -> ElementId) -> Pair {
        Pair::new(f(self.lo), f(self.hi))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.0, self.hi.0)
    }
}

/// Sorted multiset of elements with multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiset(Vec<ElementId>);

impl Multiset {
    pub fn new(mut items: Vec<ElementId>) -> Self {
        items.sort_unstable();
        Multiset(items)
    }

    pub fn from_pair(pair: Pair) -> Self {
        Multiset(vec![pair.lo, pair.hi])
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn count(&self, x: ElementId) -> usize {
        self.0.iter().filter(|&&y| y == x).count()
    }

    pub fn into_vec(self) -> Vec<ElementId> {
        self.0
    }
}

impl From<Pair> for Multiset {
    fn from(pair: Pair) -> Self {
        Multiset::from_pair(pair)
    }
}

/// A finite two-valued multiplication table with identity at index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoValuedGroup {
    names: Vec<String>,
    table: Vec<Pair>,
}

impl TwoValuedGroup {
    /// Builds a table from row-major cells. Cells are re-sorted; indices are
    /// range-checked. Axioms are not checked here, see [`verify_axioms`].
    pub fn from_table(names: Vec<String>, table: Vec<Pair>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NonSquareTable {
                size: 0,
                cells: table.len(),
                expected: 0,
            });
        }
        if table.len() != n * n {
            return Err(Error::NonSquareTable {
                size: n,
                cells: table.len(),
                expected: n * n,
            });
        }
        for pair in &table {
            for x in pair.elements() {
                if x.index() >= n {
                    return Err(Error::IndexOutOfRange {
                        index: x.index(),
                        size: n,
                    });
                }
            }
        }
        Ok(TwoValuedGroup { names, table })
    }

    /// Builds a table from a product function, naming elements by index.
    pub fn from_fn(n: usize, product: impl FnMut(usize, usize) -> (usize, usize)) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::from_fn_named(names, product)
    }

    pub fn from_fn_named(
        names: Vec<String>,
        mut product: impl FnMut(usize, usize) -> (usize, usize),
    ) -> Self {
        let n = names.len();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (x, y) = product(a, b);
                assert!(x < n && y < n, "product out of range");
                table.push(Pair::new(ElementId::new(x), ElementId::new(y)));
            }
        }
        TwoValuedGroup { names, table }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> ElementId {
        ElementId::IDENTITY
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x.index()]
    }

    pub fn element_by_name(&self, name: &str) -> Option<ElementId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(ElementId::new)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + Clone {
        (0..self.size()).map(ElementId::new)
    }

    pub fn cells(&self) -> &[Pair] {
        &self.table
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.names.len());
        self.names = names;
        self
    }

    /// Table lookup without range checks beyond the slice bound.
    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> Pair {
        self.table[a.index() * self.size() + b.index()]
    }

    pub fn product(&self, a: ElementId, b: ElementId) -> Result<Pair> {
        let n = self.size();
        for x in [a, b] {
            if x.index() >= n {
                return Err(Error::IndexOutOfRange {
                    index: x.index(),
                    size: n,
                });
            }
        }
        Ok(self.mul(a, b))
    }

    /// Multiset union of `x * b` over `x ∈ m`, with multiplicity.
    pub fn product_fold(&self, m: &Multiset, b: ElementId) -> Result<Multiset> {
        if m.is_empty() {
            return Err(Error::EmptyMultiset);
        }
        let mut out = Vec::with_capacity(2 * m.len());
        for &x in m.as_slice() {
            let p = self.product(x, b)?;
            out.extend(p.elements());
        }
        Ok(Multiset::new(out))
    }

    /// `a * m`: the multiset union of `a * y` over `y ∈ m`.
    pub fn product_fold_left(&self, a: ElementId, m: &Multiset) -> Result<Multiset> {
        if m.is_empty() {
            return Err(Error::EmptyMultiset);
        }
        let mut out = Vec::with_capacity(2 * m.len());
        for &y in m.as_slice() {
            out.extend(self.product(a, y)?.elements());
        }
        Ok(Multiset::new(out))
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| b < a || self.mul(a, b) == self.mul(b, a))
        })
    }

    /// `e ∈ x * x` for every element.
    pub fn is_involutive(&self) -> bool {
        self.elements()
            .all(|x| self.mul(x, x).contains(ElementId::IDENTITY))
    }

    /// Relabels the group: element `x` becomes `perm[x]`. `perm` must fix 0.
    pub fn permute(&self, perm: &[ElementId]) -> TwoValuedGroup {
        let n = self.size();
        assert_eq!(perm.len(), n);
        assert_eq!(
            perm[0],
            ElementId::IDENTITY,
            "permutation must fix the identity"
        );
        let mut names = vec![String::new(); n];
        let mut table = vec![Pair::doubled(ElementId::IDENTITY); n * n];
        for a in self.elements() {
            names[perm[a.index()].index()] = self.names[a.index()].clone();
            for b in self.elements() {
                let p = self.mul(a, b).map(|x| perm[x.index()]);
                table[perm[a.index()].index() * n + perm[b.index()].index()] = p;
            }
        }
        TwoValuedGroup { names, table }
    }
}

/// Which axiom or property a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    StrongIdentity,
    Associativity,
    InverseMissing,
    InverseNotUnique,
    Commutativity,
    Involutivity,
}

impl ViolationKind {
    /// Axiom-level kinds make the table fail to be a two-valued group.
    pub fn is_axiom(self) -> bool {
        matches!(
            self,
            ViolationKind::StrongIdentity
                | ViolationKind::Associativity
                | ViolationKind::InverseMissing
                | ViolationKind::InverseNotUnique
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<ElementId>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        for w in &self.witness {
            write!(f, " {}", w.0)?;
        }
        Ok(())
    }
}

impl Violation {
    /// Like `Display`, with element names from `g`.
    pub fn display_with(&self, g: &TwoValuedGroup) -> String {
        let mut s = format!("{:?}", self.kind);
        for &w in &self.witness {
            s.push(' ');
            s.push_str(g.names().get(w.index()).map_or("?", String::as_str));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_two_valued_group: bool,
    pub is_commutative: bool,
    pub is_involutive: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_involutive_commutative_group(&self) -> bool {
        self.is_two_valued_group && self.is_commutative && self.is_involutive
    }
}

/// Checks every axiom exhaustively (`O(n³)` for associativity).
pub fn verify_axioms(g: &TwoValuedGroup) -> ValidationReport {
    let e = ElementId::IDENTITY;
    let mut violations = Vec::new();

    for x in g.elements() {
        let d = Pair::doubled(x);
        if g.mul(e, x) != d || g.mul(x, e) != d {
            violations.push(Violation {
                kind: ViolationKind::StrongIdentity,
                witness: vec![x],
            });
        }
    }

    for x in g.elements() {
        for y in g.elements() {
            let xy = g.mul(x, y);
            for z in g.elements() {
                let yz = g.mul(y, z);
                let left = four(g.mul(xy.lo(), z), g.mul(xy.hi(), z));
                let right = four(g.mul(x, yz.lo()), g.mul(x, yz.hi()));
                if left != right {
                    violations.push(Violation {
                        kind: ViolationKind::Associativity,
                        witness: vec![x, y, z],
                    });
                }
            }
        }
    }

    for x in g.elements() {
        let candidates: Vec<ElementId> = g
            .elements()
            .filter(|&y| g.mul(x, y).contains(e) || g.mul(y, x).contains(e))
            .collect();
        let two_sided = candidates
            .iter()
            .any(|&y| g.mul(x, y).contains(e) && g.mul(y, x).contains(e));
        if !two_sided {
            violations.push(Violation {
                kind: ViolationKind::InverseMissing,
                witness: vec![x],
            });
        } else if candidates.len() > 1 {
            let mut witness = vec![x];
            witness.extend(candidates);
            violations.push(Violation {
                kind: ViolationKind::InverseNotUnique,
                witness,
            });
        }
    }

    let mut is_commutative = true;
    for x in g.elements() {
        for y in g.elements().filter(|&y| y > x) {
            if g.mul(x, y) != g.mul(y, x) {
                is_commutative = false;
                violations.push(Violation {
                    kind: ViolationKind::Commutativity,
                    witness: vec![x, y],
                });
            }
        }
    }

    let mut is_involutive = true;
    for x in g.elements() {
        if !g.mul(x, x).contains(e) {
            is_involutive = false;
            violations.push(Violation {
                kind: ViolationKind::Involutivity,
                witness: vec![x],
            });
        }
    }

    violations.sort();
    let is_two_valued_group = !violations.iter().any(|v| v.kind.is_axiom());
    ValidationReport {
        is_two_valued_group,
        is_commutative,
        is_involutive,
        violations,
    }
}

#[inline]
fn four(a: Pair, b: Pair) -> [ElementId; 4] {
    let mut m = [a.lo(), a.hi(), b.lo(), b.hi()];
    m.sort_unstable();
    m
}

/// Errors unless the table passes every axiom and is involutive and commutative.
pub fn require_involutive_commutative(g: &TwoValuedGroup) -> Result<()> {
    let report = verify_axioms(g);
    if !report.is_two_valued_group {
        return Err(Error::NotTwoValuedGroup);
    }
    if !report.is_involutive {
        return Err(Error::NotInvolutive);
    }
    if !report.is_commutative {
        return Err(Error::NotCommutative);
    }
    Ok(())
}

/// The power sequence `x⁰ = e, x¹ = x, …` up to the first return to `e`.
///
/// Uses the recurrence `x * xᵏ = [x^{k-1}, x^{k+1}]`; fails with
/// [`Error::AmbiguousPower`] if `x^{k-1}` is missing from `x * xᵏ`.
pub fn power_sequence(g: &TwoValuedGroup, x: ElementId) -> Result<Vec<ElementId>> {
    let e = ElementId::IDENTITY;
    if x.index() >= g.size() {
        return Err(Error::IndexOutOfRange {
            index: x.index(),
            size: g.size(),
        });
    }
    if x == e {
        return Ok(vec![e]);
    }
    let mut seq = vec![e, x];
    // An involutive group of size n has element orders at most 2n.
    let limit = 2 * g.size() + 2;
    loop {
        let k = seq.len() - 1;
        let prev = seq[k - 1];
        let cur = seq[k];
        let p = g.mul(x, cur);
        if g.mul(cur, x) != p {
            return Err(Error::AmbiguousPower {
                element: x,
                step: k,
            });
        }
        let next = p.other(prev).ok_or(Error::AmbiguousPower {
            element: x,
            step: k,
        })?;
        if next == e {
            return Ok(seq);
        }
        if seq.len() > limit {
            return Err(Error::NoFiniteOrder(x));
        }
        seq.push(next);
    }
}

pub fn power(g: &TwoValuedGroup, x: ElementId, k: i64) -> Result<ElementId> {
    let seq = power_sequence(g, x)?;
    Ok(seq[(k.unsigned_abs() % seq.len() as u64) as usize])
}

pub fn order(g: &TwoValuedGroup, x: ElementId) -> Result<usize> {
    Ok(power_sequence(g, x)?.len())
}

/// Power sequences of every element, computed once.
#[derive(Clone, Debug)]
pub struct PowerTable {
    sequences: Vec<Vec<ElementId>>,
}

impl PowerTable {
    pub fn new(g: &TwoValuedGroup) -> Result<Self> {
        let sequences = g
            .elements()
            .map(|x| power_sequence(g, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerTable { sequences })
    }

    pub fn order(&self, x: ElementId) -> usize {
        self.sequences[x.index()].len()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.sequences.iter().map(Vec::len).collect()
    }

    pub fn power(&self, x: ElementId, k: i64) -> ElementId {
        let seq = &self.sequences[x.index()];
        seq[(k.unsigned_abs() % seq.len() as u64) as usize]
    }

    pub fn square(&self, x: ElementId) -> ElementId {
        self.power(x, 2)
    }

    /// Number of elements of each order, indexed by order.
    pub fn order_counts(&self) -> Vec<usize> {
        let max = self.sequences.iter().map(Vec::len).max().unwrap_or(1);
        let mut counts = vec![0; max + 1];
        for s in &self.sequences {
            counts[s.len()] += 1;
        }
        counts
    }
}
