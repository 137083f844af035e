//! Dense linear algebra over F₂.

/// A row of bits packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
            .filter(|&i| i < self.len)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

/// Incremental Gaussian elimination for `A·f = b` over F₂.
///
/// Rows are reduced against the pivots collected so far as they arrive, so
/// redundant equations are dropped immediately and at most `vars` rows are
/// ever stored.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    vars: usize,
    // each row holds `vars` coefficient bits followed by the right-hand side
    pivots: Vec<(usize, BitRow)>,
    consistent: bool,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        LinearSystem {
            vars,
            pivots: Vec::new(),
            consistent: true,
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Adds `Σ_{i ∈ support} f_i = rhs`. Repeated indices cancel.
    pub fn add_equation(&mut self, support: &[usize], rhs: bool) {
        let mut row = BitRow::zeros(self.vars + 1);
        for &i in support {
            assert!(i < self.vars, "variable {i} out of range");
            row.flip(i);
        }
        row.set(self.vars, rhs);
        self.add_row(row);
    }

    fn add_row(&mut self, mut row: BitRow) {
        // pivot rows are reduced against all earlier pivots, so one pass in
        // insertion order clears every pivot column
        for (col, pivot) in &self.pivots {
            if row.get(*col) {
                row.xor_assign(pivot);
            }
        }
        match row.first_one() {
            None => {}
            Some(col) if col == self.vars => self.consistent = false,
            Some(col) => self.pivots.push((col, row)),
        }
    }

    /// One solution with every free variable set to zero.
    pub fn solve(&self) -> Option<Vec<bool>> {
        if !self.consistent {
            return None;
        }
        let mut x = vec![false; self.vars];
        for (col, row) in self.pivots.iter().rev() {
            let mut v = row.get(self.vars);
            for j in (col + 1)..self.vars {
                if row.get(j) && x[j] {
                    v = !v;
                }
            }
            x[*col] = v;
        }
        Some(x)
    }
}

/// Rank of a set of vectors packed into `u64` masks.
pub fn rank_of_masks(vectors: &[u64]) -> usize {
    reduced_basis(vectors).len()
}

/// Echelon basis of the span of `vectors`, each with a distinct leading bit.
pub fn reduced_basis(vectors: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let r = reduce_mask(&basis, v);
        if r != 0 {
            basis.push(r);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

fn reduce_mask(basis: &[u64], mut v: u64) -> u64 {
    for &b in basis {
        let lead = 63 - b.leading_zeros();
        if v >> lead & 1 == 1 {
            v ^= b;
        }
    }
    v
}

pub fn in_span(vectors: &[u64], v: u64) -> bool {
    reduce_mask(&reduced_basis(vectors), v) == 0
}

/// Coordinates of `v` in the (linearly independent) `basis`, if `v` lies in
/// its span. Brute force over subsets, meant for small dimensions.
pub fn coordinates(basis: &[u64], v: u64) -> Option<u64> {
    assert!(basis.len() < 24, "basis too large for subset search");
    (0u64..1 << basis.len()).find(|&c| combine(basis, c) == v)
}

/// `Σ_{i ∈ c} basis[i]`.
pub fn combine(basis: &[u64], c: u64) -> u64 {
    basis
        .iter()
        .enumerate()
        .filter(|(i, _)| c >> i & 1 == 1)
        .fold(0, |acc, (_, &b)| acc ^ b)
}
