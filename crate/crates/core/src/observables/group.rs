//! Finite abelian groups `Z_{n1} × … × Z_{nk}`, their canonical
//! bicharacter, subgroup lattice and annihilators.
//!
//! Elements are mixed-radix integers with the first factor most
//! significant, so `Z_2 × Z_2` indexes like the Kronecker product `F_2 ⊗ F_2`.
//! Subgroups are stored as 64-bit membership masks.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{root_of_unity, C64, MAX_DIM};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    orders: Vec<usize>,
    d: usize,
}

impl AbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&n| n < 2) {
            return Err(Error::BadDimension(format!("cyclic orders must all be >= 2, got {orders:?}")));
        }
        let d = orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .filter(|&d| d <= MAX_DIM)
            .ok_or_else(|| Error::BadDimension(format!("group order of {orders:?} exceeds {MAX_DIM}")))?;
        Ok(Self { orders, d })
    }

    pub fn cyclic(d: usize) -> Result<Self> {
        Self::new(vec![d])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.d
    }

    pub fn encode(&self, element: &[usize]) -> Result<usize> {
        if element.len() != self.orders.len() || element.iter().zip(&self.orders).any(|(&j, &n)| j >= n) {
            return Err(Error::BadElement(element.to_vec()));
        }
        Ok(element.iter().zip(&self.orders).fold(0, |acc, (&j, &n)| acc * n + j))
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = index % n;
            index /= n;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, n| (x + y) % n)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.combine(a, b, |x, y, n| (x + n - y) % n)
    }

    fn combine(&self, a: usize, b: usize, op: impl Fn(usize, usize, usize) -> usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for &n in self.orders.iter().rev() {
            out += op(a % n, b % n, n) * place;
            place *= n;
            a /= n;
            b /= n;
        }
        out
    }

    /// Numerator `m` with `bic(j, k) = e^{2πi m/d}`, computed exactly.
    fn pairing(&self, j: usize, k: usize) -> usize {
        let (mut j, mut k) = (j, k);
        let mut m = 0;
        for &n in self.orders.iter().rev() {
            m = (m + (j % n) * (k % n) * (self.d / n)) % self.d;
            j /= n;
            k /= n;
        }
        m
    }

    /// `bic(j, k)` on encoded elements.
    pub fn bic(&self, j: usize, k: usize) -> C64 {
        root_of_unity(self.pairing(j, k), self.d)
    }

    /// Exact test for `bic(j, k) == 1`.
    pub fn pairs_trivially(&self, j: usize, k: usize) -> bool {
        self.pairing(j, k) == 0
    }

    /// Subgroup generated by `gens` (encoded elements).
    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut mask = 1u64;
        for &g in gens {
            mask = self.extend(mask, g);
        }
        Subgroup::from_mask(mask)
    }

    /// Subgroup generated by the subgroup `mask` and `g`: the union of the
    /// cosets `mask + m·g`.
    fn extend(&self, mask: u64, g: usize) -> u64 {
        let members = mask_elements(mask);
        let mut out = mask;
        let mut shift = g;
        while out >> shift & 1 == 0 {
            for &h in &members {
                out |= 1 << self.add(h, shift);
            }
            shift = self.add(shift, g);
        }
        out
    }

    fn is_closed(&self, mask: u64) -> bool {
        if mask & 1 == 0 {
            return false;
        }
        let members = mask_elements(mask);
        members
            .iter()
            .all(|&a| members.iter().all(|&b| mask >> self.sub(a, b) & 1 == 1))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// `bic(j, k) = exp(2πi Σ_r j_r k_r / n_r)` on element tuples.
pub fn bicharacter(g: &AbelianGroup, j: &[usize], k: &[usize]) -> Result<C64> {
    Ok(g.bic(g.encode(j)?, g.encode(k)?))
}

/// A subgroup, as the set of encoded elements it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    mask: u64,
}

impl Subgroup {
    fn from_mask(mask: u64) -> Self {
        Self { mask }
    }

    /// Validates that `elements` is a subgroup of `g`.
    pub fn from_elements(g: &AbelianGroup, elements: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e >= g.order() {
                return Err(Error::NotSubgroup);
            }
            mask |= 1 << e;
        }
        if !g.is_closed(mask) {
            return Err(Error::NotSubgroup);
        }
        Ok(Self { mask })
    }

    /// Sorted encoded elements.
    pub fn elements(&self) -> Vec<usize> {
        mask_elements(self.mask)
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: usize) -> bool {
        e < 64 && self.mask >> e & 1 == 1
    }

    fn check_in(&self, g: &AbelianGroup) -> Result<()> {
        let full = if g.order() == 64 { u64::MAX } else { (1u64 << g.order()) - 1 };
        if self.mask & !full != 0 || !g.is_closed(self.mask) {
            return Err(Error::NotSubgroup);
        }
        Ok(())
    }
}

/// All subgroups of `g`, ordered by size and then by elements.
///
/// Starts from the trivial subgroup and repeatedly adjoins single elements
/// to every known subgroup until no new subgroup appears; every subgroup of
/// a finite group is reached this way.
pub fn subgroups(g: &AbelianGroup) -> Vec<Subgroup> {
    let mut seen: BTreeSet<u64> = BTreeSet::from([1u64]);
    let mut frontier = vec![1u64];
    while let Some(mask) = frontier.pop() {
        for e in 0..g.order() {
            if mask >> e & 1 == 1 {
                continue;
            }
            let next = g.extend(mask, e);
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    let mut out: Vec<Subgroup> = seen.into_iter().map(Subgroup::from_mask).collect();
    out.sort_by_key(|s| (s.len(), s.elements()));
    out
}

/// `L^⊥ = {k : bic(j, k) = 1 for all j in L}`.
pub fn annihilator(g: &AbelianGroup, l: &Subgroup) -> Result<Subgroup> {
    l.check_in(g)?;
    let members = l.elements();
    let mut mask = 0u64;
    for k in 0..g.order() {
        if members.iter().all(|&j| g.pairs_trivially(j, k)) {
            mask |= 1 << k;
        }
    }
    Ok(Subgroup::from_mask(mask))
}

/// `χ_L = |L|^{-1/2}` on `L`, zero elsewhere.
pub fn indicator_state(g: &AbelianGroup, l: &Subgroup) -> Result<Vec<C64>> {
    l.check_in(g)?;
    let amp = C64::new(1.0 / (l.len() as f64).sqrt(), 0.0);
    Ok((0..g.order())
        .map(|e| if l.contains(e) { amp } else { C64::new(0.0, 0.0) })
        .collect())
}

/// `χ'(j') = bic(j', k) χ_L(j' - j)`.
pub fn translate_modulate(g: &AbelianGroup, l: &Subgroup, j: usize, k: usize) -> Result<Vec<C64>> {
    if j >= g.order() || k >= g.order() {
        return Err(Error::BadElement(vec![j.max(k)]));
    }
    let chi = indicator_state(g, l)?;
    Ok((0..g.order())
        .map(|jp| g.bic(jp, k) * chi[g.sub(jp, j)])
        .collect())
}

/// One representative per coset of `l`, the smallest element of each.
pub fn coset_representatives(g: &AbelianGroup, l: &Subgroup) -> Vec<usize> {
    let members = l.elements();
    let mut covered = 0u64;
    let mut reps = Vec::new();
    for e in 0..g.order() {
        if covered >> e & 1 == 1 {
            continue;
        }
        reps.push(e);
        for &h in &members {
            covered |= 1 << g.add(e, h);
        }
    }
    reps
}

/// The `d` states `translate_modulate(L, j, k)` with `j` ranging over
/// cosets of `L` and `k` over cosets of `L^⊥`; an orthonormal basis.
pub fn equality_family(g: &AbelianGroup, l: &Subgroup) -> Result<Vec<Vec<C64>>> {
    let perp = annihilator(g, l)?;
    let mut out = Vec::with_capacity(g.order());
    for &j in &coset_representatives(g, l) {
        for &k in &coset_representatives(g, &perp) {
            out.push(translate_modulate(g, l, j, k)?);
        }
    }
    Ok(out)
}
