//! Canonical intersecting families and exact transposition-graph boundaries.

use crate::perm::{
    coset_members, derangement_count, factorial, is_derangement_pair, Coset, PermFamily,
    Permutation, MAX_N,
};
use crate::rat::{rat_int, rat_u64, Rat};
use crate::reconstruct::{reconstruct, Reconstruction};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

/// The Cayley graph on S_n generated by all transpositions.
pub struct TranspositionGraph {
    n: usize,
    taus: Vec<Permutation>,
}

impl TranspositionGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::SmallN { n, min: 2 });
        }
        if n > MAX_N {
            return Err(Error::BadN(n));
        }
        let mut taus = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..=n {
            for j in i + 1..=n {
                taus.push(Permutation::transposition(n, i, j));
            }
        }
        Ok(Self { n, taus })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertex degree C(n, 2).
    pub fn degree(&self) -> u64 {
        (self.n * (self.n - 1) / 2) as u64
    }

    /// The generating transpositions.
    pub fn transpositions(&self) -> &[Permutation] {
        &self.taus
    }

    /// Ranks of the neighbors p tau of `p`.
    pub fn neighbor_ranks(&self, p: &Permutation) -> Result<Vec<u64>> {
        self.taus
            .iter()
            .map(|tau| Ok(p.compose(tau)?.rank()))
            .collect()
    }
}

/// Exact number of transposition-graph edges with one endpoint in `fam`.
///
/// Counts each crossing pair once, from its inside endpoint.
pub fn edge_boundary(fam: &PermFamily, cap: usize) -> Result<u64> {
    let n = fam.n();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let graph = TranspositionGraph::new(n)?;
    let ranks: Vec<u64> = fam.iter_ranks().collect();
    Ok(ranks
        .par_iter()
        .map(|&r| {
            let p = Permutation::unrank(n, r).expect("rank from the set");
            graph
                .taus
                .iter()
                .filter(|tau| {
                    let q = p.compose(tau).expect("same n");
                    !fam.contains_rank(q.rank())
                })
                .count() as u64
        })
        .sum())
}

/// Whether every two members agree on at least one point.
pub fn is_intersecting(fam: &PermFamily) -> bool {
    let perms: Vec<Permutation> = fam.iter_perms().collect();
    perms.par_iter().enumerate().all(|(idx, p)| {
        perms[idx + 1..]
            .iter()
            .all(|q| !is_derangement_pair(p, q).expect("same n"))
    })
}

/// Per-cell membership counts |A ∩ T_ij| in row-major order.
fn point_image_counts(fam: &PermFamily) -> Vec<u64> {
    let n = fam.n();
    let mut counts = vec![0u64; n * n];
    for p in fam.iter_perms() {
        for i in 1..=n {
            counts[(i - 1) * n + p.image(i) - 1] += 1;
        }
    }
    counts
}

/// First 1-coset containing the whole family, scanning (i, j) ascending.
/// An empty family is centred at T(1,1).
pub fn is_centred(fam: &PermFamily) -> Option<Coset> {
    let n = fam.n();
    let counts = point_image_counts(fam);
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .find(|&(i, j)| counts[(i - 1) * n + j - 1] == fam.len())
        .map(|(i, j)| Coset::new(i, j))
}

/// Permutations fixing at least two elements of {1, 2, 3}.
pub fn family_b(n: usize) -> Result<PermFamily> {
    if n < 4 {
        return Err(Error::SmallN { n, min: 4 });
    }
    let f1 = coset_members(n, Coset::new(1, 1))?;
    let f2 = coset_members(n, Coset::new(2, 2))?;
    let f3 = coset_members(n, Coset::new(3, 3))?;
    f1.intersection(&f2)?
        .union(&f1.intersection(&f3)?)?
        .union(&f2.intersection(&f3)?)
}

/// Permutations fixing 1 and agreeing with (1 2) somewhere, plus (1 2) itself.
pub fn family_c(n: usize) -> Result<PermFamily> {
    if n < 4 {
        return Err(Error::SmallN { n, min: 4 });
    }
    let tau = Permutation::transposition(n, 1, 2);
    let mut agree = PermFamily::empty(n)?;
    for i in 1..=n {
        agree = agree.union(&coset_members(n, Coset::new(i, tau.image(i)))?)?;
    }
    let mut fam = coset_members(n, Coset::new(1, 1))?.intersection(&agree)?;
    fam.insert(&tau)?;
    Ok(fam)
}

/// T_11 ∪ T_22 together with the swap block T_12 ∩ T_21.
pub fn counterexample_family(n: usize) -> Result<PermFamily> {
    if n < 4 {
        return Err(Error::SmallN { n, min: 4 });
    }
    let swap = coset_members(n, Coset::new(1, 2))?.intersection(&coset_members(n, Coset::new(2, 1))?)?;
    coset_members(n, Coset::new(1, 1))?
        .union(&coset_members(n, Coset::new(2, 2))?)?
        .union(&swap)
}

/// Which coordinate a canonical dictatorship fixes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DictAxis {
    /// sigma(1) ranges over 1..=c.
    Row,
    /// sigma^{-1}(1) ranges over 1..=c.
    Col,
}

/// Disjoint union of `c` 1-cosets sharing a point (Row) or an image (Col).
pub fn dictatorship_family(n: usize, axis: DictAxis, c: usize) -> Result<PermFamily> {
    if c > n {
        return Err(Error::Invalid("need c <= n".into()));
    }
    let mut fam = PermFamily::empty(n)?;
    for v in 1..=c {
        let t = match axis {
            DictAxis::Row => Coset::new(1, v),
            DictAxis::Col => Coset::new(v, 1),
        };
        fam = fam.union(&coset_members(n, t)?)?;
    }
    Ok(fam)
}

/// Union of c 1-cosets with a k(n-2)!-sized block moved from T_1,c into
/// T_1,c+1, keeping |A| = c(n-1)! while pushing A off every c-coset union.
pub fn sharpness_family(n: usize, c: usize, k: usize) -> Result<PermFamily> {
    if c == 0 || c + k + 1 > n {
        return Err(Error::Invalid("need c >= 1 and c + k + 1 <= n".into()));
    }
    let fam = dictatorship_family(n, DictAxis::Row, c)?;
    let mut block = PermFamily::empty(n)?;
    for j in n - k + 1..=n {
        block = block.union(&coset_members(n, Coset::new(2, j))?)?;
    }
    let plus = coset_members(n, Coset::new(1, c + 1))?.intersection(&block)?;
    let minus = coset_members(n, Coset::new(1, c))?.intersection(&block)?;
    fam.union(&plus)?.difference(&minus)
}

/// First `k` permutations of S_n in lexicographic order.
pub fn lex_initial_segment(n: usize, k: u64) -> Result<PermFamily> {
    let mut fam = PermFamily::empty(n)?;
    if k > factorial(n) {
        return Err(Error::RankOutOfRange { n, rank: k });
    }
    for r in 0..k {
        fam.insert_rank(r);
    }
    Ok(fam)
}

/// How far an intersecting family is from being centred.
#[derive(Clone, Debug, PartialEq)]
pub struct CameronKuReport {
    /// A containing 1-coset, if any.
    pub centred: Option<Coset>,
    /// Coset with the largest overlap, ties by (i, j).
    pub best_coset: Coset,
    /// |A ∩ T_best|.
    pub best_overlap: u64,
    /// |T_best \ A|.
    pub missing: u64,
    /// d_{n-1} + d_{n-2}, the exact size of the centring obstruction.
    pub obstruction: u64,
    /// Whether missing <= obstruction.
    pub within_obstruction: bool,
}

/// Measures an intersecting family against its best-fitting 1-coset.
pub fn cameron_ku_check(fam: &PermFamily) -> Result<CameronKuReport> {
    if !is_intersecting(fam) {
        return Err(Error::NotIntersecting);
    }
    let n = fam.n();
    let counts = point_image_counts(fam);
    let mut best = (0u64, 1usize, 1usize);
    for i in 1..=n {
        for j in 1..=n {
            let cnt = counts[(i - 1) * n + j - 1];
            if cnt > best.0 {
                best = (cnt, i, j);
            }
        }
    }
    let missing = factorial(n - 1) - best.0;
    let obstruction = derangement_count(n - 1) + derangement_count(n - 2);
    Ok(CameronKuReport {
        centred: is_centred(fam),
        best_coset: Coset::new(best.1, best.2),
        best_overlap: best.0,
        missing,
        obstruction,
        within_obstruction: missing <= obstruction,
    })
}

/// Exact boundary data for one family in the transposition graph.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub family_size: u64,
    pub boundary_edges: u64,
    /// |A| (n! - |A|) / (n-1)!.
    pub dm_bound: Rat,
    /// Excess over the bound, normalized: |∂A| = dm_bound + delta n |A|.
    pub delta: Rat,
    /// Present when the family is inside the reconstruction regime.
    pub reconstruction: Option<Reconstruction>,
    /// |A \ B| for B the union of the reconstructed cosets (|A| when none).
    pub a_minus_b: u64,
}

/// Counts the edge boundary, compares it with the isoperimetric bound, and
/// attaches the reconstruction diagnostics when they apply.
pub fn isoperimetry_report(fam: &PermFamily, cap: usize) -> Result<BoundaryReport> {
    let n = fam.n();
    let boundary_edges = edge_boundary(fam, cap)?;
    let size = fam.len();
    let dm_bound = rat_u64(size) * rat_u64(factorial(n) - size) / rat_u64(factorial(n - 1));
    let excess = rat_u64(boundary_edges) - &dm_bound;
    assert!(!excess.is_negative(), "isoperimetric bound violated");
    let delta = if size == 0 {
        Rat::zero()
    } else {
        excess / (rat_int(n as i64) * rat_u64(size))
    };
    let reconstruction = reconstruct(fam).ok();
    let a_minus_b = match &reconstruction {
        Some(rec) => {
            let mut cover = PermFamily::empty(n)?;
            for t in &rec.cosets {
                cover = cover.union(&coset_members(n, *t)?)?;
            }
            size - fam.intersection_size(&cover)?
        }
        None => size,
    };
    Ok(BoundaryReport {
        family_size: size,
        boundary_edges,
        dm_bound,
        delta,
        reconstruction,
        a_minus_b,
    })
}
