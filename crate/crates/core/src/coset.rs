//! The coset count matrix of a family A ⊂ S_n and everything it determines:
//! the projection f₁ of 1_A onto U₁, the affine shifts g and h, their
//! moments, and the distance from 1_A to U₁.
//!
//! All quantities reduce to the integer counts |A ∩ T_ij|: with
//! b_int(i,j) = n·|A ∩ T_ij| − |A| we have b_ij = b_int(i,j)/n!, so every
//! moment is an exact rational with an integer-arithmetic core.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::perm::{factorial, PermFamily, Permutation};
use crate::rat::{rat_u64, Rat};
use crate::{Error, Result};

/// Exact coset count matrix: c = |A|/(n−1)!, a_ij = |A ∩ T_ij|/(n−1)!,
/// b_ij = a_ij − c/n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetMatrix {
    n: usize,
    size: u64,
    /// Row-major |A ∩ T_ij| counts, i = point, j = image.
    counts: Vec<u64>,
}

/// Builds the coset count matrix of `fam` in one pass over its members.
pub fn coset_matrix(fam: &PermFamily) -> Result<CosetMatrix> {
    let n = fam.n();
    if n < 2 {
        return Err(Error::SmallN { n, min: 2 });
    }
    let mut counts = vec![0u64; n * n];
    for p in fam.iter_perms() {
        for i in 1..=n {
            counts[(i - 1) * n + (p.image(i) - 1)] += 1;
        }
    }
    Ok(CosetMatrix { n, size: fam.len(), counts })
}

impl CosetMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// |A|.
    pub fn family_size(&self) -> u64 {
        self.size
    }

    /// |A ∩ T_ij|; i, j 1-based.
    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[(i - 1) * self.n + (j - 1)]
    }

    /// c = |A|/(n−1)!.
    pub fn c(&self) -> Rat {
        rat_u64(self.size) / rat_u64(factorial(self.n - 1))
    }

    /// a_ij = |A ∩ T_ij|/(n−1)!.
    pub fn a(&self, i: usize, j: usize) -> Rat {
        rat_u64(self.count(i, j)) / rat_u64(factorial(self.n - 1))
    }

    /// b_ij = a_ij − c/n, equal to b_int(i,j)/n!.
    pub fn b(&self, i: usize, j: usize) -> Rat {
        Rat::new(BigInt::from(self.b_int(i, j)), BigInt::from(factorial(self.n)))
    }

    /// n·|A ∩ T_ij| − |A|, the numerator of b_ij over n!.
    pub fn b_int(&self, i: usize, j: usize) -> i64 {
        self.n as i64 * self.count(i, j) as i64 - self.size as i64
    }

    /// Σ_ij b_ij², exact.
    pub fn sum_b_sq(&self) -> Rat {
        let num: i128 = (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let b = self.b_int(i, j) as i128;
                b * b
            })
            .sum();
        let nf = BigInt::from(factorial(self.n));
        Rat::new(BigInt::from(num), nf.pow(2))
    }

    /// Σ_ij b_ij³, exact.
    pub fn sum_b_cube(&self) -> Rat {
        let num: i128 = (1..=self.n)
            .flat_map(|i| (1..=self.n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let b = self.b_int(i, j) as i128;
                b * b * b
            })
            .sum();
        let nf = BigInt::from(factorial(self.n));
        Rat::new(BigInt::from(num), nf.pow(3))
    }

    /// S(σ) = Σ_i |A ∩ T_{i,σ(i)}|, the integer core of g.
    pub fn s_int(&self, p: &Permutation) -> u64 {
        (1..=self.n).map(|i| self.count(i, p.image(i))).sum()
    }

    /// f₁(σ) = ((n−1)·S(σ) − (n−2)·|A|)/n!.
    pub fn f1_at(&self, p: &Permutation) -> Rat {
        let n = self.n as i64;
        let num = (n - 1) * self.s_int(p) as i64 - (n - 2) * self.size as i64;
        Rat::new(BigInt::from(num), BigInt::from(factorial(self.n)))
    }

    /// g(σ) = Σ_i a_{i,σ(i)} = n·S(σ)/n!.
    pub fn g_at(&self, p: &Permutation) -> Rat {
        Rat::new(
            BigInt::from(self.n as u64 * self.s_int(p)),
            BigInt::from(factorial(self.n)),
        )
    }

    /// h(σ) = g(σ) − c = n·(S(σ) − |A|)/n!.
    pub fn h_at(&self, p: &Permutation) -> Rat {
        let num = self.n as i64 * (self.s_int(p) as i64 - self.size as i64);
        Rat::new(BigInt::from(num), BigInt::from(factorial(self.n)))
    }

    /// E[(f−f₁)²] = E[f] − E[f₁²], using E[f₁²] = ((n−1)Σb² + c²)/n².
    pub fn distance_sq(&self) -> Rat {
        let n = self.n;
        let c = self.c();
        let ef1_sq = (rat_u64(n as u64 - 1) * self.sum_b_sq() + &c * &c)
            / rat_u64((n * n) as u64);
        c / rat_u64(n as u64) - ef1_sq
    }

    /// ε₁ with E[(f−f₁)²] = ε₁·c/n; zero for the empty family.
    pub fn eps1(&self) -> Rat {
        if self.size == 0 {
            return Rat::from(BigInt::from(0));
        }
        self.distance_sq() * rat_u64(self.n as u64) / self.c()
    }
}

/// A disjoint union of 1-cosets, all sharing a point or all sharing an
/// image: the families whose indicator lies exactly in U₁.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Dictatorship {
    /// {σ : σ(point) ∈ images}.
    Row { point: usize, images: Vec<usize> },
    /// {σ : σ(p) = image for some p ∈ points}.
    Col { image: usize, points: Vec<usize> },
}

/// Recognizes `fam` as a disjoint union of 1-cosets, if it is one.
///
/// Cosets sharing neither a point nor an image always intersect, so a
/// disjoint union is a set of full rows entries or full column entries of
/// the count matrix: every count is 0 or (n−1)!.
pub fn is_dictatorship(fam: &PermFamily) -> Result<Option<Dictatorship>> {
    let m = coset_matrix(fam)?;
    let n = m.n();
    let full = factorial(n - 1);
    for point in 1..=n {
        if (1..=n).all(|j| m.count(point, j) == 0 || m.count(point, j) == full) {
            let images: Vec<usize> = (1..=n).filter(|&j| m.count(point, j) == full).collect();
            if images.len() as u64 * full == fam.len() {
                return Ok(Some(Dictatorship::Row { point, images }));
            }
        }
    }
    for image in 1..=n {
        if (1..=n).all(|i| m.count(i, image) == 0 || m.count(i, image) == full) {
            let points: Vec<usize> = (1..=n).filter(|&i| m.count(i, image) == full).collect();
            if points.len() as u64 * full == fam.len() {
                return Ok(Some(Dictatorship::Col { image, points }));
            }
        }
    }
    Ok(None)
}

/// f₁(σ): the projection of 1_A onto U₁, evaluated at one permutation.
pub fn project_u1(fam: &PermFamily, p: &Permutation) -> Result<Rat> {
    if p.n() != fam.n() {
        return Err(Error::SizeMismatch { left: fam.n(), right: p.n() });
    }
    Ok(coset_matrix(fam)?.f1_at(p))
}

/// (f₁(σ), g(σ), h(σ)) in one matrix pass.
pub fn f_g_h_values(fam: &PermFamily, p: &Permutation) -> Result<(Rat, Rat, Rat)> {
    if p.n() != fam.n() {
        return Err(Error::SizeMismatch { left: fam.n(), right: p.n() });
    }
    let m = coset_matrix(fam)?;
    Ok((m.f1_at(p), m.g_at(p), m.h_at(p)))
}

/// E[(f−f₁)²] = dist(f, U₁)², exact.
pub fn distance_to_u1(fam: &PermFamily) -> Result<Rat> {
    Ok(coset_matrix(fam)?.distance_sq())
}

/// Moments of h and the b-matrix power sums.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpectralSummary {
    /// E[(f−f₁)²] = eps1·c/n.
    pub eps1: Rat,
    /// E[h²] = Σb²/(n−1).
    pub m2: Rat,
    /// E[h³] = n·Σb³/((n−1)(n−2)).
    pub m3: Rat,
    /// Σ_ij b_ij².
    pub sumsq: Rat,
    /// Σ_ij b_ij³.
    pub sumcube: Rat,
}

/// Exact moments of `fam` through its coset matrix; n ≥ 3 because the
/// third-moment identity divides by n−2.
pub fn moments(fam: &PermFamily) -> Result<SpectralSummary> {
    let n = fam.n();
    if n < 3 {
        return Err(Error::SmallN { n, min: 3 });
    }
    let m = coset_matrix(fam)?;
    let sumsq = m.sum_b_sq();
    let sumcube = m.sum_b_cube();
    let m2 = &sumsq / rat_u64(n as u64 - 1);
    let m3 = rat_u64(n as u64) * &sumcube
        / (rat_u64(n as u64 - 1) * rat_u64(n as u64 - 2));
    Ok(SpectralSummary { eps1: m.eps1(), m2, m3, sumsq, sumcube })
}

/// Moments obtained the slow way: sum f₁, g, h pointwise over all of S_n.
/// The independent oracle for everything the matrix route claims.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointwiseMoments {
    /// E[f] = |A|/n!.
    pub mean: Rat,
    /// E[f₁].
    pub f1_mean: Rat,
    /// E[f₁²].
    pub f1_sq: Rat,
    /// E[(f−f₁)²].
    pub dist_sq: Rat,
    /// E[g].
    pub g_mean: Rat,
    /// E[g²].
    pub g2: Rat,
    /// E[g³].
    pub g3: Rat,
    /// E[h].
    pub h_mean: Rat,
    /// E[h²].
    pub h2: Rat,
    /// E[h³].
    pub h3: Rat,
}

#[derive(Clone, Copy, Default)]
struct Sums {
    s: i128,
    f1: i128,
    f1_sq: i128,
    dist: i128,
    g2: i128,
    g3: i128,
    h: i128,
    h2: i128,
    h3: i128,
}

impl Sums {
    fn add(mut self, o: Sums) -> Sums {
        self.s += o.s;
        self.f1 += o.f1;
        self.f1_sq += o.f1_sq;
        self.dist += o.dist;
        self.g2 += o.g2;
        self.g3 += o.g3;
        self.h += o.h;
        self.h2 += o.h2;
        self.h3 += o.h3;
        self
    }
}

/// Sums over all n! permutations; refuses n beyond `cap`.
pub fn pointwise_moments(fam: &PermFamily, cap: usize) -> Result<PointwiseMoments> {
    let n = fam.n();
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    if n < 2 {
        return Err(Error::SmallN { n, min: 2 });
    }
    let m = coset_matrix(fam)?;
    let nf = factorial(n);
    let size = fam.len() as i128;
    let n_i = n as i128;
    let total = (0..nf)
        .into_par_iter()
        .fold(Sums::default, |acc, r| {
            let p = Permutation::unrank(n, r).expect("rank in range");
            let s = m.s_int(&p) as i128;
            let f1 = (n_i - 1) * s - (n_i - 2) * size;
            let f_num = if fam.contains_rank(r) { nf as i128 } else { 0 };
            let g = n_i * s;
            let h = n_i * (s - size);
            acc.add(Sums {
                s,
                f1,
                f1_sq: f1 * f1,
                dist: (f_num - f1) * (f_num - f1),
                g2: g * g,
                g3: g * g * g,
                h,
                h2: h * h,
                h3: h * h * h,
            })
        })
        .reduce(Sums::default, Sums::add);
    let nf_big = BigInt::from(nf);
    let d2 = nf_big.pow(2);
    let d3 = nf_big.pow(3);
    let d4 = nf_big.pow(4);
    let r = |num: i128, den: &BigInt| Rat::new(BigInt::from(num), den.clone());
    Ok(PointwiseMoments {
        mean: Rat::new(BigInt::from(fam.len()), nf_big.clone()),
        f1_mean: r(total.f1, &d2),
        f1_sq: r(total.f1_sq, &d3),
        dist_sq: r(total.dist, &d3),
        g_mean: r(n_i * total.s, &d2),
        g2: r(total.g2, &d3),
        g3: r(total.g3, &d4),
        h_mean: r(total.h, &d2),
        h2: r(total.h2, &d3),
        h3: r(total.h3, &d4),
    })
}
