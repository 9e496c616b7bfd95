//! Recovering a disjoint union of 1-cosets from a family's coset matrix.

use crate::coset::{coset_matrix, CosetMatrix};
use crate::perm::{coset_members, factorial, Coset, PermFamily};
use crate::rat::{fmt_rat, le_plus_sqrt, rat_int, rat_u64, QuadExt, Rat};
use crate::{Error, Result};
use num_traits::Signed;

/// Constant used for the expectation bound baked into `Reconstruction::bound_ok`.
const BOUND_CONSTANT: i64 = 100;

/// Result of rounding a family to its nearest disjoint union of 1-cosets.
#[derive(Clone, Debug, PartialEq)]
pub struct Reconstruction {
    /// Selected cosets, in decreasing order of their matrix entry.
    pub cosets: Vec<Coset>,
    /// Number of matrix entries at least 1/2.
    pub m_half: usize,
    /// Normalized family size |A|/(n-1)!.
    pub c: Rat,
    /// Nearest integer to `c`, half rounded up.
    pub round_c: u64,
    /// |A triangle C| where C is the union of the selected cosets.
    pub symdiff: u64,
    /// Whether E[(f - f~)^2] <= 100 c^2 (sqrt(eps1) + 1/n) / n holds.
    pub bound_ok: bool,
}

/// All n^2 cells as (scaled entry, row, column), entry descending, ties by (row, column).
fn ranked_cells(m: &CosetMatrix) -> Vec<(i64, usize, usize)> {
    let n = m.n();
    let mut cells = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            cells.push((m.b_int(i, j), i, j));
        }
    }
    cells.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| (x.1, x.2).cmp(&(y.1, y.2))));
    cells
}

fn reconstruct_with_matrix(fam: &PermFamily) -> Result<(Reconstruction, CosetMatrix)> {
    let n = fam.n();
    if n < 3 {
        return Err(Error::SmallN { n, min: 3 });
    }
    let size = fam.len();
    if size == 0 {
        return Err(Error::EmptyFamily);
    }
    let nf = factorial(n);
    let cosf = factorial(n - 1);
    if 2 * size > nf {
        let c = rat_u64(size) / rat_u64(cosf);
        return Err(Error::CTooLarge { c: fmt_rat(&c) });
    }
    // floor(c + 1/2) in exact integers
    let round_c = (2 * size + cosf) / (2 * cosf);
    if round_c == 0 {
        return Err(Error::RoundCZero);
    }

    let m = coset_matrix(fam)?;
    let cells = ranked_cells(&m);
    // entry >= 1/2 in units of n!
    let m_half = cells
        .iter()
        .filter(|&&(b, _, _)| 2 * b >= nf as i64)
        .count();

    let cosets: Vec<Coset> = cells[..round_c as usize]
        .iter()
        .map(|&(_, i, j)| Coset::new(i, j))
        .collect();
    let mut cover = PermFamily::empty(n)?;
    for t in &cosets {
        cover = cover.union(&coset_members(n, *t)?)?;
    }
    let symdiff = fam.symmetric_difference_size(&cover)?;

    let nn = rat_int(n as i64);
    let c = m.c();
    let csq = &c * &c;
    let scale = rat_int(BOUND_CONSTANT) * &csq;
    let lhs = rat_u64(symdiff) / rat_u64(nf);
    let bound_ok = le_plus_sqrt(&lhs, &(&scale / (&nn * &nn)), &(&scale / &nn), &m.eps1());

    let rec = Reconstruction {
        cosets,
        m_half,
        c,
        round_c,
        symdiff,
        bound_ok,
    };
    Ok((rec, m))
}

/// Rounds `fam` to the union of its `round(c)` heaviest 1-cosets.
///
/// Requires n >= 3, a nonempty family, and c <= n/2; `round(c) = 0` is
/// rejected as too small to reconstruct.
pub fn reconstruct(fam: &PermFamily) -> Result<Reconstruction> {
    Ok(reconstruct_with_matrix(fam)?.0)
}

/// Exact sum of squared matrix entries for a disjoint union of `c` 1-cosets.
pub fn closed_form_f(n: usize, c: &Rat) -> Rat {
    assert!(n >= 3, "closed forms need n >= 3");
    let nn = rat_int(n as i64);
    c * (&nn - c) / (nn - rat_int(1))
}

/// Exact sum of cubed matrix entries for a disjoint union of `c` 1-cosets.
pub fn closed_form_g(n: usize, c: &Rat) -> Rat {
    assert!(n >= 3, "closed forms need n >= 3");
    let nn = rat_int(n as i64);
    let nm1sq = (&nn - rat_int(1)) * (&nn - rat_int(1));
    let nm2 = &nn - rat_int(2);
    let csq = c * c;
    c * (rat_int(1) - nm1sq.recip())
        - rat_int(3) * &csq * &nm2 / &nm1sq
        + rat_int(2) * &csq * c * nm2 / (nn * nm1sq)
}

/// One certificate inequality with both sides kept exact.
#[derive(Clone, Debug, PartialEq)]
pub struct CertLine {
    /// Left side, a rational.
    pub lhs: Rat,
    /// Right side, rational plus a multiple of sqrt(eps1).
    pub rhs: QuadExt,
    /// Whether lhs <= rhs, decided exactly.
    pub ok: bool,
}

/// Certificate for a reconstruction: each inequality reported, none enforced.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifyReport {
    /// Normalized family size.
    pub c: Rat,
    /// Exact distance ratio eps1.
    pub eps1: Rat,
    /// Whether the squared distance is at most eps0 * c / n.
    pub within_regime: bool,
    /// E[(f - f~)^2] against c0 c^2 (sqrt(eps1) + 1/n) / n.
    pub expbound: CertLine,
    /// |c - round(c)| against c0 c^2 (sqrt(eps1) + 1/n).
    pub roundc: CertLine,
    /// Sum of x^2 (1 - x) over all entries against c0 c^2 (sqrt(eps1) + 1/n).
    pub skewness: CertLine,
    /// The reconstruction the certificate refers to.
    pub reconstruction: Reconstruction,
}

fn cert_line(lhs: Rat, base: Rat, coeff: Rat, rad: &Rat) -> CertLine {
    let rhs = QuadExt::new(base, coeff, rad.clone());
    let ok = rhs.ge_rat(&lhs);
    CertLine { lhs, rhs, ok }
}

/// Reconstructs `fam` and evaluates every certificate inequality with
/// constant `c0` and regime threshold `eps0`. Violations are reported in
/// the result, never raised as errors.
pub fn certify(fam: &PermFamily, c0: &Rat, eps0: &Rat) -> Result<CertifyReport> {
    let (rec, m) = reconstruct_with_matrix(fam)?;
    let n = fam.n();
    let nn = rat_int(n as i64);
    let c = m.c();
    let eps1 = m.eps1();
    let within_regime = m.distance_sq() <= eps0 * &c / &nn;

    let scale = c0 * &c * &c;
    let expbound = cert_line(
        rat_u64(rec.symdiff) / rat_u64(factorial(n)),
        &scale / (&nn * &nn),
        &scale / &nn,
        &eps1,
    );
    let roundc = cert_line(
        (&c - rat_u64(rec.round_c)).abs(),
        &scale / &nn,
        scale.clone(),
        &eps1,
    );
    let skewness = cert_line(
        m.sum_b_sq() - m.sum_b_cube(),
        &scale / &nn,
        scale,
        &eps1,
    );

    Ok(CertifyReport {
        c,
        eps1,
        within_regime,
        expbound,
        roundc,
        skewness,
        reconstruction: rec,
    })
}
