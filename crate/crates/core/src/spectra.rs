//! Partitions, symmetric-group characters, and the exact spectra of normal
//! Cayley graphs on S_n.
//!
//! A normal Cayley graph (connection set a union of conjugacy classes) has
//! one eigenvalue per irreducible representation: the class-weighted
//! character sum divided by the dimension. Characters come from the
//! Murnaghan–Nakayama recursion on beta numbers; dimensions from hook
//! lengths. The two graphs of interest are the transposition graph and the
//! derangement graph.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::perm::{factorial, PermFamily, Permutation, MAX_N};
use crate::rat::Rat;
use crate::{Error, Result};

/// Isotypic mass computation is O(|A|² · n); beyond this n it is refused.
const MASS_CAP: usize = 8;

/// Integer partition of n: non-increasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("partition parts must be non-increasing".into()));
        }
        Ok(Partition { parts })
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// True iff no part equals 1 (as a cycle type: fixed-point-free).
    pub fn has_no_fixed_point(&self) -> bool {
        *self.parts.last().expect("nonempty") >= 2
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", strs.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All partitions of n in descending lexicographic order, (n) first.
pub fn partitions(n: usize) -> Vec<Partition> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    rec(n, n, &mut prefix, &mut out);
    out
}

/// Dominance order: every prefix sum of `l` weakly exceeds that of `m`.
pub fn dominates(l: &Partition, m: &Partition) -> Result<bool> {
    if l.n() != m.n() {
        return Err(Error::SizeMismatch { left: l.n(), right: m.n() });
    }
    let k = l.len().max(m.len());
    let (mut sl, mut sm) = (0usize, 0usize);
    for i in 0..k {
        sl += l.parts.get(i).copied().unwrap_or(0);
        sm += m.parts.get(i).copied().unwrap_or(0);
        if sl < sm {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the irreducible representation indexed by `l`, by the
/// hook-length formula.
pub fn dimension(l: &Partition) -> u64 {
    let n = l.n();
    let conj = l.conjugate();
    let mut hooks: u128 = 1;
    for (i, &p) in l.parts.iter().enumerate() {
        for j in 0..p {
            let arm = p - j - 1;
            let leg = conj.parts[j] - i - 1;
            hooks *= (arm + leg + 1) as u128;
        }
    }
    let nf = factorial(n) as u128;
    debug_assert!(nf % hooks == 0);
    (nf / hooks) as u64
}

/// Size of the conjugacy class with the given cycle type.
pub fn class_size(mu: &Partition) -> u64 {
    let n = mu.n();
    // n! / prod over cycle lengths k: k^{m_k} * m_k!
    let mut denom: u128 = 1;
    let mut run_len = 0usize;
    let mut prev = 0usize;
    for &p in mu.parts.iter().chain(std::iter::once(&0)) {
        if p == prev {
            run_len += 1;
        } else {
            if prev > 0 {
                for _ in 0..run_len {
                    denom *= prev as u128;
                }
                denom *= (1..=run_len as u128).product::<u128>();
            }
            prev = p;
            run_len = 1;
        }
    }
    let nf = factorial(n) as u128;
    debug_assert!(nf % denom == 0);
    (nf / denom) as u64
}

/// Beta numbers of a partition padded to `rows` parts: strictly decreasing.
fn beta_numbers(l: &Partition, rows: usize) -> Vec<i64> {
    (0..rows)
        .map(|i| l.parts.get(i).copied().unwrap_or(0) as i64 + (rows - 1 - i) as i64)
        .collect()
}

/// Murnaghan–Nakayama over beta numbers: removing a border strip of length
/// k means replacing some beta value b by b−k (if absent), with sign
/// (−1)^{number of beta values jumped over}.
fn mn_recurse(
    beta: &[i64],
    mu: &[usize],
    idx: usize,
    memo: &mut HashMap<(Vec<i64>, usize), i64>,
) -> i64 {
    if idx == mu.len() {
        return 1;
    }
    let key = (beta.to_vec(), idx);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let k = mu[idx] as i64;
    let mut total = 0i64;
    for (pos, &b) in beta.iter().enumerate() {
        let target = b - k;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut next: Vec<i64> = beta.to_vec();
        next[pos] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        total += sign * mn_recurse(&next, mu, idx + 1, memo);
    }
    memo.insert(key, total);
    total
}

/// Character of the irreducible representation `l` at the conjugacy class
/// with cycle type `cycle_type`.
pub fn character(l: &Partition, cycle_type: &Partition) -> Result<i64> {
    if l.n() != cycle_type.n() {
        return Err(Error::SizeMismatch { left: l.n(), right: cycle_type.n() });
    }
    let beta = beta_numbers(l, l.len());
    let mut memo = HashMap::new();
    Ok(mn_recurse(&beta, &cycle_type.parts, 0, &mut memo))
}

/// Full character table of S_n with class sizes and dimensions, rows and
/// columns both in descending lexicographic partition order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    parts: Vec<Partition>,
    class_sizes: Vec<u64>,
    dims: Vec<u64>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::BadN(n));
        }
        let parts = partitions(n);
        let class_sizes: Vec<u64> = parts.iter().map(class_size).collect();
        let dims: Vec<u64> = parts.iter().map(dimension).collect();
        let values: Vec<Vec<i64>> = parts
            .par_iter()
            .map(|l| {
                parts
                    .iter()
                    .map(|mu| character(l, mu).expect("same n"))
                    .collect()
            })
            .collect();
        Ok(CharacterTable { n, parts, class_sizes, dims, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    /// χ of irrep `i` at class `j` (both indices into `parts()`).
    pub fn value(&self, i: usize, j: usize) -> i64 {
        self.values[i][j]
    }
}

/// Which normal Cayley graph on S_n.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    /// Connection set: all transpositions; degree C(n,2).
    Transposition,
    /// Connection set: all fixed-point-free permutations; degree d_n.
    Derangement,
}

impl std::fmt::Display for GraphKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GraphKind::Transposition => write!(f, "transposition"),
            GraphKind::Derangement => write!(f, "derangement"),
        }
    }
}

/// One eigenvalue row of a Cayley-graph spectrum.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumRow {
    pub partition: Partition,
    pub dimension: u64,
    /// Adjacency eigenvalue on the isotypic component of `partition`.
    pub eigenvalue: i64,
    /// Eigenspace dimension: dimension².
    pub multiplicity: u64,
    /// Laplacian eigenvalue: degree − eigenvalue.
    pub mu: i64,
}

/// Exact spectrum of a normal Cayley graph, one row per partition.
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub kind: GraphKind,
    pub n: usize,
    pub degree: u64,
    /// Smallest nonzero Laplacian eigenvalue (None if the spectrum is {0}).
    pub mu2: Option<i64>,
    /// Smallest Laplacian eigenvalue strictly above mu2.
    pub mu_m: Option<i64>,
    pub rows: Vec<SpectrumRow>,
}

impl Serialize for SpectrumReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SpectrumReport", 6)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("degree", &self.degree)?;
        s.serialize_field("mu2", &self.mu2)?;
        s.serialize_field("mu_M", &self.mu_m)?;
        s.serialize_field("rows", &self.rows)?;
        s.end()
    }
}

impl SpectrumReport {
    pub fn row(&self, l: &Partition) -> Option<&SpectrumRow> {
        self.rows.iter().find(|r| &r.partition == l)
    }

    pub fn min_eigenvalue(&self) -> i64 {
        self.rows.iter().map(|r| r.eigenvalue).min().expect("nonempty spectrum")
    }
}

/// Adjacency eigenvalue of the transposition graph on the `l` component:
/// the diagram content sum ½ Σ_j ((l_j − j)(l_j − j + 1) − j(j−1)), 1-based.
pub fn transposition_eigenvalue(l: &Partition) -> i64 {
    let mut twice = 0i64;
    for (i, &p) in l.parts.iter().enumerate() {
        let j = (i + 1) as i64;
        let a = p as i64 - j;
        twice += a * (a + 1) - j * (j - 1);
    }
    debug_assert!(twice % 2 == 0);
    twice / 2
}

/// Exact spectrum of the chosen Cayley graph via class-weighted character
/// sums: λ_α = (Σ_{classes μ ⊆ S} |C_μ| χ_α(μ)) / dim α.
pub fn cayley_spectrum(n: usize, kind: GraphKind) -> Result<SpectrumReport> {
    if n < 2 {
        return Err(Error::SmallN { n, min: 2 });
    }
    let table = CharacterTable::new(n)?;
    let conn: Vec<usize> = (0..table.parts.len())
        .filter(|&j| {
            let mu = &table.parts[j];
            match kind {
                GraphKind::Transposition => {
                    mu.parts[0] == 2 && mu.parts.iter().filter(|&&p| p == 2).count() == 1
                }
                GraphKind::Derangement => mu.has_no_fixed_point(),
            }
        })
        .collect();
    let degree: u64 = conn.iter().map(|&j| table.class_sizes[j]).sum();
    let rows: Vec<SpectrumRow> = (0..table.parts.len())
        .map(|i| {
            let dim = table.dims[i];
            let sum: i128 = conn
                .iter()
                .map(|&j| table.class_sizes[j] as i128 * table.values[i][j] as i128)
                .sum();
            assert!(sum % dim as i128 == 0, "character sum not divisible by dimension");
            let eigenvalue = (sum / dim as i128) as i64;
            SpectrumRow {
                partition: table.parts[i].clone(),
                dimension: dim,
                eigenvalue,
                multiplicity: dim * dim,
                mu: degree as i64 - eigenvalue,
            }
        })
        .collect();
    let mut mus: Vec<i64> = rows.iter().map(|r| r.mu).collect();
    mus.sort_unstable();
    mus.dedup();
    let mu2 = mus.get(1).copied();
    let mu_m = mus.get(2).copied();
    Ok(SpectrumReport { kind, n, degree, mu2, mu_m, rows })
}

/// Largest |λ_α| over partitions α outside {(n), (n−1,1)}, together with
/// the ratio |λ|·n²/degree.
pub fn second_largest_modulus_nontrivial(n: usize, kind: GraphKind) -> Result<(i64, Rat)> {
    if n < 3 {
        return Err(Error::DegenerateSpectrum(format!(
            "no partitions outside the top two at n = {n}"
        )));
    }
    let report = cayley_spectrum(n, kind)?;
    let value = report.rows[2..]
        .iter()
        .map(|r| r.eigenvalue.abs())
        .max()
        .expect("n >= 3 has a third partition");
    let ratio = Rat::new(
        BigInt::from(value) * BigInt::from(n as u64 * n as u64),
        BigInt::from(report.degree),
    );
    Ok((value, ratio))
}

/// Squared norms of the isotypic components of the indicator of `fam`,
/// one per partition: ‖f_α‖² = (dim α / n!²) Σ_{σ,τ ∈ A} χ_α(στ⁻¹).
pub fn isotypic_masses(fam: &PermFamily) -> Result<Vec<(Partition, Rat)>> {
    let n = fam.n();
    if n > MASS_CAP {
        return Err(Error::CapExceeded { n, cap: MASS_CAP });
    }
    let table = CharacterTable::new(n)?;
    let class_idx: HashMap<Vec<usize>, usize> = table
        .parts
        .iter()
        .enumerate()
        .map(|(j, mu)| (mu.parts.clone(), j))
        .collect();
    let perms: Vec<Permutation> = fam.iter_perms().collect();
    let invs: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
    let k = table.parts.len();
    // Count ordered pairs (σ,τ) with στ⁻¹ in each class.
    let counts: Vec<u64> = perms
        .par_iter()
        .map(|s| {
            let mut local = vec![0u64; k];
            for t_inv in &invs {
                let prod = s.compose(t_inv).expect("same n");
                local[class_idx[prod.cycle_type().as_slice()]] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; k],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let nf = BigInt::from(factorial(n));
    let denom = &nf * &nf;
    let masses = (0..k)
        .map(|i| {
            let num: i128 = (0..k)
                .map(|j| counts[j] as i128 * table.values[i][j] as i128)
                .sum();
            let mass = Rat::new(BigInt::from(num) * BigInt::from(table.dims[i]), denom.clone());
            (table.parts[i].clone(), mass)
        })
        .collect();
    Ok(masses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{coset_members, derangement_count, Coset};
    use crate::rat::{rat, rat_u64};
    use num_traits::Zero;

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_enumeration() {
        let p4: Vec<Vec<usize>> = partitions(4).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(
            p4,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(partitions(1), vec![part(&[1])]);
        let counts: Vec<usize> = (1..=9).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30]);
        // Strictly descending lex; lex extends dominance.
        for n in 1..=9 {
            let ps = partitions(n);
            for w in ps.windows(2) {
                assert!(w[0] > w[1]);
            }
            for i in 0..ps.len() {
                for j in 0..ps.len() {
                    if i != j && dominates(&ps[i], &ps[j]).unwrap() {
                        assert!(ps[i] > ps[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn partition_validation_and_conjugate() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(part(&[4, 2, 1]).conjugate(), part(&[3, 2, 1, 1]));
        assert_eq!(part(&[3, 3]).conjugate(), part(&[2, 2, 2]));
        assert_eq!(part(&[5]).conjugate(), part(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn dominance_order() {
        for n in 2..=7 {
            let top = part(&[n - 1, 1]);
            for m in partitions(n) {
                if m.parts() != [n] {
                    assert!(dominates(&top, &m).unwrap());
                }
                assert!(dominates(&m, &m).unwrap());
            }
        }
        assert!(!dominates(&part(&[2, 2]), &part(&[3, 1])).unwrap());
        assert!(dominates(&part(&[3, 1]), &part(&[2, 2])).unwrap());
        assert!(dominates(&part(&[2]), &part(&[3])).is_err());
    }

    #[test]
    fn dimensions_by_hooks() {
        for n in 2..=9 {
            assert_eq!(dimension(&part(&[n])), 1);
            assert_eq!(dimension(&part(&[n - 1, 1])), n as u64 - 1);
            let total: u64 = partitions(n).iter().map(|l| dimension(l) * dimension(l)).sum();
            assert_eq!(total, factorial(n), "sum of dim² at n = {n}");
        }
        assert_eq!(dimension(&part(&[2, 2])), 2);
        assert_eq!(dimension(&part(&[3, 2])), 5);
        assert_eq!(dimension(&part(&[2, 2, 1])), 5);
    }

    #[test]
    fn character_table_s4() {
        // Rows: irreps (4),(3,1),(2,2),(2,1,1),(1^4);
        // columns: classes (4),(3,1),(2,2),(2,1,1),(1^4) in the same order.
        let expected: [[i64; 5]; 5] = [
            [1, 1, 1, 1, 1],
            [-1, 0, -1, 1, 3],
            [0, -1, 2, 0, 2],
            [1, 0, -1, -1, 3],
            [-1, 1, 1, -1, 1],
        ];
        let t = CharacterTable::new(4).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(t.value(i, j), expected[i][j], "entry ({i},{j})");
            }
        }
        assert_eq!(t.class_sizes(), &[6, 8, 3, 6, 1]);
        assert_eq!(character(&part(&[1, 1]), &part(&[2])).unwrap(), -1);
        for mu in partitions(5) {
            assert_eq!(character(&part(&[5]), &mu).unwrap(), 1);
        }
        assert!(character(&part(&[3]), &part(&[4])).is_err());
    }

    #[test]
    fn character_at_identity_is_dimension() {
        for n in 1..=8 {
            let id = part(&vec![1; n]);
            for l in partitions(n) {
                assert_eq!(character(&l, &id).unwrap(), dimension(&l) as i64);
            }
        }
    }

    #[test]
    fn regular_character_vanishes() {
        // Σ_λ dim(λ)·χ_λ(g) = 0 for every non-identity g.
        for n in 2..=7 {
            let t = CharacterTable::new(n).unwrap();
            for j in 0..t.parts().len() {
                if t.parts()[j].parts() == vec![1; n] {
                    continue;
                }
                let sum: i64 = (0..t.parts().len())
                    .map(|i| t.dims()[i] as i64 * t.value(i, j))
                    .sum();
                assert_eq!(sum, 0, "n = {n}, class {}", t.parts()[j]);
            }
        }
    }

    #[test]
    fn row_orthogonality() {
        for n in 2..=7 {
            let t = CharacterTable::new(n).unwrap();
            let k = t.parts().len();
            for a in 0..k {
                for b in a..k {
                    let sum: i128 = (0..k)
                        .map(|j| {
                            t.class_sizes()[j] as i128
                                * t.value(a, j) as i128
                                * t.value(b, j) as i128
                        })
                        .sum();
                    let expect = if a == b { factorial(n) as i128 } else { 0 };
                    assert_eq!(sum, expect, "n = {n}, rows {a},{b}");
                }
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 1..=9 {
            let total: u64 = partitions(n).iter().map(class_size).sum();
            assert_eq!(total, factorial(n));
        }
        assert_eq!(class_size(&part(&[2, 1, 1])), 6);
        assert_eq!(class_size(&part(&[3, 3])), 40);
    }

    #[test]
    fn content_formula_examples() {
        assert_eq!(transposition_eigenvalue(&part(&[4])), 6);
        assert_eq!(transposition_eigenvalue(&part(&[3, 1])), 2);
        assert_eq!(transposition_eigenvalue(&part(&[2, 2])), 0);
        for n in 2..=9 {
            let n_i = n as i64;
            let binom = n_i * (n_i - 1) / 2;
            assert_eq!(transposition_eigenvalue(&part(&[n])), binom);
            assert_eq!(transposition_eigenvalue(&part(&[n - 1, 1])), binom - n_i);
            if n >= 4 {
                assert_eq!(
                    transposition_eigenvalue(&part(&[n - 2, 2])),
                    binom - 2 * n_i + 2
                );
            }
        }
    }

    #[test]
    fn content_formula_matches_characters() {
        // dim·λ = C(n,2)·χ(transposition) for every partition.
        for n in 2..=8 {
            let mut tclass = vec![1usize; n - 1];
            tclass[0] = 2;
            let tclass = part(&tclass);
            let binom = (n * (n - 1) / 2) as i128;
            for l in partitions(n) {
                let lhs = dimension(&l) as i128 * transposition_eigenvalue(&l) as i128;
                let rhs = binom * character(&l, &tclass).unwrap() as i128;
                assert_eq!(lhs, rhs, "n = {n}, {l}");
            }
        }
    }

    #[test]
    fn dominance_strictly_orders_eigenvalues() {
        for n in 2..=9 {
            let ps = partitions(n);
            for a in &ps {
                for b in &ps {
                    if a != b && dominates(a, b).unwrap() {
                        assert!(
                            transposition_eigenvalue(a) > transposition_eigenvalue(b),
                            "n = {n}: {a} vs {b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn transposition_spectrum() {
        for n in 2..=9 {
            let rep = cayley_spectrum(n, GraphKind::Transposition).unwrap();
            assert_eq!(rep.degree, (n * (n - 1) / 2) as u64);
            assert_eq!(rep.rows[0].eigenvalue, rep.degree as i64);
            assert_eq!(rep.rows[0].mu, 0);
            assert_eq!(rep.mu2, Some(n as i64), "mu2 at n = {n}");
            if n >= 4 {
                assert_eq!(rep.mu_m, Some(2 * n as i64 - 2), "mu_M at n = {n}");
                // The mu2-eigenspace is exactly the (n−1,1) component.
                for r in &rep.rows {
                    assert_eq!(
                        r.mu == n as i64,
                        r.partition == part(&[n - 1, 1]),
                        "n = {n}, {}", r.partition
                    );
                }
            }
            // Every row agrees with the content formula.
            for r in &rep.rows {
                assert_eq!(r.eigenvalue, transposition_eigenvalue(&r.partition));
            }
            spectrum_traces(&rep);
        }
        assert_eq!(cayley_spectrum(3, GraphKind::Transposition).unwrap().mu_m, Some(6));
    }

    /// Σ mult = n!, Σ mult·λ = 0, Σ mult·λ² = n!·degree.
    fn spectrum_traces(rep: &SpectrumReport) {
        let total: u64 = rep.rows.iter().map(|r| r.multiplicity).sum();
        assert_eq!(total, factorial(rep.n));
        let trace: i128 = rep.rows.iter().map(|r| r.multiplicity as i128 * r.eigenvalue as i128).sum();
        assert_eq!(trace, 0);
        let sq: i128 = rep
            .rows
            .iter()
            .map(|r| r.multiplicity as i128 * (r.eigenvalue as i128).pow(2))
            .sum();
        assert_eq!(sq, factorial(rep.n) as i128 * rep.degree as i128);
    }

    #[test]
    fn derangement_spectrum_small() {
        let rep = cayley_spectrum(4, GraphKind::Derangement).unwrap();
        assert_eq!(rep.degree, 9);
        let vals: Vec<i64> = rep.rows.iter().map(|r| r.eigenvalue).collect();
        assert_eq!(vals, vec![9, -3, 3, 1, -3]);
        assert_eq!(rep.mu2, Some(6));
        assert_eq!(rep.mu_m, Some(8));
        spectrum_traces(&rep);

        let rep = cayley_spectrum(5, GraphKind::Derangement).unwrap();
        assert_eq!(rep.degree, 44);
        let vals: Vec<i64> = rep.rows.iter().map(|r| r.eigenvalue).collect();
        assert_eq!(vals, vec![44, -11, 4, 4, -4, -1, 4]);
        spectrum_traces(&rep);
    }

    #[test]
    fn derangement_extremes() {
        for n in 4..=8 {
            let rep = cayley_spectrum(n, GraphKind::Derangement).unwrap();
            let d = derangement_count(n);
            assert_eq!(rep.degree, d);
            assert_eq!(rep.rows[0].eigenvalue, d as i64);
            // Minimum eigenvalue −d_n/(n−1), attained on the (n−1,1) row.
            let min = rep.min_eigenvalue();
            assert_eq!(min, -((d / (n as u64 - 1)) as i64));
            assert_eq!(rep.rows[1].partition, part(&[n - 1, 1]));
            assert_eq!(rep.rows[1].eigenvalue, min);
            // Sign representation: D_even − D_odd = (−1)^{n−1}(n−1).
            let sign_row = rep.rows.last().unwrap();
            assert_eq!(sign_row.partition, part(&vec![1; n]));
            let expect = if n % 2 == 0 { -((n as i64) - 1) } else { n as i64 - 1 };
            assert_eq!(sign_row.eigenvalue, expect);
            spectrum_traces(&rep);
        }
    }

    #[test]
    fn second_largest_modulus() {
        let (v4, r4) = second_largest_modulus_nontrivial(4, GraphKind::Derangement).unwrap();
        assert_eq!(v4, 3);
        assert_eq!(r4, rat(3 * 16, 9));
        let (v5, _) = second_largest_modulus_nontrivial(5, GraphKind::Derangement).unwrap();
        assert_eq!(v5, 4);
        // |λ_min| = d_n/(n−1): tied at n = 4, strictly above for n = 5..7.
        assert_eq!(v4 as u64, derangement_count(4) / 3);
        for n in 5..=7 {
            let (v, _) = second_largest_modulus_nontrivial(n, GraphKind::Derangement).unwrap();
            assert!((v as u64) < derangement_count(n) / (n as u64 - 1), "n = {n}");
        }
        assert!(second_largest_modulus_nontrivial(2, GraphKind::Derangement).is_err());
    }

    #[test]
    fn small_n_spectra() {
        let rep = cayley_spectrum(2, GraphKind::Transposition).unwrap();
        assert_eq!(rep.degree, 1);
        assert_eq!(rep.mu2, Some(2));
        assert_eq!(rep.mu_m, None);
        let rep = cayley_spectrum(3, GraphKind::Derangement).unwrap();
        assert_eq!(rep.degree, 2);
        assert!(cayley_spectrum(1, GraphKind::Transposition).is_err());
    }

    #[test]
    fn masses_of_a_single_coset() {
        // The indicator of one 1-coset lies in U₁: all mass on (n), (n−1,1).
        for n in 3..=5 {
            let fam = coset_members(n, Coset::new(1, 1)).unwrap();
            let masses = isotypic_masses(&fam).unwrap();
            let nf = rat_u64(factorial(n));
            assert_eq!(masses[0].1, rat(1, (n * n) as i64));
            assert_eq!(masses[1].1, rat(1, n as i64) - rat(1, (n * n) as i64));
            for (l, m) in &masses[2..] {
                assert!(m.is_zero(), "n = {n}, {l}");
            }
            let total = masses.iter().fold(Rat::zero(), |acc, (_, m)| acc + m);
            assert_eq!(total, rat_u64(fam.len()) / nf);
        }
    }

    #[test]
    fn masses_of_singleton_and_empty() {
        let mut fam = PermFamily::empty(4).unwrap();
        fam.insert(&Permutation::identity(4)).unwrap();
        let masses = isotypic_masses(&fam).unwrap();
        for (l, m) in &masses {
            let d = dimension(l);
            assert_eq!(*m, rat((d * d) as i64, (24 * 24) as i64), "{l}");
        }
        let empty = PermFamily::empty(4).unwrap();
        for (_, m) in isotypic_masses(&empty).unwrap() {
            assert!(m.is_zero());
        }
        assert!(isotypic_masses(&PermFamily::empty(9).unwrap()).is_err());
    }

    #[test]
    fn report_serialization_shape() {
        let rep = cayley_spectrum(3, GraphKind::Transposition).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.starts_with("{\"kind\":\"transposition\",\"n\":3,\"degree\":3"));
        assert!(json.contains("\"mu_M\":6"));
        assert!(json.contains("\"partition\":\"(2,1)\""));
    }
}
