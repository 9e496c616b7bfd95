//! Permutations of {1..n}, lexicographic ranking, 1-cosets, derangements,
//! and dense rank-indexed families with text I/O.

use std::io::{BufRead, Write};

use crate::{Error, Result};

/// Hard storage cap: families hold one bit per rank, and 12! fits in 60 MB.
pub const MAX_N: usize = 12;

/// n! as a u64 (supported for n <= 20).
pub fn factorial(n: usize) -> u64 {
    assert!(n <= 20, "factorial overflow");
    (1..=n as u64).product()
}

/// Number of fixed-point-free permutations of [n], by inclusion-exclusion.
pub fn derangement_count(n: usize) -> u64 {
    assert!(n <= 20, "derangement count overflow");
    let mut sum: i128 = 0;
    let mut binom: i128 = 1; // C(n, i)
    for i in 0..=n {
        let term = binom * factorial(n - i) as i128;
        sum += if i % 2 == 0 { term } else { -term };
        binom = binom * (n as i128 - i as i128) / (i as i128 + 1);
    }
    sum as u64
}

/// A permutation of {1..n} in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its images (1-based values).
    pub fn from_images(images: &[u8]) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_N {
            return Err(Error::BadN(n));
        }
        let mut seen = [false; MAX_N + 1];
        for &v in images {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotBijection);
            }
            seen[v] = true;
        }
        Ok(Permutation { images: images.to_vec() })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_N);
        Permutation { images: (1..=n as u8).collect() }
    }

    /// The transposition swapping points i and j.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i != j && i >= 1 && j >= 1 && i <= n && j <= n);
        let mut p = Permutation::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// sigma(i), 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Permutation { images: inv }
    }

    /// (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch { left: self.n(), right: other.n() });
        }
        let images = other.images.iter().map(|&v| self.images[v as usize - 1]).collect();
        Ok(Permutation { images })
    }

    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize != i + 1)
    }

    /// Cycle type as a partition (non-increasing part lengths).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.images[cur] as usize - 1;
                len += 1;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i64 {
        let cycles = self.cycle_type().len();
        if (self.n() - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Lexicographic rank in 0..n!-1 via the factorial number system.
    pub fn rank(&self) -> u64 {
        let n = self.n();
        let mut r: u64 = 0;
        for i in 0..n {
            let smaller_later = self.images[i + 1..]
                .iter()
                .filter(|&&v| v < self.images[i])
                .count() as u64;
            r += smaller_later * factorial(n - 1 - i);
        }
        r
    }

    /// The rank-r permutation in lexicographic order.
    pub fn unrank(n: usize, r: u64) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::BadN(n));
        }
        if r >= factorial(n) {
            return Err(Error::RankOutOfRange { n, rank: r });
        }
        let mut avail: Vec<u8> = (1..=n as u8).collect();
        let mut images = Vec::with_capacity(n);
        let mut r = r;
        for i in 0..n {
            let f = factorial(n - 1 - i);
            let idx = (r / f) as usize;
            r %= f;
            images.push(avail.remove(idx));
        }
        Ok(Permutation { images })
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let strs: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

/// The 1-coset T_ij = {sigma : sigma(i) = j}; i, j are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Coset {
    pub point: usize,
    pub image: usize,
}

impl Coset {
    pub fn new(point: usize, image: usize) -> Self {
        Coset { point, image }
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.image(self.point) == self.image
    }
}

impl std::fmt::Display for Coset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "T({},{})", self.point, self.image)
    }
}

/// A subset of S_n stored as a bitset over lexicographic ranks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PermFamily {
    n: usize,
    words: Vec<u64>,
    len: u64,
}

impl PermFamily {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::BadN(n));
        }
        let bits = factorial(n);
        let words = vec![0u64; bits.div_ceil(64) as usize];
        Ok(PermFamily { n, words, len: 0 })
    }

    pub fn full(n: usize) -> Result<Self> {
        let mut f = PermFamily::empty(n)?;
        let bits = factorial(n);
        for w in 0..f.words.len() {
            f.words[w] = !0u64;
        }
        // Clear the bits past n!-1 in the last word.
        let extra = (64 - (bits % 64)) % 64;
        if extra > 0 {
            let last = f.words.len() - 1;
            f.words[last] >>= extra;
        }
        f.len = bits;
        Ok(f)
    }

    pub fn from_perms<'a, I: IntoIterator<Item = &'a Permutation>>(n: usize, perms: I) -> Result<Self> {
        let mut f = PermFamily::empty(n)?;
        for p in perms {
            if p.n() != n {
                return Err(Error::SizeMismatch { left: n, right: p.n() });
            }
            f.insert_rank(p.rank());
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains_rank(&self, r: u64) -> bool {
        let (w, b) = ((r / 64) as usize, r % 64);
        self.words[w] >> b & 1 == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.n() == self.n && self.contains_rank(p.rank())
    }

    /// Returns true if the rank was newly inserted.
    pub fn insert_rank(&mut self, r: u64) -> bool {
        let (w, b) = ((r / 64) as usize, r % 64);
        let mask = 1u64 << b;
        if self.words[w] & mask == 0 {
            self.words[w] |= mask;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Returns true if the rank was present.
    pub fn remove_rank(&mut self, r: u64) -> bool {
        let (w, b) = ((r / 64) as usize, r % 64);
        let mask = 1u64 << b;
        if self.words[w] & mask != 0 {
            self.words[w] &= !mask;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn insert(&mut self, p: &Permutation) -> Result<bool> {
        if p.n() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: p.n() });
        }
        Ok(self.insert_rank(p.rank()))
    }

    /// Ranks of the members, ascending.
    pub fn iter_ranks(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as u64;
                word &= word - 1;
                Some(w as u64 * 64 + b)
            })
        })
    }

    /// Members in ascending rank (= lexicographic) order.
    pub fn iter_perms(&self) -> impl Iterator<Item = Permutation> + '_ {
        self.iter_ranks().map(move |r| Permutation::unrank(self.n, r).expect("stored rank valid"))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let words: Vec<u64> =
            self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Ok(PermFamily::from_words(self.n, words))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let words: Vec<u64> =
            self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Ok(PermFamily::from_words(self.n, words))
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let words: Vec<u64> =
            self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        Ok(PermFamily::from_words(self.n, words))
    }

    pub fn complement(&self) -> Self {
        let full = PermFamily::full(self.n).expect("n validated at construction");
        full.difference(self).expect("same n")
    }

    pub fn intersection_size(&self, other: &Self) -> Result<u64> {
        self.check_same(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum())
    }

    pub fn symmetric_difference_size(&self, other: &Self) -> Result<u64> {
        let inter = self.intersection_size(other)?;
        Ok(self.len + other.len - 2 * inter)
    }

    fn from_words(n: usize, words: Vec<u64>) -> Self {
        let len = words.iter().map(|w| w.count_ones() as u64).sum();
        PermFamily { n, words, len }
    }
}

/// All (n-1)! members of a 1-coset.
pub fn coset_members(n: usize, t: Coset) -> Result<PermFamily> {
    if n == 0 || n > MAX_N {
        return Err(Error::BadN(n));
    }
    if t.point < 1 || t.point > n || t.image < 1 || t.image > n {
        return Err(Error::Invalid(format!("coset ({},{}) out of range for n={n}", t.point, t.image)));
    }
    let mut fam = PermFamily::empty(n)?;
    let positions: Vec<usize> = (1..=n).filter(|&i| i != t.point).collect();
    let values: Vec<u8> = (1..=n as u8).filter(|&v| v as usize != t.image).collect();
    let mut images = vec![0u8; n];
    images[t.point - 1] = t.image as u8;
    for r in 0..factorial(n - 1) {
        let small = Permutation::unrank(n - 1, r).expect("rank in range");
        for (k, &pos) in positions.iter().enumerate() {
            images[pos - 1] = values[small.images[k] as usize - 1];
        }
        fam.insert_rank(Permutation { images: images.clone() }.rank());
    }
    Ok(fam)
}

/// True iff p and q disagree at every point (they are adjacent in the
/// derangement graph).
pub fn is_derangement_pair(p: &Permutation, q: &Permutation) -> Result<bool> {
    if p.n() != q.n() {
        return Err(Error::SizeMismatch { left: p.n(), right: q.n() });
    }
    Ok(p.images.iter().zip(&q.images).all(|(a, b)| a != b))
}

/// Reads a family: one permutation per line, space-separated images of 1..n,
/// `#` starts a comment, blank lines ignored, n fixed by the first data line.
pub fn read_family<R: BufRead>(reader: R, path: &str) -> Result<PermFamily> {
    let mut fam: Option<PermFamily> = None;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let data = match line.split('#').next() {
            Some(d) => d.trim(),
            None => "",
        };
        if data.is_empty() {
            continue;
        }
        let mut images = Vec::new();
        for tok in data.split_whitespace() {
            let v: u8 = tok.parse().map_err(|_| Error::ParseLine {
                path: path.to_string(),
                line: lineno,
                msg: format!("bad image `{tok}`"),
            })?;
            images.push(v);
        }
        let p = Permutation::from_images(&images).map_err(|e| Error::ParseLine {
            path: path.to_string(),
            line: lineno,
            msg: e.to_string(),
        })?;
        let fam = match &mut fam {
            Some(f) => f,
            None => fam.insert(PermFamily::empty(p.n())?),
        };
        if p.n() != fam.n() {
            return Err(Error::ParseLine {
                path: path.to_string(),
                line: lineno,
                msg: format!("expected {} images, got {}", fam.n(), p.n()),
            });
        }
        fam.insert_rank(p.rank());
    }
    fam.ok_or_else(|| Error::ParseLine {
        path: path.to_string(),
        line: 0,
        msg: "no permutations in file".to_string(),
    })
}

/// Writes a family in the text format, members in lexicographic order.
pub fn write_family<W: Write>(fam: &PermFamily, mut writer: W) -> Result<()> {
    for p in fam.iter_perms() {
        writeln!(writer, "{p}")?;
    }
    Ok(())
}
