//! Integer partitions and `I`-colored multipartitions.
//!
//! A [`Partition`] is stored as a weakly decreasing list of positive parts and
//! every constructor normalizes, so two equal partitions always have the same
//! representation and can be used directly as basis keys. A
//! [`MultiPartition`] holds one partition per color; colors are the 1-based
//! integers `1..=|I|`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Default upper bound on `n` for [`partitions_of`].
pub const PARTITION_BOUND: u32 = 30;

/// An integer partition, parts weakly decreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are dropped.
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-part partition `(k)`; empty when `k == 0`.
    pub fn single(k: u32) -> Self {
        Partition::new([k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|λ|`
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `ℓ(λ)`
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// `m_k(λ)`, the number of parts equal to `k`.
    pub fn multiplicity(&self, k: u32) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }

    /// Pairs `(k, m_k(λ))` for each distinct part, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((k, m)) if *k == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `λ ⊕ k`: adds one part `k` (no-op for `k == 0`).
    pub fn add_part(&self, k: u32) -> Partition {
        if k == 0 {
            return self.clone();
        }
        let mut parts = self.0.clone();
        let pos = parts.partition_point(|&p| p >= k);
        parts.insert(pos, k);
        Partition(parts)
    }

    /// `μ ⊕ λ`: multiset union of parts.
    pub fn oplus(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x >= y {
                        parts.push(x);
                        a.next();
                    } else {
                        parts.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    parts.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    parts.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Partition(parts)
    }

    /// `μ ⊖ k`: removes one part equal to `k`.
    ///
    /// When `μ` has no part `k` the result is the empty partition. Nothing in
    /// this crate relies on that branch.
    pub fn ominus(&self, k: u32) -> Partition {
        match self.0.iter().position(|&p| p == k) {
            Some(pos) => {
                let mut parts = self.0.clone();
                parts.remove(pos);
                Partition(parts)
            }
            None => Partition::empty(),
        }
    }

    /// `z_λ = ∏ i^{m_i} m_i!`, the order of the centralizer of a permutation
    /// of cycle type `λ`.
    pub fn z(&self) -> BigUint {
        let mut z = BigUint::one();
        for (k, m) in self.multiplicities() {
            for j in 1..=m {
                z *= BigUint::from(k) * BigUint::from(j);
            }
        }
        z
    }

    /// `|λ| - ℓ(λ)`; the sign of `ω(p_λ)` is `(-1)` to this power.
    pub fn size_minus_len(&self) -> u32 {
        self.size() - self.len() as u32
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (idx, p) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Malformed(format!("partition must be bracketed: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Malformed(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition::new(parts))
    }
}

/// All partitions of `n` in reverse lexicographic order, `n ≤ PARTITION_BOUND`.
pub fn partitions_of(n: u32) -> Result<Vec<Partition>> {
    partitions_of_bounded(n, PARTITION_BOUND)
}

/// [`partitions_of`] with an explicit bound on `n`.
pub fn partitions_of_bounded(n: u32, bound: u32) -> Result<Vec<Partition>> {
    if n > bound {
        return Err(Error::SizeLimit {
            what: "partition size",
            value: n as usize,
            bound: bound as usize,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill(rest: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=max_part.min(rest)).rev() {
        current.push(part);
        fill(rest - part, part, current, out);
        current.pop();
    }
}

/// An `I`-colored partition: one [`Partition`] per color `1..=|I|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPartition(Vec<Partition>);

impl MultiPartition {
    /// The empty multipartition over `colors` colors; labels the unit.
    pub fn empty(colors: usize) -> Self {
        MultiPartition(vec![Partition::empty(); colors])
    }

    pub fn from_components(components: Vec<Partition>) -> Self {
        MultiPartition(components)
    }

    /// The single part `(k)` in color `color` (1-based).
    pub fn single(colors: usize, k: u32, color: usize) -> Result<Self> {
        MultiPartition::empty(colors).add_part(k, color)
    }

    /// `𝛌` with only color `color` populated by `λ`.
    pub fn colored(colors: usize, lambda: Partition, color: usize) -> Result<Self> {
        check_color(color, colors)?;
        let mut out = MultiPartition::empty(colors);
        out.0[color - 1] = lambda;
        Ok(out)
    }

    pub fn colors(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    /// The partition of color `color` (1-based).
    pub fn component(&self, color: usize) -> &Partition {
        &self.0[color - 1]
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Partition::is_empty)
    }

    /// `|𝛌|`
    pub fn size(&self) -> u32 {
        self.0.iter().map(Partition::size).sum()
    }

    /// `ℓ(𝛌)`
    pub fn len(&self) -> usize {
        self.0.iter().map(Partition::len).sum()
    }

    /// `𝛌 ⊕ 𝛍`, colorwise union. Panics if the color counts differ.
    pub fn oplus(&self, other: &MultiPartition) -> MultiPartition {
        assert_eq!(self.colors(), other.colors(), "color count mismatch in ⊕");
        MultiPartition(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.oplus(b))
                .collect(),
        )
    }

    /// `𝛌 ⊕ (a)^j`
    pub fn add_part(&self, a: u32, color: usize) -> Result<MultiPartition> {
        check_color(color, self.colors())?;
        let mut out = self.clone();
        out.0[color - 1] = out.0[color - 1].add_part(a);
        Ok(out)
    }

    /// The underline sequence: every part as `(part, color)`, sorted
    /// lexicographically.
    pub fn underline(&self) -> Vec<(u32, usize)> {
        let mut seq: Vec<(u32, usize)> = self
            .0
            .iter()
            .enumerate()
            .flat_map(|(idx, lambda)| lambda.parts().iter().map(move |&p| (p, idx + 1)))
            .collect();
        seq.sort_unstable();
        seq
    }

    /// `|𝛌| - ℓ(𝛌)`
    pub fn size_minus_len(&self) -> u32 {
        self.size() - self.len() as u32
    }
}

/// Orders by total size first, then colorwise lexicographically.
impl Ord for MultiPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, lambda) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(";")?;
            }
            write!(f, "{lambda}")?;
        }
        Ok(())
    }
}

impl FromStr for MultiPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let components = s
            .split(';')
            .map(str::parse)
            .collect::<Result<Vec<Partition>>>()?;
        Ok(MultiPartition(components))
    }
}

pub(crate) fn check_color(color: usize, colors: usize) -> Result<()> {
    if color == 0 || color > colors {
        Err(Error::ColorOutOfRange { color, colors })
    } else {
        Ok(())
    }
}

/// Every multipartition of total size `n` over `colors` colors.
pub fn multipartitions_of(n: u32, colors: usize) -> Result<Vec<MultiPartition>> {
    let by_size: Vec<Vec<Partition>> = (0..=n).map(partitions_of).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(colors);
    spread(n, colors, &by_size, &mut current, &mut out);
    Ok(out)
}

/// Every multipartition of size at most `n`.
pub fn multipartitions_up_to(n: u32, colors: usize) -> Result<Vec<MultiPartition>> {
    let mut out = Vec::new();
    for d in 0..=n {
        out.extend(multipartitions_of(d, colors)?);
    }
    Ok(out)
}

fn spread(
    rest: u32,
    colors: usize,
    by_size: &[Vec<Partition>],
    current: &mut Vec<Partition>,
    out: &mut Vec<MultiPartition>,
) {
    if current.len() + 1 == colors {
        for lambda in &by_size[rest as usize] {
            current.push(lambda.clone());
            out.push(MultiPartition(current.clone()));
            current.pop();
        }
        return;
    }
    if colors == 0 {
        if rest == 0 {
            out.push(MultiPartition(Vec::new()));
        }
        return;
    }
    for size in (0..=rest).rev() {
        for lambda in &by_size[size as usize] {
            current.push(lambda.clone());
            spread(rest - size, colors, by_size, current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.iter().copied())
    }

    /// Centralizer order by brute force: count permutations in `S_n`
    /// commuting with a fixed permutation of cycle type `λ`.
    fn centralizer_order(lambda: &Partition) -> u64 {
        let n = lambda.size() as usize;
        let mut sigma = vec![0usize; n];
        let mut start = 0;
        for &part in lambda.parts() {
            let part = part as usize;
            for k in 0..part {
                sigma[start + k] = start + (k + 1) % part;
            }
            start += part;
        }
        let mut count = 0;
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if (0..n).all(|x| perm[sigma[x]] == sigma[perm[x]]) {
                count += 1;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        count
    }

    fn next_permutation(v: &mut [usize]) -> bool {
        if v.len() < 2 {
            return false;
        }
        let mut i = v.len() - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = v.len() - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn z_examples() {
        assert_eq!(p(&[]).z(), BigUint::from(1u32));
        assert_eq!(p(&[2, 1, 1]).z(), BigUint::from(4u32));
        assert_eq!(p(&[3, 3]).z(), BigUint::from(18u32));
    }

    #[test]
    fn z_matches_centralizer_enumeration() {
        assert_eq!(centralizer_order(&p(&[2, 1, 1])), 4);
        assert_eq!(centralizer_order(&p(&[3, 3])), 18);
        for n in 0..=6 {
            for lambda in partitions_of(n).unwrap() {
                assert_eq!(
                    lambda.z(),
                    BigUint::from(centralizer_order(&lambda)),
                    "z mismatch for {lambda}"
                );
            }
        }
    }

    #[test]
    fn oplus_examples() {
        assert_eq!(p(&[2, 1]).oplus(&p(&[2])), p(&[2, 2, 1]));
        assert_eq!(p(&[4, 2]).oplus(&p(&[])), p(&[4, 2]));
        assert_eq!(p(&[3]).oplus(&p(&[3, 1])), p(&[3, 3, 1]));
        assert_eq!(p(&[3, 1]).add_part(0), p(&[3, 1]));
    }

    #[test]
    fn ominus_examples() {
        assert_eq!(p(&[2, 2, 1]).ominus(2), p(&[2, 1]));
        assert_eq!(p(&[2, 1]).ominus(3), p(&[]));
        assert_eq!(p(&[]).ominus(1), p(&[]));
        assert_eq!(p(&[5]).ominus(3), p(&[]));
    }

    #[test]
    fn underline_examples() {
        let lam: MultiPartition = "[2,1];[1]".parse().unwrap();
        assert_eq!(lam.underline(), vec![(1, 1), (1, 2), (2, 1)]);
        assert!(MultiPartition::empty(2).underline().is_empty());
        let lam: MultiPartition = "[3,3];[]".parse().unwrap();
        assert_eq!(lam.underline(), vec![(3, 1), (3, 1)]);
        assert_eq!(lam.len(), 2);
        assert_eq!(lam.size(), 6);
    }

    #[test]
    fn partitions_of_examples() {
        assert_eq!(partitions_of(0).unwrap(), vec![p(&[])]);
        let four = partitions_of(4).unwrap();
        assert_eq!(
            four,
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(partitions_of(6).unwrap().len(), 11);
        assert!(matches!(
            partitions_of(31),
            Err(Error::SizeLimit {
                value: 31,
                bound: 30,
                ..
            })
        ));
    }

    /// p(n) from the recurrence p(n, k) = p(n, k-1) + p(n-k, k).
    fn partition_count_table(max: usize) -> Vec<u64> {
        let mut table = vec![0u64; max + 1];
        table[0] = 1;
        for k in 1..=max {
            for n in k..=max {
                table[n] += table[n - k];
            }
        }
        table
    }

    #[test]
    fn partition_counts_match_recurrence() {
        let table = partition_count_table(20);
        for n in 0..=20u32 {
            let parts = partitions_of(n).unwrap();
            assert_eq!(parts.len() as u64, table[n as usize], "p({n})");
            let mut sorted = parts.clone();
            sorted.sort_by(|a, b| b.cmp(a));
            sorted.dedup();
            assert_eq!(sorted, parts, "order/uniqueness for n={n}");
            assert!(parts.iter().all(|l| l.size() == n));
        }
    }

    #[test]
    fn multipartition_text_round_trip() {
        let lam: MultiPartition = "[2,1];[1]".parse().unwrap();
        assert_eq!(lam.to_string(), "[2,1];[1]");
        let unsorted: Partition = "[1,3,1]".parse().unwrap();
        assert_eq!(unsorted.to_string(), "[3,1,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert!("[1,x]".parse::<Partition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn multipartitions_count() {
        // Σ_{a+b=3} p(a) p(b) = 3 + 2 + 2 + 3
        assert_eq!(multipartitions_of(3, 2).unwrap().len(), 10);
        assert_eq!(
            multipartitions_of(0, 3).unwrap(),
            vec![MultiPartition::empty(3)]
        );
        assert!(multipartitions_of(4, 2)
            .unwrap()
            .iter()
            .all(|m| m.size() == 4));
    }

    #[test]
    fn color_checks() {
        assert!(matches!(
            MultiPartition::single(2, 1, 3),
            Err(Error::ColorOutOfRange {
                color: 3,
                colors: 2
            })
        ));
        assert!(MultiPartition::single(2, 1, 0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn partition() -> impl Strategy<Value = Partition> {
            prop::collection::vec(1u32..6, 0..6).prop_map(Partition::new)
        }

        fn multipartition() -> impl Strategy<Value = MultiPartition> {
            prop::collection::vec(partition(), 2).prop_map(MultiPartition::from_components)
        }

        proptest! {
            #[test]
            fn oplus_commutative_associative(a in partition(), b in partition(), c in partition()) {
                prop_assert_eq!(a.oplus(&b), b.oplus(&a));
                prop_assert_eq!(a.oplus(&b).oplus(&c), a.oplus(&b.oplus(&c)));
            }

            #[test]
            fn ominus_undoes_add_part(a in partition(), k in 1u32..8) {
                prop_assert_eq!(a.add_part(k).ominus(k), a);
            }

            #[test]
            fn underline_of_union_is_merge(a in multipartition(), b in multipartition()) {
                let mut merged = a.underline();
                merged.extend(b.underline());
                merged.sort_unstable();
                prop_assert_eq!(a.oplus(&b).underline(), merged);
            }
        }
    }
}
