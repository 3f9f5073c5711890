//! Graded dimensions of finite-dimensional `ℤ`-graded spaces and of their
//! symmetric and exterior powers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Rational};

/// Symmetric or exterior power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PowerKind {
    Sym,
    Ext,
}

impl PowerKind {
    /// The other kind.
    pub fn swap(self) -> PowerKind {
        match self {
            PowerKind::Sym => PowerKind::Ext,
            PowerKind::Ext => PowerKind::Sym,
        }
    }
}

impl FromStr for PowerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" | "S" => Ok(PowerKind::Sym),
            "ext" | "L" => Ok(PowerKind::Ext),
            other => Err(Error::Malformed(format!("unknown power kind {other:?}"))),
        }
    }
}

impl fmt::Display for PowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PowerKind::Sym => "sym",
            PowerKind::Ext => "ext",
        })
    }
}

/// A graded space recorded by its dimension in each degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedVS {
    dims: BTreeMap<i64, u64>,
}

impl GradedVS {
    /// Zero-dimensional entries are dropped.
    pub fn new(dims: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut out = GradedVS::default();
        for (degree, d) in dims {
            if d > 0 {
                *out.dims.entry(degree).or_default() += d;
            }
        }
        out
    }

    /// The multiplicity-free space with `qdim = [χ]`: one dimension in each
    /// degree `|χ| - 1 - 2g`, `0 ≤ g < |χ|`.
    pub fn from_quantum_int(chi: i64) -> Self {
        let n = chi.abs();
        GradedVS::new((0..n).map(|g| (n - 1 - 2 * g, 1)))
    }

    pub fn dims(&self) -> &BTreeMap<i64, u64> {
        &self.dims
    }

    pub fn total_dim(&self) -> u64 {
        self.dims.values().sum()
    }

    pub fn qdim(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.dims
                .iter()
                .map(|(&n, &d)| (n, Rational::from_integer(d.into()))),
        )
    }

    /// `qdim S^k(V)` or `qdim Λ^k(V)`.
    pub fn qdim_power(&self, k: u32, kind: PowerKind) -> LaurentPoly {
        match kind {
            PowerKind::Sym => qdim_sym_power(self, k),
            PowerKind::Ext => qdim_ext_power(self, k),
        }
    }
}

/// A finitely supported count function on degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeMultiset {
    counts: BTreeMap<i64, u32>,
}

impl DegreeMultiset {
    pub fn counts(&self) -> &BTreeMap<i64, u32> {
        &self.counts
    }

    pub fn count(&self, degree: i64) -> u32 {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    /// `|m| = Σ m(n)`
    pub fn size(&self) -> u32 {
        self.counts.values().sum()
    }

    /// `‖m‖ = Σ n·m(n)`
    pub fn weight(&self) -> i64 {
        self.counts.iter().map(|(&n, &c)| n * i64::from(c)).sum()
    }

    /// All multisets of size `k` on `support`, degrees visited in increasing order.
    pub fn all_of_size(support: &[i64], k: u32) -> Vec<DegreeMultiset> {
        let mut support = support.to_vec();
        support.sort_unstable();
        support.dedup();
        let mut out = Vec::new();
        let mut current = DegreeMultiset::default();
        fill(&support, k, &mut current, &mut out);
        out
    }
}

fn fill(
    support: &[i64],
    remaining: u32,
    current: &mut DegreeMultiset,
    out: &mut Vec<DegreeMultiset>,
) {
    let Some((&degree, rest)) = support.split_first() else {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    };
    for c in 0..=remaining {
        if c > 0 {
            current.counts.insert(degree, c);
        }
        fill(rest, remaining - c, current, out);
    }
    current.counts.remove(&degree);
}

fn power_by_multisets(v: &GradedVS, k: u32, weight: impl Fn(u64, u32) -> BigInt) -> LaurentPoly {
    let support: Vec<i64> = v.dims.keys().copied().collect();
    let mut out = LaurentPoly::zero();
    for m in DegreeMultiset::all_of_size(&support, k) {
        let c: BigInt = m
            .counts
            .iter()
            .map(|(n, &count)| weight(v.dims[n], count))
            .product();
        out.add_term(m.weight(), Rational::from_integer(c));
    }
    out
}

/// `Σ_{|m|=k} q^{‖m‖} ∏_n binom(dim V_n + m(n) - 1, m(n))`.
pub fn qdim_sym_power(v: &GradedVS, k: u32) -> LaurentPoly {
    power_by_multisets(v, k, |dim, m| {
        binomial(BigInt::from(dim + u64::from(m)) - 1, BigInt::from(m))
    })
}

/// `Σ_{|m|=k} q^{‖m‖} ∏_n binom(dim V_n, m(n))`.
pub fn qdim_ext_power(v: &GradedVS, k: u32) -> LaurentPoly {
    power_by_multisets(v, k, |dim, m| {
        if u64::from(m) > dim {
            BigInt::from(0)
        } else {
            binomial(BigInt::from(dim), BigInt::from(m))
        }
    })
}

/// Coefficients of `t^0..=t^k` in `∏_n (1 - q^n t)^{-dim V_n}` (symmetric)
/// or `∏_n (1 + q^n t)^{dim V_n}` (exterior), by truncated series products.
pub fn power_series(v: &GradedVS, k: u32, kind: PowerKind) -> Vec<LaurentPoly> {
    let len = k as usize + 1;
    let mut series = vec![LaurentPoly::zero(); len];
    series[0] = LaurentPoly::one();
    for (&n, &dim) in &v.dims {
        let factor: Vec<LaurentPoly> = match kind {
            // 1/(1 - q^n t) = Σ_j q^{nj} t^j
            PowerKind::Sym => (0..len).map(|j| LaurentPoly::q_pow(n * j as i64)).collect(),
            PowerKind::Ext => {
                let mut f = vec![LaurentPoly::zero(); len];
                f[0] = LaurentPoly::one();
                if len > 1 {
                    f[1] = LaurentPoly::q_pow(n);
                }
                f
            }
        };
        for _ in 0..dim {
            series = truncated_mul(&series, &factor);
        }
    }
    series
}

fn truncated_mul(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    (0..a.len())
        .map(|n| (0..=n).map(|j| &a[j] * &b[n - j]).sum())
        .collect()
}
