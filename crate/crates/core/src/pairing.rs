//! Hopf pairings on `Sym^{⊗I}` fixed by their values
//! `⟨p_{n,j}, p_{m,i}⟩ = δ_{nm} C^n_{j,i}` on power sums, and the lattice
//! specialization `C^n_{j,i} = [n⟨i,j⟩]·n/[n]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::laurent::{quantum_integer, LaurentPoly, Rational};
use crate::partitions::{check_color, MultiPartition};
use crate::symfunc::{coproduct_of_label, SymElement, SymTensor};

/// A symmetric integer Gram matrix `⟨i,j⟩` on colors `1..=rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    gram: Vec<Vec<i64>>,
}

impl LatticeSpec {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Malformed(
                "lattice must have at least one color".into(),
            ));
        }
        for (r, row) in gram.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!(
                    "gram row {} has {} entries, expected {n}",
                    r + 1,
                    row.len()
                )));
            }
        }
        for (r, row) in gram.iter().enumerate() {
            if let Some(c) = (0..r).find(|&c| row[c] != gram[c][r]) {
                return Err(Error::AsymmetricGram {
                    row: r + 1,
                    col: c + 1,
                });
            }
        }
        Ok(LatticeSpec { gram })
    }

    /// Rank one with `⟨1,1⟩ = chi`.
    pub fn rank_one(chi: i64) -> Self {
        LatticeSpec {
            gram: vec![vec![chi]],
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// `⟨i,j⟩` for 1-based colors.
    pub fn form(&self, i: usize, j: usize) -> Result<i64> {
        check_color(i, self.rank())?;
        check_color(j, self.rank())?;
        Ok(self.gram[i - 1][j - 1])
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }
}

impl FromStr for LatticeSpec {
    type Err = Error;

    /// Line 1 is the rank; each following line is one row of the Gram matrix.
    /// Blank lines and `#` comments are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Malformed("empty lattice file".into()))?;
        let rank: usize = header
            .parse()
            .map_err(|_| Error::Malformed(format!("bad rank line {header:?}")))?;
        let mut gram = Vec::with_capacity(rank);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::Malformed(format!("bad gram entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            gram.push(row);
        }
        if gram.len() != rank {
            return Err(Error::Malformed(format!(
                "expected {rank} gram rows, found {}",
                gram.len()
            )));
        }
        LatticeSpec::new(gram)
    }
}

impl fmt::Display for LatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.rank())?;
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// The constants `C^n_{j,i}` for `1 ≤ n ≤ bound`, materialized up front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingSpec {
    colors: usize,
    bound: u32,
    /// `table[n-1][j-1][i-1] = C^n_{j,i}`
    table: Vec<Vec<Vec<LaurentPoly>>>,
}

impl PairingSpec {
    /// Builds a spec from `c(n, j, i) = C^n_{j,i}`.
    pub fn from_fn(
        colors: usize,
        bound: u32,
        mut c: impl FnMut(u32, usize, usize) -> LaurentPoly,
    ) -> Self {
        let table = (1..=bound)
            .map(|n| {
                (1..=colors)
                    .map(|j| (1..=colors).map(|i| c(n, j, i)).collect())
                    .collect()
            })
            .collect();
        PairingSpec {
            colors,
            bound,
            table,
        }
    }

    /// `C^n_{j,i} = [n⟨i,j⟩]·n/[n]`, by exact division.
    pub fn from_lattice(lattice: &LatticeSpec, bound: u32) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Malformed("pairing bound must be at least 1".into()));
        }
        let colors = lattice.rank();
        let mut table = Vec::with_capacity(bound as usize);
        for n in 1..=bound {
            let n_i = i64::from(n);
            let qn = quantum_integer(n_i);
            let mut rows = Vec::with_capacity(colors);
            for j in 1..=colors {
                let mut row = Vec::with_capacity(colors);
                for i in 1..=colors {
                    let chi = lattice.form(i, j)?;
                    let value =
                        (quantum_integer(n_i * chi) * LaurentPoly::from_int(n_i)).exact_div(&qn)?;
                    row.push(value);
                }
                rows.push(row);
            }
            table.push(rows);
        }
        Ok(PairingSpec {
            colors,
            bound,
            table,
        })
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// `C^n_{j,i}`.
    pub fn constant(&self, n: u32, j: usize, i: usize) -> Result<&LaurentPoly> {
        self.check_degree(n)?;
        check_color(j, self.colors)?;
        check_color(i, self.colors)?;
        if n == 0 {
            return Err(Error::Malformed(
                "pairing constants start at degree 1".into(),
            ));
        }
        Ok(&self.table[n as usize - 1][j - 1][i - 1])
    }

    /// `C^n_{j,i} = C^n_{i,j}` for every stored `n`.
    pub fn is_symmetric(&self) -> bool {
        self.table
            .iter()
            .all(|m| (0..self.colors).all(|j| (0..self.colors).all(|i| m[j][i] == m[i][j])))
    }

    fn check_degree(&self, n: u32) -> Result<()> {
        if n > self.bound {
            return Err(Error::SizeLimit {
                what: "pairing degree",
                value: n as usize,
                bound: self.bound as usize,
            });
        }
        Ok(())
    }

    fn check_colors(&self, colors: usize) -> Result<()> {
        if colors != self.colors {
            return Err(Error::ColorMismatch {
                left: colors,
                right: self.colors,
            });
        }
        Ok(())
    }

    fn c(&self, n: u32, j: usize, i: usize) -> &LaurentPoly {
        &self.table[n as usize - 1][j - 1][i - 1]
    }
}

/// `⟨p_𝛌, p_𝛍⟩ = δ_{ℓ(𝛌),ℓ(𝛍)} Σ_{σ∈S_ℓ} ∏_r δ_{prt} C^{prt}_{clr(𝛌_r), clr(𝛍_σ(r))}`.
///
/// Only permutations matching equal part values contribute, so the sum splits
/// into one permanent per part value, each evaluated by a subset DP.
pub fn pair_pp(
    lambda: &MultiPartition,
    mu: &MultiPartition,
    spec: &PairingSpec,
) -> Result<LaurentPoly> {
    spec.check_colors(lambda.colors())?;
    spec.check_colors(mu.colors())?;
    if lambda.size() != mu.size() || lambda.len() != mu.len() {
        return Ok(LaurentPoly::zero());
    }
    let (left, right) = (lambda.underline(), mu.underline());
    let mut blocks: BTreeMap<u32, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for &(k, color) in &left {
        blocks.entry(k).or_default().0.push(color);
    }
    for &(k, color) in &right {
        blocks.entry(k).or_default().1.push(color);
    }
    if blocks.values().any(|(rows, cols)| rows.len() != cols.len()) {
        return Ok(LaurentPoly::zero());
    }
    let mut value = LaurentPoly::one();
    for (k, (rows, cols)) in blocks {
        spec.check_degree(k)?;
        value *= &permanent(rows.len(), |r, s| spec.c(k, rows[r], cols[s]));
        if value.is_zero() {
            break;
        }
    }
    Ok(value)
}

/// Permanent of an `n × n` matrix by DP over subsets of used columns.
fn permanent<'a>(n: usize, entry: impl Fn(usize, usize) -> &'a LaurentPoly) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::one();
    }
    let full = 1usize << n;
    // dp[mask]: sum over assignments of rows 0..popcount(mask) to columns in mask
    let mut dp = vec![LaurentPoly::zero(); full];
    dp[0] = LaurentPoly::one();
    for mask in 0..full {
        if dp[mask].is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        let current = dp[mask].clone();
        for col in 0..n {
            if mask & (1 << col) == 0 {
                let e = entry(row, col);
                if !e.is_zero() {
                    dp[mask | (1 << col)] += &(&current * e);
                }
            }
        }
    }
    dp.pop().expect("nonempty table")
}

/// Bilinear extension of [`pair_pp`] over the power-sum expansions.
pub fn pair(x: &SymElement, y: &SymElement, spec: &PairingSpec) -> Result<LaurentPoly> {
    bilinear(x, y, spec, pair_pp)
}

/// The pairing evaluated from the axiom `⟨ab, y⟩ = ⟨a ⊗ b, Δy⟩`, peeling one
/// part off the left label at a time. Independent of [`pair_pp`].
pub fn pair_recursive(x: &SymElement, y: &SymElement, spec: &PairingSpec) -> Result<LaurentPoly> {
    let mut evaluator = RecursivePairing::new(spec);
    bilinear(x, y, spec, |l, r, _| evaluator.pp(l, r))
}

/// The recursive evaluator on power-sum labels, keeping its intermediate
/// values so that sweeps over many labels share work.
pub struct RecursivePairing<'a> {
    spec: &'a PairingSpec,
    memo: HashMap<(MultiPartition, MultiPartition), LaurentPoly>,
    // Δ(p_𝛍) restricted to terms whose left factor is a single power sum
    splits: HashMap<MultiPartition, Vec<Split>>,
}

struct Split {
    degree: u32,
    color: usize,
    rest: MultiPartition,
    weight: Rational,
}

impl<'a> RecursivePairing<'a> {
    pub fn new(spec: &'a PairingSpec) -> Self {
        RecursivePairing {
            spec,
            memo: HashMap::new(),
            splits: HashMap::new(),
        }
    }

    /// `⟨p_𝛌, p_𝛍⟩`.
    pub fn pp(&mut self, lambda: &MultiPartition, mu: &MultiPartition) -> Result<LaurentPoly> {
        self.spec.check_colors(lambda.colors())?;
        self.spec.check_colors(mu.colors())?;
        self.eval(lambda, mu)
    }

    fn eval(&mut self, lambda: &MultiPartition, mu: &MultiPartition) -> Result<LaurentPoly> {
        if lambda.size() != mu.size() {
            return Ok(LaurentPoly::zero());
        }
        if lambda.is_empty() {
            // ⟨1, p_𝛍⟩ = ε(p_𝛍)
            return Ok(if mu.is_empty() {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            });
        }
        let key = (lambda.clone(), mu.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        // p_𝛌 = p_{a,j} · p_rest with (a, j) the largest underline entry
        let &(a, j) = lambda.underline().last().expect("nonempty label");
        let rest = MultiPartition::from_components(
            lambda
                .components()
                .iter()
                .enumerate()
                .map(|(idx, p)| if idx + 1 == j { p.ominus(a) } else { p.clone() })
                .collect(),
        );
        self.spec.check_degree(a)?;
        let splits = self.splits.remove(mu).unwrap_or_else(|| single_splits(mu));
        let mut value = LaurentPoly::zero();
        let mut outcome = Ok(());
        // ⟨p_{a,j}, p_𝛍₁⟩ is nonzero only for a single part of degree a
        for split in splits.iter().filter(|s| s.degree == a) {
            let base = self.spec.c(a, j, split.color);
            if base.is_zero() {
                continue;
            }
            match self.eval(&rest, &split.rest) {
                Ok(tail) if !tail.is_zero() => value += &(base * &tail).scale(&split.weight),
                Ok(_) => {}
                Err(e) => {
                    outcome = Err(e);
                    break;
                }
            }
        }
        self.splits.insert(mu.clone(), splits);
        outcome?;
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

fn bilinear(
    x: &SymElement,
    y: &SymElement,
    spec: &PairingSpec,
    mut pp: impl FnMut(&MultiPartition, &MultiPartition, &PairingSpec) -> Result<LaurentPoly>,
) -> Result<LaurentPoly> {
    spec.check_colors(x.colors())?;
    spec.check_colors(y.colors())?;
    let (x, y) = (x.to_p()?, y.to_p()?);
    let mut total = LaurentPoly::zero();
    for (lx, cx) in x.terms() {
        for (ly, cy) in y.terms() {
            if lx.size() != ly.size() {
                continue;
            }
            let v = pp(lx, ly, spec)?;
            if !v.is_zero() {
                total += &(&(cx * cy) * &v);
            }
        }
    }
    Ok(total)
}

fn single_splits(mu: &MultiPartition) -> Vec<Split> {
    coproduct_of_label(mu)
        .into_iter()
        .filter_map(|(left, rest, weight)| match left.underline()[..] {
            [(degree, color)] => Some(Split {
                degree,
                color,
                rest,
                weight,
            }),
            _ => None,
        })
        .collect()
}

/// `⟨a ⊗ b, c ⊗ d⟩ = ⟨a, c⟩⟨b, d⟩`, extended bilinearly.
pub fn pair_tensors(x: &SymTensor, y: &SymTensor, spec: &PairingSpec) -> Result<LaurentPoly> {
    spec.check_colors(x.colors())?;
    spec.check_colors(y.colors())?;
    let mut total = LaurentPoly::zero();
    for (a, b, c1) in x.terms() {
        for (c, d, c2) in y.terms() {
            if a.size() != c.size() || b.size() != d.size() {
                continue;
            }
            let left = pair_pp(a, c, spec)?;
            if left.is_zero() {
                continue;
            }
            let right = pair_pp(b, d, spec)?;
            total += &(&(&left * &right) * &(c1 * c2));
        }
    }
    Ok(total)
}
