//! Elements of `Sym^{⊗I}` over `ℚ[q, q⁻¹]`.
//!
//! The power sums `p_𝛌` are the working basis: products are label unions, the
//! coproduct has a closed binomial formula and the pairing is nearly diagonal.
//! The complete (`h`) and elementary (`e`) bases are reached through per-degree
//! transition tables, built once and shared.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{format_combination, LaurentPoly, Rational};
use crate::partitions::{check_color, partitions_of, MultiPartition, Partition};
use crate::DEFAULT_DEGREE_BOUND;

/// Which family indexes the coefficients of a [`SymElement`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// Power sums `p_𝛌`.
    P,
    /// Complete symmetric functions `h_𝛌`.
    H,
    /// Elementary symmetric functions `e_𝛌`.
    E,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::P => 'p',
            Basis::H => 'h',
            Basis::E => 'e',
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" | "P" => Ok(Basis::P),
            "h" | "H" => Ok(Basis::H),
            "e" | "E" => Ok(Basis::E),
            other => Err(Error::Malformed(format!("unknown basis {other:?}"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Transition tables

type Row = Vec<(Partition, Rational)>;

/// Single-color transition data for one degree.
struct DegreeTable {
    /// `h_λ = Σ_μ row[μ] p_μ`
    h_to_p: HashMap<Partition, Row>,
    e_to_p: HashMap<Partition, Row>,
    /// `p_λ = Σ_μ row[μ] h_μ`
    p_to_h: HashMap<Partition, Row>,
    p_to_e: HashMap<Partition, Row>,
}

static TABLES: [OnceLock<DegreeTable>; DEFAULT_DEGREE_BOUND as usize + 1] =
    [const { OnceLock::new() }; DEFAULT_DEGREE_BOUND as usize + 1];

fn table(degree: u32) -> Result<&'static DegreeTable> {
    if degree > DEFAULT_DEGREE_BOUND {
        return Err(Error::SizeLimit {
            what: "degree",
            value: degree as usize,
            bound: DEFAULT_DEGREE_BOUND as usize,
        });
    }
    Ok(TABLES[degree as usize].get_or_init(|| DegreeTable::build(degree)))
}

/// `p_λ / z_λ` coefficients of `h_n` (`signed = false`) or `e_n` (`signed = true`).
fn generator_row(n: u32, signed: bool) -> Row {
    partitions_of(n)
        .expect("degree within partition bound")
        .into_iter()
        .map(|mu| {
            let mut c = Rational::new(BigInt::one(), BigInt::from(mu.z()));
            if signed && mu.size_minus_len() % 2 == 1 {
                c = -c;
            }
            (mu, c)
        })
        .collect()
}

fn multiply_rows(a: &Row, b: &Row) -> Row {
    let mut acc: BTreeMap<Partition, Rational> = BTreeMap::new();
    for (la, ca) in a {
        for (lb, cb) in b {
            let entry = acc.entry(la.oplus(lb)).or_insert_with(Rational::zero);
            *entry += ca * cb;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl DegreeTable {
    fn build(degree: u32) -> DegreeTable {
        let parts = partitions_of(degree).expect("degree within partition bound");
        let h_to_p = Self::expansions(&parts, false);
        let e_to_p = Self::expansions(&parts, true);
        let p_to_h = Self::invert(&parts, &h_to_p);
        let p_to_e = Self::invert(&parts, &e_to_p);
        DegreeTable {
            h_to_p,
            e_to_p,
            p_to_h,
            p_to_e,
        }
    }

    fn expansions(parts: &[Partition], signed: bool) -> HashMap<Partition, Row> {
        let generators: Vec<Row> = (0..=parts.first().map_or(0, Partition::size))
            .map(|n| generator_row(n, signed))
            .collect();
        parts
            .iter()
            .map(|lambda| {
                let unit: Row = vec![(Partition::empty(), Rational::one())];
                let row = lambda
                    .parts()
                    .iter()
                    .fold(unit, |acc, &k| multiply_rows(&acc, &generators[k as usize]));
                (lambda.clone(), row)
            })
            .collect()
    }

    /// Inverts `x_λ = Σ_{μ ≤ λ} M[λ][μ] p_μ`, which is lower triangular in
    /// lexicographic order because every `p_μ` in `x_λ` refines `λ`.
    fn invert(parts: &[Partition], forward: &HashMap<Partition, Row>) -> HashMap<Partition, Row> {
        let mut ascending: Vec<Partition> = parts.to_vec();
        ascending.sort();
        let index: HashMap<&Partition, usize> =
            ascending.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let n = ascending.len();
        // solved[i] = expansion of p_{ascending[i]} in the x basis, dense
        let mut solved: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for (i, lambda) in ascending.iter().enumerate() {
            let mut rhs = vec![Rational::zero(); n];
            rhs[i] = Rational::one();
            let mut diagonal = Rational::zero();
            for (mu, c) in &forward[lambda] {
                let j = index[mu];
                debug_assert!(j <= i, "transition matrix not triangular");
                if j == i {
                    diagonal = c.clone();
                } else {
                    for (k, v) in solved[j].iter().enumerate() {
                        if !v.is_zero() {
                            rhs[k] -= c * v;
                        }
                    }
                }
            }
            assert!(
                !diagonal.is_zero(),
                "singular transition matrix at {lambda}"
            );
            for v in rhs.iter_mut() {
                *v /= &diagonal;
            }
            solved.push(rhs);
        }
        ascending
            .iter()
            .zip(solved)
            .map(|(lambda, dense)| {
                let row: Row = dense
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (ascending[k].clone(), c))
                    .collect();
                (lambda.clone(), row)
            })
            .collect()
    }
}

/// Single-color row expressing `from_λ` in the `to` basis.
fn single_row(lambda: &Partition, from: Basis, to: Basis) -> Result<Row> {
    if from == to {
        return Ok(vec![(lambda.clone(), Rational::one())]);
    }
    let t = table(lambda.size())?;
    let direct = match (from, to) {
        (Basis::H, Basis::P) => &t.h_to_p,
        (Basis::E, Basis::P) => &t.e_to_p,
        (Basis::P, Basis::H) => &t.p_to_h,
        (Basis::P, Basis::E) => &t.p_to_e,
        _ => {
            let via_p = single_row(lambda, from, Basis::P)?;
            let mut acc: BTreeMap<Partition, Rational> = BTreeMap::new();
            for (mu, c) in via_p {
                for (nu, d) in single_row(&mu, Basis::P, to)? {
                    *acc.entry(nu).or_insert_with(Rational::zero) += &c * &d;
                }
            }
            return Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
    };
    Ok(direct[lambda].clone())
}

/// Expansion of the basis element `from_𝛌` in the `to` basis.
fn label_row(
    label: &MultiPartition,
    from: Basis,
    to: Basis,
) -> Result<Vec<(MultiPartition, Rational)>> {
    let mut acc: Vec<(Vec<Partition>, Rational)> = vec![(Vec::new(), Rational::one())];
    for lambda in label.components() {
        let row = single_row(lambda, from, to)?;
        let mut next = Vec::with_capacity(acc.len() * row.len());
        for (prefix, c) in &acc {
            for (mu, d) in &row {
                let mut labels = prefix.clone();
                labels.push(mu.clone());
                next.push((labels, c * d));
            }
        }
        acc = next;
    }
    Ok(acc
        .into_iter()
        .map(|(parts, c)| (MultiPartition::from_components(parts), c))
        .collect())
}

// ---------------------------------------------------------------------------
// Elements

/// A finite linear combination of basis elements of `Sym^{⊗I}` with
/// coefficients in `ℚ[q, q⁻¹]`.
///
/// Equality is structural: two elements in different bases compare unequal
/// even when they represent the same symmetric function. Use
/// [`SymElement::to_p`] before comparing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymElement {
    colors: usize,
    basis: Basis,
    coeffs: BTreeMap<MultiPartition, LaurentPoly>,
}

impl SymElement {
    pub fn zero(colors: usize, basis: Basis) -> Self {
        SymElement {
            colors,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    /// The unit, in the power-sum basis.
    pub fn one(colors: usize) -> Self {
        SymElement::basis_element(colors, Basis::P, MultiPartition::empty(colors))
    }

    pub fn basis_element(colors: usize, basis: Basis, label: MultiPartition) -> Self {
        assert_eq!(
            label.colors(),
            colors,
            "label has the wrong number of colors"
        );
        let mut out = SymElement::zero(colors, basis);
        out.coeffs.insert(label, LaurentPoly::one());
        out
    }

    pub fn from_terms(
        colors: usize,
        basis: Basis,
        terms: impl IntoIterator<Item = (MultiPartition, LaurentPoly)>,
    ) -> Self {
        let mut out = SymElement::zero(colors, basis);
        for (label, c) in terms {
            out.add_term(label, &c);
        }
        out
    }

    /// The power sum `p_{n,i}` (the unit when `n = 0`).
    pub fn p_gen(colors: usize, n: u32, color: usize) -> Result<Self> {
        let label = MultiPartition::single(colors, n, color)?;
        Ok(SymElement::basis_element(colors, Basis::P, label))
    }

    /// `h_{n,i} = Σ_{|λ|=n} p_{λ,i} / z_λ`, in the power-sum basis.
    pub fn h_gen(colors: usize, n: u32, color: usize) -> Result<Self> {
        SymElement::generator(colors, n, color, Basis::H)
    }

    /// `e_{n,i} = Σ_{|λ|=n} (-1)^{|λ|-ℓ(λ)} p_{λ,i} / z_λ`, in the power-sum basis.
    pub fn e_gen(colors: usize, n: u32, color: usize) -> Result<Self> {
        SymElement::generator(colors, n, color, Basis::E)
    }

    /// The degree-`n` generator of the given family in color `color`, expressed
    /// in the power-sum basis.
    pub fn generator(colors: usize, n: u32, color: usize, family: Basis) -> Result<Self> {
        check_color(color, colors)?;
        if family == Basis::P {
            return SymElement::p_gen(colors, n, color);
        }
        SymElement::basis_element(colors, family, MultiPartition::single(colors, n, color)?).to_p()
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, label: &MultiPartition) -> LaurentPoly {
        self.coeffs.get(label).cloned().unwrap_or_default()
    }

    /// Terms ordered by degree, then lexicographically by label.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiPartition, &LaurentPoly)> + '_ {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, label: MultiPartition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(label) {
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// The counit: the coefficient of the unit label. Every other basis
    /// element has positive degree in all three bases.
    pub fn counit(&self) -> LaurentPoly {
        self.coeff(&MultiPartition::empty(self.colors))
    }

    /// `Some(d)` when every term has degree `d`; `None` for zero or mixed degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.coeffs.keys().map(MultiPartition::size);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// The degree-`d` component.
    pub fn degree_part(&self, d: u32) -> SymElement {
        SymElement {
            colors: self.colors,
            basis: self.basis,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.size() == d)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> SymElement {
        let mut out = SymElement::zero(self.colors, self.basis);
        for (label, v) in &self.coeffs {
            out.add_term(label.clone(), &(v * c));
        }
        out
    }

    pub fn neg(&self) -> SymElement {
        SymElement {
            colors: self.colors,
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn add(&self, other: &SymElement) -> Result<SymElement> {
        self.check_colors(other)?;
        let other = other.convert(self.basis)?;
        let mut out = self.clone();
        for (label, v) in other.coeffs {
            out.add_term(label, &v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymElement) -> Result<SymElement> {
        self.add(&other.neg())
    }

    fn check_colors(&self, other: &SymElement) -> Result<()> {
        if self.colors != other.colors {
            return Err(Error::ColorMismatch {
                left: self.colors,
                right: other.colors,
            });
        }
        Ok(())
    }

    /// The product, computed as `p_𝛌 p_𝛍 = p_{𝛌⊕𝛍}` and returned in the
    /// power-sum basis.
    pub fn mul(&self, other: &SymElement) -> Result<SymElement> {
        self.check_colors(other)?;
        let (a, b) = (self.to_p()?, other.to_p()?);
        let mut out = SymElement::zero(self.colors, Basis::P);
        for (la, ca) in &a.coeffs {
            for (lb, cb) in &b.coeffs {
                out.add_term(la.oplus(lb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn to_p(&self) -> Result<SymElement> {
        self.convert(Basis::P)
    }

    /// Re-expresses the element in `target`.
    pub fn convert(&self, target: Basis) -> Result<SymElement> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let mut out = SymElement::zero(self.colors, target);
        for (label, c) in &self.coeffs {
            for (mu, d) in label_row(label, self.basis, target)? {
                out.add_term(mu, &c.scale(&d));
            }
        }
        Ok(out)
    }

    /// The involution `Ω`: `p_𝛌 ↦ (-1)^{|𝛌|-ℓ(𝛌)} p_𝛌`. Returned in the
    /// power-sum basis.
    pub fn omega(&self) -> Result<SymElement> {
        let p = self.to_p()?;
        Ok(SymElement {
            colors: self.colors,
            basis: Basis::P,
            coeffs: p
                .coeffs
                .into_iter()
                .map(|(k, v)| {
                    let v = if k.size_minus_len() % 2 == 1 { -v } else { v };
                    (k, v)
                })
                .collect(),
        })
    }

    /// The coproduct, via
    /// `Δ(p_𝛌) = Σ_{𝛂⊕𝛃=𝛌} ∏ binom(m_k(λ^j), m_k(α^j)) p_𝛂 ⊗ p_𝛃`.
    pub fn coproduct(&self) -> Result<SymTensor> {
        let p = self.to_p()?;
        let mut out = SymTensor::zero(self.colors);
        for (label, c) in &p.coeffs {
            for (left, right, binom) in coproduct_of_label(label) {
                out.add_term(left, right, &c.scale(&binom));
            }
        }
        Ok(out)
    }
}

/// Sweedler terms of `Δ(p_𝛌)` with their integer weights.
pub(crate) fn coproduct_of_label(
    label: &MultiPartition,
) -> Vec<(MultiPartition, MultiPartition, Rational)> {
    let colors = label.colors();
    let mut acc = vec![(
        MultiPartition::empty(colors),
        MultiPartition::empty(colors),
        Rational::one(),
    )];
    for (idx, lambda) in label.components().iter().enumerate() {
        let color = idx + 1;
        for (k, m) in lambda.multiplicities() {
            let mut next = Vec::with_capacity(acc.len() * (m + 1));
            for (left, right, c) in &acc {
                let mut binom = BigInt::one();
                let (mut l, mut r) = (left.clone(), right.clone());
                for _ in 0..m {
                    r = r.add_part(k, color).expect("color in range");
                }
                for a in 0..=m {
                    next.push((
                        l.clone(),
                        r.clone(),
                        c * Rational::from_integer(binom.clone()),
                    ));
                    if a < m {
                        binom = binom * BigInt::from(m - a) / BigInt::from(a + 1);
                        l = l.add_part(k, color).expect("color in range");
                        r = MultiPartition::from_components(
                            r.components()
                                .iter()
                                .enumerate()
                                .map(|(i, p)| if i == idx { p.ominus(k) } else { p.clone() })
                                .collect(),
                        );
                    }
                }
            }
            acc = next;
        }
    }
    acc
}

impl fmt::Display for SymElement {
    /// Highest degree first, e.g. `1/2*p[2] + 1/2*p[1,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = self.basis.letter();
        let text = format_combination(self.coeffs.iter().rev().map(|(label, c)| {
            let body = if label.is_empty() {
                "1".to_string()
            } else {
                format!("{letter}{label}")
            };
            (c, body)
        }));
        f.write_str(&text)
    }
}

// ---------------------------------------------------------------------------
// Tensors

/// An element of `Sym^{⊗I} ⊗ Sym^{⊗I}`, stored in the power-sum basis on both
/// sides. Coproducts land here.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymTensor {
    colors: usize,
    coeffs: BTreeMap<(MultiPartition, MultiPartition), LaurentPoly>,
}

impl SymTensor {
    pub fn zero(colors: usize) -> Self {
        SymTensor {
            colors,
            coeffs: BTreeMap::new(),
        }
    }

    /// `x ⊗ y`.
    pub fn from_pair(x: &SymElement, y: &SymElement) -> Result<SymTensor> {
        x.check_colors(y)?;
        let (x, y) = (x.to_p()?, y.to_p()?);
        let mut out = SymTensor::zero(x.colors);
        for (lx, cx) in &x.coeffs {
            for (ly, cy) in &y.coeffs {
                out.add_term(lx.clone(), ly.clone(), &(cx * cy));
            }
        }
        Ok(out)
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sweedler terms `(a₁, a₂, coefficient)` with `a₁, a₂` power-sum labels.
    pub fn terms(
        &self,
    ) -> impl Iterator<Item = (&MultiPartition, &MultiPartition, &LaurentPoly)> + '_ {
        self.coeffs.iter().map(|((l, r), c)| (l, r, c))
    }

    pub fn coeff(&self, left: &MultiPartition, right: &MultiPartition) -> LaurentPoly {
        self.coeffs
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, left: MultiPartition, right: MultiPartition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.coeffs.entry(key.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn add(&self, other: &SymTensor) -> SymTensor {
        let mut out = self.clone();
        for ((l, r), c) in &other.coeffs {
            out.add_term(l.clone(), r.clone(), c);
        }
        out
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`.
    pub fn mul(&self, other: &SymTensor) -> Result<SymTensor> {
        if self.colors != other.colors {
            return Err(Error::ColorMismatch {
                left: self.colors,
                right: other.colors,
            });
        }
        let mut out = SymTensor::zero(self.colors);
        for ((l1, r1), c1) in &self.coeffs {
            for ((l2, r2), c2) in &other.coeffs {
                out.add_term(l1.oplus(l2), r1.oplus(r2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    /// `Ω ⊗ Ω`.
    pub fn omega(&self) -> SymTensor {
        let mut out = SymTensor::zero(self.colors);
        for ((l, r), c) in &self.coeffs {
            let flip = (l.size_minus_len() + r.size_minus_len()) % 2 == 1;
            out.add_term(l.clone(), r.clone(), &if flip { -c } else { c.clone() });
        }
        out
    }

    /// `(ε ⊗ id)`: keeps the terms whose left factor is the unit.
    pub fn counit_left(&self) -> SymElement {
        let unit = MultiPartition::empty(self.colors);
        SymElement::from_terms(
            self.colors,
            Basis::P,
            self.coeffs
                .iter()
                .filter(|((l, _), _)| *l == unit)
                .map(|((_, r), c)| (r.clone(), c.clone())),
        )
    }

    /// `(id ⊗ ε)`.
    pub fn counit_right(&self) -> SymElement {
        let unit = MultiPartition::empty(self.colors);
        SymElement::from_terms(
            self.colors,
            Basis::P,
            self.coeffs
                .iter()
                .filter(|((_, r), _)| *r == unit)
                .map(|((l, _), c)| (l.clone(), c.clone())),
        )
    }
}

impl fmt::Display for SymTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |label: &MultiPartition| {
            if label.is_empty() {
                "1".to_string()
            } else {
                format!("p{label}")
            }
        };
        let text = format_combination(
            self.coeffs
                .iter()
                .rev()
                .map(|((l, r), c)| (c, format!("{}⊗{}", side(l), side(r)))),
        );
        f.write_str(&text)
    }
}

// ---------------------------------------------------------------------------
// Generating-function checks

/// Outcome of a degree-by-degree generating-function comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesCheck {
    pub identity: &'static str,
    pub bound: u32,
    /// The lowest degree at which the two sides differ.
    pub first_failure: Option<u32>,
}

impl SeriesCheck {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn check_bound(bound: u32) -> Result<()> {
    if bound > DEFAULT_DEGREE_BOUND {
        return Err(Error::SizeLimit {
            what: "series degree",
            value: bound as usize,
            bound: DEFAULT_DEGREE_BOUND as usize,
        });
    }
    Ok(())
}

/// Checks `Σ h_n t^n = exp(Σ_{r≥1} p_r t^r / r)` through degree `bound`.
pub fn series_check_h(bound: u32) -> Result<SeriesCheck> {
    series_check_h_with(bound, &|n| SymElement::h_gen(1, n, 1))
}

/// [`series_check_h`] against a caller-supplied family `n ↦ h_n`.
pub fn series_check_h_with(
    bound: u32,
    h: &dyn Fn(u32) -> Result<SymElement>,
) -> Result<SeriesCheck> {
    check_bound(bound)?;
    // X = Σ p_r t^r / r, as a list of degree components
    let x: Vec<SymElement> = (0..=bound)
        .map(|r| {
            if r == 0 {
                Ok(SymElement::zero(1, Basis::P))
            } else {
                Ok(
                    SymElement::p_gen(1, r, 1)?.scale(&LaurentPoly::constant(Rational::new(
                        BigInt::one(),
                        BigInt::from(r),
                    ))),
                )
            }
        })
        .collect::<Result<_>>()?;
    // Truncated exp(X) = Σ_{k=0}^{bound} X^k / k!
    let mut power: Vec<SymElement> = (0..=bound)
        .map(|d| {
            if d == 0 {
                SymElement::one(1)
            } else {
                SymElement::zero(1, Basis::P)
            }
        })
        .collect();
    let mut exp = power.clone();
    let mut factorial = BigInt::one();
    for k in 1..=bound {
        power = truncated_product(&power, &x, bound)?;
        factorial *= BigInt::from(k);
        let inv = LaurentPoly::constant(Rational::new(BigInt::one(), factorial.clone()));
        for d in 0..=bound as usize {
            exp[d] = exp[d].add(&power[d].scale(&inv))?;
        }
    }
    let mut first_failure = None;
    for n in 0..=bound {
        if h(n)?.to_p()? != exp[n as usize] {
            first_failure = Some(n);
            break;
        }
    }
    Ok(SeriesCheck {
        identity: "H(t) = exp(sum p_r t^r / r)",
        bound,
        first_failure,
    })
}

/// Checks `E(-t) H(t) = 1` through degree `bound`.
pub fn series_check_eh(bound: u32) -> Result<SeriesCheck> {
    series_check_eh_with(bound, &|n| SymElement::h_gen(1, n, 1), &|n| {
        SymElement::e_gen(1, n, 1)
    })
}

pub fn series_check_eh_with(
    bound: u32,
    h: &dyn Fn(u32) -> Result<SymElement>,
    e: &dyn Fn(u32) -> Result<SymElement>,
) -> Result<SeriesCheck> {
    check_bound(bound)?;
    let hs: Vec<SymElement> = (0..=bound).map(h).collect::<Result<_>>()?;
    let es: Vec<SymElement> = (0..=bound)
        .map(|r| {
            let e_r = e(r)?;
            Ok(if r % 2 == 1 { e_r.neg() } else { e_r })
        })
        .collect::<Result<_>>()?;
    let product = truncated_product(&es, &hs, bound)?;
    let first_failure = (0..=bound).find(|&n| {
        let expected = if n == 0 {
            SymElement::one(1)
        } else {
            SymElement::zero(1, Basis::P)
        };
        product[n as usize] != expected
    });
    Ok(SeriesCheck {
        identity: "E(-t) H(t) = 1",
        bound,
        first_failure,
    })
}

/// Product of two power series in `t` with symmetric-function coefficients,
/// truncated after degree `bound`.
fn truncated_product(a: &[SymElement], b: &[SymElement], bound: u32) -> Result<Vec<SymElement>> {
    (0..=bound as usize)
        .map(|n| {
            let mut acc = SymElement::zero(1, Basis::P);
            for k in 0..=n {
                acc = acc.add(&a[k].mul(&b[n - k])?)?;
            }
            Ok(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{integer, rational};
    use crate::partitions::multipartitions_of;

    fn label(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    fn c(n: i64, d: i64) -> LaurentPoly {
        LaurentPoly::constant(rational(n, d))
    }

    fn p1(parts: &str) -> SymElement {
        SymElement::basis_element(1, Basis::P, label(parts))
    }

    /// Finite-variable oracle: expand a single-color p-basis element as a
    /// polynomial in `vars` commuting variables with rational coefficients.
    mod poly_oracle {
        use super::*;
        use std::collections::BTreeMap;

        pub type Poly = BTreeMap<Vec<u32>, Rational>;

        pub fn mul(a: &Poly, b: &Poly) -> Poly {
            let mut out = Poly::new();
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                    *out.entry(e).or_insert_with(Rational::zero) += ca * cb;
                }
            }
            out.retain(|_, v| !v.is_zero());
            out
        }

        pub fn add(a: &mut Poly, b: &Poly, scale: &Rational) {
            for (e, c) in b {
                *a.entry(e.clone()).or_insert_with(Rational::zero) += c * scale;
            }
            a.retain(|_, v| !v.is_zero());
        }

        fn one(vars: usize) -> Poly {
            let mut p = Poly::new();
            p.insert(vec![0; vars], Rational::one());
            p
        }

        pub fn power_sum(k: u32, vars: usize) -> Poly {
            let mut p = Poly::new();
            for i in 0..vars {
                let mut e = vec![0; vars];
                e[i] = k;
                p.insert(e, Rational::one());
            }
            p
        }

        /// Complete homogeneous polynomial: all monomials of degree n.
        pub fn complete(n: u32, vars: usize) -> Poly {
            let mut p = Poly::new();
            fn rec(n: u32, i: usize, cur: &mut Vec<u32>, p: &mut Poly) {
                if i + 1 == cur.len() {
                    cur[i] = n;
                    p.insert(cur.clone(), Rational::one());
                    return;
                }
                for a in 0..=n {
                    cur[i] = a;
                    rec(n - a, i + 1, cur, p);
                }
            }
            rec(n, 0, &mut vec![0; vars], &mut p);
            p
        }

        /// Elementary: squarefree monomials of degree n.
        pub fn elementary(n: u32, vars: usize) -> Poly {
            let mut p = Poly::new();
            for mask in 0u32..(1 << vars) {
                if mask.count_ones() == n {
                    let e = (0..vars).map(|i| (mask >> i) & 1).collect();
                    p.insert(e, Rational::one());
                }
            }
            p
        }

        pub fn expand(x: &SymElement, vars: usize) -> Poly {
            let x = x.to_p().unwrap();
            let mut out = Poly::new();
            for (label, coeff) in x.terms() {
                let scalar = coeff.coeff(0);
                assert_eq!(coeff, &LaurentPoly::constant(scalar.clone()));
                let mono = label
                    .component(1)
                    .parts()
                    .iter()
                    .fold(one(vars), |acc, &k| mul(&acc, &power_sum(k, vars)));
                add(&mut out, &mono, &scalar);
            }
            out
        }
    }

    #[test]
    fn generator_examples() {
        assert_eq!(SymElement::h_gen(1, 0, 1).unwrap(), SymElement::one(1));
        assert_eq!(SymElement::e_gen(1, 0, 1).unwrap(), SymElement::one(1));
        let h2 = SymElement::from_terms(
            1,
            Basis::P,
            [(label("[1,1]"), c(1, 2)), (label("[2]"), c(1, 2))],
        );
        assert_eq!(SymElement::h_gen(1, 2, 1).unwrap(), h2);
        let e2 = SymElement::from_terms(
            1,
            Basis::P,
            [(label("[1,1]"), c(1, 2)), (label("[2]"), c(-1, 2))],
        );
        assert_eq!(SymElement::e_gen(1, 2, 1).unwrap(), e2);
        let h3 = SymElement::from_terms(
            1,
            Basis::P,
            [
                (label("[1,1,1]"), c(1, 6)),
                (label("[2,1]"), c(1, 2)),
                (label("[3]"), c(1, 3)),
            ],
        );
        assert_eq!(SymElement::h_gen(1, 3, 1).unwrap(), h3);
        assert!(matches!(
            SymElement::h_gen(1, 17, 1),
            Err(Error::SizeLimit { value: 17, .. })
        ));
        assert!(matches!(
            SymElement::h_gen(2, 1, 3),
            Err(Error::ColorOutOfRange { .. })
        ));
    }

    #[test]
    fn generators_match_finite_variable_expansion() {
        let vars = 4;
        for n in 0..=4 {
            let h = poly_oracle::expand(&SymElement::h_gen(1, n, 1).unwrap(), vars);
            assert_eq!(h, poly_oracle::complete(n, vars), "h_{n}");
            let e = poly_oracle::expand(&SymElement::e_gen(1, n, 1).unwrap(), vars);
            assert_eq!(e, poly_oracle::elementary(n, vars), "e_{n}");
        }
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(p1("[2]").mul(&p1("[1]")).unwrap(), p1("[2,1]"));
        let x = SymElement::h_gen(1, 3, 1).unwrap();
        assert_eq!(SymElement::one(1).mul(&x).unwrap(), x);
        let h1 = SymElement::h_gen(1, 1, 1).unwrap();
        let sq = h1.mul(&h1).unwrap();
        assert_eq!(sq, p1("[1,1]"));
        let h2_plus_e2 = SymElement::h_gen(1, 2, 1)
            .unwrap()
            .add(&SymElement::e_gen(1, 2, 1).unwrap())
            .unwrap();
        assert_eq!(sq, h2_plus_e2);
        // same identity in three variables
        let vars = 3;
        let lhs = poly_oracle::mul(
            &poly_oracle::complete(1, vars),
            &poly_oracle::complete(1, vars),
        );
        let mut rhs = poly_oracle::complete(2, vars);
        poly_oracle::add(
            &mut rhs,
            &poly_oracle::elementary(2, vars),
            &Rational::one(),
        );
        assert_eq!(lhs, rhs);
        assert_eq!(poly_oracle::expand(&sq, vars), lhs);

        assert!(matches!(
            SymElement::one(1).mul(&SymElement::one(2)),
            Err(Error::ColorMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn coproduct_examples() {
        let one = SymElement::one(1);
        for n in 1..=4u32 {
            let pn = SymElement::p_gen(1, n, 1).unwrap();
            let expected = SymTensor::from_pair(&one, &pn)
                .unwrap()
                .add(&SymTensor::from_pair(&pn, &one).unwrap());
            assert_eq!(pn.coproduct().unwrap(), expected);
        }

        let h = |n| SymElement::h_gen(1, n, 1).unwrap();
        let delta_h2 = SymTensor::from_pair(&one, &h(2))
            .unwrap()
            .add(&SymTensor::from_pair(&h(1), &h(1)).unwrap())
            .add(&SymTensor::from_pair(&h(2), &one).unwrap());
        assert_eq!(h(2).coproduct().unwrap(), delta_h2);

        let p21 = p1("[2,1]");
        let expected = SymTensor::from_pair(&p21, &one)
            .unwrap()
            .add(&SymTensor::from_pair(&p1("[2]"), &p1("[1]")).unwrap())
            .add(&SymTensor::from_pair(&p1("[1]"), &p1("[2]")).unwrap())
            .add(&SymTensor::from_pair(&one, &p21).unwrap());
        assert_eq!(p21.coproduct().unwrap(), expected);
    }

    #[test]
    fn coproduct_of_h_and_e_families() {
        let one = SymElement::one(2);
        for n in 0..=6 {
            for family in [Basis::H, Basis::E] {
                let mut expected = SymTensor::zero(2);
                for r in 0..=n {
                    let a = SymElement::generator(2, r, 2, family).unwrap();
                    let b = SymElement::generator(2, n - r, 2, family).unwrap();
                    expected = expected.add(&SymTensor::from_pair(&a, &b).unwrap());
                }
                let x = SymElement::generator(2, n, 2, family).unwrap();
                assert_eq!(x.coproduct().unwrap(), expected, "Δ({family}_{n})");
            }
        }
        assert_eq!(
            one.coproduct().unwrap(),
            SymTensor::from_pair(&one, &one).unwrap()
        );
    }

    /// Δ(p_𝛌) from multiplicativity: the product of Δ(p_{k,i}) over parts.
    fn coproduct_by_products(label: &MultiPartition) -> SymTensor {
        let colors = label.colors();
        let one = SymElement::one(colors);
        let mut acc = SymTensor::from_pair(&one, &one).unwrap();
        for (k, color) in label.underline() {
            let pk = SymElement::p_gen(colors, k, color).unwrap();
            let delta = SymTensor::from_pair(&one, &pk)
                .unwrap()
                .add(&SymTensor::from_pair(&pk, &one).unwrap());
            acc = acc.mul(&delta).unwrap();
        }
        acc
    }

    #[test]
    fn closed_form_coproduct_matches_multiplicativity() {
        for n in 0..=5 {
            for lam in multipartitions_of(n, 2).unwrap() {
                let x = SymElement::basis_element(2, Basis::P, lam.clone());
                assert_eq!(
                    x.coproduct().unwrap(),
                    coproduct_by_products(&lam),
                    "Δ(p_{lam})"
                );
            }
        }
    }

    #[test]
    fn conversion_examples() {
        let h1 = SymElement::basis_element(1, Basis::H, label("[1]"));
        assert_eq!(h1.to_p().unwrap(), p1("[1]"));
        let p2_in_h = p1("[2]").convert(Basis::H).unwrap();
        let expected = SymElement::from_terms(
            1,
            Basis::H,
            [
                (label("[2]"), LaurentPoly::from_int(2)),
                (label("[1,1]"), LaurentPoly::from_int(-1)),
            ],
        );
        assert_eq!(p2_in_h, expected);
        // e-basis: p_2 = e_1^2 - 2 e_2
        let p2_in_e = p1("[2]").convert(Basis::E).unwrap();
        let expected = SymElement::from_terms(
            1,
            Basis::E,
            [
                (label("[2]"), LaurentPoly::from_int(-2)),
                (label("[1,1]"), LaurentPoly::one()),
            ],
        );
        assert_eq!(p2_in_e, expected);
    }

    #[test]
    fn conversions_round_trip_on_all_labels() {
        for n in 0..=7 {
            for lam in multipartitions_of(n, 1).unwrap() {
                for from in [Basis::P, Basis::H, Basis::E] {
                    let x = SymElement::basis_element(1, from, lam.clone());
                    for to in [Basis::P, Basis::H, Basis::E] {
                        let back = x.convert(to).unwrap().convert(from).unwrap();
                        assert_eq!(back, x, "{from}->{to}->{from} on {lam}");
                    }
                }
            }
        }
        for n in 0..=4 {
            for lam in multipartitions_of(n, 2).unwrap() {
                let x = SymElement::basis_element(2, Basis::H, lam.clone());
                assert_eq!(x.convert(Basis::E).unwrap().convert(Basis::H).unwrap(), x);
            }
        }
    }

    #[test]
    fn h_e_conversions_are_integral() {
        // products of h/e generators have integral h- and e-coefficients
        for n in 0..=6 {
            for lam in multipartitions_of(n, 1).unwrap() {
                for from in [Basis::H, Basis::E] {
                    for to in [Basis::H, Basis::E] {
                        let x = SymElement::basis_element(1, from, lam.clone())
                            .convert(to)
                            .unwrap();
                        assert!(
                            x.terms().all(|(_, c)| c.is_integral()),
                            "{from}{lam} in {to}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(p1("[2]").omega().unwrap(), p1("[2]").neg());
        for n in 0..=8 {
            let h = SymElement::h_gen(1, n, 1).unwrap();
            let e = SymElement::e_gen(1, n, 1).unwrap();
            assert_eq!(h.omega().unwrap(), e, "Ω(h_{n})");
            assert_eq!(e.omega().unwrap(), h, "Ω(e_{n})");
        }
        let x = SymElement::basis_element(2, Basis::H, label("[2,1];[3]"));
        assert_eq!(x.omega().unwrap().omega().unwrap(), x.to_p().unwrap());
    }

    #[test]
    fn omega_commutes_with_coproduct() {
        for n in 0..=5 {
            for lam in multipartitions_of(n, 2).unwrap() {
                let x = SymElement::basis_element(2, Basis::P, lam);
                assert_eq!(
                    x.omega().unwrap().coproduct().unwrap(),
                    x.coproduct().unwrap().omega()
                );
            }
        }
    }

    #[test]
    fn series_checks() {
        assert!(series_check_h(0).unwrap().passed());
        assert!(series_check_eh(0).unwrap().passed());
        let h = series_check_h(8).unwrap();
        assert!(h.passed(), "{h:?}");
        let eh = series_check_eh(8).unwrap();
        assert!(eh.passed(), "{eh:?}");
        assert!(series_check_h(17).is_err());

        let corrupted = |n: u32| {
            let h = SymElement::h_gen(1, n, 1)?;
            if n == 3 {
                h.add(&p1("[3]"))
            } else {
                Ok(h)
            }
        };
        let bad = series_check_h_with(8, &corrupted).unwrap();
        assert_eq!(bad.first_failure, Some(3));
        let bad = series_check_eh_with(8, &corrupted, &|n| SymElement::e_gen(1, n, 1)).unwrap();
        assert_eq!(bad.first_failure, Some(3));
    }

    #[test]
    fn counit_and_degrees() {
        let x = SymElement::h_gen(1, 2, 1)
            .unwrap()
            .add(&SymElement::one(1).scale(&LaurentPoly::from_int(5)))
            .unwrap();
        assert_eq!(x.counit(), LaurentPoly::from_int(5));
        assert_eq!(x.homogeneous_degree(), None);
        assert_eq!(x.degree_part(2).homogeneous_degree(), Some(2));
        assert_eq!(x.degree_part(0).counit(), LaurentPoly::constant(integer(5)));
    }

    #[test]
    fn display() {
        let h2 = SymElement::h_gen(1, 2, 1).unwrap();
        assert_eq!(h2.to_string(), "1/2*p[2] + 1/2*p[1,1]");
        let x = SymElement::from_terms(
            2,
            Basis::H,
            [
                (label("[2];[1]"), "q^-1+q".parse().unwrap()),
                (MultiPartition::empty(2), LaurentPoly::from_int(-1)),
            ],
        );
        assert_eq!(x.to_string(), "(q^-1+q)*h[2];[1] - 1");
        assert_eq!(SymElement::zero(1, Basis::P).to_string(), "0");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element(max_degree: u32) -> impl Strategy<Value = SymElement> {
            let labels = crate::partitions::multipartitions_up_to(max_degree, 2).unwrap();
            prop::collection::vec((prop::sample::select(labels), -3i64..4, -2i64..3), 0..4)
                .prop_map(|terms| {
                    SymElement::from_terms(
                        2,
                        Basis::P,
                        terms
                            .into_iter()
                            .map(|(l, c, e)| (l, LaurentPoly::monomial(integer(c), e))),
                    )
                })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn mul_commutative_associative(a in element(2), b in element(2), c in element(2)) {
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(
                    a.mul(&b).unwrap().mul(&c).unwrap(),
                    a.mul(&b.mul(&c).unwrap()).unwrap()
                );
            }

            #[test]
            fn coproduct_is_multiplicative(a in element(3), b in element(2)) {
                let lhs = a.mul(&b).unwrap().coproduct().unwrap();
                let rhs = a.coproduct().unwrap().mul(&b.coproduct().unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn counit_compatibility(a in element(4)) {
                let delta = a.coproduct().unwrap();
                prop_assert_eq!(delta.counit_left(), a.clone());
                prop_assert_eq!(delta.counit_right(), a);
            }

            #[test]
            fn omega_is_involutive_algebra_map(a in element(3), b in element(3)) {
                prop_assert_eq!(a.omega().unwrap().omega().unwrap(), a.clone());
                prop_assert_eq!(
                    a.mul(&b).unwrap().omega().unwrap(),
                    a.omega().unwrap().mul(&b.omega().unwrap()).unwrap()
                );
            }
        }
    }
}
