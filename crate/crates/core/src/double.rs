//! The Heisenberg double `𝔥(H⁺, H⁻) = H⁺ ⊗ H⁻` with product
//! `(a#x)(b#y) = Σ ⟨x₁, b₂⟩ ab₁ # x₂y`.
//!
//! Elements are stored over pairs of power-sum labels. Other bases only
//! appear on the way in ([`DoubleElement::generator`]) and on the way out
//! ([`DoubleElement::readout`]).

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{format_combination, LaurentPoly, Rational};
use crate::pairing::{pair_pp, PairingSpec};
use crate::partitions::{check_color, MultiPartition};
use crate::symfunc::{coproduct_of_label, Basis, SymElement};

/// Longest word accepted by [`DoubleElement::normal_order`].
pub const WORD_LIMIT: usize = 32;

/// Which tensor factor a generator lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `H⁺`, written `a#1`.
    Plus,
    /// `H⁻`, written `1#x`.
    Minus,
}

impl Side {
    pub fn sign(self) -> char {
        match self {
            Side::Plus => '+',
            Side::Minus => '-',
        }
    }
}

/// A generator `p±(n,i)`, `h±(n,i)` or `e±(n,i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub basis: Basis,
    pub side: Side,
    pub degree: u32,
    pub color: usize,
}

impl Generator {
    pub fn new(basis: Basis, side: Side, degree: u32, color: usize) -> Self {
        Generator {
            basis,
            side,
            degree,
            color,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}({},{})",
            self.basis.letter(),
            self.side.sign(),
            self.degree,
            self.color
        )
    }
}

type Key = (MultiPartition, MultiPartition);

/// An element `Σ c · p_𝛌 # p_𝛍` of the Heisenberg double over a fixed pairing.
#[derive(Clone, Debug)]
pub struct DoubleElement {
    spec: Arc<PairingSpec>,
    terms: BTreeMap<Key, LaurentPoly>,
}

impl PartialEq for DoubleElement {
    fn eq(&self, other: &Self) -> bool {
        same_spec(&self.spec, &other.spec) && self.terms == other.terms
    }
}

impl Eq for DoubleElement {}

fn same_spec(a: &Arc<PairingSpec>, b: &Arc<PairingSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl DoubleElement {
    pub fn zero(spec: Arc<PairingSpec>) -> Self {
        DoubleElement {
            spec,
            terms: BTreeMap::new(),
        }
    }

    /// `1#1`.
    pub fn one(spec: Arc<PairingSpec>) -> Self {
        let colors = spec.colors();
        let mut out = DoubleElement::zero(spec);
        out.add_term(
            MultiPartition::empty(colors),
            MultiPartition::empty(colors),
            &LaurentPoly::one(),
        );
        out
    }

    /// `Σ c · p_𝛌 # p_𝛍` from explicit power-sum terms.
    pub fn from_terms(
        spec: Arc<PairingSpec>,
        terms: impl IntoIterator<Item = (MultiPartition, MultiPartition, LaurentPoly)>,
    ) -> Result<Self> {
        let mut out = DoubleElement::zero(spec);
        for (a, x, c) in terms {
            out.check_label(&a)?;
            out.check_label(&x)?;
            out.add_term(a, x, &c);
        }
        Ok(out)
    }

    /// `a#x`, with no twisting: `(a#1)(1#x) = a#x`.
    pub fn from_pair(spec: Arc<PairingSpec>, a: &SymElement, x: &SymElement) -> Result<Self> {
        let mut out = DoubleElement::zero(spec);
        out.check_colors(a.colors())?;
        out.check_colors(x.colors())?;
        let (a, x) = (a.to_p()?, x.to_p()?);
        for (la, ca) in a.terms() {
            for (lx, cx) in x.terms() {
                out.add_term(la.clone(), lx.clone(), &(ca * cx));
            }
        }
        Ok(out)
    }

    /// `x ↦ x#1`.
    pub fn embed_plus(spec: Arc<PairingSpec>, x: &SymElement) -> Result<Self> {
        let one = SymElement::one(x.colors());
        DoubleElement::from_pair(spec, x, &one)
    }

    /// `x ↦ 1#x`.
    pub fn embed_minus(spec: Arc<PairingSpec>, x: &SymElement) -> Result<Self> {
        let one = SymElement::one(x.colors());
        DoubleElement::from_pair(spec, &one, x)
    }

    pub fn generator(spec: Arc<PairingSpec>, g: Generator) -> Result<Self> {
        let colors = spec.colors();
        check_color(g.color, colors)?;
        let x = SymElement::generator(colors, g.degree, g.color, g.basis)?;
        match g.side {
            Side::Plus => DoubleElement::embed_plus(spec, &x),
            Side::Minus => DoubleElement::embed_minus(spec, &x),
        }
    }

    /// Left-to-right product of the generators in `word`.
    pub fn normal_order(spec: Arc<PairingSpec>, word: &[Generator]) -> Result<Self> {
        if word.len() > WORD_LIMIT {
            return Err(Error::SizeLimit {
                what: "word length",
                value: word.len(),
                bound: WORD_LIMIT,
            });
        }
        let mut acc = DoubleElement::one(spec.clone());
        for &g in word {
            acc = acc.mul(&DoubleElement::generator(spec.clone(), g)?)?;
        }
        Ok(acc)
    }

    pub fn spec(&self) -> &Arc<PairingSpec> {
        &self.spec
    }

    pub fn colors(&self) -> usize {
        self.spec.colors()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(
        &self,
    ) -> impl Iterator<Item = (&MultiPartition, &MultiPartition, &LaurentPoly)> + '_ {
        self.terms.iter().map(|((a, x), c)| (a, x, c))
    }

    pub fn coeff(&self, a: &MultiPartition, x: &MultiPartition) -> LaurentPoly {
        self.terms
            .get(&(a.clone(), x.clone()))
            .cloned()
            .unwrap_or_default()
    }

    fn check_colors(&self, colors: usize) -> Result<()> {
        if colors != self.colors() {
            return Err(Error::ColorMismatch {
                left: self.colors(),
                right: colors,
            });
        }
        Ok(())
    }

    fn check_label(&self, label: &MultiPartition) -> Result<()> {
        self.check_colors(label.colors())
    }

    fn check_spec(&self, other: &DoubleElement) -> Result<()> {
        if same_spec(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn add_term(&mut self, a: MultiPartition, x: MultiPartition, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, x)) {
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

    fn map_coeffs(&self, f: impl Fn(&Key, &LaurentPoly) -> LaurentPoly) -> DoubleElement {
        let mut out = DoubleElement::zero(self.spec.clone());
        for (k, c) in &self.terms {
            out.add_term(k.0.clone(), k.1.clone(), &f(k, c));
        }
        out
    }

    pub fn add(&self, other: &DoubleElement) -> Result<DoubleElement> {
        self.check_spec(other)?;
        let mut out = self.clone();
        for ((a, x), c) in &other.terms {
            out.add_term(a.clone(), x.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DoubleElement) -> Result<DoubleElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DoubleElement {
        self.map_coeffs(|_, c| -c)
    }

    pub fn scale(&self, s: &LaurentPoly) -> DoubleElement {
        self.map_coeffs(|_, c| c * s)
    }

    /// The product in the double.
    pub fn mul(&self, other: &DoubleElement) -> Result<DoubleElement> {
        self.check_spec(other)?;
        let mut out = DoubleElement::zero(self.spec.clone());
        let mut deltas: HashMap<&MultiPartition, Vec<(MultiPartition, MultiPartition, Rational)>> =
            HashMap::new();
        let mut pairings: HashMap<(MultiPartition, MultiPartition), LaurentPoly> = HashMap::new();
        for ((a, x), c1) in &self.terms {
            for ((b, y), c2) in &other.terms {
                let coeff = c1 * c2;
                if x.is_empty() || b.is_empty() {
                    // no Sweedler cross terms survive
                    out.add_term(a.oplus(b), x.oplus(y), &coeff);
                    continue;
                }
                let dx = deltas
                    .entry(x)
                    .or_insert_with(|| coproduct_of_label(x))
                    .clone();
                let db = deltas
                    .entry(b)
                    .or_insert_with(|| coproduct_of_label(b))
                    .clone();
                for (x1, x2, wx) in &dx {
                    for (b1, b2, wb) in &db {
                        if x1.size() != b2.size() {
                            continue;
                        }
                        let key = (x1.clone(), b2.clone());
                        let pairing = match pairings.get(&key) {
                            Some(v) => v.clone(),
                            None => {
                                let v = pair_pp(x1, b2, &self.spec)?;
                                pairings.insert(key, v.clone());
                                v
                            }
                        };
                        if pairing.is_zero() {
                            continue;
                        }
                        let w = wx * wb;
                        out.add_term(a.oplus(b1), x2.oplus(y), &(&pairing * &coeff).scale(&w));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `uv - vu`.
    pub fn commutator(&self, other: &DoubleElement) -> Result<DoubleElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `Ω ⊗ Ω`: the sign `(-1)^{|𝛌|-ℓ(𝛌)+|𝛍|-ℓ(𝛍)}` on `p_𝛌 # p_𝛍`.
    pub fn omega(&self) -> DoubleElement {
        self.map_coeffs(|(a, x), c| {
            if (a.size_minus_len() + x.size_minus_len()) % 2 == 1 {
                -c
            } else {
                c.clone()
            }
        })
    }

    /// Every coefficient evaluated at `q = 1`.
    pub fn eval_at_one(&self) -> DoubleElement {
        self.map_coeffs(|_, c| LaurentPoly::constant(c.eval_at_one()))
    }

    /// The multiple of `1#1`.
    pub fn scalar_part(&self) -> LaurentPoly {
        let e = MultiPartition::empty(self.colors());
        self.coeff(&e, &e)
    }

    /// Re-expresses the element over `plus`-basis labels on the left and
    /// `minus`-basis labels on the right.
    pub fn readout(&self, plus: Basis, minus: Basis) -> Result<Readout> {
        let colors = self.colors();
        let mut rows: HashMap<(Side, MultiPartition), SymElement> = HashMap::new();
        let mut row = |side: Side, label: &MultiPartition| -> Result<SymElement> {
            let target = if side == Side::Plus { plus } else { minus };
            let key = (side, label.clone());
            if let Some(r) = rows.get(&key) {
                return Ok(r.clone());
            }
            let r = SymElement::basis_element(colors, Basis::P, label.clone()).convert(target)?;
            rows.insert(key, r.clone());
            Ok(r)
        };
        let mut terms: BTreeMap<Key, LaurentPoly> = BTreeMap::new();
        for ((a, x), c) in &self.terms {
            let ra = row(Side::Plus, a)?;
            let rx = row(Side::Minus, x)?;
            for (la, ca) in ra.terms() {
                for (lx, cx) in rx.terms() {
                    let v = &(c * ca) * cx;
                    let entry = terms.entry((la.clone(), lx.clone())).or_default();
                    *entry += &v;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Readout { plus, minus, terms })
    }
}

impl fmt::Display for DoubleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let readout = Readout {
            plus: Basis::P,
            minus: Basis::P,
            terms: self.terms.clone(),
        };
        readout.fmt(f)
    }
}

/// A double element written over chosen bases of `H⁺` and `H⁻`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Readout {
    pub plus: Basis,
    pub minus: Basis,
    pub terms: BTreeMap<(MultiPartition, MultiPartition), LaurentPoly>,
}

impl Readout {
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(LaurentPoly::is_integral)
    }

    pub fn coeff(&self, a: &MultiPartition, x: &MultiPartition) -> LaurentPoly {
        self.terms
            .get(&(a.clone(), x.clone()))
            .cloned()
            .unwrap_or_default()
    }
}

/// `h+(2,1)*h+(1,1)`: colors ascending, parts descending within a color.
fn word_text(basis: Basis, side: Side, label: &MultiPartition) -> String {
    if label.is_empty() {
        return "1".to_string();
    }
    let mut atoms = Vec::with_capacity(label.len());
    for (idx, lambda) in label.components().iter().enumerate() {
        for &k in lambda.parts() {
            atoms.push(Generator::new(basis, side, k, idx + 1).to_string());
        }
    }
    atoms.join("*")
}

impl fmt::Display for Readout {
    /// Terms in decreasing total degree, ties broken by decreasing labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ordered: Vec<(&Key, &LaurentPoly)> = self.terms.iter().collect();
        ordered.sort_by(|(ka, _), (kb, _)| {
            let da = ka.0.size() + ka.1.size();
            let db = kb.0.size() + kb.1.size();
            db.cmp(&da).then_with(|| kb.cmp(ka))
        });
        let text = format_combination(ordered.into_iter().map(|((a, x), c)| {
            let body = format!(
                "{}#{}",
                word_text(self.plus, Side::Plus, a),
                word_text(self.minus, Side::Minus, x)
            );
            (c, body)
        }));
        f.write_str(&text)
    }
}
