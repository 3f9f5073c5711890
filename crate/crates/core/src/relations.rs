//! Bounded verification of the h/e presentations of quantum lattice
//! Heisenberg algebras.
//!
//! The left-hand sides are computed by multiplying embedded generators in the
//! double. The right-hand sides are assembled from graded dimensions of
//! symmetric and exterior powers of a space `V` with `qdim V = [⟨i,j⟩]`.
//! Both are compared as power-sum double elements, exactly.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::double::{DoubleElement, Generator, Side};
use crate::error::{Error, Result};
use crate::graded::{GradedVS, PowerKind};
use crate::laurent::LaurentPoly;
use crate::pairing::{LatticeSpec, PairingSpec};
use crate::symfunc::{Basis, SymElement};
use crate::DEFAULT_DEGREE_BOUND;

/// One of the four product relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// `h⁻_{n,j} h⁺_{m,i}`
    Hh,
    /// `e⁻_{n,j} h⁺_{m,i}`
    Eh,
    /// `e⁻_{n,j} e⁺_{m,i}`, the image of `Hh` under `Ω`
    Ee,
    /// `h⁻_{n,j} e⁺_{m,i}`, the image of `Eh` under `Ω`
    He,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::Hh, Theorem::Eh, Theorem::Ee, Theorem::He];

    /// Families of the minus and plus generators on the left-hand side.
    pub fn families(self) -> (Basis, Basis) {
        match self {
            Theorem::Hh => (Basis::H, Basis::H),
            Theorem::Eh => (Basis::E, Basis::H),
            Theorem::Ee => (Basis::E, Basis::E),
            Theorem::He => (Basis::H, Basis::E),
        }
    }

    /// Power used for the coefficients when `⟨i,j⟩ = chi`.
    pub fn power_kind(self, chi: i64) -> PowerKind {
        let nonnegative = match self {
            Theorem::Hh | Theorem::Ee => PowerKind::Sym,
            Theorem::Eh | Theorem::He => PowerKind::Ext,
        };
        if chi >= 0 {
            nonnegative
        } else {
            nonnegative.swap()
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Hh => "hh",
            Theorem::Eh => "eh",
            Theorem::Ee => "ee",
            Theorem::He => "he",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hh" => Ok(Theorem::Hh),
            "eh" => Ok(Theorem::Eh),
            "ee" => Ok(Theorem::Ee),
            "he" => Ok(Theorem::He),
            other => Err(Error::Malformed(format!("unknown relation {other:?}"))),
        }
    }
}

/// `[qdim K^0 V, ..., qdim K^{min(m,n)} V]` with `qdim V = [chi]`.
pub fn relation_coefficients(theorem: Theorem, m: u32, n: u32, chi: i64) -> Vec<LaurentPoly> {
    let v = GradedVS::from_quantum_int(chi);
    let kind = theorem.power_kind(chi);
    (0..=m.min(n)).map(|r| v.qdim_power(r, kind)).collect()
}

/// One checked instance of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub theorem: Theorem,
    pub m: u32,
    pub n: u32,
    pub i: usize,
    pub j: usize,
    pub chi: i64,
    /// Rendered evidence of failure: a nonzero difference, or a readout with a
    /// non-integral coefficient.
    pub witness: Option<String>,
}

impl Case {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    fn sort_key(&self) -> (Theorem, i64, u32, u32, usize, usize) {
        (self.theorem, self.chi, self.m, self.n, self.i, self.j)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub cases: Vec<Case>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(Case::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> + '_ {
        self.cases.iter().filter(|c| !c.passed())
    }

    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        self.cases.extend(other.cases);
        self.cases.sort_by_key(Case::sort_key);
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<4} {:>3} {:>3} {:>3} {:>3} {:>4}  status",
            "rel", "m", "n", "i", "j", "chi"
        )?;
        for c in &self.cases {
            let status = if c.passed() { "ok" } else { "FAIL" };
            writeln!(
                f,
                "{:<4} {:>3} {:>3} {:>3} {:>3} {:>4}  {status}",
                c.theorem.name(),
                c.m,
                c.n,
                c.i,
                c.j,
                c.chi
            )?;
            if let Some(w) = &c.witness {
                writeln!(f, "     difference: {w}")?;
            }
        }
        let failed = self.failures().count();
        write!(f, "{} cases, {} failed", self.cases.len(), failed)
    }
}

/// The double attached to a lattice, with its pairing materialized.
#[derive(Clone, Debug)]
pub struct LatticeDouble {
    lattice: LatticeSpec,
    spec: Arc<PairingSpec>,
}

impl LatticeDouble {
    pub fn new(lattice: LatticeSpec) -> Result<Self> {
        let spec = Arc::new(PairingSpec::from_lattice(&lattice, DEFAULT_DEGREE_BOUND)?);
        Ok(LatticeDouble { lattice, spec })
    }

    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    pub fn spec(&self) -> &Arc<PairingSpec> {
        &self.spec
    }

    pub fn colors(&self) -> usize {
        self.lattice.rank()
    }

    fn generator(
        &self,
        basis: Basis,
        side: Side,
        degree: u32,
        color: usize,
    ) -> Result<DoubleElement> {
        DoubleElement::generator(
            self.spec.clone(),
            Generator::new(basis, side, degree, color),
        )
    }

    /// `x⁻_{n,j} y⁺_{m,i}` multiplied out in the double.
    pub fn lhs(
        &self,
        theorem: Theorem,
        m: u32,
        n: u32,
        i: usize,
        j: usize,
    ) -> Result<DoubleElement> {
        let (minus, plus) = theorem.families();
        self.generator(minus, Side::Minus, n, j)?
            .mul(&self.generator(plus, Side::Plus, m, i)?)
    }

    /// `Σ_r c_r · a⁺_{m-r,i} # b⁻_{n-r,j}` for explicit coefficients `c_r`.
    pub fn assemble(
        &self,
        families: (Basis, Basis),
        m: u32,
        n: u32,
        i: usize,
        j: usize,
        coefficients: &[LaurentPoly],
    ) -> Result<DoubleElement> {
        let (minus, plus) = families;
        let colors = self.colors();
        let mut out = DoubleElement::zero(self.spec.clone());
        for (r, c) in coefficients.iter().enumerate() {
            let r = r as u32;
            if c.is_zero() || r > m.min(n) {
                continue;
            }
            let a = SymElement::generator(colors, m - r, i, plus)?;
            let x = SymElement::generator(colors, n - r, j, minus)?;
            out = out.add(&DoubleElement::from_pair(self.spec.clone(), &a, &x)?.scale(c))?;
        }
        Ok(out)
    }

    /// `Σ_{r ≤ min(m,n)} qdim K^r(V) h⁺_{m-r,i} h⁻_{n-r,j}`, with `K = S` for
    /// `⟨i,j⟩ ≥ 0` and `K = Λ` otherwise.
    pub fn rhs_hh(&self, m: u32, n: u32, i: usize, j: usize) -> Result<DoubleElement> {
        self.rhs_direct(Theorem::Hh, m, n, i, j)
    }

    /// `Σ_{r ≤ min(m,n)} qdim K^r(V) h⁺_{m-r,i} e⁻_{n-r,j}`, with `K = Λ` for
    /// `⟨i,j⟩ ≥ 0` and `K = S` otherwise.
    pub fn rhs_eh(&self, m: u32, n: u32, i: usize, j: usize) -> Result<DoubleElement> {
        self.rhs_direct(Theorem::Eh, m, n, i, j)
    }

    fn rhs_direct(
        &self,
        theorem: Theorem,
        m: u32,
        n: u32,
        i: usize,
        j: usize,
    ) -> Result<DoubleElement> {
        let chi = self.lattice.form(i, j)?;
        let coefficients = relation_coefficients(theorem, m, n, chi);
        self.assemble(theorem.families(), m, n, i, j, &coefficients)
    }

    /// The closed-form right-hand side. For `ee` and `he` this is `Ω` applied
    /// to the `hh` and `eh` right-hand sides.
    pub fn rhs(
        &self,
        theorem: Theorem,
        m: u32,
        n: u32,
        i: usize,
        j: usize,
    ) -> Result<DoubleElement> {
        match theorem {
            Theorem::Hh | Theorem::Eh => self.rhs_direct(theorem, m, n, i, j),
            Theorem::Ee => Ok(self.rhs_hh(m, n, i, j)?.omega()),
            Theorem::He => Ok(self.rhs_eh(m, n, i, j)?.omega()),
        }
    }

    /// Checks every `m, n ≤ max` and every color pair.
    pub fn verify(&self, max: u32, theorems: &[Theorem]) -> Result<VerificationReport> {
        self.verify_with(max, theorems, false, &|t, m, n, i, j| {
            self.rhs(t, m, n, i, j)
        })
    }

    /// As [`LatticeDouble::verify`], comparing after setting `q = 1`.
    pub fn verify_at_one(&self, max: u32, theorems: &[Theorem]) -> Result<VerificationReport> {
        self.verify_with(max, theorems, true, &|t, m, n, i, j| {
            self.rhs(t, m, n, i, j)
        })
    }

    /// Verification against a caller-supplied right-hand side.
    pub fn verify_with(
        &self,
        max: u32,
        theorems: &[Theorem],
        at_one: bool,
        rhs: &(dyn Fn(Theorem, u32, u32, usize, usize) -> Result<DoubleElement> + Sync),
    ) -> Result<VerificationReport> {
        self.check_degree(max)?;
        let cases = self.case_grid(max, theorems);
        let mut cases = cases
            .into_par_iter()
            .map(|(t, m, n, i, j)| {
                let mut diff = self.lhs(t, m, n, i, j)?.sub(&rhs(t, m, n, i, j)?)?;
                if at_one {
                    diff = diff.eval_at_one();
                }
                let witness = (!diff.is_zero()).then(|| diff.to_string());
                Ok(Case {
                    theorem: t,
                    m,
                    n,
                    i,
                    j,
                    chi: self.lattice.form(i, j)?,
                    witness,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        cases.sort_by_key(Case::sort_key);
        Ok(VerificationReport { cases })
    }

    /// Reads out every `h⁻_{n,j} h⁺_{m,i}` over `(h⁺, h⁻)` and every
    /// `e⁻_{n,j} h⁺_{m,i}` over `(h⁺, e⁻)`, flagging non-integral coefficients.
    pub fn integrality_scan(&self, max: u32) -> Result<VerificationReport> {
        self.check_degree(max)?;
        let cases = self.case_grid(max, &[Theorem::Hh, Theorem::Eh]);
        let mut cases = cases
            .into_par_iter()
            .map(|(t, m, n, i, j)| {
                let (minus, plus) = t.families();
                let readout = self.lhs(t, m, n, i, j)?.readout(plus, minus)?;
                let witness = (!readout.is_integral()).then(|| readout.to_string());
                Ok(Case {
                    theorem: t,
                    m,
                    n,
                    i,
                    j,
                    chi: self.lattice.form(i, j)?,
                    witness,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        cases.sort_by_key(Case::sort_key);
        Ok(VerificationReport { cases })
    }

    fn check_degree(&self, max: u32) -> Result<()> {
        if max > DEFAULT_DEGREE_BOUND {
            return Err(Error::SizeLimit {
                what: "relation degree",
                value: max as usize,
                bound: DEFAULT_DEGREE_BOUND as usize,
            });
        }
        Ok(())
    }

    fn case_grid(&self, max: u32, theorems: &[Theorem]) -> Vec<(Theorem, u32, u32, usize, usize)> {
        let colors = self.colors();
        let mut grid = Vec::new();
        for &t in theorems {
            for m in 0..=max {
                for n in 0..=max {
                    for i in 1..=colors {
                        for j in 1..=colors {
                            grid.push((t, m, n, i, j));
                        }
                    }
                }
            }
        }
        grid
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::quantum_integer;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn rank_one(chi: i64) -> LatticeDouble {
        LatticeDouble::new(LatticeSpec::rank_one(chi)).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(
            relation_coefficients(Theorem::Hh, 1, 1, 2),
            vec![LaurentPoly::one(), lp("q^-1+q")]
        );
        assert_eq!(
            relation_coefficients(Theorem::Hh, 3, 2, 0),
            vec![LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::zero()]
        );
        assert_eq!(
            relation_coefficients(Theorem::Hh, 1, 1, -1),
            vec![LaurentPoly::one(), LaurentPoly::one()]
        );
        assert_eq!(
            relation_coefficients(Theorem::Eh, 2, 2, 1),
            vec![LaurentPoly::one(), LaurentPoly::one(), LaurentPoly::zero()]
        );
        assert_eq!(Theorem::Hh.power_kind(0), PowerKind::Sym);
        assert_eq!(Theorem::Eh.power_kind(0), PowerKind::Ext);
        assert_eq!(Theorem::Hh.power_kind(-1), PowerKind::Ext);
    }

    #[test]
    fn rhs_examples_match_direct_products() {
        let d = rank_one(2);
        let rhs = d.rhs_hh(1, 1, 1, 1).unwrap();
        assert_eq!(rhs, d.lhs(Theorem::Hh, 1, 1, 1, 1).unwrap());
        assert_eq!(rhs.scalar_part(), quantum_integer(2));
        let rhs = d.rhs_eh(1, 1, 1, 1).unwrap();
        assert_eq!(rhs, d.lhs(Theorem::Eh, 1, 1, 1, 1).unwrap());

        let zero = rank_one(0);
        for (m, n) in [(0, 0), (2, 3), (4, 1)] {
            let rhs = zero.rhs_hh(m, n, 1, 1).unwrap();
            assert_eq!(rhs, zero.lhs(Theorem::Hh, m, n, 1, 1).unwrap());
            let plus = SymElement::h_gen(1, m, 1).unwrap();
            let minus = SymElement::h_gen(1, n, 1).unwrap();
            assert_eq!(
                rhs,
                DoubleElement::from_pair(zero.spec().clone(), &plus, &minus).unwrap()
            );
        }

        let neg = rank_one(-1);
        let rhs = neg.rhs_hh(1, 1, 1, 1).unwrap();
        assert_eq!(rhs.scalar_part(), LaurentPoly::one());
        assert_eq!(rhs, neg.lhs(Theorem::Hh, 1, 1, 1, 1).unwrap());

        let one = rank_one(1);
        assert_eq!(
            one.rhs_eh(2, 2, 1, 1).unwrap(),
            one.lhs(Theorem::Eh, 2, 2, 1, 1).unwrap()
        );
    }

    #[test]
    fn rank_one_unit_lattice_passes() {
        let report = rank_one(1).verify(4, &[Theorem::Hh]).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.cases.len(), 25);
    }

    #[test]
    fn rank_two_nonnegative_lattice_passes_all_relations() {
        let d =
            LatticeDouble::new(LatticeSpec::new(vec![vec![2, 0], vec![0, 1]]).unwrap()).unwrap();
        let report = d.verify(3, &Theorem::ALL).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn omega_variants_agree_with_direct_products() {
        for chi in [0, 1, 2, 3] {
            let d = rank_one(chi);
            for (m, n) in [(1, 1), (2, 3), (3, 2)] {
                for t in [Theorem::Ee, Theorem::He] {
                    assert_eq!(
                        d.rhs(t, m, n, 1, 1).unwrap(),
                        d.lhs(t, m, n, 1, 1).unwrap(),
                        "{t} chi={chi}"
                    );
                }
            }
        }
    }

    #[test]
    fn dropped_term_is_caught() {
        let d = rank_one(2);
        let corrupted = |t: Theorem, m: u32, n: u32, i: usize, j: usize| {
            let chi = d.lattice().form(i, j)?;
            let mut coefficients = relation_coefficients(t, m, n, chi);
            if coefficients.len() > 1 {
                coefficients[1] = LaurentPoly::zero();
            }
            d.assemble(t.families(), m, n, i, j, &coefficients)
        };
        let report = d.verify_with(2, &[Theorem::Hh], false, &corrupted).unwrap();
        assert!(!report.passed());
        let failure = report.failures().next().unwrap();
        assert_eq!((failure.m, failure.n), (1, 1));
        assert!(failure.witness.as_deref().unwrap().contains("1#1"));
        // m = 0 or n = 0 has no r = 1 term to drop
        assert!(report
            .cases
            .iter()
            .filter(|c| c.m == 0 || c.n == 0)
            .all(Case::passed));
    }

    #[test]
    fn integrality_examples() {
        for chi in -2..=2 {
            let d = rank_one(chi);
            let report = d.integrality_scan(3).unwrap();
            assert!(report.passed(), "{report}");
            let readout = d
                .lhs(Theorem::Hh, 2, 2, 1, 1)
                .unwrap()
                .readout(Basis::H, Basis::H)
                .unwrap();
            let h1 = "[1]".parse().unwrap();
            assert_eq!(readout.coeff(&h1, &h1), quantum_integer(chi));
        }
        let d = rank_one(0);
        let readout = d
            .lhs(Theorem::Hh, 3, 2, 1, 1)
            .unwrap()
            .readout(Basis::H, Basis::H)
            .unwrap();
        assert_eq!(readout.terms.len(), 1);
        assert!(readout.terms.values().all(LaurentPoly::is_one));
    }

    #[test]
    fn commutator_constants_at_m_equal_n() {
        // m = n = 1: h_1 = p_1, so the relation is the power-sum commutator
        for chi in -3..=3 {
            let d = rank_one(chi);
            let lhs = d.lhs(Theorem::Hh, 1, 1, 1, 1).unwrap();
            assert_eq!(lhs.scalar_part(), quantum_integer(chi));
        }
    }

    #[test]
    fn report_display() {
        let report = rank_one(1).verify(1, &[Theorem::Eh]).unwrap();
        let text = report.to_string();
        assert!(text.starts_with("rel"));
        assert!(text.ends_with("4 cases, 0 failed"));
        assert!(rank_one(1).verify(17, &[Theorem::Hh]).is_err());
    }
}
