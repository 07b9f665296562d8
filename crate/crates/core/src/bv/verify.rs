//! Exhaustive identity sweeps over a degree window.

use serde::Serialize;

use super::kernel::{Kernel, Mismatch};
use super::model::BvModel;
use crate::algebra::{Element, Monomial, Window};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    UnitKilled,
    DegreeOne,
    SquareZero,
    Commutativity,
    Antisymmetry,
    Associativity,
    SevenTerm,
    Poisson,
    PoissonRewritten,
    Jacobi,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::UnitKilled,
        Identity::DegreeOne,
        Identity::SquareZero,
        Identity::Commutativity,
        Identity::Antisymmetry,
        Identity::Associativity,
        Identity::SevenTerm,
        Identity::Poisson,
        Identity::PoissonRewritten,
        Identity::Jacobi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::UnitKilled => "B(1) = 0",
            Identity::DegreeOne => "deg B = +1",
            Identity::SquareZero => "B∘B = 0",
            Identity::Commutativity => "graded commutativity",
            Identity::Antisymmetry => "bracket antisymmetry",
            Identity::Associativity => "associativity",
            Identity::SevenTerm => "seven-term relation",
            Identity::Poisson => "Poisson relation",
            Identity::PoissonRewritten => "Poisson relation (right form)",
            Identity::Jacobi => "shifted Jacobi",
        }
    }

    fn arity(self) -> usize {
        match self {
            Identity::UnitKilled => 0,
            Identity::DegreeOne | Identity::SquareZero => 1,
            Identity::Commutativity | Identity::Antisymmetry => 2,
            _ => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    pub counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub model: String,
    pub rule: String,
    pub window: i64,
    pub group_exponent: i64,
    pub basis_size: usize,
    pub identities: Vec<IdentityReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityReport::passed)
    }

    pub fn failures(&self) -> u64 {
        self.identities.iter().map(|r| r.failed).sum()
    }

    pub fn get(&self, id: Identity) -> Option<&IdentityReport> {
        self.identities.iter().find(|r| r.identity == id)
    }
}

/// Which tuples a sweep visits. Indices refer to `basis`.
pub struct Sweep<'m> {
    model: &'m BvModel,
    window: Window,
    basis: Vec<Monomial>,
    pairs: Vec<(usize, usize)>,
    triples: Vec<(usize, usize, usize)>,
    identities: Vec<Identity>,
    stop_at_first: bool,
}

impl<'m> Sweep<'m> {
    /// Every window monomial, and every pair/triple whose total degree stays in the window.
    pub fn exhaustive(model: &'m BvModel, window: Window) -> Self {
        let basis = model.signature().basis_window(&window);
        let degs: Vec<i64> = basis.iter().map(|m| model.signature().degree(m)).collect();
        let n = basis.len();
        let mut pairs = Vec::new();
        let mut triples = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if (degs[i] + degs[j]).abs() > window.degree {
                    continue;
                }
                pairs.push((i, j));
                for k in 0..n {
                    if (degs[i] + degs[j] + degs[k]).abs() <= window.degree {
                        triples.push((i, j, k));
                    }
                }
            }
        }
        Sweep {
            model,
            window,
            basis,
            pairs,
            triples,
            identities: Identity::ALL.to_vec(),
            stop_at_first: false,
        }
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn triples(&self) -> &[(usize, usize, usize)] {
        &self.triples
    }

    pub fn with_pairs(mut self, pairs: Vec<(usize, usize)>) -> Self {
        self.pairs = pairs;
        self
    }

    pub fn with_triples(mut self, triples: Vec<(usize, usize, usize)>) -> Self {
        self.triples = triples;
        self
    }

    pub fn only(mut self, ids: &[Identity]) -> Self {
        self.identities = ids.to_vec();
        self
    }

    /// Abandon each identity after its first counterexample.
    pub fn stop_at_first(mut self, yes: bool) -> Self {
        self.stop_at_first = yes;
        self
    }

    pub fn run(&self) -> Result<VerificationReport> {
        let k = Kernel::new(self.model);
        let ids: Vec<u32> = self.basis.iter().map(|m| k.intern(m)).collect();
        let sig = self.model.signature();
        let mut reports = Vec::new();
        for &identity in &self.identities {
            let mut rep = IdentityReport {
                identity,
                name: identity.name().to_string(),
                checked: 0,
                failed: 0,
                counterexample: None,
            };
            let mut record = |inputs: &[u32], res: Option<Mismatch>| {
                rep.checked += 1;
                if let Some(mm) = res {
                    rep.failed += 1;
                    if rep.counterexample.is_none() {
                        rep.counterexample = Some(Counterexample {
                            inputs: inputs
                                .iter()
                                .map(|&i| sig.format_monomial(&k.monomial(i)))
                                .collect(),
                            lhs: sig.format(&mm.lhs),
                            rhs: sig.format(&mm.rhs),
                        });
                    }
                }
            };
            match identity.arity() {
                0 => {
                    let one = k.intern(&sig.one());
                    let b1 = k.element(&*k.b_id(one)?);
                    let res = (!b1.is_zero()).then(|| Mismatch {
                        lhs: b1,
                        rhs: Element::zero(),
                    });
                    record(&[one], res);
                }
                1 => {
                    for &a in &ids {
                        let res = match identity {
                            Identity::SquareZero => k.square_zero_id(a)?,
                            _ => k.degree_id(a)?,
                        };
                        let failed = res.is_some();
                        record(&[a], res);
                        if failed && self.stop_at_first {
                            break;
                        }
                    }
                }
                2 => {
                    for &(i, j) in &self.pairs {
                        let (a, b) = (ids[i], ids[j]);
                        let res = match identity {
                            Identity::Commutativity => k.commutativity_ids(a, b),
                            _ => k.antisymmetry_ids(a, b)?,
                        };
                        let failed = res.is_some();
                        record(&[a, b], res);
                        if failed && self.stop_at_first {
                            break;
                        }
                    }
                }
                _ => {
                    for &(i, j, l) in &self.triples {
                        let (a, b, c) = (ids[i], ids[j], ids[l]);
                        let res = match identity {
                            Identity::Associativity => k.associativity_ids(a, b, c),
                            Identity::SevenTerm => k.bv7_ids(a, b, c)?,
                            Identity::Poisson => k.poisson_ids(a, b, c)?,
                            Identity::PoissonRewritten => k.poisson_rewritten_ids(a, b, c)?,
                            _ => k.jacobi_ids(a, b, c)?,
                        };
                        let failed = res.is_some();
                        record(&[a, b, c], res);
                        if failed && self.stop_at_first {
                            break;
                        }
                    }
                }
            }
            reports.push(rep);
        }
        Ok(VerificationReport {
            model: self.model.name().to_string(),
            rule: self.model.rule().kind().to_string(),
            window: self.window.degree,
            group_exponent: self.window.group_exponent,
            basis_size: self.basis.len(),
            identities: reports,
        })
    }
}

/// Full exhaustive sweep of every identity.
pub fn verify_axioms(model: &BvModel, window: Window) -> Result<VerificationReport> {
    Sweep::exhaustive(model, window).run()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorComparison {
    pub left: String,
    pub right: String,
    pub checked: usize,
    pub mismatch: Option<Counterexample>,
}

impl OperatorComparison {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// `B_left = B_right` monomial by monomial on the window of two models over one signature.
pub fn compare_operators(
    left: &BvModel,
    right: &BvModel,
    window: &Window,
) -> Result<OperatorComparison> {
    let sig = left.signature();
    if sig.generators() != right.signature().generators() {
        return Err(Error::Signature(format!(
            "`{}` and `{}` are not over the same generators",
            left.name(),
            right.name()
        )));
    }
    let basis = sig.basis_window(window);
    let mut mismatch = None;
    for m in &basis {
        let (l, r) = (left.apply_b_monomial(m)?, right.apply_b_monomial(m)?);
        if l != r {
            mismatch = Some(Counterexample {
                inputs: vec![sig.format_monomial(m)],
                lhs: sig.format(&l),
                rhs: sig.format(&r),
            });
            break;
        }
    }
    Ok(OperatorComparison {
        left: left.name().to_string(),
        right: right.name().to_string(),
        checked: basis.len(),
        mismatch,
    })
}
