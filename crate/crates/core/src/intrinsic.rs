//! The intrinsic orbifold Morse–Smale–Witten complex.
//!
//! Critical points and flow lines live in the orbit space and carry only
//! the order of their isotropy group. A flow `γ̄ : p̄ → q̄` contributes
//! `ν_q̄(γ̄) = ε(γ̄)·|G_q̄|/|G_γ̄|` to `∂₊`, and `ε(γ̄)·|G_p̄|/|G_γ̄|` to the
//! alternative operator `∂₋`. The diagonal scaling `ψ(p̄) = |G_p̄|·p̄`
//! intertwines the two.

use std::collections::HashMap;

use num_traits::Zero;

use crate::chaincx::{ChainMap, GradedComplex, RationalMatrix, Verdict};
use crate::error::{Error, Result};
use crate::rational::{q, q_frac, Q, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldCritPoint {
    pub label: String,
    pub index: usize,
    /// `|G_p̄|`.
    pub iso_order: u64,
    pub orientable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldFlow {
    pub label: String,
    pub src: usize,
    pub dst: usize,
    /// `|G_γ̄|`.
    pub iso_order: u64,
    pub sign: Sign,
}

/// Which boundary operator to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Weights `|G_q̄|/|G_γ̄|` at the target.
    Plus,
    /// Weights `|G_p̄|/|G_γ̄|` at the source.
    Minus,
}

/// Orbit-space Morse data: critical points with isotropy orders and
/// orientability flags, flow lines with isotropy orders and signs.
///
/// Non-orientable critical points may be kept for provenance. They never
/// become generators and no flow may touch them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldMorseSystem {
    ambient_dim: usize,
    crit: Vec<OrbifoldCritPoint>,
    flows: Vec<OrbifoldFlow>,
}

impl OrbifoldMorseSystem {
    pub fn new(ambient_dim: usize, crit: Vec<OrbifoldCritPoint>, flows: Vec<OrbifoldFlow>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, c) in crit.iter().enumerate() {
            if seen.insert(c.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(c.label.clone()));
            }
            if c.index > ambient_dim {
                return Err(Error::IndexOutOfRange {
                    label: c.label.clone(),
                    index: c.index,
                    dim: ambient_dim,
                });
            }
            if c.iso_order == 0 {
                return Err(Error::InvalidSystem(format!("`{}` has isotropy order 0", c.label)));
            }
        }
        let mut flow_labels = HashMap::new();
        for f in &flows {
            if flow_labels.insert(f.label.clone(), ()).is_some() {
                return Err(Error::DuplicateLabel(f.label.clone()));
            }
            if f.src >= crit.len() || f.dst >= crit.len() {
                return Err(Error::InvalidSystem(format!("flow `{}` has an endpoint out of range", f.label)));
            }
            if f.iso_order == 0 {
                return Err(Error::InvalidSystem(format!("flow `{}` has isotropy order 0", f.label)));
            }
            let (src, dst) = (&crit[f.src], &crit[f.dst]);
            if !src.orientable || !dst.orientable {
                return Err(Error::FlowTouchesNonOrientable(f.label.clone()));
            }
            if src.index != dst.index + 1 {
                return Err(Error::IndexMismatch(format!(
                    "flow `{}` goes from index {} to index {}",
                    f.label, src.index, dst.index
                )));
            }
            for end in [src, dst] {
                if end.iso_order % f.iso_order != 0 {
                    return Err(Error::DivisibilityViolation {
                        flow: f.label.clone(),
                        flow_order: f.iso_order,
                        endpoint: end.label.clone(),
                        endpoint_order: end.iso_order,
                    });
                }
            }
        }
        Ok(OrbifoldMorseSystem {
            ambient_dim,
            crit,
            flows,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn crit_points(&self) -> &[OrbifoldCritPoint] {
        &self.crit
    }

    pub fn flows(&self) -> &[OrbifoldFlow] {
        &self.flows
    }

    pub fn crit_index(&self, label: &str) -> Option<usize> {
        self.crit.iter().position(|c| c.label == label)
    }

    /// Orientable critical points of each index, in listing order.
    pub fn generators(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.ambient_dim + 1];
        for (i, c) in self.crit.iter().enumerate() {
            if c.orientable {
                out[c.index].push(i);
            }
        }
        out
    }

    /// `(degree, position)` of each orientable critical point in its degree.
    fn positions(&self) -> Vec<Option<usize>> {
        let mut pos = vec![None; self.crit.len()];
        for gens in self.generators() {
            for (k, &i) in gens.iter().enumerate() {
                pos[i] = Some(k);
            }
        }
        pos
    }

    /// Weight of one flow under the given convention.
    pub fn flow_weight(&self, f: &OrbifoldFlow, convention: Convention) -> Q {
        let end = match convention {
            Convention::Plus => &self.crit[f.dst],
            Convention::Minus => &self.crit[f.src],
        };
        f.sign.to_q() * q_frac(end.iso_order as i64, f.iso_order as i64)
    }

    /// `n(p̄, q̄) = Σ_{γ̄: p̄→q̄} ε(γ̄)|G_q̄|/|G_γ̄|` (plus) or the source-weighted
    /// analogue (minus).
    pub fn coefficient(&self, p: usize, target: usize, convention: Convention) -> Q {
        self.flows
            .iter()
            .filter(|f| f.src == p && f.dst == target)
            .map(|f| self.flow_weight(f, convention))
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn complex(&self, convention: Convention) -> GradedComplex {
        let gens = self.generators();
        let pos = self.positions();
        let labels: Vec<Vec<String>> = gens
            .iter()
            .map(|g| g.iter().map(|&i| self.crit[i].label.clone()).collect())
            .collect();
        let mut columns: Vec<Vec<Vec<(usize, Q)>>> = gens.iter().map(|g| vec![Vec::new(); g.len()]).collect();
        for f in &self.flows {
            let k = self.crit[f.src].index;
            let col = pos[f.src].expect("flow sources are orientable");
            let row = pos[f.dst].expect("flow targets are orientable");
            columns[k][col].push((row, self.flow_weight(f, convention)));
        }
        let boundaries = (1..=self.ambient_dim)
            .map(|k| RationalMatrix::from_columns(gens[k - 1].len(), std::mem::take(&mut columns[k])))
            .collect();
        GradedComplex::new(labels, boundaries).expect("generator shapes are consistent")
    }

    /// Complex with boundary `∂₊`.
    pub fn boundary_plus(&self) -> GradedComplex {
        self.complex(Convention::Plus)
    }

    /// Complex with boundary `∂₋`.
    pub fn boundary_minus(&self) -> GradedComplex {
        self.complex(Convention::Minus)
    }

    /// `ψ : (C, ∂₋) → (C, ∂₊)`, `p̄ ↦ |G_p̄|·p̄`.
    pub fn psi(&self) -> ChainMap {
        let maps = self
            .generators()
            .iter()
            .map(|g| RationalMatrix::diagonal(&g.iter().map(|&i| q(self.crit[i].iso_order as i64)).collect::<Vec<_>>()))
            .collect();
        ChainMap::new(self.boundary_minus(), self.boundary_plus(), maps).expect("diagonal maps fit")
    }

    /// `∂² = 0` for both conventions, with a witness pair on failure.
    pub fn verify_d_squared(&self) -> DSquaredReport {
        DSquaredReport {
            plus: self.d_squared(Convention::Plus),
            minus: self.d_squared(Convention::Minus),
        }
    }

    fn d_squared(&self, convention: Convention) -> Verdict<DSquaredWitness> {
        let c = self.complex(convention);
        let gens = self.generators();
        for k in 2..=self.ambient_dim {
            let comp = c.boundary(k - 1).mul(c.boundary(k)).expect("consistent shapes");
            if let Some((row, col, value)) = comp.first_nonzero() {
                return Verdict::Fails(DSquaredWitness {
                    from: self.crit[gens[k][col]].label.clone(),
                    to: self.crit[gens[k - 2][row]].label.clone(),
                    value,
                });
            }
        }
        Verdict::Holds
    }

    /// The system for `−f̄` in dimension `n`: indices become `n − index`,
    /// flows reverse, isotropy orders and signs are kept as they are.
    pub fn reverse(&self, n: usize) -> Result<OrbifoldMorseSystem> {
        let crit = self
            .crit
            .iter()
            .map(|c| {
                if c.index > n {
                    return Err(Error::IndexOutOfRange {
                        label: c.label.clone(),
                        index: c.index,
                        dim: n,
                    });
                }
                Ok(OrbifoldCritPoint {
                    index: n - c.index,
                    ..c.clone()
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let flows = self
            .flows
            .iter()
            .map(|f| OrbifoldFlow {
                src: f.dst,
                dst: f.src,
                ..f.clone()
            })
            .collect();
        OrbifoldMorseSystem::new(n, crit, flows)
    }

    /// Pairing weights `⟨p̄, p̄⟩` for the given convention: `1/|G_p̄|` pairs
    /// `∂₊` with the `∂₊` of `−f̄`, `|G_p̄|` pairs the `∂₋` operators.
    pub fn pairing_form(&self, convention: Convention) -> PairingForm {
        let diagonal = self
            .crit
            .iter()
            .map(|c| match convention {
                Convention::Plus => q_frac(1, c.iso_order as i64),
                Convention::Minus => q(c.iso_order as i64),
            })
            .collect();
        PairingForm { diagonal }
    }

    /// Checks `⟨∂p̄, q̄⟩ = ⟨p̄, ∂'q̄⟩` for every pair of orientable critical
    /// points of adjacent index, where `∂'` is the same convention's
    /// operator for `−f̄` in dimension `n`. For the plus convention both sides
    /// must also equal `Σ_γ̄ ε(γ̄)/|G_γ̄|`.
    pub fn pairing_check(&self, n: usize) -> Result<PairingReport> {
        let reversed = self.reverse(n)?;
        let mut entries = Vec::new();
        for convention in [Convention::Plus, Convention::Minus] {
            let form = self.pairing_form(convention);
            for (p, cp) in self.crit.iter().enumerate() {
                if !cp.orientable || cp.index == 0 {
                    continue;
                }
                for (t, ct) in self.crit.iter().enumerate() {
                    if !ct.orientable || ct.index + 1 != cp.index {
                        continue;
                    }
                    let lhs = self.coefficient(p, t, convention) * form.weight(t);
                    let rhs = reversed.coefficient(t, p, convention) * form.weight(p);
                    let direct = match convention {
                        Convention::Plus => Some(
                            self.flows
                                .iter()
                                .filter(|f| f.src == p && f.dst == t)
                                .map(|f| f.sign.to_q() * q_frac(1, f.iso_order as i64))
                                .fold(Q::zero(), |a, b| a + b),
                        ),
                        Convention::Minus => None,
                    };
                    entries.push(PairingEntry {
                        convention,
                        from: cp.label.clone(),
                        to: ct.label.clone(),
                        lhs,
                        rhs,
                        direct,
                    });
                }
            }
        }
        Ok(PairingReport { entries })
    }

    /// Multiplies every critical-point isotropy order by `c`, keeping flow
    /// isotropy orders.
    pub fn scale_point_isotropy(&self, c: u64) -> Result<OrbifoldMorseSystem> {
        let crit = self
            .crit
            .iter()
            .map(|p| OrbifoldCritPoint {
                iso_order: p.iso_order * c,
                ..p.clone()
            })
            .collect();
        OrbifoldMorseSystem::new(self.ambient_dim, crit, self.flows.clone())
    }
}

/// A pair `(p̄, r̄)` with `∂²` nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSquaredWitness {
    pub from: String,
    pub to: String,
    pub value: Q,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSquaredReport {
    pub plus: Verdict<DSquaredWitness>,
    pub minus: Verdict<DSquaredWitness>,
}

impl DSquaredReport {
    pub fn holds(&self) -> bool {
        self.plus.holds() && self.minus.holds()
    }
}

/// Diagonal inner product on the orbifold chain groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingForm {
    diagonal: Vec<Q>,
}

impl PairingForm {
    pub fn weight(&self, p: usize) -> &Q {
        &self.diagonal[p]
    }

    pub fn is_positive(&self) -> bool {
        self.diagonal.iter().all(|w| *w > Q::zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingEntry {
    pub convention: Convention,
    pub from: String,
    pub to: String,
    pub lhs: Q,
    pub rhs: Q,
    pub direct: Option<Q>,
}

impl PairingEntry {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.direct.as_ref().is_none_or(|d| *d == self.lhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingReport {
    pub entries: Vec<PairingEntry>,
}

impl PairingReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(PairingEntry::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairingEntry> {
        self.entries.iter().filter(|e| !e.holds())
    }
}
