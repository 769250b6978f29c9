//! Global-quotient orbifold Morse systems `M/G`.
//!
//! The manifold-level data is the ordinary Morse complex of a `G`-invariant
//! Morse–Smale function together with the action of `G` on critical points
//! and flow lines. Orientations of unstable manifolds enter only through the
//! cocycle `τ(g, p) = ±1` comparing `g·[W⁻(p)]` with the chosen orientation
//! at `g·p`. A critical point is orientable when its isotropy group acts
//! trivially through `τ`; only orientable orbits generate the invariant
//! complex.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::chaincx::{GradedComplex, RationalMatrix};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupAction, Perm};
use crate::intrinsic::{Convention, OrbifoldCritPoint, OrbifoldFlow, OrbifoldMorseSystem};
use crate::rational::{q, q_frac, Q, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CritPoint {
    pub label: String,
    pub index: usize,
    pub value: Option<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub label: String,
    pub src: usize,
    pub dst: usize,
    pub sign: Sign,
}

/// How one generator of `G` acts: on critical points, on flows, and the
/// cocycle value `τ(s, p)` for every critical point `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorAction {
    pub crit: Perm,
    pub flows: Perm,
    pub tau: Vec<Sign>,
}

/// Manifold Morse data with a finite group action and orientation cocycle.
#[derive(Debug, Clone)]
pub struct EquivariantMorseSystem {
    group: Arc<FiniteGroup>,
    ambient_dim: usize,
    crit: Vec<CritPoint>,
    flows: Vec<Flow>,
    point_action: GroupAction,
    flow_action: GroupAction,
    // tau[g][p]
    tau: Vec<Vec<Sign>>,
}

impl EquivariantMorseSystem {
    /// Assembles a system from full tables. Laws are not checked here; see
    /// [`EquivariantMorseSystem::validate`].
    pub fn new(
        group: Arc<FiniteGroup>,
        ambient_dim: usize,
        crit: Vec<CritPoint>,
        flows: Vec<Flow>,
        point_action: GroupAction,
        flow_action: GroupAction,
        tau: Vec<Vec<Sign>>,
    ) -> Result<Self> {
        if point_action.len() != crit.len() || flow_action.len() != flows.len() {
            return Err(Error::ShapeMismatch("actions do not match the critical points and flows".into()));
        }
        if tau.len() != group.order() || tau.iter().any(|row| row.len() != crit.len()) {
            return Err(Error::ShapeMismatch("cocycle table has the wrong shape".into()));
        }
        if flows.iter().any(|f| f.src >= crit.len() || f.dst >= crit.len()) {
            return Err(Error::ShapeMismatch("flow endpoint out of range".into()));
        }
        Ok(EquivariantMorseSystem {
            group,
            ambient_dim,
            crit,
            flows,
            point_action,
            flow_action,
            tau,
        })
    }

    /// Extends generator data to the whole group along its spanning tree,
    /// using `τ(g∘s, p) = τ(g, s·p)·τ(s, p)`.
    pub fn from_generators(
        group: Arc<FiniteGroup>,
        ambient_dim: usize,
        crit: Vec<CritPoint>,
        flows: Vec<Flow>,
        generators: &[GeneratorAction],
    ) -> Result<Self> {
        if generators.len() != group.generators().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} generator actions for {} group generators",
                generators.len(),
                group.generators().len()
            )));
        }
        for g in generators {
            if g.tau.len() != crit.len() {
                return Err(Error::ShapeMismatch(format!(
                    "cocycle row has {} entries for {} critical points",
                    g.tau.len(),
                    crit.len()
                )));
            }
        }
        let crit_perms: Vec<Perm> = generators.iter().map(|g| g.crit.clone()).collect();
        let flow_perms: Vec<Perm> = generators.iter().map(|g| g.flows.clone()).collect();
        let point_action = GroupAction::from_generator_images(
            group.clone(),
            crit.iter().map(|c| c.label.clone()).collect(),
            &crit_perms,
        )?;
        let flow_action = GroupAction::from_generator_images(
            group.clone(),
            flows.iter().map(|f| f.label.clone()).collect(),
            &flow_perms,
        )?;
        let mut tau: Vec<Vec<Sign>> = Vec::with_capacity(group.order());
        for i in 0..group.order() {
            let row = match group.tree_edge(i) {
                None => vec![Sign::Plus; crit.len()],
                Some((parent, s)) => (0..crit.len())
                    .map(|p| tau[parent][generators[s].crit.apply(p)] * generators[s].tau[p])
                    .collect(),
            };
            tau.push(row);
        }
        EquivariantMorseSystem::new(group, ambient_dim, crit, flows, point_action, flow_action, tau)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn crit_points(&self) -> &[CritPoint] {
        &self.crit
    }

    pub fn flows(&self) -> &[Flow] {
        &self.flows
    }

    pub fn point_action(&self) -> &GroupAction {
        &self.point_action
    }

    pub fn flow_action(&self) -> &GroupAction {
        &self.flow_action
    }

    pub fn tau(&self, g: usize, p: usize) -> Sign {
        self.tau[g][p]
    }

    pub fn crit_index(&self, label: &str) -> Result<usize> {
        self.point_action.point_index(label)
    }

    /// Generator data for the group's generating set, read back from the
    /// full tables.
    pub fn generator_actions(&self) -> Vec<GeneratorAction> {
        self.group
            .generators()
            .iter()
            .map(|s| {
                let g = self.group.index_of(s).expect("generators are elements");
                GeneratorAction {
                    crit: Perm::new(self.point_action.row(g).to_vec()).expect("action rows are permutations"),
                    flows: Perm::new(self.flow_action.row(g).to_vec()).expect("action rows are permutations"),
                    tau: self.tau[g].clone(),
                }
            })
            .collect()
    }

    /// The Morse complex of `M` on all critical points.
    pub fn manifold_complex(&self) -> GradedComplex {
        let n = self.ambient_dim;
        let mut pos = vec![0; self.crit.len()];
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); n + 1];
        for (i, c) in self.crit.iter().enumerate() {
            if c.index <= n {
                pos[i] = labels[c.index].len();
                labels[c.index].push(c.label.clone());
            }
        }
        let mut columns: Vec<Vec<Vec<(usize, Q)>>> = labels.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for f in &self.flows {
            let k = self.crit[f.src].index;
            if k == 0 || k > n || self.crit[f.dst].index + 1 != k {
                continue;
            }
            columns[k][pos[f.src]].push((pos[f.dst], f.sign.to_q()));
        }
        let boundaries = (1..=n)
            .map(|k| RationalMatrix::from_columns(labels[k - 1].len(), std::mem::take(&mut columns[k])))
            .collect();
        GradedComplex::new(labels, boundaries).expect("consistent shapes")
    }

    /// Checks every law of an equivariant Morse system and lists each
    /// violation with a concrete witness. Never fails.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let order = self.group.order();
        let n_crit = self.crit.len();

        for (which, action) in [("critical points", &self.point_action), ("flows", &self.flow_action)] {
            if let Some(v) = action.check_laws() {
                violations.push(Violation::ActionLaw {
                    on: which.to_string(),
                    g: v.g,
                    h: v.h,
                    point: action.label(v.point).to_string(),
                });
            }
        }

        for c in &self.crit {
            if c.index > self.ambient_dim {
                violations.push(Violation::IndexOutOfRange { point: c.label.clone() });
            }
        }
        for g in 0..order {
            for p in 0..n_crit {
                let gp = self.point_action.image(g, p);
                if self.crit[gp].index != self.crit[p].index {
                    violations.push(Violation::IndexNotInvariant {
                        g,
                        point: self.crit[p].label.clone(),
                    });
                }
                if self.crit[gp].value != self.crit[p].value {
                    violations.push(Violation::ValueNotInvariant {
                        g,
                        point: self.crit[p].label.clone(),
                    });
                }
            }
        }
        for f in &self.flows {
            if self.crit[f.src].index != self.crit[f.dst].index + 1 {
                violations.push(Violation::FlowIndexGap { flow: f.label.clone() });
            }
        }
        for g in 0..order {
            for (i, f) in self.flows.iter().enumerate() {
                let gf = &self.flows[self.flow_action.image(g, i)];
                if gf.src != self.point_action.image(g, f.src) || gf.dst != self.point_action.image(g, f.dst) {
                    violations.push(Violation::EndpointNotEquivariant {
                        g,
                        flow: f.label.clone(),
                    });
                }
            }
        }

        if self.tau[0].iter().any(|s| !s.is_plus()) {
            violations.push(Violation::CocycleLaw {
                g: 0,
                h: 0,
                point: self.crit[self.tau[0].iter().position(|s| !s.is_plus()).unwrap()].label.clone(),
            });
        }
        'cocycle: for g in 0..order {
            for h in 0..order {
                let gh = self.group.multiply(g, h);
                for p in 0..n_crit {
                    let hp = self.point_action.image(h, p);
                    if self.tau[gh][p] != self.tau[g][hp] * self.tau[h][p] {
                        violations.push(Violation::CocycleLaw {
                            g,
                            h,
                            point: self.crit[p].label.clone(),
                        });
                        break 'cocycle;
                    }
                }
            }
        }

        for g in 0..order {
            for (i, f) in self.flows.iter().enumerate() {
                let gf = &self.flows[self.flow_action.image(g, i)];
                let expected = self.tau[g][f.src] * self.tau[g][f.dst] * f.sign;
                if gf.sign != expected {
                    violations.push(Violation::SignNotEquivariant {
                        g,
                        flow: f.label.clone(),
                        image: gf.label.clone(),
                    });
                }
            }
        }

        let m = self.manifold_complex();
        for k in 2..=m.max_degree() {
            let comp = m.boundary(k - 1).mul(m.boundary(k)).expect("consistent shapes");
            if let Some((row, col, value)) = comp.first_nonzero() {
                violations.push(Violation::ManifoldDSquared {
                    from: m.labels(k)[col].clone(),
                    to: m.labels(k - 2)[row].clone(),
                    value,
                });
            }
        }

        ValidationReport {
            violations,
            self_indexing: self.is_self_indexing(),
        }
    }

    /// Every critical point has a Morse value equal to its index.
    pub fn is_self_indexing(&self) -> bool {
        self.crit.iter().all(|c| c.value.as_ref() == Some(&q(c.index as i64)))
    }

    /// One entry per orbit of critical points, ordered by least member.
    pub fn classify(&self) -> Vec<CriticalOrbit> {
        self.point_action
            .orbits()
            .into_iter()
            .map(|members| {
                let rep = members[0];
                let stab = self.point_action.stabilizer_indices(rep);
                let reversing = stab.iter().filter(|&&g| !self.tau[g][rep].is_plus()).count();
                CriticalOrbit {
                    index: self.crit[rep].index,
                    iso_order: stab.len(),
                    orientable: reversing == 0,
                    reversing,
                    members,
                }
            })
            .collect()
    }

    /// Flips the orientation of `W⁻(p)` wherever `flips[p]` is minus:
    /// `τ'(g,p) = c(g·p)·τ(g,p)·c(p)` and `ε'(γ) = c(src)·c(dst)·ε(γ)`.
    pub fn regauge(&self, flips: &[Sign]) -> Result<EquivariantMorseSystem> {
        if flips.len() != self.crit.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} gauge flips for {} critical points",
                flips.len(),
                self.crit.len()
            )));
        }
        let tau = (0..self.group.order())
            .map(|g| {
                (0..self.crit.len())
                    .map(|p| flips[self.point_action.image(g, p)] * self.tau[g][p] * flips[p])
                    .collect()
            })
            .collect();
        let flows = self
            .flows
            .iter()
            .map(|f| Flow {
                sign: flips[f.src] * flips[f.dst] * f.sign,
                ..f.clone()
            })
            .collect();
        Ok(EquivariantMorseSystem {
            tau,
            flows,
            ..self.clone()
        })
    }

    /// Gauge flips transporting the orientation of each orientable orbit's
    /// least member to the rest of the orbit; non-orientable orbits are left
    /// alone.
    pub fn invariant_gauge_flips(&self) -> Result<Vec<Sign>> {
        let mut flips = vec![Sign::Plus; self.crit.len()];
        for orbit in self.classify() {
            if !orbit.orientable {
                continue;
            }
            let rep = orbit.members[0];
            let mut assigned = vec![None; self.crit.len()];
            for g in 0..self.group.order() {
                let target = self.point_action.image(g, rep);
                let c = self.tau[g][rep];
                match assigned[target] {
                    None => assigned[target] = Some(c),
                    Some(prev) if prev != c => {
                        return Err(Error::GaugeFailure(self.crit[rep].label.clone()));
                    }
                    Some(_) => {}
                }
            }
            for &m in &orbit.members {
                flips[m] = assigned[m].expect("orbit members are reached");
            }
        }
        Ok(flips)
    }

    /// The same system re-gauged so that `τ ≡ +1` on orientable orbits.
    pub fn with_invariant_gauge(&self) -> Result<EquivariantMorseSystem> {
        let flips = self.invariant_gauge_flips()?;
        let s = self.regauge(&flips)?;
        for orbit in s.classify().iter().filter(|o| o.orientable) {
            for &p in &orbit.members {
                if (0..s.group.order()).any(|g| !s.tau[g][p].is_plus()) {
                    return Err(Error::GaugeFailure(s.crit[p].label.clone()));
                }
            }
        }
        Ok(s)
    }

    /// Coefficient of every critical point in `∂(Σ_{p ∈ members} p)`.
    fn orbit_boundary(&self, members: &[usize]) -> BTreeMap<usize, Q> {
        let mut chain: BTreeMap<usize, Q> = BTreeMap::new();
        for f in self.flows.iter().filter(|f| members.contains(&f.src)) {
            *chain.entry(f.dst).or_insert_with(Q::zero) += f.sign.to_q();
        }
        chain
    }

    /// `∂[p̄]` in the manifold complex under an invariant gauge, as
    /// coefficients at every critical point some flow from `p̄` reaches,
    /// zeros included.
    pub fn invariant_orbit_boundary(&self, p: usize) -> Result<BTreeMap<usize, Q>> {
        let s = self.with_invariant_gauge()?;
        Ok(s.orbit_boundary(&s.point_action.orbit(p)))
    }

    /// The invariant subcomplex on generators `[p̄] = Σ_{p ∈ p̄} p`, one per
    /// orientable orbit, computed in the manifold complex under an invariant
    /// gauge. Checks that the boundary of every `[p̄]` vanishes at
    /// non-orientable points and is constant along orbits.
    pub fn invariant_boundary(&self) -> Result<GradedComplex> {
        let s = self.with_invariant_gauge()?;
        let orbits = s.classify();
        let n = s.ambient_dim;
        let mut orbit_of = vec![0; s.crit.len()];
        for (k, o) in orbits.iter().enumerate() {
            for &m in &o.members {
                orbit_of[m] = k;
            }
        }
        let mut pos = vec![None; orbits.len()];
        let mut labels: Vec<Vec<String>> = vec![Vec::new(); n + 1];
        for (k, o) in orbits.iter().enumerate() {
            if o.orientable && o.index <= n {
                pos[k] = Some(labels[o.index].len());
                labels[o.index].push(s.crit[o.members[0]].label.clone());
            }
        }
        let mut columns: Vec<Vec<Vec<(usize, Q)>>> = labels.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for (k, o) in orbits.iter().enumerate() {
            let Some(col) = pos[k] else { continue };
            let chain = s.orbit_boundary(&o.members);
            let orbit_label = s.crit[o.members[0]].label.clone();
            for (&pt, value) in &chain {
                if !orbits[orbit_of[pt]].orientable && !value.is_zero() {
                    return Err(Error::CancellationFailure {
                        orbit: orbit_label,
                        point: s.crit[pt].label.clone(),
                        value: value.to_string(),
                    });
                }
            }
            let mut per_orbit: BTreeMap<usize, (usize, Q)> = BTreeMap::new();
            for &pt in (0..s.crit.len()).collect::<Vec<_>>().iter() {
                if !orbits[orbit_of[pt]].orientable {
                    continue;
                }
                let value = chain.get(&pt).cloned().unwrap_or_else(Q::zero);
                match per_orbit.get(&orbit_of[pt]) {
                    None => {
                        per_orbit.insert(orbit_of[pt], (pt, value));
                    }
                    Some((first, v)) if *v != value => {
                        return Err(Error::InvarianceFailure {
                            orbit: orbit_label,
                            first: s.crit[*first].label.clone(),
                            first_value: v.to_string(),
                            second: s.crit[pt].label.clone(),
                            second_value: value.to_string(),
                        });
                    }
                    Some(_) => {}
                }
            }
            if o.index == 0 {
                continue;
            }
            for (target, (_, value)) in per_orbit {
                if orbits[target].index + 1 == o.index && !value.is_zero() {
                    let row = pos[target].expect("orientable orbits have positions");
                    columns[o.index][col].push((row, value));
                }
            }
        }
        let boundaries = (1..=n)
            .map(|k| RationalMatrix::from_columns(labels[k - 1].len(), std::mem::take(&mut columns[k])))
            .collect();
        GradedComplex::new(labels, boundaries)
    }

    /// The intrinsic orbit-space system: orientable orbits with `|G_p|`,
    /// non-orientable orbits kept flagged, flow orbits between orientable
    /// orbits with `|G_γ|` and the (orbit-constant) sign under an invariant
    /// gauge. Labels are those of least members.
    pub fn derive_intrinsic(&self) -> Result<OrbifoldMorseSystem> {
        let s = self.with_invariant_gauge()?;
        let orbits = s.classify();
        let mut orbit_of = vec![0; s.crit.len()];
        for (k, o) in orbits.iter().enumerate() {
            for &m in &o.members {
                orbit_of[m] = k;
            }
        }
        let crit: Vec<OrbifoldCritPoint> = orbits
            .iter()
            .map(|o| OrbifoldCritPoint {
                label: s.crit[o.members[0]].label.clone(),
                index: o.index,
                iso_order: o.iso_order as u64,
                orientable: o.orientable,
            })
            .collect();
        let mut flows = Vec::new();
        for members in s.flow_action.orbits() {
            let rep = &s.flows[members[0]];
            let (src, dst) = (orbit_of[rep.src], orbit_of[rep.dst]);
            if !orbits[src].orientable || !orbits[dst].orientable {
                continue;
            }
            if let Some(&bad) = members.iter().find(|&&m| s.flows[m].sign != rep.sign) {
                return Err(Error::SignNotOrbitConstant(s.flows[bad].label.clone()));
            }
            flows.push(OrbifoldFlow {
                label: rep.label.clone(),
                src,
                dst,
                iso_order: s.flow_action.stabilizer_indices(members[0]).len() as u64,
                sign: rep.sign,
            });
        }
        OrbifoldMorseSystem::new(s.ambient_dim, crit, flows)
    }

    /// The weighted count of broken trajectories `p̄ → q̄ → r̄` seen from one
    /// lift `q` of `q̄`:
    /// `(1/|G_q|)·Σ_{(γ,δ) ∈ Γ×Δ} ε(γ)ε(δ)`, with `Γ` the flows from `p̄`
    /// into `q` and `Δ` the flows from `q` into `r̄`, under an invariant
    /// gauge. Arguments are critical-point indices naming their orbits.
    ///
    /// The value is recomputed at every lift of `q̄` and compared with the
    /// orbit-space formula `Σ ν_q̄(γ̄)ν_q̄(δ̄)/|G_q̄|` when `q̄` is orientable,
    /// where `ν_q̄ = ε·|G_q̄|/|G_flow|` for flows into and out of `q̄`, or
    /// with zero when it is not.
    pub fn broken_weight(&self, p: usize, mid: usize, r: usize) -> Result<BrokenWeight> {
        let (ip, iq, ir) = (self.crit[p].index, self.crit[mid].index, self.crit[r].index);
        if ip != iq + 1 || iq != ir + 1 {
            return Err(Error::IndexMismatch(format!(
                "broken weight needs indices k, k-1, k-2; got {ip}, {iq}, {ir}"
            )));
        }
        let s = self.with_invariant_gauge()?;
        let orbits = s.classify();
        let orbit_of_point = |x: usize| orbits.iter().position(|o| o.members.contains(&x)).expect("every point has an orbit");
        let (op, oq, or) = (orbit_of_point(p), orbit_of_point(mid), orbit_of_point(r));
        for o in [op, or] {
            if !orbits[o].orientable {
                return Err(Error::NotOrientable(s.crit[orbits[o].members[0]].label.clone()));
            }
        }
        let p_members = &orbits[op].members;
        let r_members = &orbits[or].members;
        let at = |qpt: usize| -> Q {
            let gamma: i64 = s
                .flows
                .iter()
                .filter(|f| f.dst == qpt && p_members.contains(&f.src))
                .map(|f| f.sign.to_i64())
                .sum();
            let delta: i64 = s
                .flows
                .iter()
                .filter(|f| f.src == qpt && r_members.contains(&f.dst))
                .map(|f| f.sign.to_i64())
                .sum();
            q_frac(gamma * delta, s.point_action.stabilizer_indices(qpt).len() as i64)
        };
        let q_members = &orbits[oq].members;
        let value = at(q_members[0]);
        for &other in &q_members[1..] {
            let v = at(other);
            if v != value {
                return Err(Error::BrokenWeightMismatch(format!(
                    "value {value} at `{}` but {v} at `{}`",
                    s.crit[q_members[0]].label,
                    s.crit[other].label
                )));
            }
        }
        let orientable_mid = orbits[oq].orientable;
        let via_orbits = if orientable_mid {
            let intrinsic = s.derive_intrinsic()?;
            // ν_q̄ weighs both flows at q̄: the target of γ̄, the source of δ̄
            let (at_dst, at_src) = (Convention::Plus, Convention::Minus);
            let mut total = Q::zero();
            for g in intrinsic.flows().iter().filter(|f| f.src == op && f.dst == oq) {
                for d in intrinsic.flows().iter().filter(|f| f.src == oq && f.dst == or) {
                    total += intrinsic.flow_weight(g, at_dst) * intrinsic.flow_weight(d, at_src);
                }
            }
            total / q(orbits[oq].iso_order as i64)
        } else {
            Q::zero()
        };
        if via_orbits != value {
            return Err(Error::BrokenWeightMismatch(format!(
                "lift count {value} but orbit formula {via_orbits} through `{}`",
                s.crit[q_members[0]].label
            )));
        }
        Ok(BrokenWeight {
            value,
            via_orbits,
            orientable_mid,
        })
    }

    /// `Σ_q̄ ω(p̄, q̄, r̄)` over every orbit `q̄` of index one below `p̄`,
    /// orientable or not.
    pub fn broken_weight_total(&self, p: usize, r: usize) -> Result<Q> {
        let target = self.crit[p].index;
        let mut total = Q::zero();
        for o in self.classify() {
            if o.index + 1 == target {
                total += self.broken_weight(p, o.members[0], r)?.value;
            }
        }
        Ok(total)
    }

    /// Every admissible `(p̄, q̄, r̄)` triple of orbit representatives.
    pub fn broken_triples(&self) -> Vec<(usize, usize, usize)> {
        let orbits = self.classify();
        let mut out = Vec::new();
        for a in orbits.iter().filter(|o| o.orientable && o.index >= 2) {
            for b in orbits.iter().filter(|o| o.index + 1 == a.index) {
                for c in orbits.iter().filter(|o| o.orientable && o.index + 2 == a.index) {
                    out.push((a.members[0], b.members[0], c.members[0]));
                }
            }
        }
        out
    }
}

/// A critical orbit with its isotropy order and orientability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalOrbit {
    pub members: Vec<usize>,
    pub index: usize,
    /// `|G_p|` for any member.
    pub iso_order: usize,
    pub orientable: bool,
    /// Number of isotropy elements reversing `W⁻(p)` at the least member.
    pub reversing: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrokenWeight {
    /// Lift count at a representative.
    pub value: Q,
    /// Orbit-space formula, or zero for a non-orientable middle point.
    pub via_orbits: Q,
    pub orientable_mid: bool,
}

/// A violated law of an equivariant Morse system with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ActionLaw { on: String, g: usize, h: usize, point: String },
    IndexOutOfRange { point: String },
    IndexNotInvariant { g: usize, point: String },
    ValueNotInvariant { g: usize, point: String },
    FlowIndexGap { flow: String },
    EndpointNotEquivariant { g: usize, flow: String },
    CocycleLaw { g: usize, h: usize, point: String },
    SignNotEquivariant { g: usize, flow: String, image: String },
    ManifoldDSquared { from: String, to: String, value: Q },
}

impl Violation {
    pub fn law(&self) -> &'static str {
        match self {
            Violation::ActionLaw { .. } => "action-law",
            Violation::IndexOutOfRange { .. } => "index-range",
            Violation::IndexNotInvariant { .. } => "index-invariance",
            Violation::ValueNotInvariant { .. } => "value-invariance",
            Violation::FlowIndexGap { .. } => "flow-index-gap",
            Violation::EndpointNotEquivariant { .. } => "endpoint-equivariance",
            Violation::CocycleLaw { .. } => "cocycle",
            Violation::SignNotEquivariant { .. } => "sign-equivariance",
            Violation::ManifoldDSquared { .. } => "manifold-d-squared",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ActionLaw { on, g, h, point } => {
                write!(f, "action on {on} breaks the composition law at g={g}, h={h}, x={point}")
            }
            Violation::IndexOutOfRange { point } => write!(f, "index of {point} exceeds the ambient dimension"),
            Violation::IndexNotInvariant { g, point } => write!(f, "g={g} changes the index of {point}"),
            Violation::ValueNotInvariant { g, point } => write!(f, "g={g} changes the Morse value of {point}"),
            Violation::FlowIndexGap { flow } => write!(f, "flow {flow} does not drop the index by one"),
            Violation::EndpointNotEquivariant { g, flow } => {
                write!(f, "g={g} does not carry the endpoints of {flow} to those of its image")
            }
            Violation::CocycleLaw { g, h, point } => write!(f, "tau(gh,p) != tau(g,hp) tau(h,p) at g={g}, h={h}, p={point}"),
            Violation::SignNotEquivariant { g, flow, image } => {
                write!(f, "eps({image}) != tau(g,src) tau(g,dst) eps({flow}) at g={g}")
            }
            Violation::ManifoldDSquared { from, to, value } => {
                write!(f, "manifold d^2 has coefficient {value} from {from} to {to}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub self_indexing: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law() == law)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::betti;
    use crate::groups::{generate_group, DEFAULT_GROUP_CAP};

    fn cp(label: &str, index: usize) -> CritPoint {
        CritPoint {
            label: label.into(),
            index,
            value: Some(q(index as i64)),
        }
    }

    fn fl(label: &str, src: usize, dst: usize, sign: Sign) -> Flow {
        Flow {
            label: label.into(),
            src,
            dst,
            sign,
        }
    }

    use Sign::{Minus, Plus};

    /// Heart sphere: maxima p, q swapped by a half-turn about the axis through
    /// the saddle r and the minimum s.
    pub(crate) fn heart_with(tau_r: Sign, eps_pr: Sign) -> EquivariantMorseSystem {
        let z2 = Arc::new(generate_group(2, &[Perm::new(vec![1, 0]).unwrap()], DEFAULT_GROUP_CAP).unwrap());
        let crit = vec![cp("p", 2), cp("q", 2), cp("r", 1), cp("s", 0)];
        let flows = vec![
            fl("pr", 0, 2, eps_pr),
            fl("qr", 1, 2, Minus),
            fl("rs1", 2, 3, Plus),
            fl("rs2", 2, 3, Minus),
        ];
        let gen = GeneratorAction {
            crit: Perm::new(vec![1, 0, 2, 3]).unwrap(),
            flows: Perm::new(vec![1, 0, 3, 2]).unwrap(),
            tau: vec![Plus, Plus, tau_r, Plus],
        };
        EquivariantMorseSystem::from_generators(z2, 2, crit, flows, &[gen]).unwrap()
    }

    fn heart() -> EquivariantMorseSystem {
        heart_with(Minus, Plus)
    }

    fn trivial_sphere() -> EquivariantMorseSystem {
        let g = Arc::new(FiniteGroup::trivial(1));
        EquivariantMorseSystem::from_generators(g, 2, vec![cp("n", 2), cp("s", 0)], vec![], &[]).unwrap()
    }

    fn football(p: usize) -> EquivariantMorseSystem {
        let rot = Perm::from_cycles(p, &[&(0..p).collect::<Vec<_>>()]).unwrap();
        let g = Arc::new(generate_group(p, &[rot], DEFAULT_GROUP_CAP).unwrap());
        let gen = GeneratorAction {
            crit: Perm::identity(2),
            flows: Perm::identity(0),
            tau: vec![Plus, Plus],
        };
        EquivariantMorseSystem::from_generators(g, 2, vec![cp("N", 2), cp("S", 0)], vec![], &[gen]).unwrap()
    }

    #[test]
    fn heart_validates() {
        let r = heart().validate();
        assert!(r.is_valid(), "{:?}", r.violations);
        assert!(r.self_indexing);
    }

    #[test]
    fn flipped_sign_breaks_equivariance() {
        let r = heart_with(Minus, Minus).validate();
        assert!(r.has("sign-equivariance"));
        assert!(!r.has("manifold-d-squared"));
    }

    #[test]
    fn orientation_preserving_saddle_breaks_equivariance_only() {
        let s = heart_with(Plus, Plus);
        let r = s.validate();
        // exhaustive oracle over all (g, γ)
        let mut oracle = Vec::new();
        for g in 0..s.group().order() {
            for (i, f) in s.flows().iter().enumerate() {
                let gf = &s.flows()[s.flow_action().image(g, i)];
                if gf.sign != s.tau(g, f.src) * s.tau(g, f.dst) * f.sign {
                    oracle.push(f.label.clone());
                }
            }
        }
        assert_eq!(oracle, vec!["pr", "qr", "rs1", "rs2"]);
        let witnessed: Vec<String> = r
            .violations
            .iter()
            .filter_map(|v| match v {
                Violation::SignNotEquivariant { flow, .. } => Some(flow.clone()),
                _ => None,
            })
            .collect();
        assert_eq!(witnessed, oracle);
        assert!(!r.has("manifold-d-squared"));
    }

    #[test]
    fn heart_classification() {
        let orbits = heart().classify();
        let summary: Vec<(Vec<usize>, usize, usize, bool)> = orbits
            .iter()
            .map(|o| (o.members.clone(), o.index, o.iso_order, o.orientable))
            .collect();
        assert_eq!(
            summary,
            vec![
                (vec![0, 1], 2, 1, true),
                (vec![2], 1, 2, false),
                (vec![3], 0, 2, true)
            ]
        );
    }

    #[test]
    fn trivial_and_football_classification() {
        assert!(trivial_sphere().classify().iter().all(|o| o.orientable && o.members.len() == 1));
        for p in [2, 3, 5] {
            let orbits = football(p).classify();
            assert_eq!(orbits.len(), 2);
            assert!(orbits.iter().all(|o| o.orientable && o.iso_order == p));
        }
    }

    #[test]
    fn heart_invariant_boundary_cancels_at_saddle() {
        let h = heart();
        let chain = h.orbit_boundary(&[0, 1]);
        assert_eq!(chain.get(&2), Some(&q(0)));
        let c = h.invariant_boundary().unwrap();
        assert_eq!(c.dims(), vec![1, 0, 1]);
        assert_eq!(betti(&c).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn trivial_group_invariant_boundary_is_manifold_complex() {
        let s = trivial_sphere();
        assert_eq!(s.invariant_boundary().unwrap(), s.manifold_complex());
    }

    #[test]
    fn heart_derivation() {
        let i = heart().derive_intrinsic().unwrap();
        let pts: Vec<(String, usize, u64, bool)> = i
            .crit_points()
            .iter()
            .map(|c| (c.label.clone(), c.index, c.iso_order, c.orientable))
            .collect();
        assert_eq!(
            pts,
            vec![
                ("p".to_string(), 2, 1, true),
                ("r".to_string(), 1, 2, false),
                ("s".to_string(), 0, 2, true)
            ]
        );
        assert!(i.flows().is_empty());
    }

    #[test]
    fn football_derivation() {
        for p in [2u64, 3, 5] {
            let i = football(p as usize).derive_intrinsic().unwrap();
            assert!(i.crit_points().iter().all(|c| c.iso_order == p && c.orientable));
            assert!(i.flows().is_empty());
        }
    }

    #[test]
    fn heart_broken_weight_vanishes_at_saddle() {
        let h = heart();
        // oracle: Γ = {pr:+1, qr:-1}, Δ = {rs1:+1, rs2:-1}, |G_r| = 2
        let mut sum = 0i64;
        for a in [1i64, -1] {
            for b in [1i64, -1] {
                sum += a * b;
            }
        }
        assert_eq!(sum, 0);
        let w = h.broken_weight(0, 2, 3).unwrap();
        assert_eq!(w.value, q(0));
        assert!(!w.orientable_mid);
        assert_eq!(h.broken_weight_total(0, 3).unwrap(), q(0));
        assert!(matches!(h.broken_weight(0, 3, 2), Err(Error::IndexMismatch(_))));
    }

    #[test]
    fn classical_cancellation_three_levels() {
        let g = Arc::new(FiniteGroup::trivial(1));
        let s = EquivariantMorseSystem::from_generators(
            g,
            2,
            vec![cp("p", 2), cp("q", 1), cp("r", 0)],
            vec![fl("a", 0, 1, Plus), fl("b", 1, 2, Plus), fl("c", 1, 2, Minus)],
            &[],
        )
        .unwrap();
        let w = s.broken_weight(0, 1, 2).unwrap();
        assert_eq!(w.value, q(0));
        assert_eq!(w.via_orbits, q(0));
    }

    #[test]
    fn regauge_is_involutive_and_preserves_validity() {
        let h = heart();
        let flips = vec![Minus, Plus, Minus, Plus];
        let g = h.regauge(&flips).unwrap();
        assert!(g.validate().is_valid());
        let back = g.regauge(&flips).unwrap();
        assert_eq!(back.flows(), h.flows());
        assert_eq!(betti(&g.invariant_boundary().unwrap()).unwrap(), vec![1, 0, 1]);
    }
}
