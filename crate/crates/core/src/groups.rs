//! Finite permutation groups, their actions on labeled sets, orbits,
//! stabilizers and the weighted orbit-counting identity.
//!
//! Groups are stored by their full element list. Every cardinality the
//! orbifold formulas consume (`|G|`, `|G_p|`, `|G_γ|`) is then a plain length.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{q, Q};

/// Default upper bound on the number of group elements.
pub const DEFAULT_GROUP_CAP: usize = 10_080;

/// Environment variable overriding [`DEFAULT_GROUP_CAP`].
pub const GROUP_CAP_ENV: &str = "ORBIMORSE_GROUP_CAP";

/// The group-size cap, honoring the [`GROUP_CAP_ENV`] override when it parses.
pub fn group_cap() -> usize {
    std::env::var(GROUP_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_GROUP_CAP)
}

/// A permutation of `{0, .., degree-1}` stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::MalformedPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree).collect())
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(Error::MalformedPermutation(format!("cycles {cycles:?} on degree {degree}")));
                }
                touched[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite permutation group with its full element table.
///
/// Element `0` is always the identity. Groups built by [`generate_group`]
/// also remember a breadth-first spanning tree of the Cayley graph, which is
/// how actions given on generators get extended to every element.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
    generators: Vec<Perm>,
    // element i = elements[parent] ∘ generators[gen]
    tree: Vec<Option<(usize, usize)>>,
}

/// Closure of `generators` under composition.
///
/// Elements are listed breadth-first from the identity; each new level is
/// sorted lexicographically, so the order is reproducible.
pub fn generate_group(degree: usize, generators: &[Perm], cap: usize) -> Result<FiniteGroup> {
    for g in generators {
        if g.degree() != degree {
            return Err(Error::MalformedPermutation(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
    }
    let identity = Perm::identity(degree);
    let mut elements = vec![identity.clone()];
    let mut lookup = HashMap::from([(identity, 0usize)]);
    let mut tree = vec![None];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut discovered: HashMap<Perm, (usize, usize)> = HashMap::new();
        for &e in &frontier {
            for (gi, g) in generators.iter().enumerate() {
                let prod = elements[e].compose(g);
                if !lookup.contains_key(&prod) {
                    discovered.entry(prod).or_insert((e, gi));
                }
            }
        }
        let mut level: Vec<(Perm, (usize, usize))> = discovered.into_iter().collect();
        level.sort_by(|a, b| a.0.cmp(&b.0));
        frontier.clear();
        for (perm, parent) in level {
            if elements.len() >= cap {
                return Err(Error::ClosureExceedsCap { cap });
            }
            lookup.insert(perm.clone(), elements.len());
            frontier.push(elements.len());
            elements.push(perm);
            tree.push(Some(parent));
        }
    }
    Ok(FiniteGroup {
        degree,
        elements,
        lookup,
        generators: generators.to_vec(),
        tree,
    })
}

impl FiniteGroup {
    pub fn trivial(degree: usize) -> FiniteGroup {
        generate_group(degree, &[], 1).expect("trivial group")
    }

    /// Wraps a known-closed element list (identity first) without a
    /// generating set; used for subgroups.
    fn from_closed(degree: usize, elements: Vec<Perm>) -> FiniteGroup {
        let lookup = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let tree = vec![None; elements.len()];
        FiniteGroup {
            degree,
            elements,
            lookup,
            generators: Vec::new(),
            tree,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let prod = self.elements[a].compose(&self.elements[b]);
        self.lookup[&prod]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.lookup[&self.elements[a].inverse()]
    }

    /// Spanning-tree edge that produced element `i`, if any.
    pub fn tree_edge(&self, i: usize) -> Option<(usize, usize)> {
        self.tree[i]
    }

    /// Checks closure under composition and inverses.
    pub fn is_closed(&self) -> bool {
        if !self.elements.first().is_some_and(Perm::is_identity) {
            return false;
        }
        self.elements.iter().all(|a| {
            self.lookup.contains_key(&a.inverse())
                && self.elements.iter().all(|b| self.lookup.contains_key(&a.compose(b)))
        })
    }
}

/// Where the action law `image(g·h, x) = image(g, image(h, x))` (or the
/// identity law) breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionLawViolation {
    pub g: usize,
    pub h: usize,
    pub point: usize,
}

/// An action of a finite group on a finite labeled set.
#[derive(Debug, Clone)]
pub struct GroupAction {
    group: Arc<FiniteGroup>,
    points: Vec<String>,
    lookup: HashMap<String, usize>,
    // images[g][x]
    images: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Wraps an explicit action table. Each row must be a permutation of the
    /// points; the homomorphism law is left to [`GroupAction::check_laws`].
    pub fn new(group: Arc<FiniteGroup>, points: Vec<String>, images: Vec<Vec<usize>>) -> Result<GroupAction> {
        if images.len() != group.order() {
            return Err(Error::ShapeMismatch(format!(
                "action table has {} rows for a group of order {}",
                images.len(),
                group.order()
            )));
        }
        for row in &images {
            if row.len() != points.len() {
                return Err(Error::ShapeMismatch(format!(
                    "action row has {} entries for {} points",
                    row.len(),
                    points.len()
                )));
            }
            Perm::new(row.clone())?;
        }
        let mut lookup = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if lookup.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(p.clone()));
            }
        }
        Ok(GroupAction {
            group,
            points,
            lookup,
            images,
        })
    }

    /// Extends an action given on the generators of `group` to every element
    /// along the group's spanning tree.
    pub fn from_generator_images(
        group: Arc<FiniteGroup>,
        points: Vec<String>,
        generator_images: &[Perm],
    ) -> Result<GroupAction> {
        if generator_images.len() != group.generators().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} generator images for {} generators",
                generator_images.len(),
                group.generators().len()
            )));
        }
        for g in generator_images {
            if g.degree() != points.len() {
                return Err(Error::ShapeMismatch(format!(
                    "generator image {g} does not permute {} points",
                    points.len()
                )));
            }
        }
        let mut images: Vec<Vec<usize>> = Vec::with_capacity(group.order());
        for i in 0..group.order() {
            let row = match group.tree_edge(i) {
                None => (0..points.len()).collect(),
                Some((parent, gen)) => {
                    let parent_row: &Vec<usize> = &images[parent];
                    (0..points.len()).map(|x| parent_row[generator_images[gen].apply(x)]).collect()
                }
            };
            images.push(row);
        }
        GroupAction::new(group, points, images)
    }

    /// The defining action of a permutation group on `0..degree`.
    pub fn natural(group: Arc<FiniteGroup>) -> GroupAction {
        let points = (0..group.degree()).map(|i| i.to_string()).collect();
        let images = group.elements().iter().map(|p| p.images().to_vec()).collect();
        GroupAction::new(group, points, images).expect("natural action is well formed")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn point_index(&self, label: &str) -> Result<usize> {
        self.lookup.get(label).copied().ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn image(&self, g: usize, x: usize) -> usize {
        self.images[g][x]
    }

    pub fn row(&self, g: usize) -> &[usize] {
        &self.images[g]
    }

    /// First violation of the identity or composition law, if any.
    pub fn check_laws(&self) -> Option<ActionLawViolation> {
        let n = self.points.len();
        if let Some(x) = (0..n).find(|&x| self.images[0][x] != x) {
            return Some(ActionLawViolation { g: 0, h: 0, point: x });
        }
        for g in 0..self.group.order() {
            for h in 0..self.group.order() {
                let gh = self.group.multiply(g, h);
                if let Some(x) = (0..n).find(|&x| self.images[gh][x] != self.images[g][self.images[h][x]]) {
                    return Some(ActionLawViolation { g, h, point: x });
                }
            }
        }
        None
    }

    fn check_point(&self, x: usize) -> Result<()> {
        if x < self.points.len() {
            Ok(())
        } else {
            Err(Error::UnknownPoint(x.to_string()))
        }
    }

    /// Sorted orbit of `x`.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.images.iter().map(|row| row[x]).collect();
        set.into_iter().collect()
    }

    /// Indices (into the group) of the elements fixing `x`.
    pub fn stabilizer_indices(&self, x: usize) -> Vec<usize> {
        (0..self.group.order()).filter(|&g| self.images[g][x] == x).collect()
    }

    /// The subgroup `{g : g·x = x}` over the same degree.
    pub fn stabilizer(&self, x: usize) -> Result<FiniteGroup> {
        self.check_point(x)?;
        let elements = self
            .stabilizer_indices(x)
            .into_iter()
            .map(|g| self.group.element(g).clone())
            .collect();
        Ok(FiniteGroup::from_closed(self.group.degree(), elements))
    }

    /// Orbit partition: each orbit sorted, orbits ordered by least member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.points.len()];
        let mut out = Vec::new();
        for x in 0..self.points.len() {
            if seen[x] {
                continue;
            }
            let orbit = self.orbit(x);
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Orbit index for every point, numbered as in [`GroupAction::orbits`].
    pub fn orbit_ids(&self) -> Vec<usize> {
        let mut ids = vec![0; self.points.len()];
        for (k, orbit) in self.orbits().iter().enumerate() {
            for &x in orbit {
                ids[x] = k;
            }
        }
        ids
    }

    /// Some `g` with `g·x = y`.
    pub fn transporter(&self, x: usize, y: usize) -> Option<usize> {
        (0..self.group.order()).find(|&g| self.images[g][x] == y)
    }

    /// Exhibits `g` with `g·x = y` and checks `g Stab(x) g⁻¹ = Stab(y)`
    /// element-wise. `None` when `y` is outside the orbit of `x` or the
    /// conjugation fails.
    pub fn conjugating_element(&self, x: usize, y: usize) -> Option<usize> {
        let g = self.transporter(x, y)?;
        let g_inv = self.group.inverse(g);
        let conj: BTreeSet<usize> = self
            .stabilizer_indices(x)
            .into_iter()
            .map(|h| self.group.multiply(self.group.multiply(g, h), g_inv))
            .collect();
        let target: BTreeSet<usize> = self.stabilizer_indices(y).into_iter().collect();
        (conj == target).then_some(g)
    }

    /// `Σ_[x] λ_[x]`; see [`weighted_orbit_count_parts`].
    pub fn weighted_orbit_count(&self, weights: &WeightedSet) -> Result<Q> {
        let parts = weighted_orbit_count_parts(self, weights)?;
        assert_eq!(
            parts.by_orbits, parts.by_stabilizers,
            "weighted orbit count: orbit sum and stabilizer average disagree"
        );
        Ok(parts.by_orbits)
    }
}

/// A weight per point, required to be constant on orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedSet {
    weights: Vec<Q>,
}

impl WeightedSet {
    pub fn per_point(weights: Vec<Q>) -> WeightedSet {
        WeightedSet { weights }
    }

    pub fn constant(len: usize, w: Q) -> WeightedSet {
        WeightedSet { weights: vec![w; len] }
    }

    /// One weight per orbit, orbits numbered as in [`GroupAction::orbits`].
    pub fn per_orbit(action: &GroupAction, orbit_weights: &[Q]) -> Result<WeightedSet> {
        let ids = action.orbit_ids();
        let count = ids.iter().max().map_or(0, |m| m + 1);
        if orbit_weights.len() != count {
            return Err(Error::ShapeMismatch(format!(
                "{} orbit weights for {count} orbits",
                orbit_weights.len()
            )));
        }
        Ok(WeightedSet {
            weights: ids.into_iter().map(|k| orbit_weights[k].clone()).collect(),
        })
    }

    pub fn weight(&self, x: usize) -> &Q {
        &self.weights[x]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// The two evaluations of the weighted orbit count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCountParts {
    /// `Σ` over orbits of the orbit weight.
    pub by_orbits: Q,
    /// `(1/|G|) Σ_x λ_[x] |G_x|`.
    pub by_stabilizers: Q,
}

pub fn weighted_orbit_count_parts(action: &GroupAction, weights: &WeightedSet) -> Result<OrbitCountParts> {
    if weights.len() != action.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} weights for {} points",
            weights.len(),
            action.len()
        )));
    }
    let mut by_orbits = Q::zero();
    for orbit in action.orbits() {
        let w = weights.weight(orbit[0]);
        if let Some(&bad) = orbit.iter().find(|&&y| weights.weight(y) != w) {
            return Err(Error::WeightNotOrbitConstant {
                point: action.label(bad).to_string(),
            });
        }
        by_orbits += w;
    }
    let mut total = Q::zero();
    for x in 0..action.len() {
        let stab = action.stabilizer_indices(x).len() as i64;
        total += weights.weight(x) * q(stab);
    }
    let by_stabilizers = total / q(action.group().order() as i64);
    Ok(OrbitCountParts {
        by_orbits,
        by_stabilizers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_frac;

    fn cyclic(degree: usize, cycle: &[usize]) -> Arc<FiniteGroup> {
        let g = Perm::from_cycles(degree, &[cycle]).unwrap();
        Arc::new(generate_group(degree, &[g], DEFAULT_GROUP_CAP).unwrap())
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn empty_generating_set_is_trivial() {
        let g = generate_group(3, &[], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn involution_generates_order_two() {
        let g = cyclic(2, &[0, 1]);
        assert_eq!(g.order(), 2);
        assert!(g.is_closed());
    }

    /// Brute force: every product of elements of S5 built by repeatedly
    /// multiplying until nothing new appears, independent of the BFS order.
    fn brute_closure(gens: &[Perm], degree: usize) -> BTreeSet<Perm> {
        let mut set: BTreeSet<Perm> = BTreeSet::from([Perm::identity(degree)]);
        set.extend(gens.iter().cloned());
        loop {
            let snapshot: Vec<Perm> = set.iter().cloned().collect();
            let before = set.len();
            for a in &snapshot {
                for b in &snapshot {
                    set.insert(a.compose(b));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    #[test]
    fn five_cycle_and_transposition_give_s5() {
        let gens = [
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1]]).unwrap(),
        ];
        let g = generate_group(5, &gens, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 120);
        let oracle = brute_closure(&gens, 5);
        assert_eq!(oracle.len(), 120);
        let listed: BTreeSet<Perm> = g.elements().iter().cloned().collect();
        assert_eq!(listed, oracle);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [
            Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            Perm::from_cycles(5, &[&[0, 1]]).unwrap(),
        ];
        assert_eq!(
            generate_group(5, &gens, 100).unwrap_err(),
            Error::ClosureExceedsCap { cap: 100 }
        );
    }

    #[test]
    fn element_order_is_deterministic() {
        let gens = [
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 2]]).unwrap(),
        ];
        let a = generate_group(4, &gens, DEFAULT_GROUP_CAP).unwrap();
        let b = generate_group(4, &gens, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(a.elements(), b.elements());
        assert_eq!(a.order(), 8);
    }

    #[test]
    fn malformed_permutations_rejected() {
        assert!(matches!(Perm::new(vec![0, 0]), Err(Error::MalformedPermutation(_))));
        assert!(matches!(Perm::new(vec![2, 0]), Err(Error::MalformedPermutation(_))));
        let g = Perm::new(vec![1, 0]).unwrap();
        assert!(matches!(
            generate_group(3, &[g], DEFAULT_GROUP_CAP),
            Err(Error::MalformedPermutation(_))
        ));
    }

    #[test]
    fn stabilizer_examples() {
        let trivial = Arc::new(FiniteGroup::trivial(2));
        let act = GroupAction::natural(trivial);
        assert_eq!(act.stabilizer(1).unwrap().order(), 1);

        let z2 = cyclic(2, &[0, 1]);
        let act = GroupAction::natural(z2);
        assert_eq!(act.stabilizer(0).unwrap().order(), 1);

        let z2 = cyclic(3, &[0, 1]);
        let act = GroupAction::natural(z2);
        let stab = act.stabilizer(2).unwrap();
        assert_eq!(stab.order(), 2);
        assert!(stab.is_closed());
        assert!(matches!(act.stabilizer(7), Err(Error::UnknownPoint(_))));
    }

    #[test]
    fn orbit_examples() {
        let act = GroupAction::natural(Arc::new(FiniteGroup::trivial(2)));
        assert_eq!(act.orbits(), vec![vec![0], vec![1]]);

        let act = GroupAction::natural(cyclic(2, &[0, 1]));
        assert_eq!(act.orbits(), vec![vec![0, 1]]);

        // heart critical points p,q,r,s with the rotation swapping p and q
        let z2 = cyclic(2, &[0, 1]);
        let swap = Perm::new(vec![1, 0, 2, 3]).unwrap();
        let act = GroupAction::from_generator_images(
            z2,
            ["p", "q", "r", "s"].map(String::from).to_vec(),
            &[swap],
        )
        .unwrap();
        assert_eq!(act.orbits(), vec![vec![0, 1], vec![2], vec![3]]);
        assert!(act.check_laws().is_none());
    }

    #[test]
    fn weighted_count_examples() {
        // Z/2 on six points swapping (1 2) and (3 4), fixing 5 and 6
        let g = Perm::from_cycles(6, &[&[0, 1], &[2, 3]]).unwrap();
        let group = Arc::new(generate_group(6, &[g], DEFAULT_GROUP_CAP).unwrap());
        let act = GroupAction::natural(group);
        assert_eq!(act.orbits().len(), 4);
        let parts = weighted_orbit_count_parts(&act, &WeightedSet::constant(6, q(1))).unwrap();
        assert_eq!(parts.by_orbits, q(4));
        assert_eq!(parts.by_stabilizers, q(4));

        let act = GroupAction::natural(Arc::new(FiniteGroup::trivial(5)));
        assert_eq!(act.weighted_orbit_count(&WeightedSet::constant(5, q(1))).unwrap(), q(5));

        let act = GroupAction::natural(cyclic(2, &[0, 1]));
        let w = WeightedSet::per_orbit(&act, &[q_frac(1, 2)]).unwrap();
        assert_eq!(act.weighted_orbit_count(&w).unwrap(), q_frac(1, 2));
    }

    #[test]
    fn non_constant_weights_rejected() {
        let act = GroupAction::natural(cyclic(2, &[0, 1]));
        let w = WeightedSet::per_point(vec![q(1), q(2)]);
        assert!(matches!(
            act.weighted_orbit_count(&w),
            Err(Error::WeightNotOrbitConstant { .. })
        ));
    }

    #[test]
    fn inconsistent_generator_images_break_the_action_law() {
        // the group is Z/2, but the "action" sends the generator to a 3-cycle
        let z2 = cyclic(2, &[0, 1]);
        let bad = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let act = GroupAction::from_generator_images(z2, labels(3), &[bad]).unwrap();
        assert!(act.check_laws().is_some());
    }

    #[test]
    fn stabilizers_along_an_orbit_are_conjugate() {
        let gens = [
            Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            Perm::from_cycles(4, &[&[1, 3]]).unwrap(),
        ];
        let group = Arc::new(generate_group(4, &gens, DEFAULT_GROUP_CAP).unwrap());
        let act = GroupAction::natural(group);
        for x in 0..4 {
            for y in act.orbit(x) {
                assert!(act.conjugating_element(x, y).is_some());
            }
        }
    }
}
