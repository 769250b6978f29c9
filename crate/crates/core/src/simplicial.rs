//! Finite simplicial complexes with a simplicial group action: barycentric
//! subdivision, regularity, quotients, relative and invariant homology.
//!
//! Simplices are sorted lists of vertex indices and are oriented by that
//! order. A group element acts on an oriented simplex with the sign of the
//! permutation that re-sorts the image vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::chaincx::{betti, GradedComplex, RationalMatrix};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupAction};
use crate::quotient::EquivariantMorseSystem;
use crate::rational::{q, q_frac};

pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    // simplices[k] sorted lexicographically
    simplices: Vec<Vec<Simplex>>,
    lookup: HashMap<Simplex, usize>,
}

fn label_list(labels: &[String], s: &[usize]) -> String {
    s.iter().map(|&v| labels[v].as_str()).collect::<Vec<_>>().join(" ")
}

impl SimplicialComplex {
    /// The smallest complex containing the given simplices and all their
    /// faces.
    pub fn from_maximal(vertices: Vec<String>, maximal: &[Vec<usize>]) -> Result<SimplicialComplex> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            if s.is_empty() {
                return Err(Error::ShapeMismatch("empty simplex".into()));
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::ShapeMismatch(format!("repeated vertex in simplex {s:?}")));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::ShapeMismatch(format!("vertex {v} out of range")));
            }
            if all.contains(&s) {
                continue;
            }
            let n = s.len();
            for mask in 1u64..(1u64 << n) {
                let face: Simplex = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert(face);
            }
        }
        Ok(SimplicialComplex::from_closed(vertices, all))
    }

    fn from_closed(vertices: Vec<String>, all: BTreeSet<Simplex>) -> SimplicialComplex {
        let top = all.iter().map(|s| s.len()).max().unwrap_or(1);
        let mut simplices: Vec<Vec<Simplex>> = vec![Vec::new(); top];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        let mut lookup = HashMap::new();
        for level in &simplices {
            for (i, s) in level.iter().enumerate() {
                lookup.insert(s.clone(), i);
            }
        }
        SimplicialComplex {
            vertices,
            simplices,
            lookup,
        }
    }

    /// Reads simplices by vertex label.
    pub fn from_labels(vertices: Vec<String>, maximal: &[Vec<String>]) -> Result<SimplicialComplex> {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut out = Vec::with_capacity(maximal.len());
        for s in maximal {
            let mut ids = Vec::with_capacity(s.len());
            for v in s {
                ids.push(*index.get(v.as_str()).ok_or_else(|| Error::UnknownLabel {
                    label: v.clone(),
                    context: "simplex".into(),
                })?);
            }
            out.push(ids);
        }
        SimplicialComplex::from_maximal(vertices, &out)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Top dimension; 0 for a complex with no simplices.
    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    /// `(#vertices, #edges, ...)`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(|l| l.len()).collect()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.lookup.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.lookup.contains_key(s)
    }

    pub fn simplex_label(&self, s: &[usize]) -> String {
        label_list(&self.vertices, s)
    }

    /// Maximal simplices, by dimension then lexicographically.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut cofaces = BTreeSet::new();
        for level in self.simplices.iter().skip(1) {
            for s in level {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    cofaces.insert(f);
                }
            }
        }
        self.simplices
            .iter()
            .flatten()
            .filter(|s| !cofaces.contains(*s))
            .cloned()
            .collect()
    }

    fn check_subcomplex(&self, l: &SimplicialComplex) -> Result<()> {
        if l.vertices != self.vertices {
            return Err(Error::NotASubcomplex("vertex sets differ".into()));
        }
        if let Some(s) = l.simplices.iter().flatten().find(|s| !self.contains(s)) {
            return Err(Error::NotASubcomplex(format!("simplex [{}] is not in the complex", l.simplex_label(s))));
        }
        Ok(())
    }

    /// A subcomplex on the same vertex list, closed under faces.
    pub fn subcomplex(&self, maximal: &[Vec<usize>]) -> Result<SimplicialComplex> {
        let l = SimplicialComplex::from_maximal(self.vertices.clone(), maximal)?;
        self.check_subcomplex(&l)?;
        Ok(l)
    }

    /// The empty subcomplex on the same vertices.
    pub fn empty_subcomplex(&self) -> SimplicialComplex {
        SimplicialComplex::from_closed(self.vertices.clone(), BTreeSet::new())
    }

    /// Simplicial chain complex of `(K, L)`; with `L = None` the absolute one.
    pub fn chain_complex(&self, l: Option<&SimplicialComplex>) -> Result<GradedComplex> {
        if let Some(l) = l {
            self.check_subcomplex(l)?;
        }
        let keep = |s: &Simplex| l.is_none_or(|l| !l.contains(s));
        let n = self.dim();
        let mut basis: Vec<Vec<&Simplex>> = Vec::with_capacity(n + 1);
        let mut pos: Vec<HashMap<&Simplex, usize>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let b: Vec<&Simplex> = self.simplices(k).iter().filter(|s| keep(s)).collect();
            pos.push(b.iter().enumerate().map(|(i, s)| (*s, i)).collect());
            basis.push(b);
        }
        let mut boundaries = Vec::with_capacity(n);
        for k in 1..=n {
            let columns = basis[k]
                .iter()
                .map(|s| {
                    (0..s.len())
                        .filter_map(|i| {
                            let mut f = (*s).clone();
                            f.remove(i);
                            pos[k - 1].get(&f).map(|&r| (r, q(if i % 2 == 0 { 1 } else { -1 })))
                        })
                        .collect()
                })
                .collect();
            boundaries.push(RationalMatrix::from_columns(basis[k - 1].len(), columns));
        }
        let labels = basis
            .iter()
            .map(|b| b.iter().map(|s| self.simplex_label(s)).collect())
            .collect();
        GradedComplex::new(labels, boundaries)
    }

    /// Barycentric subdivision. Vertex `i` of the result is the barycenter of
    /// `barycenters()[i]`; simplices are flags ordered by increasing
    /// dimension.
    pub fn barycentric_subdivide(&self) -> Subdivision {
        let mut ids: HashMap<&Simplex, usize> = HashMap::new();
        let mut carriers = Vec::new();
        let mut labels = Vec::new();
        for level in &self.simplices {
            for s in level {
                ids.insert(s, carriers.len());
                carriers.push(s.clone());
                labels.push(if s.len() == 1 {
                    self.vertices[s[0]].clone()
                } else {
                    format!("{{{}}}", s.iter().map(|&v| self.vertices[v].as_str()).collect::<Vec<_>>().join(","))
                });
            }
        }
        // flags ending at each simplex, built up by dimension
        let mut flags: Vec<Vec<Simplex>> = vec![Vec::new(); carriers.len()];
        let mut all = BTreeSet::new();
        for (id, s) in carriers.iter().enumerate() {
            let mut mine = vec![vec![id]];
            if s.len() > 1 {
                let mut faces = BTreeSet::new();
                let n = s.len();
                for mask in 1u64..(1u64 << n) - 1 {
                    let face: Simplex = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                    faces.insert(ids[&face]);
                }
                for f in faces {
                    for chain in &flags[f] {
                        let mut c = chain.clone();
                        c.push(id);
                        mine.push(c);
                    }
                }
            }
            all.extend(mine.iter().cloned());
            flags[id] = mine;
        }
        Subdivision {
            complex: SimplicialComplex::from_closed(labels, all),
            carriers,
        }
    }
}

/// A barycentric subdivision together with the simplex of the original
/// complex each new vertex is the barycenter of.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub carriers: Vec<Simplex>,
}

impl Subdivision {
    /// The subdivision of a subcomplex `L` of the original complex: flags
    /// lying in `L`.
    pub fn subdivide_subcomplex(&self, l: &SimplicialComplex) -> SimplicialComplex {
        let in_l: Vec<bool> = self.carriers.iter().map(|c| l.contains(c)).collect();
        let all = self
            .complex
            .simplices
            .iter()
            .flatten()
            .filter(|s| s.iter().all(|&v| in_l[v]))
            .cloned()
            .collect();
        SimplicialComplex::from_closed(self.complex.vertices.clone(), all)
    }
}

/// Sorted image of `s` and the sign of the sorting permutation.
fn signed_image(row: &[usize], s: &[usize]) -> (Simplex, i64) {
    let mut img: Vec<usize> = s.iter().map(|&v| row[v]).collect();
    let mut sign = 1;
    for i in 0..img.len() {
        for j in i + 1..img.len() {
            if img[i] > img[j] {
                sign = -sign;
            }
        }
    }
    img.sort_unstable();
    (img, sign)
}

/// A simplicial complex with a simplicial action of a finite group on its
/// vertices, optionally with an invariant subcomplex `L`.
#[derive(Debug, Clone)]
pub struct GSimplicialComplex {
    complex: SimplicialComplex,
    action: GroupAction,
    sub: Option<SimplicialComplex>,
}

impl GSimplicialComplex {
    pub fn new(complex: SimplicialComplex, action: GroupAction) -> Result<GSimplicialComplex> {
        if action.points() != complex.vertices() {
            return Err(Error::ShapeMismatch("action points differ from the vertices".into()));
        }
        if let Some(v) = action.check_laws() {
            return Err(Error::ActionNotSimplicial(format!(
                "vertex action breaks the composition law at g={}, h={}",
                v.g, v.h
            )));
        }
        for g in 0..action.group().order() {
            for s in complex.simplices.iter().flatten() {
                let (img, _) = signed_image(action.row(g), s);
                if !complex.contains(&img) {
                    return Err(Error::ActionNotSimplicial(format!(
                        "g={g} sends [{}] to [{}], which is not a simplex",
                        complex.simplex_label(s),
                        complex.simplex_label(&img)
                    )));
                }
            }
        }
        Ok(GSimplicialComplex {
            complex,
            action,
            sub: None,
        })
    }

    /// Attaches an invariant subcomplex `L`.
    pub fn with_subcomplex(mut self, l: SimplicialComplex) -> Result<GSimplicialComplex> {
        self.complex.check_subcomplex(&l)?;
        for g in 0..self.group().order() {
            for s in l.simplices.iter().flatten() {
                let (img, _) = signed_image(self.action.row(g), s);
                if !l.contains(&img) {
                    return Err(Error::NotASubcomplex(format!(
                        "g={g} moves [{}] out of the subcomplex",
                        l.simplex_label(s)
                    )));
                }
            }
        }
        self.sub = Some(l);
        Ok(self)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.action.group()
    }

    pub fn subcomplex(&self) -> Option<&SimplicialComplex> {
        self.sub.as_ref()
    }

    /// `g·σ` as an index in the same dimension, with the orientation sign.
    pub fn act(&self, g: usize, k: usize, i: usize) -> (usize, i64) {
        let (img, sign) = signed_image(self.action.row(g), &self.complex.simplices[k][i]);
        (self.complex.lookup[&img], sign)
    }

    /// Subdivision with the action extended to barycenters.
    pub fn barycentric_subdivide(&self) -> GSimplicialComplex {
        let sd = self.complex.barycentric_subdivide();
        let ids: HashMap<&Simplex, usize> = sd.carriers.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let images = (0..self.group().order())
            .map(|g| {
                sd.carriers
                    .iter()
                    .map(|c| ids[&signed_image(self.action.row(g), c).0])
                    .collect()
            })
            .collect();
        let action = GroupAction::new(self.group().clone(), sd.complex.vertices.clone(), images)
            .expect("induced action on barycenters is well formed");
        let sub = self.sub.as_ref().map(|l| sd.subdivide_subcomplex(l));
        GSimplicialComplex {
            complex: sd.complex,
            action,
            sub,
        }
    }

    /// Two barycentric subdivisions, after which the action is regular.
    pub fn regularized(&self) -> GSimplicialComplex {
        self.barycentric_subdivide().barycentric_subdivide()
    }

    /// Every element fixing a simplex setwise fixes it vertex-wise.
    pub fn is_regular(&self) -> bool {
        self.regularity_witness().is_none()
    }

    fn regularity_witness(&self) -> Option<(usize, Simplex)> {
        for g in 0..self.group().order() {
            let row = self.action.row(g);
            for s in self.complex.simplices.iter().flatten() {
                let (img, _) = signed_image(row, s);
                if img == *s && s.iter().any(|&v| row[v] != v) {
                    return Some((g, s.clone()));
                }
            }
        }
        None
    }

    /// The orbit complex `K/G` on vertex orbits.
    pub fn quotient(&self) -> Result<QuotientComplex> {
        if let Some((g, s)) = self.regularity_witness() {
            return Err(Error::NotRegular(format!(
                "g={g} fixes [{}] setwise but not vertex-wise",
                self.complex.simplex_label(&s)
            )));
        }
        let vertex_orbits = self.action.orbits();
        let orbit_id = self.action.orbit_ids();
        let labels: Vec<String> = vertex_orbits.iter().map(|o| self.complex.vertices[o[0]].clone()).collect();
        let mut image_of: Vec<Vec<Simplex>> = Vec::with_capacity(self.complex.simplices.len());
        let mut rep_of: BTreeMap<Simplex, (usize, usize)> = BTreeMap::new();
        for (k, level) in self.complex.simplices.iter().enumerate() {
            let mut images = Vec::with_capacity(level.len());
            for (i, s) in level.iter().enumerate() {
                let mut img: Simplex = s.iter().map(|&v| orbit_id[v]).collect();
                img.sort_unstable();
                if img.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::DegenerateQuotient(format!(
                        "[{}] has two vertices in one orbit",
                        self.complex.simplex_label(s)
                    )));
                }
                match rep_of.get(&img) {
                    None => {
                        rep_of.insert(img.clone(), (k, i));
                    }
                    Some(&(_, r)) => {
                        let same_orbit = (0..self.group().order()).any(|g| self.act(g, k, i).0 == r);
                        if !same_orbit {
                            return Err(Error::DegenerateQuotient(format!(
                                "[{}] and [{}] span the same vertex orbits but lie in different orbits",
                                self.complex.simplex_label(&level[r]),
                                self.complex.simplex_label(s)
                            )));
                        }
                    }
                }
                images.push(img);
            }
            image_of.push(images);
        }
        let all: BTreeSet<Simplex> = rep_of.keys().cloned().collect();
        let complex = SimplicialComplex::from_closed(labels, all);
        let mut representative: Vec<Vec<usize>> = complex.simplices.iter().map(|l| vec![0; l.len()]).collect();
        for (img, (k, i)) in &rep_of {
            representative[*k][complex.lookup[img]] = *i;
        }
        let sub = self.sub.as_ref().map(|l| {
            let all = l
                .simplices
                .iter()
                .flatten()
                .map(|s| {
                    let k = s.len() - 1;
                    image_of[k][self.complex.lookup[s]].clone()
                })
                .collect();
            SimplicialComplex::from_closed(complex.vertices.clone(), all)
        });
        Ok(QuotientComplex {
            complex,
            sub,
            representative,
            image_of,
        })
    }

    /// The averaged chain map `P = (1/|G|)·Σ g_#` on `C_k(K, L)`.
    fn averaged_projector(&self, k: usize, basis: &[usize], pos: &HashMap<usize, usize>) -> RationalMatrix {
        let order = self.group().order();
        let columns = basis
            .iter()
            .map(|&i| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for g in 0..order {
                    let (j, sign) = self.act(g, k, i);
                    *acc.entry(pos[&j]).or_insert(0) += sign;
                }
                acc.into_iter()
                    .filter(|&(_, c)| c != 0)
                    .map(|(r, c)| (r, q_frac(c, order as i64)))
                    .collect()
            })
            .collect();
        RationalMatrix::from_columns(basis.len(), columns)
    }

    /// Betti numbers of the invariant part `H_*(K, L)^G`, from the averaged
    /// projector `P`, which is a chain map and idempotent:
    /// `dim H_k^G = rank P_k − rank ∂_k P_k − rank P_{k−1} ∂_k` at the next
    /// degree.
    pub fn invariant_homology(&self) -> Result<Vec<usize>> {
        let c = self.complex.chain_complex(self.sub.as_ref())?;
        let n = self.complex.dim();
        let mut projectors = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let basis: Vec<usize> = (0..self.complex.count(k))
                .filter(|&i| self.sub.as_ref().is_none_or(|l| !l.contains(&self.complex.simplices[k][i])))
                .collect();
            let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            projectors.push(self.averaged_projector(k, &basis, &pos));
        }
        let rank_p: Vec<usize> = projectors.iter().map(|p| p.rank()).collect();
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let outgoing = if k >= 1 {
                c.boundary(k).mul(&projectors[k])?.rank()
            } else {
                0
            };
            let incoming = if k < n {
                projectors[k].mul(c.boundary(k + 1))?.rank()
            } else {
                0
            };
            out.push(rank_p[k] - outgoing - incoming);
        }
        Ok(out)
    }

    /// The `g`-component of the induced chain map on `C_*(K, L)`.
    pub fn chain_action(&self, g: usize) -> Result<Vec<RationalMatrix>> {
        let n = self.complex.dim();
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let basis: Vec<usize> = (0..self.complex.count(k))
                .filter(|&i| self.sub.as_ref().is_none_or(|l| !l.contains(&self.complex.simplices[k][i])))
                .collect();
            let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(a, &b)| (b, a)).collect();
            let columns = basis
                .iter()
                .map(|&i| {
                    let (j, sign) = self.act(g, k, i);
                    vec![(pos[&j], q(sign))]
                })
                .collect();
            out.push(RationalMatrix::from_columns(basis.len(), columns));
        }
        Ok(out)
    }
}

/// `K/G` with the induced `L/G`, and provenance both ways.
#[derive(Debug, Clone)]
pub struct QuotientComplex {
    pub complex: SimplicialComplex,
    pub sub: Option<SimplicialComplex>,
    /// `representative[k][i]`: index in `K` of the least simplex of orbit `i`.
    pub representative: Vec<Vec<usize>>,
    /// `image_of[k][i]`: the quotient simplex of simplex `i` of `K`.
    pub image_of: Vec<Vec<Simplex>>,
}

impl QuotientComplex {
    pub fn homology(&self) -> Result<Vec<usize>> {
        homology(&self.complex, self.sub.as_ref())
    }
}

/// Betti numbers of `H_*(K, L; ℚ)`, one per degree `0..=dim K`.
pub fn homology(k: &SimplicialComplex, l: Option<&SimplicialComplex>) -> Result<Vec<usize>> {
    betti(&k.chain_complex(l)?)
}

/// Both sides of the comparison between the invariant Morse complex of a
/// global quotient and the simplicial homology of a triangulated quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub morse: Vec<usize>,
    pub quotient: Vec<usize>,
    pub invariant: Vec<usize>,
}

impl Comparison {
    /// Equality after padding the shorter vector with zeros.
    pub fn agrees(&self) -> bool {
        let n = self.morse.len().max(self.quotient.len());
        let pad = |v: &[usize]| {
            let mut v = v.to_vec();
            v.resize(n, 0);
            v
        };
        pad(&self.morse) == pad(&self.quotient)
    }
}

pub fn compare(system: &EquivariantMorseSystem, k: &GSimplicialComplex) -> Result<Comparison> {
    Ok(Comparison {
        morse: betti(&system.invariant_boundary()?)?,
        quotient: k.quotient()?.homology()?,
        invariant: k.invariant_homology()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{generate_group, Perm, DEFAULT_GROUP_CAP};

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    fn cyclic_action(n: usize, perm: Perm) -> GroupAction {
        let g = Arc::new(generate_group(n, std::slice::from_ref(&perm), DEFAULT_GROUP_CAP).unwrap());
        GroupAction::from_generator_images(g, names(n), &[perm]).unwrap()
    }

    fn octahedron() -> SimplicialComplex {
        // 0,1 poles; 2..6 equator
        let mut tris = Vec::new();
        for i in 0..4 {
            let (a, b) = (2 + i, 2 + (i + 1) % 4);
            tris.push(vec![0, a, b]);
            tris.push(vec![1, a, b]);
        }
        SimplicialComplex::from_maximal(names(6), &tris).unwrap()
    }

    fn cone_disc(m: usize) -> (SimplicialComplex, SimplicialComplex) {
        let tris: Vec<Vec<usize>> = (0..m).map(|i| vec![0, 1 + i, 1 + (i + 1) % m]).collect();
        let k = SimplicialComplex::from_maximal(names(m + 1), &tris).unwrap();
        let edges: Vec<Vec<usize>> = (0..m).map(|i| vec![1 + i, 1 + (i + 1) % m]).collect();
        let l = k.subcomplex(&edges).unwrap();
        (k, l)
    }

    #[test]
    fn subdivision_counts() {
        let edge = SimplicialComplex::from_maximal(names(2), &[vec![0, 1]]).unwrap();
        assert_eq!(edge.barycentric_subdivide().complex.f_vector(), vec![3, 2]);
        let tri = SimplicialComplex::from_maximal(names(3), &[vec![0, 1, 2]]).unwrap();
        assert_eq!(tri.barycentric_subdivide().complex.f_vector(), vec![7, 12, 6]);
        let tet = SimplicialComplex::from_maximal(names(4), &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(tet.barycentric_subdivide().complex.count(3), 24);
    }

    #[test]
    fn sphere_and_disc_homology() {
        assert_eq!(homology(&octahedron(), None).unwrap(), vec![1, 0, 1]);
        let (k, l) = cone_disc(5);
        assert_eq!(homology(&k, None).unwrap(), vec![1, 0, 0]);
        assert_eq!(homology(&k, Some(&l)).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn foreign_subcomplex_is_rejected() {
        let (k, _) = cone_disc(4);
        let other = SimplicialComplex::from_maximal(names(5), &[vec![1, 3]]).unwrap();
        assert!(matches!(homology(&k, Some(&other)), Err(Error::NotASubcomplex(_))));
    }

    #[test]
    fn edge_swap_regularity() {
        let edge = SimplicialComplex::from_maximal(names(2), &[vec![0, 1]]).unwrap();
        let gk = GSimplicialComplex::new(edge.clone(), cyclic_action(2, Perm::new(vec![1, 0]).unwrap())).unwrap();
        assert!(!gk.is_regular());
        assert!(matches!(gk.quotient(), Err(Error::NotRegular(_))));
        let once = gk.barycentric_subdivide();
        assert!(once.is_regular());
        let qc = once.quotient().unwrap();
        assert_eq!(qc.complex.f_vector(), vec![2, 1]);
        let twice = gk.regularized();
        assert!(twice.is_regular());
        let qc = twice.quotient().unwrap();
        assert_eq!(qc.complex.f_vector(), vec![3, 2]);
        assert_eq!(qc.homology().unwrap(), vec![1, 0]);
    }

    #[test]
    fn antipodal_square_boundary_subdivision_stays_simplicial() {
        let square = SimplicialComplex::from_maximal(names(4), &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let gk = GSimplicialComplex::new(square, cyclic_action(4, Perm::new(vec![2, 3, 0, 1]).unwrap())).unwrap();
        let sd = gk.barycentric_subdivide();
        for g in 0..sd.group().order() {
            let row = sd.action().row(g);
            for e in sd.complex().simplices(1) {
                let mut img = vec![row[e[0]], row[e[1]]];
                img.sort_unstable();
                assert!(sd.complex().contains(&img));
            }
        }
        assert_eq!(sd.quotient().unwrap().homology().unwrap(), vec![1, 1]);
    }

    #[test]
    fn trivial_action_quotient_is_isomorphic() {
        let k = octahedron();
        let g = Arc::new(FiniteGroup::trivial(6));
        let gk = GSimplicialComplex::new(k.clone(), GroupAction::new(g, names(6), vec![(0..6).collect()]).unwrap()).unwrap();
        let qc = gk.quotient().unwrap();
        assert_eq!(qc.complex.f_vector(), k.f_vector());
        assert_eq!(gk.invariant_homology().unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn non_simplicial_action_is_rejected() {
        let path = SimplicialComplex::from_maximal(names(3), &[vec![0, 1], vec![1, 2]]).unwrap();
        let err = GSimplicialComplex::new(path, cyclic_action(3, Perm::new(vec![1, 0, 2]).unwrap())).unwrap_err();
        assert!(matches!(err, Error::ActionNotSimplicial(_)));
    }

    #[test]
    fn half_turn_on_octahedron() {
        // rotation by π about the polar axis
        let gk = GSimplicialComplex::new(octahedron(), cyclic_action(6, Perm::new(vec![0, 1, 4, 5, 2, 3]).unwrap())).unwrap();
        let reg = gk.regularized();
        assert!(reg.is_regular());
        assert_eq!(reg.quotient().unwrap().homology().unwrap(), vec![1, 0, 1]);
        assert_eq!(reg.invariant_homology().unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn antipodal_octahedron_gives_projective_plane() {
        let gk = GSimplicialComplex::new(octahedron(), cyclic_action(6, Perm::new(vec![1, 0, 4, 5, 2, 3]).unwrap())).unwrap();
        let reg = gk.regularized();
        assert_eq!(reg.quotient().unwrap().homology().unwrap(), vec![1, 0, 0]);
        assert_eq!(reg.invariant_homology().unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn disc_rotation_and_reflection() {
        let (k, l) = cone_disc(6);
        let rot = GSimplicialComplex::new(k.clone(), cyclic_action(7, Perm::new(vec![0, 3, 4, 5, 6, 1, 2]).unwrap()))
            .unwrap()
            .with_subcomplex(l.clone())
            .unwrap();
        assert_eq!(rot.invariant_homology().unwrap(), vec![0, 0, 1]);
        assert_eq!(rot.regularized().quotient().unwrap().homology().unwrap(), vec![0, 0, 1]);
        let refl = GSimplicialComplex::new(k, cyclic_action(7, Perm::new(vec![0, 1, 6, 5, 4, 3, 2]).unwrap()))
            .unwrap()
            .with_subcomplex(l)
            .unwrap();
        assert_eq!(refl.invariant_homology().unwrap(), vec![0, 0, 0]);
        assert_eq!(refl.regularized().quotient().unwrap().homology().unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn interval_reflection() {
        let k = SimplicialComplex::from_maximal(names(3), &[vec![0, 1], vec![1, 2]]).unwrap();
        let l = k.subcomplex(&[vec![0], vec![2]]).unwrap();
        let gk = GSimplicialComplex::new(k, cyclic_action(3, Perm::new(vec![2, 1, 0]).unwrap()))
            .unwrap()
            .with_subcomplex(l)
            .unwrap();
        assert_eq!(homology(gk.complex(), gk.subcomplex()).unwrap(), vec![0, 1]);
        assert_eq!(gk.invariant_homology().unwrap(), vec![0, 0]);
        assert_eq!(gk.quotient().unwrap().homology().unwrap(), vec![0, 0]);
    }

    #[test]
    fn non_invariant_subcomplex_is_rejected() {
        let (k, _) = cone_disc(4);
        let l = k.subcomplex(&[vec![1, 2]]).unwrap();
        let gk = GSimplicialComplex::new(k, cyclic_action(5, Perm::new(vec![0, 2, 3, 4, 1]).unwrap())).unwrap();
        assert!(matches!(gk.with_subcomplex(l), Err(Error::NotASubcomplex(_))));
    }

    /// Oracle: fixed subspace of the averaged action on an explicit homology
    /// basis (cycles modulo boundaries), computed as
    /// `rank([P·Z | B]) − rank(B)`.
    fn invariant_by_cycles(gk: &GSimplicialComplex) -> Vec<usize> {
        let c = gk.complex().chain_complex(gk.subcomplex()).unwrap();
        let n = c.max_degree();
        let order = gk.group().order();
        let maps: Vec<Vec<RationalMatrix>> = (0..order).map(|g| gk.chain_action(g).unwrap()).collect();
        (0..=n)
            .map(|k| {
                let z = if k == 0 {
                    RationalMatrix::identity(c.dim(0))
                } else {
                    c.boundary(k).kernel()
                };
                let b = if k < n {
                    c.boundary(k + 1).clone()
                } else {
                    RationalMatrix::zeros(c.dim(k), 0)
                };
                let mut p = RationalMatrix::zeros(c.dim(k), c.dim(k));
                for m in &maps {
                    p = p.sub(&m[k].scale(&q(-1))).unwrap();
                }
                let p = p.scale(&q_frac(1, order as i64));
                let pz = p.mul(&z).unwrap();
                pz.hstack(&b).unwrap().rank() - b.rank()
            })
            .collect()
    }

    #[test]
    fn projector_formula_matches_cycle_oracle() {
        let cases = vec![
            GSimplicialComplex::new(octahedron(), cyclic_action(6, Perm::new(vec![0, 1, 4, 5, 2, 3]).unwrap())).unwrap(),
            GSimplicialComplex::new(octahedron(), cyclic_action(6, Perm::new(vec![1, 0, 4, 5, 2, 3]).unwrap())).unwrap(),
            GSimplicialComplex::new(octahedron(), cyclic_action(6, Perm::new(vec![0, 1, 3, 4, 5, 2]).unwrap())).unwrap(),
        ];
        for gk in cases {
            assert_eq!(gk.invariant_homology().unwrap(), invariant_by_cycles(&gk));
        }
    }
}
