//! Finite abstract simplicial complexes and their face-count invariants.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::label::{braced, Label};
use crate::poly::{binomial, sign, Poly};
use crate::report::{int_list_json, VerificationReport};

/// A face, as a strictly increasing list of interned vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(Vec<u32>);

impl Face {
    pub fn empty() -> Self {
        Face(Vec::new())
    }

    /// Sorts and deduplicates the given indices.
    pub fn new(mut vertices: Vec<u32>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Face(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|F| - 1`.
    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Face) -> bool {
        let mut rest = other.0.iter();
        self.0.iter().all(|v| rest.any(|w| w == v))
    }

    pub fn union(&self, other: &Face) -> Face {
        Face::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    /// Every subset, the empty face first.
    pub fn subsets(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        (0u64..1 << n).map(move |mask| Face((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect()))
    }
}

/// Face numbers `f_{-1}, f_0, ..., f_{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(Vec<BigInt>);

impl FVector {
    pub fn from_counts(counts: Vec<BigInt>) -> Self {
        FVector(counts)
    }

    /// `f_i`; zero outside `-1 ..= d-1`.
    pub fn get(&self, i: i64) -> BigInt {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.0.get(k))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Entries starting at `f_{-1}`.
    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    /// `d`, the number of entries after `f_{-1}`.
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }

    /// `Σ_{i=0}^{d} f_{i-1} (x-1)^{d-i}`, whose coefficient of `x^{d-i}` is `h_i`.
    pub fn h_polynomial(&self) -> Poly {
        let d = self.d();
        (0..=d)
            .map(|i| Poly::x_minus_one_pow(d - i).scale_int(&self.0[i]))
            .sum()
    }

    pub fn h_vector(&self) -> Vec<BigInt> {
        let d = self.d() as i64;
        let poly = self.h_polynomial();
        (0..=d).map(|i| poly.int_coeff(d - i)).collect()
    }
}

/// `h_0, ..., h_d`. For an impure complex the transform still uses
/// `d = dim + 1`, and `pure` records that the input was impure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    pub entries: Vec<BigInt>,
    pub pure: bool,
}

impl HVector {
    pub fn get(&self, i: i64) -> BigInt {
        usize::try_from(i)
            .ok()
            .and_then(|k| self.entries.get(k))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn d(&self) -> usize {
        self.entries.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceError {
    pub face: Vec<Label>,
    pub epsilon: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityProfile {
    pub eulerian: bool,
    pub semi_eulerian: bool,
    /// Smallest `j` such that every face of dimension at least `j` has zero error.
    pub min_singular_j: i64,
    /// Faces with nonzero error, in face order.
    pub error_set: Vec<FaceError>,
}

/// A complex together with the relabeling used to build it as a join.
#[derive(Clone, Debug)]
pub struct Joined {
    pub complex: SimplicialComplex,
    pub left: BTreeMap<Label, Label>,
    pub right: BTreeMap<Label, Label>,
}

/// A finite simplicial complex, stored with every face listed.
///
/// Vertices are interned to `0..n` in label order. Faces are kept sorted by
/// size and then lexicographically, so `faces()[0]` is the empty face.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<Label>,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    facets: Vec<Face>,
    dim: i64,
    pure: bool,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("facets", &self.canonical_facets())
            .field("dim", &self.dim)
            .field("pure", &self.pure)
            .finish()
    }
}

/// Downward closure of a facet list. Fails with `EmptyInput` on an empty list.
pub fn build_complex<F, L>(facets: impl IntoIterator<Item = F>) -> Result<SimplicialComplex>
where
    F: IntoIterator<Item = L>,
    L: Into<Label>,
{
    let facets: Vec<Vec<Label>> = facets
        .into_iter()
        .map(|f| f.into_iter().map(Into::into).collect())
        .collect();
    if facets.is_empty() {
        return Err(Error::EmptyInput);
    }
    let labels: Vec<Label> = facets
        .iter()
        .flatten()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let position: HashMap<&Label, u32> = labels.iter().zip(0..).collect();
    let indexed = facets
        .iter()
        .map(|f| Face::new(f.iter().map(|l| position[l]).collect()))
        .collect();
    Ok(SimplicialComplex::from_indexed(labels, indexed))
}

impl SimplicialComplex {
    pub fn from_facets<F, L>(facets: impl IntoIterator<Item = F>) -> Result<Self>
    where
        F: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        build_complex(facets)
    }

    /// The complex `{∅}`.
    pub fn empty_face_only() -> Self {
        SimplicialComplex::from_indexed(Vec::new(), vec![Face::empty()])
    }

    /// Builds from facets over `labels`, dropping labels no facet uses.
    pub(crate) fn from_indexed(labels: Vec<Label>, facets: Vec<Face>) -> Self {
        let used: BTreeSet<u32> = facets.iter().flat_map(|f| f.0.iter().copied()).collect();
        let remap: HashMap<u32, u32> = used.iter().zip(0..).map(|(&old, new)| (old, new)).collect();
        let labels: Vec<Label> = used.iter().map(|&v| labels[v as usize].clone()).collect();
        let facets: BTreeSet<Face> = facets
            .into_iter()
            .map(|f| Face::new(f.0.iter().map(|v| remap[v]).collect()))
            .collect();

        let mut all: HashSet<Face> = HashSet::new();
        for facet in &facets {
            if !all.contains(facet) {
                all.extend(facet.subsets());
            }
        }
        let mut faces: Vec<Face> = all.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Face, usize> = faces.iter().cloned().zip(0..).collect();

        let n = labels.len() as u32;
        let maximal: Vec<Face> = facets
            .into_iter()
            .filter(|f| {
                (0..n)
                    .filter(|v| !f.contains(*v))
                    .all(|v| !index.contains_key(&f.union(&Face(vec![v]))))
            })
            .collect();
        let dim = faces.last().map_or(-1, Face::dim);
        let pure = maximal.iter().all(|f| f.dim() == dim);
        SimplicialComplex {
            labels,
            faces,
            index,
            facets: maximal,
            dim,
            pure,
        }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Maximal faces in lexicographic order of interned indices.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    /// `dim + 1`.
    pub fn d(&self) -> usize {
        (self.dim + 1) as usize
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.index.contains_key(face)
    }

    /// Position of `face` in [`faces`](Self::faces).
    pub fn face_index(&self, face: &Face) -> Option<usize> {
        self.index.get(face).copied()
    }

    pub fn vertex_index(&self, label: &Label) -> Option<u32> {
        self.labels.binary_search(label).ok().map(|i| i as u32)
    }

    /// Translates labels to a face; fails if a label is unknown or the
    /// resulting set is not a face.
    pub fn face_of<L: Into<Label>>(&self, labels: impl IntoIterator<Item = L>) -> Result<Face> {
        let labels: Vec<Label> = labels.into_iter().map(Into::into).collect();
        let ids: Option<Vec<u32>> = labels.iter().map(|l| self.vertex_index(l)).collect();
        match ids.map(Face::new) {
            Some(face) if self.contains(&face) => Ok(face),
            _ => Err(Error::FaceNotInComplex(braced(&labels))),
        }
    }

    pub fn face_labels(&self, face: &Face) -> Vec<Label> {
        face.0.iter().map(|&v| self.labels[v as usize].clone()).collect()
    }

    pub fn display_face(&self, face: &Face) -> String {
        braced(&self.face_labels(face))
    }

    /// Facets as label lists, in canonical order.
    pub fn canonical_facets(&self) -> Vec<Vec<Label>> {
        self.facets.iter().map(|f| self.face_labels(f)).collect()
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![BigInt::zero(); self.d() + 1];
        for face in &self.faces {
            counts[face.len()] += 1;
        }
        FVector(counts)
    }

    pub fn h_vector(&self) -> HVector {
        HVector {
            entries: self.f_vector().h_vector(),
            pure: self.pure,
        }
    }

    /// `Σ_{i=-1}^{d-1} (-1)^i f_i`.
    pub fn reduced_euler_characteristic(&self) -> BigInt {
        self.f_vector()
            .entries()
            .iter()
            .enumerate()
            .map(|(k, f)| sign(k as i64 - 1) * f)
            .sum()
    }

    /// `{G : G ∪ F ∈ Δ, G ∩ F = ∅}`, keeping the original labels.
    pub fn link(&self, face: &Face) -> Result<SimplicialComplex> {
        if !self.contains(face) {
            return Err(Error::FaceNotInComplex(self.display_face_lossy(face)));
        }
        let facets = self
            .facets
            .iter()
            .filter(|f| face.is_subset(f))
            .map(|f| f.difference(face))
            .collect();
        Ok(SimplicialComplex::from_indexed(self.labels.clone(), facets))
    }

    fn display_face_lossy(&self, face: &Face) -> String {
        let parts: Vec<String> = face
            .0
            .iter()
            .map(|&v| {
                self.labels
                    .get(v as usize)
                    .map_or_else(|| format!("#{v}"), |l| l.to_string())
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    /// `χ̃(lk F) - (-1)^{d-1-|F|}`, computed from the link itself.
    pub fn face_error(&self, face: &Face) -> Result<BigInt> {
        let chi = self.link(face)?.reduced_euler_characteristic();
        Ok(chi - sign(self.d() as i64 - 1 - face.len() as i64))
    }

    /// Reduced Euler characteristic of every link, aligned with
    /// [`faces`](Self::faces).
    ///
    /// Each face `G` contributes `(-1)^{|G|-|F|-1}` to every subface `F`,
    /// which sums to `χ̃(lk F)` without building any link.
    pub fn link_euler_characteristics(&self) -> Vec<BigInt> {
        let n = self.faces.len();
        let totals = self
            .faces
            .par_iter()
            .fold(
                || vec![0i64; n],
                |mut acc, g| {
                    for f in g.subsets() {
                        let delta = if (g.len() - f.len()) % 2 == 1 { 1 } else { -1 };
                        acc[self.index[&f]] += delta;
                    }
                    acc
                },
            )
            .reduce(
                || vec![0i64; n],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        totals.into_iter().map(BigInt::from).collect()
    }

    /// `ε(F)` for every face, aligned with [`faces`](Self::faces).
    pub fn face_errors(&self) -> Vec<BigInt> {
        let d = self.d() as i64;
        self.link_euler_characteristics()
            .into_iter()
            .zip(&self.faces)
            .map(|(chi, f)| chi - sign(d - 1 - f.len() as i64))
            .collect()
    }

    /// `h*_i = Σ_v h_i(lk v)` for `i = 0 .. d-1`.
    pub fn short_h_vector(&self) -> Vec<BigInt> {
        let d = self.d();
        let mut total = vec![BigInt::zero(); d];
        for v in 0..self.labels.len() as u32 {
            let link = self.link(&Face(vec![v])).expect("vertices are faces");
            for (i, h) in link.h_vector().entries.iter().enumerate().take(d) {
                total[i] += h;
            }
        }
        total
    }

    pub fn singularity_profile(&self) -> SingularityProfile {
        let errors = self.face_errors();
        let error_set: Vec<FaceError> = self
            .faces
            .iter()
            .zip(&errors)
            .filter(|(_, e)| !e.is_zero())
            .map(|(f, e)| FaceError {
                face: self.face_labels(f),
                epsilon: e.clone(),
            })
            .collect();
        let worst_dim = self
            .faces
            .iter()
            .zip(&errors)
            .filter(|(_, e)| !e.is_zero())
            .map(|(f, _)| f.dim())
            .max();
        SingularityProfile {
            eulerian: error_set.is_empty(),
            semi_eulerian: error_set.iter().all(|e| e.face.is_empty()),
            min_singular_j: worst_dim.map_or(-1, |m| m + 1),
            error_set,
        }
    }

    /// `h_{d-j} - h_j` against `(-1)^j Σ_F C(d-|F|, j) ε(F)` for `j = 0..d`.
    ///
    /// The left side comes from the face numbers, the right side from the
    /// error sweep; the two share no intermediate values.
    pub fn verify_pure_ds(&self) -> Result<VerificationReport> {
        if !self.pure {
            return Err(Error::NotPure);
        }
        let d = self.d() as i64;
        let h = self.h_vector();
        let errors = self.face_errors();
        let mut report = VerificationReport::new("ds")
            .param("d", d)
            .param("h", int_list_json(&h.entries));
        for j in 0..=d {
            let lhs = h.get(d - j) - h.get(j);
            let rhs: BigInt = self
                .faces
                .iter()
                .zip(&errors)
                .map(|(f, e)| binomial(d - f.len() as i64, j) * e)
                .sum::<BigInt>()
                * sign(j);
            report.check(format!("j={j}"), lhs, rhs);
        }
        Ok(report)
    }

    /// `h*_{i-1}` against `i h_i + (d-i+1) h_{i-1}` for `i = 1..d`.
    pub fn verify_short_h(&self) -> Result<VerificationReport> {
        if !self.pure {
            return Err(Error::NotPure);
        }
        let d = self.d() as i64;
        let h = self.h_vector();
        let short = self.short_h_vector();
        let mut report = VerificationReport::new("short-h").param("d", d);
        for i in 1..=d {
            let rhs = BigInt::from(i) * h.get(i) + BigInt::from(d - i + 1) * h.get(i - 1);
            report.check(format!("i={i}"), short[(i - 1) as usize].clone(), rhs);
        }
        Ok(report)
    }

    /// Joins with `other`, relabeling the vertices of `self` to `0..n1` and
    /// those of `other` to `n1..n1+n2`, each in label order.
    pub fn join(&self, other: &SimplicialComplex) -> Joined {
        let n1 = self.labels.len() as u32;
        let labels: Vec<Label> = (0..n1 + other.labels.len() as u32).map(Label::from).collect();
        let shifted = |f: &Face| Face(f.0.iter().map(|v| v + n1).collect());
        let facets = self
            .facets
            .iter()
            .flat_map(|a| other.facets.iter().map(move |b| (a, b)))
            .map(|(a, b)| a.union(&shifted(b)))
            .collect();
        let complex = SimplicialComplex::from_indexed(labels, facets);
        let mapping = |old: &[Label], offset: u32| {
            old.iter()
                .zip(offset..)
                .map(|(l, i)| (l.clone(), Label::from(i)))
                .collect()
        };
        Joined {
            complex,
            left: mapping(&self.labels, 0),
            right: mapping(&other.labels, n1),
        }
    }

    /// Faces of dimension `dim`.
    pub fn faces_of_dim(&self, dim: i64) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim() == dim)
    }
}

/// `χ̃(Δ1 * Δ2) = -χ̃(Δ1) χ̃(Δ2)`, as a value to compare against.
pub fn join_euler_prediction(a: &SimplicialComplex, b: &SimplicialComplex) -> BigInt {
    -(a.reduced_euler_characteristic() * b.reduced_euler_characteristic())
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets.iter().map(|x| self.display_face(x)).collect();
        write!(f, "[{}]", facets.join(" "))
    }
}
