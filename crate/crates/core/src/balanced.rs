//! Balanced complexes: properly colored pure complexes and their flag vectors.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::label::{braced, Label};
use crate::poly::sign;
use crate::report::VerificationReport;
use crate::subset::ColorSet;

/// Values indexed by the subsets of `{1, ..., d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    d: usize,
    values: Vec<BigInt>,
}

impl FlagVector {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, s: ColorSet) -> &BigInt {
        &self.values[s.mask() as usize]
    }

    /// `(S, value)` pairs in colex order.
    pub fn iter(&self) -> impl Iterator<Item = (ColorSet, &BigInt)> {
        self.values
            .iter()
            .enumerate()
            .map(|(m, v)| (ColorSet::from_mask(m as u32), v))
    }

    /// `h_T = Σ_{S ⊆ T} (-1)^{|T|-|S|} f_S`.
    pub fn f_to_h(&self) -> FlagVector {
        self.transform(true)
    }

    /// `f_T = Σ_{S ⊆ T} h_S`.
    pub fn h_to_f(&self) -> FlagVector {
        self.transform(false)
    }

    fn transform(&self, alternating: bool) -> FlagVector {
        let values = ColorSet::all(self.d)
            .map(|t| {
                t.subsets()
                    .map(|s| {
                        let v = self.get(s).clone();
                        if alternating {
                            v * sign((t.len() - s.len()) as i64)
                        } else {
                            v
                        }
                    })
                    .sum()
            })
            .collect();
        FlagVector { d: self.d, values }
    }

    /// `Σ_{|S| = i} value(S)`.
    pub fn rank_sum(&self, i: usize) -> BigInt {
        self.iter().filter(|(s, _)| s.len() == i).map(|(_, v)| v).sum()
    }
}

/// A pure `(d-1)`-dimensional complex with a proper coloring `V -> {1..d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedComplex {
    complex: SimplicialComplex,
    colors: Vec<usize>,
    color_labels: Vec<Label>,
}

impl BalancedComplex {
    /// Checks that `kappa` is total and that no face repeats a color.
    ///
    /// Colors named `1..=d` are used as given; any other color names are
    /// sorted and mapped to `1, 2, ...`, with the bijection kept in
    /// [`color_labels`](Self::color_labels).
    pub fn new<L, C>(complex: SimplicialComplex, kappa: impl IntoIterator<Item = (L, C)>) -> Result<Self>
    where
        L: Into<Label>,
        C: Into<Label>,
    {
        if !complex.is_pure() {
            return Err(Error::NotPure);
        }
        let d = complex.d();
        let kappa: HashMap<Label, Label> = kappa.into_iter().map(|(l, c)| (l.into(), c.into())).collect();
        let mut raw = Vec::with_capacity(complex.vertex_count());
        for label in complex.labels() {
            match kappa.get(label) {
                Some(c) => raw.push(c.clone()),
                None => return Err(Error::BadArguments(format!("vertex {label} has no color"))),
            }
        }
        let distinct: BTreeSet<&Label> = raw.iter().collect();
        let numeric = |c: &Label| c.as_str().parse::<usize>().ok().filter(|n| (1..=d).contains(n));
        let color_labels: Vec<Label> = if distinct.iter().all(|c| numeric(c).is_some()) {
            (1..=d).map(Label::from).collect()
        } else if distinct.len() <= d {
            distinct.iter().map(|&c| c.clone()).collect()
        } else {
            return Err(Error::BadArguments(format!(
                "{} colors used but the complex has d = {d}",
                distinct.len()
            )));
        };
        let colors = raw
            .iter()
            .map(|c| {
                numeric(c)
                    .filter(|_| color_labels.iter().zip(1..).all(|(l, k)| numeric(l) == Some(k)))
                    .unwrap_or_else(|| color_labels.iter().position(|l| l == c).unwrap() + 1)
            })
            .collect();
        BalancedComplex::from_parts(complex, colors, color_labels)
    }

    /// Colors given per interned vertex, already in `1..=d`.
    pub(crate) fn from_parts(complex: SimplicialComplex, colors: Vec<usize>, color_labels: Vec<Label>) -> Result<Self> {
        if !complex.is_pure() {
            return Err(Error::NotPure);
        }
        for facet in complex.facets() {
            let vs = facet.vertices();
            for (a, &u) in vs.iter().enumerate() {
                for &w in &vs[a + 1..] {
                    if colors[u as usize] == colors[w as usize] {
                        let edge = Face::new(vec![u, w]);
                        return Err(Error::NotBalanced {
                            witness: complex.display_face(&edge),
                        });
                    }
                }
            }
        }
        Ok(BalancedComplex {
            complex,
            colors,
            color_labels,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn d(&self) -> usize {
        self.complex.d()
    }

    /// Canonical color of an interned vertex.
    pub fn color(&self, v: u32) -> usize {
        self.colors[v as usize]
    }

    /// Original name of each canonical color `1..`, at position `color - 1`.
    pub fn color_labels(&self) -> &[Label] {
        &self.color_labels
    }

    /// `(vertex label, original color label)` pairs in vertex order.
    pub fn coloring(&self) -> impl Iterator<Item = (&Label, &Label)> {
        self.complex
            .labels()
            .iter()
            .zip(&self.colors)
            .map(|(l, &c)| (l, &self.color_labels[c - 1]))
    }

    /// `κ(F)`.
    pub fn face_colors(&self, face: &Face) -> ColorSet {
        ColorSet::from_colors(face.vertices().iter().map(|&v| self.color(v)))
    }

    /// `Δ_S = {F : κ(F) ⊆ S}`.
    pub fn rank_selected(&self, s: ColorSet) -> SimplicialComplex {
        let facets = self
            .complex
            .faces()
            .iter()
            .filter(|f| self.face_colors(f).is_subset(s))
            .map(|f| self.complex.face_labels(f));
        SimplicialComplex::from_facets(facets).expect("the empty face is always selected")
    }

    pub fn flag_f_vector(&self) -> FlagVector {
        let d = self.d();
        let mut values = vec![BigInt::zero(); 1 << d];
        for face in self.complex.faces() {
            values[self.face_colors(face).mask() as usize] += 1;
        }
        FlagVector { d, values }
    }

    pub fn flag_h_vector(&self) -> FlagVector {
        self.flag_f_vector().f_to_h()
    }

    /// `h_S - h_{S^c}` against `(-1)^{d-|S|} Σ_{F ∈ Δ_S} ε_Δ(F)` for every `S`.
    ///
    /// The errors are those of the whole complex, never of `Δ_S`. Extra
    /// rows `refine i=..` check that summing over `|S| = i` gives back the
    /// uncolored identity at index `d - i`.
    pub fn verify_flag_ds(&self) -> Result<VerificationReport> {
        let d = self.d();
        let h = self.flag_h_vector();
        let errors = self.complex.face_errors();
        let face_colors: Vec<ColorSet> = self.complex.faces().iter().map(|f| self.face_colors(f)).collect();
        let mut report = VerificationReport::new("flag-ds").param("d", d);
        let mut lhs_by_rank = vec![BigInt::zero(); d + 1];
        let mut rhs_by_rank = vec![BigInt::zero(); d + 1];
        for s in ColorSet::all(d) {
            let lhs = h.get(s) - h.get(s.complement(d));
            let selected: BigInt = face_colors
                .iter()
                .zip(&errors)
                .filter(|(c, _)| c.is_subset(s))
                .map(|(_, e)| e)
                .sum();
            let rhs = sign((d - s.len()) as i64) * selected;
            lhs_by_rank[s.len()] += &lhs;
            rhs_by_rank[s.len()] += &rhs;
            report.check(format!("S={s}"), lhs, rhs);
        }
        let uncolored = self.complex.verify_pure_ds()?;
        for i in 0..=d {
            let row = &uncolored.per_index[d - i];
            report.check(format!("refine lhs i={i}"), lhs_by_rank[i].clone(), row.lhs.clone());
            report.check(format!("refine rhs i={i}"), rhs_by_rank[i].clone(), row.rhs.clone());
        }
        Ok(report)
    }

    /// `Σ_{κ(v) = i} h_S(lk v)`, with link flag vectors taken over the
    /// ambient colors. Fails with `ColorInS` when `i ∈ S`.
    pub fn short_flag_sum(&self, s: ColorSet, i: usize) -> Result<BigInt> {
        if s.contains(i) {
            return Err(Error::ColorInS(i));
        }
        if !(1..=self.d()).contains(&i) {
            return Err(Error::BadArguments(format!("color {i} outside 1..={}", self.d())));
        }
        let mut total = BigInt::zero();
        for v in (0..self.complex.vertex_count() as u32).filter(|&v| self.color(v) == i) {
            let link = self.complex.link(&Face::new(vec![v]))?;
            let colors_in_link = |f: &Face| {
                ColorSet::from_colors(f.vertices().iter().map(|&w| {
                    let label = &link.labels()[w as usize];
                    self.color(self.complex.vertex_index(label).expect("link vertices are vertices"))
                }))
            };
            for t in s.subsets() {
                let count = link.faces().iter().filter(|f| colors_in_link(f) == t).count();
                total += sign((s.len() - t.len()) as i64) * BigInt::from(count);
            }
        }
        Ok(total)
    }

    /// The short-flag sum against `h_{S ∪ {i}} + h_S` for every valid `(S, i)`.
    pub fn verify_short_flag(&self) -> Result<VerificationReport> {
        let d = self.d();
        let h = self.flag_h_vector();
        let mut report = VerificationReport::new("short-flag").param("d", d);
        for s in ColorSet::all(d) {
            for i in (1..=d).filter(|&i| !s.contains(i)) {
                let rhs = h.get(s.with(i)) + h.get(s);
                report.check(format!("S={s} i={i}"), self.short_flag_sum(s, i)?, rhs);
            }
        }
        Ok(report)
    }
}

/// Renders the coloring as `label=color` pairs, for diagnostics.
pub fn describe_coloring(b: &BalancedComplex) -> String {
    let pairs: Vec<Label> = b.coloring().map(|(l, c)| Label::new(format!("{l}={c}"))).collect();
    braced(&pairs)
}
