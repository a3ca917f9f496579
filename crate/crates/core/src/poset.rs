//! Finite graded posets with a bottom and a top element.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::balanced::BalancedComplex;
use crate::complex::{build_complex, FVector, Face, HVector};
use crate::error::{Error, Result};
use crate::label::{braced, Label};
use crate::poly::{binomial, sign};
use crate::report::VerificationReport;
use crate::subset::ColorSet;
use crate::toric::ToricTable;

/// A finite graded poset with unique bottom `0̂` and top `1̂`.
///
/// Elements are identified by their position in canonical order: sorted by
/// rank, then by label. The bottom is element `0` and the top is the last
/// element. Möbius values are computed one row at a time on first use and
/// cached for the lifetime of the poset.
#[derive(Clone, Debug)]
pub struct GradedPoset {
    labels: Vec<Label>,
    rank: Vec<usize>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// `below[t]` holds every `s <= t`.
    below: Vec<FixedBitSet>,
    /// `above[s]` holds every `t >= s`.
    above: Vec<FixedBitSet>,
    index: HashMap<Label, usize>,
    mobius: Vec<OnceLock<Vec<BigInt>>>,
    pub(crate) toric: OnceLock<ToricTable>,
}

impl PartialEq for GradedPoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for GradedPoset {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetClassification {
    pub eulerian: bool,
    pub semi_eulerian: bool,
    pub lower_eulerian: bool,
    pub simplicial: bool,
    pub min_j_sing: i64,
    pub max_lower_simplicial_k: i64,
}

/// The smallest `j` for which the poset is j-Sing, by three routes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JSingCriteria {
    /// Unwinding the recursive definition interval by interval.
    pub recursive: i64,
    /// Shortest non-Eulerian interval length.
    pub flat: i64,
    /// Singularity degree of the order complex.
    pub order_complex: i64,
}

fn render_chain(labels: &[Label], chain: &[usize]) -> String {
    braced(chain.iter().map(|&i| &labels[i]))
}

/// Validates a cover relation and computes ranks.
///
/// Fails on duplicate or unknown labels, cycles, several minimal or maximal
/// elements, and on maximal chains of different lengths.
pub fn build_poset<L, C>(
    elements: impl IntoIterator<Item = L>,
    covers: impl IntoIterator<Item = (C, C)>,
) -> Result<GradedPoset>
where
    L: Into<Label>,
    C: Into<Label>,
{
    let labels: Vec<Label> = elements.into_iter().map(Into::into).collect();
    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut position = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if position.insert(l.clone(), i).is_some() {
            return Err(Error::BadArguments(format!("duplicate element {l}")));
        }
    }
    let mut pairs = BTreeSet::new();
    for (lo, hi) in covers {
        let (lo, hi): (Label, Label) = (lo.into(), hi.into());
        let find = |l: &Label| {
            position
                .get(l)
                .copied()
                .ok_or_else(|| Error::BadArguments(format!("cover mentions unknown element {l}")))
        };
        let (a, b) = (find(&lo)?, find(&hi)?);
        if a == b {
            return Err(Error::CycleDetected(lo.to_string()));
        }
        pairs.insert((a, b));
    }
    let n = labels.len();
    let mut up = vec![Vec::new(); n];
    let mut down = vec![Vec::new(); n];
    for &(a, b) in &pairs {
        up[a].push(b);
        down[b].push(a);
    }

    let mut indegree: Vec<usize> = down.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    while let Some(x) = queue.pop_front() {
        topo.push(x);
        for &y in &up[x] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                queue.push_back(y);
            }
        }
    }
    if topo.len() < n {
        let stuck = (0..n).find(|&i| indegree[i] > 0).expect("some element is on a cycle");
        return Err(Error::CycleDetected(labels[stuck].to_string()));
    }

    let minimal: Vec<usize> = (0..n).filter(|&i| down[i].is_empty()).collect();
    let maximal: Vec<usize> = (0..n).filter(|&i| up[i].is_empty()).collect();
    if minimal.len() != 1 {
        return Err(Error::NoUniqueBottom(render_chain(&labels, &minimal)));
    }
    if maximal.len() != 1 {
        return Err(Error::NoUniqueTop(render_chain(&labels, &maximal)));
    }

    // Shortest and longest cover paths from the bottom, with predecessors.
    let mut short = vec![(0usize, usize::MAX); n];
    let mut long = vec![(0usize, usize::MAX); n];
    for &x in &topo[1..] {
        let by_len = |table: &[(usize, usize)], pick_max: bool| {
            let it = down[x].iter().map(|&p| (table[p].0 + 1, p));
            if pick_max { it.max() } else { it.min() }.expect("non-bottom elements have lower covers")
        };
        short[x] = by_len(&short, false);
        long[x] = by_len(&long, true);
    }
    if let Some(&x) = topo.iter().find(|&&x| short[x].0 != long[x].0) {
        let trace = |table: &[(usize, usize)]| {
            let mut chain = vec![x];
            while table[*chain.last().unwrap()].1 != usize::MAX {
                chain.push(table[*chain.last().unwrap()].1);
            }
            chain.reverse();
            let mut cur = x;
            while let Some(&next) = up[cur].first() {
                chain.push(next);
                cur = next;
            }
            render_chain(&labels, &chain)
        };
        return Err(Error::NotGraded {
            short: trace(&short),
            long: trace(&long),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| long[a].0.cmp(&long[b].0).then_with(|| labels[a].cmp(&labels[b])));
    let mut new_of = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        new_of[old] = new;
    }
    let remap = |adj: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        order
            .iter()
            .map(|&old| {
                let mut v: Vec<usize> = adj[old].iter().map(|&o| new_of[o]).collect();
                v.sort_unstable();
                v
            })
            .collect()
    };
    let up = remap(&up);
    let down = remap(&down);
    let labels: Vec<Label> = order.iter().map(|&old| labels[old].clone()).collect();
    let rank: Vec<usize> = order.iter().map(|&old| long[old].0).collect();
    Ok(GradedPoset::assemble(labels, rank, up, down))
}

impl GradedPoset {
    fn assemble(labels: Vec<Label>, rank: Vec<usize>, up: Vec<Vec<usize>>, down: Vec<Vec<usize>>) -> Self {
        let n = labels.len();
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(n);
        for (t, children) in down.iter().enumerate() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(t);
            for &c in children {
                set.union_with(&below[c]);
            }
            below.push(set);
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (t, set) in below.iter().enumerate() {
            for s in set.ones() {
                above[s].insert(t);
            }
        }
        let index = labels.iter().cloned().zip(0..).collect();
        GradedPoset {
            labels,
            rank,
            up,
            down,
            below,
            above,
            index,
            mobius: (0..n).map(|_| OnceLock::new()).collect(),
            toric: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &Label {
        &self.labels[x]
    }

    pub fn element(&self, label: impl Into<Label>) -> Option<usize> {
        self.index.get(&label.into()).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// `ρ(1̂)`.
    pub fn rho(&self) -> usize {
        self.rank[self.top()]
    }

    /// `ρ(1̂) - 1`.
    pub fn d(&self) -> i64 {
        self.rho() as i64 - 1
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }

    /// Cover pairs `(lower, upper)` in canonical order.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
    }

    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.below[t].contains(s)
    }

    pub fn elements_of_rank(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&x| self.rank[x] == r)
    }

    /// Elements strictly below `t`, in canonical order.
    pub fn strictly_below(&self, t: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[t].ones().filter(move |&u| u != t)
    }

    /// Elements of `[s, t]` in canonical order.
    pub fn interval_elements(&self, s: usize, t: usize) -> Vec<usize> {
        self.below[t].ones().filter(|&u| self.above[s].contains(u)).collect()
    }

    fn mobius_row(&self, s: usize) -> &[BigInt] {
        self.mobius[s].get_or_init(|| {
            let n = self.len();
            let mut row = vec![BigInt::zero(); n];
            row[s] = BigInt::one();
            for t in self.above[s].ones().filter(|&t| t != s) {
                let total: BigInt = self.below[t]
                    .ones()
                    .filter(|&u| u != t && self.above[s].contains(u))
                    .map(|u| &row[u])
                    .sum();
                row[t] = -total;
            }
            row
        })
    }

    /// `μ(s, t)` for `s <= t`; callers must check comparability.
    pub(crate) fn mu(&self, s: usize, t: usize) -> &BigInt {
        &self.mobius_row(s)[t]
    }

    pub fn mobius(&self, s: usize, t: usize) -> Result<BigInt> {
        self.comparable(s, t)?;
        Ok(self.mu(s, t).clone())
    }

    fn comparable(&self, s: usize, t: usize) -> Result<()> {
        if self.leq(s, t) {
            Ok(())
        } else {
            Err(Error::NotComparable(
                self.labels[s].to_string(),
                self.labels[t].to_string(),
            ))
        }
    }

    /// `e(s, t) = μ(s, t) - (-1)^{ρ(t) - ρ(s)}`, unchecked.
    pub(crate) fn e(&self, s: usize, t: usize) -> BigInt {
        self.mu(s, t) - sign(self.rank[t] as i64 - self.rank[s] as i64)
    }

    pub fn interval_error(&self, s: usize, t: usize) -> Result<BigInt> {
        self.comparable(s, t)?;
        Ok(self.e(s, t))
    }

    /// All comparable pairs with nonzero interval error.
    pub fn error_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|s| self.above[s].ones().map(move |t| (s, t)))
            .filter(|&(s, t)| !self.e(s, t).is_zero())
            .collect()
    }

    /// The order complex of the open interval `(0̂, 1̂)`, colored by rank.
    pub fn order_complex(&self) -> Result<BalancedComplex> {
        if self.rho() == 0 {
            return Err(Error::BadArguments("the one-element poset has no order complex".into()));
        }
        let d = self.d() as usize;
        let mut facets: Vec<Vec<Label>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = self
            .elements_of_rank(1)
            .filter(|&a| a != self.top())
            .map(|a| vec![a])
            .collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            if self.rank[last] == d {
                facets.push(chain.iter().map(|&x| self.labels[x].clone()).collect());
                continue;
            }
            for &next in &self.up[last] {
                let mut longer = chain.clone();
                longer.push(next);
                stack.push(longer);
            }
        }
        if facets.is_empty() {
            facets.push(Vec::new());
        }
        let complex = build_complex(facets)?;
        let colors = complex.labels().iter().map(|l| self.rank[self.index[l]]).collect();
        BalancedComplex::from_parts(complex, colors, (1..=d).map(Label::from).collect())
    }

    /// The chain of `P` matching a face of [`order_complex`](Self::order_complex).
    pub fn chain_of_face(&self, oc: &BalancedComplex, face: &Face) -> Vec<usize> {
        let mut chain: Vec<usize> = oc.complex().face_labels(face).iter().map(|l| self.index[l]).collect();
        chain.sort_unstable();
        chain
    }

    fn check_chain(&self, chain: &[usize]) -> Result<()> {
        let inside = chain
            .iter()
            .all(|&x| x < self.len() && x != self.bottom() && x != self.top());
        let increasing = chain.windows(2).all(|w| w[0] != w[1] && self.leq(w[0], w[1]));
        if inside && increasing {
            Ok(())
        } else {
            let shown: Vec<Label> = chain
                .iter()
                .map(|&x| {
                    self.labels
                        .get(x)
                        .cloned()
                        .unwrap_or_else(|| Label::new(format!("#{x}")))
                })
                .collect();
            Err(Error::NotAChain(braced(&shown)))
        }
    }

    /// `μ(0̂, t_1) μ(t_1, t_2) ⋯ μ(t_k, 1̂)`.
    pub fn chain_mobius(&self, chain: &[usize]) -> Result<BigInt> {
        self.check_chain(chain)?;
        let mut stops = vec![self.bottom()];
        stops.extend_from_slice(chain);
        stops.push(self.top());
        Ok(stops.windows(2).map(|w| self.mu(w[0], w[1]).clone()).product())
    }

    /// `(-1)^{|C|} μ_P(C)`, the reduced Euler characteristic of the link of
    /// the chain in the order complex.
    pub fn chain_link_euler(&self, chain: &[usize]) -> Result<BigInt> {
        Ok(sign(chain.len() as i64) * self.chain_mobius(chain)?)
    }

    /// `ε_P(C) = (-1)^{|C|} [μ_P(C) - (-1)^{d+1}]`.
    pub fn chain_error(&self, chain: &[usize]) -> Result<BigInt> {
        let mu = self.chain_mobius(chain)?;
        Ok(sign(chain.len() as i64) * (mu - sign(self.d() + 1)))
    }

    /// Every chain of the open interval, the empty chain first.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let inner: Vec<usize> = (1..self.len().saturating_sub(1)).collect();
        let mut out = vec![Vec::new()];
        let mut frontier: Vec<Vec<usize>> = inner.iter().map(|&x| vec![x]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for chain in &frontier {
                let last = *chain.last().unwrap();
                for t in self.above[last].ones().filter(|&t| t != last && t != self.top()) {
                    let mut longer = chain.clone();
                    longer.push(t);
                    next.push(longer);
                }
            }
            out.append(&mut frontier);
            frontier = next;
        }
        out
    }

    /// Ranks used by a chain.
    pub fn chain_ranks(&self, chain: &[usize]) -> ColorSet {
        ColorSet::from_colors(chain.iter().map(|&x| self.rank[x]))
    }

    fn check_rank_set(&self, s: ColorSet) -> Result<usize> {
        let d = usize::try_from(self.d()).map_err(|_| Error::BadArguments("poset has rank 0".into()))?;
        if s.is_subset(ColorSet::full(d)) {
            Ok(d)
        } else {
            Err(Error::BadArguments(format!("rank set {s} not inside 1..={d}")))
        }
    }

    /// Number of maximal chains of `P_S`, i.e. chains with rank set exactly `S`.
    fn alpha(&self, s: ColorSet) -> BigInt {
        let ranks: Vec<usize> = s.colors().collect();
        let Some((&first, rest)) = ranks.split_first() else {
            return BigInt::one();
        };
        let mut counts: HashMap<usize, BigInt> = self.elements_of_rank(first).map(|x| (x, BigInt::one())).collect();
        for &r in rest {
            counts = self
                .elements_of_rank(r)
                .map(|y| {
                    let total = counts.iter().filter(|(&x, _)| self.leq(x, y)).map(|(_, c)| c).sum();
                    (y, total)
                })
                .collect();
        }
        counts.values().sum()
    }

    /// `(α(S), β(S))` with `β(S) = Σ_{T ⊆ S} (-1)^{|S|-|T|} α(T)`.
    pub fn flag_alpha_beta(&self, s: ColorSet) -> Result<(BigInt, BigInt)> {
        self.check_rank_set(s)?;
        let beta = s
            .subsets()
            .map(|t| sign((s.len() - t.len()) as i64) * self.alpha(t))
            .sum();
        Ok((self.alpha(s), beta))
    }

    /// `β(S) - β(S^c)` against `(-1)^{d-|S|} Σ_{C ∈ chains(P_S)} ε_P(C)`.
    pub fn verify_flag_poset(&self) -> Result<VerificationReport> {
        let d = self.check_rank_set(ColorSet::EMPTY)?;
        let chains: Vec<(ColorSet, BigInt)> = self
            .chains()
            .into_iter()
            .map(|c| Ok((self.chain_ranks(&c), self.chain_error(&c)?)))
            .collect::<Result<_>>()?;
        let betas: Vec<BigInt> = ColorSet::all(d)
            .map(|s| self.flag_alpha_beta(s).map(|(_, b)| b))
            .collect::<Result<_>>()?;
        let mut report = VerificationReport::new("flag-poset").param("d", d);
        for s in ColorSet::all(d) {
            let lhs = &betas[s.mask() as usize] - &betas[s.complement(d).mask() as usize];
            let total: BigInt = chains.iter().filter(|(r, _)| r.is_subset(s)).map(|(_, e)| e).sum();
            report.check(format!("S={s}"), lhs, sign((d - s.len()) as i64) * total);
        }
        Ok(report)
    }

    /// `P_S = {x : ρ(x) ∈ S ∪ {0, d+1}}` with the induced order.
    pub fn rank_selected(&self, s: ColorSet) -> Result<GradedPoset> {
        self.check_rank_set(s)?;
        let mut kept: Vec<usize> = vec![0];
        kept.extend(s.colors());
        kept.push(self.rho());
        let keep = |x: &usize| kept.contains(&self.rank[*x]);
        let elements: Vec<usize> = (0..self.len()).filter(keep).collect();
        let covers = elements.iter().flat_map(|&a| {
            let next_rank = kept.iter().copied().find(|&r| r > self.rank[a]);
            elements
                .iter()
                .filter(move |&&b| Some(self.rank[b]) == next_rank && self.leq(a, b))
                .map(move |&b| (self.labels[a].clone(), self.labels[b].clone()))
        });
        build_poset(
            elements.iter().map(|&x| self.labels[x].clone()),
            covers.collect::<Vec<_>>(),
        )
    }

    /// The subposet `[s, t]`.
    pub fn interval(&self, s: usize, t: usize) -> Result<GradedPoset> {
        self.comparable(s, t)?;
        let elements = self.interval_elements(s, t);
        let covers: Vec<(Label, Label)> = elements
            .iter()
            .flat_map(|&a| {
                self.up[a]
                    .iter()
                    .filter(|&&b| self.leq(b, t))
                    .map(move |&b| (self.labels[a].clone(), self.labels[b].clone()))
            })
            .collect();
        build_poset(elements.iter().map(|&x| self.labels[x].clone()), covers)
    }

    /// The same elements with every relation reversed.
    pub fn dual(&self) -> GradedPoset {
        let covers: Vec<(Label, Label)> = self
            .covers()
            .map(|(a, b)| (self.labels[b].clone(), self.labels[a].clone()))
            .collect();
        build_poset(self.labels.iter().cloned(), covers).expect("the dual of a graded poset is graded")
    }

    /// Whether `[0̂, t]` is a Boolean lattice: it has `2^ρ(t)` elements, each
    /// determined by the atoms below it, and each element `x` covers exactly
    /// `ρ(x)` elements.
    pub fn is_boolean_below(&self, t: usize) -> bool {
        let r = self.rank[t];
        let atoms: Vec<usize> = self.elements_of_rank(1).filter(|&a| self.leq(a, t)).collect();
        let elements = self.interval_elements(self.bottom(), t);
        if atoms.len() != r || r >= 63 || elements.len() != 1usize << r {
            return false;
        }
        let mut masks = HashMap::new();
        for &x in &elements {
            let mask: u64 = atoms
                .iter()
                .enumerate()
                .filter(|(_, &a)| self.leq(a, x))
                .map(|(i, _)| 1u64 << i)
                .sum();
            if mask.count_ones() as usize != self.rank[x] || masks.insert(mask, x).is_some() {
                return false;
            }
        }
        elements.iter().all(|&x| self.down[x].len() == self.rank[x])
    }

    /// Whether every proper lower interval is Boolean.
    pub fn is_simplicial(&self) -> bool {
        self.first_non_boolean_below().map_or(true, |t| t == self.top())
    }

    fn first_non_boolean_below(&self) -> Option<usize> {
        (0..self.len()).find(|&t| !self.is_boolean_below(t))
    }

    /// `f_i = #{t : ρ(t) = i + 1}` for `i = -1 .. d-1`, transformed as for
    /// complexes. Fails unless the poset is simplicial.
    pub fn simplicial_poset_h(&self) -> Result<HVector> {
        if let Some(t) = self.first_non_boolean_below().filter(|&t| t != self.top()) {
            return Err(Error::NotSimplicial(self.labels[t].to_string()));
        }
        if self.rho() == 0 {
            return Err(Error::BadArguments("the one-element poset has no h-vector".into()));
        }
        let counts = (0..self.rho())
            .map(|r| BigInt::from(self.elements_of_rank(r).count()))
            .collect();
        Ok(HVector {
            entries: FVector::from_counts(counts).h_vector(),
            pure: true,
        })
    }

    /// `h_{d-j} - h_j` against
    /// `(-1)^j Σ_t C(d - ρ(t), j) [μ(t, 1̂) - (-1)^{d-1-ρ(t)}]`.
    pub fn verify_simplicial_ds(&self) -> Result<VerificationReport> {
        let h = self.simplicial_poset_h()?;
        let d = self.d();
        let mut report = VerificationReport::new("simplicial-ds").param("d", d);
        for j in 0..=d {
            let rhs: BigInt = (0..self.top())
                .map(|t| {
                    let r = self.rank[t] as i64;
                    binomial(d - r, j) * (self.mu(t, self.top()) - sign(d - 1 - r))
                })
                .sum();
            report.check(format!("j={j}"), h.get(d - j) - h.get(j), sign(j) * rhs);
        }
        Ok(report)
    }

    fn min_j_flat(&self, bad: &[(usize, usize)]) -> i64 {
        bad.iter()
            .map(|&(s, t)| (self.rank[t] - self.rank[s]) as i64)
            .min()
            .map_or(-1, |len| self.d() - len + 1)
    }

    pub fn classify(&self) -> PosetClassification {
        let bad = self.error_pairs();
        let whole = (self.bottom(), self.top());
        let max_lower_simplicial_k = (0..self.len())
            .filter(|&t| !self.is_boolean_below(t))
            .map(|t| self.rank[t] as i64 - 1)
            .min()
            .unwrap_or(self.rho() as i64);
        PosetClassification {
            eulerian: bad.is_empty(),
            semi_eulerian: bad.iter().all(|&p| p == whole),
            lower_eulerian: bad.iter().all(|&(_, t)| t == self.top()),
            simplicial: self.is_simplicial(),
            min_j_sing: self.min_j_flat(&bad),
            max_lower_simplicial_k,
        }
    }

    pub fn min_j_sing(&self) -> i64 {
        self.min_j_flat(&self.error_pairs())
    }

    /// Whether `[s, t]` is j-Sing, following the recursive definition.
    ///
    /// Being j-Sing passes to subintervals, so "every proper subinterval is
    /// (j-1)-Sing" only needs checking on the maximal ones: `[s, b]` for `b`
    /// covered by `t`, and `[a, t]` for `a` covering `s`.
    fn recursive_j_sing(&self, s: usize, t: usize, j: i64, memo: &mut HashMap<(usize, usize, i64), bool>) -> bool {
        if let Some(&known) = memo.get(&(s, t, j)) {
            return known;
        }
        let maximal_subintervals: Vec<(usize, usize)> = if s == t {
            Vec::new()
        } else {
            self.down[t]
                .iter()
                .filter(|&&b| self.leq(s, b))
                .map(|&b| (s, b))
                .chain(self.up[s].iter().filter(|&&a| self.leq(a, t)).map(|&a| (a, t)))
                .collect()
        };
        let answer = match j {
            -1 => {
                self.e(s, t).is_zero()
                    && maximal_subintervals
                        .iter()
                        .all(|&(a, b)| self.recursive_j_sing(a, b, -1, memo))
            }
            0 => maximal_subintervals
                .iter()
                .all(|&(a, b)| self.recursive_j_sing(a, b, -1, memo)),
            _ => maximal_subintervals
                .iter()
                .all(|&(a, b)| self.recursive_j_sing(a, b, j - 1, memo)),
        };
        memo.insert((s, t, j), answer);
        answer
    }

    pub fn j_sing_criteria(&self) -> Result<JSingCriteria> {
        let mut memo = HashMap::new();
        let recursive = (-1..=self.d().max(-1) + 1)
            .find(|&j| self.recursive_j_sing(self.bottom(), self.top(), j, &mut memo))
            .ok_or_else(|| Error::InternalError("poset is not (d-1)-Sing".into()))?;
        let order_complex = if self.rho() == 0 {
            -1
        } else {
            self.order_complex()?.complex().singularity_profile().min_singular_j
        };
        Ok(JSingCriteria {
            recursive,
            flat: self.min_j_sing(),
            order_complex,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean(n: usize) -> GradedPoset {
        let name = |m: usize| format!("s{m}");
        let elements: Vec<String> = (0..1usize << n).map(name).collect();
        let covers: Vec<(String, String)> = (0..1usize << n)
            .flat_map(|m| {
                (0..n)
                    .filter(move |i| m & (1 << i) == 0)
                    .map(move |i| (name(m), name(m | 1 << i)))
            })
            .collect();
        build_poset(elements, covers).unwrap()
    }

    fn chain(n: usize) -> GradedPoset {
        build_poset(0..=n, (0..n).map(|i| (i, i + 1))).unwrap()
    }

    /// Two vertices joined by two parallel edges, plus a top.
    fn doubled_edge() -> GradedPoset {
        build_poset(
            ["0", "a", "b", "e", "f", "1"],
            [
                ("0", "a"),
                ("0", "b"),
                ("a", "e"),
                ("b", "e"),
                ("a", "f"),
                ("b", "f"),
                ("e", "1"),
                ("f", "1"),
            ],
        )
        .unwrap()
    }

    /// Oracle: Möbius values by summing over the whole poset from scratch.
    fn mobius_oracle(p: &GradedPoset, s: usize, t: usize) -> i64 {
        if s == t {
            return 1;
        }
        -(0..p.len())
            .filter(|&u| u != t && p.leq(s, u) && p.leq(u, t))
            .map(|u| mobius_oracle(p, s, u))
            .sum::<i64>()
    }

    #[test]
    fn small_posets_build() {
        let c = build_poset(["0", "a", "1"], [("0", "a"), ("a", "1")]).unwrap();
        assert_eq!(c.rho(), 2);
        let diamond = boolean(2);
        assert_eq!(diamond.rho(), 2);
        assert_eq!(diamond.len(), 4);
        assert_eq!(diamond.label(0), &Label::from("s0"));
        assert_eq!(diamond.top(), 3);
    }

    #[test]
    fn validation_errors() {
        let ungraded = build_poset(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "1"), ("0", "1")]);
        assert!(matches!(ungraded, Err(Error::NotGraded { .. })));
        let two_bottoms = build_poset(["a", "b", "1"], [("a", "1"), ("b", "1")]);
        assert!(matches!(two_bottoms, Err(Error::NoUniqueBottom(_))));
        let two_tops = build_poset(["0", "a", "b"], [("0", "a"), ("0", "b")]);
        assert!(matches!(two_tops, Err(Error::NoUniqueTop(_))));
        let cycle = build_poset(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "a"), ("b", "1")]);
        assert!(matches!(cycle, Err(Error::CycleDetected(_))));
        assert_eq!(
            build_poset(Vec::<String>::new(), Vec::<(String, String)>::new()).unwrap_err(),
            Error::EmptyInput
        );
    }

    #[test]
    fn not_graded_reports_both_chains() {
        let err = build_poset(
            ["0", "a", "b", "c", "1"],
            [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .unwrap_err();
        match err {
            Error::NotGraded { short, long } => {
                assert_eq!(short, "{0,c,1}");
                assert_eq!(long, "{0,a,b,1}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mobius_values() {
        for n in 0..=5 {
            let b = boolean(n);
            let expected = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(b.mobius(0, b.top()).unwrap(), BigInt::from(expected));
            assert_eq!(mobius_oracle(&b, 0, b.top()), expected);
        }
        for n in 2..=4 {
            assert!(chain(n).mobius(0, n).unwrap().is_zero());
        }
        let c = chain(2);
        assert_eq!(c.mobius(0, 1).unwrap(), BigInt::from(-1));
        assert_eq!(c.interval_error(0, 2).unwrap(), BigInt::from(-1));
        assert!(matches!(boolean(2).mobius(1, 2), Err(Error::NotComparable(..))));
    }

    #[test]
    fn boolean_order_complexes() {
        let b2 = boolean(2).order_complex().unwrap();
        assert_eq!(b2.complex().facets().len(), 2);
        assert_eq!(b2.complex().reduced_euler_characteristic(), BigInt::one());
        let b3 = boolean(3);
        let hex = b3.order_complex().unwrap();
        assert_eq!(hex.complex().facets().len(), 6);
        assert_eq!(
            hex.complex().reduced_euler_characteristic(),
            b3.mobius(0, b3.top()).unwrap()
        );
        let s = ColorSet::from_colors([1, 2]);
        let (alpha, beta) = b3.flag_alpha_beta(s).unwrap();
        assert_eq!((alpha, beta), (BigInt::from(6), BigInt::from(1)));
        assert_eq!(
            b3.flag_alpha_beta(ColorSet::EMPTY).unwrap(),
            (BigInt::one(), BigInt::one())
        );
    }

    #[test]
    fn classification_of_simple_posets() {
        let b = boolean(3).classify();
        assert!(b.eulerian && b.semi_eulerian && b.lower_eulerian && b.simplicial);
        assert_eq!(b.min_j_sing, -1);
        assert_eq!(b.max_lower_simplicial_k, 3);
        let c = chain(3).classify();
        assert!(!c.eulerian && !c.simplicial);
        assert_eq!(c.max_lower_simplicial_k, 1);
    }

    #[test]
    fn doubled_edge_is_simplicial_but_not_a_lattice() {
        let p = doubled_edge();
        assert!(p.is_simplicial());
        let h = p.simplicial_poset_h().unwrap();
        assert_eq!(h.entries, vec![BigInt::one(), BigInt::zero(), BigInt::one()]);
        assert!(p.verify_simplicial_ds().unwrap().pass);
        assert!(matches!(chain(3).simplicial_poset_h(), Err(Error::NotSimplicial(_))));
    }

    #[test]
    fn chain_errors() {
        let b = boolean(3);
        for c in b.chains() {
            assert!(b.chain_error(&c).unwrap().is_zero());
        }
        assert!(matches!(b.chain_error(&[0]), Err(Error::NotAChain(_))));
        assert!(matches!(b.chain_error(&[1, 2]), Err(Error::NotAChain(_))));
    }

    #[test]
    fn dual_and_intervals() {
        let c = chain(3);
        let d = c.dual();
        assert_eq!(d.label(0), &Label::from(3));
        assert_eq!(d.rho(), 3);
        let b = boolean(3);
        let interval = b.interval(1, b.top()).unwrap();
        assert_eq!(interval.len(), 4);
        let ps = b.rank_selected(ColorSet::from_colors([2])).unwrap();
        assert_eq!(ps.rho(), 2);
        assert_eq!(ps.len(), 5);
    }

    #[test]
    fn flag_poset_identity_on_boolean_lattices() {
        for n in 1..=4 {
            let r = boolean(n).verify_flag_poset().unwrap();
            assert!(r.pass);
            assert!(r.per_index.iter().all(|row| row.lhs.is_zero()));
        }
        assert!(chain(4).verify_flag_poset().unwrap().pass);
        assert!(doubled_edge().verify_flag_poset().unwrap().pass);
    }

    #[test]
    fn three_j_sing_criteria_agree_on_small_posets() {
        for p in [boolean(3), chain(3), chain(4), doubled_edge(), boolean(1), chain(0)] {
            let c = p.j_sing_criteria().unwrap();
            assert_eq!(c.recursive, c.flat, "{p:?}");
            assert_eq!(c.order_complex, c.flat, "{p:?}");
        }
    }
}
