//! Deterministic catalog of complexes and posets, plus seeded random
//! families.
//!
//! Objects are described by a small prefix grammar, `name(arg, …)`, where an
//! argument is an integer, a real number, `true`/`false`, or another spec.
//! At the top level the arguments may also follow the name separated by
//! spaces, as in `polygon_lattice 5`.

use std::fmt;
use std::str::FromStr;

use rand_core::Rng;
use rand_pcg::Lcg64Xsh32;

use crate::balanced::BalancedComplex;
use crate::complex::{build_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::label::{braced, Label};
use crate::poset::{build_poset, GradedPoset};

#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    Int(i64),
    Real(f64),
    Bool(bool),
    Spec(GeneratorSpec),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Int(n) => write!(f, "{n}"),
            Arg::Real(x) => write!(f, "{x:?}"),
            Arg::Bool(b) => write!(f, "{b}"),
            Arg::Spec(s) => write!(f, "{s}"),
        }
    }
}

/// A parsed generator expression.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub name: String,
    pub args: Vec<Arg>,
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(Arg::to_string).collect();
            write!(f, "({})", args.join(","))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn fail<T>(&self, what: &str) -> Result<T> {
        Err(Error::BadParams(format!(
            "{what} at offset {} in `{}`",
            self.pos, self.text
        )))
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn take_while(&mut self, keep: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek().filter(|&c| keep(c)) {
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn spec(&mut self) -> Result<GeneratorSpec> {
        self.skip_ws();
        let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_').to_owned();
        if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
            return self.fail("expected a generator name");
        }
        let mut args = Vec::new();
        if self.eat('(') && !self.eat(')') {
            loop {
                args.push(self.arg()?);
                if self.eat(')') {
                    break;
                }
                if !self.eat(',') {
                    return self.fail("expected `,` or `)`");
                }
            }
        }
        Ok(GeneratorSpec { name, args })
    }

    fn arg(&mut self) -> Result<Arg> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '-' || c == '.' => {
                let word = self.take_while(|c| c.is_ascii_digit() || matches!(c, '-' | '.' | 'e' | 'E' | '+'));
                if let Ok(n) = word.parse::<i64>() {
                    Ok(Arg::Int(n))
                } else if let Ok(x) = word.parse::<f64>() {
                    Ok(Arg::Real(x))
                } else {
                    self.fail("malformed number")
                }
            }
            Some(_) => {
                let spec = self.spec()?;
                match (spec.name.as_str(), spec.args.is_empty()) {
                    ("true", true) => Ok(Arg::Bool(true)),
                    ("false", true) => Ok(Arg::Bool(false)),
                    _ => Ok(Arg::Spec(spec)),
                }
            }
            None => self.fail("expected an argument"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut parser = Parser { text, pos: 0 };
        let mut spec = parser.spec()?;
        parser.skip_ws();
        if parser.peek().is_some() {
            if !spec.args.is_empty() {
                return parser.fail("unexpected trailing input");
            }
            while parser.peek().is_some() {
                spec.args.push(parser.arg()?);
                parser.eat(',');
                parser.skip_ws();
            }
        }
        Ok(spec)
    }
}

/// What a generator produces.
#[derive(Clone, Debug)]
pub enum Generated {
    Complex(SimplicialComplex),
    Balanced(BalancedComplex),
    Poset(GradedPoset),
}

impl Generated {
    pub fn kind(&self) -> &'static str {
        match self {
            Generated::Complex(_) => "complex",
            Generated::Balanced(_) => "balanced complex",
            Generated::Poset(_) => "poset",
        }
    }

    /// The underlying complex, forgetting a coloring.
    pub fn complex(&self) -> Option<&SimplicialComplex> {
        match self {
            Generated::Complex(c) => Some(c),
            Generated::Balanced(b) => Some(b.complex()),
            Generated::Poset(_) => None,
        }
    }

    pub fn poset(&self) -> Option<&GradedPoset> {
        match self {
            Generated::Poset(p) => Some(p),
            _ => None,
        }
    }
}

/// One catalog entry.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub spec: &'static str,
    pub about: &'static str,
}

/// The deterministic catalog used by `verify all` and the acceptance suite.
pub fn catalog() -> Vec<CatalogEntry> {
    let entry = |spec, about| CatalogEntry { spec, about };
    vec![
        entry("simplex_boundary(2)", "triangle boundary, Eulerian"),
        entry("simplex_boundary(3)", "tetrahedron boundary, Eulerian"),
        entry("simplex_boundary(4)", "3-sphere, Eulerian"),
        entry("cross_polytope(2)", "square, balanced"),
        entry("cross_polytope(3)", "octahedron, balanced"),
        entry("cycle(5)", "pentagon"),
        entry("torus_7", "7-vertex torus, semi-Eulerian"),
        entry("rp2_6", "6-vertex projective plane, semi-Eulerian"),
        entry("suspension(torus_7)", "isolated singularities at the two apexes"),
        entry("cone(cycle(4))", "disk, semi-Eulerian with boundary"),
        entry("join(cycle(3),cycle(4))", "3-sphere as a join"),
        entry("circle_join(3,torus_7)", "singular along a circle"),
        entry("circle_join(4,torus_7)", "singular along a circle"),
        entry("boolean_lattice(3)", "Eulerian, simplicial"),
        entry("boolean_lattice(4)", "Eulerian, simplicial"),
        entry("boolean_lattice(5)", "Eulerian, simplicial"),
        entry("chain(3)", "far from Eulerian"),
        entry("polygon_lattice(5)", "Eulerian, not simplicial"),
        entry("polygon_lattice(6)", "Eulerian, not simplicial"),
        entry("cube_lattice(3)", "Eulerian face lattice of the cube"),
        entry("solid_cube(3)", "lower Eulerian, 3-Sing, square faces"),
        entry("doubled_edge", "simplicial poset that is not a face lattice"),
        entry("face_poset(simplex_boundary(3))", "Eulerian face lattice"),
        entry("face_poset(cross_polytope(3))", "Eulerian face lattice"),
        entry("face_poset(torus_7)", "semi-Eulerian, simplicial"),
        entry("face_poset(rp2_6)", "semi-Eulerian, simplicial"),
        entry("face_poset(suspension(torus_7))", "1-Sing, lower Eulerian"),
        entry("face_poset(circle_join(3,torus_7))", "2-Sing, lower Eulerian"),
        entry("dual(face_poset(suspension(torus_7)))", "1-Sing, not lower Eulerian"),
        entry("order_complex(boolean_lattice(4))", "balanced sphere"),
        entry(
            "order_complex(face_poset(torus_7))",
            "barycentric subdivision of the torus",
        ),
        entry(
            "order_complex(face_poset(rp2_6))",
            "barycentric subdivision of the projective plane",
        ),
        entry(
            "order_complex(face_poset(cross_polytope(3)))",
            "barycentric subdivision of the octahedron",
        ),
        entry("random_pure_complex(3,7,0.4,1)", "seeded random pure complex"),
        entry("random_graded_poset(4,0.5,7)", "seeded random graded poset"),
        entry("random_graded_poset(5,0.4,11)", "seeded random graded poset"),
    ]
}

/// Seeded generator; the same seed always gives the same stream.
struct SeededRng(Lcg64Xsh32);

impl SeededRng {
    fn new(seed: u64) -> Self {
        SeededRng(Lcg64Xsh32::new(seed, 0xda3e_39cb_94b9_5bdb))
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..n` by widening multiplication.
    fn below(&mut self, n: usize) -> usize {
        ((self.0.next_u64() as u128 * n as u128) >> 64) as usize
    }
}

struct Args<'a> {
    spec: &'a GeneratorSpec,
}

impl Args<'_> {
    fn arity(&self, allowed: &[usize]) -> Result<()> {
        if allowed.contains(&self.spec.args.len()) {
            Ok(())
        } else {
            Err(Error::BadParams(format!(
                "{} takes {:?} arguments, got {}",
                self.spec.name,
                allowed,
                self.spec.args.len()
            )))
        }
    }

    fn int(&self, i: usize, min: i64, max: i64) -> Result<i64> {
        match self.spec.args.get(i) {
            Some(Arg::Int(n)) if (min..=max).contains(n) => Ok(*n),
            other => Err(Error::BadParams(format!(
                "{}: argument {} must be an integer in {min}..={max}, got {}",
                self.spec.name,
                i + 1,
                other.map_or("nothing".to_owned(), Arg::to_string)
            ))),
        }
    }

    fn real(&self, i: usize) -> Result<f64> {
        match self.spec.args.get(i) {
            Some(Arg::Real(x)) if (0.0..=1.0).contains(x) => Ok(*x),
            Some(Arg::Int(n)) if (0..=1).contains(n) => Ok(*n as f64),
            _ => Err(Error::BadParams(format!(
                "{}: argument {} must be a density in [0, 1]",
                self.spec.name,
                i + 1
            ))),
        }
    }

    fn boolean(&self, i: usize, default: bool) -> Result<bool> {
        match self.spec.args.get(i) {
            None => Ok(default),
            Some(Arg::Bool(b)) => Ok(*b),
            Some(other) => Err(Error::BadParams(format!(
                "{}: expected true or false, got {other}",
                self.spec.name
            ))),
        }
    }

    fn object(&self, i: usize) -> Result<Generated> {
        match self.spec.args.get(i) {
            Some(Arg::Spec(s)) => generate(s),
            _ => Err(Error::BadParams(format!(
                "{}: argument {} must be a generator",
                self.spec.name,
                i + 1
            ))),
        }
    }

    fn complex(&self, i: usize) -> Result<SimplicialComplex> {
        match self.object(i)? {
            Generated::Complex(c) => Ok(c),
            Generated::Balanced(b) => Ok(b.complex().clone()),
            Generated::Poset(_) => Err(Error::BadParams(format!(
                "{}: argument {} must be a complex",
                self.spec.name,
                i + 1
            ))),
        }
    }

    fn poset(&self, i: usize) -> Result<GradedPoset> {
        match self.object(i)? {
            Generated::Poset(p) => Ok(p),
            _ => Err(Error::BadParams(format!(
                "{}: argument {} must be a poset",
                self.spec.name,
                i + 1
            ))),
        }
    }
}

/// Builds the object a spec describes.
pub fn generate(spec: &GeneratorSpec) -> Result<Generated> {
    let a = Args { spec };
    use Generated::{Balanced, Complex, Poset};
    let out = match spec.name.as_str() {
        "simplex_boundary" => {
            a.arity(&[1])?;
            Complex(simplex_boundary(a.int(0, 1, 12)? as usize)?)
        }
        "cross_polytope" => {
            a.arity(&[1])?;
            Balanced(cross_polytope(a.int(0, 1, 10)? as usize)?)
        }
        "cycle" => {
            a.arity(&[1])?;
            Complex(cycle(a.int(0, 3, 10_000)? as usize)?)
        }
        "torus_7" => {
            a.arity(&[0])?;
            Complex(torus_7())
        }
        "rp2_6" => {
            a.arity(&[0])?;
            Complex(rp2_6())
        }
        "suspension" => {
            a.arity(&[1])?;
            Complex(suspension(&a.complex(0)?))
        }
        "cone" => {
            a.arity(&[1])?;
            Complex(cone(&a.complex(0)?))
        }
        "join" => {
            a.arity(&[2])?;
            Complex(a.complex(0)?.join(&a.complex(1)?).complex)
        }
        "circle_join" => {
            a.arity(&[2])?;
            Complex(circle_join(a.int(0, 3, 10_000)? as usize, &a.complex(1)?))
        }
        "boolean_lattice" => {
            a.arity(&[1])?;
            Poset(boolean_lattice(a.int(0, 0, 10)? as usize)?)
        }
        "chain" => {
            a.arity(&[1])?;
            Poset(chain(a.int(0, 0, 10_000)? as usize)?)
        }
        "face_poset" => {
            a.arity(&[1, 2])?;
            Poset(face_poset(&a.complex(0)?, a.boolean(1, true)?)?)
        }
        "polygon_lattice" => {
            a.arity(&[1])?;
            Poset(face_poset(&cycle(a.int(0, 3, 10_000)? as usize)?, true)?)
        }
        "cube_lattice" => {
            a.arity(&[1])?;
            Poset(cube_lattice(a.int(0, 1, 6)? as usize, false)?)
        }
        "solid_cube" => {
            a.arity(&[1])?;
            Poset(cube_lattice(a.int(0, 1, 6)? as usize, true)?)
        }
        "doubled_edge" => {
            a.arity(&[0])?;
            Poset(doubled_edge())
        }
        "dual" => {
            a.arity(&[1])?;
            Poset(a.poset(0)?.dual())
        }
        "order_complex" => {
            a.arity(&[1])?;
            Balanced(a.poset(0)?.order_complex()?)
        }
        "random_pure_complex" => {
            a.arity(&[4])?;
            let d = a.int(0, 1, 12)? as usize;
            let n = a.int(1, d as i64, 16)? as usize;
            Complex(random_pure_complex(d, n, a.real(2)?, a.int(3, 0, i64::MAX)? as u64)?)
        }
        "random_graded_poset" => {
            a.arity(&[3])?;
            Poset(random_graded_poset(
                a.int(0, 1, 12)? as usize,
                a.real(1)?,
                a.int(2, 0, i64::MAX)? as u64,
            )?)
        }
        other => return Err(Error::UnknownGenerator(other.to_owned())),
    };
    Ok(out)
}

/// Parses and builds in one step.
pub fn generate_str(text: &str) -> Result<Generated> {
    generate(&text.parse()?)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn walk(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for v in start..n {
            if n - v < k - current.len() {
                break;
            }
            current.push(v);
            walk(v + 1, n, k, current, out);
            current.pop();
        }
    }
    walk(0, n, k, &mut current, &mut out);
    out
}

/// Boundary of the `d`-simplex on vertices `1..=d+1`.
pub fn simplex_boundary(d: usize) -> Result<SimplicialComplex> {
    build_complex(
        subsets_of_size(d + 1, d)
            .into_iter()
            .map(|f| f.into_iter().map(|v| v + 1)),
    )
}

/// Boundary of the `d`-dimensional cross-polytope: vertices `i` and `i + d`
/// are antipodal and both carry color `i`.
pub fn cross_polytope(d: usize) -> Result<BalancedComplex> {
    let facets = (0..1usize << d).map(|signs| {
        (0..d)
            .map(move |i| if signs & (1 << i) == 0 { i + 1 } else { i + 1 + d })
            .collect::<Vec<_>>()
    });
    let complex = build_complex(facets)?;
    let coloring: Vec<(Label, usize)> = (1..=2 * d).map(|v| (Label::from(v), (v - 1) % d + 1)).collect();
    BalancedComplex::new(complex, coloring)
}

/// The `n`-cycle on vertices `1..=n`.
pub fn cycle(n: usize) -> Result<SimplicialComplex> {
    build_complex((1..=n).map(|i| [i, i % n + 1]))
}

/// The vertex-transitive 7-vertex torus on `0..=6`: the facets are the
/// translates of `{0,1,3}` and of `{0,2,3}`.
pub fn torus_7() -> SimplicialComplex {
    let facets = (0..7).flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]]);
    build_complex(facets).expect("fixed facet list")
}

/// The 6-vertex real projective plane, the antipodal quotient of the
/// icosahedron.
pub fn rp2_6() -> SimplicialComplex {
    let facets = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 6, 2],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 2],
        [5, 6, 3],
        [6, 2, 4],
    ];
    build_complex(facets).expect("fixed facet list")
}

/// Vertices of `x` renumbered from `offset` in label order, facet by facet.
fn shifted_facets(x: &SimplicialComplex, offset: usize) -> Vec<Vec<usize>> {
    x.facets()
        .iter()
        .map(|f| f.vertices().iter().map(|&v| v as usize + offset).collect())
        .collect()
}

/// Two apexes `0` and `1` over `x`, whose vertices become `2, 3, …`.
pub fn suspension(x: &SimplicialComplex) -> SimplicialComplex {
    let facets = shifted_facets(x, 2)
        .into_iter()
        .flat_map(|f| [0, 1].map(|apex| [vec![apex], f.clone()].concat()));
    build_complex(facets).expect("suspension of a nonempty complex")
}

/// Apex `0` over `x`, whose vertices become `1, 2, …`.
pub fn cone(x: &SimplicialComplex) -> SimplicialComplex {
    build_complex(shifted_facets(x, 1).into_iter().map(|f| [vec![0], f].concat()))
        .expect("cone over a nonempty complex")
}

/// The `n`-cycle on `0..n` joined with `x`, whose vertices become `n, n+1, …`.
pub fn circle_join(n: usize, x: &SimplicialComplex) -> SimplicialComplex {
    let facets = shifted_facets(x, n)
        .into_iter()
        .flat_map(|f| (0..n).map(move |i| [vec![i, (i + 1) % n], f.clone()].concat()))
        .collect::<Vec<_>>();
    build_complex(facets).expect("join of nonempty complexes")
}

/// Subsets of `{1..n}` ordered by inclusion, labeled `{1,2}`, `{}`.
pub fn boolean_lattice(n: usize) -> Result<GradedPoset> {
    let name = |m: usize| {
        braced(
            &(0..n)
                .filter(|i| m & (1 << i) != 0)
                .map(|i| Label::from(i + 1))
                .collect::<Vec<_>>(),
        )
    };
    let covers: Vec<(String, String)> = (0..1usize << n)
        .flat_map(|m| (0..n).filter(move |i| m & (1 << i) == 0).map(move |i| (m, m | 1 << i)))
        .map(|(a, b)| (name(a), name(b)))
        .collect();
    build_poset((0..1usize << n).map(name), covers)
}

/// `0 < 1 < … < n`.
pub fn chain(n: usize) -> Result<GradedPoset> {
    build_poset(0..=n, (0..n).map(|i| (i, i + 1)))
}

/// Faces of `x` ordered by inclusion, labeled `{1,2}` with `{}` for the
/// empty face, plus an extra top element `top` when `with_top` is set.
pub fn face_poset(x: &SimplicialComplex, with_top: bool) -> Result<GradedPoset> {
    let name = |f: &crate::complex::Face| braced(&x.face_labels(f));
    let mut elements: Vec<String> = x.faces().iter().map(name).collect();
    let mut covers: Vec<(String, String)> = Vec::new();
    for face in x.faces() {
        for &v in face.vertices() {
            let smaller = crate::complex::Face::new(face.vertices().iter().copied().filter(|&w| w != v).collect());
            covers.push((name(&smaller), name(face)));
        }
    }
    if with_top {
        elements.push("top".to_owned());
        covers.extend(x.facets().iter().map(|f| (name(f), "top".to_owned())));
    }
    build_poset(elements, covers)
}

/// Faces of the `n`-cube as words over `0`, `1`, `*`, plus `{}` below and,
/// when `solid`, an extra `top` above the cube itself.
pub fn cube_lattice(n: usize, solid: bool) -> Result<GradedPoset> {
    let words: Vec<String> = (0..3usize.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let c = ['0', '1', '*'][code % 3];
                    code /= 3;
                    c
                })
                .collect()
        })
        .collect();
    let mut covers: Vec<(String, String)> = Vec::new();
    for w in &words {
        if !w.contains('*') {
            covers.push(("{}".to_owned(), w.clone()));
        }
        for (i, c) in w.char_indices() {
            if c != '*' {
                let mut up = w.clone();
                up.replace_range(i..i + 1, "*");
                covers.push((w.clone(), up));
            }
        }
    }
    let mut elements = words;
    elements.push("{}".to_owned());
    if solid {
        covers.push(("*".repeat(n), "top".to_owned()));
        elements.push("top".to_owned());
    }
    build_poset(elements, covers)
}

/// Two vertices joined by two edges, with a top: simplicial but not the
/// face poset of a simplicial complex.
pub fn doubled_edge() -> GradedPoset {
    build_poset(
        ["{}", "a", "b", "e", "f", "top"],
        [
            ("{}", "a"),
            ("{}", "b"),
            ("a", "e"),
            ("b", "e"),
            ("a", "f"),
            ("b", "f"),
            ("e", "top"),
            ("f", "top"),
        ],
    )
    .expect("fixed poset")
}

/// Every `d`-subset of `1..=n` is kept with probability `density`; if none
/// survive, one is drawn uniformly.
pub fn random_pure_complex(d: usize, n: usize, density: f64, seed: u64) -> Result<SimplicialComplex> {
    if d == 0 || d > n {
        return Err(Error::BadParams(format!(
            "random_pure_complex needs 1 <= d <= n, got d = {d}, n = {n}"
        )));
    }
    let mut rng = SeededRng::new(seed);
    let all = subsets_of_size(n, d);
    let mut facets: Vec<&Vec<usize>> = all.iter().filter(|_| rng.unit() < density).collect();
    if facets.is_empty() {
        facets.push(&all[rng.below(all.len())]);
    }
    build_complex(facets.into_iter().map(|f| f.iter().map(|v| v + 1)))
}

/// A random poset of the given total rank. Each inner rank gets 1 to 4
/// elements; covers between adjacent inner ranks are kept with probability
/// `density`, then every element is given at least one lower and one upper
/// cover. Elements are `bot`, `top` and `r<rank>n<i>`.
pub fn random_graded_poset(rank: usize, density: f64, seed: u64) -> Result<GradedPoset> {
    if rank == 0 {
        return Err(Error::BadParams("random_graded_poset needs rank >= 1".into()));
    }
    let mut rng = SeededRng::new(seed);
    let layers: Vec<Vec<String>> = (1..rank)
        .map(|r| (0..1 + rng.below(4)).map(|i| format!("r{r}n{i}")).collect())
        .collect();
    let mut covers: Vec<(String, String)> = Vec::new();
    for pair in layers.windows(2) {
        let (lower, upper) = (&pair[0], &pair[1]);
        let mut kept = vec![vec![false; upper.len()]; lower.len()];
        for row in kept.iter_mut() {
            for cell in row.iter_mut() {
                *cell = rng.unit() < density;
            }
        }
        for row in kept.iter_mut() {
            if !row.iter().any(|&c| c) {
                row[rng.below(upper.len())] = true;
            }
        }
        for j in 0..upper.len() {
            if !kept.iter().any(|row| row[j]) {
                kept[rng.below(lower.len())][j] = true;
            }
        }
        for (i, row) in kept.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c {
                    covers.push((lower[i].clone(), upper[j].clone()));
                }
            }
        }
    }
    let first = layers.first().cloned().unwrap_or_else(|| vec!["top".to_owned()]);
    covers.extend(first.iter().map(|x| ("bot".to_owned(), x.clone())));
    if let Some(last) = layers.last() {
        covers.extend(last.iter().map(|x| (x.clone(), "top".to_owned())));
    }
    let elements = ["bot".to_owned(), "top".to_owned()]
        .into_iter()
        .chain(layers.into_iter().flatten());
    build_poset(elements, covers)
}
