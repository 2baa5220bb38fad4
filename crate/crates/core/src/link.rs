//! Planar link diagrams and the multivariable Alexander polynomial.
//!
//! A diagram is given PD-style: every crossing lists its four incident edges
//! counterclockwise, starting from the incoming under-strand. Each edge label
//! occurs exactly twice. On a positive crossing the over-strand runs from
//! `ends[3]` to `ends[1]`; on a negative one from `ends[1]` to `ends[3]`.
//! Sign 0 marks a double point, laid out like a positive crossing.
//!
//! ```json
//! {"variables": ["x", "y"],
//!  "components": [{"colour": 1, "rot": 1, "start": "e1"}, ...],
//!  "crossings": [{"id": "a1", "sign": 1, "ends": ["e4", "e7", "e1", "e6"]}, ...],
//!  "outer": {"arc": "e3", "side": "left"},
//!  "words": {"a5": {"y": -2}}}
//! ```
//!
//! Wirtinger arcs are named after the crossing at which they start as the
//! outgoing under-strand, so arc `a5` is the column paired with row `a5`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Deserialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, Monomial, MultiPoly, PolyMatrix, VarNames};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceSide {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkComponent {
    pub colour: usize,
    pub rot: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub id: String,
    /// +1, -1, or 0 for a double point.
    pub sign: i8,
    /// Edge indices, counterclockwise from the incoming under-strand.
    pub ends: [usize; 4],
}

type CornerFaces = HashMap<(usize, usize), usize>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinkError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("crossing '{crossing}': {msg}")]
    Crossing { crossing: String, msg: String },
    #[error("edge '{edge}' occurs {count} times (expected 2)")]
    EdgeCount { edge: String, count: usize },
    #[error("edge '{0}' is entered or left twice; check crossing signs and end order")]
    Orientation(String),
    #[error("component {component}: {msg}")]
    Component { component: usize, msg: String },
    #[error("no outer-face hint and no path word for crossing '{0}'")]
    NoOuter(String),
    #[error("diagram is not planar: {faces} faces for {crossings} crossings")]
    NotPlanar { faces: usize, crossings: usize },
    #[error("no path from crossing '{0}' to the outer face (split diagram?)")]
    NoPath(String),
    #[error("diagram has double points; resolve them first")]
    Singular,
    #[error("unknown crossing '{0}'")]
    UnknownCrossing(String),
    #[error("{0}")]
    Other(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileComponent {
    colour: usize,
    rot: i32,
    #[serde(default)]
    start: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileCrossing {
    id: String,
    sign: i8,
    ends: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileOuter {
    #[serde(alias = "edge")]
    arc: String,
    side: FaceSide,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileLink {
    variables: Vec<String>,
    components: Vec<FileComponent>,
    crossings: Vec<FileCrossing>,
    #[serde(default)]
    outer: Option<FileOuter>,
    #[serde(default)]
    words: BTreeMap<String, BTreeMap<String, i32>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkDiagram {
    variables: VarNames,
    components: Vec<LinkComponent>,
    crossings: Vec<Crossing>,
    edges: Vec<String>,
    outer: Option<(usize, FaceSide)>,
    words: BTreeMap<usize, Monomial>,
    starts: Vec<usize>,
    // derived
    head: Vec<(usize, usize)>,
    tail: Vec<(usize, usize)>,
    comp_of_edge: Vec<usize>,
}

pub fn parse_link(text: &str) -> Result<LinkDiagram, LinkError> {
    let f: FileLink = serde_json::from_str(text).map_err(|e| LinkError::Json(e.to_string()))?;
    let variables = VarNames::new(f.variables);
    let mut edges: Vec<String> = Vec::new();
    let mut edge_index: HashMap<String, usize> = HashMap::new();
    let mut crossings = Vec::new();
    let mut ids = HashMap::new();
    for c in f.crossings {
        let bad = |msg: &str| LinkError::Crossing { crossing: c.id.clone(), msg: msg.into() };
        if ids.insert(c.id.clone(), crossings.len()).is_some() {
            return Err(bad("duplicate crossing id"));
        }
        if c.ends.len() != 4 {
            return Err(bad("a crossing has exactly four ends"));
        }
        if !matches!(c.sign, -1..=1) {
            return Err(bad("sign must be 1, -1 or 0"));
        }
        let mut ends = [0; 4];
        for (p, e) in c.ends.iter().enumerate() {
            ends[p] = *edge_index.entry(e.clone()).or_insert_with(|| {
                edges.push(e.clone());
                edges.len() - 1
            });
        }
        crossings.push(Crossing { id: c.id, sign: c.sign, ends });
    }
    if crossings.is_empty() {
        return Err(LinkError::Other("a diagram needs at least one crossing".into()));
    }
    let mut components = Vec::new();
    let mut starts = Vec::new();
    for (k, c) in f.components.iter().enumerate() {
        if c.colour == 0 || c.colour > variables.len() {
            return Err(LinkError::Component { component: k, msg: format!("colour {} is not a declared variable", c.colour) });
        }
        components.push(LinkComponent { colour: c.colour - 1, rot: c.rot });
        let start = match &c.start {
            Some(e) => *edge_index
                .get(e)
                .ok_or_else(|| LinkError::Component { component: k, msg: format!("unknown start edge '{e}'") })?,
            None if f.components.len() == 1 => crossings[0].ends[0],
            None => return Err(LinkError::Component { component: k, msg: "missing start edge".into() }),
        };
        starts.push(start);
    }
    if components.is_empty() {
        return Err(LinkError::Other("no components".into()));
    }
    let outer = match f.outer {
        Some(o) => Some((
            *edge_index.get(&o.arc).ok_or_else(|| LinkError::Other(format!("outer hint names unknown edge '{}'", o.arc)))?,
            o.side,
        )),
        None => None,
    };
    let mut words = BTreeMap::new();
    for (id, w) in f.words {
        let x = *ids.get(&id).ok_or_else(|| LinkError::UnknownCrossing(id.clone()))?;
        let mut pairs = Vec::new();
        for (name, e) in w {
            let k = variables.index_of(&name).ok_or_else(|| LinkError::Other(format!("word for '{id}': unknown variable '{name}'")))?;
            pairs.push((k, e.checked_mul(2).ok_or_else(|| LinkError::Other("word exponent too large".into()))?));
        }
        words.insert(x, Monomial::from_pairs(pairs));
    }
    let d = LinkDiagram::build(variables, components, crossings, edges, &starts, outer, words)?;
    if d.outer.is_none() {
        if let Some(c) = (0..d.crossings.len()).find(|x| !d.words.contains_key(x)) {
            return Err(LinkError::NoOuter(d.crossings[c].id.clone()));
        }
    }
    Ok(d)
}

impl LinkDiagram {
    fn build(
        variables: VarNames,
        components: Vec<LinkComponent>,
        crossings: Vec<Crossing>,
        edges: Vec<String>,
        starts: &[usize],
        outer: Option<(usize, FaceSide)>,
        words: BTreeMap<usize, Monomial>,
    ) -> Result<Self, LinkError> {
        let ne = edges.len();
        let mut count = vec![0usize; ne];
        let mut head = vec![None; ne];
        let mut tail = vec![None; ne];
        for (x, c) in crossings.iter().enumerate() {
            for (p, &e) in c.ends.iter().enumerate() {
                count[e] += 1;
                let slot = if is_head(c.sign, p) { &mut head[e] } else { &mut tail[e] };
                if slot.is_some() {
                    return Err(LinkError::Orientation(edges[e].clone()));
                }
                *slot = Some((x, p));
            }
        }
        for e in 0..ne {
            if count[e] != 2 {
                return Err(LinkError::EdgeCount { edge: edges[e].clone(), count: count[e] });
            }
        }
        let head: Vec<(usize, usize)> = head.into_iter().map(Option::unwrap).collect();
        let tail: Vec<(usize, usize)> = tail.into_iter().map(Option::unwrap).collect();
        let mut comp_of_edge = vec![usize::MAX; ne];
        for (k, &s) in starts.iter().enumerate() {
            let mut e = s;
            loop {
                if comp_of_edge[e] != usize::MAX {
                    if comp_of_edge[e] == k && e == s {
                        break;
                    }
                    return Err(LinkError::Component { component: k, msg: "start edge lies on another component".into() });
                }
                comp_of_edge[e] = k;
                let (x, p) = head[e];
                e = crossings[x].ends[(p + 2) % 4];
            }
        }
        if let Some(e) = comp_of_edge.iter().position(|&c| c == usize::MAX) {
            return Err(LinkError::Other(format!("edge '{}' belongs to no declared component", edges[e])));
        }
        Ok(LinkDiagram {
            variables,
            components,
            crossings,
            edges,
            outer,
            words,
            starts: starts.to_vec(),
            head,
            tail,
            comp_of_edge,
        })
    }

    pub fn variables(&self) -> &VarNames {
        &self.variables
    }

    pub fn components(&self) -> &[LinkComponent] {
        &self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edge_label(&self, e: usize) -> &str {
        &self.edges[e]
    }

    pub fn crossing_index(&self, id: &str) -> Option<usize> {
        self.crossings.iter().position(|c| c.id == id)
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn double_points(&self) -> Vec<usize> {
        (0..self.crossings.len()).filter(|&x| self.crossings[x].sign == 0).collect()
    }

    /// Edge at which the walk along component k starts.
    pub fn start_edge(&self, k: usize) -> usize {
        self.starts[k]
    }

    /// Wirtinger arc labels: the ids of the crossings where the arcs start.
    pub fn arc_labels(&self) -> Vec<String> {
        self.crossings.iter().map(|c| c.id.clone()).collect()
    }

    pub fn component_of_edge(&self, e: usize) -> usize {
        self.comp_of_edge[e]
    }

    /// Colour (variable index) of an edge.
    pub fn edge_colour(&self, e: usize) -> usize {
        self.components[self.comp_of_edge[e]].colour
    }

    /// Crossing and position where the edge ends.
    pub fn head(&self, e: usize) -> (usize, usize) {
        self.head[e]
    }

    /// Crossing and position where the edge starts.
    pub fn tail(&self, e: usize) -> (usize, usize) {
        self.tail[e]
    }

    /// The edge following `e` along its component.
    pub fn next_edge(&self, e: usize) -> usize {
        let (x, p) = self.head[e];
        self.crossings[x].ends[(p + 2) % 4]
    }

    /// Replaces a double point by a crossing of the given sign. The negative
    /// resolution makes the second strand the under-strand, which rotates the
    /// ends by one place.
    pub fn resolve_double_point(&self, x: usize, sign: i8) -> LinkDiagram {
        assert_eq!(self.crossings[x].sign, 0, "not a double point");
        let mut d = self.clone();
        let c = &mut d.crossings[x];
        if sign > 0 {
            c.sign = 1;
        } else {
            let [i, j, k, l] = c.ends;
            c.ends = [l, i, j, k];
            c.sign = -1;
            let ends = c.ends;
            for (p, &e) in ends.iter().enumerate() {
                if is_head(-1, p) {
                    d.head[e] = (x, p);
                } else {
                    d.tail[e] = (x, p);
                }
            }
        }
        d
    }

    /// Number of crossings at which each component is the over-strand.
    pub fn mu(&self) -> Vec<i32> {
        let mut mu = vec![0; self.components.len()];
        for c in &self.crossings {
            mu[self.comp_of_edge[c.ends[1]]] += 1;
        }
        mu
    }

    pub fn rot(&self) -> Vec<i32> {
        self.components.iter().map(|c| c.rot).collect()
    }

    /// Wirtinger arc of every edge: the crossing where the arc starts.
    fn arcs(&self) -> Result<Vec<usize>, LinkError> {
        if !self.double_points().is_empty() {
            return Err(LinkError::Singular);
        }
        let mut arc = vec![usize::MAX; self.edges.len()];
        for (x, c) in self.crossings.iter().enumerate() {
            let mut e = c.ends[2];
            loop {
                arc[e] = x;
                let (y, p) = self.head[e];
                if p == 0 {
                    break;
                }
                e = self.crossings[y].ends[(p + 2) % 4];
                if e == c.ends[2] {
                    break;
                }
            }
        }
        if let Some(e) = arc.iter().position(|&a| a == usize::MAX) {
            return Err(LinkError::Component {
                component: self.comp_of_edge[e],
                msg: "never passes under a crossing; add a kink".into(),
            });
        }
        Ok(arc)
    }

    /// Fox-calculus matrix of the Wirtinger presentation. Rows are crossings,
    /// columns the arcs starting at them, both labelled by crossing id.
    ///
    /// With a = incoming under arc, b = over arc, c = outgoing under arc,
    /// x = under colour and y = over colour, the row of c is
    ///   positive crossing: (-y, x - 1, 1) on (a, b, c)
    ///   negative crossing: (-1, 1 - x, y) on (a, b, c)
    /// This assignment reproduces the worked two-component example, with x
    /// the variable of the strand passing under.
    pub fn wirtinger_matrix(&self) -> Result<PolyMatrix, LinkError> {
        let arc = self.arcs()?;
        let n = self.variables.len();
        let labels: Vec<String> = self.crossings.iter().map(|c| c.id.clone()).collect();
        let mut m = PolyMatrix::with_labels(n, labels.clone(), labels);
        let one = MultiPoly::one(n);
        for (x, c) in self.crossings.iter().enumerate() {
            let (a, b, cc) = (arc[c.ends[0]], arc[c.ends[1]], arc[c.ends[2]]);
            let tx = MultiPoly::var(n, self.edge_colour(c.ends[0]));
            let ty = MultiPoly::var(n, self.edge_colour(c.ends[1]));
            if c.sign > 0 {
                m.add_to(x, a, &-&ty);
                m.add_to(x, b, &(&tx - &one));
                m.add_to(x, cc, &one);
            } else {
                m.add_to(x, a, &-&one);
                m.add_to(x, b, &(&one - &tx));
                m.add_to(x, cc, &ty);
            }
        }
        Ok(m)
    }

    /// Face id of every corner (crossing, p), the corner between rays p and p+1.
    fn faces(&self) -> Result<(CornerFaces, usize), LinkError> {
        let mut face = HashMap::new();
        let mut count = 0;
        for x in 0..self.crossings.len() {
            for p in 0..4 {
                if face.contains_key(&(x, p)) {
                    continue;
                }
                let mut cur = (x, p);
                while !face.contains_key(&cur) {
                    face.insert(cur, count);
                    cur = self.other_end((cur.0, (cur.1 + 1) % 4));
                }
                if cur != (x, p) {
                    return Err(LinkError::NotPlanar { faces: count, crossings: self.crossings.len() });
                }
                count += 1;
            }
        }
        Ok((face, count))
    }

    fn other_end(&self, (x, p): (usize, usize)) -> (usize, usize) {
        let e = self.crossings[x].ends[p];
        if self.head[e] == (x, p) {
            self.tail[e]
        } else {
            self.head[e]
        }
    }

    fn left_corner(&self, e: usize) -> (usize, usize) {
        let (y, q) = self.head[e];
        (y, (q + 3) % 4)
    }

    fn right_corner(&self, e: usize) -> (usize, usize) {
        self.head[e]
    }

    fn connected(&self) -> bool {
        let n = self.crossings.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &e in &self.crossings[x].ends {
                for y in [self.head[e].0, self.tail[e].0] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Path word of crossing i: the monomial collected along a dual path from
    /// the region beside crossing i to the unbounded region.
    ///
    /// The path starts in the corner left of the outgoing under-strand (between
    /// rays 2 and 3 on a positive crossing, rays 3 and 0 on a negative one).
    /// Crossing an arc of colour t from its left side to its right side
    /// contributes t^-1, the opposite direction t.
    pub fn path_word(&self, i: usize) -> Result<Monomial, LinkError> {
        if let Some(w) = self.words.get(&i) {
            return Ok(w.clone());
        }
        let id = &self.crossings[i].id;
        let (oe, side) = self.outer.ok_or_else(|| LinkError::NoOuter(id.clone()))?;
        let (face, nf) = self.faces()?;
        if self.connected() && nf != self.crossings.len() + 2 {
            return Err(LinkError::NotPlanar { faces: nf, crossings: self.crossings.len() });
        }
        let mut adj: Vec<Vec<(usize, Monomial)>> = vec![Vec::new(); nf];
        for e in 0..self.edges.len() {
            let lf = face[&self.left_corner(e)];
            let rf = face[&self.right_corner(e)];
            let t = Monomial::t_power(self.edge_colour(e), 1);
            adj[lf].push((rf, t.inv()));
            adj[rf].push((lf, t));
        }
        let outer = face[&match side {
            FaceSide::Left => self.left_corner(oe),
            FaceSide::Right => self.right_corner(oe),
        }];
        let corner = if self.crossings[i].sign < 0 { 3 } else { 2 };
        let start = face[&(i, corner)];
        let mut word: Vec<Option<Monomial>> = vec![None; nf];
        word[start] = Some(Monomial::one());
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            let wf = word[f].clone().unwrap();
            for (g, step) in &adj[f] {
                if word[*g].is_none() {
                    word[*g] = Some(wf.mul(step));
                    queue.push_back(*g);
                }
            }
        }
        word[outer].clone().ok_or_else(|| LinkError::NoPath(id.clone()))
    }

    /// Δ(L) with row i and column j deleted (crossing indices).
    pub fn mva(&self, i: usize, j: usize) -> Result<MvaResult, LinkError> {
        let n = self.variables.len();
        let matrix = self.wirtinger_matrix()?;
        let det = matrix.delete(i, j).det()?;
        let word = self.path_word(i)?;
        let (mu, rot) = (self.mu(), self.rot());
        let mut norm = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            norm.push((c.colour, rot[k] - mu[k]));
        }
        // colour of arc j (= the arc starting at crossing j)
        let ti = self.edge_colour(self.crossings[j].ends[2]);
        let signed = if (i + j) % 2 == 1 { -&det } else { det.clone() };
        let scaled = signed.mul_monomial(&Monomial::from_pairs(norm).div(&word));
        let t_minus_one = &MultiPoly::var(n, ti) - &MultiPoly::one(n);
        let (value, knot) = if self.is_knot() {
            let over = scaled.div_exact(&t_minus_one).ok();
            (scaled.clone(), Some(KnotCandidates { times_t_minus_one: &scaled * &t_minus_one, over_t_minus_one: over }))
        } else {
            (scaled.div_exact(&t_minus_one)?, None)
        };
        Ok(MvaResult { value, det, word, mu, rot, matrix, row: i, col: j, knot })
    }
}

fn is_head(sign: i8, p: usize) -> bool {
    match p {
        0 => true,
        2 => false,
        1 => sign < 0,
        _ => sign >= 0,
    }
}

/// For knots the (t - 1) division is skipped; both readings of the factor
/// relating this normalisation to the usual one are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotCandidates {
    pub times_t_minus_one: MultiPoly,
    /// Present only when the division is exact.
    pub over_t_minus_one: Option<MultiPoly>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MvaResult {
    pub value: MultiPoly,
    /// det of the matrix with row `row` and column `col` removed, before signs.
    pub det: MultiPoly,
    pub word: Monomial,
    pub mu: Vec<i32>,
    pub rot: Vec<i32>,
    pub matrix: PolyMatrix,
    pub row: usize,
    pub col: usize,
    pub knot: Option<KnotCandidates>,
}
