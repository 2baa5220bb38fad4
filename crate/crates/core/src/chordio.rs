//! Coloured chord diagrams: data model, JSON format, subdivision and enumeration.
//!
//! ```json
//! {"variables": ["x", "y"],
//!  "components": [{"colour": 1, "sites": [{"marked": true}, {"chord": "c1", "side": "A"}]},
//!                 {"colour": 2, "sites": [{"chord": "c1", "side": "B"}]}]}
//! ```
//!
//! Sites are listed in the orientation of their circle. Arc `a_k` is the
//! out-arc of the k-th site in reading order (components in file order).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::VarNames;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Site {
    ChordEnd { chord: String, side: Side },
    Marked,
    Subdivision,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    /// 0-based variable index.
    pub colour: usize,
    pub sites: Vec<Site>,
}

/// Position of a site: (component, index in its site list).
pub type SitePos = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chord {
    pub id: String,
    pub a: SitePos,
    pub b: SitePos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordDiagram {
    variables: VarNames,
    components: Vec<Component>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChordError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("no marked point")]
    NoMarked,
    #[error("second marked point at component {component}, site {site}")]
    MultipleMarked { component: usize, site: usize },
    #[error("chord '{chord}' has only one endpoint (component {component}, site {site})")]
    Dangling { chord: String, component: usize, site: usize },
    #[error("chord '{chord}' has more than two endpoints (component {component}, site {site})")]
    Overused { chord: String, component: usize, site: usize },
    #[error("chord '{chord}' uses side {side:?} twice")]
    SameSide { chord: String, side: Side },
    #[error("component {0} has no sites")]
    Empty(usize),
    #[error("component {0} carries no chord endpoint")]
    NoChord(usize),
    #[error("component {component}: colour {colour} is not one of the {count} declared variables")]
    UnknownColour { component: usize, colour: usize, count: usize },
    #[error("component {component}, site {site}: {msg}")]
    BadSite { component: usize, site: usize, msg: String },
    #[error("unknown arc '{0}'")]
    UnknownArc(String),
    #[error("{0}")]
    Other(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSite {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    chord: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    side: Option<Side>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    marked: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    sub: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileComponent {
    colour: usize,
    sites: Vec<FileSite>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDiagram {
    variables: Vec<String>,
    components: Vec<FileComponent>,
}

pub fn parse_chord_diagram(text: &str) -> Result<ChordDiagram, ChordError> {
    let f: FileDiagram = serde_json::from_str(text).map_err(|e| ChordError::Json(e.to_string()))?;
    let variables = VarNames::new(f.variables);
    let mut components = Vec::new();
    for (ci, c) in f.components.into_iter().enumerate() {
        if c.colour == 0 || c.colour > variables.len() {
            return Err(ChordError::UnknownColour { component: ci, colour: c.colour, count: variables.len() });
        }
        let mut sites = Vec::new();
        for (si, s) in c.sites.into_iter().enumerate() {
            let bad = |msg: &str| ChordError::BadSite { component: ci, site: si, msg: msg.into() };
            let site = match (s.chord, s.side, s.marked, s.sub) {
                (Some(chord), Some(side), false, false) => Site::ChordEnd { chord, side },
                (Some(_), None, false, false) => return Err(bad("chord endpoint without a side")),
                (None, None, true, false) => Site::Marked,
                (None, None, false, true) => Site::Subdivision,
                _ => return Err(bad("a site is exactly one of a chord endpoint, the marked point or a subdivision")),
            };
            sites.push(site);
        }
        components.push(Component { colour: c.colour - 1, sites });
    }
    ChordDiagram::new(variables, components)
}

impl ChordDiagram {
    /// Validates and builds a diagram.
    pub fn new(variables: VarNames, components: Vec<Component>) -> Result<Self, ChordError> {
        let mut marked = None;
        let mut seen: BTreeMap<&str, Vec<(Side, SitePos)>> = BTreeMap::new();
        for (ci, c) in components.iter().enumerate() {
            if c.colour >= variables.len() {
                return Err(ChordError::UnknownColour { component: ci, colour: c.colour + 1, count: variables.len() });
            }
            if c.sites.is_empty() {
                return Err(ChordError::Empty(ci));
            }
            for (si, s) in c.sites.iter().enumerate() {
                match s {
                    Site::Marked => {
                        if marked.is_some() {
                            return Err(ChordError::MultipleMarked { component: ci, site: si });
                        }
                        marked = Some((ci, si));
                    }
                    Site::ChordEnd { chord, side } => {
                        let e = seen.entry(chord.as_str()).or_default();
                        if e.len() == 2 {
                            return Err(ChordError::Overused { chord: chord.clone(), component: ci, site: si });
                        }
                        e.push((*side, (ci, si)));
                    }
                    Site::Subdivision => {}
                }
            }
            if !c.sites.iter().any(|s| matches!(s, Site::ChordEnd { .. })) {
                return Err(ChordError::NoChord(ci));
            }
        }
        if marked.is_none() {
            return Err(ChordError::NoMarked);
        }
        for (chord, ends) in &seen {
            if ends.len() == 1 {
                let (ci, si) = ends[0].1;
                return Err(ChordError::Dangling { chord: chord.to_string(), component: ci, site: si });
            }
            if ends[0].0 == ends[1].0 {
                return Err(ChordError::SameSide { chord: chord.to_string(), side: ends[0].0 });
            }
        }
        Ok(ChordDiagram { variables, components })
    }

    pub fn variables(&self) -> &VarNames {
        &self.variables
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn arc_count(&self) -> usize {
        self.components.iter().map(|c| c.sites.len()).sum()
    }

    fn offset(&self, comp: usize) -> usize {
        self.components[..comp].iter().map(|c| c.sites.len()).sum()
    }

    /// Matrix index of the arc leaving the site.
    pub fn out_arc(&self, (c, s): SitePos) -> usize {
        self.offset(c) + s
    }

    /// Matrix index of the arc entering the site.
    pub fn in_arc(&self, (c, s): SitePos) -> usize {
        let n = self.components[c].sites.len();
        self.offset(c) + (s + n - 1) % n
    }

    pub fn arc_labels(&self) -> Vec<String> {
        (1..=self.arc_count()).map(|k| format!("a{k}")).collect()
    }

    pub fn arc_index(&self, label: &str) -> Option<usize> {
        let k: usize = label.strip_prefix('a')?.parse().ok()?;
        (k >= 1 && k <= self.arc_count()).then(|| k - 1)
    }

    /// Colour (variable index) of every arc.
    pub fn arc_colours(&self) -> Vec<usize> {
        self.components.iter().flat_map(|c| std::iter::repeat_n(c.colour, c.sites.len())).collect()
    }

    pub fn marked_site(&self) -> SitePos {
        for (ci, c) in self.components.iter().enumerate() {
            if let Some(si) = c.sites.iter().position(|s| *s == Site::Marked) {
                return (ci, si);
            }
        }
        unreachable!("validated diagram has a marked point")
    }

    /// The marked arc: the out-arc of the marked point.
    pub fn marked_arc(&self) -> usize {
        self.out_arc(self.marked_site())
    }

    pub fn marked_colour(&self) -> usize {
        self.components[self.marked_site().0].colour
    }

    /// Chords in order of first appearance, with side-A and side-B positions.
    pub fn chords(&self) -> Vec<Chord> {
        let mut order: Vec<String> = Vec::new();
        let mut pos: BTreeMap<String, (Option<SitePos>, Option<SitePos>)> = BTreeMap::new();
        for (ci, c) in self.components.iter().enumerate() {
            for (si, s) in c.sites.iter().enumerate() {
                if let Site::ChordEnd { chord, side } = s {
                    let e = pos.entry(chord.clone()).or_insert_with(|| {
                        order.push(chord.clone());
                        (None, None)
                    });
                    match side {
                        Side::A => e.0 = Some((ci, si)),
                        Side::B => e.1 = Some((ci, si)),
                    }
                }
            }
        }
        order
            .into_iter()
            .map(|id| {
                let (a, b) = pos[&id];
                Chord { id, a: a.unwrap(), b: b.unwrap() }
            })
            .collect()
    }

    pub fn chord_count(&self) -> usize {
        self.chords().len()
    }

    /// Inserts a subdivision point splitting the given arc.
    pub fn subdivide(&self, arc: &str) -> Result<ChordDiagram, ChordError> {
        let k = self.arc_index(arc).ok_or_else(|| ChordError::UnknownArc(arc.into()))?;
        let mut d = self.clone();
        let mut rest = k;
        for c in &mut d.components {
            if rest < c.sites.len() {
                c.sites.insert(rest + 1, Site::Subdivision);
                return Ok(d);
            }
            rest -= c.sites.len();
        }
        unreachable!()
    }

    /// Reverses the A/B roles of one chord.
    pub fn swap_sides(&self, chord: &str) -> ChordDiagram {
        let mut d = self.clone();
        for c in &mut d.components {
            for s in &mut c.sites {
                if let Site::ChordEnd { chord: id, side } = s {
                    if id == chord {
                        *side = side.other();
                    }
                }
            }
        }
        d
    }

    /// Moves the marked point to position `index` of component `comp`
    /// (index counted after removing the marked point).
    pub fn move_marked(&self, comp: usize, index: usize) -> Result<ChordDiagram, ChordError> {
        let mut d = self.clone();
        let (mc, ms) = self.marked_site();
        d.components[mc].sites.remove(ms);
        let sites = &mut d.components.get_mut(comp).ok_or_else(|| ChordError::Other(format!("no component {comp}")))?.sites;
        if index > sites.len() {
            return Err(ChordError::Other(format!("position {index} out of range")));
        }
        sites.insert(index, Site::Marked);
        ChordDiagram::new(d.variables, d.components)
    }

    pub fn to_json(&self) -> String {
        let f = FileDiagram {
            variables: self.variables.names().to_vec(),
            components: self
                .components
                .iter()
                .map(|c| FileComponent {
                    colour: c.colour + 1,
                    sites: c
                        .sites
                        .iter()
                        .map(|s| match s {
                            Site::ChordEnd { chord, side } => {
                                FileSite { chord: Some(chord.clone()), side: Some(*side), marked: false, sub: false }
                            }
                            Site::Marked => FileSite { chord: None, side: None, marked: true, sub: false },
                            Site::Subdivision => FileSite { chord: None, side: None, marked: false, sub: true },
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&f).expect("diagram serialises")
    }

    /// Diagram from per-component endpoint sequences; chord ids are numbered by
    /// first appearance, the first appearance being side A. The marked point
    /// goes first on component 0.
    pub fn from_words(variables: VarNames, colours: &[usize], words: &[Vec<usize>]) -> Result<ChordDiagram, ChordError> {
        let mut names: BTreeMap<usize, String> = BTreeMap::new();
        let mut components = Vec::new();
        for (ci, w) in words.iter().enumerate() {
            let mut sites = Vec::new();
            if ci == 0 {
                sites.push(Site::Marked);
            }
            for &ch in w {
                let side = if names.contains_key(&ch) { Side::B } else { Side::A };
                let n = names.len();
                let id = names.entry(ch).or_insert_with(|| format!("c{}", n + 1)).clone();
                sites.push(Site::ChordEnd { chord: id, side });
            }
            components.push(Component { colour: colours[ci], sites });
        }
        ChordDiagram::new(variables, components)
    }

    /// Endpoint words per component (chord numbers by first appearance), ignoring
    /// the marked point and subdivisions.
    pub fn words(&self) -> Vec<Vec<String>> {
        self.components
            .iter()
            .map(|c| {
                c.sites
                    .iter()
                    .filter_map(|s| match s {
                        Site::ChordEnd { chord, .. } => Some(chord.clone()),
                        _ => None,
                    })
                    .collect()
            })
            .collect()
    }

    /// True when some chord has both endpoints adjacent on one circle, with no
    /// other chord endpoint between them on one of the two sides.
    pub fn has_isolated_chord(&self) -> bool {
        for w in self.words() {
            let n = w.len();
            for i in 0..n {
                if n >= 2 && w[i] == w[(i + 1) % n] {
                    return true;
                }
            }
        }
        false
    }
}

/// All coloured chord diagrams with `m` chords on circles with the given
/// colours, each circle carrying at least one endpoint. The marked point sits
/// at the start of circle 0. Rotations are not identified.
pub fn enumerate_diagrams(m: usize, variables: &VarNames, colours: &[usize]) -> Vec<ChordDiagram> {
    let mut out = Vec::new();
    let c = colours.len();
    if c == 0 || 2 * m < c {
        return out;
    }
    for sizes in compositions(2 * m, c) {
        for pairing in pairings(2 * m) {
            let mut words = Vec::new();
            let mut start = 0;
            for &s in &sizes {
                words.push(pairing[start..start + s].to_vec());
                start += s;
            }
            if let Ok(d) = ChordDiagram::from_words(variables.clone(), colours, &words) {
                out.push(d);
            }
        }
    }
    out
}

// compositions of n into k positive parts
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return if n >= 1 { vec![vec![n]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

// perfect matchings of 0..n, encoded as the chord label at each position
fn pairings(n: usize) -> Vec<Vec<usize>> {
    fn go(slots: &mut Vec<Option<usize>>, next: usize, out: &mut Vec<Vec<usize>>) {
        match slots.iter().position(Option::is_none) {
            None => out.push(slots.iter().map(|s| s.unwrap()).collect()),
            Some(i) => {
                for j in i + 1..slots.len() {
                    if slots[j].is_none() {
                        slots[i] = Some(next);
                        slots[j] = Some(next);
                        go(slots, next + 1, out);
                        slots[i] = None;
                        slots[j] = None;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![None; n], 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_CHORD: &str = r#"{"variables":["t1"],"components":[{"colour":1,"sites":[
        {"marked":true},{"chord":"c1","side":"A"},{"chord":"c1","side":"B"}]}]}"#;

    #[test]
    fn one_circle_one_chord() {
        let d = parse_chord_diagram(ONE_CHORD).unwrap();
        assert_eq!(d.arc_count(), 3);
        assert_eq!(d.marked_arc(), 0);
        let ch = d.chords();
        assert_eq!(ch.len(), 1);
        assert_eq!(d.out_arc(ch[0].a), 1);
        assert_eq!(d.in_arc(ch[0].a), 0);
        assert_eq!(d.in_arc((0, 0)), 2);
    }

    #[test]
    fn round_trip() {
        let d = parse_chord_diagram(ONE_CHORD).unwrap();
        assert_eq!(parse_chord_diagram(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn validation_errors() {
        let two_marks = r#"{"variables":["t1"],"components":[{"colour":1,"sites":[
            {"marked":true},{"marked":true},{"chord":"c1","side":"A"},{"chord":"c1","side":"B"}]}]}"#;
        assert!(matches!(parse_chord_diagram(two_marks), Err(ChordError::MultipleMarked { .. })));
        let dangling = r#"{"variables":["t1"],"components":[{"colour":1,"sites":[{"marked":true},{"chord":"c1","side":"A"}]}]}"#;
        assert!(matches!(parse_chord_diagram(dangling), Err(ChordError::Dangling { .. })));
        let empty = r#"{"variables":["t1"],"components":[{"colour":1,"sites":[]}]}"#;
        assert!(matches!(parse_chord_diagram(empty), Err(ChordError::Empty(0))));
        let colour = r#"{"variables":["t1"],"components":[{"colour":2,"sites":[{"marked":true}]}]}"#;
        assert!(matches!(parse_chord_diagram(colour), Err(ChordError::UnknownColour { .. })));
        let unmarked = r#"{"variables":["t1"],"components":[{"colour":1,"sites":[{"chord":"c1","side":"A"},{"chord":"c1","side":"B"}]}]}"#;
        assert!(matches!(parse_chord_diagram(unmarked), Err(ChordError::NoMarked)));
        let lonely = r#"{"variables":["x","y"],"components":[{"colour":1,"sites":[{"marked":true},{"chord":"c1","side":"A"},{"chord":"c1","side":"B"}]},{"colour":2,"sites":[{"sub":true}]}]}"#;
        assert!(matches!(parse_chord_diagram(lonely), Err(ChordError::NoChord(1))));
        assert!(parse_chord_diagram("{").is_err());
    }

    #[test]
    fn subdivision_adds_an_arc() {
        let d = parse_chord_diagram(ONE_CHORD).unwrap();
        let s = d.subdivide("a2").unwrap();
        assert_eq!(s.arc_count(), 4);
        assert_eq!(s.components()[0].sites[2], Site::Subdivision);
        assert!(d.subdivide("a9").is_err());
    }

    #[test]
    fn enumeration_counts() {
        let one = VarNames::default_for(1);
        assert_eq!(enumerate_diagrams(1, &one, &[0]).len(), 1);
        assert_eq!(enumerate_diagrams(2, &one, &[0]).len(), 3);
        let two = VarNames::default_for(2);
        // sizes (1,3),(2,2),(3,1) with 3 pairings each, minus those leaving a circle chordless: none
        assert_eq!(enumerate_diagrams(2, &two, &[0, 1]).len(), 9);
        assert!(enumerate_diagrams(2, &one, &[0]).iter().any(|d| !d.has_isolated_chord()));
    }
}
