//! Oriented link diagrams in planar-diagram (PD) code form.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting from the incoming under-edge `a`; the under-strand runs `a -> c`
//! and `b`, `d` belong to the over-strand. Which way the over-strand runs is
//! inferred from the labelling: every component carries a contiguous run of
//! labels that increases by one along its orientation.
//!
//! A crossing has sign `+1` exactly when the over-strand runs `b -> d`, i.e.
//! crosses the under-strand from its right to its left.

mod front;
mod ops;
mod pd;

pub use front::{tb_from_front, FrontDiagram};
pub use ops::{Face, TwistInsertion};
pub use pd::parse_pd;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: {source}")]
    At {
        line: usize,
        col: usize,
        #[source]
        source: Box<DiagramError>,
    },
    #[error("empty diagram: no crossings and no free loops")]
    Empty,
    #[error("crossing {crossing}: label {label} outside 1..={max}")]
    LabelRange { crossing: usize, label: u32, max: u32 },
    #[error("crossing {crossing}: label {label} occurs {count} times, expected 2")]
    LabelCount { crossing: usize, label: u32, count: usize },
    #[error("crossing {crossing}: component labels are not consecutive along the strand")]
    NonConsecutive { crossing: usize },
    #[error("crossing {crossing}: under-strand direction disagrees with the rest of its component")]
    Orientation { crossing: usize },
    #[error("code does not describe a planar diagram")]
    NonPlanar,
    #[error("crossing index {index} out of range (diagram has {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("component index {index} out of range (diagram has {len} labelled components)")]
    ComponentOutOfRange { index: usize, len: usize },
    #[error("edge {0} does not occur in the diagram")]
    UnknownEdge(u32),
    #[error("twist site edges coincide ({0})")]
    SameEdge(u32),
    #[error("edges {0} and {1} do not bound a common face")]
    NoCommonFace(u32, u32),
    #[error("malformed raw diagram: {0}")]
    Raw(String),
    #[error("a front needs an even number of cusps, at least 2 (got {0})")]
    Cusps(u32),
}

/// One crossing: labels counterclockwise from the incoming under-edge, and
/// whether the over-strand runs from slot 1 to slot 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub labels: [u32; 4],
    pub over_forward: bool,
}

impl Crossing {
    pub fn sign(&self) -> i32 {
        if self.over_forward {
            1
        } else {
            -1
        }
    }

    /// True when the edge at `slot` leaves this crossing.
    pub fn is_out_slot(&self, slot: usize) -> bool {
        match slot {
            0 => false,
            2 => true,
            1 => !self.over_forward,
            _ => self.over_forward,
        }
    }
}

/// A crossing before labels have been normalized, used to assemble diagrams
/// from pieces. Orientation is explicit: slot 0 is incoming, slot 2 outgoing,
/// and `over_forward` picks slot 1 or slot 3 as the incoming over-edge.
pub type RawCrossing = Crossing;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PDDiagram {
    crossings: Vec<Crossing>,
    free_loops: u32,
    runs: Vec<(u32, u32)>,
}

impl PDDiagram {
    /// Validate a list of crossing tuples and infer strand orientations.
    pub fn from_tuples(tuples: &[[u32; 4]], free_loops: u32) -> Result<Self, DiagramError> {
        let n = tuples.len();
        if n == 0 {
            if free_loops == 0 {
                return Err(DiagramError::Empty);
            }
            return Ok(PDDiagram {
                crossings: Vec::new(),
                free_loops,
                runs: Vec::new(),
            });
        }
        let max = 2 * n as u32;
        let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); max as usize + 1];
        for (i, t) in tuples.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                if l == 0 || l > max {
                    return Err(DiagramError::LabelRange { crossing: i, label: l, max });
                }
                occ[l as usize].push((i, s));
            }
        }
        for (i, t) in tuples.iter().enumerate() {
            for &l in t {
                let count = occ[l as usize].len();
                if count != 2 {
                    return Err(DiagramError::LabelCount { crossing: i, label: l, count });
                }
            }
        }
        for (l, o) in occ.iter().enumerate().skip(1) {
            if o.len() != 2 {
                return Err(DiagramError::LabelCount {
                    crossing: n - 1,
                    label: l as u32,
                    count: o.len(),
                });
            }
        }
        let partner = |l: u32, at: (usize, usize)| -> (usize, usize) {
            let o = &occ[l as usize];
            if o[0] == at {
                o[1]
            } else {
                o[0]
            }
        };

        let mut flags: Vec<Option<bool>> = vec![None; n];
        let mut visited = vec![[false; 4]; n];
        let mut runs = Vec::new();
        for i in 0..n {
            for s in 0..4 {
                if visited[i][s] {
                    continue;
                }
                // passages (crossing, entry slot); exits[k] leaves passage k
                let mut passages = Vec::new();
                let mut exits = Vec::new();
                let (mut x, mut slot) = (i, s);
                loop {
                    let out = (slot + 2) % 4;
                    visited[x][slot] = true;
                    visited[x][out] = true;
                    passages.push((x, slot));
                    let e = tuples[x][out];
                    exits.push(e);
                    let (y, t) = partner(e, (x, out));
                    if (y, t) == (i, s) {
                        break;
                    }
                    x = y;
                    slot = t;
                }
                let mut dir: Option<bool> = None;
                for &(x, slot) in &passages {
                    if slot % 2 == 0 {
                        let here = slot == 0;
                        match dir {
                            None => dir = Some(here),
                            Some(d) if d != here => {
                                return Err(DiagramError::Orientation { crossing: x })
                            }
                            _ => {}
                        }
                    }
                }
                let forward_seq = exits.clone();
                let mut backward_seq = exits.clone();
                backward_seq.reverse();
                let forward = match dir {
                    Some(d) => {
                        let seq = if d { &forward_seq } else { &backward_seq };
                        if !is_cyclic_run(seq) {
                            return Err(DiagramError::NonConsecutive { crossing: i });
                        }
                        d
                    }
                    None => {
                        if is_cyclic_run(&forward_seq) {
                            true
                        } else if is_cyclic_run(&backward_seq) {
                            false
                        } else {
                            return Err(DiagramError::NonConsecutive { crossing: i });
                        }
                    }
                };
                for &(x, slot) in &passages {
                    if slot % 2 == 1 {
                        let entry = if forward { slot } else { (slot + 2) % 4 };
                        flags[x] = Some(entry == 1);
                    }
                }
                let lo = *exits.iter().min().expect("nonempty component");
                let hi = *exits.iter().max().expect("nonempty component");
                runs.push((lo, hi));
            }
        }
        runs.sort_unstable();
        let crossings: Vec<Crossing> = tuples
            .iter()
            .zip(flags)
            .map(|(t, f)| Crossing {
                labels: *t,
                over_forward: f.expect("every crossing has an over passage"),
            })
            .collect();
        let d = PDDiagram {
            crossings,
            free_loops,
            runs,
        };
        if !d.is_planar() {
            return Err(DiagramError::NonPlanar);
        }
        Ok(d)
    }

    /// `k` crossingless unknotted circles.
    pub fn unlink(k: u32) -> Result<Self, DiagramError> {
        Self::from_tuples(&[], k)
    }

    pub fn unknot() -> Self {
        Self::from_tuples(&[], 1).expect("one free loop is a valid diagram")
    }

    /// Assemble a diagram from oriented raw crossings whose labels are
    /// arbitrary. Labels listed together in `joins` are glued into a single
    /// edge; glued classes that meet no crossing become free loops.
    ///
    /// Returns the diagram and the map from each surviving raw label to its
    /// new label.
    pub fn assemble(
        raw: &[RawCrossing],
        joins: &[(u32, u32)],
        extra_loops: u32,
    ) -> Result<(Self, HashMap<u32, u32>), DiagramError> {
        let mut index: HashMap<u32, usize> = HashMap::new();
        let mut names: Vec<u32> = Vec::new();
        let mut intern = |l: u32, index: &mut HashMap<u32, usize>| -> usize {
            *index.entry(l).or_insert_with(|| {
                names.push(l);
                names.len() - 1
            })
        };
        for c in raw {
            for &l in &c.labels {
                intern(l, &mut index);
            }
        }
        for &(a, b) in joins {
            intern(a, &mut index);
            intern(b, &mut index);
        }
        let mut uf = UnionFind::new(names.len());
        for &(a, b) in joins {
            uf.union(index[&a], index[&b]);
        }
        let classes = names.len();
        let mut head: Vec<Option<(usize, usize)>> = vec![None; classes];
        let mut tail: Vec<Option<(usize, usize)>> = vec![None; classes];
        for (i, c) in raw.iter().enumerate() {
            for s in 0..4 {
                let root = uf.find(index[&c.labels[s]]);
                let slot = if c.is_out_slot(s) { &mut tail[root] } else { &mut head[root] };
                if slot.is_some() {
                    return Err(DiagramError::Raw(format!(
                        "edge through raw label {} has two {} ends",
                        c.labels[s],
                        if c.is_out_slot(s) { "outgoing" } else { "incoming" }
                    )));
                }
                *slot = Some((i, s));
            }
        }
        let mut min_name: Vec<u32> = vec![u32::MAX; classes];
        for (k, &l) in names.iter().enumerate() {
            let r = uf.find(k);
            min_name[r] = min_name[r].min(l);
        }
        let mut roots: Vec<usize> = (0..classes).filter(|&k| uf.find(k) == k).collect();
        roots.sort_by_key(|&r| min_name[r]);

        let mut loops = extra_loops;
        let mut new_label: Vec<u32> = vec![0; classes];
        let mut next = 1u32;
        for &r in &roots {
            match (head[r], tail[r]) {
                (None, None) => loops += 1,
                (Some(_), Some(_)) => {}
                _ => {
                    return Err(DiagramError::Raw(format!(
                        "edge through raw label {} is not closed",
                        min_name[r]
                    )))
                }
            }
        }
        for &r in &roots {
            if head[r].is_none() || new_label[r] != 0 {
                continue;
            }
            let mut cur = r;
            loop {
                new_label[cur] = next;
                next += 1;
                let (x, s) = head[cur].expect("edge class has a head");
                let out = if s % 2 == 0 { 2 } else { 4 - s };
                let succ = uf.find(index[&raw[x].labels[out]]);
                if succ == r {
                    break;
                }
                if new_label[succ] != 0 {
                    return Err(DiagramError::Raw("strands do not close up".into()));
                }
                cur = succ;
            }
        }
        let tuples: Vec<[u32; 4]> = raw
            .iter()
            .map(|c| c.labels.map(|l| new_label[uf.find(index[&l])]))
            .collect();
        let map = names
            .iter()
            .enumerate()
            .filter_map(|(k, &l)| {
                let v = new_label[uf.find(k)];
                (v != 0).then_some((l, v))
            })
            .collect();
        Ok((Self::from_tuples(&tuples, loops)?, map))
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    /// Label runs `(lo, hi)` of the components that meet a crossing, sorted.
    pub fn runs(&self) -> &[(u32, u32)] {
        &self.runs
    }

    pub fn component_count(&self) -> usize {
        self.runs.len() + self.free_loops as usize
    }

    pub fn crossing_sign(&self, index: usize) -> Result<i32, DiagramError> {
        self.check_index(index).map(|c| c.sign())
    }

    pub fn signs(&self) -> Vec<i32> {
        self.crossings.iter().map(Crossing::sign).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign() as i64).sum()
    }

    /// Index into `runs()` of the component carrying `label`.
    pub fn component_of(&self, label: u32) -> Option<usize> {
        self.runs.iter().position(|&(lo, hi)| lo <= label && label <= hi)
    }

    /// Linking number between two labelled components.
    pub fn linking_number(&self, a: usize, b: usize) -> Result<i64, DiagramError> {
        for i in [a, b] {
            if i >= self.runs.len() {
                return Err(DiagramError::ComponentOutOfRange {
                    index: i,
                    len: self.runs.len(),
                });
            }
        }
        let mut total = 0;
        for c in &self.crossings {
            let under = self.component_of(c.labels[0]);
            let over = self.component_of(c.labels[1]);
            if (under == Some(a) && over == Some(b)) || (under == Some(b) && over == Some(a)) {
                total += c.sign() as i64;
            }
        }
        Ok(total / 2)
    }

    /// The two `(crossing, slot)` occurrences of each label, indexed by label.
    pub(crate) fn occurrences(&self) -> Vec<[(usize, usize); 2]> {
        let mut occ = vec![[(usize::MAX, 0); 2]; 2 * self.crossings.len() + 1];
        let mut seen = vec![0usize; occ.len()];
        for (i, c) in self.crossings.iter().enumerate() {
            for (s, &l) in c.labels.iter().enumerate() {
                occ[l as usize][seen[l as usize]] = (i, s);
                seen[l as usize] += 1;
            }
        }
        occ
    }

    /// Render in the PD text format; `parse_pd(render(d)) == d`.
    pub fn render(&self) -> String {
        let body = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.labels;
                format!("X({a},{b},{cc},{d})")
            })
            .collect::<Vec<_>>()
            .join(" ");
        match (self.free_loops, body.is_empty()) {
            (0, _) => body,
            (k, true) => format!("loops={k}"),
            (k, false) => format!("loops={k}\n{body}"),
        }
    }

    fn check_index(&self, index: usize) -> Result<&Crossing, DiagramError> {
        self.crossings.get(index).ok_or(DiagramError::IndexOutOfRange {
            index,
            len: self.crossings.len(),
        })
    }

    fn is_planar(&self) -> bool {
        let n = self.crossings.len();
        if n == 0 {
            return true;
        }
        let occ = self.occurrences();
        let mut uf = UnionFind::new(n);
        for o in occ.iter().skip(1) {
            uf.union(o[0].0, o[1].0);
        }
        let parts = (0..n).filter(|&i| uf.find(i) == i).count();
        self.faces().len() == n + 2 * parts
    }
}

impl fmt::Display for PDDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn is_cyclic_run(seq: &[u32]) -> bool {
    let lo = match seq.iter().min() {
        Some(&v) => v,
        None => return false,
    };
    let hi = lo + seq.len() as u32 - 1;
    if seq.iter().any(|&v| v > hi) {
        return false;
    }
    seq.iter().enumerate().all(|(k, &v)| {
        let w = seq[(k + 1) % seq.len()];
        w == if v == hi { lo } else { v + 1 }
    })
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
