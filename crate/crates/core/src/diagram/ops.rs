//! Crossing-level surgeries and face structure.

use super::{Crossing, DiagramError, PDDiagram, RawCrossing, UnionFind};

/// A face of the diagram's projection, walked with the face on the right.
/// `corners[k]` is `(crossing, i)` for the corner between slots `i` and
/// `i + 1`; `edges[k]` is the edge leaving that corner and whether the walk
/// follows the edge's orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub corners: Vec<(usize, usize)>,
    pub edges: Vec<(u32, bool)>,
}

impl Face {
    fn side_of(&self, edge: u32) -> Option<bool> {
        self.edges.iter().find(|(e, _)| *e == edge).map(|&(_, fwd)| fwd)
    }
}

/// Result of a tracked twist insertion: the new diagram, the labels of the
/// two strands just above the twist region (left line first), and a corner
/// of the face above the region.
#[derive(Clone, Debug)]
pub struct TwistInsertion {
    pub diagram: PDDiagram,
    pub top: (u32, u32),
    pub top_corner: (usize, usize),
}

const PASS_THROUGH: [(usize, usize); 2] = [(0, 2), (1, 3)];

impl PDDiagram {
    /// Exchange over and under at one crossing; labels are unchanged.
    pub fn switch_crossing(&self, index: usize) -> Result<PDDiagram, DiagramError> {
        self.check_index(index)?;
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, c)| if i == index { switched(c) } else { c.labels })
            .collect();
        PDDiagram::from_tuples(&tuples, self.free_loops)
    }

    /// Oriented smoothing of one crossing, relabelled from scratch.
    pub fn smooth_crossing(&self, index: usize) -> Result<PDDiagram, DiagramError> {
        let c = *self.check_index(index)?;
        let [a, b, cc, d] = c.labels;
        let joins = if c.over_forward {
            [(a, d), (b, cc)]
        } else {
            [(a, b), (d, cc)]
        };
        self.without(&[index], &joins)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> PDDiagram {
        let tuples: Vec<[u32; 4]> = self.crossings.iter().map(switched).collect();
        PDDiagram::from_tuples(&tuples, self.free_loops).expect("mirror of a valid diagram is valid")
    }

    /// Remove Reidemeister-I curls until none remain.
    pub fn reduce_r1(&self) -> PDDiagram {
        let mut d = self.clone();
        while let Some(i) = d.crossings.iter().position(|c| {
            (0..4).any(|s| c.labels[s] == c.labels[(s + 1) % 4])
        }) {
            d = d.remove_pass_through(&[i]);
        }
        d
    }

    /// Cancel bigons whose bounding edges are over at both crossings and
    /// under at both crossings respectively, until none remain.
    pub fn reduce_r2(&self) -> PDDiagram {
        let mut d = self.clone();
        loop {
            let found = d.faces().into_iter().find_map(|f| {
                if f.corners.len() != 2 || f.corners[0].0 == f.corners[1].0 {
                    return None;
                }
                let (x, y) = (f.corners[0].0, f.corners[1].0);
                let over_at = |edge: u32, at: usize| {
                    let c = &d.crossings[at];
                    (0..4).filter(|&s| c.labels[s] == edge).all(|s| s % 2 == 1)
                };
                let (e, g) = (f.edges[0].0, f.edges[1].0);
                let ok = (over_at(e, x) && over_at(e, y) && !over_at(g, x) && !over_at(g, y))
                    || (over_at(g, x) && over_at(g, y) && !over_at(e, x) && !over_at(e, y));
                ok.then_some([x, y])
            });
            match found {
                Some(pair) => d = d.remove_pass_through(&pair),
                None => return d,
            }
        }
    }

    /// All faces of the projection.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.crossings.len();
        let occ = self.occurrences();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for x0 in 0..n {
            for i0 in 0..4 {
                if seen[x0][i0] {
                    continue;
                }
                let mut face = Face {
                    corners: Vec::new(),
                    edges: Vec::new(),
                };
                let (mut x, mut i) = (x0, i0);
                while !seen[x][i] {
                    seen[x][i] = true;
                    face.corners.push((x, i));
                    let slot = (i + 1) % 4;
                    let c = &self.crossings[x];
                    let e = c.labels[slot];
                    face.edges.push((e, c.is_out_slot(slot)));
                    let o = occ[e as usize];
                    let other = if o[0] == (x, slot) { o[1] } else { o[0] };
                    x = other.0;
                    i = other.1;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Insert `n` full twists of the two strands through edges `e1`, `e2`,
    /// placed inside the first face bounded by both edges. Positive `n` puts
    /// the strand running from lower left to upper right on top.
    pub fn insert_full_twists(&self, site: (u32, u32), n: i64) -> Result<PDDiagram, DiagramError> {
        self.insert_full_twists_tracked(site, None, n).map(|t| t.diagram)
    }

    /// As [`insert_full_twists`](Self::insert_full_twists), optionally
    /// choosing the face by one of its corners, and reporting where the
    /// region ends.
    pub fn insert_full_twists_tracked(
        &self,
        (e1, e2): (u32, u32),
        corner: Option<(usize, usize)>,
        n: i64,
    ) -> Result<TwistInsertion, DiagramError> {
        let max = 2 * self.crossings.len() as u32;
        for e in [e1, e2] {
            if e == 0 || e > max {
                return Err(DiagramError::UnknownEdge(e));
            }
        }
        if e1 == e2 {
            return Err(DiagramError::SameEdge(e1));
        }
        let faces = self.faces();
        let face = faces
            .iter()
            .find(|f| {
                corner.is_none_or(|c| f.corners.contains(&c))
                    && f.side_of(e1).is_some()
                    && f.side_of(e2).is_some()
            })
            .ok_or(DiagramError::NoCommonFace(e1, e2))?;
        if n == 0 {
            return Ok(TwistInsertion {
                diagram: self.clone(),
                top: (e1, e2),
                top_corner: face.corners[0],
            });
        }
        let l_up = face.side_of(e1).expect("checked above");
        let r_up = !face.side_of(e2).expect("checked above");
        let m = 2 * n.unsigned_abs() as usize;
        let fresh = max + 1;
        let seg = |line: usize, k: usize| fresh + (line * (m + 1) + k) as u32;

        let mut raw: Vec<RawCrossing> = self.crossings.clone();
        for (line, (e, up)) in [(e1, l_up), (e2, r_up)].into_iter().enumerate() {
            let (bottom, top) = (seg(line, 0), seg(line, m));
            for c in raw.iter_mut() {
                for s in 0..4 {
                    if c.labels[s] == e {
                        let tail = c.is_out_slot(s);
                        c.labels[s] = if tail == up { bottom } else { top };
                    }
                }
            }
        }
        let ups = [l_up, r_up];
        let mut top_slot = 0;
        for k in 1..=m {
            // strand entering from the lower left runs to the upper right
            let p = if k % 2 == 1 { 0 } else { 1 };
            let q = 1 - p;
            let (sw, ne, se, nw) = (seg(p, k - 1), seg(p, k), seg(q, k - 1), seg(q, k));
            let (labels, over_forward, ne_at) = match (n > 0, ups[q], ups[p]) {
                (true, true, p_up) => ([se, ne, nw, sw], !p_up, 1),
                (true, false, p_up) => ([nw, sw, se, ne], p_up, 3),
                (false, q_up, true) => ([sw, se, ne, nw], q_up, 2),
                (false, q_up, false) => ([ne, nw, sw, se], !q_up, 0),
            };
            raw.push(Crossing { labels, over_forward });
            top_slot = ne_at;
        }
        let (diagram, map) = PDDiagram::assemble(&raw, &[], self.free_loops)?;
        Ok(TwistInsertion {
            top: (map[&seg(0, m)], map[&seg(1, m)]),
            top_corner: (raw.len() - 1, top_slot),
            diagram,
        })
    }

    /// Reverse the orientation of one labelled component.
    pub fn reverse_component(&self, component: usize) -> Result<PDDiagram, DiagramError> {
        let &(lo, hi) = self.runs.get(component).ok_or(DiagramError::ComponentOutOfRange {
            index: component,
            len: self.runs.len(),
        })?;
        let flip = |l: u32| if lo <= l && l <= hi { lo + hi - l } else { l };
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let t = c.labels.map(flip);
                if lo <= c.labels[0] && c.labels[0] <= hi {
                    [t[2], t[3], t[0], t[1]]
                } else {
                    t
                }
            })
            .collect();
        PDDiagram::from_tuples(&tuples, self.free_loops)
    }

    /// Move the starting label of each component: `shifts[k]` rotates run `k`.
    pub fn relabel_runs(&self, shifts: &[u32]) -> PDDiagram {
        let runs = self.runs.clone();
        let shift = |l: u32| {
            for (k, &(lo, hi)) in runs.iter().enumerate() {
                if lo <= l && l <= hi {
                    let len = hi - lo + 1;
                    let r = shifts.get(k).copied().unwrap_or(0) % len;
                    return lo + (l - lo + r) % len;
                }
            }
            l
        };
        let tuples: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.labels.map(shift)).collect();
        PDDiagram::from_tuples(&tuples, self.free_loops).expect("rotating runs keeps a diagram valid")
    }

    /// A relabelling-invariant description of the oriented diagram: equal
    /// keys mean equal diagrams up to edge names. Connected parts are
    /// canonicalized separately and listed in sorted order.
    pub fn canonical_key(&self) -> Vec<u32> {
        let n = self.crossings.len();
        let occ = self.occurrences();
        let mut uf = UnionFind::new(n);
        for [p, q] in &occ[1..] {
            uf.union(p.0, q.0);
        }
        let mut parts: Vec<Vec<usize>> = Vec::new();
        let mut part_of: Vec<Option<usize>> = vec![None; n];
        for x in 0..n {
            let r = uf.find(x);
            let id = *part_of[r].get_or_insert_with(|| {
                parts.push(Vec::new());
                parts.len() - 1
            });
            parts[id].push(x);
        }
        let mut keys: Vec<Vec<[u32; 5]>> = parts.iter().map(|p| self.part_key(&occ, p)).collect();
        keys.sort_unstable();
        let mut key = Vec::with_capacity(5 * n + 1);
        key.push(self.free_loops);
        let mut offset = 0;
        for part in keys {
            let edges = 2 * part.len() as u32;
            for t in part {
                key.extend([t[0] + offset, t[1] + offset, t[2] + offset, t[3] + offset, t[4]]);
            }
            offset += edges;
        }
        key
    }

    /// Least relabelling of one connected part, over all start edges, with
    /// labels from 1.
    fn part_key(&self, occ: &[[(usize, usize); 2]], part: &[usize]) -> Vec<[u32; 5]> {
        let head = |l: u32| -> (usize, usize) {
            let [p, q] = occ[l as usize];
            if self.crossings[p.0].is_out_slot(p.1) {
                q
            } else {
                p
            }
        };
        let succ = |l: u32| -> u32 {
            let (x, s) = head(l);
            let out = if s == 0 { 2 } else { 4 - s };
            self.crossings[x].labels[out]
        };
        let n = self.crossings.len();
        let mut best: Option<Vec<[u32; 5]>> = None;
        for start in part.iter().map(|&x| self.crossings[x].labels[0]) {
            let mut new = vec![0u32; 2 * n + 1];
            let mut order: Vec<usize> = Vec::with_capacity(part.len());
            let mut met = vec![false; n];
            let mut next = 1u32;
            let mut begin = Some(start);
            while let Some(s) = begin {
                let mut cur = s;
                loop {
                    new[cur as usize] = next;
                    next += 1;
                    let x = head(cur).0;
                    if !met[x] {
                        met[x] = true;
                        order.push(x);
                    }
                    cur = succ(cur);
                    if cur == s {
                        break;
                    }
                }
                begin = order
                    .iter()
                    .flat_map(|&x| self.crossings[x].labels)
                    .find(|&l| new[l as usize] == 0);
            }
            let mut tuples: Vec<[u32; 5]> = part
                .iter()
                .map(|&x| {
                    let c = &self.crossings[x];
                    let t = c.labels.map(|l| new[l as usize]);
                    [t[0], t[1], t[2], t[3], c.over_forward as u32]
                })
                .collect();
            tuples.sort_unstable();
            if best.as_ref().is_none_or(|b| tuples < *b) {
                best = Some(tuples);
            }
        }
        best.expect("parts are nonempty")
    }

    fn remove_pass_through(&self, indices: &[usize]) -> PDDiagram {
        let joins: Vec<(u32, u32)> = indices
            .iter()
            .flat_map(|&i| {
                let l = self.crossings[i].labels;
                PASS_THROUGH.map(|(p, q)| (l[p], l[q]))
            })
            .collect();
        self.without(indices, &joins)
            .expect("removing an isotopy-trivial crossing keeps a diagram valid")
    }

    fn without(&self, indices: &[usize], joins: &[(u32, u32)]) -> Result<PDDiagram, DiagramError> {
        let raw: Vec<RawCrossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| !indices.contains(i))
            .map(|(_, c)| *c)
            .collect();
        let mut all_joins = joins.to_vec();
        // keep labels of removed crossings known even if they vanish entirely
        for &i in indices {
            for l in self.crossings[i].labels {
                all_joins.push((l, l));
            }
        }
        PDDiagram::assemble(&raw, &all_joins, self.free_loops).map(|(d, _)| d)
    }
}

fn switched(c: &Crossing) -> [u32; 4] {
    let [a, b, cc, d] = c.labels;
    if c.over_forward {
        [b, cc, d, a]
    } else {
        [d, a, b, cc]
    }
}
