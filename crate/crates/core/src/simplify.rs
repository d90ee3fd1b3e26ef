//! Reidemeister simplification and three-valued unlink detection.
//!
//! [`is_unlink`] first looks for a Fox 3-coloring certificate (an unlink
//! with `μ` components has exactly `3^μ` colorings by `R_3`). Without one
//! it reduces greedily by R1 and R2 and then runs a breadth-first search
//! over R3 moves and crossing-increasing R2 moves, at most two crossings
//! above the reduced start, until a crossing-free diagram is reached or the
//! move budget runs out.
//!
//! Moves name their location by edge labels (or node slots for R2
//! creation), so a trace can be replayed on the input with [`replay`].

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::SymmetricQuandle;
use crate::coloring::count_colorings;
use crate::diagram::{count_components, ChDiagram, EdgeLabel, LinkDiagram, Node, PdCode, Slot, Smoothing};
use crate::par::{self, Exec};

pub const DEFAULT_BUDGET: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplifyError {
    #[error("move budget must be positive")]
    ZeroBudget,
    #[error("move {index} ({mv:?}) does not apply: {reason}")]
    Inapplicable { index: usize, mv: Move, reason: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    /// Remove the kink whose loop edge is `loop_edge`.
    R1Remove { loop_edge: EdgeLabel },
    /// Remove the bigon bounded by `over` (over at both crossings) and
    /// `under`.
    R2Remove { over: EdgeLabel, under: EdgeLabel },
    /// Slide a strand across the triangle bounded by these edges.
    R3 { edges: [EdgeLabel; 3] },
    /// Push the edge leaving at `pushed` across the edge leaving at
    /// `target`; both darts bound a common face on their left. Creates two
    /// crossings and labels `new_labels` (tip of the finger, middle of the
    /// crossed edge, and the two outer continuations).
    R2Create { pushed: Slot, target: Slot, pushed_over: bool, new_labels: [EdgeLabel; 4] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Unlink,
    NotUnlink,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoxCertificate {
    pub colorings: u64,
    pub components: usize,
    /// `3^components`, the count every unlink has.
    pub unlink_colorings: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplificationResult {
    pub verdict: Verdict,
    pub trace: Vec<Move>,
    pub budget_used: usize,
    pub certificate: Option<FoxCertificate>,
}

/// Working copy with an endpoint index.
#[derive(Clone)]
struct Work {
    pd: PdCode,
}

impl Work {
    fn new(pd: PdCode) -> Self {
        Work { pd }
    }

    fn ends(&self) -> HashMap<EdgeLabel, [(usize, usize); 2]> {
        let mut m: HashMap<EdgeLabel, Vec<(usize, usize)>> = HashMap::new();
        for (ni, n) in self.pd.nodes.iter().enumerate() {
            for (si, &l) in n.slots.iter().enumerate() {
                m.entry(l).or_default().push((ni, si));
            }
        }
        m.into_iter().map(|(l, v)| (l, [v[0], v[1]])).collect()
    }

    /// Faces as cycles of darts `(node, slot)`, each face on the left.
    fn faces(&self, ends: &HashMap<EdgeLabel, [(usize, usize); 2]>) -> Vec<Vec<(usize, usize)>> {
        let nodes = &self.pd.nodes;
        let other = |d: (usize, usize)| {
            let e = ends[&nodes[d.0].slots[d.1]];
            if e[0] == d {
                e[1]
            } else {
                e[0]
            }
        };
        let mut seen = vec![[false; 4]; nodes.len()];
        let mut faces = Vec::new();
        for ni in 0..nodes.len() {
            for si in 0..4 {
                if seen[ni][si] {
                    continue;
                }
                let mut cycle = Vec::new();
                let mut d = (ni, si);
                while !seen[d.0][d.1] {
                    seen[d.0][d.1] = true;
                    cycle.push(d);
                    let a = other(d);
                    d = (a.0, (a.1 + 3) % 4);
                }
                faces.push(cycle);
            }
        }
        faces
    }

    fn dissolve(&mut self, removed: &[usize]) {
        let mut pairs = Vec::new();
        for &i in removed {
            let [a, b, c, d] = self.pd.nodes[i].slots;
            pairs.push((a, c));
            pairs.push((b, d));
        }
        self.pd.remove_and_join(removed, pairs);
    }

    fn find_r1(&self) -> Option<Move> {
        for n in &self.pd.nodes {
            for s in 0..4 {
                if n.slots[s] == n.slots[(s + 1) % 4] {
                    return Some(Move::R1Remove { loop_edge: n.slots[s] });
                }
            }
        }
        None
    }

    fn apply_r1(&mut self, loop_edge: EdgeLabel) -> Result<(), &'static str> {
        let idx = self
            .pd
            .nodes
            .iter()
            .position(|n| (0..4).any(|s| n.slots[s] == loop_edge && n.slots[(s + 1) % 4] == loop_edge))
            .ok_or("no kink on that edge")?;
        self.dissolve(&[idx]);
        Ok(())
    }

    fn r2_candidates(&self, faces: &[Vec<(usize, usize)>]) -> Vec<Move> {
        let nodes = &self.pd.nodes;
        let mut out = Vec::new();
        for f in faces {
            if f.len() != 2 || f[0].0 == f[1].0 {
                continue;
            }
            let e = nodes[f[0].0].slots[f[0].1];
            let g = nodes[f[1].0].slots[f[1].1];
            // the edge leaving f[0] arrives at f[1]'s node at slot f[1].1 + 1
            let arrive = (f[1].1 + 1) % 4;
            if f[0].1 % 2 != arrive % 2 {
                continue;
            }
            let (over, under) = if f[0].1 % 2 == 1 { (e, g) } else { (g, e) };
            out.push(Move::R2Remove { over, under });
        }
        out
    }

    fn apply_r2_remove(&mut self, over: EdgeLabel, under: EdgeLabel) -> Result<(), &'static str> {
        let ends = self.ends();
        let eo = ends.get(&over).ok_or("unknown edge")?;
        let eu = ends.get(&under).ok_or("unknown edge")?;
        let (c1, c2) = (eo[0].0, eo[1].0);
        if c1 == c2 {
            return Err("over edge is a loop");
        }
        if eo[0].1 % 2 != 1 || eo[1].1 % 2 != 1 {
            return Err("edge is not over at both crossings");
        }
        let mut un = [eu[0].0, eu[1].0];
        un.sort_unstable();
        let mut ov = [c1, c2];
        ov.sort_unstable();
        if un != ov || eu[0].1 % 2 != 0 || eu[1].1 % 2 != 0 {
            return Err("edges do not bound a bigon");
        }
        let faces = self.faces(&ends);
        let bigon = faces.iter().any(|f| {
            f.len() == 2 && {
                let ls: Vec<EdgeLabel> = f.iter().map(|d| self.pd.nodes[d.0].slots[d.1]).collect();
                ls.contains(&over) && ls.contains(&under)
            }
        });
        if !bigon {
            return Err("edges do not bound a bigon face");
        }
        self.dissolve(&[c1, c2]);
        Ok(())
    }

    fn r3_candidates(&self, faces: &[Vec<(usize, usize)>], ends: &HashMap<EdgeLabel, [(usize, usize); 2]>) -> Vec<Move> {
        let nodes = &self.pd.nodes;
        let mut out = Vec::new();
        for f in faces {
            if f.len() != 3 {
                continue;
            }
            let ns = [f[0].0, f[1].0, f[2].0];
            if ns[0] == ns[1] || ns[1] == ns[2] || ns[0] == ns[2] {
                continue;
            }
            let edges = [
                nodes[f[0].0].slots[f[0].1],
                nodes[f[1].0].slots[f[1].1],
                nodes[f[2].0].slots[f[2].1],
            ];
            let movable = edges.iter().any(|l| {
                let e = ends[l];
                e[0].1 % 2 == e[1].1 % 2
            });
            if movable {
                out.push(Move::R3 { edges });
            }
        }
        out
    }

    fn apply_r3(&mut self, edges: [EdgeLabel; 3]) -> Result<(), &'static str> {
        let ends = self.ends();
        let faces = self.faces(&ends);
        let mut want = edges.to_vec();
        want.sort_unstable();
        let is_face = faces.iter().any(|f| {
            let mut ls: Vec<EdgeLabel> = f.iter().map(|d| self.pd.nodes[d.0].slots[d.1]).collect();
            ls.sort_unstable();
            f.len() == 3 && ls == want
        });
        if !is_face {
            return Err("edges do not bound a triangle face");
        }
        if !edges.iter().any(|l| {
            let e = ends[l];
            e[0].1 % 2 == e[1].1 % 2
        }) {
            return Err("no strand passes over both of its crossings");
        }
        let old = self.pd.nodes.clone();
        for &l in &edges {
            let [(p, ps), (q, qs)] = ends[&l];
            let ext_p = old[p].slots[(ps + 2) % 4];
            let ext_q = old[q].slots[(qs + 2) % 4];
            self.pd.nodes[p].slots[ps] = ext_q;
            self.pd.nodes[p].slots[(ps + 2) % 4] = l;
            self.pd.nodes[q].slots[qs] = ext_p;
            self.pd.nodes[q].slots[(qs + 2) % 4] = l;
        }
        Ok(())
    }

    fn r2_create_candidates(&self, faces: &[Vec<(usize, usize)>]) -> Vec<Move> {
        let nodes = &self.pd.nodes;
        let base = self.pd.max_label();
        let new_labels = [base + 1, base + 2, base + 3, base + 4];
        let mut out = Vec::new();
        for f in faces {
            for (i, &a) in f.iter().enumerate() {
                for (j, &b) in f.iter().enumerate() {
                    if i == j || nodes[a.0].slots[a.1] == nodes[b.0].slots[b.1] {
                        continue;
                    }
                    for pushed_over in [true, false] {
                        out.push(Move::R2Create {
                            pushed: Slot { node: a.0, slot: a.1 },
                            target: Slot { node: b.0, slot: b.1 },
                            pushed_over,
                            new_labels,
                        });
                    }
                }
            }
        }
        out
    }

    fn apply_r2_create(
        &mut self,
        pushed: Slot,
        target: Slot,
        pushed_over: bool,
        new_labels: [EdgeLabel; 4],
    ) -> Result<(), &'static str> {
        let n = self.pd.nodes.len();
        if pushed.node >= n || target.node >= n || pushed.slot > 3 || target.slot > 3 {
            return Err("dart out of range");
        }
        let ends = self.ends();
        if new_labels.iter().any(|l| ends.contains_key(l)) {
            return Err("new labels already in use");
        }
        let faces = self.faces(&ends);
        let (pd_, td) = ((pushed.node, pushed.slot), (target.node, target.slot));
        if !faces.iter().any(|f| f.contains(&pd_) && f.contains(&td)) {
            return Err("darts do not share a face");
        }
        let e = self.pd.nodes[pushed.node].slots[pushed.slot];
        let g = self.pd.nodes[target.node].slots[target.slot];
        if e == g {
            return Err("cannot push an edge across itself");
        }
        let far = |l: EdgeLabel, from: (usize, usize)| {
            let en = ends[&l];
            if en[0] == from {
                en[1]
            } else {
                en[0]
            }
        };
        let e_far = far(e, pd_);
        let g_far = far(g, td);
        let [tip, mid, e_new, g_new] = new_labels;
        self.pd.nodes[e_far.0].slots[e_far.1] = e_new;
        self.pd.nodes[g_far.0].slots[g_far.1] = g_new;
        let (ca, cb) = if pushed_over {
            ([g_new, e, mid, tip], [mid, e_new, g, tip])
        } else {
            ([e, mid, tip, g_new], [e_new, g, tip, mid])
        };
        self.pd.nodes.push(Node::crossing(ca));
        self.pd.nodes.push(Node::crossing(cb));
        Ok(())
    }

    fn apply(&mut self, mv: Move) -> Result<(), &'static str> {
        match mv {
            Move::R1Remove { loop_edge } => self.apply_r1(loop_edge),
            Move::R2Remove { over, under } => self.apply_r2_remove(over, under),
            Move::R3 { edges } => self.apply_r3(edges),
            Move::R2Create { pushed, target, pushed_over, new_labels } => {
                self.apply_r2_create(pushed, target, pushed_over, new_labels)
            }
        }
    }

    /// R1 and R2 removals until none applies; returns the moves made.
    fn reduce(&mut self, limit: usize) -> Vec<Move> {
        let mut done = Vec::new();
        while done.len() < limit {
            if let Some(mv) = self.find_r1() {
                self.apply(mv).expect("found kink applies");
                done.push(mv);
                continue;
            }
            let ends = self.ends();
            let faces = self.faces(&ends);
            match self.r2_candidates(&faces).first() {
                Some(&mv) => {
                    self.apply(mv).expect("found bigon applies");
                    done.push(mv);
                }
                None => break,
            }
        }
        done
    }

    /// Relabeling- and node-order-invariant key.
    fn canonical_key(&self) -> (usize, Vec<Vec<u32>>) {
        let nodes = &self.pd.nodes;
        let ends = self.ends();
        let other = |ni: usize, si: usize| {
            let e = ends[&nodes[ni].slots[si]];
            if e[0] == (ni, si) {
                e[1]
            } else {
                e[0]
            }
        };
        let mut comp_of = vec![usize::MAX; nodes.len()];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for s in 0..nodes.len() {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![s];
            comp_of[s] = id;
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for k in 0..4 {
                    let (w, _) = other(u, k);
                    if comp_of[w] == usize::MAX {
                        comp_of[w] = id;
                        stack.push(w);
                    }
                }
            }
            comps.push(members);
        }
        let mut codes: Vec<Vec<u32>> = comps
            .iter()
            .map(|members| {
                let mut best: Option<Vec<u32>> = None;
                for &start in members {
                    for rot in [0usize, 2] {
                        let mut order = vec![start];
                        let mut rotation: HashMap<usize, usize> = HashMap::from([(start, rot)]);
                        let mut relabel: HashMap<EdgeLabel, u32> = HashMap::new();
                        let mut code = Vec::with_capacity(members.len() * 4);
                        let mut i = 0;
                        while i < order.len() {
                            let u = order[i];
                            let r = rotation[&u];
                            for k in 0..4 {
                                let s = (k + r) % 4;
                                let l = nodes[u].slots[s];
                                let next = relabel.len() as u32 + 1;
                                let nl = *relabel.entry(l).or_insert(next);
                                code.push(nl);
                                let (w, ws) = other(u, s);
                                if let std::collections::hash_map::Entry::Vacant(v) = rotation.entry(w) {
                                    v.insert(if ws < 2 { 0 } else { 2 });
                                    order.push(w);
                                }
                            }
                            i += 1;
                        }
                        if best.as_ref().map_or(true, |b| code < *b) {
                            best = Some(code);
                        }
                    }
                }
                best.unwrap()
            })
            .collect();
        codes.sort();
        (self.pd.circles, codes)
    }
}

fn fox_certificate(l: &LinkDiagram) -> Option<FoxCertificate> {
    let r3 = SymmetricQuandle::dihedral_identity(3).expect("R_3 is a symmetric quandle");
    let components = count_components(l);
    let colorings = count_colorings(l.as_ch(), &r3, None);
    let unlink_colorings = 3u64.pow(components as u32);
    (colorings != unlink_colorings).then_some(FoxCertificate { colorings, components, unlink_colorings })
}

pub fn is_unlink(l: &LinkDiagram, budget: usize) -> Result<SimplificationResult, SimplifyError> {
    is_unlink_with(l, budget, Exec::default())
}

pub fn is_unlink_with(l: &LinkDiagram, budget: usize, exec: Exec) -> Result<SimplificationResult, SimplifyError> {
    if budget == 0 {
        return Err(SimplifyError::ZeroBudget);
    }
    if let Some(cert) = fox_certificate(l) {
        return Ok(SimplificationResult {
            verdict: Verdict::NotUnlink,
            trace: Vec::new(),
            budget_used: 0,
            certificate: Some(cert),
        });
    }
    let mut start = Work::new(PdCode::from_diagram(l.as_ch()));
    let mut trace = start.reduce(budget);
    let mut used = trace.len();
    if start.pd.nodes.is_empty() {
        return Ok(SimplificationResult { verdict: Verdict::Unlink, trace, budget_used: used, certificate: None });
    }
    let max_crossings = start.pd.nodes.len() + 2;

    struct Entry {
        work: Work,
        parent: usize,
        moves: Vec<Move>,
    }
    let mut arena: Vec<Entry> = vec![Entry { work: start.clone(), parent: usize::MAX, moves: Vec::new() }];
    let mut seen: HashSet<(usize, Vec<Vec<u32>>)> = HashSet::from([start.canonical_key()]);
    let mut frontier = vec![0usize];
    let path_to = |arena: &Vec<Entry>, mut i: usize| {
        let mut chunks = Vec::new();
        while i != usize::MAX {
            chunks.push(arena[i].moves.clone());
            i = arena[i].parent;
        }
        chunks.into_iter().rev().flatten().collect::<Vec<Move>>()
    };
    while !frontier.is_empty() && used < budget {
        let expanded = par::map(exec, &frontier, |&idx| {
            let w = &arena[idx].work;
            let ends = w.ends();
            let faces = w.faces(&ends);
            let mut moves = w.r3_candidates(&faces, &ends);
            if w.pd.nodes.len() + 2 <= max_crossings {
                moves.extend(w.r2_create_candidates(&faces));
            }
            moves
                .into_iter()
                .map(|mv| {
                    let mut next = w.clone();
                    next.apply(mv).expect("candidate move applies");
                    let mut made = vec![mv];
                    made.extend(next.reduce(usize::MAX));
                    let key = next.canonical_key();
                    (next, made, key)
                })
                .collect::<Vec<_>>()
        });
        let mut next_frontier = Vec::new();
        for (parent_slot, children) in frontier.iter().zip(expanded) {
            for (work, made, key) in children {
                if used >= budget {
                    break;
                }
                used += made.len();
                if !seen.insert(key) {
                    continue;
                }
                let done = work.pd.nodes.is_empty();
                arena.push(Entry { work, parent: *parent_slot, moves: made });
                let idx = arena.len() - 1;
                if done {
                    trace.extend(path_to(&arena, idx));
                    return Ok(SimplificationResult {
                        verdict: Verdict::Unlink,
                        trace,
                        budget_used: used,
                        certificate: None,
                    });
                }
                next_frontier.push(idx);
            }
        }
        frontier = next_frontier;
    }
    Ok(SimplificationResult { verdict: Verdict::Unknown, trace: Vec::new(), budget_used: used.min(budget), certificate: None })
}

/// Applies `trace` to `l`, checking each move's preconditions.
pub fn replay(l: &LinkDiagram, trace: &[Move]) -> Result<LinkDiagram, SimplifyError> {
    let mut w = Work::new(PdCode::from_diagram(l.as_ch()));
    for (index, &mv) in trace.iter().enumerate() {
        w.apply(mv).map_err(|reason| SimplifyError::Inapplicable { index, mv, reason })?;
    }
    Ok(LinkDiagram::from_pd(&w.pd).expect("Reidemeister moves preserve planarity"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub minus: SimplificationResult,
    pub plus: SimplificationResult,
    pub admissible: Admissibility,
}

pub fn is_admissible(d: &ChDiagram, budget: usize) -> Result<AdmissibilityReport, SimplifyError> {
    is_admissible_with(d, budget, Exec::default())
}

pub fn is_admissible_with(d: &ChDiagram, budget: usize, exec: Exec) -> Result<AdmissibilityReport, SimplifyError> {
    let minus = is_unlink_with(&d.smooth(Smoothing::Minus), budget, exec)?;
    let plus = is_unlink_with(&d.smooth(Smoothing::Plus), budget, exec)?;
    let admissible = match (minus.verdict, plus.verdict) {
        (Verdict::Unlink, Verdict::Unlink) => Admissibility::Yes,
        (Verdict::NotUnlink, _) | (_, Verdict::NotUnlink) => Admissibility::No,
        _ => Admissibility::Unknown,
    };
    Ok(AdmissibilityReport { minus, plus, admissible })
}
