//! ch-diagrams: marked singular link diagrams encoded as 4-valent
//! rotation systems.
//!
//! A node lists its four edge labels counterclockwise. At a crossing
//! `X a b c d` the pair `(a, c)` is the under strand and `(b, d)` the over
//! strand. At a marked vertex `V a b c d` the strands run `a–c` and `b–d`
//! and the marker occupies the two regions at the corners `(a, b)` and
//! `(c, d)`. Closed components without any node are counted in `circles`.
//!
//! Each edge has a reference orientation: its first textual occurrence is
//! the tail. The edge's normal is the reference direction rotated +90°
//! counterclockwise, so it points into the face on the left.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

pub type EdgeLabel = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: unknown statement {word:?}")]
    UnknownStatement { line: usize, word: String },
    #[error("line {line}: expected 4 edge labels, found {found}")]
    BadSlotCount { line: usize, found: usize },
    #[error("line {line}: bad edge label {token:?} (labels are positive integers)")]
    BadLabel { line: usize, token: String },
    #[error("line {line}: {what} takes no arguments")]
    TrailingTokens { line: usize, what: &'static str },
    #[error("line {line}: duplicate name statement")]
    DuplicateName { line: usize },
    #[error("edge label 0 is reserved")]
    ZeroLabel,
    #[error("edge {label} occurs once; every edge must occur exactly twice")]
    UnpairedEdge { label: EdgeLabel },
    #[error("edge {label} occurs {count} times; every edge must occur exactly twice")]
    OverusedEdge { label: EdgeLabel, count: usize },
    #[error("component {component} is not planar: V - E + F = {euler}, expected 2")]
    NonPlanar { component: usize, euler: i64 },
    #[error("diagram is empty")]
    Empty,
    #[error("a link diagram cannot contain marked vertices")]
    HasVertices,
    #[error("edge index {0} out of range")]
    NoSuchEdge(usize),
    #[error("bad braid word: {0}")]
    BadBraid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Crossing,
    Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Node {
    pub kind: NodeKind,
    pub slots: [EdgeLabel; 4],
}

impl Node {
    pub fn crossing(slots: [EdgeLabel; 4]) -> Self {
        Node { kind: NodeKind::Crossing, slots }
    }

    pub fn vertex(slots: [EdgeLabel; 4]) -> Self {
        Node { kind: NodeKind::Vertex, slots }
    }
}

/// A node-slot position. Read as a dart, it leaves `node` through `slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub node: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub label: EdgeLabel,
    pub tail: Slot,
    pub head: Slot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothing {
    /// Separates the marker's regions: joins `a–b` and `c–d`.
    Minus,
    /// Connects the marker's regions: joins `b–c` and `d–a`.
    Plus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChDiagram {
    name: Option<String>,
    nodes: Vec<Node>,
    circles: usize,
    edges: Vec<Edge>,
    slot_edge: Vec<[usize; 4]>,
}

impl ChDiagram {
    pub fn new(nodes: Vec<Node>, circles: usize) -> Result<Self, DiagramError> {
        let mut count: HashMap<EdgeLabel, usize> = HashMap::new();
        for n in &nodes {
            for &l in &n.slots {
                if l == 0 {
                    return Err(DiagramError::ZeroLabel);
                }
                *count.entry(l).or_default() += 1;
            }
        }
        let mut bad: Vec<(EdgeLabel, usize)> =
            count.iter().filter(|(_, &c)| c != 2).map(|(&l, &c)| (l, c)).collect();
        bad.sort();
        if let Some(&(label, c)) = bad.first() {
            return Err(if c == 1 {
                DiagramError::UnpairedEdge { label }
            } else {
                DiagramError::OverusedEdge { label, count: c }
            });
        }

        let mut index: HashMap<EdgeLabel, usize> = HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut slot_edge = vec![[0usize; 4]; nodes.len()];
        for (ni, n) in nodes.iter().enumerate() {
            for (si, &l) in n.slots.iter().enumerate() {
                let here = Slot { node: ni, slot: si };
                match index.get(&l) {
                    Some(&e) => {
                        edges[e].head = here;
                        slot_edge[ni][si] = e;
                    }
                    None => {
                        index.insert(l, edges.len());
                        slot_edge[ni][si] = edges.len();
                        edges.push(Edge { label: l, tail: here, head: here });
                    }
                }
            }
        }
        let d = ChDiagram { name: None, nodes, circles, edges, slot_edge };
        d.check_planar()?;
        Ok(d)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn circles(&self) -> usize {
        self.circles
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Crossing).count()
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Vertex).count()
    }

    /// Number of crossings plus number of marked vertices.
    pub fn ch_index(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_at(&self, s: Slot) -> usize {
        self.slot_edge[s.node][s.slot]
    }

    /// Whether the edge's reference orientation leaves the node at `s`.
    pub fn is_tail(&self, s: Slot) -> bool {
        self.edges[self.edge_at(s)].tail == s
    }

    pub fn other_end(&self, s: Slot) -> Slot {
        let e = &self.edges[self.edge_at(s)];
        if e.tail == s {
            e.head
        } else {
            e.tail
        }
    }

    /// The dart that follows `d` along the boundary of the face on its left.
    fn next_dart(&self, d: Slot) -> Slot {
        let arrive = self.other_end(d);
        Slot { node: arrive.node, slot: (arrive.slot + 3) % 4 }
    }

    /// Connected components of the underlying 4-valent graph, as a
    /// component id per node. Circles are not included.
    pub fn node_components(&self) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.nodes.len());
        for e in &self.edges {
            uf.union(e.tail.node, e.head.node);
        }
        uf.labels()
    }

    fn trace_faces(&self) -> (Vec<Vec<Slot>>, Vec<[usize; 4]>) {
        let mut dart_face = vec![[usize::MAX; 4]; self.nodes.len()];
        let mut faces = Vec::new();
        for ni in 0..self.nodes.len() {
            for si in 0..4 {
                if dart_face[ni][si] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut cycle = Vec::new();
                let mut d = Slot { node: ni, slot: si };
                while dart_face[d.node][d.slot] == usize::MAX {
                    dart_face[d.node][d.slot] = id;
                    cycle.push(d);
                    d = self.next_dart(d);
                }
                faces.push(cycle);
            }
        }
        (faces, dart_face)
    }

    fn check_planar(&self) -> Result<(), DiagramError> {
        let (k, comp) = self.node_components();
        let (faces, _) = self.trace_faces();
        let mut v = vec![0i64; k];
        let mut f = vec![0i64; k];
        for (ni, &c) in comp.iter().enumerate() {
            let _ = ni;
            v[c] += 1;
        }
        for face in &faces {
            f[comp[face[0].node]] += 1;
        }
        for c in 0..k {
            // 4-valent: E = 2V
            let euler = v[c] - 2 * v[c] + f[c];
            if euler != 2 {
                return Err(DiagramError::NonPlanar { component: c, euler });
            }
        }
        Ok(())
    }

    pub fn faces(&self) -> FaceMap {
        let (k, comp) = self.node_components();
        let (cycles, dart_face) = self.trace_faces();
        let mut faces: Vec<Face> = cycles
            .into_iter()
            .map(|darts| Face { component: comp[darts[0].node], darts })
            .collect();
        let edge_faces = self
            .edges
            .iter()
            .map(|e| (dart_face[e.tail.node][e.tail.slot], dart_face[e.head.node][e.head.slot]))
            .collect();
        let marker_faces = self
            .nodes
            .iter()
            .enumerate()
            .map(|(ni, n)| match n.kind {
                NodeKind::Vertex => Some((dart_face[ni][0], dart_face[ni][2])),
                NodeKind::Crossing => None,
            })
            .collect();
        let mut circle_faces = Vec::with_capacity(self.circles);
        for i in 0..self.circles {
            let left = faces.len();
            faces.push(Face { component: k + i, darts: Vec::new() });
            faces.push(Face { component: k + i, darts: Vec::new() });
            circle_faces.push((left, left + 1));
        }
        FaceMap {
            faces,
            dart_face,
            edge_faces,
            circle_faces,
            marker_faces,
            components: k + self.circles,
        }
    }

    /// Serializes to the `.chd` text format. Reparsing gives back an equal
    /// diagram.
    pub fn to_chd(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(out, "name {name}");
        }
        for _ in 0..self.circles {
            out.push_str("circle\n");
        }
        for n in &self.nodes {
            let tag = match n.kind {
                NodeKind::Crossing => 'X',
                NodeKind::Vertex => 'V',
            };
            let [a, b, c, d] = n.slots;
            let _ = writeln!(out, "{tag} {a} {b} {c} {d}");
        }
        out
    }

    /// Replaces every marked vertex by its `sign` smoothing.
    pub fn smooth(&self, sign: Smoothing) -> LinkDiagram {
        let mut pd = PdCode::from_diagram(self);
        let verts: Vec<usize> = (0..pd.nodes.len())
            .filter(|&i| pd.nodes[i].kind == NodeKind::Vertex)
            .collect();
        for &vi in verts.iter().rev() {
            let [a, b, c, d] = pd.nodes[vi].slots;
            let pairs = match sign {
                Smoothing::Minus => vec![(a, b), (c, d)],
                Smoothing::Plus => vec![(b, c), (d, a)],
            };
            pd.remove_and_join(&[vi], pairs);
        }
        LinkDiagram::from_pd(&pd).expect("smoothing preserves planarity")
    }

    /// The same diagram with one edge's reference orientation reversed.
    pub fn flip_edge(&self, edge: usize) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        let e = d.edges.get_mut(edge).ok_or(DiagramError::NoSuchEdge(edge))?;
        std::mem::swap(&mut e.tail, &mut e.head);
        Ok(d)
    }

    /// Crossing changes at every crossing (under and over strands swap);
    /// markers are kept.
    pub fn mirror(&self) -> Self {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n.kind {
                NodeKind::Crossing => {
                    let [a, b, c, d] = n.slots;
                    Node::crossing([b, c, d, a])
                }
                NodeKind::Vertex => *n,
            })
            .collect();
        let mut m = ChDiagram::new(nodes, self.circles).expect("mirror of a valid diagram");
        m.name = self.name.as_ref().map(|s| format!("{s}*"));
        m
    }

    pub fn is_connected(&self) -> bool {
        let (k, _) = self.node_components();
        k + self.circles <= 1
    }
}

/// Counts the closed strands of a diagram, treating both crossings and
/// marked vertices as places where strands pass straight through.
fn strand_count(d: &ChDiagram) -> usize {
    let mut uf = UnionFind::new(d.edges.len());
    for (ni, _) in d.nodes.iter().enumerate() {
        let e = |s: usize| d.slot_edge[ni][s];
        uf.union(e(0), e(2));
        uf.union(e(1), e(3));
    }
    uf.labels().0 + d.circles
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub component: usize,
    /// Boundary darts, each with this face on its left. Empty for the two
    /// faces of a crossing-free circle.
    pub darts: Vec<Slot>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceMap {
    pub faces: Vec<Face>,
    pub dart_face: Vec<[usize; 4]>,
    /// `(left, right)` face of each edge relative to its reference orientation.
    pub edge_faces: Vec<(usize, usize)>,
    /// `(left, right)` faces of each circle; the left face is its inside.
    pub circle_faces: Vec<(usize, usize)>,
    /// The faces at corners `(a, b)` and `(c, d)` of each marked vertex.
    pub marker_faces: Vec<Option<(usize, usize)>>,
    pub components: usize,
}

impl FaceMap {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Split diagrams have their faces computed per component: the face
    /// in which one component sits inside another is not identified.
    pub fn is_split(&self) -> bool {
        self.components > 1
    }

    pub fn disclaimer(&self) -> Option<String> {
        self.is_split().then(|| {
            format!(
                "diagram has {} split components; faces are per component and outer faces are not merged",
                self.components
            )
        })
    }
}

/// A classical link diagram: a ch-diagram without marked vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram(ChDiagram);

impl LinkDiagram {
    pub fn new(crossings: Vec<[EdgeLabel; 4]>, circles: usize) -> Result<Self, DiagramError> {
        let nodes = crossings.into_iter().map(Node::crossing).collect();
        Ok(LinkDiagram(ChDiagram::new(nodes, circles)?))
    }

    pub fn from_ch(d: ChDiagram) -> Result<Self, DiagramError> {
        if d.vertex_count() > 0 {
            return Err(DiagramError::HasVertices);
        }
        Ok(LinkDiagram(d))
    }

    pub(crate) fn from_pd(pd: &PdCode) -> Result<Self, DiagramError> {
        Self::from_ch(ChDiagram::new(pd.nodes.clone(), pd.circles)?)
    }

    pub fn as_ch(&self) -> &ChDiagram {
        &self.0
    }

    pub fn into_ch(self) -> ChDiagram {
        self.0
    }

    pub fn crossings(&self) -> Vec<[EdgeLabel; 4]> {
        self.0.nodes.iter().map(|n| n.slots).collect()
    }

    pub fn crossing_count(&self) -> usize {
        self.0.nodes.len()
    }

    pub fn circles(&self) -> usize {
        self.0.circles
    }
}

/// Number of components of a link diagram.
pub fn count_components(l: &LinkDiagram) -> usize {
    strand_count(&l.0)
}

pub fn smooth(d: &ChDiagram, sign: Smoothing) -> LinkDiagram {
    d.smooth(sign)
}

pub fn ch_index(d: &ChDiagram) -> usize {
    d.ch_index()
}

/// `μ(L⁻) + μ(L⁺) − v`: caps on both trivialized smoothings plus one
/// saddle per marked vertex.
pub fn euler_characteristic(d: &ChDiagram) -> i64 {
    let minus = count_components(&d.smooth(Smoothing::Minus)) as i64;
    let plus = count_components(&d.smooth(Smoothing::Plus)) as i64;
    minus + plus - d.vertex_count() as i64
}

pub fn faces(d: &ChDiagram) -> FaceMap {
    d.faces()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceComponent {
    /// Indices of the edges on this component (empty for a bare circle).
    pub edges: Vec<usize>,
    pub vertices: usize,
    pub minus_components: usize,
    pub plus_components: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
}

impl SurfaceComponent {
    /// Genus in table notation: `g ≥ 0` for an orientable surface of genus
    /// `g`, `−k` for a connected sum of `k` projective planes.
    pub fn signed_genus(&self) -> i64 {
        if self.orientable {
            (2 - self.euler_characteristic) / 2
        } else {
            -(2 - self.euler_characteristic)
        }
    }
}

/// Splits the surface represented by `d` into connected components and
/// reports the Euler characteristic and orientability of each.
///
/// Components are found by letting strands pass straight through crossings
/// and fusing all four edges at a marked vertex. A component is orientable
/// iff its edges can be oriented so that strands are coherent through
/// crossings while at each marked vertex opposite edges point the same
/// way relative to the vertex (both in or both out) and adjacent edges do
/// not.
pub fn surface_components(d: &ChDiagram) -> Vec<SurfaceComponent> {
    let ne = d.edges.len();
    let mut uf = UnionFind::new(ne);
    let mut parity = ParityUnionFind::new(ne);
    let mut orientable_ok = vec![true; ne];
    let mut conflicts: Vec<usize> = Vec::new();
    for (ni, node) in d.nodes.iter().enumerate() {
        let e = |s: usize| d.slot_edge[ni][s];
        let inc = |s: usize| !d.is_tail(Slot { node: ni, slot: s }) as u8;
        uf.union(e(0), e(2));
        uf.union(e(1), e(3));
        let mut rels: Vec<(usize, usize, u8)> = Vec::new();
        match node.kind {
            NodeKind::Crossing => {
                rels.push((0, 2, 1));
                rels.push((1, 3, 1));
            }
            NodeKind::Vertex => {
                uf.union(e(0), e(1));
                rels.push((0, 2, 0));
                rels.push((1, 3, 0));
                rels.push((0, 1, 1));
            }
        }
        for (s, t, flip) in rels {
            if !parity.relate(e(s), e(t), inc(s) ^ inc(t) ^ flip) {
                conflicts.push(e(s));
            }
        }
    }
    let (k, label) = uf.labels();
    for c in conflicts {
        orientable_ok[label[c]] = false;
    }
    let mut comps: Vec<SurfaceComponent> = (0..k)
        .map(|c| SurfaceComponent {
            edges: (0..ne).filter(|&e| label[e] == c).collect(),
            vertices: 0,
            minus_components: 0,
            plus_components: 0,
            euler_characteristic: 0,
            orientable: orientable_ok[c],
        })
        .collect();
    for (ni, node) in d.nodes.iter().enumerate() {
        if node.kind == NodeKind::Vertex {
            comps[label[d.slot_edge[ni][0]]].vertices += 1;
        }
    }
    let by_label: HashMap<EdgeLabel, usize> =
        d.edges.iter().enumerate().map(|(i, e)| (e.label, label[i])).collect();
    for sign in [Smoothing::Minus, Smoothing::Plus] {
        let mut pd = PdCode::from_diagram(d);
        let verts: Vec<usize> = (0..pd.nodes.len())
            .filter(|&i| pd.nodes[i].kind == NodeKind::Vertex)
            .collect();
        for &vi in verts.iter().rev() {
            let [a, b, c, dd] = pd.nodes[vi].slots;
            let pairs = match sign {
                Smoothing::Minus => vec![(a, b), (c, dd)],
                Smoothing::Plus => vec![(b, c), (dd, a)],
            };
            pd.remove_and_join(&[vi], pairs);
        }
        let mut tally = vec![0usize; k];
        for l in &pd.closed {
            tally[by_label[l]] += 1;
        }
        let link = LinkDiagram::from_pd(&pd).expect("smoothing preserves planarity");
        let ld = link.as_ch();
        let mut suf = UnionFind::new(ld.edges.len());
        for ni in 0..ld.nodes.len() {
            suf.union(ld.slot_edge[ni][0], ld.slot_edge[ni][2]);
            suf.union(ld.slot_edge[ni][1], ld.slot_edge[ni][3]);
        }
        let (_, slabel) = suf.labels();
        let mut seen = std::collections::HashSet::new();
        for (i, e) in ld.edges.iter().enumerate() {
            if seen.insert(slabel[i]) {
                tally[by_label[&e.label]] += 1;
            }
        }
        for (c, t) in tally.into_iter().enumerate() {
            match sign {
                Smoothing::Minus => comps[c].minus_components = t,
                Smoothing::Plus => comps[c].plus_components = t,
            }
        }
    }
    for c in &mut comps {
        c.euler_characteristic =
            c.minus_components as i64 + c.plus_components as i64 - c.vertices as i64;
    }
    for _ in 0..d.circles {
        comps.push(SurfaceComponent {
            edges: Vec::new(),
            vertices: 0,
            minus_components: 1,
            plus_components: 1,
            euler_characteristic: 2,
            orientable: true,
        });
    }
    comps
}

/// Parses the `.chd` text format.
///
/// ```text
/// # comment
/// name 8_1^{-1,-1}
/// circle
/// X a b c d      crossing, slots counterclockwise, (a,c) under
/// V a b c d      marked vertex, marker at corners (a,b) and (c,d)
/// ```
pub fn parse_chd(text: &str) -> Result<ChDiagram, DiagramError> {
    let mut nodes = Vec::new();
    let mut circles = 0;
    let mut name: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let word = tokens.next().unwrap();
        match word {
            "name" => {
                if name.is_some() {
                    return Err(DiagramError::DuplicateName { line: line_no });
                }
                let rest = line["name".len()..].trim();
                name = Some(rest.to_string());
            }
            "circle" => {
                if tokens.next().is_some() {
                    return Err(DiagramError::TrailingTokens { line: line_no, what: "circle" });
                }
                circles += 1;
            }
            "X" | "V" => {
                let toks: Vec<&str> = tokens.collect();
                if toks.len() != 4 {
                    return Err(DiagramError::BadSlotCount { line: line_no, found: toks.len() });
                }
                let mut slots = [0; 4];
                for (k, t) in toks.iter().enumerate() {
                    slots[k] = match t.parse::<EdgeLabel>() {
                        Ok(v) if v > 0 => v,
                        _ => {
                            return Err(DiagramError::BadLabel {
                                line: line_no,
                                token: t.to_string(),
                            })
                        }
                    };
                }
                nodes.push(if word == "X" { Node::crossing(slots) } else { Node::vertex(slots) });
            }
            other => {
                return Err(DiagramError::UnknownStatement {
                    line: line_no,
                    word: other.to_string(),
                })
            }
        }
    }
    if nodes.is_empty() && circles == 0 {
        return Err(DiagramError::Empty);
    }
    let d = ChDiagram::new(nodes, circles)?;
    Ok(match name {
        Some(n) => d.with_name(n),
        None => d,
    })
}

/// Label-level planar diagram code used for local rewrites. Unlike
/// [`ChDiagram`] it is not re-indexed after every change.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct PdCode {
    pub nodes: Vec<Node>,
    pub circles: usize,
    /// Labels whose edge closed up into a circle during rewrites.
    pub closed: Vec<EdgeLabel>,
}

impl PdCode {
    pub fn from_diagram(d: &ChDiagram) -> Self {
        PdCode { nodes: d.nodes.clone(), circles: d.circles, closed: Vec::new() }
    }

    pub fn max_label(&self) -> EdgeLabel {
        self.nodes.iter().flat_map(|n| n.slots).max().unwrap_or(0)
    }

    fn rename(&mut self, from: EdgeLabel, to: EdgeLabel, pending: &mut [(EdgeLabel, EdgeLabel)]) {
        for n in &mut self.nodes {
            for s in &mut n.slots {
                if *s == from {
                    *s = to;
                }
            }
        }
        for p in pending.iter_mut() {
            if p.0 == from {
                p.0 = to;
            }
            if p.1 == from {
                p.1 = to;
            }
        }
    }

    /// Deletes the given nodes and reconnects their dangling edge ends in
    /// the listed pairs. Joining both ends of one edge closes a circle.
    pub fn remove_and_join(&mut self, removed: &[usize], pairs: Vec<(EdgeLabel, EdgeLabel)>) {
        let mut idx = removed.to_vec();
        idx.sort_unstable();
        idx.dedup();
        for &i in idx.iter().rev() {
            self.nodes.remove(i);
        }
        let mut pending = pairs;
        for k in 0..pending.len() {
            let (x, y) = pending[k];
            if x == y {
                self.circles += 1;
                self.closed.push(x);
            } else {
                let (head, tail) = pending.split_at_mut(k + 1);
                let _ = head;
                self.rename(y, x, tail);
            }
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Dense component ids in order of first appearance.
    pub fn labels(&mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut map = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut k = 0;
        for i in 0..n {
            let r = self.find(i);
            if map[r] == usize::MAX {
                map[r] = k;
                k += 1;
            }
            out[i] = map[r];
        }
        (k, out)
    }
}

/// Union-find carrying a parity bit between each element and its root.
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![0; n] }
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, u8) {
        if self.parent[x] == x {
            return (x, 0);
        }
        let p = self.parent[x];
        let (root, pp) = self.find(p);
        self.parent[x] = root;
        self.parity[x] ^= pp;
        (root, self.parity[x])
    }

    /// Imposes `bit(a) ^ bit(b) == rel`. Returns false on contradiction.
    pub fn relate(&mut self, a: usize, b: usize, rel: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        let (lo, hi, ph) = if ra < rb { (ra, rb, pa ^ pb ^ rel) } else { (rb, ra, pa ^ pb ^ rel) };
        self.parent[hi] = lo;
        self.parity[hi] = ph;
        true
    }
}
