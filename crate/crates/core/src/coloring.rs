//! (X,ρ)-colorings of ch-diagrams.
//!
//! Every edge carries one variable: its color read against the edge's
//! reference orientation. A basic inversion (reverse the orientation,
//! apply ρ) is never stored; instead each relation records, per
//! occurrence, whether ρ must be applied to bring the stored color to the
//! orientation the relation is stated in. A [`Term`] is such an
//! occurrence.
//!
//! Relations emitted per node:
//!
//! - crossing `X a b c d`, under strand travelling `a → c`:
//!   the over color is read in the orientation `d → b` (its normal points
//!   along the under travel), the over color is continuous
//!   (`in(d) = out(b)`), and `out(c) = in(a) ▷ in(d)`;
//! - marked vertex `V a b c d`: with all four colors read pointing into
//!   the vertex, `in(a) = in(c)`, `in(b) = in(d)` and `in(b) = ρ(in(a))`.
//!   This is the sheet of the saddle carrying a single color: at an
//!   oriented vertex opposite edges both point in or both point out.
//!
//! With a non-trivial (X,ρ)-set `Y` each face gets a variable as well and
//! each edge imposes `y_left = y_right · x`.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{QuandleAction, SymmetricQuandle};
use crate::diagram::{ChDiagram, NodeKind, Slot, UnionFind};
use crate::par::{self, Exec};

/// Default upper bound on the number of states [`brute_force_all`]
/// is willing to enumerate.
pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 1 << 27;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("brute force would enumerate {states} states, above the cap of {cap}")]
    CapExceeded { states: u128, cap: u128 },
    #[error("action is over a quandle of order {found}, expected {expected}")]
    ActionMismatch { found: usize, expected: usize },
}

/// One occurrence of a variable, optionally composed with ρ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Term {
    pub var: usize,
    pub rho: bool,
}

impl Term {
    fn flipped(self) -> Term {
        Term { rho: !self.rho, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `N(lhs) = N(rhs)`
    Equal { lhs: Term, rhs: Term },
    /// `N(result) = N(left) ▷ N(right)`
    Operate { result: Term, left: Term, right: Term },
    /// `y_to = y_from · N(by)`
    Act { to: usize, from: usize, by: Term },
}

impl Relation {
    fn vars(&self) -> Vec<usize> {
        match *self {
            Relation::Equal { lhs, rhs } => vec![lhs.var, rhs.var],
            Relation::Operate { result, left, right } => vec![result.var, left.var, right.var],
            Relation::Act { to, from, by } => vec![to, from, by.var],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationSource {
    OverContinuity { node: usize },
    UnderRelation { node: usize },
    Vertex { node: usize },
    Region { edge: usize },
    CircleRegion { circle: usize },
    SplitFaceMerge { component: usize },
}

/// Orientation conventions that the relations depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Conventions {
    /// Read the over color in the opposite orientation (`ρ(ȳ)` instead
    /// of `ȳ`) in the under relation.
    pub over_rho: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintSystem {
    /// Edge variables: one per edge, then one per circle.
    pub edge_vars: usize,
    /// Face variables follow the edge variables; zero for a trivial `Y`.
    pub face_vars: usize,
    pub x_order: usize,
    pub y_order: usize,
    pub relations: Vec<Relation>,
    pub sources: Vec<RelationSource>,
    pub warnings: Vec<String>,
}

impl ConstraintSystem {
    pub fn var_count(&self) -> usize {
        self.edge_vars + self.face_vars
    }

    fn domain(&self, var: usize) -> usize {
        if var < self.edge_vars {
            self.x_order
        } else {
            self.y_order
        }
    }

    fn push(&mut self, r: Relation, s: RelationSource) {
        self.relations.push(r);
        self.sources.push(s);
    }

    /// Relations emitted for one node, in emission order.
    pub fn relations_at(&self, node: usize) -> Vec<Relation> {
        self.relations
            .iter()
            .zip(&self.sources)
            .filter(|(_, s)| match s {
                RelationSource::OverContinuity { node: n }
                | RelationSource::UnderRelation { node: n }
                | RelationSource::Vertex { node: n } => *n == node,
                _ => false,
            })
            .map(|(r, _)| *r)
            .collect()
    }

    /// Checks a complete assignment against every relation.
    pub fn satisfied_by(&self, sq: &SymmetricQuandle, action: &QuandleAction, values: &[usize]) -> bool {
        self.relations.iter().all(|r| eval(r, sq, action, values))
    }
}

#[inline]
fn norm(sq: &SymmetricQuandle, t: Term, x: usize) -> usize {
    if t.rho {
        sq.rho(x)
    } else {
        x
    }
}

fn eval(r: &Relation, sq: &SymmetricQuandle, action: &QuandleAction, v: &[usize]) -> bool {
    match *r {
        Relation::Equal { lhs, rhs } => norm(sq, lhs, v[lhs.var]) == norm(sq, rhs, v[rhs.var]),
        Relation::Operate { result, left, right } => {
            norm(sq, result, v[result.var])
                == sq.op(norm(sq, left, v[left.var]), norm(sq, right, v[right.var]))
        }
        Relation::Act { to, from, by } => v[to] == action.act(v[from], norm(sq, by, v[by.var])),
    }
}

pub fn build_constraints(
    d: &ChDiagram,
    sq: &SymmetricQuandle,
    action: &QuandleAction,
) -> ConstraintSystem {
    build_constraints_with(d, sq, action, Conventions::default())
}

pub fn build_constraints_with(
    d: &ChDiagram,
    sq: &SymmetricQuandle,
    action: &QuandleAction,
    conv: Conventions,
) -> ConstraintSystem {
    let ne = d.edges().len();
    let edge_vars = ne + d.circles();
    let mut cs = ConstraintSystem {
        edge_vars,
        face_vars: 0,
        x_order: sq.order(),
        y_order: action.size(),
        relations: Vec::new(),
        sources: Vec::new(),
        warnings: Vec::new(),
    };
    // the color at a slot read pointing into / out of the node
    let inward = |s: Slot| Term { var: d.edge_at(s), rho: d.is_tail(s) };
    let outward = |s: Slot| Term { var: d.edge_at(s), rho: !d.is_tail(s) };
    for (ni, node) in d.nodes().iter().enumerate() {
        let slot = |k: usize| Slot { node: ni, slot: k };
        match node.kind {
            NodeKind::Crossing => {
                let over = inward(slot(3));
                cs.push(
                    Relation::Equal { lhs: over, rhs: outward(slot(1)) },
                    RelationSource::OverContinuity { node: ni },
                );
                let right = if conv.over_rho { over.flipped() } else { over };
                cs.push(
                    Relation::Operate { result: outward(slot(2)), left: inward(slot(0)), right },
                    RelationSource::UnderRelation { node: ni },
                );
            }
            NodeKind::Vertex => {
                let src = RelationSource::Vertex { node: ni };
                cs.push(Relation::Equal { lhs: inward(slot(0)), rhs: inward(slot(2)) }, src);
                cs.push(Relation::Equal { lhs: inward(slot(1)), rhs: inward(slot(3)) }, src);
                cs.push(
                    Relation::Equal { lhs: inward(slot(0)).flipped(), rhs: inward(slot(1)) },
                    src,
                );
            }
        }
    }
    if !action.is_trivial() {
        let fm = d.faces();
        cs.face_vars = fm.len();
        let fv = |f: usize| edge_vars + f;
        for (e, &(left, right)) in fm.edge_faces.iter().enumerate() {
            cs.push(
                Relation::Act { to: fv(left), from: fv(right), by: Term { var: e, rho: false } },
                RelationSource::Region { edge: e },
            );
        }
        for (c, &(inside, outside)) in fm.circle_faces.iter().enumerate() {
            cs.push(
                Relation::Act {
                    to: fv(inside),
                    from: fv(outside),
                    by: Term { var: ne + c, rho: false },
                },
                RelationSource::CircleRegion { circle: c },
            );
        }
        if let Some(note) = fm.disclaimer() {
            // place every component in face 0 of the first one
            let mut first_face = vec![usize::MAX; fm.components];
            for (f, face) in fm.faces.iter().enumerate() {
                if first_face[face.component] == usize::MAX {
                    first_face[face.component] = f;
                }
            }
            for (c, &f) in first_face.iter().enumerate().skip(1) {
                cs.push(
                    Relation::Equal {
                        lhs: Term { var: fv(first_face[0]), rho: false },
                        rhs: Term { var: fv(f), rho: false },
                    },
                    RelationSource::SplitFaceMerge { component: c },
                );
            }
            cs.warnings.push(format!("{note}; all components placed in one common region"));
        }
    }
    cs
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coloring {
    /// Colors of the edges (in edge order) followed by the circles, each
    /// relative to the reference orientation.
    pub edge_colors: Vec<usize>,
    /// Face colors when a non-trivial (X,ρ)-set is used.
    pub region_colors: Option<Vec<usize>>,
}

impl Coloring {
    fn from_values(cs: &ConstraintSystem, values: &[usize]) -> Self {
        Coloring {
            edge_colors: values[..cs.edge_vars].to_vec(),
            region_colors: (cs.face_vars > 0).then(|| values[cs.edge_vars..].to_vec()),
        }
    }
}

/// True iff every edge has the same color `a` and `ρ(a) = a`.
pub fn is_monochromatic_fixed_point(c: &Coloring, sq: &SymmetricQuandle) -> bool {
    match c.edge_colors.first() {
        Some(&a) => sq.rho(a) == a && c.edge_colors.iter().all(|&x| x == a),
        None => false,
    }
}

const UNSET: u32 = u32::MAX;

/// Backtracking state: an assignment, an undo trail, and per-variable
/// watch lists into the relation vector.
#[derive(Clone)]
struct Search<'a> {
    cs: &'a ConstraintSystem,
    sq: &'a SymmetricQuandle,
    action: &'a QuandleAction,
    watch: &'a [Vec<usize>],
    assign: Vec<u32>,
    trail: Vec<usize>,
    queue: Vec<usize>,
}

impl<'a> Search<'a> {
    fn value(&self, v: usize) -> Option<usize> {
        let x = self.assign[v];
        (x != UNSET).then_some(x as usize)
    }

    fn set(&mut self, v: usize, val: usize) -> bool {
        match self.value(v) {
            Some(cur) => cur == val,
            None => {
                self.assign[v] = val as u32;
                self.trail.push(v);
                self.queue.push(v);
                true
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            self.assign[v] = UNSET;
        }
        self.queue.clear();
    }

    /// Applies one relation: fills in a functionally determined variable
    /// or checks the relation once all its variables are known.
    fn apply(&mut self, r: Relation) -> bool {
        let sq = self.sq;
        let n = |t: Term, x: usize| norm(sq, t, x);
        match r {
            Relation::Equal { lhs, rhs } => match (self.value(lhs.var), self.value(rhs.var)) {
                (Some(a), Some(b)) => n(lhs, a) == n(rhs, b),
                (Some(a), None) => self.set(rhs.var, n(rhs, n(lhs, a))),
                (None, Some(b)) => self.set(lhs.var, n(lhs, n(rhs, b))),
                (None, None) => true,
            },
            Relation::Operate { result, left, right } => {
                match (self.value(result.var), self.value(left.var), self.value(right.var)) {
                    (r0, Some(l), Some(w)) => {
                        let want = n(result, sq.op(n(left, l), n(right, w)));
                        match r0 {
                            Some(x) => x == want,
                            None => self.set(result.var, want),
                        }
                    }
                    (Some(x), None, Some(w)) => {
                        self.set(left.var, n(left, sq.op_inv(n(result, x), n(right, w))))
                    }
                    _ => true,
                }
            }
            Relation::Act { to, from, by } => {
                match (self.value(to), self.value(from), self.value(by.var)) {
                    (t0, Some(f), Some(x)) => {
                        let want = self.action.act(f, n(by, x));
                        match t0 {
                            Some(t) => t == want,
                            None => self.set(to, want),
                        }
                    }
                    (Some(t), None, Some(x)) => self.set(from, self.action.act_inv(t, n(by, x))),
                    _ => true,
                }
            }
        }
    }

    fn propagate(&mut self) -> bool {
        while let Some(v) = self.queue.pop() {
            for &ri in &self.watch[v] {
                if !self.apply(self.cs.relations[ri]) {
                    self.queue.clear();
                    return false;
                }
            }
        }
        true
    }

    fn first_unset(&self) -> Option<usize> {
        self.assign.iter().position(|&x| x == UNSET)
    }

    /// Tries `var = val` and propagates; leaves the state assigned on
    /// success.
    fn try_assign(&mut self, var: usize, val: usize) -> bool {
        self.set(var, val) && self.propagate()
    }

    fn dfs(&mut self, visit: &mut dyn FnMut(&[u32]) -> bool) -> bool {
        let Some(var) = self.first_unset() else {
            return visit(&self.assign);
        };
        for val in 0..self.cs.domain(var) {
            let mark = self.trail.len();
            if self.try_assign(var, val) && !self.dfs(visit) {
                self.undo_to(mark);
                return false;
            }
            self.undo_to(mark);
        }
        true
    }

    /// Consistent partial assignments after `depth` branching decisions,
    /// in search order. Complete solutions found earlier are included.
    fn frontier(&mut self, depth: usize, out: &mut Vec<Vec<u32>>) {
        if depth == 0 || self.first_unset().is_none() {
            out.push(self.assign.clone());
            return;
        }
        let var = self.first_unset().unwrap();
        for val in 0..self.cs.domain(var) {
            let mark = self.trail.len();
            if self.try_assign(var, val) {
                self.frontier(depth - 1, out);
            }
            self.undo_to(mark);
        }
    }
}

fn watch_lists(cs: &ConstraintSystem) -> Vec<Vec<usize>> {
    let mut watch = vec![Vec::new(); cs.var_count()];
    for (ri, r) in cs.relations.iter().enumerate() {
        let mut vs = r.vars();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            watch[v].push(ri);
        }
    }
    watch
}

/// Runs the search, fanning the top of the tree out according to `exec`.
/// `leaf` receives each complete assignment; results per subtree are
/// returned in search order.
fn run<R: Send>(
    cs: &ConstraintSystem,
    sq: &SymmetricQuandle,
    action: &QuandleAction,
    exec: Exec,
    leaf: impl Fn(&[u32], &mut R) + Sync + Send,
    init: impl Fn() -> R + Sync + Send,
) -> Vec<R> {
    let watch = watch_lists(cs);
    let mut root = Search {
        cs,
        sq,
        action,
        watch: &watch,
        assign: vec![UNSET; cs.var_count()],
        trail: Vec::new(),
        queue: Vec::new(),
    };
    if cs.var_count() == 0 {
        let mut acc = init();
        leaf(&[], &mut acc);
        return vec![acc];
    }
    let depth = if exec.is_parallel() {
        // enough subtrees to keep a pool busy
        let mut depth = 1;
        let mut width = cs.x_order.max(2);
        while width < 64 && depth < cs.var_count() {
            width *= cs.x_order.max(2);
            depth += 1;
        }
        depth
    } else {
        0
    };
    let mut starts = Vec::new();
    root.frontier(depth, &mut starts);
    par::map(exec, &starts, |start| {
        let mut s = root.clone();
        s.assign = start.clone();
        s.trail.clear();
        let mut acc = init();
        s.dfs(&mut |a| {
            leaf(a, &mut acc);
            true
        });
        acc
    })
}

fn trivial_action_for(sq: &SymmetricQuandle) -> QuandleAction {
    crate::algebra::make_trivial_action(sq)
}

fn check_action(sq: &SymmetricQuandle, action: &QuandleAction, cs: &ConstraintSystem) -> Result<(), ColoringError> {
    if cs.x_order != sq.order() {
        return Err(ColoringError::ActionMismatch { found: cs.x_order, expected: sq.order() });
    }
    if cs.face_vars > 0 && cs.y_order != action.size() {
        return Err(ColoringError::ActionMismatch { found: action.size(), expected: cs.y_order });
    }
    Ok(())
}

/// All solutions of `cs`, sorted lexicographically by variable values.
pub fn solve_all(cs: &ConstraintSystem, sq: &SymmetricQuandle, action: &QuandleAction) -> Vec<Coloring> {
    solve_all_with(cs, sq, action, Exec::default())
}

pub fn solve_all_with(
    cs: &ConstraintSystem,
    sq: &SymmetricQuandle,
    action: &QuandleAction,
    exec: Exec,
) -> Vec<Coloring> {
    check_action(sq, action, cs).expect("constraint system built for this quandle");
    let parts = run(
        cs,
        sq,
        action,
        exec,
        |a, acc: &mut Vec<Vec<usize>>| acc.push(a.iter().map(|&x| x as usize).collect()),
        Vec::new,
    );
    let mut all: Vec<Vec<usize>> = parts.into_iter().flatten().collect();
    all.sort_unstable();
    all.iter().map(|v| Coloring::from_values(cs, v)).collect()
}

pub fn count_solutions_with(
    cs: &ConstraintSystem,
    sq: &SymmetricQuandle,
    action: &QuandleAction,
    exec: Exec,
) -> u64 {
    check_action(sq, action, cs).expect("constraint system built for this quandle");
    run(cs, sq, action, exec, |_, acc: &mut u64| *acc += 1, || 0u64).into_iter().sum()
}

/// The smallest solution in lexicographic order, if any.
///
/// The search always branches on the lowest unassigned variable, and
/// propagation only ever assigns higher ones, so leaves are reached in
/// lexicographic order and the first leaf is the minimum.
pub fn first_solution(cs: &ConstraintSystem, sq: &SymmetricQuandle, action: &QuandleAction) -> Option<Coloring> {
    let watch = watch_lists(cs);
    let mut s = Search {
        cs,
        sq,
        action,
        watch: &watch,
        assign: vec![UNSET; cs.var_count()],
        trail: Vec::new(),
        queue: Vec::new(),
    };
    let mut found: Option<Vec<usize>> = None;
    s.dfs(&mut |a| {
        found = Some(a.iter().map(|&x| x as usize).collect());
        false
    });
    found.map(|v| Coloring::from_values(cs, &v))
}

/// Exhaustive oracle. Variables tied together by `Equal` relations are
/// enumerated as one class (each member's value follows from the class
/// representative up to ρ); every relation is then checked on every
/// candidate. The class product must not exceed `cap`.
pub fn brute_force_all(
    cs: &ConstraintSystem,
    sq: &SymmetricQuandle,
    action: &QuandleAction,
    cap: u128,
) -> Result<Vec<Coloring>, ColoringError> {
    brute_force_all_with(cs, sq, action, cap, Exec::default())
}

pub fn brute_force_all_with(
    cs: &ConstraintSystem,
    sq: &SymmetricQuandle,
    action: &QuandleAction,
    cap: u128,
    exec: Exec,
) -> Result<Vec<Coloring>, ColoringError> {
    check_action(sq, action, cs)?;
    let nv = cs.var_count();
    // parity: 1 when a member equals ρ of the representative
    let mut uf = UnionFind::new(nv);
    let mut tree: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nv];
    for r in &cs.relations {
        if let Relation::Equal { lhs, rhs } = *r {
            if uf.find(lhs.var) != uf.find(rhs.var) {
                uf.union(lhs.var, rhs.var);
                let flip = lhs.rho != rhs.rho;
                tree[lhs.var].push((rhs.var, flip));
                tree[rhs.var].push((lhs.var, flip));
            }
        }
    }
    // representative = smallest variable of each class; parities by walk
    let mut rep = vec![usize::MAX; nv];
    let mut parity = vec![false; nv];
    let mut reps = Vec::new();
    for v in 0..nv {
        if rep[v] != usize::MAX {
            continue;
        }
        reps.push(v);
        rep[v] = v;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &(w, flip) in &tree[u] {
                if rep[w] == usize::MAX {
                    rep[w] = v;
                    parity[w] = parity[u] ^ flip;
                    stack.push(w);
                }
            }
        }
    }
    let radix: Vec<usize> = reps.iter().map(|&r| cs.domain(r)).collect();
    let states: u128 = radix.iter().map(|&k| k as u128).product();
    if states > cap {
        return Err(ColoringError::CapExceeded { states, cap });
    }
    let states = states as u64;
    let rep_slot: Vec<usize> = {
        let mut m = vec![0; nv];
        for (i, &r) in reps.iter().enumerate() {
            m[r] = i;
        }
        m
    };
    let decode = |mut idx: u64, digits: &mut [usize]| {
        for k in (0..radix.len()).rev() {
            digits[k] = (idx % radix[k] as u64) as usize;
            idx /= radix[k] as u64;
        }
    };
    let chunk = 1u64 << 14;
    let ranges: Vec<(u64, u64)> =
        (0..states.div_ceil(chunk)).map(|i| (i * chunk, ((i + 1) * chunk).min(states))).collect();
    let parts = par::map(exec, &ranges, |&(lo, hi)| {
        let mut found = Vec::new();
        let mut digits = vec![0; radix.len()];
        let mut values = vec![0; nv];
        for idx in lo..hi {
            decode(idx, &mut digits);
            for v in 0..nv {
                let base = digits[rep_slot[rep[v]]];
                values[v] = if parity[v] { sq.rho(base) } else { base };
            }
            if cs.satisfied_by(sq, action, &values) {
                found.push(values.clone());
            }
        }
        found
    });
    let mut all: Vec<Vec<usize>> = parts.into_iter().flatten().collect();
    all.sort_unstable();
    Ok(all.iter().map(|v| Coloring::from_values(cs, v)).collect())
}

/// Number of (X,ρ)_Y-colorings. `None` means the singleton `Y`.
pub fn count_colorings(d: &ChDiagram, sq: &SymmetricQuandle, action: Option<&QuandleAction>) -> u64 {
    count_colorings_with(d, sq, action, Conventions::default(), Exec::default())
}

pub fn count_colorings_with(
    d: &ChDiagram,
    sq: &SymmetricQuandle,
    action: Option<&QuandleAction>,
    conv: Conventions,
    exec: Exec,
) -> u64 {
    let trivial;
    let action = match action {
        Some(a) => a,
        None => {
            trivial = trivial_action_for(sq);
            &trivial
        }
    };
    let cs = build_constraints_with(d, sq, action, conv);
    count_solutions_with(&cs, sq, action, exec)
}

/// All colorings of `d`, sorted. `None` means the singleton `Y`.
pub fn colorings(d: &ChDiagram, sq: &SymmetricQuandle, action: Option<&QuandleAction>) -> Vec<Coloring> {
    let trivial;
    let action = match action {
        Some(a) => a,
        None => {
            trivial = trivial_action_for(sq);
            &trivial
        }
    };
    solve_all(&build_constraints(d, sq, action), sq, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{make_regular_action, make_trivial_action};
    use crate::diagram::parse_chd;

    const TREFOIL: &str = "X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2\n";
    const HOPF: &str = "X 1 3 2 4\nX 3 1 4 2\n";

    fn r3() -> SymmetricQuandle {
        SymmetricQuandle::dihedral_identity(3).unwrap()
    }

    fn r4a() -> SymmetricQuandle {
        SymmetricQuandle::dihedral_antipodal(4).unwrap()
    }

    /// Classical Fox n-colorings counted straight from the PD code over all
    /// n^E edge assignments: at each crossing the two over edges agree
    /// and `2·over ≡ under_in + under_out (mod n)`.
    fn fox_by_hand(text: &str, n: usize) -> u64 {
        let d = parse_chd(text).unwrap();
        let labels: Vec<u32> = d.edges().iter().map(|e| e.label).collect();
        let idx = |l: u32| labels.iter().position(|&x| x == l).unwrap();
        let e = labels.len();
        let mut count = 0;
        for code in 0..n.pow(e as u32) {
            let mut c = vec![0; e];
            let mut k = code;
            for slot in c.iter_mut() {
                *slot = k % n;
                k /= n;
            }
            let ok = d.nodes().iter().all(|nd| {
                let [a, b, cc, dd] = nd.slots.map(idx);
                c[b] == c[dd] && (2 * c[b]) % n == (c[a] + c[cc]) % n
            });
            if ok {
                count += 1;
            }
        }
        count * (n as u64).pow(d.circles() as u32)
    }

    #[test]
    fn circle_has_one_free_variable() {
        let d = parse_chd("circle").unwrap();
        let sq = r4a();
        let cs = build_constraints(&d, &sq, &make_trivial_action(&sq));
        assert_eq!(cs.var_count(), 1);
        assert!(cs.relations.is_empty());
        assert_eq!(count_colorings(&d, &sq, None), 4);
    }

    #[test]
    fn trefoil_fox_three() {
        assert_eq!(fox_by_hand(TREFOIL, 3), 9);
        let d = parse_chd(TREFOIL).unwrap();
        assert_eq!(count_colorings(&d, &r3(), None), 9);
    }

    #[test]
    fn hopf_fox_three() {
        // determinant 2: only the trivial colorings
        assert_eq!(fox_by_hand(HOPF, 3), 3);
        assert_eq!(count_colorings(&parse_chd(HOPF).unwrap(), &r3(), None), 3);
        assert_eq!(fox_by_hand(HOPF, 2), 4);
    }

    #[test]
    fn fox_specialization_for_several_moduli() {
        for n in 2..=7 {
            let sq = SymmetricQuandle::dihedral_identity(n).unwrap();
            for text in [TREFOIL, HOPF] {
                assert_eq!(
                    count_colorings(&parse_chd(text).unwrap(), &sq, None),
                    fox_by_hand(text, n),
                    "R_{n} on {text:?}"
                );
            }
        }
    }

    #[test]
    fn trefoil_relations_are_fox_rules() {
        let d = parse_chd(TREFOIL).unwrap();
        let sq = r3();
        let cs = build_constraints(&d, &sq, &make_trivial_action(&sq));
        // ρ = id: every Term's flag is irrelevant, so each crossing gives
        // over continuity and c = 2·over − a
        for node in 0..3 {
            let rels = cs.relations_at(node);
            assert_eq!(rels.len(), 2);
            match rels[1] {
                Relation::Operate { result, left, right } => {
                    for a in 0..3 {
                        for y in 0..3 {
                            let _ = (result, left, right);
                            assert_eq!(sq.op(a, y), (2 * y + 3 - a) % 3);
                        }
                    }
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn solver_matches_brute_force_small() {
        for text in ["circle", TREFOIL, HOPF, "X 1 3 2 4\nV 3 1 4 2", "V 1 1 2 2"] {
            let d = parse_chd(text).unwrap();
            for sq in [r3(), r4a(), SymmetricQuandle::dihedral_identity(4).unwrap()] {
                let y = make_trivial_action(&sq);
                let cs = build_constraints(&d, &sq, &y);
                assert_eq!(
                    solve_all(&cs, &sq, &y),
                    brute_force_all(&cs, &sq, &y, DEFAULT_BRUTE_FORCE_CAP).unwrap(),
                    "{text:?}"
                );
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let d = parse_chd(TREFOIL).unwrap();
        let sq = SymmetricQuandle::dihedral_identity(6).unwrap();
        let y = make_regular_action(&sq);
        let cs = build_constraints(&d, &sq, &y);
        assert_eq!(
            solve_all_with(&cs, &sq, &y, Exec::Sequential),
            solve_all_with(&cs, &sq, &y, Exec::Parallel)
        );
        assert_eq!(count_solutions_with(&cs, &sq, &y, Exec::Sequential), 18 * 6);
    }

    #[test]
    fn brute_force_cap_refuses() {
        let d = parse_chd(TREFOIL).unwrap();
        let sq = r3();
        let y = make_trivial_action(&sq);
        let cs = build_constraints(&d, &sq, &y);
        assert!(matches!(
            brute_force_all(&cs, &sq, &y, 2),
            Err(ColoringError::CapExceeded { cap: 2, .. })
        ));
    }

    #[test]
    fn projective_plane_needs_a_fixed_point() {
        let d = parse_chd("X 1 3 2 4\nV 3 1 4 2").unwrap();
        assert_eq!(count_colorings(&d, &r4a(), None), 0);
        let cols = colorings(&d, &r3(), None);
        assert_eq!(cols.len(), 3);
        assert!(cols.iter().all(|c| is_monochromatic_fixed_point(c, &r3())));
    }

    #[test]
    fn region_colorings_multiply_by_y() {
        // connected diagram: each arc coloring extends in |Y| ways
        for text in [TREFOIL, HOPF, "V 1 1 2 2", "circle"] {
            let d = parse_chd(text).unwrap();
            for sq in [r3(), r4a()] {
                let y = make_regular_action(&sq);
                let with = count_colorings(&d, &sq, Some(&y));
                let without = count_colorings(&d, &sq, None);
                assert_eq!(with, without * sq.order() as u64, "{text:?}");
            }
        }
    }

    #[test]
    fn split_region_colorings_share_one_region() {
        let d = parse_chd("circle\nX 1 3 2 4\nX 3 1 4 2").unwrap();
        let sq = r3();
        let y = make_regular_action(&sq);
        let cs = build_constraints(&d, &sq, &y);
        assert_eq!(cs.warnings.len(), 1);
        assert_eq!(count_colorings(&d, &sq, Some(&y)), 3 * 3 * 3);
    }

    #[test]
    fn monochromatic_predicate() {
        let id = r3();
        let c = Coloring { edge_colors: vec![0, 0, 0], region_colors: None };
        assert!(is_monochromatic_fixed_point(&c, &id));
        assert!(!is_monochromatic_fixed_point(&c, &r4a()));
        let mixed = Coloring { edge_colors: vec![0, 1, 0], region_colors: None };
        assert!(!is_monochromatic_fixed_point(&mixed, &id));
    }

    #[test]
    fn first_solution_is_smallest() {
        let d = parse_chd(TREFOIL).unwrap();
        let sq = r3();
        let y = make_trivial_action(&sq);
        let cs = build_constraints(&d, &sq, &y);
        assert_eq!(first_solution(&cs, &sq, &y), solve_all(&cs, &sq, &y).into_iter().next());
    }
}
