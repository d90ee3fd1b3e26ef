//! Finite quandles, good involutions and (X,ρ)-sets stored as verified
//! operation tables.
//!
//! Elements of an order-`n` structure are always the integers `0..n`.
//! Every table is validated for shape and range when it is built; the
//! axioms are checked separately by the `verify_*` functions so that a
//! failing table can still be inspected.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("empty structure: order must be at least 1")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, found: usize, expected: usize },
    #[error("table has {found} rows, expected {expected}")]
    RowCount { found: usize, expected: usize },
    #[error("entry {value} at ({row}, {col}) is out of range for order {order}")]
    OutOfRange { row: usize, col: usize, value: usize, order: usize },
    #[error("involution table has length {found}, expected {expected}")]
    SizeMismatch { found: usize, expected: usize },
    #[error("involution table is not a permutation (value {value} repeated or out of range)")]
    NotAPermutation { value: usize },
    #[error("antipodal involution needs an even order, got {0}")]
    OddAntipodal(usize),
    #[error("table is not a quandle: {0}")]
    NotAQuandle(Verification),
    #[error("not a good involution: {0}")]
    NotGoodInvolution(Verification),
    #[error("not an (X,rho)-set: {0}")]
    NotAnAction(Verification),
    #[error("supplied inverse table does not invert the operation at ({row}, {col})")]
    BadInverse { row: usize, col: usize },
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
}

/// The individual axioms checked by the verifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Idempotency,
    RightInvertibility,
    SelfDistributivity,
    Involution,
    Equivariance,
    InversionCompatibility,
    ActionInvertibility,
    ActionCompatibility,
    ActionInvolution,
}

impl std::fmt::Display for Axiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Axiom::Idempotency => "idempotency",
            Axiom::RightInvertibility => "right-invertibility",
            Axiom::SelfDistributivity => "self-distributivity",
            Axiom::Involution => "involution",
            Axiom::Equivariance => "equivariance",
            Axiom::InversionCompatibility => "inversion compatibility",
            Axiom::ActionInvertibility => "action invertibility",
            Axiom::ActionCompatibility => "action compatibility",
            Axiom::ActionInvolution => "action involution compatibility",
        };
        f.write_str(s)
    }
}

/// One violated axiom instance. `witness` holds the elements that exhibit
/// the failure, in the order the axiom quantifies over them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub failures: Vec<AxiomFailure>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        let mut out: Vec<Axiom> = Vec::new();
        for f in &self.failures {
            if !out.contains(&f.axiom) {
                out.push(f.axiom);
            }
        }
        out
    }

    fn fail(&mut self, axiom: Axiom, witness: Vec<usize>) {
        self.failures.push(AxiomFailure { axiom, witness });
    }
}

impl std::fmt::Display for Verification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            return f.write_str("pass");
        }
        write!(f, "{} violation(s)", self.failures.len())?;
        if let Some(first) = self.failures.first() {
            write!(f, ", first: {} at {:?}", first.axiom, first.witness)?;
        }
        Ok(())
    }
}

/// A shape-checked square table `n × n` with entries in `0..n`. No axioms
/// are implied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTable {
    n: usize,
    cells: Vec<usize>,
}

impl OpTable {
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let n = rows.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut cells = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(AlgebraError::RowLength { row, found: r.len(), expected: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(AlgebraError::OutOfRange { row, col, value, order: n });
                }
                cells.push(value);
            }
        }
        Ok(OpTable { n, cells })
    }

    /// Parses the whitespace-separated table format: line `k` is row `k`.
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| AlgebraError::Parse {
                        what: "quandle table",
                        detail: format!("bad entry {tok:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Self::from_rows(&rows)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.n + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n).map(|c| c.to_vec()).collect()
    }
}

/// Checks idempotency, right-invertibility and self-distributivity and
/// records every violated instance.
pub fn verify_quandle(table: &OpTable) -> Verification {
    let n = table.n;
    let mut report = Verification::default();
    for a in 0..n {
        if table.get(a, a) != a {
            report.fail(Axiom::Idempotency, vec![a]);
        }
    }
    for b in 0..n {
        let mut seen: Vec<Option<usize>> = vec![None; n];
        for a in 0..n {
            let v = table.get(a, b);
            match seen[v] {
                Some(prev) => report.fail(Axiom::RightInvertibility, vec![prev, a, b]),
                None => seen[v] = Some(a),
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table.get(a, b);
            for c in 0..n {
                let lhs = table.get(ab, c);
                let rhs = table.get(table.get(a, c), table.get(b, c));
                if lhs != rhs {
                    report.fail(Axiom::SelfDistributivity, vec![a, b, c]);
                }
            }
        }
    }
    report
}

/// A finite quandle with its right-inverse table: `op_inv(op(a, b), b) == a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    op: OpTable,
    op_inv: OpTable,
}

impl FiniteQuandle {
    pub fn new(op: OpTable) -> Result<Self, AlgebraError> {
        let report = verify_quandle(&op);
        if !report.passed() {
            return Err(AlgebraError::NotAQuandle(report));
        }
        let n = op.n;
        let mut inv = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                inv[op.get(a, b) * n + b] = a;
            }
        }
        Ok(FiniteQuandle { op_inv: OpTable { n, cells: inv }, op })
    }

    /// Builds a quandle from both tables, checking that `op_inv` inverts `op`.
    pub fn with_inverse(op: OpTable, op_inv: OpTable) -> Result<Self, AlgebraError> {
        if op_inv.n != op.n {
            return Err(AlgebraError::SizeMismatch { found: op_inv.n, expected: op.n });
        }
        let q = Self::new(op)?;
        for row in 0..q.order() {
            for col in 0..q.order() {
                if q.op_inv.get(row, col) != op_inv.get(row, col) {
                    return Err(AlgebraError::BadInverse { row, col });
                }
            }
        }
        Ok(q)
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        Self::new(OpTable::from_rows(rows)?)
    }

    pub fn order(&self) -> usize {
        self.op.n
    }

    /// `a ▷ b`
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op.get(a, b)
    }

    /// The unique `c` with `c ▷ b == a`.
    #[inline]
    pub fn op_inv(&self, a: usize, b: usize) -> usize {
        self.op_inv.get(a, b)
    }

    pub fn table(&self) -> &OpTable {
        &self.op
    }

    pub fn inverse_table(&self) -> &OpTable {
        &self.op_inv
    }
}

/// The dihedral quandle `R_n`: `a ▷ b = 2b − a (mod n)`.
pub fn make_dihedral(n: usize) -> Result<FiniteQuandle, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::Empty);
    }
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (2 * b + n - a % n) % n).collect())
        .collect();
    FiniteQuandle::from_rows(&rows)
}

/// The trivial quandle of order `n`: `a ▷ b = a`.
pub fn make_trivial(n: usize) -> Result<FiniteQuandle, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::Empty);
    }
    let rows: Vec<Vec<usize>> = (0..n).map(|a| vec![a; n]).collect();
    FiniteQuandle::from_rows(&rows)
}

/// A permutation of the quandle's elements. Only permutation-ness is
/// guaranteed by the type; [`verify_good_involution`] checks the rest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GoodInvolution {
    rho: Vec<usize>,
}

impl GoodInvolution {
    pub fn from_table(rho: Vec<usize>) -> Result<Self, AlgebraError> {
        if rho.is_empty() {
            return Err(AlgebraError::Empty);
        }
        let mut seen = vec![false; rho.len()];
        for &v in &rho {
            if v >= rho.len() || seen[v] {
                return Err(AlgebraError::NotAPermutation { value: v });
            }
            seen[v] = true;
        }
        Ok(GoodInvolution { rho })
    }

    pub fn identity(n: usize) -> Result<Self, AlgebraError> {
        Self::from_table((0..n).collect())
    }

    /// `x ↦ x + n/2 (mod n)`.
    pub fn antipodal(n: usize) -> Result<Self, AlgebraError> {
        if n % 2 != 0 {
            return Err(AlgebraError::OddAntipodal(n));
        }
        Self::from_table((0..n).map(|x| (x + n / 2) % n).collect())
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.rho[a]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.rho
    }

    /// Elements with `ρ(a) = a`.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.rho.len()).filter(|&a| self.rho[a] == a).collect()
    }
}

pub fn fixed_points(rho: &GoodInvolution) -> Vec<usize> {
    rho.fixed_points()
}

pub fn verify_good_involution(
    q: &FiniteQuandle,
    rho: &GoodInvolution,
) -> Result<Verification, AlgebraError> {
    let n = q.order();
    if rho.len() != n {
        return Err(AlgebraError::SizeMismatch { found: rho.len(), expected: n });
    }
    let mut report = Verification::default();
    for a in 0..n {
        if rho.apply(rho.apply(a)) != a {
            report.fail(Axiom::Involution, vec![a]);
        }
    }
    for a in 0..n {
        for b in 0..n {
            if rho.apply(q.op(a, b)) != q.op(rho.apply(a), b) {
                report.fail(Axiom::Equivariance, vec![a, b]);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if q.op(a, rho.apply(b)) != q.op_inv(a, b) {
                report.fail(Axiom::InversionCompatibility, vec![a, b]);
            }
        }
    }
    Ok(report)
}

/// Every good involution of `q`, in lexicographic order of their tables.
///
/// Involutions are generated position by position (each unassigned point
/// is either fixed or swapped with a larger unassigned point), which
/// already yields lexicographic order.
pub fn enumerate_good_involutions(q: &FiniteQuandle) -> Vec<GoodInvolution> {
    fn rec(q: &FiniteQuandle, rho: &mut Vec<Option<usize>>, pos: usize, out: &mut Vec<GoodInvolution>) {
        let n = rho.len();
        if pos == n {
            let table: Vec<usize> = rho.iter().map(|v| v.unwrap()).collect();
            let cand = GoodInvolution { rho: table };
            if verify_good_involution(q, &cand).map(|r| r.passed()).unwrap_or(false) {
                out.push(cand);
            }
            return;
        }
        if let Some(v) = rho[pos] {
            // already paired with a smaller index
            debug_assert!(v < pos);
            return rec(q, rho, pos + 1, out);
        }
        for target in pos..n {
            if target != pos && rho[target].is_some() {
                continue;
            }
            rho[pos] = Some(target);
            rho[target] = Some(pos);
            rec(q, rho, pos + 1, out);
            rho[target] = None;
            rho[pos] = None;
        }
    }
    let mut out = Vec::new();
    let mut rho = vec![None; q.order()];
    rec(q, &mut rho, 0, &mut out);
    out
}

/// A quandle `X` together with a good involution `ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricQuandle {
    quandle: FiniteQuandle,
    rho: GoodInvolution,
}

impl SymmetricQuandle {
    pub fn new(quandle: FiniteQuandle, rho: GoodInvolution) -> Result<Self, AlgebraError> {
        let report = verify_good_involution(&quandle, &rho)?;
        if !report.passed() {
            return Err(AlgebraError::NotGoodInvolution(report));
        }
        Ok(SymmetricQuandle { quandle, rho })
    }

    /// `(R_n, x ↦ x + n/2)`, the symmetric quandle used for the headline
    /// obstruction when `n = 4`.
    pub fn dihedral_antipodal(n: usize) -> Result<Self, AlgebraError> {
        Self::new(make_dihedral(n)?, GoodInvolution::antipodal(n)?)
    }

    pub fn dihedral_identity(n: usize) -> Result<Self, AlgebraError> {
        Self::new(make_dihedral(n)?, GoodInvolution::identity(n)?)
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn involution(&self) -> &GoodInvolution {
        &self.rho
    }

    pub fn order(&self) -> usize {
        self.quandle.order()
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.quandle.op(a, b)
    }

    #[inline]
    pub fn op_inv(&self, a: usize, b: usize) -> usize {
        self.quandle.op_inv(a, b)
    }

    #[inline]
    pub fn rho(&self, a: usize) -> usize {
        self.rho.apply(a)
    }
}

/// A right action of a symmetric quandle on `Y = 0..m`: `act(y, x) = y·x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandleAction {
    m: usize,
    n: usize,
    act: Vec<usize>,
    act_inv: Vec<usize>,
}

impl QuandleAction {
    /// Builds an action from its `m × n` table (row `y`, column `x`) and
    /// verifies the (X,ρ)-set axioms against `sq`.
    pub fn new(sq: &SymmetricQuandle, rows: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let m = rows.len();
        let n = sq.order();
        if m == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut act = Vec::with_capacity(m * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(AlgebraError::RowLength { row, found: r.len(), expected: n });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= m {
                    return Err(AlgebraError::OutOfRange { row, col, value, order: m });
                }
                act.push(value);
            }
        }
        let mut report = Verification::default();
        let mut act_inv = vec![usize::MAX; m * n];
        for x in 0..n {
            for y in 0..m {
                let v = act[y * n + x];
                if act_inv[v * n + x] != usize::MAX {
                    report.fail(Axiom::ActionInvertibility, vec![act_inv[v * n + x], y, x]);
                } else {
                    act_inv[v * n + x] = y;
                }
            }
        }
        if report.passed() {
            let candidate = QuandleAction { m, n, act, act_inv };
            let rest = verify_action(sq, &candidate);
            if rest.passed() {
                return Ok(candidate);
            }
            return Err(AlgebraError::NotAnAction(rest));
        }
        Err(AlgebraError::NotAnAction(report))
    }

    pub fn size(&self) -> usize {
        self.m
    }

    /// `y·x`
    #[inline]
    pub fn act(&self, y: usize, x: usize) -> usize {
        self.act[y * self.n + x]
    }

    /// The unique `z` with `z·x == y`.
    #[inline]
    pub fn act_inv(&self, y: usize, x: usize) -> usize {
        self.act_inv[y * self.n + x]
    }

    pub fn is_trivial(&self) -> bool {
        self.m == 1
    }
}

/// The singleton (X,ρ)-set.
pub fn make_trivial_action(sq: &SymmetricQuandle) -> QuandleAction {
    let n = sq.order();
    QuandleAction { m: 1, n, act: vec![0; n], act_inv: vec![0; n] }
}

/// `Y = X` acting on itself by the quandle operation.
pub fn make_regular_action(sq: &SymmetricQuandle) -> QuandleAction {
    let n = sq.order();
    let mut act = Vec::with_capacity(n * n);
    let mut act_inv = Vec::with_capacity(n * n);
    for y in 0..n {
        for x in 0..n {
            act.push(sq.op(y, x));
            act_inv.push(sq.op_inv(y, x));
        }
    }
    QuandleAction { m: n, n, act, act_inv }
}

/// Checks invertibility in `x`, compatibility with `▷`, and
/// `y·ρ(a) = y·⁻¹a`.
pub fn verify_action(sq: &SymmetricQuandle, action: &QuandleAction) -> Verification {
    let (m, n) = (action.m, sq.order());
    let mut report = Verification::default();
    if action.n != n {
        report.fail(Axiom::ActionCompatibility, vec![action.n, n]);
        return report;
    }
    for x in 0..n {
        for y in 0..m {
            if action.act_inv(action.act(y, x), x) != y {
                report.fail(Axiom::ActionInvertibility, vec![y, x]);
            }
        }
    }
    for y in 0..m {
        for a in 0..n {
            for b in 0..n {
                let lhs = action.act(action.act(y, a), b);
                let rhs = action.act(action.act(y, b), sq.op(a, b));
                if lhs != rhs {
                    report.fail(Axiom::ActionCompatibility, vec![y, a, b]);
                }
            }
        }
    }
    for y in 0..m {
        for a in 0..n {
            if action.act(y, sq.rho(a)) != action.act_inv(y, a) {
                report.fail(Axiom::ActionInvolution, vec![y, a]);
            }
        }
    }
    report
}

/// Parses a quandle spec string: `dihedral:<n>`, `trivial:<n>`.
pub fn parse_quandle_spec(spec: &str) -> Result<FiniteQuandle, AlgebraError> {
    let (kind, arg) = spec.split_once(':').ok_or_else(|| AlgebraError::Parse {
        what: "quandle spec",
        detail: format!("expected <kind>:<n>, got {spec:?}"),
    })?;
    let n: usize = arg.trim().parse().map_err(|_| AlgebraError::Parse {
        what: "quandle spec",
        detail: format!("bad order {arg:?}"),
    })?;
    match kind.trim() {
        "dihedral" => make_dihedral(n),
        "trivial" => make_trivial(n),
        other => Err(AlgebraError::Parse {
            what: "quandle spec",
            detail: format!("unknown quandle family {other:?}"),
        }),
    }
}

/// Parses `identity`, `antipodal`, or `table:<comma-separated permutation>`
/// for a quandle of order `n`.
pub fn parse_involution_spec(spec: &str, n: usize) -> Result<GoodInvolution, AlgebraError> {
    match spec.trim() {
        "identity" => GoodInvolution::identity(n),
        "antipodal" => GoodInvolution::antipodal(n),
        s => {
            let body = s.strip_prefix("table:").ok_or_else(|| AlgebraError::Parse {
                what: "involution spec",
                detail: format!("expected identity, antipodal or table:..., got {s:?}"),
            })?;
            let table = body
                .split(',')
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|_| AlgebraError::Parse {
                        what: "involution spec",
                        detail: format!("bad entry {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if table.len() != n {
                return Err(AlgebraError::SizeMismatch { found: table.len(), expected: n });
            }
            GoodInvolution::from_table(table)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dihedral_four_matches_two_b_minus_a() {
        let r4 = make_dihedral(4).unwrap();
        assert_eq!(r4.op(0, 1), 2);
        for a in 0..4 {
            assert_eq!(r4.op(a, a), a);
        }
        // involutory: inverse table equals the table
        assert_eq!(r4.table(), r4.inverse_table());
    }

    #[test]
    fn dihedral_three_is_involutory() {
        let r3 = make_dihedral(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(r3.op(r3.op(a, b), b), a);
            }
        }
    }

    #[test]
    fn dihedral_zero_rejected() {
        assert_eq!(make_dihedral(0), Err(AlgebraError::Empty));
    }

    #[test]
    fn planted_idempotency_violation() {
        let mut rows = make_dihedral(4).unwrap().table().rows();
        rows[0][0] = 1;
        let report = verify_quandle(&OpTable::from_rows(&rows).unwrap());
        assert!(!report.passed());
        assert!(report
            .failures
            .contains(&AxiomFailure { axiom: Axiom::Idempotency, witness: vec![0] }));
    }

    #[test]
    fn trivial_quandle_passes() {
        let rows: Vec<Vec<usize>> = (0..3).map(|a| vec![a; 3]).collect();
        assert!(verify_quandle(&OpTable::from_rows(&rows).unwrap()).passed());
    }

    #[test]
    fn malformed_tables_are_errors_not_failures() {
        assert!(matches!(
            OpTable::from_rows(&[vec![0, 1], vec![1]]),
            Err(AlgebraError::RowLength { row: 1, .. })
        ));
        assert!(matches!(
            OpTable::from_rows(&[vec![0, 2], vec![1, 1]]),
            Err(AlgebraError::OutOfRange { value: 2, .. })
        ));
        assert!(matches!(OpTable::parse("0 x\n1 1"), Err(AlgebraError::Parse { .. })));
    }

    #[test]
    fn r4_antipodal_is_good() {
        let r4 = make_dihedral(4).unwrap();
        let rho = GoodInvolution::antipodal(4).unwrap();
        assert_eq!(rho.as_slice(), &[2, 3, 0, 1]);
        assert!(verify_good_involution(&r4, &rho).unwrap().passed());
    }

    #[test]
    fn r3_identity_is_good() {
        let r3 = make_dihedral(3).unwrap();
        let id = GoodInvolution::identity(3).unwrap();
        assert!(verify_good_involution(&r3, &id).unwrap().passed());
    }

    #[test]
    fn r4_swap_01_is_not_good() {
        let r4 = make_dihedral(4).unwrap();
        let rho = GoodInvolution::from_table(vec![1, 0, 2, 3]).unwrap();
        let report = verify_good_involution(&r4, &rho).unwrap();
        assert!(!report.passed());
        // rho(0 ▷ 0) = rho(0) = 1 but rho(0) ▷ 0 = 1 ▷ 0 = 3
        assert!(report
            .failures
            .contains(&AxiomFailure { axiom: Axiom::Equivariance, witness: vec![0, 0] }));
    }

    #[test]
    fn non_permutation_rejected_before_axioms() {
        assert!(matches!(
            GoodInvolution::from_table(vec![0, 0, 1]),
            Err(AlgebraError::NotAPermutation { value: 0 })
        ));
        let r4 = make_dihedral(4).unwrap();
        let short = GoodInvolution::identity(3).unwrap();
        assert!(matches!(
            verify_good_involution(&r4, &short),
            Err(AlgebraError::SizeMismatch { .. })
        ));
    }

    /// Exhaustive reference: test every permutation of 0..n.
    fn brute_force_good_involutions(q: &FiniteQuandle) -> Vec<Vec<usize>> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut v = p.clone();
                    v.insert(i, n - 1);
                    out.push(v);
                }
            }
            out
        }
        let mut out: Vec<Vec<usize>> = perms(q.order())
            .into_iter()
            .filter(|p| {
                let g = GoodInvolution::from_table(p.clone()).unwrap();
                verify_good_involution(q, &g).unwrap().passed()
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_all_permutations() {
        for n in 1..=6 {
            let q = make_dihedral(n).unwrap();
            let fast: Vec<Vec<usize>> =
                enumerate_good_involutions(&q).into_iter().map(|g| g.rho).collect();
            assert_eq!(fast, brute_force_good_involutions(&q), "R_{n}");
        }
        let r3 = enumerate_good_involutions(&make_dihedral(3).unwrap());
        assert!(r3.contains(&GoodInvolution::identity(3).unwrap()));
        let r4 = enumerate_good_involutions(&make_dihedral(4).unwrap());
        assert!(r4.contains(&GoodInvolution::antipodal(4).unwrap()));
        assert!(r4.contains(&GoodInvolution::identity(4).unwrap()));
    }

    #[test]
    fn fixed_point_sets() {
        assert!(GoodInvolution::antipodal(4).unwrap().fixed_points().is_empty());
        assert_eq!(GoodInvolution::identity(3).unwrap().fixed_points(), vec![0, 1, 2]);
        let swap = GoodInvolution::from_table(vec![1, 0, 2, 3]).unwrap();
        assert_eq!(fixed_points(&swap), vec![2, 3]);
    }

    #[test]
    fn trivial_action_over_r4() {
        let sq = SymmetricQuandle::dihedral_antipodal(4).unwrap();
        let y = make_trivial_action(&sq);
        assert_eq!(y.size(), 1);
        for x in 0..4 {
            assert_eq!(y.act(0, x), 0);
            assert_eq!(y.act_inv(0, x), y.act(0, x));
        }
        assert!(verify_action(&sq, &y).passed());
    }

    #[test]
    fn regular_action_is_an_action() {
        for sq in [
            SymmetricQuandle::dihedral_antipodal(4).unwrap(),
            SymmetricQuandle::dihedral_identity(3).unwrap(),
            SymmetricQuandle::dihedral_antipodal(6).unwrap(),
        ] {
            let y = make_regular_action(&sq);
            assert!(verify_action(&sq, &y).passed());
            let rebuilt = QuandleAction::new(&sq, &(0..sq.order())
                .map(|yy| (0..sq.order()).map(|x| y.act(yy, x)).collect())
                .collect::<Vec<_>>())
                .unwrap();
            assert_eq!(rebuilt, y);
        }
    }

    #[test]
    fn bad_action_rejected() {
        let sq = SymmetricQuandle::dihedral_antipodal(4).unwrap();
        // y·x = y + 1 (mod 3) breaks y·ρ(a) = y·⁻¹a
        let rows: Vec<Vec<usize>> = (0..3).map(|y| vec![(y + 1) % 3; 4]).collect();
        assert!(matches!(QuandleAction::new(&sq, &rows), Err(AlgebraError::NotAnAction(_))));
    }

    #[test]
    fn parity_lemma_for_r4_antipodal() {
        let rho = GoodInvolution::antipodal(4).unwrap();
        for a in 0..4 {
            let s = (a + rho.apply(a)) % 4;
            assert!(s == 0 || s == 2);
            assert_eq!(s == 2, a % 2 == 0);
        }
    }

    #[test]
    fn spec_strings() {
        let q = parse_quandle_spec("dihedral:4").unwrap();
        assert_eq!(q.order(), 4);
        assert!(parse_quandle_spec("dihedral").is_err());
        assert!(parse_quandle_spec("cyclic:3").is_err());
        assert_eq!(parse_involution_spec("antipodal", 4).unwrap().as_slice(), &[2, 3, 0, 1]);
        assert_eq!(parse_involution_spec("table:1,0,2,3", 4).unwrap().as_slice(), &[1, 0, 2, 3]);
        assert!(parse_involution_spec("table:1,0", 4).is_err());
        assert!(parse_involution_spec("antipodal", 3).is_err());
    }

    proptest! {
        #[test]
        fn dihedral_always_verifies(n in 1usize..=12) {
            prop_assert!(verify_quandle(make_dihedral(n).unwrap().table()).passed());
        }

        #[test]
        fn antipodal_absorbs_into_right_operand(k in 1usize..=6) {
            let n = 2 * k;
            let sq = SymmetricQuandle::dihedral_antipodal(n).unwrap();
            for a in 0..n {
                for b in 0..n {
                    prop_assert_eq!(sq.op(a, sq.rho(b)), sq.op(a, b));
                }
            }
        }

        #[test]
        fn enumerated_involutions_reverify(n in 1usize..=8) {
            let q = make_dihedral(n).unwrap();
            for g in enumerate_good_involutions(&q) {
                prop_assert!(verify_good_involution(&q, &g).unwrap().passed());
            }
        }
    }
}
