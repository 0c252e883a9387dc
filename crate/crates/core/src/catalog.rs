//! Fixed catalog of inequalities between the measures, with slack evaluation
//! and seeded randomized verification sweeps.
//!
//! Each [`InequalityRecord`] states `lhs <= rhs` for one or more clauses over
//! a fixed expression vocabulary (the measures plus a few derived bounds).
//! Evaluating a record on a pair produces a signed slack `rhs - lhs`; the
//! record holds when the slack is not below `-eta`. Divergent quantities ride
//! through the arithmetic as [`ExtendedReal`] so that `inf - inf` never
//! appears: a divergent right-hand side always holds, a divergent left-hand
//! side against a finite right-hand side is always a violation.
//!
//! Clauses carry the equality families (subsets of the four closed-form
//! families) on which their slack reaches zero somewhere on the `t` grid;
//! [`check_family_equalities`] reports those slacks and flags genuine
//! violations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::extreal::ExtendedReal;
use crate::hot::{hot_s, hot_s_inverse};
use crate::measures::{
    fidelity_f, hellinger_q, overlap_l, q_min, renyi_q_grid, root_half_distance_sq,
    trace_distance_t,
};
use crate::state::{
    family_point, make_weighted_pair, random_sweep_state, ExpectedMeasures, Family, FamilyPoint,
    WeightedStatePair,
};
use crate::{fmt_sig12, measures, Error, Result};

/// Normalization a record is stated for.
///
/// `Weighted` records compare the weighted measures of the pair as given;
/// `Normalized` records compare the measures of the same two states re-paired
/// at prior `1/2`, which is where the divergence-valued quantities live.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Weighted,
    Normalized,
}

/// The expression vocabulary records are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expr {
    L,
    T,
    F,
    Q,
    QMin,
    C,
    S,
    FSquared,
    QSquared,
    TSquared,
    TwoTSquared,
    OneMinusT,
    OneMinusQ,
    OneMinusQMin,
    OneMinusFSquared,
    SqrtOneMinusL,
    /// `v(T)` with `v(x) = sqrt(1 - x^2)`.
    VOfT,
    /// `v(Q)` with `v(x) = sqrt(1 - x^2)`.
    VOfQ,
    ExpNegHalfS,
    ExpNegS,
    /// The binary-distribution envelope `s(T)`; `+inf` at `T = 1`.
    HotOfT,
    /// The envelope inverse `s^{-1}(S)`; exactly `1` when `S` diverges.
    HotInvOfS,
    NegTwoLogF,
    NegTwoLogQ,
    TwoC,
    /// `||A^(1/2) - B^(1/2)||_2^2`.
    RootDistSq,
}

/// All scalar measures of one normalization of a pair.
#[derive(Debug, Clone)]
pub struct MeasureSet {
    pub l: f64,
    pub t: f64,
    pub f: f64,
    pub q: f64,
    pub q_min: f64,
    pub s_star: f64,
    /// `(s, Q_s)` on the fixed grid `{0, 0.05, ..., 1}` plus the `Q_min`
    /// argmin point appended last.
    pub q_grid: Vec<(f64, f64)>,
    pub root_dist_sq: f64,
}

/// Grid points used for records quantified over the exponent `s`.
fn s_grid_points() -> Vec<f64> {
    (0..=20).map(|i| i as f64 / 20.0).collect()
}

impl MeasureSet {
    fn new(pair: &WeightedStatePair) -> Result<MeasureSet> {
        let qm = q_min(pair)?;
        let mut s_values = s_grid_points();
        s_values.push(qm.s_star);
        let q_values = renyi_q_grid(pair, &s_values)?;
        let q_grid = s_values.into_iter().zip(q_values).collect();
        Ok(MeasureSet {
            l: overlap_l(pair),
            t: trace_distance_t(pair)?,
            f: fidelity_f(pair)?,
            q: hellinger_q(pair)?,
            q_min: qm.value,
            s_star: qm.s_star,
            q_grid,
            root_dist_sq: root_half_distance_sq(pair)?,
        })
    }
}

/// Everything needed to evaluate every record on one pair: the measures in
/// both normalizations plus the divergence-valued quantities.
#[derive(Debug, Clone)]
pub struct MeasureContext {
    pub weighted: MeasureSet,
    pub normalized: MeasureSet,
    pub c: ExtendedReal,
    pub s: ExtendedReal,
}

impl MeasureContext {
    pub fn new(pair: &WeightedStatePair) -> Result<MeasureContext> {
        let normalized_pair = pair.normalized();
        Ok(MeasureContext {
            weighted: MeasureSet::new(pair)?,
            normalized: MeasureSet::new(&normalized_pair)?,
            c: measures::chernoff_c(pair.rho(), pair.sigma())?,
            s: measures::relative_entropy_s(pair.rho(), pair.sigma())?,
        })
    }

    fn set(&self, domain: Domain) -> &MeasureSet {
        match domain {
            Domain::Weighted => &self.weighted,
            Domain::Normalized => &self.normalized,
        }
    }
}

impl Expr {
    fn eval(self, set: &MeasureSet, c: ExtendedReal, s: ExtendedReal) -> ExtendedReal {
        use ExtendedReal::{Finite, Infinity};
        let fin = ExtendedReal::from_f64;
        match self {
            Expr::L => fin(set.l),
            Expr::T => fin(set.t),
            Expr::F => fin(set.f),
            Expr::Q => fin(set.q),
            Expr::QMin => fin(set.q_min),
            Expr::C => c,
            Expr::S => s,
            Expr::FSquared => fin(set.f * set.f),
            Expr::QSquared => fin(set.q * set.q),
            Expr::TSquared => fin(set.t * set.t),
            Expr::TwoTSquared => fin(2.0 * set.t * set.t),
            Expr::OneMinusT => fin(1.0 - set.t),
            Expr::OneMinusQ => fin(1.0 - set.q),
            Expr::OneMinusQMin => fin(1.0 - set.q_min),
            Expr::OneMinusFSquared => fin(1.0 - set.f * set.f),
            // Measures can overshoot 1 by rounding ulps; the radicands are
            // clamped so the bounds stay real.
            Expr::SqrtOneMinusL => fin((1.0 - set.l).max(0.0).sqrt()),
            Expr::VOfT => fin((1.0 - set.t * set.t).max(0.0).sqrt()),
            Expr::VOfQ => fin((1.0 - set.q * set.q).max(0.0).sqrt()),
            Expr::ExpNegHalfS => s.scale(0.5).exp_neg(),
            Expr::ExpNegS => s.exp_neg(),
            Expr::HotOfT => {
                if set.t >= 1.0 {
                    Infinity
                } else {
                    fin(hot_s(set.t.max(0.0)).expect("trace distance is in [0, 1)"))
                }
            }
            Expr::HotInvOfS => match s {
                Finite(v) => fin(hot_s_inverse(v.max(0.0)).expect("entropy is nonnegative")),
                _ => Finite(1.0),
            },
            Expr::NegTwoLogF => neg_two_log(set.f),
            Expr::NegTwoLogQ => neg_two_log(set.q),
            Expr::TwoC => c.scale(2.0),
            Expr::RootDistSq => fin(set.root_dist_sq),
        }
    }
}

fn neg_two_log(x: f64) -> ExtendedReal {
    if x <= 0.0 {
        ExtendedReal::Infinity
    } else {
        ExtendedReal::from_f64(-2.0 * x.ln())
    }
}

/// A comparison quantified over the Renyi exponent grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridForm {
    /// `1 - Q_s <= T` at every grid point.
    OneMinusQsLeT,
    /// `F^2 <= Q_s` at every grid point.
    FSquaredLeQs,
}

/// How one clause of a record is quantified.
#[derive(Debug, Clone, Copy)]
pub enum ClauseKind {
    /// A single comparison `lhs <= rhs`.
    Simple { lhs: Expr, rhs: Expr },
    /// One comparison per point of the `s` grid; the clause's slack is the
    /// worst grid point.
    Grid { form: GridForm },
}

/// One `lhs <= rhs` comparison inside a record.
#[derive(Debug, Clone, Copy)]
pub struct Clause {
    /// Stable short label, unique within the record.
    pub label: &'static str,
    /// Families on which this clause attains equality somewhere on the
    /// `t` grid.
    pub families: &'static [char],
    pub kind: ClauseKind,
}

/// One catalog entry: a set of clauses sharing a domain and a tolerance rule.
#[derive(Debug, Clone)]
pub struct InequalityRecord {
    pub id: &'static str,
    pub description: &'static str,
    pub domain: Domain,
    pub clauses: Vec<Clause>,
    /// Entropy-valued records compare unbounded quantities; their tolerance
    /// is scaled by `max(1, |rhs|)` instead of being absolute.
    pub entropy_scaled: bool,
}

impl InequalityRecord {
    /// Union of the equality families over all clauses, sorted.
    pub fn equality_families(&self) -> Vec<char> {
        let mut fams: Vec<char> = self
            .clauses
            .iter()
            .flat_map(|c| c.families.iter().copied())
            .collect();
        fams.sort_unstable();
        fams.dedup();
        fams
    }
}

fn simple(label: &'static str, families: &'static [char], lhs: Expr, rhs: Expr) -> Clause {
    Clause {
        label,
        families,
        kind: ClauseKind::Simple { lhs, rhs },
    }
}

fn grid(label: &'static str, families: &'static [char], form: GridForm) -> Clause {
    Clause {
        label,
        families,
        kind: ClauseKind::Grid { form },
    }
}

/// The fixed sixteen-record catalog.
pub fn catalog() -> Vec<InequalityRecord> {
    use Expr::*;
    vec![
        InequalityRecord {
            id: "E1",
            description: "L <= F^2",
            domain: Domain::Weighted,
            clauses: vec![simple("l_le_f2", &['a', 'b', 'c'], L, FSquared)],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "E2",
            description: "1 - Q_s <= T on the s-grid, and 1 - Q_min <= T",
            domain: Domain::Weighted,
            clauses: vec![
                grid("one_minus_qs_le_t", &['a', 'c'], GridForm::OneMinusQsLeT),
                simple("one_minus_qmin_le_t", &['a', 'c'], OneMinusQMin, T),
            ],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "E3",
            description: "T^2 <= 1 - F^2",
            domain: Domain::Weighted,
            clauses: vec![simple(
                "t2_le_one_minus_f2",
                &['b', 'd'],
                TSquared,
                OneMinusFSquared,
            )],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "E4",
            description: "F^2 <= Q_s on the s-grid",
            domain: Domain::Normalized,
            clauses: vec![grid("f2_le_qs", &['a', 'b'], GridForm::FSquaredLeQs)],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "E5",
            description: "Q <= F",
            domain: Domain::Weighted,
            clauses: vec![simple("q_le_f", &['a', 'c', 'd'], Q, F)],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "T6",
            description: "exp(-S/2) <= Q",
            domain: Domain::Normalized,
            clauses: vec![simple("exp_neg_half_s_le_q", &['a'], ExpNegHalfS, Q)],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "T7",
            description: "s(T) <= S (binary-distribution envelope)",
            domain: Domain::Normalized,
            clauses: vec![simple("hot_t_le_s", &[], HotOfT, S)],
            entropy_scaled: true,
        },
        InequalityRecord {
            id: "PS",
            description: "||A^(1/2) - B^(1/2)||_2^2 <= ||A - B||_1",
            domain: Domain::Weighted,
            clauses: vec![simple("rootdist2_le_t", &[], RootDistSq, T)],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "PK",
            description: "2 T^2 <= S",
            domain: Domain::Normalized,
            clauses: vec![simple("two_t2_le_s", &[], TwoTSquared, S)],
            entropy_scaled: true,
        },
        InequalityRecord {
            id: "CH1",
            description: "1 - T <= F <= v(T)",
            domain: Domain::Weighted,
            clauses: vec![
                simple("one_minus_t_le_f", &['a', 'c'], OneMinusT, F),
                simple("f_le_v_of_t", &['b', 'd'], F, VOfT),
            ],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "CH2",
            description: "T <= v(Q) and 1 - Q <= T",
            domain: Domain::Weighted,
            clauses: vec![
                simple("t_le_v_of_q", &['a', 'c', 'd'], T, VOfQ),
                simple("one_minus_q_le_t", &['a', 'c', 'd'], OneMinusQ, T),
            ],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "CH3",
            description: "T <= sqrt(1 - L)",
            domain: Domain::Weighted,
            clauses: vec![simple("t_le_sqrt_one_minus_l", &['a'], T, SqrtOneMinusL)],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "CH4",
            description: "L <= Q_min <= Q <= F and F^2 <= Q_min",
            domain: Domain::Normalized,
            clauses: vec![
                simple("l_le_qmin", &['a', 'b'], L, QMin),
                simple("qmin_le_q", &['b', 'c', 'd'], QMin, Q),
                simple("q_le_f", &['a', 'c', 'd'], Q, F),
                simple("f2_le_qmin", &['a', 'b'], FSquared, QMin),
            ],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "CH5",
            description: "exp(-S) <= Q^2 <= F^2",
            domain: Domain::Normalized,
            clauses: vec![
                simple("exp_neg_s_le_q2", &['a'], ExpNegS, QSquared),
                simple("q2_le_f2", &['a'], QSquared, FSquared),
            ],
            entropy_scaled: false,
        },
        InequalityRecord {
            id: "CH6",
            description: "C <= S and C <= -2 log F <= -2 log Q <= 2 C",
            domain: Domain::Normalized,
            clauses: vec![
                simple("c_le_s", &[], C, S),
                simple("c_le_neg2logf", &[], C, NegTwoLogF),
                simple("neg2logf_le_neg2logq", &[], NegTwoLogF, NegTwoLogQ),
                simple("neg2logq_le_2c", &[], NegTwoLogQ, TwoC),
            ],
            entropy_scaled: true,
        },
        InequalityRecord {
            id: "CH7",
            description: "T <= s^{-1}(S) (inverse envelope)",
            domain: Domain::Normalized,
            clauses: vec![simple("t_le_sinv_s", &[], T, HotInvOfS)],
            entropy_scaled: false,
        },
    ]
}

/// One record's worst-clause outcome on one pair.
#[derive(Debug, Clone)]
pub struct EvaluationResult {
    pub record_id: &'static str,
    /// Label of the clause realizing the worst slack.
    pub clause_label: &'static str,
    pub lhs_value: ExtendedReal,
    pub rhs_value: ExtendedReal,
    /// `rhs - lhs` in extended-real arithmetic.
    pub slack: ExtendedReal,
    pub holds: bool,
}

/// `rhs - lhs` under the record semantics: a divergent rhs always holds
/// (slack `+inf`), a divergent lhs against a finite rhs never does.
fn slack_of(lhs: ExtendedReal, rhs: ExtendedReal) -> ExtendedReal {
    use ExtendedReal::{Finite, Infinity, NegInfinity};
    match (lhs, rhs) {
        (_, Infinity) => Infinity,
        (Infinity, _) => NegInfinity,
        (NegInfinity, _) => Infinity,
        (Finite(_), NegInfinity) => NegInfinity,
        (Finite(a), Finite(b)) => ExtendedReal::from_f64(b - a),
    }
}

fn holds_at(slack: ExtendedReal, eta_eff: f64) -> bool {
    match slack {
        ExtendedReal::Infinity => true,
        ExtendedReal::NegInfinity => false,
        ExtendedReal::Finite(v) => v >= -eta_eff,
    }
}

/// Effective tolerance for one comparison.
fn eta_for(eta: f64, entropy_scaled: bool, rhs: ExtendedReal) -> f64 {
    if !entropy_scaled {
        return eta;
    }
    match rhs {
        ExtendedReal::Finite(v) => eta * v.abs().max(1.0),
        _ => eta,
    }
}

/// Evaluate one clause, returning `(lhs, rhs, slack, holds)` of its worst
/// comparison.
fn evaluate_clause(
    clause: &Clause,
    set: &MeasureSet,
    c: ExtendedReal,
    s: ExtendedReal,
    eta: f64,
    entropy_scaled: bool,
) -> (ExtendedReal, ExtendedReal, ExtendedReal, bool) {
    match clause.kind {
        ClauseKind::Simple { lhs, rhs } => {
            let lv = lhs.eval(set, c, s);
            let rv = rhs.eval(set, c, s);
            let slack = slack_of(lv, rv);
            (
                lv,
                rv,
                slack,
                holds_at(slack, eta_for(eta, entropy_scaled, rv)),
            )
        }
        ClauseKind::Grid { form } => {
            let t = ExtendedReal::from_f64(set.t);
            let f2 = ExtendedReal::from_f64(set.f * set.f);
            let mut worst: Option<(ExtendedReal, ExtendedReal, ExtendedReal)> = None;
            for &(_, q_s) in &set.q_grid {
                let (lv, rv) = match form {
                    GridForm::OneMinusQsLeT => (ExtendedReal::from_f64(1.0 - q_s), t),
                    GridForm::FSquaredLeQs => (f2, ExtendedReal::from_f64(q_s)),
                };
                let slack = slack_of(lv, rv);
                let replace = match &worst {
                    None => true,
                    Some((_, _, w)) => slack.total_cmp(w) == std::cmp::Ordering::Less,
                };
                if replace {
                    worst = Some((lv, rv, slack));
                }
            }
            let (lv, rv, slack) = worst.expect("s grid is never empty");
            (
                lv,
                rv,
                slack,
                holds_at(slack, eta_for(eta, entropy_scaled, rv)),
            )
        }
    }
}

/// Evaluate a record against a prepared context; the result carries the
/// worst clause.
pub fn evaluate_with(
    record: &InequalityRecord,
    ctx: &MeasureContext,
    eta: f64,
) -> EvaluationResult {
    let set = ctx.set(record.domain);
    let mut out: Option<EvaluationResult> = None;
    for clause in &record.clauses {
        let (lhs_value, rhs_value, slack, holds) =
            evaluate_clause(clause, set, ctx.c, ctx.s, eta, record.entropy_scaled);
        let replace = match &out {
            None => true,
            Some(prev) => slack.total_cmp(&prev.slack) == std::cmp::Ordering::Less,
        };
        if replace {
            out = Some(EvaluationResult {
                record_id: record.id,
                clause_label: clause.label,
                lhs_value,
                rhs_value,
                slack,
                holds,
            });
        }
    }
    out.expect("records always carry at least one clause")
}

/// Evaluate a record on a pair.
pub fn evaluate(
    record: &InequalityRecord,
    pair: &WeightedStatePair,
    eta: f64,
) -> Result<EvaluationResult> {
    let ctx = MeasureContext::new(pair)?;
    Ok(evaluate_with(record, &ctx, eta))
}

/// Evaluate the whole catalog on a pair.
pub fn evaluate_all(pair: &WeightedStatePair, eta: f64) -> Result<Vec<EvaluationResult>> {
    let ctx = MeasureContext::new(pair)?;
    Ok(catalog()
        .iter()
        .map(|record| evaluate_with(record, &ctx, eta))
        .collect())
}

/// Slacks of every clause tagging `family`, evaluated at the family point `t`.
///
/// Rows are `("RECORD.clause_label", slack)`. A negative slack beyond the
/// tolerance means the inequality itself failed at a point where it is known
/// to be tight — that is an implementation bug and is returned as
/// [`Error::EqualityViolation`]. Slacks merely above zero are normal: several
/// clauses touch their family only at isolated `t` values.
pub fn check_family_equalities(family: Family, t: f64, eta: f64) -> Result<Vec<(String, f64)>> {
    let point = family_point(family, t)?;
    let pair = make_weighted_pair(point.rho, point.sigma, 0.5)?;
    let ctx = MeasureContext::new(&pair)?;
    let mut rows = Vec::new();
    for record in catalog() {
        let set = ctx.set(record.domain);
        for clause in &record.clauses {
            if !clause.families.contains(&family.id()) {
                continue;
            }
            let (_, rhs, slack, _) =
                evaluate_clause(clause, set, ctx.c, ctx.s, eta, record.entropy_scaled);
            let slack_f = slack.as_f64();
            if slack_f < -eta_for(eta, record.entropy_scaled, rhs) {
                return Err(Error::EqualityViolation {
                    record: format!("{}.{}", record.id, clause.label),
                    t,
                    slack: slack_f.abs(),
                });
            }
            rows.push((format!("{}.{}", record.id, clause.label), slack_f));
        }
    }
    Ok(rows)
}

/// One family-table row: computed measures against closed forms.
#[derive(Debug, Clone)]
pub struct FamilyRow {
    pub t: f64,
    pub computed: measures::MeasureReport,
    pub point: FamilyPoint,
    /// Largest deviation between computed and closed-form values over
    /// `L, T, F, Q, Q_min, C, S` (divergences must match exactly).
    pub max_deviation: f64,
}

/// Deviation between two possibly-divergent values: divergences of the same
/// sign agree exactly, a divergence against a finite value never does.
fn extended_deviation(a: ExtendedReal, b: ExtendedReal) -> f64 {
    match (a, b) {
        (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) => (x - y).abs(),
        (x, y) if x == y => 0.0,
        _ => f64::INFINITY,
    }
}

/// Largest deviation between a computed report and closed-form expectations
/// over `L, T, F, Q, Q_min, C, S`.
///
/// The argmin `s_star` is excluded: its closed form is only defined where the
/// minimum is unique, and its attainable accuracy is set by the search
/// bracket, not by the measure tolerances.
pub fn measure_deviation(computed: &measures::MeasureReport, expected: &ExpectedMeasures) -> f64 {
    [
        (computed.l - expected.l).abs(),
        (computed.t - expected.t).abs(),
        (computed.f - expected.f).abs(),
        (computed.q - expected.q).abs(),
        (computed.q_min - expected.q_min).abs(),
        extended_deviation(computed.c, expected.c),
        extended_deviation(computed.s, expected.s),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// Computed-versus-closed-form table for one family on a `t` grid.
pub fn family_report(family: Family, t_grid: &[f64]) -> Result<Vec<FamilyRow>> {
    let mut rows = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let point = family_point(family, t)?;
        let pair = make_weighted_pair(point.rho.clone(), point.sigma.clone(), 0.5)?;
        let computed = measures::measure_report(&pair)?;
        let max_deviation = measure_deviation(&computed, &point.expected);
        rows.push(FamilyRow {
            t,
            computed,
            point,
            max_deviation,
        });
    }
    Ok(rows)
}

/// How sweep priors are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriorMode {
    /// Every pair at prior `1/2`.
    Uniform,
    /// Prior drawn uniformly from `[0, 1)` per sample.
    Random,
}

/// Per-record aggregate over a sweep.
#[derive(Debug, Clone)]
pub struct RecordStats {
    pub record_id: &'static str,
    pub samples: u64,
    pub violations: u64,
    pub min_slack: ExtendedReal,
    /// Sample seed realizing `min_slack` (0 until a finite slack is seen).
    pub argmin_seed: u64,
}

/// Outcome of a randomized verification sweep.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub dims: Vec<usize>,
    pub samples_per_dim: usize,
    pub prior_mode: PriorMode,
    pub seed: u64,
    pub eta: f64,
    pub records: Vec<RecordStats>,
    /// True iff no record saw any violation.
    pub pass: bool,
}

/// Run the catalog against seeded random pairs.
///
/// Deterministic given `(dims, samples_per_dim, prior_mode, seed, eta)`: a
/// master stream hands each sample its own seed, and each sample derives its
/// two states and prior from that seed alone. Violations are counted, not
/// thrown.
pub fn sweep(
    dims: &[usize],
    samples_per_dim: usize,
    prior_mode: PriorMode,
    seed: u64,
    eta: f64,
) -> Result<VerificationReport> {
    if dims.is_empty() {
        return Err(Error::ParamOutOfRange {
            name: "dims",
            value: 0.0,
            expected: "at least one dimension",
        });
    }
    for &dim in dims {
        if dim < 2 {
            return Err(Error::ParamOutOfRange {
                name: "dim",
                value: dim as f64,
                expected: ">= 2",
            });
        }
    }
    if samples_per_dim == 0 {
        return Err(Error::ParamOutOfRange {
            name: "samples",
            value: 0.0,
            expected: ">= 1",
        });
    }
    if !eta.is_finite() || eta <= 0.0 {
        return Err(Error::ParamOutOfRange {
            name: "tol",
            value: eta,
            expected: "> 0",
        });
    }

    let records = catalog();
    let mut stats: Vec<RecordStats> = records
        .iter()
        .map(|r| RecordStats {
            record_id: r.id,
            samples: 0,
            violations: 0,
            min_slack: ExtendedReal::Infinity,
            argmin_seed: 0,
        })
        .collect();

    let mut master = ChaCha12Rng::seed_from_u64(seed);
    for &dim in dims {
        for _ in 0..samples_per_dim {
            let sample_seed: u64 = master.random();
            let mut sample_rng = ChaCha12Rng::seed_from_u64(sample_seed);
            let rho = random_sweep_state(dim, &mut sample_rng)?;
            let sigma = random_sweep_state(dim, &mut sample_rng)?;
            let prior = match prior_mode {
                PriorMode::Uniform => 0.5,
                PriorMode::Random => sample_rng.random::<f64>(),
            };
            let pair = make_weighted_pair(rho, sigma, prior)?;
            let ctx = MeasureContext::new(&pair)?;
            for (record, entry) in records.iter().zip(stats.iter_mut()) {
                let result = evaluate_with(record, &ctx, eta);
                entry.samples += 1;
                if !result.holds {
                    entry.violations += 1;
                }
                if result.slack.total_cmp(&entry.min_slack) == std::cmp::Ordering::Less {
                    entry.min_slack = result.slack;
                    entry.argmin_seed = sample_seed;
                }
            }
        }
    }

    let pass = stats.iter().all(|s| s.violations == 0);
    Ok(VerificationReport {
        dims: dims.to_vec(),
        samples_per_dim,
        prior_mode,
        seed,
        eta,
        records: stats,
        pass,
    })
}

/// CSV rendering of a sweep report: one row per record, stable order.
pub fn render_csv(report: &VerificationReport) -> String {
    let mut out = String::from("record_id,samples,violations,min_slack,argmin_seed\n");
    for r in &report.records {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.record_id,
            r.samples,
            r.violations,
            fmt_sig12(r.min_slack),
            r.argmin_seed
        ));
    }
    out
}
