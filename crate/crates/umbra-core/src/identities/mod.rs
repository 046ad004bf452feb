//! Registry of the polynomial identities this crate verifies, and the
//! engine that checks each one as an exact equality in `Q(L)[x]` over a grid
//! of integer/rational parameters.
//!
//! Each registry entry is either `MustHold` (a failure anywhere on the grid
//! fails the suite) or `Probe` (the verdicts are reported but never affect
//! the suite outcome; used for statements whose published derivation does
//! not survive formal-series scrutiny). A `Pass` always means the difference
//! of the two sides is identically zero -- there is no tolerance anywhere.
//!
//! ```
//! use umbra_core::identities::{registry, suite_passed, verify, IdentityId};
//!
//! let spec = registry().into_iter().find(|s| s.id == IdentityId::T4).unwrap();
//! let report = verify(&spec).unwrap();
//! assert!(report.passed());
//! assert!(suite_passed(&[report]));
//! ```

mod checks;
mod render;

pub use render::{render_reports, ReportFormat};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{LambdaRat, Rational};
use crate::text::{render_lambdarat, render_poly};

/// Names of the verified identities, keeping the labels these results are
/// usually cited by; `EFinal` is the closing unnumbered identity. There is
/// no `T7` entry: that numbering skips from 6 to 8.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum IdentityId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T8,
    T9,
    T10,
    E15,
    E16,
    E19,
    E41,
    E43,
    E45,
    E47,
    E51,
    E53,
    EFinal,
}

impl IdentityId {
    pub const ALL: [IdentityId; 19] = [
        IdentityId::T1,
        IdentityId::T2,
        IdentityId::T3,
        IdentityId::T4,
        IdentityId::T5,
        IdentityId::T6,
        IdentityId::T8,
        IdentityId::T9,
        IdentityId::T10,
        IdentityId::E15,
        IdentityId::E16,
        IdentityId::E19,
        IdentityId::E41,
        IdentityId::E43,
        IdentityId::E45,
        IdentityId::E47,
        IdentityId::E51,
        IdentityId::E53,
        IdentityId::EFinal,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::T1 => "T1",
            IdentityId::T2 => "T2",
            IdentityId::T3 => "T3",
            IdentityId::T4 => "T4",
            IdentityId::T5 => "T5",
            IdentityId::T6 => "T6",
            IdentityId::T8 => "T8",
            IdentityId::T9 => "T9",
            IdentityId::T10 => "T10",
            IdentityId::E15 => "E15",
            IdentityId::E16 => "E16",
            IdentityId::E19 => "E19",
            IdentityId::E41 => "E41",
            IdentityId::E43 => "E43",
            IdentityId::E45 => "E45",
            IdentityId::E47 => "E47",
            IdentityId::E51 => "E51",
            IdentityId::E53 => "E53",
            IdentityId::EFinal => "EFinal",
        }
    }

    pub fn parse(s: &str) -> Result<IdentityId> {
        let lowered = s.to_ascii_lowercase();
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().to_ascii_lowercase() == lowered)
            .ok_or_else(|| Error::BadParameter(format!("unknown identity '{s}'")))
    }
}

/// Whether a failing instance fails the suite.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Expectation {
    MustHold,
    Probe,
}

impl Expectation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Expectation::MustHold => "must_hold",
            Expectation::Probe => "probe",
        }
    }
}

/// Parameter ranges for one identity. Fields an identity does not use are
/// ignored by its instance enumeration.
#[derive(Clone, Debug)]
pub struct Grid {
    pub n_min: u32,
    pub n_max: u32,
    pub a_min: u32,
    pub a_max: u32,
    /// Pairing index bound for the structural checks E15/E16.
    pub k_max: u32,
    pub mu_max: u32,
    pub b_values: Vec<Rational>,
    /// Truncation guard added on top of the degree a check needs.
    pub guard: usize,
    /// Extra `t`-orders checked beyond `n` in the series identity T8.
    pub t8_extra: usize,
    /// Cap on the number of weak compositions a single instance may
    /// enumerate (T10, EFinal); exceeding it skips the instance.
    pub comp_cap: u64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            n_min: 1,
            n_max: 4,
            a_min: 0,
            a_max: 2,
            k_max: 5,
            mu_max: 3,
            b_values: vec![Rational::from(BigInt::from(1))],
            guard: 2,
            t8_extra: 4,
            comp_cap: 100_000,
        }
    }
}

/// One identity together with its expectation and default grid.
#[derive(Clone, Debug)]
pub struct IdentitySpec {
    pub id: IdentityId,
    pub expectation: Expectation,
    pub grid: Grid,
}

/// The full registry with the grids the acceptance suite runs.
pub fn registry() -> Vec<IdentitySpec> {
    fn b_set() -> Vec<Rational> {
        vec![
            Rational::from(BigInt::from(1)),
            Rational::from(BigInt::from(-1)),
            Rational::new(BigInt::from(1), BigInt::from(2)),
        ]
    }
    let mk = |id, expectation, grid| IdentitySpec {
        id,
        expectation,
        grid,
    };
    use Expectation::{MustHold, Probe};
    use IdentityId::*;
    #[rustfmt::skip]
    let specs = vec![
        mk(T1,     MustHold, Grid { n_max: 4, a_min: 1, a_max: 3, ..Grid::default() }),
        mk(T2,     MustHold, Grid { n_max: 4, a_max: 3, ..Grid::default() }),
        mk(T3,     MustHold, Grid { n_max: 6, a_max: 3, ..Grid::default() }),
        mk(T4,     MustHold, Grid { n_max: 8, ..Grid::default() }),
        mk(T5,     MustHold, Grid { n_max: 4, a_max: 3, ..Grid::default() }),
        mk(T6,     MustHold, Grid { n_max: 3, a_max: 2, ..Grid::default() }),
        mk(T8,     MustHold, Grid { n_min: 0, n_max: 4, ..Grid::default() }),
        mk(T9,     MustHold, Grid { n_max: 3, a_max: 2, b_values: b_set(), ..Grid::default() }),
        mk(T10,    MustHold, Grid { n_max: 3, mu_max: 3, ..Grid::default() }),
        mk(E15,    MustHold, Grid { n_min: 0, n_max: 5, k_max: 5, ..Grid::default() }),
        mk(E16,    MustHold, Grid { n_min: 0, n_max: 5, k_max: 5, a_min: 1, a_max: 2, ..Grid::default() }),
        mk(E19,    MustHold, Grid { n_max: 8, a_min: 1, a_max: 2, ..Grid::default() }),
        mk(E41,    MustHold, Grid { n_min: 0, n_max: 8, ..Grid::default() }),
        mk(E43,    Probe,    Grid { n_max: 3, ..Grid::default() }),
        mk(E45,    MustHold, Grid { n_min: 0, n_max: 6, ..Grid::default() }),
        mk(E47,    MustHold, Grid { n_min: 0, n_max: 6, mu_max: 3, ..Grid::default() }),
        mk(E51,    MustHold, Grid { n_min: 0, n_max: 10, ..Grid::default() }),
        mk(E53,    MustHold, Grid { n_max: 6, ..Grid::default() }),
        mk(EFinal, MustHold, Grid { n_max: 4, ..Grid::default() }),
    ];
    specs
}

/// Looks up the registry entry for `id`.
pub fn registry_entry(id: IdentityId) -> IdentitySpec {
    registry()
        .into_iter()
        .find(|spec| spec.id == id)
        .expect("every id has a registry entry")
}

/// One grid-point parameter value.
#[derive(Clone, PartialEq, Debug)]
pub enum ParamValue {
    Int(i64),
    Rat(Rational),
}

impl ParamValue {
    pub fn render(&self) -> String {
        match self {
            ParamValue::Int(v) => format!("{v}"),
            ParamValue::Rat(v) => format!("{v}"),
        }
    }
}

/// A single grid point: named parameter values in a fixed order.
#[derive(Clone, PartialEq, Debug)]
pub struct Instance {
    pub params: Vec<(&'static str, ParamValue)>,
}

impl Instance {
    fn of(params: Vec<(&'static str, ParamValue)>) -> Self {
        Instance { params }
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        for (k, v) in &self.params {
            if *k == name {
                if let ParamValue::Int(n) = v {
                    return Ok(*n);
                }
            }
        }
        Err(Error::BadParameter(format!("missing parameter '{name}'")))
    }

    pub fn rat(&self, name: &str) -> Result<Rational> {
        for (k, v) in &self.params {
            if *k == name {
                match v {
                    ParamValue::Rat(r) => return Ok(r.clone()),
                    ParamValue::Int(n) => return Ok(Rational::from(BigInt::from(*n))),
                }
            }
        }
        Err(Error::BadParameter(format!("missing parameter '{name}'")))
    }

    /// `n=2 a=1`-style rendering for text and CSV output.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.params {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(k);
            out.push('=');
            out.push_str(&v.render());
        }
        out
    }
}

/// Both sides of one instance, kept separate so callers can also specialize
/// `L` and `x` numerically.
#[derive(Clone, Debug)]
pub enum Sides {
    /// Equality of two polynomials in `Q(L)[x]`.
    Poly { lhs: Poly, rhs: Poly },
    /// Equality of two scalars in Q(L).
    Scalar { lhs: LambdaRat, rhs: LambdaRat },
    /// Equality of two series with polynomial coefficients, index = t-power.
    PolySeries { lhs: Vec<Poly>, rhs: Vec<Poly> },
}

impl Sides {
    /// `None` when the two sides agree exactly; otherwise a rendered witness
    /// of the first mismatch.
    pub fn witness(&self) -> Option<String> {
        match self {
            Sides::Poly { lhs, rhs } => {
                let diff = lhs - rhs;
                if diff.is_zero() {
                    None
                } else {
                    Some(render_poly(&diff))
                }
            }
            Sides::Scalar { lhs, rhs } => {
                let diff = lhs - rhs;
                if diff.is_zero() {
                    None
                } else {
                    Some(render_lambdarat(&diff))
                }
            }
            Sides::PolySeries { lhs, rhs } => {
                debug_assert_eq!(lhs.len(), rhs.len());
                for (m, (a, b)) in lhs.iter().zip(rhs).enumerate() {
                    let diff = a - b;
                    if !diff.is_zero() {
                        return Some(format!("t^{m}: {}", render_poly(&diff)));
                    }
                }
                None
            }
        }
    }
}

/// Outcome of one grid point.
#[derive(Clone, PartialEq, Debug)]
pub enum InstanceStatus {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

impl InstanceStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            InstanceStatus::Pass => "pass",
            InstanceStatus::Fail { .. } => "fail",
            InstanceStatus::Skipped { .. } => "skipped",
        }
    }
}

/// Result of one instance, with optional wall-clock time filled in by a
/// timing driver (this crate has no clock; the CLI measures).
#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub instance: Instance,
    pub status: InstanceStatus,
    pub ms: u64,
}

/// Result of verifying one registry entry over its whole grid.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub expectation: Expectation,
    pub grid_desc: String,
    pub instances: Vec<InstanceReport>,
}

impl IdentityReport {
    /// A `MustHold` report with any failing instance is failed; probes and
    /// all-pass reports count as passed.
    pub fn passed(&self) -> bool {
        self.expectation == Expectation::Probe
            || !self
                .instances
                .iter()
                .any(|i| matches!(i.status, InstanceStatus::Fail { .. }))
    }

    pub fn count(&self, status: &str) -> usize {
        self.instances
            .iter()
            .filter(|i| i.status.as_str() == status)
            .count()
    }
}

/// True when every `MustHold` report passed; probe outcomes are ignored.
pub fn suite_passed(reports: &[IdentityReport]) -> bool {
    reports.iter().all(IdentityReport::passed)
}

/// Enumerates the grid points of a spec in deterministic order.
/// Errors with `BadParameter` when the grid violates the identity's
/// parameter constraints (empty ranges, `b = 0`, `mu = 0`, ...).
pub fn instances(spec: &IdentitySpec) -> Result<Vec<Instance>> {
    use IdentityId::*;
    let g = &spec.grid;
    let nint = |v: u32| ParamValue::Int(v as i64);
    let check = |cond: bool, msg: &str| {
        if cond {
            Ok(())
        } else {
            Err(Error::BadParameter(String::from(msg)))
        }
    };
    let mut out = Vec::new();
    match spec.id {
        T1 => {
            check(
                g.n_max >= 1 && g.a_max >= 1 && g.a_min >= 1,
                "T1 needs n >= 1 and a >= 1",
            )?;
            for n in 1.max(g.n_min)..=g.n_max {
                for a in g.a_min..=g.a_max {
                    out.push(Instance::of(vec![("n", nint(n)), ("a", nint(a))]));
                }
            }
        }
        T2 | T3 | T5 => {
            check(g.n_max >= 1, "needs n >= 1")?;
            for n in 1.max(g.n_min)..=g.n_max {
                for a in g.a_min..=g.a_max {
                    out.push(Instance::of(vec![("n", nint(n)), ("a", nint(a))]));
                }
            }
        }
        T4 => {
            check(g.n_max >= 1, "T4 needs n >= 1")?;
            for n in 1.max(g.n_min)..=g.n_max {
                for l in 0..n {
                    out.push(Instance::of(vec![("n", nint(n)), ("l", nint(l))]));
                }
            }
        }
        T6 => {
            check(g.n_max >= 1, "T6 needs n >= 1")?;
            for n in 1.max(g.n_min)..=g.n_max {
                for a in g.a_min..=g.a_max {
                    for p in 0..n {
                        out.push(Instance::of(vec![
                            ("n", nint(n)),
                            ("a", nint(a)),
                            ("p", nint(p)),
                        ]));
                    }
                }
            }
        }
        T8 => {
            for n in g.n_min..=g.n_max {
                out.push(Instance::of(vec![("n", nint(n))]));
            }
        }
        T9 => {
            check(g.n_max >= 1, "T9 needs n >= 1")?;
            check(!g.b_values.is_empty(), "T9 needs at least one b value")?;
            for b in &g.b_values {
                use num_traits::Zero;
                check(!b.is_zero(), "T9 needs b != 0")?;
            }
            for n in 1.max(g.n_min)..=g.n_max {
                for a in g.a_min..=g.a_max {
                    for b in &g.b_values {
                        out.push(Instance::of(vec![
                            ("n", nint(n)),
                            ("a", nint(a)),
                            ("b", ParamValue::Rat(b.clone())),
                        ]));
                    }
                }
            }
        }
        T10 => {
            check(g.n_max >= 1, "T10 needs n >= 1")?;
            check(g.mu_max >= 1, "T10 needs mu >= 1")?;
            for n in 1.max(g.n_min)..=g.n_max {
                for mu in 1..=g.mu_max {
                    for k in 1..=n {
                        out.push(Instance::of(vec![
                            ("n", nint(n)),
                            ("mu", nint(mu)),
                            ("k", nint(k)),
                        ]));
                    }
                }
            }
        }
        E15 => {
            for n in g.n_min..=g.n_max {
                for k in 0..=g.k_max {
                    out.push(Instance::of(vec![("n", nint(n)), ("k", nint(k))]));
                }
            }
        }
        E16 => {
            check(g.a_min >= 1, "E16 needs a >= 1")?;
            for a in g.a_min..=g.a_max {
                for n in g.n_min..=g.n_max {
                    for k in 0..=g.k_max {
                        out.push(Instance::of(vec![
                            ("a", nint(a)),
                            ("n", nint(n)),
                            ("k", nint(k)),
                        ]));
                    }
                }
            }
        }
        E19 => {
            check(g.n_max >= 1, "E19 needs n >= 1")?;
            check(g.a_min >= 1, "E19 needs a >= 1")?;
            for n in 1.max(g.n_min)..=g.n_max {
                for a in g.a_min..=g.a_max {
                    out.push(Instance::of(vec![("n", nint(n)), ("a", nint(a))]));
                }
            }
        }
        E41 | E45 | E51 => {
            for n in g.n_min..=g.n_max {
                out.push(Instance::of(vec![("n", nint(n))]));
            }
        }
        E43 | E53 | EFinal => {
            check(g.n_max >= 1, "needs n >= 1")?;
            for n in 1.max(g.n_min)..=g.n_max {
                out.push(Instance::of(vec![("n", nint(n))]));
            }
        }
        E47 => {
            check(g.mu_max >= 1, "E47 needs mu >= 1")?;
            for n in g.n_min..=g.n_max {
                for mu in 1..=g.mu_max {
                    out.push(Instance::of(vec![("n", nint(n)), ("mu", nint(mu))]));
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::BadParameter(format!(
            "grid for {} is empty",
            spec.id.as_str()
        )));
    }
    Ok(out)
}

/// Builds both sides of one grid point without comparing them.
pub fn instance_sides(id: IdentityId, inst: &Instance, grid: &Grid) -> Result<Sides> {
    checks::build_sides(id, inst, grid)
}

/// Verifies a single grid point.
pub fn verify_instance(id: IdentityId, inst: &Instance, grid: &Grid) -> InstanceStatus {
    match instance_sides(id, inst, grid) {
        Ok(sides) => match sides.witness() {
            None => InstanceStatus::Pass,
            Some(witness) => InstanceStatus::Fail { witness },
        },
        Err(Error::RangeTooLarge) => InstanceStatus::Skipped {
            reason: String::from("RangeTooLarge: composition count exceeds the configured cap"),
        },
        Err(e) => InstanceStatus::Skipped {
            reason: format!("{e}"),
        },
    }
}

/// Human-readable description of the grid a spec enumerates.
pub fn grid_description(spec: &IdentitySpec) -> String {
    use IdentityId::*;
    let g = &spec.grid;
    let n0 = match spec.id {
        T8 | E15 | E16 | E41 | E45 | E47 | E51 => g.n_min,
        _ => 1.max(g.n_min),
    };
    let mut desc = format!("n={}..{}", n0, g.n_max);
    match spec.id {
        T1 | T2 | T3 | T5 | T6 | T9 | E16 | E19 => {
            desc.push_str(&format!(" a={}..{}", g.a_min, g.a_max));
        }
        _ => {}
    }
    if matches!(spec.id, T10 | E47) {
        desc.push_str(&format!(" mu=1..{}", g.mu_max));
    }
    if matches!(spec.id, E15 | E16) {
        desc.push_str(&format!(" k=0..{}", g.k_max));
    }
    if spec.id == T9 {
        let bs: Vec<String> = g.b_values.iter().map(|b| format!("{b}")).collect();
        desc.push_str(&format!(" b in {{{}}}", bs.join(",")));
    }
    desc
}

/// Runs a registry entry over its entire grid, sequentially. Per-instance
/// `ms` is left at zero; timing drivers fill it in.
pub fn verify(spec: &IdentitySpec) -> Result<IdentityReport> {
    let insts = instances(spec)?;
    let mut out = Vec::with_capacity(insts.len());
    for inst in insts {
        let status = verify_instance(spec.id, &inst, &spec.grid);
        out.push(InstanceReport {
            instance: inst,
            status,
            ms: 0,
        });
    }
    Ok(IdentityReport {
        id: spec.id,
        expectation: spec.expectation,
        grid_desc: grid_description(spec),
        instances: out,
    })
}
