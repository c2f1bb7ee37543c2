use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::theorem5::{self, Params5};
use super::theorem6::{self, Params6, SHORTEST_PLAIN};
use super::{q, BuildError};
use crate::graph::{counts, ConstructionPlan, Counts, PlanSource};
use crate::Rational;

/// One reconciled quantity: what the built plan has versus what the closed
/// form claims.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRow {
    pub quantity: String,
    #[serde(serialize_with = "ser_display")]
    pub construction: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub claimed: Rational,
}

impl AuditRow {
    fn new(quantity: impl Into<String>, construction: u64, claimed: Rational) -> Self {
        AuditRow {
            quantity: quantity.into(),
            construction: BigInt::from(construction),
            claimed,
        }
    }

    /// `construction - claimed`, exact.
    pub fn difference(&self) -> Rational {
        Rational::from_integer(self.construction.clone()) - &self.claimed
    }
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Audit {
    pub rows: Vec<AuditRow>,
    pub findings: Vec<String>,
}

impl Audit {
    pub fn row(&self, quantity: &str) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.quantity == quantity)
    }

    pub fn is_consistent(&self) -> bool {
        self.rows.iter().all(|r| r.difference().is_zero())
    }
}

/// Audit for any plan that remembers its parameters.
pub fn audit_plan(plan: &ConstructionPlan) -> Option<Result<Audit, BuildError>> {
    match plan.source() {
        PlanSource::Custom => None,
        PlanSource::Theorem5(p) => Some(audit_counts5(p, counts(plan))),
        PlanSource::Theorem6(p) => Some(audit_counts6(p, counts(plan))),
    }
}

/// Builds the plan and reconciles `V = n`, `E = n + (k+s1+2s2+1)t - 1` and
/// `mu = (k+s1+2s2+1)t`.
pub fn audit_theorem5(p: &Params5) -> Result<Audit, BuildError> {
    let plan = theorem5::build_theorem5(p)?;
    audit_counts5(p, counts(&plan))
}

fn audit_counts5(p: &Params5, c: Counts) -> Result<Audit, BuildError> {
    let n = target_order(p.n, theorem5::n_t_theorem5(p)?);
    let rank = q(p.cycle_rank());
    let rows = vec![
        AuditRow::new("vertices", c.vertices, n.clone()),
        AuditRow::new("edges", c.edges, &n + &rank - Rational::one()),
        AuditRow::new("cyclomatic", c.cyclomatic, rank),
    ];
    let findings = findings_for(&rows);
    Ok(Audit { rows, findings })
}

/// Reconciles both the built plan and the block list as written (which
/// includes plain cycles of length 1 and 2) against `n_t` and the claimed
/// edge count `n + (119t - 26399)/3`.
pub fn audit_theorem6(p: &Params6) -> Result<Audit, BuildError> {
    let plan = theorem6::build_theorem6(p)?;
    audit_counts6(p, counts(&plan))
}

fn audit_counts6(p: &Params6, built: Counts) -> Result<Audit, BuildError> {
    let nt = theorem6::n_t_theorem6(p)?;
    let n = target_order(p.n, nt.clone());
    let bonus = theorem6::bonus_value::<Rational>(p.t);
    // A plain cycle of length i has i-1 internal vertices and i edges.
    let listed = (1..SHORTEST_PLAIN).fold(built, |c, len| Counts {
        vertices: c.vertices + len - 1,
        edges: c.edges + len,
        cyclomatic: c.cyclomatic + 1,
    });
    let claimed_edges = &n + &bonus;
    let implied_mu = &bonus + Rational::one();
    let rows = vec![
        AuditRow::new("vertices", built.vertices, n.clone()),
        AuditRow::new("vertices(listed)", listed.vertices, n.clone()),
        AuditRow::new("edges", built.edges, claimed_edges.clone()),
        AuditRow::new("edges(listed)", listed.edges, claimed_edges),
        AuditRow::new("cyclomatic", built.cyclomatic, implied_mu.clone()),
        AuditRow::new("cyclomatic(listed)", listed.cyclomatic, implied_mu),
    ];
    let mut findings = findings_for(&rows);
    let listed_mu = rows[5].difference();
    if listed_mu == -Rational::one() {
        findings.push(format!(
            "erratum candidate: the listed blocks have cyclomatic number {} but the claimed \
             edge count implies {}; the edge surplus over n is {} not {}",
            listed.cyclomatic,
            &bonus + Rational::one(),
            &bonus - Rational::one(),
            bonus
        ));
    }
    let vertex_gap = Rational::from_integer(BigInt::from(listed.vertices)) - &n;
    findings.push(format!(
        "listed-block vertex count minus n_t-based order: {vertex_gap} (n_t = {nt})"
    ));
    Ok(Audit { rows, findings })
}

fn target_order(n: Option<u64>, nt: BigInt) -> Rational {
    Rational::from_integer(n.map(BigInt::from).unwrap_or(nt))
}

fn findings_for(rows: &[AuditRow]) -> Vec<String> {
    rows.iter()
        .filter(|r| !r.difference().is_zero())
        .map(|r| {
            format!(
                "{}: construction {} vs closed form {} (difference {})",
                r.quantity,
                r.construction,
                r.claimed,
                r.difference()
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem5_desk_audit_is_clean() {
        let a = audit_theorem5(&Params5::new(4, 3, 2, 1, 1)).unwrap();
        assert!(a.is_consistent(), "{:?}", a.findings);
        assert_eq!(a.row("edges").unwrap().construction, BigInt::from(132));
        assert_eq!(a.row("cyclomatic").unwrap().claimed, q(8));
    }

    #[test]
    fn theorem6_audit_at_1429() {
        let a = audit_theorem6(&Params6::new(1429)).unwrap();
        let row = a.row("cyclomatic(listed)").unwrap();
        assert_eq!(row.construction, BigInt::from(47_884));
        assert_eq!(row.claimed, q(47_885));
        assert_eq!(row.difference(), -Rational::one());
        assert!(a.row("vertices(listed)").unwrap().difference().is_zero());
        assert_eq!(a.row("vertices").unwrap().difference(), -Rational::one());
        assert_eq!(
            a.row("edges").unwrap().difference(),
            q(4) * -Rational::one()
        );
        assert!(a
            .findings
            .iter()
            .any(|f| f.starts_with("erratum candidate")));
    }
}
