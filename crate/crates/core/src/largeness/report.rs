//! Runs every checker on one set and audits the implications between the
//! verdicts that remain sound at bounded scale.

use serde::{Deserialize, Serialize};

use super::additive::{a_pcws_check, a_thick_check, ip_search, ip_star_check, j_check};
use super::divisor::{crt_thickness_demo, max_check, maxstar_check, nmax_refute, nmaxstar_check};
use super::multiplicative::m_pcws_check;
use super::{Property, PropertyParams, OUT_OF_SCOPE};
use crate::constructions::gen_mj_funcs;
use crate::embed::mthick_check;
use crate::error::Result;
use crate::setlang::{Exactness, LazySet};
use crate::verdict::{Certificate, Mode, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyEntry {
    pub name: String,
    /// The bounds the checker ran with.
    pub bounds: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    /// Set when no verdict was produced (out of scope or checker error).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditStatus {
    Holds,
    Violated,
    /// The premise verdict was not produced, so there is nothing to check.
    NotApplicable,
    /// The consequence could not be decided with what is known about the set.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Audit {
    pub implication: String,
    pub status: AuditStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargenessReport {
    pub expr: String,
    pub horizon: u64,
    pub exactness: Exactness,
    pub params: PropertyParams,
    pub properties: Vec<PropertyEntry>,
    pub audits: Vec<Audit>,
}

impl LargenessReport {
    pub fn get(&self, p: Property) -> Option<&Verdict> {
        self.properties.iter().find(|e| e.name == p.name()).and_then(|e| e.verdict.as_ref())
    }

    /// No audit found a violated implication.
    pub fn consistent(&self) -> bool {
        self.audits.iter().all(|a| a.status != AuditStatus::Violated)
    }
}

fn entry(p: Property, bounds: String, r: Result<Verdict>) -> PropertyEntry {
    match r {
        Ok(v) => PropertyEntry { name: p.name().into(), bounds, verdict: Some(v), note: None },
        Err(e) => PropertyEntry { name: p.name().into(), bounds, verdict: None, note: Some(e.to_string()) },
    }
}

/// Runs one checker with the bounds from `params`.
pub fn check_property(a: &LazySet, p: Property, params: &PropertyParams) -> Result<Verdict> {
    let h = params.horizon;
    let n = params.run_length;
    match p {
        Property::AThick => a_thick_check(a, n, h),
        Property::MThick => Ok(mthick_check(a, n, h)),
        Property::APcws => a_pcws_check(a, params.t_max, n, h),
        Property::MPcws => m_pcws_check(a, params.t_max.max(1), n, h),
        Property::AIp => ip_search(a, params.ip_len, h, Mode::Additive),
        Property::MIp => ip_search(a, params.ip_len, h, Mode::Multiplicative),
        Property::AIpStar => ip_star_check(a, params.ip_len, h, Mode::Additive),
        Property::AJ | Property::MJ => {
            let funcs = match &params.j_funcs {
                Some(f) => f.clone(),
                None => gen_mj_funcs(a.sieve(), params.j_h_max)?.as_family(),
            };
            let mode = if p == Property::AJ { Mode::Additive } else { Mode::Multiplicative };
            j_check(a, &funcs, params.j_a_max, params.j_h_max, mode)
        }
        Property::Max => max_check(a, params.max_n, h),
        Property::Nmax => nmax_refute(a, params.strength, h),
        Property::MaxStar => maxstar_check(a, params.maxstar_a_max, h),
        Property::NmaxStar => nmaxstar_check(a, params.strength, h),
    }
}

/// Human-readable bounds of one checker.
pub fn bounds_of(p: Property, params: &PropertyParams) -> String {
    let h = params.horizon;
    let n = params.run_length;
    match p {
        Property::AThick | Property::MThick => format!("n={n}, H={h}"),
        Property::APcws | Property::MPcws => format!("t_max={}, n={n}, H={h}", params.t_max),
        Property::AIp | Property::MIp | Property::AIpStar => format!("L={}, H={h}", params.ip_len),
        Property::AJ | Property::MJ => format!("a_max={}, h_max={}, H={h}", params.j_a_max, params.j_h_max),
        Property::Max => format!("N={}, H={h}", params.max_n),
        Property::MaxStar => format!("a_max={}, H={h}", params.maxstar_a_max),
        Property::Nmax | Property::NmaxStar => format!("s={}, H={h}", params.strength),
    }
}

/// Every checker in report order, the out-of-scope entries, and the audits.
pub fn diagram_report(a: &LazySet, params: &PropertyParams) -> Result<LargenessReport> {
    params.validate()?;
    let mut properties: Vec<PropertyEntry> = Property::ALL
        .iter()
        .map(|&p| entry(p, bounds_of(p, params), check_property(a, p, params)))
        .collect();
    for name in OUT_OF_SCOPE {
        properties.push(PropertyEntry {
            name: name.into(),
            bounds: String::new(),
            verdict: None,
            note: Some("out of scope: defined through minimal idempotents, no finite form".into()),
        });
    }
    let mut report = LargenessReport {
        expr: a.expr().to_string(),
        horizon: params.horizon,
        exactness: a.exactness(),
        params: params.clone(),
        properties,
        audits: Vec::new(),
    };
    report.audits = audits(a, &report, params)?;
    Ok(report)
}

fn audits(a: &LazySet, report: &LargenessReport, params: &PropertyParams) -> Result<Vec<Audit>> {
    let h = params.horizon;
    let mut out = Vec::new();

    let implication = "A-thick(n) => A-pcws(t_max=0, n)".to_string();
    out.push(match report.get(Property::AThick) {
        Some(v) if v.is_proved() => {
            let p = a_pcws_check(a, 0, params.run_length, h)?;
            let status = if p.is_proved() { AuditStatus::Holds } else { AuditStatus::Violated };
            Audit { implication, status, detail: format!("pcws with shift 0: {p}") }
        }
        _ => Audit { implication, status: AuditStatus::NotApplicable, detail: "A-thick not proved".into() },
    });

    let implication = "MAX*(a) => MAX up to N = H/a".to_string();
    out.push(match report.get(Property::MaxStar) {
        Some(Verdict::Proved { certificate: Certificate::Multiples { a: d, .. } }) => {
            let m = max_check(a, h / d, h)?;
            let status = if m.is_proved() { AuditStatus::Holds } else { AuditStatus::Violated };
            Audit { implication, status, detail: format!("a={d}, MAX up to {}: {}", h / d, m.label()) }
        }
        _ => Audit { implication, status: AuditStatus::NotApplicable, detail: "MAX* not proved".into() },
    });

    let implication = "NMAX*-evidence(C) => run of length |C| inside the set".to_string();
    out.push(match report.get(Property::NmaxStar).and_then(|v| v.certificate()) {
        Some(Certificate::Antichain { elements, .. }) => {
            let run = crt_thickness_demo(elements, elements.len())?;
            let members: Vec<Option<bool>> = run.run().iter().map(|&x| a.member(x)).collect();
            let status = if !run.verify() || members.contains(&Some(false)) {
                AuditStatus::Violated
            } else if members.contains(&None) {
                AuditStatus::Undetermined
            } else {
                AuditStatus::Holds
            };
            Audit {
                implication,
                status,
                detail: format!("C={elements}, x={}, run {:?}", run.x, run.run()),
            }
        }
        _ => Audit { implication, status: AuditStatus::NotApplicable, detail: "no NMAX* antichain found".into() },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setlang::Evaluator;

    #[test]
    fn odd_pattern() {
        let ev = Evaluator::new(5000).unwrap();
        let odd = ev.parse_eval("odd").unwrap();
        let r = diagram_report(&odd, &PropertyParams::new(5000)).unwrap();
        assert!(r.get(Property::APcws).unwrap().is_proved());
        assert!(r.get(Property::Max).unwrap().is_refuted());
        assert_eq!(r.properties.len(), 17);
        assert!(r.consistent());
    }

    #[test]
    fn naturals_all_proved_or_positive() {
        let ev = Evaluator::new(5000).unwrap();
        let n = ev.parse_eval("N").unwrap();
        let r = diagram_report(&n, &PropertyParams::new(5000)).unwrap();
        for p in Property::ALL {
            let v = r.get(p).unwrap();
            assert!(
                v.is_proved() || v.direction() == Some(crate::verdict::Direction::For),
                "{p}: {v:?}"
            );
        }
        assert!(r.audits.iter().all(|a| a.status == AuditStatus::Holds));
    }
}
