use felab_core::embed::Chain;
use felab_core::largeness::{AtlasReport, LargenessReport};
use felab_core::{SetExpr, Verdict};

/// Verdict line plus certificate or evidence.
pub fn verdict(v: &Verdict) -> String {
    match v {
        Verdict::BoundedEvidence { bound, .. } => match v.certificate() {
            Some(c) => format!("{}: {bound}; {c}", v.label()),
            None => format!("{}: {bound}", v.label()),
        },
        _ => match v.certificate() {
            Some(c) => format!("{}: {c}", v.label()),
            None => v.label().to_string(),
        },
    }
}

/// At most `limit` values, then a count of the rest.
pub fn abbreviate(v: &[u64], limit: usize) -> String {
    let shown: Vec<String> = v.iter().take(limit).map(|x| x.to_string()).collect();
    if v.len() > limit {
        format!("{} ... ({} total)", shown.join(" "), v.len())
    } else {
        shown.join(" ")
    }
}

pub fn report(r: &LargenessReport) -> String {
    let mut s = format!("{} (H={}, {:?})\n", r.expr, r.horizon, r.exactness);
    let width = r.properties.iter().map(|p| p.name.len()).max().unwrap_or(0);
    for p in &r.properties {
        let body = match (&p.verdict, &p.note) {
            (Some(v), _) => verdict(v),
            (None, Some(n)) => n.clone(),
            (None, None) => String::new(),
        };
        s.push_str(&format!("  {:<width$}  {body}\n", p.name));
        if p.verdict.is_some() && !p.bounds.is_empty() {
            s.push_str(&format!("  {:<width$}  [{}]\n", "", p.bounds));
        }
    }
    s.push_str("audits:\n");
    for a in &r.audits {
        s.push_str(&format!("  {:?}: {} ({})\n", a.status, a.implication, a.detail));
    }
    s
}

pub fn chain(c: &Chain, verified: Option<bool>) -> String {
    let mut s = String::new();
    for (i, level) in c.levels.iter().enumerate() {
        s.push_str(&format!("A_{i} = {level} ...\n"));
    }
    for (i, (x, y)) in c.pairs.iter().enumerate() {
        s.push_str(&format!("F_{i} = {{{x},{y}}}\n"));
    }
    s.push_str(&format!("{} refutations logged\n", c.refutations.len()));
    match verified {
        Some(true) => s.push_str("verification passed\n"),
        Some(false) => s.push_str("verification FAILED\n"),
        None => {}
    }
    s
}

pub fn atlas(r: &AtlasReport) -> String {
    let mode = if r.exhaustive { "all" } else { "sampled" };
    format!(
        "divisor poset on 1..{}\n\
         up-closed sets: {} (brute force {})\n\
         down-closed sets: {}\n\
         complements match: {}\n\
         subsets checked: {} ({mode})\n\
         violations: MAX {}, MAX* {}, duality {}\n\
         {}\n",
        r.n,
        r.up_closed,
        r.up_closed_brute_force,
        r.down_closed,
        r.complement_bijection,
        r.subsets_checked,
        r.max_violations,
        r.maxstar_violations,
        r.duality_violations,
        if r.passed() { "passed" } else { "FAILED" }
    )
}

pub fn tree(e: &SetExpr) -> String {
    format!("{e:#?}\n")
}
