//! Human-readable tables.

use std::fmt::Write;

use normideal::closure::ClosureReport;
use normideal::format::RingDescription;
use normideal::normality::{FactorizationCertificate, NormalityCertificate, NormalityThreshold, PowerVerdict};
use normideal::poly::{DependenceCheck, TermOrder};
use normideal::syntax::format_polynomial;
use normideal::MonomialIdeal;

fn ring_line(weights: &[u64], names: &[String]) -> String {
    names
        .iter()
        .zip(weights)
        .map(|(n, w)| format!("deg {n} = {w}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn ideal(title: &str, ideal: &MonomialIdeal, names: &[String]) -> String {
    let mut out = String::new();
    let w = ideal.ring();
    let _ = writeln!(out, "{title}  ({})", ring_line(w.weights(), names));
    let plural = if ideal.len() == 1 { "" } else { "s" };
    let _ = writeln!(out, "{} minimal generator{plural}", ideal.len());
    let shown: Vec<String> = ideal.generators().iter().map(|g| g.display(names).to_string()).collect();
    let width = shown.iter().map(|s| s.len()).max().unwrap_or(0);
    for (g, s) in ideal.generators().iter().zip(&shown) {
        let deg = w.degree(g).map(|d| d.value()).unwrap_or(0);
        let _ = writeln!(out, "  {s:<width$}  deg {deg}");
    }
    out
}

pub fn power_check(alpha: u64, p: u64, verdict: &PowerVerdict, ring: &RingDescription) -> String {
    match verdict {
        PowerVerdict::Equal => format!("(R_>={alpha})^{p} = R_>={}\n", p * alpha),
        PowerVerdict::Counterexample(m) => format!(
            "(R_>={alpha})^{p} != R_>={}: {} is missing from the power\n",
            p * alpha,
            m.display(&ring.variables)
        ),
    }
}

pub fn normal_check(th: &NormalityThreshold, cert: &NormalityCertificate) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "threshold mA = {} * {} = {}",
        th.m, th.lcm_weight, th.threshold
    );
    for level in &cert.powers {
        let verdict = if level.verdict.is_equal() { "equal" } else { "NOT equal" };
        let _ = writeln!(
            out,
            "p = {}: I^{} vs R_>={}: {verdict}, {} generators factored",
            level.p,
            level.p,
            level.p * th.threshold,
            level.factorizations.len()
        );
    }
    out
}

pub fn decomposition(cert: &FactorizationCertificate, threshold: u64, names: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} = {}",
        cert.input.display(names),
        cert.factors
            .iter()
            .map(|f| format!("({})", f.display(names)))
            .collect::<Vec<_>>()
            .join(" * ")
    );
    for f in &cert.factors {
        let deg = cert.ring.degree(f).map(|d| d.value()).unwrap_or(0);
        let _ = writeln!(out, "  {}  deg {deg} >= {threshold}", f.display(names));
    }
    out
}

pub fn closure(report: &ClosureReport, names: &[String]) -> String {
    let mut out = ideal("integral closure", &report.closure, names);
    if report.integrally_closed {
        out.push_str("the ideal is integrally closed\n");
    } else {
        for c in &report.certificates {
            let _ = writeln!(
                out,
                "added {}  (its {}th power lies in I^{})",
                c.monomial.display(names),
                c.oracle_n,
                c.oracle_n
            );
        }
    }
    out
}

pub fn witness(chk: &DependenceCheck, names: &[String], order: &TermOrder) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "remainder modulo the relation: {}",
        format_polynomial(&chk.remainder, names, order)
    );
    for (i, ok) in chk.coefficient_membership.iter().enumerate() {
        let _ = writeln!(
            out,
            "a_{} in I^{}: {}",
            i + 1,
            i + 1,
            if *ok { "yes" } else { "no" }
        );
    }
    let _ = writeln!(out, "{}", if chk.holds() { "dependence holds" } else { "dependence fails" });
    out
}
