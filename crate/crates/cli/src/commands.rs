use lds4_core::errata::{self, ledger};
use lds4_core::factor::{classify_ring, compose_lucas, factor_standard, verify_factorization, FactorError};
use lds4_core::polyalg::{kron_poly, standard_poly, IntPoly, StandardParams};
use lds4_core::salem::{
    binet_coefficients, enumerate_ldsalem, in_region, in_salem_strip, is_salem_standard, nearest_integer_sequence,
    region_bounds, scan_strip, smallness_condition, t_family_params, ScanRow, SalemError,
    Verdict,
};
use lds4_core::seqcore::{divisibility_check, LucasParams, SequenceWindow};
use lds4_oeis::{LookupStatus, OeisClient, SourcePolicy};
use num_bigint::BigInt;
use clap::ValueEnum;
use serde_json::{json, Value};

use crate::args::*;
use crate::output::*;

pub fn parameters(cli: &Cli) -> (String, Value) {
    match &cli.command {
        Command::Lucas(a) => ("lucas".into(), json!({"h": a.h, "k": a.k, "count": a.count})),
        Command::Compose(a) => (
            "compose".into(),
            json!({"h1": a.h1, "k1": a.k1, "h2": a.h2, "k2": a.k2, "count": a.count}),
        ),
        Command::Factor(a) => (
            "factor".into(),
            json!({"p": a.p, "q": a.q, "r": a.r, "verify_terms": a.verify_terms}),
        ),
        Command::Salem(SalemCommand::Check(a)) => ("salem check".into(), json!({"p": a.p, "q": a.q})),
        Command::Salem(SalemCommand::Generate(a)) => (
            "salem generate".into(),
            json!({"t": a.t, "p": a.p, "q": a.q, "count": a.count}),
        ),
        Command::Salem(SalemCommand::Region(a)) => ("salem region".into(), json!({"p": a.p})),
        Command::Salem(SalemCommand::Scan(a)) => (
            "salem scan".into(),
            json!({"p_min": a.p_min, "p_max": a.p_max, "region_only": a.region_only}),
        ),
        Command::Divcheck(a) => (
            "divcheck".into(),
            json!({"lucas": a.lucas, "terms": a.terms, "salem": a.salem, "standard": a.standard, "n": a.n}),
        ),
        Command::Oeis(a) => ("oeis".into(), json!({"terms": a.terms, "source": a.source.to_possible_value().map(|v| v.get_name().to_string())})),
        Command::Errata => ("errata".into(), json!({})),
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let (name, params) = parameters(cli);
    let prec = cli.precision;
    let mut report = match &cli.command {
        Command::Lucas(a) => lucas(a, params)?,
        Command::Compose(a) => compose(a, params)?,
        Command::Factor(a) => factor(a, prec, params)?,
        Command::Salem(SalemCommand::Check(a)) => salem_check(a, prec, params)?,
        Command::Salem(SalemCommand::Generate(a)) => salem_generate(a, prec, params)?,
        Command::Salem(SalemCommand::Region(a)) => salem_region(a, params)?,
        Command::Salem(SalemCommand::Scan(a)) => salem_scan(a, prec, params)?,
        Command::Divcheck(a) => divcheck(a, prec, params)?,
        Command::Oeis(a) => oeis(a, params)?,
        Command::Errata => errata_list(params),
    };
    report.command = name;
    Ok(report)
}

fn salem_error(e: SalemError) -> CliError {
    match e {
        SalemError::PrecisionExhausted { .. }
        | SalemError::RoundingUndecided { .. }
        | SalemError::SmallnessUndecided { .. } => CliError::precision(e),
        _ => CliError::validation(e),
    }
}

fn factor_error(e: FactorError) -> CliError {
    match e {
        FactorError::PrecisionExhausted { .. } => CliError::precision(e),
        _ => CliError::validation(e),
    }
}

fn lucas_params(h: i64, k: i64) -> Result<LucasParams, CliError> {
    LucasParams::new(h, k).map_err(CliError::validation)
}

fn terms_table(window: &SequenceWindow) -> Table {
    let mut t = Table::new(&["n", "term"]);
    for (i, v) in window.terms.iter().enumerate() {
        t.push(vec![(window.start_index + i as u64).to_string(), v.to_string()]);
    }
    t
}

fn lucas(a: &LucasArgs, params: Value) -> Result<Report, CliError> {
    let w = lucas_params(a.h, a.k)?.terms(a.count);
    let mut r = Report::new("lucas", params, json!({"start_index": 0, "terms": bigs(&w.terms)}));
    r.table = terms_table(&w);
    r.plain = vec![joined(&w.terms)];
    Ok(r)
}

fn compose(a: &ComposeArgs, params: Value) -> Result<Report, CliError> {
    let (x, y) = (lucas_params(a.h1, a.k1)?, lucas_params(a.h2, a.k2)?);
    let (sp, ic) = compose_lucas(x, y);
    let poly = standard_poly(&sp);
    let kron = kron_poly(&IntPoly::quadratic(a.h1.into(), a.k1.into()), &IntPoly::quadratic(a.h2.into(), a.k2.into()))
        .map_err(CliError::internal)?;
    let w = sp.recurrence().terms(a.count);
    let mut r = Report::new(
        "compose",
        params,
        json!({
            "p": big(&sp.p), "q": big(&sp.q), "r": big(&sp.r),
            "polynomial": poly.to_string(),
            "polynomial_matches_kronecker": poly == kron,
            "initial_terms": bigs(&ic.terms),
            "terms": bigs(&w.terms),
        }),
    );
    r.errata = vec![errata::LUCAS_COMPOSITION_QUARTIC, errata::COMPOSITION_DISPLAY_LINEAR_TERM];
    r.table = terms_table(&w);
    r.plain = vec![format!("params {sp}"), format!("polynomial {poly}"), joined(&w.terms)];
    Ok(r)
}

fn factor(a: &FactorArgs, prec: u32, params: Value) -> Result<Report, CliError> {
    let sp = StandardParams::from_i64(a.p, a.q, a.r).map_err(CliError::validation)?;
    let f = factor_standard(&sp, prec).map_err(factor_error)?;
    let mut pairs = Vec::new();
    let mut table = Table::new(&[
        "family", "h1_re", "h1_im", "k1_re", "k1_im", "h2_re", "h2_im", "k2_re", "k2_im", "ring_class",
        "polynomial_match", "sequence_match",
    ]);
    let mut plain = vec![format!("standard {sp}")];
    let mut all_verified = true;
    let mut second_family_fails = false;
    for pair in &f.pairs {
        let report = verify_factorization(&sp, pair, a.verify_terms, prec);
        let ring = classify_ring(&sp, pair);
        all_verified &= report.holds();
        if a.p == 0 && !report.sequence_match {
            second_family_fails = true;
        }
        let err_log2 = (!report.max_coefficient_error.is_zero()).then(|| report.max_coefficient_error.magnitude_exp());
        pairs.push(json!({
            "family": pair.family.as_str(),
            "first": {"h": cball(&pair.first.h), "k": cball(&pair.first.k)},
            "second": {"h": cball(&pair.second.h), "k": cball(&pair.second.k)},
            "ring_class": ring.as_str(),
            "verification": {
                "polynomial_match": report.polynomial_match,
                "sequence_match": report.sequence_match,
                "first_sequence_mismatch": report.first_sequence_mismatch,
                "max_coefficient_error_log2": err_log2,
            },
        }));
        let z = |c: &lds4_core::CBall| [c.re.midpoint().to_decimal(DIGITS), c.im.midpoint().to_decimal(DIGITS)];
        let mut row = vec![pair.family.as_str().to_string()];
        for c in [&pair.first.h, &pair.first.k, &pair.second.h, &pair.second.k] {
            row.extend(z(c));
        }
        row.extend([ring.as_str().into(), report.polynomial_match.to_string(), report.sequence_match.to_string()]);
        table.push(row);
        plain.push(format!(
            "{}: x^2 - ({:.12})x + ({:.12})  *  x^2 - ({:.12})x + ({:.12})  [{}; verified {}]",
            pair.family.as_str(),
            pair.first.h,
            pair.first.k,
            pair.second.h,
            pair.second.k,
            ring.as_str(),
            report.holds()
        ));
    }
    let diagnostics: Vec<&str> = f.diagnostics.iter().map(|d| d.as_str()).collect();
    let mut r = Report::new(
        "factor",
        params,
        json!({
            "polynomial": standard_poly(&sp).to_string(),
            "pairs": pairs,
            "diagnostics": diagnostics,
            "verified": all_verified,
        }),
    );
    r.precision = Some(f.precision);
    r.certification = if all_verified { Certification::Certified } else { Certification::Refuted };
    if a.p == 0 {
        r.errata.push(errata::ZERO_TRACE_SYSTEM_RHS);
        if second_family_fails {
            r.errata.push(errata::ZERO_TRACE_SECOND_FAMILY_TERMS);
        }
    }
    if !diagnostics.is_empty() {
        plain.push(format!("diagnostics: {}", diagnostics.join(", ")));
    }
    r.table = table;
    r.plain = plain;
    Ok(r)
}

fn verdict_cert(v: Verdict) -> Certification {
    match v {
        Verdict::Undecided => Certification::Undecided,
        _ => Certification::Certified,
    }
}

fn salem_check(a: &PqArgs, prec: u32, params: Value) -> Result<Report, CliError> {
    let salem = is_salem_standard(a.p, a.q);
    let mut result = json!({
        "salem": salem,
        "in_strip": in_salem_strip(a.p, a.q),
        "in_region": in_region(a.p, a.q),
    });
    let mut r = Report::new("salem check", params, Value::Null);
    let mut table = Table::new(&["p", "q", "salem", "alpha", "lambda", "smallness_all_n", "smallness_eventual"]);
    let mut plain = vec![format!("salem: {salem}")];
    if salem {
        let sq = binet_coefficients(a.p, a.q, prec).map_err(salem_error)?;
        let v = smallness_condition(&sq).map_err(salem_error)?;
        result["alpha"] = ball(&sq.alpha);
        result["gamma"] = cball(&sq.gamma);
        result["lambda"] = ball(sq.lambda());
        result["binet"] = Value::Array(sq.binet.iter().map(cball).collect());
        result["smallness"] = json!({
            "all_n_ge_1": v.holds_for_all_n_ge_1.as_str(),
            "eventual": v.holds_eventually.as_str(),
            "margin": ball(&v.margin),
            "threshold": v.threshold,
        });
        r.precision = Some(v.precision);
        r.certification = verdict_cert(v.holds_for_all_n_ge_1);
        r.errata = vec![errata::ALPHA_RECIPROCAL, errata::BINET_CLOSED_FORMS, errata::SMALLNESS_INEQUALITY_DIRECTION];
        table.push(vec![
            a.p.to_string(),
            a.q.to_string(),
            "true".into(),
            sq.alpha.midpoint().to_decimal(DIGITS),
            sq.lambda().midpoint().to_decimal(DIGITS),
            v.holds_for_all_n_ge_1.as_str().into(),
            v.holds_eventually.as_str().into(),
        ]);
        plain.push(format!("alpha = {:.20}", sq.alpha));
        plain.push(format!("lambda = {:.20}", sq.lambda()));
        plain.push(format!(
            "smallness: all n >= 1 {}, eventually {}",
            v.holds_for_all_n_ge_1.as_str(),
            v.holds_eventually.as_str()
        ));
    } else {
        table.push(vec![a.p.to_string(), a.q.to_string(), "false".into(), String::new(), String::new(), String::new(), String::new()]);
    }
    r.result = result;
    r.table = table;
    r.plain = plain;
    Ok(r)
}

fn salem_generate(a: &GenerateArgs, prec: u32, params: Value) -> Result<Report, CliError> {
    let (p, q) = match (a.t, a.p, a.q) {
        (Some(t), _, _) => t_family_params(t).map_err(salem_error)?,
        (None, Some(p), Some(q)) => (p, q),
        _ => return Err(CliError::validation("either --t or both --p and --q are required")),
    };
    let run = nearest_integer_sequence(p, q, a.count, prec).map_err(salem_error)?;
    let sq = binet_coefficients(p, q, prec).map_err(salem_error)?;
    let mut r = Report::new(
        "salem generate",
        params,
        json!({
            "p": p,
            "q": q,
            "start_index": run.window.start_index,
            "threshold": run.threshold,
            "terms": bigs(&run.window.terms),
            "alpha": ball(&sq.alpha),
            "lambda": ball(sq.lambda()),
            "smallness": {
                "all_n_ge_1": run.verdict.holds_for_all_n_ge_1.as_str(),
                "eventual": run.verdict.holds_eventually.as_str(),
                "margin": ball(&run.verdict.margin),
            },
        }),
    );
    r.precision = Some(run.precision);
    r.certification = Certification::Certified;
    r.errata = vec![errata::BINET_CLOSED_FORMS, errata::SMALLNESS_INEQUALITY_DIRECTION];
    if (p, q) == (7, 5) && run.window.start_index <= 5 && run.window.end_index() > 5 {
        r.errata.push(errata::T7_MISSING_TERM);
    }
    r.table = terms_table(&run.window);
    r.plain = vec![joined(&run.window.terms)];
    Ok(r)
}

fn salem_region(a: &RegionArgs, params: Value) -> Result<Report, CliError> {
    let (low, high) = region_bounds(a.p).map_err(salem_error)?;
    let qs: Vec<i64> = (-2 * a.p - 3..2 * a.p - 4).filter(|&q| in_region(a.p, q)).collect();
    let mut r = Report::new(
        "salem region",
        params,
        json!({"q_low": low.to_string(), "q_high": high.to_string(), "integer_q": qs}),
    );
    let mut t = Table::new(&["p", "q_low", "q_high"]);
    t.push(vec![a.p.to_string(), low.to_string(), high.to_string()]);
    r.table = t;
    r.plain = vec![format!("({low}, {high})")];
    Ok(r)
}

fn scan_row_json(row: &ScanRow) -> Value {
    json!({
        "p": row.p,
        "q": row.q,
        "in_region": row.in_region,
        "verdict": row.verdict.holds_for_all_n_ge_1.as_str(),
        "eventual": row.verdict.holds_eventually.as_str(),
        "margin": ball(&row.verdict.margin),
        "agreement": row.agreement.as_str(),
        "empirical_match": row.empirical_match,
    })
}

fn salem_scan(a: &ScanArgs, prec: u32, params: Value) -> Result<Report, CliError> {
    let rows = if a.region_only {
        enumerate_ldsalem(a.p_max, prec).map_err(salem_error)?.into_iter().filter(|r| r.p >= a.p_min).collect()
    } else {
        scan_strip(a.p_min.max(2), a.p_max, prec).map_err(salem_error)?
    };
    let findings: Vec<Value> = rows
        .iter()
        .filter(|r| r.agreement != lds4_core::salem::Agreement::Agree)
        .map(scan_row_json)
        .collect();
    let agree = rows.len() - findings.len();
    let mut table = Table::new(&["p", "q", "in_region", "verdict", "eventual", "margin", "agreement", "empirical_match"]);
    for row in &rows {
        table.push(vec![
            row.p.to_string(),
            row.q.to_string(),
            row.in_region.to_string(),
            row.verdict.holds_for_all_n_ge_1.as_str().into(),
            row.verdict.holds_eventually.as_str().into(),
            row.verdict.margin.midpoint().to_decimal(12),
            row.agreement.as_str().into(),
            row.empirical_match.map(|b| b.to_string()).unwrap_or_default(),
        ]);
    }
    let mut r = Report::new(
        "salem scan",
        params,
        json!({
            "cells": rows.len(),
            "agreements": agree,
            "findings": findings,
            "rows": rows.iter().map(scan_row_json).collect::<Vec<_>>(),
        }),
    );
    r.precision = rows.iter().map(|r| r.verdict.precision).max();
    r.certification = if rows.iter().any(|r| r.verdict.holds_for_all_n_ge_1 == Verdict::Undecided) {
        Certification::Undecided
    } else {
        Certification::Certified
    };
    r.errata = vec![errata::BINET_CLOSED_FORMS, errata::SMALLNESS_INEQUALITY_DIRECTION];
    r.plain = vec![format!("{} cells, {} agree, {} findings", rows.len(), agree, rows.len() - agree)];
    r.plain.extend(rows.iter().map(|row| {
        format!(
            "p={} q={} region={} verdict={} {}",
            row.p,
            row.q,
            row.in_region,
            row.verdict.holds_for_all_n_ge_1.as_str(),
            row.agreement.as_str()
        )
    }));
    r.table = table;
    Ok(r)
}

fn parse_bigs(items: &[String]) -> Result<Vec<BigInt>, CliError> {
    items
        .iter()
        .map(|s| s.trim().parse::<BigInt>().map_err(|_| CliError::validation(format!("not an integer: {s:?}"))))
        .collect()
}

fn divcheck(a: &DivcheckArgs, prec: u32, params: Value) -> Result<Report, CliError> {
    let mut cert = Certification::Exact;
    let mut precision = None;
    let window = if let Some(hk) = &a.lucas {
        let [h, k] = hk[..] else {
            return Err(CliError::validation("--lucas expects h,k"));
        };
        lucas_params(h, k)?.terms(a.n as usize + 1)
    } else if let Some(terms) = &a.terms {
        SequenceWindow::new(0, parse_bigs(terms)?).map_err(CliError::validation)?
    } else if let Some(t) = a.salem {
        let (p, q) = t_family_params(t).map_err(salem_error)?;
        let run = nearest_integer_sequence(p, q, a.n, prec).map_err(salem_error)?;
        cert = Certification::Certified;
        precision = Some(run.precision);
        run.window
    } else if let Some(pqr) = &a.standard {
        let [p, q, r] = pqr[..] else {
            return Err(CliError::validation("--standard expects p,q,r"));
        };
        let sp = StandardParams::from_i64(p, q, r).map_err(CliError::validation)?;
        sp.recurrence().terms(a.n as usize + 1)
    } else {
        return Err(CliError::validation("no sequence source given"));
    };
    let violations = divisibility_check(&window);
    let mut r = Report::new(
        "divcheck",
        params,
        json!({
            "start_index": window.start_index,
            "terms": bigs(&window.terms),
            "violations": violations,
            "divisibility_sequence": violations.is_empty(),
        }),
    );
    r.certification = cert;
    r.precision = precision;
    let mut t = Table::new(&["m", "n"]);
    for (m, n) in &violations {
        t.push(vec![m.to_string(), n.to_string()]);
    }
    r.table = t;
    r.plain = if violations.is_empty() {
        vec!["no violations".into()]
    } else {
        violations.iter().map(|(m, n)| format!("violation: term {m} does not divide term {n}")).collect()
    };
    Ok(r)
}

fn oeis(a: &OeisArgs, params: Value) -> Result<Report, CliError> {
    let terms = parse_bigs(&a.terms)?;
    let policy = match a.source {
        SourceArg::CacheFirst => SourcePolicy::CacheFirst,
        SourceArg::CacheOnly => SourcePolicy::CacheOnly,
        SourceArg::Live => SourcePolicy::LiveOnly,
        SourceArg::Fixture => SourcePolicy::Fixture,
    };
    let client = OeisClient::live(a.cache_dir.clone()).map_err(CliError::internal)?;
    let out = client.lookup(&terms, policy).map_err(|e| match e {
        lds4_oeis::OeisError::TooFewTerms(_) => CliError::validation(e),
        _ => CliError::internal(e),
    })?;
    let matches: Vec<Value> = out
        .matches
        .iter()
        .map(|m| json!({"sequence_id": m.sequence_id.as_str(), "name": m.name, "matched_prefix_length": m.matched_prefix_length}))
        .collect();
    let result = json!({
        "query": out.query,
        "status": out.status.as_str(),
        "reason": out.status.reason(),
        "source": out.source.map(|s| s.as_str()),
        "matches": matches,
    });
    let mut r = Report::new("oeis", params, result);
    r.certification = Certification::NotApplicable;
    let mut t = Table::new(&["sequence_id", "name", "matched_prefix_length", "source"]);
    let source = out.source.map(|s| s.as_str()).unwrap_or("");
    for m in &out.matches {
        t.push(vec![m.sequence_id.to_string(), m.name.clone(), m.matched_prefix_length.to_string(), source.into()]);
    }
    r.table = t;
    r.plain = match &out.status {
        LookupStatus::Unavailable(reason) => vec![format!("unavailable: {reason}")],
        LookupStatus::NoMatches => vec!["no matches".into()],
        LookupStatus::Found => out.matches.iter().map(|m| format!("{} {}", m.sequence_id, m.name)).collect(),
    };
    if matches!(out.status, LookupStatus::Unavailable(_)) {
        r.exit_code = ErrorKind::Unavailable.exit_code();
    }
    Ok(r)
}

fn errata_list(params: Value) -> Report {
    let entries: Vec<Value> = ledger()
        .iter()
        .map(|e| json!({"id": e.id, "topic": e.topic, "printed": e.printed, "implemented": e.implemented}))
        .collect();
    let mut r = Report::new("errata", params, json!({"entries": entries}));
    r.certification = Certification::NotApplicable;
    r.errata = ledger().iter().map(|e| e.id).collect();
    let mut t = Table::new(&["id", "topic", "printed", "implemented"]);
    for e in ledger() {
        t.push(vec![e.id.into(), e.topic.into(), e.printed.into(), e.implemented.into()]);
    }
    r.table = t;
    r.plain = ledger().iter().map(|e| format!("{}: {}", e.id, e.topic)).collect();
    r
}
