//! `classify` and `scan`.

use biquotient::bazaikin::{self, BazParams};
use biquotient::eschenburg::{self, EschClassification, EschParams};
use biquotient::torus::{self, TorusAction};
use biquotient::Error;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::report::{exact_int, Report, Row};
use crate::{CliError, Family, Outcome, ScanFamily};

fn row(value: Value) -> Row {
    match value {
        Value::Object(m) => m,
        _ => unreachable!("rows are objects"),
    }
}

fn outcome(
    command: String,
    config: RunConfig,
    summary: Map<String, Value>,
    results: Vec<Row>,
) -> Outcome {
    Outcome {
        report: Report {
            command,
            config,
            summary,
            results,
            witnesses: Vec::new(),
            timing: None,
        },
        failures: Vec::new(),
    }
}

pub fn esch_params(p: [i64; 3], q: [i64; 3]) -> Result<EschParams, CliError> {
    Ok(EschParams::new(p, q)?)
}

/// `None` when the action is neither free nor an orbifold of type (†).
fn esch_class(params: &EschParams) -> Result<Option<EschClassification>, CliError> {
    match eschenburg::classify_curvature(params) {
        Ok(c) => Ok(Some(c)),
        Err(Error::NotFree(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn esch_row(params: &EschParams) -> Result<Row, CliError> {
    let cls = esch_class(params)?;
    Ok(row(json!({
        "family": "eschenburg",
        "p": params.p(),
        "q": params.q(),
        "free": eschenburg::is_free(params),
        "class": cls.as_ref().map(|c| c.class.as_str()),
        "representative_p": cls.as_ref().map(|c| c.representative.p()),
        "representative_q": cls.as_ref().map(|c| c.representative.q()),
        "note": cls.as_ref().map(|c| c.note.clone()).unwrap_or_else(|| "not free".into()),
    })))
}

fn baz_row(params: &BazParams) -> Result<Row, CliError> {
    let free = bazaikin::is_free(params)?;
    let cls = if free {
        Some(bazaikin::classify_curvature(params)?)
    } else {
        None
    };
    let inv = bazaikin::invariants(params).ok();
    Ok(row(json!({
        "family": "bazaikin",
        "q": params.q(),
        "free": free,
        "class": cls.as_ref().map(|c| c.class.as_str()),
        "quasi_positive": cls.as_ref().map(|c| c.quasi_positive),
        "boundary_n": cls.as_ref().and_then(|c| c.boundary_n),
        "s": inv.map(|i| exact_int(i.s)),
        "p1": inv.map(|i| exact_int(i.p1)),
        "note": cls.as_ref().map(|c| c.note.clone()).unwrap_or_else(|| "not free".into()),
    })))
}

fn torus_row(action: &TorusAction) -> Row {
    let orders: Vec<u64> = torus::isotropy_table(action)
        .iter()
        .map(|r| r.order)
        .collect();
    row(json!({
        "family": "torus",
        "action": action.to_string(),
        "free": torus::is_free(action),
        "verdict": torus::curvature_verdict(action),
        "kernel": torus::ineffective_kernel(action),
        "isotropy": orders,
    }))
}

pub fn classify(family: &Family, command: String, config: RunConfig) -> Result<Outcome, CliError> {
    let r = match family {
        Family::Eschenburg { p, q } => esch_row(&esch_params(p.array("p")?, q.array("q")?)?)?,
        Family::Bazaikin { q } => baz_row(&BazParams::new(q.array("q")?)?)?,
        Family::Torus(t) => torus_row(&t.action()?),
    };
    Ok(outcome(command, config, Map::new(), vec![r]))
}

fn bump(summary: &mut Map<String, Value>, key: &str) {
    let n = summary.get(key).and_then(Value::as_u64).unwrap_or(0);
    summary.insert(key.to_string(), Value::from(n + 1));
}

fn class_matches(r: &Row, class: &Option<String>) -> bool {
    class
        .as_ref()
        .is_none_or(|c| r.get("class").and_then(Value::as_str) == Some(c.as_str()))
}

pub fn scan(family: &ScanFamily, config: RunConfig) -> Result<Outcome, CliError> {
    match family {
        ScanFamily::Eschenburg {
            max,
            boundary,
            class,
        } => scan_eschenburg(*max, *boundary, class, config),
        ScanFamily::Bazaikin {
            family_n,
            max,
            class,
            s,
        } => scan_bazaikin(*family_n, *max, class, *s, config),
        ScanFamily::Torus { ab_max, c_max } => {
            scan_torus(*ab_max, c_max.unwrap_or(*ab_max), config)
        }
    }
}

fn sorted_triples(max: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for a in -max..=max {
        for b in a..=max {
            for c in b..=max {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn scan_eschenburg(
    max: i64,
    boundary: bool,
    class: &Option<String>,
    config: RunConfig,
) -> Result<Outcome, CliError> {
    if max < 0 {
        return Err(CliError::Invalid("--max must be non-negative".into()));
    }
    let mut command = format!("scan eschenburg --max {max}");
    if boundary {
        command.push_str(" --boundary");
    }
    if let Some(c) = class {
        command.push_str(&format!(" --class {c}"));
    }
    let mut results = Vec::new();
    let mut summary = Map::new();
    if boundary {
        let (e0, w11) = (eschenburg::e0(), eschenburg::w11());
        let mut reps: Vec<EschParams> = Vec::new();
        for params in eschenburg::boundary_actions(max) {
            let mut r = esch_row(&params)?;
            let eq = if params.equivalent(&e0) {
                Value::from("E0")
            } else if params.equivalent(&w11) {
                Value::from("W11")
            } else {
                Value::Null
            };
            r.insert("equivalent_to".into(), eq);
            if !class_matches(&r, class) {
                continue;
            }
            if !reps.iter().any(|x| x.equivalent(&params)) {
                reps.push(params);
            }
            results.push(r);
        }
        summary.insert("actions".into(), Value::from(results.len()));
        summary.insert("equivalence_classes".into(), Value::from(reps.len()));
        summary.insert(
            "class_representatives".into(),
            Value::from(reps.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
        );
    } else {
        let triples = sorted_triples(max);
        for p in &triples {
            for q in &triples {
                if p.iter().sum::<i64>() != q.iter().sum::<i64>() {
                    continue;
                }
                let params = esch_params(*p, *q)?;
                if esch_class(&params)?.is_none() {
                    continue;
                }
                let r = esch_row(&params)?;
                if !class_matches(&r, class) {
                    continue;
                }
                bump(&mut summary, r["class"].as_str().unwrap_or("NONE"));
                results.push(r);
            }
        }
        summary.insert("tuples".into(), Value::from(results.len()));
    }
    Ok(outcome(command, config, summary, results))
}

fn scan_bazaikin(
    family_n: Option<i64>,
    max: Option<i64>,
    class: &Option<String>,
    s: Option<i64>,
    config: RunConfig,
) -> Result<Outcome, CliError> {
    let mut summary = Map::new();
    let mut results = Vec::new();
    let filters = |r: &Row| {
        class_matches(r, class) && s.is_none_or(|s| r.get("s").and_then(Value::as_i64) == Some(s))
    };
    let mut suffix = String::new();
    if let Some(c) = class {
        suffix.push_str(&format!(" --class {c}"));
    }
    if let Some(s) = s {
        suffix.push_str(&format!(" --s {s}"));
    }
    let command = match (family_n, max) {
        (Some(n), _) => {
            let table = bazaikin::family_table(n)?;
            for fr in &table.rows {
                let mut r = row(json!({ "n": fr.n }));
                r.extend(baz_row(&BazParams::new([1, 1, 1, fr.n, -fr.n])?)?);
                if filters(&r) {
                    results.push(r);
                }
            }
            summary.insert("rows".into(), Value::from(results.len()));
            summary.insert(
                "all_s_one".into(),
                Value::from(table.rows.iter().all(|r| r.s == 1)),
            );
            summary.insert("p1_distinct".into(), Value::from(table.p1_distinct));
            format!("scan bazaikin --family-n {n}{suffix}")
        }
        (None, Some(max)) => {
            let odd: Vec<i64> = (-max..=max).filter(|x| x % 2 != 0).collect();
            let mut idx = [0usize; 5];
            // non-decreasing 5-tuples over the odd values
            fn rec(
                odd: &[i64],
                start: usize,
                depth: usize,
                idx: &mut [usize; 5],
                out: &mut Vec<[i64; 5]>,
            ) {
                if depth == 5 {
                    out.push(idx.map(|i| odd[i]));
                    return;
                }
                for i in start..odd.len() {
                    idx[depth] = i;
                    rec(odd, i, depth + 1, idx, out);
                }
            }
            let mut tuples = Vec::new();
            rec(&odd, 0, 0, &mut idx, &mut tuples);
            for q in tuples {
                let params = BazParams::new(q)?;
                if !bazaikin::is_free(&params)? {
                    continue;
                }
                let r = baz_row(&params)?;
                if filters(&r) {
                    bump(&mut summary, r["class"].as_str().unwrap_or("NONE"));
                    results.push(r);
                }
            }
            summary.insert("tuples".into(), Value::from(results.len()));
            format!("scan bazaikin --max {max}{suffix}")
        }
        (None, None) => {
            return Err(CliError::Invalid(
                "scan bazaikin needs --family-n or --max".into(),
            ))
        }
    };
    Ok(outcome(command, config, summary, results))
}

fn scan_torus(ab_max: i64, c_max: i64, config: RunConfig) -> Result<Outcome, CliError> {
    let mut actions = vec![TorusAction::L];
    for a in -ab_max..=ab_max {
        for b in -ab_max..=ab_max {
            actions.push(TorusAction::Ab { a, b });
        }
    }
    actions.extend((-c_max..=c_max).map(|c| TorusAction::C { c }));
    let results: Vec<Row> = actions.iter().map(torus_row).collect();
    let free: Vec<String> = actions
        .iter()
        .filter(|a| torus::is_free(a))
        .map(|a| a.to_string())
        .collect();
    let mut summary = Map::new();
    summary.insert("actions".into(), Value::from(results.len()));
    summary.insert("free_actions".into(), Value::from(free));
    Ok(outcome(
        format!("scan torus --ab-max {ab_max} --c-max {c_max}"),
        config,
        summary,
        results,
    ))
}
