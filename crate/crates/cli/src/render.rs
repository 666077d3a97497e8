use std::fmt::{Display, Write as _};

use clap::ValueEnum;
use popsort::classes::BasisVerdict;
use popsort::enumeration::SequenceReport;
use popsort::pattern::PatternBasis;
use popsort::preimage::{c0, c1, c2, preimage_histogram};
use popsort::verify::Check;
use popsort::{Permutation, Trace};
use serde::Serialize;
use serde_json::{json, Value};

use crate::TraceFormat;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct Output {
    text: String,
    json: Value,
    csv: String,
}

impl Output {
    pub fn new(text: impl Into<String>, json: Value, csv: String) -> Self {
        Output {
            text: text.into(),
            json,
            csv,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => format!(
                "{}\n",
                serde_json::to_string_pretty(&self.json).expect("serializable")
            ),
            Format::Csv => self.csv.clone(),
        }
    }
}

pub fn csv_rows<R, I, S>(header: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = I>,
    I: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

fn spaced(seq: &[u32]) -> String {
    seq.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn trace_text(t: &Trace) -> String {
    let mut out = format!("machine {}\ninput {}\n", t.machine, spaced(&t.input));
    for s in &t.steps {
        let stacks: Vec<String> = s
            .stacks
            .iter()
            .map(|c| format!("[{}]", spaced(c)))
            .collect();
        let _ = writeln!(
            out,
            "{:>3} {:>3}  {:<24} {:<20} out {}",
            s.i,
            s.value,
            s.op,
            stacks.join(" "),
            s.out_len
        );
    }
    if !t.final_ops.is_empty() {
        let _ = writeln!(out, "end {}", t.final_ops.join("+"));
    }
    out
}

pub fn outcome(
    output: &[u32],
    sorted: bool,
    trace: Option<&Trace>,
    trace_format: Option<TraceFormat>,
) -> Output {
    let verdict = if sorted { "sorted" } else { "unsorted" };
    let mut text = format!("{} {verdict}\n", spaced(output));
    match (trace, trace_format) {
        (Some(t), Some(TraceFormat::Text)) => text.push_str(&trace_text(t)),
        (Some(t), Some(TraceFormat::Json)) => {
            text.push_str(&serde_json::to_string_pretty(t).expect("serializable"));
            text.push('\n');
        }
        _ => {}
    }
    let mut value = json!({ "output": output, "sorted": sorted });
    if let Some(t) = trace {
        value["trace"] = serde_json::to_value(t).expect("serializable");
    }
    let csv = csv_rows(
        &["output", "sorted"],
        [[spaced(output), sorted.to_string()]],
    );
    Output::new(text, value, csv)
}

pub fn perm_list(label: &str, perms: &[Permutation]) -> Output {
    let text: String = perms.iter().map(|p| format!("{p}\n")).collect();
    let csv = csv_rows(&[label], perms.iter().map(|p| [p.to_string()]));
    Output::new(text, json!(perms), csv)
}

pub fn pair(from: &str, from_value: &str, to: &str, value: &(impl Display + Serialize)) -> Output {
    let csv = csv_rows(&[from, to], [[from_value.to_string(), value.to_string()]]);
    let mut map = serde_json::Map::new();
    map.insert(from.into(), Value::String(from_value.into()));
    map.insert(
        to.into(),
        serde_json::to_value(value).expect("serializable"),
    );
    Output::new(format!("{value}\n"), Value::Object(map), csv)
}

pub fn basis(b: &PatternBasis) -> Output {
    let lines = b.lines();
    let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
    let csv = csv_rows(&["pattern"], lines.iter().map(|l| [l]));
    Output::new(text, json!(lines), csv)
}

pub fn verdict(rho: &Permutation, v: &BasisVerdict) -> Output {
    let mut text = String::new();
    let mut rows = Vec::new();
    if let Some(b) = &v.basis {
        text.push_str("class\n");
        for l in b.lines() {
            let _ = writeln!(text, "{l}");
            rows.push(["basis".to_string(), l]);
        }
    }
    if let Some((sigma, pi)) = &v.witness {
        let _ = writeln!(text, "not a class\nsigma {sigma}\npi {pi}");
        rows.push(["sigma".into(), sigma.to_string()]);
        rows.push(["pi".into(), pi.to_string()]);
    }
    let mut value = serde_json::to_value(v).expect("serializable");
    value["pattern"] = json!(rho);
    Output::new(text, value, csv_rows(&["kind", "value"], rows))
}

pub fn report(r: &SequenceReport) -> Output {
    Output::new(
        r.text(),
        serde_json::to_value(r).expect("serializable"),
        r.csv(true),
    )
}

/// Text and CSV are the CSV itself; JSON is one object per row.
pub fn raw_csv(csv_text: &str) -> Output {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let header = reader.headers().expect("header row").clone();
    let rows: Vec<Value> = reader
        .records()
        .map(|r| {
            let r = r.expect("well-formed csv");
            let map = header
                .iter()
                .zip(r.iter())
                .map(|(k, v)| {
                    (
                        k.to_string(),
                        v.parse::<u64>().map_or_else(|_| json!(v), |n| json!(n)),
                    )
                })
                .collect();
            Value::Object(map)
        })
        .collect();
    Output::new(csv_text, Value::Array(rows), csv_text.to_string())
}

pub fn preimage_counts(max_n: usize) -> Output {
    let rows = (1..=max_n).map(|n| {
        let hist = preimage_histogram(n);
        let brute = |k: usize| hist.get(k).copied().unwrap_or(0).to_string();
        [
            n.to_string(),
            c0(n).to_string(),
            c1(n).to_string(),
            c2(n).to_string(),
            brute(0),
            brute(1),
            brute(2),
        ]
    });
    raw_csv(&csv_rows(
        &["n", "c0", "c1", "c2", "brute-c0", "brute-c1", "brute-c2"],
        rows,
    ))
}

pub fn checks(list: &[Check]) -> Output {
    let mut text = String::new();
    for c in list {
        let _ = writeln!(
            text,
            "{:<6} {:<12} {}: {}",
            c.status.to_string(),
            c.suite.name(),
            c.name,
            c.detail
        );
    }
    let failed = list.iter().filter(|c| c.failed()).count();
    let _ = writeln!(text, "{} checks, {failed} failed", list.len());
    let csv = csv_rows(
        &["suite", "name", "status", "detail"],
        list.iter().map(|c| {
            [
                c.suite.name().to_string(),
                c.name.clone(),
                c.status.to_string(),
                c.detail.clone(),
            ]
        }),
    );
    Output::new(text, json!(list), csv)
}
