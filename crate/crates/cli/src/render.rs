use std::fmt::Write;
use std::str::FromStr;

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text" => Ok(Self::Text),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn exact(v: &Value) -> String {
    v.as_array()
        .map(|a| a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(";"))
        .unwrap_or_default()
}

pub fn count(v: &Value, format: Format) -> String {
    match format {
        Format::Json => json(v),
        Format::Csv => {
            let mut s = String::from("class,size,representative,contribution_decimal,contribution_exact\n");
            for c in v["classes"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    c["id"],
                    c["size"],
                    csv_field(c["representative"].as_str().unwrap_or("")),
                    csv_field(c["contribution_decimal"].as_str().unwrap_or("")),
                    csv_field(&exact(&c["contribution_exact"])),
                );
            }
            let _ = writeln!(s, "total,,,{},", v["total"].as_str().unwrap_or(""));
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "formula: {}", v["formula"].as_str().unwrap_or(""));
            let _ = writeln!(s, "sites: {}  edges: {}  |G|: {}", v["sites"], v["edges"], v["group_order"]);
            for c in v["classes"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    s,
                    "  class {:>3}  size {:>4}  rep {:<12} {}",
                    c["id"],
                    c["size"],
                    c["representative"].as_str().unwrap_or(""),
                    c["contribution_decimal"].as_str().unwrap_or(""),
                );
            }
            for w in v["warnings"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "warning: {}", w.as_str().unwrap_or(""));
            }
            let _ = writeln!(s, "total: {}", v["total"].as_str().unwrap_or(""));
            s
        }
    }
}

pub fn verify(v: &Value, format: Format) -> String {
    match format {
        Format::Json => json(v),
        Format::Csv => format!(
            "formula_total,oracle_total,match,instance_fingerprint\n{},{},{},{}\n",
            v["formula_total"].as_str().unwrap_or(""),
            v["oracle_total"].as_str().unwrap_or(""),
            v["match"],
            v["instance_fingerprint"].as_str().unwrap_or(""),
        ),
        Format::Text => format!(
            "formula: {}\noracle:  {}\nmatch:   {}\n",
            v["formula_total"].as_str().unwrap_or(""),
            v["oracle_total"].as_str().unwrap_or(""),
            v["match"],
        ),
    }
}

pub fn group_info(v: &Value, format: Format) -> String {
    match format {
        Format::Json => json(v),
        Format::Csv => {
            let mut s = String::from("class,size,representative,element_order,inverse_class\n");
            for c in v["classes"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    c["id"],
                    c["size"],
                    csv_field(c["representative"].as_str().unwrap_or("")),
                    c["element_order"],
                    c["inverse_class"],
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "group: {}", v["name"].as_str().unwrap_or(""));
            let _ = writeln!(s, "order: {}", v["group_order"]);
            let _ = writeln!(s, "center order: {}", v["center_order"]);
            let _ = writeln!(s, "classes: {}", v["classes"].as_array().map_or(0, Vec::len));
            let yes_no = |b: &Value| if b.as_bool() == Some(true) { "yes" } else { "no" };
            let _ = writeln!(s, "ambivalent: {}", yes_no(&v["ambivalent"]));
            let _ = writeln!(s, "quasi-ambivalent: {}", v["quasi_ambivalent"].as_str().unwrap_or(""));
            let out = if v["out_order"].is_null() { "unknown".to_string() } else { v["out_order"].to_string() };
            let _ = writeln!(s, "|Aut| = {}  |Inn| = {}  |Out| = {out}", v["aut_order"], v["inn_order"]);
            s
        }
    }
}
