use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Svg,
    Text,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Svg => "svg",
            Format::Text => "text",
        }
    }
}

/// Body of a command's result before the header is attached.
#[derive(Clone, Debug)]
pub enum Payload {
    Json(Value),
    Text(String),
    Dot(String),
    Svg(String),
}

impl Payload {
    pub fn format(&self) -> Format {
        match self {
            Payload::Json(_) => Format::Json,
            Payload::Text(_) => Format::Text,
            Payload::Dot(_) => Format::Dot,
            Payload::Svg(_) => Format::Svg,
        }
    }
}

/// Renders a payload with the configuration header in the comment syntax of its format.
pub fn render(cfg: &RunConfig, command: &str, payload: &Payload) -> String {
    let header = cfg.header();
    let weights: Vec<String> = cfg.system.weights.iter().map(|w| w.to_string()).collect();
    let lines = [
        format!("command: {command}"),
        format!("config_hash: {}", cfg.hash()),
        format!("radius: {}", cfg.radius),
        format!("weights: {}", weights.join(",")),
    ];
    match payload {
        Payload::Json(v) => {
            let mut h = header;
            h["command"] = json!(command);
            let doc = json!({"header": h, "data": v});
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        Payload::Text(body) => with_prefix(&lines, "# ", "", body),
        Payload::Dot(body) => with_prefix(&lines, "// ", "", body),
        Payload::Svg(body) => with_prefix(&lines, "<!-- ", " -->", body),
    }
}

fn with_prefix(lines: &[String], open: &str, close: &str, body: &str) -> String {
    let mut s = String::new();
    for l in lines {
        s.push_str(open);
        s.push_str(l);
        s.push_str(close);
        s.push('\n');
    }
    s.push_str(body);
    if !body.ends_with('\n') {
        s.push('\n');
    }
    s
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headers_use_the_comment_syntax_of_each_format() {
        let cfg = RunConfig::load(None, Some(2), None, None).unwrap();
        let json_text = render(&cfg, "kl", &Payload::Json(json!([1])));
        let doc: Value = serde_json::from_str(&json_text).unwrap();
        assert_eq!(doc["header"]["radius"], json!(2));
        assert_eq!(doc["header"]["weights"], json!([5, 1, 1]));
        assert_eq!(doc["data"], json!([1]));
        assert!(render(&cfg, "x", &Payload::Text("a".into())).starts_with("# command: x\n# config_hash: "));
        assert!(render(&cfg, "x", &Payload::Dot("digraph {}".into())).contains("// weights: 5,1,1\ndigraph"));
        assert!(render(&cfg, "x", &Payload::Svg("<svg/>".into())).starts_with("<!-- command: x -->"));
    }
}
