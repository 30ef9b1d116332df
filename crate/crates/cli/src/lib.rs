//! Command implementations behind the `consprop` binary. Each command returns
//! its exit code and output instead of printing, so tests can drive them.

use std::fs;
use std::path::{Path, PathBuf};

use consprop::certificate::certify;
use consprop::codec::{cod_decode, cod_encode, parse_codec_literal, CodFlag, CodecLiteral};
use consprop::forcing::is_condition;
use consprop::logic::parse_literal_set;
use consprop::scenario::{build, Build, Scenario};
use consprop::term_model::refute_oror;

/// Scenarios shipped with the binary, addressable as `bundled:<name>`.
pub const BUNDLED: &[(&str, &str)] = &[
    ("exactly-one-p", include_str!("../../../scenarios/exactly-one-p.json")),
    ("two-sorts", include_str!("../../../scenarios/two-sorts.json")),
    ("mini-certificate", include_str!("../../../scenarios/mini-certificate.json")),
];

pub const DEMOS: &[&str] = &["oror-counterexample", "mini-certificate"];

pub const DEFAULT_K: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Output { code, stdout: String::new(), stderr }
    }
}

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Loads `bundled:<name>` or a scenario file. The second component is the
/// directory relative output paths resolve against.
pub fn load_scenario(source: &str) -> Result<(Scenario, Option<PathBuf>), String> {
    if let Some(name) = source.strip_prefix("bundled:") {
        let text = bundled(name).ok_or_else(|| {
            let names: Vec<&str> = BUNDLED.iter().map(|(n, _)| *n).collect();
            format!("{source}: no bundled scenario `{name}` (have: {})", names.join(", "))
        })?;
        return Scenario::from_json(text, name).map(|s| (s, None)).map_err(|e| format!("{source}: {e}"));
    }
    let path = Path::new(source);
    let text = fs::read_to_string(path).map_err(|e| format!("{source}: {e}"))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    let sc = Scenario::from_json(&text, stem).map_err(|e| format!("{source}: {e}"))?;
    Ok((sc, Some(path.parent().map(Path::to_path_buf).unwrap_or_default())))
}

/// Exit 0 when `condition` is realized by some class member, 1 when not,
/// 2 on input errors.
pub fn cmd_check(scenario: &str, condition: &str) -> Output {
    let sc = match load_scenario(scenario) {
        Ok((sc, _)) => sc,
        Err(e) => return Output::fail(2, format!("error: {e}\n")),
    };
    let p = match parse_literal_set(condition, &sc.sig) {
        Ok(p) => p,
        Err(e) => return Output::fail(2, format!("error: condition: {e}\n")),
    };
    let oracle = sc.oracle();
    match is_condition(&p, &oracle) {
        Ok(true) => Output::ok("IN P_A\n".into()),
        Ok(false) => Output { code: 1, stdout: "NOT IN P_A\n".into(), stderr: String::new() },
        Err(e) => Output::fail(2, format!("error: {e}\n")),
    }
}

/// Artifact files written by `build`, in order.
pub const ARTIFACTS: &[&str] = &["sigma.txt", "trace.txt", "model.txt", "summary.txt"];

pub fn artifacts(sc: &Scenario, b: &Build) -> Vec<(&'static str, String)> {
    vec![
        (ARTIFACTS[0], b.sigma_text(&sc.sig)),
        (ARTIFACTS[1], b.trace_text(&sc.sig)),
        (ARTIFACTS[2], b.model_text(&sc.sig)),
        (ARTIFACTS[3], b.summary.clone()),
    ]
}

/// Builds the term model. With an output directory (from `out` or the
/// scenario's `output.dir`) the artifacts go to files and the summary to
/// stdout; otherwise everything goes to stdout.
pub fn cmd_build(scenario: &str, out: Option<&Path>) -> Output {
    let (sc, base) = match load_scenario(scenario) {
        Ok(x) => x,
        Err(e) => return Output::fail(2, format!("error: {e}\n")),
    };
    let b = match build(&sc) {
        Ok(b) => b,
        Err(e) => return Output::fail(1, format!("error: {e}\n")),
    };
    let dir = out
        .map(Path::to_path_buf)
        .or_else(|| sc.output_dir.as_ref().map(|d| base.as_deref().unwrap_or(Path::new("")).join(d)));
    let code = if b.ok { 0 } else { 1 };
    let files = artifacts(&sc, &b);
    match dir {
        Some(dir) => {
            if let Err(e) = fs::create_dir_all(&dir) {
                return Output::fail(2, format!("error: {}: {e}\n", dir.display()));
            }
            for (name, text) in &files {
                let p = dir.join(name);
                if let Err(e) = fs::write(&p, text) {
                    return Output::fail(2, format!("error: {}: {e}\n", p.display()));
                }
            }
            Output { code, stdout: b.summary, stderr: String::new() }
        }
        None => {
            let mut s = String::new();
            for (name, text) in &files {
                s.push_str(&format!("== {name} ==\n{text}"));
            }
            Output { code, stdout: s, stderr: String::new() }
        }
    }
}

/// Decodes a code literal, or encodes a set literal.
pub fn cmd_decode(literal: &str) -> Output {
    match parse_codec_literal(literal) {
        Err(e) => Output::fail(2, format!("error: {e}\n")),
        Ok(CodecLiteral::Code(c)) => {
            let d = cod_decode(&c);
            Output::ok(format!("{}\nack:{}\n{}\n", d.set, d.set.ack(), d.flag))
        }
        Ok(CodecLiteral::Set(s)) => {
            let c = cod_encode(&s);
            Output::ok(format!("{}\nack:{}\n{}\ncode: {}\nbits: {}\n", s, s.ack(), CodFlag::Valid, c, c.to_bits()))
        }
    }
}

pub fn cmd_demo(name: &str, k: Option<usize>) -> Output {
    match name {
        "oror-counterexample" => match refute_oror(k.unwrap_or(DEFAULT_K)) {
            Ok(r) => Output { code: if r.ok { 0 } else { 1 }, stdout: r.text, stderr: String::new() },
            Err(e) => Output::fail(2, format!("error: {e}\n")),
        },
        "mini-certificate" => {
            let (sc, _) = load_scenario("bundled:mini-certificate").expect("bundled scenario is valid");
            let b = match build(&sc) {
                Ok(b) => b,
                Err(e) => return Output::fail(1, format!("error: {e}\n")),
            };
            match certify(&sc, &b) {
                Ok(r) => Output {
                    code: if r.ok && b.ok { 0 } else { 1 },
                    stdout: format!("{}\n{}", b.summary, r.text),
                    stderr: String::new(),
                },
                Err(e) => Output::fail(1, format!("error: {e}\n")),
            }
        }
        _ => Output::fail(2, format!("error: unknown demo `{name}` (have: {})\n", DEMOS.join(", "))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_names() {
        for (name, _) in BUNDLED {
            assert!(load_scenario(&format!("bundled:{name}")).is_ok());
        }
        assert!(load_scenario("bundled:nosuch").is_err());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(cmd_decode("wfe:{}").stdout, "{}\nack:0\nvalid\n");
        assert_eq!(cmd_decode("wfe:{(0,1)}").stdout, "{{}}\nack:1\nvalid\n");
        let o = cmd_decode("wfe:{(0,0)}");
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("{}\nack:0\nIllFounded"));
        assert_eq!(cmd_decode("wfe:{(0,").code, 2);
    }
}
