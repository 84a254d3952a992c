use std::ffi::OsString;

use anyhow::{bail, Context, Result};

const SUBCOMMANDS: [&str; 5] = ["gen", "verify", "run", "decode", "bounds"];

/// Splice values from `--config FILE` into the argument list right after the
/// subcommand name. Flags given on the command line come later and win.
pub fn merge_args(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let strs: Vec<Option<&str>> = argv.iter().map(|a| a.to_str()).collect();
    let mut path = None;
    for (i, a) in strs.iter().enumerate() {
        match a {
            Some("--config") => {
                path = strs.get(i + 1).copied().flatten().map(str::to_string);
            }
            Some(s) if s.starts_with("--config=") => {
                path = Some(s["--config=".len()..].to_string());
            }
            _ => {}
        }
    }
    let Some(path) = path else {
        return Ok(argv);
    };
    let Some(sub_at) = strs
        .iter()
        .position(|a| a.is_some_and(|s| SUBCOMMANDS.contains(&s)))
    else {
        return Ok(argv);
    };
    let sub = strs[sub_at].unwrap();
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {path}"))?;
    let table: toml::Table = text.parse().with_context(|| format!("parsing {path}"))?;

    let mut extra = Vec::new();
    for (key, value) in &table {
        match value {
            toml::Value::Table(t) if key == sub => {
                for (k, v) in t {
                    push_flag(&mut extra, k, v)?;
                }
            }
            toml::Value::Table(_) => {}
            v => push_flag(&mut extra, key, v)?,
        }
    }
    let mut out: Vec<OsString> = argv[..=sub_at].to_vec();
    out.extend(extra.into_iter().map(OsString::from));
    out.extend(argv[sub_at + 1..].iter().cloned());
    Ok(out)
}

fn push_flag(out: &mut Vec<String>, key: &str, v: &toml::Value) -> Result<()> {
    let flag = format!("--{}", key.replace('_', "-"));
    match v {
        toml::Value::Boolean(true) => out.push(flag),
        toml::Value::Boolean(false) => {}
        toml::Value::String(s) => {
            out.push(flag);
            out.push(s.clone());
        }
        toml::Value::Integer(i) => {
            out.push(flag);
            out.push(i.to_string());
        }
        toml::Value::Float(f) => {
            out.push(flag);
            out.push(f.to_string());
        }
        toml::Value::Array(items) if key == "instances" || key == "positional" => {
            for item in items {
                match item {
                    toml::Value::String(s) => out.push(s.clone()),
                    other => bail!("config key {key}: unsupported item {other}"),
                }
            }
        }
        other => bail!("config key {key}: unsupported value {other}"),
    }
    Ok(())
}
