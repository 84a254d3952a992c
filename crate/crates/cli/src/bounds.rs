use anyhow::bail;
use clap::{ArgGroup, Args, ValueEnum};
use hybrid_routing::bounds::{
    evaluate_row, full_table, girth_density, optimize_tradeoff, stretch_table, TableProblem,
    TableRow,
};
use serde::Serialize;

use crate::output::{f, Output, Table};
use crate::{Global, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableProblemArg {
    Oracle,
    Stateless,
    Stateful,
    Unweighted,
}

impl From<TableProblemArg> for TableProblem {
    fn from(p: TableProblemArg) -> Self {
        match p {
            TableProblemArg::Oracle => TableProblem::Oracle,
            TableProblemArg::Stateless => TableProblem::Stateless,
            TableProblemArg::Stateful => TableProblem::Stateful,
            TableProblemArg::Unweighted => TableProblem::Unweighted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(group(ArgGroup::new("mode").args(["problem", "sweep", "tradeoff", "girth_density"])))]
pub struct BoundsArgs {
    /// Rows for one problem.
    #[arg(long, value_enum)]
    pub problem: Option<TableProblemArg>,
    /// Every row (the default).
    #[arg(long)]
    pub sweep: bool,
    /// Optimal k and h for --n, --gamma, --delta.
    #[arg(long)]
    pub tradeoff: bool,
    /// Density exponent of girth-L graphs.
    #[arg(long, value_name = "L")]
    pub girth_density: Option<usize>,
    /// Add concrete round and label numbers at --n, --gamma, --epsilon, --c.
    #[arg(long)]
    pub evaluate: bool,
    #[arg(long, default_value_t = 1e6)]
    pub n: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Stdout format when no --out is given.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

fn rows_table(rows: &[TableRow], a: &BoundsArgs) -> anyhow::Result<Table> {
    let mut header = vec![
        "problem",
        "stretch_girth",
        "density_girth",
        "stretch",
        "stretch_value",
        "delta",
        "rounds_exponent",
        "label_exponent",
    ];
    if a.evaluate {
        header.extend(["rounds_lb", "k_opt", "h_opt", "label_cap_bits"]);
    }
    let mut t = Table::new(&header);
    for r in rows {
        let mut cells = vec![
            r.problem.to_string(),
            r.stretch_ell.map_or(String::new(), |l| l.to_string()),
            r.density_ell.to_string(),
            r.stretch.as_ref().map_or("1".into(), |s| s.to_string()),
            r.stretch.as_ref().map_or(f(1.0), |s| f(s.to_f64())),
            r.delta.to_string(),
            r.rounds_exponent.to_string(),
            r.label_exponent.to_string(),
        ];
        if a.evaluate {
            let e = evaluate_row(r, a.n, a.gamma, a.epsilon, a.c)?;
            cells.extend([f(e.rounds_lb), f(e.k_opt), f(e.h_opt), f(e.label_cap_bits)]);
        }
        t.push(cells);
    }
    Ok(t)
}

fn emit(a: &BoundsArgs, out: &Output, t: &Table) -> anyhow::Result<()> {
    if out.to_files() {
        out.csv("bounds", t)?;
        out.text("bounds", &t.to_text())
    } else {
        match a.format {
            Format::Csv => out.csv("bounds", t),
            Format::Text => out.text("bounds", &t.to_text()),
        }
    }
}

pub fn cmd(_: &Global, a: &BoundsArgs, out: &Output) -> Outcome {
    let t = if let Some(ell) = a.girth_density {
        let d = girth_density(ell)?;
        let mut t = Table::new(&["girth", "delta", "delta_value"]);
        let v = *d.numer() as f64 / *d.denom() as f64;
        t.push(vec![ell.to_string(), d.to_string(), f(v)]);
        t
    } else if a.tradeoff {
        let r = optimize_tradeoff(a.n, a.gamma, a.delta)?;
        let mut t = Table::new(&["n", "gamma", "delta", "k_opt", "h_opt", "rounds_lb"]);
        t.push(vec![
            f(a.n),
            f(a.gamma),
            f(a.delta),
            f(r.k_opt),
            f(r.h_opt),
            f(r.rounds_lb),
        ]);
        t
    } else {
        let rows = match a.problem {
            Some(p) => stretch_table(p.into()),
            None => full_table(),
        };
        if rows.is_empty() {
            bail!("no rows");
        }
        rows_table(&rows, a)?
    };
    emit(a, out, &t)?;
    Ok(true)
}
