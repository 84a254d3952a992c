use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use hybrid_routing::graphcore::{shortest_paths, Graph};
use hybrid_routing::hybridsim::{HybridConfig, LocalBandwidth, STANDARD_GAMMA_FACTOR};
use hybrid_routing::schemes::{
    build_scheme, forward, h_of_x, CutSpec, ForwardMode, RsspMode, Scheme, SchemeKind,
    SchemeParams, DEFAULT_KSI,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::gen::{build_graph, GraphKind};
use crate::output::{f, Output, Table};
use crate::{Global, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeArg {
    Exact,
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RsspArg {
    Simulated,
    CostModel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteArg {
    Stateless,
    Stateful,
}

/// Scheme parameters shared by `run` and `decode`.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SchemeOpts {
    /// Sampling denominator; default n^(1/3 + zeta).
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub zeta: f64,
    /// Constant in h = ceil(ksi * x * ln n).
    #[arg(long, default_value_t = DEFAULT_KSI)]
    pub ksi: f64,
    /// Sampling radius; default from ksi.
    #[arg(long = "sample-h")]
    pub sample_h: Option<usize>,
    /// Exploration radius factor (approximate scheme).
    #[arg(long, default_value_t = 1.0)]
    pub widen: f64,
    #[arg(long = "rssp-mode", value_enum, default_value_t = RsspArg::Simulated)]
    pub rssp_mode: RsspArg,
    /// Cost-model constant c in c * (n^(1/3) + n/x^2) * log^a n.
    #[arg(long, default_value_t = 1.0)]
    pub cost_c: f64,
    #[arg(long, default_value_t = 1.0)]
    pub cost_a: f64,
    /// Global budget per node and round; default ceil(gamma_factor * log^2 n).
    #[arg(long)]
    pub gamma: Option<u64>,
    #[arg(long, default_value_t = STANDARD_GAMMA_FACTOR)]
    pub gamma_factor: f64,
}

impl SchemeOpts {
    pub fn params(&self, n: usize, seed: u64) -> SchemeParams {
        let x = self
            .x
            .unwrap_or_else(|| (n as f64).powf(1.0 / 3.0 + self.zeta).max(1.0));
        let h = self.sample_h.unwrap_or_else(|| h_of_x(n, x, self.ksi));
        let rssp = match self.rssp_mode {
            RsspArg::Simulated => RsspMode::Simulated,
            RsspArg::CostModel => RsspMode::CostModel {
                c: self.cost_c,
                a: self.cost_a,
            },
        };
        SchemeParams::new(x, h, seed)
            .with_widen(self.widen)
            .with_rssp(rssp)
    }

    pub fn config(&self, n: usize) -> Result<HybridConfig> {
        Ok(match self.gamma {
            Some(g) => HybridConfig::new(LocalBandwidth::Unlimited, g)?,
            None => HybridConfig::standard(n, self.gamma_factor),
        })
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::Exact)]
    pub scheme: SchemeArg,
    #[arg(long, default_value_t = 20)]
    pub trials: u64,
    /// Use this graph (JSON) in every trial instead of generating one.
    #[arg(long)]
    pub graph_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = GraphKind::Connected)]
    pub family: GraphKind,
    #[arg(long, default_value_t = 60)]
    pub n: usize,
    /// Draw n uniformly from [n, n_max] per trial.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    pub density: f64,
    #[arg(long, default_value_t = 100)]
    pub max_weight: u64,
    #[arg(long, default_value_t = 3)]
    pub span: usize,
    #[command(flatten)]
    pub opts: SchemeOpts,
    #[arg(long, value_enum, default_value_t = RouteArg::Stateless)]
    pub route: RouteArg,
    /// Also write each trial's scheme dump as JSON.
    #[arg(long)]
    pub dump: bool,
}

struct TrialRow {
    cells: Vec<String>,
    ok: bool,
    success: bool,
    est: f64,
    route: f64,
    dump: Option<String>,
}

const HEADER: [&str; 22] = [
    "trial",
    "seed",
    "n",
    "edges",
    "x",
    "h",
    "explore_radius",
    "sample_size",
    "sampling_success",
    "rounds",
    "rssp_rounds",
    "global_bits",
    "cut_bits",
    "max_round_load",
    "max_label_bits",
    "mean_label_bits",
    "max_stretch_estimate",
    "max_stretch_route",
    "one_sided_violations",
    "route_failures",
    "ok",
    "error",
];

struct Measured {
    est: f64,
    route: f64,
    one_sided: u64,
    route_failures: u64,
}

fn measure(g: &Graph, sc: &Scheme, mode: ForwardMode) -> Measured {
    let n = g.node_count();
    let max_hops = if sc.kind == SchemeKind::Exact {
        n
    } else {
        4 * n
    };
    let mut m = Measured {
        est: 1.0,
        route: 1.0,
        one_sided: 0,
        route_failures: 0,
    };
    for u in 0..n {
        let d = shortest_paths(g, u).expect("valid node").dist;
        for v in 0..n {
            let e = sc.estimate(u, v);
            if e < d[v] {
                m.one_sided += 1;
            }
            let Some(dv) = d[v].finite().filter(|&x| x > 0) else {
                continue;
            };
            m.est = m
                .est
                .max(e.finite().map_or(f64::INFINITY, |x| x as f64 / dv as f64));
            match forward(sc, u, v, mode, max_hops) {
                Ok(r) => m.route = m.route.max(r.weight as f64 / dv as f64),
                Err(_) => {
                    m.route_failures += 1;
                    m.route = f64::INFINITY;
                }
            }
        }
    }
    m
}

fn run_trial(a: &RunArgs, fixed: Option<&Graph>, base_seed: u64, i: u64) -> TrialRow {
    let seed = base_seed.wrapping_add(i);
    let mut cells = vec![i.to_string(), seed.to_string()];
    let fail = |mut cells: Vec<String>, msg: String| {
        cells.resize(HEADER.len() - 2, String::new());
        cells.push("false".into());
        cells.push(msg);
        TrialRow {
            cells,
            ok: false,
            success: false,
            est: f64::NAN,
            route: f64::NAN,
            dump: None,
        }
    };
    let g = match fixed {
        Some(g) => g.clone(),
        None => {
            let n = match a.n_max {
                Some(hi) if hi > a.n => ChaCha8Rng::seed_from_u64(seed ^ 0x6e).gen_range(a.n..=hi),
                _ => a.n,
            };
            match build_graph(a.family, n, a.density, a.max_weight, a.span, seed) {
                Ok(g) => g,
                Err(e) => return fail(cells, e.to_string()),
            }
        }
    };
    let n = g.node_count();
    let p = a.opts.params(n, seed);
    cells.extend([
        n.to_string(),
        g.edge_count().to_string(),
        f(p.x),
        p.h.to_string(),
    ]);
    let cfg = match a.opts.config(n) {
        Ok(c) => c,
        Err(e) => return fail(cells, e.to_string()),
    };
    let kind = match a.scheme {
        SchemeArg::Exact => SchemeKind::Exact,
        SchemeArg::Approx => SchemeKind::Approx,
    };
    let cut = CutSpec {
        label: "halves".into(),
        a: (0..n / 2).collect(),
        b: (n / 2..n).collect(),
    };
    let sc = match build_scheme(&g, cfg, &p, kind, &[cut]) {
        Ok(s) => s,
        Err(e) => return fail(cells, e.to_string()),
    };
    let mode = match a.route {
        RouteArg::Stateless => ForwardMode::Stateless,
        RouteArg::Stateful => ForwardMode::Stateful,
    };
    let m = measure(&g, &sc, mode);
    let success = sc.sampling_failure.is_none();
    let bound = match kind {
        SchemeKind::Exact => 1.0,
        SchemeKind::Approx => 3.0,
    };
    let ok = m.one_sided == 0 && (!success || (m.est <= bound && m.route <= bound));
    let bits: Vec<u64> = (0..n).map(|v| sc.label_bits(v)).collect();
    let s = &sc.stats;
    cells.extend([
        sc.explore_radius.to_string(),
        sc.sample.len().to_string(),
        success.to_string(),
        s.rounds.to_string(),
        sc.rssp_rounds.to_string(),
        s.global_bits_total.to_string(),
        s.cuts["halves"].to_string(),
        s.max_round_load.to_string(),
        bits.iter().max().copied().unwrap_or(0).to_string(),
        f(bits.iter().sum::<u64>() as f64 / n.max(1) as f64),
        f(m.est),
        f(m.route),
        m.one_sided.to_string(),
        m.route_failures.to_string(),
        ok.to_string(),
        String::new(),
    ]);
    TrialRow {
        cells,
        ok,
        success,
        est: m.est,
        route: m.route,
        dump: a
            .dump
            .then(|| serde_json::to_string_pretty(&sc.dump()).expect("dump serializes")),
    }
}

pub fn load_graph(path: &PathBuf) -> Result<Graph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn cmd(g: &Global, a: &RunArgs, out: &Output) -> Outcome {
    let fixed = a.graph_file.as_ref().map(load_graph).transpose()?;
    let rows: Vec<TrialRow> = (0..a.trials)
        .into_par_iter()
        .map(|i| run_trial(a, fixed.as_ref(), g.seed, i))
        .collect();
    let mut t = Table::new(&HEADER);
    for (i, r) in rows.iter().enumerate() {
        t.push(r.cells.clone());
        if let Some(d) = &r.dump {
            out.json(&format!("scheme-{i}"), d)?;
        }
    }
    let ok = rows.iter().filter(|r| r.ok).count();
    let success = rows.iter().filter(|r| r.success).count();
    let worst = |sel: fn(&TrialRow) -> f64| {
        rows.iter()
            .filter(|r| r.success)
            .map(sel)
            .fold(1.0f64, f64::max)
    };
    let mut summary = vec![String::new(); HEADER.len()];
    summary[0] = "summary".into();
    summary[8] = format!("{success}/{}", rows.len());
    summary[16] = f(worst(|r| r.est));
    summary[17] = f(worst(|r| r.route));
    summary[20] = format!("{ok}/{}", rows.len());
    t.push(summary);
    out.csv("run", &t)?;
    if out.to_files() {
        out.json("spec", &serde_json::to_string_pretty(&(g, a))?)?;
    }
    eprintln!(
        "{} trials, {success} sampling successes, {ok} ok, max stretch {} (estimate) {} (route)",
        rows.len(),
        f(worst(|r| r.est)),
        f(worst(|r| r.route))
    );
    Ok(ok == rows.len())
}
