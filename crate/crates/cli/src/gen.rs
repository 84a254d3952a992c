use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, ValueEnum};
use hybrid_routing::graphcore::{
    band, bipartite_double_cover, complete_bipartite, gnp, petersen, random_connected,
    ring_with_chords, Bipartite, Graph,
};
use hybrid_routing::lowerbound::{
    gen_unweighted, gen_weighted, high_girth_greedy, make_preset, verify, GammaInstance, Planted,
    Problem,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::output::Output;
use crate::{verify as verify_cmd, Global, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKindArg {
    Unweighted,
    Weighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    /// G(n, p); an error if the sample is disconnected.
    Random,
    /// Random spanning tree plus G(n, p) edges.
    Connected,
    Band,
    Ring,
    Petersen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemArg {
    Oracle,
    Stateless,
    Stateful,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Problem {
        match p {
            ProblemArg::Oracle => Problem::Oracle,
            ProblemArg::Stateless => Problem::Stateless,
            ProblemArg::Stateful => Problem::Stateful,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    /// `K_{k,k}` (girth 4).
    Complete,
    /// Bipartite double cover of the Petersen graph (k = 10, girth 6).
    PetersenCover,
    /// Seeded greedy graph of girth at least `ell`.
    Greedy,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(group(ArgGroup::new("what").required(true).args(["kind", "graph"])))]
pub struct GenArgs {
    /// Lower-bound instance to generate.
    #[arg(long, value_enum)]
    pub kind: Option<InstanceKindArg>,
    /// Plain graph to generate.
    #[arg(long, value_enum)]
    pub graph: Option<GraphKind>,

    /// Transits (= targets = sources) per side.
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// Hop distance between the source and transit sides.
    #[arg(long, default_value_t = 3)]
    pub h: usize,
    /// Girth of the base graph (weighted instances).
    #[arg(long, default_value_t = 4)]
    pub ell: usize,
    #[arg(long, value_enum, default_value_t = ProblemArg::Stateful)]
    pub problem: ProblemArg,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Base graph; defaults to `complete` for ell = 4 and `greedy` otherwise.
    #[arg(long, value_enum)]
    pub base: Option<BaseKind>,
    /// Edge budget for the greedy base (default k^2).
    #[arg(long)]
    pub target_edges: Option<usize>,
    /// Planted bits as a 0/1 string; random from the seed when absent.
    #[arg(long)]
    pub x: Option<String>,
    /// Verify the generated instance; exit 1 if it fails.
    #[arg(long)]
    pub verify: bool,

    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Edge probability for random graphs, chord probability for bands.
    #[arg(long, default_value_t = 0.1)]
    pub density: f64,
    #[arg(long, default_value_t = 1)]
    pub max_weight: u64,
    /// Longest chord of band and ring graphs.
    #[arg(long, default_value_t = 3)]
    pub span: usize,

    /// Output file stem.
    #[arg(long)]
    pub name: Option<String>,
}

pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => bail!("planted bits must be 0/1, found {other:?}"),
        })
        .collect()
}

pub fn make_graph(a: &GenArgs, seed: u64) -> Result<Graph> {
    let kind = a.graph.context("no graph kind")?;
    build_graph(kind, a.n, a.density, a.max_weight, a.span, seed)
}

pub fn build_graph(
    kind: GraphKind,
    n: usize,
    density: f64,
    w: u64,
    span: usize,
    seed: u64,
) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match kind {
        GraphKind::Random => {
            let g = gnp(n, density, w, &mut rng);
            if !g.is_connected() {
                bail!("G({n}, {density}) sample with seed {seed} is disconnected");
            }
            g
        }
        GraphKind::Connected => random_connected(n, density, w, &mut rng),
        GraphKind::Band => band(n, span, density, w, &mut rng),
        GraphKind::Ring => ring_with_chords(n, span, density, w, &mut rng),
        GraphKind::Petersen => petersen(),
    })
}

pub fn make_base(a: &GenArgs, seed: u64) -> Result<Bipartite> {
    let base = a.base.unwrap_or(if a.ell == 4 {
        BaseKind::Complete
    } else {
        BaseKind::Greedy
    });
    Ok(match base {
        BaseKind::Complete => complete_bipartite(a.k)?,
        BaseKind::PetersenCover => bipartite_double_cover(&petersen()),
        BaseKind::Greedy => {
            let target = a.target_edges.unwrap_or(a.k * a.k);
            high_girth_greedy(a.k, a.ell, target, seed)?.base
        }
    })
}

pub fn make_instance(a: &GenArgs, seed: u64) -> Result<GammaInstance> {
    let kind = a.kind.context("no instance kind")?;
    let planted = match &a.x {
        Some(s) => Planted::Bits(parse_bits(s)?),
        None => Planted::Seed(seed),
    };
    Ok(match kind {
        InstanceKindArg::Unweighted => gen_unweighted(a.k, a.h, planted)?,
        InstanceKindArg::Weighted => {
            let preset = make_preset(a.problem.into(), a.ell, a.epsilon, a.h)?;
            gen_weighted(&make_base(a, seed)?, a.h, &preset, planted)?
        }
    })
}

pub fn cmd(g: &Global, a: &GenArgs, out: &Output) -> Outcome {
    if a.graph.is_some() {
        let graph = make_graph(a, g.seed)?;
        out.json(
            a.name.as_deref().unwrap_or("graph"),
            &serde_json::to_string(&graph)?,
        )?;
        return Ok(true);
    }
    let inst = make_instance(a, g.seed)?;
    let name = a.name.as_deref().unwrap_or("instance");
    out.json(name, &inst.to_json())?;
    if !a.verify {
        return Ok(true);
    }
    let report = verify(&inst);
    if out.to_files() {
        out.csv(
            &format!("{name}-verify"),
            &verify_cmd::report_table(&inst, &report),
        )?;
    }
    eprintln!("{}", verify_cmd::summary(&report));
    Ok(report.pass)
}
