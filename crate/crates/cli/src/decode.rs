use std::path::PathBuf;

use clap::Args;
use hybrid_routing::bounds::{entropy_of_planted, EntropyConvention};
use hybrid_routing::graphcore::{shortest_paths, Distance};
use hybrid_routing::lowerbound::{
    decode_from_oracle, decode_from_routing, estimates_from_scheme, first_hops_from_scheme,
    inflate_estimates,
};
use hybrid_routing::schemes::{build_scheme, CutSpec, SchemeKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{f, Output, Table};
use crate::run::SchemeOpts;
use crate::verify::load_instance;
use crate::{Global, Outcome};

#[derive(Debug, Clone, Args, Serialize)]
pub struct DecodeArgs {
    /// Instance JSON file.
    pub instance: PathBuf,
    /// Scheme builds (seed, seed + 1, ...).
    #[arg(long, default_value_t = 5)]
    pub trials: u64,
    #[command(flatten)]
    pub opts: SchemeOpts,
    /// Instead of building schemes, decode this many inflated copies of the
    /// exact distances.
    #[arg(long)]
    pub adversaries: Option<u64>,
    /// Largest inflation factor for adversaries.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

fn accuracy(got: &[bool], x: &[bool]) -> f64 {
    let hit = got.iter().zip(x).filter(|(a, b)| a == b).count();
    hit as f64 / x.len().max(1) as f64
}

pub fn cmd(g: &Global, a: &DecodeArgs, out: &Output) -> Outcome {
    let inst = load_instance(&a.instance)?;
    let entropy = entropy_of_planted(&inst, EntropyConvention::Standard);

    if let Some(adv) = a.adversaries {
        let exact: Vec<Distance> = (0..inst.m())
            .map(|b| {
                let (s, t) = inst.pair(b);
                Ok(shortest_paths(&inst.graph, s)?.dist[t])
            })
            .collect::<anyhow::Result<_>>()?;
        let mut t = Table::new(&["adversary", "alpha", "accuracy", "exact"]);
        let mut all = true;
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        for i in 0..adv {
            let est = inflate_estimates(&exact, a.alpha, &mut rng);
            let got = decode_from_oracle(&inst, &est)?;
            let exact_ok = got == inst.x;
            all &= exact_ok;
            t.push(vec![
                i.to_string(),
                f(a.alpha),
                f(accuracy(&got, &inst.x)),
                exact_ok.to_string(),
            ]);
        }
        out.csv("decode", &t)?;
        eprintln!("{adv} adversaries at alpha {}: all exact = {all}", a.alpha);
        return Ok(all);
    }

    let n = inst.graph.node_count();
    let cfg = a.opts.config(n)?;
    let rows: Vec<anyhow::Result<(Vec<String>, bool, bool)>> = (0..a.trials)
        .into_par_iter()
        .map(|i| {
            let seed = g.seed.wrapping_add(i);
            let cut = CutSpec {
                label: "ab".into(),
                a: inst.a_side(),
                b: inst.b_side(),
            };
            let p = a.opts.params(n, seed);
            let sc = build_scheme(&inst.graph, cfg, &p, SchemeKind::Exact, &[cut])?;
            let success = sc.sampling_failure.is_none();
            let oracle = decode_from_oracle(&inst, &estimates_from_scheme(&inst, &sc))?;
            let routing = match first_hops_from_scheme(&inst, &sc) {
                Ok(h) => Some(decode_from_routing(&inst, &h)?),
                Err(_) => None,
            };
            let label_bits: u64 = inst.roles.targets.iter().map(|&t| sc.label_bits(t)).sum();
            let cut_bits = sc.stats.cuts["ab"];
            let info_ok = (cut_bits + label_bits) as f64 >= entropy - 1.0;
            let exact = oracle == inst.x && routing.as_ref() == Some(&inst.x);
            let row = vec![
                i.to_string(),
                seed.to_string(),
                success.to_string(),
                f(accuracy(&oracle, &inst.x)),
                routing.map_or("nan".into(), |r| f(accuracy(&r, &inst.x))),
                sc.stats.rounds.to_string(),
                cut_bits.to_string(),
                label_bits.to_string(),
                f(entropy),
                info_ok.to_string(),
            ];
            Ok((row, !success || exact, info_ok))
        })
        .collect();
    let mut t = Table::new(&[
        "trial",
        "seed",
        "sampling_success",
        "oracle_accuracy",
        "routing_accuracy",
        "rounds",
        "cut_bits",
        "target_label_bits",
        "entropy_bits",
        "info_ok",
    ]);
    let (mut decoded, mut info) = (true, true);
    for r in rows {
        let (row, d, i) = r?;
        decoded &= d;
        info &= i;
        t.push(row);
    }
    out.csv("decode", &t)?;
    eprintln!(
        "{} trials: decoding {}, information check {}",
        a.trials,
        if decoded { "exact" } else { "INEXACT" },
        if info { "holds" } else { "VIOLATED" }
    );
    Ok(decoded && info)
}
