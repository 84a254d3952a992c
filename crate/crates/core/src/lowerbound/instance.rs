use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{LowerBoundError, WeightPreset};
use crate::graphcore::{
    girth, hop_between_sets, shortest_paths, Bipartite, Distance, Graph, NodeId, Weight,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Unweighted,
    Weighted,
}

/// Where the planted bits come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planted {
    Bits(Vec<bool>),
    /// Independent fair coins from this seed.
    Seed(u64),
}

impl Planted {
    fn realize(&self, m: usize) -> Result<Vec<bool>, LowerBoundError> {
        match self {
            Planted::Bits(b) if b.len() == m => Ok(b.clone()),
            Planted::Bits(b) => Err(LowerBoundError::BadXLength {
                expected: m,
                got: b.len(),
            }),
            Planted::Seed(s) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*s);
                Ok((0..m).map(|_| rng.gen::<bool>()).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub sources: Vec<NodeId>,
    pub transits: Vec<NodeId>,
    pub targets: Vec<NodeId>,
    pub v: NodeId,
    pub v_prime: NodeId,
    /// Inner nodes of the source-transit paths and of the v-v' path.
    pub internal: Vec<NodeId>,
}

/// A lower-bound graph with its planted bit string.
///
/// Bit `b` decides the edge between transit `index[b].0` and target
/// `index[b].1`. Unweighted instances index all `k^2` pairs row-major;
/// weighted ones index the edges of the base graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GammaJson", try_from = "GammaJson")]
pub struct GammaInstance {
    pub graph: Graph,
    pub kind: InstanceKind,
    pub k: usize,
    pub h: usize,
    pub ell: Option<usize>,
    pub x: Vec<bool>,
    pub index: Vec<(usize, usize)>,
    pub roles: Roles,
    /// `(w0, w1, w2)`; all 1 for unweighted instances.
    pub weights: (Weight, Weight, Weight),
    /// Base graph with transits as nodes `0..k` and targets as `k..2k`.
    pub base: Option<Graph>,
}

impl GammaInstance {
    pub fn m(&self) -> usize {
        self.x.len()
    }

    /// Transits and targets: the side that holds the planted bits.
    pub fn a_side(&self) -> Vec<NodeId> {
        let mut a = self.roles.transits.clone();
        a.extend(&self.roles.targets);
        a
    }

    /// The sources.
    pub fn b_side(&self) -> Vec<NodeId> {
        self.roles.sources.clone()
    }

    /// Source-target distance for a present edge.
    pub fn d1(&self) -> u64 {
        let (_, w1, w2) = self.weights;
        match self.kind {
            InstanceKind::Unweighted => self.h as u64 + 1,
            InstanceKind::Weighted => w2 + w1 + self.h as u64 - 1,
        }
    }

    /// Source-target distance for an absent edge.
    pub fn d0(&self) -> u64 {
        let (w0, _, w2) = self.weights;
        match self.kind {
            InstanceKind::Unweighted => self.h as u64 + 2,
            InstanceKind::Weighted => w2 + w0 + self.h as u64 - 1,
        }
    }

    /// `(source, target)` node pair of bit `b`.
    pub fn pair(&self, b: usize) -> (NodeId, NodeId) {
        let (i, j) = self.index[b];
        (self.roles.sources[i], self.roles.targets[j])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }
}

/// Lays out the nodes and edges shared by both constructions.
///
/// Node ids: `s_i = i`, `u_i = k + i`, `t_j = 2k + j`, `v = 3k`, `v' = 3k+1`,
/// then the inner nodes of each `s_i`-`u_i` path, then those of the `v`-`v'` path.
fn build(
    k: usize,
    h: usize,
    vpath: usize,
    (w0, w1, w2): (Weight, Weight, Weight),
    present: impl Iterator<Item = (usize, usize)>,
) -> Result<(Graph, Roles), LowerBoundError> {
    let n = k * (h + 2) + vpath + 1;
    let mut g = Graph::new(n);
    let sources: Vec<NodeId> = (0..k).collect();
    let transits: Vec<NodeId> = (k..2 * k).collect();
    let targets: Vec<NodeId> = (2 * k..3 * k).collect();
    let v = 3 * k;
    let vp = 3 * k + 1;
    let mut next = 3 * k + 2;
    let mut internal = Vec::new();

    for i in 0..k {
        let mut prev = sources[i];
        for step in 0..h {
            let cur = if step + 1 == h {
                transits[i]
            } else {
                internal.push(next);
                next += 1;
                next - 1
            };
            g.add_edge(prev, cur, if step == 0 { w2 } else { 1 })?;
            prev = cur;
        }
        g.add_edge(v, sources[i], w2)?;
        g.add_edge(vp, targets[i], w0)?;
    }
    let mut prev = v;
    for step in 0..vpath {
        let cur = if step + 1 == vpath {
            vp
        } else {
            internal.push(next);
            next += 1;
            next - 1
        };
        g.add_edge(prev, cur, 1)?;
        prev = cur;
    }
    debug_assert_eq!(next, n);
    for (i, j) in present {
        g.add_edge(transits[i], targets[j], w1)?;
    }
    Ok((
        g,
        Roles {
            sources,
            transits,
            targets,
            v,
            v_prime: vp,
            internal,
        },
    ))
}

/// The unweighted construction over all `k^2` transit-target pairs.
pub fn gen_unweighted(k: usize, h: usize, x: Planted) -> Result<GammaInstance, LowerBoundError> {
    if k == 0 || h == 0 {
        return Err(LowerBoundError::InvalidParams(
            "need k >= 1 and h >= 1".into(),
        ));
    }
    let index: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let x = x.realize(index.len())?;
    let present = index.iter().zip(&x).filter(|(_, &b)| b).map(|(&p, _)| p);
    let (graph, roles) = build(k, h, h, (1, 1, 1), present)?;
    Ok(GammaInstance {
        graph,
        kind: InstanceKind::Unweighted,
        k,
        h,
        ell: None,
        x,
        index,
        roles,
        weights: (1, 1, 1),
        base: None,
    })
}

/// The weighted construction around a balanced bipartite base graph of
/// girth at least `preset.ell`. `base.left` become the transits, `base.right`
/// the targets, in the given order.
pub fn gen_weighted(
    base: &Bipartite,
    h: usize,
    preset: &WeightPreset,
    x: Planted,
) -> Result<GammaInstance, LowerBoundError> {
    if h < 2 {
        return Err(LowerBoundError::InvalidParams(
            "weighted needs h >= 2".into(),
        ));
    }
    let k = base.left.len();
    let bg = &base.graph;
    if k == 0 || base.right.len() != k || bg.node_count() != 2 * k {
        return Err(LowerBoundError::NotBalancedBipartite);
    }
    let mut pos = vec![None; 2 * k];
    for (i, &a) in base.left.iter().enumerate() {
        bg.check_node(a)?;
        pos[a] = Some((true, i));
    }
    for (j, &b) in base.right.iter().enumerate() {
        bg.check_node(b)?;
        if pos[b].is_some() {
            return Err(LowerBoundError::NotBalancedBipartite);
        }
        pos[b] = Some((false, j));
    }
    let mut index = Vec::with_capacity(bg.edge_count());
    for (a, b, _) in bg.edges() {
        match (pos[a], pos[b]) {
            (Some((true, i)), Some((false, j))) | (Some((false, j)), Some((true, i))) => {
                index.push((i, j))
            }
            _ => return Err(LowerBoundError::NotBalancedBipartite),
        }
    }
    index.sort_unstable();

    let ell = preset.ell;
    let gi = girth(bg);
    if gi.is_some_and(|g| g < ell) {
        return Err(LowerBoundError::GirthTooSmall { girth: gi, ell });
    }
    let (w0, w1, w2) = (preset.w0, preset.w1, preset.w2);
    if !(w1 < w0 && w0 < (ell as u64 - 1) * w1) || w2 == 0 {
        return Err(LowerBoundError::PresetInvalid { w0, w1, ell });
    }

    let x = x.realize(index.len())?;
    let present = index.iter().zip(&x).filter(|(_, &b)| b).map(|(&p, _)| p);
    let (graph, roles) = build(k, h, h - 1, (w0, w1, w2), present)?;
    let relabeled = Graph::from_edges(2 * k, index.iter().map(|&(i, j)| (i, k + j, w1)))?;
    Ok(GammaInstance {
        graph,
        kind: InstanceKind::Weighted,
        k,
        h,
        ell: Some(ell),
        x,
        index,
        roles,
        weights: (w0, w1, w2),
        base: Some(relabeled),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub bit: usize,
    pub i: usize,
    pub j: usize,
    pub x: bool,
    pub measured: Distance,
    pub expected: u64,
    /// Every shortest source-target path passes through `v`.
    pub via_v: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub records: Vec<PairRecord>,
    pub d0: u64,
    pub d1: u64,
    /// Measured `hop(A, B)`; must equal `h`.
    pub hop_ab: Option<usize>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &PairRecord> {
        self.records.iter().filter(|r| !r.ok)
    }
}

/// Checks every indexed pair: present bit gives `d1` and a shortest path
/// avoiding `v`; absent bit gives `d0` with `v` on every shortest path.
pub fn verify(inst: &GammaInstance) -> VerificationReport {
    let g = &inst.graph;
    let v = inst.roles.v;
    let (d0, d1) = (inst.d0(), inst.d1());
    let from_v = shortest_paths(g, v).expect("v is a node").dist;
    let without_v = g.without_node(v);

    let mut records = Vec::with_capacity(inst.m());
    let mut cache: Option<(usize, Vec<Distance>, Vec<Distance>)> = None;
    for (bit, (&(i, j), &x)) in inst.index.iter().zip(&inst.x).enumerate() {
        if cache.as_ref().is_none_or(|c| c.0 != i) {
            let s = inst.roles.sources[i];
            let full = shortest_paths(g, s).expect("source is a node").dist;
            let cut = shortest_paths(&without_v, s)
                .expect("source is a node")
                .dist;
            cache = Some((i, full, cut));
        }
        let (_, full, cut) = cache.as_ref().expect("filled above");
        let t = inst.roles.targets[j];
        let measured = full[t];
        let on_some = full[v] + from_v[t] == measured;
        let via_v = on_some && cut[t] > measured;
        let expected = if x { d1 } else { d0 };
        // A present bit needs v off every shortest path, not just off one.
        let v_ok = if x { !on_some } else { via_v };
        let ok = measured == Distance::Finite(expected) && v_ok;
        records.push(PairRecord {
            bit,
            i,
            j,
            x,
            measured,
            expected,
            via_v,
            ok,
        });
    }
    let hop_ab = hop_between_sets(g, &inst.a_side(), &inst.b_side());
    let pass = hop_ab == Some(inst.h) && records.iter().all(|r| r.ok);
    VerificationReport {
        records,
        d0,
        d1,
        hop_ab,
        pass,
    }
}

pub fn verify_unweighted(inst: &GammaInstance) -> Result<VerificationReport, LowerBoundError> {
    match inst.kind {
        InstanceKind::Unweighted => Ok(verify(inst)),
        k => Err(LowerBoundError::WrongKind(k)),
    }
}

pub fn verify_weighted(inst: &GammaInstance) -> Result<VerificationReport, LowerBoundError> {
    match inst.kind {
        InstanceKind::Weighted => Ok(verify(inst)),
        k => Err(LowerBoundError::WrongKind(k)),
    }
}

/// Serialized form; `X` is a `0`/`1` string aligned with `index`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GammaJson {
    pub graph: Graph,
    pub kind: InstanceKind,
    pub k: usize,
    pub h: usize,
    #[serde(default)]
    pub ell: Option<usize>,
    #[serde(rename = "X")]
    pub x: String,
    pub index: Vec<[usize; 2]>,
    pub roles: Roles,
    pub weights: [Weight; 3],
    #[serde(default)]
    pub base_graph: Option<Graph>,
}

impl From<GammaInstance> for GammaJson {
    fn from(g: GammaInstance) -> Self {
        GammaJson {
            graph: g.graph,
            kind: g.kind,
            k: g.k,
            h: g.h,
            ell: g.ell,
            x: g.x.iter().map(|&b| if b { '1' } else { '0' }).collect(),
            index: g.index.iter().map(|&(i, j)| [i, j]).collect(),
            roles: g.roles,
            weights: [g.weights.0, g.weights.1, g.weights.2],
            base_graph: g.base,
        }
    }
}

impl TryFrom<GammaJson> for GammaInstance {
    type Error = String;

    fn try_from(j: GammaJson) -> Result<Self, String> {
        let x =
            j.x.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    other => Err(format!("bad bit {other:?} in X")),
                })
                .collect::<Result<Vec<bool>, String>>()?;
        if x.len() != j.index.len() {
            return Err(format!(
                "X has {} bits but index has {} entries",
                x.len(),
                j.index.len()
            ));
        }
        if j.index.iter().any(|&[i, t]| i >= j.k || t >= j.k) {
            return Err("index entry out of range".into());
        }
        Ok(GammaInstance {
            graph: j.graph,
            kind: j.kind,
            k: j.k,
            h: j.h,
            ell: j.ell,
            x,
            index: j.index.iter().map(|&[i, t]| (i, t)).collect(),
            roles: j.roles,
            weights: (j.weights[0], j.weights[1], j.weights[2]),
            base: j.base_graph,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_unweighted_by_hand() {
        let inst = gen_unweighted(1, 1, Planted::Bits(vec![true])).unwrap();
        let g = &inst.graph;
        assert_eq!(g.node_count(), 5);
        let (s, u, t, v, vp) = (0, 1, 2, 3, 4);
        for (a, b) in [(s, u), (u, t), (v, vp), (v, s), (vp, t)] {
            assert!(g.has_edge(a, b), "missing {a}-{b}");
        }
        assert_eq!(g.edge_count(), 5);
        let r = verify_unweighted(&inst).unwrap();
        assert!(r.pass);
        assert_eq!(r.records[0].measured, Distance::Finite(2));

        let zero = gen_unweighted(1, 1, Planted::Bits(vec![false])).unwrap();
        let r = verify_unweighted(&zero).unwrap();
        assert!(r.pass);
        assert_eq!(r.records[0].measured, Distance::Finite(3));
        assert!(r.records[0].via_v);
    }

    #[test]
    fn node_count_formula() {
        for k in 1..5 {
            for h in 1..5 {
                let inst = gen_unweighted(k, h, Planted::Seed(1)).unwrap();
                assert_eq!(inst.graph.node_count(), k * (h + 2) + h + 1);
            }
        }
        assert_eq!(
            gen_unweighted(2, 2, Planted::Seed(0))
                .unwrap()
                .graph
                .node_count(),
            11
        );
    }

    #[test]
    fn rejects_bad_x_length() {
        assert_eq!(
            gen_unweighted(2, 1, Planted::Bits(vec![true])),
            Err(LowerBoundError::BadXLength {
                expected: 4,
                got: 1
            })
        );
    }

    #[test]
    fn json_round_trip() {
        let inst = gen_unweighted(3, 2, Planted::Seed(9)).unwrap();
        let s = inst.to_json();
        let back: GammaInstance = serde_json::from_str(&s).unwrap();
        assert_eq!(back, inst);
        assert!(s.contains("\"X\""));
    }
}
