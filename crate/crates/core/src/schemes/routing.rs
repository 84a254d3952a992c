use serde::{Deserialize, Serialize};

use super::{Scheme, SchemeError};
use crate::graphcore::{NodeId, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForwardMode {
    /// Decisions depend on the current node and target only; a revisit means
    /// the packet would cycle forever.
    Stateless,
    /// Revisits are allowed up to the hop budget.
    Stateful,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub nodes: Vec<NodeId>,
    pub weight: Weight,
}

impl Route {
    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }
}

/// Forward a packet from `s` to `t` by repeated next-hop decisions.
pub fn forward(
    scheme: &Scheme,
    s: NodeId,
    t: NodeId,
    mode: ForwardMode,
    max_hops: usize,
) -> Result<Route, SchemeError> {
    let mut nodes = vec![s];
    let mut visited = vec![false; scheme.n];
    visited[s] = true;
    let mut weight = 0;
    let mut cur = s;
    while cur != t {
        if nodes.len() > max_hops {
            return Err(SchemeError::HopBudgetExceeded { max_hops });
        }
        let next = scheme.next_hop(cur, t)?;
        weight += scheme.states[cur]
            .neighbors
            .iter()
            .find(|(z, _, _)| *z == next)
            .map(|&(_, w, _)| w)
            .expect("next hop is a neighbor");
        if mode == ForwardMode::Stateless && visited[next] {
            return Err(SchemeError::LoopDetected { at: next });
        }
        visited[next] = true;
        nodes.push(next);
        cur = next;
    }
    Ok(Route { nodes, weight })
}
