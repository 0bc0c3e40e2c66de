//! One game cycle of the networked dictator game.
//!
//! Each cycle runs the same pipeline, with every stage reading the
//! synchronous snapshot taken at the start of the cycle: play all
//! pairwise games and floor wealths, compute each agent's status
//! change, fold the per-pair marginal utilities into the ledger with
//! memory decay, rewire the graph from the ledger, and finally let all
//! agents take one hill-climbing step on their strategies.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::agent::AgentState;
use crate::graph::SocialGraph;
use crate::ledger::{apply_memory_decay, UtilityLedger};
use crate::params::{ConfigError, SimParams};
use crate::world::{CycleDelta, World};

/// Builds the initial world: a uniform random graph with edge
/// probability `init_mean_degree / (N - 1)`, uniformly random
/// strategies, zero wealth, random step directions and an all-zero
/// ledger. Fully determined by `params.seed`.
pub fn init_world(params: &SimParams) -> Result<World, ConfigError> {
    params.validate()?;
    let n = params.n_agents;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut graph = SocialGraph::new(n);
    if n > 1 {
        let p = params.init_mean_degree / (n - 1) as f64;
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.random_bool(p) {
                    graph.set_edge(i, j, true);
                }
            }
        }
    }

    let agents = (0..n)
        .map(|_| {
            let strategy = rng.random_range(0.0..=1.0);
            let step_dir = if rng.random_bool(0.5) { 1 } else { -1 };
            AgentState::new(strategy, step_dir, params.dx_init)
        })
        .collect();

    Ok(World {
        agents,
        graph,
        ledger: UtilityLedger::new(n),
    })
}

/// Plays every pairwise game of one cycle from a synchronous snapshot.
///
/// Each agent's end-of-cycle wealth is
/// `max(v + M * (k * (1 - x) + sum of neighbour strategies - c), 0)`;
/// the status change of every agent is filled in from the same
/// snapshot, so the result is independent of agent order.
pub fn play_cycle(agents: &[AgentState], graph: &SocialGraph, params: &SimParams) -> CycleDelta {
    let n = agents.len();
    let mut wealth_before = Vec::with_capacity(n);
    let mut wealth_after = Vec::with_capacity(n);
    let mut degree_before = Vec::with_capacity(n);

    for (i, agent) in agents.iter().enumerate() {
        let k = graph.degree(i);
        let received: f64 = graph.neighbours(i).map(|j| agents[j].strategy).sum();
        let gain =
            params.stake * (k as f64 * (1.0 - agent.strategy) + received - params.cost);
        wealth_before.push(agent.wealth);
        wealth_after.push((agent.wealth + gain).max(0.0));
        degree_before.push(k);
    }

    let delta = (0..n)
        .map(|i| status_delta(i, &wealth_before, &wealth_after, graph))
        .collect();

    CycleDelta {
        wealth_before,
        wealth_after,
        degree_before,
        delta,
    }
}

/// Status change of agent `i` over one cycle: its own wealth change
/// weighted by `k + 1`, minus the wealth changes of its neighbours.
pub fn status_delta(
    i: usize,
    wealth_before: &[f64],
    wealth_after: &[f64],
    graph: &SocialGraph,
) -> f64 {
    let own_change = wealth_after[i] - wealth_before[i];
    let neighbour_change: f64 = graph
        .neighbours(i)
        .map(|l| wealth_after[l] - wealth_before[l])
        .sum();
    (graph.degree(i) as f64 + 1.0) * own_change - neighbour_change
}

/// How much agent `j` contributed to agent `i`'s status this cycle:
/// what `j` paid toward `i` and the agents outside their shared
/// neighbourhood, minus `j`'s own (floored) wealth gain.
pub fn marginal_utility(
    i: usize,
    j: usize,
    delta: &CycleDelta,
    graph: &SocialGraph,
    agents: &[AgentState],
    params: &SimParams,
) -> f64 {
    debug_assert_ne!(i, j);
    let shared = graph.shared_neighbours(i, j) as f64;
    let degree = graph.degree(i) as f64;
    (degree - shared + 1.0) * agents[j].strategy * params.stake - delta.wealth_change(j)
}

/// Folds one cycle into the ledger: every linked ordered pair gains its
/// marginal utility, then every entry decays toward zero by at most
/// `memory`. Unlinked pairs therefore only decay.
pub fn update_utilities(
    ledger: &mut UtilityLedger,
    delta: &CycleDelta,
    graph: &SocialGraph,
    agents: &[AgentState],
    params: &SimParams,
) {
    let n = ledger.n();
    for i in 0..n {
        for j in graph.neighbours(i) {
            let contribution = marginal_utility(i, j, delta, graph, agents, params);
            ledger.set(i, j, ledger.get(i, j) + contribution);
        }
        if params.memory > 0.0 {
            for value in ledger.row_mut(i) {
                *value = apply_memory_decay(*value, params.memory);
            }
        }
    }
}

/// Builds next cycle's graph from the ledger.
///
/// An existing link survives iff both directed entries are nonnegative:
/// either agent can cut unilaterally, as punishment. A missing link
/// forms under the same mutual-consent condition, but only when agents
/// can forgive at all (`memory > 0`). With zero memory a grudge is
/// permanent and the set of possible connections only ever shrinks, so
/// no new link may appear.
pub fn rewire(ledger: &UtilityLedger, previous: &SocialGraph, params: &SimParams) -> SocialGraph {
    let n = ledger.n();
    let can_form = params.memory > 0.0;
    let mut graph = SocialGraph::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let consented = ledger.get(i, j) >= 0.0 && ledger.get(j, i) >= 0.0;
            if consented && (can_form || previous.linked(i, j)) {
                graph.set_edge(i, j, true);
            }
        }
    }
    graph
}

/// Step magnitude for the given cycle: linear from `dx_init` down to
/// `dx_min` over the first `anneal_cycles` cycles, constant afterward.
pub fn step_magnitude(cycle_index: usize, params: &SimParams) -> f64 {
    let progress =
        cycle_index.min(params.anneal_cycles) as f64 / params.anneal_cycles as f64;
    let mag = params.dx_init - (params.dx_init - params.dx_min) * progress;
    mag.max(params.dx_min)
}

/// One hill-climbing step per agent: a negative status change flips the
/// walk direction, then the strategy moves by the annealed step
/// magnitude, clamped to [0, 1].
pub fn update_strategies(
    agents: &mut [AgentState],
    delta: &CycleDelta,
    cycle_index: usize,
    params: &SimParams,
) {
    let mag = step_magnitude(cycle_index, params);
    for (agent, &status_change) in agents.iter_mut().zip(&delta.delta) {
        if status_change < 0.0 {
            agent.step_dir = -agent.step_dir;
        }
        agent.step_mag = mag;
        agent.strategy =
            (agent.strategy + f64::from(agent.step_dir) * mag).clamp(0.0, 1.0);
    }
}

/// Advances the world by exactly one cycle and returns the cycle
/// bookkeeping for observers.
pub fn step(world: &mut World, cycle_index: usize, params: &SimParams) -> CycleDelta {
    let delta = play_cycle(&world.agents, &world.graph, params);
    update_utilities(&mut world.ledger, &delta, &world.graph, &world.agents, params);
    let next_graph = rewire(&world.ledger, &world.graph, params);
    for (agent, &wealth) in world.agents.iter_mut().zip(&delta.wealth_after) {
        agent.wealth = wealth;
    }
    update_strategies(&mut world.agents, &delta, cycle_index, params);
    world.graph = next_graph;
    delta
}
