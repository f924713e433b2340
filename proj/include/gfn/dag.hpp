#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfn/errors.hpp"

namespace gfn {

// Dense contiguous state identifier within an EnvGraph.
using StateId = std::int32_t;

// Finite DAG environment. The sink is implicit: terminating states carry a
// terminate action on top of their child edges.
struct EnvGraph {
    StateId initial = 0;
    std::vector<std::vector<StateId>> children;
    std::vector<std::vector<StateId>> parents;
    std::vector<std::uint8_t> terminating;

    int num_states() const { return static_cast<int>(children.size()); }
    bool is_terminating(StateId s) const { return terminating[static_cast<size_t>(s)] != 0; }
};

// Builds an EnvGraph from child adjacency; parents are derived as the exact
// transpose, preserving child-list order.
EnvGraph env_from_children(StateId initial, std::vector<std::vector<StateId>> children,
                           std::vector<std::uint8_t> terminating);

// Per-state action distribution. probs aligns with EnvGraph::children[s];
// terminate_prob is the mass on the edge to the sink (zero unless the state
// is terminating).
struct TransitionDistribution {
    std::vector<double> probs;
    double terminate_prob = 0.0;

    double total() const;
};

class Policy {
public:
    virtual ~Policy() = default;
    // Must be deterministic: repeated queries return identical distributions.
    virtual TransitionDistribution transition(StateId s) const = 0;
};

class TabularPolicy final : public Policy {
public:
    TabularPolicy() = default;
    explicit TabularPolicy(std::vector<TransitionDistribution> rows) : rows_(std::move(rows)) {}

    TransitionDistribution transition(StateId s) const override { return rows_[static_cast<size_t>(s)]; }
    const std::vector<TransitionDistribution>& rows() const { return rows_; }

private:
    std::vector<TransitionDistribution> rows_;
};

// Uniform over all available actions (children plus terminate where present).
TabularPolicy uniform_policy(const EnvGraph& env);

// State sequence from the initial state to a terminating state; the final
// transition to the sink is implicit.
struct Trajectory {
    std::vector<StateId> states;
};

struct TerminalDistribution {
    // Indexed by StateId; zero at non-terminating states.
    std::vector<double> mass;

    double total() const;
};

struct ValidationReport {
    bool acyclic = false;
    bool all_reachable = false;
    bool has_terminating = false;
    bool transpose_consistent = false;
    bool initial_in_range = false;
    std::vector<StateId> unreachable;

    bool ok() const {
        return acyclic && all_reachable && has_terminating && transpose_consistent && initial_in_range;
    }
    std::string summary() const;
};

// Kahn ordering; every edge (a->b) has a before b. Throws CycleDetected.
std::vector<StateId> topological_order(const EnvGraph& env);

ValidationReport validate_env(const EnvGraph& env);

// Probability of visiting each state from the initial state under the policy,
// computed in one topological pass. States with zero visit probability are
// never queried, so a policy may be undefined there.
std::vector<double> reaching_probabilities(const EnvGraph& env, const Policy& policy);

// Visit-and-stop mass per terminating state: mass(x) = u(x) * terminate_prob(x).
// Throws NonTerminatingPolicy if total mass strays from 1 by more than 1e-6.
TerminalDistribution terminating_distribution(const EnvGraph& env, const Policy& policy);

// Brute-force oracle: explicit sum over every complete trajectory, with
// products accumulated in log space. Throws TooManyTrajectories if the
// structural trajectory count exceeds the cap.
TerminalDistribution enumerate_trajectory_distribution(const EnvGraph& env, const Policy& policy,
                                                       std::int64_t max_trajectories);

// Ancestral sampling from the initial state; deterministic given the seed.
Trajectory sample_trajectory(const EnvGraph& env, const Policy& policy, std::uint64_t seed);

}  // namespace gfn
