#include "gfn/dag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <queue>
#include <random>

namespace gfn {

EnvGraph env_from_children(StateId initial, std::vector<std::vector<StateId>> children,
                           std::vector<std::uint8_t> terminating) {
    EnvGraph env;
    env.initial = initial;
    env.children = std::move(children);
    env.terminating = std::move(terminating);
    env.parents.assign(env.children.size(), {});
    for (StateId s = 0; s < env.num_states(); ++s) {
        for (StateId c : env.children[static_cast<size_t>(s)]) {
            env.parents[static_cast<size_t>(c)].push_back(s);
        }
    }
    return env;
}

double TransitionDistribution::total() const {
    double t = terminate_prob;
    for (double p : probs) t += p;
    return t;
}

TabularPolicy uniform_policy(const EnvGraph& env) {
    std::vector<TransitionDistribution> rows(static_cast<size_t>(env.num_states()));
    for (StateId s = 0; s < env.num_states(); ++s) {
        size_t nc = env.children[static_cast<size_t>(s)].size();
        size_t na = nc + (env.is_terminating(s) ? 1 : 0);
        TransitionDistribution td;
        td.probs.assign(nc, na > 0 ? 1.0 / static_cast<double>(na) : 0.0);
        td.terminate_prob = env.is_terminating(s) ? 1.0 / static_cast<double>(na) : 0.0;
        rows[static_cast<size_t>(s)] = std::move(td);
    }
    return TabularPolicy(std::move(rows));
}

double TerminalDistribution::total() const {
    double t = 0.0;
    for (double m : mass) t += m;
    return t;
}

std::string ValidationReport::summary() const {
    std::string out;
    out += acyclic ? "acyclic: ok" : "acyclic: CycleDetected";
    out += all_reachable ? "; reachability: ok" : "; reachability: UnreachableState";
    for (StateId s : unreachable) {
        out += " ";
        out += std::to_string(s);
    }
    out += has_terminating ? "; terminating set: ok" : "; terminating set: empty";
    out += transpose_consistent ? "; parents/children: ok" : "; parents/children: inconsistent";
    out += initial_in_range ? "" : "; initial: out of range";
    return out;
}

std::vector<StateId> topological_order(const EnvGraph& env) {
    const int n = env.num_states();
    std::vector<int> indegree(static_cast<size_t>(n), 0);
    for (StateId s = 0; s < n; ++s) {
        for (StateId c : env.children[static_cast<size_t>(s)]) {
            indegree[static_cast<size_t>(c)]++;
        }
    }
    std::vector<StateId> order;
    order.reserve(static_cast<size_t>(n));
    // Smallest-id-first queue keeps the order deterministic.
    std::priority_queue<StateId, std::vector<StateId>, std::greater<>> ready;
    for (StateId s = 0; s < n; ++s) {
        if (indegree[static_cast<size_t>(s)] == 0) ready.push(s);
    }
    while (!ready.empty()) {
        StateId s = ready.top();
        ready.pop();
        order.push_back(s);
        for (StateId c : env.children[static_cast<size_t>(s)]) {
            if (--indegree[static_cast<size_t>(c)] == 0) ready.push(c);
        }
    }
    if (static_cast<int>(order.size()) != n) {
        throw CycleDetected("environment graph contains a cycle");
    }
    return order;
}

ValidationReport validate_env(const EnvGraph& env) {
    ValidationReport rep;
    const int n = env.num_states();
    rep.initial_in_range = env.initial >= 0 && env.initial < n &&
                           env.parents.size() == env.children.size() &&
                           env.terminating.size() == env.children.size();
    if (!rep.initial_in_range) return rep;

    try {
        topological_order(env);
        rep.acyclic = true;
    } catch (const CycleDetected&) {
        rep.acyclic = false;
    }

    std::vector<std::uint8_t> seen(static_cast<size_t>(n), 0);
    std::queue<StateId> bfs;
    bfs.push(env.initial);
    seen[static_cast<size_t>(env.initial)] = 1;
    while (!bfs.empty()) {
        StateId s = bfs.front();
        bfs.pop();
        for (StateId c : env.children[static_cast<size_t>(s)]) {
            if (!seen[static_cast<size_t>(c)]) {
                seen[static_cast<size_t>(c)] = 1;
                bfs.push(c);
            }
        }
    }
    rep.all_reachable = true;
    for (StateId s = 0; s < n; ++s) {
        if (!seen[static_cast<size_t>(s)]) {
            rep.all_reachable = false;
            rep.unreachable.push_back(s);
        }
    }

    rep.has_terminating = std::any_of(env.terminating.begin(), env.terminating.end(),
                                      [](std::uint8_t t) { return t != 0; });

    // parents must be the exact transpose of children (as edge multisets).
    rep.transpose_consistent = true;
    std::vector<std::vector<StateId>> derived(static_cast<size_t>(n));
    for (StateId s = 0; s < n && rep.transpose_consistent; ++s) {
        for (StateId c : env.children[static_cast<size_t>(s)]) {
            if (c < 0 || c >= n) {
                rep.transpose_consistent = false;
                break;
            }
            derived[static_cast<size_t>(c)].push_back(s);
        }
    }
    if (rep.transpose_consistent) {
        for (StateId s = 0; s < n; ++s) {
            auto got = env.parents[static_cast<size_t>(s)];
            auto want = derived[static_cast<size_t>(s)];
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            if (got != want) {
                rep.transpose_consistent = false;
                break;
            }
        }
    }
    return rep;
}

namespace {

void check_alignment(const EnvGraph& env, StateId s, const TransitionDistribution& td) {
    if (td.probs.size() != env.children[static_cast<size_t>(s)].size()) {
        throw ShapeMismatch("policy distribution at state " + std::to_string(s) +
                            " does not align with its child list");
    }
}

}  // namespace

std::vector<double> reaching_probabilities(const EnvGraph& env, const Policy& policy) {
    const auto order = topological_order(env);
    std::vector<double> u(static_cast<size_t>(env.num_states()), 0.0);
    u[static_cast<size_t>(env.initial)] = 1.0;
    for (StateId s : order) {
        const double us = u[static_cast<size_t>(s)];
        if (us == 0.0) continue;
        const auto td = policy.transition(s);
        check_alignment(env, s, td);
        const auto& kids = env.children[static_cast<size_t>(s)];
        for (size_t i = 0; i < kids.size(); ++i) {
            u[static_cast<size_t>(kids[i])] += us * td.probs[i];
        }
    }
    return u;
}

TerminalDistribution terminating_distribution(const EnvGraph& env, const Policy& policy) {
    const auto order = topological_order(env);
    std::vector<double> u(static_cast<size_t>(env.num_states()), 0.0);
    TerminalDistribution dist;
    dist.mass.assign(static_cast<size_t>(env.num_states()), 0.0);
    u[static_cast<size_t>(env.initial)] = 1.0;
    for (StateId s : order) {
        const double us = u[static_cast<size_t>(s)];
        if (us == 0.0) continue;
        const auto td = policy.transition(s);
        check_alignment(env, s, td);
        if (env.is_terminating(s)) {
            dist.mass[static_cast<size_t>(s)] = us * td.terminate_prob;
        }
        const auto& kids = env.children[static_cast<size_t>(s)];
        for (size_t i = 0; i < kids.size(); ++i) {
            u[static_cast<size_t>(kids[i])] += us * td.probs[i];
        }
    }
    const double total = dist.total();
    if (std::abs(total - 1.0) > 1e-6) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "terminal mass %.12g deviates from 1 (probability leak)", total);
        throw NonTerminatingPolicy(buf);
    }
    return dist;
}

namespace {

struct Enumerator {
    const EnvGraph& env;
    const Policy& policy;
    std::int64_t cap;
    std::int64_t count = 0;
    std::vector<std::optional<TransitionDistribution>> cache;
    std::vector<double>& mass;

    Enumerator(const EnvGraph& e, const Policy& p, std::int64_t cap, std::vector<double>& mass)
        : env(e), policy(p), cap(cap), cache(static_cast<size_t>(e.num_states())), mass(mass) {}

    const TransitionDistribution& at(StateId s) {
        auto& slot = cache[static_cast<size_t>(s)];
        if (!slot) {
            auto td = policy.transition(s);
            check_alignment(env, s, td);
            slot = std::move(td);
        }
        return *slot;
    }

    void walk(StateId s, double logp) {
        const auto& td = at(s);
        if (env.is_terminating(s)) {
            if (++count > cap) {
                throw TooManyTrajectories("complete trajectory count exceeds cap " + std::to_string(cap));
            }
            if (td.terminate_prob > 0.0) {
                mass[static_cast<size_t>(s)] += std::exp(logp + std::log(td.terminate_prob));
            }
        }
        const auto& kids = env.children[static_cast<size_t>(s)];
        for (size_t i = 0; i < kids.size(); ++i) {
            const double p = td.probs[i];
            walk(kids[i], p > 0.0 ? logp + std::log(p) : -std::numeric_limits<double>::infinity());
        }
    }
};

}  // namespace

TerminalDistribution enumerate_trajectory_distribution(const EnvGraph& env, const Policy& policy,
                                                       std::int64_t max_trajectories) {
    TerminalDistribution dist;
    dist.mass.assign(static_cast<size_t>(env.num_states()), 0.0);
    Enumerator e(env, policy, max_trajectories, dist.mass);
    e.walk(env.initial, 0.0);
    return dist;
}

Trajectory sample_trajectory(const EnvGraph& env, const Policy& policy, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Trajectory traj;
    StateId s = env.initial;
    for (int steps = 0;; ++steps) {
        if (steps > env.num_states()) {
            throw MaxLengthExceeded("trajectory exceeded state count; invalid environment or policy");
        }
        traj.states.push_back(s);
        const auto td = policy.transition(s);
        check_alignment(env, s, td);
        const double r = unif(rng) * td.total();
        double acc = 0.0;
        StateId next = -1;
        const auto& kids = env.children[static_cast<size_t>(s)];
        for (size_t i = 0; i < kids.size(); ++i) {
            acc += td.probs[i];
            if (r < acc) {
                next = kids[i];
                break;
            }
        }
        if (next < 0) {
            // Fell through to the terminate edge.
            if (!env.is_terminating(s) || td.terminate_prob <= 0.0) {
                throw NonTerminatingPolicy("no action drawn at state " + std::to_string(s));
            }
            return traj;
        }
        s = next;
    }
}

}  // namespace gfn
