#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bandgame/types.hpp"

namespace bandgame {

// Result rule of the game. Each edge grants requests in full while total
// demand fits its capacity, otherwise proportionally with floor:
//   x_{i,j} = floor(r_{i,j} * min(1, b_j / sum_i r_{i,j})).
// A zero-demand column yields a zero column (no division).
inline Allocation proportional_result(const IntMat& requests, const std::vector<long long>& capacities) {
    if (requests.cols() != capacities.size())
        throw std::invalid_argument("proportional_result: capacity count mismatch");
    for (std::size_t j = 0; j < capacities.size(); ++j)
        if (capacities[j] < 1) throw std::invalid_argument("proportional_result: capacity < 1");
    for (std::size_t i = 0; i < requests.rows(); ++i)
        for (std::size_t j = 0; j < requests.cols(); ++j)
            if (requests(i, j) < 0) throw std::invalid_argument("proportional_result: negative request");

    Allocation out{IntMat(requests.rows(), requests.cols())};
    for (std::size_t j = 0; j < requests.cols(); ++j) {
        long long demand = requests.col_sum(j);
        if (demand <= capacities[j]) {
            for (std::size_t i = 0; i < requests.rows(); ++i) out.granted(i, j) = requests(i, j);
        } else {
            for (std::size_t i = 0; i < requests.rows(); ++i)
                out.granted(i, j) = requests(i, j) * capacities[j] / demand; // floor, all terms >= 0
        }
    }
    return out;
}

// Round each x_{i,j} down to a multiple of u_i (constraint (i) post-pass;
// Eq. 4 itself does not enforce it).
inline Allocation align_to_units(const Allocation& alloc, const std::vector<FlServerSpec>& fl_servers) {
    if (alloc.granted.rows() != fl_servers.size())
        throw std::invalid_argument("align_to_units: server count mismatch");
    Allocation out = alloc;
    for (std::size_t i = 0; i < out.granted.rows(); ++i) {
        long long u = fl_servers[i].units_per_client;
        for (std::size_t j = 0; j < out.granted.cols(); ++j)
            out.granted(i, j) = out.granted(i, j) / u * u;
    }
    return out;
}

inline ConstraintReport check_constraints(const SystemInstance& inst, const StrategyProfile& profile,
                                          const Allocation& alloc) {
    profile.validate(inst);
    if (alloc.granted.rows() != inst.num_fl() || alloc.granted.cols() != inst.num_edges())
        throw std::invalid_argument("check_constraints: allocation dimensions mismatch");

    ConstraintReport report;
    const std::size_t s = inst.num_fl(), e = inst.num_edges();
    for (std::size_t i = 0; i < s; ++i) {
        long long u = inst.fl_servers[i].units_per_client;
        for (std::size_t j = 0; j < e; ++j) {
            long long x = alloc.granted(i, j);
            if (x % u != 0)
                report.violations.push_back({ConstraintKind::multiple_of_u, (long long)i, (long long)j,
                                             std::to_string(x) + " not a multiple of " + std::to_string(u)});
            long long cap = u * inst.clients.counts(i, j);
            if (x > cap)
                report.violations.push_back({ConstraintKind::demand_cap, (long long)i, (long long)j,
                                             std::to_string(x) + " > " + std::to_string(cap)});
        }
    }
    for (std::size_t j = 0; j < e; ++j) {
        long long sold = alloc.col_sum(j);
        if (sold > inst.edge_servers[j].capacity)
            report.violations.push_back({ConstraintKind::capacity, -1, (long long)j,
                                         std::to_string(sold) + " > " + std::to_string(inst.edge_servers[j].capacity)});
    }
    for (std::size_t i = 0; i < s; ++i) {
        Rat spend{0};
        for (std::size_t j = 0; j < e; ++j) spend += profile.prices[j] * Rat(alloc.granted(i, j));
        if (spend > inst.fl_servers[i].fund)
            report.violations.push_back({ConstraintKind::budget, (long long)i, -1,
                                         "spend " + rat_to_string(spend) + " > fund " +
                                             rat_to_string(inst.fl_servers[i].fund)});
    }
    return report;
}

// Definition 1: u_E = log(1 + p_j * x_{.,j} / sum_i f_i).
inline double edge_utility(const Rat& price, long long sold, const Rat& total_funds) {
    if (total_funds <= Rat(0)) throw std::invalid_argument("edge_utility: total funds must be positive");
    return std::log1p(rat_to_double(price * Rat(sold) / total_funds));
}

// Definition 2: u_S = log(1 + x_{i,.} / (u_i * cbar^i)).
inline double fl_utility(long long acquired, long long units_per_client, long long total_clients) {
    if (total_clients < 1)
        throw std::invalid_argument("fl_utility: utility undefined for a server with no selected clients");
    return std::log1p(static_cast<double>(acquired) /
                      static_cast<double>(units_per_client * total_clients));
}

// Competing-system predicate. Clause (i): the contention graph on FL servers
// (edge when two servers both have a selected client at some edge server) is
// connected, which covers the definition's transitive case. Clause (ii):
// every edge server has at least two FL servers with a selected client.
inline bool is_competing_system(const SystemInstance& inst) {
    const std::size_t s = inst.num_fl(), e = inst.num_edges();
    for (std::size_t j = 0; j < e; ++j) {
        int contenders = 0;
        for (std::size_t i = 0; i < s; ++i)
            if (inst.clients.counts(i, j) >= 1) ++contenders;
        if (contenders < 2) return false;
    }
    if (s == 1) return true; // unreachable given clause (ii) needs two contenders, kept for clarity
    std::vector<std::size_t> parent(s);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t j = 0; j < e; ++j) {
        std::size_t first = s;
        for (std::size_t i = 0; i < s; ++i) {
            if (inst.clients.counts(i, j) < 1) continue;
            if (first == s) first = i;
            else parent[find(i)] = find(first);
        }
    }
    std::size_t root = find(0);
    for (std::size_t i = 1; i < s; ++i)
        if (find(i) != root) return false;
    return true;
}

// Post-processing a granted row into what the server actually keeps:
// align to u_i multiples, clamp per edge to the demand cap u_i * cbar^i_j,
// then drop whole u_i blocks from the most expensive edges (ties: higher
// index first) until the row fits the fund. Keeping the cheapest blocks
// maximizes kept units, so settled totals are monotone in own requests.
inline std::vector<long long> settle_row(const SystemInstance& inst, const std::vector<Rat>& prices,
                                         std::size_t i, std::vector<long long> row) {
    const std::size_t e = inst.num_edges();
    const long long u = inst.fl_servers[i].units_per_client;
    for (std::size_t j = 0; j < e; ++j) {
        row[j] = row[j] / u * u;
        row[j] = std::min(row[j], u * inst.clients.counts(i, j));
    }
    auto spend = [&]() {
        Rat t{0};
        for (std::size_t j = 0; j < e; ++j) t += prices[j] * Rat(row[j]);
        return t;
    };
    while (spend() > inst.fl_servers[i].fund) {
        std::size_t worst = e;
        for (std::size_t j = 0; j < e; ++j) {
            if (row[j] < u) continue;
            if (worst == e || prices[j] >= prices[worst]) worst = j;
        }
        if (worst == e) { // nothing left to drop; only possible with zero-price rows
            break;
        }
        row[worst] -= u;
    }
    return row;
}

}  // namespace bandgame
