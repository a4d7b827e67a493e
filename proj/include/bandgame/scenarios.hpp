#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "bandgame/types.hpp"

namespace bandgame {

// Thin wrapper over mt19937_64 with fixed mapping functions, so that streams
// are bit-identical across platforms (std distributions are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do { v = eng_(); } while (v >= limit);
        return v % n;
    }

    long long uniform_int(long long lo, long long hi) { // inclusive bounds
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double real01() { return (eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

// Heterogeneity knobs of the experimental settings. JSON keys are fixed:
// s,e,clients_per_fl,capacity,alpha,beta,gamma,delta,rho,f0,seed,equal_data.
struct ScenarioSpec {
    long long s = 5;
    long long e = 5;
    long long clients_per_fl = 50; // c
    long long capacity = 10;       // b_j, uniform across edges
    double alpha = 0.0;
    double beta = 1.0;
    double gamma = 0.0;
    double delta = 0.0;
    double rho = 1.0;
    double f0 = 0.5;
    std::uint64_t seed = 0;
    bool equal_data = false;
};

inline nlohmann::ordered_json scenario_to_json(const ScenarioSpec& sp) {
    nlohmann::ordered_json j;
    j["s"] = sp.s;
    j["e"] = sp.e;
    j["clients_per_fl"] = sp.clients_per_fl;
    j["capacity"] = sp.capacity;
    j["alpha"] = sp.alpha;
    j["beta"] = sp.beta;
    j["gamma"] = sp.gamma;
    j["delta"] = sp.delta;
    j["rho"] = sp.rho;
    j["f0"] = sp.f0;
    j["seed"] = sp.seed;
    j["equal_data"] = sp.equal_data;
    return j;
}

inline ScenarioSpec scenario_from_json(const nlohmann::json& j) {
    ScenarioSpec sp;
    sp.s = j.value("s", sp.s);
    sp.e = j.value("e", sp.e);
    sp.clients_per_fl = j.value("clients_per_fl", sp.clients_per_fl);
    sp.capacity = j.value("capacity", sp.capacity);
    sp.alpha = j.value("alpha", sp.alpha);
    sp.beta = j.value("beta", sp.beta);
    sp.gamma = j.value("gamma", sp.gamma);
    sp.delta = j.value("delta", sp.delta);
    sp.rho = j.value("rho", sp.rho);
    sp.f0 = j.value("f0", sp.f0);
    sp.seed = j.value("seed", sp.seed);
    sp.equal_data = j.value("equal_data", sp.equal_data);
    return sp;
}

// Count rounding rule for alpha*s, beta*e, gamma*s, delta*s.
inline long long round_count(double x) { return static_cast<long long>(std::floor(x + 0.5)); }

struct ClientRecord {
    long long fl_id;
    long long edge_id;
    long long data_size; // d^i_{j,k}
};

struct ClientPopulation {
    std::vector<ClientRecord> records; // grouped by FL server, in draw order
};

// The first round(alpha*s) FL servers place their clients uniformly over the
// first round(beta*e) edges; the rest place uniformly over all e edges.
// Data sizes are uniform in [50,150] unless equal_data forces a constant.
inline ClientPopulation gen_client_distribution(const ScenarioSpec& sp, Rng& rng) {
    if (sp.s < 1 || sp.e < 1) throw std::invalid_argument("scenario: s and e must be >= 1");
    long long restricted = round_count(sp.alpha * static_cast<double>(sp.s));
    long long edge_pool = round_count(sp.beta * static_cast<double>(sp.e));
    if (sp.alpha > 0.0 && edge_pool == 0)
        throw std::invalid_argument("scenario: beta*e rounds to zero while alpha > 0");

    ClientPopulation pop;
    pop.records.reserve(static_cast<std::size_t>(sp.s * sp.clients_per_fl));
    for (long long i = 0; i < sp.s; ++i) {
        long long pool = (i < restricted) ? edge_pool : sp.e;
        for (long long k = 0; k < sp.clients_per_fl; ++k) {
            ClientRecord rec;
            rec.fl_id = i;
            rec.edge_id = static_cast<long long>(rng.below(static_cast<std::uint64_t>(pool)));
            rec.data_size = sp.equal_data ? 100 : rng.uniform_int(50, 150);
            pop.records.push_back(rec);
        }
    }
    return pop;
}

// round(gamma*s) highest-index servers get f0 + k*(1-f0)/m for k=1..m; the
// rest keep f0. Exact rationals so budget boundaries stay crisp downstream.
inline std::vector<Rat> gen_funds(const ScenarioSpec& sp) {
    if (sp.gamma < 0.0 || sp.gamma > 1.0) throw std::invalid_argument("scenario: gamma out of range");
    Rat f0 = rat_from_double(sp.f0);
    std::vector<Rat> funds(static_cast<std::size_t>(sp.s), f0);
    long long m = round_count(sp.gamma * static_cast<double>(sp.s));
    for (long long k = 1; k <= m; ++k) {
        std::size_t idx = static_cast<std::size_t>(sp.s - m + k - 1);
        funds[idx] = f0 + Rat(k, m) * (Rat(1) - f0);
    }
    return funds;
}

// round(delta*s) highest-index servers get u = 1 + k*(s-1)/m rounded
// half-to-even (min 1); the rest get u = 1.
inline std::vector<long long> gen_units(const ScenarioSpec& sp) {
    if (sp.delta < 0.0 || sp.delta > 1.0) throw std::invalid_argument("scenario: delta out of range");
    std::vector<long long> units(static_cast<std::size_t>(sp.s), 1);
    long long m = round_count(sp.delta * static_cast<double>(sp.s));
    for (long long k = 1; k <= m; ++k) {
        std::size_t idx = static_cast<std::size_t>(sp.s - m + k - 1);
        Rat raw = Rat(1) + Rat(k * (sp.s - 1), m);
        units[idx] = std::max(1LL, rat_round_half_even(raw));
    }
    return units;
}

// Per-round client selection: exactly round(rho*|C_i|) clients per FL server,
// sampled without replacement with weights proportional to data size. With
// rho = 1 every client is selected.
inline ClientDistribution select_clients(const ClientPopulation& pop, long long s, long long e,
                                         double rho, Rng& rng) {
    if (rho <= 0.0 || rho > 1.0) throw std::invalid_argument("select_clients: rho out of (0,1]");
    IntMat counts(static_cast<std::size_t>(s), static_cast<std::size_t>(e));

    std::vector<std::vector<const ClientRecord*>> by_fl(static_cast<std::size_t>(s));
    for (const auto& rec : pop.records) by_fl[static_cast<std::size_t>(rec.fl_id)].push_back(&rec);

    for (long long i = 0; i < s; ++i) {
        auto& clients = by_fl[static_cast<std::size_t>(i)];
        long long want = round_count(rho * static_cast<double>(clients.size()));
        if (want >= static_cast<long long>(clients.size())) {
            for (const auto* rec : clients) counts(rec->fl_id, rec->edge_id) += 1;
            continue;
        }
        std::vector<const ClientRecord*> remaining = clients;
        long long weight_sum = 0;
        for (const auto* rec : remaining) weight_sum += rec->data_size;
        for (long long pick = 0; pick < want; ++pick) {
            long long r = rng.uniform_int(0, weight_sum - 1);
            std::size_t chosen = 0;
            long long acc = 0;
            for (std::size_t idx = 0; idx < remaining.size(); ++idx) {
                acc += remaining[idx]->data_size;
                if (r < acc) { chosen = idx; break; }
            }
            counts(remaining[chosen]->fl_id, remaining[chosen]->edge_id) += 1;
            weight_sum -= remaining[chosen]->data_size;
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(chosen));
        }
    }
    return ClientDistribution{counts};
}

// Full pipeline: population + funds + units + selection -> SystemInstance.
inline SystemInstance build_instance(const ScenarioSpec& sp) {
    Rng rng(sp.seed);
    ClientPopulation pop = gen_client_distribution(sp, rng);
    std::vector<Rat> funds = gen_funds(sp);
    std::vector<long long> units = gen_units(sp);
    ClientDistribution dist = select_clients(pop, sp.s, sp.e, sp.rho, rng);

    SystemInstance inst;
    for (long long i = 0; i < sp.s; ++i)
        inst.fl_servers.push_back({static_cast<int>(i), funds[static_cast<std::size_t>(i)],
                                   units[static_cast<std::size_t>(i)]});
    for (long long j = 0; j < sp.e; ++j)
        inst.edge_servers.push_back({static_cast<int>(j), sp.capacity});
    inst.clients = dist;
    inst.validate();
    return inst;
}

}  // namespace bandgame
