#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandgame/rational.hpp"

namespace bandgame {

// Dense row-major integer matrix, sized s x e everywhere in this library.
class IntMat {
public:
    IntMat() = default;
    IntMat(std::size_t rows, std::size_t cols, long long fill = 0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static IntMat from_rows(const std::vector<std::vector<long long>>& rows) {
        if (rows.empty()) return IntMat();
        IntMat m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("IntMat: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    long long& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    long long operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    long long row_sum(std::size_t i) const {
        long long s = 0;
        for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j);
        return s;
    }
    long long col_sum(std::size_t j) const {
        long long s = 0;
        for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, j);
        return s;
    }
    long long total() const { return std::accumulate(data_.begin(), data_.end(), 0LL); }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<long long> data_;
};

struct FlServerSpec {
    int id = 0;
    Rat fund{0};                    // f_i
    long long units_per_client = 1; // u_i
};

struct EdgeServerSpec {
    int id = 0;
    long long capacity = 1; // b_j
};

// Selected-client counts c-bar^i_j per (FL server, edge server).
struct ClientDistribution {
    IntMat counts;
    long long row_total(std::size_t i) const { return counts.row_sum(i); }
};

struct SystemInstance {
    std::vector<FlServerSpec> fl_servers;
    std::vector<EdgeServerSpec> edge_servers;
    ClientDistribution clients;

    std::size_t num_fl() const { return fl_servers.size(); }
    std::size_t num_edges() const { return edge_servers.size(); }

    Rat total_funds() const {
        Rat f{0};
        for (const auto& s : fl_servers) f += s.fund;
        return f;
    }
    std::vector<long long> capacities() const {
        std::vector<long long> b;
        b.reserve(edge_servers.size());
        for (const auto& e : edge_servers) b.push_back(e.capacity);
        return b;
    }
    long long total_capacity() const {
        long long t = 0;
        for (const auto& e : edge_servers) t += e.capacity;
        return t;
    }
    // Total bandwidth demanded at edge j: sum_i u_i * cbar^i_j.
    long long demand_at(std::size_t j) const {
        long long d = 0;
        for (std::size_t i = 0; i < num_fl(); ++i)
            d += fl_servers[i].units_per_client * clients.counts(i, j);
        return d;
    }

    void validate() const {
        if (fl_servers.empty()) throw std::invalid_argument("instance: no FL servers");
        if (edge_servers.empty()) throw std::invalid_argument("instance: no edge servers");
        if (clients.counts.rows() != fl_servers.size() || clients.counts.cols() != edge_servers.size())
            throw std::invalid_argument("instance: client_counts dimensions mismatch");
        for (const auto& s : fl_servers) {
            if (s.fund < Rat(0)) throw std::invalid_argument("instance: negative fund");
            if (s.units_per_client < 1) throw std::invalid_argument("instance: units_per_client < 1");
        }
        for (const auto& e : edge_servers)
            if (e.capacity < 1) throw std::invalid_argument("instance: capacity < 1");
        for (std::size_t i = 0; i < clients.counts.rows(); ++i)
            for (std::size_t j = 0; j < clients.counts.cols(); ++j)
                if (clients.counts(i, j) < 0) throw std::invalid_argument("instance: negative client count");
    }
};

// Leader prices p_j plus follower requests r_{i,j} (strategy space of Eq. 2:
// 0 <= r_{i,j} <= b_j, every p_j > 0).
struct StrategyProfile {
    std::vector<Rat> prices;
    IntMat requests;

    void validate(const SystemInstance& inst) const {
        if (prices.size() != inst.num_edges()) throw std::invalid_argument("profile: price count mismatch");
        for (const auto& p : prices)
            if (p <= Rat(0)) throw std::invalid_argument("profile: non-positive price");
        if (requests.rows() != inst.num_fl() || requests.cols() != inst.num_edges())
            throw std::invalid_argument("profile: request dimensions mismatch");
        for (std::size_t i = 0; i < requests.rows(); ++i)
            for (std::size_t j = 0; j < requests.cols(); ++j) {
                if (requests(i, j) < 0) throw std::invalid_argument("profile: negative request");
                if (requests(i, j) > inst.edge_servers[j].capacity)
                    throw std::invalid_argument("profile: request above capacity");
            }
    }
};

// Granted bandwidth matrix x_{i,j}.
struct Allocation {
    IntMat granted;

    long long row_sum(std::size_t i) const { return granted.row_sum(i); }
    long long col_sum(std::size_t j) const { return granted.col_sum(j); }
    long long total() const { return granted.total(); }
};

enum class ConstraintKind { multiple_of_u, demand_cap, capacity, budget };

inline const char* constraint_name(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::multiple_of_u: return "multiple_of_u";
        case ConstraintKind::demand_cap: return "demand_cap";
        case ConstraintKind::capacity: return "capacity";
        case ConstraintKind::budget: return "budget";
    }
    return "?";
}

struct ConstraintViolation {
    ConstraintKind kind;
    long long i = -1; // FL server index, -1 when not applicable
    long long j = -1; // edge index, -1 when not applicable
    std::string detail;
};

struct ConstraintReport {
    std::vector<ConstraintViolation> violations;
    bool satisfied() const { return violations.empty(); }
};

}  // namespace bandgame
