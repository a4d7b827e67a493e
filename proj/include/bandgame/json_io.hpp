#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bandgame/types.hpp"

namespace bandgame {

using Json = nlohmann::ordered_json;

inline Rat rat_from_json(const Json& v) {
    if (v.is_number()) return rat_from_double(v.get<double>());
    if (v.is_array() && v.size() == 2) return Rat(v[0].get<long long>(), v[1].get<long long>());
    if (v.is_object() && v.contains("num") && v.contains("den"))
        return Rat(v["num"].get<long long>(), v["den"].get<long long>());
    throw std::invalid_argument("expected a number, [num,den] or {num,den}");
}

inline Json rat_to_json(const Rat& r) {
    Json v;
    v["num"] = r.numerator();
    v["den"] = r.denominator();
    v["value"] = rat_to_double(r);
    return v;
}

// Fixed wire schema: fl_servers[{id,fund,units_per_client}],
// edge_servers[{id,capacity}], client_counts (s x e array).
inline Json instance_to_json(const SystemInstance& inst) {
    Json doc;
    doc["fl_servers"] = Json::array();
    for (const auto& s : inst.fl_servers) {
        Json v;
        v["id"] = s.id;
        v["fund"] = rat_to_double(s.fund);
        v["units_per_client"] = s.units_per_client;
        doc["fl_servers"].push_back(v);
    }
    doc["edge_servers"] = Json::array();
    for (const auto& e : inst.edge_servers) {
        Json v;
        v["id"] = e.id;
        v["capacity"] = e.capacity;
        doc["edge_servers"].push_back(v);
    }
    doc["client_counts"] = Json::array();
    for (std::size_t i = 0; i < inst.clients.counts.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < inst.clients.counts.cols(); ++j)
            row.push_back(inst.clients.counts(i, j));
        doc["client_counts"].push_back(row);
    }
    return doc;
}

inline SystemInstance instance_from_json(const Json& doc) {
    SystemInstance inst;
    for (const auto& v : doc.at("fl_servers")) {
        FlServerSpec s;
        s.id = v.at("id").get<int>();
        s.fund = rat_from_json(v.at("fund"));
        s.units_per_client = v.at("units_per_client").get<long long>();
        inst.fl_servers.push_back(s);
    }
    for (const auto& v : doc.at("edge_servers")) {
        EdgeServerSpec e;
        e.id = v.at("id").get<int>();
        e.capacity = v.at("capacity").get<long long>();
        inst.edge_servers.push_back(e);
    }
    const auto& counts = doc.at("client_counts");
    IntMat m(counts.size(), counts.empty() ? 0 : counts[0].size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i].size() != m.cols()) throw std::invalid_argument("client_counts: ragged rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = counts[i][j].get<long long>();
    }
    inst.clients.counts = m;
    inst.validate();
    return inst;
}

inline StrategyProfile profile_from_json(const Json& doc) {
    StrategyProfile p;
    for (const auto& v : doc.at("prices")) p.prices.push_back(rat_from_json(v));
    const auto& reqs = doc.at("requests");
    IntMat m(reqs.size(), reqs.empty() ? 0 : reqs[0].size());
    for (std::size_t i = 0; i < reqs.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = reqs[i][j].get<long long>();
    p.requests = m;
    return p;
}

inline Json matrix_to_json(const IntMat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json doc;
    in >> doc;
    return doc;
}

inline void save_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace bandgame
