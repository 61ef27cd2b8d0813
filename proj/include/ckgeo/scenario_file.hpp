#pragma once

// Scenario description files: nested key-value documents (JSON) naming the
// graph vertices, ranks, gluing words, and representation matrices. Files are
// always re-emitted through the one fixed serializer, so read/write round-trips
// are byte-exact.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ckgeo/admissible.hpp"
#include "ckgeo/errors.hpp"

namespace ckgeo {

inline nlohmann::json graph_to_json(const AdmissibleGraph& g) {
    nlohmann::json j;
    j["root"] = g.root;
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : g.vertices) j["vertices"].push_back({{"rank", v.rank}});
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges) {
        j["edges"].push_back({{"tail", e.tail},
                              {"head", e.head},
                              {"w_tail", e.w_tail.letters()},
                              {"w_head", e.w_head.letters()},
                              {"loop", e.loop}});
    }
    j["reps"] = nlohmann::json::array();
    for (const auto& r : g.reps) {
        nlohmann::json gens = nlohmann::json::array();
        for (const auto& m : r.gens) gens.push_back({m.a, m.b, m.c, m.d});
        j["reps"].push_back({{"gens", gens}});
    }
    return j;
}

inline AdmissibleGraph graph_from_json(const nlohmann::json& j) {
    AdmissibleGraph g;
    g.root = j.at("root").get<int>();
    for (const auto& v : j.at("vertices")) g.vertices.push_back({v.at("rank").get<int>()});
    for (const auto& e : j.at("edges")) {
        g.edges.push_back({e.at("tail").get<int>(), e.at("head").get<int>(),
                           FreeWord(e.at("w_tail").get<std::vector<int>>()),
                           FreeWord(e.at("w_head").get<std::vector<int>>()),
                           e.at("loop").get<bool>()});
    }
    for (const auto& r : j.at("reps")) {
        SchottkyRep rep;
        for (const auto& m : r.at("gens")) {
            rep.gens.push_back(MobiusIsometry(m.at(0).get<double>(), m.at(1).get<double>(),
                                              m.at(2).get<double>(), m.at(3).get<double>()));
        }
        rep.margin = verify_ping_pong(rep);
        g.reps.push_back(std::move(rep));
    }
    return g;
}

inline nlohmann::json scenario_description(const std::string& name) {
    nlohmann::json j;
    j["name"] = name;
    if (name == "z2-torus") {
        j["group"] = "Z^2";
    } else if (name == "seifert-f2xz") {
        j["group"] = "F_2 x Z";
    } else if (name == "flip-loopless") {
        j["graph"] = graph_to_json(flip_loopless());
    } else if (name == "flip-with-loop") {
        j["graph"] = graph_to_json(flip_with_loop());
    } else {
        throw UnknownScenario("unknown scenario: " + name);
    }
    return j;
}

// the one serializer; all scenario files on disk use exactly this form
inline std::string serialize_scenario(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline void write_scenario_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("write_scenario_file: cannot open " + path);
    os << serialize_scenario(j);
}

inline nlohmann::json read_scenario_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("read_scenario_file: cannot open " + path);
    return nlohmann::json::parse(is);
}

}  // namespace ckgeo
