#pragma once

#include "rainbow/graph.hpp"
#include "rainbow/witness.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rainbow {

// JSON policy: rationals are "p/q" strings, big integers are decimal strings,
// small structural integers (vertex ids, r, k, degrees) are JSON ints. No
// field is ever a float.

inline nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges)
        edges.push_back({u, v});
    return {{"vertices", g.n()}, {"edges", edges}};
}

inline Graph graph_from_json(const nlohmann::json& j) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return make_graph(j.at("vertices").get<int>(), edges);
}

inline nlohmann::json certificate_to_json(const WitnessCertificate& cert) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : cert.expansion.terms)
        terms.push_back({{"degree", t.degree}, {"coefficient", to_fraction_string(t.coefficient)}});
    nlohmann::json subgraphs = nlohmann::json::array();
    for (const auto& s : cert.expansion.subgraphs)
        subgraphs.push_back({{"edges", s.edge_subset},
                             {"degree", s.degree},
                             {"contribution", to_fraction_string(s.contribution)}});
    return {{"kind", "witness-certificate"},
            {"pattern", graph_to_json(cert.h)},
            {"r", cert.r},
            {"girth", cert.s},
            {"k", cert.k},
            {"epsilon", to_fraction_string(cert.epsilon)},
            {"baseline", to_fraction_string(cert.baseline)},
            {"density", to_fraction_string(cert.density)},
            {"gap", to_fraction_string(cert.gap)},
            {"expansion", terms},
            {"subgraphs", subgraphs}};
}

struct ParsedCertificate {
    Graph h;
    int r = 0;
    int s = 0;
    int k = 0;
    Rational epsilon;
    Rational baseline;
    Rational density;
    Rational gap;
    std::vector<ExpansionTerm> terms;
};

inline ParsedCertificate parse_certificate(const nlohmann::json& j) {
    if (j.at("kind").get<std::string>() != "witness-certificate")
        throw Error(ErrorKind::InvalidInput, "not a witness certificate");
    ParsedCertificate cert;
    cert.h = graph_from_json(j.at("pattern"));
    cert.r = j.at("r").get<int>();
    cert.s = j.at("girth").get<int>();
    cert.k = j.at("k").get<int>();
    cert.epsilon = parse_rational(j.at("epsilon").get<std::string>());
    cert.baseline = parse_rational(j.at("baseline").get<std::string>());
    cert.density = parse_rational(j.at("density").get<std::string>());
    cert.gap = parse_rational(j.at("gap").get<std::string>());
    for (const auto& t : j.at("expansion"))
        cert.terms.push_back(
            {t.at("degree").get<int>(), parse_rational(t.at("coefficient").get<std::string>())});
    return cert;
}

// Re-verifies a parsed certificate from its own fields alone: the expansion
// evaluated at epsilon must equal the recorded gap, the gap must be positive,
// and baseline + gap must equal the recorded density. No densities are
// recomputed, so agreement is exact or the certificate is rejected.
inline bool verify_certificate(const ParsedCertificate& cert) {
    Rational total = 0;
    for (const auto& t : cert.terms) {
        Rational power = 1;
        for (int i = 0; i < t.degree; ++i)
            power *= cert.epsilon;
        total += t.coefficient * power;
    }
    return total == cert.gap && cert.gap > 0 && cert.baseline + cert.gap == cert.density;
}

} // namespace rainbow
