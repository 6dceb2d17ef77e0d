#include "spillnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "spillnet/errors.hpp"

namespace spillnet {

namespace {

// Linearly interpolated quantile of sorted values.
double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    if (values.size() == 1) return values.front();
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace

SpilloverNetwork build_network(const ConnectednessReport& report, double edge_threshold) {
    if (!(edge_threshold >= 0.0 && edge_threshold <= 1.0)) {
        throw ConfigError("edge threshold must be a quantile in [0, 1]");
    }
    const Eigen::Index n = report.n_vars();
    SpilloverNetwork net;

    const Eigen::VectorXd abs_net = report.net.cwiseAbs();
    const double lo = abs_net.minCoeff();
    const double hi = abs_net.maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        NetworkNode node;
        node.ticker = report.tickers[static_cast<std::size_t>(i)];
        node.net = report.net[i];
        node.giver = report.net[i] > 0.0;
        node.size = (hi > lo) ? 0.3 + 0.7 * (abs_net[i] - lo) / (hi - lo) : 1.0;
        net.nodes.push_back(std::move(node));
    }

    std::vector<double> weights;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double w = std::abs(report.npdc(i, j));
            if (w > 0.0) weights.push_back(w);
        }
    }
    const double cutoff = weights.empty() ? 0.0 : quantile(weights, edge_threshold);

    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double transmit_ij = report.npdc(i, j);
            if (transmit_ij == 0.0) continue;
            NetworkEdge edge;
            const bool forward = transmit_ij > 0.0;
            edge.source = report.tickers[static_cast<std::size_t>(forward ? i : j)];
            edge.target = report.tickers[static_cast<std::size_t>(forward ? j : i)];
            edge.weight = std::abs(transmit_ij);
            edge.bold = edge.weight >= cutoff;
            net.edges.push_back(std::move(edge));
        }
    }
    return net;
}

std::string emit_dot(const SpilloverNetwork& net) {
    std::ostringstream out;
    char buf[40];
    out << "digraph spillovers {\n";
    out << "  node [shape=circle, style=filled];\n";
    for (const auto& node : net.nodes) {
        std::snprintf(buf, sizeof(buf), "%.3f", node.size);
        out << "  \"" << node.ticker << "\" [fillcolor=\""
            << (node.giver ? "#4477CC" : "#EECC44") << "\", width=" << buf
            << ", fixedsize=true];\n";
    }
    for (const auto& edge : net.edges) {
        std::snprintf(buf, sizeof(buf), "%.2f", edge.weight);
        out << "  \"" << edge.source << "\" -> \"" << edge.target << "\" [label=\"" << buf
            << "\", penwidth=" << (edge.bold ? "3.0" : "1.0") << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string emit_json(const SpilloverNetwork& net) {
    nlohmann::ordered_json j;
    j["schema"] = "spillnet.network.v1";
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& node : net.nodes) {
        nlohmann::ordered_json nj;
        nj["ticker"] = node.ticker;
        nj["role"] = node.giver ? "giver" : "receiver";
        nj["size"] = node.size;
        nj["net"] = node.net;
        j["nodes"].push_back(std::move(nj));
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& edge : net.edges) {
        nlohmann::ordered_json ej;
        ej["source"] = edge.source;
        ej["target"] = edge.target;
        ej["weight"] = edge.weight;
        ej["emphasis"] = edge.bold ? "bold" : "fine";
        j["edges"].push_back(std::move(ej));
    }
    return j.dump(2) + "\n";
}

SpilloverNetwork network_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    if (j.value("schema", "") != "spillnet.network.v1") {
        throw DataError("network json: unknown schema");
    }
    SpilloverNetwork net;
    for (const auto& nj : j.at("nodes")) {
        NetworkNode node;
        node.ticker = nj.at("ticker").get<std::string>();
        node.giver = nj.at("role").get<std::string>() == "giver";
        node.size = nj.at("size").get<double>();
        node.net = nj.at("net").get<double>();
        net.nodes.push_back(std::move(node));
    }
    for (const auto& ej : j.at("edges")) {
        NetworkEdge edge;
        edge.source = ej.at("source").get<std::string>();
        edge.target = ej.at("target").get<std::string>();
        edge.weight = ej.at("weight").get<double>();
        edge.bold = ej.at("emphasis").get<std::string>() == "bold";
        net.edges.push_back(std::move(edge));
    }
    return net;
}

}  // namespace spillnet
