#pragma once

#include <string>
#include <vector>

#include "spillnet/connectedness.hpp"

namespace spillnet {

/// Directed spillover graph. Each unordered pair contributes at most one
/// edge, pointing away from the pairwise net transmitter.
struct NetworkNode {
    std::string ticker;
    bool giver = false;  // net > 0; ties count as receiver
    double size = 1.0;   // |NET| min-max scaled to [0.3, 1.0]
    double net = 0.0;
};

struct NetworkEdge {
    std::string source;
    std::string target;
    double weight = 0.0;  // |net pairwise transmission| in percent
    bool bold = false;
};

struct SpilloverNetwork {
    std::vector<NetworkNode> nodes;
    std::vector<NetworkEdge> edges;
};

/// edge_threshold is the bold-line quantile of the positive pair weights
/// (default 0.75). Zero-weight pairs are omitted.
SpilloverNetwork build_network(const ConnectednessReport& report, double edge_threshold = 0.75);

/// Graphviz document: giver nodes "#4477CC", receiver nodes "#EECC44",
/// width proportional to node size, bold edges penwidth=3.0, fine 1.0.
/// Byte-deterministic for identical inputs.
std::string emit_dot(const SpilloverNetwork& net);

/// Lossless JSON serialization with stable key order and a schema version.
std::string emit_json(const SpilloverNetwork& net);
SpilloverNetwork network_from_json(const std::string& text);

}  // namespace spillnet
