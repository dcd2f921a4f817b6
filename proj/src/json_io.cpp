#include "vmet/json_io.hpp"

#include <sstream>

namespace vmet::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw JsonFormatError(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
    return *it;
}

std::string string_at(const json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get<std::string>();
}

}  // namespace

json to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_string()) return Rational::parse(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const std::invalid_argument& e) {
        bad(where, e.what());
    }
    bad(where, "expected a rational as a string like \"3/4\" (floats are inexact)");
}

json to_json(const ValueSet& v) {
    json values = json::array();
    for (const Rational& r : v.values()) values.push_back(to_json(r));
    return json{{"values", std::move(values)}};
}

ValueSet value_set_from_json(const json& j) {
    const json& values = j.is_array() ? j : field(j, "values", "value set");
    if (!values.is_array()) bad("value set", "\"values\" must be an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out.push_back(rational_from_json(values[i], "value set entry " + std::to_string(i)));
    return ValueSet::make(std::move(out));
}

json to_json(const FiniteMetricSpace& space) {
    json dist = json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < space.size(); ++j) row.push_back(to_json(space.d(i, j)));
        dist.push_back(std::move(row));
    }
    json out{{"labels", space.labels()}, {"dist", std::move(dist)}};
    if (space.value_set()) out["value_set"] = to_json(*space.value_set());
    return out;
}

FiniteMetricSpace space_from_json(const json& j) {
    const json& jlabels = field(j, "labels", "space");
    if (!jlabels.is_array()) bad("space", "\"labels\" must be an array");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < jlabels.size(); ++i)
        labels.push_back(string_at(jlabels[i], "space label " + std::to_string(i)));

    const json& jdist = field(j, "dist", "space");
    if (!jdist.is_array()) bad("space", "\"dist\" must be an array of rows");
    std::vector<std::vector<Rational>> dist;
    for (std::size_t i = 0; i < jdist.size(); ++i) {
        const json& jrow = jdist[i];
        if (!jrow.is_array()) bad("space", "dist row " + std::to_string(i) + " must be an array");
        std::vector<Rational> row;
        for (std::size_t k = 0; k < jrow.size(); ++k)
            row.push_back(rational_from_json(jrow[k], "dist[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        dist.push_back(std::move(row));
    }

    std::optional<ValueSet> vs;
    if (j.is_object() && j.contains("value_set") && !j["value_set"].is_null())
        vs = value_set_from_json(j["value_set"]);
    return FiniteMetricSpace::make(std::move(labels), std::move(dist), std::move(vs));
}

json to_json(const FiniteMetricSpace& space, const DSocket& socket) {
    json entries = json::array();
    for (const auto& e : socket.entries)
        entries.push_back(json{{"b", space.label(e.b)}, {"d", to_json(e.d)}});
    return json{{"entries", std::move(entries)}};
}

DSocket socket_from_json(const FiniteMetricSpace& space, const json& j) {
    const json& entries = j.is_array() ? j : field(j, "entries", "socket");
    if (!entries.is_array()) bad("socket", "\"entries\" must be an array");
    DSocket out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string where = "socket entry " + std::to_string(i);
        const std::string label = string_at(field(entries[i], "b", where), where + " vertex");
        const auto idx = space.find(label);
        if (!idx) bad(where, "unknown point " + label);
        out.entries.push_back({*idx, rational_from_json(field(entries[i], "d", where), where + " distance")});
    }
    return out;
}

json to_json(const FiniteMetricSpace& space, const Partition& partition) {
    json blocks = json::array();
    for (const auto& block : partition.blocks) {
        json jblock = json::array();
        for (std::size_t p : block) jblock.push_back(space.label(p));
        blocks.push_back(std::move(jblock));
    }
    return json{{"blocks", std::move(blocks)}};
}

Partition partition_from_json(const FiniteMetricSpace& space, const json& j) {
    const json& blocks = j.is_array() ? j : field(j, "blocks", "partition");
    if (!blocks.is_array()) bad("partition", "\"blocks\" must be an array");
    Partition out;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const json& jblock = blocks[i];
        if (!jblock.is_array()) bad("partition", "block " + std::to_string(i) + " must be an array");
        std::vector<std::size_t> block;
        for (const json& jp : jblock) {
            const std::string label = string_at(jp, "partition block " + std::to_string(i));
            const auto idx = space.find(label);
            if (!idx) bad("partition", "unknown point " + label);
            block.push_back(*idx);
        }
        out.blocks.push_back(std::move(block));
    }
    return out;
}

json to_json(const ValuedTree& tree) {
    json nodes = json::array();
    for (const auto& node : tree.nodes) {
        json jn{{"value", to_json(node.value)}};
        jn["parent"] = node.parent == SIZE_MAX ? json(nullptr) : json(node.parent);
        if (node.point) jn["point"] = *node.point;
        nodes.push_back(std::move(jn));
    }
    return json{{"nodes", std::move(nodes)}};
}

ValuedTree tree_from_json(const json& j) {
    const json& nodes = field(j, "nodes", "tree");
    if (!nodes.is_array()) bad("tree", "\"nodes\" must be an array");
    ValuedTree tree;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string where = "tree node " + std::to_string(i);
        ValuedTree::Node node;
        node.value = rational_from_json(field(nodes[i], "value", where), where + " value");
        const json& parent = field(nodes[i], "parent", where);
        if (parent.is_null()) {
            node.parent = SIZE_MAX;
        } else if (parent.is_number_unsigned()) {
            node.parent = parent.get<std::size_t>();
            if (node.parent >= i) bad(where, "parent must come before the node");
        } else {
            bad(where, "parent must be null or a node index");
        }
        if (nodes[i].is_object() && nodes[i].contains("point")) node.point = string_at(nodes[i]["point"], where + " point");
        tree.nodes.push_back(std::move(node));
    }
    for (std::size_t i = 0; i < tree.nodes.size(); ++i)
        if (tree.nodes[i].parent != SIZE_MAX) tree.nodes[tree.nodes[i].parent].children.push_back(i);
    validate_tree(tree);
    return tree;
}

std::string to_dot(const ValuedTree& tree) {
    std::ostringstream out;
    out << "digraph tree {\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& node = tree.nodes[i];
        if (node.leaf())
            out << "  n" << i << " [label=\"" << *node.point << "\", shape=box];\n";
        else
            out << "  n" << i << " [label=\"" << node.value.str() << "\"];\n";
    }
    for (std::size_t i = 0; i < tree.nodes.size(); ++i)
        for (std::size_t c : tree.nodes[i].children) out << "  n" << i << " -> n" << c << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace vmet::io
