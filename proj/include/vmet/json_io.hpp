#pragma once

#include "vmet/amalgam.hpp"
#include "vmet/connect.hpp"
#include "vmet/space.hpp"
#include "vmet/ultra.hpp"
#include "vmet/value_set.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace vmet::io {

using json = nlohmann::ordered_json;

// Structural problems with incoming JSON (wrong shape, unparsable rational).
// Deliberately not an invalid_argument so callers can tell "bad file" from
// "bad mathematics".
struct JsonFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rationals travel as exact strings ("3/4", "2"); integers are accepted on
// input, floats are not.
json to_json(const Rational& r);
Rational rational_from_json(const json& j, const std::string& where);

// {"values": ["0", "1", "3/2"]}; a bare array is accepted on input.
json to_json(const ValueSet& v);
ValueSet value_set_from_json(const json& j);

// {"labels": [...], "dist": [[...]], "value_set": {...}?}
json to_json(const FiniteMetricSpace& space);
FiniteMetricSpace space_from_json(const json& j);

// {"entries": [{"b": "p0", "d": "1"}]}; vertices are labels of the space.
json to_json(const FiniteMetricSpace& space, const DSocket& socket);
DSocket socket_from_json(const FiniteMetricSpace& space, const json& j);

// {"blocks": [["p0", "p2"], ["p1"]]}
json to_json(const FiniteMetricSpace& space, const Partition& partition);
Partition partition_from_json(const FiniteMetricSpace& space, const json& j);

// {"nodes": [{"value": "2", "parent": null, "point": "x"?}]}; children are
// reconstructed from the parent pointers, and the tree is validated.
json to_json(const ValuedTree& tree);
ValuedTree tree_from_json(const json& j);

// Graphviz rendering: internal nodes show their value, leaves their point.
std::string to_dot(const ValuedTree& tree);

}  // namespace vmet::io
