#pragma once

#include <string>

#include <json.hpp>

#include "bohrlab/approx_hom.hpp"
#include "bohrlab/bogolyubov.hpp"
#include "bohrlab/group.hpp"
#include "bohrlab/nets.hpp"
#include "bohrlab/subset.hpp"

namespace bohrlab {

// Insertion-ordered documents keep report output byte-stable across runs.
using OrderedJson = nlohmann::ordered_json;

// Parses text, throwing "schema violation" on malformed input. All *_from_
// helpers below use the same error name for structural problems; semantic
// ones keep their library names.
OrderedJson parse_json(const std::string& text);

// field accessors with schema-violation errors
const OrderedJson& json_field(const OrderedJson& j, const char* key);
int json_int(const OrderedJson& j, const char* key);
double json_double(const OrderedJson& j, const char* key);
std::string json_string(const OrderedJson& j, const char* key);

OrderedJson descriptor_to_json(const GroupDescriptor& d);
GroupDescriptor descriptor_from_json(const OrderedJson& j);

OrderedJson subset_to_json(const Subset& a);
std::vector<int> members_from_json(const OrderedJson& j, int order);

// complex entries serialize as [re, im]; a matrix is an array of rows
OrderedJson matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const OrderedJson& j);

OrderedJson map_to_json(const GroupMap& f);
GroupMap map_from_json(const OrderedJson& j);

OrderedJson net_to_json(const EpsNet& net, bool include_points = false);

OrderedJson eps_to_json(const EpsFunction& e);
EpsFunction eps_from_json(const OrderedJson& j);

}  // namespace bohrlab
