#include "bohrlab/json_io.hpp"

#include "bohrlab/error.hpp"

namespace bohrlab {
namespace {

[[noreturn]] void schema(const std::string& detail) {
  fail("schema violation", detail);
}

}  // namespace

OrderedJson parse_json(const std::string& text) {
  OrderedJson j = OrderedJson::parse(text, nullptr, false);
  if (j.is_discarded()) schema("malformed json");
  return j;
}

const OrderedJson& json_field(const OrderedJson& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected object with key '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing key '") + key + "'");
  return *it;
}

int json_int(const OrderedJson& j, const char* key) {
  const OrderedJson& v = json_field(j, key);
  if (!v.is_number_integer()) schema(std::string("key '") + key + "' must be an integer");
  return v.get<int>();
}

double json_double(const OrderedJson& j, const char* key) {
  const OrderedJson& v = json_field(j, key);
  if (!v.is_number()) schema(std::string("key '") + key + "' must be a number");
  return v.get<double>();
}

std::string json_string(const OrderedJson& j, const char* key) {
  const OrderedJson& v = json_field(j, key);
  if (!v.is_string()) schema(std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

OrderedJson descriptor_to_json(const GroupDescriptor& d) {
  OrderedJson j;
  switch (d.kind) {
    case GroupDescriptor::Kind::cyclic:
      j["type"] = "cyclic";
      j["n"] = d.n;
      break;
    case GroupDescriptor::Kind::product: {
      j["type"] = "product";
      OrderedJson fs = OrderedJson::array();
      for (const GroupDescriptor& f : d.factors) fs.push_back(descriptor_to_json(f));
      j["factors"] = std::move(fs);
      break;
    }
    case GroupDescriptor::Kind::dihedral:
      j["type"] = "dihedral";
      j["n"] = d.n;
      break;
    case GroupDescriptor::Kind::quaternion8:
      j["type"] = "quaternion8";
      break;
    case GroupDescriptor::Kind::symmetric:
      j["type"] = "symmetric";
      j["n"] = d.n;
      break;
    case GroupDescriptor::Kind::perm_gens:
      j["type"] = "perm_gens";
      j["degree"] = d.degree;
      j["gens"] = d.gens;
      break;
    case GroupDescriptor::Kind::subgroup:
      j["type"] = "subgroup";
      j["parent"] = descriptor_to_json(d.factors.at(0));
      j["members"] = d.members;
      break;
    case GroupDescriptor::Kind::derived:
      fail("bad descriptor", "derived groups are not serializable");
  }
  return j;
}

GroupDescriptor descriptor_from_json(const OrderedJson& j) {
  const std::string kind = json_string(j, "type");
  if (kind == "cyclic") return GroupDescriptor::cyclic(json_int(j, "n"));
  if (kind == "dihedral") return GroupDescriptor::dihedral(json_int(j, "n"));
  if (kind == "quaternion8") return GroupDescriptor::quaternion8();
  if (kind == "symmetric") return GroupDescriptor::symmetric(json_int(j, "n"));
  if (kind == "product") {
    const OrderedJson& fs = json_field(j, "factors");
    if (!fs.is_array() || fs.empty()) schema("'factors' must be a nonempty array");
    std::vector<GroupDescriptor> factors;
    for (const OrderedJson& f : fs) factors.push_back(descriptor_from_json(f));
    return GroupDescriptor::product(std::move(factors));
  }
  if (kind == "perm_gens") {
    const OrderedJson& gs = json_field(j, "gens");
    if (!gs.is_array() || gs.empty()) schema("'gens' must be a nonempty array");
    std::vector<std::vector<int>> gens;
    for (const OrderedJson& g : gs) {
      if (!g.is_array()) schema("each generator must be an array of 1-based images");
      gens.push_back(g.get<std::vector<int>>());
    }
    return GroupDescriptor::perm_gens(json_int(j, "degree"), std::move(gens));
  }
  if (kind == "subgroup") {
    GroupDescriptor d;
    d.kind = GroupDescriptor::Kind::subgroup;
    d.factors.push_back(descriptor_from_json(json_field(j, "parent")));
    const OrderedJson& ms = json_field(j, "members");
    if (!ms.is_array()) schema("'members' must be an array");
    d.members = ms.get<std::vector<int>>();
    return d;
  }
  schema("unknown group type '" + kind + "'");
}

OrderedJson subset_to_json(const Subset& a) {
  OrderedJson j;
  j["size"] = a.size();
  j["density"] = density(a);
  j["members"] = a.members();
  return j;
}

std::vector<int> members_from_json(const OrderedJson& j, int order) {
  if (!j.is_array()) schema("subset members must be an array");
  std::vector<int> out;
  for (const OrderedJson& v : j) {
    if (!v.is_number_integer()) schema("subset members must be integers");
    const int x = v.get<int>();
    if (x < 0 || x >= order)
      schema("member " + std::to_string(x) + " out of range [0, " +
             std::to_string(order) + ")");
    out.push_back(x);
  }
  return out;
}

OrderedJson matrix_to_json(const CMatrix& m) {
  OrderedJson rows = OrderedJson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    OrderedJson row = OrderedJson::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(OrderedJson::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const OrderedJson& j) {
  if (!j.is_array() || j.empty()) schema("matrix must be a nonempty array of rows");
  const std::size_t rows = j.size();
  const OrderedJson& first = j.at(0);
  if (!first.is_array() || first.empty()) schema("matrix rows must be arrays");
  const std::size_t cols = first.size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const OrderedJson& row = j.at(r);
    if (!row.is_array() || row.size() != cols) schema("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const OrderedJson& e = row.at(c);
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() ||
          !e.at(1).is_number())
        schema("matrix entries must be [re, im] pairs");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

OrderedJson map_to_json(const GroupMap& f) {
  OrderedJson j;
  j["group"] = descriptor_to_json(f.group()->descriptor());
  j["dim"] = f.dim();
  OrderedJson images = OrderedJson::array();
  for (const CMatrix& m : f.images()) images.push_back(matrix_to_json(m));
  j["images"] = std::move(images);
  return j;
}

GroupMap map_from_json(const OrderedJson& j) {
  const GroupPtr group = build_group(descriptor_from_json(json_field(j, "group")));
  const int dim = json_int(j, "dim");
  const OrderedJson& ims = json_field(j, "images");
  if (!ims.is_array() || static_cast<int>(ims.size()) != group->order())
    schema("'images' must list one matrix per group element");
  std::vector<CMatrix> images;
  images.reserve(ims.size());
  for (const OrderedJson& m : ims) {
    CMatrix mat = matrix_from_json(m);
    if (mat.rows() != dim || mat.cols() != dim)
      schema("image dimension does not match 'dim'");
    images.push_back(std::move(mat));
  }
  return GroupMap(group, std::move(images));
}

OrderedJson net_to_json(const EpsNet& net, bool include_points) {
  OrderedJson j;
  switch (net.target) {
    case NetTarget::torus: j["target"] = "torus"; break;
    case NetTarget::su2: j["target"] = "su2"; break;
    case NetTarget::unitary: j["target"] = "unitary"; break;
  }
  j["dim"] = net.dim;
  j["radius"] = net.radius;
  j["certified_radius"] = net.certified_radius;
  j["size"] = static_cast<int>(net.points.size());
  j["sample_count"] = net.sample_count;
  j["seed"] = net.seed;
  if (net.grid_m > 0) j["grid_m"] = net.grid_m;
  if (include_points) {
    OrderedJson pts = OrderedJson::array();
    for (const UnitaryMatrix& p : net.points)
      pts.push_back(matrix_to_json(static_cast<const CMatrix&>(p)));
    j["points"] = std::move(pts);
  }
  return j;
}

OrderedJson eps_to_json(const EpsFunction& e) {
  OrderedJson j;
  switch (e.kind) {
    case EpsFunction::Kind::constant:
      j["kind"] = "constant";
      j["value"] = e.value;
      break;
    case EpsFunction::Kind::power:
      j["kind"] = "power";
      j["kappa"] = e.kappa;
      j["a"] = e.a;
      j["b"] = e.b;
      break;
    case EpsFunction::Kind::table: {
      j["kind"] = "table";
      OrderedJson entries = OrderedJson::array();
      for (const EpsFunction::Entry& en : e.entries)
        entries.push_back(OrderedJson::array({en.first, en.n, en.value}));
      j["entries"] = std::move(entries);
      break;
    }
  }
  return j;
}

EpsFunction eps_from_json(const OrderedJson& j) {
  const std::string kind = json_string(j, "kind");
  if (kind == "constant") return EpsFunction::constant(json_double(j, "value"));
  if (kind == "power")
    return EpsFunction::power(json_double(j, "kappa"), json_double(j, "a"),
                              json_double(j, "b"));
  if (kind == "table") {
    EpsFunction e;
    e.kind = EpsFunction::Kind::table;
    const OrderedJson& entries = json_field(j, "entries");
    if (!entries.is_array() || entries.empty())
      schema("'entries' must be a nonempty array");
    for (const OrderedJson& en : entries) {
      if (!en.is_array() || en.size() != 3 || !en.at(0).is_number() ||
          !en.at(1).is_number_integer() || !en.at(2).is_number())
        schema("eps table entries must be [first, n, value] triples");
      e.entries.push_back(EpsFunction::Entry{en.at(0).get<double>(),
                                             en.at(1).get<int>(),
                                             en.at(2).get<double>()});
    }
    return e;
  }
  schema("unknown eps kind '" + kind + "'");
}

}  // namespace bohrlab
