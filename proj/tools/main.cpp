#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bohrlab/bogolyubov.hpp"
#include "bohrlab/error.hpp"
#include "bohrlab/json_io.hpp"
#include "bohrlab/probe.hpp"
#include "bohrlab/version.hpp"

using namespace bohrlab;

namespace {

[[noreturn]] void schema(const std::string& detail) {
  fail("schema violation", detail);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) schema("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// inline JSON or @file
OrderedJson load_json_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return parse_json(read_file(arg.substr(1)));
  return parse_json(arg);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) schema("empty entry in list '" + s + "'");
    try {
      std::size_t pos = 0;
      const int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      schema("'" + tok + "' is not an integer");
    }
  }
  if (out.empty()) schema("empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      schema("'" + tok + "' is not a number");
    }
  }
  if (out.empty()) schema("empty list");
  return out;
}

// Effective option values after the flag > config > default merge.
struct Args {
  std::string command;
  std::string group, map_file, set, u, v, w, a, b, c_set;
  std::string eps, net = "torus", target, primes, format = "json", output;
  std::string delta_grid;
  double delta = 0.0, alpha = -1.0, cover_c = kDefaultCoveringConstant;
  double net_eps = -1.0, eps_scalar = 0.0;
  double defect_cap = kDefaultCorrectionCap, hom_tol = Tolerances{}.hom;
  double collar = Tolerances{}.boundary_collar;
  int cap = 0, dim = 1, z_grid = 8, max_iters = 60;
  std::uint64_t seed = 0;
  bool seed_given = false, emit_map = false, no_ruzsa = false;
};

struct MergeEntry {
  CLI::Option* opt;
  CLI::App* sub;  // config keys only apply to the parsed subcommand
  std::string key;
  std::function<void(const OrderedJson&)> set;
};

struct SubBinder {
  CLI::App* sub;
  std::vector<MergeEntry>* merges;

  CLI::Option* opt_str(const std::string& flag, std::string& var,
                       const std::string& desc) {
    CLI::Option* o = sub->add_option(flag, var, desc);
    merges->push_back({o, sub, flag.substr(2), [&var](const OrderedJson& j) {
                         var = j.is_string() ? j.get<std::string>() : j.dump();
                       }});
    return o;
  }
  CLI::Option* opt_dbl(const std::string& flag, double& var,
                       const std::string& desc) {
    CLI::Option* o = sub->add_option(flag, var, desc);
    merges->push_back({o, sub, flag.substr(2), [&var](const OrderedJson& j) {
                         if (!j.is_number()) schema("expected number");
                         var = j.get<double>();
                       }});
    return o;
  }
  CLI::Option* opt_int(const std::string& flag, int& var,
                       const std::string& desc) {
    CLI::Option* o = sub->add_option(flag, var, desc);
    merges->push_back({o, sub, flag.substr(2), [&var](const OrderedJson& j) {
                         if (!j.is_number_integer()) schema("expected integer");
                         var = j.get<int>();
                       }});
    return o;
  }
  CLI::Option* opt_flag(const std::string& flag, bool& var,
                        const std::string& desc) {
    CLI::Option* o = sub->add_flag(flag, var, desc);
    merges->push_back({o, sub, flag.substr(2), [&var](const OrderedJson& j) {
                         if (!j.is_boolean()) schema("expected boolean");
                         var = j.get<bool>();
                       }});
    return o;
  }
};

GroupPtr group_from_args(const Args& a) {
  if (a.group.empty()) schema("--group is required");
  return build_group(descriptor_from_json(load_json_arg(a.group)));
}

// --map file; a file without an embedded "group" needs --group
GroupMap load_map(const Args& a) {
  if (a.map_file.empty()) schema("--map is required");
  OrderedJson j = parse_json(read_file(a.map_file));
  if (!j.is_object()) schema("map file must hold an object");
  if (j.contains("group")) {
    if (!a.group.empty()) {
      const OrderedJson flag_desc = load_json_arg(a.group);
      if (flag_desc.dump() != j["group"].dump())
        schema("--group disagrees with the group embedded in the map file");
    }
    return map_from_json(j);
  }
  if (a.group.empty()) schema("map file has no group; pass --group");
  OrderedJson full;
  full["group"] = load_json_arg(a.group);
  full["dim"] = json_field(j, "dim");
  full["images"] = json_field(j, "images");
  return map_from_json(full);
}

Subset subset_from_list(const GroupPtr& g, const std::string& list,
                        const char* what) {
  if (list.empty()) schema(std::string("--") + what + " is required");
  std::vector<int> members = parse_int_list(list);
  for (const int m : members)
    if (m < 0 || m >= g->order())
      schema("element " + std::to_string(m) + " out of range for " + g->label());
  return Subset(g, std::move(members));
}

EpsFunction eps_from_args(const Args& a) {
  if (a.eps.empty()) schema("--eps is required");
  return eps_from_json(load_json_arg(a.eps));
}

void require_seed(const Args& a) {
  if (!a.seed_given) schema("--seed is required for randomized commands");
}

EpsNet build_net(const Args& a, const GroupMap& map, double eps) {
  if (a.net == "torus") return torus_net(map.dim(), eps);
  if (a.net == "su2") {
    require_seed(a);
    if (map.dim() != 2) schema("su2 nets need a dimension-2 map");
    return su2_net(eps, a.seed);
  }
  if (a.net == "image") return finite_image_net(map.images(), eps);
  schema("--net must be torus, su2 or image");
}

OrderedJson tolerances_json(const Args& a) {
  const Tolerances t;
  OrderedJson j;
  j["unitary"] = t.unitary;
  j["hom"] = a.hom_tol;
  j["commute"] = t.commute;
  j["boundary_collar"] = a.collar;
  j["polar_min_sv"] = t.polar_min_sv;
  return j;
}

OrderedJson criteria_json(const CriteriaReport& r) {
  OrderedJson j;
  j["alpha"] = r.alpha;
  j["density_a"] = r.density_a;
  j["b_in_quad"] = r.b_in_quad;
  j["translate_in_triple"] = r.translate_in_triple;
  j["translate_witness"] = r.translate_witness;
  j["small_residue"] = r.small_residue;
  j["residue_ratio"] = r.residue_ratio;
  j["eps_value"] = r.eps_value;
  j["all"] = r.all();
  return j;
}

OrderedJson scan_log_json(const std::vector<ScanEntry>& log) {
  OrderedJson arr = OrderedJson::array();
  for (const ScanEntry& e : log) {
    OrderedJson row;
    row["rep"] = e.rep;
    row["dim"] = e.dim;
    row["delta"] = e.delta;
    row["ruzsa"] = e.ruzsa;
    row["pass_i"] = e.pass_i;
    row["pass_ii"] = e.pass_ii;
    row["pass_iii"] = e.pass_iii;
    arr.push_back(std::move(row));
  }
  return arr;
}

// ---- command runners: fill input echo + result --------------------------

void run_defect(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupMap map = load_map(a);
  input["group"] = descriptor_to_json(map.group()->descriptor());
  input["map"] = a.map_file;
  input["dim"] = map.dim();
  const DefectReport d = defect(map);
  result["defect"] = d.defect;
  result["witness"] = OrderedJson::array({d.witness.first, d.witness.second});
}

void run_correct(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupMap map = load_map(a);
  input["group"] = descriptor_to_json(map.group()->descriptor());
  input["map"] = a.map_file;
  input["dim"] = map.dim();
  input["defect_cap"] = a.defect_cap;
  input["max_iters"] = a.max_iters;
  input["hom_tol"] = a.hom_tol;
  CorrectionOptions opts;
  opts.max_iters = a.max_iters;
  opts.hom_tol = a.hom_tol;
  opts.defect_cap = a.defect_cap;
  const CorrectionResult r = correct_homomorphism(map, opts);
  result["input_defect"] = r.input_defect;
  result["final_defect"] = r.final_defect;
  result["iterations"] = r.iterations;
  result["sup_distance"] = r.sup_distance;
  if (a.emit_map) result["corrected"] = map_to_json(r.corrected);
}

void run_discretize(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupMap map = load_map(a);
  if (a.net_eps <= 0.0) schema("--net-eps must be positive");
  const EpsNet net = build_net(a, map, a.net_eps);
  input["group"] = descriptor_to_json(map.group()->descriptor());
  input["map"] = a.map_file;
  input["dim"] = map.dim();
  input["net"] = a.net;
  input["net_eps"] = a.net_eps;
  if (a.net == "su2") input["seed"] = a.seed;
  const DiscretizeResult r = discretize(map, net, a.hom_tol);
  result["net"] = net_to_json(net);
  result["sup_distance"] = r.sup_distance;
  result["defect"] = r.defect_report.defect;
  result["witness"] = OrderedJson::array(
      {r.defect_report.witness.first, r.defect_report.witness.second});
  if (a.emit_map) result["snapped"] = map_to_json(r.map);
}

void run_bohr(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupMap map = load_map(a);
  if (a.delta <= 0.0) schema("--delta must be positive");
  input["group"] = descriptor_to_json(map.group()->descriptor());
  input["map"] = a.map_file;
  input["dim"] = map.dim();
  input["delta"] = a.delta;
  const BohrSet b = bohr_set(map, a.delta, a.hom_tol, a.collar);
  const BohrBasicReport basic = verify_bohr_basic(b);
  result["set"] = subset_to_json(b.members);
  result["boundary"] = b.boundary;
  double max_dist = 0.0;
  for (const int m : b.members.members())
    max_dist = std::max(max_dist, b.distances[m]);
  result["max_member_distance"] = max_dist;
  OrderedJson props;
  props["symmetric"] = basic.symmetric;
  props["has_identity"] = basic.has_identity;
  props["conj_invariant"] = basic.conj_invariant;
  props["doubling"] = basic.doubling;
  result["properties"] = std::move(props);
}

void run_cover(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupMap map = load_map(a);
  if (a.delta <= 0.0) schema("--delta must be positive");
  const double eps = a.net_eps > 0.0 ? a.net_eps : a.delta / 2.0;
  const EpsNet net = build_net(a, map, eps);
  input["group"] = descriptor_to_json(map.group()->descriptor());
  input["map"] = a.map_file;
  input["delta"] = a.delta;
  input["net"] = a.net;
  input["net_eps"] = eps;
  if (a.net == "su2") input["seed"] = a.seed;
  const BohrSet b = bohr_set(map, a.delta, a.hom_tol, a.collar);
  const CoverResult r = genericity_cover(b, net);
  result["net"] = net_to_json(net);
  result["translates"] = r.translates;
  result["count"] = static_cast<int>(r.translates.size());
  result["skipped_net_points"] = r.skipped_net_points;
  result["within_net_size"] =
      static_cast<int>(r.translates.size()) <= r.net_size;
}

void run_bound_check(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupMap map = load_map(a);
  if (a.delta <= 0.0) schema("--delta must be positive");
  input["group"] = descriptor_to_json(map.group()->descriptor());
  input["map"] = a.map_file;
  input["delta"] = a.delta;
  input["c"] = a.cover_c;
  const BohrSet b = bohr_set(map, a.delta, a.hom_tol, a.collar);
  const GenericityBoundReport r = genericity_bound_check(b, a.cover_c);
  result["genericity"] = r.genericity;
  result["exact"] = r.exact;
  result["bound"] = r.bound;
  result["density"] = r.density;
  result["density_floor"] = r.density_floor;
}

void run_u_to_t(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupMap map = load_map(a);
  if (a.delta <= 0.0) schema("--delta must be positive");
  input["group"] = descriptor_to_json(map.group()->descriptor());
  input["map"] = a.map_file;
  input["delta"] = a.delta;
  const BohrSet b = bohr_set(map, a.delta, a.hom_tol, a.collar);
  const TorsionReduceResult r = torsion_reduce(b);
  result["image_order"] = r.image_order;
  result["index"] = r.index;
  result["normal"] = r.normal;
  result["subgroup_order"] = r.subgroup->order();
  result["embedding"] = r.embedding;
  result["projection_error"] = r.reduced.projection_error;
  result["reduced_set"] = subset_to_json(r.reduced.diagonal.members);
}

void run_collapse(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupMap map = load_map(a);
  if (a.delta <= 0.0) schema("--delta must be positive");
  input["group"] = descriptor_to_json(map.group()->descriptor());
  input["map"] = a.map_file;
  input["delta"] = a.delta;
  input["hom_tol"] = a.hom_tol;
  const BohrSet b = bohr_set(map, a.delta, a.hom_tol, a.collar);
  const CollapseResult r = exponent_collapse(b, a.hom_tol);
  result["kernel"] = subset_to_json(r.kernel);
  result["kernel_order"] = r.kernel_group->order();
  result["index"] = r.index;
  result["boundary_excluded"] = r.boundary_excluded;
}

void run_bogolyubov(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupPtr g = group_from_args(a);
  const Subset set = subset_from_list(g, a.set, "set");
  const EpsFunction eps = eps_from_args(a);
  const double alpha = a.alpha >= 0.0 ? a.alpha : density(set);
  SearchOptions opts;
  if (!a.delta_grid.empty()) opts.delta_grid = parse_double_list(a.delta_grid);
  opts.try_ruzsa = !a.no_ruzsa;

  input["group"] = descriptor_to_json(g->descriptor());
  input["set"] = set.members();
  input["alpha"] = alpha;
  input["eps"] = eps_to_json(eps);
  input["delta_grid"] = opts.delta_grid;
  input["try_ruzsa"] = opts.try_ruzsa;

  const SearchResult r = bogolyubov_search(set, alpha, eps, opts);
  result["found"] = r.found;
  result["log"] = scan_log_json(r.log);
  if (r.found) {
    OrderedJson w;
    w["delta"] = r.bohr->delta;
    w["dim"] = r.bohr->hom.dim();
    w["set"] = subset_to_json(r.bohr->members);
    w["criteria"] = criteria_json(*r.report);
    if (r.ruzsa) {
      OrderedJson rz;
      rz["alpha"] = r.ruzsa->alpha;
      rz["rho"] = r.ruzsa->rho;
      rz["gamma"] = r.ruzsa->gamma;
      rz["spectrum_size"] = r.ruzsa->spectrum_size;
      rz["trivial"] = r.ruzsa->trivial;
      w["ruzsa"] = std::move(rz);
    }
    result["witness"] = std::move(w);
  }
}

void run_upgrade(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupPtr g = group_from_args(a);
  const Subset u = subset_from_list(g, a.u, "u");
  const Subset v = subset_from_list(g, a.v, "v");
  const Subset w = subset_from_list(g, a.w, "w");
  std::optional<Subset> aa;
  if (!a.a.empty()) aa = subset_from_list(g, a.a, "a");

  input["group"] = descriptor_to_json(g->descriptor());
  input["u"] = u.members();
  input["v"] = v.members();
  input["w"] = w.members();
  if (aa) input["a"] = aa->members();

  const CoveringUpgradeResult r = covering_upgrade(u, v, w, aa);
  result["mu_u"] = r.mu_u;
  result["mu_defect"] = r.mu_defect;
  result["half_rule_applies"] = r.half_rule_applies;
  result["u_in_ww_inv"] = r.u_in_ww_inv;
  result["genericity_m"] = r.genericity_m;
  result["generic_rule_applies"] = r.generic_rule_applies;
  result["translate_found"] = r.translate_found;
  result["translate_witness"] = r.translate_witness;
}

void run_quasirandom(const Args& a, OrderedJson& input, OrderedJson& result) {
  require_seed(a);
  const GroupPtr g = group_from_args(a);
  const Subset set = subset_from_list(g, a.set, "set");
  std::optional<Subset> bb, cc;
  if (!a.b.empty()) bb = subset_from_list(g, a.b, "b");
  if (!a.c_set.empty()) cc = subset_from_list(g, a.c_set, "c");

  input["group"] = descriptor_to_json(g->descriptor());
  input["set"] = set.members();
  if (bb) input["b"] = bb->members();
  if (cc) input["c"] = cc->members();
  input["seed"] = a.seed;

  const QuasirandomReport r = quasirandom_check(set, bb, cc, a.seed);
  result["d"] = r.d;
  result["alpha"] = r.alpha;
  result["threshold"] = r.threshold;
  result["triple_product_full"] = r.triple_product_full;
  result["mu_aa_inv"] = r.mu_aa_inv;
  result["near_full"] = r.near_full;
  result["triple_checked"] = r.triple_checked;
  if (r.triple_checked) result["triple_full"] = r.triple_full;
}

void run_boundedexp(const Args& a, OrderedJson& input, OrderedJson& result) {
  const GroupPtr g = group_from_args(a);
  const Subset set = subset_from_list(g, a.set, "set");
  const EpsFunction eps = eps_from_args(a);
  const double alpha = a.alpha >= 0.0 ? a.alpha : density(set);

  input["group"] = descriptor_to_json(g->descriptor());
  input["set"] = set.members();
  input["alpha"] = alpha;
  input["eps"] = eps_to_json(eps);
  input["c"] = a.cover_c;

  const PipelineResult r = bounded_exponent_pipeline(set, alpha, eps, a.cover_c);
  result["found"] = r.found;
  result["delta_star"] = r.delta_star;
  result["log"] = scan_log_json(r.log);
  if (r.found) {
    result["rep"] = r.rep;
    result["dim"] = r.dim;
    result["eps_star"] = r.eps_star;
    result["index"] = r.index;
    result["index_bound"] = r.index_bound;
    result["normal"] = r.normal;
    result["subgroup"] = r.embedding;
    result["conclusions"] = criteria_json(*r.conclusions);
  }
}

OrderedJson probe_json(const ProbeReport& r) {
  OrderedJson j;
  j["target"] = r.target == ProbeTarget::torus ? "torus" : "su2";
  j["epsilon"] = r.epsilon;
  j["net_exists"] = r.net_exists;
  j["sample_count"] = r.sample_count;
  if (r.target == ProbeTarget::torus) {
    j["dim"] = r.torus_dim;
    j["grid_m"] = r.grid_m;
    j["net_size"] = r.net_size;
    j["certified_radius"] = r.certified_radius;
  } else {
    j["cap"] = r.cap;
    j["seed"] = r.seed;
    OrderedJson subs = OrderedJson::array();
    for (const ProbeSubgroupStat& s : r.subgroups) {
      OrderedJson row;
      row["name"] = s.name;
      row["order"] = s.order;
      row["covering_radius"] = s.covering_radius;
      subs.push_back(std::move(row));
    }
    j["subgroups"] = std::move(subs);
    j["min_covering_radius"] = r.min_covering_radius;
    j["attained_by"] = r.attained_by;
    j["warnings"] = r.warnings;
  }
  return j;
}

ProbeReport run_probe(const Args& a, OrderedJson& input) {
  if (a.eps_scalar <= 0.0) schema("--eps must be positive");
  input["target"] = a.target;
  input["eps"] = a.eps_scalar;
  if (a.target == "torus") {
    input["dim"] = a.dim;
    return turing_probe_torus(a.dim, a.eps_scalar);
  }
  if (a.target == "su2") {
    require_seed(a);
    if (a.cap <= 0) schema("--cap must be positive");
    input["cap"] = a.cap;
    input["seed"] = a.seed;
    return turing_probe_su2(a.eps_scalar, a.cap, a.seed);
  }
  schema("--target must be torus or su2");
}

struct DemoRow {
  int p = 0;
  int z_index = 0;
  Complex z;
  int count = 0;
  double fraction = 0.0;
  std::vector<int> members;
  bool members_omitted = false;
};

std::vector<DemoRow> run_demo(const Args& a, OrderedJson& input) {
  if (a.primes.empty()) schema("--primes is required");
  if (a.eps_scalar <= 0.0) schema("--eps must be positive");
  if (a.z_grid < 1) schema("--z-grid must be positive");
  const std::vector<int> primes = parse_int_list(a.primes);
  for (const int p : primes) {
    if (p < 2 || p > 10000) schema("primes must lie in [2, 10000]");
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) schema(std::to_string(p) + " is not prime");
  }
  input["primes"] = primes;
  input["eps"] = a.eps_scalar;
  input["z_grid"] = a.z_grid;

  std::vector<DemoRow> rows;
  for (const int p : primes)
    for (int zi = 0; zi < a.z_grid; ++zi) {
      DemoRow row;
      row.p = p;
      row.z_index = zi;
      row.z = std::polar(1.0, 2.0 * std::numbers::pi * zi / a.z_grid);
      for (int x = 0; x < p; ++x) {
        const Complex tx = std::polar(1.0, 2.0 * std::numbers::pi * x / p);
        if (std::abs(tx - row.z) < a.eps_scalar) {
          ++row.count;
          if (p <= 64) row.members.push_back(x);
        }
      }
      row.members_omitted = p > 64;
      row.fraction = static_cast<double>(row.count) / p;
      rows.push_back(std::move(row));
    }
  return rows;
}

std::string csv_num(double v) { return OrderedJson(v).dump(); }

std::string probe_csv(const ProbeReport& r) {
  std::string out;
  if (r.target == ProbeTarget::torus) {
    out += "target,epsilon,dim,grid_m,net_size,certified_radius,net_exists\n";
    out += "torus," + csv_num(r.epsilon) + "," + std::to_string(r.torus_dim) +
           "," + std::to_string(r.grid_m) + "," + std::to_string(r.net_size) +
           "," + csv_num(r.certified_radius) + "," +
           (r.net_exists ? "true" : "false") + "\n";
  } else {
    out += "name,order,covering_radius\n";
    for (const ProbeSubgroupStat& s : r.subgroups)
      out += s.name + "," + std::to_string(s.order) + "," +
             csv_num(s.covering_radius) + "\n";
  }
  return out;
}

std::string demo_csv(const std::vector<DemoRow>& rows) {
  std::string out = "p,z_index,z_re,z_im,count,fraction\n";
  for (const DemoRow& r : rows)
    out += std::to_string(r.p) + "," + std::to_string(r.z_index) + "," +
           csv_num(r.z.real()) + "," + csv_num(r.z.imag()) + "," +
           std::to_string(r.count) + "," + csv_num(r.fraction) + "\n";
  return out;
}

void emit(const Args& a, const std::string& text) {
  if (a.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(a.output, std::ios::binary);
  if (!out) schema("cannot write '" + a.output + "'");
  out << text;
}

int run(Args& a) {
  const auto t0 = std::chrono::steady_clock::now();

  if (a.format != "json" && a.format != "csv")
    schema("--format must be json or csv");
  const bool sweep = a.command == "turing-probe" || a.command == "cyclic-demo";
  if (a.format == "csv" && !sweep)
    schema("csv export is only available for sweep commands");

  OrderedJson report;
  report["command"] = a.command;
  report["version"] = version();
  if (const char* tenv = std::getenv("BOHRLAB_THREADS")) {
    int threads = 0;
    try {
      threads = std::stoi(tenv);
    } catch (const std::exception&) {
      schema("BOHRLAB_THREADS must be an integer");
    }
    if (threads < 1) schema("BOHRLAB_THREADS must be at least 1");
    report["threads"] = threads;
  }
  if (a.seed_given) report["seed"] = a.seed;
  report["tolerances"] = tolerances_json(a);
  OrderedJson input = OrderedJson::object();
  OrderedJson result = OrderedJson::object();

  std::string csv;
  if (a.command == "defect") run_defect(a, input, result);
  else if (a.command == "correct") run_correct(a, input, result);
  else if (a.command == "discretize") run_discretize(a, input, result);
  else if (a.command == "bohr") run_bohr(a, input, result);
  else if (a.command == "cover") run_cover(a, input, result);
  else if (a.command == "bound-check") run_bound_check(a, input, result);
  else if (a.command == "u-to-t") run_u_to_t(a, input, result);
  else if (a.command == "collapse") run_collapse(a, input, result);
  else if (a.command == "bogolyubov") run_bogolyubov(a, input, result);
  else if (a.command == "upgrade") run_upgrade(a, input, result);
  else if (a.command == "quasirandom") run_quasirandom(a, input, result);
  else if (a.command == "boundedexp") run_boundedexp(a, input, result);
  else if (a.command == "turing-probe") {
    const ProbeReport pr = run_probe(a, input);
    result = probe_json(pr);
    if (a.format == "csv") csv = probe_csv(pr);
  } else if (a.command == "cyclic-demo") {
    const std::vector<DemoRow> rows = run_demo(a, input);
    OrderedJson arr = OrderedJson::array();
    for (const DemoRow& r : rows) {
      OrderedJson row;
      row["p"] = r.p;
      row["z_index"] = r.z_index;
      row["z"] = OrderedJson::array({r.z.real(), r.z.imag()});
      row["count"] = r.count;
      row["fraction"] = r.fraction;
      if (r.members_omitted)
        row["members_omitted"] = true;
      else
        row["members"] = r.members;
      arr.push_back(std::move(row));
    }
    result["rows"] = std::move(arr);
    if (a.format == "csv") csv = demo_csv(rows);
  } else {
    schema("unknown command '" + a.command + "'");
  }

  report["input"] = std::move(input);
  report["result"] = std::move(result);
  emit(a, a.format == "csv" ? csv : report.dump(2) + "\n");

  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  std::fprintf(stderr, "bohrlab: %s finished in %.3f s\n", a.command.c_str(),
               dt.count());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Args args;
  std::string config_file;
  std::vector<MergeEntry> merges;
  CLI::Option* seed_opt = nullptr;

  CLI::App app{"desk-scale laboratory for Bohr sets, approximate "
               "homomorphisms and dense product sets in finite groups"};
  app.require_subcommand(1);

  const auto common = [&](CLI::App* sub) {
    SubBinder b{sub, &merges};
    b.opt_str("--output", args.output, "write the report to this path");
    b.opt_str("--format", args.format, "json or csv (sweep commands only)");
    sub->add_option("--config", config_file, "JSON file with option defaults");
    seed_opt = sub->add_option("--seed", args.seed, "seed for randomized work");
    merges.push_back({seed_opt, sub, "seed", [&](const OrderedJson& j) {
                        if (!j.is_number_unsigned() && !j.is_number_integer())
                          schema("seed must be an integer");
                        args.seed = j.get<std::uint64_t>();
                        args.seed_given = true;
                      }});
    return b;
  };
  const auto map_opts = [&](SubBinder& b) {
    b.opt_str("--group", args.group, "group descriptor JSON (or @file)");
    b.opt_str("--map", args.map_file, "JSON file with the map images");
    b.opt_dbl("--hom-tol", args.hom_tol, "homomorphism certification tolerance");
  };

  {
    auto b = common(app.add_subcommand("defect", "defect of a map"));
    map_opts(b);
  }
  {
    auto b = common(app.add_subcommand("correct", "correct an approximate map"));
    map_opts(b);
    b.opt_dbl("--defect-cap", args.defect_cap, "input defect precondition cap");
    b.opt_int("--max-iters", args.max_iters, "iteration limit");
    b.opt_flag("--emit-map", args.emit_map, "embed the corrected images");
  }
  {
    auto b = common(app.add_subcommand("discretize", "snap a hom to a net"));
    map_opts(b);
    b.opt_str("--net", args.net, "net kind: torus, su2 or image");
    b.opt_dbl("--net-eps", args.net_eps, "net radius");
    b.opt_flag("--emit-map", args.emit_map, "embed the snapped images");
  }
  {
    auto b = common(app.add_subcommand("bohr", "build and verify a Bohr set"));
    map_opts(b);
    b.opt_dbl("--delta", args.delta, "Bohr radius");
    b.opt_dbl("--collar", args.collar, "boundary flagging collar");
  }
  {
    auto b = common(app.add_subcommand("cover", "covering by Bohr translates"));
    map_opts(b);
    b.opt_dbl("--delta", args.delta, "Bohr radius");
    b.opt_str("--net", args.net, "net kind: torus, su2 or image");
    b.opt_dbl("--net-eps", args.net_eps, "net radius (default delta/2)");
  }
  {
    auto b = common(app.add_subcommand("bound-check", "genericity and density bounds"));
    map_opts(b);
    b.opt_dbl("--delta", args.delta, "Bohr radius");
    b.opt_dbl("--c", args.cover_c, "covering constant");
  }
  {
    auto b = common(app.add_subcommand("u-to-t", "reduce a unitary Bohr set to a torus one"));
    map_opts(b);
    b.opt_dbl("--delta", args.delta, "Bohr radius");
  }
  {
    auto b = common(app.add_subcommand("collapse", "exponent collapse to a subgroup"));
    map_opts(b);
    b.opt_dbl("--delta", args.delta, "Bohr radius");
    b.opt_dbl("--collar", args.collar, "boundary flagging collar");
  }
  {
    auto b = common(app.add_subcommand("bogolyubov", "search for a Bohr witness"));
    b.opt_str("--group", args.group, "group descriptor JSON (or @file)");
    b.opt_str("--set", args.set, "comma-separated element list");
    b.opt_dbl("--alpha", args.alpha, "density hypothesis (default: density of the set)");
    b.opt_str("--eps", args.eps, "eps function JSON (or @file)");
    b.opt_str("--delta-grid", args.delta_grid, "comma-separated delta grid");
    b.opt_flag("--no-ruzsa", args.no_ruzsa, "skip the spectral witness");
  }
  {
    auto b = common(app.add_subcommand("upgrade", "covering upgrade"));
    b.opt_str("--group", args.group, "group descriptor JSON (or @file)");
    b.opt_str("--u", args.u, "set U");
    b.opt_str("--v", args.v, "set V");
    b.opt_str("--w", args.w, "set W");
    b.opt_str("--a", args.a, "optional dense set A");
  }
  {
    auto b = common(app.add_subcommand("quasirandom", "quasirandom product conclusions"));
    b.opt_str("--group", args.group, "group descriptor JSON (or @file)");
    b.opt_str("--set", args.set, "comma-separated element list");
    b.opt_str("--b", args.b, "optional set B");
    b.opt_str("--c-set", args.c_set, "optional set C");
  }
  {
    auto b = common(app.add_subcommand("boundedexp", "bounded-exponent pipeline"));
    b.opt_str("--group", args.group, "group descriptor JSON (or @file)");
    b.opt_str("--set", args.set, "comma-separated element list");
    b.opt_dbl("--alpha", args.alpha, "density hypothesis (default: density of the set)");
    b.opt_str("--eps", args.eps, "eps function JSON (or @file)");
    b.opt_dbl("--c", args.cover_c, "covering constant");
  }
  {
    auto b = common(app.add_subcommand("turing-probe", "finite approximability probe"));
    b.opt_str("--target", args.target, "torus or su2");
    b.opt_dbl("--eps", args.eps_scalar, "net radius to probe");
    b.opt_int("--dim", args.dim, "torus dimension");
    b.opt_int("--cap", args.cap, "subgroup order cap (su2)");
  }
  {
    auto b = common(app.add_subcommand("cyclic-demo", "cyclic compactification demo"));
    b.opt_str("--primes", args.primes, "comma-separated primes, each at most 10000");
    b.opt_dbl("--eps", args.eps_scalar, "ball radius on the circle");
    b.opt_int("--z-grid", args.z_grid, "number of grid points on the circle");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* parsed = app.get_subcommands().at(0);
    args.command = parsed->get_name();
    if (!config_file.empty()) {
      const OrderedJson cfg = parse_json(read_file(config_file));
      if (!cfg.is_object()) schema("config file must hold an object");
      for (const MergeEntry& m : merges) {
        if (m.sub != parsed) continue;
        std::string key = m.key;
        for (char& ch : key)
          if (ch == '-') ch = '_';
        if (m.opt->count() == 0 && cfg.contains(key)) m.set(cfg.at(key));
      }
    }
    if (seed_opt != nullptr) {
      for (const CLI::App* sub : app.get_subcommands())
        if (sub->count("--seed") > 0) args.seed_given = true;
    }
    return run(args);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.name() == "schema violation" ? 2 : 1;
  } catch (const AssertionFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
