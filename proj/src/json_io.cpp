#include "langdual/json_io.hpp"

#include <algorithm>
#include <numeric>

namespace langdual {

namespace {

Integer read_integer(const nlohmann::json& v, const char* what) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    Scalar s;
    try {
      s = parse_scalar(v.get<std::string>());
    } catch (const std::exception&) {
      throw InputError(std::string(what) + ": not a number: " + v.get<std::string>());
    }
    if (s.get_den() != 1) throw InputError(std::string(what) + ": expected an integer, got " + to_string(s));
    return s.get_num();
  }
  throw InputError(std::string(what) + ": expected an integer");
}

std::vector<IntVector> read_vectors(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw InputError(std::string("missing array \"") + key + "\"");
  std::vector<IntVector> out;
  for (const auto& row : j[key]) {
    if (!row.is_array()) throw InputError(std::string("\"") + key + "\" must be an array of arrays");
    IntVector v;
    for (const auto& x : row) v.push_back(read_integer(x, key));
    out.push_back(std::move(v));
  }
  return out;
}

Json int_array(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p()) a.push_back(x.get_si());
    else a.push_back(to_string(x));
  }
  return a;
}

Json sparse_to_json(const SparseVec& v, const std::vector<std::string>& labels) {
  Json a = Json::array();
  for (const auto& [i, c] : v) a.push_back(Json::array({labels.at(i), to_string(c)}));
  return a;
}

}  // namespace

RootDatum canonical_order(const RootDatum& d) {
  std::vector<Integer> f;
  for (const auto& r : d.roots) f.push_back(generic_functional(d.roots, r));
  std::vector<std::size_t> idx(d.num_roots());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const bool na = f[a] < 0, nb = f[b] < 0;
    if (na != nb) return nb;
    if (abs(f[a]) != abs(f[b])) return abs(f[a]) < abs(f[b]);
    if (d.roots[a] != d.roots[b]) return d.roots[a] < d.roots[b];
    return d.coroots[a] < d.coroots[b];
  });
  RootDatum out;
  out.rank = d.rank;
  out.label = d.label;
  for (auto i : idx) {
    out.roots.push_back(d.roots[i]);
    out.coroots.push_back(d.coroots[i]);
  }
  return out;
}

Json datum_to_json(const RootDatum& d) {
  Json j;
  j["label"] = d.label;
  j["rank"] = d.rank;
  j["roots"] = Json::array();
  for (const auto& r : d.roots) j["roots"].push_back(int_array(r));
  j["coroots"] = Json::array();
  for (const auto& c : d.coroots) j["coroots"].push_back(int_array(c));
  return j;
}

RootDatum datum_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("root datum JSON must be an object");
  if (j.contains("descriptor")) {
    if (!j["descriptor"].is_string()) throw InputError("\"descriptor\" must be a string");
    DynkinDescriptor desc = parse_descriptor(j["descriptor"].get<std::string>());
    if (j.contains("lattice")) {
      std::vector<IntVector> rows = read_vectors(j, "lattice");
      std::size_t r = 0;
      for (const auto& f : desc.factors) r += f.rank;
      for (const auto& row : rows)
        if (row.size() != r) throw InputError("lattice rows must have length " + std::to_string(r));
      desc.isogeny = Isogeny::Custom;
      desc.custom_lattice = IntMatrix::from_rows(rows, r);
    }
    RootDatum d = build_from_dynkin(desc);
    if (j.contains("label") && j["label"].is_string()) d.label = j["label"].get<std::string>();
    return d;
  }
  RootDatum d;
  if (!j.contains("rank") || !j["rank"].is_number_unsigned()) throw InputError("missing non-negative integer \"rank\"");
  d.rank = j["rank"].get<std::size_t>();
  d.roots = read_vectors(j, "roots");
  d.coroots = read_vectors(j, "coroots");
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw InputError("\"label\" must be a string");
    d.label = j["label"].get<std::string>();
  }
  return d;
}

Json form_to_json(const InvariantForm& w) {
  Json j;
  j["degree"] = w.degree();
  j["tag"] = {{"rat", to_string(w.tag().rat)}, {"pi_pow", w.tag().pi_pow}};
  Json terms = Json::array();
  for (const auto& [idx, c] : w.terms()) {
    Json labels = Json::array();
    for (auto i : idx) labels.push_back(w.base()->label(i));
    terms.push_back({{"labels", labels}, {"coeff", to_string(c)}});
  }
  j["terms"] = terms;
  return j;
}

Json fundamental_group_to_json(const FundamentalGroup& g) {
  return {{"torsion", int_array(g.torsion)}, {"free_rank", g.free_rank}};
}

Json report_to_json(const VerificationReport& r, bool timing) {
  Json j;
  j["datum"] = datum_to_json(r.datum);
  j["datum"]["type"] = r.type;
  j["datum"]["fundamental_group"] = fundamental_group_to_json(r.pi1);
  j["dual"] = datum_to_json(r.dual);
  j["dual"]["type"] = r.dual_type;
  j["dual"]["fundamental_group"] = fundamental_group_to_json(r.dual_pi1);
  Json phi = Json::array();
  for (const auto& [from, image] : r.phi) phi.push_back({{"x", from}, {"image", sparse_to_json(image, r.dual_labels)}});
  j["phi"] = phi;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["mandatory"] = c.mandatory;
    cj["witness"] = c.witness ? Json(*c.witness) : Json(nullptr);
    cj["residual"] = c.residual ? Json(to_string(*c.residual)) : Json(nullptr);
    cj["detail"] = c.detail;
    if (timing) cj["seconds"] = c.seconds;
    checks.push_back(std::move(cj));
  }
  j["checks"] = checks;
  j["aborted"] = r.aborted;
  j["overall"] = r.overall();
  j["scaled_n"] = r.scales;
  return j;
}

}  // namespace langdual
