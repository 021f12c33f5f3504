#include "tomokit/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace tomo::io {

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError("expected an object", where.empty() ? "/" : where);
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'", where.empty() ? "/" : where);
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError("expected a number", where);
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError("expected an integer", where);
  return j.get<int>();
}

Complex complex_from(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("expected [re, im]", where);
  return {number(j[0], where + "/0"), number(j[1], where + "/1")};
}

json complex_to(Complex z) { return json::array({z.real(), z.imag()}); }

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError("expected an array of numbers", where);
  std::vector<double> v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], where + "/" + std::to_string(i)));
  return v;
}

std::vector<std::vector<double>> table(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError("expected an array of rows", where);
  std::vector<std::vector<double>> t;
  for (std::size_t i = 0; i < j.size(); ++i) t.push_back(numbers(j[i], where + "/" + std::to_string(i)));
  return t;
}

CVector cvector_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError("expected an array of [re, im]", where);
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_from(j[i], where + "/" + std::to_string(i));
  return v;
}

json cvector_to(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to(v(i)));
  return a;
}

// Rethrow library validation errors with the JSON location attached.
template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), where.empty() ? "/" : where);
  }
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    const auto pos = msg.find("parse error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    throw ParseError(msg, origin + ":byte " + std::to_string(e.byte));
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

json to_json(const OperatorMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back(complex_to(m(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"dim", m.dim()}, {"entries", std::move(rows)}};
}

OperatorMatrix matrix_from_json(const json& j, const std::string& where) {
  const int n = integer(field(j, "dim", where), at(where, "dim"));
  const auto& e = field(j, "entries", where);
  const auto ew = at(where, "entries");
  if (n < 1) throw ParseError("dim must be positive", at(where, "dim"));
  if (!e.is_array() || static_cast<int>(e.size()) != n)
    throw ParseError("expected " + std::to_string(n) + " rows", ew);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto rw = ew + "/" + std::to_string(i);
    if (!e[static_cast<std::size_t>(i)].is_array() || static_cast<int>(e[static_cast<std::size_t>(i)].size()) != n)
      throw ParseError("ragged row: expected " + std::to_string(n) + " entries", rw);
    for (int k = 0; k < n; ++k)
      m(i, k) = complex_from(e[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], rw + "/" + std::to_string(k));
  }
  return OperatorMatrix(std::move(m));
}

json to_json(const TomographicSet& s) {
  json ps = json::array();
  for (const auto& p : s.projectors()) ps.push_back(cvector_to(p.vector));
  return {{"dim", s.dim()}, {"projectors", std::move(ps)}, {"labels", s.labels()}};
}

TomographicSet set_from_json(const json& j, const std::string& where) {
  const int n = integer(field(j, "dim", where), at(where, "dim"));
  const auto& ps = field(j, "projectors", where);
  const auto pw = at(where, "projectors");
  if (!ps.is_array()) throw ParseError("expected an array of vectors", pw);
  std::vector<RankOneProjector> projectors;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const auto w = pw + "/" + std::to_string(k);
    const CVector v = cvector_from(ps[k], w);
    if (v.size() != n) throw ParseError("vector length differs from dim " + std::to_string(n), w);
    projectors.push_back(located(w, [&] { return projector_from_vector(v); }));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const auto& ls = j["labels"];
    if (!ls.is_array()) throw ParseError("expected an array", at(where, "labels"));
    for (const auto& l : ls) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  return located(where, [&] { return TomographicSet(n, std::move(projectors), std::move(labels)); });
}

FiniteTomogramFile finite_tomogram_from_json(const json& j, const std::string& base_dir, const std::string& where) {
  const auto& s = field(j, "set", where);
  FiniteTomogramFile f;
  if (s.is_string()) {
    std::filesystem::path p(s.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    f.set = set_from_json(read_json_file(p.string()), p.string() + ":");
  } else {
    f.set = set_from_json(s, at(where, "set"));
  }
  f.values = numbers(field(j, "values", where), at(where, "values"));
  if (f.values.size() != f.set.size())
    throw ParseError("expected " + std::to_string(f.set.size()) + " values, one per projector", at(where, "values"));
  return f;
}

json finite_tomogram_to_json(const TomographicSet& set, const Tomogram& tom) {
  return {{"scheme", "finite"}, {"set", to_json(set)}, {"values", tom.values}};
}

json to_json(const SpinTomogramGrid& g) {
  json nodes = json::array();
  for (const auto& n : g.nodes) nodes.push_back({{"theta", n.theta}, {"phi", n.phi}, {"wtheta", n.wtheta}, {"wphi", n.wphi}});
  return {{"scheme", "spin"}, {"j2", g.j.twice()}, {"nodes", std::move(nodes)}, {"values", g.values}};
}

SpinTomogramGrid spin_grid_from_json(const json& j, const std::string& where) {
  SpinTomogramGrid g;
  const int j2 = integer(field(j, "j2", where), at(where, "j2"));
  if (j2 < 0) throw ParseError("j2 must be nonnegative", at(where, "j2"));
  g.j = HalfInteger::from_twice(j2);
  const auto& ns = field(j, "nodes", where);
  const auto nw = at(where, "nodes");
  if (!ns.is_array()) throw ParseError("expected an array of nodes", nw);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const auto w = nw + "/" + std::to_string(k);
    SphereNode n{number(field(ns[k], "theta", w), w + "/theta"), number(field(ns[k], "phi", w), w + "/phi"),
                 number(field(ns[k], "wtheta", w), w + "/wtheta"), number(field(ns[k], "wphi", w), w + "/wphi")};
    located(w, [&] { return SphereDirection(n.theta, n.phi); });
    g.nodes.push_back(n);
  }
  g.values = table(field(j, "values", where), at(where, "values"));
  if (g.values.size() != g.nodes.size()) throw ParseError("expected one value row per node", at(where, "values"));
  for (std::size_t k = 0; k < g.values.size(); ++k)
    if (static_cast<int>(g.values[k].size()) != j2 + 1)
      throw ParseError("expected 2j+1 = " + std::to_string(j2 + 1) + " values", at(where, "values/" + std::to_string(k)));
  return g;
}

json to_json(const PhotonTomogram& t) {
  json grid = {{"radial_nodes", t.grid.radial_nodes},
               {"radial_weights", t.grid.radial_weights},
               {"angular_count", t.grid.angular_count},
               {"radius", t.grid.radius}};
  return {{"scheme", "photon"}, {"nmax", t.space.nmax()}, {"ncut", t.ncut}, {"grid", std::move(grid)}, {"values", t.values}};
}

PhotonTomogram photon_tomogram_from_json(const json& j, const std::string& where) {
  const int nmax = integer(field(j, "nmax", where), at(where, "nmax"));
  const int ncut = j.contains("ncut") ? integer(j["ncut"], at(where, "ncut")) : nmax;
  const auto& g = field(j, "grid", where);
  const auto gw = at(where, "grid");
  PolarGrid grid;
  grid.radial_nodes = numbers(field(g, "radial_nodes", gw), gw + "/radial_nodes");
  grid.radial_weights = numbers(field(g, "radial_weights", gw), gw + "/radial_weights");
  grid.angular_count = integer(field(g, "angular_count", gw), gw + "/angular_count");
  grid.radius = g.contains("radius") ? number(g["radius"], gw + "/radius")
                                     : (grid.radial_nodes.empty() ? 0.0 : grid.radial_nodes.back());
  if (grid.radial_nodes.size() != grid.radial_weights.size())
    throw ParseError("radial nodes and weights differ in length", gw);
  if (grid.angular_count < 1) throw ParseError("angular_count must be positive", gw + "/angular_count");
  PhotonTomogram t{located(at(where, "nmax"), [&] { return FockSpace(nmax); }), ncut, grid, {}};
  if (ncut < 0 || ncut > nmax) throw ParseError("ncut must lie in [0, nmax]", at(where, "ncut"));
  t.values = table(field(j, "values", where), at(where, "values"));
  if (t.values.size() != static_cast<std::size_t>(ncut) + 1)
    throw ParseError("expected ncut+1 = " + std::to_string(ncut + 1) + " rows", at(where, "values"));
  for (std::size_t n = 0; n < t.values.size(); ++n)
    if (t.values[n].size() != grid.size())
      throw ParseError("expected " + std::to_string(grid.size()) + " grid values", at(where, "values/" + std::to_string(n)));
  return t;
}

json to_json(const UniformGrid& g) { return {{"min", g.min}, {"max", g.max}, {"count", g.count}}; }

UniformGrid uniform_grid_from_json(const json& j, const std::string& where) {
  return located(where, [&] {
    return UniformGrid(number(field(j, "min", where), at(where, "min")), number(field(j, "max", where), at(where, "max")),
                       integer(field(j, "count", where), at(where, "count")));
  });
}

json to_json(const SymplecticTomogram& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes) nodes.push_back({{"mu", n.mu}, {"nu", n.nu}, {"weight", n.weight}});
  return {{"scheme", "symplectic"}, {"xgrid", to_json(t.xgrid)}, {"scaled_x", t.scaled_x},
          {"ygrid", to_json(t.ygrid)},  {"munu_nodes", std::move(nodes)}, {"values", t.values}};
}

SymplecticTomogram symplectic_tomogram_from_json(const json& j, const std::string& where) {
  SymplecticTomogram t;
  t.xgrid = uniform_grid_from_json(field(j, "xgrid", where), at(where, "xgrid"));
  t.ygrid = uniform_grid_from_json(field(j, "ygrid", where), at(where, "ygrid"));
  if (j.contains("scaled_x")) {
    if (!j["scaled_x"].is_boolean()) throw ParseError("expected a boolean", at(where, "scaled_x"));
    t.scaled_x = j["scaled_x"].get<bool>();
  } else {
    t.scaled_x = false;
  }
  const auto& ns = field(j, "munu_nodes", where);
  const auto nw = at(where, "munu_nodes");
  if (!ns.is_array()) throw ParseError("expected an array of nodes", nw);
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const auto w = nw + "/" + std::to_string(k);
    t.nodes.push_back({number(field(ns[k], "mu", w), w + "/mu"), number(field(ns[k], "nu", w), w + "/nu"),
                       number(field(ns[k], "weight", w), w + "/weight")});
  }
  t.values = table(field(j, "values", where), at(where, "values"));
  if (t.values.size() != t.nodes.size()) throw ParseError("expected one value row per node", at(where, "values"));
  for (std::size_t k = 0; k < t.values.size(); ++k)
    if (static_cast<int>(t.values[k].size()) != t.xgrid.count)
      throw ParseError("expected " + std::to_string(t.xgrid.count) + " X values", at(where, "values/" + std::to_string(k)));
  return t;
}

json to_json(const GridWavefunction& w) {
  json v = json::array();
  for (const auto& z : w.values) v.push_back(complex_to(z));
  return {{"qmin", w.grid.min}, {"qmax", w.grid.max}, {"values", std::move(v)}};
}

GridWavefunction wavefunction_from_json(const json& j, const std::string& where) {
  const double lo = number(field(j, "qmin", where), at(where, "qmin"));
  const double hi = number(field(j, "qmax", where), at(where, "qmax"));
  const CVector v = cvector_from(field(j, "values", where), at(where, "values"));
  std::vector<Complex> vals(v.data(), v.data() + v.size());
  return located(where, [&] { return GridWavefunction(UniformGrid(lo, hi, static_cast<int>(vals.size())), vals); });
}

json to_json(const DensityKernel& k) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < k.values.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < k.values.cols(); ++c) row.push_back(complex_to(k.values(i, c)));
    rows.push_back(std::move(row));
  }
  return {{"ygrid", to_json(k.ygrid)}, {"offset", k.offset}, {"entries", std::move(rows)}};
}

std::string detect_scheme(const json& j) {
  if (!j.is_object()) return "";
  if (j.contains("scheme") && j["scheme"].is_string()) return j["scheme"].get<std::string>();
  if (j.contains("j2")) return "spin";
  if (j.contains("munu_nodes")) return "symplectic";
  if (j.contains("ncut") || (j.contains("grid") && j.contains("nmax"))) return "photon";
  if (j.contains("set")) return "finite";
  return "";
}

}  // namespace tomo::io
