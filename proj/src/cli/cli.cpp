#include "cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/report.hpp"
#include "tomokit/io.hpp"
#include "tomokit/special_functions.hpp"

namespace tomo::cli {

namespace {

struct UsageError : Error {
  using Error::Error;
};

enum class LogLevel { quiet, error, warn, info, debug };

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err) {
    const char* env = std::getenv("TOMOKIT_LOG");
    if (!env) return;
    const std::string v = env;
    static const std::map<std::string, LogLevel> names = {{"quiet", LogLevel::quiet}, {"error", LogLevel::error},
                                                          {"warn", LogLevel::warn},   {"info", LogLevel::info},
                                                          {"debug", LogLevel::debug}};
    if (auto it = names.find(v); it != names.end()) level_ = it->second;
  }
  void info(const std::string& msg) const { emit(LogLevel::info, "info", msg); }
  void debug(const std::string& msg) const { emit(LogLevel::debug, "debug", msg); }
  void warn(const std::string& msg) const { emit(LogLevel::warn, "warning", msg); }

 private:
  void emit(LogLevel l, const char* tag, const std::string& msg) const {
    if (l <= level_) err_ << "[tomokit " << tag << "] " << msg << '\n';
  }
  std::ostream& err_;
  LogLevel level_ = LogLevel::error;
};

struct Options {
  bool json = false;
  int threads = 0;
  std::uint64_t seed = 42;
  std::string out;

  std::string scheme;
  std::string file;
  std::string reference;
  std::string state;
  std::string set;
  std::string target;
  std::string j = "1";
  double s = 0.0;
  int nmax = -1;
  double radius = 4.0;
  int nodes_theta = 0;
  int nodes_phi = 0;
  int nodes_radial = 24;
  int grid_q = 0;
  int dim = 3;
  int fock = -1;
  double alpha_re = 1.0;
  double alpha_im = 1.0;
  double beta = 0.0;

  CLI::Option* s_flag = nullptr;

  Execution exec() const { return threads == 1 ? Execution::serial : Execution::parallel; }
};

using Command = std::function<int(const Options&, RunReport&, const Log&)>;

std::string dir_of(const std::string& path) {
  const auto p = std::filesystem::path(path).parent_path();
  return p.empty() ? std::string(".") : p.string();
}

io::json load(const std::string& path, RunReport& report, const Log& log) {
  log.info("reading " + path);
  report.add_input(path);
  return io::read_json_file(path);
}

OperatorMatrix load_matrix(const std::string& path, RunReport& report, const Log& log) {
  const auto j = load(path, report, log);
  try {
    return io::matrix_from_json(j);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), path);
  }
}

void write_output(const Options& o, const io::json& j, const Log& log) {
  if (o.out.empty()) return;
  log.info("writing " + o.out);
  io::write_json_file(o.out, j);
}

void matrix_metrics(const Options& o, const OperatorMatrix& rho, RunReport& report, const Log& log) {
  report.metrics["hermiticity_residual"] = rho.hermiticity_residual();
  report.metrics["trace"] = rho.trace().real();
  report.metrics["trace_imag"] = rho.trace().imag();
  const CMatrix h = 0.5 * (rho.entries() + rho.entries().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h, Eigen::EigenvaluesOnly);
  report.metrics["min_eigenvalue"] = eig.eigenvalues().minCoeff();
  if (o.reference.empty()) return;
  const OperatorMatrix ref = load_matrix(o.reference, report, log);
  report.metrics["fidelity"] = fidelity(rho, ref);
  report.metrics["max_abs_error"] = max_abs_diff(rho, resize_operator(ref, rho.dim()));
}

const char* schema_hint(const std::string& scheme) {
  if (scheme == "finite") return "keys set, values";
  if (scheme == "spin") return "keys j2, nodes, values";
  if (scheme == "photon") return "keys nmax, ncut, grid, values";
  return "keys xgrid, ygrid, munu_nodes, values";
}

int reconstruct_finite(const Options& o, const io::json& j, RunReport& report, const Log& log) {
  auto f = io::finite_tomogram_from_json(j, dir_of(o.file));
  if (j["set"].is_string()) {
    std::filesystem::path p(j["set"].get<std::string>());
    report.add_input((p.is_relative() ? std::filesystem::path(dir_of(o.file)) / p : p).string());
  }
  TomographicSet set = f.set;
  std::vector<double> values = f.values;
  const std::size_t n2 = static_cast<std::size_t>(set.dim()) * static_cast<std::size_t>(set.dim());
  if (set.size() != n2) {
    const auto idx = select_minimal_subset(set);
    if (idx.empty()) throw RankDeficientError("the projectors do not span the operator space", projector_rank(set).rank);
    std::vector<double> kept;
    for (auto k : idx) kept.push_back(values[k]);
    values = std::move(kept);
    report.warnings.push_back("using " + std::to_string(idx.size()) + " of " + std::to_string(set.size()) +
                              " projectors selected by pivoted QR");
    set = set.subset(idx);
  }
  const auto kernel = gram_schmidt(set);
  const std::vector<Complex> cv(values.begin(), values.end());
  const OperatorMatrix rho = reconstruct(std::span<const Complex>(cv), kernel);
  report.metrics["identity_residual"] = identity_check(kernel, set);
  matrix_metrics(o, rho, report, log);
  write_output(o, io::to_json(rho), log);
  return kOk;
}

int reconstruct_spin(const Options& o, const io::json& j, RunReport& report, const Log& log) {
  const auto grid = io::spin_grid_from_json(j);
  auto r = spin_j_reconstruct(grid, o.exec());
  report.metrics["j"] = grid.j.value();
  report.metrics["node_count"] = static_cast<double>(grid.nodes.size());
  for (auto& w : r.warnings) report.warnings.push_back(std::move(w));
  matrix_metrics(o, r.rho, report, log);
  write_output(o, io::to_json(r.rho), log);
  return kOk;
}

int reconstruct_photon(const Options& o, const io::json& j, RunReport& report, const Log& log) {
  const auto tom = io::photon_tomogram_from_json(j);
  if (o.nmax > tom.space.nmax())
    throw UsageError("--nmax " + std::to_string(o.nmax) + " exceeds the tomogram space nmax " +
                     std::to_string(tom.space.nmax()));
  auto r = photon_reconstruct(tom, o.s, o.nmax, o.exec());
  report.metrics["s"] = o.s;
  report.metrics["radial_loss"] = r.radial_loss;
  report.metrics["ncut_loss"] = r.ncut_loss;
  report.metrics["population_0"] = r.rho(0, 0).real();
  for (auto& w : r.warnings) report.warnings.push_back(std::move(w));
  matrix_metrics(o, r.rho, report, log);
  write_output(o, io::to_json(r.rho), log);
  return kOk;
}

int reconstruct_symplectic(const Options& o, const io::json& j, RunReport& report, const Log& log) {
  const auto tom = io::symplectic_tomogram_from_json(j);
  const auto k = symplectic_reconstruct(tom, o.exec());
  const int n = k.ygrid.count;
  report.metrics["trace"] = k.trace();
  report.metrics["hermiticity_residual"] = k.hermiticity_residual;
  double min_diag = k.values(0, 0).real();
  for (int i = 0; i < n; ++i) min_diag = std::min(min_diag, k.values(i, i).real());
  report.metrics["min_diagonal"] = min_diag;
  if (!o.reference.empty()) {
    const auto ref = io::wavefunction_from_json(load(o.reference, report, log));
    const auto& g = ref.grid;
    if (g.count != n || std::abs(g.min - k.ygrid.min) > 1e-12 || std::abs(g.max - k.ygrid.max) > 1e-12)
      throw DimensionError("reference wavefunction must be sampled on the tomogram y grid");
    GridWavefunction psi = ref;
    psi.normalize();
    const auto psi_s = psi.shifted(k.offset);
    const double dy = k.ygrid.step();
    Complex overlap = 0.0;
    double err = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const Complex pa = psi.values[static_cast<std::size_t>(a)];
        const Complex pb = psi_s[static_cast<std::size_t>(b)];
        overlap += std::conj(pa) * k.values(a, b) * pb;
        err = std::max(err, std::abs(k.values(a, b) - pa * std::conj(pb)));
      }
    report.metrics["fidelity"] = (overlap * dy * dy).real();
    report.metrics["max_abs_error"] = err;
  }
  write_output(o, io::to_json(k), log);
  return kOk;
}

int cmd_reconstruct(const Options& o, RunReport& report, const Log& log) {
  if (o.scheme == "photon" && o.s_flag->count() == 0) throw UsageError("--s is required for the photon scheme");
  const auto j = load(o.file, report, log);
  const std::string found = io::detect_scheme(j);
  if (found != o.scheme)
    throw ParseError("expected a " + o.scheme + " tomogram (" + schema_hint(o.scheme) + "), found " +
                         (found.empty() ? std::string("no recognizable scheme") : "a " + found + " tomogram"),
                     o.file);
  if (o.scheme == "finite") return reconstruct_finite(o, j, report, log);
  if (o.scheme == "spin") return reconstruct_spin(o, j, report, log);
  if (o.scheme == "photon") return reconstruct_photon(o, j, report, log);
  return reconstruct_symplectic(o, j, report, log);
}

int cmd_check_set(const Options& o, RunReport& report, const Log& log) {
  const auto j = load(o.file, report, log);
  const auto set = io::set_from_json(j);
  const std::size_t n2 = static_cast<std::size_t>(set.dim()) * static_cast<std::size_t>(set.dim());
  MinimalityReport r;
  if (set.size() == n2) {
    r = is_minimal_tomographic_set(set);
  } else {
    r = projector_rank(set);
    r.minimal = false;
    report.warnings.push_back("set has " + std::to_string(set.size()) + " projectors; a minimal set has " +
                              std::to_string(n2));
  }
  report.metrics["dim"] = set.dim();
  report.metrics["size"] = static_cast<double>(set.size());
  report.metrics["rank"] = r.rank;
  report.metrics["condition_number"] = r.condition_number;
  report.metrics["minimal"] = r.minimal ? 1.0 : 0.0;
  if (r.minimal) {
    report.message = "minimal tomographic set";
    return kOk;
  }
  report.message = "not a minimal tomographic set (rank " + std::to_string(r.rank) + " of " + std::to_string(n2) + ")";
  return kVerificationFailed;
}

int verdict(RunReport& report, double value, double threshold, bool below, const std::string& what) {
  const bool pass = below ? value < threshold : value >= threshold;
  report.metrics["threshold"] = threshold;
  std::ostringstream msg;
  msg << what << (pass ? " passes: " : " fails: ") << value << (below ? " vs < " : " vs >= ") << threshold;
  report.message = msg.str();
  return pass ? kOk : kVerificationFailed;
}

int verify_finite(const Options& o, RunReport& report, const Log& log) {
  TomographicSet set;
  if (!o.set.empty()) {
    set = io::set_from_json(load(o.set, report, log));
  } else {
    Rng rng(o.seed);
    set = random_minimal_set(o.dim, rng);
  }
  const auto kernel = gram_schmidt(set);
  double biorth = 0.0;
  for (std::size_t l = 0; l < set.size(); ++l)
    for (std::size_t k = 0; k < set.size(); ++k) {
      const Complex t = (kernel.duals[l].entries() * set[k].matrix.entries()).trace();
      biorth = std::max(biorth, std::abs(t - (l == k ? 1.0 : 0.0)));
    }
  const double id = identity_check(kernel, set);
  report.metrics["dim"] = set.dim();
  report.metrics["identity_residual"] = id;
  report.metrics["biorthogonality_residual"] = biorth;
  return verdict(report, std::max(id, biorth), 1e-8, true, "identity-finite");
}

int verify_spinhalf(const Options& o, RunReport& report, const Log&) {
  const int nt = o.nodes_theta > 0 ? o.nodes_theta : 16;
  const int np = o.nodes_phi > 0 ? o.nodes_phi : 16;
  const auto quad = SphereQuadrature::make(nt, np);
  const double dual = dual_identity_check(quad, o.exec());
  const double kern = kernel_identity_check(quad, o.exec());
  report.metrics["nodes_theta"] = nt;
  report.metrics["nodes_phi"] = np;
  report.metrics["dual_identity_residual"] = dual;
  report.metrics["kernel_identity_residual"] = kern;
  return verdict(report, std::max(dual, kern), 1e-8, true, "identity-spinhalf");
}

int verify_spinj(const Options& o, RunReport& report, const Log& log) {
  HalfInteger j = HalfInteger::from_int(1);
  try {
    j = HalfInteger::parse(o.j);
  } catch (const Error& e) {
    throw UsageError("--j: " + std::string(e.what()));
  }
  if (j.twice() < 1) throw UsageError("--j must be positive");
  const int nt = o.nodes_theta > 0 ? o.nodes_theta : default_sphere_nodes(j);
  const int np = o.nodes_phi > 0 ? o.nodes_phi : default_sphere_nodes(j);
  const auto quad = SphereQuadrature::make(nt, np);
  const auto nodes = quad.nodes();
  const int d = j.twice() + 1;
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto rho = random_density_matrix(d, o.seed + static_cast<std::uint64_t>(k));
    const auto grid = spin_j_tomogram(rho, j, std::span<const SphereNode>(nodes), o.exec());
    auto r = spin_j_reconstruct(grid, o.exec());
    if (k == 0)
      for (auto& w : r.warnings) report.warnings.push_back(std::move(w));
    worst = std::max(worst, (r.rho.entries() - rho.entries()).norm());
  }
  log.info("spin-j round trip over 10 states");
  report.metrics["j"] = j.value();
  report.metrics["nodes_theta"] = nt;
  report.metrics["nodes_phi"] = np;
  report.metrics["roundtrip_error"] = worst;
  return verdict(report, worst, 1e-6, true, "identity-spinj");
}

int verify_delta(const Options& o, RunReport& report, const Log&) {
  UniformGrid g = SymplecticLayout{}.ygrid;
  if (o.grid_q > 0) g = UniformGrid(g.min, g.max, o.grid_q);
  if (g.count < 16) throw UsageError("--grid-q must be at least 16 for the delta probe");
  const int iy = g.count / 2 + 1, iyp = g.count / 2 - 1;
  const double y = g.at(iy), yp = g.at(iyp);
  const DeltaProbeGrids grids;
  const double peak = std::abs(delta_identity_probe(y, yp, y, yp, grids));
  auto probe = [&](int dq, int dqp) { return std::abs(delta_identity_probe(y, yp, g.at(iy + dq), g.at(iyp + dqp), grids)); };
  const int st = 5;
  const double axis = std::max({probe(st, 0), probe(-st, 0), probe(0, st), probe(0, -st)});
  const double diag = std::max(probe(st, st), probe(-st, -st));
  const double anti = std::max(probe(st, -st), probe(-st, st));
  const double swap_gap = std::abs(std::abs(delta_identity_probe(y, yp, g.at(iy + 2), g.at(iyp - 1), grids)) -
                                   std::abs(delta_identity_probe(yp, y, g.at(iyp - 1), g.at(iy + 2), grids)));
  const double dq = g.step();
  report.metrics["peak"] = peak;
  report.metrics["peak_times_dq2"] = peak * dq * dq;
  report.metrics["peak_ratio_axis"] = peak / axis;
  report.metrics["peak_ratio_diagonal"] = peak / diag;
  report.metrics["peak_ratio_antidiagonal"] = peak / anti;
  const double ratio = peak / std::max({axis, diag, anti});
  report.metrics["peak_ratio"] = ratio;
  report.metrics["swap_symmetry_gap"] = swap_gap;
  return verdict(report, ratio, 10.0, false, "delta-symplectic peak ratio at 5 grid steps");
}

int cmd_verify(const Options& o, RunReport& report, const Log& log) {
  report.command = "verify " + o.target;
  if (o.target == "identity-finite") return verify_finite(o, report, log);
  if (o.target == "identity-spinhalf") return verify_spinhalf(o, report, log);
  if (o.target == "identity-spinj") return verify_spinj(o, report, log);
  return verify_delta(o, report, log);
}

int cmd_demo_pauli(const Options& o, RunReport& report, const Log&) {
  if (!(o.alpha_re > 0)) throw UsageError("--alpha-re must be positive");
  const UniformGrid grid(-10.0, 10.0, o.grid_q > 0 ? o.grid_q : 512);
  const auto r = pauli_counterexample({o.alpha_re, o.alpha_im}, o.beta, grid);
  report.metrics["alpha_re"] = o.alpha_re;
  report.metrics["alpha_im"] = o.alpha_im;
  report.metrics["beta"] = o.beta;
  report.metrics["marginal_gap_q"] = r.marginal_gap_q;
  report.metrics["marginal_gap_p"] = r.marginal_gap_p;
  report.metrics["fidelity"] = r.fidelity;
  std::ostringstream msg;
  msg << std::setprecision(6) << "psi1 ~ exp(-a x^2 + i b x) and psi2 ~ exp(-conj(a) x^2 + i b x) with a = " << o.alpha_re
      << (o.alpha_im < 0 ? " - " : " + ") << std::abs(o.alpha_im) << "i, b = " << o.beta
      << " have the same position density (largest gap " << r.marginal_gap_q << ") and the same momentum density (largest gap "
      << r.marginal_gap_p << "), yet their overlap |<psi1|psi2>|^2 is " << r.fidelity
      << ". Position and momentum distributions alone therefore do not determine the state"
      << (r.fidelity > 1 - 1e-12 ? " in general; for real a the two functions coincide." : ".");
  report.message = msg.str();
  return kOk;
}

int cmd_tomogram(const Options& o, RunReport& report, const Log& log) {
  if (o.out.empty()) throw UsageError("tomogram needs --out FILE");
  const bool from_fock = o.fock >= 0;
  if (from_fock == !o.state.empty()) throw UsageError("give exactly one of --state FILE and --fock N");
  if (o.scheme == "finite") {
    if (from_fock) throw UsageError("--fock applies to the photon and symplectic schemes");
    if (o.set.empty()) throw UsageError("the finite scheme needs --set FILE");
    const auto set = io::set_from_json(load(o.set, report, log));
    const auto rho = load_matrix(o.state, report, log);
    const auto tom = tomogram(rho, set);
    report.metrics["value_count"] = static_cast<double>(tom.values.size());
    write_output(o, io::finite_tomogram_to_json(set, tom), log);
    return kOk;
  }
  if (o.scheme == "spin") {
    if (from_fock) throw UsageError("--fock applies to the photon and symplectic schemes");
    const auto rho = load_matrix(o.state, report, log);
    const auto j = HalfInteger::from_twice(rho.dim() - 1);
    const int nt = o.nodes_theta > 0 ? o.nodes_theta : default_sphere_nodes(j);
    const int np = o.nodes_phi > 0 ? o.nodes_phi : default_sphere_nodes(j);
    const auto grid = spin_j_tomogram(rho, j, SphereQuadrature::make(nt, np), o.exec());
    report.metrics["node_count"] = static_cast<double>(grid.nodes.size());
    write_output(o, io::to_json(grid), log);
    return kOk;
  }
  if (o.scheme == "photon") {
    const FockSpace space(o.nmax > 0 ? o.nmax : 32);
    OperatorMatrix rho;
    if (from_fock) {
      if (o.fock > space.nmax()) throw UsageError("--fock exceeds --nmax");
      const CVector v = fock_state(o.fock, space);
      rho = OperatorMatrix(v * v.adjoint());
    } else {
      rho = load_matrix(o.state, report, log);
      if (rho.dim() > space.dim()) throw UsageError("state dimension exceeds nmax + 1");
      rho = resize_operator(rho, space.dim());
    }
    const int na = o.nodes_phi > 0 ? o.nodes_phi : 24;
    const auto grid = PolarGrid::gauss(o.radius, o.nodes_radial, na);
    const auto tom = photon_tomogram_grid(rho, space, grid, space.nmax(), o.exec());
    report.metrics["node_count"] = static_cast<double>(grid.size());
    write_output(o, io::to_json(tom), log);
    return kOk;
  }
  SymplecticLayout layout;
  if (o.grid_q > 0) layout.ygrid = UniformGrid(layout.ygrid.min, layout.ygrid.max, o.grid_q);
  GridWavefunction psi;
  if (from_fock) {
    psi = GridWavefunction::oscillator(o.fock, layout.ygrid);
  } else {
    psi = io::wavefunction_from_json(load(o.state, report, log));
  }
  const auto tom = symplectic_tomogram_grid(psi, layout, o.exec());
  report.metrics["node_count"] = static_cast<double>(tom.nodes.size());
  write_output(o, io::to_json(tom), log);
  return kOk;
}

bool wants_json(const std::vector<std::string>& args) {
  return std::find(args.begin(), args.end(), "--json") != args.end();
}

void emit(const RunReport& report, bool json, std::ostream& out, std::ostream& err) {
  if (json)
    out << report.to_json().dump(2) << '\n';
  else
    report.print_text(out);
  if (report.exit_code == kUsageError && !report.message.empty()) err << "error: " << report.message << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quantum tomography toolkit: tomographic sets, tomograms and reconstructions", "tomokit"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Print the report as JSON");
  app.add_option("--threads", o.threads, "OpenMP threads; 1 selects the serial reference path")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--out", o.out, "Output file");

  const std::vector<std::string> schemes = {"finite", "spin", "photon", "symplectic"};
  std::map<CLI::App*, Command> commands;

  auto* check = app.add_subcommand("check-set", "Rank, conditioning and minimality of a projector set");
  check->add_option("set_file", o.file, "Set JSON file")->required();
  commands[check] = cmd_check_set;

  auto* rec = app.add_subcommand("reconstruct", "Reconstruct a state from a tomogram file");
  rec->add_option("--scheme", o.scheme, "finite, spin, photon or symplectic")->required()->check(CLI::IsMember(schemes));
  rec->add_option("tomogram_file", o.file, "Tomogram JSON file")->required();
  o.s_flag = rec->add_option("--s", o.s, "Ordering parameter s < 1 (photon)");
  rec->add_option("--nmax", o.nmax, "Output truncation (photon)");
  rec->add_option("--reference", o.reference,
                  "Reference state: matrix JSON, or a wavefunction on the y grid (symplectic)");
  commands[rec] = cmd_reconstruct;

  auto* ver = app.add_subcommand("verify", "Numerical identity checks");
  ver->add_option("target", o.target, "identity-finite, identity-spinhalf, identity-spinj or delta-symplectic")
      ->required()
      ->check(CLI::IsMember({"identity-finite", "identity-spinhalf", "identity-spinj", "delta-symplectic"}));
  ver->add_option("--dim", o.dim, "Dimension of the random set (identity-finite)")->check(CLI::Range(2, 16));
  ver->add_option("--set", o.set, "Check this set instead of a random one (identity-finite)");
  ver->add_option("--j", o.j, "Spin, e.g. 1 or 3/2 (identity-spinj)");
  ver->add_option("--nodes-theta", o.nodes_theta, "Polar nodes")->check(CLI::PositiveNumber);
  ver->add_option("--nodes-phi", o.nodes_phi, "Azimuthal nodes")->check(CLI::PositiveNumber);
  ver->add_option("--grid-q", o.grid_q, "Points of the q grid (delta-symplectic)");
  commands[ver] = cmd_verify;

  auto* pauli = app.add_subcommand("demo-pauli", "Two states with equal position and momentum distributions");
  pauli->add_option("--alpha-re", o.alpha_re, "Re(alpha), must be positive")->capture_default_str();
  pauli->add_option("--alpha-im", o.alpha_im, "Im(alpha)")->capture_default_str();
  pauli->add_option("--beta", o.beta, "Linear phase")->capture_default_str();
  pauli->add_option("--grid-q", o.grid_q, "Points of the x grid on [-10, 10]");
  commands[pauli] = cmd_demo_pauli;

  auto* tomo_cmd = app.add_subcommand("tomogram", "Write the tomogram of a state");
  tomo_cmd->add_option("--scheme", o.scheme, "finite, spin, photon or symplectic")
      ->required()
      ->check(CLI::IsMember(schemes));
  tomo_cmd->add_option("--state", o.state, "Density matrix JSON, or wavefunction JSON (symplectic)");
  tomo_cmd->add_option("--fock", o.fock, "Number state n instead of --state (photon, symplectic)")
      ->check(CLI::NonNegativeNumber);
  tomo_cmd->add_option("--set", o.set, "Set JSON (finite)");
  tomo_cmd->add_option("--nmax", o.nmax, "Fock space nmax (photon)");
  tomo_cmd->add_option("--radius", o.radius, "Polar grid radius (photon)")->check(CLI::PositiveNumber);
  tomo_cmd->add_option("--nodes-radial", o.nodes_radial, "Radial nodes (photon)")->check(CLI::PositiveNumber);
  tomo_cmd->add_option("--nodes-theta", o.nodes_theta, "Polar nodes (spin)")->check(CLI::PositiveNumber);
  tomo_cmd->add_option("--nodes-phi", o.nodes_phi, "Azimuthal nodes (spin) or angular nodes (photon)")
      ->check(CLI::PositiveNumber);
  tomo_cmd->add_option("--grid-q", o.grid_q, "Points of the y grid (symplectic)");
  commands[tomo_cmd] = cmd_tomogram;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    RunReport report;
    report.command = args.empty() ? "" : args.front();
    report.message = e.what();
    report.exit_code = kUsageError;
    if (wants_json(args)) out << report.to_json().dump(2) << '\n';
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsageError;
  }

  const Log log(err);
  set_thread_count(o.threads);
  RunReport report;
  Command command;
  for (auto& [sub, fn] : commands)
    if (sub->parsed()) {
      report.command = sub->get_name();
      command = fn;
    }

  const auto t0 = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    code = command(o, report, log);
  } catch (const UsageError& e) {
    code = kUsageError;
    report.message = e.what();
  } catch (const ParseError& e) {
    code = kUsageError;
    report.message = std::string("parse error at ") + e.what();
  } catch (const Error& e) {
    code = kUsageError;
    report.message = e.what();
  } catch (const std::exception& e) {
    code = kUsageError;
    report.message = std::string("unexpected failure: ") + e.what();
  }
  report.metrics["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report.exit_code = code;
  for (const auto& w : report.warnings) log.warn(w);
  emit(report, o.json, out, err);
  return code;
}

}  // namespace tomo::cli
