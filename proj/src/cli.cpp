#include "qrecon/cli.hpp"

#include "qrecon/algebra.hpp"
#include "qrecon/dynamics.hpp"
#include "qrecon/errors.hpp"
#include "qrecon/fixtures.hpp"
#include "qrecon/lattice.hpp"
#include "qrecon/modular.hpp"
#include "qrecon/states.hpp"
#include "qrecon/subspaces.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace qrecon::cli {

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::VerificationFailed, "SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

void Report::add_input(const std::string& path, const std::string& digest) {
  inputs_.push_back({{"path", path}, {"sha256", digest}});
}

void Report::add_output(const std::string& path, const std::string& digest) {
  outputs_.push_back({{"path", path}, {"sha256", digest}});
}

void Report::check_at_most(std::string name, double value, double tolerance, std::string detail) {
  checks_.push_back({std::move(name), value <= tolerance, value, tolerance, Compare::AtMost, std::move(detail)});
}

void Report::check_above(std::string name, double value, double threshold, std::string detail) {
  checks_.push_back({std::move(name), value > threshold, value, threshold, Compare::Above, std::move(detail)});
}

void Report::check_true(std::string name, bool value, std::string detail) {
  checks_.push_back({std::move(name), value, value, std::nullopt, Compare::IsTrue, std::move(detail)});
}

void Report::set_error(std::string code, std::string message, int exit_code) {
  error_ = json{{"code", std::move(code)}, {"message", std::move(message)}};
  error_exit_ = exit_code;
}

int Report::exit_code() const {
  if (error_) return error_exit_;
  for (const auto& c : checks_)
    if (!c.pass) return 1;
  return 0;
}

json Report::to_json() const {
  json checks = json::array();
  for (const auto& c : checks_) {
    json j{{"name", c.name}, {"pass", c.pass}, {"value", c.value}};
    if (c.tolerance) {
      j["tolerance"] = *c.tolerance;
      j["compare"] = c.compare == Compare::AtMost ? "<=" : ">";
    }
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  json out{{"command", command_}, {"inputs", inputs_}, {"checks", checks}, {"result", result_}, {"exit_code", exit_code()}};
  if (!outputs_.empty()) out["outputs"] = outputs_;
  if (error_) out["error"] = *error_;
  return out;
}

std::string Report::summary() const {
  std::ostringstream s;
  if (error_) {
    s << command_ << ": " << (*error_)["code"].get<std::string>() << ": " << (*error_)["message"].get<std::string>()
      << "\n";
    return s.str();
  }
  std::size_t passed = 0;
  for (const auto& c : checks_) passed += c.pass ? 1 : 0;
  s << command_ << ": " << passed << "/" << checks_.size() << " checks passed\n";
  for (const auto& c : checks_) {
    if (c.pass) continue;
    s << "  FAIL " << c.name << " = " << c.value.dump();
    if (c.tolerance) s << (c.compare == Compare::AtMost ? " (must be <= " : " (must be > ") << *c.tolerance << ")";
    if (!c.detail.empty()) s << ": " << c.detail;
    s << "\n";
  }
  return s.str();
}

namespace {

struct Options {
  double eq_tol = 1e-9;
  double rank_tol = 1e-8;
  std::optional<std::uint64_t> seed;
  bool json_only = false;

  Tolerance tol() const {
    Tolerance t{eq_tol, rank_tol};
    t.validate();
    return t;
  }
};

json read_input(Report& report, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  report.add_input(path, sha256_hex(bytes));
  try {
    return json::parse(bytes);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

Matrix read_matrix(Report& report, const std::string& path) { return matrix_from_json(read_input(report, path)); }

std::vector<Matrix> read_matrices(Report& report, const std::string& path) {
  const json j = read_input(report, path);
  return matrices_from_json(j.is_object() && j.contains("matrices") ? j["matrices"] : j);
}

void write_output(Report& report, const std::filesystem::path& dir, const std::string& name, const json& j) {
  const std::filesystem::path path = dir / name;
  write_json_file(path.string(), j);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  report.add_output(path.string(), sha256_hex(buf.str()));
}

json names_of(const lattice::FiniteLattice& l, const std::vector<lattice::Element>& elems) {
  json out = json::array();
  for (auto e : elems) out.push_back(l.name(e));
  return out;
}

std::string witness_text(const lattice::FiniteLattice& l, const lattice::PropertyReport& p, const std::string& key) {
  const auto it = p.witnesses.find(key);
  if (it == p.witnesses.end()) return {};
  std::string s = "witness (";
  for (std::size_t k = 0; k < it->second.size(); ++k) s += (k ? ", " : "") + l.name(it->second[k]);
  return s + ")";
}

inline constexpr std::size_t kBooleanBudget = std::size_t{1} << 16;

void lattice_checks(Report& report, const lattice::FiniteLattice& l, json& out) {
  const lattice::PropertyReport p = lattice::check_properties(l);
  out["properties"] = lattice::report_to_json(l, p);
  report.check_true("is_lattice", p.is_lattice);
  if (!l.has_ortho()) return;
  const lattice::OrthoCheck oc = lattice::validate_ortho(l);
  json violations = json::array();
  for (const auto& v : oc.violations) violations.push_back({{"clause", v.clause}, {"witness", names_of(l, v.witness)}});
  out["ortho_violations"] = violations;
  report.check_true("orthocomplement_valid", oc.ok,
                    oc.ok ? std::string{} : "clause " + std::to_string(oc.violations.front().clause) + " fails");
  report.check_true("orthomodular", p.is_orthomodular, witness_text(l, p, "orthomodular"));
  report.check_true("orthomodularity_procedures_agree", p.orthomodular_by_identity == p.orthomodular_by_criterion);
  if (oc.ok) {
    const lattice::CenterReport c = lattice::center_and_irreducibility(l);
    out["center"] = names_of(l, c.center);
    out["irreducible"] = c.irreducible;
    try {
      const lattice::BooleanSubalgebras b = lattice::boolean_subalgebras(l, kBooleanBudget);
      json blocks = json::array();
      for (const auto& blk : b.blocks) blocks.push_back(names_of(l, blk));
      out["boolean_blocks"] = blocks;
      out["boolean_proper_only"] = b.proper_only;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EnumerationBudgetExceeded) throw;
      out["boolean_blocks"] = nullptr;
      out["boolean_note"] = e.what();
    }
  }
}

void cmd_check_lattice(Report& report, const Options&, const std::string& path) {
  const lattice::FiniteLattice l = lattice::build_lattice(lattice::spec_from_json(read_input(report, path)));
  json& out = report.result();
  out["lattice"] = lattice::to_json(l);
  lattice_checks(report, l, out);
}

void cmd_subspace_lattice(Report& report, const Options& opt, const std::string& path, std::size_t budget) {
  const Tolerance tol = opt.tol();
  const json j = read_input(report, path);
  if (!j.is_object() || !j.contains("subspaces") || !j["subspaces"].is_array()) {
    throw Error(ErrorCode::InvalidInput, "subspace family JSON needs a \"subspaces\" array");
  }
  std::vector<subspaces::Subspace> family;
  for (const auto& s : j["subspaces"]) family.push_back(subspaces::from_json(s, tol));
  const subspaces::GeneratedLattice g = subspaces::generate_lattice(family, budget, tol);
  json& out = report.result();
  out["lattice"] = lattice::to_json(g.lattice);
  json dims = json::object();
  for (std::size_t k = 0; k < g.elements.size(); ++k) dims[g.lattice.name(k)] = g.elements[k].dim();
  out["dimensions"] = dims;
  lattice_checks(report, g.lattice, out);
  const lattice::PropertyReport p = lattice::check_properties(g.lattice);
  report.check_true("modular", p.is_modular, witness_text(g.lattice, p, "modular"));
}

void cmd_gleason(Report& report, const Options& opt, std::size_t dim, const std::string& path) {
  const Tolerance tol = opt.tol();
  const json j = read_input(report, path);
  const json& arr = j.is_object() && j.contains("samples") ? j["samples"] : j;
  if (!arr.is_array()) throw Error(ErrorCode::InvalidInput, "samples JSON must be an array of frame samples");
  std::vector<states::FrameSample> samples;
  for (const auto& s : arr) samples.push_back(states::sample_from_json(s, tol));
  const states::GleasonResult g = states::gleason_recover(samples, dim, tol);
  json& out = report.result();
  out["rho"] = matrix_to_json(g.rho.mat());
  out["residual"] = g.residual;
  out["repair"] = g.repair;
  out["samples"] = samples.size();
  report.check_at_most("residual", g.residual, 10 * tol.eq_tol);
  report.check_at_most("psd_repair", g.repair, states::kMaxPsdRepair);
}

std::vector<states::DensityMatrix> seeded_states(std::size_t d, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<states::DensityMatrix> out;
  for (std::size_t k = 0; k < count; ++k) out.emplace_back(random_density(d, rng));
  return out;
}

void cmd_povm(Report& report, const Options& opt, const std::string& u_path, const std::string& rho_path,
              const std::string& proj_path, const std::string& tests_path) {
  const Tolerance tol = opt.tol();
  const Matrix u = read_matrix(report, u_path);
  const states::DensityMatrix rho_p(read_matrix(report, rho_path), tol);
  std::vector<states::Projector> projectors;
  for (auto& m : read_matrices(report, proj_path)) projectors.emplace_back(std::move(m), tol);
  const dynamics::Povm povm = dynamics::ancilla_povm(u, rho_p, projectors, tol);
  const std::size_t ds = povm.dim();

  json& out = report.result();
  out["povm"] = dynamics::to_json(povm);
  out["orthogonal"] = povm.max_overlap() <= 10 * tol.eq_tol;
  Matrix sum(ds, ds);
  for (const auto& e : povm.effects()) sum += e;
  report.check_at_most("effects_sum_to_identity", max_abs_diff(sum, Matrix::identity(ds)), 10 * tol.eq_tol);

  std::vector<states::DensityMatrix> tests;
  if (!tests_path.empty()) {
    for (auto& m : read_matrices(report, tests_path)) tests.emplace_back(std::move(m), tol);
    out["test_states"] = "file";
  } else if (opt.seed) {
    tests = seeded_states(ds, 100, *opt.seed);
    out["test_states"] = "seeded";
  }
  if (!tests.empty()) {
    out["test_state_count"] = tests.size();
    report.check_at_most("probability_equivalence", dynamics::probability_gap(povm, u, rho_p, projectors, tests),
                         10 * tol.eq_tol);
  }
}

void cmd_algebra_commutant(Report& report, const Options& opt, const std::string& path) {
  const Tolerance tol = opt.tol();
  const algebra::MatrixAlgebra a = algebra::algebra_from_json(read_input(report, path), tol);
  const algebra::MatrixAlgebra c = algebra::commutant(a, tol);
  const algebra::DoubleCommutantReport d = algebra::double_commutant_audit(a, tol);
  json& out = report.result();
  out["algebra"] = algebra::to_json(a);
  out["commutant"] = algebra::to_json(c);
  out["dims"] = {{"a", d.dim_a}, {"commutant", d.dim_commutant}, {"double", d.dim_double}, {"triple", d.dim_triple}};
  out["double_commutant_equals"] = d.equals;
  report.check_true("triple_commutant", d.triple_equals);
  if (a.contains_identity()) {
    report.check_true("double_commutant", d.equals);
    const algebra::CenterReport cf = algebra::center_factor(a, tol);
    out["center_dim"] = cf.center.dim();
    out["is_factor"] = cf.is_factor;
  } else {
    out["note"] = "algebra is not unital; A'' is the unital algebra generated by A";
  }
}

void cmd_algebra_independence(Report& report, const Options& opt, const std::string& a_path,
                              const std::string& b_path) {
  const Tolerance tol = opt.tol();
  const algebra::MatrixAlgebra a = algebra::algebra_from_json(read_input(report, a_path), tol);
  const algebra::MatrixAlgebra b = algebra::algebra_from_json(read_input(report, b_path), tol);
  const algebra::IndependenceReport r = algebra::kinematic_independence(a, b, tol);
  report.result()["worst_commutator"] = r.worst_commutator;
  report.result()["independent"] = r.independent;
  report.check_at_most("kinematic_independence", r.worst_commutator, 10 * tol.eq_tol);
}

void cmd_algebra_extend(Report& report, const Options& opt, const std::string& a_path, const std::string& b_path,
                        const std::string& r1_path, const std::string& r2_path, std::size_t max_iters) {
  const Tolerance tol = opt.tol();
  const algebra::MatrixAlgebra a = algebra::algebra_from_json(read_input(report, a_path), tol);
  const algebra::MatrixAlgebra b = algebra::algebra_from_json(read_input(report, b_path), tol);
  const states::DensityMatrix r1(read_matrix(report, r1_path), tol), r2(read_matrix(report, r2_path), tol);
  const algebra::ExtensionReport r = algebra::joint_state_extension(a, b, r1, r2, max_iters, tol);
  json& out = report.result();
  out["feasible"] = r.feasible;
  out["iterations"] = r.iterations;
  out["residual"] = r.residual;
  if (r.state) out["state"] = matrix_to_json(r.state->mat());
  else out["note"] = "no joint state found within the iteration budget; this is not a proof of infeasibility";
  report.check_at_most("joint_state", r.residual, algebra::kExtensionTolerance);
}

void cmd_modular(Report& report, const Options& opt, const std::string& state_path,
                 const std::vector<std::string>& ops, const std::vector<double>& times, double beta) {
  const Tolerance tol = opt.tol();
  if (ops.size() != 2) throw Error(ErrorCode::InvalidInput, "--ops takes two operator files A and B");
  const states::DensityMatrix rho(read_matrix(report, state_path), tol);
  const Matrix a = read_matrix(report, ops[0]), b = read_matrix(report, ops[1]);
  const modular::ModularData md = modular::gns_purify(rho, tol);
  double route = 0.0, automorphism = 0.0;
  for (double t : times) {
    modular::FlowCheck c;
    (void)modular::modular_flow(md, a, t, &c);
    route = std::max(route, c.route_gap);
    automorphism = std::max(automorphism, c.automorphism_gap);
  }
  const modular::KmsReport kms = modular::kms_residual(md, a, b, times, beta);
  json& out = report.result();
  out["kms"] = modular::to_json(kms);
  out["tomita_error"] = md.tomita_error();
  out["flow_route_gap"] = route;
  out["flow_automorphism_gap"] = automorphism;
  report.check_at_most("tomita_relation", md.tomita_error(), modular::kTomitaTolerance);
  report.check_at_most("flow_delta_route", route, modular::kFlowTolerance);
  report.check_at_most("kms", kms.max_residual, 1e-9,
                       beta == 1.0 ? std::string{} : "KMS for the modular flow is expected only at beta = 1");
}

void cmd_kms(Report& report, const Options& opt, const std::string& h_path, const std::vector<std::string>& ops,
             const std::vector<double>& times, double beta) {
  const Tolerance tol = opt.tol();
  if (ops.size() != 2) throw Error(ErrorCode::InvalidInput, "--ops takes two operator files A and B");
  const dynamics::Hamiltonian h(read_matrix(report, h_path), tol);
  const Matrix a = read_matrix(report, ops[0]), b = read_matrix(report, ops[1]);
  const states::DensityMatrix g = modular::gibbs_state(h, beta, tol);
  const modular::KmsReport kms = modular::kms_residual_dynamics(g, h, a, b, times, beta);
  // The modular flow of e^{-beta H} is the Heisenberg flow at time beta t.
  const modular::ModularData md = modular::gns_purify(g, tol);
  double gap = 0.0;
  for (double t : times) {
    const Matrix u = dynamics::evolve(h, beta * t, tol);
    gap = std::max(gap, max_abs_diff(modular::modular_flow(md, a, t), u.adjoint() * a * u));
  }
  json& out = report.result();
  out["gibbs_state"] = matrix_to_json(g.mat());
  out["kms"] = modular::to_json(kms);
  out["modular_vs_heisenberg"] = gap;
  report.check_at_most("kms", kms.max_residual, 1e-9);
  report.check_at_most("modular_equals_heisenberg", gap, modular::kFlowTolerance);
}

json lattice_fixture(const lattice::LatticeSpec& spec) { return lattice::to_json(lattice::build_lattice(spec)); }

void cmd_fixtures(Report& report, const Options& opt, const std::string& which, const std::string& write_dir) {
  const Tolerance tol = opt.tol();
  static const std::vector<std::string> kinds{"ghz", "cbh-ef", "pauli", "lattices", "povm", "all"};
  if (std::find(kinds.begin(), kinds.end(), which) == kinds.end()) {
    throw Error(ErrorCode::InvalidInput, "unknown fixture set '" + which + "'");
  }
  const bool all = which == "all";
  json files = json::object();
  json& out = report.result();

  if (all || which == "ghz") {
    const Matrix ghz = fixtures::ghz_state();
    const Matrix half = Matrix::identity(2) * 0.5;
    const Matrix q1 = partial_trace(ghz, TraceOut::Second, 2, 4);
    const Matrix q3 = partial_trace(ghz, TraceOut::First, 4, 2);
    const Matrix q12 = partial_trace(ghz, TraceOut::Second, 4, 2);
    const Matrix q2 = partial_trace(q12, TraceOut::First, 2, 2);
    out["ghz"] = {{"vector", matrix_to_json(fixtures::ghz_vector())},
                  {"state", matrix_to_json(ghz)},
                  {"reduced_qubits_12", matrix_to_json(q12)},
                  {"reduced_qubit_1", matrix_to_json(q1)}};
    const double worst = std::max({max_abs_diff(q1, half), max_abs_diff(q2, half), max_abs_diff(q3, half)});
    report.check_at_most("ghz_single_qubit_reduced_is_maximally_mixed", worst, 10 * tol.eq_tol);
    const double purity = (q1 * q1).trace().real();
    report.check_at_most("ghz_reduced_purity_is_one_half", std::abs(purity - 0.5), 10 * tol.eq_tol);
    files["ghz_vector.json"] = matrix_to_json(fixtures::ghz_vector());
    files["ghz_state.json"] = matrix_to_json(ghz);
  }
  if (all || which == "cbh-ef") {
    const Matrix e = fixtures::cbh_e(), f = fixtures::cbh_f();
    const Matrix c = commutator(e, f);
    out["cbh"] = {{"E", matrix_to_json(e)}, {"F", matrix_to_json(f)}, {"commutator", matrix_to_json(c)}};
    report.check_above("cbh_ef_do_not_commute", c.max_abs(), 0.1);
    files["cbh_e.json"] = matrix_to_json(e);
    files["cbh_f.json"] = matrix_to_json(f);
    files["cbh_e_algebra.json"] = {{"ambient_dim", 6}, {"generators", json::array({matrix_to_json(e)})}, {"with_identity", true}};
    files["cbh_f_algebra.json"] = {{"ambient_dim", 6}, {"generators", json::array({matrix_to_json(f)})}, {"with_identity", true}};
  }
  if (all || which == "pauli") {
    out["pauli"] = {{"x", matrix_to_json(fixtures::pauli_x())},
                    {"y", matrix_to_json(fixtures::pauli_y())},
                    {"z", matrix_to_json(fixtures::pauli_z())}};
    const Matrix xy = fixtures::pauli_x() * fixtures::pauli_y();
    report.check_at_most("pauli_xy_equals_i_z", max_abs_diff(xy, fixtures::pauli_z() * cplx(0, 1)), 0.0);
    files["pauli_x.json"] = matrix_to_json(fixtures::pauli_x());
    files["pauli_y.json"] = matrix_to_json(fixtures::pauli_y());
    files["pauli_z.json"] = matrix_to_json(fixtures::pauli_z());
  }
  if (all || which == "lattices") {
    json lat = json::object();
    lat["o6"] = lattice_fixture(fixtures::o6_spec());
    lat["mo2"] = lattice_fixture(fixtures::mo2_spec());
    lat["n5"] = lattice_fixture(fixtures::n5_spec());
    lat["m3"] = lattice_fixture(fixtures::m3_spec());
    lat["boolean3"] = lattice_fixture(fixtures::boolean_spec(3));
    lat["chain2"] = lattice_fixture(fixtures::chain2_spec());
    out["lattices"] = lat;
    for (const auto& [name, l] : lat.items()) files[name + ".json"] = l;
  }
  if (all || which == "povm") {
    const json zero = matrix_to_json(Matrix::unit(2, 0, 0));
    const json proj = json::array({zero, matrix_to_json(Matrix::unit(2, 1, 1))});
    out["povm"] = {{"swap", matrix_to_json(fixtures::swap_gate())},
                   {"cnot", matrix_to_json(fixtures::cnot_gate())},
                   {"partial_swap_pi_4", matrix_to_json(fixtures::partial_swap(std::numbers::pi / 4))}};
    files["swap.json"] = matrix_to_json(fixtures::swap_gate());
    files["cnot.json"] = matrix_to_json(fixtures::cnot_gate());
    files["partial_swap_pi_4.json"] = matrix_to_json(fixtures::partial_swap(std::numbers::pi / 4));
    files["ancilla_zero.json"] = zero;
    files["ancilla_projectors.json"] = proj;
  }
  if (!write_dir.empty()) {
    std::filesystem::create_directories(write_dir);
    for (const auto& [name, content] : files.items()) write_output(report, write_dir, name, content);
  }
}

int emit(Report& report, const Options& opt, std::ostream& out, std::ostream& err, const std::string& manifest_dir) {
  const json j = report.to_json();
  if (!manifest_dir.empty()) write_json_file((std::filesystem::path(manifest_dir) / "manifest.json").string(), j);
  out << j.dump(2) << "\n";
  if (!opt.json_only) err << report.summary();
  return report.exit_code();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qrecon: verification toolkit for quantum-logic and operator-algebra structures"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--tol", opt.eq_tol, "equality tolerance")->capture_default_str();
  app.add_option("--rank-tol", opt.rank_tol, "relative rank tolerance")->capture_default_str();
  app.add_option("--seed", opt.seed, "seed for randomized checks");
  app.add_flag("--json-only", opt.json_only, "suppress the human summary on stderr");

  std::string path, path_b, rho1, rho2, tests, which, write_dir, state, hamiltonian;
  std::size_t dim = 0, budget = 64, max_iters = 20000;
  std::vector<std::string> ops;
  std::vector<double> times{0.0, 0.5, 1.0};
  double beta = 1.0;

  auto* check_lattice = app.add_subcommand("check-lattice", "decide lattice properties of a finite lattice");
  check_lattice->add_option("file", path, "lattice JSON")->required();

  auto* subspace_lattice = app.add_subcommand("subspace-lattice", "close a family of subspaces into a lattice");
  subspace_lattice->add_option("file", path, "subspace family JSON")->required();
  subspace_lattice->add_option("--budget", budget, "maximum lattice size")->capture_default_str();

  auto* gleason = app.add_subcommand("gleason-recover", "recover a density matrix from frame-function samples");
  gleason->add_option("--dim", dim, "Hilbert space dimension")->required();
  gleason->add_option("--samples", path, "frame sample JSON")->required();

  std::string unitary, ancilla, projectors;
  auto* povm = app.add_subcommand("povm", "effects induced by an ancilla measurement");
  povm->add_option("--unitary", unitary, "coupling unitary on system (x) ancilla")->required();
  povm->add_option("--ancilla-state", ancilla, "ancilla density matrix")->required();
  povm->add_option("--projectors", projectors, "ancilla projectors")->required();
  povm->add_option("--test-states", tests, "system states for the probability check");

  auto* alg = app.add_subcommand("algebra", "matrix *-algebra audits");
  alg->require_subcommand(1);
  auto* alg_comm = alg->add_subcommand("commutant", "commutant and double commutant");
  alg_comm->add_option("file", path, "algebra JSON")->required();
  auto* alg_ind = alg->add_subcommand("independence", "kinematic independence of two algebras");
  alg_ind->add_option("a", path, "algebra JSON")->required();
  alg_ind->add_option("b", path_b, "algebra JSON")->required();
  auto* alg_ext = alg->add_subcommand("extend", "joint state with prescribed marginals");
  alg_ext->add_option("a", path, "algebra JSON")->required();
  alg_ext->add_option("b", path_b, "algebra JSON")->required();
  alg_ext->add_option("--rho1", rho1, "state restricted to A")->required();
  alg_ext->add_option("--rho2", rho2, "state restricted to B")->required();
  alg_ext->add_option("--max-iters", max_iters, "iteration budget")->capture_default_str();

  auto* mod = app.add_subcommand("modular", "modular flow and KMS report for a faithful state");
  mod->add_option("--state", state, "faithful density matrix")->required();
  mod->add_option("--ops", ops, "operator files A B")->required()->expected(2);
  mod->add_option("--times", times, "comma-separated times")->delimiter(',')->capture_default_str();
  mod->add_option("--beta", beta, "inverse temperature")->capture_default_str();

  auto* kms = app.add_subcommand("kms", "Gibbs state of a Hamiltonian and its KMS report");
  kms->add_option("--hamiltonian", hamiltonian, "Hermitian matrix")->required();
  kms->add_option("--ops", ops, "operator files A B")->required()->expected(2);
  kms->add_option("--times", times, "comma-separated times")->delimiter(',')->capture_default_str();
  kms->add_option("--beta", beta, "inverse temperature")->capture_default_str();

  auto* fix = app.add_subcommand("fixtures", "emit built-in fixtures (ghz, cbh-ef, pauli, lattices, povm, all)");
  fix->add_option("set", which, "fixture set")->required();
  fix->add_option("--write-dir", write_dir, "also write each fixture to a file here");

  std::vector<const char*> argv{"qrecon"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }

  std::string command;
  for (auto* sub : app.get_subcommands()) {
    command = sub->get_name();
    for (auto* inner : sub->get_subcommands()) command += " " + inner->get_name();
  }
  Report report(command);
  std::string manifest_dir;
  try {
    (void)opt.tol();
    if (check_lattice->parsed()) cmd_check_lattice(report, opt, path);
    else if (subspace_lattice->parsed()) cmd_subspace_lattice(report, opt, path, budget);
    else if (gleason->parsed()) cmd_gleason(report, opt, dim, path);
    else if (povm->parsed()) cmd_povm(report, opt, unitary, ancilla, projectors, tests);
    else if (alg_comm->parsed()) cmd_algebra_commutant(report, opt, path);
    else if (alg_ind->parsed()) cmd_algebra_independence(report, opt, path, path_b);
    else if (alg_ext->parsed()) cmd_algebra_extend(report, opt, path, path_b, rho1, rho2, max_iters);
    else if (mod->parsed()) cmd_modular(report, opt, state, ops, times, beta);
    else if (kms->parsed()) cmd_kms(report, opt, hamiltonian, ops, times, beta);
    else if (fix->parsed()) {
      cmd_fixtures(report, opt, which, write_dir);
      if (which == "all") manifest_dir = write_dir;
    }
  } catch (const Error& e) {
    const std::string code(to_string(e.code()));
    std::string message = e.what();
    if (message.starts_with(code + ": ")) message.erase(0, code.size() + 2);
    report.set_error(code, message, e.code() == ErrorCode::VerificationFailed ? 1 : 2);
  } catch (const std::filesystem::filesystem_error& e) {
    report.set_error("InvalidInput", e.what(), 2);
  }
  return emit(report, opt, out, err, manifest_dir);
}

}  // namespace qrecon::cli
