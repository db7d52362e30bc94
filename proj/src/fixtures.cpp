#include "qrecon/fixtures.hpp"

#include <cmath>

namespace qrecon::fixtures {

using lattice::LatticeSpec;

LatticeSpec chain_spec(std::size_t length) {
  LatticeSpec s;
  s.elements.push_back("0");
  for (std::size_t k = 1; k + 1 < length; ++k) s.elements.push_back("c" + std::to_string(k));
  s.elements.push_back("1");
  for (std::size_t k = 0; k + 1 < s.elements.size(); ++k) s.leq.emplace_back(s.elements[k], s.elements[k + 1]);
  return s;
}

LatticeSpec chain2_spec() {
  LatticeSpec s = chain_spec(2);
  s.ortho = {{"0", "1"}};
  return s;
}

LatticeSpec boolean_spec(std::size_t n) {
  const std::size_t count = std::size_t{1} << n;
  const std::size_t full = count - 1;
  auto name = [&](std::size_t mask) -> std::string {
    if (mask == 0) return "0";
    if (mask == full) return "1";
    std::string out;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1) out += static_cast<char>('a' + k);
    return out;
  };
  LatticeSpec s;
  for (std::size_t m = 0; m < count; ++m) s.elements.push_back(name(m));
  for (std::size_t m = 0; m < count; ++m) {
    for (std::size_t k = 0; k < n; ++k)
      if (!(m >> k & 1)) s.leq.emplace_back(name(m), name(m | (std::size_t{1} << k)));
    s.ortho[name(m)] = name(full & ~m);
  }
  return s;
}

LatticeSpec mo_spec(std::size_t n) {
  LatticeSpec s;
  s.elements.push_back("0");
  for (std::size_t k = 0; k < n; ++k) {
    const std::string atom = n == 2 ? std::string(1, static_cast<char>('a' + k)) : "a" + std::to_string(k + 1);
    s.elements.push_back(atom);
    s.elements.push_back(atom + "_perp");
    s.ortho[atom] = atom + "_perp";
  }
  s.elements.push_back("1");
  for (std::size_t k = 1; k + 1 < s.elements.size(); ++k) {
    s.leq.emplace_back("0", s.elements[k]);
    s.leq.emplace_back(s.elements[k], "1");
  }
  s.ortho["0"] = "1";
  return s;
}

LatticeSpec mo2_spec() { return mo_spec(2); }

LatticeSpec o6_spec() {
  LatticeSpec s;
  s.elements = {"0", "a", "b", "b_perp", "a_perp", "1"};
  s.leq = {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "b_perp"}, {"b_perp", "a_perp"}, {"a_perp", "1"}};
  s.ortho = {{"0", "1"}, {"a", "a_perp"}, {"b", "b_perp"}};
  return s;
}

LatticeSpec n5_spec() {
  LatticeSpec s;
  s.elements = {"0", "a", "b", "c", "1"};
  s.leq = {{"0", "a"}, {"a", "c"}, {"c", "1"}, {"0", "b"}, {"b", "1"}};
  return s;
}

LatticeSpec m3_spec() {
  LatticeSpec s;
  s.elements = {"0", "a", "b", "c", "1"};
  s.leq = {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}};
  return s;
}

LatticeSpec boolean2_identity_ortho_spec() {
  LatticeSpec s = boolean_spec(2);
  s.ortho.clear();
  for (const auto& e : s.elements) s.ortho[e] = e;
  return s;
}

std::vector<std::pair<std::string, lattice::FiniteLattice>> lattice_corpus() {
  using lattice::build_lattice;
  std::vector<std::pair<std::string, lattice::FiniteLattice>> out;
  out.emplace_back("chain2", build_lattice(chain2_spec()));
  out.emplace_back("chain4", build_lattice(chain_spec(4)));
  out.emplace_back("boolean2", build_lattice(boolean_spec(2)));
  out.emplace_back("boolean3", build_lattice(boolean_spec(3)));
  out.emplace_back("boolean4", build_lattice(boolean_spec(4)));
  out.emplace_back("mo2", build_lattice(mo2_spec()));
  out.emplace_back("mo3", build_lattice(mo_spec(3)));
  out.emplace_back("o6", build_lattice(o6_spec()));
  out.emplace_back("n5", build_lattice(n5_spec()));
  out.emplace_back("m3", build_lattice(m3_spec()));
  out.emplace_back("boolean2_identity_ortho", build_lattice(boolean2_identity_ortho_spec()));
  out.emplace_back("mo2_x_chain2", lattice::product(build_lattice(mo2_spec()), build_lattice(chain2_spec())));
  out.emplace_back("o6_x_chain2", lattice::product(build_lattice(o6_spec()), build_lattice(chain2_spec())));
  return out;
}

Matrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
Matrix pauli_y() { return {{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
Matrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

Matrix ghz_vector() {
  Matrix psi(8, 1);
  psi(0, 0) = 1.0 / std::sqrt(2.0);
  psi(7, 0) = 1.0 / std::sqrt(2.0);
  return psi;
}

Matrix ghz_state() { return outer(ghz_vector(), ghz_vector()); }

Matrix cbh_e() {
  Matrix e(6, 6);
  e(0, 0) = 1.0;
  e(2, 2) = 1.0;
  e(4, 4) = 1.0;
  return e;
}

Matrix cbh_f() {
  Matrix f(6, 6);
  f(0, 0) = 1.0;
  f(1, 1) = 1.0;
  f(4, 4) = 0.5;
  f(4, 5) = 0.5;
  f(5, 4) = 0.5;
  f(5, 5) = 0.5;
  return f;
}

Matrix swap_gate() {
  Matrix s(4, 4);
  s(0, 0) = 1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 3) = 1.0;
  return s;
}

Matrix cnot_gate() {
  Matrix c(4, 4);
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(2, 3) = 1.0;
  c(3, 2) = 1.0;
  return c;
}

Matrix partial_swap(double theta) {
  return Matrix::identity(4) * std::cos(theta) + swap_gate() * cplx(0.0, -std::sin(theta));
}

}  // namespace qrecon::fixtures
