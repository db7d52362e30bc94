#include "qrecon/algebra.hpp"

#include "qrecon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace qrecon::algebra {

namespace {

// Orthonormal Hermitian basis grown by Gram-Schmidt under the real inner
// product Re Tr(AB).
class HermitianSpan {
 public:
  explicit HermitianSpan(double rank_tol) : rank_tol_(rank_tol) {}

  bool add(Matrix x) {
    const double scale = std::max(1.0, x.frobenius());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis_) x -= b * hs_inner(b, x).real();
    const double n = x.frobenius();
    if (n <= rank_tol_ * scale) return false;
    basis_.push_back(hermitian_part(x * (1.0 / n)));
    return true;
  }

  // Adds the Hermitian and anti-Hermitian parts of an arbitrary matrix.
  void add_parts(const Matrix& m) {
    const Matrix adj = m.adjoint();
    add((m + adj) * 0.5);
    add((m - adj) * cplx(0.0, -0.5));
  }

  std::vector<Matrix>& basis() { return basis_; }

 private:
  double rank_tol_;
  std::vector<Matrix> basis_;
};

double span_distance(const std::vector<Matrix>& basis, Matrix x) {
  // The basis is Hermitian and orthonormal, so complex coefficients Tr(b x)
  // give the orthogonal projection of an arbitrary x.
  for (const auto& b : basis) x -= b * hs_inner(b, x);
  return x.frobenius();
}

// Real coordinates of a Hermitian matrix in an orthonormal Hermitian basis.
std::vector<double> coords(const std::vector<Matrix>& basis, const Matrix& h) {
  std::vector<double> c(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) c[k] = hs_inner(basis[k], h).real();
  return c;
}

// Real combinations of `candidates` (Hermitian) that commute with every
// element of `against`, as Hermitian matrices.
std::vector<Matrix> commuting_combinations(const std::vector<Matrix>& candidates, const std::vector<Matrix>& against,
                                           std::size_t d, const Tolerance& tol) {
  if (candidates.empty()) return {};
  if (against.empty()) return candidates;
  const std::vector<Matrix> target = states::hermitian_basis(d);
  const std::size_t block = target.size();
  Matrix system(against.size() * block, candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    for (std::size_t i = 0; i < against.size(); ++i) {
      // i[X, b] is Hermitian for Hermitian X, b.
      const Matrix c = commutator(candidates[k], against[i]) * cplx(0.0, 1.0);
      const auto v = coords(target, c);
      for (std::size_t r = 0; r < block; ++r) system(i * block + r, k) = v[r];
    }
  }
  const Matrix null = null_basis(system, tol);
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < null.cols(); ++c) {
    Matrix x(d, d);
    for (std::size_t k = 0; k < candidates.size(); ++k) x += candidates[k] * null(k, c).real();
    out.push_back(hermitian_part(x));
  }
  return out;
}

MatrixAlgebra closed_span(const std::vector<Matrix>& hermitian, std::size_t d, const Tolerance& tol) {
  return generate(hermitian, false, d, tol);
}

void require_same_ambient(const MatrixAlgebra& a, const MatrixAlgebra& b, const char* what) {
  if (a.ambient_dim() != b.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": ambient dimensions differ");
  }
}

// Euclidean projection onto {x >= 0, sum x = 1}.
std::vector<double> simplex_projection(std::vector<double> v) {
  std::vector<double> s = v;
  std::sort(s.begin(), s.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    cumulative += s[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (s[k] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
  return v;
}

Matrix psd_trace_one_projection(const Matrix& h, const Tolerance& tol) {
  const EigenSystem es = eig_hermitian(hermitian_part(h), tol);
  const std::vector<double> lambda = simplex_projection(es.values);
  return hermitian_part(es.vectors * Matrix::diagonal(std::span<const double>(lambda)) * es.vectors.adjoint());
}

}  // namespace

MatrixAlgebra generate(const std::vector<Matrix>& generators, bool with_identity, std::size_t ambient_dim,
                       const Tolerance& tol) {
  const std::size_t d = generators.empty() ? ambient_dim : generators.front().rows();
  if (d == 0) throw Error(ErrorCode::InvalidInput, "generate: ambient dimension unknown or zero");
  for (const auto& g : generators) {
    if (!g.is_square()) throw Error(ErrorCode::NotSquare, "generate: generators must be square");
    if (g.rows() != d) throw Error(ErrorCode::DimensionMismatch, "generate: generators differ in size");
  }
  HermitianSpan span(tol.rank_tol);
  if (with_identity) span.add(Matrix::identity(d));
  for (const auto& g : generators) span.add_parts(g);

  auto& basis = span.basis();
  for (std::size_t j = 0; j < basis.size() && basis.size() < d * d; ++j) {
    for (std::size_t i = 0; i <= j && basis.size() < d * d; ++i) {
      const Matrix prod = basis[i] * basis[j];
      span.add_parts(prod);
    }
  }

  MatrixAlgebra out;
  out.ambient_dim_ = d;
  out.basis_ = std::move(basis);
  out.contains_identity_ = out.contains(Matrix::identity(d), tol);
  return out;
}

double MatrixAlgebra::distance(const Matrix& x) const {
  if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_) {
    throw Error(ErrorCode::DimensionMismatch, "algebra membership: wrong matrix size");
  }
  return span_distance(basis_, x);
}

bool MatrixAlgebra::contains(const Matrix& x, const Tolerance& tol) const {
  return distance(x) <= 10 * tol.eq_tol * std::max(1.0, x.frobenius());
}

MatrixAlgebra MatrixAlgebra::from_span(std::size_t ambient_dim, const std::vector<Matrix>& elements,
                                       const Tolerance& tol) {
  for (const auto& e : elements) {
    if (e.rows() != ambient_dim || e.cols() != ambient_dim) {
      throw Error(ErrorCode::DimensionMismatch, "from_span: element size differs from the ambient dimension");
    }
  }
  HermitianSpan span(tol.rank_tol);
  for (const auto& e : elements) span.add_parts(e);
  MatrixAlgebra out;
  out.ambient_dim_ = ambient_dim;
  out.basis_ = std::move(span.basis());
  for (std::size_t i = 0; i < out.basis_.size(); ++i) {
    for (std::size_t j = 0; j < out.basis_.size(); ++j) {
      if (!out.contains(out.basis_[i] * out.basis_[j], tol)) {
        throw Error(ErrorCode::InvalidInput, "from_span: span is not closed under products");
      }
    }
  }
  out.contains_identity_ = out.contains(Matrix::identity(ambient_dim), tol);
  return out;
}

bool equal(const MatrixAlgebra& a, const MatrixAlgebra& b, const Tolerance& tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  for (const auto& x : a.basis())
    if (!b.contains(x, tol)) return false;
  return true;
}

MatrixAlgebra commutant(const MatrixAlgebra& a, const Tolerance& tol) {
  const std::size_t d = a.ambient_dim();
  return closed_span(commuting_combinations(states::hermitian_basis(d), a.basis(), d, tol), d, tol);
}

DoubleCommutantReport double_commutant_audit(const MatrixAlgebra& a, const Tolerance& tol) {
  const MatrixAlgebra c1 = commutant(a, tol);
  const MatrixAlgebra c2 = commutant(c1, tol);
  const MatrixAlgebra c3 = commutant(c2, tol);
  DoubleCommutantReport r;
  r.dim_a = a.dim();
  r.dim_commutant = c1.dim();
  r.dim_double = c2.dim();
  r.dim_triple = c3.dim();
  r.equals = equal(c2, a, tol);
  r.triple_equals = equal(c3, c1, tol);
  return r;
}

CenterReport center_factor(const MatrixAlgebra& a, const Tolerance& tol) {
  if (!a.contains_identity()) throw Error(ErrorCode::NotUnital, "center_factor needs a unital algebra");
  const std::size_t d = a.ambient_dim();
  MatrixAlgebra center = closed_span(commuting_combinations(a.basis(), a.basis(), d, tol), d, tol);
  const bool factor = center.dim() == 1;
  return CenterReport{std::move(center), factor};
}

IndependenceReport kinematic_independence(const MatrixAlgebra& a, const MatrixAlgebra& b, const Tolerance& tol) {
  require_same_ambient(a, b, "kinematic_independence");
  IndependenceReport r;
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) r.worst_commutator = std::max(r.worst_commutator, commutator(x, y).max_abs());
  r.independent = r.worst_commutator <= 10 * tol.eq_tol;
  return r;
}

Matrix cbh_TE(const Matrix& e, const Matrix& a, const Tolerance& tol) {
  if (!e.is_square() || !a.is_square() || e.rows() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "cbh_TE: E and A must be square of equal size");
  }
  if (!is_hermitian(e, tol.eq_tol)) throw Error(ErrorCode::NotAnEffect, "cbh_TE: E is not Hermitian");
  const EigenSystem es = eig_hermitian(hermitian_part(e), tol);
  if (es.values.front() < -tol.eq_tol || es.values.back() > 1.0 + tol.eq_tol) {
    throw Error(ErrorCode::NotAnEffect, "cbh_TE: E has eigenvalues outside [0, 1]");
  }
  std::vector<double> root(es.values.size()), co_root(es.values.size());
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    const double l = std::clamp(es.values[k], 0.0, 1.0);
    root[k] = std::sqrt(l);
    co_root[k] = std::sqrt(1.0 - l);
  }
  const Matrix vd = es.vectors.adjoint();
  const Matrix s = es.vectors * Matrix::diagonal(std::span<const double>(root)) * vd;
  const Matrix c = es.vectors * Matrix::diagonal(std::span<const double>(co_root)) * vd;
  return s * a * s + c * a * c;
}

double extension_residual(const MatrixAlgebra& a, const MatrixAlgebra& b, const AlgebraState& rho1,
                          const AlgebraState& rho2, const Matrix& rho) {
  double worst = 0.0;
  for (const auto& x : a.basis()) worst = std::max(worst, std::abs(hs_inner(rho, x) - hs_inner(rho1.mat(), x)));
  for (const auto& y : b.basis()) worst = std::max(worst, std::abs(hs_inner(rho, y) - hs_inner(rho2.mat(), y)));
  return worst;
}

ExtensionReport joint_state_extension(const MatrixAlgebra& a, const MatrixAlgebra& b, const AlgebraState& rho1,
                                      const AlgebraState& rho2, std::size_t max_iters, const Tolerance& tol) {
  require_same_ambient(a, b, "joint_state_extension");
  const std::size_t d = a.ambient_dim();
  if (rho1.dim() != d || rho2.dim() != d) {
    throw Error(ErrorCode::DimensionMismatch, "joint_state_extension: state dimensions differ from the algebras");
  }

  // Affine set {x : C x = t} in real coordinates over a Hermitian basis of M_d.
  const std::vector<Matrix> herm = states::hermitian_basis(d);
  const std::size_t n = herm.size();
  std::vector<std::vector<double>> rows;
  std::vector<double> target;
  auto constrain = [&](const Matrix& c, double value) {
    rows.push_back(coords(herm, c));
    target.push_back(value);
  };
  constrain(Matrix::identity(d), 1.0);
  for (const auto& x : a.basis()) constrain(x, hs_inner(rho1.mat(), x).real());
  for (const auto& y : b.basis()) constrain(y, hs_inner(rho2.mat(), y).real());
  const std::size_t m = rows.size();
  Matrix cmat(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) cmat(i, k) = rows[i][k];
  const Svd s = svd(cmat);
  const std::size_t r = numerical_rank(s, tol);

  auto to_matrix = [&](const std::vector<double>& x) {
    Matrix out(d, d);
    for (std::size_t k = 0; k < n; ++k) out += herm[k] * x[k];
    return hermitian_part(out);
  };
  auto affine_projection = [&](const Matrix& h) {
    std::vector<double> x = coords(herm, h);
    std::vector<double> excess(m);
    for (std::size_t i = 0; i < m; ++i) {
      double v = -target[i];
      for (std::size_t k = 0; k < n; ++k) v += rows[i][k] * x[k];
      excess[i] = v;
    }
    for (std::size_t c = 0; c < r; ++c) {
      double proj = 0.0;
      for (std::size_t i = 0; i < m; ++i) proj += s.u(i, c).real() * excess[i];
      proj /= s.sigma[c];
      for (std::size_t k = 0; k < n; ++k) x[k] -= s.v(k, c).real() * proj;
    }
    return to_matrix(x);
  };

  ExtensionReport report;
  Matrix x = Matrix::identity(d) * (1.0 / static_cast<double>(d));
  Matrix p(d, d), q(d, d);
  const double stop = kExtensionTolerance * 1e-2;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    const Matrix y = affine_projection(x + p);
    p = x + p - y;
    const Matrix next = psd_trace_one_projection(y + q, tol);
    q = y + q - next;
    x = next;
    report.iterations = it;
    report.residual = extension_residual(a, b, rho1, rho2, x);
    if (report.residual <= stop) break;
  }
  if (report.residual <= kExtensionTolerance) {
    report.feasible = true;
    report.state.emplace(x, tol);
  }
  return report;
}

MatrixAlgebra algebra_from_json(const json& j, const Tolerance& tol) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer() || j["ambient_dim"].get<long long>() < 0) {
    throw Error(ErrorCode::InvalidInput, "algebra JSON needs a non-negative integer \"ambient_dim\"");
  }
  const auto d = j["ambient_dim"].get<std::size_t>();
  const bool unit = j.value("with_identity", true);
  std::vector<Matrix> gens;
  if (j.contains("generators")) gens = matrices_from_json(j["generators"]);
  for (const auto& g : gens) {
    if (g.rows() != d || g.cols() != d) throw Error(ErrorCode::InvalidInput, "algebra JSON: generator size differs from ambient_dim");
  }
  return generate(gens, unit, d, tol);
}

json to_json(const MatrixAlgebra& a) {
  json basis = json::array();
  for (const auto& b : a.basis()) basis.push_back(matrix_to_json(b));
  return json{{"ambient_dim", a.ambient_dim()}, {"dim", a.dim()}, {"contains_identity", a.contains_identity()},
              {"basis", basis}};
}

}  // namespace qrecon::algebra
