#include "qrecon/linalg.hpp"

#include "qrecon/errors.hpp"
#include "qrecon/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qrecon {

void Tolerance::validate() const {
  if (!(eq_tol > 0.0) || !(rank_tol > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "tolerances must be strictly positive");
  }
}

namespace {

// Unitary 2x2 block acting on coordinates (p, q): [[pp, pq], [qp, qq]].
struct Rotation {
  cplx pp, pq, qp, qq;
};

// Rotation J with J^dag [[app, apq], [conj(apq), aqq]] J diagonal.
Rotation jacobi_rotation(double app, double aqq, cplx apq) {
  const double r = std::abs(apq);
  const cplx phase = apq / r;
  const double theta = (aqq - app) / (2.0 * r);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx ph = std::conj(phase);
  return {c, s, -s * ph, c * ph};
}

// m <- m J on columns p, q.
void rotate_columns(Matrix& m, std::size_t p, std::size_t q, const Rotation& j) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const cplx mp = m(k, p);
    const cplx mq = m(k, q);
    m(k, p) = mp * j.pp + mq * j.qp;
    m(k, q) = mp * j.pq + mq * j.qq;
  }
}

// m <- J^dag m on rows p, q.
void rotate_rows(Matrix& m, std::size_t p, std::size_t q, const Rotation& j) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const cplx mp = m(p, k);
    const cplx mq = m(q, k);
    m(p, k) = std::conj(j.pp) * mp + std::conj(j.qp) * mq;
    m(q, k) = std::conj(j.pq) * mp + std::conj(j.qq) * mq;
  }
}

double off_diagonal_norm2(const Matrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = 0; q < a.cols(); ++q)
      if (p != q) s += std::norm(a(p, q));
  return s;
}

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x && std::abs(x) < 1e9; }

}  // namespace

bool is_hermitian(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
  return true;
}

bool is_unitary(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  return max_abs_diff(m.adjoint() * m, Matrix::identity(m.rows())) <= tol;
}

void require_hermitian(const Matrix& m, const Tolerance& tol, const char* what) {
  if (!m.is_square()) {
    throw Error(ErrorCode::NotSquare, std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                          std::to_string(m.cols()));
  }
  if (!is_hermitian(m, tol.eq_tol)) {
    throw Error(ErrorCode::NotHermitian,
                std::string(what) + ": |M - M^dag|_max = " + std::to_string(max_abs_diff(m, m.adjoint())));
  }
}

EigenSystem eig_hermitian(const Matrix& m, const Tolerance& tol) {
  require_hermitian(m, tol, "eig_hermitian");
  const std::size_t n = m.rows();
  Matrix a = hermitian_part(m);
  Matrix v = Matrix::identity(n);
  const double scale = a.frobenius();

  for (int sweep = 0; sweep < 100; ++sweep) {
    const double off = std::sqrt(off_diagonal_norm2(a));
    if (off == 0.0 || off <= 1e-15 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        if (apq == 0.0) continue;
        const Rotation j = jacobi_rotation(a(p, p).real(), a(q, q).real(), apq);
        rotate_columns(a, p, q, j);
        rotate_rows(a, p, q, j);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, j);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenSystem out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

Svd svd(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);

  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
          alpha += std::norm(w(k, p));
          beta += std::norm(w(k, q));
          gamma += std::conj(w(k, p)) * w(k, q);
        }
        if (std::abs(gamma) == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Rotation j = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(w, p, q, j);
        rotate_columns(v, p, q, j);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t c = 0; c < n; ++c) sigma[c] = norm(w.col(c));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  Svd out{Matrix(m, n), std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.sigma[k] = sigma[src];
    for (std::size_t r = 0; r < n; ++r) out.v(r, k) = v(r, src);
    if (sigma[src] > 0.0) {
      for (std::size_t r = 0; r < m; ++r) out.u(r, k) = w(r, src) / sigma[src];
    }
  }
  return out;
}

std::size_t numerical_rank(const Svd& s, const Tolerance& tol) {
  if (s.sigma.empty()) return 0;
  const double cutoff = std::max(tol.rank_tol * s.sigma.front(), tol.eq_tol);
  return static_cast<std::size_t>(
      std::count_if(s.sigma.begin(), s.sigma.end(), [&](double x) { return x > cutoff; }));
}

Matrix range_basis(const Matrix& a, const Tolerance& tol) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  const Svd s = svd(a);
  return s.u.cols_range(0, numerical_rank(s, tol));
}

Matrix null_basis(const Matrix& a, const Tolerance& tol) {
  if (a.rows() == 0) return Matrix::identity(a.cols());
  const Svd s = svd(a);
  const std::size_t r = numerical_rank(s, tol);
  return s.v.cols_range(r, a.cols() - r);
}

Matrix mat_fun(const Matrix& m, const MatFn& f, const Tolerance& tol) {
  const EigenSystem es = eig_hermitian(m, tol);
  const std::size_t n = es.values.size();
  double max_abs_eig = 0.0;
  for (double l : es.values) max_abs_eig = std::max(max_abs_eig, std::abs(l));

  auto require_pd = [&](const char* what) {
    const double lmin = n == 0 ? 0.0 : es.values.front();
    const double lmax = n == 0 ? 0.0 : es.values.back();
    if (n > 0 && !(lmax > 0.0 && lmin > tol.rank_tol * lmax)) {
      throw Error(ErrorCode::NotPositiveDefinite, std::string(what) + ": smallest eigenvalue " +
                                                      std::to_string(lmin) + ", largest " + std::to_string(lmax));
    }
  };

  std::vector<cplx> fv(n);
  switch (f.kind) {
    case MatFn::Kind::Exp:
      for (std::size_t k = 0; k < n; ++k) fv[k] = std::exp(f.param * es.values[k]);
      break;
    case MatFn::Kind::Log:
      require_pd("log");
      for (std::size_t k = 0; k < n; ++k) fv[k] = std::log(es.values[k]);
      break;
    case MatFn::Kind::Power: {
      const cplx z = f.param;
      if (z.imag() == 0.0 && is_integer(z.real())) {
        const int e = static_cast<int>(z.real());
        if (e < 0) {
          for (double l : es.values) {
            if (!(std::abs(l) > tol.rank_tol * max_abs_eig)) {
              throw Error(ErrorCode::NotPositiveDefinite, "negative integer power of a singular matrix");
            }
          }
        }
        for (std::size_t k = 0; k < n; ++k) fv[k] = std::pow(es.values[k], e);
      } else {
        require_pd("power");
        for (std::size_t k = 0; k < n; ++k) fv[k] = std::exp(z * std::log(es.values[k]));
      }
      break;
    }
  }

  Matrix scaled = es.vectors;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scaled(r, c) *= fv[c];
  return scaled * es.vectors.adjoint();
}

Matrix partial_trace(const Matrix& m, TraceOut which, std::size_t da, std::size_t db) {
  Matrix out;
  if (m.size() >= kernels::kParallelThreshold) {
    kernels::omp::partial_trace(m, which == TraceOut::First, da, db, out);
  } else {
    kernels::serial::partial_trace(m, which == TraceOut::First, da, db, out);
  }
  return out;
}

Matrix frame_projector(const Matrix& frame) {
  if (frame.cols() == 0) return Matrix(frame.rows(), frame.rows());
  return frame * frame.adjoint();
}

}  // namespace qrecon
