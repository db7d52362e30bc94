#include "qrecon/modular.hpp"

#include "qrecon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qrecon::modular {

namespace {

Matrix spectral_power(const EigenSystem& es, cplx z) {
  std::vector<cplx> f(es.values.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::exp(z * std::log(es.values[k]));
  return es.vectors * Matrix::diagonal(std::span<const cplx>(f)) * es.vectors.adjoint();
}

void require_dim(const Matrix& a, std::size_t d, const char* what) {
  if (a.rows() != d || a.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": operator must be " + std::to_string(d) + "x" +
                                                  std::to_string(d));
  }
}

// First tensor factor of X (x) I.
Matrix first_factor(const Matrix& m, std::size_t d) {
  return partial_trace(m, TraceOut::Second, d, d) * (1.0 / static_cast<double>(d));
}

}  // namespace

Matrix ModularData::rho_power(cplx z) const { return spectral_power(rho_eig_, z); }

Matrix ModularData::delta_power(cplx z) const { return spectral_power(delta_eig_, z); }

Matrix ModularData::apply_j(const Matrix& x) const { return swap_ * x.conj(); }

ModularData gns_purify(const states::DensityMatrix& rho, const Tolerance& tol) {
  const std::size_t d = rho.dim();
  ModularData md(rho);
  md.rho_eig_ = eig_hermitian(rho.mat(), tol);
  const double lmin = md.rho_eig_.values.front(), lmax = md.rho_eig_.values.back();
  if (!(lmin > tol.rank_tol * lmax)) {
    throw Error(ErrorCode::NotFaithful, "state has eigenvalue " + std::to_string(lmin) +
                                            "; a separating vector needs a faithful state");
  }

  const Matrix root = md.rho_power(0.5);
  md.psi_ = Matrix(d * d, 1);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) md.psi_(a * d + b, 0) = root(a, b);

  md.delta_ = kron(rho.mat(), mat_fun(rho.mat().conj(), MatFn::power(-1.0), tol));
  md.delta_eig_ = eig_hermitian(hermitian_part(md.delta_), tol);
  if (md.delta_eig_.values.front() <= 0.0) throw Error(ErrorCode::VerificationFailed, "Delta is not positive definite");

  md.swap_ = Matrix(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) md.swap_(a * d + b, b * d + a) = 1.0;

  const Matrix s_half = md.delta_power(0.5);
  const Matrix id = Matrix::identity(d);
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const Matrix lhs = md.apply_j(s_half * (kron(Matrix::unit(d, i, j), id) * md.psi_));
      const Matrix rhs = kron(Matrix::unit(d, j, i), id) * md.psi_;
      worst = std::max(worst, max_abs_diff(lhs, rhs));
    }
  }
  md.tomita_error_ = worst;
  if (worst > kTomitaTolerance) {
    throw Error(ErrorCode::VerificationFailed, "Tomita relation fails by " + std::to_string(worst));
  }
  return md;
}

Matrix modular_flow_at(const ModularData& md, const Matrix& a, cplx z) {
  require_dim(a, md.dim(), "modular flow");
  const cplx i(0.0, 1.0);
  return md.rho_power(-i * z) * a * md.rho_power(i * z);
}

Matrix modular_flow(const ModularData& md, const Matrix& a, double t, FlowCheck* check) {
  const std::size_t d = md.dim();
  require_dim(a, d, "modular_flow");
  if (t == 0.0) {
    if (check) *check = FlowCheck{};
    return a;
  }
  const Matrix out = modular_flow_at(md, a, t);
  const cplx it(0.0, t);
  const Matrix full = md.delta_power(-it) * kron(a, Matrix::identity(d)) * md.delta_power(it);
  FlowCheck c;
  c.route_gap = std::max(max_abs_diff(first_factor(full, d), out), max_abs_diff(full, kron(out, Matrix::identity(d))));
  const Matrix ad = a.adjoint();
  const Matrix flow_ad = modular_flow_at(md, ad, t);
  c.automorphism_gap = std::max(max_abs_diff(modular_flow_at(md, a * ad, t), out * flow_ad),
                                max_abs_diff(flow_ad, out.adjoint()));
  if (check) *check = c;
  const double scale = std::max(1.0, a.max_abs() * a.max_abs());
  if (c.route_gap > kFlowTolerance * scale || c.automorphism_gap > kFlowTolerance * scale) {
    throw Error(ErrorCode::VerificationFailed, "modular flow checks failed: route gap " + std::to_string(c.route_gap) +
                                                   ", automorphism gap " + std::to_string(c.automorphism_gap));
  }
  return out;
}

namespace {

template <class Flow>
KmsReport kms_report(const Matrix& rho, const Matrix& a, const Matrix& b, const std::vector<double>& ts, double beta,
                     Flow flow) {
  KmsReport r;
  r.beta = beta;
  for (double t : ts) {
    const cplx lhs = (rho * flow(cplx(t, 0.0)) * b).trace();
    const cplx rhs = (rho * b * flow(cplx(t, beta))).trace();
    const double res = std::abs(lhs - rhs);
    r.entries.push_back({t, res});
    r.max_residual = std::max(r.max_residual, res);
  }
  return r;
}

}  // namespace

KmsReport kms_residual(const ModularData& md, const Matrix& a, const Matrix& b, const std::vector<double>& ts,
                       double beta) {
  require_dim(a, md.dim(), "kms_residual");
  require_dim(b, md.dim(), "kms_residual");
  return kms_report(md.rho().mat(), a, b, ts, beta, [&](cplx z) { return modular_flow_at(md, a, z); });
}

KmsReport kms_residual_dynamics(const states::DensityMatrix& rho, const dynamics::Hamiltonian& h, const Matrix& a,
                                const Matrix& b, const std::vector<double>& ts, double beta) {
  const std::size_t d = h.dim();
  if (rho.dim() != d) throw Error(ErrorCode::DimensionMismatch, "kms_residual_dynamics: state and Hamiltonian differ");
  require_dim(a, d, "kms_residual_dynamics");
  require_dim(b, d, "kms_residual_dynamics");
  const EigenSystem es = eig_hermitian(h.mat());
  auto expo = [&](cplx s) {
    std::vector<cplx> f(d);
    for (std::size_t k = 0; k < d; ++k) f[k] = std::exp(s * es.values[k]);
    return es.vectors * Matrix::diagonal(std::span<const cplx>(f)) * es.vectors.adjoint();
  };
  const cplx i(0.0, 1.0);
  return kms_report(rho.mat(), a, b, ts, beta, [&](cplx z) { return expo(i * z) * a * expo(-i * z); });
}

states::DensityMatrix gibbs_state(const dynamics::Hamiltonian& h, double beta, const Tolerance& tol) {
  if (!std::isfinite(beta)) throw Error(ErrorCode::InvalidInput, "gibbs_state: beta must be finite");
  const EigenSystem es = eig_hermitian(h.mat(), tol);
  std::vector<double> w(es.values.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < w.size(); ++k) top = std::max(top, w[k] = -beta * es.values[k]);
  double z = 0.0;
  for (double& x : w) z += (x = std::exp(x - top));
  for (double& x : w) x /= z;
  const Matrix rho = es.vectors * Matrix::diagonal(std::span<const double>(w)) * es.vectors.adjoint();
  return states::DensityMatrix(hermitian_part(rho), tol);
}

InnerImplementation inner_implementation(const ModularData& md, double t) {
  const std::size_t d = md.dim();
  InnerImplementation out{md.rho_power(cplx(0.0, t)), 0.0};
  const Matrix ud = out.u.adjoint();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Matrix e = Matrix::unit(d, i, j);
      out.certificate = std::max(out.certificate, max_abs_diff(modular_flow(md, e, t), ud * e * out.u));
    }
  if (out.certificate > kInnerTolerance) {
    throw Error(ErrorCode::VerificationFailed, "inner implementation certificate " + std::to_string(out.certificate));
  }
  return out;
}

Cocycle cocycle_intertwiner(const ModularData& md1, const ModularData& md2, double t) {
  const std::size_t d = md1.dim();
  if (md2.dim() != d) throw Error(ErrorCode::DimensionMismatch, "cocycle_intertwiner: states differ in dimension");
  Cocycle out{md1.rho_power(cplx(0.0, -t)) * md2.rho_power(cplx(0.0, t)), 0.0};
  const Matrix wd = out.w.adjoint();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Matrix e = Matrix::unit(d, i, j);
      out.certificate =
          std::max(out.certificate, max_abs_diff(modular_flow(md1, e, t), out.w * modular_flow(md2, e, t) * wd));
    }
  return out;
}

json to_json(const KmsReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back({{"t", e.t}, {"residual", e.residual}});
  return json{{"beta", r.beta}, {"entries", entries}, {"max_residual", r.max_residual}};
}

}  // namespace qrecon::modular
