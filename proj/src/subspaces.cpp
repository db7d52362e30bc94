#include "qrecon/subspaces.hpp"

#include "qrecon/errors.hpp"

#include <algorithm>
#include <exception>
#include <numeric>

namespace qrecon::subspaces {

namespace {

void require_same_ambient(const Subspace& x, const Subspace& y, const char* what) {
  if (x.ambient_dim() != y.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": ambient dimensions " +
                                                  std::to_string(x.ambient_dim()) + " and " +
                                                  std::to_string(y.ambient_dim()));
  }
}

// Eigenvectors of a Hermitian matrix whose eigenvalue passes `keep`.
template <class Keep>
Matrix spectral_frame(const Matrix& h, const Tolerance& tol, Keep keep) {
  const EigenSystem es = eig_hermitian(h, tol);
  std::vector<std::size_t> picked;
  for (std::size_t k = 0; k < es.values.size(); ++k)
    if (keep(es.values[k])) picked.push_back(k);
  Matrix frame(h.rows(), picked.size());
  for (std::size_t c = 0; c < picked.size(); ++c) frame.set_col(c, es.vectors.col(picked[c]));
  return frame;
}

}  // namespace

Subspace::Subspace(std::size_t ambient_dim, Matrix frame, const Tolerance& tol)
    : ambient_dim_(ambient_dim), frame_(std::move(frame)) {
  if (frame_.rows() != ambient_dim_) {
    if (frame_.cols() == 0) {
      frame_ = Matrix(ambient_dim_, 0);
    } else {
      throw Error(ErrorCode::DimensionMismatch, "Subspace: frame rows differ from ambient dimension");
    }
  }
  if (frame_.cols() > ambient_dim_) throw Error(ErrorCode::InvalidInput, "Subspace: more columns than dimensions");
  if (max_abs_diff(frame_.adjoint() * frame_, Matrix::identity(frame_.cols())) > tol.eq_tol * 10) {
    throw Error(ErrorCode::InvalidInput, "Subspace: frame columns are not orthonormal");
  }
  projector_ = frame_projector(frame_);
}

Subspace Subspace::zero(std::size_t ambient_dim) { return Subspace(ambient_dim, Matrix(ambient_dim, 0)); }

Subspace Subspace::whole(std::size_t ambient_dim) { return Subspace(ambient_dim, Matrix::identity(ambient_dim)); }

Subspace from_columns(const Matrix& m, const Tolerance& tol) {
  return Subspace(m.rows(), range_basis(m, tol), tol);
}

Subspace from_spanning(const std::vector<Matrix>& vectors, std::size_t ambient_dim, const Tolerance& tol) {
  Matrix m(ambient_dim, 0);
  for (const auto& v : vectors) {
    if (v.rows() != ambient_dim || v.cols() != 1) {
      throw Error(ErrorCode::DimensionMismatch, "from_spanning: vector is not " + std::to_string(ambient_dim) + "x1");
    }
    m = hstack(m, v);
  }
  return from_columns(m, tol);
}

Subspace meet(const Subspace& x, const Subspace& y, const Tolerance& tol) {
  require_same_ambient(x, y, "meet");
  if (x.is_zero() || y.is_zero()) return Subspace::zero(x.ambient_dim());
  const Matrix avg = (x.projector() + y.projector()) * 0.5;
  return Subspace(x.ambient_dim(), spectral_frame(avg, tol, [&](double l) { return l >= 1.0 - tol.rank_tol; }), tol);
}

Subspace join(const Subspace& x, const Subspace& y, const Tolerance& tol) {
  require_same_ambient(x, y, "join");
  return from_columns(hstack(x.frame(), y.frame()), tol);
}

Subspace ortho(const Subspace& x, const Tolerance& tol) {
  if (x.is_zero()) return Subspace::whole(x.ambient_dim());
  return Subspace(x.ambient_dim(), spectral_frame(x.projector(), tol, [](double l) { return l < 0.5; }), tol);
}

bool equal(const Subspace& x, const Subspace& y, const Tolerance& tol) {
  require_same_ambient(x, y, "equal");
  return x.dim() == y.dim() && max_abs_diff(x.projector(), y.projector()) <= 10 * tol.eq_tol;
}

bool leq(const Subspace& x, const Subspace& y, const Tolerance& tol) { return equal(meet(x, y, tol), x, tol); }

GeneratedLattice generate_lattice(const std::vector<Subspace>& family, std::size_t budget, const Tolerance& tol) {
  if (family.empty()) throw Error(ErrorCode::InvalidInput, "generate_lattice: empty family");
  const std::size_t d = family.front().ambient_dim();
  for (const auto& s : family) require_same_ambient(s, family.front(), "generate_lattice");

  std::vector<Subspace> found;
  std::vector<int> generator_of;  // family index or -1
  auto find = [&](const Subspace& s) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < found.size(); ++i)
      if (equal(found[i], s, tol)) return i;
    return std::nullopt;
  };
  auto add = [&](const Subspace& s, int generator) {
    if (auto at = find(s)) {
      if (generator >= 0 && generator_of[*at] < 0) generator_of[*at] = generator;
      return;
    }
    found.push_back(s);
    generator_of.push_back(generator);
    if (found.size() > budget) {
      throw Error(ErrorCode::ClosureBudgetExceeded, "closure exceeded " + std::to_string(budget) +
                                                        " subspaces; the generated lattice is likely infinite");
    }
  };
  add(Subspace::zero(d), -1);
  add(Subspace::whole(d), -1);
  for (std::size_t k = 0; k < family.size(); ++k) add(family[k], static_cast<int>(k));

  // Each round combines every pair that involves at least one element found
  // in the previous round. Candidates are computed in parallel into fixed
  // slots and merged serially, so the element order is deterministic.
  std::size_t processed = 0;
  while (processed < found.size()) {
    const std::size_t n = found.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = processed; j < n; ++j)
      for (std::size_t i = 0; i <= j; ++i) pairs.emplace_back(i, j);
    std::vector<std::vector<Subspace>> slots(pairs.size());
    std::exception_ptr failure;
    const auto count = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(dynamic)
    for (long long p = 0; p < count; ++p) {
      try {
        const auto [i, j] = pairs[static_cast<std::size_t>(p)];
        auto& out = slots[static_cast<std::size_t>(p)];
        out.push_back(meet(found[i], found[j], tol));
        out.push_back(join(found[i], found[j], tol));
        if (i == j) out.push_back(ortho(found[i], tol));
      } catch (...) {
#pragma omp critical(qrecon_generate)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    processed = n;
    for (const auto& slot : slots)
      for (const auto& s : slot) add(s, -1);
  }

  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return found[a].dim() < found[b].dim(); });

  const std::size_t n = found.size();
  GeneratedLattice out{lattice::FiniteLattice{}, {}};
  std::vector<std::string> names;
  std::size_t other = 0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t src = order[pos];
    out.elements.push_back(found[src]);
    if (src == 0) {
      names.push_back("0");
    } else if (src == 1) {
      names.push_back("1");
    } else if (generator_of[src] >= 0) {
      names.push_back("g" + std::to_string(generator_of[src]));
    } else {
      names.push_back("x" + std::to_string(other++));
    }
  }

  std::vector<char> order_rel(n * n, 0);
  std::vector<lattice::Element> ortho_map(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      order_rel[i * n + j] = (i == j || leq(out.elements[i], out.elements[j], tol)) ? 1 : 0;
    const Subspace oc = ortho(out.elements[i], tol);
    const auto it = std::find_if(out.elements.begin(), out.elements.end(),
                                 [&](const Subspace& s) { return equal(s, oc, tol); });
    if (it == out.elements.end()) throw Error(ErrorCode::VerificationFailed, "closure is missing an orthocomplement");
    ortho_map[i] = static_cast<lattice::Element>(it - out.elements.begin());
  }
  out.lattice = lattice::FiniteLattice::from_order(std::move(names), std::move(order_rel), std::move(ortho_map));
  return out;
}

Relevance is_relevant(const Subspace& q2, const Subspace& q1, const Tolerance& tol) {
  require_same_ambient(q2, q1, "is_relevant");
  const Subspace m = meet(q2, ortho(q1, tol), tol);
  Relevance r;
  r.relevant = m.is_zero();
  if (!r.relevant) r.witness = m.frame().col(0);
  return r;
}

Subspace random_subspace(std::size_t ambient_dim, std::size_t k, Rng& rng, ScalarField field) {
  if (k > ambient_dim) throw Error(ErrorCode::InvalidInput, "random_subspace: k exceeds the ambient dimension");
  return Subspace(ambient_dim, random_unitary(ambient_dim, rng, field).cols_range(0, k));
}

json to_json(const Subspace& s) {
  json j = matrix_to_json(s.frame());
  j["ambient_dim"] = s.ambient_dim();
  return j;
}

Subspace from_json(const json& j, const Tolerance& tol) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j["ambient_dim"].is_number_integer() || j["ambient_dim"].get<long long>() < 0) {
    throw Error(ErrorCode::InvalidInput, "subspace JSON needs a non-negative integer \"ambient_dim\"");
  }
  const auto d = j["ambient_dim"].get<std::size_t>();
  const Matrix frame = matrix_from_json(j);
  if (frame.cols() == 0) return Subspace::zero(d);
  if (frame.rows() != d) throw Error(ErrorCode::InvalidInput, "subspace JSON: frame rows differ from ambient_dim");
  return from_columns(frame, tol);
}

}  // namespace qrecon::subspaces
