#include "rydgate/magnus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "rydgate/error.hpp"

namespace rydgate {

namespace {

// Gauss-Legendre nodes and the CF4 mixing weights.
const double kSqrt3 = std::sqrt(3.0);
const double kNode1 = 0.5 - kSqrt3 / 6.0;
const double kNode2 = 0.5 + kSqrt3 / 6.0;
const double kWeightA = 0.25 + kSqrt3 / 6.0;
const double kWeightB = 0.25 - kSqrt3 / 6.0;

struct DisjointSet {
  std::vector<Eigen::Index> parent;
  explicit DisjointSet(Eigen::Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  }
  Eigen::Index find(Eigen::Index i) {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  }
  void unite(Eigen::Index a, Eigen::Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

double error_norm(const Eigen::VectorXcd& fine, const Eigen::VectorXcd& coarse, double rtol,
                  double atol) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < fine.size(); ++i) {
    const double scale = atol + rtol * std::max(std::abs(fine(i)), std::abs(coarse(i)));
    const double r = std::abs(fine(i) - coarse(i)) / scale;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(fine.size()));
}

} // namespace

SparseMatrixXcd AffineHamiltonian::at(double t) const {
  const Eigen::VectorXd c = coefficients(t);
  SparseMatrixXcd h(dim(), dim());
  for (std::size_t k = 0; k < terms.size(); ++k) h += c(static_cast<Eigen::Index>(k)) * terms[k];
  return h;
}

MagnusPropagator::MagnusPropagator(AffineHamiltonian hamiltonian)
    : hamiltonian_(std::move(hamiltonian)) {
  const Eigen::Index n = hamiltonian_.dim();
  DisjointSet sets(n);
  for (const auto& term : hamiltonian_.terms) {
    for (int col = 0; col < term.outerSize(); ++col)
      for (SparseMatrixXcd::InnerIterator it(term, col); it; ++it)
        if (it.value() != std::complex<double>(0.0)) sets.unite(it.row(), it.col());
  }
  std::vector<Eigen::Index> root_to_block(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index r = sets.find(i);
    if (root_to_block[r] < 0) {
      root_to_block[r] = static_cast<Eigen::Index>(blocks_.size());
      blocks_.emplace_back();
    }
    blocks_[static_cast<std::size_t>(root_to_block[r])].push_back(i);
  }

  dense_terms_.resize(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& idx = blocks_[b];
    const auto m = static_cast<Eigen::Index>(idx.size());
    for (const auto& term : hamiltonian_.terms) {
      Eigen::MatrixXcd dense(m, m);
      for (Eigen::Index r = 0; r < m; ++r)
        for (Eigen::Index c = 0; c < m; ++c) dense(r, c) = term.coeff(idx[r], idx[c]);
      dense_terms_[b].push_back(std::move(dense));
    }
  }
}

void MagnusPropagator::apply_exponential(const Eigen::VectorXd& c, double h,
                                         Eigen::VectorXcd& psi) const {
  const std::complex<double> minus_i(0.0, -1.0);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& idx = blocks_[b];
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::VectorXcd local(m);
    for (Eigen::Index r = 0; r < m; ++r) local(r) = psi(idx[r]);

    if (m == 1) {
      double e = 0.0;
      for (std::size_t k = 0; k < dense_terms_[b].size(); ++k)
        e += c(static_cast<Eigen::Index>(k)) * dense_terms_[b][k](0, 0).real();
      psi(idx[0]) = std::exp(minus_i * (e * h)) * local(0);
      continue;
    }

    Eigen::MatrixXcd hb = Eigen::MatrixXcd::Zero(m, m);
    for (std::size_t k = 0; k < dense_terms_[b].size(); ++k)
      hb += c(static_cast<Eigen::Index>(k)) * dense_terms_[b][k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hb);
    const Eigen::VectorXcd phases =
        (minus_i * h * es.eigenvalues().cast<std::complex<double>>()).array().exp();
    local = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * local));
    for (Eigen::Index r = 0; r < m; ++r) psi(idx[r]) = local(r);
  }
}

Eigen::VectorXcd MagnusPropagator::step(const Eigen::VectorXcd& psi, double t, double h) const {
  const Eigen::VectorXd f1 = hamiltonian_.coefficients(t + kNode1 * h);
  const Eigen::VectorXd f2 = hamiltonian_.coefficients(t + kNode2 * h);
  Eigen::VectorXcd out = psi;
  apply_exponential(kWeightA * f1 + kWeightB * f2, h, out);
  apply_exponential(kWeightB * f1 + kWeightA * f2, h, out);
  return out;
}

std::vector<Eigen::VectorXcd> MagnusPropagator::evolve(const Eigen::VectorXcd& psi0,
                                                       std::span<const double> output_times,
                                                       std::span<const double> breakpoints,
                                                       const PropagatorOptions& opts) {
  if (psi0.size() != hamiltonian_.dim())
    throw DomainError("propagator: state dimension does not match the Hamiltonian");
  std::vector<Eigen::VectorXcd> out;
  if (output_times.empty()) return out;
  if (!std::is_sorted(output_times.begin(), output_times.end()))
    throw DomainError("propagator: output times must be ascending");

  // every time the integrator has to land on exactly
  std::vector<double> stops(output_times.begin(), output_times.end());
  for (double b : breakpoints)
    if (b > output_times.front() && b < output_times.back()) stops.push_back(b);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  const double span = output_times.back() - output_times.front();
  double h = opts.initial_step > 0.0 ? opts.initial_step
                                     : (span > 0.0 ? span / 1000.0 : 1.0);
  Eigen::VectorXcd psi = psi0;
  double t = output_times.front();
  std::size_t next_output = 0;
  out.reserve(output_times.size());
  stats_ = {};

  for (double stop : stops) {
    while (t < stop) {
      const bool last = t + h >= stop;
      const double trial = last ? stop - t : h;
      const Eigen::VectorXcd coarse = step(psi, t, trial);
      const Eigen::VectorXcd half = step(psi, t, 0.5 * trial);
      const Eigen::VectorXcd fine = step(half, t + 0.5 * trial, 0.5 * trial);
      // step doubling: the fine solution's error is ~ (fine - coarse) / 15
      const double err = error_norm(fine, coarse, opts.rtol, opts.atol) / 15.0;
      const double factor = err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 4.0) : 4.0;
      if (err <= 1.0) {
        psi = fine;
        t = last ? stop : t + trial;
        ++stats_.accepted;
        // a clipped final step says nothing about the controller's step size
        if (!last || factor < 1.0) h = trial * factor;
      } else {
        ++stats_.rejected;
        h = trial * factor;
      }
      if (h < opts.min_step) {
        std::ostringstream msg;
        msg << "propagator: step size " << h << " below minimum at t = " << t;
        throw ToleranceFailure(msg.str());
      }
      if (stats_.accepted + stats_.rejected > opts.max_steps)
        throw ToleranceFailure("propagator: exceeded maximum number of steps");
    }
    while (next_output < output_times.size() && output_times[next_output] <= stop) {
      out.push_back(psi);
      ++next_output;
    }
  }
  return out;
}

} // namespace rydgate
