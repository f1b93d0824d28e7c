#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "crn/numerics.hpp"

namespace crn {

void SearchConfig::validate() const {
  if (num_starts == 0) throw std::invalid_argument("num_starts must be positive");
  if (!(log_lo < log_hi)) throw std::invalid_argument("log range must satisfy lo < hi");
  if (!(newton_tol > 0.0) || !(dedup_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (max_iters == 0) throw std::invalid_argument("max_iters must be positive");
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 applied twice: once to the seed, once mixed with the index.
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ (index * 0xD1B54A32D192ED03ULL));
}

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

double relative_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
  if (scale == 0.0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

namespace {

double class_error(const MassActionSystem& sys, const Eigen::VectorXd& x, const Eigen::VectorXd& T) {
  if (sys.num_laws() == 0) return 0.0;
  return (sys.W() * x - T).cwiseAbs().maxCoeff() / (1.0 + T.cwiseAbs().maxCoeff());
}

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

Eigen::VectorXd clipped_step(const Eigen::VectorXd& x, const Eigen::VectorXd& dx, double lambda) {
  return (x + lambda * dx).cwiseMax(1e-12 * x);
}

}  // namespace

NewtonResult newton_in_class(const MassActionSystem& sys, const Eigen::VectorXd& x0, const Eigen::VectorXd& T,
                             double tol, std::size_t max_iters) {
  NewtonResult out;
  Eigen::VectorXd x = x0;
  std::size_t stalls = 0;
  for (std::size_t it = 0; it <= max_iters; ++it) {
    out.iterations = it;
    if (!finite(x)) break;
    out.residual = sys.scaled_residual(x);
    out.class_error = class_error(sys, x, T);
    if (out.residual <= tol && out.class_error <= tol) {
      out.converged = true;
      break;
    }
    if (it == max_iters) break;
    Eigen::VectorXd F = sys.augmented_rhs(x, T);
    Eigen::VectorXd dx = sys.augmented_jacobian(x).colPivHouseholderQr().solve(-F);
    if (!finite(dx)) break;
    const double merit = F.norm();
    double lambda = 1.0;
    Eigen::VectorXd xn = clipped_step(x, dx, lambda);
    bool improved = false;
    for (int h = 0; h < 30; ++h) {
      Eigen::VectorXd Fn = sys.augmented_rhs(xn, T);
      if (finite(Fn) && Fn.norm() < merit) {
        improved = true;
        break;
      }
      lambda *= 0.5;
      xn = clipped_step(x, dx, lambda);
    }
    stalls = improved ? 0 : stalls + 1;
    if (stalls >= 3) break;
    x = xn;
  }
  out.x = x;
  return out;
}

NewtonResult refine_free(const MassActionSystem& sys, const Eigen::VectorXd& x0, double tol, std::size_t max_iters) {
  NewtonResult out;
  Eigen::VectorXd x = x0;
  for (std::size_t it = 0; it <= max_iters; ++it) {
    out.iterations = it;
    out.residual = sys.scaled_residual(x);
    if (out.residual <= tol) {
      out.converged = true;
      break;
    }
    if (it == max_iters) break;
    Eigen::VectorXd f = sys.rhs(x);
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys.jacobian(x));
    cod.setThreshold(1e-12);
    Eigen::VectorXd dx = cod.solve(-f);
    if (!finite(dx)) break;
    const double merit = f.norm();
    double lambda = 1.0;
    Eigen::VectorXd xn = clipped_step(x, dx, lambda);
    for (int h = 0; h < 30 && !(sys.rhs(xn).norm() < merit); ++h) {
      lambda *= 0.5;
      xn = clipped_step(x, dx, lambda);
    }
    if (!(sys.rhs(xn).norm() < merit)) break;
    x = xn;
  }
  out.x = x;
  out.class_error = 0.0;
  return out;
}

std::vector<NewtonResult> refine_shared_class(const MassActionSystem& sys, const std::vector<Eigen::VectorXd>& states,
                                              double tol) {
  std::vector<NewtonResult> out;
  if (states.empty()) return out;
  out.push_back(refine_free(sys, states.front(), tol));
  const Eigen::VectorXd T = sys.totals(out.front().x);
  for (std::size_t k = 1; k < states.size(); ++k) out.push_back(newton_in_class(sys, states[k], T, tol));
  return out;
}

SearchResult search_steady_states(const MassActionSystem& sys, const Eigen::VectorXd& T, const SearchConfig& cfg) {
  cfg.validate();
  const Eigen::Index n = static_cast<Eigen::Index>(sys.num_species());
  const Eigen::MatrixXd& W = sys.W();
  if (T.size() != W.rows()) {
    throw std::invalid_argument("totals vector has " + std::to_string(T.size()) + " entries, expected " +
                                std::to_string(W.rows()));
  }
  Eigen::LDLT<Eigen::MatrixXd> gram;
  if (W.rows() > 0) gram.compute(W * W.transpose());
  const double floor = 1e-3 * std::pow(10.0, cfg.log_lo);

  std::vector<std::optional<Eigen::VectorXd>> slots(cfg.num_starts);
  std::vector<char> placed(cfg.num_starts, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cfg.num_starts; i = next++) {
      std::mt19937_64 rng(substream_seed(cfg.seed, i));
      Eigen::VectorXd x0(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        x0(k) = std::pow(10.0, cfg.log_lo + (cfg.log_hi - cfg.log_lo) * uniform01(rng()));
      }
      Eigen::VectorXd x = x0;
      if (W.rows() > 0) x = x0 - W.transpose() * gram.solve(W * x0 - T);
      placed[i] = (x.array() > 0.0).all() ? 1 : 0;
      x = x.cwiseMax(floor);
      NewtonResult nr = newton_in_class(sys, x, T, cfg.newton_tol, cfg.max_iters);
      if (nr.converged && (nr.x.array() > 0.0).all()) slots[i] = nr.x;
    }
  };
  std::size_t threads = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, cfg.num_starts);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SearchResult result;
  std::vector<Eigen::VectorXd> found;
  for (const auto& s : slots) {
    if (s) found.push_back(*s);
  }
  result.converged_starts = found.size();
  result.feasible = !found.empty() || std::any_of(placed.begin(), placed.end(), [](char p) { return p != 0; });
  std::sort(found.begin(), found.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  std::vector<Eigen::VectorXd> unique;
  for (const auto& x : found) {
    bool dup = std::any_of(unique.begin(), unique.end(),
                           [&](const Eigen::VectorXd& u) { return relative_distance(x, u) <= cfg.dedup_tol; });
    if (!dup) unique.push_back(x);
  }
  for (const auto& x : unique) result.states.push_back(make_record(sys, x));
  return result;
}

}  // namespace crn
