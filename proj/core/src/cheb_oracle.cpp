#include "widom/cheb_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>
#include <numbers>

#include "widom/error.hpp"
#include "widom/norms.hpp"
#include "widom/scan.hpp"

namespace widom {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Orthonormal (w.r.t. the sample mean) basis q_0..q_n of polynomials of
// degree <= n on the sample set, with q_{k+1} = (z q_k - sum H(i,k) q_i) / H(k+1,k).
struct ArnoldiBasis {
  Eigen::MatrixXcd q;  // samples x (n+1)
  Eigen::MatrixXcd h;  // (n+1) x n

  ArnoldiBasis(const Eigen::VectorXcd& z, int n) : q(z.size(), n + 1), h(Eigen::MatrixXcd::Zero(n + 1, n)) {
    const double count = static_cast<double>(z.size());
    q.col(0).setOnes();
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXcd v = z.cwiseProduct(q.col(k));
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXcd proj = q.leftCols(k + 1).adjoint() * v / count;
        v -= q.leftCols(k + 1) * proj;
        h.col(k).head(k + 1) += proj;
      }
      const double norm = v.norm() / std::sqrt(count);
      if (!(norm > 0.0)) throw Error(ErrorKind::convergence, "lawson_chebyshev: Arnoldi breakdown");
      h(k + 1, k) = norm;
      q.col(k + 1) = v / norm;
    }
  }

  int degree() const { return static_cast<int>(h.cols()); }

  // Values q_0(x)..q_n(x) at an arbitrary point.
  Eigen::VectorXcd at(cplx x) const {
    const int n = degree();
    Eigen::VectorXcd v(n + 1);
    v(0) = 1.0;
    for (int k = 0; k < n; ++k) {
      cplx acc = x * v(k);
      for (int i = 0; i <= k; ++i) acc -= h(i, k) * v(i);
      v(k + 1) = acc / h(k + 1, k);
    }
    return v;
  }

  // Monomial coefficients (row = basis index, column = power).
  Eigen::MatrixXcd monomials() const {
    const int n = degree();
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    p(0, 0) = 1.0;
    for (int k = 0; k < n; ++k) {
      Eigen::RowVectorXcd next = Eigen::RowVectorXcd::Zero(n + 1);
      next.tail(n) = p.row(k).head(n);
      for (int i = 0; i <= k; ++i) next -= h(i, k) * p.row(i);
      p.row(k + 1) = next / h(k + 1, k);
    }
    return p;
  }

  // log of the leading coefficient ratio: z^n = exp(log_lead) q_n + lower terms.
  double log_lead() const {
    double acc = 0.0;
    for (int k = 0; k < degree(); ++k) acc += std::log(std::abs(h(k + 1, k)));
    return acc;
  }
};

// min t subject to |target_k - lower_k . c| <= t, by a log-barrier Newton
// method on the real form (Re c, Im c, t).
struct MinimaxSolution {
  Eigen::VectorXcd coef;
  double t = 0.0;
  double dual = 0.0;         // weak-duality lower bound on the discrete optimum
  Eigen::VectorXd weights;   // |y_k|, normalized to sum 1
};

MinimaxSolution solve_minimax(const Eigen::MatrixXcd& lower, const Eigen::VectorXcd& target,
                              Eigen::VectorXcd coef, double gap_tol) {
  const Eigen::Index count = lower.rows();
  const Eigen::Index n = lower.cols();
  const Eigen::Index dim = 2 * n + 1;
  const double nn = static_cast<double>(count);

  Eigen::VectorXcd r = target - lower * coef;
  double t = 1.001 * r.cwiseAbs().maxCoeff() + 1e-300;

  auto barrier = [&](const Eigen::VectorXcd& c, double tt, double tau, double& value) {
    const Eigen::VectorXcd rr = target - lower * c;
    double acc = tau * tt;
    for (Eigen::Index k = 0; k < count; ++k) {
      const double slack = tt * tt - std::norm(rr(k));
      if (!(slack > 0.0)) return false;
      acc -= std::log(slack);
    }
    value = acc;
    return true;
  };

  double tau = nn / t;
  Eigen::VectorXd slack(count);
  for (int stage = 0; stage < 60; ++stage) {
    for (int step = 0; step < 80; ++step) {
      r = target - lower * coef;
      for (Eigen::Index k = 0; k < count; ++k) slack(k) = t * t - std::norm(r(k));
      // v_k = grad of slack_k: 2 (Re(conj(a) r), Im(conj(a) r), t)
      const Eigen::MatrixXcd ar = lower.adjoint().array().rowwise() * r.transpose().array();
      Eigen::MatrixXd v(count, dim);
      v.leftCols(n) = 2.0 * ar.real().transpose();
      v.middleCols(n, n) = 2.0 * ar.imag().transpose();
      v.col(2 * n).setConstant(2.0 * t);
      const Eigen::VectorXd inv = slack.cwiseInverse();

      Eigen::VectorXd grad = -(v.transpose() * inv);
      grad(2 * n) += tau;
      const Eigen::MatrixXd vs = inv.asDiagonal() * v;
      Eigen::MatrixXd hess = vs.transpose() * vs;
      const Eigen::MatrixXcd g = lower.adjoint() * ((2.0 * inv).asDiagonal() * lower);
      hess.topLeftCorner(n, n) += g.real();
      hess.block(0, n, n, n) -= g.imag();
      hess.block(n, 0, n, n) += g.imag();
      hess.block(n, n, n, n) += g.real();
      hess(2 * n, 2 * n) -= 2.0 * inv.sum();

      const Eigen::VectorXd delta = hess.ldlt().solve(-grad);
      const double decrement = -grad.dot(delta);
      if (!std::isfinite(decrement) || decrement <= 1e-12) break;

      Eigen::VectorXcd dc(n);
      for (Eigen::Index j = 0; j < n; ++j) dc(j) = cplx(delta(j), delta(n + j));
      double f0 = 0.0;
      barrier(coef, t, tau, f0);
      double alpha = 1.0, f1 = 0.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        const Eigen::VectorXcd c1 = coef + alpha * dc;
        const double t1 = t + alpha * delta(2 * n);
        if (t1 > 0.0 && barrier(c1, t1, tau, f1) && f1 <= f0 - 0.25 * alpha * decrement) {
          coef = c1;
          t = t1;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (2.0 * nn / tau <= gap_tol * t) break;
    tau *= 10.0;
  }

  // Dual certificate: any y with lower^H y = 0 gives max_k |r_k(c)| >= |y^H target| / ||y||_1
  // for every c. The barrier multipliers r_k / slack_k pick the active set;
  // the weights are then re-solved there as y_k = lambda_k r_k / |r_k| with
  // lower^H y = 0 and sum lambda = 1, which is far better conditioned.
  r = target - lower * coef;
  Eigen::VectorXd mult(count);
  for (Eigen::Index k = 0; k < count; ++k) mult(k) = std::abs(r(k)) / (t * t - std::norm(r(k)));
  const double mult_max = mult.maxCoeff();
  std::vector<Eigen::Index> active;
  for (Eigen::Index k = 0; k < count; ++k) {
    if (mult(k) >= 1e-4 * mult_max && std::abs(r(k)) > 0.0) active.push_back(k);
  }
  const auto na = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd sys(2 * n + 1, na);
  for (Eigen::Index j = 0; j < na; ++j) {
    const Eigen::Index k = active[j];
    const Eigen::VectorXcd col = lower.row(k).adjoint() * (r(k) / std::abs(r(k)));
    sys.col(j).head(n) = col.real();
    sys.col(j).segment(n, n) = col.imag();
    sys(2 * n, j) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n + 1);
  rhs(2 * n) = 1.0;
  const Eigen::VectorXd lambda = sys.completeOrthogonalDecomposition().solve(rhs);

  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(count);
  if (lambda.minCoeff() >= 0.0) {
    for (Eigen::Index j = 0; j < na; ++j) y(active[j]) = lambda(j) * r(active[j]) / std::abs(r(active[j]));
  } else {
    for (Eigen::Index k = 0; k < count; ++k) y(k) = r(k) / (t * t - std::norm(r(k)));
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(lower);
  y -= lower * qr.solve(y);
  MinimaxSolution out;
  out.coef = coef;
  out.t = r.cwiseAbs().maxCoeff();
  const double l1 = y.cwiseAbs().sum();
  if (l1 > 0.0) {
    out.dual = std::abs(y.dot(target)) / l1;
    out.weights = y.cwiseAbs() / l1;
  } else {
    out.weights = Eigen::VectorXd::Constant(count, 1.0 / nn);
  }
  return out;
}

}  // namespace

ChebResult lawson_chebyshev(const ExteriorMap& map, int n, const LawsonOptions& options) {
  if (n < 1 || n > 64) throw Error(ErrorKind::parameter, "lawson_chebyshev: n must lie in [1, 64]");
  const int grid = options.grid > 0 ? options.grid : std::max(16 * n, 64);
  if (grid < 16 * n) throw Error(ErrorKind::parameter, "lawson_chebyshev: grid must be >= 16 n");

  Eigen::VectorXcd z(grid);
  for (int k = 0; k < grid; ++k) z(k) = psi(map, std::polar(1.0, kTwoPi * (static_cast<double>(k) / grid)));
  const ArnoldiBasis basis(z, n);
  Eigen::MatrixXcd lower = basis.q.leftCols(n);
  Eigen::VectorXcd target = basis.q.col(n);

  ChebResult res;
  res.n = n;
  res.grid_size = grid;

  Eigen::VectorXd w = Eigen::VectorXd::Constant(grid, 1.0 / grid);
  Eigen::VectorXcd best_coef;
  Eigen::VectorXd best_weights;
  double best_max = std::numeric_limits<double>::infinity();
  double best_dual = 0.0;
  double prev_max = std::numeric_limits<double>::quiet_NaN();

  for (int it = 0; it < options.max_iters; ++it) {
    const Eigen::VectorXd sw = w.cwiseSqrt();
    const Eigen::MatrixXcd a = sw.asDiagonal() * lower;
    const Eigen::VectorXcd b = sw.asDiagonal() * target;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
    qr.setThreshold(1e-13);
    if (qr.rank() < n) {
      if (it == 0) throw Error(ErrorKind::convergence, "lawson_chebyshev: weighted system is rank deficient");
      break;
    }
    const Eigen::VectorXcd coef = qr.solve(b);
    const Eigen::VectorXcd g = target - lower * coef;
    const Eigen::VectorXd mag = g.cwiseAbs();
    const double dual = std::sqrt((w.array() * mag.array().square()).sum());
    const double max_g = mag.maxCoeff();
    res.objective_history.push_back(dual);
    res.lawson_iters = it + 1;
    best_dual = std::max(best_dual, dual);
    if (max_g < best_max) {
      best_max = max_g;
      best_coef = coef;
      best_weights = w;
    }
    if (it > 0 && std::abs(max_g - prev_max) <= options.tol * max_g) break;
    prev_max = max_g;
    w = w.cwiseProduct(mag);
    const double total = w.sum();
    if (!(total > 0.0)) break;
    w /= total;
  }

  auto log_abs_tau = [&](const Eigen::VectorXcd& coef, double theta) {
    const Eigen::VectorXcd v = basis.at(psi(map, std::polar(1.0, theta)));
    const cplx g = v(n) - (v.head(n).array() * coef.array()).sum();
    return std::log(std::abs(g));
  };
  const int scan_grid = 4 * grid;
  PeriodicMax peak = scan_periodic_max([&](double th) { return log_abs_tau(best_coef, th); }, scan_grid, 1e-10);

  if (options.polish) {
    const double gap_tol = std::min(options.tol, 1e-9) * 1e-2;
    MinimaxSolution sol = solve_minimax(lower, target, best_coef, gap_tol);
    best_dual = std::max(best_dual, sol.dual);
    for (int round = 0; round < options.max_rounds; ++round) {
      const auto f = [&](double th) { return log_abs_tau(sol.coef, th); };
      peak = scan_periodic_max(f, scan_grid, 1e-10);
      best_coef = sol.coef;
      best_weights = sol.weights;
      best_max = sol.t;
      if (peak.value <= std::log(sol.t) + std::log1p(options.tol)) break;

      // local maxima of the coarse scan above the discrete level
      const double h = kTwoPi / scan_grid;
      std::vector<std::pair<double, double>> peaks;
      std::vector<double> vals(scan_grid);
      for (int k = 0; k < scan_grid; ++k) vals[k] = f(h * k);
      for (int k = 0; k < scan_grid; ++k) {
        const double left = vals[(k + scan_grid - 1) % scan_grid];
        const double right = vals[(k + 1) % scan_grid];
        if (vals[k] >= left && vals[k] > right && vals[k] > std::log(sol.t)) peaks.emplace_back(vals[k], h * k);
      }
      std::sort(peaks.begin(), peaks.end(), std::greater<>());
      peaks.resize(std::min<std::size_t>(peaks.size(), 2 * n + 2));
      peaks.emplace_back(peak.value, peak.theta);

      // refined maximum plus a local cluster around it, so flat peaks near
      // corners of L do not need one round per digit
      std::vector<double> thetas;
      for (std::size_t i = 0; i < peaks.size(); ++i) {
        double theta = peaks[i].second;
        if (i + 1 < peaks.size()) {
          double a = theta - h, b = theta + h;
          const double g = 0.5 * (std::sqrt(5.0) - 1.0);
          double x1 = b - g * (b - a), x2 = a + g * (b - a);
          double f1 = f(x1), f2 = f(x2);
          while (b - a > 1e-12) {
            if (f1 < f2) {
              a = x1; x1 = x2; f1 = f2; x2 = a + g * (b - a); f2 = f(x2);
            } else {
              b = x2; x2 = x1; f2 = f1; x1 = b - g * (b - a); f1 = f(x1);
            }
          }
          theta = 0.5 * (a + b);
        }
        thetas.push_back(theta);
        for (double off : {0.5, 0.125, 0.03125}) {
          thetas.push_back(theta - off * h);
          thetas.push_back(theta + off * h);
        }
      }
      const Eigen::Index old = lower.rows();
      lower.conservativeResize(old + static_cast<Eigen::Index>(thetas.size()), Eigen::NoChange);
      target.conservativeResize(lower.rows());
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        const Eigen::VectorXcd v = basis.at(psi(map, std::polar(1.0, thetas[i])));
        const Eigen::Index row = old + static_cast<Eigen::Index>(i);
        lower.row(row) = v.head(n).transpose();
        target(row) = v(n);
      }
      sol = solve_minimax(lower, target, sol.coef, gap_tol);
      best_dual = std::max(best_dual, sol.dual);
      res.exchange_rounds = round + 1;
    }
  }
  res.sample_count = static_cast<int>(lower.rows());

  const double log_lead = basis.log_lead();
  const double lead = std::exp(log_lead);

  // tau_n = lead * (q_n - sum coef_k q_k).
  const Eigen::MatrixXcd mono = basis.monomials();
  Eigen::RowVectorXcd tau = mono.row(n);
  for (int k = 0; k < n; ++k) tau -= best_coef(k) * mono.row(k);
  res.coeffs.resize(n);
  for (int k = 0; k < n; ++k) res.coeffs[k] = lead * tau(k);

  res.norm_est = std::exp(log_lead + peak.value);
  res.lower_bound = lead * best_dual;

  const Eigen::VectorXd mag = (target - lower * best_coef).cwiseAbs();
  const double wmax = best_weights.maxCoeff();
  double amax = 0.0, amin = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < mag.size(); ++k) {
    if (best_weights(k) >= 1e-3 * wmax) {
      amax = std::max(amax, mag(k));
      amin = std::min(amin, mag(k));
    }
  }
  res.residual_spread = amax > 0.0 ? (amax - amin) / amax : 0.0;
  return res;
}

cplx eval_cheb(const ChebResult& result, cplx z) {
  cplx v(1.0, 0.0);
  for (int k = result.n - 1; k >= 0; --k) v = v * z + result.coeffs[k];
  return v;
}

WidomBracket widom_lower_upper(const ExteriorMap& map, int n, const BracketOptions& options) {
  const ChebResult cheb = lawson_chebyshev(map, n, options.lawson);
  const double cap_n = std::pow(map.cap, n);
  WidomBracket out;
  out.n = n;
  out.lower = std::max(1.0, cheb.lower_bound / cap_n);
  out.upper_lawson = cheb.norm_est / cap_n;
  out.upper = out.upper_lawson;
  if (options.q >= 2 && n % options.q == 0 && n / options.q >= 2) {
    const int m = n / options.q;
    const double c = options.s * m / options.q;
    try {
      const ZeroMultiset zeros = build(options.mode, map, options.q, m, c);
      const WidomReport rep = widom_factor(zeros);
      out.upper_constructed = rep.widom;
      out.upper = std::min(out.upper, rep.widom);
    } catch (const Error&) {
      // infeasible comparison construction; the Lawson candidate still bounds w_n
    }
  }
  return out;
}

}  // namespace widom
