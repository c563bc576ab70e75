#include "dirtun/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace dirtun::partition {

using fields::bracket;
using fields::DomainError;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Quintic smoothstep: C^2 monotone ramp on [0,1] with s' = 30 t^2 (1-t)^2.
struct Smoothstep {
  static double value(double t) {
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
  }
  static double derivative(double t) {
    const double u = t * (1.0 - t);
    return 30.0 * u * u;
  }
  static constexpr double max_derivative = 30.0 / 16.0; // at t = 1/2
};

// Edge profile sin((pi/2) s(t)) and its complement cos((pi/2) s(t)).
struct Edge {
  double value;
  double complement;
  double d_value;      // d/dt
  double d_complement; // d/dt
};

Edge edge_eval(double t) {
  const double w = kHalfPi * Smoothstep::value(t);
  const double dw = kHalfPi * Smoothstep::derivative(t);
  const double sw = std::sin(w), cw = std::cos(w);
  return {sw, cw, dw * cw, -dw * sw};
}

} // namespace

CutoffPair::CutoffPair(double a, double b, CutoffKind kind)
    : a_(a), b_(b), kind_(kind) {
  if (!(a > 0.0 && a < b)) throw DomainError("CutoffPair: need 0 < a < b");
}

double CutoffPair::universal_constant() {
  // Steepest edge is the rising one, width a/2.
  return kHalfPi * Smoothstep::max_derivative * 2.0; // = 1.875 pi > 2
}

double CutoffPair::derivative_bound() const {
  return universal_constant() / (kind_ == CutoffKind::Bump ? a_ : b_);
}

CutoffSample CutoffPair::eval(double r) const {
  if (kind_ == CutoffKind::Bump) {
    if (r <= 0.5 * a_ || r >= 2.0 * b_) return {0.0, 1.0, 0.0, 0.0};
    if (r < a_) {
      const double scale = 2.0 / a_;
      Edge e = edge_eval((r - 0.5 * a_) * scale);
      return {e.value, e.complement, e.d_value * scale, e.d_complement * scale};
    }
    if (r <= b_) return {1.0, 0.0, 0.0, 0.0};
    const double scale = 1.0 / b_;
    Edge e = edge_eval((2.0 * b_ - r) * scale);
    return {e.value, e.complement, -e.d_value * scale, -e.d_complement * scale};
  }
  // Capped kind: 1 on (0, b], then follows the bump's falling edge.
  if (r <= b_) return {1.0, 0.0, 0.0, 0.0};
  if (r >= 2.0 * b_) return {0.0, 1.0, 0.0, 0.0};
  const double scale = 1.0 / b_;
  Edge e = edge_eval((2.0 * b_ - r) * scale);
  return {e.value, e.complement, -e.d_value * scale, -e.d_complement * scale};
}

CutoffPair build_bump(double a, double b, CutoffKind kind) {
  return CutoffPair(a, b, kind);
}

PartitionOfUnity::PartitionOfUnity(double delta, double c, double j0,
                                   double sigma)
    : delta_(delta), c_(c), j0_(j0), sigma_(sigma),
      eta_bump_(delta, c, CutoffKind::Bump),
      eta_capped_(delta, c, CutoffKind::Capped),
      chi_bump_(0.5 * delta, 2.0 * c, CutoffKind::Bump),
      chi_capped_(0.5 * delta, 2.0 * c, CutoffKind::Capped) {
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("PartitionOfUnity: delta must be in (0,1)");
  if (!(c >= 1.0)) throw DomainError("PartitionOfUnity: c must be >= 1");
  if (!(j0 >= 2.0)) throw DomainError("PartitionOfUnity: j0 must be >= 2");
}

double PartitionOfUnity::channel_scale(long long j) const {
  const double aj = std::abs(static_cast<double>(j));
  if (aj <= j0_) return std::pow(bracket(aj), sigma_);
  return std::pow(aj, sigma_);
}

namespace {

CutoffSample scaled_eval(const CutoffPair &pair, double r, double scale) {
  CutoffSample s = pair.eval(r / scale);
  s.d_value /= scale;
  s.d_complement /= scale;
  return s;
}

} // namespace

CutoffSample PartitionOfUnity::chi(long long j, double r) const {
  const double scale = channel_scale(j);
  const bool capped = std::abs(static_cast<double>(j)) <= j0_;
  return scaled_eval(capped ? chi_capped_ : chi_bump_, r, scale);
}

CutoffSample PartitionOfUnity::eta(long long j, double r) const {
  const double scale = channel_scale(j);
  const bool capped = std::abs(static_cast<double>(j)) <= j0_;
  return scaled_eval(capped ? eta_capped_ : eta_bump_, r, scale);
}

double PartitionOfUnity::universal_constant() {
  // The chi pair uses halved inner scale (a = delta/2), which costs a
  // factor two against the delta j0^sigma envelope.
  return 2.0 * CutoffPair::universal_constant(); // = 3.75 pi
}

double PartitionOfUnity::derivative_sup_bound() const {
  return universal_constant() *
         std::max(1.0 / c_, 1.0 / (delta_ * std::pow(j0_, sigma_)));
}

PartitionOfUnity::Support PartitionOfUnity::eta_perp_support(
    long long j) const {
  const double scale = channel_scale(j);
  if (std::abs(static_cast<double>(j)) <= j0_) return {0.0, c_ * scale};
  return {delta_ * scale, c_ * scale};
}

PartitionOfUnity::Support PartitionOfUnity::chi_perp_support(
    long long j) const {
  const double scale = channel_scale(j);
  if (std::abs(static_cast<double>(j)) <= j0_) return {0.0, 2.0 * c_ * scale};
  return {0.5 * delta_ * scale, 2.0 * c_ * scale};
}

void PartitionOfUnity::export_csv(const std::string &path, long long j,
                                  double r_lo, double r_hi,
                                  int samples) const {
  std::ofstream out(path);
  out << "r,chi,chi_perp,eta,eta_perp,d_chi,d_chi_perp,d_eta,d_eta_perp\n";
  out.precision(17);
  for (int i = 0; i < samples; ++i) {
    const double r = r_lo + (r_hi - r_lo) * i / (samples - 1);
    CutoffSample xc = chi(j, r);
    CutoffSample xe = eta(j, r);
    out << r << ',' << xc.value << ',' << xc.complement << ',' << xe.value
        << ',' << xe.complement << ',' << xc.d_value << ','
        << xc.d_complement << ',' << xe.d_value << ',' << xe.d_complement
        << '\n';
  }
}

PartitionOfUnity build_partition(double delta, double c, double j0,
                                 double sigma) {
  return PartitionOfUnity(delta, c, j0, sigma);
}

double ims_residual(const RadialGrid &grid, const VectorXcd &psi,
                    const PartitionOfUnity &pou, long long j, bool use_eta) {
  const int n = grid.n;
  if (psi.size() != 2 * n)
    throw assembly::ShapeError("ims_residual: spinor size mismatch");

  const Eigen::MatrixXd t = assembly::kinetic_form(grid);
  auto kinetic = [&](const VectorXcd &phi) {
    const VectorXcd up = phi.head(n), dn = phi.tail(n);
    return (up.dot(t * up) + dn.dot(t * dn)).real();
  };

  VectorXcd theta_psi(2 * n), perp_psi(2 * n);
  Eigen::VectorXd deriv_sq(n);
  for (int k = 0; k < n; ++k) {
    const double r = grid.node(k);
    CutoffSample s = use_eta ? pou.eta(j, r) : pou.chi(j, r);
    theta_psi(k) = s.value * psi(k);
    theta_psi(n + k) = s.value * psi(n + k);
    perp_psi(k) = s.complement * psi(k);
    perp_psi(n + k) = s.complement * psi(n + k);
    deriv_sq(k) = s.d_value * s.d_value + s.d_complement * s.d_complement;
  }
  double cross = 0.0;
  for (int k = 0; k < n; ++k)
    cross += deriv_sq(k) * (std::norm(psi(k)) + std::norm(psi(n + k)));

  const double lhs = kinetic(psi);
  const double rhs = kinetic(theta_psi) + kinetic(perp_psi) - cross;
  return std::abs(lhs - rhs);
}

namespace {

// Minimum of f over [lo, hi] on a log grid (lo > 0).
template <typename F>
double log_scan_min(F &&f, double lo, double hi, int samples) {
  double best = std::numeric_limits<double>::infinity();
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < samples; ++i) {
    const double r = std::exp(llo + (lhi - llo) * i / (samples - 1));
    best = std::min(best, f(r));
  }
  return best;
}

} // namespace

std::vector<ForbiddenMargins> forbidden_bound_check(
    const PartitionOfUnity &pou, const FluxProfile &profile, double mu,
    const std::vector<long long> &channels, const RadialGrid &grid,
    int scan_samples) {
  const auto consts =
      regions_constants_for(profile, mu, pou.c());
  std::vector<ForbiddenMargins> out;
  out.reserve(channels.size());

  const Eigen::MatrixXd t = assembly::kinetic_form(grid);
  const int n = grid.n;

  for (long long j : channels) {
    ForbiddenMargins m{};
    m.channel = j;
    m.applicable = pou.c() >= consts.first && pou.delta() <= consts.second;

    auto v_min = [&](double r) {
      return fields::effective_potential_min(profile,
                                             static_cast<int>(j), r);
    };

    // eta side: V_j - mu A^2 over supp(eta_perp).
    {
      auto sup = pou.eta_perp_support(j);
      double margin = std::numeric_limits<double>::infinity();
      auto f = [&](double r) {
        const double a = profile.vector_potential(r);
        return v_min(r) - mu * a * a;
      };
      if (sup.inner > 0.0)
        margin = std::min(margin,
                          log_scan_min(f, sup.inner * 1e-6, sup.inner,
                                       scan_samples));
      margin = std::min(
          margin, log_scan_min(f, sup.outer, 10.0 * sup.outer, scan_samples));
      m.eta_margin = margin;
    }

    // chi side: V_j - mu A(2c|j|^sigma)^2 over supp(chi_perp).
    {
      auto sup = pou.chi_perp_support(j);
      const double scale = pou.channel_scale(j);
      const double a_ref = profile.vector_potential(2.0 * pou.c() * scale);
      const double floor = mu * a_ref * a_ref;
      auto f = [&](double r) { return v_min(r) - floor; };
      double margin = std::numeric_limits<double>::infinity();
      if (sup.inner > 0.0)
        margin = std::min(margin,
                          log_scan_min(f, sup.inner * 1e-6, sup.inner,
                                       scan_samples));
      margin = std::min(
          margin, log_scan_min(f, sup.outer, 10.0 * sup.outer, scan_samples));
      m.chi_margin = margin;
    }

    // Matrix check: min-eig(h_j^2 + 2 eps^2 - chip V chip) with eps the
    // partition derivative sup bound.
    {
      const Eigen::MatrixXd h =
          assembly::discretize_channel(grid, profile, static_cast<int>(j));
      Eigen::MatrixXd lhs = h * h;
      const double eps = pou.derivative_sup_bound();
      const Eigen::VectorXd v = assembly::effective_potential_diagonal(
          grid, profile, static_cast<int>(j));
      Eigen::VectorXd chip(2 * n);
      for (int k = 0; k < n; ++k) {
        const double cp = pou.chi(j, grid.node(k)).complement;
        chip(k) = cp;
        chip(n + k) = cp;
      }
      lhs.diagonal().array() += 2.0 * eps * eps;
      lhs.noalias() -= (chip.array() * v.array() * chip.array())
                           .matrix()
                           .asDiagonal()
                           .toDenseMatrix();
      m.matrix_margin =
          linalg::min_eigenvalue(lhs.cast<std::complex<double>>());
    }

    out.push_back(m);
  }
  return out;
}

} // namespace dirtun::partition
