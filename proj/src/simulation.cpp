#include "duo/simulation.hpp"

#include "duo/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace duo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void add_noise(Eigen::MatrixXd& m, double var, rng::Stream& s) {
  if (var < 0.0) throw DomainError("noise variance must be nonnegative");
  const double sd = std::sqrt(var);
  // row-major draw order keeps sample i independent of later rows
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) += sd * s.normal();
}

GmmSpec basis_gmm(Index n, Index p, int k, int offset) {
  GmmSpec g;
  g.n = n;
  g.p = p;
  for (int j = 0; j < k; ++j) {
    g.weights.push_back(1.0 / k);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(p);
    c(offset + j) = 15.0;
    g.centers.push_back(std::move(c));
  }
  return g;
}

void check_setting_args(Index n1, Index n2, Index p, double tau) {
  if (p < 25) throw ShapeError("settings 1 and 2 need p >= 25, got " + std::to_string(p));
  if (n1 < 2 || n2 < 2) throw ShapeError("need at least 2 samples per dataset");
  if (tau < 0.0) throw DomainError("tau must be nonnegative");
}

// y side shared by both settings: six clusters plus the w0 distortion on coordinates 6..25.
void sample_setting_y(ClusterPair& out, Index n2, Index p, double tau, double sigma2_sq,
                      std::uint64_t seed) {
  rng::Stream lab(seed, 1, rng::Purpose::labels), sig(seed, 1, rng::Purpose::signal);
  GmmSample g = sample_gmm(basis_gmm(n2, p, 6, 0), lab, sig);
  rng::Stream pert(seed, 1, rng::Purpose::perturbation);
  for (Index i = 0; i < n2; ++i)
    for (Index j = 5; j < 25; ++j) g.values(i, j) += pert.uniform(-3.0 * tau, tau);
  out.y_clean = DataMatrix(g.values, "y_clean");
  rng::Stream noise(seed, 1, rng::Purpose::noise);
  add_noise(g.values, sigma2_sq, noise);
  out.y = DataMatrix(std::move(g.values), "y");
  out.labels_y = std::move(g.labels);
}

ClusterPair sample_setting(int x_clusters, int x_offset, Index n1, Index n2, Index p, double tau,
                           double sigma1_sq, double sigma2_sq, std::uint64_t seed) {
  check_setting_args(n1, n2, p, tau);
  rng::Stream lab(seed, 0, rng::Purpose::labels), sig(seed, 0, rng::Purpose::signal);
  GmmSample gx = sample_gmm(basis_gmm(n1, p, x_clusters, x_offset), lab, sig);
  DataMatrix x_clean(gx.values, "x_clean");
  rng::Stream noise(seed, 0, rng::Purpose::noise);
  add_noise(gx.values, sigma1_sq, noise);
  ClusterPair out{DataMatrix(std::move(gx.values), "x"), x_clean, std::move(gx.labels), {},
                  x_clean, x_clean};
  sample_setting_y(out, n2, p, tau, sigma2_sq, seed);
  return out;
}

}  // namespace

GmmSample sample_gmm(const GmmSpec& spec, rng::Stream& label_stream, rng::Stream& signal_stream) {
  const int k = spec.k();
  if (k < 1 || static_cast<int>(spec.centers.size()) != k)
    throw ShapeError("GMM needs one center per weight");
  double total = 0.0;
  for (double w : spec.weights) {
    if (!(w > 0.0)) throw DomainError("mixture weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
  for (const auto& c : spec.centers)
    if (c.size() != spec.p) throw ShapeError("center dimension does not match p");
  if (spec.cov_scale < 0.0) throw DomainError("covariance scale must be nonnegative");

  GmmSample out;
  out.labels.resize(static_cast<std::size_t>(spec.n));
  for (Index i = 0; i < spec.n; ++i) {
    double u = label_stream.uniform(), acc = 0.0;
    int lab = k - 1;
    for (int j = 0; j < k; ++j) {
      acc += spec.weights[static_cast<std::size_t>(j)];
      if (u < acc) {
        lab = j;
        break;
      }
    }
    out.labels[static_cast<std::size_t>(i)] = lab;
  }
  const double sd = std::sqrt(spec.cov_scale);
  out.values.resize(spec.n, spec.p);
  for (Index i = 0; i < spec.n; ++i) {
    const auto& c = spec.centers[static_cast<std::size_t>(out.labels[static_cast<std::size_t>(i)])];
    for (Index j = 0; j < spec.p; ++j) out.values(i, j) = c(j) + sd * signal_stream.normal();
  }
  return out;
}

ClusterPair sample_setting1(Index n1, Index n2, Index p, double tau, double sigma1_sq,
                            double sigma2_sq, std::uint64_t seed) {
  return sample_setting(6, 0, n1, n2, p, tau, sigma1_sq, sigma2_sq, seed);
}

ClusterPair sample_setting2(Index n1, Index n2, Index p, double tau, double sigma1_sq,
                            double sigma2_sq, std::uint64_t seed) {
  return sample_setting(4, 2, n1, n2, p, tau, sigma1_sq, sigma2_sq, seed);
}

Eigen::MatrixXd sample_circle(Index n, double radius, rng::Stream& s) {
  Eigen::MatrixXd out(n, 2);
  for (Index i = 0; i < n; ++i) {
    double t = kTwoPi * s.uniform();
    out(i, 0) = radius * std::cos(t);
    out(i, 1) = radius * std::sin(t);
  }
  return out;
}

Eigen::MatrixXd sample_torus(Index n, double major, double minor, rng::Stream& s) {
  Eigen::MatrixXd out(n, 3);
  for (Index i = 0; i < n; ++i) {
    double u = kTwoPi * s.uniform();
    double v = kTwoPi * s.uniform();
    double ring = major + minor * std::cos(u);
    out(i, 0) = ring * std::cos(v);
    out(i, 1) = ring * std::sin(v);
    out(i, 2) = minor * std::sin(u);
  }
  return out;
}

// Figure-8 immersion with tube radius parameter R = 3:
//   a = cos(u/2) sin v - sin(u/2) sin 2v
//   ((R + a) cos u, (R + a) sin u, sin(u/2) sin v + cos(u/2) sin 2v, cos v)
// The fourth coordinate separates the two sheets that cross in R^3.
Eigen::MatrixXd sample_klein_bottle(Index n, rng::Stream& s) {
  constexpr double R = 3.0;
  Eigen::MatrixXd out(n, 4);
  for (Index i = 0; i < n; ++i) {
    double u = kTwoPi * s.uniform();
    double v = kTwoPi * s.uniform();
    double a = std::cos(u / 2) * std::sin(v) - std::sin(u / 2) * std::sin(2 * v);
    out(i, 0) = (R + a) * std::cos(u);
    out(i, 1) = (R + a) * std::sin(u);
    out(i, 2) = std::sin(u / 2) * std::sin(v) + std::cos(u / 2) * std::sin(2 * v);
    out(i, 3) = std::cos(v);
  }
  return out;
}

TorusPair sample_torus_pair(Index n1, Index n2, Index p, double sigma1_sq, double sigma2_sq,
                            std::uint64_t seed, double theta) {
  if (p < 23) throw ShapeError("torus pair needs p >= 23, got " + std::to_string(p));
  if (n1 < 2 || n2 < 2) throw ShapeError("need at least 2 samples per dataset");
  if (theta <= 0.0) theta = 0.2 * std::sqrt(static_cast<double>(n2));

  rng::Stream mx(seed, 0, rng::Purpose::manifold), my(seed, 1, rng::Purpose::manifold);
  Eigen::MatrixXd x0 = Eigen::MatrixXd::Zero(n1, p), y0 = Eigen::MatrixXd::Zero(n2, p);
  x0.leftCols(3) = sample_torus(n1, 2.0 * theta, 0.8 * theta, mx);
  y0.leftCols(3) = sample_torus(n2, 2.0 * theta, 0.8 * theta, my);
  rng::Stream extra(seed, 1, rng::Purpose::perturbation);
  for (Index i = 0; i < n2; ++i)
    for (Index j = 3; j < 23; ++j) y0(i, j) = extra.uniform(-8.0, 8.0);

  Eigen::MatrixXd x = x0, y = y0;
  rng::Stream nx(seed, 0, rng::Purpose::noise), ny(seed, 1, rng::Purpose::noise);
  add_noise(x, sigma1_sq, nx);
  add_noise(y, sigma2_sq, ny);
  return {DataMatrix(std::move(x), "x"), DataMatrix(std::move(y), "y"),
          DataMatrix(std::move(y0), "y_clean"), DataMatrix(std::move(x0), "x_clean"), theta};
}

DataPair sample_pure_noise_pair(Index n1, Index n2, Index p, double sigma1_sq, double sigma2_sq,
                                std::uint64_t seed) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n1, p), y = Eigen::MatrixXd::Zero(n2, p);
  rng::Stream nx(seed, 0, rng::Purpose::noise), ny(seed, 1, rng::Purpose::noise);
  add_noise(x, sigma1_sq, nx);
  add_noise(y, sigma2_sq, ny);
  return {DataMatrix(std::move(x), "x"), DataMatrix(std::move(y), "y")};
}

NegativeControl parse_negative_control(const std::string& name) {
  if (name == "klein_vs_line") return NegativeControl::klein_vs_line;
  if (name == "torus_vs_noise") return NegativeControl::torus_vs_noise;
  throw UnsupportedKind("unknown negative control '" + name + "'");
}

std::string to_string(NegativeControl kind) {
  switch (kind) {
    case NegativeControl::klein_vs_line: return "klein_vs_line";
    case NegativeControl::torus_vs_noise: return "torus_vs_noise";
  }
  throw UnsupportedKind("unknown negative control");
}

DataPair sample_negative_control(NegativeControl kind, Index n1, Index n2, std::uint64_t seed) {
  rng::Stream sx(seed, 0, rng::Purpose::manifold), sy(seed, 1, rng::Purpose::manifold);
  switch (kind) {
    case NegativeControl::klein_vs_line: {
      Eigen::MatrixXd x = sample_klein_bottle(n1, sx);
      Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n2, 4);
      for (Index i = 0; i < n2; ++i) y(i, 0) = sy.uniform(-1.0, 1.0);
      return {DataMatrix(std::move(x), "klein"), DataMatrix(std::move(y), "line")};
    }
    case NegativeControl::torus_vs_noise: {
      // torus at the manifold-study scale, against isotropic 3-d noise
      double theta = 0.2 * std::sqrt(static_cast<double>(n1));
      Eigen::MatrixXd x = sample_torus(n1, 2.0 * theta, 0.8 * theta, sx);
      Eigen::MatrixXd y(n2, 3);
      for (Index i = 0; i < n2; ++i)
        for (Index j = 0; j < 3; ++j) y(i, j) = sy.normal();
      return {DataMatrix(std::move(x), "torus"), DataMatrix(std::move(y), "noise")};
    }
  }
  throw UnsupportedKind("unknown negative control");
}

}  // namespace duo
