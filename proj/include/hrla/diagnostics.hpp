#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hrla/kernel.hpp"

namespace hrla {

/// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct Sym2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double det() const { return xx * yy - xy * xy; }
    double trace() const { return xx + yy; }
    bool positive_definite() const { return xx > 0.0 && det() > 0.0; }
};

/// General 2x2 matrix, row major.
struct Mat2 {
    double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
};

/// Gaussian law on R^{2d} that is a d-fold product of one (x_i, y_i) block.
struct GaussianLaw {
    std::array<double, 2> mean{0.0, 0.0};
    Sym2 cov;
    std::size_t copies = 1;
};

/// Gibbs law of H(x, y) = a U(x) + b|y|^2/2 for U = curvature |x|^2 / 2.
GaussianLaw gibbs_law(double a, double b, double curvature, std::size_t copies = 1);

/// One-step drift matrix of the transition for grad U(x) = curvature x.
Mat2 drift_matrix(const TransitionKernel& kernel, double curvature);
Sym2 noise_covariance(const TransitionKernel& kernel);
double spectral_radius(const Mat2& m);

/// M S M^T + Q.
Sym2 propagate(const Mat2& m, const Sym2& s, const Sym2& q);

/// Exact laws of the chain on a quadratic potential: entry k is the law
/// after k steps (entry 0 is `init`). Throws NumericalError when the drift
/// matrix has spectral radius >= 1.
std::vector<GaussianLaw> law_recursion(const HrlaParams& params, double curvature,
                                       std::size_t iterations, const GaussianLaw& init);
/// Same recursion for an explicit kernel (e.g. with the noise removed).
std::vector<GaussianLaw> law_recursion(const TransitionKernel& kernel, double curvature,
                                       std::size_t iterations, const GaussianLaw& init);

/// Fixed point of S = M S M^T + Q by doubling iteration, stopped when the
/// largest entry change is below `tolerance`.
Sym2 stationary_covariance(const HrlaParams& params, double curvature, double tolerance = 1e-14);

/// KL(p || q), summed over the product copies. Throws on a singular covariance.
double gaussian_kl(const GaussianLaw& p, const GaussianLaw& q);

/// 2-Wasserstein distance (Bures form), summed in squares over the copies.
double gaussian_w2(const GaussianLaw& p, const GaussianLaw& q);

struct KlProfile {
    std::vector<double> kl;   ///< kl[k] = KL(law_k || Gibbs), k = 0..K
    double floor = 0.0;       ///< KL of the stationary law against Gibbs
    double decay_rate = 0.0;  ///< per unit time, from the log-linear fit
    double r_squared = 0.0;   ///< of that fit
    std::size_t fit_points = 0;
};

/// KL profile of the exact laws against the Gibbs law N(0, diag(1/(a curvature), 1/b)).
/// The decay rate is an ordinary least-squares fit of log KL on k over the
/// leading iterations where KL >= 10 x floor.
KlProfile kl_decay_profile(const HrlaParams& params, double curvature, std::size_t iterations,
                           const GaussianLaw& init);

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0; ///< population standard deviation
};

SummaryStats summarize(std::vector<double> values);

/// P(best value - U* >= eps) estimated over runs at each recorded iteration.
struct EmpiricalProbabilityCurve {
    std::vector<double> epsilons;
    std::vector<std::size_t> iterations;
    std::vector<std::vector<double>> p_hat; ///< [iteration][epsilon]
    std::size_t runs = 0;
    SummaryStats terminal; ///< statistics of the last recorded values
};

/// traces[r][j] is run r's value at iterations[j]. All traces share a length.
EmpiricalProbabilityCurve empirical_probability(const std::vector<std::vector<double>>& traces,
                                                const std::vector<std::size_t>& iterations,
                                                double minimum, const std::vector<double>& epsilons);

} // namespace hrla
