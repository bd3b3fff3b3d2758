#pragma once

#include <cstdint>
#include <optional>

#include "ppmwt/pipeline.hpp"

namespace ppmwt::bounds {

/// Smoothing and slack parameters of the finite-length security analysis.
/// eps smooths the min-entropy, eps_prime the max-entropy (chain rule
/// requires eps_prime < eps / 2), theta backs the code dimension off the
/// expected number of surviving frames, delta places the photon cutoff at
/// s = (1 + delta) * (1 - eta) * alpha^2 * n.
struct SecurityBudget {
    double eps = 0.0;
    double eps_prime = 0.0;      // derived: min of the two tail routes
    double delta = 0.0;
    double theta = 0.0;          // informational here; it acts through k
    double photon_cutoff = 0.0;  // s, derived from delta
};

/// Everything the calculator reports for one parameter set.
struct BoundReport {
    double pr_error = 0.0;          // decoding-error bound, exact binomial tail
    double delta_bound = 0.0;       // secrecy distance bound, clamped to [0, 1]
    double delta_unclamped = 0.0;   // pre-clamp value (may exceed 1 or be inf)
    bool delta_vacuous = false;     // pre-clamp value exceeded 1
    double rate_nats_per_use = 0.0; // lambda * ln 2 / (n * b)
    double hmin_nats = 0.0;         // k * ln b
    double hmax_nats = 0.0;         // analytic max-entropy bound
    bool feasible = false;
};

/// Mean-photon-number entropy g(N) = (1 + N) ln(1 + N) - N ln N, in nats,
/// with g(0) = 0 by continuity.
double photon_number_entropy(double mean);

/// Secrecy capacity of the lossy optical channel under a mean photon-number
/// constraint E per use: g(eta * E) - g((1 - eta) * E) nats per channel use.
/// Defined on eta in (0, 1) so the eta = 0.5 boundary is testable.
double secrecy_capacity(double eta, double photon_budget);

/// Low-energy approximation (2 eta - 1) * E * ln(1 / E).
double secrecy_capacity_approx(double eta, double photon_budget);

/// Rate attained by the scheme asymptotically; coincides with
/// secrecy_capacity_approx by construction.
double asymptotic_rate(double eta, double photon_budget);

/// Parameter selection for a given energy budget: b is the largest power of
/// two not exceeding 1 / (eta E ln(1/(eta E))) (a power of two rather than a
/// general prime power, so symbols serialize cleanly into bits; the rate cost
/// vanishes asymptotically), all pulse energy goes into the single pulse
/// (alpha^2 = b E), and k = floor((1 - theta)(1 - e^(-eta alpha^2)) n).
/// lambda is left 0 for the security analysis to fill. Throws
/// infeasible_error when the target b falls below 8 or k below 1.
pipeline::SchemeParams choose_params(double eta, double photon_budget, double theta);

/// Decoding-error bound: probability that a Binomial(n, q) erasure count
/// reaches n - k + 1. Equals the regularized incomplete beta I_q(n-k+1, k)
/// exactly (integer parameters), evaluated as a log-space binomial tail
/// rather than through continued fractions.
double pr_error_bound(std::uint64_t n, std::uint64_t k, double q);

/// exp(-2 n theta^2), the stated large-deviation form for the error
/// probability at k = floor((1-theta)(1-q)n). Note it omits the (1-q)^2
/// deviation scaling, so unlike pr_error_bound it is not a sound upper bound
/// at every parameter point; the acceptance suite documents where the
/// dominance fails.
double hoeffding_error_bound(std::uint64_t n, double theta);

/// Photon-count tail bound at cutoff s for an adversary mean of mu photons:
/// 2 * P[Poisson(mu) >= floor(s + 1)], the incomplete-gamma form with its
/// factor 2 kept verbatim (the plain tail would suffice; the slack is
/// deliberate). Requires s > mu.
double eve_photon_tail(double s, double mu);

/// Large-deviation alternative for the same tail with s = (1 + delta) mu:
/// exp(-mu ((1+delta) ln(1+delta) - delta) / 2), mu = (1 - eta) alpha^2 n.
double bennett_eps_prime(std::uint64_t n, double eta, double alpha_sq, double delta);

struct HmaxBound {
    double analytic = 0.0;          // (nb - 1 + s) H(s / (nb - 1 + s)) + ln s
    std::optional<double> exact;    // ln sum_{i=0}^{floor(s)} C(nb - 1 + i, i)
};

/// Max-entropy bound (nats) for at most s photons in n*b positions. The
/// exact log-space sum (including the i = 0 vacuum term, which the analytic
/// form still dominates) is computed when floor(s) <= 100000.
HmaxBound hmax_bound(std::uint64_t n, std::uint64_t b, double s);

/// (1 - eta) * alpha^2 * n: adversary-side mean photon count.
double eve_mean_photons(const pipeline::SchemeParams& params);

/// Fill a budget from its free parameters: s = (1 + delta) mu and
/// eps_prime = min(sqrt(eve_photon_tail), bennett_eps_prime) - both routes
/// are valid upper bounds, so the smaller applies.
SecurityBudget derive_budget(const pipeline::SchemeParams& params, double theta,
                             double delta, double eps);

/// Finite-length secrecy distance bound
///   Delta <= 0.5 sqrt(exp(lambda ln 2 - k ln b + Hmax(n, b, s)
///                          + 2 ln(2 / (eps - 2 eps')^2))) + eps
/// with Hmin(L, adversary) = k ln b (the source word is uniform and the
/// adversary's conditional state is pure). All exponents are assembled in log
/// space; the reported value is clamped at 1 and flagged vacuous. Throws
/// infeasible_error when eps_prime >= eps / 2.
BoundReport delta_bound(const pipeline::SchemeParams& params, const SecurityBudget& budget);

struct OptimizeResult {
    std::optional<pipeline::SchemeParams> params;  // engaged when feasible
    SecurityBudget budget;
    BoundReport report;
    bool feasible = false;
    /// Final grid resolution per axis after refinement.
    double theta_step = 0.0;
    double delta_step = 0.0;
    double eps_step = 0.0;
};

/// Deterministic coarse-to-fine grid search (3 rounds, x10 refinement per
/// round) over theta in (0, 0.5], delta in (0, 5], eps in (0, delta_target),
/// maximizing the whole-bit message length lambda subject to
/// pr_error_bound <= pr_error_target and delta_bound <= delta_target.
/// Ties break toward smaller eps, then smaller theta, then smaller delta.
/// Returns feasible = false with rate 0 when no grid point qualifies.
OptimizeResult optimize(double eta, double photon_budget, double pr_error_target,
                        double delta_target);

/// Budget minimizing the (unclamped) secrecy bound for a fixed parameter set,
/// searched on the same grid schedule as optimize but with the eps axis
/// spanning (0, eps_ceiling). The default ceiling of 1 matters for very small
/// instances: their adversary photon mean is below one, every admissible
/// cutoff has a heavy tail, and eps values under a tight target cannot clear
/// the chain-rule requirement eps' < eps / 2.
SecurityBudget tune_budget(const pipeline::SchemeParams& params,
                           double eps_ceiling = 1.0);

}  // namespace ppmwt::bounds
