#include "ppmwt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ppmwt/errors.hpp"

namespace ppmwt::bounds {
namespace {

constexpr double kLn2 = std::numbers::ln2;
/// Log-domain overflow/underflow clamp, in natural-log units. Alphabets up to
/// 2^60 make direct exponentiation meaningless, so every exponent is
/// assembled in log space and only materialized through this gate.
constexpr double kLogClamp = 745.0;

double log_domain_exp(double x) {
    if (x <= -kLogClamp) return 0.0;
    if (x >= kLogClamp) return std::numeric_limits<double>::infinity();
    return std::exp(x);
}

/// Natural-log binary entropy, 0 at both endpoints.
double binary_entropy_nats(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

double log_binomial_coeff(double n, double j) {
    return std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
}

/// P[Binomial(n, q) >= j0], exact up to floating point, summed in log space
/// from the dominant term outward. Terms are monotone on the side of the mode
/// being summed, so the running sum converges geometrically.
double binomial_upper_tail(std::uint64_t n, std::uint64_t j0, double q) {
    if (j0 == 0) return 1.0;
    if (j0 > n) return 0.0;
    if (q <= 0.0) return 0.0;
    if (q >= 1.0) return 1.0;

    const double nd = static_cast<double>(n);
    const double log_q = std::log(q);
    const double log_p = std::log1p(-q);
    const double mean = nd * q;

    if (static_cast<double>(j0) <= mean) {
        // complement: sum P[X <= j0 - 1] downward, away from the mode
        const double j_start = static_cast<double>(j0 - 1);
        const double log_first =
            log_binomial_coeff(nd, j_start) + j_start * log_q + (nd - j_start) * log_p;
        double rel = 1.0, acc = 1.0;
        for (double j = j_start; j >= 1.0; j -= 1.0) {
            rel *= (j * (1.0 - q)) / ((nd - j + 1.0) * q);
            acc += rel;
            if (rel < acc * 1e-18) break;
        }
        return 1.0 - log_domain_exp(log_first + std::log(acc));
    }

    const double j_start = static_cast<double>(j0);
    const double log_first =
        log_binomial_coeff(nd, j_start) + j_start * log_q + (nd - j_start) * log_p;
    double rel = 1.0, acc = 1.0;
    for (double j = j_start; j < nd; j += 1.0) {
        rel *= ((nd - j) * q) / ((j + 1.0) * (1.0 - q));
        acc += rel;
        if (rel < acc * 1e-18) break;
    }
    return std::min(1.0, log_domain_exp(log_first + std::log(acc)));
}

/// P[Poisson(mu) >= j0], same summation scheme.
double poisson_upper_tail(double mu, std::uint64_t j0) {
    if (j0 == 0) return 1.0;
    if (mu <= 0.0) return 0.0;

    if (static_cast<double>(j0) <= mu) {
        const double j_start = static_cast<double>(j0 - 1);
        const double log_first = -mu + j_start * std::log(mu) - std::lgamma(j_start + 1.0);
        double rel = 1.0, acc = 1.0;
        for (double j = j_start; j >= 1.0; j -= 1.0) {
            rel *= j / mu;
            acc += rel;
            if (rel < acc * 1e-18) break;
        }
        return 1.0 - log_domain_exp(log_first + std::log(acc));
    }

    const double j_start = static_cast<double>(j0);
    const double log_first = -mu + j_start * std::log(mu) - std::lgamma(j_start + 1.0);
    double rel = 1.0, acc = 1.0;
    for (double j = j_start;; j += 1.0) {
        rel *= mu / (j + 1.0);
        acc += rel;
        if (rel < acc * 1e-18) break;
    }
    return std::min(1.0, log_domain_exp(log_first + std::log(acc)));
}

}  // namespace

double photon_number_entropy(double mean) {
    if (mean <= 0.0) return 0.0;
    return (1.0 + mean) * std::log1p(mean) - mean * std::log(mean);
}

double secrecy_capacity(double eta, double photon_budget) {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::domain_error("transmissivity must lie in (0, 1)");
    if (!(photon_budget >= 0.0))
        throw std::domain_error("photon budget must be nonnegative");
    return photon_number_entropy(eta * photon_budget) -
           photon_number_entropy((1.0 - eta) * photon_budget);
}

double secrecy_capacity_approx(double eta, double photon_budget) {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::domain_error("transmissivity must lie in (0, 1)");
    if (!(photon_budget >= 0.0))
        throw std::domain_error("photon budget must be nonnegative");
    if (photon_budget == 0.0) return 0.0;
    return (2.0 * eta - 1.0) * photon_budget * std::log(1.0 / photon_budget);
}

double asymptotic_rate(double eta, double photon_budget) {
    return secrecy_capacity_approx(eta, photon_budget);
}

pipeline::SchemeParams choose_params(double eta, double photon_budget, double theta) {
    if (!(eta > 0.5 && eta < 1.0))
        throw infeasible_error("transmissivity must lie in (0.5, 1)");
    if (!(photon_budget > 0.0))
        throw infeasible_error("photon budget must be positive");
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::domain_error("theta must lie in (0, 1]");

    const double eta_e = eta * photon_budget;
    if (eta_e >= 1.0) throw infeasible_error("photon budget too large for the scheme");
    const double target = 1.0 / (eta_e * std::log(1.0 / eta_e));
    if (!(target >= 8.0))
        throw infeasible_error("photon budget too large: frame size target below 8");

    unsigned w = 3;
    while (w < 62 && std::ldexp(1.0, static_cast<int>(w) + 1) <= target) ++w;

    const double b = std::ldexp(1.0, static_cast<int>(w));
    const double n = b - 1.0;
    const double alpha_sq = b * photon_budget;
    const double survive = -std::expm1(-eta * alpha_sq);  // 1 - q
    const double kf = std::floor((1.0 - theta) * survive * n);
    if (!(kf >= 1.0)) throw infeasible_error("code dimension floors to zero");

    return pipeline::SchemeParams::make(eta, photon_budget, w,
                                        static_cast<std::uint64_t>(kf), 0);
}

double pr_error_bound(std::uint64_t n, std::uint64_t k, double q) {
    if (k < 1 || k > n) throw std::invalid_argument("k must be in [1, n]");
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("q must be a probability");
    return binomial_upper_tail(n, n - k + 1, q);
}

double hoeffding_error_bound(std::uint64_t n, double theta) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (!(theta >= 0.0 && theta < 1.0))
        throw std::domain_error("theta must lie in [0, 1)");
    return log_domain_exp(-2.0 * static_cast<double>(n) * theta * theta);
}

double eve_photon_tail(double s, double mu) {
    if (!(mu >= 0.0)) throw std::invalid_argument("mean photon count must be nonnegative");
    if (!(s > mu)) throw std::invalid_argument("cutoff must exceed the mean (bound vacuous)");
    if (mu == 0.0) return 0.0;
    const auto j0 = static_cast<std::uint64_t>(std::floor(s + 1.0));
    return 2.0 * poisson_upper_tail(mu, j0);
}

double bennett_eps_prime(std::uint64_t n, double eta, double alpha_sq, double delta) {
    if (!(delta >= 0.0)) throw std::invalid_argument("delta must be nonnegative");
    const double mu = (1.0 - eta) * alpha_sq * static_cast<double>(n);
    return log_domain_exp(-0.5 * mu * ((1.0 + delta) * std::log1p(delta) - delta));
}

HmaxBound hmax_bound(std::uint64_t n, std::uint64_t b, double s) {
    if (n < 1 || b < 1) throw std::invalid_argument("n and b must be positive");
    if (!(s >= 1.0)) throw std::invalid_argument("photon cutoff must be at least 1");

    const double dim = static_cast<double>(n) * static_cast<double>(b);
    HmaxBound out;
    const double x = s / (dim - 1.0 + s);
    out.analytic = (dim - 1.0 + s) * binary_entropy_nats(x) + std::log(s);

    const double cutoff = std::floor(s);
    if (cutoff <= 100000.0) {
        // sum_{i=0}^{floor(s)} C(nb-1+i, i), accumulated in log space; terms
        // grow with i, ratio (nb-1+i)/i
        double log_term = 0.0;  // i = 0 vacuum term
        double lse = 0.0;
        for (double i = 1.0; i <= cutoff; i += 1.0) {
            log_term += std::log((dim - 1.0 + i) / i);
            const double hi = std::max(lse, log_term);
            lse = hi + std::log1p(std::exp(std::min(lse, log_term) - hi));
        }
        out.exact = lse;
    }
    return out;
}

double eve_mean_photons(const pipeline::SchemeParams& params) {
    return (1.0 - params.eta) * params.pulse_energy * static_cast<double>(params.n);
}

SecurityBudget derive_budget(const pipeline::SchemeParams& params, double theta,
                             double delta, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    if (!(theta >= 0.0 && theta < 1.0))
        throw std::invalid_argument("theta must lie in [0, 1)");

    SecurityBudget budget;
    budget.eps = eps;
    budget.delta = delta;
    budget.theta = theta;
    const double mu = eve_mean_photons(params);
    budget.photon_cutoff = (1.0 + delta) * mu;
    if (mu > 0.0) {
        const double gamma_route = std::sqrt(eve_photon_tail(budget.photon_cutoff, mu));
        const double bennett_route =
            bennett_eps_prime(params.n, params.eta, params.pulse_energy, delta);
        budget.eps_prime = std::min(gamma_route, bennett_route);
    }
    return budget;
}

BoundReport delta_bound(const pipeline::SchemeParams& params, const SecurityBudget& budget) {
    if (!(budget.eps > 0.0)) throw std::domain_error("eps must be positive");
    const double mu = eve_mean_photons(params);
    const double s = budget.photon_cutoff;
    if (!(s > mu)) throw std::domain_error("photon cutoff must exceed the adversary mean");
    if (!(s >= 1.0)) throw std::domain_error("photon cutoff must be at least 1");
    if (!(budget.eps_prime >= 0.0)) throw std::domain_error("eps_prime must be nonnegative");
    if (!(budget.eps_prime < budget.eps / 2.0))
        throw infeasible_error("chain rule requires eps_prime < eps / 2");

    BoundReport report;
    const double log_b = static_cast<double>(params.symbol_bits) * kLn2;
    report.hmin_nats = static_cast<double>(params.k) * log_b;
    report.hmax_nats = hmax_bound(params.n, params.b, s).analytic;

    const double margin = budget.eps - 2.0 * budget.eps_prime;
    const double log_inner = static_cast<double>(params.lambda) * kLn2 -
                             report.hmin_nats + report.hmax_nats +
                             2.0 * (kLn2 - 2.0 * std::log(margin));
    report.delta_unclamped = 0.5 * log_domain_exp(0.5 * log_inner) + budget.eps;
    report.delta_vacuous = !(report.delta_unclamped <= 1.0);
    report.delta_bound = std::min(report.delta_unclamped, 1.0);

    const double q = std::exp(-params.eta * params.pulse_energy);
    report.pr_error = pr_error_bound(params.n, params.k, q);
    report.rate_nats_per_use =
        static_cast<double>(params.lambda) * kLn2 / params.channel_uses();
    report.feasible = !report.delta_vacuous;
    return report;
}

namespace {

std::vector<double> linspace_open_low(double lo, double hi, unsigned count) {
    // count points in (lo, hi]: lo + (hi-lo) * i / count
    std::vector<double> points(count);
    for (unsigned i = 1; i <= count; ++i)
        points[i - 1] = lo + (hi - lo) * static_cast<double>(i) / count;
    return points;
}

std::vector<double> linspace_closed(double lo, double hi, unsigned count) {
    std::vector<double> points(count);
    if (count == 1) {
        points[0] = lo;
        return points;
    }
    for (unsigned i = 0; i < count; ++i)
        points[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return points;
}

struct Candidate {
    std::uint64_t lambda = 0;
    double theta = 0.0, delta = 0.0, eps = 0.0;
    bool valid = false;
};

/// Lexicographic preference: larger lambda, then smaller eps, then smaller
/// theta, then smaller delta.
bool better(const Candidate& a, const Candidate& b) {
    if (!b.valid) return a.valid;
    if (!a.valid) return false;
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    if (a.eps != b.eps) return a.eps < b.eps;
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.delta < b.delta;
}

constexpr unsigned kRounds = 3;
constexpr unsigned kCoarsePoints = 10;
constexpr unsigned kRefinePoints = 21;  // best +- previous step, spacing / 10

}  // namespace

OptimizeResult optimize(double eta, double photon_budget, double pr_error_target,
                        double delta_target) {
    if (!(eta > 0.5 && eta < 1.0))
        throw infeasible_error("transmissivity must lie in (0.5, 1)");
    if (!(photon_budget > 0.0))
        throw infeasible_error("photon budget must be positive");
    if (!(pr_error_target >= 0.0 && pr_error_target <= 1.0))
        throw std::domain_error("error target must be a probability");
    if (!(delta_target >= 0.0 && delta_target < 1.0))
        throw std::domain_error("secrecy target must lie in [0, 1)");

    OptimizeResult result;

    constexpr double kThetaHi = 0.5;
    constexpr double kDeltaHi = 5.0;
    double theta_step = kThetaHi / kCoarsePoints;
    double delta_step = kDeltaHi / kCoarsePoints;
    double eps_step = delta_target / (kCoarsePoints + 1);

    std::vector<double> thetas = linspace_open_low(0.0, kThetaHi, kCoarsePoints);
    std::vector<double> deltas = linspace_open_low(0.0, kDeltaHi, kCoarsePoints);
    std::vector<double> epses;
    for (unsigned i = 1; i <= kCoarsePoints; ++i)
        epses.push_back(delta_target * static_cast<double>(i) / (kCoarsePoints + 1));

    Candidate best;
    for (unsigned round = 0; round < kRounds; ++round) {
        if (round > 0) {
            auto refine = [](double center, double step, double glo, double ghi,
                             bool open_hi) {
                double lo = std::max(center - step, glo + step * 1e-9);
                double hi = std::min(center + step, open_hi ? ghi * (1.0 - 1e-9) : ghi);
                return linspace_closed(lo, hi, kRefinePoints);
            };
            thetas = refine(best.theta, theta_step, 0.0, kThetaHi, false);
            deltas = refine(best.delta, delta_step, 0.0, kDeltaHi, false);
            epses = refine(best.eps, eps_step, 0.0, delta_target, true);
            theta_step = (thetas.back() - thetas.front()) / (kRefinePoints - 1);
            delta_step = (deltas.back() - deltas.front()) / (kRefinePoints - 1);
            eps_step = (epses.back() - epses.front()) / (kRefinePoints - 1);
        }

        for (double theta : thetas) {
            pipeline::SchemeParams params{};
            try {
                params = choose_params(eta, photon_budget, theta);
            } catch (const infeasible_error&) {
                continue;
            }
            const double q = std::exp(-params.eta * params.pulse_energy);
            const double pr = pr_error_bound(params.n, params.k, q);
            if (!(pr <= pr_error_target)) continue;

            const double mu = eve_mean_photons(params);
            const double hmin = static_cast<double>(params.k) *
                                static_cast<double>(params.symbol_bits) * kLn2;
            const std::uint64_t lambda_cap = params.k * params.symbol_bits;

            for (double delta : deltas) {
                const double s = (1.0 + delta) * mu;
                if (!(s >= 1.0) || !(s > mu)) continue;
                const double hmax = hmax_bound(params.n, params.b, s).analytic;
                const double eps_prime =
                    std::min(std::sqrt(eve_photon_tail(s, mu)),
                             bennett_eps_prime(params.n, eta, params.pulse_energy, delta));

                for (double eps : epses) {
                    if (!(eps > 0.0) || !(eps < delta_target)) continue;
                    if (!(eps_prime < eps / 2.0)) continue;
                    const double margin = eps - 2.0 * eps_prime;
                    const double log_x =
                        -hmin + hmax + 2.0 * (kLn2 - 2.0 * std::log(margin));
                    const double lambda_f = std::floor(
                        (2.0 * std::log(2.0 * (delta_target - eps)) - log_x) / kLn2);
                    if (!(lambda_f >= 1.0)) continue;
                    const std::uint64_t lambda = std::min(
                        lambda_cap, static_cast<std::uint64_t>(lambda_f));
                    Candidate cand{lambda, theta, delta, eps, true};
                    if (better(cand, best)) best = cand;
                }
            }
        }
        if (!best.valid) break;  // nothing to refine around
    }

    result.theta_step = theta_step;
    result.delta_step = delta_step;
    result.eps_step = eps_step;
    if (!best.valid) return result;

    pipeline::SchemeParams params = choose_params(eta, photon_budget, best.theta);
    params.lambda = best.lambda;
    SecurityBudget budget = derive_budget(params, best.theta, best.delta, best.eps);
    BoundReport report = delta_bound(params, budget);
    // floor arithmetic can sit right on the target; back off whole bits until
    // the recomputed bound clears it
    while (params.lambda > 0 && !(report.delta_bound <= delta_target)) {
        --params.lambda;
        report = delta_bound(params, budget);
    }
    if (params.lambda == 0 || !(report.pr_error <= pr_error_target)) return result;

    result.params = params;
    result.budget = budget;
    result.report = report;
    result.feasible = true;
    return result;
}

SecurityBudget tune_budget(const pipeline::SchemeParams& params, double eps_ceiling) {
    if (!(eps_ceiling > 0.0 && eps_ceiling <= 1.0))
        throw std::domain_error("eps ceiling must lie in (0, 1]");

    const double mu = eve_mean_photons(params);
    const double hmin = static_cast<double>(params.k) *
                        static_cast<double>(params.symbol_bits) * kLn2;

    constexpr double kDeltaHi = 5.0;
    double delta_step = kDeltaHi / kCoarsePoints;
    double eps_step = eps_ceiling / (kCoarsePoints + 1);
    std::vector<double> deltas = linspace_open_low(0.0, kDeltaHi, kCoarsePoints);
    std::vector<double> epses;
    for (unsigned i = 1; i <= kCoarsePoints; ++i)
        epses.push_back(eps_ceiling * static_cast<double>(i) / (kCoarsePoints + 1));

    bool found = false;
    double best_score = std::numeric_limits<double>::infinity();
    double best_delta = 0.0, best_eps = 0.0;

    for (unsigned round = 0; round < kRounds; ++round) {
        if (round > 0) {
            if (!found) break;
            auto refine = [](double center, double step, double glo, double ghi,
                             bool open_hi) {
                double lo = std::max(center - step, glo + step * 1e-9);
                double hi = std::min(center + step, open_hi ? ghi * (1.0 - 1e-9) : ghi);
                return linspace_closed(lo, hi, kRefinePoints);
            };
            deltas = refine(best_delta, delta_step, 0.0, kDeltaHi, false);
            epses = refine(best_eps, eps_step, 0.0, eps_ceiling, true);
            delta_step = (deltas.back() - deltas.front()) / (kRefinePoints - 1);
            eps_step = (epses.back() - epses.front()) / (kRefinePoints - 1);
        }

        for (double delta : deltas) {
            const double s = (1.0 + delta) * mu;
            if (!(s >= 1.0) || !(s > mu)) continue;
            const double hmax = hmax_bound(params.n, params.b, s).analytic;
            const double eps_prime =
                std::min(std::sqrt(eve_photon_tail(s, mu)),
                         bennett_eps_prime(params.n, params.eta, params.pulse_energy, delta));
            for (double eps : epses) {
                if (!(eps_prime < eps / 2.0)) continue;
                const double margin = eps - 2.0 * eps_prime;
                const double log_inner = static_cast<double>(params.lambda) * kLn2 -
                                         hmin + hmax +
                                         2.0 * (kLn2 - 2.0 * std::log(margin));
                const double score = 0.5 * log_domain_exp(0.5 * log_inner) + eps;
                if (!found || score < best_score ||
                    (score == best_score && eps < best_eps) ||
                    (score == best_score && eps == best_eps && delta < best_delta)) {
                    found = true;
                    best_score = score;
                    best_delta = delta;
                    best_eps = eps;
                }
            }
        }
    }

    if (!found) throw infeasible_error("no valid security budget on the search grid");
    return derive_budget(params, 0.0, best_delta, best_eps);
}

}  // namespace ppmwt::bounds
