#ifndef CLOVER_ANALYTICS_HPP
#define CLOVER_ANALYTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include <clover/interval.hpp>
#include <clover/monomials.hpp>
#include <clover/report.hpp>

namespace clover {

// mu = prod (p^S_i + p^R_i - 1), sigma = sum (S_i + 2 R_i) over one period,
// lambda = sigma ln p / ln mu.
struct GKReport {
    std::string tuple_spec;
    std::uint32_t p = 0;
    BigInt mu;
    BigInt sigma;
    Interval lambda;

    nlohmann::json to_json(int digits = 12) const;
};

GKReport gk_periodic(const ParameterTuple &tuple, mpfr_prec_t prec = Interval::default_precision);
Interval gk_constant(std::uint32_t p, std::uint64_t S, std::uint64_t R, mpfr_prec_t prec = Interval::default_precision);

struct DensityPoint {
    std::uint64_t S = 0, R = 0;
    Interval lambda;
};

struct DensityScan {
    std::uint32_t p = 0;
    std::vector<DensityPoint> points; // sorted by lambda
    // 1 <= lambda <= 3 for every point, decided by exact integer comparison.
    bool all_in_unit_range = true;
    double lo = 1.1, hi = 2.9;
    // Certified upper bound on the largest gap between consecutive values in
    // [lo, hi], the interval ends counting as neighbours.
    Interval max_gap;
    std::size_t points_in_window = 0;

    nlohmann::json to_json() const;
};

DensityScan gk_density_scan(std::uint32_t p, std::uint64_t S_max, std::uint64_t R_max, double lo = 1.1,
                            double hi = 2.9);

// Per row: p^{-3 sigma} m^lambda <= gamma(m) <= (p^{2 sigma} + p^sigma) m^lambda + sigma (log_mu m + 1).
VerificationReport check_growth_sandwich(const ParameterTuple &tuple, const GrowthTable &table);

// Per row m > 1 with n = n(m), m_0 = wt(v_{n-1}), m_1 = floor(m / m_0):
//   second-type + power second-type count <= (p^2 + 2p + 2) m p^{2n} + n
//   second-type count of length n >= (m_1 - p + 1) m_0 p^{2(n-1)} / theta
// theta is replaced by its partial product up to n - 2, a lower bound, so the
// second line is checked in exact rationals. Requires R_i = 1.
VerificationReport check_quasilinear_bounds(const ParameterTuple &tuple, const GrowthTable &table);

// Second-type counts split by length around n(m): length n+1 below m^3,
// length n at most 3 m^3, lengths <= n-1 at most 2 m^3.
VerificationReport check_cubic_bounds(const ParameterTuple &tuple, const BigInt &max_weight);

// Least index n with m <= wt(v_n).
std::size_t weight_level(GrowthCounter &counter, const BigInt &m);

struct AsymptoticFit {
    std::string level; // "gk" or q
    double beta = 0;
    double coefficient = 0; // C of the level-0 model, unused otherwise
    double offset = 0;      // additive constant of the fitted log model
    BigInt window_lo, window_hi;
    std::size_t rows = 0;
    double rms_residual = 0;
    double max_residual = 0;

    nlohmann::json to_json() const;
};

// level "gk": ln g = a + beta ln m.
// level 0:    ln(g/m) = a + C (ln m)^beta, beta by 1-D search.
// level q>=1: ln(g/m) = a + beta ln(ln^(q) m).
// The window is the top decade of rows (at least 8 rows); the table must
// have 8 growing rows over 2 decades, else "window too small".
AsymptoticFit estimate_exponent(const GrowthTable &table, const std::string &level);

} // namespace clover

#endif
