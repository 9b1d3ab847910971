#ifndef CLOVER_MONOMIALS_HPP
#define CLOVER_MONOMIALS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <clover/derivations.hpp>

namespace clover {

enum class Family { first, second, power_v, power_w, power_u };

std::string_view family_name(Family f);

// A (power) standard monomial.
//   first, length n >= 1:  tail(x,y) * h_n^{a,b}, head cell (a,b) != corner
//   second, length n >= 1: tail(x,y,z) * g_n^{a,b}, 0 <= a <= p^S-2, 0 <= b < p^R
//   power_*, length n >= 1: (pivot of generation n-1)^{p^a}
//   first, length 0: v_0 (a = 0) or w_0 (a = 1); second, length 0: u_0
// tail[i] = exponents of (x_i, y_i, z_i) for generations i <= n-2 (z is 0
// for first type); heads use the generation n-1 variables.
struct MonomialDescriptor {
    Family family = Family::first;
    std::size_t length = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::vector<std::array<std::uint64_t, 3>> tail;

    std::string str() const;
    friend auto operator<=>(const MonomialDescriptor &, const MonomialDescriptor &) = default;
};

// Throws "descriptor out of bounds" unless d is a valid descriptor.
void validate(const MonomialDescriptor &d, const ParameterTuple &tuple);

WeightVector monomial_weight(const MonomialDescriptor &d, const ParameterTuple &tuple);

// Closed form of the element (tail times head, or the power formula).
Derivation realize(const MonomialDescriptor &d, const Context &ctx);

// Independent construction by iterated brackets and p-th powers of pivots.
// Only descriptors whose tail exponents are all zero are built this way; returns
// nullopt otherwise.
std::optional<Derivation> realize_by_brackets(const MonomialDescriptor &d, const Context &ctx);

struct FamilyFilter {
    bool first = true;
    bool second = true;
    bool powers = true;
    static FamilyFilter all() { return {}; }
    static FamilyFilter only_powers() { return {false, false, true}; }
    bool accepts(Family f) const;
};

// All descriptors of weight <= max_weight, ordered by (weight, descriptor).
std::vector<MonomialDescriptor> enumerate(const ParameterTuple &tuple, FamilyFilter filter, const BigInt &max_weight);

// Cumulative counts of descriptors with weight <= m.
struct FamilyCounts {
    BigInt first{0};
    BigInt second{0};
    BigInt power_first{0};
    BigInt power_second{0};
    BigInt total() const { return first + second + power_first + power_second; }
};

// Counting without constructing elements; m may be astronomically large.
class GrowthCounter {
public:
    explicit GrowthCounter(ParameterTuple tuple);

    const ParameterTuple &tuple() const noexcept { return tuple_; }

    FamilyCounts count(const BigInt &m);
    // Standard monomials of the given type and length with weight <= m.
    BigInt count_first(std::size_t length, const BigInt &m);
    BigInt count_second(std::size_t length, const BigInt &m);
    // Power standard monomials of the given length (first: v, w; second: u).
    BigInt count_power_first(std::size_t length, const BigInt &m);
    BigInt count_power_second(std::size_t length, const BigInt &m);
    // Largest length that can contain a monomial of weight <= m.
    std::size_t max_length(const BigInt &m);

    // wt(v_i), cached.
    const BigInt &W(std::size_t i);

private:
    struct Gen {
        BigInt X, Y, W;
        BigInt tails_first;  // prod_{j<i} X_j Y_j
        BigInt tails_second; // prod_{j<i} X_j Y_j^2
        BigInt dmax_second;  // sum_{j<i} (X_j + 2Y_j - 3) W_j
    };
    const Gen &gen(std::size_t i);
    BigInt tails_first_le(std::size_t k, const BigInt &b);
    BigInt tails_second_le(std::size_t k, const BigInt &b);

    ParameterTuple tuple_;
    std::vector<Gen> gens_;
    std::map<std::pair<std::size_t, BigInt>, BigInt> memo_second_;
};

struct GrowthRow {
    BigInt m;
    FamilyCounts counts;
};

struct GrowthOptions {
    // Dense tables (every m from 1 to M) are produced when M <= row_cap.
    std::size_t row_cap = std::size_t(1) << 20;
    // Demand a dense table; fails with "table too large" beyond row_cap.
    bool force_dense = false;
};

struct GrowthTable {
    std::string tuple_spec;
    std::uint32_t p = 0;
    bool dense = true;
    std::vector<GrowthRow> rows;

    const GrowthRow *row_at(const BigInt &m) const;
    std::string to_csv() const;
    nlohmann::json to_json() const;
    // Reads the m and gamma_total columns (other count columns if present).
    static GrowthTable from_csv(const std::string &text);
};

GrowthTable growth_table(const ParameterTuple &tuple, const BigInt &max_weight, GrowthOptions options = {});

// Row weights used for tables too large to be dense: 1..64, floor(2^{k/4}),
// wt(v_n) - 1, wt(v_n), wt(v_n) + 1 and M itself.
std::vector<BigInt> sampled_weights(GrowthCounter &counter, const BigInt &max_weight);

// Decimal rendering of ln(gamma)/ln(m), "inf" for m = 1.
std::string log_ratio_string(const BigInt &gamma, const BigInt &m);

} // namespace clover

#endif
