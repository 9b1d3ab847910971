#ifndef CLOVER_PARAMS_HPP
#define CLOVER_PARAMS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include <clover/common.hpp>

namespace clover {

// Exact non-negative rational, used for the kappa parameter of the
// quasi-linear tuple families.
struct Rational {
    BigInt num{0};
    BigInt den{1};

    static Rational parse(std::string_view text);
    std::string str() const;
    friend bool operator==(const Rational &, const Rational &) = default;
};

enum class TupleKind { constant, periodic, kappa, qkappa, explicit_list };

std::string_view kind_name(TupleKind kind);

// One generation of the tuple: the heights S_i (for x_i) and R_i (for y_i, z_i).
struct Generation {
    std::uint64_t S = 1;
    std::uint64_t R = 1;
    friend bool operator==(const Generation &, const Generation &) = default;
};

struct TupleRule {
    TupleKind kind = TupleKind::constant;
    // constant: one entry; periodic: the pattern; explicit: the whole list.
    std::vector<Generation> values;
    Rational kappa;
    unsigned q = 0;
};

// The prime p together with the generation rule for (S_i, R_i). Values are
// materialized lazily and cached; copies share the cache, which is guarded by
// a mutex, so a tuple may be read from several threads.
class ParameterTuple {
public:
    ParameterTuple(std::uint32_t p, TupleRule rule);

    static ParameterTuple constant(std::uint32_t p, std::uint64_t S, std::uint64_t R);
    static ParameterTuple periodic(std::uint32_t p, std::vector<Generation> pattern);
    static ParameterTuple explicit_values(std::uint32_t p, std::vector<Generation> values);
    static ParameterTuple kappa(std::uint32_t p, Rational kappa);
    static ParameterTuple qkappa(std::uint32_t p, unsigned q, Rational kappa);

    // "constant:S,R" | "periodic:S0,R0;S1,R1;..." | "kappa:0.5" |
    // "qkappa:q,kappa" | "explicit:S0,R0;S1,R1;..."
    static ParameterTuple parse(std::uint32_t p, std::string_view spec);
    static ParameterTuple from_json(const nlohmann::json &j);

    nlohmann::json to_json() const;
    std::string spec() const;

    std::uint32_t p() const noexcept { return p_; }
    const TupleRule &rule() const noexcept { return rule_; }
    TupleKind kind() const noexcept { return rule_.kind; }

    // (S_n, R_n); deterministic, extends the cache as needed.
    Generation at(std::size_t n) const;
    std::size_t materialized_length() const;

    // Period of constant/periodic tuples, nullopt otherwise.
    std::optional<std::size_t> period() const;
    bool is_periodic() const { return period().has_value(); }
    // Number of generations available (explicit tuples are finite).
    std::optional<std::size_t> finite_length() const;

private:
    struct Cache;

    Generation generate(std::size_t n, const std::vector<Generation> &prefix, BigInt &qkappa_sum) const;

    std::uint32_t p_;
    TupleRule rule_;
    std::shared_ptr<Cache> cache_;
};

enum class PivotKind { v, w, u };

// Multidegree (wt_1, wt_2, wt_3) with respect to (v_0, w_0, u_0) and the total
// degree weight wt = wt_1 + wt_2 + wt_3.
class WeightVector {
public:
    WeightVector() = default;
    WeightVector(BigInt a, BigInt b, BigInt c);

    const std::array<BigInt, 3> &gr() const noexcept { return gr_; }
    const BigInt &operator[](std::size_t i) const { return gr_[i]; }
    const BigInt &wt() const noexcept { return wt_; }

    WeightVector operator+(const WeightVector &o) const;
    WeightVector operator-(const WeightVector &o) const;
    WeightVector scaled(const BigInt &k) const;
    bool non_negative() const;

    friend bool operator==(const WeightVector &a, const WeightVector &b) { return a.gr_ == b.gr_; }
    friend bool operator<(const WeightVector &a, const WeightVector &b) { return a.gr_ < b.gr_; }

    std::string str() const;

private:
    std::array<BigInt, 3> gr_{};
    BigInt wt_{0};
};

// p^e with a guard against absurd exponents.
BigInt checked_pow(std::uint32_t p, std::uint64_t e);

// wt(v_n) = wt(w_n) = wt(u_n) = prod_{i<n} (p^{S_i} + p^{R_i} - 1).
BigInt pivot_weight(const ParameterTuple &tuple, std::size_t n);

// Gr of v_n, w_n or u_n by iterating the 3x3 weight recurrence from
// Gr(v_0) = (1,0,0), Gr(w_0) = (0,1,0), Gr(u_0) = (0,0,1).
WeightVector pivot_multidegree(const ParameterTuple &tuple, std::size_t n, PivotKind kind);

// W(N) = (p^{S_{N-2}} - 1) * wt(v_{N-2}): every component of weight <= W(N) is
// faithfully represented by the depth-N truncation.
BigInt trusted_weight_bound(const ParameterTuple &tuple, std::size_t depth);

} // namespace clover

#endif
