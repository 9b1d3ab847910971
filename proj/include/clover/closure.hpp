#ifndef CLOVER_CLOSURE_HPP
#define CLOVER_CLOSURE_HPP

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <clover/derivations.hpp>
#include <clover/monomials.hpp>
#include <clover/report.hpp>

namespace clover {

// Flattened coordinates of a derivation: (d-key, monomial) -> coefficient.
using TermKey = std::pair<DerivKey, DpMonomial>;
using SparseVec = std::map<TermKey, std::uint32_t>;

SparseVec flatten(const Derivation &D);
Derivation unflatten(const SparseVec &v, const Context &ctx);

// Reduced row echelon form over F_p. The pivot of a row is its smallest key,
// normalized to 1; no other row has a nonzero entry at a pivot.
class Echelon {
public:
    explicit Echelon(std::uint32_t p) : field_(p) {}

    std::size_t rank() const noexcept { return rows_.size(); }
    SparseVec reduce(SparseVec v) const;
    bool contains(const SparseVec &v) const { return reduce(v).empty(); }
    // Returns false if v was already in the span.
    bool insert(const SparseVec &v);
    const std::map<TermKey, SparseVec> &rows() const noexcept { return rows_; }

private:
    PrimeField field_;
    std::map<TermKey, SparseVec> rows_;
};

// Splits D into multidegree-homogeneous parts (term weight of f*d^{p^j}/dt is
// p^j Gr(t) - Gr(f)). Terms of negative weight are kept under their own key.
std::map<WeightVector, Derivation> homogeneous_parts(const Derivation &D);

struct BasisVector {
    Derivation element;
    std::string provenance;
};

struct GradedComponent {
    WeightVector degree;
    std::vector<BasisVector> vectors;
    Echelon echelon;
};

class GradedBasis {
public:
    GradedBasis(Context ctx, BigInt cap) : ctx_(std::move(ctx)), cap_(std::move(cap)) {}

    const Context &context() const noexcept { return ctx_; }
    const BigInt &cap() const noexcept { return cap_; }
    const std::map<WeightVector, GradedComponent> &components() const noexcept { return components_; }

    const GradedComponent *component(const WeightVector &gr) const;
    // Dimension summed over components of total weight w.
    std::size_t dim_at(const BigInt &w) const;
    std::map<BigInt, std::size_t> dims_by_weight() const;
    std::size_t total_dim() const;
    std::vector<const BasisVector *> vectors() const;

    // Every homogeneous part lies in the component of its multidegree.
    bool contains(const Derivation &D) const;

    // Used by the closure engine; returns false for dependent vectors.
    bool insert(const WeightVector &gr, BasisVector v);

private:
    Context ctx_;
    BigInt cap_;
    std::map<WeightVector, GradedComponent> components_;
};

// Smallest homogeneous subspace containing the generators and closed under
// brackets and p-powers with total weight <= cap. Generators must be
// homogeneous. Throws "outside trusted zone" if cap > W(depth).
GradedBasis restricted_closure(const std::vector<Derivation> &generators, const BigInt &cap,
                               std::vector<std::string> names = {});

// v_0, w_0, u_0 up to W(depth).
GradedBasis clover_closure(const Context &ctx);

VerificationReport verify_basis_theorem(const ParameterTuple &tuple, std::size_t depth);
VerificationReport verify_grading(const ParameterTuple &tuple, std::size_t depth);

// Pivot identities at every generation i with i + 1 < depth.
VerificationReport relation_suite(const ParameterTuple &tuple, std::size_t depth);
// "name i status" per identity.
std::string relation_lines(const VerificationReport &report);

// Sum of s_i(D, E) in (D + E)^[p] = D^[p] + E^[p] + sum s_i.
Derivation jacobson_remainder(const Derivation &D, const Derivation &E);

// Restricted axioms on random pairs drawn from the closure basis.
VerificationReport restricted_axiom_suite(const ParameterTuple &tuple, std::size_t depth, std::size_t pairs,
                                          std::uint64_t seed);

struct NilResult {
    bool conclusive = false;
    std::uint32_t k = 0;
    BigInt index; // p^k when conclusive
    // Largest chain step computed and total weight ceiling reached there.
    std::uint32_t steps = 0;
    std::string reason;
};

// Throws "element outside algebra" unless e lies in basis.
NilResult nil_index(const Derivation &e, const GradedBasis &basis);

struct NilSampling {
    std::size_t samples = 200;
    std::uint64_t seed = 0;
    std::size_t max_terms = 5;
};

// Random F_p-combinations of basis vectors whose p-th power stays in the
// trusted zone (weight <= W / p).
Derivation random_element(const GradedBasis &basis, std::mt19937_64 &rng, std::size_t max_terms,
                          const BigInt &max_weight);

VerificationReport nil_sampling(const ParameterTuple &tuple, std::size_t depth, NilSampling options);

// Copies D to ctx with every generation index raised by k.
Derivation shift_generations(const Derivation &D, std::size_t k, const Context &ctx);

VerificationReport self_similarity_decompose(const ParameterTuple &tuple, std::size_t depth);

} // namespace clover

#endif
