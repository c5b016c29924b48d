#pragma once

#include <cstdint>
#include <string>

#include "distill/conjecture.hpp"
#include "distill/rng.hpp"

namespace distill {

enum class Family { general, normal_a, normal_both, b_in_P, theorem2_forms };

std::string family_name(Family f);
Family family_from_name(const std::string& name);  // throws on unknown name

struct SamplerFamily {
    Family tag = Family::general;
    int d = 4;
    std::uint64_t rng_seed = 0;
};

// Draws one point from the family (Gaussian entries, then projection onto
// the constraint sphere). Deterministic given (rng_seed, index).
//   general:        both matrices full complex Gaussian
//   normal_a:       A = U diag(real Gaussian) U^H, B general
//   normal_both:    both unitary-conjugated real diagonals
//   b_in_P:         A real diagonal, B = random <=2-dim blocks, then rotated
//   theorem2_forms: d = 4 only; A, B drawn from the special 4x4 shapes
FeasiblePoint sample(const SamplerFamily& family, std::uint64_t index);

// Structural predicate used by the family-soundness tests. For b_in_P the
// stream is replayed from (rng_seed, index) to recover the block provenance.
bool family_predicate_holds(const SamplerFamily& family, std::uint64_t index,
                            const FeasiblePoint& p);

}  // namespace distill
