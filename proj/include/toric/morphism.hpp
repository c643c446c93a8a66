#ifndef TORIC_MORPHISM_HPP
#define TORIC_MORPHISM_HPP

#include <optional>
#include <vector>

#include "toric/exactla.hpp"
#include "toric/fan.hpp"

namespace toric {

/// Lattice map A: N -> N' (n' x n matrix) together with source and target
/// fans. Compatibility is checked by check_compatibility, not on
/// construction.
struct ToricMorphism {
    Fan source;
    Fan target;
    IntMatrix map;
};

struct CompatibilityResult {
    bool compatible = true;
    std::optional<std::size_t> offending_cone;  // source max-cone index on failure
};

/// Every source cone's image must land inside a single target cone; tested on
/// the generator images plus the interior witness point (sum of generators).
/// Throws std::invalid_argument on a matrix shape mismatch.
CompatibilityResult check_compatibility(const ToricMorphism& m);

struct GenericFiniteness {
    bool finite = false;
    Int index;  // |det A| when finite, 0 otherwise
};

/// Generic finiteness of a surjective morphism: equal lattice ranks and
/// det(A) != 0; index = |det A|. Throws std::domain_error("surjectivity
/// undecided") unless both fans are complete.
GenericFiniteness is_generically_finite(const ToricMorphism& m);

/// J(phi): indices of source rays mapped onto divisors of the target,
/// decided by the image-dimension rank formula (with a ray fast path in the
/// generically finite case). Throws std::domain_error("J undefined") unless
/// the morphism is compatible and surjective between complete fans.
std::vector<std::size_t> J_of(const ToricMorphism& m);

/// The rays in J(phi) must span N rationally; a false return is a
/// counterexample alarm. Hypotheses: those of J_of plus generic finiteness.
bool lemma1_check(const ToricMorphism& m);

struct SteinFactorization {
    ToricMorphism connected_part;  // identity lattice map, source refines the middle fan
    ToricMorphism finite_part;     // the original matrix, cone-bijective onto the target
};

/// Middle fan = rational preimages of the target cones under A, primitivized;
/// the two parts compose to m. Throws std::domain_error("factorization
/// unsupported") when the morphism is not compatible + generically finite.
SteinFactorization stein_factor(const ToricMorphism& m);

struct SplitBundleData {
    std::size_t fiber_dim = 0;
    Fan fiber_fan;  // projective-space fan in kernel coordinates
};

/// Sufficient split-bundle criterion: trivial cokernel, fiber fan inside
/// ker(A) recognized as a projective-space fan, every maximal cone mapping
/// onto a maximal target cone and meeting the kernel exactly in its fiber
/// face, and #max(source) = #max(target) * (fiber_dim + 1).
std::optional<SplitBundleData> is_split_bundle_morphism(const ToricMorphism& m);

/// Fan of Y x_C Z for two split-bundle morphisms f: Y -> C, g: Z -> C over
/// the same projective-line fan; realized as the projectivization over Y of
/// the pullback of Z's bundle data. Throws std::invalid_argument when the
/// inputs are not such a pair. (Lives here, not with the Fan constructors,
/// because it consumes morphisms.)
Fan fiber_product_fan(const ToricMorphism& f, const ToricMorphism& g);

}  // namespace toric

#endif  // TORIC_MORPHISM_HPP
