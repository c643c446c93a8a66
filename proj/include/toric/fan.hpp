#ifndef TORIC_FAN_HPP
#define TORIC_FAN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "toric/exactla.hpp"

namespace toric {

/// A cone of a fan: sorted ray indices plus the resolved primitive generators.
struct Cone {
    std::vector<std::size_t> ray_indices;
    std::vector<IntVec> generators;
};

/// A rational polyhedral fan on a lattice Z^dim: distinct primitive rays and
/// maximal cones given as sets of ray indices. Immutable after construction.
class Fan {
public:
    Fan() = default;
    Fan(std::size_t dim, std::vector<IntVec> rays, std::vector<std::vector<std::size_t>> max_cones);

    std::size_t dim() const { return dim_; }
    const std::vector<IntVec>& rays() const { return rays_; }
    const std::vector<std::vector<std::size_t>>& max_cones() const { return max_cones_; }

    std::size_t ray_count() const { return rays_.size(); }
    Cone cone(std::size_t i) const;

    friend bool operator==(const Fan&, const Fan&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<IntVec> rays_;
    std::vector<std::vector<std::size_t>> max_cones_;
};

struct FanIssue {
    std::string code;    // stable machine key, e.g. "non-primitive-ray"
    std::string detail;  // human diagnostic
};

struct ValidationReport {
    std::vector<FanIssue> issues;
    bool valid() const { return issues.empty(); }
};

/// Confirms or refutes each fan invariant: primitive distinct rays, pointed
/// cones, no maximal cone inside another, and pairwise intersection in a
/// common face (exact rational feasibility; a point of one cone that escapes
/// the shared face witnesses failure).
ValidationReport validate_fan(const Fan& f);

/// Index of the sublattice spanned by the generators inside its saturation;
/// 1 iff the cone is smooth. Throws std::domain_error("multiplicity
/// undefined") on non-simplicial cones.
Int cone_multiplicity(const Cone& c);

bool is_simplicial(const Fan& f);
bool is_smooth(const Fan& f);

inline constexpr std::uint64_t kCompletenessSampleSeed = 0x746f726963u;

/// Support = whole space. Ridge criterion (every (n-1)-face of a maximal cone
/// shared by exactly two, adjacency graph connected), cross-checked by exact
/// membership of >= 100 seeded pseudo-random rational directions.
bool is_complete(const Fan& f, std::uint64_t sample_seed = kCompletenessSampleSeed);

// Constructors.
Fan projective_space_fan(std::size_t n);
Fan hirzebruch_fan(const Int& a);
Fan product_fan(const Fan& a, const Fan& b);
/// Insert the primitive lattice vector v (inside the support) and cone over
/// the faces of the cones containing it. At an existing ray this is the
/// identity refinement.
Fan star_subdivision(const Fan& f, const IntVec& v);
/// Fan of P(O + O(D_1) + ... + O(D_k)) over the base: one twist vector per
/// bundle summand, indexed by base rays. Rays: lifted base rays, then the k
/// fiber basis rays, then their negative sum.
Fan projectivized_split_bundle_fan(const Fan& base, const std::vector<IntVec>& twists);

/// Smooth simplicial refinement with the same support: pulling triangulation
/// at lexicographically least rays, then stellar subdivision at a minimal
/// parallelepiped point of a maximal-multiplicity cone until smooth.
Fan resolve(const Fan& f);

struct ResolveTrace {
    Fan fan;
    /// Sorted-descending multiset of maximal-cone multiplicities, one entry
    /// per state (initial, then after each subdivision).
    std::vector<IntVec> multiplicity_history;
};
ResolveTrace resolve_with_trace(const Fan& f);

/// Pulling triangulation of every non-simplicial maximal cone; adds no rays,
/// preserves support.
Fan triangulate_fan(const Fan& f);

// Cone-level helpers shared across modules (exact arithmetic throughout).
bool cone_contains(const std::vector<IntVec>& generators, const IntVec& x);
bool cone_is_pointed(const std::vector<IntVec>& generators);
/// Unique coordinates of x in a simplicial cone's generators; nullopt if x is
/// outside the linear span or the combination is not unique.
std::optional<RatVec> simplicial_coordinates(const std::vector<IntVec>& generators, const IntVec& x);
/// Generator-index subsets spanning the facets (codimension-1 faces).
std::vector<std::vector<std::size_t>> cone_facets(const std::vector<IntVec>& generators);
/// Generator-index subset spanning the minimal face containing x (pre: x in cone).
std::vector<std::size_t> minimal_face(const std::vector<IntVec>& generators, const IntVec& x);
bool fan_contains(const Fan& f, const IntVec& x);

}  // namespace toric

#endif  // TORIC_FAN_HPP
