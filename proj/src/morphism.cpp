#include "toric/morphism.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

#include "toric/lp.hpp"
#include "toric/recognize.hpp"

namespace toric {

namespace {

void require_shape(const ToricMorphism& m) {
    if (m.map.rows() != m.target.dim() || m.map.cols() != m.source.dim())
        throw std::invalid_argument("morphism matrix shape mismatch");
}

std::vector<IntVec> image_vectors(const IntMatrix& a, const std::vector<IntVec>& gens) {
    std::vector<IntVec> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(multiply(a, g));
    return out;
}

bool all_in_cone(const std::vector<IntVec>& target_gens, const std::vector<IntVec>& points) {
    for (const auto& p : points)
        if (!cone_contains(target_gens, p)) return false;
    return true;
}

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

/// Clear denominators and primitivize: the primitive lattice point on the ray
/// through a nonzero rational vector.
IntVec primitive_direction(const RatVec& x) {
    Int l(1);
    for (const Rat& q : x)
        l = boost::multiprecision::lcm(l, Int(boost::multiprecision::denominator(q)));
    IntVec v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rat scaled = x[i] * Rat(l);
        v[i] = boost::multiprecision::numerator(scaled);
    }
    return primitive(std::move(v));
}

}  // namespace

CompatibilityResult check_compatibility(const ToricMorphism& m) {
    require_shape(m);
    for (std::size_t i = 0; i < m.source.max_cones().size(); ++i) {
        Cone c = m.source.cone(i);
        std::vector<IntVec> images = image_vectors(m.map, c.generators);
        IntVec witness(m.target.dim());
        for (const auto& w : images) witness = add(witness, w);
        images.push_back(witness);
        bool all_zero = true;
        for (const auto& w : images)
            if (!is_zero(w)) {
                all_zero = false;
                break;
            }
        if (all_zero) continue;  // lands in the zero cone, a face of everything
        bool found = false;
        for (std::size_t j = 0; j < m.target.max_cones().size() && !found; ++j)
            found = all_in_cone(m.target.cone(j).generators, images);
        if (!found) return {false, i};
    }
    return {true, std::nullopt};
}

GenericFiniteness is_generically_finite(const ToricMorphism& m) {
    require_shape(m);
    if (!is_complete(m.source) || !is_complete(m.target))
        throw std::domain_error("surjectivity undecided: fans must be complete");
    GenericFiniteness out;
    if (m.source.dim() != m.target.dim()) return out;
    Int d = determinant(m.map);
    if (d == 0) return out;
    out.finite = true;
    out.index = abs_int(d);
    return out;
}

std::vector<std::size_t> J_of(const ToricMorphism& m) {
    require_shape(m);
    if (!is_complete(m.source) || !is_complete(m.target))
        throw std::domain_error("J undefined: fans must be complete");
    const std::size_t nprime = m.target.dim();
    if (rank(m.map) != nprime)
        throw std::domain_error("J undefined: morphism not surjective");
    if (!check_compatibility(m).compatible)
        throw std::domain_error("J undefined: morphism not compatible");

    const bool fast = m.source.dim() == nprime && determinant(m.map) != 0;
    std::set<IntVec> target_rays(m.target.rays().begin(), m.target.rays().end());

    std::vector<std::size_t> j;
    std::vector<IntVec> a_cols;
    for (std::size_t t = 0; t < m.source.dim(); ++t) a_cols.push_back(m.map.column(t));

    for (std::size_t r = 0; r < m.source.ray_count(); ++r) {
        IntVec w = multiply(m.map, m.source.rays()[r]);
        if (is_zero(w)) continue;  // contracted: image cone is the origin
        if (fast) {
            if (target_rays.count(primitive(w))) j.push_back(r);
            continue;
        }
        // minimal target cone containing w, via any maximal cone that holds it
        std::optional<std::vector<IntVec>> face_gens;
        for (std::size_t c = 0; c < m.target.max_cones().size(); ++c) {
            Cone tc = m.target.cone(c);
            if (!cone_contains(tc.generators, w)) continue;
            std::vector<IntVec> fg;
            for (std::size_t pos : minimal_face(tc.generators, w)) fg.push_back(tc.generators[pos]);
            face_gens = std::move(fg);
            break;
        }
        if (!face_gens)
            throw std::logic_error("image of a ray escapes the complete target fan");
        std::vector<IntVec> stacked = a_cols;
        stacked.insert(stacked.end(), face_gens->begin(), face_gens->end());
        std::size_t big = rank(IntMatrix::from_columns(stacked));
        std::size_t small = face_gens->empty() ? 0 : rank(IntMatrix::from_columns(*face_gens));
        if (big - small == nprime - 1) j.push_back(r);
    }
    return j;
}

bool lemma1_check(const ToricMorphism& m) {
    if (!is_generically_finite(m).finite)
        throw std::domain_error("lemma 1 hypotheses unmet: morphism not generically finite");
    std::vector<IntVec> cols;
    for (std::size_t r : J_of(m)) cols.push_back(m.source.rays()[r]);
    if (cols.empty()) return false;
    return rank(IntMatrix::from_columns(cols)) == m.source.dim();
}

SteinFactorization stein_factor(const ToricMorphism& m) {
    require_shape(m);
    if (!is_complete(m.source) || !is_complete(m.target))
        throw std::domain_error("factorization unsupported: fans must be complete");
    if (!check_compatibility(m).compatible)
        throw std::domain_error("factorization unsupported: morphism not compatible");
    if (!is_generically_finite(m).finite)
        throw std::domain_error("factorization unsupported: morphism not generically finite");

    std::vector<IntVec> mid_rays;
    for (const auto& u : m.target.rays()) {
        auto x = solve_rational(m.map, u);
        if (!x) throw std::logic_error("invertible lattice map failed to solve");
        mid_rays.push_back(primitive_direction(*x));
    }
    Fan mid(m.source.dim(), std::move(mid_rays), m.target.max_cones());
    SteinFactorization out{
        ToricMorphism{m.source, mid, IntMatrix::identity(m.source.dim())},
        ToricMorphism{mid, m.target, m.map}};
    return out;
}

std::optional<SplitBundleData> is_split_bundle_morphism(const ToricMorphism& m) {
    require_shape(m);
    if (!check_compatibility(m).compatible) return std::nullopt;
    if (!(cokernel_invariants(m.map) == CokernelInvariants{})) return std::nullopt;
    const std::size_t n = m.source.dim();
    const std::size_t np = m.target.dim();
    if (n <= np) return std::nullopt;
    const std::size_t k = n - np;
    auto kbasis = kernel_basis(m.map);
    if (kbasis.size() != k) return std::nullopt;

    // rays inside the kernel, with coordinates in the kernel lattice
    std::vector<std::size_t> fiber_rays;
    std::map<std::size_t, std::size_t> fiber_pos;
    std::vector<IntVec> fiber_coords;
    for (std::size_t r = 0; r < m.source.ray_count(); ++r) {
        if (!is_zero(multiply(m.map, m.source.rays()[r]))) continue;
        try {
            fiber_coords.push_back(lattice_coordinates(kbasis, m.source.rays()[r]));
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
        fiber_pos[r] = fiber_rays.size();
        fiber_rays.push_back(r);
    }

    std::set<std::vector<std::size_t>> faces;
    for (std::size_t i = 0; i < m.source.max_cones().size(); ++i) {
        Cone c = m.source.cone(i);
        std::vector<IntVec> images = image_vectors(m.map, c.generators);
        std::vector<std::size_t> face;  // positions within the cone
        for (std::size_t t = 0; t < c.ray_indices.size(); ++t)
            if (is_zero(images[t])) face.push_back(t);

        // the cone must map onto some maximal target cone
        bool onto = false;
        for (std::size_t j = 0; j < m.target.max_cones().size() && !onto; ++j) {
            Cone tc = m.target.cone(j);
            onto = all_in_cone(tc.generators, images) && all_in_cone(images, tc.generators);
        }
        if (!onto) return std::nullopt;

        // sigma meets the kernel exactly in the face spanned by its kernel rays
        std::vector<RatVec> rows(np + 1, RatVec(c.ray_indices.size()));
        RatVec rhs(np + 1);
        for (std::size_t t = 0; t < c.ray_indices.size(); ++t) {
            for (std::size_t e = 0; e < np; ++e) rows[e][t] = Rat(images[t][e]);
            if (!is_zero(images[t])) rows[np][t] = 1;
        }
        rhs[np] = 1;
        if (feasible_nonnegative(rows, rhs)) return std::nullopt;

        std::vector<std::size_t> kface;
        for (std::size_t t : face) kface.push_back(fiber_pos.at(c.ray_indices[t]));
        std::sort(kface.begin(), kface.end());
        faces.insert(std::move(kface));
    }

    if (m.source.max_cones().size() != m.target.max_cones().size() * (k + 1)) return std::nullopt;

    // maximal faces only; lower-dimensional ones are their faces
    std::vector<std::vector<std::size_t>> max_faces;
    for (const auto& f : faces) {
        bool dominated = false;
        for (const auto& g : faces) {
            if (f == g || g.size() <= f.size()) continue;
            if (std::includes(g.begin(), g.end(), f.begin(), f.end())) {
                dominated = true;
                break;
            }
        }
        if (!dominated) max_faces.push_back(f);
    }
    Fan fiber(k, fiber_coords, std::move(max_faces));
    if (!is_projective_space(fiber)) return std::nullopt;
    return SplitBundleData{k, std::move(fiber)};
}

Fan fiber_product_fan(const ToricMorphism& f, const ToricMorphism& g) {
    require_shape(f);
    require_shape(g);
    if (!(f.target == g.target))
        throw std::invalid_argument("fiber product requires morphisms onto the same target fan");
    if (f.target.dim() != 1 || !is_projective_space(f.target))
        throw std::invalid_argument("fiber product requires a projective-line target");
    auto fb = is_split_bundle_morphism(f);
    auto gb = is_split_bundle_morphism(g);
    if (!fb || !gb)
        throw std::invalid_argument("fiber product requires split-bundle morphisms");

    // Normalized fiber coordinates for g: P maps the source lattice onto the
    // kernel lattice, restricting to an isomorphism on ker(g.map) that carries
    // g's fiber fan onto the standard projective-space frame.
    const std::size_t nz = g.source.dim();
    const std::size_t k = gb->fiber_dim;
    SmithDecomposition s = smith_normal_form(g.map);
    IntMatrix vinv = unimodular_inverse(s.V);
    IntMatrix pi0(k, nz);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < nz; ++j) pi0.at(i, j) = vinv.at(nz - k + i, j);
    auto kbasis = kernel_basis(g.map);
    IntMatrix kappa = multiply(pi0, IntMatrix::from_columns(kbasis));
    auto wit = is_projective_space(gb->fiber_fan);
    if (!wit) throw std::logic_error("split-bundle fiber fan lost its witness");
    IntMatrix pfib = multiply(wit->basis_change, multiply(unimodular_inverse(kappa), pi0));

    // One section ray of g over each target ray, with lattice multiplier one;
    // its normalized fiber part is the twist value at that target ray.
    std::vector<IntVec> twist_at(f.target.ray_count());
    for (std::size_t q = 0; q < f.target.ray_count(); ++q) {
        const IntVec& u = f.target.rays()[q];
        std::optional<IntVec> section;
        bool unique = true;
        for (const auto& w : g.source.rays()) {
            IntVec img = multiply(g.map, w);
            if (is_zero(img) || primitive(img) != u) continue;
            if (section) unique = false;
            section = w;
            if (img != u) unique = false;  // multiplier != 1
        }
        if (!section || !unique)
            throw std::invalid_argument(
                "fiber product requires a unique unit-multiplier section ray over each target ray");
        twist_at[q] = multiply(pfib, *section);
    }

    // Pull the twists back along f: a ray of multiplier s over target ray q
    // carries s times the twist value there.
    const std::size_t ry = f.source.ray_count();
    std::vector<IntVec> pulled(k, IntVec(ry));
    for (std::size_t r = 0; r < ry; ++r) {
        Int s0 = multiply(f.map, f.source.rays()[r])[0];
        if (s0 == 0) continue;
        Int sign = s0 > 0 ? 1 : -1;
        std::optional<std::size_t> q;
        for (std::size_t t = 0; t < f.target.ray_count(); ++t)
            if (f.target.rays()[t][0] == sign) q = t;
        if (!q) throw std::logic_error("projective-line fan is missing a ray");
        for (std::size_t j = 0; j < k; ++j) pulled[j][r] = abs_int(s0) * twist_at[*q][j];
    }
    return projectivized_split_bundle_fan(f.source, pulled);
}

}  // namespace toric
