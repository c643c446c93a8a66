#include "toric/recognize.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "toric/classes.hpp"
#include "toric/lp.hpp"

namespace toric {

namespace {

Rat rat_dot(const RatVec& m, const IntVec& u) {
    Rat s;
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * Rat(u[i]);
    return s;
}

/// Per-ray count of maximal cones containing it, the basic isomorphism
/// invariant used for pruning.
std::vector<std::size_t> ray_degrees(const Fan& f) {
    std::vector<std::size_t> deg(f.ray_count());
    for (const auto& c : f.max_cones())
        for (std::size_t r : c) ++deg[r];
    return deg;
}

std::vector<std::size_t> sorted_copy(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

/// Solve T * A = B for square A with nonzero determinant; nullopt unless T is
/// integral.
std::optional<IntMatrix> solve_left_integer(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.rows();
    IntMatrix at = transpose(a);
    IntMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto x = solve_rational(at, b.row(i));
        if (!x) return std::nullopt;
        for (std::size_t j = 0; j < n; ++j) {
            if (boost::multiprecision::denominator((*x)[j]) != 1) return std::nullopt;
            t.at(i, j) = boost::multiprecision::numerator((*x)[j]);
        }
    }
    return t;
}

struct WallSide {
    std::size_t cone;
    std::size_t opposite_ray;  // the ray of this cone missing from the ridge
};

/// Ridge -> the two incident maximal cones with their opposite rays.
/// Pre: complete simplicial fan.
std::map<std::vector<std::size_t>, std::vector<WallSide>> wall_map(const Fan& f) {
    std::map<std::vector<std::size_t>, std::vector<WallSide>> walls;
    for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
        const auto& idx = f.max_cones()[c];
        for (std::size_t drop = 0; drop < idx.size(); ++drop) {
            std::vector<std::size_t> ridge;
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (i != drop) ridge.push_back(idx[i]);
            walls[ridge].push_back({c, idx[drop]});
        }
    }
    return walls;
}

}  // namespace

std::optional<PnWitness> is_projective_space(const Fan& f) {
    const std::size_t n = f.dim();
    if (n == 0) return std::nullopt;
    if (f.ray_count() != n + 1 || f.max_cones().size() != n + 1) return std::nullopt;
    std::set<std::vector<std::size_t>> cones(f.max_cones().begin(), f.max_cones().end());
    if (cones.size() != n + 1) return std::nullopt;
    for (std::size_t omit = 0; omit <= n; ++omit) {
        std::vector<std::size_t> subset;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != omit) subset.push_back(i);
        if (!cones.count(subset)) return std::nullopt;
    }
    if (!is_smooth(f)) return std::nullopt;

    Cone c0 = f.cone(0);
    IntMatrix t = unimodular_inverse(IntMatrix::from_columns(c0.generators));
    std::size_t rest = 0;
    for (std::size_t i = 0; i <= n; ++i)
        if (!std::binary_search(c0.ray_indices.begin(), c0.ray_indices.end(), i)) rest = i;
    IntVec v = multiply(t, f.rays()[rest]);
    for (const Int& x : v)
        if (x != -1) return std::nullopt;

    // reorder: the witness must send ray j of cone 0 to e_{j+1}; it already
    // does by construction of the inverse
    return PnWitness{std::move(t)};
}

std::optional<ConvexSupportCertificate> is_projective(const Fan& f) {
    if (!is_simplicial(f)) throw std::domain_error("unsupported: fan must be simplicial");
    if (!is_complete(f)) throw std::domain_error("unsupported: fan must be complete");
    const std::size_t r = f.ray_count();

    std::vector<RatVec> rows;
    RatVec rhs;
    for (const auto& [ridge, sides] : wall_map(f)) {
        if (sides.size() != 2) throw std::logic_error("wall of a complete fan without two sides");
        for (std::size_t pick = 0; pick < 2; ++pick) {
            const WallSide& here = sides[pick];
            const WallSide& there = sides[1 - pick];
            Cone c = f.cone(here.cone);
            auto lambda = simplicial_coordinates(c.generators, f.rays()[there.opposite_ray]);
            if (!lambda) throw std::logic_error("full simplicial cone failed to span a ray");
            RatVec row(r);
            for (std::size_t j = 0; j < c.ray_indices.size(); ++j)
                row[c.ray_indices[j]] += (*lambda)[j];
            row[there.opposite_ray] -= 1;
            rows.push_back(std::move(row));
            rhs.push_back(1);
        }
    }

    auto sol = feasible_at_least(rows, rhs);
    if (!sol) return std::nullopt;

    ConvexSupportCertificate cert;
    cert.a.assign(sol->begin(), sol->begin() + r);
    for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
        Cone cone = f.cone(c);
        Int l(1);
        for (std::size_t j = 0; j < cone.ray_indices.size(); ++j)
            l = boost::multiprecision::lcm(
                l, Int(boost::multiprecision::denominator(cert.a[cone.ray_indices[j]])));
        IntVec rhs_scaled(cone.ray_indices.size());
        for (std::size_t j = 0; j < cone.ray_indices.size(); ++j) {
            Rat scaled = cert.a[cone.ray_indices[j]] * Rat(l);
            rhs_scaled[j] = boost::multiprecision::numerator(scaled);
        }
        auto msol = solve_rational(transpose(IntMatrix::from_columns(cone.generators)), rhs_scaled);
        if (!msol) throw std::logic_error("support functional failed to solve on a full cone");
        RatVec mvec(msol->size());
        for (std::size_t j = 0; j < msol->size(); ++j) mvec[j] = (*msol)[j] / Rat(l);
        cert.m.push_back(std::move(mvec));
    }
    if (!verify_support_certificate(f, cert))
        throw std::logic_error("support certificate failed independent re-verification");
    return cert;
}

bool verify_support_certificate(const Fan& f, const ConvexSupportCertificate& cert) {
    if (cert.a.size() != f.ray_count() || cert.m.size() != f.max_cones().size()) return false;
    for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
        Cone cone = f.cone(c);
        if (cert.m[c].size() != f.dim()) return false;
        std::set<std::size_t> own(cone.ray_indices.begin(), cone.ray_indices.end());
        for (std::size_t r = 0; r < f.ray_count(); ++r) {
            Rat v = rat_dot(cert.m[c], f.rays()[r]);
            if (own.count(r)) {
                if (v != cert.a[r]) return false;
            } else if (!(v > cert.a[r])) {
                return false;
            }
        }
    }
    return true;
}

Theorem1Result theorem1_toric_verify(const ToricMorphism& m) {
    if (m.map.rows() != m.target.dim() || m.map.cols() != m.source.dim())
        throw std::invalid_argument("morphism matrix shape mismatch");
    Theorem1Result out;
    auto& fails = out.failures;

    if (!is_complete(m.source)) fails.push_back("source not complete");
    const bool target_complete = is_complete(m.target);
    if (!target_complete) fails.push_back("target not complete");
    const bool target_smooth = is_smooth(m.target);
    if (!target_smooth) fails.push_back("target not smooth");
    if (target_complete && is_simplicial(m.target)) {
        if (!is_projective(m.target)) fails.push_back("target not projective");
    }
    if (target_complete) {
        auto cls = divisor_class_group(m.target);
        if (cls.free_rank != 1 || !cls.torsion.empty())
            fails.push_back("target Picard rank not 1");
    }
    if (rank(m.map) != m.target.dim()) fails.push_back("morphism not surjective");
    if (!check_compatibility(m).compatible) fails.push_back("morphism not compatible");

    if (!fails.empty()) {
        out.verdict = "hypothesis violated";
        return out;
    }
    auto w = is_projective_space(m.target);
    if (w) {
        out.verdict = "confirmed";
        out.witness = std::move(w);
    } else {
        out.verdict = "refuted";
    }
    return out;
}

std::optional<ProductSplitting> is_product(const Fan& f) {
    const std::size_t r = f.ray_count();
    if (r > 16) throw std::domain_error("search too large: fan has more than 16 rays");
    const std::size_t n = f.dim();
    if (r < 2 || n < 2) return std::nullopt;

    for (std::uint32_t mask = 0; mask + 1 < (1u << (r - 1)); ++mask) {
        std::vector<std::size_t> s1{0}, s2;
        for (std::size_t i = 1; i < r; ++i)
            ((mask >> (i - 1)) & 1u ? s1 : s2).push_back(i);

        std::vector<IntVec> rays1, rays2;
        for (std::size_t i : s1) rays1.push_back(f.rays()[i]);
        for (std::size_t i : s2) rays2.push_back(f.rays()[i]);
        auto b1 = saturated_span_basis(rays1);
        auto b2 = saturated_span_basis(rays2);
        if (b1.size() + b2.size() != n) continue;
        std::vector<IntVec> stacked = b1;
        stacked.insert(stacked.end(), b2.begin(), b2.end());
        Int d = determinant(IntMatrix::from_rows(stacked));
        if (d != 1 && d != -1) continue;  // not a direct sum of sublattices

        // every maximal cone must split as (cone in S1) + (cone in S2), and
        // all combinations must occur
        std::set<std::vector<std::size_t>> parts1, parts2, cones(f.max_cones().begin(),
                                                                 f.max_cones().end());
        bool ok = true;
        for (const auto& c : f.max_cones()) {
            std::vector<std::size_t> p1, p2;
            for (std::size_t i : c)
                (std::find(s1.begin(), s1.end(), i) != s1.end() ? p1 : p2).push_back(i);
            if (p1.empty() || p2.empty()) {
                ok = false;
                break;
            }
            parts1.insert(p1);
            parts2.insert(p2);
        }
        if (!ok || cones.size() != parts1.size() * parts2.size()) continue;
        for (const auto& p1 : parts1) {
            for (const auto& p2 : parts2) {
                std::vector<std::size_t> merged;
                std::merge(p1.begin(), p1.end(), p2.begin(), p2.end(), std::back_inserter(merged));
                if (!cones.count(merged)) {
                    ok = false;
                    break;
                }
            }
            if (!ok) break;
        }
        if (!ok) continue;

        auto project = [](const std::vector<IntVec>& basis, const std::vector<IntVec>& rays) {
            std::vector<IntVec> out;
            for (const auto& u : rays) out.push_back(lattice_coordinates(basis, u));
            return out;
        };
        auto remap = [](const std::set<std::vector<std::size_t>>& parts,
                        const std::vector<std::size_t>& s) {
            std::vector<std::vector<std::size_t>> out;
            for (const auto& p : parts) {
                std::vector<std::size_t> c;
                for (std::size_t i : p)
                    c.push_back(std::find(s.begin(), s.end(), i) - s.begin());
                out.push_back(std::move(c));
            }
            return out;
        };
        try {
            ProductSplitting split;
            split.rays1 = s1;
            split.rays2 = s2;
            split.basis1 = b1;
            split.basis2 = b2;
            split.factor1 = Fan(b1.size(), project(b1, rays1), remap(parts1, s1));
            split.factor2 = Fan(b2.size(), project(b2, rays2), remap(parts2, s2));
            return split;
        } catch (const std::invalid_argument&) {
            continue;  // a ray escaped its sublattice: not a genuine splitting
        }
    }
    return std::nullopt;
}

std::optional<IntMatrix> fan_isomorphism(const Fan& a, const Fan& b) {
    const std::size_t n = a.dim();
    if (n != b.dim() || a.ray_count() != b.ray_count() ||
        a.max_cones().size() != b.max_cones().size())
        return std::nullopt;

    std::vector<std::size_t> sizes_a, sizes_b;
    for (const auto& c : a.max_cones()) sizes_a.push_back(c.size());
    for (const auto& c : b.max_cones()) sizes_b.push_back(c.size());
    if (sorted_copy(sizes_a) != sorted_copy(sizes_b)) return std::nullopt;

    auto deg_a = ray_degrees(a), deg_b = ray_degrees(b);
    if (sorted_copy(deg_a) != sorted_copy(deg_b)) return std::nullopt;

    std::optional<std::size_t> anchor;
    for (std::size_t i = 0; i < a.max_cones().size(); ++i) {
        Cone c = a.cone(i);
        if (c.ray_indices.size() == n && rank(IntMatrix::from_columns(c.generators)) == n) {
            anchor = i;
            break;
        }
    }
    if (!anchor) return std::nullopt;
    Cone ca = a.cone(*anchor);
    IntMatrix ga = IntMatrix::from_columns(ca.generators);

    std::map<IntVec, std::size_t> ray_index_b;
    for (std::size_t i = 0; i < b.ray_count(); ++i) ray_index_b[b.rays()[i]] = i;
    std::set<std::vector<std::size_t>> cones_b(b.max_cones().begin(), b.max_cones().end());

    for (const auto& cb : b.max_cones()) {
        if (cb.size() != n) continue;
        std::vector<std::size_t> perm(cb.begin(), cb.end());
        std::sort(perm.begin(), perm.end());
        do {
            bool deg_ok = true;
            for (std::size_t j = 0; j < n && deg_ok; ++j)
                deg_ok = deg_a[ca.ray_indices[j]] == deg_b[perm[j]];
            if (!deg_ok) continue;
            std::vector<IntVec> cols;
            for (std::size_t j = 0; j < n; ++j) cols.push_back(b.rays()[perm[j]]);
            auto t = solve_left_integer(ga, IntMatrix::from_columns(cols));
            if (!t) continue;
            Int d = determinant(*t);
            if (d != 1 && d != -1) continue;

            std::vector<std::size_t> image(a.ray_count());
            bool rays_ok = true;
            for (std::size_t i = 0; i < a.ray_count() && rays_ok; ++i) {
                auto it = ray_index_b.find(multiply(*t, a.rays()[i]));
                if (it == ray_index_b.end() || deg_a[i] != deg_b[it->second])
                    rays_ok = false;
                else
                    image[i] = it->second;
            }
            if (!rays_ok) continue;
            bool cones_ok = true;
            for (const auto& c : a.max_cones()) {
                std::vector<std::size_t> mapped;
                for (std::size_t i : c) mapped.push_back(image[i]);
                std::sort(mapped.begin(), mapped.end());
                if (!cones_b.count(mapped)) {
                    cones_ok = false;
                    break;
                }
            }
            if (cones_ok) return *t;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::nullopt;
}

Theorem2Result theorem2_toric_verify(const Fan& x, const ToricMorphism& f, const ToricMorphism& g) {
    Theorem2Result out;
    auto& fails = out.failures;

    if (!(f.source == x) || !(g.source == x)) fails.push_back("morphism source mismatch");
    auto fb = is_split_bundle_morphism(f);
    if (!fb) fails.push_back("first morphism is not a split bundle");
    auto gb = is_split_bundle_morphism(g);
    if (!gb) fails.push_back("second morphism is not a split bundle");
    if (f.target.dim() + g.target.dim() != x.dim() + 1) fails.push_back("dimension sum mismatch");
    if (fb && gb && kernel_basis(f.map) == kernel_basis(g.map))
        fails.push_back("bundle structures coincide");
    if (!fails.empty()) {
        out.verdict = "hypothesis violated";
        return out;
    }

    Fan line = projective_space_fan(1);
    auto quotient_candidates = [&line](const Fan& base) {
        std::vector<IntMatrix> out_list;
        std::set<IntVec> seen;
        const std::size_t d = base.dim();
        const std::size_t r = base.ray_count();
        for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != d) continue;
            std::vector<IntVec> rows;
            for (std::size_t i = 0; i < r; ++i)
                if ((mask >> i) & 1u) rows.push_back(base.rays()[i]);
            IntMatrix sub = IntMatrix::from_rows(rows);
            if (rank(sub) != d - 1) continue;
            auto ker = kernel_basis(sub);
            if (ker.size() != 1) continue;
            for (int sign : {1, -1}) {
                IntVec p = sign == 1 ? ker[0] : scale(Int(-1), ker[0]);
                if (seen.count(p)) continue;
                seen.insert(p);
                IntMatrix pm(1, d);
                for (std::size_t j = 0; j < d; ++j) pm.at(0, j) = p[j];
                ToricMorphism cand{base, line, pm};
                if (check_compatibility(cand).compatible && is_split_bundle_morphism(cand))
                    out_list.push_back(pm);
            }
        }
        return out_list;
    };

    auto py_list = quotient_candidates(f.target);
    auto pz_list = quotient_candidates(g.target);
    for (const auto& py : py_list) {
        for (const auto& pz : pz_list) {
            if (!(multiply(py, f.map) == multiply(pz, g.map))) continue;
            Fan prod;
            try {
                prod = fiber_product_fan(ToricMorphism{f.target, line, py},
                                         ToricMorphism{g.target, line, pz});
            } catch (const std::invalid_argument&) {
                continue;  // this candidate pair carries no usable bundle data
            }
            if (fan_isomorphism(prod, x)) {
                out.verdict = "fiber-product confirmed";
                return out;
            }
        }
    }
    out.verdict = "no toric witness found";
    return out;
}

}  // namespace toric
