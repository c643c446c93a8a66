#include "toric/fan.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "toric/lp.hpp"

namespace toric {

namespace {

bool lex_less(const IntVec& a, const IntVec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t generator_rank(const std::vector<IntVec>& gens) {
    if (gens.empty()) return 0;
    return rank(IntMatrix::from_columns(gens));
}

/// Q-basis of the span with integer coordinates for every generator
/// (rows of the Hermite form of the generator lattice).
std::vector<IntVec> span_basis(const std::vector<IntVec>& gens) {
    IntMatrix h = hermite_row_form(IntMatrix::from_rows(gens));
    std::vector<IntVec> basis;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        IntVec r = h.row(i);
        if (!is_zero(r)) basis.push_back(std::move(r));
    }
    return basis;
}

/// Coordinates of v in the row basis (v must lie in the row lattice).
IntVec basis_coordinates(const std::vector<IntVec>& basis, const IntVec& v) {
    auto sol = solve_rational(transpose(IntMatrix::from_rows(basis)), v);
    if (!sol) throw std::logic_error("vector escapes its own span basis");
    IntVec out;
    out.reserve(sol->size());
    for (const Rat& q : *sol) {
        if (denominator(q) != 1) throw std::logic_error("span basis is not a lattice basis");
        out.push_back(numerator(q));
    }
    return out;
}

struct FacetData {
    IntVec normal;                     // inner normal, span coordinates
    std::vector<std::size_t> members;  // generator indices on the facet
};

/// Facets of a pointed cone, computed in coordinates of its own span.
/// Returned alongside the generators expressed in those coordinates.
struct SpanFacets {
    std::vector<IntVec> gens_b;
    std::vector<FacetData> facets;
};

SpanFacets span_facets(const std::vector<IntVec>& gens) {
    SpanFacets out;
    const std::size_t k = gens.size();
    const std::size_t d = generator_rank(gens);
    std::vector<IntVec> basis = span_basis(gens);
    out.gens_b.reserve(k);
    for (const IntVec& g : gens) out.gens_b.push_back(basis_coordinates(basis, g));
    if (d < 2) {
        if (d == 1) out.facets.push_back({IntVec{}, {}});  // the origin face; no usable normal
        return out;
    }
    if (k >= 63) throw std::domain_error("cone facet enumeration too large");
    std::set<std::vector<std::size_t>> seen;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        if (std::popcount(mask) != static_cast<int>(d - 1)) continue;
        std::vector<IntVec> sub;
        for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1) sub.push_back(out.gens_b[i]);
        std::vector<IntVec> ker = kernel_basis(IntMatrix::from_rows(sub));
        if (ker.size() != 1) continue;  // subset not of rank d-1
        IntVec m = ker.front();
        bool nonneg = true, nonpos = true;
        std::vector<Int> vals(k);
        for (std::size_t i = 0; i < k; ++i) {
            vals[i] = dot(m, out.gens_b[i]);
            if (vals[i] > 0) nonpos = false;
            if (vals[i] < 0) nonneg = false;
        }
        if (!nonneg && !nonpos) continue;
        if (nonpos)
            for (std::size_t i = 0; i < k; ++i) vals[i] = -vals[i];
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < k; ++i)
            if (vals[i] == 0) members.push_back(i);
        if (!seen.insert(members).second) continue;
        if (nonpos) m = scale(Int(-1), m);
        out.facets.push_back({std::move(m), std::move(members)});
    }
    return out;
}

/// All faces of a pointed cone as exact generator-index subsets, each
/// certified by a separating functional (exact LP).
std::vector<std::vector<std::size_t>> enumerate_faces(const std::vector<IntVec>& gens) {
    const std::size_t k = gens.size();
    if (k >= 18) throw std::domain_error("cone face enumeration too large");
    std::vector<std::vector<std::size_t>> faces;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<RatVec> rows;
        RatVec rhs;
        const std::size_t n = gens.empty() ? 0 : gens.front().size();
        auto push = [&](const IntVec& g, int sign, const Rat& bound) {
            RatVec row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = Rat(sign * g[j]);
            rows.push_back(std::move(row));
            rhs.push_back(bound);
        };
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1) {
                push(gens[i], +1, Rat(0));
                push(gens[i], -1, Rat(0));
            } else {
                push(gens[i], +1, Rat(1));
            }
        }
        if (feasible_at_least(rows, rhs)) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) members.push_back(i);
            faces.push_back(std::move(members));
        }
    }
    return faces;
}

std::vector<IntVec> pick(const std::vector<IntVec>& gens, const std::vector<std::size_t>& idx) {
    std::vector<IntVec> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(gens[i]);
    return out;
}

/// relint(cone F) meets relint(cone G)? Points with all coefficients >= 1
/// on either side; exact feasibility after shifting coefficients to >= 0.
bool relative_interiors_meet(const std::vector<IntVec>& f, const std::vector<IntVec>& g,
                             std::size_t dim) {
    RatVec rhs(dim, Rat(0));
    for (const IntVec& v : f)
        for (std::size_t i = 0; i < dim; ++i) rhs[i] -= Rat(v[i]);
    for (const IntVec& w : g)
        for (std::size_t i = 0; i < dim; ++i) rhs[i] += Rat(w[i]);
    std::vector<RatVec> rows(dim, RatVec(f.size() + g.size()));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < f.size(); ++j) rows[i][j] = Rat(f[j][i]);
        for (std::size_t j = 0; j < g.size(); ++j) rows[i][f.size() + j] = Rat(-g[j][i]);
    }
    return feasible_nonnegative(rows, rhs).has_value();
}

/// Do two simplicial cones of a candidate fan meet in the cone spanned by
/// their shared rays? Single exact feasibility problem: a common point whose
/// non-shared coefficients do not all vanish witnesses failure.
bool simplicial_pair_proper(const Cone& s, const Cone& t, std::size_t dim) {
    std::set<std::size_t> shared;
    std::set_intersection(s.ray_indices.begin(), s.ray_indices.end(), t.ray_indices.begin(),
                          t.ray_indices.end(), std::inserter(shared, shared.begin()));
    const std::size_t a = s.generators.size(), b = t.generators.size();
    std::vector<RatVec> rows(dim + 1, RatVec(a + b));
    RatVec rhs(dim + 1, Rat(0));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < a; ++j) rows[i][j] = Rat(s.generators[j][i]);
        for (std::size_t j = 0; j < b; ++j) rows[i][a + j] = Rat(-t.generators[j][i]);
    }
    for (std::size_t j = 0; j < a; ++j)
        if (!shared.count(s.ray_indices[j])) rows[dim][j] = 1;
    for (std::size_t j = 0; j < b; ++j)
        if (!shared.count(t.ray_indices[j])) rows[dim][a + j] = 1;
    rhs[dim] = 1;
    return !feasible_nonnegative(rows, rhs).has_value();
}

bool general_pair_proper(const Cone& s, const Cone& t, std::size_t dim) {
    auto faces_s = enumerate_faces(s.generators);
    auto faces_t = enumerate_faces(t.generators);
    auto vec_set = [](const std::vector<IntVec>& v) {
        std::vector<IntVec> c = v;
        std::sort(c.begin(), c.end(), lex_less);
        return c;
    };
    for (const auto& fs : faces_s) {
        std::vector<IntVec> gf = pick(s.generators, fs);
        for (const auto& ft : faces_t) {
            std::vector<IntVec> gg = pick(t.generators, ft);
            if (vec_set(gf) == vec_set(gg)) continue;
            if (relative_interiors_meet(gf, gg, dim)) return false;
        }
    }
    return true;
}

bool cone_simplicial(const Cone& c) {
    return generator_rank(c.generators) == c.generators.size();
}

std::string cone_name(std::size_t i) { return "maximal cone " + std::to_string(i); }

/// Nonzero lattice point of the half-open generator parallelepiped with
/// minimal coefficient sum (lex-least tie break). Pre: simplicial cone of
/// multiplicity > 1. The minimum is automatically primitive.
IntVec parallelepiped_witness(const std::vector<IntVec>& gens) {
    const std::size_t d = gens.size();
    IntMatrix g = IntMatrix::from_columns(gens);
    SmithDecomposition snf = smith_normal_form(g);
    if (snf.rank != d) throw std::logic_error("parallelepiped of a non-simplicial cone");
    IntVec diag(d);
    for (std::size_t i = 0; i < d; ++i) diag[i] = snf.D.at(i, i);
    IntVec counter(d, Int(0));
    std::optional<IntVec> best;
    Rat best_sum;
    while (true) {
        // advance mixed-radix counter; the all-zero class is the origin
        std::size_t pos = 0;
        while (pos < d) {
            counter[pos] += 1;
            if (counter[pos] < diag[pos]) break;
            counter[pos] = 0;
            ++pos;
        }
        if (pos == d) break;
        RatVec lambda(d, Rat(0));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) lambda[i] += Rat(snf.V.at(i, j) * counter[j], diag[j]);
        }
        Rat sum(0);
        for (Rat& l : lambda) {
            Int fl = numerator(l) >= 0 ? numerator(l) / denominator(l)
                                       : -((-numerator(l) + denominator(l) - 1) / denominator(l));
            l -= Rat(fl);
            sum += l;
        }
        IntVec x(gens.front().size(), Int(0));
        Rat acc;
        for (std::size_t j = 0; j < x.size(); ++j) {
            acc = 0;
            for (std::size_t i = 0; i < d; ++i) acc += lambda[i] * Rat(gens[i][j]);
            if (denominator(acc) != 1) throw std::logic_error("parallelepiped point not integral");
            x[j] = numerator(acc);
        }
        if (is_zero(x)) throw std::logic_error("parallelepiped class collapsed to origin");
        if (!best || sum < best_sum || (sum == best_sum && lex_less(x, *best))) {
            best = x;
            best_sum = sum;
        }
    }
    if (!best) throw std::logic_error("smooth cone has no parallelepiped witness");
    if (content(*best) != 1) throw std::logic_error("parallelepiped witness not primitive");
    return *best;
}

/// Pulling triangulation of one cone at lexicographically least generators.
void pull_cone(const std::vector<std::size_t>& idx, const std::vector<IntVec>& gens,
               std::vector<std::vector<std::size_t>>& out) {
    if (generator_rank(gens) == gens.size()) {
        std::vector<std::size_t> s = idx;
        std::sort(s.begin(), s.end());
        out.push_back(std::move(s));
        return;
    }
    std::size_t p = 0;
    for (std::size_t i = 1; i < gens.size(); ++i)
        if (lex_less(gens[i], gens[p])) p = i;
    SpanFacets sf = span_facets(gens);
    for (const FacetData& facet : sf.facets) {
        if (std::find(facet.members.begin(), facet.members.end(), p) != facet.members.end())
            continue;
        std::vector<std::size_t> sub_idx;
        std::vector<IntVec> sub_gens;
        for (std::size_t i : facet.members) {
            sub_idx.push_back(idx[i]);
            sub_gens.push_back(gens[i]);
        }
        std::vector<std::vector<std::size_t>> pieces;
        pull_cone(sub_idx, sub_gens, pieces);
        for (auto& piece : pieces) {
            piece.push_back(idx[p]);
            std::sort(piece.begin(), piece.end());
            out.push_back(std::move(piece));
        }
    }
}

IntVec multiplicity_multiset(const Fan& f) {
    IntVec m;
    m.reserve(f.max_cones().size());
    for (std::size_t i = 0; i < f.max_cones().size(); ++i)
        m.push_back(cone_multiplicity(f.cone(i)));
    std::sort(m.begin(), m.end(), [](const Int& a, const Int& b) { return a > b; });
    return m;
}

}  // namespace

Fan::Fan(std::size_t dim, std::vector<IntVec> rays, std::vector<std::vector<std::size_t>> max_cones)
    : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)) {
    for (auto& c : max_cones_) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
}

Cone Fan::cone(std::size_t i) const {
    const auto& idx = max_cones_.at(i);
    Cone c;
    c.ray_indices = idx;
    c.generators.reserve(idx.size());
    for (std::size_t r : idx) c.generators.push_back(rays_.at(r));
    return c;
}

bool cone_is_pointed(const std::vector<IntVec>& generators) {
    if (generators.empty()) return true;
    const std::size_t k = generators.size();
    if (generator_rank(generators) == k) return true;
    const std::size_t n = generators.front().size();
    std::vector<RatVec> rows(n + 1, RatVec(k));
    RatVec rhs(n + 1, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) rows[i][j] = Rat(generators[j][i]);
    for (std::size_t j = 0; j < k; ++j) rows[n][j] = 1;
    rhs[n] = 1;
    return !feasible_nonnegative(rows, rhs).has_value();
}

std::optional<RatVec> simplicial_coordinates(const std::vector<IntVec>& generators,
                                             const IntVec& x) {
    if (generators.empty()) return is_zero(x) ? std::optional<RatVec>(RatVec{}) : std::nullopt;
    if (generator_rank(generators) != generators.size()) return std::nullopt;
    IntMatrix g = IntMatrix::from_columns(generators);
    return solve_rational(g, x);
}

bool cone_contains(const std::vector<IntVec>& generators, const IntVec& x) {
    if (is_zero(x)) return true;
    if (generators.empty()) return false;
    if (generator_rank(generators) == generators.size()) {
        auto lambda = simplicial_coordinates(generators, x);
        if (!lambda) return false;
        for (const Rat& l : *lambda)
            if (l < 0) return false;
        return true;
    }
    const std::size_t n = generators.front().size(), k = generators.size();
    std::vector<RatVec> rows(n, RatVec(k));
    RatVec rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) rows[i][j] = Rat(generators[j][i]);
        rhs[i] = Rat(x[i]);
    }
    return feasible_nonnegative(rows, rhs).has_value();
}

std::vector<std::vector<std::size_t>> cone_facets(const std::vector<IntVec>& generators) {
    SpanFacets sf = span_facets(generators);
    std::vector<std::vector<std::size_t>> out;
    out.reserve(sf.facets.size());
    for (auto& f : sf.facets) out.push_back(f.members);
    return out;
}

std::vector<std::size_t> minimal_face(const std::vector<IntVec>& generators, const IntVec& x) {
    if (is_zero(x)) return {};
    if (generator_rank(generators) == generators.size()) {
        auto lambda = simplicial_coordinates(generators, x);
        if (!lambda) throw std::invalid_argument("point outside the cone");
        std::vector<std::size_t> face;
        for (std::size_t i = 0; i < lambda->size(); ++i) {
            if ((*lambda)[i] < 0) throw std::invalid_argument("point outside the cone");
            if ((*lambda)[i] > 0) face.push_back(i);
        }
        return face;
    }
    SpanFacets sf = span_facets(generators);
    std::vector<IntVec> basis = span_basis(generators);
    IntVec xb = basis_coordinates(basis, x);
    std::vector<bool> in_face(generators.size(), true);
    for (const FacetData& f : sf.facets) {
        if (f.normal.empty()) continue;
        if (dot(f.normal, xb) != 0) continue;
        std::set<std::size_t> members(f.members.begin(), f.members.end());
        for (std::size_t i = 0; i < generators.size(); ++i)
            if (!members.count(i)) in_face[i] = false;
    }
    std::vector<std::size_t> face;
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (in_face[i]) face.push_back(i);
    return face;
}

bool fan_contains(const Fan& f, const IntVec& x) {
    for (std::size_t i = 0; i < f.max_cones().size(); ++i)
        if (cone_contains(f.cone(i).generators, x)) return true;
    return is_zero(x);
}

ValidationReport validate_fan(const Fan& f) {
    ValidationReport rep;
    auto add = [&rep](std::string code, std::string detail) {
        rep.issues.push_back({std::move(code), std::move(detail)});
    };
    if (f.dim() == 0) {
        add("rank", "lattice rank must be positive");
        return rep;
    }
    bool structural_ok = true;
    for (std::size_t i = 0; i < f.ray_count(); ++i) {
        const IntVec& r = f.rays()[i];
        if (r.size() != f.dim()) {
            add("ray-dimension", "ray " + std::to_string(i) + " has " + std::to_string(r.size()) +
                                     " entries, expected " + std::to_string(f.dim()));
            structural_ok = false;
            continue;
        }
        if (is_zero(r)) {
            add("zero-ray", "ray " + std::to_string(i) + " is zero");
            structural_ok = false;
            continue;
        }
        if (content(r) != 1) add("non-primitive-ray", "ray " + std::to_string(i) + " is not primitive");
    }
    if (structural_ok) {
        std::map<IntVec, std::size_t> first;
        for (std::size_t i = 0; i < f.ray_count(); ++i) {
            auto [it, inserted] = first.emplace(f.rays()[i], i);
            if (!inserted)
                add("duplicate-ray", "rays " + std::to_string(it->second) + " and " +
                                         std::to_string(i) + " coincide");
        }
    }
    for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
        const auto& idx = f.max_cones()[c];
        if (idx.empty()) {
            add("empty-cone", cone_name(c) + " lists no rays");
            continue;
        }
        for (std::size_t r : idx)
            if (r >= f.ray_count()) {
                add("cone-index", cone_name(c) + " references missing ray " + std::to_string(r));
                structural_ok = false;
            }
    }
    // geometric checks need sane indices and ray dimensions
    if (!structural_ok) return rep;
    for (std::size_t a = 0; a < f.max_cones().size(); ++a) {
        if (f.max_cones()[a].empty()) continue;
        for (std::size_t b = a + 1; b < f.max_cones().size(); ++b) {
            if (f.max_cones()[b].empty()) continue;
            const auto& ia = f.max_cones()[a];
            const auto& ib = f.max_cones()[b];
            if (ia == ib)
                add("duplicate-cone", cone_name(a) + " and " + cone_name(b) + " coincide");
            else if (std::includes(ia.begin(), ia.end(), ib.begin(), ib.end()) ||
                     std::includes(ib.begin(), ib.end(), ia.begin(), ia.end()))
                add("nested-maximal-cones",
                    cone_name(a) + " and " + cone_name(b) + " are nested");
        }
    }
    std::vector<Cone> cones;
    std::vector<bool> usable;
    for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
        cones.push_back(f.cone(c));
        usable.push_back(!f.max_cones()[c].empty());
    }
    for (std::size_t c = 0; c < cones.size(); ++c) {
        if (!usable[c]) continue;
        if (!cone_is_pointed(cones[c].generators)) {
            add("not-pointed", cone_name(c) + " contains a line");
            usable[c] = false;
        }
    }
    for (std::size_t a = 0; a < cones.size(); ++a) {
        if (!usable[a]) continue;
        for (std::size_t b = a + 1; b < cones.size(); ++b) {
            if (!usable[b]) continue;
            if (f.max_cones()[a] == f.max_cones()[b]) continue;
            bool proper = (cone_simplicial(cones[a]) && cone_simplicial(cones[b]))
                              ? simplicial_pair_proper(cones[a], cones[b], f.dim())
                              : general_pair_proper(cones[a], cones[b], f.dim());
            if (!proper)
                add("improper-intersection",
                    cone_name(a) + " and " + cone_name(b) + " do not meet in a common face");
        }
    }
    for (std::size_t r = 0; r < f.ray_count(); ++r) {
        for (std::size_t c = 0; c < cones.size(); ++c) {
            if (!usable[c]) continue;
            if (std::binary_search(f.max_cones()[c].begin(), f.max_cones()[c].end(), r)) continue;
            if (cone_contains(cones[c].generators, f.rays()[r]))
                add("stray-ray",
                    "ray " + std::to_string(r) + " lies in " + cone_name(c) + " without being listed");
        }
    }
    for (std::size_t c = 0; c < cones.size(); ++c) {
        if (!usable[c] || cone_simplicial(cones[c])) continue;
        auto faces = enumerate_faces(cones[c].generators);
        for (std::size_t i = 0; i < cones[c].generators.size(); ++i) {
            bool extreme = false;
            for (const auto& face : faces)
                if (face.size() == 1 && face[0] == i) extreme = true;
            if (!extreme)
                add("redundant-generator", cone_name(c) + " lists ray " +
                                               std::to_string(cones[c].ray_indices[i]) +
                                               " which is not an extreme ray");
        }
    }
    return rep;
}

Int cone_multiplicity(const Cone& c) {
    if (c.generators.empty()) return 1;
    IntMatrix g = IntMatrix::from_columns(c.generators);
    SmithDecomposition snf = smith_normal_form(g);
    if (snf.rank != c.generators.size())
        throw std::domain_error("multiplicity undefined: cone is not simplicial");
    Int m(1);
    for (std::size_t i = 0; i < snf.rank; ++i) m *= snf.D.at(i, i);
    return m;
}

bool is_simplicial(const Fan& f) {
    for (std::size_t i = 0; i < f.max_cones().size(); ++i)
        if (!cone_simplicial(f.cone(i))) return false;
    return true;
}

bool is_smooth(const Fan& f) {
    for (std::size_t i = 0; i < f.max_cones().size(); ++i) {
        Cone c = f.cone(i);
        if (!cone_simplicial(c)) return false;
        if (cone_multiplicity(c) != 1) return false;
    }
    return true;
}

bool is_complete(const Fan& f, std::uint64_t sample_seed) {
    const std::size_t n = f.dim();
    if (f.max_cones().empty()) return false;
    for (std::size_t i = 0; i < f.max_cones().size(); ++i)
        if (generator_rank(f.cone(i).generators) != n) return false;
    Fan g = is_simplicial(f) ? f : triangulate_fan(f);
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> ridge_cones;
    for (std::size_t c = 0; c < g.max_cones().size(); ++c) {
        const auto& idx = g.max_cones()[c];
        for (std::size_t drop = 0; drop < idx.size(); ++drop) {
            std::vector<std::size_t> ridge;
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (i != drop) ridge.push_back(idx[i]);
            ridge_cones[ridge].push_back(c);
        }
    }
    bool ridge_complete = true;
    for (const auto& [ridge, owners] : ridge_cones)
        if (owners.size() != 2) ridge_complete = false;
    if (ridge_complete) {
        std::vector<std::vector<std::size_t>> adj(g.max_cones().size());
        for (const auto& [ridge, owners] : ridge_cones) {
            adj[owners[0]].push_back(owners[1]);
            adj[owners[1]].push_back(owners[0]);
        }
        std::vector<bool> seen(g.max_cones().size(), false);
        std::queue<std::size_t> q;
        q.push(0);
        seen[0] = true;
        while (!q.empty()) {
            std::size_t c = q.front();
            q.pop();
            for (std::size_t d : adj[c])
                if (!seen[d]) {
                    seen[d] = true;
                    q.push(d);
                }
        }
        for (bool s : seen)
            if (!s) ridge_complete = false;
    }
    // Sampled directions cross-check the combinatorial verdict; the two
    // criteria must never disagree in the covered direction.
    std::mt19937_64 rng(sample_seed);
    for (int trial = 0; trial < 120; ++trial) {
        IntVec dir(n);
        do {
            for (std::size_t i = 0; i < n; ++i)
                dir[i] = Int(static_cast<std::int64_t>(rng() % 19) - 9);
        } while (is_zero(dir));
        if (!fan_contains(g, dir)) {
            if (ridge_complete)
                throw std::logic_error("completeness criteria disagree on a sampled direction");
            return false;
        }
    }
    return ridge_complete;
}

Fan projective_space_fan(std::size_t n) {
    if (n == 0) throw std::invalid_argument("projective space dimension must be positive");
    std::vector<IntVec> rays;
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, Int(0));
        e[i] = 1;
        rays.push_back(std::move(e));
    }
    IntVec neg(n, Int(-1));
    rays.push_back(std::move(neg));
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t omit = n + 1; omit-- > 0;) {
        std::vector<std::size_t> c;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != omit) c.push_back(i);
        cones.push_back(std::move(c));
    }
    return Fan(n, std::move(rays), std::move(cones));
}

Fan hirzebruch_fan(const Int& a) {
    std::vector<IntVec> rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), a}, {Int(0), Int(-1)}};
    std::vector<std::vector<std::size_t>> cones = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    return Fan(2, std::move(rays), std::move(cones));
}

Fan product_fan(const Fan& a, const Fan& b) {
    const std::size_t n = a.dim() + b.dim();
    std::vector<IntVec> rays;
    for (const IntVec& r : a.rays()) {
        IntVec v(n, Int(0));
        std::copy(r.begin(), r.end(), v.begin());
        rays.push_back(std::move(v));
    }
    for (const IntVec& r : b.rays()) {
        IntVec v(n, Int(0));
        std::copy(r.begin(), r.end(), v.begin() + a.dim());
        rays.push_back(std::move(v));
    }
    auto effective = [](const Fan& f) {
        return f.max_cones().empty() ? std::vector<std::vector<std::size_t>>{{}} : f.max_cones();
    };
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& ca : effective(a)) {
        for (const auto& cb : effective(b)) {
            std::vector<std::size_t> c = ca;
            for (std::size_t i : cb) c.push_back(a.ray_count() + i);
            if (!c.empty()) cones.push_back(std::move(c));
        }
    }
    return Fan(n, std::move(rays), std::move(cones));
}

Fan star_subdivision(const Fan& f, const IntVec& v) {
    if (v.size() != f.dim()) throw std::invalid_argument("subdivision point dimension mismatch");
    if (is_zero(v) || content(v) != 1)
        throw std::invalid_argument("subdivision point must be a primitive lattice vector");
    if (!fan_contains(f, v))
        throw std::invalid_argument("subdivision point outside the fan support");
    std::vector<IntVec> rays = f.rays();
    std::size_t nv = rays.size();
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (rays[i] == v) nv = i;
    if (nv == rays.size()) rays.push_back(v);
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
        Cone cone = f.cone(c);
        if (!cone_contains(cone.generators, v)) {
            cones.push_back(f.max_cones()[c]);
            continue;
        }
        auto lambda = simplicial_coordinates(cone.generators, v);
        if (!lambda)
            throw std::domain_error("star subdivision requires simplicial cones at the point");
        for (std::size_t i = 0; i < lambda->size(); ++i) {
            if ((*lambda)[i] <= 0) continue;
            std::vector<std::size_t> child = cone.ray_indices;
            child[i] = nv;
            std::sort(child.begin(), child.end());
            cones.push_back(std::move(child));
        }
    }
    return Fan(f.dim(), std::move(rays), std::move(cones));
}

Fan projectivized_split_bundle_fan(const Fan& base, const std::vector<IntVec>& twists) {
    const std::size_t k = twists.size();
    if (k == 0) throw std::invalid_argument("at least one twist vector required");
    for (const IntVec& t : twists)
        if (t.size() != base.ray_count())
            throw std::invalid_argument("twist length must match base ray count");
    const std::size_t n = base.dim();
    const std::size_t dim = n + k;
    const std::size_t nb = base.ray_count();
    std::vector<IntVec> rays;
    for (std::size_t i = 0; i < nb; ++i) {
        IntVec lift(dim, Int(0));
        std::copy(base.rays()[i].begin(), base.rays()[i].end(), lift.begin());
        for (std::size_t j = 0; j < k; ++j) lift[n + j] = twists[j][i];
        rays.push_back(std::move(lift));
    }
    for (std::size_t j = 0; j < k; ++j) {
        IntVec e(dim, Int(0));
        e[n + j] = 1;
        rays.push_back(std::move(e));
    }
    IntVec f0(dim, Int(0));
    for (std::size_t j = 0; j < k; ++j) f0[n + j] = -1;
    rays.push_back(std::move(f0));
    auto base_cones = base.max_cones().empty() ? std::vector<std::vector<std::size_t>>{{}}
                                               : base.max_cones();
    std::vector<std::vector<std::size_t>> cones;
    for (const auto& bc : base_cones) {
        for (std::size_t omit = nb + k + 1; omit-- > nb;) {
            std::vector<std::size_t> c = bc;
            for (std::size_t r = nb; r <= nb + k; ++r)
                if (r != omit) c.push_back(r);
            cones.push_back(std::move(c));
        }
    }
    return Fan(dim, std::move(rays), std::move(cones));
}

Fan triangulate_fan(const Fan& f) {
    if (is_simplicial(f)) return f;
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t c = 0; c < f.max_cones().size(); ++c) {
        Cone cone = f.cone(c);
        if (cone_simplicial(cone)) {
            cones.push_back(f.max_cones()[c]);
            continue;
        }
        pull_cone(cone.ray_indices, cone.generators, cones);
    }
    return Fan(f.dim(), f.rays(), std::move(cones));
}

ResolveTrace resolve_with_trace(const Fan& f) {
    ResolveTrace trace;
    Fan g = triangulate_fan(f);
    trace.multiplicity_history.push_back(multiplicity_multiset(g));
    while (true) {
        std::optional<std::size_t> worst;
        Int worst_mult(1);
        for (std::size_t c = 0; c < g.max_cones().size(); ++c) {
            Int m = cone_multiplicity(g.cone(c));
            if (m > worst_mult) {
                worst_mult = m;
                worst = c;
            }
        }
        if (!worst) break;
        IntVec x = parallelepiped_witness(g.cone(*worst).generators);
        g = star_subdivision(g, x);
        trace.multiplicity_history.push_back(multiplicity_multiset(g));
    }
    trace.fan = std::move(g);
    return trace;
}

Fan resolve(const Fan& f) { return resolve_with_trace(f).fan; }

}  // namespace toric
