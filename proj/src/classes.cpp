#include "toric/classes.hpp"

#include <stdexcept>

namespace toric {

namespace {

// Rows = rays: the map M -> Div^T, m -> (<m, e_rho>)_rho.
IntMatrix divisor_map(const Fan& f) {
    if (f.ray_count() == 0) return IntMatrix(0, f.dim());
    return IntMatrix::from_rows(f.rays());
}

// Class of x in coker(divisor_map) via the Smith transform: y = Ux must have
// torsion coordinates divisible by d_i and free coordinates zero for x to be
// in the image.
bool in_divisor_image(const SmithDecomposition& s, const IntVec& x) {
    IntVec y = multiply(s.U, x);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < s.rank) {
            if (y[i] % s.D.at(i, i) != 0) return false;
        } else if (y[i] != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

IntMatrix ray_matrix(const Fan& f) {
    if (f.ray_count() == 0) return IntMatrix(f.dim(), 0);
    return IntMatrix::from_columns(f.rays());
}

CokernelInvariants divisor_class_group(const Fan& f) {
    IntMatrix m = divisor_map(f);
    if (rank(m) != f.dim())
        throw std::domain_error("sequence not left-exact: rays do not span the lattice");
    return cokernel_invariants(m);
}

std::vector<IntVec> curve_class_space(const Fan& f) { return kernel_basis(ray_matrix(f)); }

SequenceReport verify_sequences(const Fan& f) {
    SequenceReport rep;
    rep.n = f.dim();
    rep.ray_count = f.ray_count();
    IntMatrix m = divisor_map(f);
    SmithDecomposition s = smith_normal_form(m);
    CokernelInvariants cok = cokernel_invariants(m);
    rep.class_free_rank = cok.free_rank;
    rep.class_torsion = cok.torsion;
    std::vector<IntVec> curves = curve_class_space(f);
    rep.curve_space_rank = curves.size();

    if (s.rank != rep.n) {
        rep.exact_divisor_seq = "inexact: M-map not injective";
    } else {
        bool composite_zero = true;
        for (std::size_t j = 0; j < rep.n && composite_zero; ++j) {
            IntVec col(rep.ray_count);
            for (std::size_t i = 0; i < rep.ray_count; ++i) col[i] = m.at(i, j);
            composite_zero = in_divisor_image(s, col);
        }
        if (!composite_zero)
            rep.exact_divisor_seq = "inexact: composition not zero in the class group";
        else if (s.rank + rep.class_free_rank != rep.ray_count)
            rep.exact_divisor_seq = "inexact: rank mismatch";
        else
            rep.exact_divisor_seq = "exact";
    }

    IntMatrix r = ray_matrix(f);
    bool annihilated = true;
    for (const IntVec& z : curves)
        if (!is_zero(multiply(r, z))) annihilated = false;
    if (!annihilated)
        rep.exact_dual_seq = "inexact: curve classes not annihilated by the ray matrix";
    else if (rep.curve_space_rank + rep.n != rep.ray_count)
        rep.exact_dual_seq = "inexact: rank mismatch";
    else if (rep.curve_space_rank != rep.class_free_rank)
        rep.exact_dual_seq = "inexact: duality rank mismatch";
    else
        rep.exact_dual_seq = "exact";
    return rep;
}

std::vector<IntVec> euler_jaczewski_summands(const Fan& f) {
    if (!is_smooth(f) || !is_complete(f))
        throw std::domain_error("Jaczewski hypotheses violated: fan must be smooth and complete");
    std::vector<IntVec> curves = curve_class_space(f);
    std::vector<IntVec> summands(f.ray_count(), IntVec(curves.size()));
    for (std::size_t rho = 0; rho < f.ray_count(); ++rho)
        for (std::size_t i = 0; i < curves.size(); ++i) summands[rho][i] = curves[i][rho];
    return summands;
}

}  // namespace toric
