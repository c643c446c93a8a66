#ifndef TORIC_CLASSES_HPP
#define TORIC_CLASSES_HPP

#include <string>
#include <vector>

#include "toric/exactla.hpp"
#include "toric/fan.hpp"

namespace toric {

/// n x r matrix, one column e_rho per ray.
IntMatrix ray_matrix(const Fan& f);

/// Divisor class group: cokernel of m -> (<m, e_rho>)_rho. For smooth
/// complete fans this is Pic(X), free of rank #rays - n. Throws
/// std::domain_error("sequence not left-exact ...") when the rays fail to
/// span rationally.
CokernelInvariants divisor_class_group(const Fan& f);

/// Saturated integer kernel basis of the ray matrix; the rho-coordinate of a
/// class is the intersection number Z . D_rho.
std::vector<IntVec> curve_class_space(const Fan& f);

struct SequenceReport {
    std::size_t n = 0;
    std::size_t ray_count = 0;
    std::size_t class_free_rank = 0;
    IntVec class_torsion;
    std::size_t curve_space_rank = 0;
    std::string exact_divisor_seq;  // "exact" or "inexact: <stage>"
    std::string exact_dual_seq;

    bool exact() const { return exact_divisor_seq == "exact" && exact_dual_seq == "exact"; }
};

/// Exactness bookkeeping for the divisor sequence and its dual. Failing
/// checks produce "inexact" verdicts naming the stage; never throws.
SequenceReport verify_sequences(const Fan& f);

/// The classes [D_rho], one per ray, as coordinate vectors in the free class
/// lattice (columns of the canonical curve-class basis matrix). Throws
/// std::domain_error("Jaczewski hypotheses violated") unless the fan is
/// smooth and complete.
std::vector<IntVec> euler_jaczewski_summands(const Fan& f);

}  // namespace toric

#endif  // TORIC_CLASSES_HPP
