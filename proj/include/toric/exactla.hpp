#ifndef TORIC_EXACTLA_HPP
#define TORIC_EXACTLA_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace toric {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Dense arbitrary-precision integer matrix, row-major.
/// Carrier for every lattice map (characters, divisors, class groups,
/// morphism matrices); no overflow by construction.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows);
    static IntMatrix from_columns(const std::vector<IntVec>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    IntVec row(std::size_t i) const;
    IntVec column(std::size_t j) const;

    const std::vector<Int>& entries() const { return entries_; }
    bool is_zero() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> entries_;
};

IntMatrix transpose(const IntMatrix& a);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVec multiply(const IntMatrix& a, const IntVec& v);
IntMatrix scale(const Int& c, const IntMatrix& a);

/// Fraction-free Bareiss determinant; exact for any square integer matrix.
Int determinant(const IntMatrix& a);

std::size_t rank(const IntMatrix& a);

/// gcd of all entries (nonnegative; 0 for the zero vector).
Int content(const IntVec& v);
bool is_zero(const IntVec& v);
/// v divided by its content. Undefined for the zero vector.
IntVec primitive(IntVec v);

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const Int& c, const IntVec& v);
Int dot(const IntVec& a, const IntVec& b);

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... ,
/// diagonal entries nonnegative with zeros trailing.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
    std::size_t rank = 0;

    /// The positive diagonal entries d_1, ..., d_r.
    IntVec invariant_factors() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Basis of the saturated integer kernel of A (primitive lattice, HNF-canonical
/// rows). Size = cols - rank; every rational kernel vector is a rational
/// combination of the result.
std::vector<IntVec> kernel_basis(const IntMatrix& a);

struct CokernelInvariants {
    std::size_t free_rank = 0;
    IntVec torsion;  // invariant factors > 1, in divisibility order

    friend bool operator==(const CokernelInvariants&, const CokernelInvariants&) = default;
};

/// coker(A) = Z^free_rank (+) Z/t_1 (+) ... as a Z-module, from the Smith form.
CokernelInvariants cokernel_invariants(const IntMatrix& a);

/// Row-style Hermite normal form: canonical basis of the row lattice.
/// Pivots positive, entries above a pivot reduced into [0, pivot).
IntMatrix hermite_row_form(IntMatrix m);

/// HNF basis of the saturation Q-span(vectors) ∩ Z^n (a direct summand).
std::vector<IntVec> saturated_span_basis(const std::vector<IntVec>& vectors);

/// Integer coordinates of v in a lattice basis. Throws std::invalid_argument
/// when v lies outside the integer span of the basis.
IntVec lattice_coordinates(const std::vector<IntVec>& basis, const IntVec& v);

/// Exact solve A x = b over Q. Empty optional when inconsistent.
std::optional<RatVec> solve_rational(const IntMatrix& a, const IntVec& b);

/// Inverse of a square matrix with det = +-1. Throws std::invalid_argument
/// otherwise.
IntMatrix unimodular_inverse(const IntMatrix& a);

}  // namespace toric

#endif  // TORIC_EXACTLA_HPP
