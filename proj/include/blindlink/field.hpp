#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "blindlink/errors.hpp"

namespace blindlink {

class FieldElement;

/// Prime field F_p for p < 2^31. All arithmetic is exact; intermediates use
/// 64-bit integers so no reduction can overflow.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t modulus);

    std::uint32_t modulus() const noexcept { return p_; }

    FieldElement element(std::uint64_t value) const;  // reduces value mod p
    FieldElement zero() const;
    FieldElement one() const;

    // Raw-value helpers; inputs must already be canonical (< p).
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept;
    std::uint32_t neg(std::uint32_t a) const noexcept;
    std::uint32_t pow(std::uint32_t base, std::uint64_t exponent) const noexcept;
    std::uint32_t inv(std::uint32_t a) const;  // throws DivisionByZero for a == 0

    friend bool operator==(const PrimeField& a, const PrimeField& b) noexcept {
        return a.p_ == b.p_;
    }

private:
    std::uint32_t p_;
};

/// Value-semantic element of F_p; carries its modulus so mixed-field
/// operations are rejected rather than silently reduced.
class FieldElement {
public:
    std::uint32_t value() const noexcept { return value_; }
    std::uint32_t modulus() const noexcept { return p_; }
    PrimeField field() const { return PrimeField(p_); }

    FieldElement operator+(FieldElement other) const;
    FieldElement operator-(FieldElement other) const;
    FieldElement operator*(FieldElement other) const;
    FieldElement operator/(FieldElement other) const;  // throws DivisionByZero
    FieldElement operator-() const;
    FieldElement inv() const;                 // throws DivisionByZero
    FieldElement pow(std::uint64_t e) const;  // 0^0 == 1

    friend bool operator==(FieldElement a, FieldElement b) noexcept {
        return a.p_ == b.p_ && a.value_ == b.value_;
    }

private:
    friend class PrimeField;
    FieldElement(std::uint32_t value, std::uint32_t p) : value_(value), p_(p) {}

    std::uint32_t value_;
    std::uint32_t p_;
};

/// Dense matrix over F_p. Entries are stored as canonical raw values.
class FieldMatrix {
public:
    FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols);

    static FieldMatrix identity(const PrimeField& field, std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const PrimeField& field() const noexcept { return field_; }

    std::uint32_t value(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint64_t v) {
        a_[r * cols_ + c] = static_cast<std::uint32_t>(v % field_.modulus());
    }

    FieldMatrix multiply(const FieldMatrix& other) const;              // throws ShapeError
    std::vector<std::uint32_t> multiply(std::span<const std::uint32_t> v) const;

    /// Exact inverse by Gauss-Jordan elimination with the first nonzero
    /// pivot in each column. Throws SingularMatrix if rank < n.
    FieldMatrix invert() const;

    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) noexcept {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    PrimeField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint32_t> a_;
};

/// Vandermonde matrix with row i = (1, x_i, x_i^2, ..., x_i^(q-1)) for the
/// given evaluation points; q = points.size(). Points must be distinct,
/// nonzero, and canonical (< p). Requires q <= p - 1.
FieldMatrix vandermonde(const PrimeField& field, std::span<const std::uint32_t> points);

/// Default evaluation points (1, 2, ..., q).
std::vector<std::uint32_t> default_evaluation_points(std::size_t q);

enum class SolveStatus { unique, underdetermined, inconsistent };

struct SubsetSolveResult {
    SolveStatus status;
    std::vector<std::uint32_t> solution;  // populated only when status == unique
    std::size_t rank;
};

/// Solves the subsystem of m restricted to row_subset against rhs
/// (rhs.size() == row_subset.size()). Unique solution when the subsystem has
/// full column rank; otherwise reports the achieved rank.
SubsetSolveResult solve_subset(const FieldMatrix& m, std::span<const std::size_t> row_subset,
                               std::span<const std::uint32_t> rhs);

}  // namespace blindlink
