#include "blindlink/field.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace blindlink {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

PrimeField::PrimeField(std::uint32_t modulus) : p_(modulus) {
    if (modulus >= (1u << 31) || !is_prime(modulus)) {
        throw std::invalid_argument("field modulus must be a prime below 2^31, got " +
                                    std::to_string(modulus));
    }
}

FieldElement PrimeField::element(std::uint64_t value) const {
    return FieldElement(static_cast<std::uint32_t>(value % p_), p_);
}

FieldElement PrimeField::zero() const { return FieldElement(0, p_); }
FieldElement PrimeField::one() const { return FieldElement(1 % p_, p_); }

std::uint32_t PrimeField::add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p_) s -= p_;
    return static_cast<std::uint32_t>(s);
}

std::uint32_t PrimeField::sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : static_cast<std::uint32_t>(a + std::uint64_t(p_) - b);
}

std::uint32_t PrimeField::mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
}

std::uint32_t PrimeField::neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }

std::uint32_t PrimeField::pow(std::uint32_t base, std::uint64_t exponent) const noexcept {
    std::uint32_t acc = 1 % p_;
    std::uint32_t b = base;
    while (exponent > 0) {
        if (exponent & 1) acc = mul(acc, b);
        b = mul(b, b);
        exponent >>= 1;
    }
    return acc;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero();
    return pow(a, p_ - 2);  // Fermat: a^(p-2) = a^-1 for prime p
}

namespace {

void require_same_field(std::uint32_t pa, std::uint32_t pb) {
    if (pa != pb) throw FieldMismatch();
}

}  // namespace

FieldElement FieldElement::operator+(FieldElement other) const {
    require_same_field(p_, other.p_);
    return FieldElement(PrimeField(p_).add(value_, other.value_), p_);
}

FieldElement FieldElement::operator-(FieldElement other) const {
    require_same_field(p_, other.p_);
    return FieldElement(PrimeField(p_).sub(value_, other.value_), p_);
}

FieldElement FieldElement::operator*(FieldElement other) const {
    require_same_field(p_, other.p_);
    return FieldElement(PrimeField(p_).mul(value_, other.value_), p_);
}

FieldElement FieldElement::operator/(FieldElement other) const {
    require_same_field(p_, other.p_);
    PrimeField f(p_);
    return FieldElement(f.mul(value_, f.inv(other.value_)), p_);
}

FieldElement FieldElement::operator-() const {
    return FieldElement(PrimeField(p_).neg(value_), p_);
}

FieldElement FieldElement::inv() const {
    return FieldElement(PrimeField(p_).inv(value_), p_);
}

FieldElement FieldElement::pow(std::uint64_t e) const {
    return FieldElement(PrimeField(p_).pow(value_, e), p_);
}

FieldMatrix::FieldMatrix(const PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    if (rows == 0 || cols == 0) throw ShapeError("matrix dimensions must be positive");
}

FieldMatrix FieldMatrix::identity(const PrimeField& field, std::size_t n) {
    FieldMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FieldMatrix FieldMatrix::multiply(const FieldMatrix& other) const {
    if (!(field_ == other.field_)) throw FieldMismatch();
    if (cols_ != other.rows_) {
        throw ShapeError("matrix product shape mismatch: " + std::to_string(cols_) + " vs " +
                         std::to_string(other.rows_));
    }
    FieldMatrix out(field_, rows_, other.cols_);
    const std::uint64_t p = field_.modulus();
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < other.cols_; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) {
                acc = (acc + std::uint64_t(value(i, k)) * other.value(k, j)) % p;
            }
            out.a_[i * out.cols_ + j] = static_cast<std::uint32_t>(acc);
        }
    }
    return out;
}

std::vector<std::uint32_t> FieldMatrix::multiply(std::span<const std::uint32_t> v) const {
    if (v.size() != cols_) {
        throw ShapeError("matrix-vector shape mismatch: " + std::to_string(cols_) + " vs " +
                         std::to_string(v.size()));
    }
    std::vector<std::uint32_t> out(rows_, 0);
    const std::uint64_t p = field_.modulus();
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < cols_; ++k) {
            acc = (acc + std::uint64_t(value(i, k)) * (v[k] % p)) % p;
        }
        out[i] = static_cast<std::uint32_t>(acc);
    }
    return out;
}

FieldMatrix FieldMatrix::invert() const {
    if (rows_ != cols_) throw ShapeError("only square matrices can be inverted");
    const std::size_t n = rows_;
    FieldMatrix work = *this;
    FieldMatrix inv = identity(field_, n);
    const PrimeField& f = field_;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && work.value(pivot, col) == 0) ++pivot;
        if (pivot == n) throw SingularMatrix();
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work.a_[pivot * n + j], work.a_[col * n + j]);
                std::swap(inv.a_[pivot * n + j], inv.a_[col * n + j]);
            }
        }
        const std::uint32_t scale = f.inv(work.value(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            work.a_[col * n + j] = f.mul(work.value(col, j), scale);
            inv.a_[col * n + j] = f.mul(inv.value(col, j), scale);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            const std::uint32_t factor = work.value(i, col);
            if (factor == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work.a_[i * n + j] =
                    f.sub(work.value(i, j), f.mul(factor, work.value(col, j)));
                inv.a_[i * n + j] = f.sub(inv.value(i, j), f.mul(factor, inv.value(col, j)));
            }
        }
    }
    return inv;
}

FieldMatrix vandermonde(const PrimeField& field, std::span<const std::uint32_t> points) {
    const std::size_t q = points.size();
    if (q == 0) throw InvalidEvaluationPoints("at least one evaluation point is required");
    if (q > field.modulus() - 1) {
        throw InvalidEvaluationPoints("q = " + std::to_string(q) +
                                      " exceeds the number of distinct nonzero points in F_" +
                                      std::to_string(field.modulus()));
    }
    std::set<std::uint32_t> seen;
    for (std::uint32_t x : points) {
        if (x == 0 || x >= field.modulus()) {
            throw InvalidEvaluationPoints("evaluation points must be nonzero and below p");
        }
        if (!seen.insert(x).second) {
            throw InvalidEvaluationPoints("evaluation points must be distinct");
        }
    }
    FieldMatrix m(field, q, q);
    for (std::size_t i = 0; i < q; ++i) {
        std::uint32_t power = 1;
        for (std::size_t j = 0; j < q; ++j) {
            m.set(i, j, power);
            power = field.mul(power, points[i]);
        }
    }
    return m;
}

std::vector<std::uint32_t> default_evaluation_points(std::size_t q) {
    std::vector<std::uint32_t> points(q);
    for (std::size_t i = 0; i < q; ++i) points[i] = static_cast<std::uint32_t>(i + 1);
    return points;
}

SubsetSolveResult solve_subset(const FieldMatrix& m, std::span<const std::size_t> row_subset,
                               std::span<const std::uint32_t> rhs) {
    if (row_subset.size() != rhs.size()) {
        throw ShapeError("row subset and rhs lengths differ");
    }
    for (std::size_t r : row_subset) {
        if (r >= m.rows()) throw ShapeError("row index out of range");
    }
    const PrimeField& f = m.field();
    const std::size_t rows = row_subset.size();
    const std::size_t cols = m.cols();

    // Augmented submatrix [A | b], reduced in place.
    std::vector<std::uint32_t> a(rows * (cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a[i * (cols + 1) + j] = m.value(row_subset[i], j);
        a[i * (cols + 1) + cols] = rhs[i] % f.modulus();
    }
    const std::size_t stride = cols + 1;

    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot * stride + col] == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank) {
            for (std::size_t j = 0; j <= cols; ++j) {
                std::swap(a[pivot * stride + j], a[rank * stride + j]);
            }
        }
        const std::uint32_t scale = f.inv(a[rank * stride + col]);
        for (std::size_t j = 0; j <= cols; ++j) {
            a[rank * stride + j] = f.mul(a[rank * stride + j], scale);
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank) continue;
            const std::uint32_t factor = a[i * stride + col];
            if (factor == 0) continue;
            for (std::size_t j = 0; j <= cols; ++j) {
                a[i * stride + j] = f.sub(a[i * stride + j], f.mul(factor, a[rank * stride + j]));
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }

    for (std::size_t i = rank; i < rows; ++i) {
        if (a[i * stride + cols] != 0) return {SolveStatus::inconsistent, {}, rank};
    }
    if (rank < cols) return {SolveStatus::underdetermined, {}, rank};

    std::vector<std::uint32_t> solution(cols, 0);
    for (std::size_t i = 0; i < rank; ++i) solution[pivot_col[i]] = a[i * stride + cols];
    return {SolveStatus::unique, std::move(solution), rank};
}

}  // namespace blindlink
