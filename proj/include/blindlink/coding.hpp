#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "blindlink/field.hpp"

namespace blindlink {

/// Coding schemes over the shared Vandermonde structure.
///   single_message: one message symbol plus q-1 uniform pad symbols per
///                   codeword; any q-1 observed symbols reveal exactly
///                   nothing about the message.
///   multi_message:  q message symbols per codeword, full rate; each symbol
///                   individually protected only while at least one channel
///                   is unobserved and the others are uniform.
enum class Scheme { single_message = 1, multi_message = 2 };

/// Codeword with a per-symbol presence mask (erased symbols stay stored but
/// are not observable).
struct Codeword {
    std::vector<std::uint32_t> symbols;
    std::vector<std::uint8_t> present;  // 1 = observable

    static Codeword full(std::vector<std::uint32_t> symbols);
    Codeword masked(std::span<const std::uint8_t> mask) const;  // AND with mask
    std::vector<std::size_t> observed_indices() const;
    std::size_t missing_count() const;
};

struct Efficiency {
    unsigned num;
    unsigned den;
    double value() const { return double(num) / den; }
};

struct SingleMessageDecode {
    std::uint32_t message;
    std::vector<std::uint32_t> pads;
};

/// Vandermonde secret-sharing code: symbol i is the evaluation of the input
/// polynomial at point x_i, so X = V u with V the q x q Vandermonde matrix.
class SecrecyCode {
public:
    /// points empty selects the default points (1, ..., q). Requires
    /// q <= p - 1 so distinct nonzero points exist.
    SecrecyCode(const PrimeField& field, std::size_t q, Scheme scheme,
                std::vector<std::uint32_t> points = {});

    const PrimeField& field() const noexcept { return field_; }
    std::size_t q() const noexcept { return q_; }
    Scheme scheme() const noexcept { return scheme_; }
    const std::vector<std::uint32_t>& points() const noexcept { return points_; }
    const FieldMatrix& generator() const noexcept { return generator_; }
    const FieldMatrix& decoder() const noexcept { return decoder_; }

    std::size_t message_symbols_per_codeword() const noexcept {
        return scheme_ == Scheme::single_message ? 1 : q_;
    }
    Efficiency efficiency() const noexcept {
        return scheme_ == Scheme::single_message
                   ? Efficiency{1, static_cast<unsigned>(q_)}
                   : Efficiency{1, 1};
    }

    /// single_message encode: input vector (message, pads...). pads.size()
    /// must be q - 1.
    Codeword encode_with_pads(std::uint32_t message, std::span<const std::uint32_t> pads) const;

    /// multi_message encode: messages.size() must be q.
    Codeword encode_messages(std::span<const std::uint32_t> messages) const;

    /// Exact decoders; throw InsufficientObservations unless every symbol is
    /// present.
    SingleMessageDecode decode_with_pads(const Codeword& cw) const;
    std::vector<std::uint32_t> decode_messages(const Codeword& cw) const;

private:
    void require_scheme(Scheme s, const char* op) const;
    std::vector<std::uint32_t> decode_input_vector(const Codeword& cw) const;

    PrimeField field_;
    std::size_t q_;
    Scheme scheme_;
    std::vector<std::uint32_t> points_;
    FieldMatrix generator_;
    FieldMatrix decoder_;
};

// --- Leakage analysis ------------------------------------------------------

/// Target of a leakage query: one message symbol or the whole message vector.
struct LeakageTarget {
    enum class Kind { single_index, full_vector } kind;
    std::size_t index = 0;

    static LeakageTarget message(std::size_t index) {
        return {Kind::single_index, index};
    }
    static LeakageTarget all_messages() { return {Kind::full_vector, 0}; }
};

struct LeakageReport {
    std::vector<std::size_t> observed;  // sorted channel indices
    double mutual_information_bits;
    bool joint_factorizes;  // exact integer test: joint == product of marginals
    bool exact_zero() const noexcept { return joint_factorizes; }
};

/// Exact mutual information I(target ; observed symbols) in bits, by
/// exhaustive enumeration of all p^q equally likely input vectors with
/// integer joint counts. Zero leakage is detected by the exact joint
/// factorization test, never by comparing floats to zero. Throws TooLarge
/// when p^q exceeds the 1e7 enumeration budget.
LeakageReport exact_mutual_information(const SecrecyCode& code,
                                       std::span<const std::size_t> observed_subset,
                                       LeakageTarget target);

// --- Bit packing ------------------------------------------------------------

struct SymbolStream {
    std::vector<std::uint32_t> symbols;
    unsigned bits_per_symbol;
    unsigned pad_bits;  // zero bits appended to fill the last symbol
};

/// Packs a bit vector (values 0/1) into field symbols, floor(log2 p) bits per
/// symbol, most significant bit first, zero-padded tail. This keeps every
/// symbol value below p, so packing is injective and exactly invertible.
SymbolStream pack_bits(std::span<const std::uint8_t> bits, const PrimeField& field);

/// Inverse of pack_bits. Throws EncodingError if a symbol does not fit in
/// bits_per_symbol bits or the pad length is inconsistent.
std::vector<std::uint8_t> unpack_bits(const SymbolStream& stream);

// --- Codeword text form -----------------------------------------------------

/// "X1,...,Xq;mask" with mask a q-character 0/1 string, e.g. "10,10,5;111".
std::string format_codeword(const Codeword& cw);
Codeword parse_codeword(const std::string& line);  // throws EncodingError

/// Deterministic uniform sampler over F_p (rejection on a 64-bit generator;
/// identical streams on every platform for a given seed).
class UniformSymbolSampler {
public:
    UniformSymbolSampler(const PrimeField& field, std::uint64_t seed)
        : rng_(seed), p_(field.modulus()) {}

    std::uint32_t next() {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % p_;
        std::uint64_t r;
        do {
            r = rng_();
        } while (r >= limit);
        return static_cast<std::uint32_t>(r % p_);
    }

private:
    std::mt19937_64 rng_;
    std::uint64_t p_;
};

}  // namespace blindlink
