#include "blindlink/coding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace blindlink {

Codeword Codeword::full(std::vector<std::uint32_t> symbols) {
    Codeword cw;
    cw.present.assign(symbols.size(), 1);
    cw.symbols = std::move(symbols);
    return cw;
}

Codeword Codeword::masked(std::span<const std::uint8_t> mask) const {
    if (mask.size() != symbols.size()) throw ShapeError("mask length differs from codeword length");
    Codeword out = *this;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i] || !present[i]) {
            out.present[i] = 0;
            out.symbols[i] = 0;  // erased symbols carry no value
        }
    }
    return out;
}

std::vector<std::size_t> Codeword::observed_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < present.size(); ++i) {
        if (present[i]) idx.push_back(i);
    }
    return idx;
}

std::size_t Codeword::missing_count() const {
    return present.size() - observed_indices().size();
}

namespace {

std::vector<std::uint32_t> resolve_points(std::size_t q, std::vector<std::uint32_t> points) {
    if (points.empty()) return default_evaluation_points(q);
    if (points.size() != q) {
        throw InvalidEvaluationPoints("expected " + std::to_string(q) + " evaluation points, got " +
                                      std::to_string(points.size()));
    }
    return points;
}

}  // namespace

SecrecyCode::SecrecyCode(const PrimeField& field, std::size_t q, Scheme scheme,
                         std::vector<std::uint32_t> points)
    : field_(field),
      q_(q),
      scheme_(scheme),
      points_(resolve_points(q, std::move(points))),
      generator_(vandermonde(field, points_)),
      decoder_(generator_.invert()) {}

void SecrecyCode::require_scheme(Scheme s, const char* op) const {
    if (scheme_ != s) throw ArityError(std::string(op) + " is not valid for this coding scheme");
}

Codeword SecrecyCode::encode_with_pads(std::uint32_t message,
                                       std::span<const std::uint32_t> pads) const {
    require_scheme(Scheme::single_message, "encode_with_pads");
    if (pads.size() != q_ - 1) {
        throw ArityError("expected " + std::to_string(q_ - 1) + " pad symbols, got " +
                         std::to_string(pads.size()));
    }
    std::vector<std::uint32_t> input(q_);
    input[0] = message % field_.modulus();
    for (std::size_t i = 0; i < pads.size(); ++i) input[i + 1] = pads[i] % field_.modulus();
    return Codeword::full(generator_.multiply(input));
}

Codeword SecrecyCode::encode_messages(std::span<const std::uint32_t> messages) const {
    require_scheme(Scheme::multi_message, "encode_messages");
    if (messages.size() != q_) {
        throw ArityError("expected " + std::to_string(q_) + " message symbols, got " +
                         std::to_string(messages.size()));
    }
    std::vector<std::uint32_t> input(messages.begin(), messages.end());
    for (auto& v : input) v %= field_.modulus();
    return Codeword::full(generator_.multiply(input));
}

std::vector<std::uint32_t> SecrecyCode::decode_input_vector(const Codeword& cw) const {
    if (cw.symbols.size() != q_) {
        throw ShapeError("codeword length " + std::to_string(cw.symbols.size()) +
                         " differs from q = " + std::to_string(q_));
    }
    const std::size_t missing = cw.missing_count();
    if (missing > 0) throw InsufficientObservations(missing);
    return decoder_.multiply(cw.symbols);
}

SingleMessageDecode SecrecyCode::decode_with_pads(const Codeword& cw) const {
    require_scheme(Scheme::single_message, "decode_with_pads");
    std::vector<std::uint32_t> input = decode_input_vector(cw);
    SingleMessageDecode out;
    out.message = input[0];
    out.pads.assign(input.begin() + 1, input.end());
    return out;
}

std::vector<std::uint32_t> SecrecyCode::decode_messages(const Codeword& cw) const {
    require_scheme(Scheme::multi_message, "decode_messages");
    return decode_input_vector(cw);
}

namespace {

// Mixed-radix index of the given digits, least significant digit first.
std::uint64_t radix_index(std::span<const std::uint32_t> digits, std::uint64_t p) {
    std::uint64_t idx = 0;
    for (std::size_t i = digits.size(); i-- > 0;) idx = idx * p + digits[i];
    return idx;
}

}  // namespace

LeakageReport exact_mutual_information(const SecrecyCode& code,
                                       std::span<const std::size_t> observed_subset,
                                       LeakageTarget target) {
    const std::uint64_t p = code.field().modulus();
    const std::size_t q = code.q();

    std::vector<std::size_t> observed(observed_subset.begin(), observed_subset.end());
    std::sort(observed.begin(), observed.end());
    if (std::adjacent_find(observed.begin(), observed.end()) != observed.end()) {
        throw ArityError("observed subset contains duplicate channel indices");
    }
    if (!observed.empty() && observed.back() >= q) {
        throw ArityError("observed channel index out of range");
    }

    // Message positions within the enumerated input vector.
    std::vector<std::size_t> message_positions;
    if (code.scheme() == Scheme::single_message) {
        message_positions = {0};
    } else {
        message_positions.resize(q);
        for (std::size_t i = 0; i < q; ++i) message_positions[i] = i;
    }
    std::vector<std::size_t> target_positions;
    if (target.kind == LeakageTarget::Kind::single_index) {
        if (target.index >= message_positions.size()) {
            throw ArityError("leakage target index out of range");
        }
        target_positions = {message_positions[target.index]};
    } else {
        target_positions = message_positions;
    }

    // Enumeration budget: all p^q input vectors.
    constexpr double budget = 1e7;
    if (std::pow(double(p), double(q)) > budget) {
        throw TooLarge("enumeration of p^q = " + std::to_string(p) + "^" + std::to_string(q) +
                       " input vectors exceeds the 1e7 budget");
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < q; ++i) total *= p;

    std::uint64_t target_space = 1;
    for (std::size_t i = 0; i < target_positions.size(); ++i) target_space *= p;
    std::uint64_t obs_space = 1;
    for (std::size_t i = 0; i < observed.size(); ++i) obs_space *= p;

    // Joint counts, dense when the table is small enough.
    const bool dense = target_space <= budget && obs_space <= budget &&
                       double(target_space) * double(obs_space) <= 2e7;
    std::vector<std::uint64_t> joint_dense;
    std::unordered_map<std::uint64_t, std::uint64_t> joint_sparse;
    if (dense) joint_dense.assign(target_space * obs_space, 0);
    std::vector<std::uint64_t> target_marginal(target_space, 0);
    std::vector<std::uint64_t> obs_marginal(obs_space, 0);

    const FieldMatrix& g = code.generator();
    std::vector<std::uint32_t> digits(q, 0);        // current input vector
    std::vector<std::uint32_t> encoded_obs(observed.size(), 0);  // X at observed rows

    const PrimeField& f = code.field();
    std::vector<std::uint32_t> target_digits(target_positions.size());
    for (std::uint64_t step = 0;; ++step) {
        for (std::size_t i = 0; i < target_positions.size(); ++i) {
            target_digits[i] = digits[target_positions[i]];
        }
        const std::uint64_t t_idx = radix_index(target_digits, p);
        const std::uint64_t o_idx = radix_index(encoded_obs, p);
        if (dense) {
            ++joint_dense[t_idx * obs_space + o_idx];
        } else {
            ++joint_sparse[t_idx * obs_space + o_idx];
        }
        ++target_marginal[t_idx];
        ++obs_marginal[o_idx];

        if (step + 1 == total) break;
        // Odometer increment; adding a generator column p times is a no-op,
        // so rollovers need no correction.
        std::size_t d = 0;
        while (true) {
            digits[d] = (digits[d] + 1) % p;
            for (std::size_t i = 0; i < observed.size(); ++i) {
                encoded_obs[i] = f.add(encoded_obs[i], g.value(observed[i], d));
            }
            if (digits[d] != 0) break;
            ++d;
        }
    }

    // Factorization holds iff every support cell satisfies
    // count * total == target_marginal * obs_marginal; the marginal sums then
    // force all off-support products to zero.
    bool factorizes = true;
    double bits = 0.0;
    const double log2_total = std::log2(double(total));
    auto accumulate = [&](std::uint64_t key, std::uint64_t count) {
        const std::uint64_t t_idx = key / obs_space;
        const std::uint64_t o_idx = key % obs_space;
        const std::uint64_t mt = target_marginal[t_idx];
        const std::uint64_t mo = obs_marginal[o_idx];
        if (count * total != mt * mo) factorizes = false;
        bits += double(count) / double(total) *
                (std::log2(double(count)) + log2_total - std::log2(double(mt)) -
                 std::log2(double(mo)));
    };
    if (dense) {
        for (std::uint64_t key = 0; key < joint_dense.size(); ++key) {
            if (joint_dense[key] > 0) accumulate(key, joint_dense[key]);
        }
    } else {
        for (const auto& [key, count] : joint_sparse) accumulate(key, count);
    }

    LeakageReport report;
    report.observed = std::move(observed);
    report.joint_factorizes = factorizes;
    if (factorizes) {
        report.mutual_information_bits = 0.0;
    } else {
        // A non-factorizing joint has strictly positive information; keep the
        // float consistent with the exact test even if rounding cancels it.
        report.mutual_information_bits = std::max(bits, std::numeric_limits<double>::min());
    }
    return report;
}

SymbolStream pack_bits(std::span<const std::uint8_t> bits, const PrimeField& field) {
    const unsigned k = std::bit_width(field.modulus()) - 1;  // floor(log2 p), 2^k <= p
    SymbolStream out;
    out.bits_per_symbol = k;
    out.pad_bits = bits.empty() ? 0 : static_cast<unsigned>((k - bits.size() % k) % k);
    out.symbols.reserve((bits.size() + k - 1) / k);
    std::uint32_t acc = 0;
    unsigned filled = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) throw EncodingError("bit values must be 0 or 1");
        acc = (acc << 1) | bits[i];
        if (++filled == k) {
            out.symbols.push_back(acc);
            acc = 0;
            filled = 0;
        }
    }
    if (filled > 0) out.symbols.push_back(acc << (k - filled));
    return out;
}

std::vector<std::uint8_t> unpack_bits(const SymbolStream& stream) {
    const unsigned k = stream.bits_per_symbol;
    if (k == 0) throw EncodingError("bits_per_symbol must be positive");
    if (stream.pad_bits >= k && !(stream.symbols.empty() && stream.pad_bits == 0)) {
        throw EncodingError("pad length must be below bits_per_symbol");
    }
    if (stream.symbols.empty() && stream.pad_bits != 0) {
        throw EncodingError("empty stream cannot carry padding");
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(stream.symbols.size() * k);
    for (std::uint32_t s : stream.symbols) {
        if (s >> k) {
            throw EncodingError("symbol " + std::to_string(s) + " does not fit in " +
                                std::to_string(k) + " bits");
        }
        for (unsigned b = k; b-- > 0;) bits.push_back((s >> b) & 1u);
    }
    for (unsigned i = 0; i < stream.pad_bits; ++i) {
        if (bits[bits.size() - 1 - i] != 0) throw EncodingError("nonzero padding bits");
    }
    bits.resize(bits.size() - stream.pad_bits);
    return bits;
}

std::string format_codeword(const Codeword& cw) {
    std::string out;
    for (std::size_t i = 0; i < cw.symbols.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(cw.symbols[i]);
    }
    out += ";";
    for (std::uint8_t m : cw.present) out += m ? '1' : '0';
    return out;
}

Codeword parse_codeword(const std::string& line) {
    const std::size_t sep = line.find(';');
    if (sep == std::string::npos) throw EncodingError("codeword line is missing the ';mask' part");
    Codeword cw;
    std::size_t pos = 0;
    while (pos < sep) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos || comma > sep) comma = sep;
        const std::string tok = line.substr(pos, comma - pos);
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(tok, &used);
            if (used != tok.size() || v > std::numeric_limits<std::uint32_t>::max()) {
                throw std::invalid_argument(tok);
            }
            cw.symbols.push_back(static_cast<std::uint32_t>(v));
        } catch (const std::exception&) {
            throw EncodingError("bad symbol value '" + tok + "'");
        }
        pos = comma + 1;
    }
    const std::string mask = line.substr(sep + 1);
    if (mask.size() != cw.symbols.size()) {
        throw EncodingError("mask length differs from symbol count");
    }
    for (char c : mask) {
        if (c != '0' && c != '1') throw EncodingError("mask characters must be 0 or 1");
        cw.present.push_back(c == '1');
    }
    for (std::size_t i = 0; i < cw.present.size(); ++i) {
        if (!cw.present[i]) cw.symbols[i] = 0;
    }
    return cw;
}

}  // namespace blindlink
