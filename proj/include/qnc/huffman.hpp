#pragma once

#include <cstdint>
#include <vector>

#include "qnc/entropy_split.hpp"
#include "qnc/errors.hpp"

namespace qnc {

/// Binary Shannon entropy -p log2 p - (1-p) log2 (1-p) in bits; 0 at both
/// endpoints.
double shannon_entropy_bits(double p1);

/// Distribution over k-bit blocks of i.i.d. membership bits: bit 0 occurs
/// with probability p1 (the H1 weight), bit 1 with 1-p1. Symbols index the
/// blocks MSB-first, so symbol 0b10 is the block "10".
struct BlockDistribution {
    int k = 0;
    std::vector<double> probs;  // size 2^k, indexed by symbol value
};

BlockDistribution block_distribution(double p1, int k);

/// A single codeword as explicit bits (lengths can approach 2^k - 1 for very
/// skewed distributions, so packed integers are not safe).
using CodeBits = std::vector<std::uint8_t>;

/// Canonical prefix code over the 2^k block symbols. Lengths are
/// non-decreasing in probability rank (ties by ascending symbol value) and
/// codewords are assigned canonically in (length, symbol) order.
struct HuffmanCodebook {
    int k = 0;
    std::vector<double> probs;       // the build distribution
    std::vector<CodeBits> codewords;  // size 2^k

    int length(int symbol) const { return static_cast<int>(codewords[symbol].size()); }

    /// Expected codeword length in bits per block under the build distribution.
    double expected_block_length() const;

    /// sum over symbols of 2^-length (long double: lengths can exceed 1000).
    long double kraft_sum() const;

    bool is_prefix_free() const;
};

/// Deterministic Huffman construction: merge the two lowest-probability
/// nodes, breaking ties toward the earliest-created node, then re-assign the
/// resulting length multiset canonically. Zero-probability symbols still get
/// codewords (padding can produce any block). A distribution concentrated on
/// one block yields a 1-bit codeword for it, keeping streams self-delimiting.
HuffmanCodebook huffman_build(const BlockDistribution& dist);

/// Encoded stream: a 64-bit little-endian header with the unpadded bit count,
/// then the concatenated codewords packed MSB-first into octets. The input is
/// padded with 0-bits to a whole number of blocks before coding.
struct EncodedStream {
    std::vector<std::uint8_t> bytes;
    std::uint64_t payload_bits = 0;  // exact codeword bits, before octet packing

    std::uint64_t unpadded_bits() const;
};

EncodedStream encode(const HuffmanCodebook& codebook, const MembershipString& bits);

/// Exact inverse of encode. Throws ValidationError if the stream ends in the
/// middle of a codeword.
MembershipString decode(const HuffmanCodebook& codebook, const EncodedStream& stream);

/// Expected bits per membership symbol of the k-block Huffman code at a given
/// p1: sits in [H(X), H(X) + 1/k) away from degenerate p1.
double measured_rate(double p1, int k);

}  // namespace qnc
