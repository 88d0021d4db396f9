#include "qnc/huffman.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <queue>
#include <sstream>

namespace qnc {

double shannon_entropy_bits(double p1) {
    if (p1 < 0.0 || p1 > 1.0) throw ValidationError("shannon_entropy_bits: p outside [0, 1]");
    if (p1 == 0.0 || p1 == 1.0) return 0.0;
    return -p1 * std::log2(p1) - (1.0 - p1) * std::log2(1.0 - p1);
}

BlockDistribution block_distribution(double p1, int k) {
    if (p1 < 0.0 || p1 > 1.0) throw ValidationError("block_distribution: p1 outside [0, 1]");
    if (k < 1 || k > 20) throw ValidationError("block_distribution: k outside [1, 20]");
    BlockDistribution dist;
    dist.k = k;
    const std::size_t n = std::size_t{1} << k;
    dist.probs.resize(n);
    for (std::size_t sym = 0; sym < n; ++sym) {
        double p = 1.0;
        for (int b = 0; b < k; ++b) {
            const bool bit = (sym >> b) & 1u;
            p *= bit ? (1.0 - p1) : p1;
        }
        dist.probs[sym] = p;
    }
    return dist;
}

double HuffmanCodebook::expected_block_length() const {
    double total = 0.0;
    for (std::size_t s = 0; s < probs.size(); ++s) {
        total += probs[s] * static_cast<double>(codewords[s].size());
    }
    return total;
}

long double HuffmanCodebook::kraft_sum() const {
    long double total = 0.0L;
    for (const auto& cw : codewords) {
        total += std::pow(2.0L, -static_cast<long double>(cw.size()));
    }
    return total;
}

bool HuffmanCodebook::is_prefix_free() const {
    // After lexicographic sorting, a prefix and its extension end up adjacent,
    // so checking neighbours suffices.
    std::vector<const CodeBits*> sorted;
    sorted.reserve(codewords.size());
    for (const auto& cw : codewords) sorted.push_back(&cw);
    std::sort(sorted.begin(), sorted.end(),
              [](const CodeBits* a, const CodeBits* b) { return *a < *b; });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const CodeBits& a = *sorted[i];
        const CodeBits& b = *sorted[i + 1];
        if (a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin())) return false;
    }
    return true;
}

HuffmanCodebook huffman_build(const BlockDistribution& dist) {
    const std::size_t n = dist.probs.size();
    if (dist.k < 1 || n != (std::size_t{1} << dist.k)) {
        throw ValidationError("huffman_build: probs size does not match 2^k");
    }
    double total = 0.0;
    for (double p : dist.probs) {
        if (p < 0.0) throw ValidationError("huffman_build: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "huffman_build: probabilities sum to " << total;
        throw ValidationError(os.str());
    }

    // Merge phase. Nodes are identified by creation index: leaves first in
    // symbol order, merged nodes after, so the (prob, creation) ordering is
    // total and reproducible.
    struct Node {
        double prob;
        int left = -1, right = -1;  // creation indices of children
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * n);
    using QEntry = std::pair<double, int>;  // (prob, creation index)
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> queue;
    for (std::size_t s = 0; s < n; ++s) {
        nodes.push_back({dist.probs[s]});
        queue.emplace(dist.probs[s], static_cast<int>(s));
    }
    while (queue.size() > 1) {
        const auto [pa, a] = queue.top();
        queue.pop();
        const auto [pb, b] = queue.top();
        queue.pop();
        const int parent = static_cast<int>(nodes.size());
        nodes.push_back({pa + pb, a, b});
        queue.emplace(pa + pb, parent);
    }

    // Depths become the code lengths. A lone root (n == 1) still costs one
    // bit so the stream stays self-delimiting.
    std::vector<int> lengths(n, 0);
    if (n == 1) {
        lengths[0] = 1;
    } else {
        std::vector<std::pair<int, int>> stack{{static_cast<int>(nodes.size()) - 1, 0}};
        while (!stack.empty()) {
            const auto [idx, depth] = stack.back();
            stack.pop_back();
            if (nodes[idx].left < 0) {
                lengths[idx] = std::max(depth, 1);
            } else {
                stack.push_back({nodes[idx].left, depth + 1});
                stack.push_back({nodes[idx].right, depth + 1});
            }
        }
    }

    // Canonical reassignment: sort symbols by probability rank (descending
    // probability, ties by ascending symbol) and hand out the sorted length
    // multiset in that order.
    std::vector<int> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    std::sort(rank.begin(), rank.end(), [&](int a, int b) {
        if (dist.probs[a] != dist.probs[b]) return dist.probs[a] > dist.probs[b];
        return a < b;
    });
    std::vector<int> sorted_lengths = lengths;
    std::sort(sorted_lengths.begin(), sorted_lengths.end());
    std::vector<int> final_length(n);
    for (std::size_t i = 0; i < n; ++i) final_length[rank[i]] = sorted_lengths[i];

    // Canonical codeword assignment in (length, symbol) order. The running
    // code is kept as an explicit bit vector: increment, then append zeros
    // when the length grows.
    std::vector<int> assign_order(n);
    std::iota(assign_order.begin(), assign_order.end(), 0);
    std::sort(assign_order.begin(), assign_order.end(), [&](int a, int b) {
        if (final_length[a] != final_length[b]) return final_length[a] < final_length[b];
        return a < b;
    });

    HuffmanCodebook book;
    book.k = dist.k;
    book.probs = dist.probs;
    book.codewords.resize(n);
    CodeBits code;
    bool first = true;
    for (int sym : assign_order) {
        const std::size_t len = static_cast<std::size_t>(final_length[sym]);
        if (first) {
            code.assign(len, 0);
            first = false;
        } else {
            // code <- (code + 1) << (len - code.size())
            int i = static_cast<int>(code.size()) - 1;
            while (i >= 0 && code[i] == 1) code[i--] = 0;
            if (i < 0) throw ValidationError("huffman_build: canonical code overflow");
            code[i] = 1;
            code.resize(len, 0);
        }
        book.codewords[sym] = code;
    }
    return book;
}

namespace {

class BitWriter {
public:
    void push(std::uint8_t bit) {
        if (nbits_ % 8 == 0) bytes_.push_back(0);
        if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (nbits_ % 8));
        ++nbits_;
    }
    std::vector<std::uint8_t> take() { return std::move(bytes_); }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t nbits_ = 0;
};

class BitReader {
public:
    BitReader(const std::uint8_t* data, std::size_t size) : data_(data), nbits_(size * 8) {}
    bool done() const { return pos_ >= nbits_; }
    int next() {
        if (done()) return -1;
        const std::uint8_t byte = data_[pos_ / 8];
        const int bit = (byte >> (7 - pos_ % 8)) & 1;
        ++pos_;
        return bit;
    }

private:
    const std::uint8_t* data_;
    std::uint64_t nbits_;
    std::uint64_t pos_ = 0;
};

constexpr std::size_t kHeaderBytes = 8;

}  // namespace

std::uint64_t EncodedStream::unpadded_bits() const {
    if (bytes.size() < kHeaderBytes) throw ValidationError("EncodedStream: missing header");
    std::uint64_t n = 0;
    for (int i = 7; i >= 0; --i) n = (n << 8) | bytes[i];
    return n;
}

EncodedStream encode(const HuffmanCodebook& codebook, const MembershipString& bits) {
    const int k = codebook.k;
    const std::uint64_t n = bits.bits.size();
    EncodedStream stream;
    stream.bytes.reserve(kHeaderBytes + n / 4);
    for (int i = 0; i < 8; ++i) {
        stream.bytes.push_back(static_cast<std::uint8_t>((n >> (8 * i)) & 0xFF));
    }
    BitWriter writer;
    const std::uint64_t blocks = (n + k - 1) / k;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        std::size_t symbol = 0;
        for (int j = 0; j < k; ++j) {
            const std::uint64_t idx = b * k + j;
            const int bit = idx < n ? bits.bits[idx] : 0;  // zero padding
            symbol = (symbol << 1) | static_cast<std::size_t>(bit);
        }
        for (std::uint8_t cb : codebook.codewords[symbol]) writer.push(cb);
        stream.payload_bits += codebook.codewords[symbol].size();
    }
    auto payload = writer.take();
    stream.bytes.insert(stream.bytes.end(), payload.begin(), payload.end());
    return stream;
}

MembershipString decode(const HuffmanCodebook& codebook, const EncodedStream& stream) {
    const std::uint64_t n = stream.unpadded_bits();
    const int k = codebook.k;
    const std::uint64_t blocks = (n + k - 1) / k;

    // Decoding trie over the codewords.
    struct TrieNode {
        int child[2] = {-1, -1};
        int symbol = -1;
    };
    std::vector<TrieNode> trie(1);
    for (std::size_t sym = 0; sym < codebook.codewords.size(); ++sym) {
        int node = 0;
        for (std::uint8_t bit : codebook.codewords[sym]) {
            int next = trie[node].child[bit];
            if (next < 0) {
                next = static_cast<int>(trie.size());
                trie[node].child[bit] = next;
                trie.push_back({});
            }
            node = next;
        }
        trie[node].symbol = static_cast<int>(sym);
    }

    BitReader reader(stream.bytes.data() + kHeaderBytes, stream.bytes.size() - kHeaderBytes);
    MembershipString out;
    out.bits.reserve(n);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        int node = 0;
        while (trie[node].symbol < 0) {
            const int bit = reader.next();
            if (bit < 0) throw ValidationError("decode: stream ends mid-codeword");
            node = trie[node].child[bit];
            if (node < 0) throw ValidationError("decode: stream does not match the codebook");
        }
        const int symbol = trie[node].symbol;
        for (int j = k - 1; j >= 0; --j) {
            if (out.bits.size() < n) {
                out.bits.push_back(static_cast<std::uint8_t>((symbol >> j) & 1));
            }
        }
    }
    out.bits.resize(n);
    return out;
}

double measured_rate(double p1, int k) {
    const HuffmanCodebook book = huffman_build(block_distribution(p1, k));
    return book.expected_block_length() / static_cast<double>(k);
}

}  // namespace qnc
