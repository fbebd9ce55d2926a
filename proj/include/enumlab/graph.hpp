#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace enumlab::problems {

/// Graph universes above this node count are refused by default; 2^{n(n-1)/2}
/// graphs stop fitting in a desk-scale run very quickly.
inline constexpr unsigned kDefaultGraphCap = 6;

/// Labeled undirected graph on nodes {0..n-1}. Edges are a presence bit
/// vector in canonical order: bit i corresponds to edge_index(x, y, n) == i.
struct Graph {
  std::uint8_t nodes = 1;
  std::vector<bool> edges;  // exactly n(n-1)/2 bits

  bool has_edge(unsigned x, unsigned y) const;
  std::size_t edge_total() const;  // number of present edges

  bool operator==(const Graph&) const = default;
};

/// n(n-1)/2, the number of possible edges on n nodes.
std::size_t possible_edges(unsigned nodes);

/// Bijection from unordered pairs {x < y < n} to [0, n(n-1)/2), lexicographic
/// in (x, y). Throws std::invalid_argument unless 0 <= x < y < n.
std::size_t edge_index(unsigned x, unsigned y, unsigned nodes);

/// Graph from the integer value of its edge bit vector (bit i = edge i).
Graph graph_from_bits(unsigned nodes, std::uint64_t bits);

/// All 2^{n(n-1)/2} graphs on n nodes in ascending bit-vector order.
/// Throws ConstraintError when n exceeds the cap.
std::vector<Graph> enumerate_graphs(unsigned nodes,
                                    unsigned cap = kDefaultGraphCap);

using GraphHash = boost::multiprecision::cpp_int;

/// i-th prime, p_0 = 2.
std::uint64_t nth_prime(std::size_t i);

/// Product over present edges of the edge's prime label p_{edge_index}.
/// Empty product is 1. Injective over graphs of equal n by unique prime
/// factorization.
GraphHash prime_hash(const Graph& g);

/// Ground-truth 3-colorability: backtracking with pruning, deliberately a
/// different algorithm from the SIMPLE reference's exhaustive scan so the
/// two can cross-check.
bool oracle_3color(const Graph& g);

/// Canonical machine input: byte 0 is the node count, then ceil(|E|/8)
/// bytes packing the edge bits in edge-index order, low bit first.
std::vector<std::uint8_t> encode_input(const Graph& g);
Graph decode_input(std::span<const std::uint8_t> bytes);

/// CLI literal, e.g. "3; 0-1,0-2,1-2". Whitespace around tokens is ignored;
/// an empty edge list means no edges.
Graph parse_graph_literal(std::string_view text);
std::string format_graph_literal(const Graph& g);

}  // namespace enumlab::problems
