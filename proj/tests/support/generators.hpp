#pragma once

// Seeded random instance generators shared by the property tests and the
// acceptance suite.

#include "forestacc/graph.hpp"
#include "forestacc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace forestacc::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi)
{
	return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Uniform on (0, hi]: never returns 0.
inline double positive(Rng& rng, double hi)
{
	return hi - uniform(rng, 0.0, hi);
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi)
{
	return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p)
{
	return std::bernoulli_distribution(p)(rng);
}

struct GraphShape
{
	std::size_t min_n = 1;
	std::size_t max_n = 5;
	std::size_t max_records = 7;
	/// Weights drawn uniformly from (weight_lo, weight_hi]; weight_lo = 0 means (0, hi].
	double weight_lo = 0.0;
	double weight_hi = 2.0;
	bool directed = false;
};

inline double draw_weight(Rng& rng, const GraphShape& s)
{
	return s.weight_lo == 0.0 ? positive(rng, s.weight_hi) : uniform(rng, s.weight_lo, s.weight_hi);
}

/// Random multigraph: records between uniformly chosen distinct endpoints,
/// so parallel edges and disconnected graphs both occur.
inline WeightedMultigraph random_graph(Rng& rng, const GraphShape& s)
{
	const std::size_t n = pick(rng, s.min_n, s.max_n);
	std::vector<EdgeRecord> edges;
	if (n >= 2) {
		const std::size_t m = pick(rng, 0, s.max_records);
		for (std::size_t p = 0; p < m; ++p) {
			const Vertex u = pick(rng, 0, n - 1);
			Vertex v = pick(rng, 0, n - 2);
			if (v >= u)
				++v;
			edges.push_back({u, v, draw_weight(rng, s)});
		}
	}
	return WeightedMultigraph(n, std::move(edges), s.directed ? Orientation::Directed : Orientation::Undirected);
}

/// Random simple-ish graph on exactly n vertices where each pair is joined
/// with probability `density` (and occasionally doubled).
inline WeightedMultigraph random_dense_graph(Rng& rng, std::size_t n, double density, double weight_lo,
                                             double weight_hi, bool directed = false)
{
	std::vector<EdgeRecord> edges;
	for (Vertex u = 0; u < n; ++u)
		for (Vertex v = directed ? 0 : u + 1; v < n; ++v) {
			if (u == v || !coin(rng, density))
				continue;
			edges.push_back({u, v, uniform(rng, weight_lo, weight_hi)});
			if (coin(rng, 0.1))
				edges.push_back({u, v, uniform(rng, weight_lo, weight_hi)});
		}
	return WeightedMultigraph(n, std::move(edges), directed ? Orientation::Directed : Orientation::Undirected);
}

/// Undirected graph on 1..max_n vertices with a random density, so both
/// connected and disconnected instances occur. Weights in [0.1, 2].
inline WeightedMultigraph random_structure_graph(Rng& rng, std::size_t max_n = 10)
{
	const std::size_t n = pick(rng, 1, max_n);
	return random_dense_graph(rng, n, uniform(rng, 0.15, 0.8), 0.1, 2.0);
}

/// Graph whose record weights all lie in (0, fraction * (2 a* (n-1))^{-1}],
/// with a* the realized largest multiplicity. Each pair carries 0, 1 or 2
/// parallel records with probabilities 0.4, 0.4, 0.2; at least one record.
inline WeightedMultigraph random_bounded_graph(Rng& rng, std::size_t min_n, std::size_t max_n, double fraction,
                                               bool directed = false)
{
	const std::size_t n = pick(rng, std::max<std::size_t>(min_n, 2), max_n);
	std::vector<std::pair<Vertex, Vertex>> slots;
	std::size_t top = 0;
	std::discrete_distribution<std::size_t> mult{0.4, 0.4, 0.2};
	while (slots.empty()) {
		for (Vertex u = 0; u < n; ++u)
			for (Vertex v = directed ? 0 : u + 1; v < n; ++v) {
				if (u == v)
					continue;
				const std::size_t c = mult(rng);
				top = std::max(top, c);
				for (std::size_t r = 0; r < c; ++r)
					slots.emplace_back(u, v);
			}
	}
	const double bound = 1.0 / (2.0 * static_cast<double>(top) * static_cast<double>(n - 1));
	std::vector<EdgeRecord> edges;
	for (const auto& [u, v] : slots)
		edges.push_back({u, v, positive(rng, fraction * bound)});
	return WeightedMultigraph(n, std::move(edges), directed ? Orientation::Directed : Orientation::Undirected);
}

/// All 2^m subgraphs of the complete (di)graph on n vertices, unit weights.
inline std::vector<WeightedMultigraph> all_subgraphs_of_complete(std::size_t n, bool directed)
{
	std::vector<std::pair<Vertex, Vertex>> pairs;
	for (Vertex u = 0; u < n; ++u)
		for (Vertex v = 0; v < n; ++v)
			if (u != v && (directed || u < v))
				pairs.emplace_back(u, v);
	std::vector<WeightedMultigraph> out;
	for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
		std::vector<EdgeRecord> edges;
		for (std::size_t p = 0; p < pairs.size(); ++p)
			if (mask >> p & 1u)
				edges.push_back({pairs[p].first, pairs[p].second, 1.0});
		out.emplace_back(n, std::move(edges), directed ? Orientation::Directed : Orientation::Undirected);
	}
	return out;
}

/// Two random connected blobs sharing a single cut vertex.
struct CutVertexInstance
{
	WeightedMultigraph graph;
	Vertex cut;
	/// Vertices of the first blob other than the cut vertex.
	std::vector<Vertex> side_a;
	/// Vertices of the second blob other than the cut vertex.
	std::vector<Vertex> side_b;
};

inline void add_connected_blob(Rng& rng, const std::vector<Vertex>& members, std::vector<EdgeRecord>& edges,
                               double weight_lo, double weight_hi)
{
	// Random spanning tree first, then extra chords.
	for (std::size_t k = 1; k < members.size(); ++k)
		edges.push_back({members[pick(rng, 0, k - 1)], members[k], uniform(rng, weight_lo, weight_hi)});
	for (std::size_t a = 0; a < members.size(); ++a)
		for (std::size_t b = a + 1; b < members.size(); ++b)
			if (coin(rng, 0.3))
				edges.push_back({members[a], members[b], uniform(rng, weight_lo, weight_hi)});
}

inline CutVertexInstance random_cut_vertex_graph(Rng& rng, std::size_t max_side = 4, double weight_lo = 0.2,
                                                 double weight_hi = 2.0)
{
	const std::size_t a = pick(rng, 1, max_side);
	const std::size_t b = pick(rng, 1, max_side);
	const std::size_t n = a + b + 1;
	std::vector<Vertex> order(n);
	std::iota(order.begin(), order.end(), Vertex{0});
	std::shuffle(order.begin(), order.end(), rng);

	CutVertexInstance inst{WeightedMultigraph(1, {}, Orientation::Undirected), order[0], {}, {}};
	inst.side_a.assign(order.begin() + 1, order.begin() + 1 + static_cast<std::ptrdiff_t>(a));
	inst.side_b.assign(order.begin() + 1 + static_cast<std::ptrdiff_t>(a), order.end());

	std::vector<EdgeRecord> edges;
	std::vector<Vertex> blob_a{inst.cut};
	blob_a.insert(blob_a.end(), inst.side_a.begin(), inst.side_a.end());
	std::vector<Vertex> blob_b{inst.cut};
	blob_b.insert(blob_b.end(), inst.side_b.begin(), inst.side_b.end());
	add_connected_blob(rng, blob_a, edges, weight_lo, weight_hi);
	add_connected_blob(rng, blob_b, edges, weight_lo, weight_hi);
	inst.graph = WeightedMultigraph(n, std::move(edges), Orientation::Undirected);
	return inst;
}

/// Graph whose vertex set `members` is a macrovertex by construction: each
/// outside vertex is joined to all members with one shared weight, or to none.
struct MacrovertexInstance
{
	WeightedMultigraph graph;
	std::vector<Vertex> members;
};

inline MacrovertexInstance random_macrovertex_graph(Rng& rng, std::size_t size, std::size_t outside_max = 4,
                                                    double weight_lo = 0.2, double weight_hi = 2.0)
{
	const std::size_t outside = pick(rng, 1, outside_max);
	const std::size_t n = size + outside;
	std::vector<Vertex> order(n);
	std::iota(order.begin(), order.end(), Vertex{0});
	std::shuffle(order.begin(), order.end(), rng);
	std::vector<Vertex> members(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size));
	std::vector<Vertex> rest(order.begin() + static_cast<std::ptrdiff_t>(size), order.end());

	std::vector<EdgeRecord> edges;
	bool attached = false;
	for (Vertex k : rest) {
		if (!coin(rng, 0.6) && (attached || k != rest.back()))
			continue;
		attached = true;
		const double w = uniform(rng, weight_lo, weight_hi);
		for (Vertex i : members)
			edges.push_back({i, k, w});
	}
	for (std::size_t a = 0; a < members.size(); ++a)
		for (std::size_t b = a + 1; b < members.size(); ++b)
			if (coin(rng, 0.5))
				edges.push_back({members[a], members[b], uniform(rng, weight_lo, weight_hi)});
	for (std::size_t a = 0; a < rest.size(); ++a)
		for (std::size_t b = a + 1; b < rest.size(); ++b)
			if (coin(rng, 0.4))
				edges.push_back({rest[a], rest[b], uniform(rng, weight_lo, weight_hi)});
	std::sort(members.begin(), members.end());
	return {WeightedMultigraph(n, std::move(edges), Orientation::Undirected), std::move(members)};
}

inline std::string random_label(Rng& rng)
{
	static const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-.";
	std::string s;
	const std::size_t len = pick(rng, 1, 8);
	for (std::size_t k = 0; k < len; ++k)
		s += alphabet[pick(rng, 0, alphabet.size() - 1)];
	return s;
}

inline double random_weight(Rng& rng)
{
	switch (pick(rng, 0, 3)) {
	case 0:
		return std::ldexp(uniform(rng, 0.5, 1.0), static_cast<int>(pick(rng, 0, 2000)) - 1000);
	case 1:
		return static_cast<double>(pick(rng, 1, 100));
	case 2:
		return std::numeric_limits<double>::denorm_min() * static_cast<double>(pick(rng, 1, 1000));
	default:
		return positive(rng, 10.0);
	}
}

/// Random document with optional label table, extreme weights and multiplicities.
inline GraphDocument random_document(Rng& rng)
{
	GraphDocument doc;
	doc.n = pick(rng, 1, 8);
	doc.directed = coin(rng, 0.5);
	if (coin(rng, 0.5)) {
		std::set<std::string> used;
		while (doc.labels.size() < doc.n) {
			auto l = random_label(rng);
			if (used.insert(l).second)
				doc.labels.push_back(std::move(l));
		}
	}
	if (doc.n >= 2) {
		const std::size_t m = pick(rng, 0, 12);
		for (std::size_t p = 0; p < m; ++p) {
			const Vertex u = pick(rng, 0, doc.n - 1);
			Vertex v = pick(rng, 0, doc.n - 2);
			v += v >= u;
			const std::size_t mult = coin(rng, 0.8) ? 1 : pick(rng, 2, 4);
			doc.records.push_back({u, v, random_weight(rng), mult});
		}
	}
	return doc;
}

} // namespace forestacc::testing
