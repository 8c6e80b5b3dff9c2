#pragma once

#include "forestacc/error.hpp"
#include "forestacc/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <queue>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace forestacc {

using Vertex = std::size_t;

enum class Orientation { Undirected, Directed };

/// One edge (or arc u -> v) with its conductance.
struct EdgeRecord
{
	Vertex u = 0;
	Vertex v = 0;
	double weight = 1.0;

	friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/**
 * Weighted multigraph or multidigraph on vertices 0..n-1.
 *
 * Parallel records are kept as distinct edges; they only aggregate when the
 * Kirchhoff matrix is formed. Record order is preserved for serialization and
 * never affects numerics beyond summation order.
 */
class WeightedMultigraph
{
public:
	WeightedMultigraph(std::size_t n, std::vector<EdgeRecord> edges, Orientation orientation,
	                   std::vector<std::string> labels = {})
	  : n_(n)
	  , edges_(std::move(edges))
	  , orientation_(orientation)
	  , labels_(std::move(labels))
	{
		if (n_ == 0)
			throw Error(ErrorCode::EmptyGraph, "a graph needs at least one vertex");
		for (std::size_t p = 0; p < edges_.size(); ++p) {
			const auto& e = edges_[p];
			const std::string where = "record " + std::to_string(p);
			if (e.u >= n_ || e.v >= n_)
				throw Error(ErrorCode::OutOfRangeEndpoint,
				            where + " (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") with n=" +
				              std::to_string(n_));
			if (e.u == e.v)
				throw Error(ErrorCode::SelfLoop, where + " at vertex " + std::to_string(e.u));
			if (!(e.weight > 0.0) || !std::isfinite(e.weight))
				throw Error(ErrorCode::NonPositiveWeight, where + " has weight " + std::to_string(e.weight));
		}
		if (!labels_.empty()) {
			if (labels_.size() != n_)
				throw Error(ErrorCode::InvalidArgument, "label table size differs from vertex count");
			std::unordered_set<std::string> seen(labels_.begin(), labels_.end());
			if (seen.size() != labels_.size())
				throw Error(ErrorCode::InvalidArgument, "duplicate vertex label");
		}
	}

	std::size_t n() const noexcept { return n_; }
	std::span<const EdgeRecord> edges() const noexcept { return edges_; }
	std::size_t edge_count() const noexcept { return edges_.size(); }
	Orientation orientation() const noexcept { return orientation_; }
	bool directed() const noexcept { return orientation_ == Orientation::Directed; }
	const std::vector<std::string>& labels() const noexcept { return labels_; }

	std::string label(Vertex v) const { return labels_.empty() ? std::to_string(v) : labels_.at(v); }

	friend bool operator==(const WeightedMultigraph&, const WeightedMultigraph&) = default;

private:
	std::size_t n_;
	std::vector<EdgeRecord> edges_;
	Orientation orientation_;
	std::vector<std::string> labels_;
};

inline WeightedMultigraph build_graph(std::size_t n, std::vector<EdgeRecord> records, bool directed)
{
	return WeightedMultigraph(n, std::move(records), directed ? Orientation::Directed : Orientation::Undirected);
}

/// Dense Laplacian. Off-diagonal l_ij is minus the total conductance between
/// i and j (directed: of arcs j -> i); each diagonal entry closes its row to 0.
struct KirchhoffMatrix
{
	Matrix entries;
	Orientation orientation = Orientation::Undirected;

	std::size_t n() const noexcept { return entries.rows(); }
	double operator()(std::size_t i, std::size_t j) const noexcept { return entries(i, j); }
};

inline KirchhoffMatrix kirchhoff(const WeightedMultigraph& g)
{
	const std::size_t n = g.n();
	Matrix l(n, n);
	for (const auto& e : g.edges()) {
		// An arc u -> v converges to v, so it lands in row v.
		l(e.v, e.u) -= e.weight;
		if (!g.directed())
			l(e.u, e.v) -= e.weight;
	}
	for (std::size_t i = 0; i < n; ++i) {
		double s = 0.0;
		for (std::size_t j = 0; j < n; ++j)
			if (j != i)
				s += l(i, j);
		l(i, i) = -s;
	}
	return {std::move(l), g.orientation()};
}

/// Number of parallel records between each pair (ordered pairs for digraphs).
inline BasicMatrix<std::size_t> multiplicities(const WeightedMultigraph& g)
{
	BasicMatrix<std::size_t> a(g.n(), g.n());
	for (const auto& e : g.edges()) {
		++a(e.u, e.v);
		if (!g.directed())
			++a(e.v, e.u);
	}
	return a;
}

inline std::size_t max_multiplicity(const WeightedMultigraph& g)
{
	const auto a = multiplicities(g);
	std::size_t best = 0;
	for (auto x : a.data())
		best = std::max(best, x);
	return best;
}

namespace detail {

class DisjointSets
{
public:
	explicit DisjointSets(std::size_t n)
	  : parent_(n)
	  , rank_(n, 0)
	{
		std::iota(parent_.begin(), parent_.end(), std::size_t{0});
	}

	std::size_t find(std::size_t x) noexcept
	{
		while (parent_[x] != x) {
			parent_[x] = parent_[parent_[x]];
			x = parent_[x];
		}
		return x;
	}

	/// Returns false when both elements were already joined.
	bool unite(std::size_t a, std::size_t b) noexcept
	{
		a = find(a);
		b = find(b);
		if (a == b)
			return false;
		if (rank_[a] < rank_[b])
			std::swap(a, b);
		parent_[b] = a;
		if (rank_[a] == rank_[b])
			++rank_[a];
		return true;
	}

private:
	std::vector<std::size_t> parent_;
	std::vector<unsigned char> rank_;
};

inline std::vector<std::vector<Vertex>> undirected_adjacency(const WeightedMultigraph& g)
{
	std::vector<std::vector<Vertex>> adj(g.n());
	for (const auto& e : g.edges()) {
		adj[e.u].push_back(e.v);
		adj[e.v].push_back(e.u);
	}
	return adj;
}

inline void check_vertex(const WeightedMultigraph& g, Vertex v, const char* what)
{
	if (v >= g.n())
		throw Error(ErrorCode::OutOfRangeEndpoint, std::string(what) + " = " + std::to_string(v));
}

} // namespace detail

/// Component index of each vertex; components are numbered by their smallest vertex.
inline std::vector<std::size_t> component_ids(const WeightedMultigraph& g)
{
	detail::DisjointSets sets(g.n());
	for (const auto& e : g.edges())
		sets.unite(e.u, e.v);
	std::vector<std::size_t> id(g.n(), g.n());
	std::vector<std::size_t> root_to_id(g.n(), g.n());
	std::size_t next = 0;
	for (Vertex v = 0; v < g.n(); ++v) {
		const auto r = sets.find(v);
		if (root_to_id[r] == g.n())
			root_to_id[r] = next++;
		id[v] = root_to_id[r];
	}
	return id;
}

/// Connected components with arc directions ignored. Blocks are sorted and
/// ordered by their smallest vertex.
inline std::vector<std::vector<Vertex>> components(const WeightedMultigraph& g)
{
	const auto id = component_ids(g);
	const std::size_t count = id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
	std::vector<std::vector<Vertex>> blocks(count);
	for (Vertex v = 0; v < g.n(); ++v)
		blocks[id[v]].push_back(v);
	return blocks;
}

/// True iff every (undirected) path from i to t passes through k. Vacuously
/// true when no i-t path exists at all.
inline bool separates(const WeightedMultigraph& g, Vertex k, Vertex i, Vertex t)
{
	detail::check_vertex(g, k, "k");
	detail::check_vertex(g, i, "i");
	detail::check_vertex(g, t, "t");
	if (i == t)
		throw Error(ErrorCode::InvalidArgument, "separates() needs distinct i and t");
	if (k == i || k == t)
		return true;

	const auto adj = detail::undirected_adjacency(g);
	std::vector<bool> seen(g.n(), false);
	seen[k] = true;
	seen[i] = true;
	std::queue<Vertex> frontier;
	frontier.push(i);
	while (!frontier.empty()) {
		const Vertex v = frontier.front();
		frontier.pop();
		for (Vertex w : adj[v]) {
			if (w == t)
				return false;
			if (!seen[w]) {
				seen[w] = true;
				frontier.push(w);
			}
		}
	}
	return true;
}

/// True iff an undirected path joins a and b.
inline bool connected(const WeightedMultigraph& g, Vertex a, Vertex b)
{
	detail::check_vertex(g, a, "a");
	detail::check_vertex(g, b, "b");
	const auto id = component_ids(g);
	return id[a] == id[b];
}

/**
 * Whether `members` is a macrovertex: every member has the same Kirchhoff
 * entry towards each outside vertex (l_ik == l_jk for i, j inside, k outside).
 * `tol` is an absolute tolerance on those entries.
 */
inline bool is_macrovertex(const WeightedMultigraph& g, std::span<const Vertex> members, double tol = 0.0)
{
	if (members.empty())
		throw Error(ErrorCode::InvalidArgument, "macrovertex candidate set is empty");
	std::vector<bool> inside(g.n(), false);
	for (Vertex v : members) {
		detail::check_vertex(g, v, "member");
		inside[v] = true;
	}
	const auto l = kirchhoff(g);
	const Vertex first = members.front();
	for (Vertex k = 0; k < g.n(); ++k) {
		if (inside[k])
			continue;
		for (Vertex i : members)
			if (std::abs(l(i, k) - l(first, k)) > tol)
				return false;
	}
	return true;
}

/// Copy of `g` with one extra record; incrementing an existing edge is the same thing.
inline WeightedMultigraph with_edge(const WeightedMultigraph& g, Vertex u, Vertex v, double weight)
{
	std::vector<EdgeRecord> edges(g.edges().begin(), g.edges().end());
	edges.push_back({u, v, weight});
	return WeightedMultigraph(g.n(), std::move(edges), g.orientation(), g.labels());
}

/// Copy of `g` with every weight multiplied by `factor`.
inline WeightedMultigraph scaled(const WeightedMultigraph& g, double factor)
{
	std::vector<EdgeRecord> edges(g.edges().begin(), g.edges().end());
	for (auto& e : edges)
		e.weight *= factor;
	return WeightedMultigraph(g.n(), std::move(edges), g.orientation(), g.labels());
}

/// Replaces every undirected edge with a pair of opposite arcs of the same weight.
inline WeightedMultigraph as_digraph(const WeightedMultigraph& g)
{
	if (g.directed())
		return g;
	std::vector<EdgeRecord> arcs;
	arcs.reserve(2 * g.edge_count());
	for (const auto& e : g.edges()) {
		arcs.push_back({e.u, e.v, e.weight});
		arcs.push_back({e.v, e.u, e.weight});
	}
	return WeightedMultigraph(g.n(), std::move(arcs), Orientation::Directed, g.labels());
}

/// Reverses every arc. Converging-forest quantities of `g` are the
/// diverging-forest quantities of the reversed digraph.
inline WeightedMultigraph reversed(const WeightedMultigraph& g)
{
	std::vector<EdgeRecord> arcs(g.edges().begin(), g.edges().end());
	for (auto& e : arcs)
		std::swap(e.u, e.v);
	return WeightedMultigraph(g.n(), std::move(arcs), g.orientation(), g.labels());
}

/// Relabels vertex v as perm[v].
inline WeightedMultigraph permuted(const WeightedMultigraph& g, std::span<const Vertex> perm)
{
	if (perm.size() != g.n())
		throw Error(ErrorCode::InvalidArgument, "permutation size differs from vertex count");
	std::vector<EdgeRecord> edges(g.edges().begin(), g.edges().end());
	for (auto& e : edges) {
		e.u = perm[e.u];
		e.v = perm[e.v];
	}
	return WeightedMultigraph(g.n(), std::move(edges), g.orientation());
}

} // namespace forestacc
